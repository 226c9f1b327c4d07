import pytest

from effmod.algebra import Presentation
from effmod.dvr import RElem
from effmod.hopf import kernel_group_K
from effmod.textio import (FormatError, dump_hopf, dump_presentation, parse_hopf,
                           parse_presentation)


def test_presentation_round_trip():
    t = RElem.t_pow(1, 3)
    A = Presentation(3, ["w", "x", "y", "z"], {"x": "t*x + w", "y": t ** 2}, base="w")
    text = dump_presentation(A)
    assert "gen w base" in text and "gen z\n" in text
    assert dump_presentation(parse_presentation(text)) == text
    assert parse_presentation(text) == A


def test_comments_and_blank_lines():
    text = "# a comment\nprime 3\n\ngen u1 rule p -> 1*u1\n"
    A = parse_presentation(text)
    assert A.gen("u1") ** 3 == A.gen("u1")


@pytest.mark.parametrize("bad", ["gen x\n", "prime 3\ngen x rule x -> 1\n", "prime 3\nfoo\n"])
def test_format_errors(bad):
    with pytest.raises(FormatError):
        parse_presentation(bad)


def test_hopf_missing_section():
    text = dump_hopf(kernel_group_K(RElem.t_pow(1, 3), 1, 3))
    with pytest.raises(FormatError):
        parse_hopf(text.split("[antipode]")[0])
