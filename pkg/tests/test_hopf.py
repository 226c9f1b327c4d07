from pathlib import Path

import pytest

from effmod.algebra import identity
from effmod.dvr import RElem, beta
from effmod.hopf import (HopfAlgebra, NotHopfIdeal, OddPrimeRequired, coinvariant_subhopf,
                         constant_group_zp2, group_M, hopf_iso_check, hopf_subalgebra_check,
                         kernel_group_K, quotient_by_hopf_ideal, verify_hopf_axioms)
from effmod.textio import dump_hopf, parse_hopf
from effmod.witt import witt_hopf

P = 3
t = RElem.t_pow(1, P)
GOLDEN = Path(__file__).parent / "golden"


def T(n, p=P):
    return RElem.t_pow(n, p)


def grid(p):
    params = [T(n, p) for n in (0, 1, 2, 4)]
    yield constant_group_zp2(p)
    for lam in params:
        for nu in params:
            yield kernel_group_K(lam, nu, p)
    for nu in [RElem.zero(p)] + [T(n, p) for n in (0, 1, 2, 6, 14)]:
        yield group_M(nu, p)
    for n in (0, 1):
        yield witt_hopf(T(n, p), p)


@pytest.mark.parametrize("p", [3, 5])
def test_axioms_on_parameter_grid(p):
    for H in grid(p):
        report = verify_hopf_axioms(H)
        assert report.ok, (str(H), report.failures())


def test_constant_group_structure():
    H = constant_group_zp2(P)
    A2 = H.square()
    u1, u2 = H.algebra.gen_elems()
    x1, x2, y1, y2 = A2.gen_elems()
    assert H.rank() == P * P
    assert H.comult[0] == x1 + y1
    cross = sum((beta(P, k) * x1 ** k * y1 ** (P - k) for k in range(1, P)), A2.zero())
    assert H.comult[1] == x2 + y2 + cross
    assert u1 ** P == u1 and u2 ** P == u2


def test_fault_injection_breaks_coassociativity():
    H = constant_group_zp2(P)
    A2 = H.square()
    bad = HopfAlgebra(H.algebra, [H.comult[0], H.comult[1] + A2.gen("u1")], H.counit, H.antipode)
    report = verify_hopf_axioms(bad)
    assert not report.checks["coassociativity"]


def test_kernel_group_relations():
    K = kernel_group_K(t, 1, P)
    assert K.algebra.gen("u2") ** 3 == t ** 2 * K.algebra.gen("u2")
    K11 = kernel_group_K(1, 1, P)
    Z = constant_group_zp2(P)
    assert K11.algebra.rules == Z.algebra.rules
    assert K11.comult == Z.comult and K11.counit == Z.counit and K11.antipode == Z.antipode
    assert verify_hopf_axioms(kernel_group_K(t ** 4, t ** 2, P)).ok
    with pytest.raises(OddPrimeRequired):
        kernel_group_K(1, 1, 2)


def test_group_M():
    a = group_M(0, P)
    assert a.algebra.gen("x") ** P == a.algebra.zero()
    assert group_M(t ** 2, P).rank() == P
    assert verify_hopf_axioms(group_M(t ** 2, P)).ok


def test_subhopf_examples():
    Z = constant_group_zp2(P)
    u1, u2 = Z.algebra.gen_elems()
    sub = hopf_subalgebra_check(Z, [t * u1, t ** 7 * u2])
    assert sub.ok
    G = sub.hopf
    B2 = G.square()
    v1, v2, w1, w2 = B2.gen_elems()
    assert G.comult[0] == v1 + w1
    cross = sum((beta(P, k) * t ** 4 * v1 ** k * w1 ** (P - k) for k in range(1, P)), B2.zero())
    assert G.comult[1] == v2 + w2 + cross
    assert hopf_subalgebra_check(Z, [u1]).ok
    assert not hopf_subalgebra_check(Z, [u2]).ok


def test_quotients():
    G = kernel_group_K(t ** 4, t ** 2, P)
    q = quotient_by_hopf_ideal(G, ["u1"])
    M = group_M(t ** 14, P)
    assert hopf_iso_check(q.hopf, M, M.algebra.gen_elems()).ok
    Z = constant_group_zp2(P)
    qz = quotient_by_hopf_ideal(Z, ["u1"])
    M1 = group_M(1, P)
    assert hopf_iso_check(qz.hopf, M1, M1.algebra.gen_elems()).ok
    same = quotient_by_hopf_ideal(Z, [])
    assert same.hopf.comult == Z.comult
    with pytest.raises(NotHopfIdeal):
        quotient_by_hopf_ideal(Z, ["u2"])


def test_coinvariants():
    G = kernel_group_K(t ** 4, t ** 2, P)
    c = coinvariant_subhopf(G, quotient_by_hopf_ideal(G, ["u1"]))
    M = group_M(t ** 2, P)
    assert [str(x) for x in c.embedding.images] == ["u1"]
    assert hopf_iso_check(c.hopf, M, M.algebra.gen_elems()).ok
    whole = coinvariant_subhopf(G, quotient_by_hopf_ideal(G, []))
    assert whole.closure == [G.algebra.one()]
    Z = constant_group_zp2(P)
    cz = coinvariant_subhopf(Z, quotient_by_hopf_ideal(Z, ["u1"]))
    assert [str(x) for x in cz.embedding.images] == ["u1"]
    assert cz.hopf.algebra.pshape == {0: RElem.one(P)}


def test_iso_check():
    M6, M2 = group_M(t ** 6, P), group_M(t ** 2, P)
    assert hopf_iso_check(M2, M2, identity(M2.algebra)).ok
    cmp_ = hopf_iso_check(M6, M2, [t ** 2 * M2.algebra.gen("x")])
    assert cmp_.hopf_compatible and not cmp_.ok
    assert cmp_.smith == [RElem.one(P), t ** 2, t ** 4]
    # x -> 2x respects x^p = nu x because 2^(p-1) = 1
    assert hopf_iso_check(M2, M2, [2 * M2.algebra.gen("x")]).ok


def test_iso_check_rejects_non_hopf_map():
    M = group_M(t, P)
    f = hopf_iso_check(M, M, [M.algebra.gen("x") ** 2])
    assert not f.ok


GOLDEN_CASES = {
    "zp2_p3.txt": lambda: constant_group_zp2(3),
    "K_t_1_p3.txt": lambda: kernel_group_K(t, 1, 3),
    "K_t4_t2_p3.txt": lambda: kernel_group_K(t ** 4, t ** 2, 3),
    "M_t2_p3.txt": lambda: group_M(t ** 2, 3),
    "M_t6_p3.txt": lambda: group_M(t ** 6, 3),
    "M_t14_p3.txt": lambda: group_M(t ** 14, 3),
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_constructors(name):
    H = GOLDEN_CASES[name]()
    text = dump_hopf(H)
    assert text == (GOLDEN / name).read_text()
    back = parse_hopf(text)
    assert dump_hopf(back) == text
    assert verify_hopf_axioms(back).ok
