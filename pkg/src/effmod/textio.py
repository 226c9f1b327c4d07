"""Plain-text formats for presentations, Hopf algebras and coactions.

    prime 3
    name K_{t,1}
    gen w base
    gen u1 rule p -> u1
    gen u2 rule p -> t^2*u2
    [comult]
    u1 -> u1 + u1'
    [counit]
    u1 -> 0
    [antipode]
    u1 -> 2*u1

A coaction file has a [group] section (a Hopf algebra), a [space] section
(a presentation) and a [coaction] section with one line per non-base
generator of the space.  Blank lines and lines starting with # are ignored.
dump(parse(text)) reproduces dump output exactly.
"""

from __future__ import annotations

from .algebra import Presentation, format_element, parse_element, tensor_cached, tensor_power
from .dvr import format_relem, parse_relem
from .hopf import HopfAlgebra

_HOPF_SECTIONS = ("comult", "counit", "antipode")


class FormatError(ValueError):
    pass


# -- presentations -----------------------------------------------------------------

def dump_presentation(P: Presentation) -> str:
    lines = ["prime %d" % P.p]
    rules = P.rules
    for g in P.gens:
        if g in P.base:
            lines.append("gen %s base" % g)
        elif g in rules:
            lines.append("gen %s rule p -> %s" % (g, format_element(rules[g])))
        else:
            lines.append("gen %s" % g)
    return "\n".join(lines) + "\n"


def _presentation_from_lines(lines: list[str]) -> tuple[Presentation, str]:
    p = None
    name = ""
    gens, base, rules = [], [], {}
    for line in lines:
        words = line.split(None, 2)
        if words[0] == "prime":
            p = int(words[1])
        elif words[0] == "name":
            name = line.split(None, 1)[1]
        elif words[0] == "gen":
            g = words[1]
            gens.append(g)
            rest = words[2] if len(words) > 2 else ""
            if rest == "base":
                base.append(g)
            elif rest.startswith("rule"):
                body = rest[len("rule"):].strip()
                if not body.startswith("p ->"):
                    raise FormatError("expected 'rule p -> ...' in %r" % line)
                rules[g] = body[len("p ->"):].strip()
            elif rest:
                raise FormatError("cannot read %r" % line)
        else:
            raise FormatError("unexpected line %r" % line)
    if p is None:
        raise FormatError("missing 'prime' line")
    free = Presentation(p, gens, base=base)
    parsed = {g: parse_element(r, free) for g, r in rules.items()}
    return Presentation(p, gens, parsed, base=base), name


def _sections(text: str) -> list[tuple[str, list[str]]]:
    out: list[tuple[str, list[str]]] = [("", [])]
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            out.append((line[1:-1].strip(), []))
        else:
            out[-1][1].append(line)
    return [s for s in out if s[0] or s[1]]


def _maps(lines: list[str]) -> dict[str, str]:
    out = {}
    for line in lines:
        if "->" not in line:
            raise FormatError("expected 'name -> value' in %r" % line)
        k, v = line.split("->", 1)
        out[k.strip()] = v.strip()
    return out


def parse_presentation(text: str) -> Presentation:
    secs = _sections(text)
    if len(secs) != 1 or secs[0][0]:
        raise FormatError("a presentation has no sections")
    return _presentation_from_lines(secs[0][1])[0]


# -- Hopf algebras -----------------------------------------------------------------

def dump_hopf(H: HopfAlgebra) -> str:
    head = dump_presentation(H.algebra).splitlines()
    if H.name:
        head.insert(1, "name %s" % H.name)
    lines = head + ["[comult]"]
    lines += ["%s -> %s" % (g, format_element(d)) for g, d in zip(H.gens, H.comult)]
    lines.append("[counit]")
    lines += ["%s -> %s" % (g, format_relem(c)) for g, c in zip(H.gens, H.counit)]
    lines.append("[antipode]")
    lines += ["%s -> %s" % (g, format_element(s)) for g, s in zip(H.gens, H.antipode)]
    return "\n".join(lines) + "\n"


def _hopf_from_sections(head: list[str], secs: dict[str, list[str]]) -> HopfAlgebra:
    A, name = _presentation_from_lines(head)
    missing = [s for s in _HOPF_SECTIONS if s not in secs]
    if missing:
        raise FormatError("missing section(s): %s" % ", ".join(missing))
    A2 = tensor_power(A, 2)
    maps = {s: _maps(secs[s]) for s in _HOPF_SECTIONS}
    for s, m in maps.items():
        if set(m) != set(A.gens):
            raise FormatError("[%s] must list every generator exactly once" % s)
    comult = [parse_element(maps["comult"][g], A2) for g in A.gens]
    counit = [parse_relem(maps["counit"][g], A.p) for g in A.gens]
    antipode = [parse_element(maps["antipode"][g], A) for g in A.gens]
    return HopfAlgebra(A, comult, counit, antipode, name=name)


def parse_hopf(text: str) -> HopfAlgebra:
    secs = _sections(text)
    if not secs or secs[0][0]:
        raise FormatError("a Hopf algebra starts with its presentation")
    return _hopf_from_sections(secs[0][1], dict(secs[1:]))


# -- coactions ---------------------------------------------------------------------

def dump_coaction(c) -> str:
    lines = ["[group]"] + dump_hopf(c.group).splitlines()
    lines += ["[space]"] + dump_presentation(c.space).splitlines()
    if c.name:
        lines.insert(len(lines) - len(c.space.gens), "name %s" % c.name)
    lines.append("[coaction]")
    lines += ["%s -> %s" % (g, format_element(x)) for g, x in c.image_map.items()]
    return "\n".join(lines) + "\n"


def parse_coaction(text: str):
    from .action import Coaction

    secs = _sections(text)
    names = [s for s, _ in secs]
    if names[:1] != ["group"] or "space" not in names or "coaction" not in names:
        raise FormatError("a coaction needs [group], [space] and [coaction] sections")
    d = dict(secs)
    H = _hopf_from_sections(d["group"], d)
    B, name = _presentation_from_lines(d["space"])
    AB = tensor_cached(H.algebra, B)
    m = _maps(d["coaction"])
    if set(m) != set(B.fibre_gens()):
        raise FormatError("[coaction] must list every non-base generator exactly once")
    return Coaction(H, B, [parse_element(m[g], AB) for g in B.fibre_gens()], name=name)
