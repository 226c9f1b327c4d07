"""Finitely presented commutative R-algebras with canonical normal forms.

A presentation is a polynomial ring R[x_1, ..., x_n] modulo at most one
rewrite rule per generator, x_i^p -> rhs_i.  In the group algebras the
right-hand side is c_i * x_i; cover rings allow a general right-hand side
whose x_i-degree is below p (it may involve other generators, including
a free "base" generator w).  Normal forms keep every ruled exponent below
p, so a ring in which every non-base generator is ruled is free over
R[base] with the monomial basis.

Elements store their terms with t folded into the monomial: the key is
(t_exp, e_1, ..., e_n) and the value an integer in [1, p).
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Mapping, Sequence

from .dvr import RElem, as_relem
from .pid import Lattice


class UnknownGenerator(KeyError):
    pass


_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


def _add_into(out: dict, key: tuple, c: int, p: int) -> None:
    v = (out.get(key, 0) + c) % p
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class Presentation:
    """R[gens] / (x_i^p - rhs_i) with lexicographic monomial order on gens."""

    def __init__(self, p: int, gens: Sequence[str], rules: Mapping | None = None,
                 base: Sequence[str] | str | None = None):
        gens = tuple(gens)
        if len(set(gens)) != len(gens):
            raise ValueError("generator names must be distinct: %r" % (gens,))
        for g in gens:
            if not _NAME.match(g) or g == "t":
                raise ValueError("bad generator name %r" % g)
        if isinstance(base, str):
            base = (base,)
        self.p = p
        self.gens = gens
        self.ngens = len(gens)
        self.index = {g: i for i, g in enumerate(gens)}
        self.base = tuple(base or ())
        for b in self.base:
            if b not in self.index:
                raise UnknownGenerator(b)
        self._rules: dict[int, dict] = {}
        self.pshape: dict[int, RElem] = {}
        free = None
        for name, rhs in (rules or {}).items():
            if name not in self.index:
                raise UnknownGenerator(name)
            if name in self.base:
                raise ValueError("base generator %r cannot carry a rule" % name)
            i = self.index[name]
            if isinstance(rhs, (RElem, int)):
                c = as_relem(rhs, p)
                self.pshape[i] = c
                terms = {}
                for e, ci in enumerate(c.coeffs):
                    if ci:
                        key = [0] * (self.ngens + 1)
                        key[0] = e
                        key[i + 1] = 1
                        terms[tuple(key)] = ci
            else:
                if isinstance(rhs, str):
                    if free is None:
                        free = Presentation(p, gens, base=self.base)
                    rhs = free.element(rhs)
                if not isinstance(rhs, AlgElem) or rhs.ring.gens != gens:
                    raise TypeError("rule for %s must be given over the same generators" % name)
                terms = dict(rhs.terms)
                if any(k[i + 1] >= p for k in terms):
                    raise ValueError("rule for %s must have %s-degree < p" % (name, name))
                c = _pshape_coefficient(terms, i, p, self.ngens)
                if c is not None:
                    self.pshape[i] = c
            self._rules[i] = terms
        self._ruled = tuple(sorted(self._rules))
        self._cache: dict[tuple, dict] = {}
        self._tensor_cache: dict = {}

    # -- structure ----------------------------------------------------------

    @property
    def rules(self) -> dict[str, "AlgElem"]:
        free = Presentation(self.p, self.gens, base=self.base)
        return {self.gens[i]: AlgElem(free, dict(t)) for i, t in self._rules.items()}

    def is_ruled(self, name: str) -> bool:
        return self.index[name] in self._rules

    def fibre_gens(self) -> tuple[str, ...]:
        return tuple(g for g in self.gens if g not in self.base)

    def is_finite(self) -> bool:
        """Free of finite rank over R[base]."""
        return all(self.index[g] in self._rules for g in self.fibre_gens())

    def is_pshape(self) -> bool:
        return set(self.pshape) == set(self._rules)

    def basis(self) -> list[tuple]:
        """Monomial basis exponents over R[base] (base exponents zero), lex order."""
        if not self.is_finite():
            raise ValueError("presentation is not of finite rank over its base")
        ranges = [range(self.p) if g not in self.base else range(1) for g in self.gens]
        return list(itertools.product(*ranges))

    def rank(self) -> int:
        return self.p ** len(self.fibre_gens()) if self.is_finite() else None

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.p, self.gens, self.base, self._rules) == (other.p, other.gens, other.base, other._rules)

    def __hash__(self):
        return hash((self.p, self.gens, self.base))

    def __repr__(self):
        return "Presentation(p=%d, gens=%r, base=%r)" % (self.p, self.gens, self.base)

    # -- elements -----------------------------------------------------------

    def zero(self) -> "AlgElem":
        return AlgElem(self, {})

    def one(self) -> "AlgElem":
        return self.const(1)

    def const(self, c) -> "AlgElem":
        c = as_relem(c, self.p)
        zeros = (0,) * self.ngens
        return AlgElem(self, {(e,) + zeros: ci for e, ci in enumerate(c.coeffs) if ci})

    def gen(self, name: str) -> "AlgElem":
        if name not in self.index:
            raise UnknownGenerator(name)
        e = [0] * self.ngens
        e[self.index[name]] = 1
        return self.monomial(e)

    def gen_elems(self) -> list["AlgElem"]:
        return [self.gen(g) for g in self.gens]

    def monomial(self, exps: Sequence[int], coeff=1) -> "AlgElem":
        c = as_relem(coeff, self.p)
        red = self.reduce(tuple(exps))
        out: dict = {}
        for e, ci in enumerate(c.coeffs):
            if ci:
                for k, v in red.items():
                    _add_into(out, (k[0] + e,) + k[1:], ci * v, self.p)
        return AlgElem(self, out)

    def from_coefficients(self, coeffs: Mapping[tuple, RElem]) -> "AlgElem":
        out: dict = {}
        for exps, c in coeffs.items():
            c = as_relem(c, self.p)
            red = self.reduce(tuple(exps))
            for e, ci in enumerate(c.coeffs):
                if ci:
                    for k, v in red.items():
                        _add_into(out, (k[0] + e,) + k[1:], ci * v, self.p)
        return AlgElem(self, out)

    def element(self, text: str) -> "AlgElem":
        return parse_element(text, self)

    def reduce(self, exps: tuple) -> dict:
        """Normal form of the monomial with exponent vector exps (t-exp excluded)."""
        hit = self._cache.get(exps)
        if hit is not None:
            return hit
        p = self.p
        for i in self._ruled:
            if exps[i] >= p:
                break
        else:
            res = {(0,) + exps: 1}
            self._cache[exps] = res
            return res
        rest = list(exps)
        rest[i] -= p
        res: dict = {}
        for k, c in self._rules[i].items():
            sub = self.reduce(tuple(a + b for a, b in zip(rest, k[1:])))
            te = k[0]
            for k2, c2 in sub.items():
                _add_into(res, (k2[0] + te,) + k2[1:], c * c2, p)
        self._cache[exps] = res
        return res

    # -- derived presentations ---------------------------------------------

    def mod_t(self) -> "Presentation":
        """The special fibre: every structure constant reduced mod t."""
        free = Presentation(self.p, self.gens, base=self.base)
        rules = {}
        for i, terms in self._rules.items():
            rules[self.gens[i]] = AlgElem(free, {k: c for k, c in terms.items() if k[0] == 0})
        return Presentation(self.p, self.gens, rules, base=self.base)

    def renamed(self, names: Sequence[str]) -> "Presentation":
        names = tuple(names)
        free = Presentation(self.p, names, base=[names[self.index[b]] for b in self.base])
        rules = {names[i]: AlgElem(free, dict(t)) for i, t in self._rules.items()}
        return Presentation(self.p, names, rules, base=free.base)


def _pshape_coefficient(terms: dict, i: int, p: int, n: int):
    """c if terms == c * x_i, else None."""
    coeffs = {}
    for k, c in terms.items():
        if k[i + 1] != 1 or any(k[j + 1] for j in range(n) if j != i):
            return None
        coeffs[k[0]] = c
    if not coeffs:
        return RElem.zero(p)
    return RElem([coeffs.get(e, 0) for e in range(max(coeffs) + 1)], p)


class AlgElem:
    """Element of a Presentation in normal form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Presentation, terms: dict):
        self.ring = ring
        self.terms = terms

    @property
    def p(self) -> int:
        return self.ring.p

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, AlgElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("elements of different presentations")
            return other
        if isinstance(other, (int, RElem)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        p = self.ring.p
        for k, c in other.terms.items():
            _add_into(out, k, c, p)
        return AlgElem(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return AlgElem(self.ring, {k: p - c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.ring.p
            c = other % p
            if not c:
                return AlgElem(self.ring, {})
            return AlgElem(self.ring, {k: v * c % p for k, v in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        ring = self.ring
        p = ring.p
        reduce = ring.reduce
        cache = ring._cache
        out: dict = {}
        for k1, c1 in self.terms.items():
            t1 = k1[0]
            g1 = k1[1:]
            for k2, c2 in other.terms.items():
                ge = tuple([a + b for a, b in zip(g1, k2[1:])])
                te = t1 + k2[0]
                c = c1 * c2
                red = cache.get(ge)
                if red is None:
                    red = reduce(ge)
                for k3, c3 in red.items():
                    key = (k3[0] + te,) + k3[1:]
                    v = (out.get(key, 0) + c * c3) % p
                    if v:
                        out[key] = v
                    else:
                        del out[key]
        return AlgElem(ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- inspection ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, RElem)):
            other = self.ring.const(other)
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.terms == other.terms and self.ring.gens == other.ring.gens

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficients(self) -> dict[tuple, RElem]:
        """Group by generator exponents: {exps: coefficient in R}."""
        grouped: dict[tuple, dict] = {}
        for k, c in self.terms.items():
            grouped.setdefault(k[1:], {})[k[0]] = c
        p = self.ring.p
        return {g: RElem([d.get(e, 0) for e in range(max(d) + 1)], p)
                for g, d in sorted(grouped.items())}

    def coefficient(self, exps: Sequence[int]) -> RElem:
        exps = tuple(exps)
        d = {k[0]: c for k, c in self.terms.items() if k[1:] == exps}
        if not d:
            return RElem.zero(self.ring.p)
        return RElem([d.get(e, 0) for e in range(max(d) + 1)], self.ring.p)

    def constant(self) -> RElem:
        return self.coefficient((0,) * self.ring.ngens)

    def is_constant(self) -> bool:
        return all(not any(k[1:]) for k in self.terms)

    def degree(self) -> int:
        return max((sum(k[1:]) for k in self.terms), default=-1)

    def mod_t(self, ring: Presentation | None = None) -> "AlgElem":
        ring = ring or self.ring.mod_t()
        return AlgElem(ring, {k: c for k, c in self.terms.items() if k[0] == 0})

    def valuation(self):
        """Smallest t-exponent over all terms."""
        return min((k[0] for k in self.terms), default=float("inf"))

    def div_t(self, n: int) -> "AlgElem":
        if any(k[0] < n for k in self.terms):
            raise ArithmeticError("t^%d does not divide %s" % (n, self))
        return AlgElem(self.ring, {(k[0] - n,) + k[1:]: c for k, c in self.terms.items()})

    def variables(self) -> set[str]:
        used = set()
        for k in self.terms:
            used.update(self.ring.gens[i] for i, e in enumerate(k[1:]) if e)
        return used

    def __repr__(self):
        return "AlgElem(%r)" % format_element(self)

    def __str__(self):
        return format_element(self)


# -- module view ---------------------------------------------------------------

def to_vector(e: AlgElem) -> dict[tuple, RElem]:
    return e.coefficients()


def from_vector(ring: Presentation, v: Mapping[tuple, RElem]) -> AlgElem:
    out = {}
    for exps, c in v.items():
        for e, ci in enumerate(c.coeffs):
            if ci:
                out[(e,) + tuple(exps)] = ci
    return AlgElem(ring, out)


def normal_form(expr, ring: Presentation) -> AlgElem:
    """Normalize a raw expression: text, {exponents: coefficient}, or element."""
    if isinstance(expr, AlgElem):
        return ring.from_coefficients(expr.coefficients())
    if isinstance(expr, str):
        return ring.element(expr)
    if isinstance(expr, Mapping):
        return ring.from_coefficients(expr)
    if isinstance(expr, (int, RElem)):
        return ring.const(expr)
    raise TypeError("cannot normalize %r" % (expr,))


def place(e: AlgElem, target: Presentation, offset: int) -> AlgElem:
    """Embed e into target, sending generator i to generator offset + i."""
    n = target.ngens
    m = e.ring.ngens
    pad_after = n - offset - m
    out = {}
    for k, c in e.terms.items():
        key = (k[0],) + (0,) * offset + k[1:] + (0,) * pad_after
        out[key] = c
    # already normal: ruled exponents stay below p and rules carry over
    return AlgElem(target, out)


def tensor(*rings: Presentation) -> Presentation:
    """Tensor product over R; clashing names get primes appended."""
    p = rings[0].p
    names: list[str] = []
    taken: set[str] = set()
    for ring in rings:
        for g in ring.gens:
            name = g
            while name in taken:
                name += "'"
            taken.add(name)
            names.append(name)
    base = []
    free = Presentation(p, names, base=None)
    rules = {}
    offset = 0
    for ring in rings:
        for i, terms in ring._rules.items():
            rules[names[offset + i]] = place(AlgElem(ring, terms), free, offset)
        base.extend(names[offset + ring.index[b]] for b in ring.base)
        offset += ring.ngens
    free = Presentation(p, names, base=base)
    rules = {k: AlgElem(free, v.terms) for k, v in rules.items()}
    return Presentation(p, names, rules, base=base)


def tensor_product(A: Presentation, B: Presentation):
    """Return (A (x) B, inclusion of A, inclusion of B)."""
    P = tensor(A, B)
    inc_a = AlgMorphism(A, P, [place(g, P, 0) for g in A.gen_elems()])
    inc_b = AlgMorphism(B, P, [place(g, P, A.ngens) for g in B.gen_elems()])
    return P, inc_a, inc_b


def tensor_power(A: Presentation, n: int) -> Presentation:
    key = ("pow", n)
    hit = A._tensor_cache.get(key)
    if hit is None:
        hit = tensor(*([A] * n))
        A._tensor_cache[key] = hit
    return hit


def tensor_cached(A: Presentation, B: Presentation) -> Presentation:
    key = ("with", id(B))
    hit = A._tensor_cache.get(key)
    if hit is None or hit[0] is not B:
        hit = (B, tensor(A, B))
        A._tensor_cache[key] = hit
    return hit[1]


class AlgMorphism:
    """R-algebra map given by the images of the source generators."""

    def __init__(self, source: Presentation, target: Presentation, images):
        if isinstance(images, Mapping):
            missing = set(source.gens) - set(images)
            if missing:
                raise UnknownGenerator(sorted(missing)[0])
            images = [images[g] for g in source.gens]
        images = [target.element(x) if isinstance(x, str) else x for x in images]
        images = [x if isinstance(x, AlgElem) else target.const(x) for x in images]
        if len(images) != source.ngens:
            raise ValueError("need one image per source generator")
        self.source = source
        self.target = target
        self.images = list(images)

    def __call__(self, e: AlgElem) -> AlgElem:
        return self.apply(e)

    def apply(self, e: AlgElem) -> AlgElem:
        target = self.target
        p = target.p
        powers: list[dict] = [dict() for _ in self.images]

        def power(i, n):
            hit = powers[i].get(n)
            if hit is None:
                if n == 0:
                    hit = target.one()
                elif n == 1:
                    hit = self.images[i]
                else:
                    hit = power(i, n // 2) * power(i, n - n // 2)
                powers[i][n] = hit
            return hit

        acc: dict = {}
        mono_cache: dict = {}
        for k, c in e.terms.items():
            gexp = k[1:]
            m = mono_cache.get(gexp)
            if m is None:
                m = target.one()
                for i, n in enumerate(gexp):
                    if n:
                        m = m * power(i, n)
                mono_cache[gexp] = m
            te = k[0]
            for k2, c2 in m.terms.items():
                _add_into(acc, (k2[0] + te,) + k2[1:], c * c2, p)
        return AlgElem(target, acc)

    def check_well_defined(self) -> list[str]:
        """Names of source rules not respected by the images."""
        bad = []
        for name, rhs in self.source.rules.items():
            i = self.source.index[name]
            lhs = self.images[i] ** self.source.p
            raw = AlgMorphism(rhs.ring, self.target, self.images)
            if lhs != raw.apply(rhs):
                bad.append(name)
        return bad

    def compose(self, then: "AlgMorphism") -> "AlgMorphism":
        """then o self."""
        return AlgMorphism(self.source, then.target, [then.apply(x) for x in self.images])

    def matrix(self) -> list[list[RElem]]:
        """Matrix of the map on monomial bases: row per source basis monomial."""
        tb = self.target.basis()
        rows = []
        for exps in self.source.basis():
            v = self.apply(self.source.monomial(exps)).coefficients()
            extra = set(v) - set(tb)
            if extra:
                raise ValueError("image leaves the target's monomial basis")
            rows.append([v.get(m, RElem.zero(self.source.p)) for m in tb])
        return rows


def identity(P: Presentation) -> AlgMorphism:
    return AlgMorphism(P, P, P.gen_elems())


def apply_morphism(f: AlgMorphism, e: AlgElem) -> AlgElem:
    return f.apply(e)


# -- subalgebras ---------------------------------------------------------------

def span_lattice(elems: Iterable[AlgElem], track: bool = False) -> Lattice:
    return Lattice([to_vector(e) for e in elems], track=track)


def lattice_elements(ring: Presentation, lat: Lattice) -> list[AlgElem]:
    return [from_vector(ring, r) for r in lat.rows]


def subalgebra_closure(A: Presentation, gens: Sequence[AlgElem]) -> list[AlgElem]:
    """R-module basis (in Hermite form) of the subalgebra generated by 1 and gens.

    Multiply-and-close: products of all pairs of current basis elements are
    added until the Hermite form stops changing.  Terminates because
    submodules of a finite free module over a PID satisfy ACC.
    """
    if not A.is_finite() or A.base:
        raise ValueError("subalgebra closure needs a finite free algebra over R")
    current = span_lattice([A.one()] + list(gens))
    while True:
        basis = lattice_elements(A, current)
        products = [x * y for i, x in enumerate(basis) for y in basis[i:]]
        grown = Lattice(current.rows + [to_vector(z) for z in products])
        if grown == current:
            return basis
        current = grown


def ideal_lattice(A: Presentation, gens: Sequence[AlgElem]) -> Lattice:
    """R-span of the ideal generated by gens in a finite algebra."""
    monos = [A.monomial(m) for m in A.basis()]
    return span_lattice([g * m for g in gens for m in monos])


# -- text ----------------------------------------------------------------------

def _format_coeff(c: RElem) -> str:
    nz = [i for i, x in enumerate(c.coeffs) if x]
    s = str(c)
    return "(%s)" % s if len(nz) > 1 else s


def format_element(e: AlgElem) -> str:
    if not e.terms:
        return "0"
    parts = []
    for exps, c in e.coefficients().items():
        mono = "*".join(g if n == 1 else "%s^%d" % (g, n)
                        for g, n in zip(e.ring.gens, exps) if n)
        if not mono:
            parts.append(_format_coeff(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append("%s*%s" % (_format_coeff(c), mono))
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


def parse_element(text: str, ring: Presentation) -> AlgElem:
    """Parse +, -, *, ^, parentheses, integers, t and generator names."""
    toks = _tokenize(text)
    pos = 0
    t = ring.const(RElem.t_pow(1, ring.p))

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError("parse error at token %d in %r" % (pos, text))
        pos += 1
        return tok

    def expr():
        acc = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = unary()
        while peek() == ("op", "*"):
            take()
            acc = acc * unary()
        return acc

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            return base ** int(take("num")[1])
        return base

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            return ring.const(int(val))
        if kind == "name":
            take()
            if val == "t":
                return t
            if val not in ring.index:
                raise UnknownGenerator(val)
            return ring.gen(val)
        take("op", "(")
        inner = expr()
        take("op", ")")
        return inner

    if not toks:
        raise ValueError("empty expression")
    result = expr()
    if pos != len(toks):
        raise ValueError("trailing input in %r" % text)
    return result
