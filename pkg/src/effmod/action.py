"""Coactions of finite group schemes on covers of the affine line.

A coaction is an algebra map mu: B -> A (x) B, where A is the Hopf algebra
of the group and B is a presentation with a base generator w that the group
fixes.  B is free over R[w] with its monomial basis, and A (x) B is free
over R with the product basis, so every element of A (x) B has unique
A-components indexed by the monomials of B.  Everything below is linear
algebra over F_p[t] on those components.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import (AlgElem, AlgMorphism, Presentation, from_vector, ideal_lattice,
                      lattice_elements, place, span_lattice, subalgebra_closure,
                      tensor_cached, to_vector)
from .dvr import RElem, beta, is_prime
from .finite_field import GF, FqElem, echelon
from .hopf import (AxiomReport, HopfAlgebra, HopfQuotient, NotHopfIdeal,
                   NotPShapePresentable, OddPrimeRequired, SubHopf, coinvariant_subhopf,
                   constant_group_zp2, degree_one_generators, hopf_subalgebra_check,
                   quotient_by_hopf_ideal, tensor_coordinates)
from .pid import Lattice, determinant, charpoly, saturate_t_torsion


class PointNotOnFibre(ValueError):
    pass


class RankMismatch(ValueError):
    pass


class BadParameter(ValueError):
    pass


def _t(n: int, p: int) -> RElem:
    return RElem.t_pow(n, p)


# -- splitting elements of A (x) B ----------------------------------------------------

def split_by_space(x: AlgElem, A: Presentation) -> dict[tuple, AlgElem]:
    """{exponents of the right factor: coefficient in A} for x in A (x) B."""
    nA = A.ngens
    parts: dict[tuple, dict] = {}
    for k, c in x.terms.items():
        parts.setdefault(k[1 + nA:], {})[(k[0],) + k[1:1 + nA]] = c
    return {b: AlgElem(A, d) for b, d in sorted(parts.items())}


def split_by_group(x: AlgElem, nA: int, B: Presentation) -> dict[tuple, AlgElem]:
    """{exponents of the left factor: coefficient in B} for x in A (x) B."""
    parts: dict[tuple, dict] = {}
    for k, c in x.terms.items():
        parts.setdefault(k[1:1 + nA], {})[(k[0],) + k[1 + nA:]] = c
    return {a: AlgElem(B, d) for a, d in sorted(parts.items())}


def join_parts(parts: Mapping[tuple, AlgElem], AB: Presentation) -> AlgElem:
    """Inverse of split_by_space: sum of a (x) (monomial b)."""
    out: dict = {}
    for b, a in parts.items():
        for k, c in a.terms.items():
            out[k + tuple(b)] = c
    return AlgElem(AB, out)


# -- coactions ---------------------------------------------------------------------

class Coaction:
    """mu: B -> A (x) B given on the non-base generators of B; mu(w) = 1 (x) w."""

    def __init__(self, group: HopfAlgebra, space: Presentation, images, name: str = ""):
        A = group.algebra
        self.group = group
        self.space = space
        self.ring = tensor_cached(A, space)
        fibre = space.fibre_gens()
        if isinstance(images, Mapping):
            images = [images[g] for g in fibre]
        images = [self.ring.element(x) if isinstance(x, str) else x for x in images]
        if len(images) != len(fibre):
            raise ValueError("need one image per non-base generator of the space")
        self.images = [x if x.ring is self.ring else AlgElem(self.ring, x.terms) for x in images]
        self.name = name

    @property
    def p(self) -> int:
        return self.space.p

    @property
    def image_map(self) -> dict[str, AlgElem]:
        return dict(zip(self.space.fibre_gens(), self.images))

    def morphism(self) -> AlgMorphism:
        B = self.space
        nA = self.group.algebra.ngens
        imgs = self.image_map
        full = [place(B.gen(g), self.ring, nA) if g in B.base else imgs[g] for g in B.gens]
        return AlgMorphism(B, self.ring, full)

    def apply(self, b: AlgElem) -> AlgElem:
        return self.morphism().apply(b)

    def trivial_part(self, b: AlgElem) -> AlgElem:
        """1 (x) b."""
        return place(b, self.ring, self.group.algebra.ngens)

    def __str__(self):
        return self.name or "Coaction(%s on %s)" % (self.group, ", ".join(self.space.gens))


def trivial_coaction(group: HopfAlgebra, space: Presentation) -> Coaction:
    AB = tensor_cached(group.algebra, space)
    nA = group.algebra.ngens
    return Coaction(group, space, [place(space.gen(g), AB, nA) for g in space.fibre_gens()],
                    name="trivial")


def regular_coaction(group: HopfAlgebra, base: str = "w") -> Coaction:
    """Translation action of a finite group on itself, times the line Spec R[w]."""
    A = group.algebra
    names = [base] + list(A.gens)
    free = Presentation(A.p, names, base=base)
    rules = {g: place(r, free, 1) for g, r in A.rules.items()}
    B = Presentation(A.p, names, rules, base=base)
    AB = tensor_cached(A, B)
    nA = A.ngens
    # Delta(g) lives in A (x) A; shift its right factor past the base slot
    images = []
    for d in group.comult:
        out = {}
        for k, c in d.terms.items():
            out[(k[0],) + k[1:1 + nA] + (0,) + k[1 + nA:]] = c
        images.append(AlgElem(AB, out))
    return Coaction(group, B, images, name="regular")


def verify_coaction_axioms(c: Coaction) -> AxiomReport:
    H = c.group
    A = H.algebra
    B = c.space
    nA = A.ngens
    mu = c.morphism()
    report = AxiomReport()
    report.checks["respects_rules"] = not mu.check_well_defined()

    A2B = tensor_cached(H.square(), B)
    AB = c.ring
    delta_id = AlgMorphism(AB, A2B, [place(d, A2B, 0) for d in H.comult]
                           + [place(g, A2B, 2 * nA) for g in B.gen_elems()])
    id_mu = AlgMorphism(AB, A2B, [place(g, A2B, 0) for g in A.gen_elems()]
                        + [place(x, A2B, nA) for x in mu.images])
    report.checks["coassociativity"] = all(
        delta_id.apply(x) == id_mu.apply(x) for x in c.images)

    eps_id = AlgMorphism(AB, B, [B.const(e) for e in H.counit] + B.gen_elems())
    report.checks["counit"] = all(
        eps_id.apply(x) == B.gen(g) for g, x in c.image_map.items())
    return report


# -- the covers ----------------------------------------------------------------------

def _cover_space(p: int, rule_z1, rule_z2) -> Presentation:
    free = Presentation(p, ["w", "Z1", "Z2"], base="w")
    w, Z1, Z2 = free.gen_elems()
    return Presentation(p, free.gens, {"Z1": rule_z1(w, Z1, Z2), "Z2": rule_z2(w, Z1, Z2)},
                        base="w")


def torsor_example_one(p: int) -> Coaction:
    """Z1^p - Z1 = w, Z2^p - t^(p-1) Z2 = w - t^p sum beta Z1^(pk) (-Z1)^(p-k), with Z/p^2 acting."""
    if not is_prime(p):
        raise BadParameter("p must be prime, got %r" % (p,))
    if p == 2:
        raise OddPrimeRequired("torsor_example_one needs p > 2")

    def z2(w, Z1, Z2):
        s = sum((beta(p, k) * Z1 ** (p * k) * (-Z1) ** (p - k) for k in range(1, p)), w.ring.zero())
        return _t(p - 1, p) * Z2 + w - _t(p, p) * s

    B = _cover_space(p, lambda w, Z1, Z2: Z1 + w, z2)
    G = constant_group_zp2(p)
    AB = tensor_cached(G.algebra, B)
    u1, u2 = (place(g, AB, 0) for g in G.algebra.gen_elems())
    _, Z1, Z2 = (place(g, AB, 2) for g in B.gen_elems())
    cross = sum((beta(p, k) * u1 ** (p - k) * Z1 ** k for k in range(1, p)), AB.zero())
    t = _t(1, p)
    return Coaction(G, B, [Z1 + u1, Z2 + t * u2 + t * cross], name="example one")


def tilde_m(n1: int, p: int) -> int:
    return n1 * (p * (p - 1) + 1)


def cover_example_two(n1: int, p: int) -> Coaction:
    """The cover with conductors m1 = -p^2 n1, m2 = 0, with Z/p^2 acting."""
    if not is_prime(p):
        raise BadParameter("p must be prime, got %r" % (p,))
    if p == 2:
        raise OddPrimeRequired("cover_example_two needs p > 2")
    if not isinstance(n1, int) or isinstance(n1, bool) or n1 < 1:
        raise BadParameter("n1 must be a positive integer, got %r" % (n1,))
    mt = tilde_m(n1, p)

    def z2(w, Z1, Z2):
        s = sum((beta(p, k) * _t(p * n1 * (p - 1) * (p - 1 - k), p)
                 * Z1 ** (p * k) * (-Z1) ** (p - k) for k in range(1, p)), w.ring.zero())
        return _t((p - 1) * mt, p) * Z2 + _t(p * mt, p) * w - s

    B = _cover_space(p, lambda w, Z1, Z2: _t((p - 1) * p * n1, p) * Z1 + w, z2)
    G = constant_group_zp2(p)
    AB = tensor_cached(G.algebra, B)
    u1, u2 = (place(g, AB, 0) for g in G.algebra.gen_elems())
    _, Z1, Z2 = (place(g, AB, 2) for g in B.gen_elems())
    cross = sum((beta(p, k) * _t(n1 * (p * (p - 1) + 1 - p * k), p) * Z1 ** k * u1 ** (p - k)
                 for k in range(1, p)), AB.zero())
    return Coaction(G, B, [Z1 + _t(p * n1, p) * u1, Z2 + _t(mt, p) * u2 + cross],
                    name="example two (n1=%d)" % n1)


# -- effective model -----------------------------------------------------------------

def coefficient_subalgebra(c: Coaction) -> list[AlgElem]:
    """The distinct A-components of mu(g), g running over the generators of B."""
    A = c.group.algebra
    seen: list[AlgElem] = []
    for x in c.images:
        for a in split_by_space(x, A).values():
            if a not in seen:
                seen.append(a)
    return seen


@dataclass
class EffectiveModelResult:
    model: HopfAlgebra
    embedding: AlgMorphism
    factored: Coaction
    minimality_certificate: dict
    coefficients: list = field(default_factory=list)
    closure: list = field(default_factory=list)
    hopf_passes: int = 0
    flat: bool = True

    @property
    def is_identity(self) -> bool:
        A = self.embedding.target
        return self.embedding.images == A.gen_elems()


def _hopf_defect(H: HopfAlgebra, closure: list, lat: Lattice) -> list[AlgElem]:
    """Components of Delta(b), S(b) that are missing from the span of closure."""
    A = H.algebra
    n = A.ngens
    delta, S = H.delta(), H.S()
    missing: list[AlgElem] = []
    for b in closure:
        D = delta.apply(b)
        if tensor_coordinates(D, n, lat, lat) is None:
            parts = list(split_by_space(D, A).values())
            parts += list(split_by_group(D, n, A).values())
            missing.extend(x for x in parts if to_vector(x) not in lat)
        s = S.apply(b)
        if to_vector(s) not in lat:
            missing.append(s)
    return missing


def _extend_left(f: AlgMorphism, B: Presentation) -> AlgMorphism:
    """f (x) id_B."""
    src = tensor_cached(f.source, B)
    dst = tensor_cached(f.target, B)
    nT = f.target.ngens
    return AlgMorphism(src, dst, [place(x, dst, 0) for x in f.images]
                       + [place(g, dst, nT) for g in B.gen_elems()])


def factor_through(c: Coaction, sub: HopfAlgebra, emb: AlgMorphism) -> Coaction:
    """Rewrite c through a sub-Hopf algebra whose R-basis is the image of sub's monomials."""
    A = c.group.algebra
    P = sub.algebra
    basis = P.basis()
    lat = span_lattice([emb.apply(P.monomial(b)) for b in basis], track=True)
    PB = tensor_cached(P, c.space)
    images = []
    for g, x in c.image_map.items():
        parts = {}
        for bexp, a in split_by_space(x, A).items():
            co = lat.coordinates(to_vector(a))
            if co is None:
                raise NotPShapePresentable("mu(%s) has a component %s outside the subalgebra" % (g, a))
            parts[bexp] = from_vector(P, {basis[j]: v for j, v in co.items()})
        images.append(join_parts(parts, PB))
    return Coaction(sub, c.space, images, name=(c.name + " factored") if c.name else "")


def effective_model(c: Coaction, names: Sequence[str] | None = None) -> EffectiveModelResult:
    """Smallest flat sub-Hopf algebra A' of A with mu(B) inside A' (x) B."""
    H = c.group
    A = H.algebra
    comps = coefficient_subalgebra(c)
    gens = list(comps)
    passes = 0
    while True:
        passes += 1
        closure = subalgebra_closure(A, gens)
        lat = span_lattice(closure, track=True)
        missing = _hopf_defect(H, closure, lat)
        if not missing:
            break
        gens = gens + missing
    clat = Lattice([to_vector(b) for b in closure])
    model_gens = degree_one_generators(A, clat)
    names = list(names) if names else ["v%d" % (i + 1) for i in range(len(model_gens))]
    sub = hopf_subalgebra_check(H, model_gens, names)
    if not sub.ok:
        raise NotPShapePresentable(sub.reason)
    if Lattice([to_vector(b) for b in sub.closure]) != clat:
        raise NotPShapePresentable("the closure is not generated by its degree-one rows")
    model, emb = sub.hopf, sub.embedding

    # torsion-free submodule of a free module: free, of rank = number of monomials
    monos = [emb.apply(model.algebra.monomial(b)) for b in model.algebra.basis()]
    flat = span_lattice(monos).rank == len(monos)
    assert flat, "effective model is not flat"

    factored = factor_through(c, model, emb)
    lift = _extend_left(emb, c.space)
    if [lift.apply(x) for x in factored.images] != c.images:
        raise AssertionError("factored coaction does not reproduce the input")

    certificate = {}
    for i, name in enumerate(names):
        others = model_gens[:i] + model_gens[i + 1:]
        olat = Lattice([to_vector(b) for b in subalgebra_closure(A, others)])
        certificate[name] = not all(to_vector(x) in olat for x in comps)
    return EffectiveModelResult(model, emb, factored, certificate, comps, closure, passes, flat)


# -- kernels -------------------------------------------------------------------------

@dataclass
class KernelIdeal:
    """Ideal of the group algebra cutting out the kernel of the action.

    lattice is the ideal as an R-module; on the special fibre it is the
    preimage in R^n of a k-subspace (it contains t * R^n).
    """
    ring: Presentation
    fibre: str
    generators: list
    lattice: Lattice

    @property
    def kernel_rank(self) -> int:
        """Rank of the kernel subgroup scheme, i.e. of A / I."""
        n = self.ring.rank()
        if self.fibre == "special":
            return n - sum(1 for d in self.lattice.pivot_divisors() if d.is_unit())
        return n - self.lattice.rank

    @property
    def is_trivial_kernel(self) -> bool:
        return self.kernel_rank == 1

    def contains(self, x: AlgElem) -> bool:
        return to_vector(x) in self.lattice

    def same_as(self, gens: Sequence[AlgElem]) -> bool:
        return self.lattice == _ideal_module(self.ring, gens, self.fibre == "special")


def _ideal_module(A: Presentation, gens: Sequence[AlgElem], mod_t: bool) -> Lattice:
    if not mod_t:
        return saturate_t_torsion(ideal_lattice(A, gens).rows, A.p)
    t = _t(1, A.p)
    rows = [to_vector(g * A.monomial(m)) for g in gens for m in A.basis()]
    rows += [to_vector(A.monomial(m, t)) for m in A.basis()]
    return Lattice(rows, p=A.p)


def check_hopf_ideal(H: HopfAlgebra, lattice: Lattice, mod_t: bool = False) -> list[str]:
    """Violated conditions among Delta(I) in I(x)A + A(x)I, eps(I) = 0, S(I) in I."""
    A = H.algebra
    n = A.ngens
    A2 = H.square()
    elems = [from_vector(A, r) for r in lattice.rows]
    bad = []
    if any(H.counit_of(x) and not (mod_t and H.counit_of(x).valuation() > 0) for x in elems):
        bad.append("counit")
    S = H.S()
    if not all(to_vector(S.apply(x)) in lattice for x in elems):
        bad.append("antipode")
    monos = [A.monomial(m) for m in A.basis()]
    rows = []
    for x in elems:
        for m in monos:
            rows.append(to_vector(place(x, A2, 0) * place(m, A2, n)))
            rows.append(to_vector(place(m, A2, 0) * place(x, A2, n)))
    if mod_t:
        t = _t(1, A.p)
        rows += [to_vector(A2.monomial(m, t)) for m in A2.basis()]
    J = Lattice(rows, p=A.p)
    delta = H.delta()
    if not all(to_vector(delta.apply(x)) in J for x in elems):
        bad.append("comultiplication")
    return bad


def _action_components(c: Coaction) -> list[AlgElem]:
    A = c.group.algebra
    comps = []
    for g, x in c.image_map.items():
        for a in split_by_space(x - c.trivial_part(c.space.gen(g)), A).values():
            if a not in comps:
                comps.append(a)
    return comps


def action_kernel_ideal(c: Coaction, fibre: str = "generic") -> KernelIdeal:
    """Ideal of the largest subgroup acting trivially, on the generic or special fibre.

    On the generic fibre the ideal is saturated (its closure in A).
    """
    if fibre not in ("generic", "special"):
        raise ValueError("fibre must be 'generic' or 'special'")
    H = c.group
    comps = _action_components(c)
    if fibre == "special":
        H = H.mod_t()
        A = H.algebra
        gens = [x.mod_t(A) for x in comps]
        gens = [x for x in gens if x]
    else:
        A = H.algebra
        gens = comps
    lat = _ideal_module(A, gens, fibre == "special")
    bad = check_hopf_ideal(H, lat, fibre == "special")
    if bad:
        raise NotHopfIdeal("kernel ideal fails: %s" % ", ".join(bad))
    return KernelIdeal(A, fibre, gens, lat)


# -- stabilizers ---------------------------------------------------------------------

@dataclass
class StabilizerIdeal:
    ring: Presentation
    field: object
    generators: list
    basis: list

    @property
    def quotient_rank(self) -> int:
        return self.ring.rank() - len(self.basis)

    def same_as(self, gens: Sequence[Mapping]) -> bool:
        return self.basis == _fq_ideal(self.ring, gens, self.field)


def _fq_mul_monomial(ring: Presentation, x: Mapping, m: tuple, F) -> dict:
    out: dict = {}
    for exps, c in x.items():
        red = ring.reduce(tuple(a + b for a, b in zip(exps, m)))
        for k, v in red.items():
            if k[0]:
                continue  # structure constants of the special fibre only
            key = k[1:]
            y = out.get(key, F.zero()) + c * v
            if y:
                out[key] = y
            else:
                out.pop(key, None)
    return out


def _fq_ideal(ring: Presentation, gens: Sequence[Mapping], F) -> list[dict]:
    vecs = [_fq_mul_monomial(ring, g, m, F) for g in gens for m in ring.basis()]
    return echelon(vecs, F)


def _evaluate_mono(exps: tuple, names: Sequence[str], point: Mapping, F) -> FqElem:
    v = F.one()
    for name, e in zip(names, exps):
        if e:
            v = v * F(point[name]) ** e
    return v


def point_on_fibre(space: Presentation, point: Mapping, field=None) -> bool:
    F = field or GF(space.p)
    Bk = space.mod_t()
    for name, rhs in Bk.rules.items():
        lhs = F(point[name]) ** space.p
        val = F.zero()
        for k, c in rhs.terms.items():
            if k[0] == 0:
                val = val + c * _evaluate_mono(k[1:], Bk.gens, point, F)
        if lhs != val:
            return False
    return True


def stabilizer_ideal(c: Coaction, point: Mapping, field=None) -> StabilizerIdeal:
    """Ideal of the stabilizer of a point of the special fibre, over F_q."""
    F = field or GF(c.p)
    B = c.space
    missing = set(B.gens) - set(point)
    if missing:
        raise PointNotOnFibre("point has no value for %s" % ", ".join(sorted(missing)))
    if not point_on_fibre(B, point, F):
        raise PointNotOnFibre("%r does not satisfy the special fibre equations" % (dict(point),))
    Ak = c.group.algebra.mod_t()
    nA = Ak.ngens
    gens = []
    for g, x in c.image_map.items():
        y = x - c.trivial_part(B.gen(g))
        ev: dict = {}
        for k, v in y.terms.items():
            if k[0]:
                continue
            key = k[1:1 + nA]
            val = ev.get(key, F.zero()) + v * _evaluate_mono(k[1 + nA:], B.gens, point, F)
            if val:
                ev[key] = val
            else:
                ev.pop(key, None)
        if ev:
            gens.append(ev)
    return StabilizerIdeal(Ak, F, gens, _fq_ideal(Ak, gens, F))


def special_fibre_points(space: Presentation, field) -> list[dict]:
    """All F_q-points of the special fibre, by enumeration of the generators' values."""
    elems = list(field.elements())
    out = []
    for values in itertools.product(elems, repeat=space.ngens):
        pt = dict(zip(space.gens, values))
        if point_on_fibre(space, pt, field):
            out.append(pt)
    return out


# -- invariants ----------------------------------------------------------------------

def _monomials(B: Presentation, D: int, only: Sequence[str] | None = None) -> list[tuple]:
    p = B.p
    ranges = []
    for g in B.gens:
        if only is not None and g not in only:
            ranges.append(range(1))
        elif B.is_ruled(g):
            ranges.append(range(min(p, D + 1)))
        else:
            ranges.append(range(D + 1))
    return [e for e in itertools.product(*ranges) if sum(e) <= D]


def invariants(c: Coaction, degree_bound: int | None = None) -> list[AlgElem]:
    """R-basis (Hermite form) of {b : mu(b) = 1 (x) b} among monomials of degree <= D."""
    B = c.space
    D = 2 * c.p if degree_bound is None else degree_bound
    mu = c.morphism()
    monos = [B.monomial(e) for e in _monomials(B, D)]
    images = [to_vector(mu.apply(b) - c.trivial_part(b)) for b in monos]
    lat = Lattice(images, track=True, p=B.p)
    kernel = []
    for k in lat.kernel:
        x = B.zero()
        for j, v in k.items():
            x = x + v * monos[j]
        kernel.append(x)
    return lattice_elements(B, span_lattice(kernel))


def same_span(xs: Sequence[AlgElem], ys: Sequence[AlgElem]) -> bool:
    return span_lattice(xs) == span_lattice(ys)


# -- torsors -------------------------------------------------------------------------

@dataclass
class TorsorCheck:
    ok: bool
    det: AlgElem
    norm: AlgElem
    certificate_ok: bool

    def __bool__(self):
        return self.ok


def _over_base(x: AlgElem, B: Presentation, W: Presentation) -> dict[tuple, AlgElem]:
    """Coordinates of x over R[base] in B's monomial basis."""
    base_idx = [B.index[b] for b in B.base]
    parts: dict[tuple, dict] = {}
    for k, c in x.terms.items():
        fib = tuple(0 if i in base_idx else e for i, e in enumerate(k[1:]))
        parts.setdefault(fib, {})[(k[0],) + tuple(k[1 + i] for i in base_idx)] = c
    return {f: AlgElem(W, d) for f, d in parts.items()}


def torsor_check(c: Coaction) -> TorsorCheck:
    """Is the Galois map B (x)_{R[w]} B -> A (x) B an isomorphism?

    Over B (acting on the right factor) the map has the square matrix
    M[c][a] = coefficient of the group monomial c in mu(Z^a).  Its
    determinant over R[w] is the norm of det_B(M), computed as the
    determinant of multiplication by det_B(M).
    """
    A = c.group.algebra
    B = c.space
    n = A.rank()
    if n is None or B.rank() != n:
        raise RankMismatch("rank(A) = %s but rank of B over its base = %s" % (n, B.rank()))
    mu = c.morphism()
    abasis = A.basis()
    bbasis = B.basis()
    zero = B.zero()
    M = [[zero] * n for _ in range(n)]
    row = {a: i for i, a in enumerate(abasis)}
    for j, b in enumerate(bbasis):
        for a, y in split_by_group(mu.apply(B.monomial(b)), A.ngens, B).items():
            M[row[a]][j] = y
    d = determinant(M, B.one(), zero)

    W = Presentation(B.p, B.base)
    wzero = W.zero()
    mult = [[wzero] * n for _ in range(n)]
    col = {b: i for i, b in enumerate(bbasis)}
    for j, b in enumerate(bbasis):
        for f, y in _over_base(d * B.monomial(b), B, W).items():
            mult[col[f]][j] = y
    cs = charpoly(mult, W.one(), wzero)
    norm = cs[n] if n % 2 == 0 else wzero - cs[n]
    ok = norm.is_constant() and norm.constant().is_unit()

    # Cayley-Hamilton: d * e = norm with e a polynomial in d
    lift = AlgMorphism(W, B, [B.gen(b) for b in B.base])
    e = zero
    for ci in cs[:n]:
        e = e * d + lift.apply(ci)
    if n % 2 == 0:
        e = -e
    certificate_ok = d * e == lift.apply(norm)
    return TorsorCheck(ok, d, norm, certificate_ok)


# -- quotients -----------------------------------------------------------------------

@dataclass
class QuotientAction:
    coaction: Coaction
    subgroup: HopfQuotient
    quotient_group: SubHopf
    invariant_space: Presentation
    inclusion: AlgMorphism
    restricted: Coaction
    report: AxiomReport


def restrict_coaction(c: Coaction, q: HopfQuotient) -> Coaction:
    """The coaction of the closed subgroup with Hopf algebra q.hopf: (pi (x) id) mu."""
    pi = _extend_left(q.projection, c.space)
    return Coaction(q.hopf, c.space, [pi.apply(x) for x in c.images],
                    name=(c.name + " restricted") if c.name else "")


def quotient_action(c: Coaction, subgroup_ideal: Sequence, degree_bound: int | None = None,
                    names: Sequence[str] | None = None) -> QuotientAction:
    """Action of G'/H' on X/H', H' the subgroup cut out by a coordinate Hopf ideal."""
    G = c.group
    B = c.space
    p = B.p
    D = 2 * p if degree_bound is None else degree_bound
    q = quotient_by_hopf_ideal(G, subgroup_ideal)
    restricted = restrict_coaction(c, q)
    inv = invariants(restricted, D)

    # generators of the invariant ring: bare generators of B among the invariants
    ilat = span_lattice(inv)
    chosen = [g for g in B.gens if g in B.base or to_vector(B.gen(g)) in ilat]
    for g in chosen:
        if g in B.base:
            continue
        used = B.rules[g].variables() if B.is_ruled(g) else set()
        if not used <= set(chosen):
            raise NotPShapePresentable("rule of %s involves non-invariant generators" % g)
    mono_span = span_lattice([B.monomial(e) for e in _monomials(B, D, chosen)])
    if mono_span != ilat:
        raise NotPShapePresentable("invariants up to degree %d need more than %s" % (D, chosen))

    keep = [B.index[g] for g in chosen]
    free = Presentation(p, chosen, base=[g for g in chosen if g in B.base])
    rules = {}
    for g, rhs in B.rules.items():
        if g in chosen:
            rules[g] = AlgElem(free, {(k[0],) + tuple(k[1 + i] for i in keep): v
                                      for k, v in rhs.terms.items()})
    Bq = Presentation(p, chosen, rules, base=free.base)
    incl = AlgMorphism(Bq, B, [B.gen(g) for g in chosen])

    coinv = coinvariant_subhopf(G, q, names)
    C = coinv.hopf
    P = C.algebra
    basis = P.basis()
    lat = span_lattice([coinv.embedding.apply(P.monomial(b)) for b in basis], track=True)
    PBq = tensor_cached(P, Bq)
    A = G.algebra
    images = []
    for g in Bq.fibre_gens():
        parts = {}
        for bexp, a in split_by_space(c.image_map[g], A).items():
            if any(e for i, e in enumerate(bexp) if i not in keep):
                raise NotPShapePresentable("mu(%s) leaves the invariant ring" % g)
            co = lat.coordinates(to_vector(a))
            if co is None:
                raise NotPShapePresentable("mu(%s) has a component outside the coinvariants" % g)
            parts[tuple(bexp[i] for i in keep)] = from_vector(P, {basis[j]: v for j, v in co.items()})
        images.append(join_parts(parts, PBq))
    qc = Coaction(C, Bq, images, name=(c.name + " quotient") if c.name else "")
    return QuotientAction(qc, q, coinv, Bq, incl, restricted, verify_coaction_axioms(qc))


def subgroup_image(result: EffectiveModelResult, ideal_gens: Sequence[AlgElem]) -> list[str]:
    """Generators of the model cutting out the image of the subgroup V(ideal_gens) of G.

    The image's ideal is the kernel of A' -> A -> A/I; it must be generated
    by some of the model's generators.
    """
    A = result.embedding.target
    P = result.model.algebra
    I = _ideal_module(A, ideal_gens, False)
    basis = P.basis()
    m = len(basis)
    vecs = [to_vector(result.embedding.apply(P.monomial(b))) for b in basis] + I.rows
    lat = Lattice(vecs, track=True, p=P.p)
    kernel = [from_vector(P, {basis[j]: v for j, v in k.items() if j < m}) for k in lat.kernel]
    klat = span_lattice(kernel)
    names = [g for g in P.gens if to_vector(P.gen(g)) in klat]
    if ideal_lattice(P, [P.gen(g) for g in names]) != klat:
        raise NotHopfIdeal("image of the subgroup is not cut out by model generators")
    return names
