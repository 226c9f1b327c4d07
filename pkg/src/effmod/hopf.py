"""Commutative Hopf algebras on presentations.

The structure maps are stored on generators: comult[i] lives in A (x) A
(the tensor square with primed names), counit[i] in R, antipode[i] in A.
Checks only need generators because every map involved is an algebra map
(A is commutative).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (AlgElem, AlgMorphism, Presentation, from_vector, place,
                      span_lattice, subalgebra_closure, tensor_cached, tensor_power,
                      to_vector)
from .dvr import RElem, as_relem
from .pid import Lattice, smith_invariants
from .witt import WittPoint, witt_add, witt_neg


class OddPrimeRequired(ValueError):
    pass


class NotHopfIdeal(ValueError):
    pass


class NotPShapePresentable(ValueError):
    pass


def trivial_algebra(p: int) -> Presentation:
    return Presentation(p, [])


@dataclass
class HopfAlgebra:
    algebra: Presentation
    comult: list
    counit: list
    antipode: list
    name: str = ""

    def __post_init__(self):
        A = self.algebra
        A2 = tensor_power(A, 2)
        self.comult = [x if isinstance(x, AlgElem) else A2.element(x) for x in self.comult]
        self.comult = [x if x.ring is A2 else AlgElem(A2, x.terms) for x in self.comult]
        self.counit = [as_relem(c, A.p) for c in self.counit]
        self.antipode = [x if isinstance(x, AlgElem) else A.element(x) for x in self.antipode]

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def gens(self):
        return self.algebra.gens

    def rank(self):
        return self.algebra.rank()

    def square(self) -> Presentation:
        return tensor_power(self.algebra, 2)

    def delta(self) -> AlgMorphism:
        return AlgMorphism(self.algebra, self.square(), self.comult)

    def eps(self) -> AlgMorphism:
        R = trivial_algebra(self.p)
        return AlgMorphism(self.algebra, R, [R.const(c) for c in self.counit])

    def S(self) -> AlgMorphism:
        return AlgMorphism(self.algebra, self.algebra, self.antipode)

    def counit_of(self, e: AlgElem) -> RElem:
        return self.eps().apply(e).constant()

    def mod_t(self) -> "HopfAlgebra":
        Ak = self.algebra.mod_t()
        A2k = tensor_power(Ak, 2)
        return HopfAlgebra(
            Ak,
            [x.mod_t(A2k) for x in self.comult],
            [c.const_term() for c in self.counit],
            [x.mod_t(Ak) for x in self.antipode],
            name=(self.name + " mod t") if self.name else "",
        )

    def __str__(self):
        return self.name or "HopfAlgebra(%s)" % ", ".join(self.gens)


@dataclass
class AxiomReport:
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self):
        return self.ok

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def verify_hopf_axioms(H: HopfAlgebra) -> AxiomReport:
    A = H.algebra
    n = A.ngens
    A2 = H.square()
    A3 = tensor_power(A, 3)
    gens = A.gen_elems()
    report = AxiomReport()

    report.checks["comult_respects_rules"] = not H.delta().check_well_defined()
    report.checks["counit_respects_rules"] = not H.eps().check_well_defined()
    report.checks["antipode_respects_rules"] = not H.S().check_well_defined()

    delta_id = AlgMorphism(A2, A3, [place(d, A3, 0) for d in H.comult]
                           + [place(g, A3, 2 * n) for g in gens])
    id_delta = AlgMorphism(A2, A3, [place(g, A3, 0) for g in gens]
                           + [place(d, A3, n) for d in H.comult])
    report.checks["coassociativity"] = all(
        delta_id.apply(d) == id_delta.apply(d) for d in H.comult)

    eps_id = AlgMorphism(A2, A, [A.const(c) for c in H.counit] + gens)
    id_eps = AlgMorphism(A2, A, gens + [A.const(c) for c in H.counit])
    report.checks["left_counit"] = all(eps_id.apply(d) == g for d, g in zip(H.comult, gens))
    report.checks["right_counit"] = all(id_eps.apply(d) == g for d, g in zip(H.comult, gens))

    s_id = AlgMorphism(A2, A, list(H.antipode) + gens)
    id_s = AlgMorphism(A2, A, gens + list(H.antipode))
    report.checks["left_antipode"] = all(
        s_id.apply(d) == A.const(c) for d, c in zip(H.comult, H.counit))
    report.checks["right_antipode"] = all(
        id_s.apply(d) == A.const(c) for d, c in zip(H.comult, H.counit))
    return report


# -- constructors ------------------------------------------------------------------

def w2_hopf(lam, p: int, rules=None, names=("u1", "u2"), name: str = "") -> HopfAlgebra:
    """Group law of W_2^lam on R[u1, u2] modulo the given p-shape rules."""
    lam = as_relem(lam, p)
    A = Presentation(p, names, rules)
    A2 = tensor_power(A, 2)
    u1, u2 = A.gen_elems()
    P = WittPoint(place(u1, A2, 0), place(u2, A2, 0))
    Q = WittPoint(place(u1, A2, 2), place(u2, A2, 2))
    s = witt_add(lam, P, Q)
    neg = witt_neg(lam, WittPoint(u1, u2))
    return HopfAlgebra(A, [s.a1, s.a2], [0, 0], [neg.a1, neg.a2], name=name)


def constant_group_zp2(p: int) -> HopfAlgebra:
    """R[Z/p^2] = R[u1,u2]/(u1^p - u1, u2^p - u2) with the Witt comultiplication."""
    return w2_hopf(1, p, rules={"u1": 1, "u2": 1}, name="(Z/p^2)_R")


def kernel_group_K(lam, nu, p: int, names=("u1", "u2")) -> HopfAlgebra:
    """ker(phi_{lam,nu}) = R[u1,u2]/(u1^p - nu u1, u2^p - nu^p lam^(p-1) u2), p odd."""
    if p == 2:
        raise OddPrimeRequired("the presentation of K_{lam,nu} is only known for p > 2")
    lam = as_relem(lam, p)
    nu = as_relem(nu, p)
    rules = {names[0]: nu, names[1]: nu ** p * lam ** (p - 1)}
    return w2_hopf(lam, p, rules=rules, names=names, name="K_{%s,%s}" % (lam, nu))


def group_M(nu, p: int, name: str = "x") -> HopfAlgebra:
    """M_nu = ker(x -> x^p - nu x) on G_a: R[x]/(x^p - nu x), x primitive."""
    nu = as_relem(nu, p)
    A = Presentation(p, [name], {name: nu})
    A2 = tensor_power(A, 2)
    x = A.gen(name)
    return HopfAlgebra(A, [place(x, A2, 0) + place(x, A2, 1)], [0], [-x], name="M_{%s}" % nu)


# -- sub-Hopf algebras --------------------------------------------------------------

def tensor_coordinates(X: AlgElem, split: int, left: Lattice, right: Lattice):
    """Coordinates Y[j,k] with X = sum Y[j,k] g_j (x) h_k, or None.

    g_j, h_k are the generators of the two (tracked) lattices, assumed
    independent.  X is split after `split` generators of its ring.
    """
    columns: dict[tuple, dict] = {}
    for exps, c in X.coefficients().items():
        columns.setdefault(exps[split:], {})[exps[:split]] = c
    W: dict[int, dict] = {}
    for rexp, col in columns.items():
        co = left.coordinates(col)
        if co is None:
            return None
        for j, c in co.items():
            W.setdefault(j, {})[rexp] = c
    Y = {}
    for j, row in W.items():
        co = right.coordinates(row)
        if co is None:
            return None
        for k, c in co.items():
            Y[(j, k)] = c
    return Y


def pshape_coefficient(g: AlgElem):
    """c with g^p = c*g, or None."""
    if not g:
        return RElem.zero(g.p)
    gp = g ** g.p
    exps, a = next(iter(g.coefficients().items()))
    b = gp.coefficient(exps)
    q, r = b.divmod(a)
    if r or gp != q * g:
        return None
    return q


def _default_names(A: Presentation, gens, prefix="v"):
    names = []
    for i, g in enumerate(gens):
        bare = [k for k in g.terms]
        if len(bare) == 1 and g.terms[bare[0]] == 1 and bare[0][0] == 0 and sum(bare[0][1:]) == 1:
            names.append(A.gens[bare[0][1:].index(1)])
        else:
            names.append("%s%d" % (prefix, i + 1))
    return names


@dataclass
class SubHopf:
    ok: bool
    closure: list
    hopf: HopfAlgebra | None = None
    embedding: AlgMorphism | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def induced_hopf(H: HopfAlgebra, gens: Sequence[AlgElem], names=None) -> tuple[HopfAlgebra, AlgMorphism]:
    """Hopf structure on R[v_i]/(v_i^p - c_i v_i) where v_i = gens[i] in H.

    Requires the monomials in gens to be an R-basis of a Hopf-stable subalgebra.
    """
    A = H.algebra
    p = A.p
    names = list(names) if names else _default_names(A, gens)
    coeffs = []
    for name, g in zip(names, gens):
        c = pshape_coefficient(g)
        if c is None:
            raise NotPShapePresentable("%s = %s does not satisfy x^p = c*x" % (name, g))
        coeffs.append(c)
    P = Presentation(p, names, dict(zip(names, coeffs)))
    emb = AlgMorphism(P, A, list(gens))
    basis = P.basis()
    monos = [emb.apply(P.monomial(b)) for b in basis]
    lat = span_lattice(monos, track=True)
    closure = Lattice([to_vector(b) for b in subalgebra_closure(A, gens)])
    if lat.rank != len(monos) or Lattice(lat.rows) != closure:
        raise NotPShapePresentable("monomials in %s do not form a basis of the subalgebra" % names)

    P2 = tensor_power(P, 2)
    n = A.ngens
    delta = H.delta()
    comult = []
    for name, g in zip(names, gens):
        Y = tensor_coordinates(delta.apply(g), n, lat, lat)
        if Y is None:
            raise NotPShapePresentable("comultiplication of %s leaves the subalgebra" % name)
        comult.append(from_vector(P2, {basis[j] + basis[k]: c for (j, k), c in Y.items()}))
    antipode = []
    for name, g in zip(names, gens):
        co = lat.coordinates(to_vector(H.S().apply(g)))
        if co is None:
            raise NotPShapePresentable("antipode of %s leaves the subalgebra" % name)
        antipode.append(from_vector(P, {basis[j]: c for j, c in co.items()}))
    counit = [H.counit_of(g) for g in gens]
    return HopfAlgebra(P, comult, counit, antipode), emb


def hopf_subalgebra_check(H: HopfAlgebra, gens: Sequence[AlgElem], names=None) -> SubHopf:
    """Is the subalgebra generated by gens stable under comultiplication and antipode?

    On success the induced Hopf algebra is returned, presented by gens when
    they satisfy p-shape rules; otherwise NotPShapePresentable is raised.
    """
    A = H.algebra
    closure = subalgebra_closure(A, gens)
    lat = span_lattice(closure, track=True)
    delta = H.delta()
    S = H.S()
    for b in closure:
        if tensor_coordinates(delta.apply(b), A.ngens, lat, lat) is None:
            return SubHopf(False, closure, reason="comultiplication of %s leaves the subalgebra" % b)
        if to_vector(S.apply(b)) not in lat:
            return SubHopf(False, closure, reason="antipode of %s leaves the subalgebra" % b)
    hopf, emb = induced_hopf(H, gens, names)
    return SubHopf(True, closure, hopf, emb)


def degree_one_generators(A: Presentation, lat: Lattice) -> list[AlgElem]:
    """Hermite rows whose pivot is a single generator, in generator order."""
    picked = []
    for row, piv in zip(lat.rows, lat.pivots):
        if sum(piv) == 1:
            picked.append((piv.index(1), from_vector(A, row)))
    return [e for _, e in sorted(picked, key=lambda x: x[0])]


# -- quotients and coinvariants ----------------------------------------------------

@dataclass
class HopfQuotient:
    hopf: HopfAlgebra
    projection: AlgMorphism
    ideal_gens: tuple


def _gen_names(H: HopfAlgebra, ideal_gens) -> list[str]:
    names = []
    for g in ideal_gens:
        if isinstance(g, str):
            names.append(g)
            continue
        ks = list(g.terms)
        if len(ks) != 1 or ks[0][0] != 0 or sum(ks[0][1:]) != 1 or g.terms[ks[0]] != 1:
            raise NotHopfIdeal("%s is not a generator; only coordinate ideals are supported" % g)
        names.append(H.gens[ks[0][1:].index(1)])
    return names


def quotient_by_hopf_ideal(H: HopfAlgebra, ideal_gens: Sequence) -> HopfQuotient:
    """Quotient by the ideal generated by some of the generators (verified Hopf ideal)."""
    A = H.algebra
    p = A.p
    drop = set(_gen_names(H, ideal_gens))
    keep = [g for g in A.gens if g not in drop]
    if not A.is_pshape():
        raise NotHopfIdeal("coordinate ideals need p-shape rules")
    A2 = H.square()
    nA = A.ngens
    kill2 = AlgMorphism(A2, A2, [A2.zero() if A.gens[i % nA] in drop else A2.gen(g)
                                 for i, g in enumerate(A2.gens)])
    kill = AlgMorphism(A, A, [A.zero() if g in drop else A.gen(g) for g in A.gens])
    for name in drop:
        i = A.index[name]
        if kill2.apply(H.comult[i]):
            raise NotHopfIdeal("Delta(%s) not in I(x)H + H(x)I" % name)
        if H.counit[i]:
            raise NotHopfIdeal("counit of %s is nonzero" % name)
        if kill.apply(H.antipode[i]):
            raise NotHopfIdeal("S(%s) not in I" % name)
    Q = Presentation(p, keep, {g: A.pshape[A.index[g]] for g in keep if A.index[g] in A.pshape})
    Q2 = tensor_power(Q, 2)
    proj = AlgMorphism(A, Q, [Q.zero() if g in drop else Q.gen(g) for g in A.gens])
    proj2 = AlgMorphism(A2, Q2, [place(proj.images[i % nA], Q2, 0 if i < nA else Q.ngens)
                                 for i in range(2 * nA)])
    comult = [proj2.apply(H.comult[A.index[g]]) for g in keep]
    antipode = [proj.apply(H.antipode[A.index[g]]) for g in keep]
    counit = [H.counit[A.index[g]] for g in keep]
    return HopfQuotient(HopfAlgebra(Q, comult, counit, antipode), proj, tuple(sorted(drop, key=A.index.get)))


def coinvariant_subhopf(H: HopfAlgebra, quotient: HopfQuotient, names=None) -> SubHopf:
    """Sub-Hopf algebra {b : (pi (x) id) Delta(b) = 1 (x) b} for the projection pi."""
    A = H.algebra
    Q = quotient.hopf.algebra
    QA = tensor_cached(Q, A)
    nQ = Q.ngens
    proj_id = AlgMorphism(H.square(), QA,
                          [place(x, QA, 0) for x in quotient.projection.images]
                          + [place(g, QA, nQ) for g in A.gen_elems()])
    delta = H.delta()
    basis = A.basis()
    images = []
    for exps in basis:
        b = A.monomial(exps)
        images.append(to_vector(proj_id.apply(delta.apply(b)) - place(b, QA, nQ)))
    lat = Lattice(images, track=True, p=A.p)
    kernel = [from_vector(A, {basis[j]: c for j, c in k.items()}) for k in lat.kernel]
    klat = span_lattice(kernel)
    gens = degree_one_generators(A, klat)
    result = hopf_subalgebra_check(H, gens, names)
    if Lattice([to_vector(b) for b in result.closure]) != klat:
        raise NotPShapePresentable("coinvariants are not generated by their degree-one rows")
    return result


# -- isomorphisms ------------------------------------------------------------------

@dataclass
class IsoCheck:
    hopf_compatible: bool
    well_defined: bool
    smith: list
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.well_defined and self.hopf_compatible and self.smith is not None
                and all(d.is_unit() for d in self.smith))

    def __bool__(self):
        return self.ok


def hopf_map_compatible(A: HopfAlgebra, B: HopfAlgebra, f: AlgMorphism) -> dict:
    nA = A.algebra.ngens
    B2 = B.square()
    ff = AlgMorphism(A.square(), B2, [place(f.images[i % nA], B2, 0 if i < nA else B.algebra.ngens)
                                      for i in range(2 * nA)])
    dB = B.delta()
    SB = B.S()
    gens = A.algebra.gen_elems()
    return {
        "comult": all(ff.apply(d) == dB.apply(f.apply(g)) for d, g in zip(A.comult, gens)),
        "counit": all(B.counit_of(f.apply(g)) == c for g, c in zip(gens, A.counit)),
        "antipode": all(SB.apply(f.apply(g)) == f.apply(s) for g, s in zip(gens, A.antipode)),
    }


def hopf_iso_check(A: HopfAlgebra, B: HopfAlgebra, gen_map) -> IsoCheck:
    """Is gen_map: A -> B an isomorphism of Hopf algebras over R?"""
    f = gen_map if isinstance(gen_map, AlgMorphism) else AlgMorphism(A.algebra, B.algebra, gen_map)
    well = not f.check_well_defined()
    details = hopf_map_compatible(A, B, f) if well else {}
    compatible = well and all(details.values())
    smith = None
    if A.rank() is not None and A.rank() == B.rank():
        smith = smith_invariants(f.matrix(), A.p)
    return IsoCheck(compatible, well, smith, details)
