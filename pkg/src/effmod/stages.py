"""Finite stages of a schematic closure, and the universal-injectivity test.

A stage is the ring (A[x]/(x f - t^n)) modulo its t-power torsion.  It is
handled as an R-module: the monomials of A[x] up to a degree bound, modulo
the saturated span of the relation multiples that stay inside the bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AlgElem, AlgMorphism, Presentation, from_vector, place, to_vector
from .dvr import RElem
from .finite_field import GF, echelon
from .pid import Lattice, PidMatrix, saturate_t_torsion, smith_invariants


class ZeroDivisor(ValueError):
    pass


@dataclass
class Stage:
    base: Presentation
    f: AlgElem
    n: int
    ring: Presentation
    variable: str
    degree_bound: int
    monomials: list
    raw: Lattice
    saturated: Lattice

    def embed(self, e: AlgElem) -> AlgElem:
        """A -> A[x]."""
        return place(e, self.ring, 0)

    @property
    def x(self) -> AlgElem:
        return self.ring.gen(self.variable)

    def in_bound(self, e: AlgElem) -> bool:
        allowed = set(self.monomials)
        return all(k in allowed for k in e.coefficients())

    def is_zero(self, e: AlgElem) -> bool:
        """e = 0 in the stage ring (e must lie within the degree bound)."""
        if not self.in_bound(e):
            raise ValueError("element exceeds degree bound %d" % self.degree_bound)
        return to_vector(e) in self.saturated

    def equal(self, a: AlgElem, b: AlgElem) -> bool:
        return self.is_zero(a - b)

    @property
    def module_rank(self) -> int:
        """Free rank of the truncated stage module."""
        return len(self.monomials) - self.saturated.rank

    @property
    def torsion_killed(self) -> bool:
        return self.raw != self.saturated


def _stage_monomials(P: Presentation, d: int) -> list[tuple]:
    ranges = [range(min(P.p, d + 1)) if P.is_ruled(g) else range(d + 1) for g in P.gens]
    return [e for e in itertools.product(*ranges) if sum(e) <= d]


def closure_stage(A: Presentation, f: AlgElem, n: int, degree_bound: int = 4,
                  variable: str | None = None) -> Stage:
    """The n-th stage (A[x_n]/(x_n f - t^n)) / (t-torsion), truncated at degree_bound."""
    if not f:
        raise ZeroDivisor("f must be nonzero")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if A.base:
        raise ValueError("closure stages are built over R, not over a base ring")
    variable = variable or "x%d" % n
    free = Presentation(A.p, list(A.gens) + [variable])
    rules = {g: place(r, free, 0) for g, r in A.rules.items()}
    P = Presentation(A.p, free.gens, rules)
    x = P.gen(variable)
    rel = x * place(f, P, 0) - RElem.t_pow(n, A.p)
    monos = _stage_monomials(P, degree_bound)
    allowed = set(monos)
    rows = []
    for m in monos:
        y = rel * P.monomial(m)
        v = to_vector(y)
        if y and all(k in allowed for k in v):
            rows.append(v)
    raw = Lattice(rows, p=A.p)
    sat = saturate_t_torsion(rows, A.p)
    return Stage(A, f, n, P, variable, degree_bound, monos, raw, sat)


def transition(upper: Stage, lower: Stage) -> AlgMorphism:
    """x_{n+1} -> t x_n, the identity on A; checked against both saturated relation modules."""
    if upper.n != lower.n + 1 or upper.base != lower.base:
        raise ValueError("transition goes from stage n+1 to stage n over the same A")
    nA = upper.base.ngens
    t = RElem.t_pow(1, upper.base.p)
    images = [lower.ring.gen(g) for g in lower.ring.gens[:nA]] + [t * lower.x]
    phi = AlgMorphism(upper.ring, lower.ring, images)
    for r in upper.saturated.rows:
        img = phi.apply(from_vector(upper.ring, r))
        if not lower.in_bound(img) or not lower.is_zero(img):
            raise AssertionError("transition does not respect the stage relations")
    return phi


# -- universal injectivity ----------------------------------------------------------

def _rank_mod_t_power(M: Sequence[Sequence[RElem]], m: int, p: int) -> int:
    """F_p-rank of u (x) R/t^m, with R/t^m spelled out as F_p^m."""
    b = len(M)
    a = len(M[0]) if M else 0
    F = GF(p)
    images = []
    for j in range(a):
        for s in range(m):
            # image of t^s e_j, truncated below t^m
            vec = {}
            for i in range(b):
                for e, c in enumerate(M[i][j].coeffs):
                    if c and e + s < m:
                        vec[(i, e + s)] = F(c)
            images.append(vec)
    return len(echelon(images, F))


@dataclass
class InjectivityReport:
    smith: list
    injective: bool
    injective_mod_t: bool
    cokernel_flat: bool
    universally_injective: bool
    cokernel_free_rank: int
    conditions: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        c = self.conditions
        return c["(1)"] == c["(2)"] == c["(3)"]


def universal_injectivity_check(M: PidMatrix, depth: int = 3) -> InjectivityReport:
    """Conditions (1)-(3) for u: R^a -> R^b given by the b x a matrix M.

    (2) and (3) are read off the Smith invariants; (1) is tested directly
    as injectivity of u (x) R/t^m for m <= depth by F_p-linear algebra.
    """
    rows = M.rows()
    p = M.p
    b, a = M.shape
    inv = smith_invariants(rows, p) if a and b else []
    nonzero = [d for d in inv if d]
    injective = len(nonzero) == a
    injective_mod_t = injective and all(d.is_unit() for d in nonzero)
    coker_flat = all(d.is_unit() for d in nonzero)
    universal = injective and all(_rank_mod_t_power(rows, m, p) == a * m for m in range(1, depth + 1))
    conds = {"(1)": universal, "(2)": injective and injective_mod_t, "(3)": injective and coker_flat}
    report = InjectivityReport(inv, injective, injective_mod_t, coker_flat, universal,
                               b - len(nonzero), conds)
    if conds["(2)"] != conds["(3)"]:
        raise AssertionError("conditions (2) and (3) disagree on %s" % M)
    return report


def family_condition(maps: Sequence[PidMatrix]) -> dict:
    """Condition (4) for M -> prod N_l: the kernels I_l and I_{l,k} meet in 0."""
    if not maps:
        raise ValueError("need at least one map")
    p = maps[0].p
    a = maps[0].shape[1]
    if any(m.shape[1] != a for m in maps):
        raise ValueError("all maps must share the source R^a")
    cols = [{} for _ in range(a)]
    F = GF(p)
    cols_k = [{} for _ in range(a)]
    offset = 0
    for m in maps:
        for i, row in enumerate(m.rows()):
            for j, x in enumerate(row):
                if x:
                    cols[j][offset + i] = x
                c0 = x.const_term()
                if c0:
                    cols_k[j][offset + i] = F(c0)
        offset += m.shape[0]
    # a vector in every kernel is a relation among the columns of the stacked matrix
    generic = Lattice(cols, track=True, p=p).kernel
    special = a - len(echelon(cols_k, F))
    return {"intersection_generic_zero": not generic,
            "intersection_special_zero": special == 0,
            "(4)": not generic and special == 0}
