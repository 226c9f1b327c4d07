"""Points of finite Hopf algebras with values in finite fields.

R = F_p[t] maps to F_q by t -> tau.  The points are the algebra maps
A -> F_q, found by enumerating generator values; the group law is
convolution through the comultiplication.  This gives an oracle that
does not depend on the symbolic axiom checker.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import AlgElem
from .finite_field import FiniteField, FqElem
from .hopf import HopfAlgebra


def evaluate(e: AlgElem, values, field: FiniteField, tau=0) -> FqElem:
    """Image of e under t -> tau, generator i -> values[i]."""
    tau = field(tau)
    acc = field.zero()
    for k, c in e.terms.items():
        v = field(c) * tau ** k[0]
        for x, n in zip(values, k[1:]):
            if n:
                v = v * x ** n
        acc = acc + v
    return acc


def is_point(H: HopfAlgebra, values, field: FiniteField, tau=0) -> bool:
    A = H.algebra
    for name, rhs in A.rules.items():
        i = A.index[name]
        if values[i] ** A.p != evaluate(rhs, values, field, tau):
            return False
    return True


def hopf_points(H: HopfAlgebra, field: FiniteField, tau=0) -> list[tuple]:
    if not H.algebra.is_finite():
        raise ValueError("points are enumerated for finite Hopf algebras only")
    elems = list(field.elements())
    return [vals for vals in itertools.product(elems, repeat=H.algebra.ngens)
            if is_point(H, vals, field, tau)]


@dataclass
class PointGroup:
    hopf: HopfAlgebra
    field: FiniteField
    tau: object
    points: list

    def mul(self, f, g) -> tuple:
        vals = tuple(f) + tuple(g)
        return tuple(evaluate(d, vals, self.field, self.tau) for d in self.hopf.comult)

    def identity(self) -> tuple:
        return tuple(self.field(c.evaluate(self.field(self.tau))) for c in self.hopf.counit)

    def inverse(self, f) -> tuple:
        return tuple(evaluate(s, f, self.field, self.tau) for s in self.hopf.antipode)

    def order(self, f, limit: int = 10_000) -> int:
        e = self.identity()
        acc = f
        for n in range(1, limit + 1):
            if acc == e:
                return n
            acc = self.mul(acc, f)
        raise ValueError("order exceeds %d" % limit)

    def check_axioms(self) -> dict:
        pts = self.points
        pset = set(pts)
        e = self.identity()
        prods = {(f, g): self.mul(f, g) for f in pts for g in pts}
        return {
            "closure": all(v in pset for v in prods.values()),
            "identity": e in pset and all(self.mul(e, f) == f == self.mul(f, e) for f in pts),
            "inverses": all(self.mul(f, self.inverse(f)) == e == self.mul(self.inverse(f), f)
                            for f in pts),
            "associativity": all(prods[(prods[(f, g)], h)] == prods[(f, prods[(g, h)])]
                                 for f in pts for g in pts for h in pts),
            "commutativity": all(prods[(f, g)] == prods[(g, f)] for f in pts for g in pts),
        }


def point_group(H: HopfAlgebra, field: FiniteField, tau=0) -> PointGroup:
    return PointGroup(H, field, tau, hopf_points(H, field, tau))


def root_count(c, field: FiniteField, p: int, tau=0) -> int:
    """#{x in F_q : x^p = c(tau) x}, from the structure of F_q^* (cyclic of order q - 1)."""
    from math import gcd
    a = field(c.evaluate(field(tau)))
    if not a:
        return 1
    # x^(p-1) = a is solvable iff a^((q-1)/g) = 1, g = gcd(p-1, q-1); then g roots
    g = gcd(p - 1, field.q - 1)
    if a ** ((field.q - 1) // g) != field.one():
        return 1
    return g + 1


def predicted_order(H: HopfAlgebra, field: FiniteField, tau=0) -> int:
    """For a triangular p-shape presentation: product of the per-generator root counts."""
    A = H.algebra
    n = 1
    for i in range(A.ngens):
        n *= root_count(A.pshape[i], field, A.p, tau)
    return n
