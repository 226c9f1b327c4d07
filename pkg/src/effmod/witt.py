"""Length-2 Witt vectors and their twisted forms W_2^lam.

Point-level operations take coordinates in any commutative ring of
characteristic p whose elements expose ``.p`` (RElem, AlgElem, FqElem);
lam, mu, nu just need to multiply those coordinates.

Sign convention: the carry term is  +lam * sum_k beta(p,k) x^k y^(p-k).
The ghost-component derivation gives the opposite sign; the two laws are
isomorphic through (u1, u2) -> (u1, -u2), and everything here (kernels,
torsor equations) is consistent with the + convention.
"""

from __future__ import annotations

from typing import NamedTuple

from .dvr import beta


class InternalMismatch(AssertionError):
    pass


class WittPoint(NamedTuple):
    a1: object
    a2: object


def _char(P, p):
    if p is not None:
        return p
    return P[0].p


def carry(lam, x, y, p: int):
    """lam * sum_{k=1}^{p-1} beta(p,k) x^k y^(p-k)."""
    acc = 0 * x
    for k in range(1, p):
        acc = acc + beta(p, k) * (x ** k) * (y ** (p - k))
    return lam * acc


def witt_add(lam, P, Q, p: int | None = None) -> WittPoint:
    p = _char(P, p)
    return WittPoint(P[0] + Q[0], P[1] + Q[1] + carry(lam, P[0], Q[0], p))


def witt_neg(lam, P, p: int | None = None) -> WittPoint:
    """The inverse: solve (a1, a2) + (b1, b2) = (0, 0) for b."""
    p = _char(P, p)
    b1 = -P[0]
    return WittPoint(b1, -P[1] - carry(lam, P[0], b1, p))


def witt_sub(lam, P, Q, p: int | None = None) -> WittPoint:
    return witt_add(lam, P, witt_neg(lam, Q, p), p)


def witt_zero(like) -> WittPoint:
    return WittPoint(0 * like, 0 * like)


def witt_mul_int(lam, n: int, P, p: int | None = None) -> WittPoint:
    """n-fold sum P + ... + P by repeated addition."""
    acc = witt_zero(P[0])
    for _ in range(n):
        acc = witt_add(lam, acc, P, p)
    return acc


def point_order(lam, P, p: int | None = None, limit: int = 10_000) -> int:
    zero = witt_zero(P[0])
    acc = P
    for n in range(1, limit + 1):
        if acc == zero:
            return n
        acc = witt_add(lam, acc, P, p)
    raise ValueError("order exceeds %d" % limit)


def hom_I(lam, mu, nu, P, p: int | None = None) -> WittPoint:
    """I^nu_{lam,mu}: W_2^lam -> W_2^{lam*mu}, (u1, u2) -> (nu u1, mu nu^p u2)."""
    p = _char(P, p)
    return WittPoint(nu * P[0], mu * (nu ** p) * P[1])


def frobenius_F(lam, P, p: int | None = None) -> WittPoint:
    """F_lam: W_2^lam -> W_2^{lam^p}, coordinatewise p-th power."""
    p = _char(P, p)
    return WittPoint(P[0] ** p, P[1] ** p)


def phi_closed_form(lam, nu, P, p: int | None = None) -> WittPoint:
    """Expanded phi_{lam,nu}(u1, u2).

    (u1^p - nu u1, u2^p - nu^p lam^(p-1) u2 + lam^p sum beta(p,k) u1^(pk) (-nu u1)^(p-k)).
    For p = 2 the Witt difference carries one more term, lam^2 nu^2 u1^2,
    which vanishes identically for odd p.
    """
    p = _char(P, p)
    u1, u2 = P
    lp = lam ** p
    first = u1 ** p - nu * u1
    acc = 0 * u1
    for k in range(1, p):
        acc = acc + beta(p, k) * (u1 ** (p * k)) * ((-(nu * u1)) ** (p - k))
    second = u2 ** p - (nu ** p) * (lam ** (p - 1)) * u2 + lp * acc
    if p == 2:
        second = second + lp * (nu ** 2) * (u1 ** 2)
    return WittPoint(first, second)


def isogeny_phi(lam, nu, P, p: int | None = None) -> WittPoint:
    """phi_{lam,nu} = F_lam - I^nu_{lam, lam^(p-1)}, as a difference in W_2^{lam^p}.

    Computed both ways; the two must agree.
    """
    p = _char(P, p)
    lp = lam ** p
    direct = witt_sub(lp, frobenius_F(lam, P, p), hom_I(lam, lam ** (p - 1), nu, P, p), p)
    closed = phi_closed_form(lam, nu, P, p)
    if direct != closed:
        raise InternalMismatch("phi: definitional and expanded forms differ")
    return direct


def witt_hopf(lam, p: int):
    """W_2^lam as a Hopf algebra on the free presentation R[u1, u2]."""
    from .hopf import w2_hopf

    return w2_hopf(lam, p, rules=None)
