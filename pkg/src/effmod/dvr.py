"""Exact arithmetic in F_p and in R = F_p[t].

R stands in for the complete discrete valuation ring k[[t]] with
uniformizer t.  Every constant that shows up in the examples is a
monomial in t, so exact polynomials are enough and no precision is
ever tracked.  Units follow the power-series convention: an element is
a unit iff its constant term is nonzero.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

INF = math.inf


class NotDivisible(ArithmeticError):
    pass


class BadIndex(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod %d" % p)
    return pow(a, p - 2, p)


def beta(p: int, k: int) -> int:
    """C(p, k)/p reduced mod p, computed with exact integers."""
    if not 1 <= k <= p - 1:
        raise BadIndex("beta(%d, %d): need 1 <= k <= p-1" % (p, k))
    return (math.comb(p, k) // p) % p


class RElem:
    """Polynomial in t over F_p, coefficients low degree first.

    Immutable; the zero polynomial has the empty coefficient tuple.
    """

    __slots__ = ("p", "coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int], p: int):
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.p = p
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple, p: int) -> "RElem":
        # coeffs already reduced and trimmed
        obj = object.__new__(cls)
        obj.p = p
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, p: int) -> "RElem":
        return cls._raw((), p)

    @classmethod
    def one(cls, p: int) -> "RElem":
        return cls._raw((1,), p)

    @classmethod
    def const(cls, c: int, p: int) -> "RElem":
        return cls((c,), p)

    @classmethod
    def t_pow(cls, n: int, p: int, c: int = 1) -> "RElem":
        if n < 0:
            raise ValueError("negative power of t")
        return cls([0] * n + [c], p)

    # -- predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def is_unit(self) -> bool:
        return bool(self.coeffs) and self.coeffs[0] != 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INF

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def const_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "RElem":
        if isinstance(other, RElem):
            if other.p != self.p:
                raise ValueError("mixing primes %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return RElem((other,), self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, p = self.coeffs, other.coeffs, self.p
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        while out and out[-1] == 0:
            out.pop()
        return RElem._raw(tuple(out), p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return RElem._raw(tuple((-c) % p for c in self.coeffs), p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, p = self.coeffs, other.coeffs, self.p
        if not a or not b:
            return RElem._raw((), p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        out = [c % p for c in out]
        while out and out[-1] == 0:
            out.pop()
        return RElem._raw(tuple(out), p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = RElem.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, n: int) -> "RElem":
        """Multiply by t^n."""
        if not self.coeffs:
            return self
        return RElem._raw((0,) * n + self.coeffs, self.p)

    def scale(self, c: int) -> "RElem":
        return RElem([c * x for x in self.coeffs], self.p)

    def divmod(self, other: "RElem"):
        """Euclidean division in F_p[t]."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        p = self.p
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv = inv_mod(other.coeffs[-1], p)
        if len(rem) - 1 < db:
            return RElem._raw((), p), self
        quo = [0] * (len(rem) - db)
        for i in range(len(rem) - 1 - db, -1, -1):
            c = rem[i + db] * inv % p
            quo[i] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[i + j] = (rem[i + j] - c * y) % p
        return RElem(quo, p), RElem(rem[:db], p)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "RElem":
        if not self.coeffs:
            return self
        return self.scale(inv_mod(self.coeffs[-1], self.p))

    def div_t_exact(self, n: int) -> "RElem":
        if not self.coeffs:
            return self
        if self.valuation() < n:
            raise NotDivisible("t^%d does not divide %s" % (n, self))
        return RElem._raw(self.coeffs[n:], self.p)

    def t_part(self) -> "RElem":
        """Strip the t-power factor: a = t^v(a) * a.t_part()."""
        if not self.coeffs:
            return self
        return self.div_t_exact(self.valuation())

    def evaluate(self, x):
        """Horner evaluation at x (any ring element accepting int arithmetic)."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- comparison / printing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RElem):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == RElem((other,), self.p).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.coeffs))
        return self._hash

    def __repr__(self):
        return "RElem(%r, p=%d)" % (format_relem(self), self.p)

    def __str__(self):
        return format_relem(self)


def r_arith(op: str, a: RElem, b: RElem) -> RElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown op %r" % op)


def valuation(a: RElem):
    return a.valuation()


def div_t_exact(a: RElem, n: int) -> RElem:
    return a.div_t_exact(n)


def is_unit(a: RElem) -> bool:
    return a.is_unit()


def gcd(a: RElem, b: RElem) -> RElem:
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: RElem, b: RElem):
    """Return (g, x, y) with x*a + y*b = g and g monic (or zero)."""
    p = a.p
    r0, r1 = a, b
    s0, s1 = RElem.one(p), RElem.zero(p)
    u0, u1 = RElem.zero(p), RElem.one(p)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if r0:
        c = inv_mod(r0.lead(), p)
        r0, s0, u0 = r0.scale(c), s0.scale(c), u0.scale(c)
    return r0, s0, u0


def format_relem(a: RElem) -> str:
    if not a.coeffs:
        return "0"
    parts = []
    for i, c in enumerate(a.coeffs):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = "t" if i == 1 else "t^%d" % i
            parts.append(mono if c == 1 else "%d*%s" % (c, mono))
    return " + ".join(parts)


_TERM = re.compile(r"^(?:(\d+)\s*\*?\s*)?(t(?:\s*\^\s*(\d+))?)?$")


def parse_relem(text: str, p: int) -> RElem:
    """Parse "c0 + c1*t + c2*t^2"; coefficients may also be omitted or negative."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    out = {}
    for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", text):
        body = body.strip()
        m = _TERM.match(body)
        if not m or not (m.group(1) or m.group(2)):
            raise ValueError("bad term %r in %r" % (body, text))
        c = int(m.group(1)) if m.group(1) else 1
        if m.group(2):
            e = int(m.group(3)) if m.group(3) else 1
        else:
            e = 0
        if sign == "-":
            c = -c
        out[e] = out.get(e, 0) + c
    top = max(out)
    return RElem([out.get(i, 0) for i in range(top + 1)], p)


def as_relem(x, p: int) -> RElem:
    if isinstance(x, RElem):
        return x
    if isinstance(x, int):
        return RElem((x,), p)
    if isinstance(x, str):
        return parse_relem(x, p)
    if isinstance(x, Sequence):
        return RElem(x, p)
    raise TypeError("cannot make an element of F_%d[t] from %r" % (p, x))
