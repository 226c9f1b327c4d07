"""Small finite fields F_{p^e}, for point enumeration on special fibres."""

from __future__ import annotations

import itertools
from functools import lru_cache


def _poly_mulmod(a, b, mod, p):
    e = len(mod) - 1
    out = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    # mod is monic, low degree first
    for i in range(len(out) - 1, e - 1, -1):
        c = out[i]
        if c:
            for j in range(e + 1):
                out[i - e + j] = (out[i - e + j] - c * mod[j]) % p
    return tuple(out[:e])


def _is_irreducible(mod, p):
    e = len(mod) - 1
    if e == 1:
        return True
    # no roots suffices for e <= 3
    if e <= 3:
        for x in range(p):
            if sum(c * pow(x, i, p) for i, c in enumerate(mod)) % p == 0:
                return False
        return True
    raise NotImplementedError("only degrees up to 3")


@lru_cache(maxsize=None)
def GF(p: int, e: int = 1) -> "FiniteField":
    return FiniteField(p, e)


class FiniteField:
    def __init__(self, p: int, e: int):
        self.p = p
        self.e = e
        self.q = p ** e
        if e == 1:
            self.modulus = (0, 1)
        else:
            for low in itertools.product(range(p), repeat=e):
                mod = tuple(low) + (1,)
                if _is_irreducible(mod, p):
                    self.modulus = mod
                    break

    def __call__(self, x) -> "FqElem":
        if isinstance(x, FqElem):
            return x
        if isinstance(x, int):
            return FqElem(self, (x % self.p,) + (0,) * (self.e - 1))
        return FqElem(self, tuple(c % self.p for c in x))

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        """Class of X in F_p[X]/(modulus)."""
        if self.e == 1:
            return self(0)
        return self((0, 1) + (0,) * (self.e - 2))

    def elements(self):
        for cs in itertools.product(range(self.p), repeat=self.e):
            yield FqElem(self, tuple(cs))

    def __repr__(self):
        return "GF(%d^%d)" % (self.p, self.e)


class FqElem:
    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, c: tuple):
        self.field = field
        self.c = c

    @property
    def p(self):
        return self.field.p

    def _coerce(self, other):
        if isinstance(other, FqElem):
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple(-a % p for a in self.c))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        if f.e == 1:
            return FqElem(f, (self.c[0] * other.c[0] % f.p,))
        return FqElem(f, _poly_mulmod(self.c, other.c, f.modulus, f.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of 0 in %r" % self.field)
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.c == other.c and self.field.q == other.field.q

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        if self.field.e == 1:
            return str(self.c[0])
        return "[%s]" % ",".join(map(str, self.c))


def echelon(vectors, field: FiniteField) -> list[dict]:
    """Reduced row echelon basis of the F_q-span of sparse vectors {key: FqElem}."""
    rows: list[tuple] = []  # (pivot key, row) with pivot entry 1
    for v in vectors:
        v = {k: field(c) for k, c in v.items()}
        v = {k: c for k, c in v.items() if c}
        for piv, r in rows:
            c = v.get(piv)
            if c:
                for k, x in r.items():
                    y = v.get(k, field.zero()) - c * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
        if not v:
            continue
        piv = min(v)
        inv = v[piv].inverse()
        v = {k: c * inv for k, c in v.items()}
        for i, (pj, r) in enumerate(rows):
            c = r.get(piv)
            if c:
                for k, x in v.items():
                    y = r.get(k, field.zero()) - c * x
                    if y:
                        r[k] = y
                    else:
                        r.pop(k, None)
        rows.append((piv, v))
    rows.sort(key=lambda x: x[0])
    return [r for _, r in rows]
