"""Linear algebra over the PID F_p[t].

Vectors are sparse dicts {column key: RElem} whose keys are mutually
comparable (integers, or monomial exponent tuples compared
lexicographically).  A Lattice keeps a submodule in row Hermite normal
form: echelon, monic pivots, entries above each pivot reduced modulo it.
That form is unique, so equality of submodules is equality of rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dvr import RElem, as_relem, inv_mod


def _axpy(target: dict, q: RElem, source: dict) -> None:
    """target -= q * source, in place."""
    for k, v in source.items():
        cur = target.get(k)
        new = -(q * v) if cur is None else cur - q * v
        if new:
            target[k] = new
        else:
            target.pop(k, None)


def _scale(row: dict, c: int) -> dict:
    return {k: v.scale(c) for k, v in row.items()}


def hermite(rows: Sequence[dict], track: bool = False, p: int | None = None):
    """Row Hermite form of the given sparse rows.

    Returns (hnf_rows, transforms, kernel) where, if track is set,
    hnf_rows[i] = sum_j transforms[i][j] * rows[j] and each kernel entry
    is a relation sum_j k[j] * rows[j] = 0.  Together they come from a
    unimodular transform, so the kernel entries span all relations.
    Pivot choice: leftmost column, lowest-degree entry, earliest row.
    """
    if p is None:
        p = next((v.p for r in rows for v in r.values() if v), 2)
    one = RElem.one(p)
    work = []
    kernel = []
    for j, r in enumerate(rows):
        r = {k: v for k, v in r.items() if v}
        u = {j: one} if track else None
        if r:
            work.append((r, u))
        elif track:
            kernel.append(u)

    out = []
    pool = work
    while pool:
        col = min(min(r) for r, _ in pool)
        active = [x for x in pool if col in x[0]]
        pool = [x for x in pool if col not in x[0]]
        while len(active) > 1:
            best = min(range(len(active)), key=lambda i: active[i][0][col].degree)
            piv = active[best]
            keep = [piv]
            for i, x in enumerate(active):
                if i == best:
                    continue
                q = x[0][col] // piv[0][col]
                _axpy(x[0], q, piv[0])
                if track:
                    _axpy(x[1], q, piv[1])
                if col in x[0]:
                    keep.append(x)
                elif x[0]:
                    pool.append(x)
                elif track:
                    kernel.append(x[1])
            active = keep
        r, u = active[0]
        c = inv_mod(r[col].lead(), r[col].p)
        if c != 1:
            r = _scale(r, c)
            if track:
                u = _scale(u, c)
        out.append((col, r, u))
    out.sort(key=lambda x: x[0])
    for i, (col, r, u) in enumerate(out):
        d = r[col]
        for j in range(i):
            rj, uj = out[j][1], out[j][2]
            if col in rj:
                q = rj[col] // d
                if q:
                    _axpy(rj, q, r)
                    if track:
                        _axpy(uj, q, u)
    hnf_rows = [r for _, r, _ in out]
    transforms = [u for _, _, u in out] if track else None
    return hnf_rows, transforms, kernel if track else None


class Lattice:
    """Submodule of a free F_p[t]-module, kept in Hermite normal form."""

    def __init__(self, vectors: Sequence[dict], track: bool = False, p: int | None = None):
        self.generators = [dict(v) for v in vectors]
        self.rows, self.transforms, self.kernel = hermite(self.generators, track, p)
        self.pivots = [min(r) for r in self.rows]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.rows == other.rows

    def __le__(self, other: "Lattice") -> bool:
        return all(r in other for r in self.rows)

    def pivot_divisors(self) -> list[RElem]:
        return [r[c] for r, c in zip(self.rows, self.pivots)]

    def reduce(self, v: dict):
        """Return (remainder, quotients): v = sum q_i rows_i + remainder."""
        rem = {k: c for k, c in v.items() if c}
        quotients = []
        for r, c in zip(self.rows, self.pivots):
            x = rem.get(c)
            if x is None:
                quotients.append(None)
                continue
            q, _ = x.divmod(r[c])
            if q:
                _axpy(rem, q, r)
            quotients.append(q if q else None)
        return rem, quotients

    def __contains__(self, v: dict) -> bool:
        rem = {k: c for k, c in v.items() if c}
        for r, c in zip(self.rows, self.pivots):
            x = rem.get(c)
            if x is None:
                continue
            q, m = x.divmod(r[c])
            if m:
                return False
            _axpy(rem, q, r)
        return not rem

    def coordinates(self, v: dict):
        """Coefficients a_j with v = sum a_j generators[j], or None if v is outside."""
        if self.transforms is None:
            raise ValueError("lattice built without transform tracking")
        rem, qs = self.reduce(v)
        if rem:
            return None
        coords: dict[int, RElem] = {}
        for q, u in zip(qs, self.transforms):
            if q is None:
                continue
            for j, c in u.items():
                new = coords.get(j, q * 0) + q * c
                if new:
                    coords[j] = new
                else:
                    coords.pop(j, None)
        return coords


def submodule_membership(span: Sequence[Sequence], v: Sequence, p: int):
    """(True, coefficients) if v is in the R-span of the given vectors, else (False, None)."""
    span = [_dense_to_sparse(row, p) for row in span]
    target = _dense_to_sparse(v, p)
    lat = Lattice(span, track=True)
    coords = lat.coordinates(target)
    if coords is None:
        return False, None
    zero = RElem.zero(p)
    cert = [coords.get(j, zero) for j in range(len(span))]
    # certificate re-verified by substitution
    n = len(v)
    for col in range(n):
        acc = zero
        for c, row in zip(cert, span):
            if col in row:
                acc = acc + c * row[col]
        assert acc == target.get(col, zero)
    return True, cert


def _dense_to_sparse(row: Sequence, p: int) -> dict:
    out = {}
    for i, x in enumerate(row):
        x = as_relem(x, p)
        if x:
            out[i] = x
    return out


# -- Smith form ----------------------------------------------------------------

def smith_form(rows: Sequence[Sequence[RElem]], p: int):
    """Return (diag, U, V, V_inv) with U * M * V = D for the dense matrix M.

    diag has min(m, n) monic entries forming a divisibility chain, zeros last.
    """
    M = [[as_relem(x, p) for x in row] for row in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    zero, one = RElem.zero(p), RElem.one(p)
    U = [[one if i == j else zero for j in range(m)] for i in range(m)]
    V = [[one if i == j else zero for j in range(n)] for i in range(n)]
    Vi = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q row_j
        M[i] = [a - q * b for a, b in zip(M[i], M[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q col_j
        for r in M:
            r[i] = r[i] - q * r[j]
        for r in V:
            r[i] = r[i] - q * r[j]
        Vi[j] = [a + q * b for a, b in zip(Vi[j], Vi[i])]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    for k in range(min(m, n)):
        while True:
            cands = [(M[i][j].degree, i, j) for i in range(k, m) for j in range(k, n) if M[i][j]]
            if not cands:
                break
            _, i, j = min(cands)
            swap_rows(k, i)
            swap_cols(k, j)
            dirty = False
            for i in range(k + 1, m):
                if M[i][k]:
                    row_op(i, k, M[i][k] // M[k][k])
                    dirty = dirty or bool(M[i][k])
            for j in range(k + 1, n):
                if M[k][j]:
                    col_op(j, k, M[k][j] // M[k][k])
                    dirty = dirty or bool(M[k][j])
            if dirty:
                continue
            bad = next(((i, j) for i in range(k + 1, m) for j in range(k + 1, n)
                        if M[i][j] and (M[i][j] % M[k][k])), None)
            if bad is None:
                break
            # fold the offending row into row k and retry
            M[k] = [a + b for a, b in zip(M[k], M[bad[0]])]
            U[k] = [a + b for a, b in zip(U[k], U[bad[0]])]
        if not any(M[i][j] for i in range(k, m) for j in range(k, n)):
            break
        c = inv_mod(M[k][k].lead(), p)
        if c != 1:
            M[k] = [a.scale(c) for a in M[k]]
            U[k] = [a.scale(c) for a in U[k]]
    diag = [M[i][i] for i in range(min(m, n))]
    return diag, U, V, Vi


def smith_invariants(rows: Sequence[Sequence], p: int) -> list[RElem]:
    if not rows or not rows[0]:
        return []
    return smith_form(rows, p)[0]


def hnf(rows: Sequence[Sequence], p: int) -> list[list[RElem]]:
    """Dense row Hermite form; zero rows go last so the shape is kept."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    hrows, _, _ = hermite([_dense_to_sparse(r, p) for r in rows])
    zero = RElem.zero(p)
    out = [[r.get(j, zero) for j in range(n)] for r in hrows]
    out += [[zero] * n for _ in range(m - len(out))]
    return out


def saturate_t_torsion(relations: Sequence[dict], p: int, ncols: int | None = None) -> Lattice:
    """Relations of M / (0 : t^oo) where M = R^n / span(relations).

    With U * Rel * V = diag(d_i), the relation module is spanned by
    d_i * f_i, f_i the rows of V^-1; saturating drops the t-power factor
    of each d_i.
    """
    rels = [r for r in relations if r]
    if not rels:
        return Lattice([])
    keys = sorted({k for r in rels for k in r})
    if ncols is not None and all(isinstance(k, int) for k in keys):
        keys = list(range(ncols))
    zero = RElem.zero(p)
    dense = [[r.get(k, zero) for k in keys] for r in rels]
    diag, _, _, Vi = smith_form(dense, p)
    out = []
    for i, d in enumerate(diag):
        if not d:
            continue
        d = d.t_part()
        row = {}
        for k, x in zip(keys, Vi[i]):
            y = d * x
            if y:
                row[k] = y
        out.append(row)
    return Lattice(out)


@dataclass(frozen=True)
class PidMatrix:
    """Rectangular matrix over F_p[t]."""

    entries: tuple
    p: int

    @classmethod
    def of(cls, rows, p: int) -> "PidMatrix":
        return cls(tuple(tuple(as_relem(x, p) for x in row) for row in rows), p)

    @classmethod
    def parse(cls, text: str, p: int) -> "PidMatrix":
        """Rows separated by ';', entries by ','."""
        rows = [[x.strip() for x in r.split(",")] for r in text.split(";") if r.strip()]
        return cls.of(rows, p)

    @property
    def shape(self):
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    def rows(self) -> list[list[RElem]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "PidMatrix":
        return PidMatrix(tuple(zip(*self.entries)), self.p)

    def hnf(self) -> "PidMatrix":
        return PidMatrix.of(hnf(self.entries, self.p), self.p)

    def smith_invariants(self) -> list[RElem]:
        return smith_invariants(self.entries, self.p)

    def rank(self) -> int:
        return sum(1 for d in self.smith_invariants() if d)

    def mod_t(self) -> "PidMatrix":
        return PidMatrix.of([[x.const_term() for x in r] for r in self.entries], self.p)

    def __str__(self):
        return "; ".join(", ".join(str(x) for x in r) for r in self.entries)


# -- determinants over commutative rings ---------------------------------------

def charpoly(M: Sequence[Sequence], one, zero):
    """Coefficients [1, c_1, ..., c_n] of det(x*I - M), division free (Berkowitz)."""
    n = len(M)
    if n == 0:
        return [one]
    poly = [one, zero - M[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        a = M[k][k]
        R = M[k][k + 1:]
        C = [M[i][k] for i in range(k + 1, n)]
        size = n - k - 1
        col = [one, zero - a]
        vec = C
        for j in range(size):
            acc = zero
            for x, y in zip(R, vec):
                acc = acc + x * y
            col.append(zero - acc)
            if j < size - 1:
                nxt = []
                for i in range(size):
                    s = zero
                    row = M[k + 1 + i]
                    for jj in range(size):
                        s = s + row[k + 1 + jj] * vec[jj]
                    nxt.append(s)
                vec = nxt
        new = []
        for i in range(size + 2):
            s = zero
            for j in range(max(0, i - len(col) + 1), min(i, size) + 1):
                s = s + col[i - j] * poly[j]
            new.append(s)
        poly = new
    return poly


def determinant(M: Sequence[Sequence], one, zero):
    n = len(M)
    c = charpoly(M, one, zero)[n]
    return c if n % 2 == 0 else zero - c
