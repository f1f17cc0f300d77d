"""Exact arithmetic over a prime field F_p.

Field elements are plain Python ints in ``[0, p)``.  Polynomials and
truncated power series are small immutable value types; matrices are numpy
arrays (``int64`` when ``p < 2**31`` so that products fit in 64 bits,
``object`` otherwise).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
import numpy as np

DEFAULT_PRIME = 10007
MAX_PRIME = 2**62

# degree of the zero polynomial; compares below every int, never -1
DEG_ZERO = float("-inf")


def check_prime(p: int) -> int:
    """Validate an odd prime modulus and return it as an int."""
    p = int(p)
    if p == 2 or p < 3 or not gmpy2.is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    if p >= MAX_PRIME:
        raise ValueError(f"modulus {p} exceeds 2**62")
    return p


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of zero in F_p")
    return pow(a, -1, p)


def centered(a: int, p: int) -> int:
    """Representative of ``a mod p`` in ``(-p/2, p/2]``."""
    a %= p
    return a - p if a > p // 2 else a


def is_square(a: int, p: int) -> bool:
    a %= p
    return a == 0 or pow(a, (p - 1) // 2, p) == 1


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of ``a`` modulo the odd prime ``p`` (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if not is_square(a, p):
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while is_square(z, p):
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


# ---------------------------------------------------------------------------
# univariate polynomials


def _strip(coeffs: Iterable[int], p: int) -> tuple[int, ...]:
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class UniPoly:
    """Polynomial over F_p, coefficients lowest degree first."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs, self.p))

    @classmethod
    def const(cls, c: int, p: int) -> "UniPoly":
        return cls(p, (c,))

    @classmethod
    def x(cls, p: int) -> "UniPoly":
        return cls(p, (0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[int], p: int) -> "UniPoly":
        out = cls(p, (1,))
        for r in roots:
            out = out * cls(p, (-r, 1))
        return out

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.p != self.p:
                raise ValueError("polynomials over different fields")
            return other
        return UniPoly(self.p, (int(other),))

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly(self.p, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(self.p, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return UniPoly(self.p, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out, base = UniPoly(self.p, (1,)), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        li = inv(other.lead(), p)
        q = [0] * max(len(r) - db, 0)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] % p
            if c:
                c = c * li % p
                q[i - db] = c
                for j, bj in enumerate(other.coeffs):
                    r[i - db + j] -= c * bj
        return UniPoly(p, q), UniPoly(p, r[:db] if db > 0 else ())

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def scale(self, c: int) -> "UniPoly":
        return UniPoly(self.p, [c * a for a in self.coeffs])

    def monic(self) -> "UniPoly":
        return self.scale(inv(self.lead(), self.p)) if self.coeffs else self

    def derivative(self) -> "UniPoly":
        return UniPoly(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def taylor(self, c: int, n: int | None = None) -> list[int]:
        """Coefficients of ``self(c + t)`` in ``t`` (first ``n`` of them)."""
        p = self.p
        out = list(self.coeffs)
        size = len(out)
        # repeated synthetic division by (x - c)
        for i in range(size):
            for j in range(size - 2, i - 1, -1):
                out[j] = (out[j] + c * out[j + 1]) % p
        out = [v % p for v in out]
        if n is not None:
            out = (out + [0] * n)[:n]
        return out

    def order_at(self, c: int) -> int:
        """Multiplicity of ``c`` as a root; raises on the zero polynomial."""
        if self.is_zero():
            raise ValueError("order of the zero polynomial is infinite")
        for i, v in enumerate(self.taylor(c)):
            if v:
                return i
        raise AssertionError("unreachable")

    def powmod(self, n: int, mod: "UniPoly") -> "UniPoly":
        out, base = UniPoly(self.p, (1,)) % mod, self % mod
        while n:
            if n & 1:
                out = out * base % mod
            base = base * base % mod
            n >>= 1
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(terms)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_squarefree(f: UniPoly) -> bool:
    return poly_gcd(f, f.derivative()).deg == 0


# ---------------------------------------------------------------------------
# truncated power series


@dataclass(frozen=True)
class TruncSeries:
    """Power series in one variable modulo ``t**prec``."""

    p: int
    coeffs: tuple[int, ...]
    prec: int

    def __post_init__(self):
        if self.prec < 1:
            raise ValueError("precision must be positive")
        c = [v % self.p for v in self.coeffs[: self.prec]]
        c += [0] * (self.prec - len(c))
        object.__setattr__(self, "coeffs", tuple(c))

    def truncate(self, prec: int) -> "TruncSeries":
        return TruncSeries(self.p, self.coeffs, min(prec, self.prec))

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.prec, other.prec)
        return TruncSeries(self.p, [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.prec, other.prec)
        return TruncSeries(self.p, [a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        out = [0] * n
        for i in range(n):
            if a[i]:
                ai = a[i]
                for j in range(n - i):
                    out[i + j] += ai * b[j]
        return TruncSeries(self.p, out, n)

    def scale(self, c: int) -> "TruncSeries":
        return TruncSeries(self.p, [c * v for v in self.coeffs], self.prec)

    def order(self) -> int | None:
        """Index of the first nonzero coefficient, None if zero to precision."""
        for i, v in enumerate(self.coeffs):
            if v:
                return i
        return None

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse by Newton iteration ``g <- g(2 - s g)``."""
        p = self.p
        g = TruncSeries(p, (inv(self.coeffs[0], p),), 1)
        n = 1
        while n < self.prec:
            n = min(2 * n, self.prec)
            g = g.truncate(n)
            g = TruncSeries(p, g.coeffs, n)
            sg = self.truncate(n) * g
            two_minus = TruncSeries(p, [2 - sg.coeffs[0]] + [-v for v in sg.coeffs[1:]], n)
            g = g * two_minus
        return g


def series_from_poly(f: UniPoly, prec: int) -> TruncSeries:
    return TruncSeries(f.p, f.coeffs[:prec], prec)


def series_sqrt(f: TruncSeries, y0: int) -> TruncSeries:
    """Square root ``s`` of ``f`` with ``s(0) = y0``, to the precision of ``f``.

    Newton iteration ``s <- (s + f/s)/2`` doubling the precision each step.
    """
    p = f.p
    if p % 2 == 0:
        raise ValueError("series square root needs odd characteristic")
    y0 %= p
    if y0 == 0:
        raise ValueError("y0 = 0: the point is a branch point, use y as local parameter")
    if y0 * y0 % p != f.coeffs[0]:
        raise ValueError("y0**2 does not match the constant term of f")
    half = inv(2, p)
    s = TruncSeries(p, (y0,), 1)
    n = 1
    while n < f.prec:
        n = min(2 * n, f.prec)
        s = TruncSeries(p, s.coeffs, n)
        s = (s + f.truncate(n) * s.inverse()).scale(half)
    return s


# ---------------------------------------------------------------------------
# roots of low-degree polynomials

_SCAN_LIMIT = 10**5


def _root_multiplicity(f: UniPoly, r: int) -> int:
    return f.order_at(r)


def _split_roots(g: UniPoly, rng: random.Random) -> list[int]:
    """Roots of a squarefree, fully split polynomial by random gcd splitting."""
    p = g.p
    if g.deg <= 0:
        return []
    if g.deg == 1:
        return [(-g.coeffs[0] * inv(g.coeffs[1], p)) % p]
    while True:
        a = rng.randrange(p)
        h = UniPoly(p, (a, 1)).powmod((p - 1) // 2, g) - 1
        d = poly_gcd(h, g)
        if 0 < d.deg < g.deg:
            return _split_roots(d, rng) + _split_roots(g // d, rng)


def poly_roots(f: UniPoly) -> list[int]:
    """Distinct roots in F_p of a nonzero polynomial, sorted."""
    if f.is_zero():
        raise ValueError("roots of the zero polynomial")
    if f.deg <= 0:
        return []
    x = UniPoly.x(f.p)
    g = poly_gcd(x.powmod(f.p, f) - x, f)
    if g.deg <= 0:
        return []
    return sorted(_split_roots(g, random.Random(0)))


def cubic_roots(f: UniPoly) -> list[tuple[int, int]]:
    """Roots in F_p of a nonzero polynomial of degree at most 3.

    Returns sorted ``(root, multiplicity)`` pairs.
    """
    if f.is_zero():
        raise ValueError("cubic_roots of the zero polynomial")
    if f.deg > 3:
        raise ValueError("cubic_roots expects degree at most 3")
    p = f.p
    if f.deg == 0:
        return []
    if p <= _SCAN_LIMIT:
        roots = [r for r in range(p) if f(r) == 0]
    else:
        roots = poly_roots(f)
    return [(r, _root_multiplicity(f, r)) for r in roots]


# ---------------------------------------------------------------------------
# dense matrices


def _dtype_for(p: int):
    return np.int64 if p < 2**31 else object


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """Dense matrix over F_p."""

    p: int
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=object)
        if a.ndim != 2:
            if a.size == 0:
                a = a.reshape(0, 0)
            else:
                raise ValueError("matrix entries must be two-dimensional")
        a = (a % self.p).astype(_dtype_for(self.p))
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=object))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], p: int, rows: int | None = None) -> "FpMatrix":
        if not columns:
            return cls.zeros(rows or 0, 0, p)
        return cls(p, np.array([list(c) for c in columns], dtype=object).T)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self.entries.T)

    def apply(self, v: Sequence[int]) -> list[int]:
        vec = np.array([int(x) % self.p for x in v], dtype=object)
        return [int(x) % self.p for x in self.entries.astype(object).dot(vec)] if self.rows else []


def rref(m: FpMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivot rule: scan columns left to right, take the first nonzero entry at or
    below the current row.
    """
    p = m.p
    a = m.entries.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i], :] = a[[i, r], :]
        a[r, :] = (a[r, :] * inv(int(a[r, c]), p)) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - np.outer(col, a[r, :])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_and_kernel(m: FpMatrix) -> tuple[int, list[tuple[int, ...]]]:
    """Rank and a basis of the right kernel ``{v : m v = 0}``.

    One kernel vector per free column, with a 1 in that column; the basis is
    deterministic for a fixed input.
    """
    if m.cols == 0:
        return 0, []
    if m.rows == 0:
        return 0, [tuple(int(i == j) for i in range(m.cols)) for j in range(m.cols)]
    a, pivots = rref(m)
    p = m.p
    pivot_set = set(pivots)
    kernel = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [0] * m.cols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-int(a[i, f])) % p
        kernel.append(tuple(v))
    return len(pivots), kernel


def rank(m: FpMatrix) -> int:
    if m.cols == 0 or m.rows == 0:
        return 0
    return len(rref(m)[1])
