"""Hyperelliptic curves ``y^2 = f(x)`` with ``deg f = 2g + 1`` over F_p.

Functions on the curve are written ``(a(x) + b(x) y) / h(x)``.  Orders of
vanishing are read from local expansions:

* at an ordinary affine point ``(x0, y0)`` the local parameter is ``x - x0``
  and ``y`` is expanded as a power series square root of ``f``;
* at a branch point ``(r, 0)`` the local parameter is ``y`` and ``x - r`` has
  order 2, so the ``a`` and ``b y`` parts have orders of different parity;
* at the single point at infinity ``x`` has a pole of order 2 and ``y`` one
  of order ``2g + 1``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .gfp import (
    FpMatrix,
    TruncSeries,
    UniPoly,
    check_prime,
    inv,
    is_squarefree,
    poly_gcd,
    poly_roots,
    rank_and_kernel,
    series_from_poly,
    series_sqrt,
    sqrt_mod,
)

_START_PREC = 16


@dataclass(frozen=True, order=True)
class CurvePoint:
    """An affine point ``(x, y)``; ``x = y = None`` is the point at infinity."""

    x: int | None = None
    y: int | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "Infinity" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = CurvePoint()


@dataclass(frozen=True)
class HECurve:
    p: int
    f: UniPoly

    def __post_init__(self):
        check_prime(self.p)
        if self.f.p != self.p:
            raise ValueError("f is defined over a different field")
        if self.f.deg < 3 or self.f.deg % 2 == 0:
            raise ValueError("only odd models y^2 = f(x) with deg f = 2g+1 >= 3 are supported")
        if not is_squarefree(self.f):
            raise ValueError("f is not squarefree")

    @classmethod
    def from_coeffs(cls, p: int, coeffs: Iterable[int]) -> "HECurve":
        return cls(p, UniPoly(p, tuple(coeffs)))

    @property
    def genus(self) -> int:
        return (self.f.deg - 1) // 2

    def contains(self, pt: CurvePoint) -> bool:
        if pt.is_infinity:
            return True
        if pt.y is None:
            return False
        return (pt.y * pt.y - self.f(pt.x)) % self.p == 0

    def is_weierstrass(self, pt: CurvePoint) -> bool:
        return pt.is_infinity or pt.y % self.p == 0

    def conjugate(self, pt: CurvePoint) -> CurvePoint:
        if pt.is_infinity:
            return pt
        return CurvePoint(pt.x, (-pt.y) % self.p)

    def weierstrass_points(self) -> list[CurvePoint]:
        """Affine branch points rational over F_p."""
        return [CurvePoint(r, 0) for r in _roots_cached(self.f)]

    def point(self, x: int, y: int) -> CurvePoint:
        pt = CurvePoint(x % self.p, y % self.p)
        if not self.contains(pt):
            raise ValueError(f"{pt} is not on the curve")
        return pt

    def to_json(self) -> dict:
        return {"p": self.p, "f": list(self.f.coeffs)}

    @classmethod
    def from_json(cls, data: Mapping) -> "HECurve":
        return cls.from_coeffs(int(data["p"]), [int(c) for c in data["f"]])


@lru_cache(maxsize=256)
def _roots_cached(f: UniPoly) -> tuple[int, ...]:
    return tuple(poly_roots(f))


def random_curve(p: int, g: int, seed) -> HECurve:
    """Random monic squarefree ``f`` of degree ``2g + 1``, deterministic in ``seed``."""
    check_prime(p)
    if g < 1:
        raise ValueError("genus must be at least 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(100):
        coeffs = [rng.randrange(p) for _ in range(2 * g + 1)] + [1]
        f = UniPoly(p, tuple(coeffs))
        if is_squarefree(f):
            return HECurve(p, f)
    raise RuntimeError(f"no squarefree polynomial of degree {2 * g + 1} found over F_{p}")


def random_point(curve: HECurve, rng: random.Random, avoid_x: Iterable[int] = ()) -> CurvePoint:
    """Uniformly drawn x until ``f(x)`` is a nonzero square; random sign of y."""
    p = curve.p
    avoid = set(avoid_x)
    for _ in range(100 * p):
        x = rng.randrange(p)
        if x in avoid:
            continue
        y = sqrt_mod(curve.f(x), p)
        if y:
            return CurvePoint(x, y if rng.random() < 0.5 else (-y) % p)
    raise RuntimeError("could not sample a non-Weierstrass point")


# ---------------------------------------------------------------------------
# divisors


def _point_key(item):
    pt = item[0]
    return (1, 0, 0) if pt.is_infinity else (0, pt.x, pt.y)


@dataclass(frozen=True)
class Divisor:
    """Finite formal sum of points; zero multiplicities are dropped."""

    support: tuple[tuple[CurvePoint, int], ...] = ()

    def __post_init__(self):
        acc: dict[CurvePoint, int] = {}
        for pt, m in self.support:
            acc[pt] = acc.get(pt, 0) + int(m)
        items = tuple(sorted(((pt, m) for pt, m in acc.items() if m), key=_point_key))
        object.__setattr__(self, "support", items)

    @classmethod
    def of(cls, points: Mapping[CurvePoint, int] | None = None, inf: int = 0) -> "Divisor":
        items = list((points or {}).items())
        if inf:
            items.append((INFINITY, inf))
        return cls(tuple(items))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.support)

    def mult(self, pt: CurvePoint) -> int:
        for q, m in self.support:
            if q == pt:
                return m
        return 0

    @property
    def inf(self) -> int:
        return self.mult(INFINITY)

    def affine(self) -> list[tuple[CurvePoint, int]]:
        return [(pt, m) for pt, m in self.support if not pt.is_infinity]

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(self.support + other.support)

    def __neg__(self) -> "Divisor":
        return Divisor(tuple((pt, -m) for pt, m in self.support))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, n: int) -> "Divisor":
        return Divisor(tuple((pt, n * m) for pt, m in self.support))

    __rmul__ = __mul__

    def is_effective(self) -> bool:
        return all(m > 0 for _, m in self.support)

    def to_json(self) -> dict:
        return {
            "points": [{"x": pt.x, "y": pt.y, "m": m} for pt, m in self.affine()],
            "inf": self.inf,
        }

    @classmethod
    def from_json(cls, data: Mapping, curve: HECurve | None = None) -> "Divisor":
        pts = {}
        for entry in data.get("points", []):
            pt = CurvePoint(int(entry["x"]), int(entry["y"]))
            if curve is not None:
                pt = curve.point(pt.x, pt.y)
            pts[pt] = pts.get(pt, 0) + int(entry["m"])
        return cls.of(pts, int(data.get("inf", 0)))

    def __repr__(self):
        if not self.support:
            return "0"
        return " + ".join(f"{m}*{pt!r}" for pt, m in self.support)


def random_generic_divisor(curve: HECurve, degree: int, rng: random.Random) -> Divisor:
    """Sum of ``degree`` ordinary points with pairwise distinct x-coordinates."""
    pts: list[CurvePoint] = []
    for _ in range(degree):
        pts.append(random_point(curve, rng, avoid_x=[q.x for q in pts]))
    return Divisor.of({pt: 1 for pt in pts})


def random_divisor(curve: HECurve, degree: int, rng: random.Random) -> Divisor:
    """A random divisor of the given degree exercising every kind of point.

    Mixes ordinary points, conjugate pairs, rational branch points, negative
    multiplicities and the point at infinity.
    """
    items: dict[CurvePoint, int] = {}
    wp = curve.weierstrass_points()
    for _ in range(rng.randint(0, 3)):
        roll = rng.random()
        if roll < 0.2 and wp:
            pt = rng.choice(wp)
        elif roll < 0.4 and items:
            base = rng.choice([q for q in items if not q.is_infinity] or [INFINITY])
            pt = curve.conjugate(base)
        else:
            pt = random_point(curve, rng)
        items[pt] = items.get(pt, 0) + rng.choice([-1, 1, 1, 2, 3])
    rest = degree - sum(items.values())
    return Divisor.of(items, rest)


def canonical_divisor(curve: HECurve) -> Divisor:
    """Divisor of ``dx / y``: ``(2g - 2)`` times the point at infinity."""
    return Divisor.of(inf=2 * curve.genus - 2)


# ---------------------------------------------------------------------------
# functions


@dataclass(frozen=True)
class FuncRep:
    """The function ``(a + b*y) / h``, stored with ``h`` monic and no common factor."""

    a: UniPoly
    b: UniPoly
    h: UniPoly

    def __post_init__(self):
        a, b, h = self.a, self.b, self.h
        if h.is_zero():
            raise ZeroDivisionError("zero denominator")
        if a.is_zero() and b.is_zero():
            h = UniPoly(h.p, (1,))
        else:
            g = poly_gcd(poly_gcd(a, b), h)
            if g.deg > 0:
                a, b, h = a // g, b // g, h // g
            lead = h.lead()
            if lead != 1:
                c = inv(lead, h.p)
                a, b, h = a.scale(c), b.scale(c), h.scale(c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "h", h)

    @classmethod
    def poly(cls, a: UniPoly, b: UniPoly | None = None) -> "FuncRep":
        p = a.p
        return cls(a, b if b is not None else UniPoly(p, ()), UniPoly(p, (1,)))

    @classmethod
    def const(cls, c: int, p: int) -> "FuncRep":
        return cls.poly(UniPoly(p, (c,)))

    @classmethod
    def x(cls, p: int) -> "FuncRep":
        return cls.poly(UniPoly.x(p))

    @classmethod
    def y(cls, p: int) -> "FuncRep":
        return cls.poly(UniPoly(p, ()), UniPoly(p, (1,)))

    @property
    def p(self) -> int:
        return self.h.p

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __add__(self, other: "FuncRep") -> "FuncRep":
        if self.h == other.h:
            return FuncRep(self.a + other.a, self.b + other.b, self.h)
        return FuncRep(self.a * other.h + other.a * self.h,
                       self.b * other.h + other.b * self.h,
                       self.h * other.h)

    def __neg__(self) -> "FuncRep":
        return FuncRep(-self.a, -self.b, self.h)

    def __sub__(self, other: "FuncRep") -> "FuncRep":
        return self + (-other)

    def scale(self, c: int) -> "FuncRep":
        return FuncRep(self.a.scale(c), self.b.scale(c), self.h)

    def mul(self, other: "FuncRep", curve: HECurve) -> "FuncRep":
        """Product, reduced with ``y^2 = f``."""
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return FuncRep(a1 * a2 + b1 * b2 * curve.f, a1 * b2 + a2 * b1, self.h * other.h)

    def __repr__(self):
        return f"({self.a!r}) + ({self.b!r})*y over ({self.h!r})"


@lru_cache(maxsize=4096)
def local_y(curve: HECurve, pt: CurvePoint, prec: int) -> TruncSeries:
    """Expansion of ``y`` in ``t = x - x0`` at an ordinary affine point."""
    f_shift = UniPoly(curve.p, tuple(curve.f.taylor(pt.x)))
    return series_sqrt(series_from_poly(f_shift, prec), pt.y)


def _numerator_series(curve: HECurve, a: UniPoly, b: UniPoly, pt: CurvePoint, prec: int) -> TruncSeries:
    p = curve.p
    sa = TruncSeries(p, a.taylor(pt.x, prec), prec)
    if b.is_zero():
        return sa
    sb = TruncSeries(p, b.taylor(pt.x, prec), prec)
    return sa + sb * local_y(curve, pt, prec)


def _valuation_at_infinity(curve: HECurve, a: UniPoly, b: UniPoly) -> float:
    return min(-2 * a.deg, -2 * b.deg - (2 * curve.genus + 1))


def valuation(phi: FuncRep, pt: CurvePoint, curve: HECurve) -> int:
    """Order of vanishing (negative for a pole) of ``phi`` at ``pt``."""
    if phi.is_zero():
        raise ValueError("valuation of the zero function")
    if not curve.contains(pt):
        raise ValueError(f"{pt} is not on the curve")
    a, b, h = phi.a, phi.b, phi.h
    if pt.is_infinity:
        return int(_valuation_at_infinity(curve, a, b) + 2 * h.deg)
    c = pt.x
    h_ord = h.order_at(c)
    if curve.is_weierstrass(pt):
        va = 2 * a.order_at(c) if not a.is_zero() else math.inf
        vb = 2 * b.order_at(c) + 1 if not b.is_zero() else math.inf
        return int(min(va, vb) - 2 * h_ord)
    # a nonzero numerator vanishes at most to its pole order at infinity
    cap = int(max(2 * a.deg, 2 * b.deg + 2 * curve.genus + 1) + 2 * max(h.deg, 0) + 1)
    prec = min(_START_PREC, cap)
    while True:
        o = _numerator_series(curve, a, b, pt, prec).order()
        if o is not None:
            return o - h_ord
        if prec >= cap:
            raise ArithmeticError("numerator vanishes to the analytic cap: zero function")
        prec = min(2 * prec, cap)


def divisor_of(phi: FuncRep, curve: HECurve, points: Iterable[CurvePoint]) -> Divisor:
    """``div(phi)`` restricted to the listed points."""
    return Divisor(tuple((pt, valuation(phi, pt, curve)) for pt in points))


# ---------------------------------------------------------------------------
# Riemann-Roch spaces


@dataclass(frozen=True)
class RRBasis:
    """Basis of ``L(D) = {phi : div(phi) + D >= 0}``.

    ``numerators`` holds the unreduced ``(a, b)`` pairs over the common
    denominator ``denominator``; ``basis`` holds the same functions reduced.
    """

    curve: HECurve
    divisor: Divisor
    basis: tuple[FuncRep, ...]
    denominator: UniPoly
    numerators: tuple[tuple[UniPoly, UniPoly], ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)


def _relevant_points(curve: HECurve, D: Divisor) -> list[CurvePoint]:
    pts = set()
    for pt, _ in D.affine():
        pts.add(pt)
        pts.add(curve.conjugate(pt))
    return sorted(pts, key=lambda q: (q.x, q.y))


def _denominator(curve: HECurve, D: Divisor) -> tuple[UniPoly, dict[int, int]]:
    """Smallest ``h`` clearing the allowed affine poles, and its exponents by x-coordinate."""
    exps: dict[int, int] = {}
    for pt, m in D.affine():
        if m <= 0:
            continue
        need = (m + 1) // 2 if curve.is_weierstrass(pt) else m
        exps[pt.x] = max(exps.get(pt.x, 0), need)
    h = UniPoly(curve.p, (1,))
    for c in sorted(exps):
        h = h * UniPoly(curve.p, (-c, 1)) ** exps[c]
    return h, exps


def rr_space(curve: HECurve, D: Divisor) -> RRBasis:
    """Basis of the Riemann-Roch space ``L(D)``.

    Every element is ``(a + b y)/h`` with ``h`` clearing the allowed affine
    poles.  Degree bounds on ``a, b`` come from the order at infinity; the
    remaining conditions are linear vanishing conditions on the numerator at
    the affine support and its conjugates.
    """
    p, g = curve.p, curve.genus
    for pt, _ in D.support:
        if not curve.contains(pt):
            raise ValueError(f"{pt} is not on the curve")
    h, exps = _denominator(curve, D)
    budget = D.inf + 2 * len(h.coeffs) - 2
    n_a = budget // 2 + 1 if budget >= 0 else 0
    n_b = (budget - 2 * g - 1) // 2 + 1 if budget >= 2 * g + 1 else 0
    n = n_a + n_b
    if n == 0:
        return RRBasis(curve, D, (), h, ())

    rows: list[list[int]] = []
    for pt in _relevant_points(curve, D):
        e = exps.get(pt.x, 0)
        if curve.is_weierstrass(pt):
            need = 2 * e - D.mult(pt)
            if need <= 0:
                continue
            # no cancellation between the even a-part and the odd b*y part
            for j in range((need + 1) // 2):
                rows.append(_taylor_row(p, pt.x, j, 0, n_a, n))
            for j in range(need // 2):
                rows.append(_taylor_row(p, pt.x, j, n_a, n_b, n))
        else:
            need = e - D.mult(pt)
            if need <= 0:
                continue
            y_ser = local_y(curve, pt, need).coeffs if n_b else ()
            cols = []
            for i in range(n_a):
                cols.append(UniPoly(p, (0,) * i + (1,)).taylor(pt.x, need))
            for i in range(n_b):
                xi = TruncSeries(p, UniPoly(p, (0,) * i + (1,)).taylor(pt.x, need), need)
                cols.append(list((xi * TruncSeries(p, y_ser, need)).coeffs))
            rows.extend([cols[c][r] for c in range(n)] for r in range(need))

    if rows:
        _, kernel = rank_and_kernel(FpMatrix(p, rows))
    else:
        kernel = [tuple(int(i == j) for i in range(n)) for j in range(n)]

    numerators = []
    basis = []
    for v in kernel:
        a = UniPoly(p, tuple(v[:n_a]))
        b = UniPoly(p, tuple(v[n_a:]))
        numerators.append((a, b))
        basis.append(FuncRep(a, b, h))
    out = RRBasis(curve, D, tuple(basis), h, tuple(numerators))
    _verify_basis(out)
    return out


def _taylor_row(p: int, c: int, j: int, start: int, count: int, n: int) -> list[int]:
    """Row extracting the j-th Taylor coefficient at ``c`` of one coefficient block."""
    row = [0] * n
    for i in range(j, count):
        row[start + i] = math.comb(i, j) * pow(c, i - j, p) % p
    return row


def _verify_basis(B: RRBasis) -> None:
    curve, D = B.curve, B.divisor
    pts = _relevant_points(curve, D) + [INFINITY]
    for phi in B.basis:
        for pt in pts:
            if valuation(phi, pt, curve) + D.mult(pt) < 0:
                raise AssertionError(f"basis element {phi!r} fails div + D >= 0 at {pt!r}")


def h0(curve: HECurve, D: Divisor) -> int:
    return rr_space(curve, D).dim


def riemann_roch_check(curve: HECurve, D: Divisor) -> bool:
    """``h0(D) - h0(K - D) == deg D - g + 1``."""
    K = canonical_divisor(curve)
    return h0(curve, D) - h0(curve, K - D) == D.degree - curve.genus + 1
