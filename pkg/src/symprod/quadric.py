"""Genus-4 curves of bidegree (3,3) on P^1 x P^1 and the degree-6 counterexample.

In affine coordinates ``(u, v)`` the two rulings give pencils ``{1, u}`` and
``{1, v}`` of degree 3 on the curve.  Their tensor product ``L = O(1,1)|_C``
has degree 6 = g + 2 and sections ``1, v, u, uv``; the relation
``1 * uv = v * u`` puts a nonzero element in the kernel of the symmetric
multiplication map.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .gfp import FpMatrix, UniPoly, check_prime, cubic_roots, rank, rank_and_kernel
from .product_map import MulMapReport, SymTensor, sym_pairs

GENUS = 4
DEGREE = 6
SECTION_NAMES = ("s1s2", "s1t2", "t1s2", "t1t2")


class DegenerateCurve(RuntimeError):
    """The sampled (3,3) form does not behave like a smooth generic curve."""


@dataclass(frozen=True)
class BiForm:
    """Polynomial in ``u, v`` of bidegree at most ``(a, b)``; ``coeffs[i][j]`` is the ``u^i v^j`` term."""

    p: int
    bidegree: tuple[int, int]
    coeffs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        a, b = self.bidegree
        grid = tuple(tuple(int(c) % self.p for c in row) for row in self.coeffs)
        if len(grid) != a + 1 or any(len(row) != b + 1 for row in grid):
            raise ValueError(f"coefficient grid does not match bidegree {self.bidegree}")
        object.__setattr__(self, "coeffs", grid)

    @classmethod
    def monomial(cls, p: int, i: int, j: int, bidegree: tuple[int, int] | None = None) -> "BiForm":
        a, b = bidegree or (i, j)
        grid = [[0] * (b + 1) for _ in range(a + 1)]
        grid[i][j] = 1
        return cls(p, (a, b), tuple(map(tuple, grid)))

    def __call__(self, u: int, v: int) -> int:
        p = self.p
        return sum(c * pow(u, i, p) * pow(v, j, p)
                   for i, row in enumerate(self.coeffs) for j, c in enumerate(row)) % p

    def __mul__(self, other: "BiForm") -> "BiForm":
        a = self.bidegree[0] + other.bidegree[0]
        b = self.bidegree[1] + other.bidegree[1]
        grid = [[0] * (b + 1) for _ in range(a + 1)]
        for (i, row), (k, row2) in product(enumerate(self.coeffs), enumerate(other.coeffs)):
            for j, c in enumerate(row):
                if c:
                    for l, d in enumerate(row2):
                        grid[i + k][j + l] += c * d
        return BiForm(self.p, (a, b), tuple(map(tuple, grid)))

    def __add__(self, other: "BiForm") -> "BiForm":
        if self.bidegree != other.bidegree:
            raise ValueError("bidegree mismatch")
        return BiForm(self.p, self.bidegree, tuple(
            tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(self.coeffs, other.coeffs)))

    def scale(self, c: int) -> "BiForm":
        return BiForm(self.p, self.bidegree, tuple(tuple(c * x for x in row) for row in self.coeffs))

    def padded(self, bidegree: tuple[int, int]) -> "BiForm":
        a, b = bidegree
        grid = [[0] * (b + 1) for _ in range(a + 1)]
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                grid[i][j] = c
        return BiForm(self.p, bidegree, tuple(map(tuple, grid)))

    def vector(self) -> list[int]:
        return [c for row in self.coeffs for c in row]

    def is_zero(self) -> bool:
        return not any(self.vector())

    def in_v(self, u: int) -> UniPoly:
        """Specialize ``u`` and return the polynomial in ``v``."""
        p = self.p
        b = self.bidegree[1]
        return UniPoly(p, tuple(sum(self.coeffs[i][j] * pow(u, i, p) for i in range(len(self.coeffs)))
                                for j in range(b + 1)))


@dataclass(frozen=True)
class QuadricCurve:
    p: int
    F: BiForm

    def __post_init__(self):
        check_prime(self.p)
        if self.F.bidegree != (3, 3):
            raise ValueError("expected a form of bidegree (3,3)")
        if self.F.is_zero():
            raise ValueError("zero form")

    @property
    def genus(self) -> int:
        return (3 - 1) * (3 - 1)

    def to_json(self) -> dict:
        return {"p": self.p, "F": [list(row) for row in self.F.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "QuadricCurve":
        p = int(data["p"])
        return cls(p, BiForm(p, (3, 3), tuple(tuple(int(c) for c in row) for row in data["F"])))


def random_quadric_curve(p: int, seed) -> QuadricCurve:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    grid = tuple(tuple(rng.randrange(p) for _ in range(4)) for _ in range(4))
    return QuadricCurve(p, BiForm(p, (3, 3), grid))


@dataclass(frozen=True)
class CurveSample:
    points: tuple[tuple[int, int], ...]


def sample_points(curve: QuadricCurve, n: int, seed) -> CurveSample:
    """``n`` distinct rational points: random ``u``, then the roots of ``F(u, .)``."""
    p = curve.p
    if p < 101:
        raise ValueError("sampling needs p >= 101")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    pts: list[tuple[int, int]] = []
    seen = set()
    for _ in range(50 * n + 50):
        u = rng.randrange(p)
        fv = curve.F.in_v(u)
        if fv.is_zero() or fv.deg < 1:
            continue
        for v, _ in cubic_roots(fv):
            if (u, v) not in seen:
                seen.add((u, v))
                pts.append((u, v))
        if len(pts) >= n:
            return CurveSample(tuple(pts[:n]))
    raise DegenerateCurve(f"found only {len(pts)} of {n} points; the form looks degenerate")


def pencil_sections(curve: QuadricCurve) -> tuple[BiForm, BiForm, BiForm, BiForm]:
    """``s1, t1 = 1, u`` (first ruling) and ``s2, t2 = 1, v`` (second ruling)."""
    p = curve.p
    return (BiForm.monomial(p, 0, 0, (1, 0)), BiForm.monomial(p, 1, 0, (1, 0)),
            BiForm.monomial(p, 0, 0, (0, 1)), BiForm.monomial(p, 0, 1, (0, 1)))


def four_sections(curve: QuadricCurve) -> tuple[BiForm, BiForm, BiForm, BiForm]:
    """``s1 s2, s1 t2, t1 s2, t1 t2`` as (1,1)-forms."""
    s1, t1, s2, t2 = pencil_sections(curve)
    return (s1 * s2, s1 * t2, t1 * s2, t1 * t2)


def evaluation_rank(forms: Sequence[BiForm], points: Sequence[tuple[int, int]], p: int) -> int:
    return rank(FpMatrix.from_columns([[F(u, v) for u, v in points] for F in forms], p))


def verify_four_sections(curve: QuadricCurve, seed, n_points: int = 12, retries: int = 5) -> bool:
    """Evaluation rank of ``{1, v, u, uv}`` on sampled points is 4."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    secs = four_sections(curve)
    for _ in range(retries):
        pts = sample_points(curve, max(n_points, 8), rng).points
        if evaluation_rank(secs, pts, curve.p) == 4:
            return True
    return False


def sym2_products(curve: QuadricCurve) -> list[BiForm]:
    secs = four_sections(curve)
    return [(secs[n - 1] * secs[m - 1]).padded((2, 2)) for n, m in sym_pairs(4)]


def example_kernel(curve: QuadricCurve, seed=0, n_points: int = 16) -> MulMapReport:
    """Kernel of ``S^2 -> H^0(L^2)`` on the four sections of ``O(1,1)|_C``.

    Ranks are computed twice: on (2,2) coefficient vectors (no (2,2)-form is a
    multiple of the (3,3) form F, so this is rank as functions on C) and by
    evaluation at sampled points of C.
    """
    p = curve.p
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if not verify_four_sections(curve, rng):
        raise DegenerateCurve("the four sections are dependent on the sampled points")
    prods = sym2_products(curve)
    M = FpMatrix.from_columns([F.vector() for F in prods], p)
    r, kernel = rank_and_kernel(M)
    pts = sample_points(curve, n_points, rng).points
    r_eval = evaluation_rank(prods, pts, p)
    if r_eval != r:
        raise DegenerateCurve(f"evaluation rank {r_eval} differs from coefficient rank {r}")
    tensors = tuple(SymTensor.from_vector(v, 4, p).normalized() for v in kernel)
    for t in tensors:
        acc = BiForm(p, (2, 2), ((0,) * 3,) * 3)
        for (n, m), c in t.coeffs:
            acc = acc + prods[sym_pairs(4).index((n, m))].scale(c)
        if not acc.is_zero():
            raise AssertionError("kernel element does not multiply out to zero")
    if len(tensors) != 1:
        raise DegenerateCurve(f"kernel dimension {len(tensors)} != 1")
    extra = {
        "genus": GENUS,
        "degree_L": DEGREE,
        "sections": list(SECTION_NAMES),
        "section_rank": evaluation_rank(four_sections(curve), pts, p),
        "evaluation_rank": r_eval,
    }
    # h0(L^2) = 12 - g + 1 since deg L^2 = 12 > 2g - 2
    return MulMapReport(4, p, r, tensors, h0_square=2 * DEGREE - GENUS + 1, extra=extra)


def full_kernel_dim(curve: QuadricCurve) -> int:
    """Kernel dimension of ``H^0 (x) H^0 -> H^0(L^2)`` on the four sections."""
    secs = four_sections(curve)
    cols = [(a * b).padded((2, 2)).vector() for a, b in product(secs, repeat=2)]
    r = rank(FpMatrix.from_columns(cols, curve.p))
    return 16 - r


def run_example(p: int, seed, max_draws: int = 20) -> tuple[QuadricCurve, MulMapReport]:
    """Draw curves until one passes the generic-rank checks, then report its kernel."""
    rng = random.Random(seed)
    last = None
    for _ in range(max_draws):
        curve = random_quadric_curve(p, rng)
        try:
            return curve, example_kernel(curve, rng)
        except DegenerateCurve as exc:
            last = exc
    raise DegenerateCurve(f"{max_draws} degenerate draws in a row: {last}")
