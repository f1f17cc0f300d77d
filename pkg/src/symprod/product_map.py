"""The symmetric multiplication map ``S^2 H^0(L) -> H^0(L^2)``.

Products of sections of ``L(D)`` all live over the denominator ``h^2`` where
``h`` is the common denominator of the Riemann-Roch basis, so independence
of the products as functions is independence of their numerator coefficient
vectors ``(a-part, b-part)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Mapping, Sequence

from .gfp import FpMatrix, UniPoly, centered, inv, rank_and_kernel
from .hyperelliptic import Divisor, FuncRep, HECurve, RRBasis, rr_space


@dataclass(frozen=True)
class SymTensor:
    """Element ``sum c_nm sigma_n . sigma_m`` of ``S^2`` of a k-dimensional space.

    Keys are 1-based pairs ``(n, m)`` with ``n <= m``; zero coefficients are dropped.
    """

    k: int
    p: int
    coeffs: tuple[tuple[tuple[int, int], int], ...] = ()

    def __post_init__(self):
        acc: dict[tuple[int, int], int] = {}
        for (n, m), c in self.coeffs:
            if not (1 <= n <= self.k and 1 <= m <= self.k):
                raise ValueError(f"index pair {(n, m)} out of range for k={self.k}")
            key = (min(n, m), max(n, m))
            acc[key] = (acc.get(key, 0) + c) % self.p
        object.__setattr__(self, "coeffs", tuple(sorted((k, c) for k, c in acc.items() if c)))

    @classmethod
    def from_vector(cls, vec: Sequence[int], k: int, p: int) -> "SymTensor":
        return cls(k, p, tuple(zip(sym_pairs(k), vec)))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def normalized(self) -> "SymTensor":
        """Scaled so that the first nonzero coefficient (in pair order) is 1."""
        if not self.coeffs:
            return self
        s = inv(self.coeffs[0][1], self.p)
        return SymTensor(self.k, self.p, tuple((key, c * s) for key, c in self.coeffs))

    def to_json(self) -> list[dict]:
        return [{"n": n, "m": m, "c": centered(c, self.p)} for (n, m), c in self.coeffs]


def sym_pairs(k: int) -> list[tuple[int, int]]:
    """Pairs ``(1,1), (1,2), ..., (k,k)``."""
    return list(combinations_with_replacement(range(1, k + 1), 2))


@dataclass(frozen=True)
class MulMapReport:
    k: int
    p: int
    rank: int
    kernel_basis: tuple[SymTensor, ...]
    h0_square: int | None = None
    extra: Mapping = field(default_factory=dict, compare=False)

    @property
    def dim_sym2(self) -> int:
        return self.k * (self.k + 1) // 2

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_basis)

    @property
    def injective(self) -> bool:
        return self.kernel_dim == 0

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "dim_sym2": self.dim_sym2,
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "injective": self.injective,
            "kernel_basis": [t.to_json() for t in self.kernel_basis],
        }
        if self.h0_square is not None:
            out["h0_L2"] = self.h0_square
        out.update(self.extra)
        return out


def multiply_sections(phi: FuncRep, psi: FuncRep, curve: HECurve) -> FuncRep:
    """``(a1 + b1 y)(a2 + b2 y) / (h1 h2)`` with ``y^2`` replaced by ``f``."""
    return phi.mul(psi, curve)


def _product_numerators(curve: HECurve, B: RRBasis, pairs) -> list[tuple[UniPoly, UniPoly]]:
    f = curve.f
    nums = B.numerators
    out = []
    for n, m in pairs:
        (a1, b1), (a2, b2) = nums[n - 1], nums[m - 1]
        out.append((a1 * a2 + b1 * b2 * f, a1 * b2 + a2 * b1))
    return out


def _numerator_matrix(p: int, numerators: list[tuple[UniPoly, UniPoly]]) -> FpMatrix:
    len_a = max((len(a) for a, _ in numerators), default=0)
    len_b = max((len(b) for _, b in numerators), default=0)
    cols = []
    for a, b in numerators:
        cols.append([a[i] for i in range(len_a)] + [b[i] for i in range(len_b)])
    return FpMatrix.from_columns(cols, p)


def evaluate_tensor(t: SymTensor, basis: Sequence[FuncRep], curve: HECurve) -> FuncRep:
    """Multiply out ``sum c_nm phi_n phi_m`` symbolically."""
    p = curve.p
    acc = FuncRep.const(0, p)
    for (n, m), c in t.coeffs:
        acc = acc + multiply_sections(basis[n - 1], basis[m - 1], curve).scale(c)
    return acc


def sym2_kernel_report(curve: HECurve, D: Divisor, basis: RRBasis | None = None,
                       with_h0_square: bool = True) -> MulMapReport:
    """Rank and kernel of ``S^2 L(D) -> L(2D)``.

    Kernel elements are re-verified by multiplying them out as functions.
    """
    B = basis if basis is not None else rr_space(curve, D)
    k, p = B.dim, curve.p
    if k == 0:
        raise ValueError("L(D) is zero; the multiplication map is not defined")
    pairs = sym_pairs(k)
    M = _numerator_matrix(p, _product_numerators(curve, B, pairs))
    r, kernel = rank_and_kernel(M)
    tensors = tuple(SymTensor.from_vector(v, k, p).normalized() for v in kernel)
    for t in tensors:
        if not evaluate_tensor(t, B.basis, curve).is_zero():
            raise AssertionError(f"kernel element {t} does not multiply out to zero")
    h0_sq = rr_space(curve, 2 * D).dim if with_h0_square else None
    if h0_sq is not None and r > h0_sq:
        raise AssertionError("product rank exceeds h0(2D)")
    return MulMapReport(k, p, r, tensors, h0_sq)


def full_kernel_dim(curve: HECurve, D: Divisor, basis: RRBasis | None = None) -> int:
    """Kernel dimension of the full map ``H^0 (x) H^0 -> H^0(L^2)`` (k^2 columns)."""
    B = basis if basis is not None else rr_space(curve, D)
    k = B.dim
    pairs = list(product(range(1, k + 1), repeat=2))
    M = _numerator_matrix(curve.p, _product_numerators(curve, B, pairs))
    r, _ = rank_and_kernel(M)
    return k * k - r


def full_tensor_relation_check(curve: HECurve, D: Divisor, basis: RRBasis | None = None,
                               sym_kernel_dim: int | None = None) -> bool:
    """``dim ker(full map) == dim ker(S^2 map) + k(k-1)/2``: the kernel is the wedge part plus S^2's."""
    B = basis if basis is not None else rr_space(curve, D)
    k = B.dim
    if sym_kernel_dim is None:
        sym_kernel_dim = sym2_kernel_report(curve, D, B, with_h0_square=False).kernel_dim
    return full_kernel_dim(curve, D, B) == sym_kernel_dim + k * (k - 1) // 2
