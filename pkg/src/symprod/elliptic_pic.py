"""Degree-d line bundles on an elliptic curve relative to two marked points P, Q.

The class is modelled as ``L = O(e P + (d - e) Q) + gamma * G`` where ``G`` lies
outside the subgroup generated by ``[P - Q]`` and ``[P - Q]`` has order
``torsion`` (``None`` for infinite order, i.e. P, Q in general position).  The
only geometry used is when ``L - aP - bQ`` is trivial for ``a + b = d``: exactly
when ``gamma = 0`` and ``a = e`` modulo the torsion order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

INF = None


@dataclass(frozen=True)
class PicClass:
    d: int
    e: int = 0
    generic: bool = False
    torsion: int | None = INF

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("degree must be nonnegative")
        if self.torsion is not None:
            if self.torsion < 1:
                raise ValueError("torsion order must be positive")
            object.__setattr__(self, "e", self.e % self.torsion)

    def trivial_twist(self, a: int) -> bool:
        """Is ``L - aP - (d - a)Q`` the trivial class?"""
        if self.generic:
            return False
        if self.torsion is None:
            return self.e == a
        return (self.e - a) % self.torsion == 0

    def to_json(self) -> dict:
        return {"d": self.d, "e": self.e, "generic": self.generic,
                "torsion": "inf" if self.torsion is None else self.torsion}

    @classmethod
    def from_json(cls, data: Mapping) -> "PicClass":
        t = data.get("torsion", "inf")
        return cls(int(data["d"]), int(data.get("e", 0)), bool(data.get("generic", False)),
                   None if t in ("inf", None) else int(t))


def h0_minus(c: PicClass, a: int, b: int) -> int:
    """``h0(L - aP - bQ)`` on the elliptic curve."""
    n = c.d - a - b
    if n >= 1:
        return n
    if n == 0:
        return 1 if c.trivial_twist(a) else 0
    return 0


def tight_pairs(c: PicClass) -> list[tuple[int, int]]:
    """Pairs ``(a, b)`` with ``a + b = d`` realized by a section."""
    return [(a, c.d - a) for a in range(c.d + 1) if h0_minus(c, a, c.d - a) >= 1]


def max_order_sum(c: PicClass) -> tuple[int, bool]:
    """Largest ``ord_P + ord_Q`` of a section, and whether exactly one pair attains ``d``."""
    if c.d < 1:
        raise ValueError("max_order_sum needs d >= 1")
    best = max(a + b for a in range(c.d + 1) for b in range(c.d + 1 - a) if h0_minus(c, a, b) >= 1)
    return best, len(tight_pairs(c)) == 1


def orders_at(c: PicClass, point: str = "P") -> list[int]:
    """Vanishing sequence at ``P`` (or ``Q``): the ``a`` where ``h0(L - aP)`` drops."""
    if c.d < 1:
        raise ValueError("orders_at needs d >= 1")
    if point == "P":
        h = [h0_minus(c, a, 0) for a in range(c.d + 2)]
    elif point == "Q":
        h = [h0_minus(c, 0, b) for b in range(c.d + 2)]
    else:
        raise ValueError("point must be 'P' or 'Q'")
    return [a for a in range(c.d + 1) if h[a] > h[a + 1]]


def rational_max_sum(d: int) -> int:
    """On P^1 the monomials ``s^a t^b`` realize every ``a + b <= d``."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return d


def rational_h0_minus(d: int, a: int, b: int) -> int:
    """``h0(O(d) - aP - bQ)`` on P^1."""
    return max(d - a - b + 1, 0)
