"""Invariant suites behind ``symprod selftest``.

Each suite raises ``AssertionError`` naming the identity that broke; the
runner catches it, records the first failure and moves on to the next suite.
"""
from __future__ import annotations

import random
import time
import traceback
from dataclasses import dataclass
from itertools import product
from typing import Callable, TextIO

from . import chain, elliptic_pic, gfp, hyperelliptic, product_map, quadric


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checks: int
    seconds: float
    detail: str = ""


def suite_linear_algebra(rng: random.Random) -> int:
    n = 0
    for p in (3, 101, 10007, 2**61 - 1):
        for _ in range(15):
            r, c = rng.randint(1, 7), rng.randint(1, 7)
            M = gfp.FpMatrix(p, [[rng.randrange(p) if rng.random() < 0.7 else 0 for _ in range(c)]
                                 for _ in range(r)])
            rk, ker = gfp.rank_and_kernel(M)
            assert rk + len(ker) == c, "rank-nullity"
            assert all(not any(M.apply(v)) for v in ker), "kernel vectors are annihilated"
            assert gfp.rank(M.transpose()) == rk, "row rank equals column rank"
            n += 3
        for _ in range(20):
            a = rng.randrange(p)
            s = gfp.sqrt_mod(a, p)
            assert (s is None) == (not gfp.is_square(a, p)), "square root exists iff a is a square"
            if s is not None:
                assert s * s % p == a, "square root squares back"
            n += 1
    return n


def suite_series(rng: random.Random) -> int:
    n = 0
    p = 10007
    for _ in range(20):
        f = gfp.UniPoly(p, [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(5)])
        y0 = gfp.sqrt_mod(f(0), p)
        if y0 is None:
            continue
        y = gfp.series_sqrt(gfp.series_from_poly(f, 12), y0)
        assert (y * y).coeffs == gfp.series_from_poly(f, 12).coeffs, "series square root squares back"
        s = gfp.series_from_poly(f, 12)
        assert (s * s.inverse()).coeffs == (1,) + (0,) * 11, "series inverse"
        roots = rng.sample(range(p), 3)
        for r, _m in gfp.cubic_roots(gfp.UniPoly.from_roots(roots, p)):
            assert r in roots, "cubic roots"
        n += 3
    return n


def suite_riemann_roch(rng: random.Random) -> int:
    n = 0
    for g in (1, 2, 3, 4):
        curve = hyperelliptic.random_curve(101, g, rng)
        for _ in range(10):
            deg = rng.randint(-1, 2 * g + 1)
            D = hyperelliptic.random_divisor(curve, deg, rng)
            assert hyperelliptic.riemann_roch_check(curve, D), \
                f"Riemann-Roch identity h0(D) - h0(K-D) = deg D - g + 1 fails for g={g}, D={D!r}"
            n += 1
    return n


def suite_valuations(rng: random.Random) -> int:
    n = 0
    p = 1009
    for g in (1, 2, 3):
        curve = hyperelliptic.random_curve(p, g, rng)
        x = hyperelliptic.FuncRep.x(p)
        y = hyperelliptic.FuncRep.y(p)
        assert hyperelliptic.valuation(x, hyperelliptic.INFINITY, curve) == -2, "ord_inf x = -2"
        assert hyperelliptic.valuation(y, hyperelliptic.INFINITY, curve) == -(2 * g + 1), \
            "ord_inf y = -(2g+1)"
        for _ in range(5):
            P = hyperelliptic.random_point(curve, rng)
            Q = curve.conjugate(P)
            c = hyperelliptic.FuncRep.poly(gfp.UniPoly(p, (-P.x, 1)))
            assert hyperelliptic.valuation(c, P, curve) == (2 if P == Q else 1), "ord_P (x - x(P))"
            div = hyperelliptic.divisor_of(c, curve, [P, Q, hyperelliptic.INFINITY])
            assert div.degree == 0, "principal divisors have degree 0"
            R = hyperelliptic.random_point(curve, rng)
            phi = hyperelliptic.FuncRep(gfp.UniPoly(p, (rng.randrange(p), 1)), gfp.UniPoly(p, (1,)),
                                        gfp.UniPoly(p, (1,)))
            for pt in (R, hyperelliptic.INFINITY):
                lhs = hyperelliptic.valuation(phi.mul(c, curve), pt, curve)
                rhs = hyperelliptic.valuation(phi, pt, curve) + hyperelliptic.valuation(c, pt, curve)
                assert lhs == rhs, "valuations are additive"
            n += 5
    return n


def suite_product_map(rng: random.Random) -> int:
    n = 0
    p = gfp.DEFAULT_PRIME
    for _ in range(10):
        curve = hyperelliptic.random_curve(p, 2, rng)
        D = hyperelliptic.random_generic_divisor(curve, 3, rng)
        rep = product_map.sym2_kernel_report(curve, D)
        assert rep.kernel_dim == 0, "genus 2, degree 3: S^2 map is injective"
        assert product_map.full_tensor_relation_check(curve, D, sym_kernel_dim=0), "wedge relation"
        n += 2
    for g in (3, 4):
        curve = hyperelliptic.random_curve(p, g, rng)
        D = hyperelliptic.Divisor.of(inf=4)
        rep = product_map.sym2_kernel_report(curve, D)
        assert rep.kernel_dim == 1, "D = 4*inf on a hyperelliptic curve: one relation 1.x^2 = x.x"
        assert product_map.full_tensor_relation_check(curve, D, sym_kernel_dim=1), "wedge relation"
        n += 2
    return n


def suite_genus4_example(rng: random.Random) -> int:
    curve, rep = quadric.run_example(gfp.DEFAULT_PRIME, rng.randrange(2**32))
    assert rep.kernel_dim == 1 and rep.rank == 9, "four sections of O(1,1): rank 9 of 10"
    assert rep.kernel_basis[0].as_dict() == {(1, 4): 1, (2, 3): gfp.DEFAULT_PRIME - 1}, \
        "kernel element s1s2.t1t2 - s1t2.t1s2"
    assert quadric.full_kernel_dim(curve) == 7, "full tensor kernel 1 + 6"
    return 3


def suite_elliptic_pic(rng: random.Random) -> int:
    n = 0
    for d in range(1, 11):
        for t in [None] + list(range(1, 11)):
            for e in range(d + 1):
                for generic in (False, True):
                    c = elliptic_pic.PicClass(d, e, generic, t)
                    best, unique = elliptic_pic.max_order_sum(c)
                    hits = [a for a in range(d + 1) if not generic and
                            (a == c.e if t is None else (a - c.e) % t == 0)]
                    assert best <= d, "order sum at most d"
                    assert (best == d) == bool(hits), "order sum d only for O(aP + (d-a)Q)"
                    assert unique == (len(hits) == 1), "unique tight section flag"
                    n += 3
    return n


def suite_chain(rng: random.Random) -> int:
    n = 0
    res = chain.run_campaign(4, 3, 2, 60, rng.randrange(2**32))
    assert res.surviving == 0, "d <= g-1: every candidate dies"
    n += 1
    for _ in range(100):
        k = rng.randint(2, 4)
        st = chain.random_rho(k, rng)
        alpha = rng.sample(range(9), k)
        beta = chain.beta_step(st, alpha)
        nxt = chain.advance_valuations(st, alpha, beta)
        assert min(v for _, v in nxt.pairs) == 0, "advance_valuations keeps min nu = 0"
        n += 1
    for g in range(2, 9):
        for e in range(g + 1):
            for t in [None] + list(range(1, g + 1)):
                for generic in (False, True):
                    v = chain.endgame_d_equals_g(elliptic_pic.PicClass(g, e, generic, t))
                    assert v.no_kernel_element, f"d = g endgame, g={g}"
                    n += 1
    for k in range(2, 5):
        for d in range(k, 8):
            for orders in product(range(d + 1), repeat=k):
                if len(set(orders)) == k:
                    assert chain.endgame_d_equals_g_plus_1(orders).no_kernel_element, "d = g+1 bound"
                    n += 1
    return n


SUITES: list[tuple[str, Callable[[random.Random], int]]] = [
    ("linear_algebra", suite_linear_algebra),
    ("series_and_roots", suite_series),
    ("riemann_roch", suite_riemann_roch),
    ("valuations", suite_valuations),
    ("product_map", suite_product_map),
    ("genus4_example", suite_genus4_example),
    ("elliptic_pic", suite_elliptic_pic),
    ("chain", suite_chain),
]


def run_all(seed: int = 0, suites=None) -> list[SuiteResult]:
    out = []
    for name, fn in suites or SUITES:
        rng = random.Random(f"{seed}:{name}")
        t0 = time.perf_counter()
        try:
            n = fn(rng)
            out.append(SuiteResult(name, True, n, time.perf_counter() - t0))
        except Exception as exc:  # report every suite, not just the first
            msg = f"{type(exc).__name__}: {exc}" if str(exc) else traceback.format_exc(limit=2)
            out.append(SuiteResult(name, False, 0, time.perf_counter() - t0, msg))
    return out


def print_table(results: list[SuiteResult], fh: TextIO) -> None:
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        fh.write(f"{r.name:<{width}}  {status}  {r.checks:>6} checks  {r.seconds:6.2f}s\n")
        if not r.passed:
            fh.write(f"    {r.detail}\n")
    bad = sum(not r.passed for r in results)
    fh.write(f"{len(results) - bad}/{len(results)} suites passed\n")
