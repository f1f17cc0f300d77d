"""Order-of-vanishing bookkeeping for limit linear series on chains of curves.

A chain is a list of rational and elliptic components ``Y_1 .. Y_M`` glued
``Q_i ~ P_{i+1}``.  A configuration fixes a basis ``sigma_1 .. sigma_k`` of the
sections and, on every component, the vanishing orders of each section at the
two nodes.  Across the node after ``Y_i`` the section ``sigma_m`` is rescaled by
``t**alpha_m``.

A candidate kernel element ``rho = sum f_nm (sigma_n sigma_m)`` is recorded
only through the valuations ``nu_nm`` of its coefficients.  ``propagate`` walks
the chain computing the order of ``rho`` at each ``P_i``, the rescaling
exponent ``beta``, and whether an elliptic component raises the order by two
or eliminates the candidate.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .elliptic_pic import PicClass, h0_minus, orders_at, rational_h0_minus

RATIONAL = "rational"
ELLIPTIC = "elliptic"

RETRY_CAP = 10**4


class ChainInvariantError(AssertionError):
    def __init__(self, component: int, message: str):
        super().__init__(f"component {component}: {message}")
        self.component = component


class InfeasibleComponent(RuntimeError):
    def __init__(self, component: int, message: str = "no admissible aspect found"):
        super().__init__(f"component {component}: {message}")
        self.component = component


def brill_noether_number(g: int, d: int, k: int) -> int:
    """``g - k (g - 1 - d + k)`` for series of degree d with k sections."""
    return g - k * (g - 1 - d + k)


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class Component:
    kind: str
    pic: PicClass | None = None

    def __post_init__(self):
        if self.kind not in (RATIONAL, ELLIPTIC):
            raise ValueError(f"unknown component kind {self.kind!r}")
        if self.kind == RATIONAL and self.pic is not None:
            raise ValueError("rational components carry no class")

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.pic is not None:
            out["pic"] = self.pic.to_json()
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Component":
        pic = data.get("pic")
        return cls(data["kind"], PicClass.from_json(pic) if pic else None)


@dataclass(frozen=True)
class ChainCurve:
    components: tuple[Component, ...]

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("a chain needs at least one elliptic component")

    @classmethod
    def from_runs(cls, runs: Sequence[int], pics: Sequence[PicClass | None] | None = None) -> "ChainCurve":
        """``runs[j]`` rational components after the j-th elliptic one (``runs[0]`` before the first)."""
        g = len(runs) - 1
        pics = list(pics) if pics is not None else [None] * g
        comps: list[Component] = [Component(RATIONAL)] * runs[0]
        for j in range(g):
            comps.append(Component(ELLIPTIC, pics[j]))
            comps.extend([Component(RATIONAL)] * runs[j + 1])
        return cls(tuple(comps))

    @property
    def g(self) -> int:
        return sum(c.kind == ELLIPTIC for c in self.components)

    @property
    def M(self) -> int:
        return len(self.components)

    @property
    def rational_runs(self) -> list[int]:
        runs = [0]
        for c in self.components:
            if c.kind == ELLIPTIC:
                runs.append(0)
            else:
                runs[-1] += 1
        return runs

    def with_classes(self, pics: Mapping[int, PicClass]) -> "ChainCurve":
        return ChainCurve(tuple(Component(c.kind, pics.get(i, c.pic)) if c.kind == ELLIPTIC else c
                                for i, c in enumerate(self.components)))

    def to_json(self, d: int, k: int) -> dict:
        return {"components": [c.to_json() for c in self.components], "d": d, "k": k}

    @classmethod
    def from_json(cls, data: Mapping) -> tuple["ChainCurve", int, int]:
        return (cls(tuple(Component.from_json(c) for c in data["components"])),
                int(data["d"]), int(data["k"]))


@dataclass(frozen=True)
class AspectData:
    """Orders of ``sigma_1 .. sigma_k`` at ``P_i`` and ``Q_i`` on one component.

    Sections keep their index along the chain, so ``orders_P`` is a list of
    distinct values rather than a sorted vanishing sequence.
    """

    orders_P: tuple[int, ...]
    orders_Q: tuple[int, ...]

    @property
    def vanishing_sequence(self) -> list[int]:
        return sorted(self.orders_P)

    def tight(self, d: int) -> list[int]:
        """Indices (0-based) of sections with ``ord_P + ord_Q = d``."""
        return [m for m, (a, b) in enumerate(zip(self.orders_P, self.orders_Q)) if a + b == d]


@dataclass(frozen=True)
class TransitionData:
    alpha: tuple[int, ...]


def check_aspect(comp: Component, aspect: AspectData, d: int, index: int = 0) -> None:
    """Reject orders incompatible with the component (order-sum bounds on elliptic and rational pieces)."""
    A, B = aspect.orders_P, aspect.orders_Q
    k = len(A)
    if len(B) != k:
        raise ChainInvariantError(index, "orders_P and orders_Q differ in length")
    if len(set(A)) != k or len(set(B)) != k:
        raise ChainInvariantError(index, "vanishing orders of the basis must be distinct at each node")
    if any(not 0 <= x <= d for x in A + B):
        raise ChainInvariantError(index, "vanishing order outside [0, d]")
    if comp.kind == ELLIPTIC and comp.pic is None:
        raise ChainInvariantError(index, "elliptic component without a class")
    for a in range(d + 2):
        for b in range(d + 2 - a):
            count = sum(1 for x, y in zip(A, B) if x >= a and y >= b)
            if count == 0:
                continue
            cap = h0_minus(comp.pic, a, b) if comp.kind == ELLIPTIC else rational_h0_minus(d, a, b)
            if count > cap:
                raise ChainInvariantError(
                    index, f"{count} sections vanish to orders >= ({a}, {b}) but h0 = {cap}")


def check_transition(aspect: AspectData, alpha: Sequence[int], nxt: AspectData, d: int,
                     index: int = 0) -> None:
    """``ord_P <= d - ord_Q <= alpha <= next ord_P`` for every section."""
    for m, (a, b, al, a2) in enumerate(zip(aspect.orders_P, aspect.orders_Q, alpha, nxt.orders_P)):
        if not (a <= d - b <= al <= a2):
            raise ChainInvariantError(
                index, f"section {m + 1}: {a} <= {d - b} <= {al} <= {a2} fails")


@dataclass(frozen=True)
class Configuration:
    chain: ChainCurve
    d: int
    k: int
    aspects: tuple[AspectData, ...]
    transitions: tuple[TransitionData, ...]

    def validate(self) -> None:
        if len(self.aspects) != self.chain.M or len(self.transitions) != self.chain.M - 1:
            raise ValueError("aspect/transition counts do not match the chain")
        for i, (comp, asp) in enumerate(zip(self.chain.components, self.aspects)):
            if len(asp.orders_P) != self.k:
                raise ChainInvariantError(i, f"expected {self.k} sections")
            check_aspect(comp, asp, self.d, i)
        for i, tr in enumerate(self.transitions):
            check_transition(self.aspects[i], tr.alpha, self.aspects[i + 1], self.d, i)

    def to_json(self) -> dict:
        out = self.chain.to_json(self.d, self.k)
        out["aspects"] = [{"orders_P": list(a.orders_P), "orders_Q": list(a.orders_Q)}
                          for a in self.aspects]
        out["alpha"] = [list(t.alpha) for t in self.transitions]
        return out


# ---------------------------------------------------------------------------
# candidate kernel elements


def _pair(n: int, m: int) -> tuple[int, int]:
    return (n, m) if n <= m else (m, n)


@dataclass(frozen=True)
class RhoState:
    """Valuations ``nu_nm`` of the coefficients of rho; absent pairs have coefficient 0.

    Pairs are 1-based ``(n, m)`` with ``n <= m``.
    """

    pairs: tuple[tuple[tuple[int, int], int], ...]

    def __post_init__(self):
        acc = {}
        for (n, m), nu in self.pairs:
            key = _pair(n, m)
            if key in acc:
                raise ValueError(f"pair {key} listed twice")
            if nu < 0:
                raise ValueError("valuations are nonnegative")
            acc[key] = int(nu)
        if not acc:
            raise ValueError("rho has no terms")
        if min(acc.values()) != 0:
            raise ValueError("rho must not be divisible by t (some valuation must be 0)")
        object.__setattr__(self, "pairs", tuple(sorted(acc.items())))

    @classmethod
    def of(cls, mapping: Mapping[tuple[int, int], int]) -> "RhoState":
        return cls(tuple(mapping.items()))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.pairs)

    def zero_pairs(self) -> list[tuple[int, int]]:
        return [key for key, nu in self.pairs if nu == 0]

    def to_json(self) -> list[dict]:
        return [{"n": n, "m": m, "nu": nu} for (n, m), nu in self.pairs]


def ord_rho(state: RhoState, orders_P: Sequence[int]) -> int:
    """Order of rho at P: minimum of ``ord(sigma_n) + ord(sigma_m)`` over unit coefficients."""
    zero = state.zero_pairs()
    if not zero:
        raise ValueError("no coefficient of valuation 0")
    return min(orders_P[n - 1] + orders_P[m - 1] for n, m in zero)


def minimizing_pairs(state: RhoState, orders_P: Sequence[int]) -> list[tuple[int, int]]:
    o = ord_rho(state, orders_P)
    return [(n, m) for n, m in state.zero_pairs() if orders_P[n - 1] + orders_P[m - 1] == o]


def beta_step(state: RhoState, alpha: Sequence[int]) -> int:
    """Exponent with ``t**beta rho`` primitive in the next lattice: ``max(alpha_n + alpha_m - nu_nm)``."""
    return max(alpha[n - 1] + alpha[m - 1] - nu for (n, m), nu in state.pairs)


def advance_valuations(state: RhoState, alpha: Sequence[int], beta: int) -> RhoState:
    """Valuations of the coefficients of ``t**beta rho`` in the rescaled basis."""
    return RhoState(tuple(((n, m), nu + beta - alpha[n - 1] - alpha[m - 1])
                          for (n, m), nu in state.pairs))


def random_rho(k: int, rng: random.Random, max_nu: int = 3) -> RhoState:
    pairs = list(combinations_with_replacement(range(1, k + 1), 2))
    chosen = [pr for pr in pairs if rng.random() < 0.5] or [rng.choice(pairs)]
    nus = [rng.randint(0, max_nu) for _ in chosen]
    low = min(nus)
    return RhoState(tuple((pr, nu - low) for pr, nu in zip(chosen, nus)))


# ---------------------------------------------------------------------------
# elliptic steps

GAIN2 = "gain2"
RANK_ONE = "rank_one"
EVASION = "evasion"


@dataclass(frozen=True)
class GainCheck:
    verdict: str
    ord: int
    minimizing: tuple[tuple[int, int], ...]
    tight: tuple[int, ...]
    i0: int | None = None


def elliptic_gain_check(comp: Component, orders_P: Sequence[int], orders_Q: Sequence[int],
                        state: RhoState, index: int = 0) -> GainCheck:
    """Decide how an elliptic component acts on rho.

    * ``gain2``: some minimizing pair uses two sections with
      ``ord_P + ord_Q <= d - 1``; the order rises by at least 2.
    * ``rank_one``: every minimizing pair contains the single section with
      ``ord_P + ord_Q = d``; the leading part is ``sigma_i0 * sigma`` and cannot
      map to zero.
    * ``evasion``: several sections reach ``d`` (possible only when ``[P - Q]``
      is torsion) and no pair escapes them, so neither argument applies.
    """
    if comp.kind != ELLIPTIC:
        raise ValueError("elliptic_gain_check on a rational component")
    d = comp.pic.d
    aspect = AspectData(tuple(orders_P), tuple(orders_Q))
    check_aspect(comp, aspect, d, index)
    o = ord_rho(state, orders_P)
    mins = minimizing_pairs(state, orders_P)
    tight = {m + 1 for m in aspect.tight(d)}
    if any(n not in tight and m not in tight for n, m in mins):
        return GainCheck(GAIN2, o, tuple(mins), tuple(sorted(tight)))
    if len(tight) == 1:
        (i0,) = tight
        return GainCheck(RANK_ONE, o, tuple(mins), (i0,), i0)
    return GainCheck(EVASION, o, tuple(mins), tuple(sorted(tight)))


# ---------------------------------------------------------------------------
# propagation

RANK_ONE_END = "rank_one"
CONTRADICTION = "contradiction"
SURVIVED = "survived"


@dataclass(frozen=True)
class StepRecord:
    component: int
    kind: str
    ord: int
    beta: int
    obstruction: int | None = None
    check: str | None = None

    def to_json(self) -> dict:
        return {"component": self.component, "kind": self.kind, "ord": self.ord, "beta": self.beta,
                "check": self.check,
                "obstruction": None if self.obstruction is None else {"rank_one": self.obstruction}}


@dataclass(frozen=True)
class PropagationTrace:
    steps: tuple[StepRecord, ...]
    outcome: str
    evasions: tuple[int, ...] = ()
    final_state: RhoState | None = field(default=None, compare=False)

    @property
    def ords(self) -> list[int]:
        return [s.ord for s in self.steps]

    def to_json(self) -> dict:
        return {"outcome": self.outcome, "evasions": list(self.evasions),
                "steps": [s.to_json() for s in self.steps]}


def propagate(config: Configuration, state0: RhoState, validate: bool = True) -> PropagationTrace:
    """Follow rho along the chain, checking every inequality of the order-propagation argument.

    Raises ``ChainInvariantError`` naming the component where an inequality fails.
    """
    if validate:
        config.validate()
    d = config.d
    state = state0
    beta_total = 0
    bound = 0            # lower bound on ord guaranteed by the steps so far
    steps: list[StepRecord] = []
    evasions: list[int] = []
    for i, (comp, asp) in enumerate(zip(config.chain.components, config.aspects)):
        o = ord_rho(state, asp.orders_P)
        if bound > 2 * d:
            steps.append(StepRecord(i, comp.kind, o, beta_total))
            return PropagationTrace(tuple(steps), CONTRADICTION, tuple(evasions), state)
        if o < bound:
            raise ChainInvariantError(i, f"order {o} below the propagated bound {bound}")
        check = None
        if comp.kind == ELLIPTIC:
            gc = elliptic_gain_check(comp, asp.orders_P, asp.orders_Q, state, i)
            check = gc.verdict
            if gc.verdict == RANK_ONE:
                steps.append(StepRecord(i, comp.kind, o, beta_total, gc.i0, check))
                return PropagationTrace(tuple(steps), RANK_ONE_END, tuple(evasions), state)
        steps.append(StepRecord(i, comp.kind, o, beta_total, None, check))
        if i == config.chain.M - 1:
            break
        alpha = config.transitions[i].alpha
        nxt = config.aspects[i + 1]
        beta = beta_step(state, alpha)
        if beta < 0:
            raise ChainInvariantError(i, f"negative beta {beta}")
        # o <= alpha-sum of a minimizing pair <= beta
        for n, m in minimizing_pairs(state, asp.orders_P):
            lhs = 2 * d - asp.orders_Q[n - 1] - asp.orders_Q[m - 1]
            asum = alpha[n - 1] + alpha[m - 1]
            if not (o <= lhs <= asum <= beta):
                raise ChainInvariantError(i, f"{o} <= {lhs} <= {asum} <= {beta} fails")
        state = advance_valuations(state, alpha, beta)
        o_next = ord_rho(state, nxt.orders_P)
        # beta <= alpha-sum <= next order sum for the pair attaining the next minimum
        for n, m in minimizing_pairs(state, nxt.orders_P):
            asum = alpha[n - 1] + alpha[m - 1]
            if not (beta <= asum <= nxt.orders_P[n - 1] + nxt.orders_P[m - 1]):
                raise ChainInvariantError(i, f"{beta} <= {asum} <= next order fails")
        if comp.kind == RATIONAL:
            if o_next < o:
                raise ChainInvariantError(i, f"order dropped across a rational component: {o} -> {o_next}")
            bound = max(bound, o)
        elif check == GAIN2:
            if o_next < o + 2:
                raise ChainInvariantError(i, f"no gain of 2 across an elliptic component: {o} -> {o_next}")
            bound = o + 2
        else:
            evasions.append(i)
            bound = o
        beta_total += beta
    outcome = CONTRADICTION if bound > 2 * d else SURVIVED
    return PropagationTrace(tuple(steps), outcome, tuple(evasions), state)


# ---------------------------------------------------------------------------
# endgames for d = g and d = g + 1


@dataclass(frozen=True)
class EndgameVerdict:
    no_kernel_element: bool
    orders: tuple[int, ...]
    candidate_pairs: tuple[tuple[int, int], ...]
    sections_involved: int
    detail: str = ""

    def to_json(self) -> dict:
        return {"verdict": "no kernel element" if self.no_kernel_element else "undecided",
                "orders": list(self.orders), "candidate_pairs": [list(p) for p in self.candidate_pairs],
                "sections_involved": self.sections_involved, "detail": self.detail}


def endgame_d_equals_g(c: PicClass, lower: int | None = None) -> EndgameVerdict:
    """Last elliptic component when ``d = g``.

    The sections giving the order of rho (at least ``lower = 2(g - 1)``) have
    orders among ``g - 2, g - 1, g``; an order-g section forces ``L = O(gP)``
    which has no order ``g - 1`` section, so at most two sections occur and
    the leading part is a nonzero quadratic form in two independent sections.
    """
    g = c.d
    if g < 2:
        raise ValueError("endgame_d_equals_g needs g >= 2")
    lower = 2 * (g - 1) if lower is None else lower
    available = orders_at(c, "P")
    high = tuple(o for o in available if o >= lower - g)
    if g in available:
        if not c.trivial_twist(g):
            raise AssertionError("an order-g section exists but L is not O(gP)")
        if g - 1 in available:
            raise AssertionError("O(gP) cannot have a section of order exactly g - 1")
    pairs = tuple((x, y) for x, y in combinations_with_replacement(high, 2) if x + y >= lower)
    involved = len({o for pr in pairs for o in pr})
    ok = len(high) <= 2 and involved <= 2
    detail = ("order-g section: L = O(gP)" if g in available else "orders at most g - 1")
    return EndgameVerdict(ok, high, pairs, involved, detail)


def endgame_d_equals_g_plus_1(initial_orders: Sequence[int],
                              zero_pairs: Iterable[tuple[int, int]] | None = None) -> EndgameVerdict:
    """First component when ``d = g + 1``: an order of rho of 0 or 1 at ``P_1`` is impossible.

    Pairs of sum 0 or 1 only involve the sections of order 0 and 1, so such a
    leading part is a quadratic form in at most two sections.  With
    ``zero_pairs`` given, judge that specific support instead.
    """
    orders = tuple(initial_orders)
    k = len(orders)
    if k < 2 or len(set(orders)) != k:
        raise ValueError("need at least two distinct orders")
    idx = range(1, k + 1)
    all_pairs = list(combinations_with_replacement(idx, 2))
    if zero_pairs is None:
        excluded = []
        involved = 0
        for s in (0, 1):
            prs = [(n, m) for n, m in all_pairs if orders[n - 1] + orders[m - 1] == s]
            secs = {x for pr in prs for x in pr}
            if len(secs) > 2:
                return EndgameVerdict(False, orders, tuple(prs), len(secs), f"sum {s} uses >2 sections")
            excluded.extend(prs)
            involved = max(involved, len(secs))
        return EndgameVerdict(True, orders, tuple(excluded), involved,
                              "order of rho at P_1 is at least 2")
    zp = [_pair(n, m) for n, m in zero_pairs]
    s = min(orders[n - 1] + orders[m - 1] for n, m in zp)
    mins = tuple(pr for pr in zp if orders[pr[0] - 1] + orders[pr[1] - 1] == s)
    secs = {x for pr in mins for x in pr}
    if s <= 1:
        if len(secs) > 2:
            raise AssertionError("a sum <= 1 pair set involving more than two sections")
        return EndgameVerdict(True, orders, mins, len(secs), f"minimum {s} excluded: rank <= 2 form")
    return EndgameVerdict(False, orders, mins, len(secs), f"minimum {s} >= 2 accepted; propagation proceeds")


# ---------------------------------------------------------------------------
# configuration generators


@lru_cache(maxsize=None)
def _room(A: tuple[int, ...], d: int, elliptic_left: int) -> bool:
    """Can ``elliptic_left`` elliptic components still be crossed from sorted orders ``A``?

    Uses refined steps only: one section (whose order minus one is not
    another order) may stay put, every other section moves up by one.
    """
    if elliptic_left == 0:
        return True
    present = set(A)
    options = [None] + [a for a in A if a - 1 not in present]
    for stay in options:
        nxt = tuple(sorted(a if a == stay else a + 1 for a in A))
        if nxt[-1] <= d and _room(nxt, d, elliptic_left - 1):
            return True
    return False


def _fits(A: Sequence[int], d: int, k: int, elliptic_left: int) -> bool:
    return max(A) <= d and _room(tuple(sorted(A)), d, elliptic_left)


def _choose_class(A: Sequence[int], d: int, rng: random.Random, torsion: bool) -> PicClass:
    roll = rng.random()
    if roll < 0.25:
        return PicClass(d, generic=True)
    if torsion and roll < 0.6:
        t = rng.randint(1, d)
        anchor = rng.choice(A)
        return PicClass(d, e=anchor, torsion=t)
    return PicClass(d, e=rng.choice(A) if rng.random() < 0.85 else rng.randint(0, d))


def _sample_component(comp: Component, A: Sequence[int], d: int, k: int, elliptic_left: int,
                      last: bool, rng: random.Random, torsion: bool, index: int,
                      slack: float = 0.15):
    for _ in range(RETRY_CAP):
        pic = comp.pic
        if comp.kind == ELLIPTIC and pic is None:
            pic = _choose_class(A, d, rng, torsion)
        cur = Component(comp.kind, pic)
        B = []
        for m in range(k):
            if comp.kind == ELLIPTIC:
                can_tight = pic.trivial_twist(A[m]) and rng.random() < 0.9
                b = d - A[m] if can_tight else d - 1 - A[m]
            else:
                b = d - A[m]
            if rng.random() < slack:
                b -= 1
            B.append(b)
        if any(b < 0 for b in B) or len(set(B)) != k:
            continue
        aspect = AspectData(tuple(A), tuple(B))
        try:
            check_aspect(cur, aspect, d, index)
        except ChainInvariantError:
            continue
        if last:
            return cur, aspect, None
        alpha = [d - b + (1 if rng.random() < slack / 2 else 0) for b in B]
        nxt = [al + (1 if rng.random() < slack / 2 else 0) for al in alpha]
        if len(set(nxt)) != k or not _fits(nxt, d, k, elliptic_left):
            continue
        return cur, aspect, (tuple(alpha), tuple(nxt))
    raise InfeasibleComponent(index)


def generate_configuration(chain: ChainCurve, d: int, k: int, rng: random.Random,
                           torsion: bool = False, slack: float = 0.15) -> Configuration:
    """Random admissible orders on ``chain`` by rejection sampling component by component.

    Elliptic components without a class get one drawn from three kinds:
    generic, ``O(aP + (d - a)Q)``, and (with ``torsion``) a class where
    ``[P - Q]`` has finite order.
    """
    if k < 1 or k > d:
        raise ValueError("need 1 <= k <= d")
    comps = chain.components
    ell_after = [sum(c.kind == ELLIPTIC for c in comps[i:]) for i in range(len(comps) + 1)]
    if not _fits(list(range(k)), d, k, ell_after[0]):
        # 0..k-1 has the most room, so nothing else fits either
        raise InfeasibleComponent(0, "no room for the elliptic components (Brill-Noether number too small)")
    A = None
    for _ in range(RETRY_CAP):
        if rng.random() < 0.6:
            cand = list(range(k))
        else:
            cand = sorted(rng.sample(range(d + 1), k))
        if _fits(cand, d, k, ell_after[0]):
            A = cand
            break
    if A is None:
        raise InfeasibleComponent(0, "no admissible initial vanishing sequence")
    if rng.random() < 0.3:
        rng.shuffle(A)
    new_comps, aspects, transitions = [], [], []
    for i, comp in enumerate(comps):
        last = i == len(comps) - 1
        cur, aspect, step = _sample_component(comp, A, d, k, ell_after[i + 1], last, rng,
                                              torsion, i, slack)
        new_comps.append(cur)
        aspects.append(aspect)
        if step is not None:
            alpha, A = step
            transitions.append(TransitionData(alpha))
    cfg = Configuration(ChainCurve(tuple(new_comps)), d, k, tuple(aspects), tuple(transitions))
    cfg.validate()
    return cfg


def random_chain(g: int, rng: random.Random, max_run: int = 2) -> ChainCurve:
    return ChainCurve.from_runs([rng.randint(0, max_run) for _ in range(g + 1)])


def random_admissible(g: int, d: int, k: int, rng: random.Random, torsion: bool = False,
                      attempts: int = 50) -> Configuration:
    """Random chain of genus g carrying a random admissible configuration."""
    last = None
    for _ in range(attempts):
        try:
            return generate_configuration(random_chain(g, rng), d, k, rng, torsion)
        except InfeasibleComponent as exc:
            last = exc
    raise last


@dataclass
class CampaignResult:
    g: int
    d: int
    k: int
    trials: int
    counts: dict = field(default_factory=dict)
    endgames: dict = field(default_factory=dict)
    traces: list = field(default_factory=list)

    @property
    def surviving(self) -> int:
        return self.counts.get(SURVIVED, 0)

    def to_json(self, with_traces: bool = False) -> dict:
        out = {"g": self.g, "d": self.d, "k": self.k, "trials": self.trials,
               "brill_noether": brill_noether_number(self.g, self.d, self.k),
               "counts": dict(sorted(self.counts.items())),
               "surviving_kernel_candidates": self.surviving}
        if self.endgames:
            out["endgames"] = dict(sorted(self.endgames.items()))
        if with_traces:
            out["traces"] = self.traces
        return out


def run_campaign(g: int, d: int, k: int, trials: int, seed, torsion: bool = False,
                 keep_traces: bool = False) -> CampaignResult:
    """Propagate random candidates on random admissible chains.

    Counts outcomes (``rank_one``, ``contradiction``, ``survived``), trials
    with a torsion evasion, and infeasible draws.  For ``d = g`` the last
    elliptic class goes through ``endgame_d_equals_g``; for ``d = g + 1`` the
    initial orders go through ``endgame_d_equals_g_plus_1``.
    """
    res = CampaignResult(g, d, k, trials)
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        try:
            cfg = random_admissible(g, d, k, rng, torsion)
        except InfeasibleComponent:
            res.counts["infeasible"] = res.counts.get("infeasible", 0) + 1
            continue
        rho = random_rho(k, rng)
        trace = propagate(cfg, rho)
        res.counts[trace.outcome] = res.counts.get(trace.outcome, 0) + 1
        if trace.evasions:
            res.counts["torsion_evasion"] = res.counts.get("torsion_evasion", 0) + 1
        if d == g and g >= 2:
            last_pic = [c.pic for c in cfg.chain.components if c.kind == ELLIPTIC][-1]
            v = endgame_d_equals_g(last_pic)
            key = "no kernel element" if v.no_kernel_element else "undecided"
            res.endgames[key] = res.endgames.get(key, 0) + 1
        elif d == g + 1 and k >= 2:
            v = endgame_d_equals_g_plus_1(sorted(cfg.aspects[0].orders_P))
            key = "initial bound 2" if v.no_kernel_element else "undecided"
            res.endgames[key] = res.endgames.get(key, 0) + 1
        if keep_traces:
            res.traces.append({"trial": trial, "config": cfg.to_json(), "rho": rho.to_json(),
                               "trace": trace.to_json()})
    return res
