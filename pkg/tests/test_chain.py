import itertools
import random

import pytest

from symprod.chain import (CONTRADICTION, ELLIPTIC, EVASION, GAIN2, RANK_ONE, RATIONAL, SURVIVED,
                           AspectData, ChainCurve, ChainInvariantError, Component, Configuration,
                           InfeasibleComponent, RhoState, TransitionData, advance_valuations, beta_step,
                           brill_noether_number, check_aspect, elliptic_gain_check,
                           endgame_d_equals_g, endgame_d_equals_g_plus_1, generate_configuration,
                           minimizing_pairs, ord_rho, propagate, random_admissible, random_rho,
                           run_campaign)
from symprod.elliptic_pic import PicClass


def test_brill_noether():
    assert brill_noether_number(4, 3, 2) == 0
    assert brill_noether_number(2, 2, 2) == 0
    for g in range(1, 10):
        assert brill_noether_number(g, g + 1, 2) == g


def test_chain_shape():
    ch = ChainCurve.from_runs([1, 0, 2])
    assert ch.g == 2 and ch.M == 5 and ch.rational_runs == [1, 0, 2]
    assert ch.M == sum(ch.rational_runs) + ch.g
    with pytest.raises(ValueError):
        ChainCurve.from_runs([3])
    ch2, d, k = ChainCurve.from_json(ch.with_classes({1: PicClass(3, 1)}).to_json(3, 2))
    assert (d, k) == (3, 2) and ch2.components[1].pic == PicClass(3, 1)


# --- rho bookkeeping ----------------------------------------------------------------

def test_ord_rho_examples():
    assert ord_rho(RhoState.of({(1, 1): 0}), (0, 4)) == 0
    st = RhoState.of({(1, 3): 0, (2, 2): 0})
    assert ord_rho(st, (0, 1, 3)) == 2
    assert minimizing_pairs(st, (0, 1, 3)) == [(2, 2)]
    with pytest.raises(ValueError):
        RhoState.of({(1, 2): 1, (2, 2): 2})


def test_beta_and_advance_examples():
    st = RhoState.of({(1, 2): 0, (2, 2): 1})
    assert beta_step(st, (3, 5)) == 9
    nxt = advance_valuations(st, (3, 5), 9)
    assert nxt.as_dict() == {(1, 2): 1, (2, 2): 0}
    zero = RhoState.of({(1, 1): 0, (1, 2): 0, (2, 2): 0})
    assert beta_step(zero, (2, 7)) == 14
    assert advance_valuations(zero, (4, 4), beta_step(zero, (4, 4))).as_dict() == zero.as_dict()
    single = RhoState.of({(2, 2): 0})
    assert beta_step(single, (1, 6)) == 12
    assert advance_valuations(single, (1, 6), 12).as_dict() == {(2, 2): 0}


def test_advance_exhaustive_small_grids():
    for k in (1, 2, 3):
        pairs = list(itertools.combinations_with_replacement(range(1, k + 1), 2))
        supports = [s for r in range(1, len(pairs) + 1) for s in itertools.combinations(pairs, r)] \
            if k < 3 else [tuple(pairs)]
        for support in supports:
            for nus in itertools.product(range(4), repeat=len(support)):
                if min(nus):
                    continue
                st = RhoState(tuple(zip(support, nus)))
                for alpha in itertools.product(range(7), repeat=k):
                    beta = beta_step(st, alpha)
                    nu2 = advance_valuations(st, alpha, beta).as_dict()
                    assert min(nu2.values()) == 0 and all(v >= 0 for v in nu2.values())
                    assert set(nu2) == set(support)


# --- aspects and the gain check ------------------------------------------------------

def test_check_aspect_rejects():
    gen = Component(ELLIPTIC, PicClass(3, generic=True))
    with pytest.raises(ChainInvariantError):
        check_aspect(gen, AspectData((0, 1), (3, 1)), 3)       # sum 3 on a generic class
    with pytest.raises(ChainInvariantError):
        check_aspect(gen, AspectData((0, 0), (2, 1)), 3)       # repeated order
    with pytest.raises(ChainInvariantError):
        check_aspect(Component(RATIONAL), AspectData((0, 4), (3, 0)), 3)
    one = Component(ELLIPTIC, PicClass(3, 1))
    with pytest.raises(ChainInvariantError):
        check_aspect(one, AspectData((1, 2), (2, 1)), 3)       # two tight sections, unique class
    check_aspect(one, AspectData((1, 0), (2, 1)), 3)


def test_gain_check_verdicts():
    st = RhoState.of({(1, 2): 0, (2, 2): 1})
    gen = Component(ELLIPTIC, PicClass(3, generic=True))
    assert elliptic_gain_check(gen, (0, 1), (2, 1), st).verdict == GAIN2
    # sigma_1 is the unique section of order sum d and every minimizing pair contains it
    st2 = RhoState.of({(1, 1): 0, (1, 2): 0})
    tight = Component(ELLIPTIC, PicClass(3, 0))
    gc = elliptic_gain_check(tight, (0, 1), (3, 1), st2)
    assert gc.verdict == RANK_ONE and gc.i0 == 1
    # [P - Q] of order 2: two sections of order sum 4
    tors = Component(ELLIPTIC, PicClass(4, 1, torsion=2))
    st3 = RhoState.of({(1, 2): 0})
    gc = elliptic_gain_check(tors, (1, 3), (3, 1), st3)
    assert gc.verdict == EVASION and gc.tight == (1, 2)


# --- propagation -------------------------------------------------------------------

def config_with_classes(runs, pics, d, k, seed):
    rng = random.Random(seed)
    for _ in range(50):
        try:
            return generate_configuration(ChainCurve.from_runs(runs, pics), d, k, rng)
        except InfeasibleComponent:
            continue
    raise RuntimeError("no configuration")


def test_rational_runs_do_not_lower_order():
    rng = random.Random(0)
    for trial in range(40):
        cfg = config_with_classes([3, 4], [PicClass(5, generic=True)], 5, 3, trial)
        tr = propagate(cfg, random_rho(3, rng))
        ords = tr.ords
        for i, step in enumerate(tr.steps[:-1]):
            if step.kind == RATIONAL:
                assert ords[i + 1] >= ords[i]


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_generic_chain_gains_two_per_elliptic(g):
    d, k = g + 3, 2
    rng = random.Random(g)
    for trial in range(25):
        cfg = config_with_classes([0] * g + [1], [PicClass(d, generic=True)] * g, d, k, trial)
        tr = propagate(cfg, random_rho(k, rng))
        assert tr.outcome in (SURVIVED, CONTRADICTION)
        assert tr.steps[-1].kind == RATIONAL and tr.steps[-1].ord >= 2 * g


def test_order_bound_after_each_gain():
    rng = random.Random(5)
    for _ in range(200):
        g, d, k = rng.randint(2, 6), rng.randint(2, 8), rng.randint(2, 4)
        if k > d:
            continue
        try:
            cfg = random_admissible(g, d, k, rng, torsion=rng.random() < 0.3)
        except InfeasibleComponent:
            continue
        tr = propagate(cfg, random_rho(k, rng))
        gains = 0
        for step in tr.steps:
            assert step.ord >= 2 * gains
            if step.check == GAIN2:
                gains += 1


def test_transition_chain_violation_detected():
    cfg = config_with_classes([1, 1], [PicClass(3, generic=True)], 3, 2, 0)
    bad_alpha = tuple(a - 1 for a in cfg.transitions[0].alpha)
    broken = Configuration(cfg.chain, cfg.d, cfg.k, cfg.aspects,
                           (TransitionData(bad_alpha),) + cfg.transitions[1:])
    with pytest.raises(ChainInvariantError) as exc:
        broken.validate()
    assert exc.value.component == 0


def test_no_survivors_below_g_minus_one():
    for g, d, k in [(3, 2, 2), (4, 3, 2), (5, 4, 2), (5, 4, 3), (6, 5, 3)]:
        res = run_campaign(g, d, k, 60, seed=f"{g}{d}{k}")
        assert res.surviving == 0
        assert res.counts.get(SURVIVED, 0) == 0


def test_torsion_evasion_found():
    res = run_campaign(4, 3, 2, 200, seed=1, torsion=True)
    assert res.counts.get("torsion_evasion", 0) >= 1


def test_campaign_deterministic():
    a = run_campaign(5, 4, 2, 50, 3, torsion=True, keep_traces=True).to_json(with_traces=True)
    b = run_campaign(5, 4, 2, 50, 3, torsion=True, keep_traces=True).to_json(with_traces=True)
    assert a == b


def test_negative_brill_noether_is_infeasible():
    res = run_campaign(3, 2, 2, 5, 0)
    assert brill_noether_number(3, 2, 2) < 0
    assert res.counts == {"infeasible": 5}


# --- endgames -------------------------------------------------------------------------

def test_endgame_d_equals_g_cases():
    for g in range(2, 9):
        v = endgame_d_equals_g(PicClass(g, g))           # O(gP)
        assert g in v.orders and g - 1 not in v.orders
        v = endgame_d_equals_g(PicClass(g, generic=True))
        assert max(v.orders) == g - 1
        assert v.candidate_pairs == ((g - 1, g - 1),)


def test_endgame_d_equals_g_grid():
    for g in range(2, 9):
        for t in [None] + list(range(1, g + 2)):
            for e in range(g + 1):
                for generic in (False, True):
                    v = endgame_d_equals_g(PicClass(g, e, generic, t))
                    assert v.no_kernel_element
                    assert v.sections_involved <= 2


def test_endgame_d_equals_g_plus_1_examples():
    v = endgame_d_equals_g_plus_1((0, 1, 3), [(1, 1), (2, 3)])
    assert v.no_kernel_element and v.candidate_pairs == ((1, 1),)
    v = endgame_d_equals_g_plus_1((0, 1, 3), [(1, 2), (3, 3)])
    assert v.no_kernel_element and v.candidate_pairs == ((1, 2),)
    v = endgame_d_equals_g_plus_1((0, 1, 2), [(1, 3), (2, 2)])
    assert not v.no_kernel_element and set(v.candidate_pairs) == {(1, 3), (2, 2)}
    with pytest.raises(ValueError):
        endgame_d_equals_g_plus_1((1, 1))
