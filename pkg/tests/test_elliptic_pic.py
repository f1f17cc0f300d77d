import itertools

import pytest

from symprod.elliptic_pic import (PicClass, h0_minus, max_order_sum, orders_at, rational_h0_minus,
                                  rational_max_sum, tight_pairs)

TORSIONS = [None] + list(range(1, 11))


def all_classes(d_max=10):
    for d in range(1, d_max + 1):
        for t in TORSIONS:
            for e in range(d + 1):
                for generic in (False, True):
                    yield PicClass(d, e, generic, t)


def trivial_a(c):
    """Oracle: the a in [0, d] with O(aP + (d-a)Q) = L, straight from the model."""
    if c.generic:
        return []
    if c.torsion is None:
        return [a for a in range(c.d + 1) if a == c.e]
    return [a for a in range(c.d + 1) if (a - c.e) % c.torsion == 0]


def test_h0_minus_examples():
    assert h0_minus(PicClass(3, 2), 2, 1) == 1
    for a in range(4):
        assert h0_minus(PicClass(3, generic=True), a, 3 - a) == 0
    assert h0_minus(PicClass(3, 1, torsion=2), 3, 0) == 1


def test_max_order_sum_examples():
    for d in range(1, 8):
        assert max_order_sum(PicClass(d, generic=True)) == (d - 1, False)
    assert max_order_sum(PicClass(3, 2)) == (3, True)
    c = PicClass(4, 1, torsion=2)
    assert max_order_sum(c) == (4, False)
    assert (1, 3) in tight_pairs(c) and (3, 1) in tight_pairs(c)


def test_orders_at_examples():
    assert orders_at(PicClass(3, generic=True), "P") == [0, 1, 2]
    assert orders_at(PicClass(3, 3), "P") == [0, 1, 3]
    assert orders_at(PicClass(3, 3), "Q") == [0, 1, 2]
    with pytest.raises(ValueError):
        orders_at(PicClass(3), "R")


def test_rational():
    assert rational_max_sum(0) == 0
    assert rational_max_sum(3) == 3
    # monomials s^a t^(d-a): d+1 sections, each realizing a + b = d
    assert sum(rational_h0_minus(3, a, 3 - a) for a in range(4)) == 4


def test_order_sums_exhaustive():
    checked = 0
    for c in all_classes():
        best, unique = max_order_sum(c)
        hits = trivial_a(c)
        assert best <= c.d
        assert (best == c.d) == bool(hits)
        if not hits:
            assert best == c.d - 1
        assert unique == (len(hits) == 1)
        assert [a for a, _ in tight_pairs(c)] == hits
        checked += 1
    assert checked == sum((d + 1) * 2 * len(TORSIONS) for d in range(1, 11))


def test_two_section_configurations_exactly_when_torsion_at_most_d():
    for d in range(1, 11):
        for t in range(1, 11):
            multi = any(len(tight_pairs(PicClass(d, e, False, t))) >= 2 for e in range(d + 1))
            assert multi == (t <= d), (d, t)
        assert not any(len(tight_pairs(PicClass(d, e))) >= 2 for e in range(d + 1))


def test_unique_flag_not_simply_t_greater_than_d():
    # with t <= d uniqueness still holds when only one a in [0, d] lands in e's class
    c = PicClass(4, 2, torsion=3)
    assert tight_pairs(c) == [(2, 2)]
    assert max_order_sum(c) == (4, True)


def test_h0_minus_monotone_steps():
    for c in all_classes(8):
        for a, b in itertools.product(range(c.d + 2), repeat=2):
            here = h0_minus(c, a, b)
            for da, db in ((1, 0), (0, 1)):
                nxt = h0_minus(c, a + da, b + db)
                assert 0 <= here - nxt <= 1


def test_orders_sets():
    for c in all_classes(8):
        oP, oQ = orders_at(c, "P"), orders_at(c, "Q")
        assert len(oP) == len(oQ) == c.d
        assert oP == sorted(set(oP)) and all(0 <= a <= c.d for a in oP)
        best, _ = max_order_sum(c)
        if c.torsion == 1:
            # [P - Q] = 0 means P = Q: one section, counted at both points
            continue
        assert any(a + b == best for a in oP for b in oQ)


def test_json_roundtrip():
    for c in (PicClass(3, 1), PicClass(5, 7, torsion=4), PicClass(2, generic=True)):
        assert PicClass.from_json(c.to_json()) == c
    assert PicClass(5, 7, torsion=4).e == 3
    assert PicClass(3).to_json()["torsion"] == "inf"
