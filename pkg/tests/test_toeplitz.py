from fractions import Fraction

import pytest

from toeplitz_odometer.odometer import DepthExhausted, PeriodStructure
from toeplitz_odometer.toeplitz import (
    aperiodicity_witness,
    density,
    essential_period_check,
    eta,
    is_essential,
    min_defined_level,
    skeleton,
    window,
)

from oracles import fill_sequence

Q3 = PeriodStructure((6, 12, 24))
GEO = PeriodStructure.geometric(depth=8)


def test_min_defined_level_examples():
    assert min_defined_level(Q3, 3) == (1, 0)
    assert min_defined_level(Q3, 0) == (0, 0)
    assert min_defined_level(Q3, 45) == (1, 7)


def test_eta_examples():
    assert [eta(Q3, n) for n in (0, 1, 2, 4, 5)] == [0, 1, 2, 3, 4]
    assert [eta(Q3, n) for n in (3, 9, 15)] == [0, 1, 2]
    assert eta(Q3, -7) == 4


def test_depth_exhausted():
    # 3 + 3*6 + 3*72 has no defined digit in three levels
    with pytest.raises(DepthExhausted):
        eta(Q3, 3 + 3 * 6 + 3 * 72)


def test_window():
    assert window(Q3, 0, 5) == (0, 1, 2, 0, 3, 4)
    assert window(Q3, 9, 9) == (eta(Q3, 9),)
    shifted = window(Q3, 6, 11)
    base = window(Q3, 0, 5)
    assert all(shifted[i] == base[i] for i in range(6) if i != 3)
    with pytest.raises(ValueError):
        window(Q3, 2, 1)


def test_eta_matches_step_filling():
    lo, hi = -Q3.p[2], 3 * Q3.p[2]
    filled = fill_sequence(Q3.q, lo, hi)
    for n in range(lo, hi + 1):
        assert filled[n] == eta(Q3, n), n


def test_eta_matches_step_filling_deeper():
    ps = GEO.with_depth(4)
    lo, hi = -ps.p[3], 3 * ps.p[3]
    filled = fill_sequence(ps.q, lo, hi)
    assert all(filled[n] == eta(ps, n) for n in range(lo, hi + 1))


def test_skeleton_examples():
    s1 = skeleton(Q3, 1)
    assert s1.cells == (0, 1, 2, None, 3, 4)
    assert s1.undefined_residues == (3,)
    s0 = skeleton(Q3, 0)
    assert s0.cells == (None,)
    s2 = skeleton(Q3, 2)
    assert s2.defined_count == 65 and s2.period == 72


def test_skeleton_matches_filling_and_extends():
    for level in (1, 2, 3):
        tab = skeleton(Q3, level)
        filled = fill_sequence(Q3.q[:level], 0, tab.period - 1)
        assert tab.cells == tuple(filled.get(r) for r in range(tab.period))
        assert tab.extends(skeleton(Q3, level - 1))


def test_density_values():
    d1 = density(Q3, 1)
    assert d1.density == Fraction(5, 6)
    assert d1.recursion_value == d1.density
    assert d1.alt_recursion_value == Fraction(4, 6)
    assert d1.constant_discrepancy
    d2 = density(Q3, 2)
    assert d2.density == Fraction(65, 72) == d2.recursion_value
    assert d2.classification == "undecidable-from-prefix"


def test_classification():
    assert density(PeriodStructure.arithmetic(depth=3), 1).classification == "regular"
    assert density(GEO, 1).classification == "irregular"


def test_density_monotone():
    ds = [density(GEO, i).density for i in range(5)]
    assert ds == sorted(ds)


@pytest.mark.parametrize("level", [1, 2])
def test_essential(level):
    assert essential_period_check(Q3, level)


def test_essential_synthetic():
    assert not is_essential((1, 1, 1, 1, 1, 1))
    assert not is_essential((0, None, 0, None))
    assert is_essential((0, 1, None))
    with pytest.raises(DepthExhausted):
        essential_period_check(Q3, 3)


def test_aperiodicity_witness():
    for level in range(GEO.with_depth(4).depth):
        n, m = aperiodicity_witness(GEO.with_depth(4), level)
        ps = GEO
        assert (n - m) % ps.p[level] == 0 and (n - m) % ps.p[level + 1] != 0
        assert eta(ps, n) != eta(ps, m)
