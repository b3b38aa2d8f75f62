import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from niho13 import cyclotomy
from niho13.cycint import CycInt
from niho13.parallel import sweep
from niho13.sequences import (
    Distribution,
    FieldTooLargeForOracle,
    GcdNotOne,
    correlation_counts,
    cross_corr_direct,
    cross_corr_distribution,
    cross_corr_value,
    cubic_split_W,
    decimated_sequence,
    distribution_from_counts,
    exp_sum_W,
    first_moment,
    m_sequence,
    partition_counts,
    shifted_differences,
    w_distribution_over_plane,
)

from conftest import SMALL_ADMISSIBLE, field, setup


@pytest.mark.parametrize("pni", [(7, 2, 0), (7, 2, 1), (13, 1, 0), (7, 3, 1)])
def test_sequence_and_sum_paths_agree(pni):
    ps, ctx = setup(*pni)
    counts = correlation_counts(ctx, ps.d)
    for tau in range(ps.q - 1):
        direct = cross_corr_direct(ctx, ps.d, tau)
        assert direct == cross_corr_value(ctx, ps.d, tau)
        assert direct == CycInt.from_counts(counts[tau])


@pytest.mark.parametrize("p, n", [(7, 2), (7, 3), (13, 2)])
def test_m_sequence_obeys_its_recurrence(p, n):
    ctx = field(p, n)
    s = m_sequence(ctx)
    # find psi^n = sum a_k psi^k by search, then s_{t+n} = sum a_k s_{t+k}
    for a in itertools.product(range(p), repeat=n):
        acc = 0
        for k, ak in enumerate(a):
            acc = ctx.add(acc, ctx.scale(ak, ctx.exp(k)))
        if acc == ctx.exp(n):
            break
    ext = np.concatenate([s, s[:n]])
    pred = sum(ak * ext[k : k + len(s)] for k, ak in enumerate(a)) % p
    assert np.array_equal(pred, np.roll(s, -n))
    counts = np.bincount(s, minlength=p)
    assert counts[0] == p ** (n - 1) - 1 and np.all(counts[1:] == p ** (n - 1))


def test_decimation_is_a_permutation_of_the_sequence():
    ps, ctx = setup(13, 3, 0)
    s, s2 = m_sequence(ctx), decimated_sequence(ctx, ps.d)
    assert np.array_equal(np.bincount(s), np.bincount(s2))
    assert s2[1] == s[ps.d % (ps.q - 1)]


@pytest.mark.parametrize("pni", SMALL_ADMISSIBLE)
def test_first_moment_and_mass(pni):
    ps, ctx = setup(*pni)
    dist = cross_corr_distribution(ctx, ps.d)
    assert first_moment(ctx, ps.d) == 1
    assert dist.total_mass == ps.q - 1
    assert len(dist) <= 13


@pytest.mark.parametrize("pni", SMALL_ADMISSIBLE)
def test_trivial_sums(pni):
    ps, ctx = setup(*pni)
    assert exp_sum_W(ctx, 0, 0, ps.d) == ps.q
    for x in (1, 2, ps.q - 1):
        assert exp_sum_W(ctx, 0, x, ps.d) == 0
        assert exp_sum_W(ctx, x, 0, ps.d) == 0


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SMALL_ADMISSIBLE), st.integers(0, 10**6), st.integers(0, 10**6))
def test_cubic_decomposition(pni, u, v):
    ps, ctx = setup(*pni)
    u, v = u % ps.q, v % ps.q
    assert cubic_split_W(ctx, ps, u, v) == 3 * exp_sum_W(ctx, u, v, ps.d)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_ADMISSIBLE), st.integers(0, 10**6), st.integers(1, 10**6))
def test_slice_reduction(pni, u, v):
    ps, ctx = setup(*pni)
    u, v = u % ps.q, v % (ps.q - 1) + 1
    w = ctx.pow(v, -ps.d_inverse)  # v^{-1/d}
    assert exp_sum_W(ctx, u, v, ps.d) == exp_sum_W(ctx, ctx.mul(u, w), 1, ps.d)


@pytest.mark.parametrize("pni", [(7, 2, 0), (7, 2, 1), (13, 1, 0), (7, 3, 0), (13, 3, 0)])
def test_slice_values_lie_in_the_period_sets(pni):
    ps, ctx = setup(*pni)
    generic, special = cyclotomy.w_value_sets(cyclotomy.gaussian_periods(ctx), ps.case, ps.q)
    for v in (1, ctx.psi, ps.q - 1):
        seen = {}
        for u in range(ps.q):
            val = 3 * exp_sum_W(ctx, u, v, ps.d)
            assert val in generic or val in special
            if val in special:
                seen[val] = seen.get(val, 0) + 1
        assert seen == {s: 1 for s in special}


@pytest.mark.parametrize("pni", [(7, 2, 0), (7, 2, 1), (13, 1, 0)])
def test_plane_distribution_by_enumeration(pni):
    ps, ctx = setup(*pni)
    brute = Distribution(ctx.p)
    for u in range(ps.q):
        for v in range(ps.q):
            brute.add(exp_sum_W(ctx, u, v, ps.d))
    plane = w_distribution_over_plane(ctx, ps.d)
    assert plane.entries == brute.entries
    assert plane.total_mass == ps.q**2


def test_gcd_guard():
    ps, ctx = setup(7, 2, 0)
    with pytest.raises(GcdNotOne):
        w_distribution_over_plane(ctx, 3)


def test_integer_distribution_round_trip():
    ps, ctx = setup(13, 3, 0)
    dist = cross_corr_distribution(ctx, ps.d)
    ints = dist.as_integers()
    assert ints is not None and sum(ints.values()) == ps.q - 1
    assert dist.shift(1)[0] == dist[-1]
    assert dist.merge(dist).total_mass == 2 * (ps.q - 1)


@pytest.mark.parametrize("pni", SMALL_ADMISSIBLE)
def test_partition_cells(pni):
    ps, ctx = setup(*pni)
    cells = partition_counts(ctx, ps)
    # every (u, v) with all three shifted differences nonzero lands in one cell
    u = ctx.elements()
    n_ok = 0
    for v in range(ps.q):
        a, b, c = shifted_differences(ctx, ps, u, v)
        n_ok += int(np.count_nonzero((a != 0) & (b != 0) & (c != 0)))
    assert sum(cells.values()) == n_ok == (ps.q - 1) * (ps.q - 2)
    counts = cyclotomy.count_cij_brute(ctx)
    assert cells == cyclotomy.predicted_partition_cells(counts, ps.g, ps.q)


def test_partition_oracle_ceiling():
    ps, ctx = setup(13, 3, 0)
    with pytest.raises(FieldTooLargeForOracle):
        partition_counts(ctx, ps, max_q=1000)


def test_worker_count_does_not_change_results():
    ps, ctx = setup(13, 3, 0)
    one = correlation_counts(ctx, ps.d, workers=1)
    three = correlation_counts(ctx, ps.d, workers=3)
    assert np.array_equal(one, three)
    assert distribution_from_counts(ctx.p, one).entries == distribution_from_counts(ctx.p, three).entries


def test_sweep_order():
    out = sweep(lambda a, b: np.arange(a, b) ** 2, 1000, workers=2, block=37)
    assert np.array_equal(out, np.arange(1000) ** 2)
