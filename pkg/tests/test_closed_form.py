import math

import pytest
from hypothesis import given, strategies as st

from niho13.closed_form import (
    NoPartitionFound,
    coefficients,
    eval_E,
    eval_O,
    other_branch,
    primitive_cube_roots,
    solve_quad_partition,
    solve_quad_partition_for,
    correlation_frequencies,
    correlation_table,
    weight_table,
    v2,
)
from niho13.cyclotomy import closed_cij
from niho13.parameters import CaseTag, admissible_triples, is_prime, validate_params
from niho13.report import default_tol

from conftest import field, setup


def power_sqrt_minus3(u, v, n):
    """(A, B) with (u + v sqrt(-3))^n = A + B sqrt(-3)."""
    a, b = 1, 0
    for _ in range(n):
        a, b = a * u - 3 * b * v, a * v + b * u
    return a, b


def primes_1_mod_3(limit):
    return [p for p in range(7, limit, 6) if is_prime(p)]


@given(st.integers(0, 2**40).map(lambda m: m or 1))
def test_v2(m):
    assert m % 2 ** v2(m) == 0 and (m // 2 ** v2(m)) % 2 == 1


def test_example_constants():
    assert (solve_quad_partition(field(7, 5)).u, solve_quad_partition(field(7, 5)).v) == (1, -3)
    assert (eval_E(1, -3, 5), eval_O(1, -3, 5)) == (3376, -4176)
    assert (eval_E(-5, -3, 3), eval_O(-5, -3, 3)) == (280, -432)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 12))
def test_binomial_sums_are_real_and_imaginary_parts(u, v, n):
    a, b = power_sqrt_minus3(u, v, n)
    assert eval_E(u, v, n) == a
    assert eval_O(u, v, n) == 3 * b


@pytest.mark.parametrize("p", primes_1_mod_3(400))
def test_partition_normalisation(p):
    for w in primitive_cube_roots(p):
        quad = solve_quad_partition_for(p, w)
        assert quad.u**2 + 3 * quad.v**2 == 4 * p
        assert quad.u % 3 == 1 and quad.v % 3 == 0
        assert (3 * quad.v - quad.u * (2 * w + 1)) % p == 0
        assert math.isclose(2 * math.sqrt(p) * math.cos(quad.theta), quad.u, abs_tol=1e-9)
        assert math.copysign(1, quad.theta) == math.copysign(1, quad.v)
        # the other cube root flips v and theta
        o = other_branch(quad)
        assert (o.u, o.v) == (quad.u, -quad.v) and math.isclose(o.theta, -quad.theta)


def test_partition_rejects_non_roots():
    with pytest.raises(ValueError):
        solve_quad_partition_for(13, 2)
    with pytest.raises(ValueError):
        primitive_cube_roots(11)


def test_no_partition_error_type():
    assert issubclass(NoPartitionFound, ArithmeticError)


@pytest.mark.parametrize("pni", [(7, 2, 0), (7, 2, 1), (13, 1, 0), (13, 3, 0), (7, 3, 1), (19, 1, 0)])
def test_branch_invariance(pni):
    ps, ctx = setup(*pni)
    quad = solve_quad_partition(ctx)
    tol = default_tol(ps.p, ps.n)
    a = correlation_table(ps, quad).merged(tol)
    b = correlation_table(ps, other_branch(quad)).merged(tol)
    assert [f for _, f, _ in a] == [f for _, f, _ in b]
    assert all(abs(x - y) < tol for (x, _, _), (y, _, _) in zip(a, b))


def test_example_frequencies():
    ps, ctx = setup(13, 3, 0)
    freq = correlation_frequencies(ps, solve_quad_partition(ctx))
    assert freq == {"minus_one": 501, "cos": 84, "sin+": freq["sin+"], "sin-": freq["sin-"], "peak": 1}
    assert sorted((freq["sin+"], freq["sin-"])) == [234, 246]


def test_divisibility_sweep_up_to_a_million():
    checked = 0
    for ps in admissible_triples(10**6):
        quad = solve_quad_partition_for(ps.p, primitive_cube_roots(ps.p)[0])
        for branch in (quad, other_branch(quad)):
            t1 = correlation_table(ps, branch)
            assert t1.total == ps.q - 1
            t5 = weight_table(ps, branch)
            assert t5.total == ps.q**2
            assert all(r.frequency >= 0 for r in t1.rows + t5.rows)
        checked += 1
    assert checked > 50


def test_cyclotomic_closed_forms_integral_on_all_small_fields():
    for p in primes_1_mod_3(1000):
        n = 1
        while p**n <= 10**6:
            for w in primitive_cube_roots(p):
                quad = solve_quad_partition_for(p, w)
                c = closed_cij(quad, n)
                assert c.total == p**n - 2
                coefficients(quad, n)
            n += 1


def test_weight_table_shapes():
    ps = validate_params(7, 5, 0)
    quad = solve_quad_partition_for(7, 2)
    t5 = weight_table(ps, quad)
    weights = {int(r.value): r.frequency for r in t5.rows}
    assert weights == {0: 1, 14406: 16805 * 16806, 9604: 3 * 16806}
    assert ps.case is CaseTag.CASE_ONE
