import numpy as np
import pytest

from digital_pde import catalog, experiments
from digital_pde.graph_core import DigitalSpace
from digital_pde.solver import (
    DivergenceError,
    FieldState,
    Problem,
    SupportError,
    bind,
    elliptic_residual,
    is_diffusion,
    is_irreducible,
    is_primitive,
    limit_matrix,
    solve_bvp,
    solve_ivp,
    stability_bound_check,
    stationary_solution,
    step,
    uniform_coefficients,
)


@pytest.fixture(scope="module")
def klein_coeffs(klein):
    return uniform_coefficients(klein, 0.1, 0.4)


class TestBind:
    def test_klein_uniform_valid(self, klein_coeffs):
        assert is_diffusion(klein_coeffs)

    def test_rejects_non_adjacent_support(self, four_cycle):
        mat = np.zeros((4, 4))
        mat[0, 2] = 0.5  # 1 and 3 are opposite corners, not adjacent
        with pytest.raises(SupportError, match=r"\(1,3\)"):
            bind(four_cycle, mat)

    def test_directed_support_allowed(self, four_cycle):
        mat = np.eye(4)
        mat[0, 1] = 0.3  # flow 2 -> 1 only
        c = bind(four_cycle, mat)
        assert c.matrix[0, 1] == 0.3 and c.matrix[1, 0] == 0.0

    def test_shape_mismatch(self, four_cycle):
        with pytest.raises(ValueError):
            bind(four_cycle, np.zeros((3, 3)))

    def test_network_table_is_column_stochastic(self):
        c = experiments.network_coefficients()
        assert is_diffusion(c)
        np.testing.assert_allclose(c.matrix.sum(axis=0), 1.0, atol=1e-12)


class TestIsDiffusion:
    def test_identity(self, four_cycle):
        assert is_diffusion(bind(four_cycle, np.eye(4)))

    def test_s4_matrix(self):
        c = uniform_coefficients(catalog.space("s4_min"), 0.01, 0.92)
        assert is_diffusion(c)  # 8 * 0.01 + 0.92 == 1

    def test_deficient_column(self, four_cycle):
        mat = np.eye(4) * 0.9
        assert not is_diffusion(bind(four_cycle, mat))

    def test_negative_entry(self, four_cycle):
        mat = np.eye(4) * 1.2
        mat[0, 1] = -0.2
        assert not is_diffusion(bind(four_cycle, mat))


class TestStep:
    def test_identity_fixes_everything(self, four_cycle):
        c = bind(four_cycle, np.eye(4))
        f = FieldState(0, np.array([1.0, 2.0, 3.0, 4.0]))
        nxt = step(f, c)
        assert nxt.t == 1
        np.testing.assert_array_equal(nxt.values, f.values)

    def test_klein_first_step_hand_value(self, klein, klein_coeffs):
        f0 = np.zeros(16)
        f0[0] = 16.0
        nxt = step(FieldState(0, f0), klein_coeffs)
        # point 1 keeps 0.4 of its mass; neighbors each receive 0.1 * 16
        assert nxt.values[0] == pytest.approx(0.4 * 16)
        for p in klein.neighbors(1):
            assert nxt.value_at(klein_coeffs, p) == pytest.approx(1.6)

    def test_uniform_vector_fixed_for_symmetric_matrix(self, klein_coeffs):
        ones = np.ones(16)
        nxt = step(FieldState(0, ones), klein_coeffs)
        np.testing.assert_allclose(nxt.values, ones, atol=1e-14)

    def test_source_term_added(self, four_cycle):
        c = bind(four_cycle, np.eye(4))
        g = np.array([1.0, 0.0, 0.0, 0.0])
        nxt = step(FieldState(0, np.zeros(4)), c, g)
        assert nxt.values[0] == 1.0


class TestSolveIvp:
    def test_klein_limit(self, klein, klein_coeffs):
        f0 = np.zeros(16)
        f0[0] = 16.0
        trajectory = solve_ivp(Problem(klein, klein_coeffs, f0))
        np.testing.assert_allclose(trajectory.terminal.values, 1.0, atol=1e-6)

    def test_conservation_recorded(self, klein, klein_coeffs):
        f0 = np.zeros(16)
        f0[0] = 16.0
        trajectory = solve_ivp(Problem(klein, klein_coeffs, f0, steps=40))
        assert all(abs(s - 16.0) < 1e-9 for s in trajectory.sums)

    def test_divergence_guard(self, four_cycle):
        mat = np.eye(4) * 2.0  # doubles mass each step
        problem = Problem(four_cycle, bind(four_cycle, mat),
                          np.ones(4), steps=200, blowup_factor=100.0)
        with pytest.raises(DivergenceError):
            solve_ivp(problem)

    def test_bvp_problem_rejected(self, klein, klein_coeffs):
        problem = Problem(klein, klein_coeffs, np.zeros(16),
                          boundary_points=[1], boundary_values=lambda t: {1: 2.0})
        with pytest.raises(ValueError):
            solve_ivp(problem)

    def test_time_dependent_rule(self, four_cycle):
        mats = [np.eye(4), np.zeros((4, 4))]
        c = bind(four_cycle, mats[0], rule=lambda t: mats[min(t, 1)])
        trajectory = solve_ivp(Problem(four_cycle, c, np.ones(4), steps=3, tol=0.0))
        assert trajectory.states[1].values.sum() == 4.0
        assert trajectory.states[2].values.sum() == 0.0


class TestSolveBvp:
    def test_clamped_points_hold(self, projective):
        coeffs = uniform_coefficients(
            projective, 0.1,
            {p: 1.0 - 0.1 * projective.degree(p) for p in projective.points})
        clamps = {1: 1.0, 11: 4.0}
        problem = Problem(projective, coeffs, np.zeros(11),
                          boundary_points=[1, 11],
                          boundary_values=lambda t: clamps)
        trajectory = solve_bvp(problem)
        i1 = projective.points.index(1)
        i11 = projective.points.index(11)
        for state in trajectory.states:
            assert state.values[i1] == 1.0
            assert state.values[i11] == 4.0

    def test_all_points_clamped(self, four_cycle):
        c = uniform_coefficients(four_cycle, 0.1, 0.8)
        clamps = {p: float(p) for p in four_cycle.points}
        problem = Problem(four_cycle, c, np.zeros(4),
                          boundary_points=list(four_cycle.points),
                          boundary_values=lambda t: clamps)
        trajectory = solve_bvp(problem)
        for state in trajectory.states:
            np.testing.assert_array_equal(state.values, [1.0, 2.0, 3.0, 4.0])

    def test_ivp_problem_rejected(self, four_cycle):
        c = uniform_coefficients(four_cycle, 0.1, 0.8)
        with pytest.raises(ValueError):
            solve_bvp(Problem(four_cycle, c, np.zeros(4)))


class TestStabilityBound:
    def test_zero_matrix(self, four_cycle):
        assert stability_bound_check(bind(four_cycle, np.zeros((4, 4))))

    def test_s4_matrix_fails_sufficient_condition(self):
        c = uniform_coefficients(catalog.space("s4_min"), 0.01, 0.92)
        assert not stability_bound_check(c)  # 0.92 >= 1/10

    def test_small_entries_pass(self):
        space = catalog.space("s4_min")
        c = uniform_coefficients(space, 0.01, 0.092)
        assert stability_bound_check(c)


class TestIrreduciblePrimitive:
    def test_identity_reducible(self, four_cycle):
        c = bind(four_cycle, np.eye(4))
        assert not is_irreducible(c)

    def test_klein_matrix_primitive(self, klein_coeffs):
        assert is_irreducible(klein_coeffs)
        assert is_primitive(klein_coeffs)

    def test_directed_2_cycle_periodic(self):
        g = DigitalSpace([1, 2], [(1, 2)])
        mat = np.array([[0.0, 1.0], [1.0, 0.0]])
        c = bind(g, mat)
        assert is_irreducible(c)
        assert not is_primitive(c)


class TestLimitMatrix:
    def test_klein_limit_uniform(self, klein_coeffs):
        report = limit_matrix(klein_coeffs)
        assert report.primitive
        np.testing.assert_allclose(report.stationary_column, 1 / 16, atol=1e-9)

    def test_identity_no_unique_limit(self, four_cycle):
        report = limit_matrix(bind(four_cycle, np.eye(4)))
        assert not report.primitive
        assert report.stationary_column is None

    def test_idempotence(self, klein_coeffs):
        report = limit_matrix(klein_coeffs)
        np.testing.assert_allclose(klein_coeffs.matrix @ report.limit,
                                   report.limit, atol=1e-9)

    def test_requires_diffusion(self, four_cycle):
        with pytest.raises(ValueError):
            limit_matrix(bind(four_cycle, np.eye(4) * 0.5))


class TestStationarySolution:
    def test_klein_total_16(self, klein_coeffs):
        f0 = np.zeros(16)
        f0[0] = 16.0
        f_inf = stationary_solution(klein_coeffs, f0)
        np.testing.assert_allclose(f_inf.values, 1.0, atol=1e-9)

    def test_s4_total_1(self):
        c = uniform_coefficients(catalog.space("s4_min"), 0.01, 0.92)
        f0 = np.zeros(10)
        f0[0] = 1.0
        f_inf = stationary_solution(c, f0)
        np.testing.assert_allclose(f_inf.values, 0.1, atol=1e-9)

    def test_stationary_input_returned_unchanged(self, klein_coeffs):
        f0 = np.ones(16) * 2.0
        f_inf = stationary_solution(klein_coeffs, f0)
        np.testing.assert_allclose(f_inf.values, f0, atol=1e-9)

    def test_non_primitive_rejected(self, four_cycle):
        with pytest.raises(ValueError):
            stationary_solution(bind(four_cycle, np.eye(4)), np.ones(4))


class TestEllipticResidual:
    def test_zero_vector(self, klein_coeffs):
        assert elliptic_residual(klein_coeffs, np.zeros(16)) == 0.0

    def test_stationary_solution_residual(self, klein_coeffs):
        f_inf = stationary_solution(klein_coeffs, np.ones(16))
        assert elliptic_residual(klein_coeffs, f_inf.values) < 1e-9

    def test_restricted_points(self, projective):
        coeffs = uniform_coefficients(
            projective, 0.1,
            {p: 1.0 - 0.1 * projective.degree(p) for p in projective.points})
        clamps = {1: 1.0, 11: 4.0}
        problem = Problem(projective, coeffs, np.zeros(11),
                          boundary_points=[1, 11],
                          boundary_values=lambda t: clamps,
                          steps=5000, tol=1e-13)
        trajectory = solve_bvp(problem)
        free = [p for p in projective.points if p not in (1, 11)]
        assert elliptic_residual(coeffs, trajectory.terminal.values,
                                 points=free) < 1e-8
