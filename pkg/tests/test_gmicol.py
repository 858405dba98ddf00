import random

import pytest

from dualgmi import exactnum as xn
from dualgmi import gmicol
from dualgmi import lexsimplex as lx
from dualgmi.lexsimplex import StandardFormLP
from dualgmi.oracle import feasible_points
from dualgmi.checks import lifted_points
from dualgmi.reformulate import DualFormMIP
from dualgmi.suite import generate_suite, random_instance

from conftest import BOX_A, BOX_C, F, vec
from helpers import relaxation_points, run_capturing


@pytest.fixture
def half_state():
    """A_beta = diag(2, 1), c_beta = (3, 0): ybar = (3/2, 0)."""
    return lx.make_state(StandardFormLP.from_matrix([[2, 0], [0, 1]], [3, 0]), (0, 1))


@pytest.fixture(scope="module")
def derivations():
    out = []
    rng = random.Random(11)
    instances = generate_suite(60, seed=7)
    instances += [random_instance(rng, rng.choice((2, 3)), 12, 4, (1, 5)) for _ in range(30)]
    for inst in instances:
        _, captured = run_capturing(inst)
        out += captured
    assert len(out) > 40
    return out


def test_minimal_r_examples():
    assert gmicol.minimal_r(vec(F(1, 2), F(-5, 4), 2)) == vec(0, 2, 0)
    assert gmicol.minimal_r(vec(0, F(7, 3), 1)) == vec(0, 0, 0)
    assert gmicol.minimal_r(vec(F(-1, 3))) == vec(1)


def test_validate_kappa():
    h = vec(F(1, 2), F(-5, 4), 2)
    assert gmicol.validate_kappa(gmicol.minimal_r(h), h)
    assert not gmicol.validate_kappa(vec(-1, 2, 0), h)
    assert not gmicol.validate_kappa(vec(F(1, 2), 2, 0), h)
    assert not gmicol.validate_kappa(vec(0, 1, 0), h)  # 1 < 5/4
    assert gmicol.validate_kappa(vec(3, 2, 1), h)


def test_derive_cut_r_zero(half_state):
    cut = gmicol.derive_cut(half_state, 0, vec(0, 0))
    assert cut.f == F(1, 2) and cut.floor_yi == 1
    assert cut.column == vec(F(1, 2), 0)
    assert cut.cost == F(1, 2)
    assert gmicol.reduced_cost_identity(cut, half_state) == F(-1, 4)


def test_derive_cut_reduced_cost_independent_of_r(half_state):
    cut = gmicol.derive_cut(half_state, 0, vec(1, 0))
    assert cut.column == vec(F(5, 2), 0)
    assert cut.cost == F(7, 2)
    assert gmicol.reduced_cost_identity(cut, half_state) == F(-1, 4)


def test_derive_cut_defaults_to_minimal_r(half_state):
    assert gmicol.derive_cut(half_state, 0).r == vec(0, 0)


def test_derive_cut_errors(half_state):
    with pytest.raises(gmicol.NotFractional):
        gmicol.derive_cut(half_state, 1, vec(0, 0))
    with pytest.raises(gmicol.KappaViolated):
        gmicol.derive_cut(half_state, 0, vec(-1, 0))
    not_optimal = lx.append_column(half_state, vec(1, 0), 0)
    with pytest.raises(gmicol.NotOptimal):
        gmicol.derive_cut(not_optimal, 0, vec(0, 0))


@pytest.mark.parametrize("f, expected", [(F(1, 2), F(-1, 4)), (F(1, 3), F(-2, 9)), (F(3, 4), F(-3, 16))])
def test_reduced_cost_identity_values(f, expected):
    state = lx.make_state(StandardFormLP.from_matrix([[1]], [5 + f]), (0,))
    cut = gmicol.derive_cut(state, 0)
    assert gmicol.reduced_cost_identity(cut, state) == expected


def test_reduced_cost_identity_detects_tampering(half_state):
    cut = gmicol.derive_cut(half_state, 0, vec(0, 0))
    bad = gmicol.CutColumn(cut.i, cut.r, cut.floor_yi, cut.f, cut.column, cut.cost + 1)
    with pytest.raises(gmicol.IdentityViolated):
        gmicol.reduced_cost_identity(bad, half_state)


def test_diagnostics_example(half_state):
    d = gmicol.diagnostics(half_state, 0, vec(0, 0))
    assert d.alpha_i_r == 0
    assert d.z1 == F(-1, 2)
    assert d.z2 == 0
    assert d.z1 - d.z2 == d.f - 1
    assert d.slope == -2
    assert d.violation == F(1, 4)
    assert d.w2_beta == vec(0, 0)
    assert d.w1_beta == vec(F(1, 2), 0)


def test_cut_satisfied_at_generating_point(half_state):
    cut = gmicol.derive_cut(half_state, 0)
    assert not gmicol.cut_satisfied_at(cut, half_state.ybar)
    # points with y'A_beta <= c_beta and y_1 <= floor(3/2)
    for y in [vec(1, 0), vec(1, -5), vec(0, 0), vec(-3, -1)]:
        assert gmicol.cut_satisfied_at(cut, y)


def test_basis_image(derivations):
    for state, i in derivations:
        cut = gmicol.derive_cut(state, i)
        expected = xn.sub(cut.r, xn.scale(cut.f - 1, state.h_col(i)))
        assert gmicol.basis_image(cut, state) == expected


def test_fbmi_properties(derivations):
    for state, i in derivations:
        cut = gmicol.derive_cut(state, i)
        d = gmicol.diagnostics(state, i)
        assert gmicol.reduced_cost_identity(cut, state) == (d.f - 1) * d.f < 0
        assert all(v >= 0 for v in d.w1_beta) and all(v >= 0 for v in d.w2_beta)
        assert d.w2_beta == cut.r
        assert d.z1 - d.z2 == d.f - (1 + d.alpha_i_r)
        assert d.fbmi_excess(d.floor_yi + 1, d.z1) == 0
        assert d.fbmi_excess(d.floor_yi, d.z2) == 0
        assert d.fbmi_excess(d.ystar, d.zstar) == d.violation
        # F-BMI is B1 plus f times (y_i >= floor+1), and B2 plus (1-f) times (y_i <= floor)
        b1, b2 = d.b1, d.b2
        assert d.fbmi == (b1[0] - d.f, b1[1], b1[2] - d.f * (d.floor_yi + 1))
        assert d.fbmi == (b2[0] + (1 - d.f), b2[1], b2[2] + (1 - d.f) * d.floor_yi)
        if d.alpha_integral:
            assert (d.z1 < d.z2) == (d.alpha_i_r >= 0)
            assert (d.z2 < d.z1) == (d.alpha_i_r <= -1)
        assert not gmicol.cut_satisfied_at(cut, state.ybar)


def test_z_gap_sign_on_integer_bases(derivations):
    integer_bases = [(s, i) for s, i in derivations
                     if all(xn.is_integral(a) for a in xn.mat_vec(s.basis_matrix(), s.h_col(i)) + sum(s.basis_matrix(), ()))]
    assert integer_bases
    for state, i in integer_bases:
        d = gmicol.diagnostics(state, i)
        assert d.alpha_integral
        if d.alpha_i_r >= 0:
            assert d.z1 < d.z2


def test_validity_at_mixed_integer_points():
    instances = [DualFormMIP.create(BOX_A, [1, 0], BOX_C, {0}), DualFormMIP.create(BOX_A, [1, 1], BOX_C, {0, 1})]
    checked = 0
    for inst in instances + generate_suite(30, seed=5):
        report, _ = run_capturing(inst)
        points = [q for p in feasible_points(inst) for q in lifted_points(report.lexmip, p)]
        for rec in report.iterations:
            for q in points:
                assert gmicol.cut_satisfied_at(rec.cut, q)
                checked += 1
    assert checked > 50


def test_validity_on_both_sides_of_the_split(derivations):
    """Points y = ybar - s' binv (s >= 0) satisfy y'A_beta <= c_beta; away from the split the cut holds."""
    rng = random.Random(17)
    sides = {"lo": 0, "hi": 0}
    for state, i in derivations:
        cut = gmicol.derive_cut(state, i)
        for _ in range(30):
            s = [xn.Fraction(rng.randint(0, 6), rng.randint(1, 3)) if rng.random() < 0.7 else 0
                 for _ in range(state.m)]
            y = xn.sub(state.ybar, xn.vec_mat(s, state.binv))
            assert all(v <= c for v, c in zip(xn.vec_mat(y, state.basis_matrix()), state.basic_costs()))
            if y[i] <= cut.floor_yi:
                sides["lo"] += 1
            elif y[i] >= cut.floor_yi + 1:
                sides["hi"] += 1
            else:
                continue
            assert gmicol.cut_satisfied_at(cut, y)
    assert sides["lo"] > 50 and sides["hi"] > 50


def test_dominance_of_minimal_r(derivations):
    rng = random.Random(3)
    for state, i in derivations[:15]:
        r = gmicol.minimal_r(state.h_col(i))
        bumped = tuple(v + rng.randint(0, 2) for v in r)
        small = gmicol.derive_cut(state, i, r)
        big = gmicol.derive_cut(state, i, bumped)
        for y in relaxation_points(state, rng, 40):
            if not gmicol.cut_satisfied_at(big, y):
                assert not gmicol.cut_satisfied_at(small, y)
