import math

import pytest

import searchgames as sg


@pytest.fixture
def two_boxes():
    return sg.BoxInstance([1.0, 1.0], [0])


@pytest.fixture
def two_boxes_half(two_boxes):
    return sg.BoxInstance([1.0, 1.0], [0], q=0.5)


def test_values(two_boxes_half):
    assert sg.value_perfect([1.0, 2.0, 3.0]) == pytest.approx(25.0 / 6.0, abs=1e-12)
    assert sg.value_perfect_subset([1.0, 1.0], [0]) == pytest.approx(1.0)
    assert sg.value_imperfect([1.0, 1.0], 0.5) == pytest.approx(3.5, abs=1e-12)
    assert sg.search_cost([1.0, 2.0], [1, 0], 0) == pytest.approx(3.0)


def test_instance_validation():
    with pytest.raises(ValueError):
        sg.BoxInstance([1.0], [0])
    with pytest.raises(ValueError):
        sg.BoxInstance([1.0, 1.0], [0, 1])
    inst = sg.BoxInstance([1.0, 2.0], [1], q=0.25)
    assert inst.q == 0.25
    assert inst.prediction == [1]


def test_perfect_frontier(two_boxes):
    assert sg.alpha_star(two_boxes) == pytest.approx(0.5, abs=1e-12)
    assert sg.expected_times_sstar(two_boxes, 0.5) == pytest.approx((1.5, 1.5))
    curve = sg.frontier_perfect(two_boxes, points=5)
    assert len(curve) == 5
    for point in curve:
        assert point["consistency"] + point["robustness"] == pytest.approx(3.0)
    assert curve[0]["consistency"] == pytest.approx(1.0)
    assert curve[-1]["robustness"] == pytest.approx(1.5)


def test_imperfect_frontier(two_boxes_half):
    assert sg.beta_star(two_boxes_half) == pytest.approx(0.5, abs=1e-12)
    assert sg.expected_times_sk(two_boxes_half, 1, 0.0) == pytest.approx((3.0, 4.0))
    curve = sg.frontier_imperfect(two_boxes_half, kmax=2)
    assert all(p["consistency"] <= p["robustness"] + 1e-9 for p in curve)
    assert sg.best_response_value_hk(two_boxes_half, 1) == pytest.approx(10.0 / 3.0)


def test_line_search():
    alpha_star, rho = sg.rho_star()
    assert 3.58 < alpha_star < 3.60
    assert 4.58 < rho < 4.60
    c, r = sg.upper_bounds(4.0, 0.5)
    assert c == pytest.approx(1.0 + 3.0 / math.log(4.0))
    assert r == pytest.approx(1.0 + 9.0 / math.log(4.0))
    assert sg.normalized_cost([(1.0, True), (1.0, False), (2.0, True)], 2.0) == pytest.approx(3.0)
    curve = sg.frontier_line([0.25, 0.5, 0.75])
    assert len(curve) == 3
    assert sg.lower_bound_value(0.5, 0.1) == pytest.approx(
        0.9 * sg.lambda_objective(0.5, sg.optimal_alpha(0.5))
    )


def test_payoff_vs_density():
    big_r = math.exp(9.0)
    payoff = sg.payoff_vs_density([(big_r + 1.0, True)], 1.0, 0.1, quad_tol=1e-9)
    assert payoff == pytest.approx(1.0, abs=1e-7)


def test_matrix_game():
    sol = sg.solve_matrix_game([[0.0, 1.0], [1.0, 0.0]])
    assert sol["value"] == pytest.approx(0.5, abs=1e-9)
    assert sol["duality_gap"] <= 1e-9
    assert sol["row_mix"][0] == pytest.approx(0.5, abs=1e-6)


def test_monte_carlo(two_boxes):
    est = sg.estimate_cr_sstar(two_boxes, 0.5, trials=20000, seed=7)
    assert est["consistency"]["mean"] == pytest.approx(1.5, abs=0.05)
    assert est["robustness"]["mean"] == pytest.approx(1.5, abs=0.05)
    rep = sg.estimate_cr_sstar(two_boxes, 0.5, trials=20000, seed=7)
    assert rep["consistency"]["mean"] == est["consistency"]["mean"]

    ratio = sg.expected_ratio_biased(3.59, 1.0, 10.0, trials=5000, seed=3)
    assert ratio["mean"] < 4.60 + 3.0 * ratio["stderr"]


def test_run_verification_subset():
    rows = sg.run_verification(scopes=["core"])
    assert rows and all(r["pass"] for r in rows)
