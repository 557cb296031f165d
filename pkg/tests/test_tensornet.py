import warnings

import numpy as np
import pytest

from cpred import (
    ControlNet,
    ControlPolygon,
    Dataset,
    DimensionalityError,
    MarginGrid,
    TensorSizeWarning,
    cnr_run,
    conditional_influence,
    conditional_ordinates,
    conditional_polygon,
    fit_control_net,
    influence_of,
    make_knot_sequence,
    marginal_influence,
    tensor_basis,
    tensor_eval_sum,
    tensor_size,
)
from conftest import random_knots
from oracles import tensor_row_oracle


def random_net(rng, m=2, max_int=3):
    margins = [random_knots(rng, int(rng.integers(2, 5)), int(rng.integers(0, max_int + 1))) for _ in range(m)]
    return ControlNet(margins, rng.normal(size=tensor_size(margins)))


def surface_data(rng, n=400, sigma=0.05):
    x1 = rng.uniform(0, 1, n)
    x2 = rng.uniform(0, 1, n)
    y = np.sin(2 * np.pi * x1) * x2 + rng.normal(scale=sigma, size=n)
    return Dataset({"x1": x1, "x2": x2, "y": y}, "y", ("x1", "x2"))


class TestTensorBasis:
    def test_rows_match_summation_oracle(self, rng):
        for _ in range(20):
            m = int(rng.integers(2, 4))
            margins = [random_knots(rng, int(rng.integers(2, 5)), int(rng.integers(0, 3))) for _ in range(m)]
            cols = [rng.uniform(0, 1, 7) for _ in range(m)]
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", TensorSizeWarning)
                tb = tensor_basis(cols, margins, allow_big=True)
            for i in range(7):
                np.testing.assert_allclose(tb.values[i], tensor_row_oracle([c[i] for c in cols], margins), atol=1e-12)
            np.testing.assert_allclose(tb.values.sum(axis=1), 1.0, atol=1e-12)

    def test_index_round_trip(self, rng):
        margins = [random_knots(rng, 3, 1), random_knots(rng, 2, 2), random_knots(rng, 4, 0)]
        tb = tensor_basis([rng.uniform(0, 1, 100)] * 3, margins)
        assert tb.dims == (4, 4, 4)
        for col in range(tensor_size(margins)):
            assert tb.flat_index(tb.multi_index(col)) == col
        assert tb.multi_index(1) == (1, 0, 0)

    def test_dimensionality_guard(self):
        a = make_knot_sequence(4, (0, 1), np.linspace(0.02, 0.98, 50))
        cols = [np.linspace(0, 1, 100)] * 2
        with pytest.raises(DimensionalityError) as info:
            tensor_basis(cols, [a, a])
        assert info.value.n_columns == 2916
        assert "allow" in str(info.value)
        with pytest.warns(TensorSizeWarning):
            tb = tensor_basis(cols, [a, a], allow_big=True)
        assert tb.shape == (100, 2916)

    def test_needs_two_margins(self, ref_knots):
        with pytest.raises(ValueError):
            tensor_basis([np.zeros(3)], [ref_knots])


class TestControlNet:
    def test_call_matches_summation(self, rng):
        net = random_net(rng, m=3)
        pts = rng.uniform(0, 1, (10, 3))
        vals = net(*pts.T)
        for p, v in zip(pts, vals):
            assert v == pytest.approx(tensor_eval_sum(p, net), abs=1e-12)

    def test_wrong_theta_size(self, ref_knots):
        with pytest.raises(ValueError):
            ControlNet([ref_knots, ref_knots], np.zeros(10))


class TestConditional:
    def test_slice_equals_full_evaluation(self, rng):
        for _ in range(5):
            net = random_net(rng)
            g = np.linspace(0, 1, 20)
            for free in (0, 1):
                for c in g:
                    poly = conditional_polygon(net, free, [c])
                    cols = (g, np.full(20, c)) if free == 0 else (np.full(20, c), g)
                    np.testing.assert_allclose(poly(g), net(*cols), atol=1e-12)

    def test_three_margins(self, rng):
        net = random_net(rng, m=3)
        g = np.linspace(0, 1, 9)
        ords = conditional_ordinates(net, 1, [0.3, 0.8])
        poly = ControlPolygon(net.margins[1], ords)
        np.testing.assert_allclose(poly(g), net(np.full(9, 0.3), g, np.full(9, 0.8)), atol=1e-12)

    def test_wrong_fixed_count(self, rng):
        with pytest.raises(ValueError):
            conditional_ordinates(random_net(rng), 0, [0.1, 0.2])

    def test_conditional_influence_is_cpr_weight(self, rng):
        net = random_net(rng, max_int=4)
        while net.margins[0].n_interior == 0:
            net = random_net(rng, max_int=4)
        poly = conditional_polygon(net, 0, [0.4])
        report = influence_of(poly)
        for e in report.entries:
            assert conditional_influence(net, 0, e.index, [0.4]) == pytest.approx(e.weight, abs=1e-13)


class TestMarginalInfluence:
    def test_single_point_grid_equals_conditional(self, rng):
        net = random_net(rng, max_int=4)
        while net.margins[0].n_interior == 0:
            net = random_net(rng, max_int=4)
        grid = MarginGrid.from_data([np.array([0.0, 1.0])] * 2, p=1)
        assert grid.for_margin(1).tolist() == [0.5]
        for j in net.margins[0].interior_indices():
            assert marginal_influence(net, 0, j, grid) == conditional_influence(net, 0, j, [0.5])

    def test_is_max_over_grid(self, rng):
        net = random_net(rng, m=3, max_int=2)
        while net.margins[2].n_interior == 0:
            net = random_net(rng, m=3, max_int=2)
        grid = MarginGrid.from_data([np.array([0.0, 1.0])] * 3, p=3)
        j = net.margins[2].interior_indices()[0]
        brute = max(
            conditional_influence(net, 2, j, [a, b])
            for a in grid.for_margin(0)
            for b in grid.for_margin(1)
        )
        assert marginal_influence(net, 2, j, grid) == pytest.approx(brute, abs=1e-13)

    def test_grid_points(self):
        pts = MarginGrid.interior_points([2.0, 4.0, 3.0], 3)
        np.testing.assert_allclose(pts, [2.5, 3.0, 3.5])
        with pytest.raises(ValueError):
            MarginGrid(p=0)

    def test_budget(self, rng):
        net = random_net(rng, m=3)
        grid = MarginGrid.from_data([np.array([0.0, 1.0])] * 3, p=20)
        with pytest.raises(ValueError):
            marginal_influence(net, 0, 5, grid, budget=100)


class TestCnr:
    def test_fit_count_and_nesting(self, rng):
        data = surface_data(rng)
        a = make_knot_sequence(3, (0, 1), [0.25, 0.5, 0.75])
        b = make_knot_sequence(3, (0, 1), [0.33, 0.66])
        calls = []

        def fitter(X, y):
            from cpred import fit_ols

            calls.append(X.shape[1])
            return fit_ols(X, y)

        run = cnr_run(data, [a, b], grid=5, fitter=fitter)
        assert len(calls) == run.n_fits == 1 + 5
        assert len(run.removed) == 5
        for small, big in zip(run.nets, run.nets[1:]):
            for ks, kb in zip(small.margins, big.margins):
                assert set(ks.interior) <= set(kb.interior)
        assert all(k.n_interior == 0 for k in run[1].margins)

    def test_static_margin_is_untouched(self, rng):
        data = surface_data(rng)
        a = make_knot_sequence(3, (0, 1), [0.25, 0.5, 0.75])
        b = make_knot_sequence(3, (0, 1), [0.33, 0.66])
        run = cnr_run(data, [a, b], reducible=[0], grid=4)
        assert run.n_fits == 4
        assert all(net.margins[1] == b for net in run.nets)
        assert {r.margin for r in run.removed} == {0}

    def test_removal_is_global_minimum(self, rng):
        data = surface_data(rng)
        a = make_knot_sequence(3, (0, 1), [0.25, 0.5, 0.75])
        b = make_knot_sequence(3, (0, 1), [0.5])
        run = cnr_run(data, [a, b], grid=6)
        grid = MarginGrid.from_data([data.columns["x1"], data.columns["x2"]], 6)
        first = run.removed[0]
        top = run.nets[-1]
        weights = {
            (m, j): marginal_influence(top, m, j, grid)
            for m in (0, 1)
            for j in top.margins[m].interior_indices()
        }
        assert (first.margin, first.index) == min(weights, key=lambda k: (weights[k], k))

    def test_empty_reducible(self, rng):
        data = surface_data(rng)
        a = make_knot_sequence(3, (0, 1), [0.5])
        with pytest.raises(ValueError):
            cnr_run(data, [a, a], reducible=[])

    def test_fit_guard(self, rng):
        data = surface_data(rng, n=30)
        a = make_knot_sequence(4, (0, 1), [0.2, 0.4, 0.6, 0.8])
        with pytest.raises(DimensionalityError):
            fit_control_net(data, [a, a])

    def test_summary(self, rng):
        data = surface_data(rng)
        a = make_knot_sequence(3, (0, 1), [0.5])
        run = cnr_run(data, [a, a], grid=3)
        rows = run.summary()
        assert [r["l"] for r in rows] == [[0, 0], [rows[1]["l"][0], rows[1]["l"][1]], [1, 1]]
        assert rows[-1]["dfs"] == 16
        assert rows[0]["rmse"] >= rows[-1]["rmse"]


def test_no_warning_for_small_tensor(rng):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        tensor_basis([rng.uniform(0, 1, 50)] * 2, [random_knots(rng, 3, 1)] * 2)
