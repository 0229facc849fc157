import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wrcouple import (InterfaceTrace, TimeGrid, interp_trace, interp_values,
                      stage_derivative, stage_interp)
from wrcouple.stepping import SDIRK_A


def make_trace(grid, func):
    vals = np.array([[func(t) for t in grid.points]])
    return InterfaceTrace(grid=grid, values=vals)


class TestInterp:
    def test_same_grid_is_identity(self):
        grid = TimeGrid(0.0, 1.0, 7)
        src = make_trace(grid, lambda t: math.cos(3 * t))
        out = interp_trace(grid, src)
        assert out.values == pytest.approx(src.values, abs=0.0)
        assert out.values is not src.values

    def test_linear_trace_exact(self):
        coarse = TimeGrid(0.0, 1.0, 2)
        src = make_trace(coarse, lambda t: 2.0 * t)
        fine = TimeGrid(0.0, 1.0, 4)
        out = interp_trace(fine, src)
        assert out.values[0] == pytest.approx([0.0, 0.5, 1.0, 1.5, 2.0])

    def test_thirds_refinement(self):
        src = make_trace(TimeGrid(0.0, 1.0, 1), lambda t: t)
        out = interp_trace(TimeGrid(0.0, 1.0, 3), src)
        assert out.values[0] == pytest.approx([0.0, 1 / 3, 2 / 3, 1.0])

    def test_span_mismatch_rejected(self):
        src = make_trace(TimeGrid(0.0, 1.0, 2), lambda t: t)
        with pytest.raises(ValueError):
            interp_trace(TimeGrid(0.0, 2.0, 2), src)

    def test_downsampling_samples_shared_knots(self):
        fine = TimeGrid(0.0, 1.0, 10)
        src = make_trace(fine, lambda t: math.sin(5 * t))
        out = interp_trace(TimeGrid(0.0, 1.0, 5), src)
        assert out.values[0] == pytest.approx(src.values[0, ::2], abs=0.0)

    def test_idempotent_on_target_grid(self):
        src = make_trace(TimeGrid(0.0, 1.0, 3), lambda t: t * t)
        tgt = TimeGrid(0.0, 1.0, 7)
        once = interp_trace(tgt, src)
        twice = interp_trace(tgt, once)
        assert twice.values == pytest.approx(once.values, abs=0.0)

    def test_multiple_interface_nodes(self):
        grid = TimeGrid(0.0, 1.0, 2)
        vals = np.array([[0.0, 1.0, 2.0], [4.0, 2.0, 0.0]])
        out = interp_values(TimeGrid(0.0, 1.0, 4), grid, vals)
        assert out[0] == pytest.approx([0.0, 0.5, 1.0, 1.5, 2.0])
        assert out[1] == pytest.approx([4.0, 3.0, 2.0, 1.0, 0.0])

    @settings(max_examples=30, deadline=None)
    @given(n_src=st.integers(1, 13), n_tgt=st.integers(1, 13),
           a=st.floats(-5, 5), b=st.floats(-5, 5))
    def test_degree_one_exactness(self, n_src, n_tgt, a, b):
        src_grid = TimeGrid(0.0, 2.0, n_src)
        tgt_grid = TimeGrid(0.0, 2.0, n_tgt)
        src = make_trace(src_grid, lambda t: a * t + b)
        out = interp_trace(tgt_grid, src)
        want = a * tgt_grid.points + b
        assert out.values[0] == pytest.approx(want, rel=1e-13, abs=1e-13)

    @settings(max_examples=30, deadline=None)
    @given(n_src=st.integers(1, 9), n_tgt=st.integers(1, 17), seed=st.integers(0, 1000))
    def test_no_overshoot_and_exact_endpoints(self, n_src, n_tgt, seed):
        rng = np.random.default_rng(seed)
        src_grid = TimeGrid(0.0, 1.0, n_src)
        vals = rng.uniform(-10, 10, size=(1, n_src + 1))
        out = interp_values(TimeGrid(0.0, 1.0, n_tgt), src_grid, vals)
        assert out[0, 0] == vals[0, 0]
        assert out[0, -1] == vals[0, -1]
        assert np.all(out <= vals.max() + 1e-12)
        assert np.all(out >= vals.min() - 1e-12)


class TestStageHelpers:
    def test_constant_trace(self):
        assert stage_interp(3.0, 3.0, 0.4) == 3.0
        assert stage_derivative(3.0, 3.0, 0.5) == 0.0

    def test_sdirk_abscissa_value(self):
        got = stage_interp(1.0, 3.0, SDIRK_A)
        assert got == pytest.approx(1.0 + 2.0 * SDIRK_A)
        assert got == pytest.approx(1.585786, abs=1e-6)

    def test_endpoints(self):
        assert stage_interp(1.0, 3.0, 0.0) == 1.0
        assert stage_interp(1.0, 3.0, 1.0) == 3.0

    def test_forward_difference(self):
        assert stage_derivative(0.0, 2.0, 0.5) == 4.0
        assert stage_derivative(5.0, 1.0, 2.0) < 0

    def test_vector_inputs(self):
        g0 = np.array([1.0, 2.0])
        g1 = np.array([3.0, 0.0])
        assert stage_interp(g0, g1, 0.5) == pytest.approx([2.0, 1.0])
        assert stage_derivative(g0, g1, 0.5) == pytest.approx([4.0, -4.0])

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            stage_interp(0.0, 1.0, 1.5)
        with pytest.raises(ValueError):
            stage_derivative(0.0, 1.0, 0.0)


class TestTraceType:
    def test_column_count_enforced(self):
        grid = TimeGrid(0.0, 1.0, 3)
        with pytest.raises(ValueError):
            InterfaceTrace(grid=grid, values=np.zeros((1, 3)))

    def test_final_column(self):
        grid = TimeGrid(0.0, 1.0, 2)
        tr = InterfaceTrace(grid=grid, values=np.array([[1.0, 2.0, 5.0]]))
        assert tr.final_column == pytest.approx([5.0])
