from __future__ import annotations

import numpy as np
import pytest
from nbubble.errors import OverflowNumericalError
from nbubble.radial import NONLINEARITY, Nonlinearity


class TestNonlinearity:
    def test_values(self) -> None:
        assert float(NONLINEARITY.f(0.0)) == 0.0
        assert float(NONLINEARITY.F(0.0)) == 0.0
        assert float(NONLINEARITY.df(0.0)) == 0.0
        assert float(NONLINEARITY.f(1.0)) == pytest.approx(np.e - 1.0)
        assert float(NONLINEARITY.F(1.0)) == pytest.approx(0.5 * (np.e - 2.0))

    def test_primitive(self) -> None:
        w = np.linspace(-2.0, 2.0, 41)
        h = 1e-6
        slope = (NONLINEARITY.F(w + h) - NONLINEARITY.F(w - h)) / (2 * h)
        assert np.allclose(slope, NONLINEARITY.f(w), rtol=1e-6, atol=1e-8)
        slope = (NONLINEARITY.f(w + h) - NONLINEARITY.f(w - h)) / (2 * h)
        assert np.allclose(slope, NONLINEARITY.df(w), rtol=1e-6, atol=1e-8)

    def test_small_w_accuracy(self) -> None:
        # f(w) ~ w^3 and F(w) ~ w^4 / 4 without cancellation
        assert float(NONLINEARITY.f(1e-6)) == pytest.approx(1e-18, rel=1e-9)
        assert float(NONLINEARITY.F(1e-4)) == pytest.approx(0.25e-16, rel=1e-6)

    def test_nehari_integrand(self) -> None:
        w = np.array([-1.5, 0.3, 2.0])
        assert np.allclose(NONLINEARITY.wf(w), w * NONLINEARITY.f(w))

    def test_f_odd_and_superlinear(self) -> None:
        w = np.linspace(0.1, 3.0, 30)
        assert np.allclose(NONLINEARITY.f(-w), -NONLINEARITY.f(w))
        assert np.all(np.diff(NONLINEARITY.f(w) / w) > 0)

    def test_check(self) -> None:
        NONLINEARITY.check([0.0, 25.9, -26.0])
        NONLINEARITY.check([])
        with pytest.raises(OverflowNumericalError) as exc:
            NONLINEARITY.check([1.0, -27.0])
        assert exc.value.value == 27.0
        assert exc.value.exit_code == 1
        with pytest.raises(OverflowNumericalError):
            NONLINEARITY.check(np.nan)

    def test_custom_threshold(self) -> None:
        with pytest.raises(OverflowNumericalError):
            Nonlinearity(overflow_threshold=2.0).check(2.5)
