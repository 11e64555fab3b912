from fractions import Fraction

import numpy as np
import pytest

from src.geometry.predicates import incircle, incircle_exact, orient2d, orient2d_exact


def test_orient2d_signs():
    assert orient2d((0, 0), (1, 0), (0, 1)) > 0.0
    assert orient2d((0, 0), (0, 1), (1, 0)) < 0.0
    assert orient2d((0, 0), (1, 1), (2, 2)) == 0.0


def test_orient2d_near_degenerate_matches_exact_sign():
    # points on y = x perturbed by one ulp; the float determinant is unreliable here
    a = (0.5, 0.5)
    b = (12.0, 12.0)
    rng = np.random.default_rng(7)
    for _ in range(200):
        x = float(rng.uniform(0.0, 1.0))
        c = (x, np.nextafter(x, 2.0))
        ax, ay, bx, by, cx, cy = (Fraction(v) for v in (*a, *b, *c))
        det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
        expected = (det > 0) - (det < 0)
        got = orient2d(a, b, c)
        assert (got > 0) - (got < 0) == expected


def test_incircle_signs():
    a, b, c = (0.0, 0.0), (1.0, 0.0), (0.0, 1.0)
    assert incircle(a, b, c, (0.5, 0.5)) > 0.0
    assert incircle(a, b, c, (2.0, 2.0)) < 0.0
    # the fourth corner of the unit square is cocircular
    assert incircle(a, b, c, (1.0, 1.0)) == 0.0


def test_exact_fallbacks_agree_with_filtered_predicates():
    rng = np.random.default_rng(3)
    for _ in range(100):
        p = rng.uniform(-1.0, 1.0, size=(4, 2)).tolist()
        assert np.sign(orient2d(*p[:3])) == np.sign(orient2d_exact(*p[:3]))
        if orient2d(*p[:3]) > 0.0:
            assert np.sign(incircle(*p)) == np.sign(incircle_exact(*p))


@pytest.mark.parametrize("scale", [1e-8, 1.0, 1e8])
def test_cocircular_detection_is_scale_free(scale):
    square = [(0.0, 0.0), (scale, 0.0), (scale, scale), (0.0, scale)]
    assert incircle(square[0], square[1], square[2], square[3]) == 0.0
