"""
Kernel sign and size bounds on W x V, across scales, and for the single-scale images.
"""

import math

import numpy as np
import pytest

from domains.geometry.quadrature import QuadratureGrid
from domains.kernel.bounds import kernel_bound_scan
from domains.kernel.clf import patch_image
from domains.patches.patches import PatchKind, evaluation_grid, make_patch

pytestmark = pytest.mark.service

N_SAMPLES = 2000
KERNEL_FLOOR = 0.003
IMAGE_FLOOR = 4e-6
PATCH_GRID = QuadratureGrid(n_r=32, n_t1=16, n_t2=16)


def _pair(alpha_w, alpha_v, gammas):
    return make_patch(PatchKind.SOURCE, alpha_w, gammas), make_patch(PatchKind.TARGET, alpha_v, gammas)


@pytest.mark.parametrize("alpha", [1e-2, 1e-3, 1e-4, 1e-30])
def test_same_scale_bounds(alpha, E23, gammas23):
    report = kernel_bound_scan(*_pair(alpha, alpha, gammas23), N_SAMPLES, seed=1, E=E23)
    assert report.all_positive
    assert report.window_ok
    assert not report.literal_window_ok
    assert report.min_neg_re_scaled >= KERNEL_FLOOR
    assert report.min_neg_im_over_alpha >= (2.0 * E23.m2 / math.pi) * 0.9
    assert report.sample_count == N_SAMPLES + 3 * int(N_SAMPLES * 0.1 / 3)


def test_scaled_lower_bound_does_not_depend_on_alpha(E23, gammas23):
    lower = [
        kernel_bound_scan(*_pair(a, a, gammas23), N_SAMPLES, seed=2, E=E23).min_neg_re_scaled for a in (1e-2, 1e-4)
    ]
    assert max(lower) / min(lower) <= 2.0


@pytest.mark.parametrize("alpha_w,alpha_v", [(1e-2, 1e-3), (1e-3, 1e-2)])
def test_cross_scale_sign(alpha_w, alpha_v, E23, gammas23):
    report = kernel_bound_scan(*_pair(alpha_w, alpha_v, gammas23), N_SAMPLES, seed=3, E=E23)
    assert report.all_positive
    assert report.alpha_scale == pytest.approx(0.5 * (alpha_w + alpha_v))


def test_inflated_band_breaks_the_bounds(E23, gammas23):
    report = kernel_bound_scan(*_pair(1e-3, 1e-3, gammas23.inflated(100.0)), N_SAMPLES, seed=4, E=E23)
    assert not (report.all_positive and report.window_ok)


@pytest.mark.parametrize("alpha", [1e-2, 1e-3, 1e-5])
def test_single_scale_image_has_negative_real_part_on_V(alpha, E23, gammas23):
    W, V = _pair(alpha, alpha, gammas23)
    H = patch_image(W, evaluation_grid(V, 5, E23), PATCH_GRID, E23)
    assert H.shape == (125,)
    assert np.all(-H.real >= IMAGE_FLOOR)


def test_image_constant_is_scale_free(E23, gammas23):
    minima = []
    for alpha in (1e-2, 1e-4):
        W, V = _pair(alpha, alpha, gammas23)
        minima.append(float(np.min(-patch_image(W, evaluation_grid(V, 5, E23), PATCH_GRID, E23).real)))
    assert max(minima) / min(minima) <= 2.0
