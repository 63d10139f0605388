"""Simple reference reconstructions: nearest-neighbor and linear fill."""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import NDArray
from scipy.interpolate import LinearNDInterpolator
from scipy.spatial import QhullError

from .grid import ImageGrid, SamplingMask

log = logging.getLogger(__name__)


def _check_pair(image: ImageGrid, mask: SamplingMask) -> None:
    if (image.height, image.width) != (mask.height, mask.width):
        raise ValueError("image and mask dimensions differ")


def nearest_neighbor_fill(image: ImageGrid, mask: SamplingMask) -> ImageGrid:
    """Fill each unknown pixel with its Euclidean-nearest known sample.

    Exact integer distances; ties go to the smallest (row, col).
    """
    _check_pair(image, mask)
    known_rc = np.argwhere(mask.flags)  # sorted by (row, col)
    if known_rc.shape[0] == 0:
        raise ValueError("mask holds no known samples")
    unknown_rc = np.argwhere(~mask.flags)
    out = image.samples.copy()
    if unknown_rc.shape[0] == 0:
        return ImageGrid(out)

    known_vals = image.samples[known_rc[:, 0], known_rc[:, 1]]
    kr = known_rc[:, 0].astype(np.int64)
    kc = known_rc[:, 1].astype(np.int64)
    # chunked exact squared distances; argmin picks the first (smallest
    # (row, col)) among ties because known_rc is lexicographically sorted
    chunk = max(1, (1 << 22) // known_rc.shape[0])
    for i in range(0, unknown_rc.shape[0], chunk):
        sub = unknown_rc[i : i + chunk].astype(np.int64)
        d2 = (sub[:, :1] - kr[None, :]) ** 2 + (sub[:, 1:] - kc[None, :]) ** 2
        nearest = np.argmin(d2, axis=1)
        out[sub[:, 0], sub[:, 1]] = known_vals[nearest]
    return ImageGrid(out)


def linear_triangulation_fill(image: ImageGrid, mask: SamplingMask) -> ImageGrid:
    """Barycentric-linear interpolation over a Delaunay triangulation.

    Pixels outside the convex hull of the known samples fall back to the
    nearest-neighbor value.  Degenerate sample sets (fewer than three
    points, or all collinear) fall back to nearest-neighbor entirely.
    """
    _check_pair(image, mask)
    known_rc = np.argwhere(mask.flags)
    if known_rc.shape[0] == 0:
        raise ValueError("mask holds no known samples")
    nn = nearest_neighbor_fill(image, mask)
    if known_rc.shape[0] < 3:
        log.warning("fewer than 3 known samples; using nearest-neighbor fill")
        return nn
    known_vals = image.samples[known_rc[:, 0], known_rc[:, 1]]
    try:
        interp = LinearNDInterpolator(known_rc.astype(np.float64), known_vals)
    except QhullError:
        log.warning("degenerate (collinear) samples; using nearest-neighbor fill")
        return nn
    unknown_rc = np.argwhere(~mask.flags)
    out = image.samples.copy()
    if unknown_rc.shape[0]:
        vals = interp(unknown_rc.astype(np.float64))
        outside = np.isnan(vals)
        vals[outside] = nn.samples[unknown_rc[outside, 0], unknown_rc[outside, 1]]
        out[unknown_rc[:, 0], unknown_rc[:, 1]] = vals
    return ImageGrid(out)
