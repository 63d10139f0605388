import numpy as np
import pytest

from fsrecon.baselines import linear_triangulation_fill, nearest_neighbor_fill
from fsrecon.grid import ImageGrid, SamplingMask, generate_mask


def brute_force_nn(image, mask):
    known = np.argwhere(mask.flags)
    out = image.samples.copy()
    for r in range(image.height):
        for c in range(image.width):
            if mask.flags[r, c]:
                continue
            best = None
            for kr, kc in known:  # known is (row, col) sorted
                d2 = (r - kr) ** 2 + (c - kc) ** 2
                if best is None or d2 < best[0]:
                    best = (d2, kr, kc)
            out[r, c] = image.samples[best[1], best[2]]
    return out


class TestNearestNeighbor:
    def test_single_sample_floods(self):
        img = ImageGrid(np.zeros((6, 6)))
        flags = np.zeros((6, 6), dtype=bool)
        flags[2, 3] = True
        img.samples[2, 3] = 99.0
        out = nearest_neighbor_fill(img, SamplingMask(flags))
        assert np.all(out.samples == 99.0)

    def test_full_mask_identity(self):
        rng = np.random.default_rng(1)
        img = ImageGrid(rng.uniform(0, 255, (6, 6)))
        out = nearest_neighbor_fill(img, SamplingMask(np.ones((6, 6), dtype=bool)))
        np.testing.assert_array_equal(out.samples, img.samples)

    def test_two_corners_bisector(self):
        img = ImageGrid(np.zeros((9, 9)))
        flags = np.zeros((9, 9), dtype=bool)
        flags[0, 0] = flags[8, 8] = True
        img.samples[0, 0], img.samples[8, 8] = 10.0, 20.0
        out = nearest_neighbor_fill(img, SamplingMask(flags))
        np.testing.assert_array_equal(out.samples, brute_force_nn(img, SamplingMask(flags)))

    def test_matches_brute_force_randomized(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            img = ImageGrid(rng.uniform(0, 255, (10, 10)))
            mask = generate_mask(10, 10, 0.2, int(rng.integers(100)))
            if not mask.flags.any():
                continue
            out = nearest_neighbor_fill(img, mask)
            np.testing.assert_array_equal(out.samples, brute_force_nn(img, mask))

    def test_empty_mask_raises(self):
        img = ImageGrid(np.zeros((4, 4)))
        with pytest.raises(ValueError):
            nearest_neighbor_fill(img, SamplingMask(np.zeros((4, 4), dtype=bool)))


class TestLinearTriangulation:
    def test_plane_recovery(self):
        h, w = 16, 16
        r, c = np.meshgrid(np.arange(h), np.arange(w), indexing="ij")
        img = ImageGrid(1.5 * r + 0.25 * c + 3.0)
        mask = generate_mask(w, h, 0.3, 4)
        # anchor the corners so the hull covers the whole grid
        flags = mask.flags.copy()
        flags[0, 0] = flags[0, -1] = flags[-1, 0] = flags[-1, -1] = True
        out = linear_triangulation_fill(img, SamplingMask(flags))
        np.testing.assert_allclose(out.samples, img.samples, atol=1e-9)

    def test_full_mask_identity(self):
        rng = np.random.default_rng(3)
        img = ImageGrid(rng.uniform(0, 255, (8, 8)))
        out = linear_triangulation_fill(img, SamplingMask(np.ones((8, 8), dtype=bool)))
        np.testing.assert_array_equal(out.samples, img.samples)

    def test_output_within_known_range(self):
        rng = np.random.default_rng(5)
        img = ImageGrid(rng.uniform(0, 255, (32, 32)))
        mask = generate_mask(32, 32, 0.3, 6)
        out = linear_triangulation_fill(img, mask)
        known = img.samples[mask.flags]
        assert out.samples.min() >= known.min() - 1e-9
        assert out.samples.max() <= known.max() + 1e-9

    def test_known_samples_preserved(self):
        rng = np.random.default_rng(7)
        img = ImageGrid(rng.uniform(0, 255, (20, 20)))
        mask = generate_mask(20, 20, 0.4, 8)
        out = linear_triangulation_fill(img, mask)
        np.testing.assert_array_equal(out.samples[mask.flags], img.samples[mask.flags])

    def test_collinear_falls_back_to_nn(self):
        img = ImageGrid(np.zeros((8, 8)))
        flags = np.zeros((8, 8), dtype=bool)
        flags[3, 1] = flags[3, 4] = flags[3, 6] = True
        img.samples[3, 1] = img.samples[3, 4] = img.samples[3, 6] = 50.0
        out = linear_triangulation_fill(img, SamplingMask(flags))
        expected = nearest_neighbor_fill(img, SamplingMask(flags))
        np.testing.assert_array_equal(out.samples, expected.samples)

    def test_too_few_samples_falls_back(self):
        img = ImageGrid(np.zeros((8, 8)))
        flags = np.zeros((8, 8), dtype=bool)
        flags[2, 2] = flags[6, 5] = True
        img.samples[2, 2] = img.samples[6, 5] = 25.0
        out = linear_triangulation_fill(img, SamplingMask(flags))
        assert np.all(out.samples == 25.0)
