import numpy as np
import pytest

from fsrecon.grid import (
    AreaLabel,
    ImageGrid,
    SamplingMask,
    build_block_context,
    generate_mask,
)


class TestGenerateMask:
    def test_zero_density(self):
        mask = generate_mask(8, 8, 0.0, 123)
        assert np.count_nonzero(mask.flags) == 0

    def test_full_density(self):
        mask = generate_mask(8, 8, 1.0, 5)
        assert np.count_nonzero(mask.flags) == 64

    def test_exact_count_and_determinism(self):
        m1 = generate_mask(100, 100, 0.2, 7)
        m2 = generate_mask(100, 100, 0.2, 7)
        assert np.count_nonzero(m1.flags) == 2000
        assert np.array_equal(m1.flags, m2.flags)

    def test_different_seeds_differ(self):
        m1 = generate_mask(100, 100, 0.2, 7)
        m2 = generate_mask(100, 100, 0.2, 8)
        assert not np.array_equal(m1.flags, m2.flags)

    def test_density_out_of_range(self):
        with pytest.raises(ValueError):
            generate_mask(8, 8, 1.5, 0)

    def test_density_exactness(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            w, h = rng.integers(2, 40, size=2)
            d = rng.uniform(0, 1)
            mask = generate_mask(int(w), int(h), float(d), 0)
            assert abs(mask.density() - d) <= 1.0 / (w * h)


def _blank(h, w):
    return ImageGrid(np.zeros((h, w)))


class TestBuildBlockContext:
    def test_top_left_block_outside_labels(self):
        img = ImageGrid(np.arange(64, dtype=float).reshape(8, 8))
        mask = SamplingMask(np.ones((8, 8), dtype=bool))
        ctx = build_block_context(img, mask, np.zeros((8, 8), bool), np.zeros((8, 8)), (0, 0), 4, 14)
        # window rows/cols -14..17 relative to the image
        assert np.all(ctx.labels[:14, :] == AreaLabel.OUTSIDE)
        assert np.all(ctx.labels[:, :14] == AreaLabel.OUTSIDE)
        assert np.all(ctx.values[ctx.labels == AreaLabel.OUTSIDE] == 0)

    def test_all_known_interior_block(self):
        img = _blank(64, 64)
        mask = SamplingMask(np.ones((64, 64), dtype=bool))
        ctx = build_block_context(img, mask, np.zeros((64, 64), bool), np.zeros((64, 64)), (16, 16), 4, 14)
        assert np.all(ctx.labels == AreaLabel.A)

    def test_all_unknown_first_block(self):
        img = _blank(64, 64)
        mask = SamplingMask(np.zeros((64, 64), dtype=bool))
        ctx = build_block_context(img, mask, np.zeros((64, 64), bool), np.zeros((64, 64)), (16, 16), 4, 14)
        assert np.all(ctx.labels == AreaLabel.B)

    def test_label_partition(self):
        rng = np.random.default_rng(3)
        img = ImageGrid(rng.uniform(0, 255, (20, 20)))
        mask = SamplingMask(rng.random((20, 20)) < 0.5)
        recon = ~mask.flags & (rng.random((20, 20)) < 0.3)
        ctx = build_block_context(img, mask, recon, np.zeros((20, 20)), (8, 8), 4, 6)
        counts = sum(np.count_nonzero(ctx.labels == lab) for lab in AreaLabel)
        assert counts == ctx.M * ctx.N

    def test_values_come_from_the_right_buffer(self):
        rng = np.random.default_rng(4)
        img = ImageGrid(rng.uniform(0, 255, (20, 20)))
        mask = SamplingMask(rng.random((20, 20)) < 0.4)
        recon = ~mask.flags
        recon_vals = rng.uniform(0, 255, (20, 20))
        ctx = build_block_context(img, mask, recon, recon_vals, (8, 8), 4, 2)
        for m in range(ctx.M):
            for n in range(ctx.N):
                r, c = 8 - 2 + m, 8 - 2 + n
                if ctx.labels[m, n] == AreaLabel.A:
                    assert ctx.values[m, n] == img.samples[r, c]
                elif ctx.labels[m, n] == AreaLabel.R:
                    assert ctx.values[m, n] == recon_vals[r, c]
                else:
                    assert ctx.values[m, n] == 0.0

    def test_dimension_mismatch(self):
        img = _blank(8, 8)
        mask = SamplingMask(np.ones((9, 8), dtype=bool))
        with pytest.raises(ValueError):
            build_block_context(img, mask, np.zeros((8, 8), bool), np.zeros((8, 8)), (0, 0), 4, 2)
