"""Frequency priors steering the greedy basis selection.

The fixed prior mimics the optical transfer function of a diffraction
limited system and suppresses high spatial frequencies quadratically.
The adaptive prior raises the same base term to an exponent 2*alpha,
where alpha is derived from the effective data density of the window:
dense data flattens the prior, sparse data sharpens it towards low-pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .weighting import FsrParams, PriorKind


@dataclass(frozen=True)
class PriorMap:
    """Per-frequency selection weights on the M x N frequency plane."""

    wf: NDArray[np.float64]
    kind: PriorKind
    alpha: float


def _folded_frequencies(M: int, N: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    k = np.arange(M, dtype=np.float64)
    l = np.arange(N, dtype=np.float64)
    kt = M / 2.0 - np.abs(k - M / 2.0)
    lt = N / 2.0 - np.abs(l - N / 2.0)
    return kt, lt


def _prior_base(M: int, N: int) -> NDArray[np.float64]:
    # 1 - sqrt(2)*sqrt(kt^2/M^2 + lt^2/N^2), clamped at 0
    kt, lt = _folded_frequencies(M, N)
    root = np.sqrt(kt[:, None] ** 2 / M**2 + lt[None, :] ** 2 / N**2)
    return np.maximum(0.0, 1.0 - math.sqrt(2.0) * root)


def otf_prior(k: int, l: int, M: int, N: int) -> float:
    """Fixed low-pass prior at a single frequency index pair."""
    kt = M / 2.0 - abs(k - M / 2.0)
    lt = N / 2.0 - abs(l - N / 2.0)
    base = 1.0 - math.sqrt(2.0) * math.sqrt(kt**2 / M**2 + lt**2 / N**2)
    return max(0.0, base) ** 2


def alpha_of_omega(omega: float, params: FsrParams) -> float:
    """Map effective density to the adaptive-prior exponent, -ln(omega)/tau.

    Clamped to [0, alpha_max]; omega -> 1 flattens the prior (alpha -> 0),
    omega -> 0 drives it towards a pure low-pass (alpha at the clamp).
    """
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"omega must be in [0, 1], got {omega}")
    if omega == 0.0:
        return params.alpha_max
    alpha = -math.log(omega) / params.tau
    return min(max(alpha, 0.0), params.alpha_max)


def adaptive_prior(k: int, l: int, M: int, N: int, alpha: float) -> float:
    """Density-adaptive prior: base ** (2*alpha), with 0**0 == 1."""
    kt = M / 2.0 - abs(k - M / 2.0)
    lt = N / 2.0 - abs(l - N / 2.0)
    base = max(0.0, 1.0 - math.sqrt(2.0) * math.sqrt(kt**2 / M**2 + lt**2 / N**2))
    if alpha == 0.0:
        return 1.0
    return base ** (2.0 * alpha)


def build_prior_map(
    kind: PriorKind, M: int, N: int, omega: float, params: FsrParams
) -> PriorMap:
    if M % 2 != 0 or N % 2 != 0:
        raise ValueError("frequency plane dimensions must be even")
    if kind == PriorKind.NONE:
        return PriorMap(wf=np.ones((M, N)), kind=kind, alpha=1.0)
    base = _prior_base(M, N)
    if kind == PriorKind.OTF:
        # float exponent keeps the map bit-identical to ADAPTIVE at alpha=1
        return PriorMap(wf=base**2.0, kind=kind, alpha=1.0)
    alpha = alpha_of_omega(omega, params)
    if alpha == 0.0:
        wf = np.ones((M, N))
    else:
        wf = base ** (2.0 * alpha)
    return PriorMap(wf=wf, kind=kind, alpha=alpha)
