"""Filter weight functions for spectral sum acceleration.

A filter multiplies the n-th coefficient of a truncated spectral sum by a
weight sigma(theta) with sigma(-theta) = sigma(theta).  Three families are
provided:

* Euler: the classical binomial summation weights.  Indexed on
  j/(M+1), so a truncation at degree N uses ``euler_sigma(|n|, N)``.
* Erfc-Log: a compactly supported erfc-based weight with a logarithmic
  correction and a spatially varying order p.
* HDAF: a truncated-exponential-series weight with an x-adaptive
  truncation depth (fixed shape parameters alpha = 1, kappa = 1/15).

Argument conventions differ on purpose: Euler weights take the integer
index j directly (arguments j/(M+1)); Erfc-Log and HDAF take
theta = n/N.  Both conventions appear in the literature and they are not
interchangeable; this module pins one behavior for each family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_TWO_PI = 2.0 * math.pi

#: Largest erfc argument worth evaluating; beyond it the weight is exactly
#: 0 or 1 in double precision.
_ERFC_ARG_CLAMP = 40.0

#: HDAF truncation-depth divisor (Tanner's kappa = 1/15).
_HDAF_DEPTH_DIVISOR = 15.0

VALID_KINDS = ("identity", "euler", "erfclog", "hdaf")


@dataclass(frozen=True)
class FilterSpec:
    """Selects a filter family and its free parameters.

    ``order`` fixes the Erfc-Log order p; leave it ``None`` to use the
    adaptive rule p = 1 + N*d/(2*pi) with d the distance to the real
    singularity.  HDAF and Euler have no free parameters.
    """

    kind: str = "identity"
    order: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in VALID_KINDS:
            raise ValueError(
                f"unknown filter kind {self.kind!r}; expected one of {VALID_KINDS}"
            )
        if self.order is not None and self.order <= 0:
            raise ValueError("filter order must be positive")


def euler_mu(M: int, k: int) -> float:
    """Euler partial-sum weight M!/(2^M k!(M-k)!).

    Computed by the multiplicative recurrence
    mu(M, k+1) = mu(M, k)*(M-k)/(k+1) from mu(M, 0) = 2^-M, which stays
    overflow-free and ~1e-13 accurate for M up to at least 1000.
    """
    if not 0 <= k <= M:
        raise ValueError(f"k={k} outside [0, M={M}]")
    return float(_euler_mu_row(M)[k])


@lru_cache(maxsize=256)
def _euler_mu_row(M: int) -> np.ndarray:
    if M < 0:
        raise ValueError("M must be >= 0")
    mu = np.empty(M + 1)
    mu[0] = 0.5**M
    for k in range(M):
        mu[k + 1] = mu[k] * (M - k) / (k + 1)
    mu.flags.writeable = False
    return mu


@lru_cache(maxsize=256)
def _euler_sigma_table(M: int) -> np.ndarray:
    """sigma_E at arguments j/(M+1) for j = 0..M+1."""
    mu = _euler_mu_row(M)
    sigma = np.zeros(M + 2)
    sigma[0] = 1.0
    # backward cumulative sum keeps each row-tail a plain ordered sum
    acc = 0.0
    for j in range(M, 0, -1):
        acc += mu[j]
        sigma[j] = acc
    sigma[M + 1] = 0.0
    sigma.flags.writeable = False
    return sigma


def euler_sigma(j: int, M: int) -> float:
    """Euler filter weight sigma_E(j/(M+1)): 1 at j=0, 0 at j=M+1."""
    if not 0 <= j <= M + 1:
        raise ValueError(f"j={j} outside [0, M+1={M + 1}]")
    return float(_euler_sigma_table(M)[j])


def erfclog_sigma(theta: float, p: float) -> float:
    """Erfc-Log filter weight at theta in [-1, 1] with order p > 0.

    With tb = |theta| - 1/2 the weight is
    erfc(2*sqrt(p)*tb*L(tb))/2 where L(tb) = sqrt(-log(1-4 tb^2)/(4 tb^2)),
    continued by its limit L = 1 at tb = 0.  Exactly 1 at theta = 0 and
    exactly 0 at |theta| = 1.
    """
    if p <= 0:
        raise ValueError("order p must be positive")
    at = abs(theta)
    if at > 1.0:
        raise ValueError(f"|theta|={at} > 1")
    if at == 0.0:
        return 1.0
    if at == 1.0:
        return 0.0
    tb = at - 0.5
    if abs(tb) < 1e-14:
        log_factor = 1.0
    else:
        log_factor = math.sqrt(-math.log1p(-4.0 * tb * tb) / (4.0 * tb * tb))
    arg = 2.0 * math.sqrt(p) * tb * log_factor
    if arg >= _ERFC_ARG_CLAMP:
        return 0.0
    if arg <= -_ERFC_ARG_CLAMP:
        return 1.0
    return 0.5 * math.erfc(arg)


def erfclog_order(x_dist: float, N: int) -> float:
    """Adaptive Erfc-Log order p = 1 + N|x|/(2 pi).

    ``x_dist`` is the caller's distance from the evaluation point to the
    real singularity; at the singularity the order degenerates to 1.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    return 1.0 + N * abs(x_dist) / _TWO_PI


def hdaf_sigma(theta: float, N: int, x_dist: float) -> float:
    """HDAF filter weight exp(-s) * sum_{j<=J} s^j/j!.

    s = N*x_dist*theta^2/2 and J = floor(N*x_dist/15).  ``x_dist`` is the
    distance to the nearest real singularity; x_dist = 0 degenerates to
    the identity weight.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if x_dist < 0:
        raise ValueError("x_dist must be nonnegative")
    s = N * x_dist * theta * theta / 2.0
    depth = int(math.floor(N * x_dist / _HDAF_DEPTH_DIVISOR))
    term = 1.0
    total = 1.0
    for j in range(1, depth + 1):
        term *= s / j
        total += term
    return math.exp(-s) * total


def filter_weights(spec: FilterSpec, N: int, x_dist: float = 0.0) -> np.ndarray:
    """Weight table sigma(|n|) for |n| = 0..N at truncation degree N.

    ``x_dist`` feeds the adaptive order of Erfc-Log and the truncation
    depth of HDAF; Euler and identity ignore it.  All weights are
    functions of |n|, so sigma(-theta) = sigma(theta) holds exactly.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    if spec.kind == "identity":
        return np.ones(N + 1)
    if spec.kind == "euler":
        return _euler_sigma_table(N)[: N + 1].copy()
    if N == 0:
        return np.ones(1)
    w = np.empty(N + 1)
    if spec.kind == "erfclog":
        p = spec.order if spec.order is not None else erfclog_order(x_dist, N)
        for n in range(N + 1):
            w[n] = erfclog_sigma(n / N, p)
    else:  # hdaf
        for n in range(N + 1):
            w[n] = hdaf_sigma(n / N, N, abs(x_dist))
    return w
