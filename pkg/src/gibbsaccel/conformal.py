"""Power-series re-summation through a Möbius map.

The engine behind the acceleration: a one-sided sum S = sum a_n is
inflated to a power series in a dummy variable z (its "Abel extension"),
z is replaced by an analytic map z = Z(w) with Z(0) = 0 and Z(1) = 1, the
composite is re-expanded in powers of w, and the w partial sum is
evaluated at w = 1.  Because Z has no constant term, the first N
re-expanded coefficients depend only on the first N original ones.

With the map w/(2 - w) this procedure reproduces the classical Euler
summation weights exactly; ``euler_equivalence_check`` measures the
difference between the two pipelines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .filters import _euler_sigma_table
from .series import FourierSeries, compensated_complex_sum

#: Default relative noise floor for radius estimation; re-expanded
#: coefficients below this fraction of the largest one are double-precision
#: roundoff rather than signal.
RADIUS_NOISE_FLOOR = 1e-13


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series sum_{n<=N} a_n z^n with immutable coefficients."""

    coeffs: tuple[complex, ...]
    radius_hint: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if len(self.coeffs) == 0:
            raise ValueError("need at least the constant coefficient")
        if not all(np.isfinite([c.real, c.imag]).all() for c in self.coeffs):
            raise ValueError("coefficients must be finite")

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class MobiusMap:
    """The rational map z = (c-1)*w/(c - w), singular at w = c.

    Maps 0 -> 0 and 1 -> 1 for any c > 1.  c = 2 sends a singularity of
    the original series at z = -1 to infinity (the classical Euler map);
    c = 3 balances it against the image of z = infinity so both land on
    |w| = 3.
    """

    c: float = 2.0

    def __post_init__(self) -> None:
        if self.c <= 1.0:
            raise ValueError("map parameter c must exceed 1")

    def forward(self, w: complex) -> complex:
        """z as a function of w; w = c is the pole of the map."""
        if w == self.c:
            raise ZeroDivisionError(f"map pole at w = {self.c}")
        return (self.c - 1.0) * w / (self.c - w)

    def inverse(self, z: complex) -> complex:
        if z == -(self.c - 1.0):
            raise ZeroDivisionError("inverse map pole")
        return self.c * z / (self.c - 1.0 + z)

    def series_coeffs(self, K: int) -> np.ndarray:
        """First K+1 Taylor coefficients of the map at 0 (geometric, exact)."""
        out = np.zeros(K + 1)
        scale = (self.c - 1.0) / self.c
        for k in range(1, K + 1):
            out[k] = scale
            scale /= self.c
        return out


MOBIUS2 = MobiusMap(2.0)


def mobius_forward(w: complex) -> complex:
    """The classical map w/(2 - w); inverse is w = 2z/(1 + z)."""
    return MOBIUS2.forward(w)


def recoefficient(series: PowerSeries, mapping: MobiusMap, N: int) -> PowerSeries:
    """Re-expand sum a_n Z(w)^n as sum b_m w^m through order w^N.

    Maintains the truncated powers of Z(w) with one truncated polynomial
    multiply per input term (O(N^2) arithmetic).  b_0 = a_0, and the
    output prefix never changes when more input terms become available.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    if N > series.n_max:
        raise ValueError(f"N={N} exceeds available coefficients {series.n_max}")
    zc = mapping.series_coeffs(N)
    a = series.coeffs
    b = np.zeros(N + 1, dtype=complex)
    b[0] = a[0]
    power = np.zeros(N + 1, dtype=complex)
    power[0] = 1.0
    for n in range(1, N + 1):
        # power <- power * zc, truncated at degree N; zc[0] = 0 so the
        # product gains a factor of w and dies after n > N steps
        updated = np.zeros(N + 1, dtype=complex)
        for m in range(N - 1, -1, -1):
            if power[m] != 0:
                updated[m + 1 : N + 1] += power[m] * zc[1 : N + 1 - m]
        power = updated
        if a[n] != 0:
            b += a[n] * power
    return PowerSeries(tuple(b), radius_hint=series.radius_hint)


def accelerate_sum(series: PowerSeries, mapping: MobiusMap, N: int) -> complex:
    """Partial sum of the re-expanded series at w = 1 through order N."""
    return compensated_complex_sum(recoefficient(series, mapping, N).coeffs)


def euler_equivalence_check(series: PowerSeries, N: int) -> float:
    """|map-accelerated sum - Euler-weighted sum| for the same input.

    The two pipelines are mathematically identical; the returned residual
    is pure floating-point noise, bounded by ~1e-12 times sum |a_n|.
    """
    accelerated = accelerate_sum(series, MOBIUS2, N)
    sigma = _euler_sigma_table(N)
    weighted = compensated_complex_sum(
        sigma[n] * series.coeffs[n] for n in range(N + 1)
    )
    return abs(accelerated - weighted)


def abel_extend_eval(
    series: FourierSeries, x: float, z: complex, rel_tol: float = 1e-15
) -> complex:
    """Evaluate the inflated series sum c_n z^|n| exp(inx) inside |z| <= 1.

    The positive- and negative-index halves are summed separately; each
    half stops when its term magnitude falls below ``rel_tol`` of the
    running sum, or at the series' n_max (which acts as the summability
    cap on the boundary |z| = 1).
    """
    if abs(z) > 1.0 + 1e-15:
        raise ValueError(f"|z|={abs(z)} > 1: inflated series diverges")
    total = complex(series.coeff(0))
    for direction in (+1, -1):
        ratio = z * np.exp(direction * 1j * x)
        zpow = 1.0 + 0j
        terms = []
        running = abs(total)
        for n in range(1, series.n_max + 1):
            zpow *= ratio
            term = complex(series.coeff(direction * n)) * zpow
            terms.append(term)
            running += abs(term)
            if abs(term) < rel_tol * max(running, 1e-300):
                break
        total += compensated_complex_sum(terms)
    return total


def estimate_radius(
    series: PowerSeries, noise_floor_rel: float | None = RADIUS_NOISE_FLOOR
) -> float:
    """Root-test estimate of the radius of convergence.

    Approximates 1/limsup |b_n|^(1/n) by the median of |b_n|^(-1/n) over
    the last third of the usable coefficients.  ``noise_floor_rel``
    discards trailing coefficients smaller than that fraction of the
    largest one -- in double precision, re-expanded coefficients below
    roughly 1e-13 of the peak are roundoff; pass ``None`` to keep every
    nonzero coefficient (e.g. for exact closed-form inputs).
    """
    mag = np.abs(np.asarray(series.coeffs))
    nonzero = np.nonzero(mag > 0.0)[0]
    nonzero = nonzero[nonzero >= 1]
    if len(nonzero) < 16:
        raise ValueError("need at least 16 nonzero coefficients")
    if noise_floor_rel is not None:
        floor = noise_floor_rel * mag.max()
        usable = np.nonzero(mag > floor)[0]
        usable = usable[usable >= 1]
        if len(usable) == 0:
            raise ValueError("all coefficients below the noise floor")
        nonzero = nonzero[nonzero <= usable[-1]]
        if len(nonzero) == 0:
            raise ValueError("no usable coefficients for the root test")
    tail = nonzero[len(nonzero) - max(1, len(nonzero) // 3) :]
    estimates = mag[tail] ** (-1.0 / tail)
    return float(np.median(estimates))
