"""Predicted pointwise convergence rates from a declared singularity set.

The Euler-accelerated Fourier series of a function f converges at a real
point x like rho(x)^-N, where rho(x) is the distance from the origin to
the nearest singularity of the re-expanded power series.  Each singularity
x_j = sigma_j + i*tau_j of f contributes an image whose modulus is a
closed-form function of x; the map itself contributes a "metric"
singularity that caps rho at 2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

_TWO_PI = 2.0 * math.pi

#: The re-summation map is singular at 2, capping every achievable rate.
METRIC_CAP = 2.0


@dataclass(frozen=True)
class Singularity:
    """One singularity location sigma + i*tau of the summed function."""

    sigma: float
    tau: float


@dataclass(frozen=True)
class SingularitySet:
    """Declared singularities of a 2*pi-periodic function.

    ``real_singularity`` is the location of the (at most one) singularity
    on the real axis in (-pi, pi]; ``None`` declares the function regular
    on the real axis.  Off-axis entries must have tau != 0 and, when
    ``conjugate_pairs`` is set (real-valued functions), occur in complex
    conjugate pairs.
    """

    real_singularity: float | None = None
    off_axis: tuple[Singularity, ...] = field(default=())
    conjugate_pairs: bool = True

    def __post_init__(self) -> None:
        if self.real_singularity is not None and not (
            -math.pi < self.real_singularity <= math.pi
        ):
            raise ValueError("real singularity must lie in (-pi, pi]")
        for s in self.off_axis:
            if s.tau == 0.0:
                raise ValueError("off-axis singularities need tau != 0")
        if self.conjugate_pairs:
            locs = {(s.sigma, s.tau) for s in self.off_axis}
            for s in self.off_axis:
                if (s.sigma, -s.tau) not in locs:
                    raise ValueError(
                        f"missing conjugate partner for ({s.sigma}, {s.tau})"
                    )

    def real_distance(self, x: float) -> float | None:
        """Periodic distance from x to the real singularity (None if regular)."""
        if self.real_singularity is None:
            return None
        return periodic_distance(x, self.real_singularity)


def periodic_distance(x: float, x_s: float) -> float:
    """Distance from x to x_s and its 2*pi copies."""
    d = math.fmod(x - x_s, _TWO_PI)
    if d < 0:
        d += _TWO_PI
    return min(d, _TWO_PI - d)


@dataclass(frozen=True)
class RatePrediction:
    """Pointwise geometric convergence factor rho and rate q = log(rho).

    ``dominating`` names the binding constraint: "metric" for the cap
    introduced by the map, "real" for the on-axis singularity image, or
    the integer index into the off-axis list.  ``at_singularity`` marks
    the degenerate rho = 1 value at the singularity itself, where no
    pointwise acceleration is possible.
    """

    x: float
    rho: float
    q: float
    dominating: str | int
    at_singularity: bool = False


def z_image(sing: tuple[float, float], x: float) -> tuple[float, float]:
    """Image (modulus, angle) in the inflated-series plane of a singularity.

    A singularity at sigma + i*tau of the function maps, for real x, to
    modulus exp(|tau|) at angle sigma - x (tau < 0), x - sigma (tau > 0),
    or to the unit-circle pair at angles +-(x - sigma) (tau = 0); the two
    members of the on-axis pair share the modulus, so a single signed
    angle is returned.
    """
    sigma, tau = sing
    if tau < 0:
        return math.exp(-tau), sigma - x
    if tau > 0:
        return math.exp(tau), x - sigma
    return 1.0, x - sigma


def zeta_image_modulus(r: float, theta: float) -> float:
    """Modulus of the mapped image of a singularity at r*exp(i*theta).

    Returns 2r/sqrt(1 + r^2 + 2r cos(theta)).  The denominator vanishes
    only at r = 1, theta = pi, where the image escapes to infinity; that
    is signalled by returning ``math.inf`` (such an image never limits
    the convergence rate).
    """
    if r < 1.0:
        raise ValueError("singularity modulus r must be >= 1")
    denom_sq = 1.0 + r * r + 2.0 * r * math.cos(theta)
    if denom_sq <= 0.0:
        return math.inf
    return 2.0 * r / math.sqrt(denom_sq)


def rho_of_x(sings: SingularitySet, x: float) -> RatePrediction:
    """Predicted convergence factor at x: the smallest singularity image.

    rho is the unconditional minimum of the metric cap 2 and every
    singularity image modulus; any branch structure (for example the
    crossover of the on-axis image through the cap at |x| = 2*pi/3 when
    no other singularity interferes) emerges from the minimum.
    """
    rho = METRIC_CAP
    which: str | int = "metric"
    at_sing = False
    d = sings.real_distance(x)
    if d is not None:
        image = zeta_image_modulus(1.0, d)
        if d == 0.0:
            at_sing = True
        if image < rho or at_sing:
            rho = image
            which = "real"
    for j, s in enumerate(sings.off_axis):
        r, theta = z_image((s.sigma, s.tau), x)
        image = zeta_image_modulus(r, theta)
        if image < rho:
            rho = image
            which = j
    return RatePrediction(
        x=x, rho=rho, q=math.log(rho), dominating=which, at_singularity=at_sing
    )


def predicted_envelope(
    sings: SingularitySet, x: float, N: int, prefactor: float
) -> float:
    """Predicted error envelope prefactor * exp(-q(x)*N)/N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if prefactor <= 0:
        raise ValueError("prefactor must be positive")
    q = rho_of_x(sings, x).q
    return prefactor * math.exp(-q * N) / N


def delta_truncation_error(x: float, N: int) -> complex:
    """Exact Euler-accelerated truncation error of the periodized delta.

    The accelerated series of sum_n exp(inx) is the re-expansion of
    (1 - w/2) * sum_n ((u+)^n + (u-)^n) w^n - 1 with u+- = (1+exp(+-ix))/2;
    chopping it after the w^N term and evaluating at w = 1 leaves the tail

        u+^N * (exp(ix)/2) / (1 - u+)  +  u-^N * (exp(-ix)/2) / (1 - u-).

    (A frequently quoted two-term form with exponent N+1 and numerator
    u^{N+1} drops the cross term of the (1 - w/2) factor and does not
    reproduce the filtered sum for general N; this one is exact.)
    """
    if periodic_distance(x, 0.0) == 0.0:
        raise ValueError("truncation error is singular at x = 0 (mod 2*pi)")
    err = 0j
    for sign in (1.0, -1.0):
        phase = cmath.exp(sign * 1j * x)
        u = (1.0 + phase) / 2.0
        err += u**N * (phase / 2.0) / (1.0 - u)
    return err


@dataclass(frozen=True)
class PenaltySample:
    """One grid point of an acceleration-penalty scan.

    ``flagged`` marks points where the accelerated factor is below the
    raw geometric factor of the unaccelerated series *because of an
    off-axis singularity image*; slowdowns caused purely by the metric
    cap are not attributed to the declared poles.
    """

    x: float
    rho_euler: float
    rho_raw: float
    flagged: bool


def acceleration_penalty_region(
    sings: SingularitySet, resolution: int
) -> list[PenaltySample]:
    """Scan [-pi, pi] for subintervals where acceleration slows convergence.

    The unaccelerated series of a function whose nearest singularity sits
    a distance tau off the real axis converges with factor exp(min|tau|)
    at every x; the accelerated factor rho(x) can dip below that near the
    real part of the poles.
    """
    if not sings.off_axis:
        raise ValueError("penalty scan needs at least one off-axis singularity")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    rho_raw = math.exp(min(abs(s.tau) for s in sings.off_axis))
    out = []
    for i in range(resolution):
        x = -math.pi + _TWO_PI * i / (resolution - 1)
        pred = rho_of_x(sings, x)
        flagged = pred.rho < rho_raw and isinstance(pred.dominating, int)
        out.append(PenaltySample(x, pred.rho, rho_raw, flagged))
    return out
