"""Two-sided Fourier series and their raw / filtered partial sums.

Coefficients are supplied by a generator function (closed form per n)
rather than a stored array, so very large truncation degrees cost nothing
up front.  All sums are accumulated with exactly rounded compensated
summation (``math.fsum`` on the real and imaginary parts), which makes
every result deterministic: identical inputs give bit-identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .filters import FilterSpec, filter_weights
from .rates import SingularitySet, periodic_distance

_SYMMETRY_PROBE = 8  # leading coefficients checked for conjugate symmetry


def compensated_complex_sum(terms) -> complex:
    """Exactly rounded sum of complex terms (componentwise fsum)."""
    terms = list(terms)
    return complex(
        math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms)
    )


@dataclass(frozen=True)
class FourierSeries:
    """A two-sided Fourier series sum c_n exp(inx) with period 2*pi.

    ``coeff`` returns c_n for any integer |n| <= n_max.  ``exact_eval``
    is the optional closed form of the summed function, used as ground
    truth in error measurements.  ``coeff_bound`` declares a constant C
    with |c_n| <= C.  General periods are out of scope; rescale the
    argument to 2*pi first.
    """

    coeff: Callable[[int], complex]
    n_max: int
    exact_eval: Callable[[float], complex] | None = None
    singularities: SingularitySet | None = None
    real_valued: bool = False
    coeff_bound: float | None = None

    def __post_init__(self) -> None:
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if self.real_valued:
            for n in range(min(_SYMMETRY_PROBE, self.n_max) + 1):
                c_pos = complex(self.coeff(n))
                c_neg = complex(self.coeff(-n))
                if abs(c_neg - c_pos.conjugate()) > 1e-13 * (1.0 + abs(c_pos)):
                    raise ValueError(
                        f"real_valued series needs c(-n) == conj(c(n)); "
                        f"violated at n={n}"
                    )
        if self.coeff_bound is not None:
            for n in range(min(_SYMMETRY_PROBE, self.n_max) + 1):
                if abs(complex(self.coeff(n))) > self.coeff_bound * (1 + 1e-12):
                    raise ValueError(f"|c({n})| exceeds declared bound")

    def check_degree(self, N: int) -> None:
        if N < 0:
            raise ValueError("truncation degree must be >= 0")
        if N > self.n_max:
            raise ValueError(
                f"truncation degree {N} exceeds n_max={self.n_max}"
            )

    def real_singularity_distance(self, x: float) -> float:
        """Periodic distance from x to the declared real singularity.

        Falls back to the standard-form convention (singularity at 0)
        when no singularity set is declared; adaptive filters use this
        distance for their spatially varying parameters.
        """
        if self.singularities is not None:
            d = self.singularities.real_distance(x)
            if d is not None:
                return d
        return periodic_distance(x, 0.0)


def partial_sum(series: FourierSeries, x: float, N: int) -> complex:
    """Raw partial sum of c_n exp(inx) over |n| <= N."""
    series.check_degree(N)
    return compensated_complex_sum(
        complex(series.coeff(n)) * np.exp(1j * n * x) for n in range(-N, N + 1)
    )


def filtered_partial_sum(
    series: FourierSeries, x: float, N: int, spec: FilterSpec
) -> complex:
    """Filtered partial sum sum sigma(|n|) c_n exp(inx) over |n| <= N.

    Adaptive filters (Erfc-Log, HDAF) receive the periodic distance from
    x to the series' real singularity; Euler and identity weights depend
    only on |n| and N.
    """
    series.check_degree(N)
    w = filter_weights(spec, N, series.real_singularity_distance(x))
    return compensated_complex_sum(
        w[abs(n)] * complex(series.coeff(n)) * np.exp(1j * n * x)
        for n in range(-N, N + 1)
    )


def pointwise_error(
    series: FourierSeries, x: float, N: int, spec: FilterSpec
) -> float:
    """|f(x) - filtered partial sum| against the closed-form evaluator."""
    if series.exact_eval is None:
        raise ValueError("series has no exact evaluator")
    sings = series.singularities
    if sings is not None and sings.real_distance(x) == 0.0:
        raise ValueError(f"x={x} is a declared real singularity")
    return abs(complex(series.exact_eval(x)) - filtered_partial_sum(series, x, N, spec))


def saturation_floor(series: FourierSeries, N: int, scale: float = 100.0) -> float:
    """Error level below which double precision cannot resolve the sum.

    ``scale`` times machine epsilon times sum of |c_n| over |n| <= N;
    measured errors under this floor are roundoff, not truncation.
    """
    total = math.fsum(abs(complex(series.coeff(n))) for n in range(-N, N + 1))
    return scale * np.finfo(float).eps * total
