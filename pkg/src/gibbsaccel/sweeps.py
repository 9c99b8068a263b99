"""Error sweeps, envelope fitting and CSV output.

The experiment harness measures |f(x) - filtered partial sum| over a range
of truncation degrees, extracts the monotone upper hull of the error
sequence (its envelope), and fits the model A * exp(-q*N)/N to it.  The
fitted slope q-hat is the empirical convergence rate to compare against
the prediction from the singularity set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .catalog import FUNCTION_KEYS, TestFunction, get_function
from .filters import FilterSpec
from .rates import acceleration_penalty_region, rho_of_x, zeta_image_modulus, z_image
from .series import pointwise_error, saturation_floor

MIN_ENVELOPE_POINTS = 5


class ConfigError(ValueError):
    """Invalid experiment configuration (unknown key, empty range, ...)."""


class InsufficientDataError(RuntimeError):
    """Not enough unsaturated envelope points to fit a rate."""


@dataclass(frozen=True)
class ErrorRow:
    N: int
    error: float
    saturated: bool


@dataclass
class ErrorTrace:
    """Measured errors for one (x, filter) pair, plus the envelope fit.

    ``envelope`` indexes the rows on the monotone upper hull of
    log(error) vs N; ``fit`` is (A, q_hat) for the model A*exp(-q*N)/N,
    or None before fitting.  Saturated rows (error below the double
    precision floor) never enter the envelope or the fit.
    """

    x: float
    filter_kind: str
    rows: list[ErrorRow] = field(default_factory=list)
    envelope: list[int] = field(default_factory=list)
    fit: tuple[float, float] | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    """A sweep request: function, filters, evaluation points, N range."""

    function_key: str
    filters: tuple[str, ...] = ("euler",)
    xs: tuple[float, ...] = ()
    n_min: int = 2
    n_max: int = 60
    n_stride: int = 1
    p: float | None = None
    phi: float | None = None
    saturation_scale: float = 100.0

    def degrees(self) -> list[int]:
        return list(range(self.n_min, self.n_max + 1, self.n_stride))

    def resolve_function(self) -> TestFunction:
        if self.function_key not in FUNCTION_KEYS:
            raise ConfigError(f"unknown function key {self.function_key!r}")
        return get_function(self.function_key, p=self.p, phi=self.phi)

    def validate(self) -> None:
        if not self.degrees():
            raise ConfigError("empty truncation-degree range")
        if self.n_stride < 1:
            raise ConfigError("stride must be >= 1")
        for kind in self.filters:
            FilterSpec(kind)  # raises on unknown kinds
        fn = self.resolve_function()
        sings = fn.series.singularities
        for x in self.xs:
            if sings is not None and sings.real_distance(x) == 0.0:
                raise ConfigError(f"x={x} sits on the real singularity")


def sweep_errors(config: ExperimentConfig) -> list[ErrorTrace]:
    """Measure pointwise errors for every (x, filter) pair in the config.

    Rows are produced in ascending N for each trace and traces in the
    order (x outer, filter inner), so identical configs give identical
    output.  Each trace is envelope-fitted when possible; traces whose
    errors are entirely saturated keep ``fit = None``.
    """
    config.validate()
    fn = config.resolve_function()
    traces = []
    for x in config.xs:
        for kind in config.filters:
            spec = FilterSpec(kind)
            trace = ErrorTrace(x=x, filter_kind=kind)
            for N in config.degrees():
                err = pointwise_error(fn.series, x, N, spec)
                floor = saturation_floor(fn.series, N, config.saturation_scale)
                trace.rows.append(ErrorRow(N, err, err < floor))
            try:
                fit_envelope(trace)
            except InsufficientDataError:
                pass
            traces.append(trace)
    return traces


def fit_envelope(trace: ErrorTrace) -> tuple[float, float]:
    """Fit A*exp(-q*N)/N to the upper hull of the error sequence.

    The envelope is the monotone-decreasing upper hull of log(error) vs
    N, found in a single backward pass over the unsaturated rows.  The
    slope comes from ordinary least squares on (N, log error + log N);
    the prefactor is then raised until the model bounds every envelope
    point, making A*exp(-q*N)/N a tight upper envelope of the whole
    trace.  Stores the result on the trace and returns (A, q_hat).
    """
    usable = [
        (i, r) for i, r in enumerate(trace.rows) if not r.saturated and r.error > 0.0
    ]
    hull: list[tuple[int, ErrorRow]] = []
    best = -math.inf
    for i, row in reversed(usable):
        logerr = math.log(row.error)
        if logerr >= best:
            best = logerr
            hull.append((i, row))
    hull.reverse()
    if len(hull) < MIN_ENVELOPE_POINTS:
        raise InsufficientDataError(
            f"only {len(hull)} unsaturated envelope points; need "
            f"{MIN_ENVELOPE_POINTS}"
        )
    ns = np.array([row.N for _, row in hull], dtype=float)
    ys = np.array([math.log(row.error) + math.log(row.N) for _, row in hull])
    slope, intercept = np.polyfit(ns, ys, 1)
    q_hat = -float(slope)
    # anchor the prefactor so the model bounds every envelope point
    log_a = max(ys + q_hat * ns)
    amplitude = math.exp(log_a)
    trace.envelope = [i for i, _ in hull]
    trace.fit = (amplitude, q_hat)
    return amplitude, q_hat


def _fmt(value: float) -> str:
    """Shortest round-trip decimal for CSV output."""
    return repr(float(value))


def render_csv(comments: list[str], header: list[str], rows: list[list]) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    for row in rows:
        lines.append(
            ",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row)
        )
    return "\n".join(lines) + "\n"


def sweep_csv(config: ExperimentConfig, traces: list[ErrorTrace]) -> str:
    comments = [
        f"fn={config.function_key}",
        f"n_min={config.n_min} n_max={config.n_max} stride={config.n_stride}",
    ]
    if config.p is not None:
        comments.append(f"p={_fmt(config.p)}")
    if config.phi is not None:
        comments.append(f"phi={_fmt(config.phi)}")
    for t in traces:
        comments.append(f"trace x={_fmt(t.x)} filter={t.filter_kind}")
        if t.fit is not None:
            comments.append(
                f"fit x={_fmt(t.x)} filter={t.filter_kind} "
                f"A={_fmt(t.fit[0])} q_hat={_fmt(t.fit[1])}"
            )
    header = ["x", "filter", "N", "error", "saturated"]
    rows = []
    for t in traces:
        for r in t.rows:
            rows.append([t.x, t.filter_kind, r.N, r.error, int(r.saturated)])
    return render_csv(comments, header, rows)


def rho_curve(
    function_key: str,
    resolution: int,
    p: float | None = None,
    phi: float | None = None,
) -> str:
    """CSV of the predicted convergence factor over a uniform x grid.

    Columns: x, rho, then the image modulus of each declared singularity
    (the real one first when present), and a penalty flag when off-axis
    singularities exist.
    """
    if resolution < 2:
        raise ConfigError("resolution must be >= 2")
    if function_key not in FUNCTION_KEYS:
        raise ConfigError(f"unknown function key {function_key!r}")
    fn = get_function(function_key, p=p, phi=phi)
    sings = fn.series.singularities
    if sings is None:
        raise ConfigError(f"{function_key} declares no singularity set")
    header = ["x", "rho"]
    if sings.real_singularity is not None:
        header.append("zeta_real")
    header += [f"zeta_off{j}" for j in range(len(sings.off_axis))]
    penalties = None
    if sings.off_axis:
        header.append("penalty")
        penalties = acceleration_penalty_region(sings, resolution)
    rows = []
    for i in range(resolution):
        x = -math.pi + 2.0 * math.pi * i / (resolution - 1)
        pred = rho_of_x(sings, x)
        row: list = [x, pred.rho]
        if sings.real_singularity is not None:
            row.append(zeta_image_modulus(1.0, sings.real_distance(x)))
        for s in sings.off_axis:
            r, theta = z_image((s.sigma, s.tau), x)
            row.append(zeta_image_modulus(r, theta))
        if penalties is not None:
            row.append(int(penalties[i].flagged))
        rows.append(row)
    comments = [f"fn={function_key}", f"resolution={resolution}"]
    if p is not None:
        comments.append(f"p={_fmt(p)}")
    if phi is not None:
        comments.append(f"phi={_fmt(phi)}")
    return render_csv(comments, header, rows)


def compare_filters(config: ExperimentConfig) -> str:
    """Run every configured filter at one x; one error column per filter.

    Fitted rates are recorded in trailing comment lines, one per filter
    (fit failures are recorded as empty)."""
    if len(config.xs) != 1:
        raise ConfigError("filter comparison wants exactly one x")
    traces = sweep_errors(config)
    header = ["N"] + [f"err_{t.filter_kind}" for t in traces]
    rows: list[list] = []
    for k, N in enumerate(config.degrees()):
        rows.append([N] + [t.rows[k].error for t in traces])
    comments = [
        f"fn={config.function_key}",
        f"x={_fmt(config.xs[0])}",
        f"n_min={config.n_min} n_max={config.n_max} stride={config.n_stride}",
    ]
    if config.p is not None:
        comments.append(f"p={_fmt(config.p)}")
    for t in traces:
        if t.fit is not None:
            comments.append(
                f"fit filter={t.filter_kind} A={_fmt(t.fit[0])} "
                f"q_hat={_fmt(t.fit[1])}"
            )
        else:
            comments.append(f"fit filter={t.filter_kind} A= q_hat=")
    return render_csv(comments, header, rows)


def parse_sweep_csv(text: str) -> tuple[dict, list[ErrorTrace]]:
    """Read back a sweep CSV: config echo from comments, rows into traces."""
    meta: dict = {}
    traces: dict[tuple[float, str], ErrorTrace] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            for token in body.split():
                if "=" in token:
                    key, _, value = token.partition("=")
                    if body.startswith("fn=") and key == "fn":
                        meta["fn"] = value
                    elif key in ("p", "phi") and not body.startswith(("trace", "fit")):
                        meta[key] = float(value)
            continue
        if line.startswith("x,"):
            continue
        x_s, kind, n_s, err_s, sat_s = line.split(",")
        key = (float(x_s), kind)
        if key not in traces:
            traces[key] = ErrorTrace(x=float(x_s), filter_kind=kind)
        traces[key].rows.append(ErrorRow(int(n_s), float(err_s), bool(int(sat_s))))
    return meta, list(traces.values())
