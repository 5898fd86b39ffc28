"""Admissible experiment construction and end-to-end bound checks.

For a step ``delta <= delta0`` the level is ``l = ceil(b0 / delta)``, the
simplex ``Q`` has diameter ``delta * l / 2`` and the centers are the equally
spaced points of degree ``l - 1`` on ``Q``. A kernel-combination test
function is interpolated there and its measured sup error on a finer probe
grid is compared against the improved and the classical bounds.
"""
from __future__ import annotations

import json
import logging
import math
import time
import warnings
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import constants as K
from .errors import AdmissibilityError, ConditioningError, ConfigError, GeometryError
from .interpolation import (
    GaussianKernel,
    KernelCombination,
    fit_interpolant,
    native_norm,
    sup_error_on_grid,
)
from .simplex import (
    CenterGrid,
    Simplex,
    build_simplex,
    equally_spaced_grid,
    random_points_in_simplex,
    regular_simplex,
)

log = logging.getLogger(__name__)

_LN10 = math.log(10.0)
# slack for b0/delta landing a hair above an integer through rounding
_WINDOW_RTOL = 1e-12


class LowLevelWarning(UserWarning):
    """``l`` is below the level the proof of the bound assumes."""


@dataclass
class ExperimentConfig:
    n: int
    beta: float
    b0: float
    delta: float | list
    l: int | None = None
    test_function: dict = field(default_factory=lambda: {"kind": "midpoint"})
    probe_degree: int | None = None
    refine: bool = False
    vertices: list | None = None
    out: str | None = None
    format: str = "csv"
    seed: int = 0
    allow_inadmissible: bool = False
    precision: str = "auto"

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ConfigError(f"n must be a positive integer, got {self.n!r}")
        for name in ("beta", "b0"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and v > 0):
                raise ConfigError(f"{name} must be positive, got {v!r}")
        ds = self.deltas
        if not ds or any(not (isinstance(d, (int, float)) and d > 0) for d in ds):
            raise ConfigError(f"delta must be positive (or a list of positives), got {self.delta!r}")
        if self.l is not None and not (isinstance(self.l, int) and self.l >= 1):
            raise ConfigError("l override must be a positive integer")
        if self.probe_degree is not None and not (
            isinstance(self.probe_degree, int) and self.probe_degree >= 1
        ):
            raise ConfigError("probe_degree must be a positive integer")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.precision not in ("auto", "double"):
            raise ConfigError(f"precision must be auto or double, got {self.precision!r}")
        kind = self.test_function.get("kind")
        if kind not in ("midpoint", "explicit", "random"):
            raise ConfigError(f"unknown test_function kind {kind!r}")

    @property
    def deltas(self) -> list:
        return list(self.delta) if isinstance(self.delta, (list, tuple)) else [self.delta]

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        missing = sorted(k for k in ("n", "beta", "b0", "delta") if k not in data)
        if missing:
            raise ConfigError(f"missing config keys: {', '.join(missing)}")
        return cls(**data)


def load_config(path) -> ExperimentConfig:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return ExperimentConfig.from_dict(data)


@dataclass(frozen=True, eq=False)
class ExperimentPlan:
    n: int
    beta: float
    b0: float
    delta: float
    l: int
    simplex: Simplex
    centers: CenterGrid
    probe: CenterGrid
    constants: K.TheoremConstants
    admissible: bool
    warnings: tuple = ()

    @property
    def diam_q(self) -> float:
        return self.simplex.diameter


def plan_experiment(
    cfg: ExperimentConfig, delta: float | None = None, allow_inadmissible: bool | None = None
) -> ExperimentPlan:
    """Pick ``l``, build ``Q`` and the center/probe grids for one step size.

    Raises
    ------
    AdmissibilityError
        ``delta > delta0`` (unless inadmissible runs are allowed), or an
        ``l`` override outside ``[b0/delta, 2 b0/delta]``.
    GeometryError
        ``l == 1`` (degree-0 center grid) or mismatched user vertices.
    """
    delta = cfg.deltas[0] if delta is None else delta
    allow = cfg.allow_inadmissible if allow_inadmissible is None else allow_inadmissible
    tc = K.theorem_constants(cfg.n, cfg.beta, cfg.b0)
    d0 = tc.delta0.value
    admissible = delta <= d0
    if not admissible and not allow:
        raise AdmissibilityError(
            f"delta={delta!r} exceeds delta0={d0!r} for n={cfg.n}, beta={cfg.beta}, b0={cfg.b0}",
            delta0=d0,
        )
    lo, hi = cfg.b0 / delta, 2.0 * cfg.b0 / delta
    if cfg.l is None:
        l = max(1, math.ceil(lo * (1.0 - _WINDOW_RTOL)))
    else:
        l = cfg.l
        if not (lo * (1.0 - _WINDOW_RTOL) <= l <= hi * (1.0 + _WINDOW_RTOL)):
            raise AdmissibilityError(
                f"l={l} outside the window [{lo:.6g}, {hi:.6g}] for delta={delta!r}", delta0=d0
            )
    if l - 1 < 1:
        raise GeometryError(f"l={l} gives a degree-0 center grid (delta={delta!r}, b0={cfg.b0})")
    diam = delta * l / 2.0
    if cfg.vertices is not None:
        q = build_simplex(cfg.vertices)
        if q.dim != cfg.n:
            raise GeometryError(f"vertices live in R^{q.dim}, config says n={cfg.n}")
        if abs(q.diameter - diam) > 1e-9 * diam:
            raise GeometryError(f"vertex diameter {q.diameter!r} != delta*l/2 = {diam!r}")
    else:
        q = regular_simplex(cfg.n, diam)
    notes = []
    floor = cfg.n - 3 if cfg.n % 2 else cfg.n - 4
    if l < floor:
        msg = f"l={l} below {floor}, the level the bound's derivation assumes for n={cfg.n}"
        warnings.warn(msg, LowLevelWarning, stacklevel=2)
        notes.append(msg)
    probe_deg = cfg.probe_degree or 2 * l
    if cfg.refine:
        probe_deg *= 2
    return ExperimentPlan(
        n=cfg.n,
        beta=cfg.beta,
        b0=cfg.b0,
        delta=delta,
        l=l,
        simplex=q,
        centers=equally_spaced_grid(q, l - 1),
        probe=equally_spaced_grid(q, probe_deg),
        constants=tc,
        admissible=admissible,
        warnings=tuple(notes),
    )


def build_test_function(cfg: ExperimentConfig, plan: ExperimentPlan, run_index: int = 0) -> KernelCombination:
    spec = cfg.test_function
    kernel = GaussianKernel(cfg.beta)
    kind = spec["kind"]
    if kind == "midpoint":
        coef = float(spec.get("coefficient", 1.0))
        return KernelCombination(kernel, plan.simplex.centroid[None, :], [coef])
    if kind == "explicit":
        try:
            return KernelCombination(kernel, spec["sites"], spec["coefficients"])
        except KeyError as exc:
            raise ConfigError(f"explicit test_function needs {exc}") from exc
    count = int(spec.get("count", 3))
    lo, hi = spec.get("coef_range", [-1.0, 1.0])
    rng = np.random.default_rng([cfg.seed, run_index])
    sites = random_points_in_simplex(plan.simplex, count, rng)
    return KernelCombination(kernel, sites, rng.uniform(lo, hi, size=count))


@dataclass
class ExperimentReport:
    n: int
    beta: float
    b0: float
    delta: float
    delta0: float
    l: int
    n_centers: int
    diam_q: float
    cond_2norm: float
    norm_f: float
    sup_error: float
    argmax: list
    bound_value: float
    log10_legacy_bound: float
    margin_ratio: float
    status: str
    precision: str = "double"
    wall_time: float = 0.0
    warnings: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)


def _margin(sup_error: float, bound: float) -> float:
    if math.isnan(bound):
        return math.nan
    if bound == 0.0:
        return 0.0 if sup_error == 0.0 else math.inf
    return sup_error / bound


def run_experiment(plan: ExperimentPlan, f: KernelCombination, precision: str = "auto") -> ExperimentReport:
    """Fit ``f`` at the plan centers and compare the sup error with both bounds."""
    if f.kernel.beta != plan.beta:
        raise ValueError(f"test function beta {f.kernel.beta} != plan beta {plan.beta}")
    t0 = time.perf_counter()
    kernel = GaussianKernel(plan.beta)
    norm_f = native_norm(f)
    if plan.admissible:
        bound = K.bound_value(plan.constants, plan.delta, norm_f)
    else:
        bound = math.nan
    if plan.n <= 30:
        lc = K.legacy_constants(plan.n, plan.beta, plan.b0)
        legacy = K.log_legacy_bound(lc, plan.delta, norm_f) / _LN10
    else:
        legacy = math.nan
    base = dict(
        n=plan.n,
        beta=plan.beta,
        b0=plan.b0,
        delta=plan.delta,
        delta0=plan.constants.delta0.value,
        l=plan.l,
        n_centers=len(plan.centers),
        diam_q=plan.diam_q,
        norm_f=norm_f,
        bound_value=bound,
        log10_legacy_bound=legacy,
        warnings=list(plan.warnings),
    )
    try:
        s = fit_interpolant(kernel, plan.centers.points, f(plan.centers.points), precision=precision)
    except ConditioningError as exc:
        log.warning("solve failed for delta=%r: %s", plan.delta, exc)
        return ExperimentReport(
            **base,
            cond_2norm=exc.condition if exc.condition is not None else math.nan,
            sup_error=math.nan,
            argmax=[],
            margin_ratio=math.nan,
            status="failed-solve",
            wall_time=time.perf_counter() - t0,
        )
    err, where = sup_error_on_grid(f, s, plan.probe)
    return ExperimentReport(
        **base,
        cond_2norm=s.diagnostics.condition_2norm,
        sup_error=err,
        argmax=[float(v) for v in where],
        margin_ratio=_margin(err, bound),
        status="ok" if plan.admissible else "inadmissible",
        precision=s.diagnostics.precision,
        wall_time=time.perf_counter() - t0,
    )


def run_config(cfg: ExperimentConfig) -> list[ExperimentReport]:
    """Run every step size of ``cfg``; reports come back sorted by delta."""
    reports = []
    for i, delta in enumerate(sorted(cfg.deltas)):
        plan = plan_experiment(cfg, delta)
        f = build_test_function(cfg, plan, run_index=i)
        reports.append(run_experiment(plan, f, precision=cfg.precision))
    return sort_reports(reports)


def sort_reports(reports):
    return sorted(reports, key=lambda r: (r.n, r.beta, r.b0, r.delta))
