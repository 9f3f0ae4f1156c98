"""Grid sweeps that check every property and bound, and the CSV sweep writer.

Work is split into independent tasks (one per (c, n) family, plus a few
global tables).  Tasks may run in a process pool; their records are merged
and sorted before emission so the output never depends on the worker count.
"""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from . import bounds as B
from .errors import IocError, ParameterError
from .family import (
    EvalConfig,
    FamilyParams,
    entropies,
    heun_residual,
    ioc,
    ioc_triple,
    pmf_normalization,
    reduce_negative_c,
)
from .identities import identity_one, identity_one_float, identity_two, identity_two_abs_sum, identity_two_float
from .special import bessel_i0, ioc_binomial_quadrature, legendre_pair

ALL_SUITES = (
    "normalization",
    "oracles",
    "ode",
    "convexity",
    "logconvexity",
    "entropy",
    "bounds",
    "legendre",
    "bessel",
    "identities",
)

INTERIOR_MARGIN = 1e-6
CM_STEP = 1e-3
CM_WINDOW = (0.1, 5.0)
QUADRATURE_MAX_N = 200
QUADRATURE_T_POINTS = 21
BESSEL_IDENTITY_N = (1, 2, 5)
LEGENDRE_T_MAX = 10.0
FLOAT_IDENTITY_MAX_N = 30
EPS = 2.0**-52


@dataclass(frozen=True)
class SweepConfig:
    c_list: tuple[float, ...] = (-1.0, -0.5, 0.0, 0.5, 1.0, 2.0)
    n_list: tuple[float, ...] = (1.0, 2.0, 3.0, 5.0, 10.0, 25.0)
    l_list: tuple[int, ...] = tuple(range(1, 41))
    x_points: int = 41
    x_max: float = 5.0
    suites: tuple[str, ...] = ALL_SUITES
    max_n: int = 120
    tol: float | None = None
    eval: EvalConfig = field(default_factory=EvalConfig)
    workers: int = 1

    def __post_init__(self) -> None:
        unknown = set(self.suites) - set(ALL_SUITES)
        if unknown:
            raise ParameterError(f"unknown suites {sorted(unknown)}; choose from {ALL_SUITES}")
        if self.x_points < 3:
            raise ParameterError("x_points must be at least 3")
        if not self.x_max > 0:
            raise ParameterError("x_max must be positive")
        if self.tol is not None and self.tol < 0:
            raise ParameterError("tol must be non-negative")
        if self.max_n < 0:
            raise ParameterError("max_n must be non-negative")

    @classmethod
    def from_mapping(cls, data: dict[str, Any]) -> SweepConfig:
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ParameterError(f"unknown config keys {sorted(extra)}")
        kwargs: dict[str, Any] = {}
        for key, value in data.items():
            if key == "eval":
                kwargs[key] = EvalConfig(**value)
            elif key in ("c_list", "n_list"):
                kwargs[key] = tuple(float(v) for v in value)
            elif key in ("l_list", "suites"):
                kwargs[key] = tuple(int(v) if key == "l_list" else str(v) for v in value)
            else:
                kwargs[key] = value
        return cls(**kwargs)

    @classmethod
    def from_json(cls, path: str | Path) -> SweepConfig:
        return cls.from_mapping(json.loads(Path(path).read_text(encoding="utf-8")))

    def families(self) -> list[FamilyParams]:
        """Every admissible (c, n) pair, sorted by (c, n)."""
        out: dict[tuple[float, float], FamilyParams] = {}
        for c in self.c_list:
            if c < 0:
                ls = set(self.l_list)
                for n in self.n_list:
                    l_real = -n / c
                    if abs(l_real - round(l_real)) <= 1e-9 * max(1.0, l_real) and round(l_real) >= 1:
                        ls.add(int(round(l_real)))
                for l in ls:
                    p = FamilyParams(c=c, n=-c * l, l=l)
                    out[(p.c, p.n)] = p
            else:
                for n in self.n_list:
                    if n > c:
                        out[(float(c), float(n))] = FamilyParams(c=c, n=n)
        return [out[k] for k in sorted(out)]


def domain_length(params: FamilyParams, x_max: float) -> float:
    return params.domain_end if params.c < 0 else x_max


def interior_grid(params: FamilyParams, x_points: int, x_max: float) -> np.ndarray:
    """Uniform grid strictly inside I_c (clipped to [0, x_max] for c >= 0)."""
    L = domain_length(params, x_max)
    m = INTERIOR_MARGIN * L
    grid = np.linspace(m, L - m, x_points)
    if params.c < 0:
        # a node that misses the midpoint by rounding is replaced by it
        mid = 0.5 * L
        grid[np.abs(grid - mid) <= 4 * math.ulp(mid)] = mid
    return grid


def check_points(params: FamilyParams, x_points: int, x_max: float) -> list[float]:
    """Interior grid plus the analytic endpoints (and the midpoint when c < 0)."""
    pts = {0.0, *map(float, interior_grid(params, x_points, x_max))}
    if params.c < 0:
        L = params.domain_end
        pts.update((L, 0.5 * L))
    return sorted(pts)


class _Recorder:
    """Collects check records.

    The stored ``margin`` is the slack before violation divided by the check's
    scale, so it is comparable across checks; a check passes when
    ``margin >= -tol``.  A global tolerance override replaces every
    non-strict tolerance.
    """

    def __init__(self, override: float | None) -> None:
        self.override = override
        self.records: list[dict[str, Any]] = []

    def add(
        self,
        suite: str,
        check: str,
        c: float | None,
        n: float | None,
        x: float | None,
        observed: float,
        target: float,
        kind: str,
        tol: float,
        scale: float = 1.0,
        strict: bool = False,
    ) -> None:
        if kind == "le":
            slack = target - observed
        elif kind == "ge":
            slack = observed - target
        elif kind == "abs":
            slack = -abs(observed - target)
        else:
            raise ValueError(kind)
        if self.override is not None and not strict:
            tol = self.override
        margin = slack / max(scale, 1e-300)
        ok = bool(margin >= -tol) and math.isfinite(observed) and math.isfinite(target)
        self.records.append(
            {
                "suite": suite,
                "check": check,
                "c": c,
                "n": n,
                "x": x,
                "observed": _finite_or_none(observed),
                "target": _finite_or_none(target),
                "margin": _finite_or_none(margin),
                "tol": tol,
                "pass": ok,
            }
        )

    def error(self, suite: str, c: float | None, n: float | None, x: float | None, exc: Exception) -> None:
        self.records.append(
            {
                "suite": suite,
                "check": "evaluation_error",
                "c": c,
                "n": n,
                "x": x,
                "observed": None,
                "target": None,
                "margin": None,
                "tol": 0.0,
                "pass": False,
                "error": f"{type(exc).__name__}: {exc}",
            }
        )


def _finite_or_none(v: float) -> float | None:
    v = float(v)
    return v if math.isfinite(v) else None


_EVAL_ERRORS = (IocError, ArithmeticError, ValueError)


def _upper_ids(params: FamilyParams) -> list[str]:
    c = params.c
    ids = ["basic"]
    if abs(c) < B.ZERO_C:
        ids.append("poisson")
    else:
        ids.append("tight")
        if c > 0:
            ids.append("loose")
    if c < 0:
        ids.append("upper_44")
    return ids


def _point_checks(rec: _Recorder, params: FamilyParams, x: float, L: float, cfg: SweepConfig) -> float:
    """All pointwise checks at x; returns S(x)."""
    c, n = params.c, params.n
    ev = cfg.eval
    suites = cfg.suites
    s = ioc(params, x, ev)
    tri = ioc_triple(params, x, ev)
    interior = 0.0 < x < L

    def add(suite, check, observed, target, kind, tol, scale=1.0, strict=False):
        rec.add(suite, check, c, n, x, observed, target, kind, tol, scale, strict)

    if "normalization" in suites:
        add("normalization", "sum_p", pmf_normalization(params, x, ev), 1.0, "abs", 1e-12)
        add("normalization", "s_le_1", s, 1.0, "le", 1e-15)
        add("normalization", "s_positive", s, 0.0, "ge", 0.0)

    if "oracles" in suites:
        add("oracles", "triple_value", tri.s, s, "abs", 1e-12, s)
        if c < 0:
            add("oracles", "symmetry", s, ioc(params, max(L - x, 0.0), ev), "abs", 4e-13)
            binom, u = reduce_negative_c(params, x)
            if c != -1.0:
                add("oracles", "reduction", s, ioc(binom, u, ev), "abs", 2e-13, s)
            add("oracles", "quadrature", s, ioc_binomial_quadrature(binom.l, u), "abs", 1e-11, s)
        elif c == 0:
            add("oracles", "bessel_identity", s, math.exp(-2 * n * x) * bessel_i0(2 * n * x), "abs", 1e-10, s)

    if "ode" in suites:
        add("ode", "heun_residual", heun_residual(params, x, ev), 0.0, "abs", 1e-8)
        if interior:
            h = min(ev.deriv_step, 0.5 * x, 0.5 * (L - x))
            fd1 = (ioc(params, x + h, ev) - ioc(params, x - h, ev)) / (2 * h)
            add("ode", "fd_s1", tri.s1, fd1, "abs", 1e-6, max(1.0, abs(tri.s1)))
            fd2 = (ioc_triple(params, x + h, ev).s1 - ioc_triple(params, x - h, ev).s1) / (2 * h)
            add("ode", "fd_s2", tri.s2, fd2, "abs", 1e-6, max(1.0, abs(tri.s2)))

    if "convexity" in suites:
        add("convexity", "s2_nonneg", tri.s2, 0.0, "ge", 1e-10)
        if c >= 0:
            add("convexity", "s1_nonpos", tri.s1, 0.0, "le", 1e-10)
            if CM_WINDOW[0] <= x <= CM_WINDOW[1]:
                lo = ioc_triple(params, x - CM_STEP, ev).s2
                hi = ioc_triple(params, x + CM_STEP, ev).s2
                d3 = (hi - lo) / (2 * CM_STEP)
                d4 = (hi - 2 * tri.s2 + lo) / CM_STEP**2
                add("convexity", "cm_j3", -d3, 0.0, "ge", 1e-6, abs(tri.s2))
                add("convexity", "cm_j4", d4, 0.0, "ge", 1e-6, abs(tri.s2))

    if "logconvexity" in suites:
        add("logconvexity", "s_s2_minus_s1sq", tri.s * tri.s2 - tri.s1**2, 0.0, "ge", 1e-10, max(1.0, tri.s1**2))

    if "entropy" in suites:
        e = entropies(params, x, ev)
        add("entropy", "shannon_ge_renyi2", e.shannon, e.renyi2, "ge", 1e-12)
        for bid in _upper_ids(params):
            r_lb, t_lb = B.entropy_lower_bounds(params, x, bid)
            add("entropy", f"renyi_lb_{bid}", e.renyi2, r_lb, "ge", 1e-9)
            add("entropy", f"tsallis_lb_{bid}", e.tsallis2, t_lb, "ge", 1e-9)

    if "bounds" in suites:
        report = B.bound_report(params, x, ev)
        by_id = {}
        for b in report.bounds:
            by_id[b.bound_id] = b.bound
            kind = "le" if b.direction == "upper" else "ge"
            add("bounds", b.bound_id, b.observed, b.bound, kind, B.MARGIN_TOL, max(1.0, abs(b.bound)))
        basic = by_id["basic"]
        if "tight" in by_id:
            add("bounds", "order_tight_le_basic", by_id["tight"], basic, "le", 1e-10, max(1.0, basic))
        if "loose" in by_id:
            add("bounds", "order_tight_le_loose", by_id["tight"], by_id["loose"], "le", 1e-10, max(1.0, by_id["loose"]))
        if "poisson" in by_id:
            add("bounds", "order_poisson_le_basic", by_id["poisson"], basic, "le", 1e-10, max(1.0, basic))
        if "upper_44" in by_id:
            binom, u = reduce_negative_c(params, x)
            basic_binom = B.bound_basic(binom, u)
            add("bounds", "order_upper44_le_basic", by_id["upper_44"], basic_binom, "le", 1e-10, max(1.0, basic_binom))
        if "binom_ratio_upper" in by_id:
            add("bounds", "order_binom_upper_le_basic", by_id["binom_ratio_upper"], by_id["binom_ratio_basic"], "le", 1e-10,
                max(1.0, abs(by_id["binom_ratio_basic"])))

    if "legendre" in suites and c == -1.0 and 0.0 < x < 0.5:
        add("legendre", "ioc_link", B.legendre_ioc_link(params.l, x, ev), 0.0, "abs", 1e-8)

    return s


def _family_task(params: FamilyParams, cfg: SweepConfig) -> list[dict[str, Any]]:
    rec = _Recorder(cfg.tol)
    c, n = params.c, params.n
    L = domain_length(params, cfg.x_max)
    values: dict[float, float] = {}
    for x in check_points(params, cfg.x_points, cfg.x_max):
        try:
            values[x] = _point_checks(rec, params, x, L, cfg)
        except _EVAL_ERRORS as exc:
            rec.error("evaluation", c, n, x, exc)

    grid = [float(x) for x in interior_grid(params, cfg.x_points, cfg.x_max)]
    if "entropy" in cfg.suites and all(x in values for x in grid):
        renyi = [-math.log(values[x]) for x in grid]
        tsallis = [1.0 - values[x] for x in grid]
        for i in range(1, len(grid) - 1):
            x = grid[i]
            rec.add("entropy", "tsallis_concave", c, n, x, tsallis[i - 1] - 2 * tsallis[i] + tsallis[i + 1], 0.0, "le", 1e-8)
            if c >= 0:
                rec.add("entropy", "renyi_concave", c, n, x, renyi[i - 1] - 2 * renyi[i] + renyi[i + 1], 0.0, "le", 1e-8)
        if c >= 0:
            for i in range(len(grid) - 1):
                rec.add("entropy", "renyi_increasing", c, n, grid[i], renyi[i + 1] - renyi[i], 0.0, "ge", 1e-10)

    if "bounds" in cfg.suites and c > 0:
        try:
            gamma, baseline = B.asymptotic_exponent(params)
            rec.add("bounds", "exponent_gap", c, n, None, gamma + 1e-12, baseline, "le", 0.0, strict=True)
            ref = B.bound_logconvex(params, 1e2)[0] / 1e2**gamma
            for t in (1e3, 1e4):
                ratio = B.bound_logconvex(params, t)[0] / t**gamma
                rec.add("bounds", "asymptotic_ratio", c, n, t, ratio, 2.0 * ref, "le", 0.0, strict=True)
        except _EVAL_ERRORS as exc:
            rec.error("bounds", c, n, None, exc)
    return rec.records


def _legendre_task(n: int, cfg: SweepConfig) -> list[dict[str, Any]]:
    rec = _Recorder(cfg.tol)
    for t in np.linspace(1.0, LEGENDRE_T_MAX, cfg.x_points):
        t = float(t)
        try:
            pair = legendre_pair(n, t)
            ratio = pair.dp / pair.p
            lower, up41, up46 = B.legendre_ratio_bounds(n, t)
            scale = max(1.0, abs(ratio))
            rec.add("legendre", "ratio_lower", None, n, t, ratio, lower, "ge", 1e-10, scale)
            rec.add("legendre", "ratio_upper_sharp", None, n, t, ratio, up41, "le", 1e-10, scale)
            rec.add("legendre", "ratio_upper_weak", None, n, t, ratio, up46, "le", 1e-10, scale)
            rec.add("legendre", "order_sharp_le_weak", None, n, t, up41, up46, "le", 1e-10, max(1.0, up46))
            prev = legendre_pair(n - 1, t).p
            lhs = (t - 1.0) * (t + 1.0) * pair.dp
            rhs = n * (t * pair.p - prev)
            rec.add("legendre", "bonnet_identity", None, n, t, lhs, rhs, "abs", 1e-10,
                    max(abs(lhs), n * t * abs(pair.p), n * abs(prev)))
            if n >= 2:
                strong, weak = B.legendre_value_bounds(n, t)
                rec.add("legendre", "value_strong", None, n, t, pair.p, strong, "le", 1e-10, max(1.0, strong))
                rec.add("legendre", "value_weak", None, n, t, pair.p, weak, "le", 1e-10, max(1.0, weak))
                rec.add("legendre", "order_strong_le_weak", None, n, t, strong, weak, "le", 1e-10, max(1.0, weak))
        except _EVAL_ERRORS as exc:
            rec.error("legendre", None, n, t, exc)
    return rec.records


def _bessel_task(cfg: SweepConfig) -> list[dict[str, Any]]:
    rec = _Recorder(cfg.tol)
    for t in np.linspace(0.0, 50.0, 101):
        t = float(t)
        i0 = bessel_i0(t)
        bound = B.bound_bessel(t)
        rec.add("bessel", "bessel_bound", None, None, t, i0, bound, "le", 1e-10, max(1.0, bound))
        if t <= 10.0:
            rec.add("bessel", "bessel_bound_ratio", None, None, t, bound / i0, 3.0, "le", 0.0, strict=True)
    for n in BESSEL_IDENTITY_N:
        params = FamilyParams(c=0.0, n=float(n))
        for x in np.linspace(0.0, 10.0, cfg.x_points):
            x = float(x)
            try:
                lhs = math.exp(2 * n * x) * ioc(params, x, cfg.eval)
                i0 = bessel_i0(2 * n * x)
                rec.add("bessel", "bessel_ioc_identity", 0.0, float(n), x, lhs, i0, "abs", 1e-10, i0)
            except _EVAL_ERRORS as exc:
                rec.error("bessel", 0.0, float(n), x, exc)
    return rec.records


def _quadrature_task(n: int, cfg: SweepConfig) -> list[dict[str, Any]]:
    rec = _Recorder(cfg.tol)
    params = FamilyParams.binomial(n)
    for t in np.linspace(0.0, 1.0, QUADRATURE_T_POINTS):
        t = float(t)
        s = ioc(params, t, cfg.eval)
        rec.add("oracles", "quadrature_table", -1.0, float(n), t, ioc_binomial_quadrature(n, t), s, "abs", 1e-11, s)
    return rec.records


def _identity_task(n: int, cfg: SweepConfig) -> list[dict[str, Any]]:
    rec = _Recorder(cfg.tol)
    for k in range(n + 1):
        for name, fn, ffn in (
            ("identity_one", identity_one, identity_one_float),
            ("identity_two", identity_two, identity_two_float),
        ):
            res = fn(n, k)
            margin_obs = 0.0 if res.equal else float(res.lhs - res.rhs)
            rec.add("identities", name, None, n, k, margin_obs, 0.0, "abs", 0.0, strict=True)
            if n <= FLOAT_IDENTITY_MAX_N:
                exact = float(res.lhs)
                scale = abs(exact)
                if name == "identity_two":
                    # widen by the binary64 rounding bound of the alternating sum
                    scale += 8 * EPS / 1e-6 * identity_two_abs_sum(n, k)
                rec.add("identities", f"{name}_float", None, n, k, ffn(n, k), exact, "abs", 1e-6, scale, strict=True)
    return rec.records


def _run_task(task: tuple) -> list[dict[str, Any]]:
    kind, arg, cfg = task
    if kind == "family":
        return _family_task(arg, cfg)
    if kind == "legendre":
        return _legendre_task(arg, cfg)
    if kind == "bessel":
        return _bessel_task(cfg)
    if kind == "quadrature":
        return _quadrature_task(arg, cfg)
    if kind == "identities":
        return _identity_task(arg, cfg)
    raise ValueError(kind)


def _tasks(cfg: SweepConfig) -> list[tuple]:
    point_suites = {"normalization", "oracles", "ode", "convexity", "logconvexity", "entropy", "bounds", "legendre"}
    tasks: list[tuple] = []
    if point_suites & set(cfg.suites):
        tasks += [("family", p, cfg) for p in cfg.families()]
    if "legendre" in cfg.suites:
        ns = sorted({p.l for p in cfg.families() if p.c < 0} or {1})
        tasks += [("legendre", n, cfg) for n in ns]
    if "bessel" in cfg.suites:
        tasks.append(("bessel", None, cfg))
    if "oracles" in cfg.suites:
        tasks += [("quadrature", n, cfg) for n in range(1, QUADRATURE_MAX_N + 1)]
    if "identities" in cfg.suites:
        tasks += [("identities", n, cfg) for n in range(cfg.max_n + 1)]
    return tasks


def _sort_key(r: dict[str, Any]) -> tuple:
    def num(v):
        return (v is None, 0.0 if v is None else float(v))

    return (r["suite"], num(r["c"]), num(r["n"]), num(r["x"]), r["check"])


@dataclass
class SuiteReport:
    records: list[dict[str, Any]]
    summary: dict[str, dict[str, Any]]

    @property
    def passed(self) -> bool:
        return all(v["fail"] == 0 for v in self.summary.values())

    def failures(self) -> list[dict[str, Any]]:
        return [r for r in self.records if not r["pass"]]

    def select(self, suite: str | None = None, check: str | None = None) -> list[dict[str, Any]]:
        return [
            r for r in self.records
            if (suite is None or r["suite"] == suite) and (check is None or r["check"] == check)
        ]

    def to_json(self, include_records: bool = True) -> str:
        doc: dict[str, Any] = {"summary": self.summary}
        if include_records:
            doc["records"] = self.records
        return json.dumps(doc, indent=1, sort_keys=True, allow_nan=False)


def summarize(records: Iterable[dict[str, Any]]) -> dict[str, dict[str, Any]]:
    summary: dict[str, dict[str, Any]] = {}
    for r in records:
        s = summary.setdefault(r["suite"], {"pass": 0, "fail": 0, "worst_margin": None})
        s["pass" if r["pass"] else "fail"] += 1
        m = r["margin"]
        if m is not None and (s["worst_margin"] is None or m < s["worst_margin"]):
            s["worst_margin"] = m
    return {k: summary[k] for k in sorted(summary)}


def _map(tasks: list[tuple], workers: int) -> list[list[dict[str, Any]]]:
    if workers <= 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_task, tasks, chunksize=1))


def verify(cfg: SweepConfig | None = None) -> SuiteReport:
    """Run the selected suites over the configured grid."""
    cfg = cfg or SweepConfig()
    records = [r for chunk in _map(_tasks(cfg), cfg.workers) for r in chunk]
    records.sort(key=_sort_key)
    return SuiteReport(records=records, summary=summarize(records))


SWEEP_COLUMNS = (
    "c", "n", "x", "S", "S1", "S2", "renyi2", "tsallis2", "shannon",
    "bound_basic", "bound_tight", "bound_loose", "bound_poisson",
    "lower_44", "upper_44", "lower_int",
)


def _fmt(v: float | None) -> str:
    return "" if v is None else format(float(v), ".17g")


def sweep_rows(params: FamilyParams, cfg: SweepConfig) -> list[list[str]]:
    """CSV rows over x = linspace(0, L, x_points) for one family."""
    L = domain_length(params, cfg.x_max)
    rows = []
    for x in np.linspace(0.0, L, cfg.x_points):
        x = params.check_point(float(x))
        tri = ioc_triple(params, x, cfg.eval)
        e = entropies(params, x, cfg.eval)
        s = ioc(params, x, cfg.eval)
        tight = loose = poisson = lower44 = upper44 = lower_int = None
        if abs(params.c) < B.ZERO_C:
            poisson = B.bound_poisson(params.n, x)
        else:
            tight, loose = B.bound_logconvex(params, x)
        if params.c == -1.0:
            lower44, upper44 = B.binom_ioc_bounds(params.l, x)
            lower_int = B.binom_ioc_integral_lower(params.l, x)
        vals = (params.c, params.n, x, s, tri.s1, tri.s2, e.renyi2, e.tsallis2, e.shannon,
                B.bound_basic(params, x), tight, loose, poisson, lower44, upper44, lower_int)
        rows.append([_fmt(v) for v in vals])
    return rows


def _sweep_task(task: tuple) -> list[list[str]]:
    params, cfg = task
    return sweep_rows(params, cfg)


def sweep(cfg: SweepConfig, out: str | Path) -> int:
    """Write the plot-ready CSV; returns the number of data rows."""
    fams = cfg.families()
    tasks = [(p, cfg) for p in fams]
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_sweep_task, tasks, chunksize=1))
    else:
        chunks = [_sweep_task(t) for t in tasks]
    path = Path(out)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        count = 0
        for rows in chunks:
            writer.writerows(rows)
            count += len(rows)
    return count


def with_overrides(cfg: SweepConfig, **changes: Any) -> SweepConfig:
    """Copy of ``cfg`` with the non-None entries of ``changes`` applied."""
    return replace(cfg, **{k: v for k, v in changes.items() if v is not None})
