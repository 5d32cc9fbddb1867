"""Check batteries behind the verify-* and selfcheck commands.

Every check produces one :class:`Check` row carrying the worst (smallest)
margin ``rhs - lhs`` it saw, so an x-sweep over thousands of points reports
the point where the inequality is tightest.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Callable, Iterable, Iterator

import numpy as np

from artin_bound import explicit_bounds as eb
from artin_bound.artin_splitting import (
    class_sum_is_one,
    kronecker_symbol,
    prime_ideal_norms,
    splitting_datum,
)
from artin_bound.census import (
    CensusSeries,
    InsufficientCensus,
    PrimeTable,
    ResourceError,
    build_census,
    cached_prime_table,
    class_event_points,
    kth_prime_norm,
    sieve_primes,
    sweep,
)
from artin_bound.field_models import (
    Cyclotomic,
    FieldFamily,
    GaloisClassSpec,
    Quadratic,
    Rational,
    all_classes,
    is_squarefree,
)

DEFAULT_TOL = 1e-9


class ConfigError(ValueError):
    pass


def _parse_range(text: str) -> tuple[int, int] | None:
    text = text.strip().lower()
    if text in ("", "none", "off"):
        return None
    lo, sep, hi = text.partition("-")
    try:
        r = (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise ConfigError(f"bad range {text!r}, expected LO-HI") from None
    if r[0] > r[1]:
        raise ConfigError(f"empty range {text!r}")
    return r


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"bad boolean {text!r}")


def _parse_int(text: str) -> int:
    try:
        return int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise ConfigError(f"bad integer {text!r}") from None


@dataclass(frozen=True)
class SweepConfig:
    """Which fields to sweep and how far.

    ``quadratic`` is a range of |d|, ``cyclotomic`` a range of m; either may be
    None.  x-sweeps run up to ``sieve_limit``.
    """

    quadratic: tuple[int, int] | None = (1, 100)
    cyclotomic: tuple[int, int] | None = (3, 40)
    rational: bool = True
    k_max: int = 50
    k_max_cyclotomic: int | None = 20
    sieve_limit: int = 10**7
    grid_step: int = 100
    format: str = "json"
    ideals_of: str = "K"
    cache: str | None = None
    tolerance: float = DEFAULT_TOL
    samples: int = 10_000
    seed: int = 20240607

    _PARSERS = {
        "quadratic": _parse_range,
        "cyclotomic": _parse_range,
        "rational": _parse_bool,
        "k_max": _parse_int,
        "k_max_cyclotomic": lambda t: None if t.strip().lower() in ("", "none") else _parse_int(t),
        "sieve_limit": _parse_int,
        "grid_step": _parse_int,
        "format": str.strip,
        "ideals_of": lambda t: t.strip().upper(),
        "cache": lambda t: t.strip() or None,
        "tolerance": float,
        "samples": _parse_int,
        "seed": _parse_int,
    }

    def __post_init__(self) -> None:
        if self.sieve_limit < 2:
            raise ConfigError("sieve_limit must be >= 2")
        if self.k_max < 0 or (self.k_max_cyclotomic is not None and self.k_max_cyclotomic < 0):
            raise ConfigError("k_max must be >= 0")
        if self.grid_step < 1:
            raise ConfigError("grid_step must be >= 1")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, not {self.format!r}")
        if self.ideals_of not in ("K", "L"):
            raise ConfigError(f"ideals_of must be K or L, not {self.ideals_of!r}")
        if self.tolerance < 0 or self.samples < 1:
            raise ConfigError("tolerance must be >= 0 and samples >= 1")

    @classmethod
    def from_mapping(cls, values: dict[str, str], base: "SweepConfig | None" = None) -> "SweepConfig":
        kw = {}
        for key, raw in values.items():
            key = key.strip().replace("-", "_")
            if key not in cls._PARSERS:
                raise ConfigError(f"unknown config key {key!r}")
            try:
                kw[key] = cls._PARSERS[key](raw)
            except (ValueError, TypeError) as exc:
                raise ConfigError(f"{key}: {exc}") from None
        return replace(base or cls(), **kw)

    @classmethod
    def from_file(cls, path: str) -> "SweepConfig":
        values = {}
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, val = line.partition("=")
                if not sep:
                    raise ConfigError(f"{path}:{lineno}: expected key=value")
                values[key.strip()] = val.strip()
        return cls.from_mapping(values)

    def as_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = f"{v[0]}-{v[1]}" if isinstance(v, tuple) else v
        return out

    def families(self) -> list[FieldFamily]:
        out: list[FieldFamily] = [Rational()] if self.rational else []
        if self.quadratic:
            lo, hi = self.quadratic
            ds = [s * a for a in range(max(lo, 1), hi + 1) for s in (-1, 1)]
            out += [Quadratic(d) for d in ds if d != 1 and is_squarefree(d)]
        if self.cyclotomic:
            lo, hi = self.cyclotomic
            out += [Cyclotomic(m) for m in range(max(lo, 3), hi + 1) if m % 4 != 2]
        return out

    def k_limit(self, family: FieldFamily) -> int:
        if isinstance(family, Cyclotomic) and self.k_max_cyclotomic is not None:
            return self.k_max_cyclotomic
        return self.k_max


@dataclass(frozen=True)
class Check:
    """One verified inequality ``lhs <= rhs`` (worst case over ``points``).

    ``mode`` says how the margin is judged: "tol" needs margin > tolerance,
    "positive" margin > 0, "nonneg" margin >= 0 (exact or sums of
    nonnegative terms) and "equal" margin == 0.
    """

    check_id: str
    field: str
    cls: str
    param: str
    value: float
    lhs: float
    rhs: float
    margin: float
    mode: str
    points: int
    passed: bool


def judge(margin: float, mode: str, tol: float) -> bool:
    margin = float(margin)
    if mode == "tol":
        return margin > tol
    if mode == "positive":
        return margin > 0
    if mode == "nonneg":
        return margin >= 0
    if mode == "equal":
        return margin == 0
    raise ValueError(mode)


# Every inequality the census and bounds can test, and where it is tested.
CHECKLIST: tuple[tuple[str, str, tuple[str, ...]], ...] = (
    ("norm bound for the (k+1)-st prime ideal", "verify-theorem", ("theorem_kth_prime",)),
    ("small-case endgame (floor 330, three ideals of norm <= 25)", "verify-theorem",
     ("endgame_floor", "endgame_bound_min", "endgame_three_ideals")),
    ("sufficient condition implies pi_C(x) >= k+1", "verify-theorem", ("count_at_bound",)),
    ("|g_c psi_C(x) - x| bound", "verify-psi", ("psi_error",)),
    ("theta_C integral <= pi_C(x) x (log x - log(2 log x))", "verify-chain", ("pi_theta_integral",)),
    ("prime-power gap of the psi integral", "verify-chain", ("prime_power_gap_lower", "prime_power_gap")),
    ("ramified gap of theta", "verify-chain", ("ramified_gap_lower", "ramified_gap")),
    ("ramified gap of the theta integral", "verify-chain",
     ("ramified_gap_integral_lower", "ramified_gap_integral")),
    ("x^2/2 - g_c theta integral (inertia weighted)", "verify-chain", ("theta_integral_smooth",)),
    ("x^2/2 - g_c theta integral (unramified)", "verify-chain", ("theta_integral_unramified",)),
    ("sufficient condition at the norm bound", "verify-chain", ("sufficient_condition",)),
    ("k-term reduction at the norm bound", "verify-chain", ("k_term_at_bound",)),
    ("simplifications valid for x >= 400", "verify-chain",
     ("degree_term_simplification", "linear_term_simplification", "x32_absorption")),
    ("constant bookkeeping", "verify-chain", ("constant_absorption",)),
    ("density factor at most the degree", "verify-chain", ("density_le_degree",)),
    ("(x - y) log y <= x (log x - log(2 log x)), x >= 400", "selfcheck", ("log_product_battery",)),
    ("peak-excess profile", "selfcheck",
     ("peak_excess_decreasing", "peak_excess_threshold", "threshold_provenance")),
    ("k-term claims", "selfcheck",
     ("k_term_lhs_literal", "k_term_rhs_literal", "k_term_rhs_decreasing", "k_term_final",
      "k_term_lhs_range", "k_term_rhs_range")),
    ("trivial-zero series", "selfcheck", ("series_at_one", "series_doubling")),
    ("archimedean term: closed form vs character sum", "selfcheck", ("archimedean_identity",)),
    ("archimedean term lower bound", "selfcheck", ("archimedean_lower_bound",)),
    ("signature counts", "selfcheck", ("signature_count",)),
    ("digamma constant at s = -1 is positive", "selfcheck", ("digamma_constant",)),
    ("inertia weights partition unit mass", "selfcheck", ("theta_partition",)),
    ("e f g = n_L", "selfcheck", ("efg_degree",)),
    ("Kronecker symbol vs Euler criterion", "selfcheck", ("kronecker_euler",)),
)


@dataclass
class Report:
    command: str
    config: dict
    tolerance: float
    checks: list[Check] = field(default_factory=list)

    def add(self, check_id: str, fam_label: str, cls: str, param: str, value: float,
            lhs: float, rhs: float, mode: str = "tol", points: int = 1,
            margin: float | None = None) -> Check:
        m = rhs - lhs if margin is None else margin
        c = Check(check_id, fam_label, cls, param, float(value), float(lhs), float(rhs),
                  float(m), mode, int(points), judge(m, mode, self.tolerance))
        self.checks.append(c)
        return c

    def add_sweep(self, check_id: str, fam_label: str, cls: str, xs: np.ndarray,
                  lhs: np.ndarray, rhs: np.ndarray, mode: str = "tol",
                  exact: np.ndarray | None = None, param: str = "x") -> Check:
        """Record the worst point of a pointwise inequality sweep.

        Points flagged in ``exact`` (both sides exactly zero) are judged with
        ``margin >= 0`` whatever the mode.
        """
        margin = rhs - lhs
        ok = {
            "tol": lambda: margin > self.tolerance,
            "positive": lambda: margin > 0,
            "nonneg": lambda: margin >= 0,
            "equal": lambda: margin == 0,
        }[mode]()
        if exact is not None:
            ok |= exact & (margin >= 0)
        # worst failing point if any, else the tightest point
        i = int(np.argmin(np.where(ok, np.inf, margin))) if not ok.all() else int(np.argmin(margin))
        c = Check(check_id, fam_label, cls, param, float(xs[i]), float(lhs[i]), float(rhs[i]),
                  float(margin[i]), mode, len(xs), bool(ok.all()))
        self.checks.append(c)
        return c

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> dict:
        by: dict[str, dict] = {}
        for c in self.checks:
            s = by.setdefault(c.check_id, {"count": 0, "failed": 0, "min_margin": math.inf})
            s["count"] += 1
            s["failed"] += not c.passed
            s["min_margin"] = min(s["min_margin"], c.margin)
        return {
            "total": len(self.checks),
            "passed": sum(c.passed for c in self.checks),
            "failed": sum(not c.passed for c in self.checks),
            "min_margin": min((c.margin for c in self.checks), default=0.0),
            "by_check": by,
        }

    def coverage(self) -> list[dict]:
        ran = {c.check_id for c in self.checks}
        return [
            {"inequality": name, "command": cmd, "checks": list(ids),
             "ran_here": any(i in ran for i in ids)}
            for name, cmd, ids in CHECKLIST
        ]

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "config": self.config,
            "summary": _fmt_tree(self.summary()),
            "coverage": self.coverage(),
            "checks": [_fmt_tree(asdict(c)) for c in self.checks],
        }
        return json.dumps(doc, indent=1, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        names = [f.name for f in fields(Check)]
        w.writerow(names)
        for c in self.checks:
            w.writerow([_fmt_cell(getattr(c, n)) for n in names])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        return self.to_csv() if fmt == "csv" else self.to_json()

    def summary_lines(self) -> Iterator[str]:
        s = self.summary()
        yield f"{self.command}: {s['passed']}/{s['total']} checks passed"
        for cid, v in s["by_check"].items():
            status = "ok" if not v["failed"] else f"FAILED {v['failed']}"
            yield f"  {cid:<32} n={v['count']:<6} min_margin={_fmt_float(v['min_margin'])} {status}"


def _fmt_float(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.15g}"


def _fmt_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v)
    return str(v)


def _fmt_tree(obj):
    if isinstance(obj, dict):
        return {k: _fmt_tree(v) for k, v in obj.items()}
    if isinstance(obj, float):
        if math.isinf(obj):
            return None
        return float(f"{obj:.15g}")
    return obj


def _classes(fam: FieldFamily) -> list[GaloisClassSpec]:
    return all_classes(fam)


def _cls_label(spec: GaloisClassSpec) -> str:
    return spec.family.class_label(spec.class_elem)


def _ensure_table(table: PrimeTable | None, need: int, cfg: SweepConfig) -> PrimeTable:
    """Prime table covering ``need``; the configured limit is doubled at most once."""
    if table is not None and table.limit >= need:
        return table
    limit = cfg.sieve_limit if table is None else table.limit
    if limit < need:
        limit *= 2
        if limit < need:
            raise ResourceError(f"census needs primes up to {need}, sieve limit {cfg.sieve_limit} "
                                f"(auto-raised once to {limit}) is insufficient")
    return cached_prime_table(limit, cfg.cache)


# ---------------------------------------------------------------- theorem

ENDGAME_NORM = 330
ENDGAME_SMALL_NORM = 25


def endgame_checks(report: Report, families: Iterable[FieldFamily]) -> None:
    log3 = math.log(3)
    for k in (0, 1, 2):
        x = eb.sqrt_norm_bound(eb.BoundInputs(log3, 2, 0, 1, k)).square
        fl = math.floor(x)
        if k < 2:
            report.add("endgame_floor", "log D = log 3", "g_c=1", "k", k, fl, ENDGAME_NORM,
                       mode="equal")
        report.add("endgame_bound_min", "log D = log 3", "g_c=1", "k", k, ENDGAME_NORM, fl,
                   mode="nonneg")
    for fam in families:
        if isinstance(fam, Quadratic):
            norms = prime_ideal_norms(fam, ENDGAME_SMALL_NORM)
            third = norms[2] if len(norms) >= 3 else ENDGAME_SMALL_NORM + 1
            report.add("endgame_three_ideals", fam.label, "all", "k", 2, third,
                       ENDGAME_SMALL_NORM, mode="nonneg")


def verify_theorem(cfg: SweepConfig, table: PrimeTable | None = None) -> Report:
    report = Report("verify-theorem", cfg.as_dict(), cfg.tolerance)
    families = cfg.families()
    endgame_checks(report, families)
    for fam in families:
        specs = _classes(fam)
        kmax = cfg.k_limit(fam)
        bounds = {
            (i, k): eb.sqrt_norm_bound(eb.BoundInputs.from_spec(s, k)).square
            for i, s in enumerate(specs) for k in range(kmax + 1)
        }
        limit = math.floor(max(bounds.values()))
        table = _ensure_table(table, limit, cfg)
        inv = fam.invariants()
        for i, spec in enumerate(specs):
            census = build_census(spec, limit, table)
            for k in range(kmax + 1):
                xb = bounds[i, k]
                try:
                    norm = kth_prime_norm(census, k, cfg.ideals_of)
                except InsufficientCensus:
                    norm = limit + 1
                report.add("theorem_kth_prime", fam.label, _cls_label(spec), "k", k, norm, xb)
                if eb.sufficient_condition_holds(xb, inv.log_abs_disc, spec.g_c, inv.degree, k):
                    count = int(sweep(census, np.array([math.floor(xb)], float))["pi_C"][0])
                    report.add("count_at_bound", fam.label, _cls_label(spec), "k", k,
                               k + 1, count, mode="nonneg")
    return report


# ---------------------------------------------------------------- psi

def _sweep_points(census: CensusSeries, lo: float, hi: float, step: int) -> np.ndarray:
    grid = np.arange(lo, hi + 1, step, dtype=np.float64)
    grid = grid[grid <= hi]
    return np.union1d(np.append(grid, hi), class_event_points(census, lo, hi))


def _both_sides(census: CensusSeries, xs: np.ndarray) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Statistics at every point and at its left limit, concatenated."""
    right = sweep(census, xs, "right")
    left = sweep(census, xs, "left")
    return np.concatenate([xs, xs]), {k: np.concatenate([right[k], left[k]]) for k in right}


def verify_psi(cfg: SweepConfig, table: PrimeTable | None = None) -> Report:
    report = Report("verify-psi", cfg.as_dict(), cfg.tolerance)
    X = cfg.sieve_limit
    table = _ensure_table(table, X, cfg)
    for fam in cfg.families():
        inv = fam.invariants()
        for spec in _classes(fam):
            census = build_census(spec, X, table)
            xs, st = _both_sides(census, _sweep_points(census, 1.0, X, cfg.grid_step))
            lhs = np.abs(spec.g_c * st["psi_C"] - xs)
            lx = np.log(xs)
            rhs = np.sqrt(xs) * ((lx / (2 * np.pi) + 2) * inv.log_abs_disc
                                 + (lx * lx / (8 * np.pi) + 2) * inv.degree)
            report.add_sweep("psi_error", fam.label, _cls_label(spec), xs, lhs, rhs)
    return report


# ---------------------------------------------------------------- chain

def constant_checks(report: Report) -> None:
    c = eb.C
    pairs = [
        ("zero-sum constant <= x^{3/2} constant", c("zero_sum_const"), c("x32_const"), "nonneg"),
        ("2 * zero-sum log D coefficient", 2 * c("zero_sum_log_disc"), c("main_log_disc"), "equal"),
        ("prime-power gap <= degree slack", c("prime_power_gap") * 2 / 3, c("zero_sum_degree") - c("x32_degree_slack"), "nonneg"),
        ("2 * x^{3/2} constant", 2 * c("x32_const"), c("sqrt_const"), "equal"),
        ("2 * linear constant", 2 * c("linear_const"), c("sqrt_inv_const"), "equal"),
        ("2 * main log D coefficient", 2 * c("main_log_disc"), c("sqrt_log_disc_inv"), "equal"),
    ]
    for label, lhs, rhs, mode in pairs:
        margin = rhs - lhs
        if mode == "equal":
            margin = 0.0 if math.isclose(lhs, rhs, rel_tol=1e-15) else -abs(margin)
        report.add("constant_absorption", label, "-", "-", 0, lhs, rhs, mode=mode, margin=margin)


def simplification_checks(report: Report, X: float, step: int) -> None:
    xs = np.arange(400.0, max(X, 400.0) + 1, step)
    li = (xs + 1) * np.log(xs + 1) - xs
    report.add_sweep("degree_term_simplification", "any", "-", xs,
                     li - 1.571 * xs, xs * (np.log(xs) - 2.55))
    report.add_sweep("linear_term_simplification", "any", "-", xs, 13.276 * xs - li, 8.3 * xs)
    dense = np.union1d(xs, np.linspace(400.0, 5000.0, 46001))
    report.add_sweep("x32_absorption", "any", "-", dense,
                     -0.082 * np.sqrt(dense) + np.log(dense) - 2.4, np.full(len(dense), 2.0))


def verify_chain(cfg: SweepConfig, table: PrimeTable | None = None) -> Report:
    report = Report("verify-chain", cfg.as_dict(), cfg.tolerance)
    X = cfg.sieve_limit
    x_min = eb.C("x_min")
    constant_checks(report)
    simplification_checks(report, X, cfg.grid_step)
    families = cfg.families()
    if X >= x_min:
        table = _ensure_table(table, X, cfg)
    for fam in families:
        inv = fam.invariants()
        log_d = inv.log_abs_disc
        unramified_field = not inv.disc_prime_factors
        for spec in _classes(fam):
            label, cls = fam.label, _cls_label(spec)
            report.add("density_le_degree", label, cls, "-", 0, spec.g_c, inv.degree, mode="nonneg")
            for k in range(cfg.k_limit(fam) + 1):
                xb = eb.sqrt_norm_bound(eb.BoundInputs.from_spec(spec, k)).square
                m = eb.sufficient_condition_margin(xb, log_d, spec.g_c, inv.degree, k)
                report.add("sufficient_condition", label, cls, "k", k, math.sqrt(xb) - m,
                           math.sqrt(xb), margin=m)
                if k >= 1:
                    y = spec.g_c * k
                    report.add("k_term_at_bound", label, cls, "k", k, eb.k_term_rhs(xb),
                               eb.k_term_lhs(y))
            if X < x_min:
                continue
            census = build_census(spec, X, table)
            xs, st = _both_sides(census, _sweep_points(census, x_min, X, cfg.grid_step))
            lx = np.log(xs)
            pi = st["pi_C"]
            report.add_sweep("pi_theta_integral", label, cls, xs, st["theta1_C"],
                             pi * xs * (lx - np.log(2 * lx)), exact=pi == 0)
            zero = np.zeros(len(xs))
            report.add_sweep("prime_power_gap_lower", label, cls, xs, zero, st["psi1_gap"],
                             mode="nonneg")
            report.add_sweep("prime_power_gap", label, cls, xs, st["psi1_gap"],
                             eb.C("prime_power_gap") * (2 / 3) * xs**1.5)
            exact = np.full(len(xs), unramified_field)
            report.add_sweep("ramified_gap_lower", label, cls, xs, zero, st["theta_ram_gap"],
                             mode="nonneg")
            report.add_sweep("ramified_gap", label, cls, xs, st["theta_ram_gap"],
                             np.full(len(xs), log_d), exact=exact)
            report.add_sweep("ramified_gap_integral_lower", label, cls, xs, zero,
                             st["theta1_ram_gap"], mode="nonneg")
            report.add_sweep("ramified_gap_integral", label, cls, xs, st["theta1_ram_gap"],
                             (xs - 1) * log_d, exact=exact)
            if isinstance(fam, Rational):
                # the x^2/2 chain assumes L != Q (it uses n_L >= 2)
                continue
            half = xs * xs / 2
            smooth = np.array([eb.theta_integral_smooth_bound(x, log_d, inv.degree) for x in xs])
            report.add_sweep("theta_integral_smooth", label, cls, xs,
                             half - spec.g_c * st["theta1_smooth"], smooth)
            unram = np.array([eb.theta_integral_unramified_bound(x, log_d, spec.g_c, inv.degree)
                              for x in xs])
            report.add_sweep("theta_integral_unramified", label, cls, xs,
                             half - spec.g_c * st["theta1_C"], unram)
    return report


# ---------------------------------------------------------------- selfcheck

def _series_partial(term: Callable[[int], float], n: int) -> float:
    return math.fsum(term(r) for r in range(1, n + 1))


def log_product_samples(n: int, seed: int) -> list[tuple[float, float]]:
    """Random (x, y) with 400 <= x <= 1e6 (log-uniform), 0 < y <= x, plus points near the peak."""
    rng = random.Random(seed)
    pts = []
    for _ in range(n):
        x = math.exp(rng.uniform(math.log(400.0), math.log(1e6)))
        pts.append((x, rng.uniform(0.0, x) or x))
    # neighbourhood of y0 with y0 (log y0 + 1) = x, tightest near x = 400
    for x in (400.0, 400.5, 401.0, 450.0, 1000.0, 1e4, 1e6):
        lo, hi = 1.0, x
        for _ in range(200):
            mid = (lo + hi) / 2
            lo, hi = (mid, hi) if mid * (math.log(mid) + 1) < x else (lo, mid)
        for t in (-1e-3, -1e-6, 0.0, 1e-6, 1e-3):
            pts.append((x, lo * (1 + t)))
    return pts


def selfcheck(cfg: SweepConfig) -> Report:
    report = Report("selfcheck", cfg.as_dict(), cfg.tolerance)
    families = cfg.families()

    # trivial-zero series
    diff = abs(eb.gamma_half_series(1.0) - math.log(2))
    report.add("series_at_one", "-", "-", "x", 1.0, diff, 1e-12, mode="nonneg")
    worst = (0.0, 1.5)
    for x in (1.5, 2.0, 3.0, 10.0, 100.0, 1e3):
        u = 1 / x
        t1 = lambda r: u ** (2 * r - 1) / (2 * r * (2 * r - 1))
        t2 = lambda r: u ** (2 * r) / ((2 * r + 1) * (2 * r))
        n = 200
        for t in (t1, t2):
            d = abs(_series_partial(t, 2 * n) - _series_partial(t, n))
            worst = max(worst, (d, x))
    report.add("series_doubling", "-", "-", "x", worst[1], worst[0], 1e-13, mode="positive")

    # archimedean term identity and lower bound over realizable class data
    tuples = sorted({(s.s_g, s.delta_C, s.invariants.degree, s.invariants.r2)
                     for fam in families for s in _classes(fam)})
    worst = (-1.0, 2.0)
    for s_g, d_c, n_l, _ in tuples:
        for x in (2.0, 10.0, 100.0, 1e3):
            d = abs(eb.class_archimedean_term(x, s_g, d_c, n_l)
                    - eb.aggregated_archimedean_term(x, s_g, d_c, n_l))
            worst = max(worst, (d, x))
    report.add("archimedean_identity", "realizable tuples", "-", "x", worst[1], worst[0], 1e-9,
               mode="nonneg", points=4 * len(tuples))
    # fails just above x = 1 when delta_C = 0 (x - x log x > 0 there); holds from x = e
    xs = np.geomspace(3.0, 1e6, 2000)
    for s_g, d_c, n_l, r2 in tuples:
        if n_l == 1:
            continue
        lhs = np.array([-eb.class_archimedean_term(x, s_g, d_c, n_l) for x in xs])
        rhs = np.array([eb.archimedean_term_bound(n_l, x) for x in xs])
        report.add_sweep("archimedean_lower_bound", f"S_g={s_g} delta_C={d_c} n_L={n_l}", "-",
                         xs, lhs, rhs, mode="nonneg")
    for fam in families:
        inv = fam.invariants()
        for s in _classes(fam):
            # delta_C n_L - S_g is a character sum and can be negative (e.g. -1 for Q(i), g = -1)
            mb = s.delta_C * inv.degree - s.s_g
            report.add("signature_count", fam.label, _cls_label(s), "-", 1, mb, inv.r2, mode="nonneg")
            report.add("signature_count", fam.label, _cls_label(s), "-", 2, 2 * inv.r2, inv.degree,
                       mode="nonneg")
    # log pi - psi(3/2)/2 - psi(1)/2 with psi(1) = -gamma, psi(3/2) = 2 - gamma - 2 log 2
    euler_gamma = 0.5772156649015329
    dg = math.log(math.pi) - 0.5 * (2 - euler_gamma - 2 * math.log(2)) + 0.5 * euler_gamma
    report.add("digamma_constant", "-", "-", "-", 0, 0.0, dg)

    # peak-excess profile and the log-product inequality
    zs = np.geomspace(math.e, 1e6, 200_001)
    g = np.log1p((np.log(zs) - 1) / zs) + 1 / zs - 1
    steps = g[:-1] - g[1:]
    i = int(np.argmin(steps))
    report.add("peak_excess_decreasing", "-", "-", "z", zs[i], 0.0, steps[i], mode="positive",
               points=len(steps))
    z_thr = eb.C("peak_excess_threshold_z")
    zt = np.union1d(zs[zs >= z_thr], [z_thr])
    gt = np.log1p((np.log(zt) - 1) / zt) + 1 / zt - 1
    report.add_sweep("peak_excess_threshold", "-", "-", zt, gt, np.full(len(zt), -math.log(2)),
                     param="z")
    prov = z_thr * math.exp(z_thr - 1)
    report.add("threshold_provenance", "z*e^(z-1)", "-", "z", z_thr, prov, 399.68, mode="positive")
    report.add("threshold_provenance", "z*e^(z-1)", "-", "z", z_thr, 399.67, prov, mode="nonneg")
    report.add("threshold_provenance", "z*e^(z-1)", "-", "z", z_thr, prov, eb.C("x_min"),
               mode="positive")
    pts = log_product_samples(cfg.samples, cfg.seed)
    px = np.array([p[0] for p in pts])
    py = np.array([p[1] for p in pts])
    lhs = (px - py) * np.log(py)
    rhs = px * (np.log(px) - np.log(2 * np.log(px)))
    report.add_sweep("log_product_battery", "-", "-", px, lhs, rhs)

    # k-term claims, as literally stated and with the ranges where they hold
    ys = np.arange(1, 121, dtype=np.float64)
    lhs_y = np.sqrt(np.log(ys) / (2 * ys)) + 1 / (2 * ys)
    report.add_sweep("k_term_lhs_literal", "1 <= y <= 120", "-", ys, np.full(len(ys), 0.2), lhs_y,
                     mode="positive", param="y")
    ys_ok = ys[ys <= 54]
    report.add_sweep("k_term_lhs_range", "1 <= y <= 54", "-", ys_ok, np.full(len(ys_ok), 0.2),
                     lhs_y[: len(ys_ok)], mode="positive", param="y")
    xr = np.union1d(np.geomspace(30.0, 1e6, 100_001), np.arange(30.0, 1000.0))
    hx = (np.log(xr) - np.log(2 * np.log(xr))) / np.sqrt(xr)
    report.add_sweep("k_term_rhs_literal", "x >= 30", "-", xr, hx, np.full(len(xr), 0.2),
                     mode="nonneg")
    report.add_sweep("k_term_rhs_range", "x >= 237", "-", xr[xr >= 237], hx[xr >= 237],
                     np.full(int((xr >= 237).sum()), 0.2), mode="nonneg")
    report.add_sweep("k_term_rhs_decreasing", "x >= 30", "-", xr[1:], hx[1:], hx[:-1],
                     mode="positive")
    yb = np.union1d(np.arange(120.0, 10_000.0), np.geomspace(1e4, 1e9, 10_001))
    xb = 2 * yb * np.log(yb)
    report.add_sweep("k_term_final", "y >= 120", "-", yb, np.log(xb) - np.log(2 * np.log(xb)),
                     np.log(yb), param="y")

    # splitting data
    primes = [int(p) for p in sieve_primes(10_000).primes]
    for fam in families:
        specs = _classes(fam)
        n = fam.invariants().degree
        bad_efg = [p for p in primes
                   if (lambda sd: sd.e * sd.f * sd.g)(splitting_datum(fam, p)) != n]
        report.add("efg_degree", fam.label, "all", "p", primes[-1], len(bad_efg), 0,
                   mode="nonneg", points=len(primes))
        bad = [(p, m) for p in primes for m in (1, 2, 3) if not class_sum_is_one(specs, p, m)]
        report.add("theta_partition", fam.label, "all", "p", primes[-1], len(bad), 0,
                   mode="nonneg", points=3 * len(primes))
        if isinstance(fam, Quadratic):
            D = fam.discriminant
            bad_k = [p for p in primes[1:] if D % p
                     and kronecker_symbol(D, p) != (1 if pow(D % p, (p - 1) // 2, p) == 1 else -1)]
            report.add("kronecker_euler", fam.label, "-", "p", primes[-1], len(bad_k), 0,
                       mode="nonneg", points=len(primes) - 1)
    return report


COMMANDS = {
    "verify-theorem": verify_theorem,
    "verify-psi": verify_psi,
    "verify-chain": verify_chain,
}
