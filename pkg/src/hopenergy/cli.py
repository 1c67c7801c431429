"""Experiment runner: every calculator, simulator and limit check as a
subcommand with seeded determinism and CSV output.

Config precedence: command-line flags override config-file keys override
preset defaults.  The effective configuration is echoed as ``# key=value``
comment lines ahead of the CSV header, floats are printed with 17
significant digits, and lines end with LF, so re-running a command with
the same seed produces byte-identical output.

Exit codes: 0 success, 2 configuration error, 3 an infeasible sweep point
was encountered (the row is marked and the run continues), 4 internal
numeric failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from . import theorems
from .errors import ConfigError, DomainError, HopEnergyError, InfeasibleAtZeroPower
from .line_network import (
    LineNetworkParams,
    energy_long_hop,
    energy_multi_transmit_long,
    energy_short_hop,
    ratio_mult_to_short,
    ratio_short_to_long,
)
from .outage import (
    LOG2E,
    AntennaConfig,
    OutageTarget,
    empirical_success_prob,
    gaussian_success_prob,
)
from .ppp import (
    PointSet,
    SectorRegion,
    SimConfig,
    monte_carlo_compare,
    route_strategy_a,
    route_strategy_b,
    write_points_csv,
    write_route_csv,
)
from .ppp import _uniform_in_sector  # first-trial dump reuses the generator
from .presets import PRESETS
from .random_network import (
    RandomNetworkParams,
    energy_multi_transmit_b,
    energy_strategy_a,
    energy_strategy_b,
    ratio_a_to_b,
)
from .special import erfc_inv

COMMANDS = ("line-compare", "rand-compare", "ppp-sim", "mc-validate", "theorem", "list-presets")

THEOREM_CHECKS = {
    "many-hops": "many-hops",
    "high-reliability": "high-reliability",
    "large-array": "large-array",
    "multi-transmit": "multi-transmit",
    "exponent-gap": "exponent-gap",
    "sector-bound": "sector-bound",
    # numeric aliases follow the order the limit results are usually cited in
    "1": "many-hops",
    "2": "high-reliability",
    "3": "large-array",
    "4": "multi-transmit",
}

_INT_VARS = {"nt", "nr", "n", "nodes"}


@dataclass(frozen=True)
class SweepSpec:
    var: str
    values: tuple[float, ...]

    @classmethod
    def from_flag(cls, text: str) -> "SweepSpec":
        parts = text.split(":")
        if len(parts) != 5:
            raise ConfigError(f"sweep must be VAR:MIN:MAX:POINTS:SCALE, got {text!r}")
        var, lo_s, hi_s, pts_s, scale = parts
        try:
            lo, hi, pts = float(lo_s), float(hi_s), int(pts_s)
        except ValueError as exc:
            raise ConfigError(f"bad sweep bounds in {text!r}") from exc
        return cls(var, _spread(lo, hi, pts, scale, var))

    @classmethod
    def from_preset(cls, spec) -> "SweepSpec":
        if len(spec) == 3 and spec[1] == "values":
            var, _, values = spec
            return cls(var, tuple(values))
        var, lo, hi, pts, scale = spec
        return cls(var, _spread(lo, hi, pts, scale, var))


@dataclass(frozen=True)
class FamilySpec:
    var: str
    values: tuple[float, ...]

    @classmethod
    def from_flag(cls, text: str) -> "FamilySpec":
        var, _, rest = text.partition(":")
        if not rest:
            raise ConfigError(f"family must be VAR:v1,v2,..., got {text!r}")
        values = tuple(float(v) for v in rest.split(","))
        if var == "pr":
            var, values = "eps", tuple(1.0 - v for v in values)
        return cls(var, values)


def _spread(lo: float, hi: float, points: int, scale: str, var: str) -> tuple[float, ...]:
    if points < 1:
        raise ConfigError(f"sweep needs at least one point, got {points}")
    if scale == "linear":
        vals = np.linspace(lo, hi, points)
    elif scale in ("log", "geometric"):
        if lo <= 0 or hi <= 0:
            raise ConfigError("geometric sweeps need positive bounds")
        vals = np.geomspace(lo, hi, points)
    else:
        raise ConfigError(f"unknown sweep scale {scale!r}")
    if var in _INT_VARS:
        return tuple(int(round(v)) for v in vals)
    return tuple(float(v) for v in vals)


@dataclass(frozen=True)
class ExperimentConfig:
    """Effective parameter block of one run (all defaults overridable)."""

    preset: str | None = None
    alpha: float = 2.0
    phi: float = math.pi / 2
    n: int = 3
    d: float = 1.0
    n0: float = 1.0
    nt: int = 2
    nr: int = 2
    rate: float = 4.0
    eps: float = 0.05
    rho: float = 1.0
    nodes: int = 30
    intensity: float = 1.0
    dest_distance: float | None = None
    trials: int = 1000
    seed: int = 0
    mode: str = "exact"
    threads: int = 1
    anchor: str = "current"
    split: str = "realized"
    check: str | None = None
    sector: bool = False
    rate_quantile: float | None = None
    sweep: SweepSpec | None = None
    family: FamilySpec | None = None

    def __post_init__(self):
        if self.mode not in ("exact", "philip"):
            raise ConfigError(f"mode must be 'exact' or 'philip', got {self.mode!r}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads!r}")
        if not 0.0 < self.eps < 1.0:
            raise ConfigError(f"eps must lie in (0, 1), got {self.eps!r}")

    def with_param(self, var: str, value) -> "ExperimentConfig":
        if var == "pr":
            return replace(self, eps=1.0 - value)
        if var not in {f.name for f in fields(self)}:
            raise ConfigError(f"unknown parameter {var!r}")
        if var in _INT_VARS:
            value = int(value)
        return replace(self, **{var: value})


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


class CsvWriter:
    def __init__(self, stream, command: str, cfg: ExperimentConfig, columns):
        self.stream = stream
        stream.write(f"# command={command}\n")
        for key, value in sorted(_config_items(cfg)):
            stream.write(f"# {key}={value}\n")
        stream.write(",".join(columns) + "\n")

    def row(self, values) -> None:
        self.stream.write(",".join(_fmt(v) for v in values) + "\n")

    def comment(self, text: str) -> None:
        self.stream.write(f"# {text}\n")


def _config_items(cfg: ExperimentConfig):
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        if value is None:
            yield f.name, "-"
        elif isinstance(value, (SweepSpec, FamilySpec)):
            yield f.name, value.var + ":" + ";".join(_fmt(v) for v in value.values)
        elif isinstance(value, float):
            yield f.name, format(value, ".17g")
        else:
            yield f.name, str(value)


def _ant(cfg: ExperimentConfig) -> AntennaConfig:
    return AntennaConfig(cfg.nt, cfg.nr)


def _target(cfg: ExperimentConfig) -> OutageTarget:
    return OutageTarget(cfg.rate, cfg.eps)


# ---------------------------------------------------------------------------
# Subcommand runners.  Each returns the process exit code.
# ---------------------------------------------------------------------------

LINE_COLUMNS = (
    "sweep_value", "family_value", "energy_long", "energy_short",
    "energy_long_mult", "ratio_short_to_long", "ratio_upper_bound",
    "ratio_mult_to_short", "ratio_short_to_long_philip", "feasible",
)

RAND_COLUMNS = (
    "sweep_value", "family_value", "energy_b", "energy_a", "energy_b_mult",
    "ratio_a_to_b", "ratio_mult_b_to_a", "ratio_a_to_b_philip", "feasible",
)

PPP_COLUMNS = (
    "sweep_value", "energy_a_mean", "energy_a_stderr", "energy_b_mean",
    "energy_b_stderr", "ratio_mean", "ratio_stderr", "trials", "feasible",
)

MC_COLUMNS = (
    "rho", "rate", "tail", "p_model", "p_empirical", "stderr", "abs_error", "trials",
)


def _grid(cfg: ExperimentConfig):
    sweep = cfg.sweep
    if sweep is None:
        raise ConfigError("this command needs a sweep (--sweep or a preset)")
    families = cfg.family.values if cfg.family is not None else (None,)
    fam_var = cfg.family.var if cfg.family is not None else None
    for fam in families:
        fam_cfg = cfg if fam is None else cfg.with_param(fam_var, fam)
        for value in sweep.values:
            yield fam, fam_cfg.with_param(sweep.var, value), value


def run_line_compare(cfg: ExperimentConfig, out) -> int:
    writer = CsvWriter(out, "line-compare", cfg, LINE_COLUMNS)
    nan = float("nan")
    infeasible = False
    for fam, point, value in _grid(cfg):
        params = LineNetworkParams(point.d, point.alpha, point.n0, point.n)
        ant, target = _ant(point), _target(point)
        fam_out = fam if fam is not None else ""
        try:
            long_e = energy_long_hop(params, ant, target, point.mode)
            short_e = energy_short_hop(params, ant, target, point.mode)
            mult_e = energy_multi_transmit_long(params, ant, target, point.mode)
            ratio, bound = ratio_short_to_long(params, ant, target, point.mode)
            mult_ratio = ratio_mult_to_short(params, ant, target, point.mode)
            philip_ratio = ratio_short_to_long(params, ant, target, "philip").ratio
            writer.row((value, fam_out, long_e, short_e, mult_e, ratio, bound,
                        mult_ratio, philip_ratio, 1))
        except InfeasibleAtZeroPower:
            infeasible = True
            writer.row((value, fam_out, nan, nan, nan, nan, nan, nan, nan, 0))
    return 3 if infeasible else 0


def run_rand_compare(cfg: ExperimentConfig, out) -> int:
    writer = CsvWriter(out, "rand-compare", cfg, RAND_COLUMNS)
    nan = float("nan")
    infeasible = False
    for fam, point, value in _grid(cfg):
        params = RandomNetworkParams(point.alpha, point.phi, point.n)
        ant, target = _ant(point), _target(point)
        fam_out = fam if fam is not None else ""
        try:
            b_e = energy_strategy_b(params, ant, target, point.mode)
            a_e = energy_strategy_a(params, ant, target, point.mode)
            mult_e = energy_multi_transmit_b(params, ant, target, point.mode)
            ratio = ratio_a_to_b(params, ant, target, point.mode)
            mult_ratio = mult_e / a_e
            philip_ratio = ratio_a_to_b(params, ant, target, "philip")
            writer.row((value, fam_out, b_e, a_e, mult_e, ratio, mult_ratio,
                        philip_ratio, 1))
        except InfeasibleAtZeroPower:
            infeasible = True
            writer.row((value, fam_out, nan, nan, nan, nan, nan, nan, 0))
    return 3 if infeasible else 0


def _sim_config(point: ExperimentConfig) -> SimConfig:
    dest = point.dest_distance
    if dest is None:
        # area chosen so the fixed node count matches the unit-density
        # expectation: area = nodes/intensity
        dest = math.sqrt(2.0 * point.nodes / (point.intensity * point.phi))
    region = SectorRegion(dest, point.phi)
    return SimConfig(
        region=region,
        ant=_ant(point),
        rate=point.rate,
        failure_prob=point.eps,
        alpha=point.alpha,
        n_hops=point.n,
        node_count=point.nodes,
        intensity=point.intensity,
        anchor=point.anchor,
        target_split=point.split,
    )


def run_ppp_sim(cfg: ExperimentConfig, out, dump_prefix: str | None = None) -> int:
    writer = CsvWriter(out, "ppp-sim", cfg, PPP_COLUMNS)
    nan = float("nan")
    infeasible = False
    first = True
    for _, point, value in _grid(cfg):
        sim = _sim_config(point)
        try:
            result = monte_carlo_compare(sim, point.trials, point.seed, point.threads)
            writer.row((
                value,
                result.strategy_a.mean, result.strategy_a.stderr,
                result.strategy_b.mean, result.strategy_b.stderr,
                result.ratio_a_to_b.mean, result.ratio_a_to_b.stderr,
                point.trials, 1,
            ))
        except InfeasibleAtZeroPower:
            infeasible = True
            writer.row((value, nan, nan, nan, nan, nan, nan, point.trials, 0))
        if first and dump_prefix is not None:
            _dump_first_trial(sim, point, dump_prefix)
        first = False
    return 3 if infeasible else 0


def _dump_first_trial(sim: SimConfig, point: ExperimentConfig, prefix: str) -> None:
    child = np.random.SeedSequence(point.seed).spawn(1)[0]
    rng = np.random.default_rng(child)
    count = sim.node_count if sim.node_count is not None else int(
        rng.poisson(sim.intensity * sim.region.area)
    )
    points = PointSet(_uniform_in_sector(sim.region, count, rng), sim.region, None)
    route_a = route_strategy_a(points, anchor=sim.anchor)
    route_b = route_strategy_b(route_a, sim.n_hops)
    write_points_csv(points, f"{prefix}.points.csv")
    write_route_csv(route_a, f"{prefix}.route_a.csv")
    write_route_csv(route_b, f"{prefix}.route_b.csv")


def _quantile_rate(rho: float, ant: AntennaConfig, quantile: float) -> tuple[float, str]:
    """Rate at which the model success probability equals ``quantile``.

    Falls back to the complementary (low-success) tail when the
    high-success rate is nonpositive, which happens at small SNR where the
    model mean sits within one deviation of zero rate.
    """
    mean = ant.n_t * math.log2(1.0 + rho * ant.n_r / ant.n_t)
    spread = math.sqrt(2.0 * ant.n_t / ant.n_r) * LOG2E
    rate = mean + spread * erfc_inv(2.0 * quantile)
    if rate > 0.0:
        return rate, "high-success"
    rate = mean + spread * erfc_inv(2.0 * (1.0 - quantile))
    return rate, "low-success"


def run_mc_validate(cfg: ExperimentConfig, out) -> int:
    writer = CsvWriter(out, "mc-validate", cfg, MC_COLUMNS)
    ant = _ant(cfg)
    for _, point, value in _grid(cfg):
        rho = float(value) if point.sweep.var == "rho" else point.rho
        if point.rate_quantile is not None:
            rate, tail = _quantile_rate(rho, ant, point.rate_quantile)
        else:
            rate, tail = point.rate, "fixed"
        p_model = gaussian_success_prob(rho, rate, ant)
        p_hat, stderr = empirical_success_prob(
            rho, rate, ant, point.trials, point.seed, point.threads
        )
        writer.row((rho, rate, tail, p_model, p_hat, stderr,
                    abs(p_hat - p_model), point.trials))
    return 0


def run_theorem(cfg: ExperimentConfig, out) -> int:
    if cfg.check is None:
        raise ConfigError("theorem needs --check "
                          f"(one of {', '.join(sorted(set(THEOREM_CHECKS.values())))})")
    name = THEOREM_CHECKS.get(cfg.check)
    if name is None:
        raise ConfigError(f"unknown check {cfg.check!r}")
    ant = _ant(cfg)
    phi = cfg.phi if cfg.sector else None
    eps_grid = list(cfg.sweep.values) if cfg.sweep and cfg.sweep.var == "eps" else None

    if name == "exponent-gap":
        grid = eps_grid or list(np.geomspace(0.0999, 1e-3, 50))
        writer = CsvWriter(out, "theorem", cfg, ("sweep_value", "gap_exact",
                                                 "gap_series", "gap_slope"))
        worst_slope = -math.inf
        for eps in grid:
            p_r = 1.0 - eps
            writer.row((eps, theorems.exponent_gap(p_r),
                        theorems.exponent_gap_series(p_r),
                        theorems.exponent_gap_series_slope(p_r)))
            worst_slope = max(worst_slope, theorems.exponent_gap_series_slope(p_r))
        gap_start = theorems.exponent_gap(0.9)
        verdict = "confirmed" if gap_start < math.log2(3.0) and worst_slope < 0 else "violated"
        writer.comment(f"verdict={verdict}")
        print(f"exponent-gap: verdict={verdict} gap(0.9)={gap_start:.6f} "
              f"log2(3)={math.log2(3.0):.6f} max_slope={worst_slope:.6f}",
              file=sys.stderr)
        return 0

    if name == "sector-bound":
        report = theorems.check_sector_example(cfg.rate, ant, eps_grid, cfg.mode)
    elif name == "many-hops":
        n_grid = [int(v) for v in cfg.sweep.values] if cfg.sweep and cfg.sweep.var == "n" else None
        report = theorems.check_many_hops_limit(cfg.alpha, cfg.eps, ant, cfg.rate,
                                                n_grid, phi, cfg.mode)
    elif name == "high-reliability":
        report = theorems.check_high_reliability_limit(cfg.alpha, cfg.n, ant, cfg.rate,
                                                       eps_grid, phi, cfg.mode)
    elif name == "large-array":
        ant_grid = [int(v) for v in cfg.sweep.values] if cfg.sweep and cfg.sweep.var in ("nt", "nr") else None
        grow = cfg.sweep.var if cfg.sweep and cfg.sweep.var in ("nt", "nr") else "both"
        report = theorems.check_large_array_limit(cfg.alpha, cfg.n, cfg.rate, cfg.eps,
                                                  ant_grid, grow, 2, phi, cfg.mode)
    else:
        report = theorems.check_multi_transmit_limit(cfg.alpha, cfg.n, ant, cfg.rate,
                                                     eps_grid, phi, cfg.mode)

    writer = CsvWriter(out, "theorem", cfg, ("sweep_value", "value"))
    for g, v in zip(report.grid, report.values):
        writer.row((g, v))
    writer.comment(f"verdict={report.verdict}")
    writer.comment(f"witness={'-' if report.witness is None else _fmt(report.witness)}")
    writer.comment(f"crossing={'-' if report.crossing is None else _fmt(report.crossing)}")
    print(f"{name}: verdict={report.verdict} witness={report.witness} "
          f"crossing={report.crossing} final={report.values[-1]:.6g}", file=sys.stderr)
    return 0


def run_list_presets(out) -> int:
    for name in sorted(PRESETS):
        spec = PRESETS[name]
        keys = ", ".join(f"{k}={v}" for k, v in sorted(spec.items()) if k != "command")
        out.write(f"{name} [{spec['command']}]: {keys}\n")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing and config resolution.
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopenergy",
        description="Short-hop vs. long-hop MIMO routing energy experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        p = sub.add_parser(command)
        if command == "list-presets":
            continue
        p.add_argument("--preset")
        p.add_argument("--config")
        p.add_argument("--seed", type=int)
        p.add_argument("--out")
        p.add_argument("--sweep")
        p.add_argument("--family")
        p.add_argument("--trials", type=int)
        p.add_argument("--mode", choices=("exact", "philip"))
        p.add_argument("--threads", type=int)
        p.add_argument("--alpha", type=float)
        p.add_argument("--phi", type=float)
        p.add_argument("--n", type=int)
        p.add_argument("--d", type=float)
        p.add_argument("--n0", type=float)
        p.add_argument("--nt", type=int)
        p.add_argument("--nr", type=int)
        p.add_argument("--rate", type=float)
        p.add_argument("--rho", type=float)
        p.add_argument("--eps", type=float)
        p.add_argument("--pr", type=float)
        p.add_argument("--nodes", type=int)
        p.add_argument("--intensity", type=float)
        p.add_argument("--dest-distance", dest="dest_distance", type=float)
        p.add_argument("--anchor", choices=("current", "source"))
        p.add_argument("--split", choices=("realized", "per-segment"))
        p.add_argument("--check")
        p.add_argument("--sector", action="store_true", default=None)
        p.add_argument("--rate-quantile", dest="rate_quantile", type=float)
        p.add_argument("--dump-sample", dest="dump_sample")
    return parser


_CONFIG_FLOAT_KEYS = {"alpha", "phi", "d", "n0", "rate", "rho", "eps", "pr",
                      "intensity", "dest_distance", "rate_quantile"}
_CONFIG_INT_KEYS = {"n", "nt", "nr", "nodes", "trials", "seed", "threads"}
_CONFIG_BOOL_KEYS = {"sector"}


def _read_config_file(path: str) -> dict:
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key = key.strip().replace("-", "_")
            value = value.strip()
            if key in _CONFIG_FLOAT_KEYS:
                values[key] = float(value)
            elif key in _CONFIG_INT_KEYS:
                values[key] = int(value)
            elif key in _CONFIG_BOOL_KEYS:
                values[key] = value.lower() in ("1", "true", "yes")
            elif key == "sweep":
                values[key] = SweepSpec.from_flag(value)
            elif key == "family":
                values[key] = FamilySpec.from_flag(value)
            elif key in ("mode", "anchor", "split", "check"):
                values[key] = value
            else:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return values


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    merged: dict = {}
    if args.preset is not None:
        spec = PRESETS.get(args.preset)
        if spec is None:
            raise ConfigError(f"unknown preset {args.preset!r}")
        if spec["command"] != args.command:
            raise ConfigError(
                f"preset {args.preset!r} belongs to {spec['command']!r}, not {args.command!r}"
            )
        for key, value in spec.items():
            if key == "command":
                continue
            if key == "sweep":
                merged["sweep"] = SweepSpec.from_preset(value)
            elif key == "family":
                merged["family"] = FamilySpec(value[0], tuple(value[1]))
            else:
                merged[key] = value
        merged["preset"] = args.preset
    if args.config is not None:
        merged.update(_read_config_file(args.config))
    for key in ("seed", "trials", "mode", "threads", "alpha", "phi", "n", "d", "n0",
                "nt", "nr", "rate", "rho", "eps", "nodes", "intensity",
                "dest_distance", "anchor", "split", "check", "sector",
                "rate_quantile"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if getattr(args, "pr", None) is not None:
        merged["eps"] = 1.0 - args.pr
        merged.pop("pr", None)
    if "pr" in merged:
        merged["eps"] = 1.0 - merged.pop("pr")
    if args.sweep is not None:
        merged["sweep"] = SweepSpec.from_flag(args.sweep)
    if args.family is not None:
        merged["family"] = FamilySpec.from_flag(args.family)
    merged.setdefault("sector", False)
    return ExperimentConfig(**merged)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "list-presets":
        return run_list_presets(sys.stdout)
    try:
        cfg = resolve_config(args)
    except (ConfigError, DomainError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    out_path = args.out
    try:
        if out_path is not None:
            out = open(out_path, "w", encoding="utf-8", newline="\n")
        else:
            out = sys.stdout
        try:
            if args.command == "line-compare":
                return run_line_compare(cfg, out)
            if args.command == "rand-compare":
                return run_rand_compare(cfg, out)
            if args.command == "ppp-sim":
                return run_ppp_sim(cfg, out, args.dump_sample)
            if args.command == "mc-validate":
                return run_mc_validate(cfg, out)
            return run_theorem(cfg, out)
        finally:
            if out_path is not None:
                out.close()
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HopEnergyError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    except Exception as exc:  # noqa: BLE001 - the contract maps these to exit 4
        print(f"internal failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
