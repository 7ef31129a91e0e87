"""Experiment harness: attack/injury curves, cascade-size curves, and
security-threshold curves for the three network models, reproduced as CSV.

One master seed determines every byte of output: graphs and threshold
trials draw from seeds derived per (experiment, model, n, trial), cells
are independent work units, and aggregation (max/mean over trials) is
order-insensitive, so results are identical for any worker count.

Outputs per experiment: ``<experiment>.csv`` plus ``manifest.txt``
recording the config hash, tool version and completed cells; per-cell row
fragments under ``cells/`` make interrupted runs resumable.
"""

from __future__ import annotations

import hashlib
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import __version__
from .cascade import (infection_set, injury_set, random_thresholds,
                      security_threshold, top_degree_nodes)
from .generators import generate
from .seeding import derive_seed, derive_trial_seed, rng_from

_MODELS = ("er", "pa", "security")
_EXPERIMENTS = ("fig1", "fig2", "fig3")

_HEADERS = {
    "fig1": "model,n,d,k,injury_fraction,max_infection_fraction",
    "fig2": "model,n,d,a,max_infection_fraction",
    "fig3": "model,n,d,a,security_threshold",
}

_DEFAULTS = {
    "fig1": {"models": ("er", "pa"), "n_list": (10_000,), "d": 10},
    "fig2": {"models": ("er", "pa", "security"),
             "n_list": (100, 300, 1_000, 3_000, 10_000), "d": 10},
    "fig3": {"models": ("er", "pa", "security"),
             "n_list": (1_000, 10_000, 30_000, 100_000), "d": 5},
}

_DEFAULT_PHI_GRID = tuple(i / 100 for i in range(1, 51))


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""


def attack_size(n: int, scale: float = 1.0) -> int:
    """Logarithmic attack budget: ceil(scale * ln n), natural log."""
    return max(1, math.ceil(scale * math.log(n)))


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one experiment run (see module docstring)."""

    experiment: str
    models: tuple[str, ...]
    n_list: tuple[int, ...]
    d: int
    a: float = 1.5
    trials: int = 100
    epsilon: float = 0.1
    phi_grid: tuple[float, ...] = _DEFAULT_PHI_GRID
    master_seed: int = 0
    attack: str = "top"
    graphs_per_cell: int = 1

    def __post_init__(self):
        if self.experiment not in _EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if not self.models:
            raise ConfigError("models must not be empty")
        allowed = ("er", "pa") if self.experiment == "fig1" else _MODELS
        for model in self.models:
            if model not in allowed:
                raise ConfigError(
                    f"model {model!r} not valid for {self.experiment} "
                    f"(allowed: {', '.join(allowed)})")
        if not self.n_list:
            raise ConfigError("n_list must not be empty")
        if list(self.n_list) != sorted(set(self.n_list)):
            raise ConfigError("n_list must be strictly ascending")
        if self.d < 1:
            raise ConfigError("d must be at least 1")
        if "security" in self.models:
            if self.d < 2:
                raise ConfigError("the security model requires d >= 2")
            if not self.a > 1:
                raise ConfigError("homophyly exponent a must exceed 1")
        if any(n < self.d + 1 for n in self.n_list):
            raise ConfigError("every n must be at least d + 1")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if not 0.0 < self.epsilon < 1.0:
            raise ConfigError("epsilon must be in (0, 1)")
        if not self.phi_grid:
            raise ConfigError("phi_grid must not be empty")
        if any(not 0.0 < p <= 1.0 for p in self.phi_grid):
            raise ConfigError("phi_grid values must lie in (0, 1]")
        if any(b <= a for a, b in zip(self.phi_grid, self.phi_grid[1:])):
            raise ConfigError("phi_grid must be strictly ascending")
        if self.attack not in ("top", "random"):
            raise ConfigError("attack must be 'top' or 'random'")
        if self.attack != "top" and self.experiment != "fig2":
            raise ConfigError(
                f"{self.experiment} always attacks top-degree nodes")
        if self.graphs_per_cell < 1:
            raise ConfigError("graphs_per_cell must be at least 1")
        if self.d < 4:
            warnings.warn(
                f"d={self.d} < 4: security-model cascade containment "
                "weakens at small d", stacklevel=2)

    def canonical_text(self) -> str:
        """Deterministic key=value dump, used for hashing and the manifest."""
        parts = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = ",".join(_fmt(v) if isinstance(v, float) else str(v)
                                 for v in value)
            parts.append(f"{f.name}={value}")
        return "\n".join(parts) + "\n"


def config_hash(cfg: ExperimentConfig) -> str:
    return hashlib.sha256(cfg.canonical_text().encode("utf-8")).hexdigest()


def default_config(experiment: str, **overrides) -> ExperimentConfig:
    """Config with the per-experiment default models/n_list/d filled in."""
    if experiment not in _EXPERIMENTS:
        raise ConfigError(f"unknown experiment {experiment!r}")
    values = dict(_DEFAULTS[experiment])
    values.update(overrides)
    return ExperimentConfig(experiment=experiment, **values)


# ---- config file parsing ----------------------------------------------------

_INT_KEYS = {"d", "trials", "master_seed", "graphs_per_cell"}
_FLOAT_KEYS = {"a", "epsilon"}
_ALIASES = {"seed": "master_seed", "fig": "experiment"}


def parse_config_file(path) -> dict:
    """Flat key=value config; '#' starts a comment, blank lines ignored."""
    values: dict = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = _ALIASES.get(key.strip(), key.strip())
        values[key] = value.strip()
    return values


def config_from_values(values: dict) -> ExperimentConfig:
    """Build a validated config from string-valued settings."""
    known = {f.name for f in fields(ExperimentConfig)}
    parsed: dict = {}
    for key, value in values.items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        if isinstance(value, str):
            try:
                if key in _INT_KEYS:
                    value = int(value)
                elif key in _FLOAT_KEYS:
                    value = float(value)
                elif key == "models":
                    value = tuple(v.strip() for v in value.split(",") if v.strip())
                elif key == "n_list":
                    value = tuple(int(v) for v in value.split(",") if v.strip())
                elif key == "phi_grid":
                    value = tuple(float(v) for v in value.split(",") if v.strip())
            except ValueError as exc:
                raise ConfigError(f"bad value for {key!r}: {exc}") from None
        parsed[key] = value
    if "experiment" not in parsed:
        raise ConfigError("config must set experiment (fig1, fig2 or fig3)")
    experiment = parsed.pop("experiment")
    if experiment in ("1", "2", "3"):
        experiment = f"fig{experiment}"
    defaults = dict(_DEFAULTS.get(experiment, {}))
    defaults.update(parsed)
    return ExperimentConfig(experiment=experiment, **defaults)


# ---- cell computation --------------------------------------------------------


def _fmt(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return s or "0"


def cell_id(cfg: ExperimentConfig, model: str, n: int) -> str:
    return f"{cfg.experiment}_{model}_n{n}"


def _make_graph(cfg: ExperimentConfig, model: str, n: int, graph_index: int):
    seed = derive_seed(cfg.master_seed, f"{cfg.experiment}/graph", model, n,
                       graph_index)
    return generate(model, n, cfg.d, cfg.a if model == "security" else None,
                    master_seed=seed)


def _trial_tag(cfg: ExperimentConfig, graph_index: int) -> str:
    return cfg.experiment if graph_index == 0 else \
        f"{cfg.experiment}/g{graph_index}"


def _attack_nodes(cfg: ExperimentConfig, g, model: str, n: int, k: int,
                  graph_index: int):
    if cfg.attack == "top":
        return top_degree_nodes(g, k)
    rng = rng_from(cfg.master_seed, f"{cfg.experiment}/attack", model, n,
                   graph_index)
    return rng.choice(n, size=k, replace=False)


def _max_infection_fraction(cfg, g, model, n, attack, graph_index) -> float:
    best = 0.0
    tag = _trial_tag(cfg, graph_index)
    for t in range(cfg.trials):
        theta = random_thresholds(
            g, derive_trial_seed(cfg.master_seed, tag, model, n, t))
        best = max(best, infection_set(g, attack, theta).fraction)
    return best


def _compute_cell(cfg: ExperimentConfig, model: str, n: int) -> list[str]:
    """All CSV data rows of one (model, n) cell, in canonical order."""
    if cfg.experiment == "fig1":
        k_max = attack_size(n, 5.0)
        injury = [0.0] * (k_max + 1)
        max_inf = [0.0] * (k_max + 1)
        for j in range(cfg.graphs_per_cell):
            g = _make_graph(cfg, model, n, j)
            tag = _trial_tag(cfg, j)
            thetas = [
                random_thresholds(
                    g, derive_trial_seed(cfg.master_seed, tag, model, n, t))
                for t in range(cfg.trials)
            ]
            for k in range(1, k_max + 1):
                attack = top_degree_nodes(g, k)
                injury[k] += injury_set(g, attack).shape[0] / n
                max_inf[k] += max(
                    infection_set(g, attack, theta).fraction for theta in thetas)
        scale = 1.0 / cfg.graphs_per_cell
        return [
            f"{model},{n},{cfg.d},{k},{_fmt(injury[k] * scale)},"
            f"{_fmt(max_inf[k] * scale)}"
            for k in range(1, k_max + 1)
        ]

    if cfg.experiment == "fig2":
        k = attack_size(n)
        total = 0.0
        for j in range(cfg.graphs_per_cell):
            g = _make_graph(cfg, model, n, j)
            attack = _attack_nodes(cfg, g, model, n, k, j)
            total += _max_infection_fraction(cfg, g, model, n, attack, j)
        a_field = _fmt(cfg.a) if model == "security" else ""
        return [f"{model},{n},{cfg.d},{a_field},"
                f"{_fmt(total / cfg.graphs_per_cell)}"]

    # fig3
    k = attack_size(n)
    found = []
    for j in range(cfg.graphs_per_cell):
        g = _make_graph(cfg, model, n, j)
        attack = top_degree_nodes(g, k)
        phi = security_threshold(g, attack, cfg.phi_grid, cfg.epsilon)
        if phi is not None:
            found.append(phi)
    a_field = _fmt(cfg.a) if model == "security" else ""
    value = _fmt(sum(found) / len(found)) if found else ""
    return [f"{model},{n},{cfg.d},{a_field},{value}"]


def _cell_task(args):
    cfg, model, n = args
    return cell_id(cfg, model, n), _compute_cell(cfg, model, n)


# ---- orchestration -----------------------------------------------------------


@dataclass(frozen=True)
class ExperimentResult:
    """What a run produced: the CSV text (None if any cell failed), which
    cells were computed vs. resumed from disk, and per-cell failures."""

    csv_text: str | None
    csv_path: Path | None
    computed: tuple[str, ...]
    skipped: tuple[str, ...]
    failed: dict

    @property
    def ok(self) -> bool:
        return not self.failed


def _write_manifest(out_dir: Path, cfg: ExperimentConfig,
                    done: set[str]) -> None:
    lines = ["cascadelab-manifest v1",
             f"version {__version__}",
             f"config {config_hash(cfg)}"]
    lines.extend(f"cell {c}" for c in sorted(done))
    (out_dir / "manifest.txt").write_text("\n".join(lines) + "\n",
                                          encoding="utf-8")


def _read_manifest(out_dir: Path, cfg: ExperimentConfig) -> set[str]:
    path = out_dir / "manifest.txt"
    if not path.exists():
        return set()
    lines = path.read_text(encoding="utf-8").splitlines()
    if len(lines) < 3 or lines[0] != "cascadelab-manifest v1":
        return set()
    if lines[2] != f"config {config_hash(cfg)}":
        return set()  # different config: start over
    return {line.removeprefix("cell ").strip()
            for line in lines[3:] if line.startswith("cell ")}


def run_experiment(cfg: ExperimentConfig, out_dir=None,
                   jobs: int = 1) -> ExperimentResult:
    """Run every (model, n) cell of cfg, resuming from out_dir if possible.

    Returns the assembled CSV (header + rows in config order).  With
    out_dir set, writes ``<experiment>.csv``, ``manifest.txt`` and the
    per-cell fragments.  Cell failures are collected, not raised.
    """
    cells = [(model, n) for model in cfg.models for n in cfg.n_list]
    ids = {(model, n): cell_id(cfg, model, n) for model, n in cells}
    rows: dict[str, list[str]] = {}
    skipped: list[str] = []
    failed: dict = {}

    cells_dir = None
    if out_dir is not None:
        out_dir = Path(out_dir)
        cells_dir = out_dir / "cells"
        cells_dir.mkdir(parents=True, exist_ok=True)
        done = _read_manifest(out_dir, cfg)
        for key in cells:
            cid = ids[key]
            fragment = cells_dir / f"{cid}.csv"
            if cid in done and fragment.exists():
                content = fragment.read_text(encoding="utf-8").splitlines()
                rows[cid] = content
                skipped.append(cid)

    todo = [key for key in cells if ids[key] not in rows]

    def record(cid: str, cell_rows: list[str]) -> None:
        rows[cid] = cell_rows
        if cells_dir is not None:
            (cells_dir / f"{cid}.csv").write_text(
                "\n".join(cell_rows) + "\n" if cell_rows else "",
                encoding="utf-8")
            _write_manifest(out_dir, cfg, set(rows) - set(failed))

    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_cell_task, (cfg, model, n)): ids[(model, n)]
                       for model, n in todo}
            for future, cid in futures.items():
                exc = future.exception()
                if exc is not None:
                    failed[cid] = f"{type(exc).__name__}: {exc}"
                else:
                    record(*future.result())
    else:
        for model, n in todo:
            cid = ids[(model, n)]
            try:
                record(*_cell_task((cfg, model, n)))
            except Exception as exc:  # noqa: BLE001 - reported, not hidden
                failed[cid] = f"{type(exc).__name__}: {exc}"

    csv_text = None
    csv_path = None
    if not failed:
        lines = [_HEADERS[cfg.experiment]]
        for key in cells:
            lines.extend(rows[ids[key]])
        csv_text = "\n".join(lines) + "\n"
        if out_dir is not None:
            csv_path = out_dir / f"{cfg.experiment}.csv"
            csv_path.write_text(csv_text, encoding="utf-8")
    computed = tuple(cid for cid in sorted(rows) if cid not in skipped)
    return ExperimentResult(csv_text=csv_text, csv_path=csv_path,
                            computed=computed, skipped=tuple(sorted(skipped)),
                            failed=failed)


def _run_single(cfg: ExperimentConfig, experiment: str, out_dir, jobs) -> str:
    if cfg.experiment != experiment:
        cfg = replace(cfg, experiment=experiment)
    result = run_experiment(cfg, out_dir=out_dir, jobs=jobs)
    if not result.ok:
        details = "; ".join(f"{k}: {v}" for k, v in result.failed.items())
        raise RuntimeError(f"{len(result.failed)} cell(s) failed: {details}")
    return result.csv_text


def run_fig1(cfg: ExperimentConfig, out_dir=None, jobs: int = 1) -> str:
    """Injury vs. max-infection fractions for top-degree attacks k = 1..5 ln n."""
    return _run_single(cfg, "fig1", out_dir, jobs)


def run_fig2(cfg: ExperimentConfig, out_dir=None, jobs: int = 1) -> str:
    """Largest cascade fraction for attacks of size ln n, per model and n."""
    return _run_single(cfg, "fig2", out_dir, jobs)


def run_fig3(cfg: ExperimentConfig, out_dir=None, jobs: int = 1) -> str:
    """Grid-searched uniform security thresholds, per model and n."""
    return _run_single(cfg, "fig3", out_dir, jobs)
