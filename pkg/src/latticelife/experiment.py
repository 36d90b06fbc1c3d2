"""Experiment orchestration: build runs, write artifacts, compare modes.

A run is one (mode, cutoff) pair. The three run modes are the complex rule
(``quantum1``), the real rule (``realquantum1``) and the complex rule over
macroscopic-superposition conditions (``quantum1-sp``). The reference
parameter set is a^2 m^2 / 2 = 0.1 in one spacetime dimension, cutoffs
5, 9 and 13.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import report
from .amplitudes import LatticeParams, ModeSpec, QUANTUM1, REAL_QUANTUM1
from .halfline import HalfLineVector, build_M, solve_u
from .lifetable import LifeTable, make_life_table
from .transition import (
    Basis,
    TransitionMatrix,
    basis_transition_matrix,
    superposition_transition_matrix,
)

RUN_MODES = ("quantum1", "realquantum1", "quantum1-sp")

DEFAULT_CUTOFFS = (5, 9, 13)
DEFAULT_HALF_BARE_MASS_SQ = 0.1
DEFAULT_DIMENSION = 1
DEFAULT_HORIZON = 10_000


@dataclass
class ExperimentConfig:
    """One CLI invocation's worth of runs. Defaults reproduce the reference setup."""

    mode: str
    cutoffs: Tuple[int, ...] = DEFAULT_CUTOFFS
    half_bare_mass_sq: float = DEFAULT_HALF_BARE_MASS_SQ
    dimension: int = DEFAULT_DIMENSION
    horizon: int = DEFAULT_HORIZON
    out_dir: Path = field(default_factory=lambda: Path("latticelife-out"))
    table_format: str = "csv"
    plot: bool = True
    death_state_index: int = 1

    def __post_init__(self):
        if self.mode not in RUN_MODES:
            raise ValueError(f"unknown mode {self.mode!r}, expected one of {RUN_MODES}")
        if self.table_format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.table_format!r}")
        self.out_dir = Path(self.out_dir)


@dataclass(frozen=True)
class RunResult:
    """Everything computed for one (mode, cutoff) pair."""

    mode: str
    cutoff: int
    params: LatticeParams
    halfline: HalfLineVector
    matrix: TransitionMatrix
    tables: Dict[str, LifeTable]


def mode_spec(run_mode: str) -> ModeSpec:
    return REAL_QUANTUM1 if run_mode == "realquantum1" else QUANTUM1


def build_run(
    run_mode: str,
    cutoff: int,
    half_bare_mass_sq: float = DEFAULT_HALF_BARE_MASS_SQ,
    dimension: int = DEFAULT_DIMENSION,
    horizon: int = DEFAULT_HORIZON,
    death_state_index: int = 1,
) -> RunResult:
    """Compute the transition matrix and per-initial-state life tables."""
    rule = mode_spec(run_mode)
    params = LatticeParams.derive(rule, half_bare_mass_sq, dimension)
    hlv = solve_u(build_M(rule, params.eta, cutoff))
    if run_mode == "quantum1-sp":
        matrix = superposition_transition_matrix(hlv, rule, params.eta, params=params)
    else:
        matrix = basis_transition_matrix(hlv, rule, params.eta, params=params)
    death = Basis(death_state_index)
    if death not in matrix.states:
        raise ValueError(f"death state {death.label()} is not in the state set")
    alive = [s for s in matrix.states if s != death]
    tables = {
        s.label(): make_life_table(matrix, {death}, s, horizon=horizon) for s in alive
    }
    return RunResult(
        mode=run_mode, cutoff=cutoff, params=params, halfline=hlv, matrix=matrix, tables=tables
    )


def summary_document(run: RunResult) -> dict:
    expectancies = {label: float(t.expectancy) for label, t in run.tables.items()}
    return {
        "mode": run.mode,
        "N": run.cutoff,
        "eta": run.params.eta,
        "half_bare_mass_sq": run.params.half_bare_mass_sq,
        "dimension": run.params.dimension,
        "death_state": Basis(1).label(),
        "states": run.matrix.labels(),
        "life_expectancy": expectancies,
        "mean_life_expectancy": float(np.mean(list(expectancies.values()))),
    }


def write_run_artifacts(run: RunResult, cfg: ExperimentConfig) -> List[Path]:
    """Write the transition table, life table, spectrum, summary and heatmap."""
    out = cfg.out_dir
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{run.mode}_N{run.cutoff}"
    written = []

    transition_path = out / f"{stem}_transition.{cfg.table_format}"
    if cfg.table_format == "csv":
        report.write_transition_csv(run.matrix, transition_path)
    else:
        report.write_transition_json(run.matrix, transition_path)
    written.append(transition_path)

    life_path = out / f"{stem}_life.{cfg.table_format}"
    if cfg.table_format == "csv":
        report.write_life_csv(run.tables, life_path)
    else:
        report.write_life_json(run.tables, life_path)
    written.append(life_path)

    spectrum_path = out / f"{stem}_spectrum.json"
    report.write_spectrum_json(run.mode, run.cutoff, run.params.eta, run.halfline, spectrum_path)
    written.append(spectrum_path)

    summary_path = out / f"{stem}_summary.json"
    report.write_summary_json(summary_document(run), summary_path)
    written.append(summary_path)

    if cfg.plot:
        heatmap_path = out / f"{stem}_heatmap.svg"
        report.render_heatmap_svg(
            run.matrix, heatmap_path, f"{run.mode}  N={run.cutoff}  eta={run.params.eta:g}"
        )
        written.append(heatmap_path)
        life_fig_path = out / f"{stem}_life.svg"
        report.render_life_bars_svg(
            run.tables, life_fig_path, f"{run.mode}  N={run.cutoff}  eta={run.params.eta:g}"
        )
        written.append(life_fig_path)
    return written


def run_experiment(cfg: ExperimentConfig) -> List[Path]:
    """Run the configured mode over its cutoffs and write all artifacts."""
    written = []
    for cutoff in sorted(set(cfg.cutoffs)):
        run = build_run(
            cfg.mode,
            cutoff,
            half_bare_mass_sq=cfg.half_bare_mass_sq,
            dimension=cfg.dimension,
            horizon=cfg.horizon,
            death_state_index=cfg.death_state_index,
        )
        written.extend(write_run_artifacts(run, cfg))
    return written


# ---------------------------------------------------------------------------
# Mode comparison
# ---------------------------------------------------------------------------

def matched_mean(run: RunResult, labels) -> float:
    missing = [label for label in labels if label not in run.tables]
    if missing:
        raise ValueError(f"no life table for states {missing}")
    return float(np.mean([run.tables[label].expectancy for label in labels]))


def compare_modes(
    cutoff: int,
    half_bare_mass_sq: float = DEFAULT_HALF_BARE_MASS_SQ,
    dimension: int = DEFAULT_DIMENSION,
    horizon: int = DEFAULT_HORIZON,
    runs: Optional[Dict[str, RunResult]] = None,
) -> dict:
    """Ordering claims at one cutoff.

    Claim I: the complex rule outlives the real rule at every initial state.
    Claim II: the mean life expectancy of the complex rule over the matched
    initial states (the basis states appearing as superposition components,
    which for an odd cutoff is every alive state) strictly exceeds the
    superposition mode's mean, by a smaller relative margin than the real
    rule's.
    """
    if runs is None:
        runs = {}
        for run_mode in RUN_MODES:
            runs[run_mode] = build_run(
                run_mode, cutoff, half_bare_mass_sq, dimension, horizon
            )
    quantum, real, superposed = (
        runs["quantum1"],
        runs["realquantum1"],
        runs["quantum1-sp"],
    )

    per_index_quantum_gt_real = all(
        quantum.tables[label].expectancy > real.tables[label].expectancy
        for label in quantum.tables
    )

    component_labels = sorted(
        {
            Basis(k).label()
            for s in superposed.matrix.states
            if not isinstance(s, Basis)
            for k in (s.k1, s.k2)
        },
        key=lambda lab: int(lab.split("=")[1]),
    )
    mean_quantum = matched_mean(quantum, component_labels)
    mean_real = matched_mean(real, component_labels)
    mean_sp = float(np.mean([t.expectancy for t in superposed.tables.values()]))

    margin_sp = (mean_quantum - mean_sp) / mean_quantum
    margin_real = (mean_quantum - mean_real) / mean_quantum
    claim_two = mean_quantum > mean_sp and margin_sp < margin_real

    ordering = " > ".join(
        name
        for name, _ in sorted(
            (("quantum1", mean_quantum), ("quantum1-sp", mean_sp), ("realquantum1", mean_real)),
            key=lambda item: -item[1],
        )
    )
    return {
        "N": cutoff,
        "mean_life_expectancy": {
            "quantum1": mean_quantum,
            "quantum1-sp": mean_sp,
            "realquantum1": mean_real,
        },
        "matched_states": component_labels,
        "relative_margin": {"quantum1-sp": margin_sp, "realquantum1": margin_real},
        "quantum_outlives_real_per_index": per_index_quantum_gt_real,
        "superposition_margin_smaller": claim_two,
        "ordering": ordering,
    }


def reproduce_reference(
    out_dir: Path,
    cutoffs: Tuple[int, ...] = DEFAULT_CUTOFFS,
    half_bare_mass_sq: float = DEFAULT_HALF_BARE_MASS_SQ,
    dimension: int = DEFAULT_DIMENSION,
    horizon: int = DEFAULT_HORIZON,
    table_format: str = "csv",
    plot: bool = True,
) -> Tuple[List[Path], dict]:
    """Full sweep over all three modes, plus the comparison report.

    Artifacts are written per (mode, N) in a fixed order, so repeated runs
    produce byte-identical output trees. The report's ``pass`` field is true
    iff both ordering claims hold at every cutoff.
    """
    out_dir = Path(out_dir)
    written = []
    comparisons = []
    for cutoff in sorted(set(cutoffs)):
        runs = {}
        for run_mode in RUN_MODES:
            run = build_run(run_mode, cutoff, half_bare_mass_sq, dimension, horizon)
            runs[run_mode] = run
            cfg = ExperimentConfig(
                mode=run_mode,
                cutoffs=(cutoff,),
                half_bare_mass_sq=half_bare_mass_sq,
                dimension=dimension,
                horizon=horizon,
                out_dir=out_dir,
                table_format=table_format,
                plot=plot,
            )
            written.extend(write_run_artifacts(run, cfg))
        comparisons.append(
            compare_modes(cutoff, half_bare_mass_sq, dimension, horizon, runs=runs)
        )

    ok = all(
        c["quantum_outlives_real_per_index"] and c["superposition_margin_smaller"]
        for c in comparisons
    )
    document = {
        "cutoffs": sorted(cutoffs),
        "comparisons": comparisons,
        "claims": {
            "quantum_outlives_real_per_index": all(
                c["quantum_outlives_real_per_index"] for c in comparisons
            ),
            "superposition_margin_smaller": all(
                c["superposition_margin_smaller"] for c in comparisons
            ),
        },
        "pass": ok,
    }
    comparison_path = out_dir / "comparison.json"
    report.write_summary_json(document, comparison_path)
    written.append(comparison_path)
    return written, document
