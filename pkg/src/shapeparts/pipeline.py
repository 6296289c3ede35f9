"""End-to-end decomposition of contour files."""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from shapeparts.contour import DEFAULT_SAMPLES, Contour, load_contour, resample_uniform
from shapeparts.diffusion import diffuse
from shapeparts.dominant_sets import Decomposition, extract_all
from shapeparts.metrics import MetricsReport, compute_metrics
from shapeparts.postprocess import prune_weakest
from shapeparts.randomization import (
    NullEnsembleConfig,
    ThresholdReport,
    null_cohesiveness_samples,
    select_clusters,
)
from shapeparts.visibility import (
    build_visibility_matrix,
    estimate_radius,
    max_radius,
    neighborhood_mask,
    off_diagonal_profile,
    restrict,
    write_matrix,
)

log = logging.getLogger(__name__)

OUTPUT_FORMATS = ("records", "svg", "both")
SUMMARY_FIELDS = [
    "input",
    "status",
    "n_points",
    "radius",
    "radius_source",
    "m",
    "k",
    "threshold",
    "graph_density",
    "internal_density",
    "external_density",
    "modularity",
    "error",
]


class StageError(RuntimeError):
    """A pipeline stage failed; ``stage`` names it and the message is kept as-is."""

    def __init__(self, stage: str, error: Exception):
        super().__init__(f"{stage}: {error}")
        self.stage = stage
        self.error = error


@dataclass
class PipelineConfig:
    inputs: list[Path] = field(default_factory=list)
    sample_count: int = DEFAULT_SAMPLES
    radius: int | None = None
    std_multiplier: float = 2.0
    num_random_graphs: int = 250
    rng_seed: int = 0
    swap_factor: int = 10
    postprocess: bool = False
    dump_matrices: bool = False
    output_format: str = "records"
    out_dir: Path = Path("shapeparts-out")
    add_direct: bool = False
    verbose: bool = False

    def __post_init__(self):
        if self.sample_count < 8:
            raise ValueError("sample_count must be >= 8")
        if self.radius is not None and not 1 <= self.radius <= max_radius(self.sample_count):
            raise ValueError(
                f"radius must lie in [1, {max_radius(self.sample_count)}] "
                f"for {self.sample_count} samples, got {self.radius}"
            )
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output format must be one of {OUTPUT_FORMATS}")

    def ensemble(self) -> NullEnsembleConfig:
        return NullEnsembleConfig(
            num_graphs=self.num_random_graphs,
            std_multiplier=self.std_multiplier,
            swap_factor=self.swap_factor,
            rng_seed=self.rng_seed,
        )

    def as_record(self) -> dict:
        return {
            "sample_count": self.sample_count,
            "radius": self.radius,
            "std_multiplier": self.std_multiplier,
            "num_random_graphs": self.num_random_graphs,
            "rng_seed": self.rng_seed,
            "swap_factor": self.swap_factor,
            "postprocess": self.postprocess,
            "add_direct": self.add_direct,
        }


@dataclass
class ShapeResult:
    contour: Contour
    A: np.ndarray
    A_n: np.ndarray
    D: np.ndarray
    profile: np.ndarray
    radius: int
    radius_source: str
    extracted: Decomposition
    threshold: ThresholdReport
    decomposition: Decomposition
    metrics: MetricsReport
    pruned_cluster: int | None = None

    @property
    def k(self) -> int:
        return self.decomposition.m

    def as_record(self, verbose: bool = False) -> dict:
        return {
            "n_points": self.contour.N,
            "radius": {"value": self.radius, "source": self.radius_source},
            "threshold": self.threshold.as_record(verbose),
            "extracted": self.extracted.as_record(),
            "k": self.k,
            "clusters": [c.as_record() for c in self.decomposition.clusters],
            "unassigned": list(self.decomposition.unassigned),
            "postprocess": {"removed_cluster": self.pruned_cluster},
            "metrics": self.metrics.as_record(),
        }


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except StageError:
        raise
    except Exception as exc:
        raise StageError(name, exc) from exc


def decompose(contour: Contour, cfg: PipelineConfig | None = None) -> ShapeResult:
    """Run visibility through metrics on an already resampled contour."""
    cfg = cfg or PipelineConfig()
    N = contour.N
    A = _stage("visibility", build_visibility_matrix, contour)
    profile = off_diagonal_profile(A)
    if cfg.radius is not None:
        radius, source = cfg.radius, "override"
    else:
        radius, source = _stage("visibility", estimate_radius, profile, N), "estimated"
    mask = _stage("visibility", neighborhood_mask, N, radius)
    A_n = restrict(A, mask)
    D = _stage("diffusion", diffuse, A_n, cfg.add_direct)

    extracted = _stage("dominant_sets", extract_all, D)
    report = _stage("randomization", null_cohesiveness_samples, D, cfg.ensemble())
    kept = select_clusters(extracted, report)

    pruned = None
    if cfg.postprocess:
        kept, pruned = _stage("postprocess", prune_weakest, kept, A)

    metrics = _stage("metrics", compute_metrics, A, kept)
    return ShapeResult(contour, A, A_n, D, profile, radius, source, extracted, report, kept, metrics, pruned)


def _dump_json(obj) -> str:
    def clean(v):
        if isinstance(v, float) and not math.isfinite(v):
            return None
        if isinstance(v, dict):
            return {k: clean(x) for k, x in v.items()}
        if isinstance(v, list):
            return [clean(x) for x in v]
        return v

    return json.dumps(clean(obj), indent=2, sort_keys=True) + "\n"


def process_shape(path: Path, cfg: PipelineConfig) -> tuple[dict, ShapeResult | None]:
    """Load, resample and decompose one file; errors become part of the record."""
    record: dict = {"input": str(path), "config": cfg.as_record()}
    try:
        raw = _stage("contour", load_contour, path)
        contour = _stage("contour", resample_uniform, raw, cfg.sample_count)
        result = decompose(contour, cfg)
    except StageError as exc:
        record.update(status="error", stage=exc.stage, error=str(exc))
        return record, None
    record["status"] = "ok"
    record.update(result.as_record(cfg.verbose))
    return record, result


def write_outputs(path: Path, record: dict, result: ShapeResult | None, cfg: PipelineConfig) -> list[Path]:
    from shapeparts.render import render_svg

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    stem = path.stem
    written = []
    if cfg.output_format in ("records", "both") or result is None:
        out = cfg.out_dir / f"{stem}.json"
        out.write_text(_dump_json(record))
        written.append(out)
    if result is None:
        return written
    if cfg.output_format in ("svg", "both"):
        out = cfg.out_dir / f"{stem}.svg"
        render_svg(result.contour, result.decomposition, out)
        written.append(out)
    if cfg.dump_matrices:
        for tag, M in (("A", result.A), ("An", result.A_n), ("D", result.D)):
            out = cfg.out_dir / f"{stem}.{tag}.txt"
            with out.open("w") as fh:
                write_matrix(M, fh)
            written.append(out)
    return written


def _summary_row(record: dict) -> dict:
    row = {k: "" for k in SUMMARY_FIELDS}
    row["input"] = record["input"]
    row["status"] = record["status"]
    if record["status"] != "ok":
        row["error"] = record["error"]
        return row
    metrics = record["metrics"]
    row.update(
        n_points=record["n_points"],
        radius=record["radius"]["value"],
        radius_source=record["radius"]["source"],
        m=len(record["extracted"]["clusters"]),
        k=record["k"],
        threshold=repr(record["threshold"]["threshold"]),
        graph_density=repr(metrics["graph_density"]),
        internal_density=repr(metrics["internal_density"]),
        external_density=repr(metrics["external_density"]),
        modularity=repr(metrics["modularity"]),
    )
    return row


def run_pipeline(cfg: PipelineConfig) -> tuple[list[dict], bool]:
    """Process every input; returns the records and whether all succeeded.

    Writes per-shape outputs plus ``summary.csv`` into ``cfg.out_dir``.
    """
    records = []
    for path in map(Path, cfg.inputs):
        log.info("decomposing %s", path)
        record, result = process_shape(path, cfg)
        if record["status"] != "ok":
            log.error("%s failed: %s", path, record["error"])
        write_outputs(path, record, result, cfg)
        records.append(record)

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    with (cfg.out_dir / "summary.csv").open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SUMMARY_FIELDS)
        writer.writeheader()
        for rec in records:
            writer.writerow(_summary_row(rec))
    return records, all(r["status"] == "ok" for r in records)
