"""Timing matrix over front shapes, dimensions, pool sizes and selectors."""

from __future__ import annotations

import csv
import hashlib
import logging
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from pathlib import Path
from statistics import fmean

import numpy as np
import yaml

from . import _kernels
from .fronts import SHAPES, FrontSpec, generate, subsample_indices
from .io import format_value
from .selectors import SELECTORS, TRAJECTORY_TOLERANCE, SelectionProblem, select

log = logging.getLogger(__name__)

RESULTS_HEADER = ["algorithm", "shape", "dim", "pool", "k", "repeat", "seconds", "hvc_evals", "hv", "digest"]


@dataclass(frozen=True)
class BenchConfig:
    shapes: tuple[str, ...] = SHAPES
    dims: tuple[int, ...] = (5, 8, 10)
    pool_sizes: tuple[int, ...] = (1000, 2000)
    k: int = 100
    repeats: int = 5
    algorithms: tuple[str, ...] = ("gi", "ugi", "lgi")
    seed_base: int = 0
    reference_value: float = 1.1
    # size of the generated front each pool is drawn from
    source_size: int = 20000

    def __post_init__(self):
        for name in ("shapes", "dims", "pool_sizes", "algorithms"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.repeats < 1:
            raise ValueError("repeats must be at least 1")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        bad = [a for a in self.algorithms if a not in SELECTORS]
        if bad or not self.algorithms:
            raise ValueError(f"invalid algorithms {bad}; choose from {sorted(SELECTORS)}")
        bad = [s for s in self.shapes if s not in SHAPES]
        if bad:
            raise ValueError(f"invalid shapes {bad}; choose from {list(SHAPES)}")
        if any(d < 2 for d in self.dims):
            raise ValueError("every dim must be at least 2")
        if any(p < 1 or p > self.source_size for p in self.pool_sizes):
            raise ValueError(f"pool sizes must lie in [1, source_size={self.source_size}]")

    @classmethod
    def from_mapping(cls, data: dict) -> "BenchConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> "BenchConfig":
        """Read a YAML (or JSON) mapping."""
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
        if not isinstance(data, dict):
            raise ValueError(f"{path}: config must be a mapping")
        return cls.from_mapping(data)


@dataclass
class BenchRecord:
    algorithm: str
    shape: str
    dim: int
    pool: int
    k: int
    repeat: int
    seconds: float
    hvc_evals: int
    hv: float
    digest: str
    ok: bool = True
    problems: list[str] = field(default_factory=list)

    def row(self) -> list[str]:
        return [
            self.algorithm, self.shape, str(self.dim), str(self.pool), str(self.k),
            str(self.repeat), format_value(self.seconds), str(self.hvc_evals),
            format_value(self.hv), self.digest,
        ]


def subset_digest(indices) -> str:
    text = ",".join(str(int(i)) for i in indices)
    return hashlib.sha256(text.encode("ascii")).hexdigest()[:16]


@lru_cache(maxsize=8)
def _source(shape: str, dim: int, size: int, seed: int) -> np.ndarray:
    return generate(FrontSpec(shape, dim, size, seed))


def run_cell(config: BenchConfig, shape: str, dim: int, pool: int, repeat: int) -> list[BenchRecord]:
    """All configured selectors on one subsample; digests must agree."""
    source = _source(shape, dim, config.source_size, config.seed_base)
    idx = subsample_indices(source.shape[0], pool, config.seed_base + repeat)
    problem = SelectionProblem(source[idx], config.k, config.reference_value)
    records = []
    for algorithm in config.algorithms:
        start = time.perf_counter()
        result = select(problem, algorithm, check=False)
        seconds = time.perf_counter() - start
        exact = (
            float(_kernels.hv(problem.candidates[result.selected], problem.reference, dim))
            if result.selected else 0.0
        )
        rec = BenchRecord(algorithm, shape, dim, pool, config.k, repeat, seconds,
                          result.hvc_evaluations, exact, subset_digest(result.selected))
        if abs(exact - result.hv) > TRAJECTORY_TOLERANCE * max(1.0, exact):
            rec.ok = False
            rec.problems.append(f"summed gains {result.hv!r} != hv {exact!r}")
        records.append(rec)
        log.info("%s %s d=%d n=%d rep=%d: %.3fs", algorithm, shape, dim, pool, repeat, seconds)
    digests = {r.digest for r in records}
    if len(digests) > 1:
        for rec in records:
            rec.ok = False
            rec.problems.append("selected subsets differ across algorithms")
    return records


def _cells(config: BenchConfig):
    for shape in config.shapes:
        for dim in config.dims:
            for pool in config.pool_sizes:
                for repeat in range(config.repeats):
                    yield shape, dim, pool, repeat


def run_bench(config: BenchConfig, jobs: int = 1) -> list[BenchRecord]:
    """Run the whole matrix; ``jobs > 1`` spreads cells over worker processes."""
    cells = list(_cells(config))
    if jobs <= 1:
        return [rec for cell in cells for rec in run_cell(config, *cell)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_cell, config, *cell) for cell in cells]
        return [rec for fut in futures for rec in fut.result()]


def summarize(records: list[BenchRecord]) -> dict:
    groups: dict[tuple, list[BenchRecord]] = defaultdict(list)
    for rec in records:
        groups[(rec.algorithm, rec.shape, rec.dim, rec.pool, rec.k)].append(rec)
    cells = []
    for (algorithm, shape, dim, pool, k), recs in groups.items():
        cells.append({
            "algorithm": algorithm, "shape": shape, "dim": dim, "pool": pool, "k": k,
            "runs": len(recs),
            "mean_seconds": fmean(r.seconds for r in recs),
            "mean_hvc_evals": fmean(r.hvc_evals for r in recs),
        })
    failed = [{k: v for k, v in asdict(r).items() if k != "ok"} for r in records if not r.ok]
    return {"cells": cells, "records": len(records), "failed": failed}


def write_records(path: str | Path, records: list[BenchRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULTS_HEADER)
        for rec in records:
            writer.writerow(rec.row())
