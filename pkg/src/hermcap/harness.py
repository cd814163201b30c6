"""Seeded batch experiments: spectrum sweeps, histograms, gap reports.

Every run r of a sweep gets its own derived 64-bit seed

    derive_seed(master, r) = mix64(master XOR ((r + 1) * GOLDEN_GAMMA))

(mix64 is the splitmix64 finalizer), which is injective in r for a fixed
master, so runs are independent of execution order and of the worker count.
A run first draws its input cap (for sub-ovoid specs, a fresh random subset
of the canonical classical ovoid), then a strategy seed, from a single
SplitMix64 stream seeded with the derived value.

The JSON-lines run log excludes wall-clock time so repeated sweeps with the
same master seed are byte-identical whatever the parallelism.
"""

from __future__ import annotations

import io
import json
import multiprocessing
import time
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .hermitian import SurfaceModel, classical_ovoid
from .rng import GOLDEN_GAMMA, MASK64, SplitMix64, mix64
from .search import SearchConfig, SearchOutcome, StrategyKind, TieMode, run_strategy, sample_subcap


def derive_seed(master: int, run_index: int) -> int:
    """Per-run seed; distinct for distinct run indices under one master."""
    return mix64((master ^ ((run_index + 1) * GOLDEN_GAMMA)) & MASK64)


@dataclass(frozen=True)
class SeedSpec:
    """How each run's input cap is produced."""

    kind: str  # "empty" | "subovoid" | "fromfile"
    size: int | None = None
    path: str | None = None

    @classmethod
    def empty(cls) -> "SeedSpec":
        return cls(kind="empty")

    @classmethod
    def subovoid(cls, n: int) -> "SeedSpec":
        if n < 0:
            raise ValueError("subovoid size must be >= 0")
        return cls(kind="subovoid", size=n)

    @classmethod
    def fromfile(cls, path: str) -> "SeedSpec":
        return cls(kind="fromfile", path=path)

    def describe(self) -> str:
        if self.kind == "empty":
            return "empty"
        if self.kind == "subovoid":
            return f"subovoid({self.size})"
        return f"file:{self.path}"


@dataclass(frozen=True)
class RunRecord:
    run_index: int
    derived_seed: int
    strategy: str
    input_size: int
    final_size: int
    is_ovoid: bool
    wall_time_ms: float

    def log_fields(self) -> dict:
        # wall time is deliberately not logged: logs must be reproducible
        return {
            "run_index": self.run_index,
            "derived_seed": self.derived_seed,
            "strategy": self.strategy,
            "input_size": self.input_size,
            "final_size": self.final_size,
            "is_ovoid": self.is_ovoid,
        }


@dataclass
class Histogram:
    bins: list[tuple[int, int, float]]  # (size, count, percent), size ascending
    total_runs: int
    q: int
    strategy: str
    seed_desc: str


@dataclass
class GapReport:
    """Complete-cap sizes falling strictly between q^3-q+1 and q^3+1."""

    q: int
    lower: int
    upper: int
    offenders: dict[int, int]

    @property
    def is_clean(self) -> bool:
        return not self.offenders

    def __str__(self) -> str:
        if self.is_clean:
            return f"no cap sizes in ({self.lower}, {self.upper})"
        inside = ", ".join(f"{s}x{c}" for s, c in sorted(self.offenders.items()))
        return f"cap sizes inside ({self.lower}, {self.upper}): {inside}"


def _seed_ids(model: SurfaceModel, spec: SeedSpec, rng: SplitMix64, fixed_ids):
    if spec.kind == "empty":
        return np.zeros(0, dtype=np.int32)
    if spec.kind == "subovoid":
        return sample_subcap(model.classical_ovoid_ids(), spec.size, rng)
    return fixed_ids


def _execute_run(
    model: SurfaceModel,
    spec: SeedSpec,
    strategy: StrategyKind,
    master_seed: int,
    run_index: int,
    fixed_ids,
    config_kw: dict,
) -> RunRecord:
    derived = derive_seed(master_seed, run_index)
    rng = SplitMix64(derived)
    seed_ids = _seed_ids(model, spec, rng, fixed_ids)
    config = SearchConfig(strategy=strategy, rng_seed=rng.next_u64(), **config_kw)
    t0 = time.perf_counter()
    outcome: SearchOutcome = run_strategy(model, seed_ids, config)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    return RunRecord(
        run_index=run_index,
        derived_seed=derived,
        strategy=strategy.value,
        input_size=len(seed_ids),
        final_size=outcome.size,
        is_ovoid=outcome.is_ovoid,
        wall_time_ms=wall_ms,
    )


# worker context for fork-based pools; set in the parent right before the
# fork so children inherit the model without pickling it
_POOL_CTX = None


def _pool_run(run_index: int) -> RunRecord:
    model, spec, strategy, master_seed, fixed_ids, config_kw = _POOL_CTX
    return _execute_run(model, spec, strategy, master_seed, run_index, fixed_ids, config_kw)


def run_spectrum(
    model: SurfaceModel,
    seed_spec: SeedSpec,
    strategy: StrategyKind,
    n_runs: int,
    master_seed: int,
    jobs: int = 1,
    **config_kw,
) -> tuple[Histogram, list[RunRecord]]:
    """n_runs seeded runs; identical records for any jobs value."""
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    fixed_ids = None
    if seed_spec.kind == "fromfile":
        from .capfile import load_cap_ids

        fixed_ids = load_cap_ids(model, seed_spec.path)
    if seed_spec.kind == "subovoid":
        model.classical_ovoid_ids()  # cache before any fork
    args = (model, seed_spec, strategy, master_seed, fixed_ids, config_kw)
    if jobs <= 1:
        records = [_execute_run(model, seed_spec, strategy, master_seed, i, fixed_ids, config_kw) for i in range(n_runs)]
    else:
        global _POOL_CTX
        _POOL_CTX = args
        try:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(processes=jobs) as pool:
                chunk = max(1, n_runs // (jobs * 8))
                records = pool.map(_pool_run, range(n_runs), chunksize=chunk)
        finally:
            _POOL_CTX = None
    records.sort(key=lambda r: r.run_index)
    hist = make_histogram(records, model.q, strategy.value, seed_spec.describe())
    return hist, records


def make_histogram(records, q: int, strategy: str, seed_desc: str) -> Histogram:
    counts = Counter(r.final_size for r in records)
    total = len(records)
    bins = [(s, c, 100.0 * c / total) for s, c in sorted(counts.items())]
    return Histogram(bins=bins, total_runs=total, q=q, strategy=strategy, seed_desc=seed_desc)


def gap_check(records, q: int) -> GapReport:
    """Flag final sizes strictly inside (q^3 - q + 1, q^3 + 1)."""
    lower, upper = q**3 - q + 1, q**3 + 1
    offenders = Counter(
        r.final_size for r in records if lower < r.final_size < upper
    )
    return GapReport(q=q, lower=lower, upper=upper, offenders=dict(offenders))


def emit_histogram(hist: Histogram, fmt: str = "csv") -> bytes:
    """CSV (percent to one decimal) or JSON (full precision); rows by size."""
    if fmt == "csv":
        out = io.StringIO()
        out.write("size,count,percent\n")
        for size, count, percent in hist.bins:
            out.write(f"{size},{count},{percent:.1f}\n")
        return out.getvalue().encode()
    if fmt == "json":
        payload = {
            "q": hist.q,
            "strategy": hist.strategy,
            "seed_spec": hist.seed_desc,
            "total_runs": hist.total_runs,
            "bins": [
                {"size": s, "count": c, "percent": p} for s, c, p in hist.bins
            ],
        }
        return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode()
    raise ValueError(f"unknown histogram format {fmt!r}")


def parse_histogram_csv(data: bytes) -> list[tuple[int, int, float]]:
    lines = data.decode().strip().splitlines()
    if not lines or lines[0] != "size,count,percent":
        raise ValueError("not a histogram CSV")
    out = []
    for line in lines[1:]:
        s, c, p = line.split(",")
        out.append((int(s), int(c), float(p)))
    return out


def emit_runlog(records) -> bytes:
    """One JSON object per line, keyed by run index; excludes wall time."""
    out = io.StringIO()
    for r in sorted(records, key=lambda r: r.run_index):
        out.write(json.dumps(r.log_fields(), sort_keys=True) + "\n")
    return out.getvalue().encode()
