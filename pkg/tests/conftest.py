"""Shared fixtures.

The full benchmark matrix is expensive (tens of minutes on one core), so its
outputs are cached under ``.matrix_cache/<digest>`` where the digest covers
every source file of the package plus the experiment config.  Any code change
invalidates the cache and forces a fresh run.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from pathlib import Path

import pytest

import nichingmoea
from nichingmoea.harness import ExperimentConfig, read_results_csv, run_experiment

ROOT = Path(__file__).resolve().parents[1]
CACHE = Path(os.environ.get("NICHINGMOEA_MATRIX_CACHE", ROOT / ".matrix_cache"))


def source_digest(cfg: ExperimentConfig) -> str:
    h = hashlib.sha256()
    pkg = Path(nichingmoea.__file__).parent
    for path in sorted(pkg.rglob("*.py")):
        h.update(str(path.relative_to(pkg)).encode())
        h.update(path.read_bytes())
    h.update(cfg.to_ini().encode())
    return h.hexdigest()[:16]


def full_matrix_dir(jobs=None) -> tuple[Path, dict]:
    """Run (or reuse) the default 10 problems x 4 algorithms x 31 runs matrix."""
    cfg = ExperimentConfig()
    out = CACHE / source_digest(cfg)
    meta_path = out / "timing.json"
    if not meta_path.exists():
        cfg = cfg.replace(output_directory=out)
        start = time.perf_counter()
        run_experiment(cfg, jobs=jobs)
        meta = {"seconds": time.perf_counter() - start, "jobs": cfg.jobs() if jobs is None else jobs,
                "cpu_count": os.cpu_count()}
        meta_path.write_text(json.dumps(meta))
    return out, json.loads(meta_path.read_text())


@pytest.fixture(scope="session")
def full_matrix():
    out, meta = full_matrix_dir()
    return out, read_results_csv(out / "results.csv"), meta
