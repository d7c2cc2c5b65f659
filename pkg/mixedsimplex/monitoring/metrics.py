"""
Prometheus metrics for sampling, face binning and automata constructions
"""

from __future__ import annotations

import time
from pathlib import Path

from prometheus_client import REGISTRY, Counter, Histogram, Info, write_to_textfile

# ℹ️ INFO : static package information
app_info = Info("mixedsimplex", "Information about the mixedsimplex package")

# 📊 COUNTER
samples_drawn_total = Counter(
    "samples_drawn_total", "Number of simplex points drawn", ["sampler"]
)

faces_binned_total = Counter(
    "faces_binned_total", "Number of samples binned into faces by face_of"
)

automaton_states_created_total = Counter(
    "automaton_states_created_total",
    "Number of automaton states created by constructions",
    ["operation"],
)

# ⏱️ HISTOGRAM
operation_duration_seconds = Histogram(
    "operation_duration_seconds",
    "Duration of library operations (seconds)",
    ["operation"],
    buckets=[0.001, 0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5, 1.0, 2.5, 5.0, 10.0],
)


class OperationTimer:
    """Context manager observing the duration of one named operation."""

    def __init__(self, operation: str):
        self.operation = operation

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        duration = time.perf_counter() - self.start_time
        operation_duration_seconds.labels(operation=self.operation).observe(duration)


def write_metrics(path: str | Path) -> None:
    """Dump the default registry in the Prometheus text format."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    write_to_textfile(str(path), REGISTRY)
