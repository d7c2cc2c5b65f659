from .metrics import (
    OperationTimer,
    app_info,
    automaton_states_created_total,
    faces_binned_total,
    operation_duration_seconds,
    samples_drawn_total,
    write_metrics,
)

__all__ = [
    "OperationTimer",
    "app_info",
    "automaton_states_created_total",
    "faces_binned_total",
    "operation_duration_seconds",
    "samples_drawn_total",
    "write_metrics",
]
