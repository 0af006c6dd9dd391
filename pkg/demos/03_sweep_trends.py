"""A small divisor/budget sweep and the series behind the trend plots.

The full desk grid lives in ``erschess.experiments.DESK_GRID``; this script
runs a handful of its rows so it finishes in under a minute.
"""
import sys
import tempfile

from erschess.experiments import (ExperimentConfig, emit_csv, emit_plot_series,
                                  min_nodes_to_solve, min_solving_budget, run_sweep)

rows = [(1, 16), (1.25, 16), (1.25, 18), (1.25, 20)]
cfg = ExperimentConfig("combination", rows, node_limit=2_000_000)
table = run_sweep(cfg, progress=lambda r: print("  row", r.id, "done", file=sys.stderr))

emit_csv(table, sys.stdout)
print("smallest solving budget per divisor:", min_solving_budget(table))
print("fewest nodes to solve per divisor:  ", min_nodes_to_solve(table))

out = tempfile.mkdtemp(prefix="ers-series-")
for name, path in emit_plot_series(table, out).items():
    print(f"{name:15s} -> {path}")
