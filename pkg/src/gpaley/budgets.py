"""Materialization budgets.

Symbolic formulas work at any size; anything that enumerates a field or
materializes an adjacency matrix is capped. ``GPG_MAX_ORDER`` overrides the
table/graph caps from the environment.
"""

import os

DEFAULT_TABLE_BUDGET = 2**22  # log/exp/Zech tables
DEFAULT_GRAPH_BUDGET = 2**13  # dense adjacency matrices
DEFAULT_ORACLE_BUDGET = 4096  # exhaustive pair counting, matrix powers
DEFAULT_TREE_BUDGET = 512  # exact determinants (Bareiss)


def _env_override() -> int | None:
    raw = os.environ.get("GPG_MAX_ORDER")
    if not raw:
        return None
    return int(raw)


def table_budget(explicit: int | None = None) -> int:
    return explicit or _env_override() or DEFAULT_TABLE_BUDGET


def graph_budget(explicit: int | None = None) -> int:
    return explicit or _env_override() or DEFAULT_GRAPH_BUDGET
