"""Deterministic helpers for spreading pure per-item work across processes.

The contract: tasks are mapped in order and results returned in task order,
so any merge that respects list order gives byte-identical output whatever
the worker count.  Workers must be module-level functions (picklable).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def run_tasks(fn, tasks: list, jobs: int) -> list:
    """fn over tasks, in order; forks a process pool only when it pays."""
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def chunk_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    """Split range(total) into at most `parts` contiguous (start, count)
    pieces covering everything in order."""
    if total <= 0:
        return []
    parts = max(1, min(parts, total))
    base, extra = divmod(total, parts)
    out = []
    start = 0
    for i in range(parts):
        count = base + (1 if i < extra else 0)
        out.append((start, count))
        start += count
    return out


def chunk_list(items: list, parts: int) -> list[list]:
    """Split a list into at most `parts` contiguous chunks, preserving order."""
    return [items[s : s + c] for s, c in chunk_ranges(len(items), parts)]
