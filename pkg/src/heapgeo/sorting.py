"""
Sorting front-ends and baselines with instance-specific cost reporting.

Heap-strategy sorting wraps a sorting-mode run and counts stable links as
cost. The Cartesian baseline builds the treap of the input (positions as
search keys, values as priorities) and drains it through a secondary binary
heap, counting that heap's comparisons as cost. The two cost currencies are
reported per algorithm and never mixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .heap import sort_mode_run
from .perms import (
    check_permutation,
    measure_df,
    measure_inv,
    measure_osc,
    measure_run,
)
from .smooth import treapify


@dataclass
class SortReport:
    algo: str
    n: int
    cost: int
    links: int
    comparisons: int
    inv: int
    run: int
    osc: int
    df: float
    seed: int | None = None

    @property
    def cost_per_n(self) -> float:
        return self.cost / self.n if self.n else 0.0

    @property
    def cost_per_nlogn(self) -> float:
        denom = self.n * math.log2(self.n) if self.n > 1 else 0.0
        return self.cost / denom if denom else 0.0

    @property
    def cost_per_osc_rate(self) -> float:
        """cost / (n * log2(osc/n + 2)), the oscillation-rate normalization."""
        if not self.n:
            return 0.0
        return self.cost / (self.n * math.log2(self.osc / self.n + 2))

    def csv_row(self) -> str:
        seed = "" if self.seed is None else str(self.seed)
        return (
            f"{self.algo},{self.n},{seed},{self.links},{self.comparisons},"
            f"{self.inv},{self.run},{self.osc},{self.df:.4f},"
            f"{self.cost_per_n:.4f},{self.cost_per_nlogn:.4f}"
        )


CSV_HEADER = "algo,n,seed,links,comparisons,inv,run,osc,df,cost_per_n,cost_per_nlogn"


def _measures(X: Sequence[int]) -> tuple[int, int, int, float]:
    return measure_inv(X), measure_run(X), measure_osc(X), measure_df(X)


def sort_with(X: Sequence[int], strategy: str = "smooth", seed: int | None = None) -> SortReport:
    """Sort X with a heap strategy; cost is the stable-link count."""
    perm = check_permutation(tuple(X))
    run = sort_mode_run(perm, strategy)
    inv, runs, osc, df = _measures(perm)
    return SortReport(
        algo=strategy,
        n=len(perm),
        cost=run.cost,
        links=run.cost,
        comparisons=run.comparisons,
        inv=inv,
        run=runs,
        osc=osc,
        df=df,
        seed=seed,
    )


class _CountingBinaryHeap:
    """Array binary min-heap that tallies every key comparison."""

    def __init__(self):
        self.items: list[int] = []
        self.comparisons = 0

    def __len__(self):
        return len(self.items)

    def _less(self, a: int, b: int) -> bool:
        self.comparisons += 1
        return self.items[a] < self.items[b]

    def push(self, value: int) -> None:
        items = self.items
        items.append(value)
        i = len(items) - 1
        while i > 0:
            parent = (i - 1) // 2
            if self._less(i, parent):
                items[i], items[parent] = items[parent], items[i]
                i = parent
            else:
                break

    def pop(self) -> int:
        items = self.items
        top = items[0]
        last = items.pop()
        if items:
            items[0] = last
            i = 0
            size = len(items)
            while True:
                left = 2 * i + 1
                right = left + 1
                smallest = i
                if left < size and self._less(left, smallest):
                    smallest = left
                if right < size and self._less(right, smallest):
                    smallest = right
                if smallest == i:
                    break
                items[i], items[smallest] = items[smallest], items[i]
                i = smallest
        return top


def cartesian_tree_sort(X: Sequence[int], seed: int | None = None) -> SortReport:
    """
    Treap-then-secondary-heap selection sort. The treap build is free; the
    reported cost is the number of comparisons inside the secondary binary
    heap while repeatedly deleting the minimum and inserting its children.
    """
    perm = check_permutation(tuple(X))
    n = len(perm)
    inv, runs, osc, df = _measures(perm)
    report = SortReport(
        algo="cartesian",
        n=n,
        cost=0,
        links=0,
        comparisons=0,
        inv=inv,
        run=runs,
        osc=osc,
        df=df,
        seed=seed,
    )
    if n == 0:
        return report
    tree = treapify(perm)  # (position, left, right) with min value on top
    children: dict[int, list] = {}

    def record(node) -> int:
        pos, left, right = node
        children[perm[pos - 1]] = [c for c in (left, right) if c is not None]
        return perm[pos - 1]

    heap = _CountingBinaryHeap()
    heap.push(record(tree))
    out = []
    while len(heap):
        value = heap.pop()
        out.append(value)
        for child in children[value]:
            heap.push(record(child))
    if out != sorted(perm):
        raise AssertionError("cartesian sort produced unsorted output")
    report.cost = heap.comparisons
    report.comparisons = heap.comparisons
    return report
