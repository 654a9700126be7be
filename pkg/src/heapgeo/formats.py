"""
Shared text formats.

Permutations: comma-separated ranks on one line; empty permutation is an
empty line. Point sets: one `x,y` pair per line, sorted by y then x. Link
traces: `child,parent,side` per line. Geometric traces: `ax,ay;bx,by` per
line. Insert-mode executions: `t: k1 k2 ...` per time plus a cost footer.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .heap import LinkEvent
from .perms import Point
from .replay import BstExecution


def dump_permutation(X: Sequence[int]) -> str:
    return ",".join(str(x) for x in X) + "\n"


def parse_permutation(text: str) -> tuple[int, ...]:
    body = text.strip()
    if not body:
        return ()
    return tuple(int(tok) for tok in body.split(","))


def dump_point_set(P: Iterable[Point]) -> str:
    pts = sorted(set(P), key=lambda p: (p[1], p[0]))
    return "".join(f"{x},{y}\n" for x, y in pts)


def parse_point_set(text: str) -> frozenset:
    pts = set()
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        x, y = line.split(",")
        pts.add((int(x), int(y)))
    return frozenset(pts)


def dump_link_trace(trace: Iterable[LinkEvent]) -> str:
    return "".join(f"{ev.child},{ev.parent},{ev.side}\n" for ev in trace)


def parse_link_trace(text: str) -> list[LinkEvent]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        child, parent, side = line.split(",")
        out.append(LinkEvent(int(child), int(parent), side))
    return out


def dump_geo_trace(trace: Iterable[tuple[Point, Point]]) -> str:
    return "".join(f"{a[0]},{a[1]};{b[0]},{b[1]}\n" for a, b in trace)


def parse_geo_trace(text: str) -> list[tuple[Point, Point]]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        a, b = line.split(";")
        ax, ay = a.split(",")
        bx, by = b.split(",")
        out.append(((int(ax), int(ay)), (int(bx), int(by))))
    return out


def dump_bst_execution(execution: BstExecution) -> str:
    lines = []
    for t, touched in enumerate(execution.touched, start=1):
        keys = " ".join(str(k) for k in sorted(touched))
        lines.append(f"{t}: {keys}")
    lines.append(f"cost: {execution.cost}")
    return "\n".join(lines) + "\n"
