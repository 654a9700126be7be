"""
Realize an insertion-compatible satisfied superset as a concrete BST
insert-mode execution via next-touch-time priorities.

The tree is a treap keyed by value whose priority is the next row at which
the key's column is touched again (ties by key, never-again as a row past
the end). At each time step the priority-equal region of the treap is a
root-connected subtree; exactly those keys plus the newly inserted one are
touched, the touched region is rebuilt as a treap under refreshed
priorities, and the hanging subtrees reattach in their unique slots. The
touched sets reproduce the rows of the input superset exactly, so the
execution's cost is the size of the superset.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Iterable

from .geometry import is_insertion_compatible, is_satisfied
from .perms import Point, perm_of_point_set


class ReplayError(Exception):
    pass


class _TreapNode:
    __slots__ = ("key", "prio", "left", "right")

    def __init__(self, key: int, prio: tuple):
        self.key = key
        self.prio = prio
        self.left = None
        self.right = None


@dataclass
class BstExecution:
    """Touched key sets per time step, in execution order."""

    touched: list[frozenset] = field(default_factory=list)
    final_inorder: list[int] = field(default_factory=list)
    snapshots: list[dict] | None = None

    @property
    def cost(self) -> int:
        return sum(len(t) for t in self.touched)


def derive_base_permutation(Q: Iterable[Point]) -> tuple[int, ...]:
    """The permutation read off the column minima of Q (row order)."""
    mins: dict[int, int] = {}
    for x, y in Q:
        if x not in mins or y < mins[x]:
            mins[x] = y
    P = frozenset((x, y) for x, y in mins.items())
    perm_of_point_set(P)
    by_row = {y: x for x, y in P}
    return tuple(by_row[i] for i in range(1, len(P) + 1))


def replay_insert_mode(Q: Iterable[Point], snapshots: bool = False) -> BstExecution:
    """
    Simulate the insert-mode execution whose trace is Q. Verifies up front
    that Q is a satisfied, insertion-compatible superset of the permutation
    point set formed by its column minima, and per step that the touched
    set equals Q's row and covers the new key's current neighbors.
    """
    Qset = frozenset(Q)
    if not Qset:
        return BstExecution()
    X = derive_base_permutation(Qset)
    P = frozenset((x, i) for i, x in enumerate(X, start=1))
    if not is_insertion_compatible(P, Qset):
        raise ReplayError("input is not insertion-compatible over its column minima")
    if not is_satisfied(Qset):
        raise ReplayError("input set is not satisfied")
    n = len(X)
    rows: dict[int, list[int]] = {}
    cols: dict[int, list[int]] = {}
    for x, y in Qset:
        rows.setdefault(y, []).append(x)
        cols.setdefault(x, []).append(y)
    for v in rows.values():
        v.sort()
    for v in cols.values():
        v.sort()
    never = n + 1

    def next_touch(key: int, after: int) -> tuple:
        ys = cols[key]
        i = bisect.bisect_right(ys, after)
        return (ys[i], key) if i < len(ys) else (never, key)

    execution = BstExecution(snapshots=[] if snapshots else None)
    root: _TreapNode | None = None
    for t in range(1, n + 1):
        expected = frozenset(rows.get(t, ()))
        key_t = X[t - 1]
        # maximal root-connected region whose priority row is t; children
        # outside the region are the subtrees left hanging by its removal
        region: list[_TreapNode] = []
        hanging: list[_TreapNode] = []
        stack = [root] if root is not None else []
        while stack:
            node = stack.pop()
            if node.prio[0] == t:
                region.append(node)
                if node.left is not None:
                    stack.append(node.left)
                if node.right is not None:
                    stack.append(node.right)
            else:
                hanging.append(node)
        touched_keys = {node.key for node in region}
        if root is not None and not touched_keys:
            raise ReplayError(f"time {t}: insertion into a nonempty tree touched no key")
        touched_now = frozenset(touched_keys | {key_t})
        if touched_now != expected:
            raise ReplayError(
                f"time {t}: touched {sorted(touched_now)} but the row holds {sorted(expected)}"
            )
        for nb in (_neighbor(root, key_t, lower=True), _neighbor(root, key_t, lower=False)):
            if nb is not None and nb not in touched_keys:
                raise ReplayError(f"time {t}: neighbor {nb} of {key_t} was not touched")
        nodes = [_TreapNode(k, next_touch(k, t)) for k in sorted(touched_keys | {key_t})]
        sub_root = _build_treap(nodes)
        if touched_keys or root is None:
            # the region always contains the old root when nonempty
            for h in hanging:
                _attach(sub_root, h)
            root = sub_root
        execution.touched.append(touched_now)
        if execution.snapshots is not None:
            execution.snapshots.append(_tree_as_dict(root))
    execution.final_inorder = _inorder(root)
    if execution.final_inorder != sorted(X):
        raise ReplayError("final in-order traversal is not sorted")
    if execution.cost != len(Qset):
        raise ReplayError("total touches do not match the input size")
    return execution


def _neighbor(root: _TreapNode | None, key: int, lower: bool) -> int | None:
    """Predecessor (lower=True) or successor of key among current keys."""
    best = None
    node = root
    while node is not None:
        if lower and node.key < key:
            best = node.key if best is None or node.key > best else best
            node = node.right
        elif not lower and node.key > key:
            best = node.key if best is None or node.key < best else best
            node = node.left
        else:
            node = node.left if lower else node.right
    return best


def _build_treap(nodes: list[_TreapNode]) -> _TreapNode:
    """Right-spine stack construction over key-sorted nodes, min by prio."""
    stack: list[_TreapNode] = []
    for node in nodes:
        last = None
        while stack and stack[-1].prio > node.prio:
            last = stack.pop()
        node.left = last
        node.right = None
        if stack:
            stack[-1].right = node
        stack.append(node)
    return stack[0]


def _attach(root: _TreapNode, sub: _TreapNode) -> None:
    """Hang a detached subtree at its unique empty slot under root."""
    node = root
    while True:
        if sub.key < node.key:
            if node.left is None:
                node.left = sub
                return
            node = node.left
        else:
            if node.right is None:
                node.right = sub
                return
            node = node.right


def _inorder(root: _TreapNode | None) -> list[int]:
    out: list[int] = []
    stack: list[tuple[_TreapNode | None, bool]] = [(root, False)] if root else []
    while stack:
        node, expanded = stack.pop()
        if node is None:
            continue
        if expanded:
            out.append(node.key)
        else:
            stack.append((node.right, False))
            stack.append((node, True))
            stack.append((node.left, False))
    return out


def _tree_as_dict(root: _TreapNode | None) -> dict:
    out = {}
    stack = [root] if root else []
    while stack:
        node = stack.pop()
        out[node.key] = (
            node.prio,
            node.left.key if node.left else None,
            node.right.key if node.right else None,
        )
        if node.left:
            stack.append(node.left)
        if node.right:
            stack.append(node.right)
    return out


def greedy_future(X: Iterable[int]) -> BstExecution:
    """Insert-mode replay of the row-sweep greedy output on X's point set."""
    from .geometry import greedy_sweep
    from .perms import check_permutation, point_set_of

    perm = check_permutation(tuple(X))
    return replay_insert_mode(greedy_sweep(point_set_of(perm)))
