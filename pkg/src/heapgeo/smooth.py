"""
The smooth restructuring of a sibling list in three equivalent views.

Non-deterministic view: repeatedly pick any local maximum and link it with
the larger of its neighbors (endpoint items link with their only neighbor).

Two-pass view: the particular local-maximum order realized by a single
left-to-right cursor pass, followed by a comparison-free right-to-left
accumulation.

Treap view: the result is the unique treap over (position, key) pairs,
in-order by position and min-heap by key; a node's treap left/right child
becomes its leftmost/rightmost gained child.

All three produce the identical tree and the identical link set, which
check_equivalence verifies directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .heap import LEFTMOST, RIGHTMOST, HeapForest, LinkEvent, strategy_smooth
from .perms import SplitMix64

# binary tree over positions: (position, left subtree, right subtree) or None
BinTree = tuple | None


@dataclass
class Restructure:
    """Outcome of one smooth restructuring of a sibling key sequence."""

    keys: tuple[int, ...]
    links: list[LinkEvent]
    root: int
    comparisons: int
    survivors_after_pass1: list[int] | None = None  # two-pass view only

    def link_pairs(self) -> frozenset:
        return frozenset((ev.child, ev.parent) for ev in self.links)

    def binary_tree(self) -> BinTree:
        """
        The gained-children shape mapped to a binary tree over positions.
        Each node gains at most one leftmost and one rightmost child.
        """
        pos = {key: i for i, key in enumerate(self.keys, start=1)}
        left: dict[int, int] = {}
        right: dict[int, int] = {}
        for ev in self.links:
            gained = left if ev.side == LEFTMOST else right
            if ev.parent in gained:
                raise AssertionError("node gained two children on one side")
            gained[ev.parent] = ev.child

        def build(key: int) -> BinTree:
            lf = build(left[key]) if key in left else None
            rt = build(right[key]) if key in right else None
            return (pos[key], lf, rt)

        return build(self.root) if self.keys else None


class LocalMaxSelector:
    """
    Chooses among the current local maxima.  Policies: leftmost, rightmost,
    random (seeded), or scripted (a replayable sequence of choice indexes).
    """

    def __init__(self, policy: str = "leftmost", seed: int = 0, script: Sequence[int] = ()):
        self.policy = policy
        self._rng = SplitMix64(seed)
        self._script = list(script)
        self._taken: list[int] = []

    def pick(self, count: int) -> int:
        if count <= 0:
            raise ValueError("no local maxima to select from")
        if self.policy == "leftmost":
            choice = 0
        elif self.policy == "rightmost":
            choice = count - 1
        elif self.policy == "random":
            choice = self._rng.randrange(count)
        elif self.policy == "scripted":
            choice = self._script.pop(0) % count
        else:
            raise ValueError(f"unknown selector policy {self.policy!r}")
        self._taken.append(choice)
        return choice

    @property
    def taken(self) -> list[int]:
        """Choice indexes actually used; feed back as a script to replay."""
        return list(self._taken)


def _fresh_forest(keys: Sequence[int]) -> HeapForest:
    h = HeapForest()
    for key in keys:
        h.insert(key)
    return h


def restructure_nondet(keys: Sequence[int], selector: LocalMaxSelector | None = None) -> Restructure:
    """
    Link an arbitrary (selector-chosen) local maximum with its larger
    neighbor until a single root remains. The produced link set and tree are
    independent of the selector.
    """
    if not keys:
        raise ValueError("empty sibling sequence")
    if selector is None:
        selector = LocalMaxSelector("leftmost")
    h = _fresh_forest(keys)
    while h.top_count > 1:
        maxima = []
        node = h.leftmost_root
        while node is not None:
            left_ok = node.prev is None or node.prev.key < node.key
            right_ok = node.next is None or node.next.key < node.key
            if left_ok and right_ok:
                maxima.append(node)
            node = node.next
        x = maxima[selector.pick(len(maxima))]
        h.comparisons += 1
        prev_key = x.prev.key if x.prev is not None else float("-inf")
        next_key = x.next.key if x.next is not None else float("-inf")
        if prev_key > next_key:
            h.link(x.prev)
        else:
            h.link(x)
    return Restructure(tuple(keys), h.links, h.leftmost_root.key, h.comparisons)


def restructure_twopass(keys: Sequence[int]) -> Restructure:
    """
    Single left-to-right smoothing pass plus right-to-left accumulation.
    Also records the top-level survivors after the smoothing pass, which are
    always in increasing order.
    """
    if not keys:
        raise ValueError("empty sibling sequence")
    h = _fresh_forest(keys)
    # replicate the strategy but pause between the passes to snapshot
    x = h.leftmost_root
    while x.next is not None:
        h.comparisons += 1
        if x.key < x.next.key:
            x = x.next
            continue
        while True:
            if x.prev is None:
                x = h.link(x)
                break
            h.comparisons += 1
            if x.prev.key > x.next.key:
                x = h.link(x.prev)
            else:
                x = h.link(x)
                break
    survivors = h.top_level_keys()
    while x.prev is not None:
        x = h.link(x.prev)
    return Restructure(tuple(keys), h.links, h.leftmost_root.key, h.comparisons, survivors)


def treapify(keys: Sequence[int]) -> BinTree:
    """
    The unique treap over pairs (position 1..k, key): in-order by position,
    min-heap by key. Built with the right-spine stack method in linear time.
    """
    if not keys:
        return None
    # nodes as [pos, left, right]; convert to tuples at the end
    stack: list[list] = []
    for i, key in enumerate(keys, start=1):
        node = [i, key, None, None]
        last = None
        while stack and stack[-1][1] > key:
            last = stack.pop()
        node[2] = last
        if stack:
            stack[-1][3] = node
        stack.append(node)

    def freeze(node) -> BinTree:
        if node is None:
            return None
        return (node[0], freeze(node[2]), freeze(node[3]))

    return freeze(stack[0])


def treap_link_pairs(keys: Sequence[int]) -> frozenset:
    """The treap's edge set expressed as (child key, parent key) pairs."""
    tree = treapify(keys)
    pairs = set()

    def walk(node: BinTree):
        if node is None:
            return
        pos, lf, rt = node
        for sub in (lf, rt):
            if sub is not None:
                pairs.add((keys[sub[0] - 1], keys[pos - 1]))
                walk(sub)

    walk(tree)
    return frozenset(pairs)


def check_equivalence(keys: Sequence[int], random_selectors: int = 4, seed: int = 0) -> bool:
    """
    True iff the two-pass view, the treap view, and the non-deterministic
    view under leftmost, rightmost, and seeded random selectors all produce
    the identical tree and identical link set.
    """
    if not keys:
        raise ValueError("empty sibling sequence")
    reference = treapify(keys)
    expected_pairs = treap_link_pairs(keys)
    runs = [restructure_twopass(keys)]
    selectors = [LocalMaxSelector("leftmost"), LocalMaxSelector("rightmost")]
    selectors += [LocalMaxSelector("random", seed=seed + i) for i in range(random_selectors)]
    runs += [restructure_nondet(keys, sel) for sel in selectors]
    for run in runs:
        if run.binary_tree() != reference:
            return False
        if run.link_pairs() != expected_pairs:
            return False
        if run.comparisons > 2 * len(run.links):
            return False
    return True
