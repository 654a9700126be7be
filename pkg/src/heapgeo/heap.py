"""
Stable heaps: an ordered forest of multiway min-heaps restructured purely by
stable links between neighboring top-level roots.

A stable link of neighbors x, y (x left of y) makes y the rightmost child of
x when key(x) < key(y), and otherwise makes x the leftmost child of y; the
original left-to-right order of incomparable keys is preserved either way.
Cost is counted in links only; key comparisons are tallied separately and
never exceed twice the link count for any shipped strategy.

Extract-min consolidates the top-level list into one tree using a pluggable
strategy (exactly size-1 links), removes the root, and promotes its children.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

LEFTMOST = "leftmost"
RIGHTMOST = "rightmost"


class LinkEvent(NamedTuple):
    child: int
    parent: int
    side: str  # which end of the parent's child list the child joined


class _Node:
    __slots__ = ("key", "prev", "next", "leftmost", "rightmost", "parent")

    def __init__(self, key: int):
        self.key = key
        self.prev = None
        self.next = None
        self.leftmost = None
        self.rightmost = None
        self.parent = None

    def __repr__(self):  # pragma: no cover
        return f"_Node({self.key})"


class HeapError(Exception):
    pass


class HeapForest:
    """
    Forest of multiway min-heaps over distinct integer keys with O(1)
    neighbor and endpoint access on every sibling list.

    decrease_key detaches the node's subtree and, under the default policy,
    appends it at the right end of the top level; the sift-up policy instead
    reinserts it between its insertion-order predecessor and successor and
    is excluded from acceptance paths.
    """

    def __init__(self, unstable_links: bool = False):
        self.nodes: dict[int, _Node] = {}
        self.leftmost_root: _Node | None = None
        self.rightmost_root: _Node | None = None
        self.top_count = 0
        self.comparisons = 0
        self.links: list[LinkEvent] = []
        self.unstable_links = unstable_links
        self.insert_order: dict[int, int] = {}
        self._inserted = 0

    def __len__(self) -> int:
        return len(self.nodes)

    # -- basic operations (all O(1), zero link cost) --

    def insert(self, key: int) -> None:
        if key in self.nodes:
            raise HeapError(f"duplicate key {key}")
        node = _Node(key)
        self.nodes[key] = node
        self.insert_order[key] = self._inserted
        self._inserted += 1
        self._append_top(node)

    def meld(self, other: "HeapForest") -> None:
        """Concatenate other's top-level list to the right of this one."""
        if not other.nodes:
            return
        dup = self.nodes.keys() & other.nodes.keys()
        if dup:
            raise HeapError(f"duplicate keys in meld: {sorted(dup)}")
        base = self._inserted
        for key, node in other.nodes.items():
            self.nodes[key] = node
            self.insert_order[key] = base + other.insert_order[key]
        self._inserted = base + other._inserted
        if self.rightmost_root is None:
            self.leftmost_root = other.leftmost_root
            self.rightmost_root = other.rightmost_root
        else:
            self.rightmost_root.next = other.leftmost_root
            other.leftmost_root.prev = self.rightmost_root
            self.rightmost_root = other.rightmost_root
        self.top_count += other.top_count
        self.comparisons += other.comparisons
        self.links.extend(other.links)
        other.nodes = {}
        other.leftmost_root = other.rightmost_root = None
        other.top_count = 0

    def decrease_key(self, key: int, new_key: int, policy: str = "append") -> None:
        """Detach the subtree rooted at key and move it to the top level."""
        node = self.nodes.get(key)
        if node is None:
            raise HeapError(f"no such key {key}")
        if new_key >= key:
            raise HeapError("new key must be smaller")
        if new_key in self.nodes:
            raise HeapError(f"duplicate key {new_key}")
        del self.nodes[key]
        self.nodes[new_key] = node
        self.insert_order[new_key] = self.insert_order.pop(key)
        node.key = new_key
        if node.parent is None:
            return
        self._detach(node)
        if policy == "append":
            self._append_top(node)
        elif policy == "siftup":
            self._insert_top_by_order(node)
        else:
            raise HeapError(f"unknown decrease-key policy {policy!r}")

    def find_min_key(self) -> int:
        if not self.nodes:
            raise HeapError("empty heap")
        node = self.leftmost_root
        best = node.key
        while node.next is not None:
            node = node.next
            if node.key < best:
                best = node.key
        return best

    # -- extract-min --

    def extract_min(self, strategy: "Strategy | str") -> tuple[int, list[LinkEvent]]:
        """
        Consolidate the top level with the strategy (exactly top_count - 1
        stable links), remove the single remaining root, promote its
        children. Returns the extracted key and the links performed.
        """
        if not self.nodes:
            raise HeapError("extract from empty heap")
        strategy_fn = resolve_strategy(strategy)
        before = self.top_count
        mark = len(self.links)
        strategy_fn(self)
        performed = self.links[mark:]
        if self.top_count != 1 or len(performed) != before - 1:
            raise HeapError("strategy did not consolidate the top level")
        root = self.leftmost_root
        key = root.key
        del self.nodes[key]
        del self.insert_order[key]
        self.leftmost_root = root.leftmost
        self.rightmost_root = root.rightmost
        child = root.leftmost
        count = 0
        while child is not None:
            child.parent = None
            count += 1
            child = child.next
        self.top_count = count
        return key, performed

    # -- linking --

    def link(self, x: _Node) -> _Node:
        """
        Stable-link x with its right neighbor; returns the surviving root.
        The key comparison outcome is supplied by the structure, not counted.
        """
        y = x.next
        if x.parent is not None or y is None:
            raise HeapError("link requires a top-level node with a right sibling")
        if self.unstable_links:
            # classical link: larger always becomes the leftmost child
            if x.key < y.key:
                child, parent, side = y, x, LEFTMOST
            else:
                child, parent, side = x, y, LEFTMOST
        elif x.key < y.key:
            child, parent, side = y, x, RIGHTMOST
        else:
            child, parent, side = x, y, LEFTMOST
        self._splice_out_top(child)
        child.parent = parent
        if side == LEFTMOST:
            old = parent.leftmost
            child.prev = None
            child.next = old
            if old is None:
                parent.rightmost = child
            else:
                old.prev = child
            parent.leftmost = child
        else:
            old = parent.rightmost
            child.next = None
            child.prev = old
            if old is None:
                parent.leftmost = child
            else:
                old.next = child
            parent.rightmost = child
        self.links.append(LinkEvent(child.key, parent.key, side))
        return parent

    # -- introspection --

    def top_level_keys(self) -> list[int]:
        out = []
        node = self.leftmost_root
        while node is not None:
            out.append(node.key)
            node = node.next
        return out

    def children_keys(self, key: int) -> list[int]:
        node = self.nodes[key]
        out = []
        child = node.leftmost
        while child is not None:
            out.append(child.key)
            child = child.next
        return out

    def audit(self) -> None:
        """
        Full structural audit: heap order, doubly-linked list and endpoint
        consistency, and sibling order agreeing with insertion order.
        """
        seen = set()
        stack = [(self.leftmost_root, self.rightmost_root, None)]
        while stack:
            first, last, parent = stack.pop()
            if first is None:
                assert last is None
                continue
            assert first.prev is None and last.next is None
            node = first
            prev = None
            while node is not None:
                assert node.key not in seen
                seen.add(node.key)
                assert node.parent is parent
                if parent is not None:
                    assert node.key > parent.key
                if prev is not None:
                    assert node.prev is prev
                    assert self.insert_order[prev.key] < self.insert_order[node.key]
                prev = node
                stack.append((node.leftmost, node.rightmost, node))
                node = node.next
            assert prev is last
        assert seen == set(self.nodes)

    # -- internals --

    def _append_top(self, node: _Node) -> None:
        node.parent = None
        node.prev = self.rightmost_root
        node.next = None
        if self.rightmost_root is None:
            self.leftmost_root = node
        else:
            self.rightmost_root.next = node
        self.rightmost_root = node
        self.top_count += 1

    def _insert_top_by_order(self, node: _Node) -> None:
        """Place node between its insertion-order neighbors at the top level."""
        order = self.insert_order
        rank = order[node.key]
        cur = self.leftmost_root
        after = None
        while cur is not None and order[cur.key] < rank:
            after = cur
            cur = cur.next
        node.parent = None
        node.prev = after
        node.next = cur
        if after is None:
            self.leftmost_root = node
        else:
            after.next = node
        if cur is None:
            self.rightmost_root = node
        else:
            cur.prev = node
        self.top_count += 1

    def _splice_out_top(self, node: _Node) -> None:
        if node.prev is None:
            self.leftmost_root = node.next
        else:
            node.prev.next = node.next
        if node.next is None:
            self.rightmost_root = node.prev
        else:
            node.next.prev = node.prev
        node.prev = node.next = None
        self.top_count -= 1

    def _detach(self, node: _Node) -> None:
        parent = node.parent
        if node.prev is None:
            parent.leftmost = node.next
        else:
            node.prev.next = node.next
        if node.next is None:
            parent.rightmost = node.prev
        else:
            node.next.prev = node.prev
        node.prev = node.next = node.parent = None


# ---------------------------------------------------------------------------
# Restructuring strategies
# ---------------------------------------------------------------------------

Strategy = Callable[[HeapForest], None]


def _ltr_accumulate(h: HeapForest) -> None:
    while h.top_count > 1:
        x = h.leftmost_root
        h.comparisons += 1
        h.link(x)


def _rtl_accumulate(h: HeapForest) -> None:
    while h.top_count > 1:
        x = h.rightmost_root.prev
        h.comparisons += 1
        h.link(x)


def _pairing_round(h: HeapForest) -> None:
    k = h.top_count
    x = h.leftmost_root
    for _ in range(k // 2):
        h.comparisons += 1
        survivor = h.link(x)
        x = survivor.next


def strategy_simple(h: HeapForest) -> None:
    _ltr_accumulate(h)


def strategy_pairing_standard(h: HeapForest) -> None:
    _pairing_round(h)
    _rtl_accumulate(h)


def strategy_pairing_ftb(h: HeapForest) -> None:
    _pairing_round(h)
    _ltr_accumulate(h)


def strategy_pairing_multipass(h: HeapForest) -> None:
    k = h.top_count
    if k <= 1:
        return
    for _ in range(math.ceil(math.log2(k))):
        if h.top_count == 1:
            break
        _pairing_round(h)


def strategy_smooth(h: HeapForest) -> None:
    """
    Two-pass smooth restructuring: a left-to-right smoothing pass linking
    each discovered local maximum toward its larger neighbor, then a
    right-to-left accumulation with no further comparisons. After the
    smoothing pass the surviving top-level keys are increasing.
    """
    x = h.leftmost_root
    if x is None:
        return
    while x.next is not None:
        h.comparisons += 1
        if x.key < x.next.key:
            x = x.next
            continue
        # local maximum at x: the prefix up to x is increasing
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
    while x.prev is not None:
        x = h.link(x.prev)


_STRATEGIES: dict[str, Strategy] = {
    "simple": strategy_simple,
    "pairing_standard": strategy_pairing_standard,
    "pairing_ftb": strategy_pairing_ftb,
    "pairing_multipass": strategy_pairing_multipass,
    "smooth": strategy_smooth,
}

STRATEGY_NAMES = tuple(_STRATEGIES)

# unstable-link variants exist for experimentation only; they are not
# acceptance targets and the smooth variants are not equivalent to each other
UNSTABLE_SUFFIX = "_unstable"


def resolve_strategy(strategy: "Strategy | str") -> Strategy:
    if callable(strategy):
        return strategy
    name = strategy
    if name.endswith(UNSTABLE_SUFFIX):
        name = name[: -len(UNSTABLE_SUFFIX)]
    if name not in _STRATEGIES:
        raise HeapError(f"unknown strategy {strategy!r}")
    return _STRATEGIES[name]


def is_unstable_name(strategy: str) -> bool:
    return isinstance(strategy, str) and strategy.endswith(UNSTABLE_SUFFIX)


# ---------------------------------------------------------------------------
# Sorting mode
# ---------------------------------------------------------------------------

@dataclass
class SortRun:
    """Record of one sorting-mode execution: n inserts, n extract-mins."""

    input: tuple[int, ...]
    strategy: str
    trace: list[LinkEvent] = field(default_factory=list)
    extraction_order: list[int] = field(default_factory=list)
    comparisons: int = 0

    @property
    def cost(self) -> int:
        return len(self.trace)

    def summary(self) -> str:
        return f"{len(self.input)},{self.strategy},{self.cost},{self.comparisons}"


def sort_mode_run(X: Sequence[int], strategy: "Strategy | str" = "smooth") -> SortRun:
    """
    Insert X left to right into an empty heap, then extract-min n times.
    The extraction order must be 1..n; link and comparison counts are
    recorded. Each unordered key pair is linked at most once per run.
    """
    name = strategy if isinstance(strategy, str) else getattr(strategy, "__name__", "custom")
    h = HeapForest(unstable_links=is_unstable_name(name))
    for key in X:
        h.insert(key)
    run = SortRun(input=tuple(X), strategy=name)
    while len(h):
        key, _ = h.extract_min(strategy)
        run.extraction_order.append(key)
    run.trace = h.links
    run.comparisons = h.comparisons
    if run.extraction_order != sorted(X):
        raise HeapError("extraction order is not sorted")
    seen_pairs = set()
    for ev in run.trace:
        pair = frozenset((ev.child, ev.parent))
        if pair in seen_pairs:
            raise HeapError("a key pair was linked twice")
        seen_pairs.add(pair)
    return run
