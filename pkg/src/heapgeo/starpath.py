"""
The geometric twin of a stable-heap sorting run.

A monotone tree lives on a permutation point set plus the virtual root
(0, 0); every edge goes upward in y away from the root and siblings are
ordered by x. A link re-parents the higher of two neighboring siblings
under the lower one, entering its child list at the end it came from. The
star (all points under the root) turns into the y-sorted path and no link
is possible once the path is reached.

Heap executions map onto star-path executions by identifying the key
inserted at position i with the point (i, key); link traces transfer
verbatim through that relabeling in both directions.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .heap import LEFTMOST, RIGHTMOST, HeapError, LinkEvent
from .perms import Point, perm_of_point_set

ORIGIN: Point = (0, 0)


class MonotoneTree:
    """Rooted tree on P plus the origin, with x-sorted children lists."""

    def __init__(self, points: Iterable[Point]):
        self.points = frozenset(points)
        if ORIGIN in self.points:
            raise ValueError("the origin is reserved for the root")
        self.parent: dict[Point, Point | None] = {ORIGIN: None}
        self.children: dict[Point, list[Point]] = {ORIGIN: []}
        for p in self.points:
            self.parent[p] = None
            self.children[p] = []

    @classmethod
    def star(cls, points: Iterable[Point]) -> "MonotoneTree":
        t = cls(points)
        t.children[ORIGIN] = sorted(t.points)
        for p in t.points:
            t.parent[p] = ORIGIN
        return t

    @classmethod
    def path(cls, points: Iterable[Point]) -> "MonotoneTree":
        t = cls(points)
        chain = [ORIGIN] + sorted(t.points, key=lambda p: p[1])
        for above, below in zip(chain, chain[1:]):
            t.parent[below] = above
            t.children[above] = [below]
        return t

    def copy(self) -> "MonotoneTree":
        t = MonotoneTree(self.points)
        t.parent = dict(self.parent)
        t.children = {u: list(cs) for u, cs in self.children.items()}
        return t

    def is_path(self) -> bool:
        return all(len(cs) <= 1 for cs in self.children.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, MonotoneTree) and self.parent == other.parent

    def link(self, a: Point, b: Point) -> tuple[Point, Point]:
        """
        Link neighboring siblings a, b: the higher-y point is re-parented
        under the lower one, joining as leftmost child if it came from the
        left, rightmost otherwise. Returns (child, parent).
        """
        u = self.parent[a]
        if u is None or self.parent[b] is not u:
            raise ValueError(f"{a} and {b} are not siblings")
        sibs = self.children[u]
        ia, ib = sibs.index(a), sibs.index(b)
        if abs(ia - ib) != 1:
            raise ValueError(f"{a} and {b} are not neighboring siblings")
        child, parent = (a, b) if a[1] > b[1] else (b, a)
        sibs.remove(child)
        self.parent[child] = parent
        if child[0] < parent[0]:
            self.children[parent].insert(0, child)
        else:
            self.children[parent].append(child)
        return child, parent

    def unlink(self, child: Point, old_parent: Point, old_index: int) -> None:
        """Undo a link (oracle search support)."""
        parent = self.parent[child]
        cs = self.children[parent]
        if cs[0] == child:
            cs.pop(0)
        else:
            assert cs[-1] == child
            cs.pop()
        self.parent[child] = old_parent
        self.children[old_parent].insert(old_index, child)

    def edge_y_span(self) -> int:
        """Total y-extent of all edges; strictly decreases with every link."""
        return sum(p[1] - u[1] for p, u in self.parent.items() if u is not None)

    def audit(self) -> None:
        """Monotone edges, x-sorted siblings, and the sibling-gap nesting."""
        for p, u in self.parent.items():
            if u is not None:
                assert u[1] < p[1], "edge must descend toward the root"
        for u, cs in self.children.items():
            assert all(cs[i][0] < cs[i + 1][0] for i in range(len(cs) - 1))
            for q in cs:
                assert self.parent[q] is not None and self.parent[q] == u
        # nesting: each node's x lies in its parent's sibling gap
        for q, u in self.parent.items():
            if u is None or self.parent[u] is None:
                continue
            gsibs = self.children[self.parent[u]]
            i = gsibs.index(u)
            lo = gsibs[i - 1][0] if i > 0 else float("-inf")
            hi = gsibs[i + 1][0] if i + 1 < len(gsibs) else float("inf")
            assert lo < q[0] < hi, "sibling-gap nesting violated"
        seen = set()
        stack = [ORIGIN]
        while stack:
            u = stack.pop()
            assert u not in seen
            seen.add(u)
            stack.extend(self.children[u])
        assert seen == self.points | {ORIGIN}


def star_of(P: Iterable[Point]) -> MonotoneTree:
    return MonotoneTree.star(P)


def path_of(P: Iterable[Point]) -> MonotoneTree:
    return MonotoneTree.path(P)


# ---------------------------------------------------------------------------
# Trace transfer between heap view and geometric view
# ---------------------------------------------------------------------------

GeoEvent = tuple[Point, Point]  # (child point, parent point)


def _point_of_key(X: Sequence[int]) -> dict[int, Point]:
    """Key inserted at position i maps to the point (i, key)."""
    return {key: (i, key) for i, key in enumerate(X, start=1)}


def heap_to_geo(X: Sequence[int], trace: Iterable[LinkEvent]) -> list[GeoEvent]:
    """Relabel a heap link trace into a star-path link schedule on P^(X')."""
    to_point = _point_of_key(X)
    return [(to_point[ev.child], to_point[ev.parent]) for ev in trace]


def geo_to_heap(P: Iterable[Point], gtrace: Iterable[GeoEvent]) -> list[LinkEvent]:
    """
    Relabel a star-path schedule on a permutation point set back into a heap
    link trace; the side is forced by the x-order of the two points.
    """
    pts = frozenset(P)
    events = list(gtrace)
    if not all(p in pts for ev in events for p in ev):
        raise ValueError("trace references unknown points")
    out = []
    for a, b in events:
        child, parent = (a, b) if a[1] > b[1] else (b, a)
        side = LEFTMOST if child[0] < parent[0] else RIGHTMOST
        out.append(LinkEvent(child[1], parent[1], side))
    return out


def replay_geo(P: Iterable[Point], gtrace: Iterable[GeoEvent], audit: bool = False) -> MonotoneTree:
    """
    Execute a star-path schedule from star(P), validating every link.
    Returns the final tree; callers assert path-ness as needed.
    """
    tree = MonotoneTree.star(P)
    span = tree.edge_y_span()
    for a, b in gtrace:
        tree.link(a, b)
        new_span = tree.edge_y_span()
        if not new_span < span:
            raise ValueError("edge y-span failed to decrease")
        span = new_span
        if audit:
            tree.audit()
    return tree


def replay_heap_trace(X: Sequence[int], trace: Sequence[LinkEvent]) -> list[int]:
    """
    Replay a link trace as a sorting-mode heap execution: events must link
    neighboring top-level roots; the root is extracted whenever it is alone
    on the top level. Returns the extraction order (must come out sorted).
    """
    from .heap import HeapForest

    h = HeapForest()
    for key in X:
        h.insert(key)
    order: list[int] = []

    def drain_singletons():
        while len(h) and h.top_count == 1:
            key, _ = _extract_sole_root(h)
            order.append(key)

    for ev in trace:
        drain_singletons()
        node = h.nodes.get(ev.child)
        mate = h.nodes.get(ev.parent)
        if node is None or mate is None:
            raise HeapError(f"unknown key in event {ev}")
        if node.parent is not None or mate.parent is not None:
            raise HeapError(f"event {ev} does not link top-level roots")
        if node.prev is mate:
            linked = h.link(mate)
        elif node.next is mate:
            linked = h.link(node)
        else:
            raise HeapError(f"event {ev} links non-neighbors")
        if linked.key != ev.parent:
            raise HeapError(f"event {ev} has child and parent swapped")
        if h.links[-1].side != ev.side:
            raise HeapError(f"event {ev} recorded the wrong side")
    drain_singletons()
    if len(h):
        raise HeapError("trace ended before the heap was sorted")
    return order


def _extract_sole_root(h) -> tuple[int, list]:
    # extract_min with any strategy performs zero links on a single root
    return h.extract_min("simple")


# ---------------------------------------------------------------------------
# Brute-force optimum
# ---------------------------------------------------------------------------

class SearchBudgetExceeded(RuntimeError):
    pass


def brute_force_opt_stable(P: Iterable[Point], budget: int = 5_000_000) -> int:
    """
    Exact minimum number of links needed to turn star(P) into path(P),
    by exhaustive memoized search over all reachable monotone trees.
    Feasible for n <= 8; `budget` caps the number of distinct states.
    """
    pts = sorted(frozenset(P))
    n = len(pts)
    if n > 8:
        raise ValueError("state space guard: n must be <= 8")
    if n <= 1:
        return 0
    perm_of_point_set(pts)  # validates permutation shape
    tree = MonotoneTree.star(pts)
    order = {p: i for i, p in enumerate([ORIGIN] + pts)}
    memo: dict[tuple, int] = {}

    def encode() -> tuple:
        return tuple(order[tree.parent[p]] for p in pts)

    def rec() -> int:
        key = encode()
        hit = memo.get(key)
        if hit is not None:
            return hit
        if len(memo) >= budget:
            raise SearchBudgetExceeded(f"more than {budget} states")
        # recursion is acyclic: the edge y-span shrinks with every link
        moves = []
        for u, cs in tree.children.items():
            for i in range(len(cs) - 1):
                moves.append((cs[i], cs[i + 1]))
        if not moves:
            assert tree.is_path()
            memo[key] = 0
            return 0
        best = None
        for a, b in moves:
            old_parent = tree.parent[a if a[1] > b[1] else b]
            old_index = tree.children[old_parent].index(a if a[1] > b[1] else b)
            child, _ = tree.link(a, b)
            sub = rec()
            tree.unlink(child, old_parent, old_index)
            cost = 1 + sub
            if best is None or cost < best:
                best = cost
        memo[key] = best
        return best

    return rec()
