"""
Satisfied point sets, the row-sweep greedy superset, boundary augmentation,
ADD gadgets, and the gadget-filling (non-deterministic) greedy.

A pair of points is satisfied when the two points share a coordinate or the
closed axis-aligned rectangle they span contains a third point of the set
(corners and borders count). A set is satisfied when every pair is.

greedy_sweep processes rows bottom-up and completes each row so that every
rectangle between a current-row point and any point below is satisfied; the
points it adds sit on the current row above previously touched columns.

greedy_nondet starts from the input plus a surrounding `box` and repeatedly
fills ADD gadgets chosen by a pluggable selector until none remain. Its
output equals greedy_sweep on every input, which the test suite checks
aggressively; the two implementations share no code paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .perms import Point, SplitMix64

PointSet = frozenset


# ---------------------------------------------------------------------------
# Boundary augmentation
# ---------------------------------------------------------------------------

def base_points(n: int) -> PointSet:
    """Row-0 floor: {(i, 0) : i in 1..n}."""
    return frozenset((i, 0) for i in range(1, n + 1))


def box_points(n: int) -> PointSet:
    """Floor plus walls at columns 0 and n+1 over rows 0..n."""
    pts = {(i, 0) for i in range(1, n + 1)}
    pts.update((0, i) for i in range(0, n + 1))
    pts.update((n + 1, i) for i in range(0, n + 1))
    return frozenset(pts)


@dataclass(frozen=True)
class AugmentedSet:
    """A core point set over [n]x[n] plus optional boundary augmentation."""

    core: PointSet
    n: int
    augmentation: str = "none"  # none | base | box

    def __post_init__(self):
        if self.augmentation not in ("none", "base", "box"):
            raise ValueError(f"unknown augmentation {self.augmentation!r}")
        if self.core & self.augment_points():
            raise ValueError("augmentation collides with core points")

    def augment_points(self) -> PointSet:
        if self.augmentation == "base":
            return base_points(self.n)
        if self.augmentation == "box":
            return box_points(self.n)
        return frozenset()

    def full(self) -> PointSet:
        return self.core | self.augment_points()


# ---------------------------------------------------------------------------
# Satisfiedness
# ---------------------------------------------------------------------------

def pair_satisfied(p: Point, q: Point, Q: Iterable[Point]) -> bool:
    """
    True iff p, q share a coordinate or the closed rectangle spanned by them
    contains some third point of Q (borders and corners included).
    """
    if p[0] == q[0] or p[1] == q[1]:
        return True
    xlo, xhi = min(p[0], q[0]), max(p[0], q[0])
    ylo, yhi = min(p[1], q[1]), max(p[1], q[1])
    for r in Q:
        if r != p and r != q and xlo <= r[0] <= xhi and ylo <= r[1] <= yhi:
            return True
    return False


class PrefixGrid:
    """
    Coordinate-bounded 2-D prefix-count table over integer points with small
    nonnegative coordinates. Rectangle population counts in O(1).
    """

    def __init__(self, points: Iterable[Point]):
        pts = list(points)
        if pts:
            self.max_x = max(p[0] for p in pts)
            self.max_y = max(p[1] for p in pts)
        else:
            self.max_x = self.max_y = 0
        grid = np.zeros((self.max_x + 2, self.max_y + 2), dtype=np.int64)
        for x, y in pts:
            grid[x + 1, y + 1] += 1
        self.cum = grid.cumsum(axis=0).cumsum(axis=1)

    def count(self, xlo: int, xhi: int, ylo: int, yhi: int) -> int:
        """Points in the closed rectangle [xlo..xhi] x [ylo..yhi]."""
        if xlo > xhi or ylo > yhi:
            return 0
        c = self.cum
        xhi = min(xhi, self.max_x)
        yhi = min(yhi, self.max_y)
        xlo = max(xlo, 0)
        ylo = max(ylo, 0)
        if xlo > xhi or ylo > yhi:
            return 0
        return int(c[xhi + 1, yhi + 1] - c[xlo, yhi + 1] - c[xhi + 1, ylo] + c[xlo, ylo])


def _pair_matrix_satisfied(xs: np.ndarray, ys: np.ndarray, grid: PrefixGrid) -> np.ndarray:
    """
    Boolean m-by-m matrix: entry (i, j) true iff the point pair i, j is
    satisfied. Vectorized over all pairs.
    """
    x1 = xs[:, None]
    x2 = xs[None, :]
    y1 = ys[:, None]
    y2 = ys[None, :]
    aligned = (x1 == x2) | (y1 == y2)
    xlo = np.minimum(x1, x2) + 1
    xhi = np.maximum(x1, x2) + 1
    ylo = np.minimum(y1, y2) + 1
    yhi = np.maximum(y1, y2) + 1
    c = grid.cum
    inside = c[xhi, yhi] - c[xlo - 1, yhi] - c[xhi, ylo - 1] + c[xlo - 1, ylo - 1]
    # the two endpoints themselves are inside the closed rectangle
    return aligned | (inside >= 3)


def is_satisfied(Q: Iterable[Point]) -> bool:
    """True iff every unordered pair of points of Q is satisfied."""
    pts = list(set(Q))
    if len(pts) < 3:
        # pairs of a 2-point set can only be satisfied by alignment
        if len(pts) == 2:
            (x1, y1), (x2, y2) = pts
            return x1 == x2 or y1 == y2
        return True
    grid = PrefixGrid(pts)
    xs = np.fromiter((p[0] for p in pts), dtype=np.int64, count=len(pts))
    ys = np.fromiter((p[1] for p in pts), dtype=np.int64, count=len(pts))
    return bool(_pair_matrix_satisfied(xs, ys, grid).all())


def unsatisfied_pairs(Q: Iterable[Point], grid: PrefixGrid | None = None) -> list[tuple[Point, Point]]:
    """All unsatisfied unordered pairs, sorted for determinism."""
    pts = sorted(set(Q), key=lambda p: (p[1], p[0]))
    if len(pts) < 2:
        return []
    if grid is None:
        grid = PrefixGrid(pts)
    xs = np.fromiter((p[0] for p in pts), dtype=np.int64, count=len(pts))
    ys = np.fromiter((p[1] for p in pts), dtype=np.int64, count=len(pts))
    ok = _pair_matrix_satisfied(xs, ys, grid)
    bad = np.argwhere(~ok)
    out = []
    for i, j in bad:
        if i < j:
            out.append((pts[i], pts[j]))
    return out


# ---------------------------------------------------------------------------
# Greedy row sweep
# ---------------------------------------------------------------------------

def greedy_sweep(P: Iterable[Point]) -> PointSet:
    """
    Row-by-row greedy satisfied superset.

    Rows are processed in increasing y. Within a row, a point is added at
    column c whenever the topmost earlier point of column c spans an
    otherwise-empty rectangle with some current-row point; additions repeat
    until the row is stable. New points of the row participate as sources in
    later iterations, which makes the fixpoint independent of scan order.
    """
    pts = set(P)
    if not pts:
        return frozenset()
    top: dict[int, int] = {}  # column -> highest row strictly below the sweep line
    rows: dict[int, set[int]] = {}
    for x, y in pts:
        rows.setdefault(y, set()).add(x)
    out = set()
    for y in sorted(rows):
        cols = rows[y]
        _complete_row(cols, top)
        for x in cols:
            out.add((x, y))
            prev = top.get(x)
            if prev is None or prev < y:
                top[x] = y
    return frozenset(out)


def _complete_row(cols: set[int], top: dict[int, int]) -> None:
    """Grow cols in place until the row is greedy-stable against top."""
    changed = True
    while changed:
        changed = False
        ordered = sorted(cols)
        new: set[int] = set()
        for idx, c in enumerate(ordered):
            left_stop = ordered[idx - 1] if idx > 0 else None
            right_stop = ordered[idx + 1] if idx + 1 < len(ordered) else None
            # own column's earlier point caps visibility on both sides
            best0 = top.get(c, -1)
            best = best0
            x = c - 1
            while x > (left_stop if left_stop is not None else -1):
                t = top.get(x, -1)
                if t > best:
                    new.add(x)
                    best = t
                x -= 1
            best = best0
            if right_stop is not None or top:
                hi = right_stop if right_stop is not None else (max(top) if top else c)
                x = c + 1
                while x < (right_stop if right_stop is not None else hi + 1):
                    t = top.get(x, -1)
                    if t > best:
                        new.add(x)
                        best = t
                    x += 1
        if new - cols:
            cols |= new
            changed = True


def is_insertion_compatible(P: Iterable[Point], Q: Iterable[Point]) -> bool:
    """
    True iff Q adds no point below P in any column: every column of Q occurs
    in P and the column minima agree. Raises ValueError unless Q is a
    superset of P.
    """
    Pset, Qset = frozenset(P), frozenset(Q)
    if not Qset >= Pset:
        raise ValueError("Q must be a superset of P")
    pmin: dict[int, int] = {}
    for x, y in Pset:
        if x not in pmin or y < pmin[x]:
            pmin[x] = y
    qmin: dict[int, int] = {}
    for x, y in Qset:
        if x not in qmin or y < qmin[x]:
            qmin[x] = y
    return pmin == qmin


# ---------------------------------------------------------------------------
# ADD gadgets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AddGadget:
    """
    Five points (a, b, c, d, e) with a.y > b.y > c.y = d.y = e.y,
    a.x = c.x, b.x = d.x, and e strictly outside beyond a's column, whose
    interior rectangle is empty and whose fill point (b.x, a.y) is absent.
    Filling the gadget is forced for any greedy completion.
    """

    a: Point
    b: Point
    c: Point
    d: Point
    e: Point

    @property
    def fill(self) -> Point:
        return (self.b[0], self.a[1])

    @property
    def orientation(self) -> str:
        """'left-of' when e lies left of a's column, 'right-of' otherwise."""
        return "left-of" if self.e[0] < self.a[0] else "right-of"

    def points(self) -> tuple[Point, ...]:
        return (self.a, self.b, self.c, self.d, self.e)


def _gadget_shape_ok(g: AddGadget) -> bool:
    a, b, c, d, e = g.a, g.b, g.c, g.d, g.e
    if not (a[1] > b[1] > c[1] == d[1] == e[1]):
        return False
    if a[0] != c[0] or b[0] != d[0]:
        return False
    if e[0] < a[0] < b[0]:
        return True
    if e[0] > a[0] > b[0]:
        return True
    return False


def validate_gadget(host: Iterable[Point], g: AddGadget, grid: PrefixGrid | None = None) -> bool:
    """Literal check of the gadget conditions against a host point set."""
    host_set = host if isinstance(host, (set, frozenset)) else set(host)
    if not _gadget_shape_ok(g):
        return False
    if any(p not in host_set for p in g.points()):
        return False
    if g.fill in host_set:
        return False
    # interior of the e..fill rectangle, minus its four border lines
    ex, ey = g.e
    fx, fy = g.fill
    xlo, xhi = (ex + 1, fx - 1) if ex < fx else (fx + 1, ex - 1)
    ylo, yhi = ey + 1, fy - 1
    if xlo > xhi or ylo > yhi:
        return True
    if grid is not None:
        return grid.count(xlo, xhi, ylo, yhi) == 0
    return not any(xlo <= x <= xhi and ylo <= y <= yhi for x, y in host_set)


def find_gadgets(host: Iterable[Point] | AugmentedSet) -> list[AddGadget]:
    """
    Enumerate every ADD gadget of the host set, both orientations, ordered
    by (fill row, fill column, gadget points). Brute force; intended for
    oracle use on small hosts.
    """
    pts = host.full() if isinstance(host, AugmentedSet) else frozenset(host)
    rows: dict[int, list[int]] = {}
    cols: dict[int, list[int]] = {}
    for x, y in pts:
        rows.setdefault(y, []).append(x)
        cols.setdefault(x, []).append(y)
    for xs in rows.values():
        xs.sort()
    for ys in cols.values():
        ys.sort()
    grid = PrefixGrid(pts)
    out = []
    for xa, ya_list in cols.items():
        for xb, yb_list in cols.items():
            if xa == xb:
                continue
            sign = 1 if xa < xb else -1
            for ya in ya_list:
                for yb in yb_list:
                    if not ya > yb:
                        continue
                    if (xb, ya) in pts:
                        continue
                    # c, d on a shared row below b; e beyond a's column
                    for w in cols[xa]:
                        if w >= yb:
                            continue
                        if (xb, w) not in pts:
                            continue
                        for ex in rows[w]:
                            if sign * (ex - xa) >= 0:
                                continue
                            g = AddGadget((xa, ya), (xb, yb), (xa, w), (xb, w), (ex, w))
                            if validate_gadget(pts, g, grid):
                                out.append(g)
    out.sort(key=lambda g: (g.fill[1], g.fill[0], g.points()))
    return out


def fill_gadget(points: set[Point], g: AddGadget) -> Point:
    """Add the gadget's fill point to the (mutable) set; returns the point."""
    f = g.fill
    if f in points:
        raise ValueError("fill point already present")
    points.add(f)
    return f


# ---------------------------------------------------------------------------
# Non-deterministic greedy
# ---------------------------------------------------------------------------

Selector = Callable[[Sequence[AddGadget]], int]


def selector_first(gadgets: Sequence[AddGadget]) -> int:
    """Pick the first gadget in scan order."""
    return 0


def selector_lowest_fill_row(gadgets: Sequence[AddGadget]) -> int:
    """Pick the gadget whose fill point has the lowest row."""
    return min(range(len(gadgets)), key=lambda i: (gadgets[i].fill[1], gadgets[i].fill[0]))


def selector_random(seed: int) -> Selector:
    """Seeded uniformly random gadget choice."""
    rng = SplitMix64(seed)

    def pick(gadgets: Sequence[AddGadget]) -> int:
        return rng.randrange(len(gadgets))

    return pick


def _candidate_gadgets(pts: set[Point], grid: PrefixGrid, row_cap: int = 2) -> list[AddGadget]:
    """
    Validated gadgets constructed from unsatisfied pairs, one witness per
    (upper point, lower point) pair, restricted to the row_cap smallest
    lower rows. Returns a nonempty list iff the set is unsatisfied, filling
    is keyed by distinct fill points.
    """
    bad = unsatisfied_pairs(pts, grid)
    if not bad:
        return []
    rows: dict[int, list[int]] = {}
    for x, y in pts:
        rows.setdefault(y, []).append(x)
    for xs in rows.values():
        xs.sort()
    # group pairs by the lower point's row, prefer low rows
    bad_norm = []
    for p, q in bad:
        a, b = (p, q) if p[1] > q[1] else (q, p)
        bad_norm.append((b[1], a, b))
    bad_norm.sort()
    kept_rows = sorted({r for r, _, _ in bad_norm})[:row_cap]
    seen_fill = {}
    for r, a, b in bad_norm:
        if r not in kept_rows:
            continue
        fill = (b[0], a[1])
        if fill in seen_fill:
            continue
        g = _construct_gadget(pts, rows, a, b, grid)
        if g is not None:
            seen_fill[fill] = g
    out = sorted(seen_fill.values(), key=lambda g: (g.fill[1], g.fill[0], g.points()))
    if not out:
        # fall back to exhaustive construction over all pairs; the minimal
        # lower row is guaranteed to yield a valid gadget
        for r, a, b in bad_norm:
            g = _construct_gadget(pts, rows, a, b, grid)
            if g is not None:
                seen_fill[g.fill] = g
        out = sorted(seen_fill.values(), key=lambda g: (g.fill[1], g.fill[0], g.points()))
    return out


def _construct_gadget(
    pts: set[Point],
    rows: dict[int, list[int]],
    a: Point,
    b: Point,
    grid: PrefixGrid,
) -> AddGadget | None:
    """
    Try to complete an unsatisfied pair (a upper, b lower) into a gadget:
    pick c, d on the highest shared row below b with an e beyond a, taking
    e as close to a as possible, then validate.
    """
    import bisect

    xa, ya = a
    xb, yb = b
    sign = 1 if xa < xb else -1
    best = None
    for w in sorted((y for y in rows if y < yb), reverse=True):
        row = rows[w]
        i = bisect.bisect_left(row, xa)
        if i >= len(row) or row[i] != xa:
            continue
        j = bisect.bisect_left(row, xb)
        if j >= len(row) or row[j] != xb:
            continue
        # nearest e strictly beyond a, away from b
        if sign > 0:
            k = bisect.bisect_left(row, xa) - 1
            if k < 0:
                continue
            ex = row[k]
        else:
            k = bisect.bisect_right(row, xa)
            if k >= len(row):
                continue
            ex = row[k]
        g = AddGadget(a, b, (xa, w), (xb, w), (ex, w))
        if validate_gadget(pts, g, grid):
            best = g
            break
    return best


def greedy_nondet(
    P: Iterable[Point],
    selector: Selector = selector_first,
    n: int | None = None,
    max_steps: int | None = None,
) -> PointSet:
    """
    Gadget-filling greedy: surround P with a box, repeatedly fill a
    selector-chosen ADD gadget until the set is satisfied, return the result
    minus the box. Equals greedy_sweep(P) for every selector.
    """
    core = frozenset(P)
    if not core:
        return frozenset()
    if n is None:
        n = max(max(x for x, _ in core), max(y for _, y in core))
    if any(not (1 <= x <= n and 1 <= y <= n) for x, y in core):
        raise ValueError("points must lie in [n] x [n]")
    box = box_points(n)
    pts = set(core | box)
    steps = 0
    while True:
        grid = PrefixGrid(pts)
        gadgets = _candidate_gadgets(pts, grid)
        if not gadgets:
            break
        g = gadgets[selector(gadgets)]
        fill_gadget(pts, g)
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise RuntimeError("gadget filling did not terminate")
    # loop exits only when no pair of the boxed set is unsatisfied
    return frozenset(pts) - box
