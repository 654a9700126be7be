"""
Executable constructions that turn star-path link schedules into satisfied
point supersets, with the invariant checkers used as test oracles.

Both constructions maintain a per-node open x-interval forming a laminar
family that mirrors the monotone tree, and add a constant number of points
per link so that, once the tree is the path, the accumulated set is
satisfied.

General mode starts from the input plus the row-0 base and works for any
schedule; its intervals always equal the leftmost/rightmost touched columns
of each node's row, and the reversed output is an insertion-compatible
superset of the reversed input.

Smooth mode starts from the input plus the surrounding box and drives its
own schedule (a local maximum with two neighbors is linked while one
exists; the remaining V-shape is drained endpoint-first). Every point it
adds fills an ADD gadget of the current set, so the final set minus the box
equals the row-sweep greedy output exactly. Interval bookkeeping has no
closed form in this mode; it is state updated by the phase rules, and the
one-neighbor phase is atomic: invariants are guaranteed at phase
boundaries, not between the links inside one phase.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .geometry import (
    AddGadget,
    PrefixGrid,
    _pair_matrix_satisfied,
    base_points,
    box_points,
    is_insertion_compatible,
    is_satisfied,
    validate_gadget,
)
from .perms import Point, perm_of_point_set
from .starpath import ORIGIN, GeoEvent, MonotoneTree

Interval = tuple[int, int]

CHECK_LEVELS = ("off", "boundary", "every-step")


class TransformError(Exception):
    pass


@dataclass
class AdditionRecord:
    point: Point
    phase: str  # general | general-alt | two-neighbor | one-neighbor
    was_new: bool
    witness: AddGadget | None = None


@dataclass
class StepRecord:
    kind: str  # general | two-neighbor | one-neighbor-phase
    links: list[GeoEvent]
    additions: list[AdditionRecord] = field(default_factory=list)


class TransformState:
    """Shared bookkeeping for both transformation modes."""

    def __init__(self, P: Iterable[Point], mode: str, check: str = "boundary", audit: bool = False):
        if mode not in ("general", "smooth"):
            raise TransformError(f"unknown mode {mode!r}")
        if check not in CHECK_LEVELS:
            raise TransformError(f"unknown check level {check!r}")
        self.P = frozenset(P)
        perm_of_point_set(self.P)
        self.n = len(self.P)
        self.mode = mode
        self.check = check
        self.audit_enabled = audit
        self.aug = base_points(self.n) if mode == "general" else box_points(self.n)
        self.Q: set[Point] = set(self.P | self.aug)
        self.tree = MonotoneTree.star(self.P)
        self.node_at_row: dict[int, Point] = {p[1]: p for p in self.P}
        self.node_at_row[0] = ORIGIN
        self.node_at_col: dict[int, Point] = {p[0]: p for p in self.P}
        full = (1, self.n) if mode == "general" else (0, self.n + 1)
        self.I: dict[Point, Interval] = {ORIGIN: full}
        for p in self.P:
            self.I[p] = (p[0], p[0])
        self.rows: dict[int, set[int]] = {}
        self.cols: dict[int, list[int]] = {}
        for x, y in self.Q:
            self.rows.setdefault(y, set()).add(x)
            self.cols.setdefault(x, []).append(y)
        for ys in self.cols.values():
            ys.sort()
        self.core_row_span: dict[int, Interval] = {}
        for x, y in self.Q - self.aug:
            self._grow_core_span(x, y)
        self.journal: list[StepRecord] = []
        self.links: list[GeoEvent] = []
        self.two_links = 0
        self.one_links = 0
        self.two_new = 0
        self.one_new = 0
        self.general_new = 0
        self.two_step_new_counts: list[int] = []
        self.one_phase_counts: list[tuple[int, int]] = []  # (links, new points)
        self.pending: dict[Point, tuple] = {}
        self.alt_used = False

    # -- point bookkeeping --

    def _grow_core_span(self, x: int, y: int) -> None:
        span = self.core_row_span.get(y)
        if span is None:
            self.core_row_span[y] = (x, x)
        else:
            self.core_row_span[y] = (min(span[0], x), max(span[1], x))

    def add_point(self, p: Point) -> bool:
        """Insert p into Q; returns True when p was new."""
        if p in self.Q:
            return False
        self.Q.add(p)
        x, y = p
        self.rows.setdefault(y, set()).add(x)
        bisect.insort(self.cols.setdefault(x, []), y)
        if p not in self.aug:
            self._grow_core_span(x, y)
        return True

    def row_empty_between(self, y: int, xlo: int, xhi: int) -> bool:
        """No Q point in row y with xlo < x < xhi."""
        row = self.rows.get(y)
        if not row:
            return True
        return not any(xlo < x < xhi for x in row)

    def open_box_empty(self, xlo: int, xhi: int, ylo: int, yhi: int) -> bool:
        """No Q point strictly inside the rectangle (exclusive bounds)."""
        for y in range(ylo + 1, yhi):
            if not self.row_empty_between(y, xlo, xhi):
                return False
        return True

    # -- results --

    def result_points(self) -> frozenset:
        return frozenset(self.Q)

    def core_points(self) -> frozenset:
        return frozenset(self.Q) - self.aug


# ---------------------------------------------------------------------------
# Invariant checkers (literal quantified statements)
# ---------------------------------------------------------------------------

def check_inv1(state: TransformState) -> bool:
    """Intervals form a laminar family whose structure is the current tree."""
    for p in state.P:
        u = state.tree.parent[p]
        plo, phi = state.I[p]
        ulo, uhi = state.I[u]
        if not (ulo <= plo and phi <= uhi):
            return False
    for cs in state.tree.children.values():
        for c1, c2 in zip(cs, cs[1:]):
            if not state.I[c1][1] <= state.I[c2][0]:
                return False
    return True


def _ancestor_row_matrix(state: TransformState) -> np.ndarray:
    n = state.n
    anc = np.zeros((n + 1, n + 1), dtype=bool)
    for p in state.P:
        y = p[1]
        u = state.tree.parent[p]
        while u is not None:
            anc[u[1], y] = True
            u = state.tree.parent[u]
    return anc


def check_inv2(state: TransformState) -> bool:
    """Rows of ancestor-related nodes are pairwise satisfied."""
    pts = sorted(state.Q)
    xs = np.fromiter((p[0] for p in pts), dtype=np.int64, count=len(pts))
    ys = np.fromiter((p[1] for p in pts), dtype=np.int64, count=len(pts))
    grid = PrefixGrid(pts)
    sat = _pair_matrix_satisfied(xs, ys, grid)
    anc = _ancestor_row_matrix(state)
    need = anc[ys[:, None], ys[None, :]]
    need |= need.T
    return bool((sat | ~need).all())


def check_inv2_first_violation(state: TransformState) -> tuple[Point, Point] | None:
    """Slow literal scan used for counterexample reporting."""
    from .geometry import pair_satisfied

    rows = state.rows
    for v in state.P:
        u = state.tree.parent[v]
        while u is not None:
            for qx in sorted(rows.get(v[1], ())):
                for px in sorted(rows.get(u[1], ())):
                    if not pair_satisfied((px, u[1]), (qx, v[1]), state.Q):
                        return ((px, u[1]), (qx, v[1]))
            u = state.tree.parent[u]
    return None


def check_inv3(state: TransformState) -> bool:
    """No Q point strictly between a node and its parent in the node's column."""
    for p in state.P:
        u = state.tree.parent[p]
        col = state.cols.get(p[0], ())
        i = bisect.bisect_right(col, u[1])
        if i < len(col) and col[i] < p[1]:
            return False
    return True


def check_inv3prime(state: TransformState) -> bool:
    """No non-augmentation Q point strictly below any node of its column."""
    for x, y in state.Q:
        if (x, y) in state.aug:
            continue
        v = state.node_at_col.get(x)
        if v is not None and y < v[1]:
            return False
    return True


def check_inv4(state: TransformState) -> bool:
    """Interval endpoints and their parent-row projections are in Q."""
    for p in state.P:
        u = state.tree.parent[p]
        lo, hi = state.I[p]
        for col in (lo, hi):
            if (col, p[1]) not in state.Q or (col, u[1]) not in state.Q:
                return False
    return True


def check_inv5(state: TransformState) -> bool:
    """Every node's interval covers its row's non-augmentation x-span."""
    for p in state.P:
        span = state.core_row_span.get(p[1])
        if span is None:
            continue
        lo, hi = state.I[p]
        if not (lo <= span[0] and span[1] <= hi):
            return False
    return True


def check_interval_closed_form(state: TransformState) -> bool:
    """General mode only: intervals equal each row's touched-column extent."""
    for node in list(state.P) + [ORIGIN]:
        row = state.rows.get(node[1])
        if not row:
            return False
        if state.I[node] != (min(row), max(row)):
            return False
    return True


def run_invariant_suite(state: TransformState) -> None:
    checks: list[tuple[str, Callable[[TransformState], bool]]] = [("inv1", check_inv1), ("inv2", check_inv2)]
    if state.mode == "general":
        checks += [("inv3", check_inv3), ("inv4", check_inv4), ("closed-form", check_interval_closed_form)]
    else:
        checks += [("inv3'", check_inv3prime), ("inv4", check_inv4), ("inv5", check_inv5)]
    for name, fn in checks:
        if not fn(state):
            detail = ""
            if name == "inv2":
                bad = check_inv2_first_violation(state)
                detail = f" first violation: {bad}"
            raise TransformError(f"invariant {name} violated after step {len(state.journal)}{detail}")


# ---------------------------------------------------------------------------
# Witness gadget construction
# ---------------------------------------------------------------------------

def gadget_audit(state: TransformState, new_point: Point) -> AddGadget:
    """
    Witness ADD gadget of the pre-addition set whose fill is new_point,
    assembled from the recipe recorded when the step proposed the point.
    Raises unless new_point is a pending, genuinely new addition.
    """
    ctx = state.pending.get(new_point)
    if ctx is None:
        raise TransformError(f"{new_point} was not newly added in the current step")
    gadget = AddGadget(*ctx)
    if gadget.fill != new_point:
        raise TransformError("witness fill point mismatch (implementation bug)")
    if not _validate_witness(state, gadget):
        raise TransformError(f"no valid witness gadget for {new_point} (implementation bug)")
    return gadget


def _validate_witness(state: TransformState, g: AddGadget) -> bool:
    # same conditions as geometry.validate_gadget, against the live Q
    from .geometry import _gadget_shape_ok

    if not _gadget_shape_ok(g):
        return False
    if any(p not in state.Q for p in g.points()):
        return False
    if g.fill in state.Q:
        return False
    ex, ey = g.e
    fx, fy = g.fill
    xlo, xhi = (ex, fx) if ex < fx else (fx, ex)
    return state.open_box_empty(xlo, xhi, ey, fy)


# ---------------------------------------------------------------------------
# General transformation
# ---------------------------------------------------------------------------

def init_general(P: Iterable[Point], check: str = "boundary", audit: bool = False) -> TransformState:
    state = TransformState(P, "general", check=check, audit=audit)
    if check != "off":
        run_invariant_suite(state)
    return state


def general_step(state: TransformState, link: GeoEvent, alt: bool = False) -> list[AdditionRecord]:
    """
    Apply one link (child point, parent point) and add the covering points.
    Standard placement puts the child's interval endpoints on the parent's
    row (the far endpoint is always a new point); the alternative placement
    instead bridges the parent's near endpoint at the child's row and the
    child's far endpoint at the parent's row, and may add nothing.
    """
    if state.mode != "general":
        raise TransformError("general_step requires general mode")
    child, parent = link
    ia = state.I[parent]
    ib = state.I[child]
    if parent[0] < child[0]:
        if not alt:
            d = (ib[0], parent[1])
            e = (ib[1], parent[1])
            new_ia = (ia[0], ib[1])
            new_ib = ib
        else:
            d = (ia[1], child[1])
            e = (ib[1], parent[1])
            new_ia = (ia[0], ib[1])
            new_ib = (ia[1], ib[1])
    else:
        if not alt:
            d = (ib[1], parent[1])
            e = (ib[0], parent[1])
            new_ia = (ib[0], ia[1])
            new_ib = ib
        else:
            d = (ia[0], child[1])
            e = (ib[0], parent[1])
            new_ia = (ib[0], ia[1])
            new_ib = (ib[0], ia[0])
    try:
        state.tree.link(child, parent)
    except ValueError as exc:
        raise TransformError(f"illegal link {link}: {exc}") from None
    if not alt and e in state.Q:
        raise TransformError("far endpoint already present (implementation bug)")
    phase = "general-alt" if alt else "general"
    records = []
    for p in dict.fromkeys((d, e)):
        was_new = state.add_point(p)
        records.append(AdditionRecord(p, phase, was_new))
    new_count = sum(r.was_new for r in records)
    if not alt and not 1 <= new_count <= 2:
        raise TransformError("standard step must add one or two new points")
    if alt and new_count > 2:
        raise TransformError("alternative step added more than two points")
    state.general_new += new_count
    state.alt_used = state.alt_used or alt
    state.I[parent] = new_ia
    state.I[child] = new_ib
    state.links.append(link)
    state.journal.append(StepRecord("general", [link], records))
    if state.check == "every-step":
        # one alternative step abandons inv3 and the closed form for good
        if state.alt_used:
            _run_alt_suite(state)
        else:
            run_invariant_suite(state)
    return records


def _run_alt_suite(state: TransformState) -> None:
    # the alternative placement abandons inv3 and the closed form
    for name, fn in (("inv1", check_inv1), ("inv2", check_inv2), ("inv4", check_inv4)):
        if not fn(state):
            raise TransformError(f"invariant {name} violated after step {len(state.journal)}")


AltPolicy = Callable[[int, GeoEvent], bool]


def general_transform(
    P: Iterable[Point],
    gtrace: Sequence[GeoEvent],
    alt_policy: AltPolicy | Sequence[bool] | None = None,
    check: str = "boundary",
) -> TransformState:
    """
    Fold general_step over a complete star-path schedule. The final set is
    satisfied and, flipped upside down, insertion-compatible for the flipped
    input. Raises on incomplete or illegal schedules.
    """
    state = init_general(P, check=check)
    for idx, link in enumerate(gtrace):
        if alt_policy is None:
            alt = False
        elif callable(alt_policy):
            alt = bool(alt_policy(idx, link))
        else:
            alt = bool(alt_policy[idx])
        general_step(state, link, alt=alt)
    if not state.tree.is_path():
        raise TransformError("schedule did not end at the path")
    if state.check != "off":
        if state.alt_used:
            _run_alt_suite(state)
        else:
            run_invariant_suite(state)
        _check_general_final(state, state.alt_used)
    return state


def _check_general_final(state: TransformState, used_alt: bool) -> None:
    Q = state.result_points()
    if not is_satisfied(Q):
        raise TransformError("final set is not satisfied")
    if not used_alt:
        n = state.n
        flipped_q = frozenset((x, n + 1 - y) for x, y in Q)
        flipped_p = frozenset((x, n + 1 - y) for x, y in state.P)
        if not is_insertion_compatible(flipped_p, flipped_q):
            raise TransformError("reversed output is not insertion-compatible")


# ---------------------------------------------------------------------------
# Smooth transformation
# ---------------------------------------------------------------------------

def init_smooth(P: Iterable[Point], check: str = "boundary", audit: bool = True) -> TransformState:
    state = TransformState(P, "smooth", check=check, audit=audit)
    if check != "off":
        run_invariant_suite(state)
    return state


def _two_neighbor_local_max(state: TransformState, u: Point) -> tuple[Point, Point, Point] | None:
    """Leftmost child of u that exceeds both its neighbors; None if no
    interior local maximum remains."""
    cs = state.tree.children[u]
    for j in range(1, len(cs) - 1):
        if cs[j][1] > cs[j - 1][1] and cs[j][1] > cs[j + 1][1]:
            return cs[j - 1], cs[j], cs[j + 1]
    return None


def _propose(state: TransformState, point: Point, phase: str, witness: tuple) -> AdditionRecord:
    """Add one point; when new (and auditing), validate its witness gadget."""
    rec = AdditionRecord(point, phase, point not in state.Q)
    if rec.was_new and state.audit_enabled:
        state.pending[point] = witness
        rec.witness = gadget_audit(state, point)
    state.add_point(point)
    state.pending.pop(point, None)
    return rec


def _two_neighbor_step(state: TransformState, a: Point, b: Point, c: Point) -> StepRecord:
    """Link local maximum b toward its higher neighbor, adding d, e, f."""
    u = state.tree.parent[b]
    uy = u[1]
    ia, ib, ic, iu = state.I[a], state.I[b], state.I[c], state.I[u]
    if not ia[1] < ic[0]:
        raise TransformError("neighbor intervals failed to leave a gap")
    if a[1] > c[1]:
        parent = a
        d = (ia[1], b[1])
        e = (ic[0], b[1])
        f = (ic[0], a[1])
        new_parent_interval = (ia[0], ic[0])
        witness_d = ((ib[0], b[1]), (ia[1], a[1]), (ib[0], uy), (ia[1], uy), (ic[0], uy))
        witness_e = ((ib[1], b[1]), (ic[0], c[1]), (ib[1], uy), (ic[0], uy), (ia[1], uy))
        witness_f = ((ia[1], a[1]), (ic[0], c[1]), (ia[1], uy), (ic[0], uy), (iu[0], uy))
    else:
        parent = c
        d = (ic[0], b[1])
        e = (ia[1], b[1])
        f = (ia[1], c[1])
        new_parent_interval = (ia[1], ic[1])
        witness_d = ((ib[1], b[1]), (ic[0], c[1]), (ib[1], uy), (ic[0], uy), (ia[1], uy))
        witness_e = ((ib[0], b[1]), (ia[1], a[1]), (ib[0], uy), (ia[1], uy), (ic[0], uy))
        witness_f = ((ic[0], c[1]), (ia[1], a[1]), (ic[0], uy), (ia[1], uy), (iu[1], uy))
    records = [
        _propose(state, d, "two-neighbor", witness_d),
        _propose(state, e, "two-neighbor", witness_e),
        _propose(state, f, "two-neighbor", witness_f),
    ]
    if not records[2].was_new:
        raise TransformError("corner point f must always be new")
    new_count = sum(r.was_new for r in records)
    if not 1 <= new_count <= 3:
        raise TransformError("two-neighbor step must add one to three points")
    state.tree.link(b, parent)
    state.I[parent] = new_parent_interval
    state.I[b] = (ia[1], ic[0])
    state.links.append((b, parent))
    state.two_links += 1
    state.two_new += new_count
    state.two_step_new_counts.append(new_count)
    step = StepRecord("two-neighbor", [(b, parent)], records)
    state.journal.append(step)
    if state.check == "every-step":
        run_invariant_suite(state)
    return step


def _one_neighbor_phase(state: TransformState, u: Point) -> StepRecord:
    """
    Drain the V-shaped children of u endpoint-first: the left arm links onto
    its right neighbor, the right arm onto its left neighbor; intervals are
    rewritten from the pre-phase values and stretch to the walls. Atomic for
    invariant purposes.
    """
    cs = list(state.tree.children[u])
    uy = u[1]
    iu = state.I[u]
    pre = {v: state.I[v] for v in cs}
    m = len(cs)
    i = min(range(m), key=lambda j: cs[j][1])
    for j in range(m - 1):
        if not (cs[j][1] > cs[j + 1][1]) == (j < i):
            raise TransformError("children do not form a V-shape")
    links: list[GeoEvent] = []
    records: list[AdditionRecord] = []
    for j in range(i):
        v, w = cs[j], cs[j + 1]
        point = (pre[w][0], v[1])
        witness = ((pre[v][1], v[1]), (pre[w][0], w[1]), (pre[v][1], uy), (pre[w][0], uy), (iu[0], uy))
        records.append(_propose(state, point, "one-neighbor", witness))
        state.tree.link(v, w)
        links.append((v, w))
    for j in range(m - 1, i, -1):
        v, w = cs[j], cs[j - 1]
        point = (pre[w][1], v[1])
        witness = ((pre[v][0], v[1]), (pre[w][1], w[1]), (pre[v][0], uy), (pre[w][1], uy), (iu[1], uy))
        records.append(_propose(state, point, "one-neighbor", witness))
        state.tree.link(v, w)
        links.append((v, w))
    for j in range(m):
        if j < i:
            state.I[cs[j]] = (0, pre[cs[j + 1]][0])
        elif j > i:
            state.I[cs[j]] = (pre[cs[j - 1]][1], state.n + 1)
        else:
            state.I[cs[j]] = (0, state.n + 1)
    new_count = sum(r.was_new for r in records)
    if new_count > len(links):
        raise TransformError("one-neighbor phase added more points than links")
    state.links.extend(links)
    state.one_links += len(links)
    state.one_new += new_count
    state.one_phase_counts.append((len(links), new_count))
    step = StepRecord("one-neighbor-phase", links, records)
    state.journal.append(step)
    if state.check == "every-step":
        run_invariant_suite(state)
    return step


def smooth_transform(P: Iterable[Point], check: str = "boundary", audit: bool = True) -> TransformState:
    """
    Run the full smooth-schedule construction over P. Returns the state; the
    satisfied output including the box is state.result_points() and the
    box-free core state.core_points() equals greedy_sweep(P) exactly.
    """
    state = init_smooth(P, check=check, audit=audit)
    u = ORIGIN
    for r in range(1, state.n + 1):
        while True:
            found = _two_neighbor_local_max(state, u)
            if found is None:
                break
            a, b, c = found
            _two_neighbor_step(state, a, b, c)
        _one_neighbor_phase(state, u)
        children = state.tree.children[u]
        if len(children) != 1:
            raise TransformError("round did not reduce to a single child")
        u = children[0]
        if u[1] != r:
            raise TransformError("round survivor is not the next-lowest point")
        if state.check == "boundary":
            run_invariant_suite(state)
    if not state.tree.is_path():
        raise TransformError("schedule did not end at the path")
    if state.one_links > 2 * state.n or state.one_new > 2 * state.n:
        raise TransformError("one-neighbor totals exceeded the 2n bound")
    if state.check != "off" and not is_satisfied(state.result_points()):
        raise TransformError("final set is not satisfied")
    return state
