"""
Permutations of [n] = {1, ..., n} in one-line notation, their point sets,
input generators, and pre-sortedness measures for adaptive sorting.

A permutation is a tuple of n distinct ranks, each in 1..n (1-based
throughout; row 0 and columns 0, n+1 are reserved for boundary
augmentation by the geometry layer). The empty tuple is the valid
permutation of n = 0.

Point sets are frozensets of (x, y) integer pairs. The point set of a
permutation X places x_i at row i: {(x_i, i) : i in 1..n}.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

Point = tuple[int, int]
PointSet = frozenset


def is_permutation(values: Sequence[int]) -> bool:
    """
    True iff values is a permutation of 1..n in one-line notation.

    >>> [is_permutation(v) for v in [(), (1,), (2, 1), (2, 2), (0, 1)]]
    [True, True, True, False, False]
    """
    n = len(values)
    return sorted(values) == list(range(1, n + 1))


def check_permutation(values: Sequence[int]) -> tuple[int, ...]:
    """Return values as a tuple, raising ValueError if not a permutation."""
    X = tuple(values)
    if not is_permutation(X):
        raise ValueError(f"not a permutation of 1..{len(X)}: {X!r}")
    return X


def identity(n: int) -> tuple[int, ...]:
    """The identity permutation (1, 2, ..., n)."""
    return tuple(range(1, n + 1))


def decreasing(n: int) -> tuple[int, ...]:
    """The decreasing permutation (n, n-1, ..., 1)."""
    return tuple(range(n, 0, -1))


def inverse(X: Sequence[int]) -> tuple[int, ...]:
    """
    The inverse permutation Y with Y[X[j]-1] = j+1 (1-based: y_i = j iff x_j = i).

    >>> inverse((2, 6, 5, 3, 1, 7, 4))
    (5, 1, 4, 7, 3, 2, 6)
    """
    Y = [0] * len(X)
    for j, x in enumerate(X, start=1):
        Y[x - 1] = j
    return tuple(Y)


def reverse(X: Sequence[int]) -> tuple[int, ...]:
    """The reverse permutation; element i of the result is x_{n-i+1}."""
    return tuple(reversed(X))


def point_set_of(X: Sequence[int]) -> PointSet:
    """
    The permutation point set {(x_i, i) : i in 1..n} with values on the x-axis
    and insertion time on the y-axis.
    """
    return frozenset((x, i) for i, x in enumerate(X, start=1))


def perm_of_point_set(P: Iterable[Point]) -> tuple[int, ...]:
    """Inverse of point_set_of. Raises ValueError on non-permutation sets."""
    pts = set(P)
    n = len(pts)
    by_row = {}
    for x, y in pts:
        if y in by_row:
            raise ValueError("duplicate row in point set")
        by_row[y] = x
    if sorted(by_row) != list(range(1, n + 1)):
        raise ValueError("rows do not cover 1..n")
    X = tuple(by_row[i] for i in range(1, n + 1))
    return check_permutation(X)


def is_permutation_point_set(P: Iterable[Point]) -> bool:
    """True iff every row and column 1..n holds exactly one point."""
    try:
        perm_of_point_set(P)
        return True
    except ValueError:
        return False


def transpose(P: Iterable[Point]) -> PointSet:
    """
    Swap the coordinates of a permutation point set.

    transpose(point_set_of(X)) == point_set_of(inverse(X)).
    """
    pts = frozenset(P)
    if not is_permutation_point_set(pts):
        raise ValueError("transpose requires a permutation point set")
    return frozenset((y, x) for x, y in pts)


def reverse_rows(P: Iterable[Point]) -> PointSet:
    """
    Flip a permutation point set upside down: (x, i) -> (x, n-i+1).

    reverse_rows(point_set_of(X)) == point_set_of(reverse(X)).
    """
    pts = frozenset(P)
    if not is_permutation_point_set(pts):
        raise ValueError("reverse_rows requires a permutation point set")
    n = len(pts)
    return frozenset((x, n - y + 1) for x, y in pts)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

_SPLITMIX_MASK = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    # splitmix64 step (Steele/Lea/Flood); fixed-width integer arithmetic only,
    # so streams are identical on every platform and Python version.
    state = (state + 0x9E3779B97F4A7C15) & _SPLITMIX_MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _SPLITMIX_MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _SPLITMIX_MASK
    z = z ^ (z >> 31)
    return state, z


class SplitMix64:
    """Tiny deterministic PRNG used for all seeded generation in this package."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _SPLITMIX_MASK

    def next_u64(self) -> int:
        self.state, z = _splitmix64(self.state)
        return z

    def randrange(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            z = self.next_u64()
            if z < limit:
                return z % bound

    def shuffle(self, items: list) -> None:
        """Fisher-Yates, swapping position i with a uniform j in [0, i]."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def choice(self, items: Sequence):
        return items[self.randrange(len(items))]


def gen_random(n: int, seed: int) -> tuple[int, ...]:
    """
    Uniformly random permutation of 1..n from a splitmix64-driven
    Fisher-Yates shuffle. Same seed, same output, everywhere.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    items = list(range(1, n + 1))
    SplitMix64(seed).shuffle(items)
    return tuple(items)


def gen_tilted_grid(t: int) -> tuple[int, ...]:
    """
    Rank-normalized tilted t-by-t grid, a permutation of n = t*t elements.

    Raw points {(i*t + (j-1), j*t + i - 1) : i, j in 1..t} have pairwise
    distinct x and pairwise distinct y; each axis is rank-normalized to 1..n
    independently by sorting its coordinates.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    raw = [(i * t + (j - 1), j * t + i - 1) for i in range(1, t + 1) for j in range(1, t + 1)]
    xs = sorted(p[0] for p in raw)
    ys = sorted(p[1] for p in raw)
    assert len(set(xs)) == len(raw) and len(set(ys)) == len(raw)
    xrank = {v: r for r, v in enumerate(xs, start=1)}
    yrank = {v: r for r, v in enumerate(ys, start=1)}
    by_row = {yrank[y]: xrank[x] for x, y in raw}
    return check_permutation(tuple(by_row[i] for i in range(1, len(raw) + 1)))


# ---------------------------------------------------------------------------
# Pre-sortedness measures
# ---------------------------------------------------------------------------

def measure_inv(X: Sequence[int]) -> int:
    """Number of inversions: pairs i < j with x_i > x_j."""
    import bisect

    seen: list[int] = []
    inv = 0
    for x in X:
        pos = bisect.bisect_left(seen, x)
        inv += len(seen) - pos
        seen.insert(pos, x)
    return inv


def measure_run(X: Sequence[int]) -> int:
    """Number of descents: positions i with x_i > x_{i+1}."""
    return sum(1 for a, b in zip(X, X[1:]) if a > b)


def measure_osc(X: Sequence[int]) -> int:
    """
    Number of oscillations: for each consecutive pair, the count of sequence
    elements strictly between the pair's values, summed over all pairs.
    """
    vals = sorted(X)
    import bisect

    total = 0
    for a, b in zip(X, X[1:]):
        lo, hi = (a, b) if a < b else (b, a)
        total += bisect.bisect_left(vals, hi) - bisect.bisect_right(vals, lo)
    return total


def measure_df(X: Sequence[int]) -> float:
    """Dynamic-finger weight: sum of log2(|x_{i+1} - x_i| + 1) over pairs."""
    import math

    return sum(math.log2(abs(b - a) + 1) for a, b in zip(X, X[1:]))


def sms_increasing_cover(X: Sequence[int]) -> int:
    """
    Minimum number of strictly increasing subsequences covering X.

    Equals the length of the longest strictly decreasing subsequence
    (Dilworth duality), computed by patience piles. Returns 0 for the
    empty permutation.
    """
    import bisect

    # pile_tops[k] = largest top among piles of "decreasing chain length k+1";
    # longest strictly decreasing subsequence via LIS on the reversed order.
    tops: list[int] = []
    for x in X:
        # strictly decreasing subsequence of original = strictly increasing of negated
        v = -x
        pos = bisect.bisect_left(tops, v)
        if pos == len(tops):
            tops.append(v)
        else:
            tops[pos] = v
    return len(tops)


def min_increasing_cover_bruteforce(X: Sequence[int], limit: int = 7) -> int:
    """
    Exhaustive minimum cover by strictly increasing subsequences (test oracle).
    Guarded to small n.
    """
    n = len(X)
    if n > limit:
        raise ValueError(f"brute force limited to n <= {limit}")
    if n == 0:
        return 0

    def can_cover(k: int) -> bool:
        # chain_last[c] = last value of chain c; assign greedily with backtracking
        chain_last = [0] * k

        def place(i: int) -> bool:
            if i == n:
                return True
            seen = set()
            for c in range(k):
                last = chain_last[c]
                if last < X[i] and last not in seen:
                    seen.add(last)
                    chain_last[c] = X[i]
                    if place(i + 1):
                        return True
                    chain_last[c] = last
            return False

        return place(0)

    for k in range(1, n + 1):
        if can_cover(k):
            return k
    return n


def min_monotone_cover_bruteforce(X: Sequence[int], limit: int = 10) -> int:
    """
    Exhaustive minimum cover by monotone (increasing or decreasing)
    subsequences. No efficient exact algorithm is shipped; guarded to n <= 10.
    """
    n = len(X)
    if n > limit:
        raise ValueError(f"brute force limited to n <= {limit}")
    if n == 0:
        return 0

    def can_cover(k: int) -> bool:
        # each chain is (last value, direction) with direction in
        # {None (singleton), +1 increasing, -1 decreasing}
        chains: list[tuple[int, int | None]] = []

        def place(i: int) -> bool:
            if i == n:
                return True
            x = X[i]
            tried = set()
            for c, (last, d) in enumerate(chains):
                key = (last, d)
                if key in tried:
                    continue
                tried.add(key)
                if d in (None, 1) and last < x:
                    chains[c] = (x, 1)
                    if place(i + 1):
                        return True
                    chains[c] = (last, d)
                if d in (None, -1) and last > x:
                    chains[c] = (x, -1)
                    if place(i + 1):
                        return True
                    chains[c] = (last, d)
            if len(chains) < k:
                chains.append((x, None))
                if place(i + 1):
                    return True
                chains.pop()
            return False

        return place(0)

    for k in range(1, n + 1):
        if can_cover(k):
            return k
    return n


def all_permutations(n: int) -> Iterable[tuple[int, ...]]:
    """All permutations of 1..n (for exhaustive small-n checks)."""
    return itertools.permutations(range(1, n + 1))
