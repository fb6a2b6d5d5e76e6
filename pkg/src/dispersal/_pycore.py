"""Pure-Python kernels.

Reference implementations of the two hot loops. ``dispersal._core`` (Cython)
provides the same functions with identical results; :mod:`dispersal.kernels`
picks one at import time.
"""

from __future__ import annotations

import heapq

BACKEND = "python"


class MedianHeap:
    """Multiset supporting insertion and lower-median lookup.

    The lower half lives in a max-heap (stored negated) and holds
    ``ceil(size / 2)`` elements, so its top is the lower median.
    """

    __slots__ = ("low", "high")

    def __init__(self, values=()):
        self.low = []
        self.high = []
        for v in values:
            self.push(v)

    def __len__(self):
        return len(self.low) + len(self.high)

    def push(self, value):
        low, high = self.low, self.high
        if low and value > -low[0]:
            heapq.heappush(high, value)
        else:
            heapq.heappush(low, -value)
        if len(low) > len(high) + 1:
            heapq.heappush(high, -heapq.heappop(low))
        elif len(high) > len(low):
            heapq.heappush(low, -heapq.heappop(high))

    def median(self):
        if not self.low:
            raise ValueError("median of an empty multiset")
        return -self.low[0]

    def values(self):
        return [-v for v in self.low] + list(self.high)

    def absorb(self, other: "MedianHeap") -> None:
        # small-to-large: every element is re-inserted O(log n) times overall
        if len(other) > len(self):
            self.low, other.low = other.low, self.low
            self.high, other.high = other.high, self.high
        for v in other.values():
            self.push(v)
        other.low, other.high = [], []


def pav(ranks, n, cyclic=False):
    """Pool adjacent violators on ``ranks[0:n]`` with lower-median levels.

    ``ranks`` holds dense ranks of the adjusted centres ``c_i - i``. In the
    cyclic case it has length ``2n`` and ``ranks[i + n]`` is the rank of the
    same element lifted by one turn of the circle.

    Returns ``(starts, stops, levels, shifts)``: inclusive index ranges of the
    final blocks (possibly reaching into ``[n, 2n)`` for lifted elements),
    the lower-median rank of each block, and how many times the first block
    was moved behind the last one.
    """
    starts: list[int] = []
    stops: list[int] = []
    heaps: list[MedianHeap] = []
    levels: list[int] = []
    head = 0

    def collapse():
        while len(levels) - head > 1 and levels[-1] < levels[-2]:
            starts.pop()
            stop = stops.pop()
            levels.pop()
            right = heaps.pop()
            heaps[-1].absorb(right)
            stops[-1] = stop
            levels[-1] = heaps[-1].median()

    for i in range(n):
        starts.append(i)
        stops.append(i)
        heaps.append(MedianHeap((ranks[i],)))
        levels.append(ranks[i])
        collapse()

    shifts = 0
    if cyclic:
        while len(levels) - head > 1:
            a, b = starts[head] + n, stops[head] + n
            lifted = MedianHeap(ranks[a:b + 1])
            if levels[-1] <= lifted.median():
                break
            head += 1
            shifts += 1
            starts.append(a)
            stops.append(b)
            heaps.append(lifted)
            levels.append(lifted.median())
            collapse()

    return starts[head:], stops[head:], levels[head:], shifts


def hungarian(cost, m):
    """Minimum-cost perfect matching on an ``m x m`` matrix (row-major list).

    Shortest augmenting paths with row/column potentials, O(m^3). Returns
    ``(row_to_col, u, v)`` with ``cost[i][j] - u[i] - v[j] >= 0`` everywhere
    and equality on matched pairs.
    """
    u = [0] * (m + 1)
    v = [0] * (m + 1)
    match = [0] * (m + 1)  # match[j] = row (1-based) assigned to column j
    way = [0] * (m + 1)
    for i in range(1, m + 1):
        match[0] = i
        j0 = 0
        minv = [None] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            row = (i0 - 1) * m
            ui0 = u[i0]
            delta = None
            j1 = 0
            for j in range(1, m + 1):
                if not used[j]:
                    cur = cost[row + j - 1] - ui0 - v[j]
                    mj = minv[j]
                    if mj is None or cur < mj:
                        minv[j] = mj = cur
                        way[j] = j0
                    if delta is None or mj < delta:
                        delta = mj
                        j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    row_to_col = [0] * m
    for j in range(1, m + 1):
        row_to_col[match[j] - 1] = j - 1
    return row_to_col, u[1:], v[1:]
