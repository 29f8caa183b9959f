"""
Linear representations of Cartesian Forests: Parent-Distance (PD), the referent table, and Skipped-Number (SN), plus a sliding window that keeps one of them up to date as it moves along a text.

All three come out of the same left-to-right stack scan. The stack holds the positions that have not yet met a later element smaller than or equal to them; their values strictly increase from bottom to top. When position h arrives, every stacked position with a value >= x[h] is popped and gets h as its referent. The number popped is |SN[h]|, the position left on top is small(h), and the last popped position is equal(h) exactly when it holds the same value as x[h].

Positions in this module are 0-based. The referent table is returned 1-based with -1 for "none", since that is how it is printed.
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .utils import WindowError

logger = logging.getLogger(__name__)


class Representation(str, Enum):
    PD = "pd"
    SN = "sn"


@dataclass
class WorkCounters:
    """
    Work done by a search: element comparisons made while building or updating representations, index checks made when the departing head invalidates entries, representation entries compared, filter words compared, and the number of windows examined and fully compared.

    comparisons is the matching work: index checks, entry comparisons and filter comparisons. Element comparisons come from maintaining the stack over the text, which is the same for every method, and are kept apart.
    """

    element_comparisons: int = 0
    index_checks: int = 0
    entry_comparisons: int = 0
    filter_comparisons: int = 0
    windows_examined: int = 0
    windows_full_checked: int = 0

    @property
    def comparisons(self) -> int:
        return self.index_checks + self.entry_comparisons + self.filter_comparisons

    def add(self, other: "WorkCounters") -> None:
        self.element_comparisons += other.element_comparisons
        self.index_checks += other.index_checks
        self.entry_comparisons += other.entry_comparisons
        self.filter_comparisons += other.filter_comparisons
        self.windows_examined += other.windows_examined
        self.windows_full_checked += other.windows_full_checked


@dataclass
class _Scan:
    small: list[int]
    equal: list[int]
    ref: list[int]
    skipped: list[int]


def _scan(x: Sequence) -> _Scan:
    m = len(x)
    small = [-1] * m
    equal = [-1] * m
    ref = [-1] * m
    skipped = [0] * m
    stack: list[int] = []

    for h in range(m):
        v = x[h]
        last = -1
        while stack and x[stack[-1]] >= v:
            last = stack.pop()
            ref[last] = h
            skipped[h] += 1
        if stack:
            small[h] = stack[-1]
        # Only recorded when equal(h) > small(h), the one case that decides a sign.
        if last >= 0 and x[last] == v:
            equal[h] = last
        stack.append(h)

    return _Scan(small, equal, ref, skipped)


def parent_distance(x: Sequence) -> tuple[int, ...]:
    """
    Parent-Distance representation: for each position h, the distance to the nearest earlier position holding a strictly smaller value (positive) or an equal value (negative), whichever is nearer, and 0 if there is neither.

    Args:
        x (Sequence): the sequence.

    Returns:
        tuple[int, ...]: PD[0..m-1].
    """
    scan = _scan(x)
    pd = []
    for h in range(len(x)):
        if scan.equal[h] >= 0:
            pd.append(-(h - scan.equal[h]))
        elif scan.small[h] >= 0:
            pd.append(h - scan.small[h])
        else:
            pd.append(0)
    return tuple(pd)


def parent_distance_rtl(x: Sequence) -> tuple[int, ...]:
    """
    Right-to-left Parent-Distance: the mirror image of parent_distance, looking at the nearest later smaller or equal element. Defined as the reversal of the Parent-Distance of the reversed sequence.
    """
    return tuple(reversed(parent_distance(tuple(reversed(x)))))


def referent_table(x: Sequence) -> tuple[int, ...]:
    """
    Referent table: for each position (1-based), the first later position holding a value smaller than or equal to it, or -1.

    Args:
        x (Sequence): the sequence.

    Returns:
        tuple[int, ...]: ref[1..m], 1-based, -1 when there is no referent.
    """
    return tuple(r + 1 if r >= 0 else -1 for r in _scan(x).ref)


def skipped_number(x: Sequence) -> tuple[int, ...]:
    """
    Skipped-Number representation: for each position h, the number of earlier positions whose referent is h. The sign is negative when the nearest smaller-or-equal predecessor holds an equal value, positive otherwise (including when there is no such predecessor).

    Args:
        x (Sequence): the sequence.

    Returns:
        tuple[int, ...]: SN[0..m-1].
    """
    scan = _scan(x)
    return tuple(
        -scan.skipped[h] if scan.equal[h] >= 0 else scan.skipped[h] for h in range(len(x))
    )


def linear_representation(x: Sequence, kind: Representation) -> tuple[int, ...]:
    if Representation(kind) is Representation.PD:
        return parent_distance(x)
    return skipped_number(x)


class WindowState:

    def __init__(self, t: Sequence, m: int, kind: Representation = Representation.SN, counters: WorkCounters = None) -> None:
        """
        A window of length m sliding over the text t, holding the linear representation (PD or SN) of the current window. The stored representation always equals the one computed from scratch on the window.

        Referents and nearest smaller-or-equal predecessors are kept in text coordinates: a referent only depends on what follows a position, so it stays valid as the window moves, and the only entries a slide can invalidate are the ones tied to the departing head.

        A WindowState belongs to a single search; it may be handed over but not shared.

        Args:
            t (Sequence): the text.
            m (int): window length, 1 <= m <= len(t).
            kind (Representation, optional): PD or SN. Defaults to SN.
            counters (WorkCounters, optional): counters to charge the work to. A fresh set is created if omitted.
        """
        if m < 1 or m > len(t):
            raise WindowError(f"window length {m} does not fit a text of length {len(t)}")

        self.text = t
        self.m = m
        self.kind = Representation(kind)
        self.counters = counters if counters is not None else WorkCounters()
        self.start = 0
        self.end = 0
        self.values: deque[int] = deque()
        self.changed: tuple[int, ...] = ()

        n = len(t)
        self._stack: deque[int] = deque()
        self._ref = [-1] * n
        self._anchor = [-1] * n
        self._anchor_equal = [False] * n

        for _ in range(m):
            self._push()
        self.changed = tuple(range(m))
        logger.debug("opened %s window of length %d over %d elements", self.kind.value, m, n)

    @property
    def position(self) -> int:
        """
        1-based start of the current window in the text.
        """
        return self.start + 1

    @property
    def window(self) -> Sequence:
        return self.text[self.start : self.end]

    @property
    def representation(self) -> tuple[int, ...]:
        return tuple(self.values)

    def can_slide(self) -> bool:
        return self.end < len(self.text)

    def _push(self) -> None:
        t = self.text
        h = self.end
        v = t[h]
        stack = self._stack
        popped = 0
        last = -1
        while stack:
            self.counters.element_comparisons += 1
            if t[stack[-1]] < v:
                break
            last = stack.pop()
            self._ref[last] = h
            popped += 1

        equal = last >= 0 and t[last] == v
        if equal:
            self._anchor[h] = last
            self._anchor_equal[h] = True
        elif stack:
            self._anchor[h] = stack[-1]

        if self.kind is Representation.SN:
            self.values.append(-popped if equal else popped)
        elif self._anchor[h] < 0:
            self.values.append(0)
        else:
            distance = h - self._anchor[h]
            self.values.append(-distance if equal else distance)

        stack.append(h)
        self.end += 1

    def slide(self) -> "WindowState":
        """
        Moves the window one position to the right and updates the representation. The window-relative indices of entries that changed (other than by shifting) are left in self.changed.

        Returns:
            WindowState: self, for chaining.
        """
        if not self.can_slide():
            raise WindowError("cannot slide past the end of the text")

        head = self.start
        start = head + 1
        changed = []
        referent = self._ref[head]

        if self.kind is Representation.SN:
            self.counters.index_checks += 1
            if referent >= 0:
                idx = referent - head
                value = self.values[idx]
                magnitude = abs(value) - 1
                # The departing head was the equal predecessor: nothing equal is left before it.
                if self._anchor_equal[referent] and self._anchor[referent] == head:
                    self.values[idx] = magnitude
                else:
                    self.values[idx] = -magnitude if value < 0 else magnitude
                changed.append(referent - start)
        else:
            # Positions anchored on the head all lie in (head, referent].
            self.counters.index_checks += 1
            last = referent if referent >= 0 else self.end - 1
            for p in range(head + 1, last + 1):
                self.counters.index_checks += 1
                if self._anchor[p] == head:
                    self.values[p - head] = 0
                    changed.append(p - start)

        if self._stack and self._stack[0] == head:
            self._stack.popleft()
        self.values.popleft()
        self.start = start

        self._push()
        changed.append(self.m - 1)
        self.changed = tuple(changed)
        return self


def window_init(t: Sequence, m: int, kind: Representation = Representation.SN, counters: WorkCounters = None) -> WindowState:
    """
    Opens a window of length m at the start of t.

    Args:
        t (Sequence): the text.
        m (int): the window length, 1 <= m <= len(t).
        kind (Representation, optional): PD or SN. Defaults to SN.
        counters (WorkCounters, optional): counters to charge the work to.

    Returns:
        WindowState: the window state. Raises WindowError if m does not fit.
    """
    return WindowState(t, m, kind, counters)


def window_slide(state: WindowState) -> WindowState:
    """
    Slides the window by one position. Raises WindowError at the end of the text.
    """
    return state.slide()


def compare_representations(a: Sequence, b: Sequence, counters: WorkCounters = None) -> bool:
    """
    Compares two representations entry by entry from the left, stopping at the first difference. Each entry compared is charged to counters.entry_comparisons.

    Args:
        a (Sequence): first representation.
        b (Sequence): second representation.
        counters (WorkCounters, optional): counters to charge.

    Returns:
        bool: True if equal.
    """
    if len(a) != len(b):
        return False
    for u, v in zip(a, b):
        if counters is not None:
            counters.entry_comparisons += 1
        if u != v:
            return False
    return True
