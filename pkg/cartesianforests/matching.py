"""
Cartesian Forest Matching: find every window of a text that has the same Cartesian Forest as a pattern, exactly or with at most one difference (one adjacent swap, one mismatch, one insertion into the pattern, or one deletion from the pattern).

The exact search slides a window over the text, keeps its linear representation up to date, and compares it with the pattern's representation at every position.

The approximate searches use cheap necessary conditions to pick candidate windows and then verify each candidate. The verified answer is always the one oracle_window_match() gives, which states the semantics by brute force on forests.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Sequence

from .forests import build_forest_online
from .representations import (
    Representation,
    WindowState,
    WorkCounters,
    compare_representations,
    linear_representation,
    parent_distance,
    parent_distance_rtl,
    skipped_number,
)
from .utils import ParameterError, WindowError

logger = logging.getLogger(__name__)

# Largest number of entries (compared by absolute value) in which the Skipped-Number representations of a sequence and of the same sequence with one adjacent swap can differ.
SWAP_MISMATCH_BOUND = 3


class DiffKind(str, Enum):
    EXACT = "exact"
    SWAP = "swap"
    MISMATCH = "mismatch"
    INSERTION = "insertion"
    DELETION = "deletion"


@dataclass
class MatchResult:
    positions: tuple[int, ...]
    counters: WorkCounters = field(default_factory=WorkCounters)

    @property
    def occurrences(self) -> int:
        return len(self.positions)


def window_length(m: int, kind: DiffKind) -> int:
    """
    Length of the text windows compared with a pattern of length m: m + 1 when one element is inserted into the pattern, m - 1 when one is deleted from it, m otherwise.
    """
    kind = DiffKind(kind)
    if kind is DiffKind.INSERTION:
        return m + 1
    if kind is DiffKind.DELETION:
        return m - 1
    return m


def _require_pattern(p: Sequence) -> None:
    if len(p) == 0:
        raise ParameterError("the pattern must not be empty")


def exact_match(p: Sequence, t: Sequence, kind: Representation = Representation.SN) -> MatchResult:
    """
    Finds every window of t with the same Cartesian Forest as p by comparing linear representations (PD or SN) window by window. The window representation is updated on every slide, whatever the outcome of the comparison.

    Args:
        p (Sequence): the pattern, non-empty.
        t (Sequence): the text.
        kind (Representation, optional): the representation to compare. Defaults to SN.

    Returns:
        MatchResult: 1-based window starts and the work counters.
    """
    _require_pattern(p)
    counters = WorkCounters()
    m = len(p)
    if m > len(t):
        return MatchResult((), counters)

    pattern = linear_representation(p, kind)
    state = WindowState(t, m, kind, counters)
    positions = []
    while True:
        counters.windows_examined += 1
        counters.windows_full_checked += 1
        if compare_representations(pattern, state.values, counters):
            positions.append(state.position)
        if not state.can_slide():
            break
        state.slide()

    logger.debug("exact %s match: %d occurrences in %d windows", Representation(kind).value, len(positions), counters.windows_examined)
    return MatchResult(tuple(positions), counters)


def _ranked_replacements(w: Sequence, i: int) -> Iterator[tuple]:
    # Rank the other elements as odd numbers; even numbers fall below, between and above them.
    others = sorted(set(w[:i]) | set(w[i + 1 :]))
    rank = {v: 2 * r + 1 for r, v in enumerate(others)}
    before = tuple(rank[v] for v in w[:i])
    after = tuple(rank[v] for v in w[i + 1 :])
    for candidate in range(2 * len(others) + 1):
        yield before + (candidate,) + after


def _swapped(w: Sequence, i: int) -> tuple:
    w = tuple(w)
    return w[:i] + (w[i + 1], w[i]) + w[i + 2 :]


def _without(x: Sequence, i: int) -> tuple:
    x = tuple(x)
    return x[:i] + x[i + 1 :]


def oracle_window_match(p: Sequence, w: Sequence, kind: DiffKind) -> bool:
    """
    Decides by brute force on forests whether the window w matches p for the given kind. Every approximate kind allows AT MOST one difference, so an exact match counts for swap and mismatch.

    - exact: F(w) = F(p).
    - swap: exchanging some adjacent pair of w gives the forest of p.
    - mismatch: replacing one element of w by some value gives the forest of p. Only the relative order matters, so the values tried are ranks: below all other elements, equal to each, between each adjacent pair, and above all.
    - insertion (|w| = |p| + 1): deleting one element of w gives the forest of p.
    - deletion (|w| = |p| - 1): deleting one element of p gives the forest of w.

    Args:
        p (Sequence): the pattern.
        w (Sequence): the window.
        kind (DiffKind): the kind of difference allowed.

    Returns:
        bool: True if w matches. Raises WindowError when |w| does not fit the kind.
    """
    kind = DiffKind(kind)
    if len(w) != window_length(len(p), kind) or (kind is DiffKind.DELETION and len(p) < 2):
        raise WindowError(f"a window of length {len(w)} cannot match a pattern of length {len(p)} with kind {kind.value}")

    target = build_forest_online(p)

    if kind is DiffKind.DELETION:
        forest = build_forest_online(w)
        return any(build_forest_online(_without(p, i)) == forest for i in range(len(p)))
    if kind is DiffKind.INSERTION:
        return any(build_forest_online(_without(w, i)) == target for i in range(len(w)))

    if build_forest_online(w) == target:
        return True
    if kind is DiffKind.SWAP:
        return any(build_forest_online(_swapped(w, i)) == target for i in range(len(w) - 1))
    if kind is DiffKind.MISMATCH:
        for i in range(len(w)):
            if any(build_forest_online(y) == target for y in _ranked_replacements(w, i)):
                return True
    return False


def _common_prefix(a: Sequence, b: Sequence, counters: WorkCounters) -> int:
    k = 0
    for u, v in zip(a, b):
        counters.entry_comparisons += 1
        if u != v:
            break
        k += 1
    return k


def _common_suffix(a: Sequence, b: Sequence, counters: WorkCounters) -> int:
    k = 0
    for u, v in zip(reversed(a), reversed(b)):
        counters.entry_comparisons += 1
        if u != v:
            break
        k += 1
    return k


def _swap_match(p: Sequence, t: Sequence, counters: WorkCounters) -> list[int]:
    m = len(p)
    pattern_sn = skipped_number(p)
    pattern_pd = parent_distance(p)
    state = WindowState(t, m, Representation.SN, counters)
    positions = []
    while True:
        counters.windows_examined += 1
        differences = 0
        for u, v in zip(pattern_sn, state.values):
            counters.entry_comparisons += 1
            if abs(u) != abs(v):
                differences += 1
                if differences > SWAP_MISMATCH_BOUND:
                    break
        if differences <= SWAP_MISMATCH_BOUND:
            counters.windows_full_checked += 1
            w = tuple(state.window)
            if parent_distance(w) == pattern_pd or any(
                parent_distance(_swapped(w, i)) == pattern_pd for i in range(m - 1)
            ):
                positions.append(state.position)
        if not state.can_slide():
            break
        state.slide()
    return positions


def _verify_candidate(p: Sequence, w: tuple, i: int, kind: DiffKind, pattern_pd: tuple, deleted_pd: dict) -> bool:
    if kind is DiffKind.MISMATCH:
        return any(parent_distance(y) == pattern_pd for y in _ranked_replacements(w, i))
    if kind is DiffKind.INSERTION:
        return parent_distance(_without(w, i)) == pattern_pd
    if i not in deleted_pd:
        deleted_pd[i] = parent_distance(_without(p, i))
    return parent_distance(w) == deleted_pd[i]


def _one_edit_match(p: Sequence, t: Sequence, kind: DiffKind, counters: WorkCounters) -> list[int]:
    """
    Mismatch, insertion and deletion searches. The part of the window left of the edited position must have the same forest as the matching part of the pattern, and likewise on the right, so the left-to-right Parent-Distances must agree on a long enough prefix and the right-to-left ones on a long enough suffix. Only the positions allowed by both are verified.
    """
    m = len(p)
    length = window_length(m, kind)
    pattern_pd = parent_distance(p)
    pattern_rtl = parent_distance_rtl(p)
    deleted_pd: dict[int, tuple] = {}

    state = WindowState(t, length, Representation.PD, counters)
    positions = []
    while True:
        counters.windows_examined += 1
        w = tuple(state.window)
        lcp = _common_prefix(pattern_pd, state.values, counters)

        if kind is DiffKind.MISMATCH and lcp == m:
            positions.append(state.position)
        else:
            lcs = _common_suffix(pattern_rtl, parent_distance_rtl(w), counters)
            if kind is DiffKind.MISMATCH:
                lo, hi = max(0, m - 1 - lcs), min(lcp, m - 1)
            elif kind is DiffKind.INSERTION:
                lo, hi = max(0, m - lcs), min(lcp, m)
            else:
                lo, hi = max(0, m - 1 - lcs), min(lcp, m - 1)

            if lo <= hi:
                counters.windows_full_checked += 1
                logger.debug("window %d: verifying edit positions %d..%d", state.position, lo, hi)
                if any(_verify_candidate(p, w, i, kind, pattern_pd, deleted_pd) for i in range(lo, hi + 1)):
                    positions.append(state.position)

        if not state.can_slide():
            break
        state.slide()
    return positions


def approx_match(p: Sequence, t: Sequence, kind: DiffKind) -> MatchResult:
    """
    Finds every window of t matching p with at most one difference of the given kind. Windows are |p| long for swap and mismatch, |p| + 1 for insertion and |p| - 1 for deletion. The positions are exactly those accepted by oracle_window_match().

    Swap candidates are windows whose Skipped-Number representation differs from the pattern's in at most three entries compared by absolute value. Mismatch, insertion and deletion candidates come from prefix agreement of the left-to-right Parent-Distances and suffix agreement of the right-to-left ones. Worst case O(nm) time.

    Args:
        p (Sequence): the pattern, non-empty (at least 2 elements for deletion).
        t (Sequence): the text.
        kind (DiffKind): the kind of difference allowed.

    Returns:
        MatchResult: 1-based window starts and the work counters.
    """
    _require_pattern(p)
    kind = DiffKind(kind)
    if kind is DiffKind.EXACT:
        return exact_match(p, t)
    if kind is DiffKind.DELETION and len(p) < 2:
        raise ParameterError("deletion needs a pattern of at least 2 elements")

    counters = WorkCounters()
    length = window_length(len(p), kind)
    if length > len(t):
        return MatchResult((), counters)

    if kind is DiffKind.SWAP:
        positions = _swap_match(p, t, counters)
    else:
        positions = _one_edit_match(p, t, kind, counters)

    logger.debug("%s match: %d occurrences, %d windows verified", kind.value, len(positions), counters.windows_full_checked)
    return MatchResult(tuple(positions), counters)


def brute_force_match(p: Sequence, t: Sequence, kind: DiffKind = DiffKind.EXACT) -> tuple[int, ...]:
    """
    Runs oracle_window_match() on every window. Slow; used to check the searches.

    Args:
        p (Sequence): the pattern, non-empty.
        t (Sequence): the text.
        kind (DiffKind, optional): the kind of difference allowed. Defaults to exact.

    Returns:
        tuple[int, ...]: 1-based window starts.
    """
    _require_pattern(p)
    length = window_length(len(p), kind)
    if length < 1 or length > len(t):
        return ()
    return tuple(
        j + 1 for j in range(len(t) - length + 1) if oracle_window_match(p, t[j : j + length], kind)
    )
