"""
Cartesian Forest signatures and tau-filters.

A signature is a prefix-free bit encoding of the Skipped-Number representation and acts as a perfect hash of the forest. For each entry, in order: a single 0 bit for a zero entry; otherwise "10" (negative) or "11" (positive), then |SN| - 1 one bits and a closing zero bit. The first emitted bit is the most significant bit of the first byte, and the last byte is padded with zeros. It never exceeds 3m bits.

A tau-filter keeps one bit per entry for the last tau entries of a window representation (0 for a zero entry, 1 otherwise), the first of those entries in the most significant position. Comparing two filters costs one word comparison, so the full comparison of representations only runs on windows whose filter equals the pattern's.
"""

import logging
from collections import deque
from dataclasses import dataclass
from itertools import islice
from typing import Sequence

from .matching import MatchResult, exact_match
from .representations import (
    Representation,
    WindowState,
    WorkCounters,
    compare_representations,
    linear_representation,
    skipped_number,
)
from .utils import ParameterError

logger = logging.getLogger(__name__)

DEFAULT_TAU = 64
MAX_TAU = 128

# Rolling signatures are kept as machine-sized integers only up to this many bits.
REGISTER_BITS = 64


@dataclass(frozen=True)
class Signature:
    bits: bytes
    bit_length: int

    def bitstring(self) -> str:
        if self.bit_length == 0:
            return ""
        value = int.from_bytes(self.bits, "big") >> (8 * len(self.bits) - self.bit_length)
        return format(value, f"0{self.bit_length}b")

    def hex(self) -> str:
        return self.bits.hex()

    def __str__(self) -> str:
        return f"{self.bit_length}:{self.hex()}"


@dataclass(frozen=True)
class Filter:
    word: int
    tau: int

    def bitstring(self) -> str:
        return format(self.word, f"0{self.tau}b")


def _entry_code(entry: int) -> tuple[int, int]:
    if entry == 0:
        return 0, 1
    magnitude = abs(entry)
    # Sign pair, magnitude - 1 ones, closing zero.
    code = 0b11 if entry > 0 else 0b10
    return (code << magnitude) | (((1 << (magnitude - 1)) - 1) << 1), 2 + magnitude


def _encode(sn: Sequence) -> tuple[int, int]:
    value = 0
    length = 0
    for entry in sn:
        code, bits = _entry_code(entry)
        value = (value << bits) | code
        length += bits
    return value, length


def signature(x: Sequence) -> Signature:
    """
    The signature of the forest of x.

    Args:
        x (Sequence): the sequence.

    Returns:
        Signature: the packed bits and their count.
    """
    value, length = _encode(skipped_number(x))
    nbytes = (length + 7) // 8
    padded = value << (8 * nbytes - length)
    return Signature(padded.to_bytes(nbytes, "big"), length)


def signature_int(x: Sequence) -> int:
    """
    The signature as one integer, with a leading 1 bit above the encoding so that signatures of different lengths stay distinct. Fits a 64-bit register when 3m < 64.
    """
    value, length = _encode(skipped_number(x))
    return (1 << length) | value


def _check_tau(tau: int) -> None:
    if not 1 <= tau <= MAX_TAU:
        raise ParameterError(f"tau must be between 1 and {MAX_TAU}, got {tau}")


def tau_filter(representation: Sequence, tau: int = DEFAULT_TAU) -> Filter:
    """
    The tau-filter of a representation of length m. The min(tau, m) low-order bits mirror the last min(tau, m) entries; when tau > m the surplus high bits are 0.

    Args:
        representation (Sequence): a Skipped-Number (or Parent-Distance) representation.
        tau (int, optional): filter width in bits, 1..128. Defaults to 64.

    Returns:
        Filter: the filter word.
    """
    _check_tau(tau)
    word = 0
    for entry in tuple(representation)[-tau:]:
        word = (word << 1) | (entry != 0)
    return Filter(word, tau)


def filtered_match(p: Sequence, t: Sequence, tau: int = DEFAULT_TAU, kind: Representation = Representation.SN) -> MatchResult:
    """
    Exact matching where the full comparison of representations only runs when the window filter equals the pattern filter. The filter is shifted on every slide and only the entries reported as changed by the window are re-read. Gives the same positions as exact_match(p, t, kind).

    Args:
        p (Sequence): the pattern, non-empty.
        t (Sequence): the text.
        tau (int, optional): filter width in bits, 1..128. Defaults to 64.
        kind (Representation, optional): the representation filtered and compared. Defaults to SN.

    Returns:
        MatchResult: 1-based window starts and the work counters.
    """
    if len(p) == 0:
        raise ParameterError("the pattern must not be empty")
    _check_tau(tau)
    kind = Representation(kind)

    counters = WorkCounters()
    m = len(p)
    if m > len(t):
        return MatchResult((), counters)

    pattern = linear_representation(p, kind)
    pattern_filter = tau_filter(pattern, tau).word
    width = min(tau, m)
    mask = (1 << width) - 1

    state = WindowState(t, m, kind, counters)
    word = tau_filter(state.values, tau).word
    positions = []
    while True:
        counters.windows_examined += 1
        counters.filter_comparisons += 1
        if word == pattern_filter:
            counters.windows_full_checked += 1
            if compare_representations(pattern, state.values, counters):
                positions.append(state.position)
        if not state.can_slide():
            break

        state.slide()
        word = (word << 1) & mask
        for idx in state.changed:
            bit = m - 1 - idx
            if bit < width:
                if state.values[idx] != 0:
                    word |= 1 << bit
                else:
                    word &= ~(1 << bit)

    logger.debug("filtered %s match (tau=%d): %d of %d windows fully compared", kind.value, tau, counters.windows_full_checked, counters.windows_examined)
    return MatchResult(tuple(positions), counters)


class RollingSignature:

    def __init__(self, state: WindowState) -> None:
        """
        The register signature of a sliding Skipped-Number window, kept in step with the window by bitwise updates: a slide drops the head's single zero bit, rewrites the code of the one entry whose referent left, and appends the code of the new last entry.

        Args:
            state (WindowState): an SN window; call slide() on this object instead of on the state.
        """
        if state.kind is not Representation.SN:
            raise ParameterError("rolling signatures need a Skipped-Number window")
        self.state = state
        self.value = 0
        self.length = 0
        self._bits: deque[int] = deque()
        for entry in state.values:
            self._append(entry)

    @property
    def word(self) -> int:
        return (1 << self.length) | self.value

    def _append(self, entry: int) -> None:
        code, bits = _entry_code(entry)
        self.value = (self.value << bits) | code
        self.length += bits
        self._bits.append(bits)

    def _replace(self, index: int, entry: int) -> None:
        below = sum(islice(self._bits, index + 1, None))
        old = self._bits[index]
        code, bits = _entry_code(entry)
        low = self.value & ((1 << below) - 1)
        high = self.value >> (below + old)
        self.value = (((high << bits) | code) << below) | low
        self.length += bits - old
        self._bits[index] = bits

    def slide(self) -> "RollingSignature":
        state = self.state.slide()
        # The head's entry is always 0: one bit, the most significant.
        self.length -= self._bits.popleft()
        self.value &= (1 << self.length) - 1
        last = state.m - 1
        for index in state.changed:
            if index == last:
                self._append(state.values[last])
            else:
                self._replace(index, state.values[index])
        return self


def rolling_signature_match(p: Sequence, t: Sequence) -> MatchResult:
    """
    Exact matching by comparing register-sized signatures: the window signature is updated from the entries the sliding Skipped-Number state reports as changed, and compared as one integer with the pattern's. Only used when 3m <= 64; longer patterns fall back to exact_match.

    Args:
        p (Sequence): the pattern, non-empty.
        t (Sequence): the text.

    Returns:
        MatchResult: 1-based window starts and the work counters.
    """
    if len(p) == 0:
        raise ParameterError("the pattern must not be empty")
    m = len(p)
    if 3 * m > REGISTER_BITS:
        logger.warning("pattern of length %d is too long for register signatures; using exact matching", m)
        return exact_match(p, t, Representation.SN)

    counters = WorkCounters()
    if m > len(t):
        return MatchResult((), counters)

    pattern_sig = signature_int(p)
    rolling = RollingSignature(WindowState(t, m, Representation.SN, counters))
    positions = []
    while True:
        counters.windows_examined += 1
        if rolling.word == pattern_sig:
            positions.append(rolling.state.position)
        if not rolling.state.can_slide():
            break
        rolling.slide()
    return MatchResult(tuple(positions), counters)
