"""
Deterministic, seedable random sequences for the experiments.

All randomness comes from SplitMix64, written out here so that outputs can be reproduced from this description alone, on any platform:

    state_i = seed + i * 0x9E3779B97F4A7C15            (mod 2^64, i = 1, 2, ...)
    z = state_i
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9           (mod 2^64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB           (mod 2^64)
    out_i = z ^ (z >> 31)

Draw i is turned into a double u_i = (out_i >> 11) / 2^53 in [0, 1), and a symbol is the first s in 1..k whose cumulative probability exceeds u_i. Since out_i only depends on (seed, i), the generator is evaluated on whole numpy arrays at once.

uniform_sequence() draws i.i.d. uniform symbols. entropy_sequence() draws i.i.d. symbols from (a, b, ..., b) with a + (k - 1) b = 1 and a^2 + (k - 1) b^2 = 2^(-h2), which puts the collision entropy of one draw at h2 bits. The common symbol is 1, the smallest, so low entropy gives long runs of ties at the bottom of the order.

composition_sequence() keeps the letter counts of that distribution fixed and only draws their arrangement; the entropy benchmark uses it.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .utils import GeneratorSpecError

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

# Slack allowed when checking 2^(-h2) against [1/k, 1] in floating point.
_FEASIBILITY_EPS = 1e-12


@dataclass(frozen=True)
class GenSpec:
    n: int
    k: int
    seed: int = 0
    h2: Optional[float] = None


def splitmix64(seed: int, n: int, offset: int = 0) -> np.ndarray:
    """
    Outputs offset+1 .. offset+n of SplitMix64 started at 'seed', as a uint64 array.

    Args:
        seed (int): the seed (reduced mod 2^64).
        n (int): number of outputs.
        offset (int, optional): number of outputs to skip. Defaults to 0.

    Returns:
        np.ndarray: uint64 outputs.
    """
    steps = np.arange(offset + 1, offset + n + 1, dtype=np.uint64)
    z = np.uint64(seed & MASK64) + steps * np.uint64(GOLDEN_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def uniform_doubles(seed: int, n: int) -> np.ndarray:
    return (splitmix64(seed, n) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def derive_seed(seed: int, stream: int) -> int:
    """
    A seed for an independent stream (trial, pattern or text), taken as output stream+1 of SplitMix64 started at 'seed'.
    """
    return int(splitmix64(seed, 1, offset=stream)[0])


def _check_alphabet(spec: GenSpec) -> None:
    if spec.k < 1:
        raise GeneratorSpecError(f"alphabet size must be at least 1, got {spec.k}")
    if spec.n < 0:
        raise GeneratorSpecError(f"length must be non-negative, got {spec.n}")


def entropy_distribution(k: int, h2: float) -> tuple[float, float]:
    """
    Probabilities (a, b) of the distribution (a, b, ..., b) over k symbols whose collision probability is 2^(-h2), taking the root with a >= 1/k:

        a = (1 + sqrt((k - 1)(k c - 1))) / k,  b = (1 - a) / (k - 1),  c = 2^(-h2)

    Args:
        k (int): alphabet size, k >= 1.
        h2 (float): collision entropy in bits, 0 <= h2 <= log2(k).

    Returns:
        tuple[float, float]: (a, b). Raises GeneratorSpecError when 2^(-h2) is outside [1/k, 1].
    """
    if k < 1:
        raise GeneratorSpecError(f"alphabet size must be at least 1, got {k}")
    c = 2.0 ** (-h2)
    if not (1.0 / k - _FEASIBILITY_EPS <= c <= 1.0 + _FEASIBILITY_EPS):
        raise GeneratorSpecError(f"collision entropy {h2} is infeasible for k = {k} (must lie in [0, {math.log2(k):.6f}])")
    c = min(max(c, 1.0 / k), 1.0)
    if k == 1:
        return 1.0, 0.0
    a = (1.0 + math.sqrt(max(0.0, (k - 1) * (k * c - 1.0)))) / k
    a = min(a, 1.0)
    return a, (1.0 - a) / (k - 1)


def _draw(spec: GenSpec, probabilities: np.ndarray) -> tuple[int, ...]:
    cdf = np.cumsum(probabilities)
    cdf[-1] = 1.0
    u = uniform_doubles(spec.seed, spec.n)
    symbols = np.searchsorted(cdf, u, side="right") + 1
    return tuple(np.minimum(symbols, spec.k).tolist())


def uniform_sequence(spec: GenSpec) -> tuple[int, ...]:
    """
    i.i.d. uniform symbols over {1..k}, fully determined by (n, k, seed).

    Args:
        spec (GenSpec): the generator parameters; h2 must be unset.

    Returns:
        tuple[int, ...]: the sequence. Raises GeneratorSpecError for k = 0 or when h2 is set.
    """
    _check_alphabet(spec)
    if spec.h2 is not None:
        raise GeneratorSpecError("uniform_sequence does not take a target entropy; use entropy_sequence")
    if spec.n == 0:
        return ()
    u = uniform_doubles(spec.seed, spec.n)
    symbols = np.floor(u * spec.k).astype(np.int64) + 1
    return tuple(np.minimum(symbols, spec.k).tolist())


def entropy_sequence(spec: GenSpec) -> tuple[int, ...]:
    """
    i.i.d. symbols over {1..k} whose collision entropy per draw is spec.h2 bits.

    Args:
        spec (GenSpec): the generator parameters; h2 must be set.

    Returns:
        tuple[int, ...]: the sequence. Raises GeneratorSpecError for infeasible h2.
    """
    _check_alphabet(spec)
    if spec.h2 is None:
        raise GeneratorSpecError("entropy_sequence needs a target entropy h2")
    a, b = entropy_distribution(spec.k, spec.h2)
    if spec.n == 0:
        return ()
    probabilities = np.full(spec.k, b, dtype=np.float64)
    probabilities[0] = a
    return _draw(spec, probabilities)


def letter_counts(k: int, h2: float, n: int) -> list[int]:
    """
    How many times each symbol of {1..k} occurs in a fixed-composition sequence of length n: round(a n) copies of symbol 1, the rest spread as evenly as possible over the others, lower symbols first.
    """
    a, _ = entropy_distribution(k, h2)
    if k == 1:
        return [n]
    common = min(n, int(round(a * n)))
    share, extra = divmod(n - common, k - 1)
    return [common] + [share + (1 if s < extra else 0) for s in range(k - 1)]


def composition_sequence(spec: GenSpec) -> tuple[int, ...]:
    """
    A random arrangement of the letters given by letter_counts(): the symbol frequencies are fixed, so every sequence of a given length has the same empirical collision entropy, close to spec.h2.

    The arrangement sorts the SplitMix64 doubles of spec.seed, so it is as reproducible as the i.i.d. generators.

    Args:
        spec (GenSpec): the generator parameters; h2 must be set.

    Returns:
        tuple[int, ...]: the sequence. Raises GeneratorSpecError for infeasible h2.
    """
    _check_alphabet(spec)
    if spec.h2 is None:
        raise GeneratorSpecError("composition_sequence needs a target entropy h2")
    counts = letter_counts(spec.k, spec.h2, spec.n)
    if spec.n == 0:
        return ()
    symbols = np.repeat(np.arange(1, spec.k + 1, dtype=np.int64), counts)
    order = np.argsort(uniform_doubles(spec.seed, spec.n), kind="stable")
    x = np.empty(spec.n, dtype=np.int64)
    x[order] = symbols
    return tuple(x.tolist())


def generate(spec: GenSpec) -> tuple[int, ...]:
    """
    uniform_sequence() or entropy_sequence(), depending on whether spec.h2 is set.
    """
    if spec.h2 is None:
        return uniform_sequence(spec)
    return entropy_sequence(spec)


def collision_probability(x: Sequence) -> float:
    """
    Empirical collision probability sum_i p_i^2 of the symbols of x.
    """
    if len(x) == 0:
        return 0.0
    _, counts = np.unique(np.asarray(x), return_counts=True)
    frequencies = counts / len(x)
    return float(np.sum(frequencies**2))
