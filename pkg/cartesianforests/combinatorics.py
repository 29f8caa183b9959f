"""
Combinatorics of Cartesian Forests: the bijections with Schröder Trees and Parentheses Words, their inverses, exhaustive enumeration, and the Schröder–Hipparchus numbers that count forests.

Grammars used for text I/O:

- Parentheses word: W := '.' | '(' W W+ ')'. The canonical word keeps the outermost pair; the display word drops it (so "(..)." is displayed for "((..).)"). '.' stands for the box symbol.
- Schröder tree: T := '*' | '[' T T+ ']'.

A forest with n nodes maps to a tree with n + 1 leaves and to a word with n + 1 dots. The forest with roots r1..rk maps to a node whose k + 1 children are the images of left(r1), right(r1), ..., right(rk).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator

from mpmath import mp

from .forests import EMPTY_WORD, CartesianForest, forest_key, require_valid
from .utils import BudgetError, CartesianForestError, CountMismatchError, InvalidForestError

logger = logging.getLogger(__name__)

SCHRODER_LEAF = "*"

# Largest n accepted by forest_words() and iter_forests().
ENUMERATION_BUDGET = 12

# Largest n for which enumerate_forests() builds the whole list (f_9 = 103049 forests).
LIST_BUDGET = 9

# Sub-forest word lists up to this many nodes are kept between calls; larger ones are regenerated.
WORD_CACHE_LIMIT = 7


@dataclass(frozen=True, eq=False)
class SchroderTree:
    """
    A planar tree whose internal nodes have at least two children, stored as an arena: children[v] is the ordered tuple of children of node v, empty for a leaf.
    """

    children: tuple[tuple[int, ...], ...]
    root: int = 0

    @classmethod
    def leaf(cls) -> "SchroderTree":
        return cls(((),), 0)

    def leaf_count(self) -> int:
        return sum(1 for kids in self.children if not kids)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchroderTree):
            return NotImplemented
        return schroder_to_text(self) == schroder_to_text(other)

    def __hash__(self) -> int:
        return hash(schroder_to_text(self))

    def __repr__(self) -> str:
        return f"SchroderTree({schroder_to_text(self)!r})"


@dataclass(frozen=True)
class ForestCount:
    n: int
    value: int


def validate_schroder(T: SchroderTree) -> bool:
    """
    Checks that every arena node is reachable exactly once from the root and that every internal node has at least two children.
    """
    n = len(T.children)
    if not 0 <= T.root < n:
        return False
    seen = set()
    stack = [T.root]
    while stack:
        node = stack.pop()
        if not isinstance(node, int) or not 0 <= node < n or node in seen:
            return False
        seen.add(node)
        kids = T.children[node]
        if len(kids) == 1:
            return False
        stack.extend(kids)
    return len(seen) == n


def cf_to_schroder(F: CartesianForest) -> SchroderTree:
    """
    Maps a forest with n nodes to a Schröder Tree with n + 1 leaves. The empty forest gives a single leaf; a forest with k roots gives a node with k + 1 children, the images of left(r1), right(r1), ..., right(rk).

    Args:
        F (CartesianForest): a valid forest.

    Returns:
        SchroderTree: the tree. Raises InvalidForestError for an invalid forest.
    """
    require_valid(F)
    children: list[list[int]] = [[]]
    work = [(F.roots, 0)]
    while work:
        siblings, node = work.pop()
        if not siblings:
            continue
        for sub in [F.left[siblings[0]]] + [F.right[r] for r in siblings]:
            child = len(children)
            children.append([])
            children[node].append(child)
            work.append((sub, child))
    return SchroderTree(tuple(tuple(kids) for kids in children), 0)


def schroder_to_cf(T: SchroderTree) -> CartesianForest:
    """
    Inverse of cf_to_schroder: a leaf gives the empty forest; a node with children c1..c(k+1) gives k roots, with left(r1) the image of c1 and right(ri) the image of c(i+1).

    Args:
        T (SchroderTree): a well-formed Schröder Tree.

    Returns:
        CartesianForest: the forest. Raises InvalidForestError if an internal node has fewer than two children.
    """
    if not validate_schroder(T):
        raise InvalidForestError("not a valid Schröder Tree")

    left: list[tuple[int, ...]] = []
    right: list[tuple[int, ...]] = []
    roots: tuple[int, ...] = ()
    # Work items: (tree node, forest node owning the sub-forest, side); owner None is the top level.
    work = [(T.root, None, None)]
    while work:
        node, owner, side = work.pop()
        kids = T.children[node]
        ids: tuple[int, ...] = ()
        if kids:
            first = len(left)
            ids = tuple(range(first, first + len(kids) - 1))
            left.extend(() for _ in ids)
            right.extend(() for _ in ids)
            work.append((kids[0], ids[0], "left"))
            for i, r in enumerate(ids):
                work.append((kids[i + 1], r, "right"))
        if owner is None:
            roots = ids
        elif side == "left":
            left[owner] = ids
        else:
            right[owner] = ids
    return CartesianForest(roots, tuple(left), tuple(right))


def _serialize(T: SchroderTree, leaf: str, open_: str, close: str) -> str:
    out: list[str] = []
    stack: list = [T.root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif not T.children[item]:
            out.append(leaf)
        else:
            stack.append(close)
            stack.extend(reversed(T.children[item]))
            stack.append(open_)
    return "".join(out)


def _parse(text: str, leaf: str, open_: str, close: str, wrap: bool) -> SchroderTree:
    """
    Parses T := leaf | open T T+ close. With wrap=True, two or more top-level constituents are accepted and gathered under a new root (display form).
    """
    children: list[list[int]] = []
    top: list[int] = []
    stack: list[int] = []
    for pos, ch in enumerate(text):
        if ch in (leaf, open_):
            node = len(children)
            children.append([])
            (children[stack[-1]] if stack else top).append(node)
            if ch == open_:
                stack.append(node)
        elif ch == close:
            if not stack:
                raise InvalidForestError(f"unbalanced {close!r} at offset {pos}")
            group = stack.pop()
            if len(children[group]) < 2:
                raise InvalidForestError(f"group closed at offset {pos} has fewer than two constituents")
        else:
            raise InvalidForestError(f"unexpected symbol {ch!r} at offset {pos}")

    if stack:
        raise InvalidForestError(f"unbalanced {open_!r}: {len(stack)} group(s) left open")
    if not top:
        raise InvalidForestError("empty word")
    if len(top) == 1:
        root = top[0]
    elif wrap:
        root = len(children)
        children.append(top)
    else:
        raise InvalidForestError(f"{len(top)} top-level constituents; expected one")
    return SchroderTree(tuple(tuple(kids) for kids in children), root)


def schroder_to_text(T: SchroderTree) -> str:
    return _serialize(T, SCHRODER_LEAF, "[", "]")


def parse_schroder(text: str) -> SchroderTree:
    """
    Reads a Schröder Tree written as '*' for a leaf and '[' children ']' for an internal node, e.g. "[**[**]]". Raises InvalidForestError on malformed input.
    """
    return _parse(text.strip(), SCHRODER_LEAF, "[", "]", wrap=False)


def cf_to_parens(F: CartesianForest, display: bool = False) -> str:
    """
    Maps a forest with n nodes to its parentheses word with n + 1 dots: "." for the empty forest, otherwise "(" + the words of left(r1), right(r1), ..., right(rk) + ")".

    Args:
        F (CartesianForest): a valid forest.
        display (bool, optional): drop the outermost pair of parentheses. Defaults to False.

    Returns:
        str: the word. Raises InvalidForestError for an invalid forest.
    """
    require_valid(F)
    word = forest_key(F)
    return display_parens(word) if display else word


def display_parens(word: str) -> str:
    """
    Canonical word to display word (outermost pair removed; "." stays ".").
    """
    if word == EMPTY_WORD:
        return word
    return word[1:-1]


def normalize_parens(word: str) -> str:
    """
    Display or canonical word to canonical word.
    """
    return _serialize(_parse(word.strip(), EMPTY_WORD, "(", ")", wrap=True), EMPTY_WORD, "(", ")")


def parens_to_cf(word: str) -> CartesianForest:
    """
    Inverse of cf_to_parens. Accepts the canonical word and the display word (which is re-wrapped); also used to read forest keys.

    Args:
        word (str): the parentheses word.

    Returns:
        CartesianForest: the forest. Raises InvalidForestError for an empty or unbalanced word, or a group with fewer than two constituents.
    """
    return schroder_to_cf(_parse(word.strip(), EMPTY_WORD, "(", ")", wrap=True))


def closed_form_count(n: int) -> int:
    """
    f_n = sum over i = 1..n of (1/n) C(n, i) C(n, i - 1) 2^(i - 1), with f_0 = 1. Exact.
    """
    if n < 0:
        raise CartesianForestError(f"n must be non-negative, got {n}")
    if n == 0:
        return 1
    total = sum(Fraction(comb(n, i) * comb(n, i - 1) * 2 ** (i - 1), n) for i in range(1, n + 1))
    if total.denominator != 1:
        raise CountMismatchError(f"closed formula is not an integer for n = {n}")
    return total.numerator


def _series(n: int) -> tuple[list[int], list[int]]:
    # Solves F = z F^2 S + 1, S = z F S + 1 one degree per pass: the coefficient of z^k on
    # the right-hand side only involves coefficients of degree below k, which are already fixed.
    F, S = [1], [1]
    FF, FS, FFS = [1], [1], [1]
    for k in range(1, n + 1):
        F.append(FFS[k - 1])
        S.append(FS[k - 1])
        FF.append(sum(F[i] * F[k - i] for i in range(k + 1)))
        FS.append(sum(F[i] * S[k - i] for i in range(k + 1)))
        FFS.append(sum(FF[i] * S[k - i] for i in range(k + 1)))
    return F, S


def forest_series(n: int) -> list[int]:
    """
    Coefficients f_0..f_n of F(z), the generating function of Cartesian Forests, from the fixed point of F = z F^2 S + 1, S = z F S + 1.
    """
    return _series(n)[0]


def sibling_series(n: int) -> list[int]:
    """
    Coefficients s_0..s_n of S(z), the generating function of sibling lists (forests without a left sub-forest at the top).
    """
    return _series(n)[1]


def count_forests(n: int) -> ForestCount:
    """
    Number of Cartesian Forests with n nodes (Schröder–Hipparchus numbers 1, 1, 3, 11, 45, 197, ...), computed by the closed formula and by the series and cross-checked.

    Args:
        n (int): number of nodes, n >= 0.

    Returns:
        ForestCount: n and f_n. Raises CountMismatchError if the two methods disagree.
    """
    formula = closed_form_count(n)
    series = forest_series(n)[n]
    if formula != series:
        raise CountMismatchError(f"f_{n}: closed formula gives {formula}, series gives {series}")
    return ForestCount(n, formula)


def growth_rate():
    """
    3 + 2 sqrt(2), the exponential growth rate of f_n (mpmath number).
    """
    return 3 + 2 * mp.sqrt(2)


def growth_ratio(n: int) -> Fraction:
    """
    f_n / f_(n-1) as an exact fraction; tends to 3 + 2 sqrt(2).
    """
    if n < 1:
        raise CartesianForestError(f"n must be at least 1, got {n}")
    series = forest_series(n)
    return Fraction(series[n], series[n - 1])


def asymptotic_estimate(n: int):
    """
    Leading term of f_n, evaluated with mpmath (double precision overflows for large n):

        f_n ~ sqrt(3 sqrt(2) - 4) / (4 sqrt(pi (n + 1)^3)) (3 + 2 sqrt(2))^(n + 1)

    The same expression with n in place of n + 1 is the estimate of f_(n-1), not of f_n: F(z) has its singularity at 3 - 2 sqrt(2) and carries a factor 1/z.
    """
    if n < 0:
        raise CartesianForestError(f"n must be non-negative, got {n}")
    k = mp.mpf(n + 1)
    return mp.sqrt(3 * mp.sqrt(2) - 4) / (4 * mp.sqrt(mp.pi * k**3)) * growth_rate() ** k


def _forest_words(n: int) -> Iterator[str]:
    if n <= WORD_CACHE_LIMIT:
        return iter(_cached_forest_words(n))
    return _stream_forest_words(n)


def _sibling_words(n: int) -> Iterator[str]:
    if n <= WORD_CACHE_LIMIT:
        return iter(_cached_sibling_words(n))
    return _stream_sibling_words(n)


@lru_cache(maxsize=WORD_CACHE_LIMIT + 1)
def _cached_forest_words(n: int) -> tuple[str, ...]:
    return tuple(_stream_forest_words(n))


@lru_cache(maxsize=WORD_CACHE_LIMIT + 1)
def _cached_sibling_words(n: int) -> tuple[str, ...]:
    return tuple(_stream_sibling_words(n))


def _stream_forest_words(n: int) -> Iterator[str]:
    if n == 0:
        yield EMPTY_WORD
        return
    # A left sub-forest of i nodes for the first root, then a non-empty sibling list.
    for i in range(n):
        for a in _forest_words(i):
            for b in _sibling_words(n - i):
                yield "(" + a + b + ")"


def _stream_sibling_words(n: int) -> Iterator[str]:
    # Words of the right sub-forests of a sibling list holding n >= 1 nodes.
    for r in range(n):
        rest = n - 1 - r
        for a in _forest_words(r):
            if rest == 0:
                yield a
            else:
                for b in _sibling_words(rest):
                    yield a + b


def _check_budget(n: int, budget: int = ENUMERATION_BUDGET) -> None:
    if not 0 <= n <= budget:
        raise BudgetError(f"enumeration is limited to 0 <= n <= {budget}, got {n}")


def forest_words(n: int) -> Iterator[str]:
    """
    Canonical parentheses words of all Cartesian Forests with n nodes, generated from the recursive decomposition F = node(F, F) x S + empty, S = node(F) x S + empty.

    Words are produced one at a time; only the word lists of sub-forests up to WORD_CACHE_LIMIT nodes are kept in memory. The size guard is checked when the function is called, not on the first word.
    """
    _check_budget(n)
    return _forest_words(n)


def iter_forests(n: int) -> Iterator[CartesianForest]:
    """
    All structurally distinct Cartesian Forests with n nodes, built one at a time from forest_words().

    Args:
        n (int): number of nodes, 0 <= n <= 12.

    Returns:
        Iterator[CartesianForest]: f_n forests. Raises BudgetError beyond the size guard.
    """
    return (parens_to_cf(w) for w in forest_words(n))


def enumerate_forests(n: int) -> list[CartesianForest]:
    """
    All structurally distinct Cartesian Forests with n nodes, as a list checked for duplicates.

    Args:
        n (int): number of nodes, 0 <= n <= 9; iter_forests() streams up to 12.

    Returns:
        list[CartesianForest]: f_n forests, no duplicates. Raises BudgetError beyond the size guard.
    """
    _check_budget(n, LIST_BUDGET)
    forests = list(iter_forests(n))
    if len({F.key for F in forests}) != len(forests):
        raise CartesianForestError(f"duplicate forests generated for n = {n}")
    logger.debug("enumerated %d forests with %d nodes", len(forests), n)
    return forests
