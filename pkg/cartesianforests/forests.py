"""
The Cartesian Forest object and the forest of a sequence.

A forest is stored as an arena: nodes are integers 0..n-1, and every node carries two ordered tuples of nodes, its left sub-forest and its right sub-forest. The top level is the tuple `roots`. When a forest is built from a sequence, node h is position h of the sequence (0-based).

Only the first root of any sibling list may have a non-empty left sub-forest. Forests built from sequences always satisfy this; forests coming from outside (hand-built, parsed) are checked with validate_forest().

Nothing in this module recurses on the forest shape: sorted inputs give forests as deep as the sequence is long, so builders and serializers use explicit work lists.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .utils import InvalidForestError

# Rendering of the empty forest (and of the Schröder leaf) in parentheses words.
EMPTY_WORD = "."


@dataclass(frozen=True, eq=False)
class CartesianForest:
    roots: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @classmethod
    def empty(cls) -> "CartesianForest":
        return cls((), (), ())

    @classmethod
    def from_nested(cls, nested: list) -> "CartesianForest":
        """
        Builds a forest by hand. A forest is a list of nodes and a node is a pair (left forest, right forest), so the two-sibling forest is [([], []), ([], [])]. The result is NOT validated, which lets tests build the invalid forests of the definition.

        Args:
            nested (list): the nested description.

        Returns:
            CartesianForest: the (possibly invalid) forest.
        """
        left: list[tuple[int, ...]] = []
        right: list[tuple[int, ...]] = []
        # Work items are (nested forest, owning node, side); a None owner is the top level.
        work = [(nested, None, None)]
        pending = []
        while work:
            forest, owner, side = work.pop()
            ids = []
            for node_left, node_right in forest:
                node = len(left)
                left.append(())
                right.append(())
                ids.append(node)
                work.append((node_left, node, "left"))
                work.append((node_right, node, "right"))
            pending.append((tuple(ids), owner, side))
        roots: tuple[int, ...] = ()
        for ids, owner, side in pending:
            if owner is None:
                roots = ids
            elif side == "left":
                left[owner] = ids
            else:
                right[owner] = ids
        return cls(roots, tuple(left), tuple(right))

    def __len__(self) -> int:
        return len(self.left)

    def is_empty(self) -> bool:
        return not self.roots

    @cached_property
    def key(self) -> str:
        return forest_key(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CartesianForest):
            return NotImplemented
        return forests_equal(self, other)

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"CartesianForest({self.key!r})"


def _freeze(roots: list, left: list, right: list) -> CartesianForest:
    return CartesianForest(
        tuple(roots), tuple(tuple(ids) for ids in left), tuple(tuple(ids) for ids in right)
    )


def build_forest_naive(x: Sequence) -> CartesianForest:
    """
    Builds F(x) by the literal recursive definition: the positions of the minimum become the roots, the part before the first root is its left sub-forest, and each part between two roots (or after the last one) is the right sub-forest of the root on its left. Quadratic in the worst case; used as the reference builder.

    Args:
        x (Sequence): the sequence (any totally ordered values).

    Returns:
        CartesianForest: the forest, node h being position h of x.
    """
    m = len(x)
    left: list[list[int]] = [[] for _ in range(m)]
    right: list[list[int]] = [[] for _ in range(m)]
    roots: list[int] = []

    work = [(0, m, roots)]
    while work:
        lo, hi, target = work.pop()
        if lo >= hi:
            continue
        smallest = min(x[lo:hi])
        positions = [h for h in range(lo, hi) if x[h] == smallest]
        target.extend(positions)
        work.append((lo, positions[0], left[positions[0]]))
        for root, nxt in zip(positions, positions[1:] + [hi]):
            work.append((root + 1, nxt, right[root]))

    return _freeze(roots, left, right)


def build_forest_online(x: Sequence) -> CartesianForest:
    """
    Builds F(x) left to right in linear time by maintaining the right spine of the forest: the last root of the top level, the last root of its right sub-forest, and so on. Values strictly increase along the spine.

    For a new element v, every spine node larger than v is popped. If the deepest remaining spine node equals v, the new node becomes its right sibling; otherwise the popped levels become the left sub-forest of the new node, which takes their place.

    Args:
        x (Sequence): the sequence.

    Returns:
        CartesianForest: the same forest as build_forest_naive(x).
    """
    m = len(x)
    left: list[list[int]] = [[] for _ in range(m)]
    right: list[list[int]] = [[] for _ in range(m)]
    roots: list[int] = []
    spine: list[int] = []

    for h in range(m):
        v = x[h]
        while spine and x[spine[-1]] > v:
            spine.pop()

        if spine and x[spine[-1]] == v:
            spine.pop()
            siblings = right[spine[-1]] if spine else roots
            siblings.append(h)
        elif spine:
            parent = spine[-1]
            left[h] = right[parent]
            right[parent] = [h]
        else:
            left[h] = roots
            roots = [h]
        spine.append(h)

    return _freeze(roots, left, right)


def forest_key(F: CartesianForest) -> str:
    """
    The canonical serialization of a forest: its parentheses word with the outermost pair kept. An empty forest is "."; a forest with roots r1..rk is "(" followed by the words of left(r1), right(r1), ..., right(rk) and ")". Two forests are equal exactly when their keys are.

    Args:
        F (CartesianForest): the forest.

    Returns:
        str: the key.
    """
    out: list[str] = []
    stack: list = [F.roots]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif not item:
            out.append(EMPTY_WORD)
        else:
            stack.append(")")
            for node in reversed(item):
                stack.append(F.right[node])
            stack.append(F.left[item[0]])
            stack.append("(")
    return "".join(out)


def forests_equal(F: CartesianForest, G: CartesianForest) -> bool:
    """
    Structural equality of two forests (same root counts, recursively equal sub-forests).
    """
    if len(F) != len(G):
        return False
    return F.key == G.key


def validate_forest(F: CartesianForest) -> bool:
    """
    Checks that F is a Cartesian Forest: every node of the arena is reachable exactly once from the roots, and no root other than the first of its sibling list has a left sub-forest.

    Args:
        F (CartesianForest): the forest to check.

    Returns:
        bool: True if valid.
    """
    n = len(F.left)
    if len(F.right) != n:
        return False

    seen = set()
    stack = [F.roots]
    while stack:
        siblings = stack.pop()
        for idx, node in enumerate(siblings):
            if not isinstance(node, int) or not 0 <= node < n or node in seen:
                return False
            seen.add(node)
            if idx > 0 and F.left[node]:
                return False
            stack.append(F.left[node])
            stack.append(F.right[node])

    return len(seen) == n


def require_valid(F: CartesianForest) -> None:
    """
    Raises InvalidForestError unless validate_forest(F) holds.
    """
    if not validate_forest(F):
        raise InvalidForestError("not a valid Cartesian Forest")


def node_count(F: CartesianForest) -> int:
    return len(F)


def forest_depth(F: CartesianForest) -> int:
    """
    Number of nested levels in F (0 for the empty forest). A root sits one level below the root whose sub-forest holds it.
    """
    depth = 0
    stack = [(F.roots, 1)]
    while stack:
        siblings, d = stack.pop()
        if not siblings:
            continue
        depth = max(depth, d)
        stack.append((F.left[siblings[0]], d + 1))
        for node in siblings:
            stack.append((F.right[node], d + 1))
    return depth


def canonical_sequence(F: CartesianForest) -> tuple[int, ...]:
    """
    Builds a witness sequence y with F(y) = F: every root at nesting depth d gets value d (top level is depth 1), emitted in the order left(r1), r1, right(r1), r2, right(r2), ..., rk, right(rk).

    Args:
        F (CartesianForest): a valid forest.

    Returns:
        tuple[int, ...]: the witness. Raises InvalidForestError for an invalid forest.
    """
    require_valid(F)

    out: list[int] = []
    # Items are either an int (a value to emit) or a (siblings, depth) pair to expand.
    stack: list = [(F.roots, 1)]
    while stack:
        item = stack.pop()
        if isinstance(item, int):
            out.append(item)
            continue
        siblings, d = item
        if not siblings:
            continue
        for node in reversed(siblings):
            stack.append((F.right[node], d + 1))
            stack.append(d)
        stack.append((F.left[siblings[0]], d + 1))
    return tuple(out)
