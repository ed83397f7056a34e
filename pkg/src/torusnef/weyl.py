"""Weyl group elements, reduced words, inversion sets and coset representatives."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from functools import cached_property

from .errors import GuardError, SchemaError
from .rootsys import Root, RootSystem, Weight

__all__ = [
    "WeylElement", "apply", "product", "is_reduced", "first_non_reduced_position",
    "inversion_set", "min_coset_rep", "min_coset_reps", "enumerate_weyl",
    "ENUMERATION_MAX_RANK",
]

ENUMERATION_MAX_RANK = 4


def _check_word(rs: RootSystem, word: Iterable[int]) -> tuple[int, ...]:
    out = []
    for pos, a in enumerate(word, start=1):
        if isinstance(a, bool) or not isinstance(a, int) or not 1 <= a <= rs.rank:
            raise SchemaError(f"word letter {a!r} at position {pos} not in 1..{rs.rank}")
        out.append(a)
    return tuple(out)


class WeylElement:
    """An element of W, stored as the images of the simple roots.

    Two elements are equal iff they act identically on the root lattice.
    ``canonical_word`` is the reduced word obtained by repeatedly stripping
    the smallest right descent.
    """

    __slots__ = ("rs", "images", "__dict__")

    def __init__(self, rs: RootSystem, images: Sequence[Root]):
        self.rs = rs
        self.images: tuple[Root, ...] = tuple(Root(c) for c in images)

    @classmethod
    def identity(cls, rs: RootSystem) -> WeylElement:
        return cls(rs, [rs.simple_root(i) for i in range(1, rs.rank + 1)])

    @classmethod
    def from_word(cls, rs: RootSystem, word: Iterable[int]) -> WeylElement:
        w = cls.identity(rs)
        for a in _check_word(rs, word):
            w = w.times_simple(a)
        return w

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"WeylElement({self.rs.name}, {list(self.canonical_word)})"

    def __lt__(self, other: WeylElement):
        return (self.length, self.canonical_word) < (other.length, other.canonical_word)

    def times_simple(self, i: int) -> WeylElement:
        """Right multiplication by s_i: columns j -> w(alpha_j) - c_ij w(alpha_i)."""
        k = i - 1
        row = self.rs.cartan[k]
        wi = self.images[k]
        return WeylElement(
            self.rs, [img - row[j] * wi if row[j] else img for j, img in enumerate(self.images)]
        )

    def simple_times(self, i: int) -> WeylElement:
        """Left multiplication by s_i."""
        return WeylElement(self.rs, [self.rs.reflect(i, img) for img in self.images])

    def __mul__(self, other: WeylElement) -> WeylElement:
        return WeylElement(self.rs, [self.act_root(img) for img in other.images])

    def act_root(self, x: Sequence[int]) -> Root:
        out = [0] * self.rs.rank
        for c, img in zip(x, self.images):
            if c:
                for k, v in enumerate(img):
                    out[k] += c * v
        return Root(out)

    def act_weight(self, lam: Sequence[int]) -> Weight:
        lam = Weight(lam)
        for a in reversed(self.canonical_word):
            lam = self.rs._reflect_weight(a - 1, lam)
        return lam

    def act(self, x):
        return self.act_weight(x) if isinstance(x, Weight) else self.act_root(x)

    @cached_property
    def canonical_word(self) -> tuple[int, ...]:
        w = self
        letters: list[int] = []
        while True:
            for k, img in enumerate(w.images):
                if img.is_negative():
                    letters.append(k + 1)
                    w = w.times_simple(k + 1)
                    break
            else:
                break
        return tuple(reversed(letters))

    @property
    def length(self) -> int:
        return len(self.canonical_word)

    @cached_property
    def inverse(self) -> WeylElement:
        return WeylElement.from_word(self.rs, reversed(self.canonical_word))

    def is_identity(self) -> bool:
        return self.images == WeylElement.identity(self.rs).images


def apply(rs: RootSystem, w: WeylElement, x):
    return w.act(x)


def product(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    return WeylElement.from_word(rs, word)


def first_non_reduced_position(rs: RootSystem, word: Iterable[int]) -> int | None:
    """1-based position where the word first stops being reduced, else None.

    The prefix product p extends reducedly by s_i iff p(alpha_i) > 0.
    """
    p = WeylElement.identity(rs)
    for pos, a in enumerate(_check_word(rs, word), start=1):
        if not p.images[a - 1].is_positive():
            return pos
        p = p.times_simple(a)
    return None


def is_reduced(rs: RootSystem, word: Iterable[int]) -> bool:
    return first_non_reduced_position(rs, word) is None


def inversion_set(rs: RootSystem, v: WeylElement) -> frozenset[Root]:
    """R^+(v^{-1}) = {beta > 0 : v^{-1}(beta) < 0}."""
    vinv = v.inverse
    return frozenset(b for b in rs.positive_roots if vinv.act_root(b).is_negative())


def min_coset_rep(rs: RootSystem, w: WeylElement, omit: int) -> WeylElement:
    """The minimal-length element of w W_{S - {alpha_omit}}."""
    while True:
        for k, img in enumerate(w.images):
            if k + 1 != omit and img.is_negative():
                w = w.times_simple(k + 1)
                break
        else:
            return w


def _is_min_rep(v: WeylElement, omit: int) -> bool:
    return all(img.is_positive() for k, img in enumerate(v.images) if k + 1 != omit)


def min_coset_reps(rs: RootSystem, omit: int) -> list[WeylElement]:
    """W^{S - {alpha_omit}}, sorted by (length, canonical word).

    Breadth-first from the identity by left multiplication; the set is closed
    under removing a left descent, so every representative is reached.
    """
    rs._check_index(omit)
    e = WeylElement.identity(rs)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(1, rs.rank + 1):
                u = v.simple_times(i)
                if u not in seen and _is_min_rep(u, omit):
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return sorted(seen)


def enumerate_weyl(rs: RootSystem, max_rank: int = ENUMERATION_MAX_RANK) -> Iterator[WeylElement]:
    """Every element of W exactly once, in order of (length, canonical word)."""
    if rs.rank > max_rank:
        raise GuardError(f"exhaustive Weyl group enumeration refused for rank {rs.rank} > {max_rank}")
    e = WeylElement.identity(rs)
    seen = {e}
    layer = [e]
    while layer:
        yield from sorted(layer)
        nxt = []
        for v in layer:
            for i in range(1, rs.rank + 1):
                u = v.times_simple(i)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        layer = nxt
