"""Exact root-system arithmetic.

Roots live in simple-root coordinates, weights in fundamental-weight
coordinates and coroots in simple-coroot coordinates.  No real inner product
is ever formed: everything goes through the Cartan matrix

    cartan[i][j] = <alpha_j, alpha_i^vee>

so that ``s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i``.  Simple indices
in the public API are 1-based, as in the usual notation s_1, ..., s_n.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import SchemaError

__all__ = [
    "CartanLabel", "Root", "Weight", "Coroot", "RootSystem",
    "parse_type", "build_root_system", "coroot", "pairing", "reflect",
]

MAX_COMPONENT_RANK = 8


class _Vec(tuple):
    """Integer vector with componentwise arithmetic (tuple ``+`` is not concat here)."""

    __slots__ = ()

    def __new__(cls, coords=()):
        return super().__new__(cls, (int(c) for c in coords))

    def __add__(self, other):
        return type(self)(a + b for a, b in zip(self, other, strict=True))

    def __sub__(self, other):
        return type(self)(a - b for a, b in zip(self, other, strict=True))

    def __neg__(self):
        return type(self)(-a for a in self)

    def __mul__(self, k):
        return type(self)(k * a for a in self)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self)

    def __repr__(self):
        return f"{type(self).__name__}({list(self)})"


class Root(_Vec):
    """Element of the root lattice in the simple-root basis."""

    __slots__ = ()

    def is_positive(self) -> bool:
        return any(self) and all(c >= 0 for c in self)

    def is_negative(self) -> bool:
        return any(self) and all(c <= 0 for c in self)


class Weight(_Vec):
    """Element of X(T) in the fundamental-weight basis."""

    __slots__ = ()


class Coroot(_Vec):
    """Element of the coroot lattice in the simple-coroot basis."""

    __slots__ = ()


@dataclass(frozen=True, order=True)
class CartanLabel:
    family: str
    rank: int

    def __str__(self):
        return f"{self.family}{self.rank}"


_LABEL_RE = re.compile(r"^([A-Ga-g])(\d+)$")


def _check_label(family: str, rank: int) -> list[CartanLabel]:
    if rank < 1 or rank > MAX_COMPONENT_RANK:
        raise SchemaError(f"unsupported rank {rank} for type {family} (1..{MAX_COMPONENT_RANK})")
    if family == "D" and rank == 2:
        return [CartanLabel("A", 1), CartanLabel("A", 1)]
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[family]
    if not ok:
        raise SchemaError(f"invalid Cartan type {family}{rank}")
    return [CartanLabel(family, rank)]


def parse_type(text: str | list) -> tuple[CartanLabel, ...]:
    """Parse ``"A2"``, ``"b3"``, ``"A1xA1"`` into a tuple of labels.

    A list of labels or strings is also accepted.  ``D2`` is normalized to
    ``A1xA1``.
    """
    if isinstance(text, (list, tuple)):
        parts = [str(p) for p in text]
    else:
        if not isinstance(text, str) or not text.strip():
            raise SchemaError(f"root system must be a non-empty string, got {text!r}")
        parts = re.split(r"[x×]", text.strip(), flags=re.IGNORECASE)
    labels: list[CartanLabel] = []
    for part in parts:
        if isinstance(part, CartanLabel):
            labels.extend(_check_label(part.family, part.rank))
            continue
        m = _LABEL_RE.match(part.strip())
        if not m:
            raise SchemaError(f"cannot parse Cartan type component {part!r}")
        labels.extend(_check_label(m.group(1).upper(), int(m.group(2))))
    return tuple(labels)


def _component_cartan(label: CartanLabel) -> list[list[int]]:
    """Cartan matrix of one simple type, Bourbaki numbering."""
    n = label.rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a_ij=-1, a_ji=-1):
        # 1-based; a_ij = <alpha_j, alpha_i^vee>
        c[i - 1][j - 1] = a_ij
        c[j - 1][i - 1] = a_ji

    f = label.family
    if f in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if f == "B":
            # alpha_n short
            link(n - 1, n, -1, -2)
        elif f == "C":
            # alpha_n long
            link(n - 1, n, -2, -1)
    elif f == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif f == "E":
        link(1, 3)
        link(3, 4)
        link(2, 4)
        for i in range(4, n):
            link(i, i + 1)
    elif f == "F":
        link(1, 2)
        link(2, 3, -1, -2)  # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        link(3, 4)
    elif f == "G":
        link(1, 2, -3, -1)  # alpha_1 short
    return c


class RootSystem:
    """Root system of a (possibly reducible) crystallographic type.

    Immutable after construction.
    """

    def __init__(self, labels: tuple[CartanLabel, ...]):
        if not labels:
            raise SchemaError("empty Cartan type")
        self.labels = tuple(labels)
        self.rank = sum(lab.rank for lab in labels)
        n = self.rank
        cartan = [[0] * n for _ in range(n)]
        components = []
        off = 0
        for lab in labels:
            block = _component_cartan(lab)
            for i in range(lab.rank):
                for j in range(lab.rank):
                    cartan[off + i][off + j] = block[i][j]
            components.append(tuple(range(off, off + lab.rank)))
            off += lab.rank
        self.cartan: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in cartan)
        self.components: tuple[tuple[int, ...], ...] = tuple(components)
        self.lengths: tuple[int, ...] = self._squared_lengths()
        self.positive_roots: tuple[Root, ...] = self._positive_roots()
        self._positive_set = frozenset(self.positive_roots)
        self._coroots: dict[Root, Coroot] = {}

    def __repr__(self):
        return f"RootSystem({self.name!r})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    @property
    def name(self) -> str:
        return "x".join(str(lab) for lab in self.labels)

    def _squared_lengths(self) -> tuple[int, ...]:
        # propagate along Dynkin edges: cartan[i][j] d_i = cartan[j][i] d_j
        n, c = self.rank, self.cartan
        d: list[Fraction | None] = [None] * n
        for comp in self.components:
            d[comp[0]] = Fraction(1)
            stack = [comp[0]]
            while stack:
                i = stack.pop()
                for j in comp:
                    if j != i and c[i][j] != 0 and d[j] is None:
                        d[j] = d[i] * c[i][j] / c[j][i]
                        stack.append(j)
            short = min(d[k] for k in comp)
            for k in comp:
                d[k] = 2 * d[k] / short
        for i in range(n):
            for j in range(n):
                if c[i][j] * d[i] != c[j][i] * d[j]:
                    raise AssertionError("Cartan matrix is not symmetrizable")
        out = tuple(int(x) for x in d)
        assert all(Fraction(x) == y for x, y in zip(out, d))
        return out

    def _positive_roots(self) -> tuple[Root, ...]:
        n = self.rank
        simple = [self.simple_root(i) for i in range(1, n + 1)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(n):
                    gamma = self._reflect_root(i, beta)
                    if gamma.is_positive() and gamma not in seen:
                        seen.add(gamma)
                        nxt.append(gamma)
            frontier = nxt
        return tuple(sorted(seen))

    # -- basic vectors -----------------------------------------------------

    def _check_index(self, i: int) -> int:
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise SchemaError(f"simple index {i!r} out of range 1..{self.rank}")
        return i - 1

    def simple_root(self, i: int) -> Root:
        k = self._check_index(i)
        return Root(1 if j == k else 0 for j in range(self.rank))

    def fundamental_weight(self, i: int) -> Weight:
        k = self._check_index(i)
        return Weight(1 if j == k else 0 for j in range(self.rank))

    def simple_coroot(self, i: int) -> Coroot:
        k = self._check_index(i)
        return Coroot(1 if j == k else 0 for j in range(self.rank))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return tuple(sorted(self.positive_roots + tuple(-b for b in self.positive_roots)))

    def is_root(self, x) -> bool:
        x = Root(x)
        return x in self._positive_set or -x in self._positive_set

    def is_positive_root(self, x) -> bool:
        return Root(x) in self._positive_set

    # -- conversions ---------------------------------------------------------

    def to_weight(self, x: Root) -> Weight:
        """Express a root-lattice vector in the fundamental-weight basis."""
        c = self.cartan
        return Weight(sum(c[i][j] * x[j] for j in range(self.rank)) for i in range(self.rank))

    def squared_length(self, beta: Root) -> Fraction:
        c, d = self.cartan, self.lengths
        n = self.rank
        return Fraction(
            sum(beta[i] * beta[j] * c[i][j] * d[i] for i in range(n) for j in range(n)), 2
        )

    def coroot(self, beta) -> Coroot:
        beta = Root(beta)
        if len(beta) != self.rank or not self.is_root(beta):
            raise SchemaError(f"{list(beta)} is not a root of {self.name}")
        cached = self._coroots.get(beta)
        if cached is not None:
            return cached
        dbeta = self.squared_length(beta)
        coeffs = [Fraction(b * di) / dbeta for b, di in zip(beta, self.lengths)]
        if any(q.denominator != 1 for q in coeffs):
            raise AssertionError(f"non-integral coroot for {beta}")
        cv = Coroot(int(q) for q in coeffs)
        self._coroots[beta] = cv
        return cv

    # -- reflections -----------------------------------------------------------

    def _reflect_root(self, i: int, x: Root) -> Root:
        # 0-based i
        k = sum(self.cartan[i][j] * x[j] for j in range(self.rank))
        if not k:
            return x
        lst = list(x)
        lst[i] -= k
        return Root(lst)

    def _reflect_weight(self, i: int, lam: Weight) -> Weight:
        k = lam[i]
        if not k:
            return lam
        c = self.cartan
        return Weight(lam[j] - k * c[j][i] for j in range(self.rank))

    def _reflect_coroot(self, i: int, x: Coroot) -> Coroot:
        k = sum(x[j] * self.cartan[j][i] for j in range(self.rank))
        if not k:
            return x
        lst = list(x)
        lst[i] -= k
        return Coroot(lst)

    def reflect(self, i: int, x):
        """Apply the simple reflection s_i to a Root, Weight or Coroot."""
        k = self._check_index(i)
        if isinstance(x, Weight):
            return self._reflect_weight(k, x)
        if isinstance(x, Coroot):
            return self._reflect_coroot(k, x)
        return self._reflect_root(k, Root(x))

    def pairing(self, nu, c) -> int:
        """<nu, c> for a weight (or root) nu and a coroot c."""
        if isinstance(nu, Root):
            nu = self.to_weight(nu)
        return sum(a * b for a, b in zip(nu, c, strict=True))

    def describe(self) -> dict:
        return {
            "type": self.name,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "squared_lengths": list(self.lengths),
            "positive_roots": [list(b) for b in self.positive_roots],
            "num_positive_roots": len(self.positive_roots),
        }


_CACHE: dict[tuple[CartanLabel, ...], RootSystem] = {}


def build_root_system(type_: str | list | tuple) -> RootSystem:
    """Build (or fetch from cache) the root system of a Cartan type."""
    labels = parse_type(type_) if not (
        isinstance(type_, tuple) and all(isinstance(t, CartanLabel) for t in type_)
    ) else type_
    rs = _CACHE.get(labels)
    if rs is None:
        rs = _CACHE[labels] = RootSystem(labels)
    return rs


def coroot(rs: RootSystem, beta) -> Coroot:
    return rs.coroot(beta)


def pairing(rs: RootSystem, nu, c) -> int:
    return rs.pairing(nu, c)


def reflect(rs: RootSystem, i: int, x):
    return rs.reflect(i, x)
