"""Split types of equivariant bundles on invariant curves, and the expression
calculus (direct sum, tensor, symmetric power, dual, explicit tables) that
produces them.

A bundle is known only through its restrictions to the torus-invariant
curves.  Each restriction to a curve ``C`` (a projective line) splits as
``O(a_1) + ... + O(a_n)``; the sorted tuple ``(a_1, ..., a_n)`` is its
*split type*.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from math import comb
from typing import Any

from .errors import SchemaError

__all__ = [
    "SplitType", "split_type", "BundleExpr", "Line", "DirectSum", "Tensor", "Sym",
    "Dual", "Table", "restrict", "rank", "seshadri_engine", "twist_threshold",
    "from_json", "to_json", "is_nef_split", "is_ample_split", "Verdict",
    "MODEL_CURVE_TAG", "EXACT_TAG",
]

SplitType = tuple[int, ...]
DegreeFn = Callable[[tuple[int, ...], Hashable], int]

MODEL_CURVE_TAG = "model-curve verdict"
EXACT_TAG = "theorem-exact"


def split_type(degrees: Iterable[int]) -> SplitType:
    st = tuple(sorted(int(d) for d in degrees))
    if not st:
        raise SchemaError("a split type needs at least one degree")
    return st


class BundleExpr:
    """Base class of bundle expressions. Instances are immutable trees."""

    def __add__(self, other: BundleExpr) -> DirectSum:
        return DirectSum((self, other))

    def __mul__(self, other: BundleExpr) -> Tensor:
        return Tensor(self, other)


@dataclass(frozen=True)
class Line(BundleExpr):
    """Line bundle with Picard coordinates ``a`` (bundle-module-specific basis)."""

    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))


@dataclass(frozen=True)
class DirectSum(BundleExpr):
    parts: tuple[BundleExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise SchemaError("empty direct sum (rank 0) is not a bundle")


@dataclass(frozen=True)
class Tensor(BundleExpr):
    left: BundleExpr
    right: BundleExpr


@dataclass(frozen=True)
class Sym(BundleExpr):
    n: int
    of: BundleExpr

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise SchemaError(f"symmetric power exponent must be an integer >= 1, got {self.n!r}")


@dataclass(frozen=True)
class Dual(BundleExpr):
    of: BundleExpr


@dataclass(frozen=True)
class Table(BundleExpr):
    """Explicit split types keyed by curve identifier (compared as strings)."""

    entries: tuple[tuple[str, SplitType], ...]

    def __post_init__(self):
        items = self.entries.items() if isinstance(self.entries, Mapping) else self.entries
        norm = tuple(sorted((str(k), split_type(v)) for k, v in items))
        if not norm:
            raise SchemaError("empty restriction table")
        keys = [k for k, _ in norm]
        if len(set(keys)) != len(keys):
            raise SchemaError("duplicate curve identifiers in restriction table")
        sizes = {len(v) for _, v in norm}
        if len(sizes) != 1:
            raise SchemaError(f"inconsistent split-type sizes in table: {sorted(sizes)}")
        object.__setattr__(self, "entries", norm)
        object.__setattr__(self, "_index", dict(norm))

    @property
    def mapping(self) -> dict[str, SplitType]:
        return dict(self._index)

    def lookup(self, curve: Hashable) -> SplitType:
        try:
            return self._index[str(curve)]
        except KeyError:
            raise SchemaError(f"restriction table has no entry for curve {curve!s}") from None


@dataclass
class Verdict:
    """Outcome of a nef or ample test over a set of invariant curves.

    ``exact`` is False when the curve set is not known to be complete; the
    verdict is then tagged as a model-curve verdict.
    """

    kind: str
    holds: bool
    exact: bool
    witness: tuple[str, SplitType] | None = None

    @property
    def tag(self) -> str:
        return EXACT_TAG if self.exact else MODEL_CURVE_TAG

    def __bool__(self):
        return self.holds


def rank(e: BundleExpr) -> int:
    if isinstance(e, Line):
        return 1
    if isinstance(e, DirectSum):
        return sum(rank(p) for p in e.parts)
    if isinstance(e, Tensor):
        return rank(e.left) * rank(e.right)
    if isinstance(e, Sym):
        s = rank(e.of)
        return comb(e.n + s - 1, e.n)
    if isinstance(e, Dual):
        return rank(e.of)
    if isinstance(e, Table):
        return len(e.entries[0][1])
    raise TypeError(f"not a bundle expression: {e!r}")


def _sym_counts(counts: Counter, n: int) -> Counter:
    # coefficient of t^n in prod_a (1 - t q^a)^(-m_a)
    layers: list[Counter] = [Counter({0: 1})] + [Counter() for _ in range(n)]
    for a, m in sorted(counts.items()):
        new = [Counter() for _ in range(n + 1)]
        for c in range(n + 1):
            for d, mult in layers[c].items():
                for k in range(n - c + 1):
                    new[c + k][d + k * a] += mult * comb(k + m - 1, k)
        layers = new
    return +layers[n]


def _counts(e: BundleExpr, curve: Hashable, deg: DegreeFn | None) -> Counter:
    if isinstance(e, Line):
        if deg is None:
            raise SchemaError("line classes need a degree function on this variety")
        return Counter({deg(e.a, curve): 1})
    if isinstance(e, DirectSum):
        out: Counter = Counter()
        for p in e.parts:
            out.update(_counts(p, curve, deg))
        return out
    if isinstance(e, Tensor):
        left = _counts(e.left, curve, deg)
        right = _counts(e.right, curve, deg)
        out = Counter()
        for a, m in left.items():
            for b, k in right.items():
                out[a + b] += m * k
        return out
    if isinstance(e, Sym):
        return _sym_counts(_counts(e.of, curve, deg), e.n)
    if isinstance(e, Dual):
        return Counter({-a: m for a, m in _counts(e.of, curve, deg).items()})
    if isinstance(e, Table):
        return Counter(e.lookup(curve))
    raise TypeError(f"not a bundle expression: {e!r}")


def restrict(e: BundleExpr, curve: Hashable, deg: DegreeFn | None = None) -> SplitType:
    """Split type of ``e`` on ``curve``.

    ``deg(a, curve)`` gives the degree of the line class ``a``; it is only
    needed when the expression contains ``Line`` leaves.  Table leaves are
    looked up by ``curve`` itself.
    """
    counts = _counts(e, curve, deg)
    return tuple(a for a in sorted(counts) for _ in range(counts[a]))


def min_degree(e: BundleExpr, curve: Hashable, deg: DegreeFn | None = None) -> int:
    return min(_counts(e, curve, deg))


def is_nef_split(st: Sequence[int]) -> bool:
    return min(st) >= 0


def is_ample_split(st: Sequence[int]) -> bool:
    return min(st) > 0


def seshadri_engine(curves: Sequence[Hashable], restrict_fn: Callable[[Hashable], Sequence[int]]) -> int:
    """Minimum entry of the split types over the given curves."""
    if not curves:
        raise ValueError("Seshadri minimum over an empty set of curves")
    return min(min(restrict_fn(c)) for c in curves)


def twist_threshold(
    e: BundleExpr,
    line: tuple[int, ...],
    curves: Sequence[Hashable],
    deg: DegreeFn,
    bound: int,
) -> int | None:
    """Smallest n in 1..bound with Sym^n(e) (x) Line(line)^* nef on every curve.

    Returns None when no such n exists up to ``bound``.
    """
    twisted = Dual(Line(line))
    for n in range(1, bound + 1):
        probe = Tensor(Sym(n, e), twisted)
        if all(min_degree(probe, c, deg) >= 0 for c in curves):
            return n
    return None


# -- JSON -------------------------------------------------------------------

def _expect(cond: bool, path: str, why: str):
    if not cond:
        raise SchemaError(f"bundle{path}: {why}")


def from_json(obj: Any, path: str = "") -> BundleExpr:
    """Decode the JSON encoding of a bundle expression."""
    _expect(isinstance(obj, dict) and len(obj) == 1, path, "expected an object with exactly one key")
    (key, val), = obj.items()
    here = f"{path}.{key}"
    if key == "line":
        _expect(isinstance(val, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in val),
                here, "expected a list of integers")
        return Line(tuple(val))
    if key == "sum":
        _expect(isinstance(val, list) and len(val) >= 1, here, "expected a non-empty list")
        return DirectSum(tuple(from_json(v, f"{here}[{k}]") for k, v in enumerate(val)))
    if key == "tensor":
        _expect(isinstance(val, list) and len(val) >= 2, here, "expected a list of at least two factors")
        out = from_json(val[0], f"{here}[0]")
        for k, v in enumerate(val[1:], start=1):
            out = Tensor(out, from_json(v, f"{here}[{k}]"))
        return out
    if key == "sym":
        _expect(isinstance(val, dict) and set(val) == {"n", "of"}, here, 'expected {"n": k, "of": ...}')
        _expect(isinstance(val["n"], int) and not isinstance(val["n"], bool) and val["n"] >= 1,
                f"{here}.n", "expected an integer >= 1")
        return Sym(val["n"], from_json(val["of"], f"{here}.of"))
    if key == "dual":
        return Dual(from_json(val, here))
    if key == "table":
        _expect(isinstance(val, dict) and val, here, "expected a non-empty object")
        for k, v in val.items():
            _expect(isinstance(v, list) and v and all(isinstance(x, int) and not isinstance(x, bool) for x in v),
                    f"{here}[{k!r}]", "expected a non-empty list of integers")
        return Table(val)
    raise SchemaError(f"bundle{path}: unknown constructor {key!r}")


def to_json(e: BundleExpr) -> dict:
    if isinstance(e, Line):
        return {"line": list(e.a)}
    if isinstance(e, DirectSum):
        return {"sum": [to_json(p) for p in e.parts]}
    if isinstance(e, Tensor):
        return {"tensor": [to_json(e.left), to_json(e.right)]}
    if isinstance(e, Sym):
        return {"sym": {"n": e.n, "of": to_json(e.of)}}
    if isinstance(e, Dual):
        return {"dual": to_json(e.of)}
    if isinstance(e, Table):
        return {"table": {str(k): list(v) for k, v in e.entries}}
    raise TypeError(f"not a bundle expression: {e!r}")


def line_leaves(e: BundleExpr) -> list[Line]:
    if isinstance(e, Line):
        return [e]
    if isinstance(e, DirectSum):
        return [x for p in e.parts for x in line_leaves(p)]
    if isinstance(e, Tensor):
        return line_leaves(e.left) + line_leaves(e.right)
    if isinstance(e, (Sym, Dual)):
        return line_leaves(e.of)
    return []


def table_leaves(e: BundleExpr) -> list[Table]:
    if isinstance(e, Table):
        return [e]
    if isinstance(e, DirectSum):
        return [x for p in e.parts for x in table_leaves(p)]
    if isinstance(e, Tensor):
        return table_leaves(e.left) + table_leaves(e.right)
    if isinstance(e, (Sym, Dual)):
        return table_leaves(e.of)
    return []
