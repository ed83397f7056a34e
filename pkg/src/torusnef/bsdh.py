"""Combinatorial model of a Bott-Samelson-Demazure-Hansen variety Z(w, i).

For a reduced word ``(i_1, ..., i_r)`` the variety is an iterated
P^1-fibration.  Its torus-fixed points are the *gallery points*: bit vectors
``b`` in {0,1}^r, where ``b_j = 1`` means the reflection s_{i_j} is used at
slot j.  The model curves are indexed by a moving slot ``j`` and the bits of
the other slots; the two endpoints are obtained by setting ``b_j`` to 0 and 1.

Picard classes are integer vectors in the basis L_1, ..., L_r, where L_m is
pulled back from the ample generator of Pic(G/P_{S - {alpha_{i_m}}}) along
the m-th projection of Z(w, i) into the product
Y(w, i) = prod_m G/P_{S - {alpha_{i_m}}}.

Degrees of the L_m on model curves are computed two ways, GKM weight
quotient (compiled kernel) and the closed form
``|<omega_{i_m}, (u^{-1} alpha_{i_j})^vee>|``; any disagreement raises
ConsistencyError.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import kernels
from .bundles import (
    EXACT_TAG, MODEL_CURVE_TAG, BundleExpr, Verdict, rank, restrict, seshadri_engine, table_leaves,
)
from .errors import ConsistencyError, GuardError, NotNefError, SchemaError
from .rootsys import Root, RootSystem, Weight, build_root_system
from .weyl import (
    WeylElement, first_non_reduced_position, inversion_set, min_coset_rep, min_coset_reps,
)

__all__ = [
    "GalleryPoint", "ModelCurve", "YCurveData", "BsdhVariety", "Verdict", "GkmReport",
    "build_bsdh", "MAX_WORD_LENGTH", "MODEL_CURVE_TAG", "EXACT_TAG",
]

MAX_WORD_LENGTH = 20
Y_CURVE_LIMIT = 200_000

PicClass = tuple[int, ...]


@dataclass(frozen=True, order=True)
class GalleryPoint:
    bits: tuple[int, ...]

    def __str__(self):
        return "".join(map(str, self.bits))

    @classmethod
    def parse(cls, text: str, r: int) -> GalleryPoint:
        if not isinstance(text, str) or len(text) != r or set(text) - {"0", "1"}:
            raise SchemaError(f"point must be a bit-string of length {r}, got {text!r}")
        return cls(tuple(int(ch) for ch in text))


@dataclass(frozen=True, order=True)
class ModelCurve:
    """Curve with moving slot ``moving`` (1-based); ``others`` are the r-1 fixed bits."""

    moving: int
    others: tuple[int, ...]

    def bits(self, value: int) -> tuple[int, ...]:
        j = self.moving - 1
        return self.others[:j] + (value,) + self.others[j:]

    @property
    def endpoints(self) -> tuple[GalleryPoint, GalleryPoint]:
        return GalleryPoint(self.bits(0)), GalleryPoint(self.bits(1))

    def __str__(self):
        j = self.moving - 1
        o = "".join(map(str, self.others))
        return o[:j] + "*" + o[j:]

    @classmethod
    def parse(cls, text: str, r: int) -> ModelCurve:
        if (not isinstance(text, str) or len(text) != r or text.count("*") != 1
                or set(text) - {"0", "1", "*"}):
            raise SchemaError(f"curve id must be {r} symbols from 0/1 with one '*', got {text!r}")
        j = text.index("*")
        return cls(j + 1, tuple(int(ch) for ch in text if ch != "*"))

    def contains(self, x: GalleryPoint) -> bool:
        j = self.moving - 1
        return x.bits[:j] + x.bits[j + 1:] == self.others


@dataclass(frozen=True)
class YCurveData:
    """Invariant curve of Y(w, i) up to torus translation: (beta, v, A).

    ``A`` holds 1-based factor indices; the curve moves in those factors
    along C_{beta, v_j, j} and sits at the fixed point v_j elsewhere.
    """

    beta: Root
    v: tuple[WeylElement, ...]
    A: frozenset[int]

    def key(self):
        return (tuple(self.beta), tuple(x.canonical_word for x in self.v), tuple(sorted(self.A)))


@dataclass
class GkmReport:
    ok: bool
    collisions: list[tuple[str, int, int]] = field(default_factory=list)


def _proportional(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(a[i] * b[k] == a[k] * b[i] for i in range(len(a)) for k in range(i + 1, len(a)))


class BsdhVariety:
    """Z(w, i) for a reduced word; all data derived lazily and cached."""

    def __init__(self, rs: RootSystem, word: Sequence[int]):
        word = tuple(word)
        pos = first_non_reduced_position(rs, word)
        if pos is not None:
            raise SchemaError(f"word not reduced at position {pos}")
        if len(word) > MAX_WORD_LENGTH:
            raise GuardError(f"word length {len(word)} exceeds guard {MAX_WORD_LENGTH}")
        self.rs = rs
        self.word = word
        self.r = len(word)

    def __repr__(self):
        return f"BsdhVariety({self.rs.name}, {list(self.word)})"

    # -- fixed points and curves -------------------------------------------

    def fixed_points(self) -> list[GalleryPoint]:
        return [GalleryPoint(b) for b in itertools.product((0, 1), repeat=self.r)]

    @cached_property
    def _curves(self) -> tuple[ModelCurve, ...]:
        if self.r == 0:
            return ()
        return tuple(
            ModelCurve(j, o)
            for j in range(1, self.r + 1)
            for o in itertools.product((0, 1), repeat=self.r - 1)
        )

    def model_curves(self) -> list[ModelCurve]:
        return list(self._curves)

    def curves_through(self, x: GalleryPoint) -> list[ModelCurve]:
        if len(x.bits) != self.r:
            raise SchemaError(f"point {x} has wrong length for r = {self.r}")
        return [ModelCurve(j, x.bits[:j - 1] + x.bits[j:]) for j in range(1, self.r + 1)]

    def parse_point(self, text: str) -> GalleryPoint:
        return GalleryPoint.parse(text, self.r)

    # -- localization data ---------------------------------------------------

    def _prefix_apply_weight(self, bits: Sequence[int], m: int, lam: Weight) -> Weight:
        for p in range(m - 1, -1, -1):
            if bits[p]:
                lam = self.rs.reflect(self.word[p], lam)
        return lam

    def fixed_point_weight(self, x: GalleryPoint, m: int) -> Weight:
        """w_{m,x}(omega_{i_m}) with w_{m,x} = s_{i_1}^{b_1} ... s_{i_m}^{b_m}."""
        if not 1 <= m <= self.r:
            raise SchemaError(f"class index {m} out of range 1..{self.r}")
        return self._prefix_apply_weight(x.bits, m, self.rs.fundamental_weight(self.word[m - 1]))

    def tangent_weight(self, c: ModelCurve) -> Root:
        """g(alpha_{i_j}) with g the prefix product over slots before j."""
        j = c.moving
        t = self.rs.simple_root(self.word[j - 1])
        bits = c.bits(0)
        for p in range(j - 2, -1, -1):
            if bits[p]:
                t = self.rs.reflect(self.word[p], t)
        return t

    def gkm_basis_degrees(self, c: ModelCurve) -> tuple[int, ...]:
        """deg(L_m|C) for all m from endpoint weight differences (per-curve path)."""
        x0, x1 = c.endpoints
        tw = self.rs.to_weight(self.tangent_weight(c))
        out = []
        for m in range(1, self.r + 1):
            diff = self.fixed_point_weight(x0, m) - self.fixed_point_weight(x1, m)
            pivot = next(a for a in range(self.rs.rank) if tw[a])
            k = Fraction(diff[pivot], tw[pivot])
            if k.denominator != 1 or diff != tw * int(k):
                raise ConsistencyError(
                    f"{self!r} curve {c}: weight difference {list(diff)} not an integer "
                    f"multiple of tangent {list(tw)}"
                )
            out.append(abs(int(k)))
        return tuple(out)

    def closed_form_basis_degrees(self, c: ModelCurve) -> tuple[int, ...]:
        """deg(L_m|C) = |<omega_{i_m}, (u^{-1} alpha_{i_j})^vee>| for m >= j, else 0."""
        j = c.moving
        bits = c.bits(0)
        alpha = self.rs.simple_root(self.word[j - 1])
        out = [0] * (j - 1)
        # u = s_{i_{j+1}}^{b} ... s_{i_m}^{b}; u^{-1} alpha is built by extending m
        x = alpha
        for m in range(j, self.r + 1):
            if m > j and bits[m - 1]:
                x = self.rs.reflect(self.word[m - 1], x)
            out.append(abs(self.rs.coroot(x)[self.word[m - 1] - 1]))
        return tuple(out)

    @cached_property
    def degree_table(self) -> dict[ModelCurve, tuple[Root, tuple[int, ...]]]:
        """Tangent root and basis-class degrees for every model curve.

        The kernel's GKM quotient is checked against the closed form on every
        curve; mismatch raises ConsistencyError.
        """
        try:
            tangents, degrees = kernels.curve_degree_table(
                self.rs.cartan, [a - 1 for a in self.word]
            )
        except ArithmeticError as exc:
            raise ConsistencyError(f"{self!r}: {exc}") from exc
        table = {}
        for c, t, d in zip(self._curves, tangents, degrees):
            d = tuple(d)
            closed = self.closed_form_basis_degrees(c)
            if d != closed:
                raise ConsistencyError(
                    f"{self!r} curve {c}: GKM degrees {d} != closed-form degrees {closed}"
                )
            table[c] = (Root(t), d)
        return table

    def basis_degrees(self, c: ModelCurve) -> tuple[int, ...]:
        return self.degree_table[c][1]

    def _check_class(self, a: Sequence[int]) -> PicClass:
        a = tuple(a)
        if len(a) != self.r:
            raise SchemaError(f"Picard class needs {self.r} coordinates, got {len(a)}")
        return a

    def degree(self, a: Sequence[int], c: ModelCurve) -> int:
        """deg(L|C) for L = sum_m a_m L_m."""
        a = self._check_class(a)
        return sum(x * d for x, d in zip(a, self.basis_degrees(c)))

    # -- bundles -------------------------------------------------------------

    def check_bundle(self, e: BundleExpr) -> None:
        """Validate Line lengths and Table coverage against this variety."""
        from .bundles import line_leaves

        if self.r == 0:
            raise SchemaError("empty word: the variety is a point and has no curves")
        for leaf in line_leaves(e):
            self._check_class(leaf.a)
        ids = {str(c) for c in self._curves}
        for t in table_leaves(e):
            keys = set(t.mapping)
            for k in sorted(keys):
                ModelCurve.parse(k, self.r)
            missing = sorted(ids - keys)
            if missing:
                raise SchemaError(f"restriction table misses curve {missing[0]}")
        rank(e)

    def restrict(self, e: BundleExpr, c: ModelCurve) -> tuple[int, ...]:
        return restrict(e, c, self.degree)

    def nef_test(self, e: BundleExpr) -> Verdict:
        return self._positivity(e, "nef", 0)

    def ample_test(self, e: BundleExpr) -> Verdict:
        return self._positivity(e, "ample", 1)

    def _positivity(self, e: BundleExpr, kind: str, floor: int) -> Verdict:
        self.check_bundle(e)
        gkm = self.gkm_check().ok
        for c in self._curves:
            st = self.restrict(e, c)
            if st[0] < floor:
                return Verdict(kind, False, gkm, (str(c), st))
        return Verdict(kind, True, gkm)

    def seshadri(self, e: BundleExpr, x: GalleryPoint) -> int:
        """Min of split-type entries over the model curves through x (e must be nef)."""
        nef = self.nef_test(e)
        if not nef:
            curve, st = nef.witness
            raise NotNefError(f"bundle is not nef: split type {list(st)} on curve {curve}")
        curves = self.curves_through(x)
        return seshadri_engine(curves, lambda c: self.restrict(e, c))

    def nef_cone_inequalities(self) -> list[tuple[int, ...]]:
        """Distinct nonzero basis-degree vectors; L is nef iff L . d >= 0 for each."""
        return sorted({d for _, d in self.degree_table.values() if any(d)})

    # -- GKM guard -----------------------------------------------------------

    @cached_property
    def _gkm(self) -> GkmReport:
        collisions = []
        for x in self.fixed_points():
            incident = self.curves_through(x)
            weights = [self.degree_table[c][0] for c in incident]
            for a, b in itertools.combinations(range(self.r), 2):
                if _proportional(weights[a], weights[b]):
                    collisions.append((str(x), a + 1, b + 1))
        return GkmReport(not collisions, collisions)

    def gkm_check(self) -> GkmReport:
        """Pairwise non-proportionality of tangent weights at every fixed point."""
        return self._gkm

    # -- curves of the ambient product Y(w, i) -------------------------------

    @cached_property
    def coset_reps(self) -> tuple[tuple[WeylElement, ...], ...]:
        return tuple(tuple(min_coset_reps(self.rs, i)) for i in self.word)

    def y_curve_count(self) -> int:
        total = 0
        reps = self.coset_reps
        for beta in self.rs.positive_roots:
            full, base = 1, 1
            for rep_list in reps:
                hits = sum(1 for v in rep_list if beta in inversion_set(self.rs, v))
                full *= len(rep_list) + hits
                base *= len(rep_list)
            total += full - base
        return total

    def y_curves(self, limit: int = Y_CURVE_LIMIT) -> Iterator[YCurveData]:
        """All (beta, v, A) with beta in R^+(v_j^{-1}) for every j in A."""
        if self.r == 0:
            return
        count = self.y_curve_count()
        if count > limit:
            raise GuardError(f"{count} curve triples in Y exceeds guard {limit}")
        inv = [[inversion_set(self.rs, v) for v in reps] for reps in self.coset_reps]
        for beta in self.rs.positive_roots:
            for idx in itertools.product(*(range(len(reps)) for reps in self.coset_reps)):
                hits = [j for j in range(self.r) if beta in inv[j][idx[j]]]
                v = tuple(self.coset_reps[j][idx[j]] for j in range(self.r))
                for size in range(1, len(hits) + 1):
                    for A in itertools.combinations(hits, size):
                        yield YCurveData(beta, v, frozenset(j + 1 for j in A))

    def validate_y_curve(self, yc: YCurveData) -> None:
        if len(yc.v) != self.r or not yc.A or not yc.A <= set(range(1, self.r + 1)):
            raise SchemaError(f"malformed curve data {yc.key()}")
        if not self.rs.is_positive_root(yc.beta):
            raise SchemaError(f"{list(yc.beta)} is not a positive root")
        for j, v in enumerate(yc.v, start=1):
            if min_coset_rep(self.rs, v, self.word[j - 1]) != v:
                raise SchemaError(f"v_{j} is not a minimal coset representative")
            if j in yc.A and yc.beta not in inversion_set(self.rs, v):
                raise SchemaError(f"beta not in R+(v_{j}^-1)")

    def reflection(self, beta: Root) -> WeylElement:
        """s_beta as a Weyl element: alpha_k -> alpha_k - <alpha_k, beta^vee> beta."""
        cv = self.rs.coroot(beta)
        imgs = []
        for k in range(1, self.rs.rank + 1):
            ak = self.rs.simple_root(k)
            imgs.append(ak - beta * self.rs.pairing(ak, cv))
        return WeylElement(self.rs, imgs)

    def y_degree(self, a: Sequence[int], yc: YCurveData) -> int:
        """sum_{j in A} a_j * (-<omega_{i_j}, (v_j^{-1} beta)^vee>), cross-checked by GKM."""
        a = self._check_class(a)
        self.validate_y_curve(yc)
        s_beta = self.reflection(yc.beta)
        bw = self.rs.to_weight(yc.beta)
        pivot = next(k for k in range(self.rs.rank) if bw[k])
        total = 0
        for j in sorted(yc.A):
            v = yc.v[j - 1]
            i = self.word[j - 1]
            coeff = -self.rs.coroot(v.inverse.act_root(yc.beta))[i - 1]
            omega = self.rs.fundamental_weight(i)
            diff = v.act_weight(omega) - s_beta.act_weight(v.act_weight(omega))
            k = Fraction(diff[pivot], bw[pivot])
            if k.denominator != 1 or diff != bw * int(k) or abs(int(k)) != coeff:
                raise ConsistencyError(
                    f"{self!r}: Y-curve degree {coeff} disagrees with weight quotient {k} in factor {j}"
                )
            total += a[j - 1] * coeff
        return total

    def curve_to_y(self, c: ModelCurve) -> YCurveData:
        """Image of a model curve under Z -> Y, as (beta, v, A)."""
        t = self.tangent_weight(c)
        beta = t if t.is_positive() else -t
        s_beta = self.reflection(beta)
        b0, b1 = c.bits(0), c.bits(1)
        vs, A = [], set()
        for m in range(1, self.r + 1):
            i = self.word[m - 1]
            w0 = WeylElement.from_word(self.rs, [a for a, b in zip(self.word[:m], b0) if b])
            w1 = WeylElement.from_word(self.rs, [a for a, b in zip(self.word[:m], b1) if b])
            v0 = min_coset_rep(self.rs, w0, i)
            v1 = min_coset_rep(self.rs, w1, i)
            if v0 == v1:
                vs.append(v0)
                continue
            if min_coset_rep(self.rs, s_beta * v0, i) != v1:
                raise ConsistencyError(f"{self!r} curve {c}: factor {m} endpoints not related by s_beta")
            cands = [v for v in (v0, v1) if beta in inversion_set(self.rs, v)]
            if len(cands) != 1:
                raise ConsistencyError(f"{self!r} curve {c}: ambiguous v in factor {m}")
            vs.append(cands[0])
            A.add(m)
        return YCurveData(beta, tuple(vs), frozenset(A))


def build_bsdh(rs: RootSystem | str, word: Sequence[int]) -> BsdhVariety:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    if not isinstance(word, (list, tuple)) or any(
        isinstance(a, bool) or not isinstance(a, int) for a in word
    ):
        raise SchemaError(f"word must be a list of integers, got {word!r}")
    return BsdhVariety(rs, word)
