"""Minimal-rank symmetric spaces through their lattice involution.

The involution sigma is given by its action on the root lattice: ``sigma``
is the list of images sigma(alpha_1), ..., sigma(alpha_n) in simple-root
coordinates (row j is the image of alpha_j).  The invariant curves of the
wonderful compactification are the W-translates of

* ``S[alpha]``: the Schubert-type curve C_{z,alpha}, alpha positive and not
  fixed by sigma;
* ``R[gamma]``: the curve C_{z,gamma} of the restricted root
  gamma = alpha - sigma(alpha).

Restriction degrees are never computed intrinsically here; they come in as a
table keyed by the class identifiers above, and are assumed invariant under
W-translation.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .bundles import BundleExpr, Verdict, rank, restrict, seshadri_engine, table_leaves, line_leaves
from .errors import NotNefError, SchemaError
from .rootsys import Root, RootSystem
from .weyl import WeylElement

__all__ = [
    "SymmetricSpaceData", "WonderfulCurveClass", "validate_involution", "parse_involution",
    "minimal_rank_report", "curve_classes", "curves_through", "nef_test_w", "ample_test_w",
    "seshadri_w", "diagram_automorphisms",
]


@dataclass(frozen=True)
class SymmetricSpaceData:
    rs: RootSystem
    sigma: tuple[Root, ...]
    fixed_levi_roots: tuple[Root, ...]
    restricted_roots: tuple[Root, ...]
    t1_rank: int
    t2_rank: int

    def apply(self, x: Sequence[int]) -> Root:
        out = [0] * self.rs.rank
        for c, img in zip(x, self.sigma):
            if c:
                for k, v in enumerate(img):
                    out[k] += c * v
        return Root(out)

    @property
    def degenerate(self) -> bool:
        """True when sigma fixes every root: not a symmetric space of positive rank."""
        return self.t2_rank == 0

    @property
    def positive_levi_roots(self) -> tuple[Root, ...]:
        return tuple(b for b in self.fixed_levi_roots if b.is_positive())


@dataclass(frozen=True)
class WonderfulCurveClass:
    """``kind`` is "S" (Schubert type, root alpha) or "R" (restricted root gamma)."""

    kind: str
    root: Root
    translate: WeylElement | None = None

    @property
    def class_id(self) -> str:
        return f"{self.kind}[{','.join(map(str, self.root))}]"

    def canonical(self) -> WonderfulCurveClass:
        return WonderfulCurveClass(self.kind, self.root)

    def __str__(self):
        if self.translate is None or self.translate.is_identity():
            return self.class_id
        return f"{list(self.translate.canonical_word)}.{self.class_id}"


def _as_images(rs: RootSystem, sigma) -> tuple[Root, ...]:
    if (not isinstance(sigma, (list, tuple)) or len(sigma) != rs.rank
            or any(not isinstance(row, (list, tuple)) or len(row) != rs.rank for row in sigma)):
        raise SchemaError(f"involution must be a {rs.rank}x{rs.rank} integer matrix")
    for row in sigma:
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int):
                raise SchemaError(f"involution entries must be integers, got {v!r}")
    return tuple(Root(row) for row in sigma)


def validate_involution(rs: RootSystem, sigma) -> SymmetricSpaceData:
    """Check sigma^2 = 1, sigma(R) = R and Borel compatibility; derive the data."""
    images = _as_images(rs, sigma)
    sd = SymmetricSpaceData(rs, images, (), (), 0, 0)
    for k in range(1, rs.rank + 1):
        a = rs.simple_root(k)
        if sd.apply(sd.apply(a)) != a:
            raise SchemaError(f"sigma is not an involution: sigma^2(alpha_{k}) != alpha_{k}")
    for beta in rs.positive_roots:
        if not rs.is_root(sd.apply(beta)):
            raise SchemaError(f"sigma does not preserve the roots: sigma({list(beta)}) is not a root")
    for beta in rs.positive_roots:
        img = sd.apply(beta)
        if img != beta and not img.is_negative():
            raise SchemaError(
                f"Borel compatibility fails at alpha = {list(beta)}: sigma(alpha) = {list(img)}"
            )
    # sigma is diagonalizable with eigenvalues +-1, so the trace fixes both multiplicities
    trace = sum(images[j][j] for j in range(rs.rank))
    t1, t2 = (rs.rank + trace) // 2, (rs.rank - trace) // 2
    fixed = tuple(b for b in rs.roots if sd.apply(b) == b)
    restricted = tuple(sorted({b - sd.apply(b) for b in rs.positive_roots if sd.apply(b) != b}))
    return SymmetricSpaceData(rs, images, fixed, restricted, t1, t2)


def diagram_automorphisms(rs: RootSystem) -> list[tuple[int, ...]]:
    """Permutations p (1-based images) with cartan[p(i)][p(j)] = cartan[i][j]."""
    n, c = rs.rank, rs.cartan
    out = []
    for p in permutations(range(n)):
        if all(c[p[i]][p[j]] == c[i][j] for i in range(n) for j in range(n)):
            out.append(tuple(x + 1 for x in p))
    return out


def parse_involution(rs: RootSystem, spec) -> SymmetricSpaceData:
    """Matrix (rows = images of simple roots) or a named shortcut.

    Shortcuts: ``identity``, ``minus-identity``, ``swap`` (type XxX, sends
    alpha_k of the first factor to minus alpha_k of the second) and
    ``diagram:p1,...,pn`` (alpha_i -> -alpha_{p_i}, p a diagram automorphism,
    so ``diagram:1,...,n`` is ``minus-identity``).
    """
    n = rs.rank
    if isinstance(spec, str):
        name = spec.strip().lower()
        if name == "identity":
            perm, sign = list(range(1, n + 1)), 1
        elif name == "minus-identity":
            perm, sign = list(range(1, n + 1)), -1
        elif name == "swap":
            labels = rs.labels
            if len(labels) != 2 or labels[0] != labels[1]:
                raise SchemaError(f"swap needs a type of the form XxX, got {rs.name}")
            h = labels[0].rank
            perm, sign = [k + h for k in range(1, h + 1)] + list(range(1, h + 1)), -1
        elif name.startswith("diagram:"):
            try:
                perm = [int(x) for x in name[len("diagram:"):].split(",")]
            except ValueError:
                raise SchemaError(f"cannot parse diagram permutation in {spec!r}") from None
            if sorted(perm) != list(range(1, n + 1)):
                raise SchemaError(f"{spec!r} is not a permutation of 1..{n}")
            if tuple(perm) not in diagram_automorphisms(rs):
                raise SchemaError(f"{spec!r} is not a Dynkin diagram automorphism of {rs.name}")
            sign = -1
        else:
            raise SchemaError(f"unknown involution shortcut {spec!r}")
        matrix = [[sign if k + 1 == perm[j] else 0 for k in range(n)] for j in range(n)]
        return validate_involution(rs, matrix)
    return validate_involution(rs, spec)


def _lattice_rank(vectors: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col] / rows[r][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def minimal_rank_report(sd: SymmetricSpaceData) -> dict:
    """Rank data of G/H.  Minimal rank is reported, never certified."""
    levi_rank = _lattice_rank(sd.fixed_levi_roots)
    return {
        "rank_G": sd.rs.rank,
        "rank_G_over_H": sd.t2_rank,
        "rank_H_candidate": sd.t1_rank,
        "fixed_levi_rank": levi_rank,
        "levi_span_matches_t1": levi_rank == sd.t1_rank,
        "num_fixed_levi_roots": len(sd.fixed_levi_roots),
        "num_restricted_roots": len(sd.restricted_roots),
        "degenerate": sd.degenerate,
        "minimal_rank_certified": False,
    }


def curve_classes(sd: SymmetricSpaceData) -> list[WonderfulCurveClass]:
    levi = set(sd.fixed_levi_roots)
    out = [WonderfulCurveClass("S", a) for a in sd.rs.positive_roots if a not in levi]
    out += [WonderfulCurveClass("R", g) for g in sd.restricted_roots]
    return out


def curves_through(sd: SymmetricSpaceData, w: WeylElement) -> list[WonderfulCurveClass]:
    """Invariant curves through the fixed point w.z: the w-translates of the classes."""
    return [WonderfulCurveClass(c.kind, c.root, w) for c in curve_classes(sd)]


def check_bundle(sd: SymmetricSpaceData, e: BundleExpr) -> None:
    if line_leaves(e):
        raise SchemaError("line classes are not available on wonderful compactifications; use a table")
    ids = {c.class_id for c in curve_classes(sd)}
    if not ids:
        raise SchemaError("sigma fixes every root: no invariant curves (degenerate symmetric space)")
    for t in table_leaves(e):
        keys = set(t.mapping)
        extra = sorted(keys - ids)
        if extra:
            raise SchemaError(f"restriction table has unknown curve class {extra[0]}")
        missing = sorted(ids - keys)
        if missing:
            raise SchemaError(f"restriction table misses curve class {missing[0]}")
    rank(e)


def _positivity(sd: SymmetricSpaceData, e: BundleExpr, kind: str, floor: int) -> Verdict:
    check_bundle(sd, e)
    for c in curve_classes(sd):
        st = restrict(e, c.class_id)
        if st[0] < floor:
            return Verdict(kind, False, True, (c.class_id, st))
    return Verdict(kind, True, True)


def nef_test_w(sd: SymmetricSpaceData, e: BundleExpr) -> Verdict:
    return _positivity(sd, e, "nef", 0)


def ample_test_w(sd: SymmetricSpaceData, e: BundleExpr) -> Verdict:
    return _positivity(sd, e, "ample", 1)


def seshadri_w(sd: SymmetricSpaceData, e: BundleExpr, w: WeylElement) -> int:
    nef = nef_test_w(sd, e)
    if not nef:
        cls, st = nef.witness
        raise NotNefError(f"bundle is not nef: split type {list(st)} on class {cls}")
    curves = curves_through(sd, w)
    # split types depend only on the class, not on the translate
    return seshadri_engine(curves, lambda c: restrict(e, c.class_id))
