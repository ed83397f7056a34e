"""Brute-force reference computations.

Nothing here shares code paths with the routines it is used to check:
Weyl groups are built as permutations of the root set, bundle expressions are
expanded into explicit lists, coset representatives are found by scanning
whole cosets.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Hashable, Iterator
from math import comb

from .bundles import BundleExpr, DirectSum, Dual, Line, Sym, Table, Tensor
from .rootsys import Root, RootSystem

__all__ = [
    "flatten", "weyl_permutations", "brute_min_coset_reps", "brute_y_curve_keys",
    "reduced_words", "random_bundle", "corpus",
]


def flatten(e: BundleExpr, curve: Hashable, deg=None) -> list[int]:
    """Explicit list of degrees, one per basis vector of the fibre."""
    if isinstance(e, Line):
        return [deg(e.a, curve)]
    if isinstance(e, DirectSum):
        return [d for p in e.parts for d in flatten(p, curve, deg)]
    if isinstance(e, Tensor):
        return [a + b for a in flatten(e.left, curve, deg) for b in flatten(e.right, curve, deg)]
    if isinstance(e, Sym):
        base = flatten(e.of, curve, deg)
        return [sum(base[i] for i in idx)
                for idx in itertools.combinations_with_replacement(range(len(base)), e.n)]
    if isinstance(e, Dual):
        return [-a for a in flatten(e.of, curve, deg)]
    if isinstance(e, Table):
        return list(e.mapping[str(curve)])
    raise TypeError(e)


def _root_reflection_perm(rs: RootSystem, i: int) -> tuple[int, ...]:
    roots = rs.roots
    index = {b: k for k, b in enumerate(roots)}
    # s_i(beta) = beta - <beta, alpha_i^vee> alpha_i, pairing from the Cartan row
    out = []
    for b in roots:
        k = sum(rs.cartan[i][j] * b[j] for j in range(rs.rank))
        img = list(b)
        img[i] -= k
        out.append(index[Root(img)])
    return tuple(out)


def weyl_permutations(rs: RootSystem, generators: list[int] | None = None) -> dict[tuple, int]:
    """Group generated by simple reflections (0-based indices) acting on the roots.

    Returns {permutation: length}, lengths by breadth-first search.
    """
    gens = [_root_reflection_perm(rs, i) for i in (range(rs.rank) if generators is None else generators)]
    e = tuple(range(len(rs.roots)))
    lengths = {e: 0}
    layer = [e]
    while layer:
        nxt = []
        for p in layer:
            for g in gens:
                q = tuple(p[g[k]] for k in range(len(e)))
                if q not in lengths:
                    lengths[q] = lengths[p] + 1
                    nxt.append(q)
        layer = nxt
    return lengths


def brute_min_coset_reps(rs: RootSystem, omit: int) -> set[tuple[Root, ...]]:
    """Shortest element of each coset w W_J, J = S - {alpha_omit} (omit 1-based).

    Elements are returned as images of the simple roots.
    """
    roots = rs.roots
    W = weyl_permutations(rs)
    WJ = list(weyl_permutations(rs, [k for k in range(rs.rank) if k != omit - 1]))
    simple_pos = [roots.index(rs.simple_root(k + 1)) for k in range(rs.rank)]
    out = set()
    seen = set()
    for w in sorted(W, key=lambda p: (W[p], p)):
        if w in seen:
            continue
        coset = [tuple(w[u[k]] for k in range(len(roots))) for u in WJ]
        seen.update(coset)
        best = min(coset, key=lambda p: (W[p], p))
        out.add(tuple(roots[best[k]] for k in simple_pos))
    return out


def brute_y_curve_keys(Z) -> set[tuple]:
    """All (beta, v, A) triples for Y(w, i), by scanning every candidate."""
    from .weyl import WeylElement

    rs = Z.rs
    reps = []
    for i in Z.word:
        imgs = sorted(brute_min_coset_reps(rs, i))
        reps.append([WeylElement(rs, im) for im in imgs])
    out = set()
    for mask in range(1, 1 << Z.r):
        A = [j for j in range(Z.r) if mask >> j & 1]
        for v in itertools.product(*reps):
            for beta in rs.roots:
                if not beta.is_positive():
                    continue
                if all(v[j].inverse.act_root(beta).is_negative() for j in A):
                    out.add((tuple(beta), tuple(x.canonical_word for x in v),
                             tuple(j + 1 for j in A)))
    return out


def reduced_words(rs: RootSystem, max_len: int) -> Iterator[tuple[int, ...]]:
    """Every reduced word of length 1..max_len, shortest first, lexicographic."""
    lengths = weyl_permutations(rs)
    gens = [_root_reflection_perm(rs, i) for i in range(rs.rank)]
    e = tuple(range(len(rs.roots)))
    layer = [((), e)]
    for n in range(1, max_len + 1):
        nxt = []
        for word, p in layer:
            for i, g in enumerate(gens):
                q = tuple(p[g[k]] for k in range(len(e)))
                if lengths[q] == n:
                    nxt.append((word + (i + 1,), q))
        if not nxt:
            return
        nxt.sort()
        yield from (w for w, _ in nxt)
        layer = nxt


CORPUS_TYPES = ("A1", "A2", "A3", "B2", "G2")


def corpus(max_len: int = 6, types=CORPUS_TYPES) -> Iterator[tuple[str, tuple[int, ...]]]:
    from .rootsys import build_root_system

    for t in types:
        rs = build_root_system(t)
        for w in reduced_words(rs, max_len):
            yield t, w


def random_bundle(rng: random.Random, curves: list[str], r: int, depth: int = 4, max_rank: int = 20,
                  lo: int = -5, hi: int = 5) -> BundleExpr:
    """Random expression of rank <= max_rank over the given curve ids.

    Leaves are tables with degrees in [lo, hi] or line classes with
    coordinates in [lo, hi] (length r).
    """
    if depth <= 0 or max_rank == 1 or rng.random() < 0.25:
        return _random_leaf(rng, curves, r, max_rank, lo, hi)
    kind = rng.choice(["sum", "tensor", "sym", "dual"])
    if kind == "sum" and max_rank >= 2:
        k = rng.randint(1, max_rank - 1)
        return DirectSum((random_bundle(rng, curves, r, depth - 1, k, lo, hi),
                          random_bundle(rng, curves, r, depth - 1, max_rank - k, lo, hi)))
    if kind == "tensor" and max_rank >= 2:
        a = rng.randint(1, max_rank // 2 if max_rank >= 4 else 1)
        return Tensor(random_bundle(rng, curves, r, depth - 1, a, lo, hi),
                      random_bundle(rng, curves, r, depth - 1, max_rank // a, lo, hi))
    if kind == "sym":
        n = rng.randint(1, 4)
        # largest inner rank s with C(n+s-1, n) <= max_rank
        s = max(s for s in range(1, max_rank + 1) if comb(n + s - 1, n) <= max_rank)
        return Sym(n, random_bundle(rng, curves, r, depth - 1, s, lo, hi))
    return Dual(random_bundle(rng, curves, r, depth - 1, max_rank, lo, hi))


def _random_leaf(rng, curves, r, max_rank, lo, hi):
    if rng.random() < 0.5:
        return Line(tuple(rng.randint(lo, hi) for _ in range(r)))
    size = rng.randint(1, min(max_rank, 3))
    return Table({c: [rng.randint(lo, hi) for _ in range(size)] for c in curves})
