"""Invariant corpus run by ``torusnef selftest``.

Each check is deterministic (fixed seeds, sorted enumeration, no timings),
so two runs of the same build produce byte-identical reports.
"""

from __future__ import annotations

import random
import traceback
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, field
from itertools import product
from math import comb

from . import bundles, oracles, wonderful
from .bsdh import BsdhVariety, build_bsdh
from .bundles import DirectSum, Line, Sym, Table, Tensor
from .cli import run
from .errors import SchemaError
from .rootsys import build_root_system
from .weyl import WeylElement

SEED = 20240611


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool = True
    details: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.ok = False
        if len(self.failures) < 10:
            self.failures.append(msg)

    def lines(self) -> list[str]:
        out = [f"[{'PASS' if self.ok else 'FAIL'}] {self.number}. {self.name}"]
        out += [f"    {d}" for d in self.details]
        out += [f"    failure: {f}" for f in self.failures]
        return out


@dataclass(frozen=True)
class Config:
    max_len: int
    bundle_trees: int
    seshadri_instances: int
    tables_per_involution: int


SMALL = Config(max_len=4, bundle_trees=200, seshadri_instances=50, tables_per_involution=3)
FULL = Config(max_len=6, bundle_trees=1000, seshadri_instances=200, tables_per_involution=10)


def _varieties(cfg: Config) -> list[BsdhVariety]:
    return [build_bsdh(t, w) for t, w in oracles.corpus(cfg.max_len)]


def _family_counts(Zs: list[BsdhVariety]) -> str:
    counts = Counter(Z.rs.name for Z in Zs)
    return ", ".join(f"{t}: {counts[t]}" for t in oracles.CORPUS_TYPES)


def check_counting(Zs, cfg, res: CheckResult) -> None:
    curves = 0
    for Z in Zs:
        pts = Z.fixed_points()
        cs = Z.model_curves()
        curves += len(cs)
        if len(pts) != 2 ** Z.r or len(set(pts)) != len(pts):
            res.fail(f"{Z!r}: {len(pts)} fixed points, expected {2 ** Z.r}")
        if len(cs) != Z.r * 2 ** (Z.r - 1) or len(set(cs)) != len(cs):
            res.fail(f"{Z!r}: {len(cs)} model curves, expected {Z.r * 2 ** (Z.r - 1)}")
        incidence = Counter(x for c in cs for x in c.endpoints)
        for x in pts:
            if incidence[x] != Z.r or len(Z.curves_through(x)) != Z.r:
                res.fail(f"{Z!r}: point {x} lies on {incidence[x]} curves, expected {Z.r}")
    res.details.append(f"varieties per family: {_family_counts(Zs)}")
    res.details.append(f"{len(Zs)} varieties, {curves} model curves")


def check_degrees(Zs, cfg, res: CheckResult) -> None:
    compared = 0
    for Z in Zs:
        table = Z.degree_table
        for c in Z.model_curves():
            kernel = table[c][1]
            gkm = Z.gkm_basis_degrees(c)
            closed = Z.closed_form_basis_degrees(c)
            if any(not isinstance(d, int) or d < 0 for d in kernel):
                res.fail(f"{Z!r} curve {c}: degrees {kernel} not nonnegative integers")
            if not kernel == gkm == closed:
                res.fail(f"{Z!r} curve {c}: kernel {kernel}, GKM {gkm}, closed form {closed}")
            if Z.tangent_weight(c) != table[c][0]:
                res.fail(f"{Z!r} curve {c}: kernel tangent {table[c][0]} != {Z.tangent_weight(c)}")
            compared += len(kernel)
    res.details.append(f"{compared} (curve, class) degrees agree across kernel, GKM and closed form")


def check_unit_class(Zs, cfg, res: CheckResult) -> None:
    points = 0
    for Z in Zs:
        L = Line((1,) * Z.r)
        if not Z.ample_test(L):
            res.fail(f"{Z!r}: (1,...,1) is not ample")
            continue
        for x in Z.fixed_points():
            eps = Z.seshadri(L, x)
            points += 1
            if eps < 1:
                res.fail(f"{Z!r}: seshadri((1,...,1), {x}) = {eps}")
    res.details.append(f"(1,...,1) ample on {len(Zs)} varieties, epsilon >= 1 at {points} fixed points")


def check_worked_instance(Zs, cfg, res: CheckResult) -> None:
    Z = build_bsdh("A2", (1, 2))
    degs = sorted(Z.basis_degrees(c) for c in Z.model_curves())
    # a2, a2, a1, a1 + a2 as coefficient vectors
    if degs != sorted([(0, 1), (0, 1), (1, 0), (1, 1)]):
        res.fail(f"curve degrees {degs}")
    # nef iff a1 >= 0 and a2 >= 0: compare against the orthant on a grid
    for a in product(range(-3, 4), repeat=2):
        nef = bool(Z.nef_test(Line(a)))
        if nef != (a[0] >= 0 and a[1] >= 0):
            res.fail(f"nef verdict {nef} for class {a}")
    L = Line((1, 1))
    eps = [Z.seshadri(L, x) for x in Z.fixed_points()]
    if eps != [1, 1, 1, 1]:
        res.fail(f"epsilon((1,1), x) = {eps}")
    res.details.append(f"A2 (1,2): curve degrees {[list(d) for d in degs]}, epsilon {eps}")


def check_bundle_algebra(Zs, cfg, res: CheckResult) -> None:
    rng = random.Random(SEED)
    Z = build_bsdh("A2", (1, 2, 1))
    curves = Z.model_curves()
    ids = [str(c) for c in curves]
    ranks = Counter()
    for k in range(cfg.bundle_trees):
        e = oracles.random_bundle(rng, ids, Z.r, depth=4, max_rank=20)
        r = bundles.rank(e)
        ranks[min(r, 20)] += 1
        if r > 20:
            res.fail(f"tree {k}: rank {r} > 20")
        for c in curves:
            got = Z.restrict(e, c)
            want = tuple(sorted(oracles.flatten(e, c, Z.degree)))
            if got != want or len(got) != r:
                res.fail(f"tree {k} on {c}: evaluator {got} vs flattener {want}")
                break
    sym_checks = 0
    for s in range(1, 7):
        for n in range(1, 6):
            e = Sym(n, Table({c: list(range(s)) for c in ids}))
            sym_checks += 1
            if bundles.rank(e) != comb(n + s - 1, n) or len(Z.restrict(e, curves[0])) != comb(n + s - 1, n):
                res.fail(f"Sym^{n} of rank {s}: rank {bundles.rank(e)}")
    res.details.append(f"{cfg.bundle_trees} random trees on A2 (1,2,1), {len(curves)} curves each")
    res.details.append(f"{sym_checks} symmetric-power rank checks")


def _nef_random(rng, Z: BsdhVariety):
    ids = [str(c) for c in Z.model_curves()]
    e = oracles.random_bundle(rng, ids, Z.r, depth=3, max_rank=8)
    low = min(bundles.min_degree(e, c, Z.degree) for c in Z.model_curves())
    if low < 0:
        e = Tensor(e, Table({c: [-low] for c in ids}))
    return e


def check_seshadri_structure(Zs, cfg, res: CheckResult) -> None:
    rng = random.Random(SEED + 1)
    pool = [Z for Z in Zs if 1 <= Z.r <= 4]
    for k in range(cfg.seshadri_instances):
        Z = pool[rng.randrange(len(pool))]
        x = Z.fixed_points()[rng.randrange(2 ** Z.r)]
        E, F = _nef_random(rng, Z), _nef_random(rng, Z)
        lhs = Z.seshadri(DirectSum((E, F)), x)
        rhs = min(Z.seshadri(E, x), Z.seshadri(F, x))
        if lhs != rhs:
            res.fail(f"instance {k} {Z!r} at {x}: eps(E+F) = {lhs}, min = {rhs}")
        a = tuple(rng.randint(0, 4) for _ in range(Z.r))
        m = rng.randint(1, 6)
        lhs = Z.seshadri(Line(tuple(m * v for v in a)), x)
        rhs = m * Z.seshadri(Line(a), x)
        if lhs != rhs:
            res.fail(f"instance {k} {Z!r} at {x}: eps({m}L) = {lhs}, {m} eps(L) = {rhs}, L = {a}")
    res.details.append(f"{cfg.seshadri_instances} random nef instances (sum rule and scaling rule)")


def check_y_curves(Zs, cfg, res: CheckResult) -> None:
    words = 0
    triples = 0
    for t in ("A1", "A2"):
        rs = build_root_system(t)
        for w in oracles.reduced_words(rs, 3):
            Z = build_bsdh(rs, w)
            words += 1
            for c in Z.model_curves():
                yc = Z.curve_to_y(c)
                try:
                    Z.validate_y_curve(yc)
                except SchemaError as exc:
                    res.fail(f"{Z!r} curve {c}: image {yc.key()} invalid: {exc}")
                    continue
                for m in range(Z.r):
                    a = tuple(int(k == m) for k in range(Z.r))
                    if Z.y_degree(a, yc) != Z.degree(a, c):
                        res.fail(f"{Z!r} curve {c}: y_degree(L_{m + 1}) != degree")
            got = [yc.key() for yc in Z.y_curves()]
            want = oracles.brute_y_curve_keys(Z)
            if len(got) != len(set(got)) or set(got) != want or len(got) != Z.y_curve_count():
                res.fail(f"{Z!r}: enumeration {len(got)} triples, brute force {len(want)}")
            triples += len(got)
    res.details.append(f"{words} words over A1, A2; {triples} curve triples in Y match brute force")


def all_involutions(rs) -> list[wonderful.SymmetricSpaceData]:
    """Every valid involution sending simple roots to roots, in a fixed order."""
    out = []
    for images in product(rs.roots, repeat=rs.rank):
        try:
            out.append(wonderful.validate_involution(rs, [list(b) for b in images]))
        except SchemaError:
            continue
    return out


def check_wonderful(Zs, cfg, res: CheckResult) -> None:
    A1 = build_root_system("A1")
    sd = wonderful.parse_involution(A1, "minus-identity")
    if [list(g) for g in sd.restricted_roots] != [[2]] or len(wonderful.curve_classes(sd)) != 2:
        res.fail(f"A1 minus-identity: restricted {sd.restricted_roots}, classes {wonderful.curve_classes(sd)}")
    sd = wonderful.parse_involution(build_root_system("A1xA1"), "swap")
    if len(wonderful.curve_classes(sd)) != 3 or (sd.t1_rank, sd.t2_rank) != (1, 1):
        res.fail(f"A1xA1 swap: {len(wonderful.curve_classes(sd))} classes, t = {sd.t1_rank}, {sd.t2_rank}")

    rng = random.Random(SEED + 2)
    tally = []
    for t in ("A1", "A1xA1", "A2", "A3"):
        rs = build_root_system(t)
        sds = all_involutions(rs)
        tally.append(f"{t}: {len(sds)}")
        for sd in sds:
            for g in sd.restricted_roots:
                if sd.apply(g) != -g:
                    res.fail(f"{t} sigma={sd.sigma}: sigma(gamma) != -gamma for {g}")
            for b in sd.fixed_levi_roots:
                if sd.apply(b) != b:
                    res.fail(f"{t} sigma={sd.sigma}: Levi root {b} moved")
            classes = wonderful.curve_classes(sd)
            expect = len(rs.positive_roots) - len(sd.positive_levi_roots) + len(sd.restricted_roots)
            if len(classes) != expect:
                res.fail(f"{t} sigma={sd.sigma}: {len(classes)} classes, expected {expect}")
            if not classes:
                continue
            ids = [c.class_id for c in classes]
            W = list(_weyl_sample(rs))
            for _ in range(cfg.tables_per_involution):
                size = rng.randint(1, 3)
                entries = {i: [rng.randint(-1, 4) for _ in range(size)] for i in ids}
                e = Table(entries)
                low = min(min(v) for v in entries.values())
                if bool(wonderful.nef_test_w(sd, e)) != (low >= 0):
                    res.fail(f"{t} sigma={sd.sigma}: nef verdict wrong for {entries}")
                if bool(wonderful.ample_test_w(sd, e)) != (low >= 1):
                    res.fail(f"{t} sigma={sd.sigma}: ample verdict wrong for {entries}")
                if low >= 0:
                    w = W[rng.randrange(len(W))]
                    if wonderful.seshadri_w(sd, e, w) != low:
                        res.fail(f"{t} sigma={sd.sigma}: seshadri != {low} for {entries}")
    res.details.append("valid involutions: " + ", ".join(tally))


def _weyl_sample(rs):
    yield WeylElement.identity(rs)
    for i in range(1, rs.rank + 1):
        yield WeylElement.from_word(rs, [i])


def check_gkm_guard(Zs, cfg, res: CheckResult) -> None:
    passed = Counter()
    failed = Counter()
    for Z in Zs:
        problem = {
            "root_system": Z.rs.name,
            "mode": "bsdh",
            "word": list(Z.word),
            "bundle": {"line": [1] * Z.r},
            "queries": [{"op": "nef"}, {"op": "ample"}, {"op": "seshadri"},
                        {"op": "seshadri", "point": "0" * Z.r}],
        }
        doc = run(problem)
        ok = Z.gkm_check().ok
        (passed if ok else failed)[Z.rs.name] += 1
        want = bundles.EXACT_TAG if ok else bundles.MODEL_CURVE_TAG
        for rec in doc["results"]:
            if rec.get("tag") != want or rec.get("gkm") != ok:
                res.fail(f"{Z!r}: {rec['op']} record tagged {rec.get('tag')!r}, gkm {ok}")
    fams = oracles.CORPUS_TYPES
    res.details.append("GKM holds: " + ", ".join(f"{t}: {passed[t]}" for t in fams))
    res.details.append("GKM fails (model-curve verdicts): " + ", ".join(f"{t}: {failed[t]}" for t in fams))


CHECKS: list[tuple[str, Callable]] = [
    ("counting suite", check_counting),
    ("degree consistency", check_degrees),
    ("ample unit class and epsilon >= 1", check_unit_class),
    ("worked instance A2 (1,2)", check_worked_instance),
    ("split-type algebra oracle", check_bundle_algebra),
    ("Seshadri structure", check_seshadri_structure),
    ("Y-curve cross-check", check_y_curves),
    ("wonderful suite", check_wonderful),
    ("GKM guard", check_gkm_guard),
]


def run_checks(full: bool = False) -> list[CheckResult]:
    cfg = FULL if full else SMALL
    results = []
    Zs = None
    for k, (name, fn) in enumerate(CHECKS, start=1):
        res = CheckResult(k, name)
        try:
            if Zs is None:
                Zs = _varieties(cfg)
            fn(Zs, cfg, res)
        except Exception as exc:  # a crash is a named failure, not an abort
            res.fail(f"{type(exc).__name__}: {exc}")
            res.details.append(traceback.format_exception_only(type(exc), exc)[-1].strip())
        results.append(res)
    return results


def run_selftest(full: bool = False) -> tuple[str, bool]:
    """Returns (report text, all passed)."""
    results = run_checks(full)
    cfg = FULL if full else SMALL
    lines = [f"torusnef selftest ({'full' if full else 'small'}: words up to length {cfg.max_len})"]
    for r in results:
        lines += r.lines()
    ok = all(r.ok for r in results)
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", ok
