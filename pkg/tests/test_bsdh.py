import itertools

import pytest
from hypothesis import given, settings, strategies as st

from torusnef import (
    BsdhVariety, ConsistencyError, DirectSum, GalleryPoint, GuardError, Line, ModelCurve,
    NotNefError, SchemaError, Table, build_bsdh, build_root_system,
)
from torusnef.bsdh import _proportional
from torusnef.bundles import EXACT_TAG, MODEL_CURVE_TAG
from torusnef.oracles import brute_y_curve_keys, corpus, reduced_words
from torusnef.weyl import WeylElement


def table_of(Z):
    return {str(c): (list(t), d) for c, (t, d) in Z.degree_table.items()}


def test_worked_instance(z12):
    assert table_of(z12) == {
        "*0": ([1, 0], (1, 0)),
        "*1": ([1, 0], (1, 1)),
        "0*": ([0, 1], (0, 1)),
        "1*": ([1, 1], (0, 1)),
    }
    assert z12.nef_cone_inequalities() == [(0, 1), (1, 0), (1, 1)]
    assert z12.ample_test(Line((1, 1)))
    nef = z12.nef_test(Line((1, 0)))
    assert nef and not z12.ample_test(Line((1, 0)))
    assert z12.ample_test(Line((1, 0))).witness == ("0*", (0,))
    assert [z12.seshadri(Line((1, 1)), x) for x in z12.fixed_points()] == [1, 1, 1, 1]
    assert z12.seshadri(Line((2, 3)), GalleryPoint((0, 0))) == 2


# closed-form values checked by hand: B2 has alpha_2 short, G2 has alpha_1 short
@pytest.mark.parametrize("t,word,expected", [
    ("B2", (1, 2), {"*0": (1, 0), "*1": (1, 1), "0*": (0, 1), "1*": (0, 1)}),
    ("B2", (2, 1), {"*0": (1, 0), "*1": (1, 2), "0*": (0, 1), "1*": (0, 1)}),
    ("G2", (1, 2), {"*0": (1, 0), "*1": (1, 3), "0*": (0, 1), "1*": (0, 1)}),
    ("G2", (2, 1), {"*0": (1, 0), "*1": (1, 1), "0*": (0, 1), "1*": (0, 1)}),
])
def test_rank_two_degrees(t, word, expected):
    Z = build_bsdh(t, word)
    assert {str(c): Z.basis_degrees(c) for c in Z.model_curves()} == expected


def test_rank_one():
    Z = build_bsdh("A1", (1,))
    assert [str(x) for x in Z.fixed_points()] == ["0", "1"]
    assert [str(c) for c in Z.model_curves()] == ["*"]
    assert Z.basis_degrees(Z.model_curves()[0]) == (1,)
    assert Z.seshadri(Line((3,)), Z.parse_point("1")) == 3


def test_word_validation():
    with pytest.raises(SchemaError, match="word not reduced at position 2"):
        build_bsdh("A2", (1, 1))
    with pytest.raises(SchemaError, match="word not reduced at position 4"):
        build_bsdh("A2", (1, 2, 1, 2))
    with pytest.raises(SchemaError):
        build_bsdh("A2", (1, 3))


def test_word_length_guard():
    rs = build_root_system("A7")
    w0 = WeylElement.identity(rs)
    # longest element: keep multiplying by an ascent
    while True:
        asc = next((i for i in range(1, 8) if w0.act_root(rs.simple_root(i)).is_positive()), None)
        if asc is None:
            break
        w0 = w0.times_simple(asc)
    word = w0.canonical_word
    assert len(word) == 28
    assert build_bsdh(rs, word[:20]).r == 20
    with pytest.raises(GuardError):
        build_bsdh(rs, word[:21])


def test_curve_ids_round_trip(z12):
    for c in z12.model_curves():
        assert ModelCurve.parse(str(c), 2) == c
        x0, x1 = c.endpoints
        assert c.contains(x0) and c.contains(x1)
    with pytest.raises(SchemaError):
        ModelCurve.parse("**", 2)
    with pytest.raises(SchemaError):
        z12.parse_point("012")


def test_bundle_checks(z12):
    with pytest.raises(SchemaError):
        z12.nef_test(Line((1, 1, 1)))
    with pytest.raises(SchemaError, match="misses curve"):
        z12.nef_test(Table({"*0": [1], "*1": [1], "0*": [1]}))
    with pytest.raises(NotNefError):
        z12.seshadri(Line((-1, 1)), GalleryPoint((0, 0)))
    with pytest.raises(SchemaError):
        build_bsdh("A2", ()).nef_test(Line(()))


def test_table_and_line_mix(z12):
    t = Table({"*0": [0, 2], "*1": [1, 1], "0*": [3, 5], "1*": [0, 0]})
    e = DirectSum((t, Line((1, 1))))
    assert z12.restrict(e, ModelCurve.parse("*1", 2)) == (1, 1, 2)
    assert z12.nef_test(e) and not z12.ample_test(e)
    assert z12.seshadri(e, GalleryPoint((1, 1))) == 0


def test_gkm_guard_collisions():
    Z = build_bsdh("A2", (1, 2, 1))
    rep = Z.gkm_check()
    assert not rep.ok
    assert rep.collisions == [("000", 1, 3), ("001", 1, 3), ("100", 1, 3), ("101", 1, 3)]
    v = Z.nef_test(Line((1, 1, 1)))
    assert v.tag == MODEL_CURVE_TAG
    assert build_bsdh("A2", (1, 2)).nef_test(Line((1, 1))).tag == EXACT_TAG


def test_gkm_probe_detects_artificial_collision():
    # make two tangent weights at one vertex proportional; the guard must notice
    Z = build_bsdh("A2", (1, 2))
    table = dict(Z.degree_table)
    c = ModelCurve.parse("0*", 2)
    _, d = table[c]
    table[c] = (Z.rs.simple_root(1) * -2, d)
    Z.__dict__["degree_table"] = table
    rep = Z.gkm_check()
    assert not rep.ok and ("00", 1, 2) in rep.collisions
    assert _proportional((1, 0), (-2, 0)) and not _proportional((1, 0), (1, 1))


def test_mutated_closed_form_is_caught(monkeypatch):
    original = BsdhVariety.closed_form_basis_degrees

    def corrupt(self, c):
        d = list(original(self, c))
        d[-1] += 1
        return tuple(d)

    monkeypatch.setattr(BsdhVariety, "closed_form_basis_degrees", corrupt)
    with pytest.raises(ConsistencyError):
        build_bsdh("A2", (1, 2)).degree_table


def test_y_curve_count_and_enumeration(z12):
    assert z12.y_curve_count() == 21
    keys = [yc.key() for yc in z12.y_curves()]
    assert len(keys) == 21 and set(keys) == brute_y_curve_keys(z12)


@pytest.mark.parametrize("t,word,count", [("B2", (1, 2), 56), ("G2", (1, 2), 216), ("A2", (1, 2, 1), 111)])
def test_y_curve_counts(t, word, count):
    assert build_bsdh(t, word).y_curve_count() == count


def test_y_curve_guard():
    Z = build_bsdh("A3", (2, 1, 3, 2))
    assert Z.y_curve_count() == 6144
    with pytest.raises(GuardError):
        next(Z.y_curves(limit=100))


def test_curve_to_y_degrees_match():
    for t in ("A2", "B2"):
        for w in reduced_words(build_root_system(t), 3):
            Z = build_bsdh(t, w)
            for c in Z.model_curves():
                yc = Z.curve_to_y(c)
                Z.validate_y_curve(yc)
                for a in itertools.product(range(-1, 3), repeat=Z.r):
                    assert Z.y_degree(a, yc) == Z.degree(a, c)


SMALL_CORPUS = list(corpus(4, ("A2", "A3", "B2", "G2")))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_CORPUS), st.data())
def test_fixed_point_incidence(tw, data):
    Z = build_bsdh(*tw)
    x = data.draw(st.sampled_from(Z.fixed_points()))
    through = Z.curves_through(x)
    assert len(through) == Z.r
    assert len({c.moving for c in through}) == Z.r
    for c in through:
        assert x in c.endpoints


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_CORPUS), st.data())
def test_degrees_two_ways(tw, data):
    Z = build_bsdh(*tw)
    c = data.draw(st.sampled_from(Z.model_curves()))
    assert Z.gkm_basis_degrees(c) == Z.closed_form_basis_degrees(c) == Z.basis_degrees(c)
    # L_m only sees slots up to m
    assert all(d == 0 for d in Z.basis_degrees(c)[: c.moving - 1])
    assert Z.basis_degrees(c)[c.moving - 1] == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_CORPUS), st.data())
def test_nef_iff_nonnegative_on_cone(tw, data):
    Z = build_bsdh(*tw)
    a = tuple(data.draw(st.lists(st.integers(-2, 3), min_size=Z.r, max_size=Z.r)))
    cone = Z.nef_cone_inequalities()
    by_cone = all(sum(x * y for x, y in zip(a, d)) >= 0 for d in cone)
    assert bool(Z.nef_test(Line(a))) == by_cone
    if by_cone:
        x = data.draw(st.sampled_from(Z.fixed_points()))
        k = data.draw(st.integers(1, 4))
        assert Z.seshadri(Line(tuple(k * v for v in a)), x) == k * Z.seshadri(Line(a), x)
