import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicalc.funalg import (
    FunG,
    delta,
    partial_origin,
    random_function,
    tangent_apply,
    translate,
    unit,
    zero,
)
from bicalc.scalar import Scalar


def fun(G, seed):
    return random_function(G, random.Random(seed))


def test_delta_and_unit(s3):
    assert sum((delta(s3, g) for g in s3), zero(s3)) == unit(s3)
    assert delta(s3, "a")("a") == Scalar(1)
    assert delta(s3, "a")("b") == Scalar(0)


def test_translations_on_deltas(s3):
    # R_h x^g = x^{g h^-1},  L_h x^g = x^{h^-1 g}
    for g in s3:
        for h in s3:
            assert translate("right", h, delta(s3, g)) == delta(s3, s3.mul(g, s3.inv(h)))
            assert translate("left", h, delta(s3, g)) == delta(s3, s3.mul(s3.inv(h), g))


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 10_000))
def test_action_composition(g1, g2, seed):
    from bicalc.group import build_group

    G = build_group("s3")
    f = fun(G, seed)
    assert translate("right", g1, translate("right", g2, f)) == translate("right", G.mul(g1, g2), f)
    assert translate("left", g1, translate("left", g2, f)) == translate("left", G.mul(g2, g1), f)
    assert translate("left", g1, translate("right", g2, f)) == translate("right", g2, translate("left", g1, f))


def test_translations_are_algebra_maps(s3):
    f, h = fun(s3, 1), fun(s3, 2)
    for g in s3:
        for side in ("left", "right"):
            assert translate(side, g, f * h) == translate(side, g, f) * translate(side, g, h)


def test_tangent_vector(s3):
    f = fun(s3, 3)
    for h in range(1, 6):
        t = tangent_apply(h, f)
        for y in s3:
            assert t[y] == f[s3.mul(y, s3.inv(h))] - f[y]
    with pytest.raises(ValueError):
        tangent_apply("e", f)


def test_tangent_leibniz_deformed(s3):
    # t_h(fg) = (t_h f) g + R_{h^-1}f (t_h g)
    f, g = fun(s3, 4), fun(s3, 5)
    for h in range(1, 6):
        lhs = tangent_apply(h, f * g)
        rhs = tangent_apply(h, f) * g + translate("right", s3.inv(h), f) * tangent_apply(h, g)
        assert lhs == rhs


def test_partial_origin(s3):
    f = fun(s3, 6)
    assert partial_origin("a", f) == f("a") - f("e")
    with pytest.raises(ValueError):
        partial_origin("e", f)


def test_document_round_trip(s3):
    f = fun(s3, 7)
    assert FunG.from_document(s3, f.to_document()) == f
    assert zero(s3).to_document() == {}
