import itertools
import random
from fractions import Fraction

import pytest

from bicalc.calculus import CalculusError, make_calculus
from bicalc.exterior import volume_and_epsilon
from bicalc.funalg import delta, random_function, unit
from bicalc.group import build_group
from bicalc.integration import cohomology_check, haar, integrate_top, stokes_check
from bicalc.scalar import Scalar


def _rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    width = len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                k = rows[i][col] / rows[rank][col]
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def test_haar(s3):
    assert haar(unit(s3)) == 6
    assert haar(delta(s3, "ab")) == 1
    assert haar(unit(s3) * Scalar(0, 1)) == Scalar(0, 6)


@pytest.mark.parametrize("name", ["bc1", "bc2"])
def test_integral_of_vol(name, request):
    spec = request.getfixturevalue(name)
    eps = volume_and_epsilon(spec)
    vol = spec.exterior().form({eps.vol: 1}, eps.degree)
    res = integrate_top(spec, vol, eps)
    assert res.value == 6
    assert res.contributions == (Scalar(1),) * 6


@pytest.mark.parametrize("name", ["bc1", "bc2"])
def test_stokes_on_delta_forms(name, request):
    spec = request.getfixturevalue(name)
    alg = spec.exterior()
    G = spec.group
    eps = volume_and_epsilon(spec)
    p = eps.degree - 1
    for m, g in itertools.product(alg.space(p).basis, G):
        assert stokes_check(spec, alg.form({m: delta(G, g)}, p), eps) == 0
    rng = random.Random(4)
    for _ in range(10):
        u = alg.form({m: random_function(G, rng) for m in alg.space(p).basis}, p)
        assert stokes_check(spec, u, eps) == 0


@pytest.mark.parametrize("name,rank,source", [("bc1", 5, 18), ("bc2", 4, 12)])
def test_cohomology(name, rank, source, request):
    spec = request.getfixturevalue(name)
    alg = spec.exterior()
    G = spec.group
    eps = volume_and_epsilon(spec)
    p = eps.degree
    (top,) = alg.space(p).basis
    rows = []
    for g, m in itertools.product(G, alg.space(p - 1).basis):
        out = alg.form({m: delta(G, g)}, p - 1).d().coefficient(top)
        rows.append([v.re for v in out.values] + [v.im for v in out.values])
    assert len(rows) == source
    assert _rank(rows) == rank
    # vol has the constant coefficient; appending it must raise the rank
    scale = alg.space(p).reduce(eps.vol)[top]
    assert _rank(rows + [[scale] * 6 + [0] * 6]) == rank + 1

    rep, doc = cohomology_check(spec, eps)
    assert rep.passed
    assert rep["vol_not_exact"].detail == f"rank of d: {rank} from {source} to 6"
    assert doc["cohomology"] == {"closed": True, "vol_exact": False}
    assert doc["stokes"] == "0"


def test_cohomology_document_bc2(bc2):
    _, doc = cohomology_check(bc2)
    assert doc == {
        "top_degree": 2,
        "vol": ["ab", "ba"],
        "stokes": "0",
        "cohomology": {"closed": True, "vol_exact": False},
    }


@pytest.mark.parametrize("name", ["bc1", "bc2"])
def test_integral_under_translations(name, request):
    spec = request.getfixturevalue(name)
    G = spec.group
    alg = spec.exterior()
    eps = volume_and_epsilon(spec)
    rng = random.Random(8)
    w = alg.form({m: random_function(G, rng) for m in alg.space(eps.degree).basis}, eps.degree)
    base = integrate_top(spec, w, eps).value
    for g in G:
        assert integrate_top(spec, w.act("left", g), eps).value == base
        assert integrate_top(spec, w.act("right", g), eps).value == base * eps.right_character[g]


def test_right_character_is_trivial_for_bc1(bc1):
    assert set(volume_and_epsilon(bc1).right_character) == {1}


def test_integral_depends_only_on_class_of_form(bc1, s3):
    # a non-basis top monomial integrates through epsilon, not through its coefficient
    alg = bc1.exterior()
    eps = volume_and_epsilon(bc1)
    mono = bc1.monomial(["b", "a", "b", "c"])
    f = random_function(s3, random.Random(2))
    w = alg.form({mono: f}, 4)
    assert integrate_top(bc1, w, eps).value == haar(f) * eps(mono)


def test_integrate_wrong_degree(bc1):
    with pytest.raises(CalculusError, match="top degree 4"):
        integrate_top(bc1, bc1.exterior().theta("a"))


def test_z2_universal_calculus():
    spec = make_calculus(build_group("z2"), "all")
    alg = spec.exterior()
    assert spec.dim == 1
    assert not alg.theta("a").d()
    assert alg.dims() == [1, 1, 0]
    eps = volume_and_epsilon(spec)
    assert spec.labels(eps.vol) == ["a"]
    G = spec.group
    for f in [delta(G, g) for g in G] + [random_function(G, random.Random(0))]:
        assert integrate_top(spec, alg.function(f).d(), eps).value == 0
    rep, _ = cohomology_check(spec, eps)
    assert rep.passed
