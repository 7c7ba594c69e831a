import itertools
import random

import pytest

from bicalc.geometry import (
    Connection,
    GaugeMap,
    GeometryError,
    Metric,
    adjoint_gauge,
    conjugate_forms,
    connection_forms,
    contraction,
    covariant_derivative,
    curvature,
    gauge_transform,
    lie_derivative,
    lower_index,
    metric_build,
    metric_invariant_under,
    parallelizing_connection,
    random_connection,
    solve_torsionless,
    torsion,
)
from bicalc.funalg import delta, random_function, tangent_apply
from bicalc.scalar import Scalar
from bicalc.verify import lowering_is_covariant

CALCULI = ["bc1", "bc2", "bc12"]


def C_oracle(G, g, g1, g2):
    # C^g_{g1,g2} = delta^{g2^-1 g g2}_{g1} - delta^g_{g1}
    conj = G.mul(G.mul(G.inv(g2), g), g2)
    return int(conj == g1) - int(g == g1)


def _components(spec):
    """Connected components of the pairs (g2, g3) linked by the homogeneous equations."""
    G = spec.group
    parent = {p: p for p in itertools.product(spec.gprime, repeat=2)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g2, g3 in parent:
        parent[find((g2, g3))] = find((g3, G.adjoint(g3, g2)))
    return len({find(p) for p in parent})


@pytest.mark.parametrize("name", CALCULI)
def test_parallelizing_connection_values(name, request):
    spec = request.getfixturevalue(name)
    G = spec.group
    par = parallelizing_connection(spec)
    for g1, g2, g3 in itertools.product(spec.gprime, repeat=3):
        assert par(g1, g2, g3) == C_oracle(G, g1, g3, G.inv(g2))
    assert par.is_ad_invariant()


@pytest.mark.parametrize("name", CALCULI)
def test_parallelizing_connection_is_flat(name, request):
    spec = request.getfixturevalue(name)
    R = curvature(spec, parallelizing_connection(spec))
    assert len(R) == spec.dim ** 2
    assert all(not r for r in R.values())


@pytest.mark.parametrize("name,expected", [("bc1", 15), ("bc2", 6), ("bc12", 55)])
def test_torsionless_family(name, expected, request):
    spec = request.getfixturevalue(name)
    fam = solve_torsionless(spec)
    assert fam is not None
    assert fam.dimension == spec.dim * _components(spec) == expected
    rng = random.Random(3)
    members = [fam.particular] + [fam.member([rng.randint(-2, 2) for _ in fam.kernel]) for _ in range(3)]
    for conn in members:
        assert all(not t for t in torsion(spec, conn).values())


def test_zero_connection_torsion_is_dtheta(bc1):
    alg = bc1.exterior()
    T = torsion(bc1, Connection(bc1))
    assert all(T[g] == alg.theta(g).d() for g in bc1.gprime)


@pytest.mark.parametrize("name", CALCULI)
def test_expanded_formulas_agree_on_random_connections(name, request):
    spec = request.getfixturevalue(name)
    rng = random.Random(11)
    for _ in range(4):
        conn = random_connection(spec, rng)
        curvature(spec, conn, check=True)
        torsion(spec, conn, check=True)


def test_torsion_fails_for_generic_connection(bc1):
    conn = random_connection(bc1, random.Random(0), density=1.0)
    assert any(torsion(bc1, conn).values())


def test_connection_document_round_trip(bc1):
    conn = random_connection(bc1, random.Random(4))
    assert Connection.from_document(bc1, conn.to_document()) == conn
    assert Connection.from_document(bc1, {"entries": conn.to_document()}) == conn
    with pytest.raises(GeometryError):
        Connection.from_document(bc1, [{"upper": "a", "lower": ["a"], "value": "1"}])
    with pytest.raises(GeometryError):
        Connection.from_document(bc1, "nope")
    with pytest.raises(GeometryError, match="not in G'"):
        Connection(bc1, {(0, 1, 2): 1})


@pytest.mark.parametrize("name", ["bc1", "bc2"])
def test_gauge_covariance(name, request):
    spec = request.getfixturevalue(name)
    G = spec.group
    rng = random.Random(7)
    conn = random_connection(spec, rng)
    R = curvature(spec, conn)
    n = spec.dim
    gauges = [adjoint_gauge(spec, [rng.choice(list(G)) for _ in G])]
    while len(gauges) < 3:
        m = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        try:
            a = GaugeMap.constant(spec, m)
            a.inverse()
        except GeometryError:
            continue
        gauges.append(a)
    for a in gauges:
        _, R2 = gauge_transform(spec, conn, a)
        assert R2 == conjugate_forms(spec, a, R)


def test_identity_gauge_fixes_omega(bc1):
    conn = random_connection(bc1, random.Random(2))
    omega, _ = gauge_transform(bc1, conn, GaugeMap.identity(bc1))
    assert omega == connection_forms(bc1, conn)


def test_gauge_errors(bc1):
    with pytest.raises(GeometryError, match="singular"):
        GaugeMap.constant(bc1, [[1, 1, 0], [1, 1, 0], [0, 0, 1]]).inverse()
    with pytest.raises(GeometryError):
        GaugeMap.constant(bc1, [[1, 0], [0, 1]])
    with pytest.raises(GeometryError):
        GaugeMap(bc1, [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]])


def test_cc_metric_values(bc1, bc2, bc12):
    def oracle(spec):
        G = spec.group
        gp = spec.gprime
        return [
            [sum(C_oracle(G, k, l, i) * C_oracle(G, l, k, j) for k in gp for l in gp) for j in gp]
            for i in gp
        ]

    for spec in (bc1, bc2, bc12):
        m = metric_build(spec, "cc")
        assert m.matrix == [[Scalar(x) for x in row] for row in oracle(spec)]
    assert metric_build(bc1, "cc").matrix == [[Scalar(x) for x in r] for r in [[4, 1, 1], [1, 4, 1], [1, 1, 4]]]
    assert all(not x for row in metric_build(bc2, "cc").matrix for x in row)


@pytest.mark.parametrize("name", CALCULI)
@pytest.mark.parametrize("kind", ["delta", "cc"])
def test_metrics_biinvariant_and_adjoint_invariant(name, kind, request):
    spec = request.getfixturevalue(name)
    G = spec.group
    m = metric_build(spec, kind)
    assert m.is_biinvariant()
    rng = random.Random(5)
    for _ in range(3):
        a = adjoint_gauge(spec, [rng.choice(list(G)) for _ in G])
        assert metric_invariant_under(m, a)
        assert lowering_is_covariant(m, a, rng)


def test_custom_metric(bc1):
    m = metric_build(bc1, "custom", [[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert not m.is_biinvariant()
    assert not metric_invariant_under(m, adjoint_gauge(bc1, lambda g: g))
    assert Metric.from_document(bc1, m.to_document()).matrix == m.matrix
    with pytest.raises(GeometryError):
        metric_build(bc1, "custom", [[1.5, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(GeometryError):
        metric_build(bc1, "custom")
    with pytest.raises(GeometryError):
        metric_build(bc1, "killing")


def test_lower_index(bc1):
    m = metric_build(bc1, "cc")
    assert lower_index(m, [1, 0, 0]) == [Scalar(4), Scalar(1), Scalar(1)]
    with pytest.raises(GeometryError):
        lower_index(m, [1, 2])


def test_lie_derivative_is_tangent_vector(bc1, s3):
    rng = random.Random(9)
    for f in [delta(s3, g) for g in s3] + [random_function(s3, rng)]:
        for g in s3:
            if g == s3.identity:
                with pytest.raises(GeometryError):
                    lie_derivative(bc1, g, f)
                continue
            assert lie_derivative(bc1, g, f) == tangent_apply(g, f)


def test_cartan_formula_on_functions(bc1, bc12, s3):
    rng = random.Random(1)
    for spec in (bc1, bc12):
        alg = spec.exterior()
        for f in [delta(s3, g) for g in s3] + [random_function(s3, rng) for _ in range(3)]:
            df = alg.function(f).d()
            for g in spec.gprime:
                lhs = contraction(spec, g, df) + contraction(spec, g, alg.function(f))
                assert lhs == lie_derivative(spec, g, f)


def test_contraction_errors(bc1):
    alg = bc1.exterior()
    with pytest.raises(GeometryError):
        contraction(bc1, "ab", alg.theta("a"))
    with pytest.raises(GeometryError):
        contraction(bc1, "a", alg.theta("a") ^ alg.theta("b"))


def test_lie_derivative_of_left_invariant_forms(bc1):
    # R_{g^-1} theta^h = theta^{ad(g^-1) h}, so l_{t_g} theta^g = 0
    alg = bc1.exterior()
    for g in bc1.gprime:
        assert not lie_derivative(bc1, g, alg.theta(g))


def test_covariant_derivative_leibniz(bc1, s3):
    alg = bc1.exterior()
    rng = random.Random(6)
    conn = random_connection(bc1, rng)
    for g in bc1.gprime:
        rho = alg.theta(g)
        f = random_function(s3, rng)
        lhs = covariant_derivative(bc1, conn, f * rho)
        rhs = alg.function(f).d().embed().tensor(rho) + f * covariant_derivative(bc1, conn, rho)
        assert lhs == rhs
    nabla = covariant_derivative(bc1, conn, alg.theta("a"))
    omega = connection_forms(bc1, conn)
    a = bc1.group.index("a")
    want = sum((-omega[a, h]).embed().tensor(alg.theta(h)) for h in bc1.gprime)
    assert nabla == want
    with pytest.raises(GeometryError):
        covariant_derivative(bc1, conn, alg.theta("a") ^ alg.theta("b"))
