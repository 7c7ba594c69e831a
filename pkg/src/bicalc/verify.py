"""Verification suites run by ``bicalc verify``.

Each suite returns a :class:`~bicalc.report.Report`.  Randomized checks
draw from a ``random.Random(seed)`` so reruns are identical.
"""

from __future__ import annotations

import itertools
import random

from .calculus import CalculusSpec, identity_suite
from .exterior import WedgeCapError, volume_and_epsilon
from .funalg import delta, random_function, tangent_apply, translate, unit
from .geometry import (
    GaugeMap,
    GeometryError,
    adjoint_gauge,
    conjugate_forms,
    connection_forms,
    contraction,
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
from .group import group_from_table
from .integration import cohomology_check, haar, integrate_top
from .report import Report
from .scalar import Scalar

__all__ = ["SUITES", "run_suite", "exterior_reach"]

# highest form degree whose d^2 is checked when the algebra never vanishes
OPEN_ENDED_DEGREE = 3
RANDOM_CONNECTIONS = 5


def _first(items, fmt=str) -> str:
    return "" if not items else "first failure: " + fmt(items[0])


def suite_group(spec: CalculusSpec, rng) -> Report:
    G = spec.group
    rep = Report("group")
    try:
        group_from_table(G.labels, G.table, G.name)
        rep.add("cayley_table_axioms", True)
    except ValueError as exc:
        rep.add("cayley_table_axioms", False, str(exc))
    classes = G.conjugacy_classes()
    flat = sorted(g for c in classes for g in c)
    rep.add("classes_partition_group", flat == list(G))
    rep.add(
        "classes_closed_under_conjugation",
        all(G.adjoint(h, g) in c for c in classes for g in c for h in G),
    )
    return rep


def suite_actions(spec: CalculusSpec, rng) -> Report:
    G = spec.group
    rep = Report("actions")
    basis = [delta(G, g) for g in G]
    bad_r, bad_l, bad_c = [], [], []
    for g1, g2 in itertools.product(G, repeat=2):
        for f in basis:
            if translate("right", g1, translate("right", g2, f)) != translate("right", G.mul(g1, g2), f):
                bad_r.append((g1, g2))
            if translate("left", g1, translate("left", g2, f)) != translate("left", G.mul(g2, g1), f):
                bad_l.append((g1, g2))
            if translate("left", g1, translate("right", g2, f)) != translate("right", g2, translate("left", g1, f)):
                bad_c.append((g1, g2))
    rep.add("right_composition", not bad_r, _first(bad_r, spec.labels))
    rep.add("left_composition", not bad_l, _first(bad_l, spec.labels))
    rep.add("left_right_commute", not bad_c, _first(bad_c, spec.labels))
    rep.add(
        "haar_invariance",
        all(
            haar(translate(side, g, f)) == haar(f)
            for side in ("left", "right")
            for g in G
            for f in basis + [random_function(G, rng)]
        ),
    )
    rep.add("haar_of_unit", haar(unit(G)) == Scalar(G.order))
    # t_h f (g) = f(g h^-1) - f(g)
    rep.add(
        "tangent_vectors",
        all(
            tangent_apply(h, f) == translate("right", G.inv(h), f) - f
            for h in spec.gprime
            for f in basis
        ),
    )
    return rep


def suite_braid(spec: CalculusSpec, rng) -> Report:
    rep = Report("braid")
    br = spec.braiding
    rep.add("braid_relation", br.braid_relation_holds())
    rep.add(
        "braiding_invertible",
        all(br.inverse(*br.apply(i, j)) == (i, j) for i, j in itertools.product(spec.gprime, repeat=2)),
    )
    return rep


def suite_identities(spec: CalculusSpec, rng) -> Report:
    return identity_suite(spec)


def exterior_reach(spec: CalculusSpec):
    """``(dims, terminated)``: dimensions as far as the degree scan goes."""
    alg = spec.exterior()
    try:
        return alg.dims(), True
    except WedgeCapError as exc:
        return exc.dims, False


def _d2_degrees(spec):
    """Form degrees for which ``d d`` is checked."""
    dims, done = exterior_reach(spec)
    if done:
        return range(len(dims) - 1)
    return range(min(OPEN_ENDED_DEGREE, len(dims) - 2) + 1)


def suite_exterior(spec: CalculusSpec, rng) -> Report:
    alg = spec.exterior()
    G = spec.group
    gp = spec.gprime
    rep = Report("exterior")
    dims, done = exterior_reach(spec)
    rep.add(
        "dimension_ladder",
        dims[:2] == [1, spec.dim],
        f"dims {dims}" + ("" if done else " (no vanishing degree within the cap)"),
    )

    cm_bad = [g for g in gp if alg.theta(g).d() != alg.d_theta(g)]
    rep.add("cartan_maurer", not cm_bad, _first(cm_bad, lambda g: G.labels[g]))

    degrees = list(_d2_degrees(spec))
    d2_bad, wd_bad = [], []
    for p in degrees:
        for mono in alg.space(p).basis:
            for g in G:
                if alg.form({mono: delta(G, g)}, p).d().d():
                    d2_bad.append((g,) + mono)
        # d is well defined on the quotient: d(m) computed from the raw
        # monomial agrees with d of its reduction
        for mono in itertools.product(gp, repeat=p):
            raw = alg.d_monomial_constant(mono)
            if alg.form(raw, p + 1) != alg.form({mono: 1}, p).d():
                wd_bad.append(mono)
    rep.add("d_squared_zero", not d2_bad, f"degrees {degrees[0]}..{degrees[-1]}" if not d2_bad else _first(d2_bad, spec.labels))
    rep.add("d_well_defined", not wd_bad, _first(wd_bad, spec.labels))

    forms1 = [alg.theta(g) for g in gp]
    assoc_bad = [
        (i, j, k)
        for i, j, k in itertools.product(gp, repeat=3)
        if (alg.theta(i) ^ alg.theta(j)) ^ alg.theta(k) != alg.theta(i) ^ (alg.theta(j) ^ alg.theta(k))
    ]
    for _ in range(5):
        u, v, w = (random_function(G, rng) * rng.choice(forms1) for _ in range(3))
        if (u ^ v) ^ w != u ^ (v ^ w):
            assoc_bad.append(("random",))
    rep.add("wedge_associative", not assoc_bad, _first(assoc_bad, str))

    leib_bad = 0
    for _ in range(5):
        u = random_function(G, rng) * rng.choice(forms1)
        v = random_function(G, rng) * rng.choice(forms1)
        if (u ^ v).d() != (u.d() ^ v) - (u ^ v.d()):
            leib_bad += 1
    rep.add("graded_leibniz", not leib_bad)

    cov_bad = []
    for h in G:
        for g in gp:
            for x in G:
                w = delta(G, x) * alg.theta(g)
                for side in ("left", "right"):
                    if w.d().act(side, h) != w.act(side, h).d():
                        cov_bad.append((side, h, g, x))
    rep.add("d_commutes_with_actions", not cov_bad, _first(cov_bad, str))
    rep.add(
        "left_invariant_theta",
        all(alg.theta(g).act("left", h) == alg.theta(g) for g in gp for h in G),
    )
    return rep


def suite_geometry(spec: CalculusSpec, rng) -> Report:
    G = spec.group
    alg = spec.exterior()
    rep = Report("geometry")
    par = parallelizing_connection(spec)
    try:
        flat = all(not r for r in curvature(spec, par).values())
        rep.add("parallelizing_flat", flat)
    except GeometryError as exc:
        rep.add("parallelizing_flat", False, str(exc))
    rep.add("parallelizing_ad_invariant", par.is_ad_invariant())

    fam = solve_torsionless(spec)
    if fam is None:
        rep.add("torsionless_solutions", False, "system is inconsistent")
    else:
        members = [fam.particular] + [fam.particular + k for k in fam.kernel]
        ok = all(not t for c in members for t in torsion(spec, c).values())
        rep.add("torsionless_solutions", ok, f"affine family of dimension {fam.dimension}")

    errors = []
    for _ in range(RANDOM_CONNECTIONS):
        conn = random_connection(spec, rng)
        try:
            curvature(spec, conn)
            torsion(spec, conn)
        except GeometryError as exc:
            errors.append(str(exc))
    rep.add("formula_cross_checks", not errors, _first(errors))

    conn = random_connection(spec, rng)
    R = curvature(spec, conn)
    ad = adjoint_gauge(spec, lambda g: g)
    gauges = [ad, _random_constant_gauge(spec, rng)]
    rep.add(
        "gauge_covariance",
        all(gauge_transform(spec, conn, a)[1] == conjugate_forms(spec, a, R) for a in gauges),
    )
    omega_id, _ = gauge_transform(spec, conn, GaugeMap.identity(spec))
    rep.add("identity_gauge_fixes_omega", omega_id == connection_forms(spec, conn))

    for kind in ("delta", "cc"):
        m = metric_build(spec, kind)
        rep.add(f"metric_{kind}_biinvariant", m.is_biinvariant())
        rep.add(f"metric_{kind}_adjoint_invariant", metric_invariant_under(m, ad))
        moved = adjoint_gauge(spec, [rng.choice(list(G)) for _ in G])
        rep.add(
            f"metric_{kind}_lowering_covariant",
            metric_invariant_under(m, moved) and lowering_is_covariant(m, moved, rng),
        )

    cartan_bad = []
    for f in [delta(G, g) for g in G] + [random_function(G, rng)]:
        df = alg.function(f).d()
        for g in spec.gprime:
            lhs = contraction(spec, g, df) + contraction(spec, g, f)
            if lhs != lie_derivative(spec, g, f) or lhs != tangent_apply(g, f):
                cartan_bad.append(g)
    rep.add("cartan_formula_functions", not cartan_bad)
    return rep


def lowering_is_covariant(metric, a, rng, samples: int = 3) -> bool:
    """Check ``lower(a phi) == lower(phi) a^-1`` pointwise on random vectors."""
    n = metric.spec.dim
    ainv = a.inverse()
    for A, B in zip(a.matrices, ainv.matrices):
        for _ in range(samples):
            phi = [Scalar(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)]
            moved = [sum((A[i][j] * phi[j] for j in range(n)), Scalar(0)) for i in range(n)]
            low = lower_index(metric, phi)
            expected = [sum((low[k] * B[k][i] for k in range(n)), Scalar(0)) for i in range(n)]
            if lower_index(metric, moved) != expected:
                return False
    return True


def _random_constant_gauge(spec, rng) -> GaugeMap:
    n = spec.dim
    while True:
        m = [[Scalar(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(n)] for _ in range(n)]
        a = GaugeMap.constant(spec, m)
        try:
            a.inverse()
            return a
        except GeometryError:
            continue


def suite_integration(spec: CalculusSpec, rng) -> Report:
    rep = Report("integration")
    G = spec.group
    dims, done = exterior_reach(spec)
    if not done:
        rep.add("top_degree", True, "not applicable: no vanishing degree within the cap")
        return rep
    if dims[-2] != 1:
        rep.add("top_degree", False, f"top space has dimension {dims[-2]}")
        return rep
    alg = spec.exterior()
    eps = volume_and_epsilon(spec)
    rep.add("top_degree", True, f"degree {eps.degree}")
    chi = eps.right_character
    odd = [G.labels[g] for g in G if chi[g] != 1]
    rep.add(
        "vol_right_character",
        all(chi[g] == 1 for g in _generated(G, spec.gprime)),
        "R_g vol = vol for all g" if not odd else "R_g vol = -vol for g in {" + ",".join(odd) + "}",
    )
    rep.add(
        "epsilon_ad_covariant",
        all(
            eps(tuple(G.adjoint(g, x) for x in m)) == chi[g] * v
            for m, v in eps.values.items()
            for g in G
        ),
    )
    vol = alg.form({eps.vol: 1}, eps.degree)
    rep.add("lie_derivative_of_vol", all(not lie_derivative(spec, g, vol) for g in spec.gprime))
    rep.add("integral_of_vol", integrate_top(spec, vol, eps).value == Scalar(G.order))
    top_basis = alg.space(eps.degree).basis
    w = alg.form({m: random_function(G, rng) for m in top_basis}, eps.degree)
    base = integrate_top(spec, w, eps).value
    rep.add("integral_left_invariant", all(integrate_top(spec, w.act("left", g), eps).value == base for g in G))
    rep.add(
        "integral_right_covariant",
        all(integrate_top(spec, w.act("right", g), eps).value == base * Scalar(chi[g]) for g in G),
    )
    crep, _ = cohomology_check(spec, eps)
    rep.extend(crep)
    lower = alg.space(eps.degree - 1).basis
    bad = 0
    for _ in range(5):
        u = alg.form({m: random_function(G, rng) for m in lower}, eps.degree - 1)
        if integrate_top(spec, u.d(), eps).value:
            bad += 1
    rep.add("stokes_random", not bad)
    return rep


def _generated(G, gens):
    """Elements of the subgroup generated by ``gens``."""
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.mul(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return sorted(seen)


SUITES = {
    "group": suite_group,
    "actions": suite_actions,
    "braid": suite_braid,
    "identities": suite_identities,
    "exterior": suite_exterior,
    "geometry": suite_geometry,
    "integration": suite_integration,
}


def run_suite(spec: CalculusSpec, name: str = "all", seed: int = 0) -> Report:
    rng = random.Random(seed)
    if name == "all":
        rep = Report("all")
        for key, fn in SUITES.items():
            rep.extend(fn(spec, rng), prefix=f"{key}.")
        return rep
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}") from None
    return fn(spec, rng)
