"""Acceptance criteria, one check per criterion.

Run under pytest (a summary table is printed at the end of the session) or
directly with ``python tests/test_acceptance.py``.  Every comparison is exact.
"""

from __future__ import annotations

import functools
import io
import itertools
import json
import os
import random
import subprocess
import sys
import time

import pytest

from bicalc import build_group, make_calculus
from bicalc.cli import run
from bicalc.exterior import ExteriorAlgebra, cartan_maurer, volume_and_epsilon
from bicalc.funalg import delta, random_function, tangent_apply, unit
from bicalc.geometry import (
    GaugeMap,
    GeometryError,
    adjoint_gauge,
    conjugate_forms,
    connection_forms,
    contraction,
    curvature,
    gauge_transform,
    lie_derivative,
    metric_build,
    metric_invariant_under,
    parallelizing_connection,
    random_connection,
    solve_torsionless,
    torsion,
)
from bicalc.integration import cohomology_check, haar, integrate_top
from bicalc.scalar import Scalar
from bicalc.verify import identity_suite, lowering_is_covariant, run_suite

RESULTS: dict[int, tuple[bool, str]] = {}
TITLES: dict[int, str] = {}
CHECKS = {}

S3_CLASSES = {"BC_I": "a", "BC_II": "ab", "BC_I+II": "a,ab"}


def criterion(n, title):
    def wrap(fn):
        TITLES[n] = title
        CHECKS[n] = fn
        return fn

    return wrap


@functools.cache
def s3():
    return build_group("s3")


@functools.cache
def calc(classes):
    return make_calculus(s3(), classes)


def bc1():
    return calc("a")


def bc2():
    return calc("ab")


def bc12():
    return calc("a,ab")


def form(spec, text, sign=1):
    mono = spec.monomial(text.split())
    return spec.exterior().form({mono: sign}, len(mono))


# -- criteria -------------------------------------------------------------------


@criterion(1, "BC_I dimension ladder [1,3,4,3,1,0] in under 1 s")
def check_01():
    start = time.perf_counter()
    dims = ExteriorAlgebra(bc1()).dims()
    elapsed = time.perf_counter() - start
    assert dims == [1, 3, 4, 3, 1, 0], f"dims {dims}"
    assert elapsed < 1.0, f"took {elapsed:.2f} s"
    return f"{dims} in {elapsed:.3f} s"


@criterion(2, "BC_II dimension ladder [1,2,1,0]")
def check_02():
    dims = ExteriorAlgebra(bc2()).dims()
    assert dims == [1, 2, 1, 0], f"dims {dims}"
    return str(dims)


@criterion(3, "BC_I+II first-order dimension 5, higher degrees reported, suites pass")
def check_03():
    spec = bc12()
    assert spec.dim == 5, f"dimension {spec.dim}"
    code, out, err = _cli("calculus", "dims", "--builtin", "s3", "--classes", "a,ab")
    assert code == 0, err
    dims = json.loads(out)
    assert dims["dims"][:7] == [1, 5, 14, 31, 58, 95, 140], dims
    rep = run_suite(spec, "all", seed=0)
    assert rep.passed, "; ".join(f"{c.name}: {c.detail}" for c in rep.failures())
    return f"dims {dims['dims']} (no vanishing degree up to {dims['truncated_at'] - 1}); {len(rep.checks)} checks pass"


@criterion(4, "BC_I two-form relations and three-form identities reduce to zero")
def check_04():
    spec = bc1()
    alg = spec.exterior()
    zero2, zero3 = alg.zero(2), alg.zero(3)
    assert form(spec, "b a") + form(spec, "a c") + form(spec, "c b") == zero2
    assert form(spec, "c a") + form(spec, "a b") + form(spec, "b c") == zero2
    chains = [
        [("c b a", 1), ("c a c", -1), ("a c a", -1), ("a b c", 1)],
        [("b c a", 1), ("b a b", -1), ("a b a", -1), ("a c b", 1)],
        [("c a b", 1), ("c b c", -1), ("b c b", -1), ("b a c", 1)],
    ]
    count = 0
    for chain in chains:
        for (t1, s1), (t2, s2) in itertools.combinations(chain, 2):
            assert form(spec, t1, s1) - form(spec, t2, s2) == zero3, f"{t1} vs {t2}"
            count += 1
    # d of every constant three-form vanishes
    for m in itertools.product(spec.gprime, repeat=3):
        assert not alg.d_monomial_constant(m), f"d({m}) != 0"
    return f"2 relations, {count} three-form differences, d(theta^3) = 0"


@criterion(5, "epsilon tensors: BC_I table with vol=(a,b,a,c), BC_II Levi-Civita")
def check_05():
    spec = bc1()
    eps = volume_and_epsilon(spec, ["a", "b", "a", "c"])
    table = {w: 1 for w in ("abac", "acab", "cbca", "cacb", "babc", "bcba")}
    table.update({w: -1 for w in ("baca", "caba", "abcb", "cbab", "acbc", "bcac")})
    for m in itertools.product(spec.gprime, repeat=4):
        word = "".join(spec.group.labels[g] for g in m)
        assert eps(m) == table.get(word, 0), f"eps({word}) = {eps(m)}"
    e2 = volume_and_epsilon(bc2())
    ab, ba = bc2().gprime
    for m in itertools.product(bc2().gprime, repeat=2):
        expected = {(ab, ba): 1, (ba, ab): -1}.get(m, 0)
        assert e2(m) == expected
    return "12 nonzero BC_I entries; BC_II eps(ab,ba) = 1"


@criterion(6, "Cartan-Maurer equations for BC_I and BC_II")
def check_06():
    spec = bc1()
    cm = cartan_maurer(spec)
    for g, (x, y) in {"a": ("b", "c"), "b": ("a", "c"), "c": ("a", "b")}.items():
        total = cm[spec.group.index(g)] + form(spec, f"{x} {y}") + form(spec, f"{y} {x}")
        assert not total, f"d theta^{g}"
    assert all(not w for w in cartan_maurer(bc2()).values()), "BC_II d theta != 0"
    return "exact"


@criterion(7, "d^2 = 0 on delta-coefficient forms and 100 random exact forms")
def check_07():
    details = []
    # the third calculus has no vanishing degree, so its scan gets a larger budget
    for name, spec, degrees in (
        ("BC_I", bc1(), None),
        ("BC_II", bc2(), None),
        ("BC_I+II", make_calculus(s3(), "a,ab"), range(6)),
    ):
        G = spec.group
        if degrees is None:
            alg = spec.exterior()
            degrees = range(len(alg.dims()))
        else:
            alg = ExteriorAlgebra(spec, max_monomials=5 ** 7)
            spec._exterior = alg
        checked = 0
        for p in degrees:
            for m in alg.space(p).basis:
                for g in G:
                    w = alg.form({m: delta(G, g)}, p)
                    assert not w.d().d(), f"{name}: d^2 of {spec.labels(m)} at {G.labels[g]}"
                    checked += 1
        rng = random.Random(7)
        low = list(degrees)[:4]
        for _ in range(100):
            p = rng.choice(low)
            u = alg.form({m: random_function(G, rng) for m in alg.space(p).basis if rng.random() < 0.6}, p)
            assert not u.d().d(), f"{name}: random exact form of degree {p + 1}"
        details.append(f"{name} degrees {degrees.start}-{degrees.stop - 1} ({checked} forms)")
    return "; ".join(details) + "; BC_I+II has no top degree, checked through degree 5"


@criterion(8, "structure-constant identities and braid relation, all S3 calculi")
def check_08():
    names = []
    for name, classes in S3_CLASSES.items():
        rep = identity_suite(calc(classes))
        assert rep.passed, f"{name}: " + "; ".join(c.name for c in rep.failures())
        names = [c.name for c in rep.checks]
    return ", ".join(names)


@criterion(9, "parallelizing flat, torsionless solutions torsion-free, 100 random cross-checks")
def check_09():
    details = []
    for name, classes in S3_CLASSES.items():
        spec = calc(classes)
        R = curvature(spec, parallelizing_connection(spec))
        assert all(not r for r in R.values()), f"{name}: parallelizing curvature"
        fam = solve_torsionless(spec)
        assert fam is not None, f"{name}: torsionless system inconsistent"
        for conn in [fam.particular] + [fam.particular + k for k in fam.kernel]:
            assert all(not t for t in torsion(spec, conn).values()), f"{name}: torsion"
        rng = random.Random(2024)
        for _ in range(100):
            conn = random_connection(spec, rng)
            try:
                curvature(spec, conn, check=True)
                torsion(spec, conn, check=True)
            except GeometryError as exc:
                raise AssertionError(f"{name}: {exc}") from None
        details.append(f"{name} family dim {fam.dimension}")
    return "; ".join(details)


def _random_gauges(spec, rng, count):
    n = spec.dim
    out = []
    while len(out) < count:
        m = [[Scalar(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(n)] for _ in range(n)]
        a = GaugeMap.constant(spec, m)
        try:
            a.inverse()
        except GeometryError:
            continue
        out.append(a)
    return out


@criterion(10, "gauge covariance R' = a R a^-1; identity gauge fixes omega")
def check_10():
    total = 0
    for name, classes in S3_CLASSES.items():
        spec = calc(classes)
        rng = random.Random(10)
        for _ in range(2):
            conn = random_connection(spec, rng)
            R = curvature(spec, conn)
            for a in _random_gauges(spec, rng, 2):
                assert gauge_transform(spec, conn, a)[1] == conjugate_forms(spec, a, R), name
                total += 1
            omega, _ = gauge_transform(spec, conn, GaugeMap.identity(spec))
            assert omega == connection_forms(spec, conn), f"{name}: identity gauge"
    return f"{total} random constant gauges"


@criterion(11, "metrics biinvariant, adjoint-gauge invariant, lowering covariant")
def check_11():
    for name, classes in S3_CLASSES.items():
        spec = calc(classes)
        G = spec.group
        rng = random.Random(11)
        for kind in ("delta", "cc"):
            m = metric_build(spec, kind)
            assert m.is_biinvariant(), f"{name} {kind}: not biinvariant"
            for _ in range(5):
                a = adjoint_gauge(spec, [rng.choice(list(G)) for _ in G])
                assert metric_invariant_under(m, a), f"{name} {kind}: adjoint gauge"
                assert lowering_is_covariant(m, a, rng), f"{name} {kind}: lowering"
    return "delta and cc on all three calculi, 5 adjoint gauges each"


@criterion(12, "h(I) = 6, Stokes on delta and random forms, cohomology check")
def check_12():
    G = s3()
    assert haar(unit(G)) == 6
    details = []
    for name, spec in (("BC_I", bc1()), ("BC_II", bc2())):
        alg = spec.exterior()
        eps = volume_and_epsilon(spec)
        p = eps.degree - 1
        basis = alg.space(p).basis
        for m, g in itertools.product(basis, G):
            assert integrate_top(spec, alg.form({m: delta(G, g)}, p).d(), eps).value == 0, name
        rng = random.Random(12)
        for _ in range(100):
            u = alg.form({m: random_function(G, rng) for m in basis}, p)
            assert integrate_top(spec, u.d(), eps).value == 0, f"{name}: random Stokes"
        rep, _ = cohomology_check(spec, eps)
        assert rep.passed, f"{name}: " + "; ".join(f"{c.name} {c.detail}" for c in rep.failures())
        details.append(f"{name} {rep['vol_not_exact'].detail}")
    return "; ".join(details)


@criterion(13, "Lie derivative equals t_g, Cartan formula on functions, l_t vol = 0")
def check_13():
    for name, spec in (("BC_I", bc1()), ("BC_II", bc2()), ("BC_I+II", bc12())):
        G = spec.group
        alg = spec.exterior()
        # both sides are linear in f, so the delta basis covers every function
        for f in [delta(G, g) for g in G]:
            df = alg.function(f).d()
            for g in spec.gprime:
                assert lie_derivative(spec, g, f) == tangent_apply(g, f), name
                # the d(i f) term vanishes: contraction of a function is zero
                cartan = contraction(spec, g, df) + contraction(spec, g, f)
                assert cartan == lie_derivative(spec, g, f), f"{name}: Cartan at {G.labels[g]}"
    for name, spec in (("BC_I", bc1()), ("BC_II", bc2())):
        eps = volume_and_epsilon(spec)
        vol = spec.exterior().form({eps.vol: 1}, eps.degree)
        for g in spec.gprime:
            assert not lie_derivative(spec, g, vol), f"{name}: l vol at {spec.group.labels[g]}"
    return "exact on the delta basis of Fun(S3)"


@criterion(14, "Z2 universal calculus: one theta, d theta = 0, top degree 1, vol = theta^a")
def check_14():
    spec = make_calculus(build_group("z2"), "all")
    alg = spec.exterior()
    assert spec.dim == 1
    assert not alg.theta("a").d()
    eps = volume_and_epsilon(spec)
    assert eps.degree == 1 and spec.labels(eps.vol) == ["a"]
    G = spec.group
    for g in G:
        assert integrate_top(spec, alg.function(delta(G, g)).d(), eps).value == 0
    return f"dims {alg.dims()}"


DETERMINISM_COMMANDS = [
    ["group", "describe", "--builtin", "s3"],
    ["calculus", "constants", "--builtin", "s3", "--classes", "a,ab"],
    ["exterior", "basis", "--builtin", "s3", "--classes", "a"],
    ["exterior", "epsilon", "--builtin", "s3", "--classes", "a"],
    ["geometry", "solve-torsionless", "--builtin", "s3", "--classes", "a"],
    ["geometry", "curvature", "--builtin", "s3", "--classes", "ab"],
    ["integrate", "--builtin", "s3", "--classes", "ab"],
    ["export", "dot", "--builtin", "s3", "--classes", "a,ab"],
    ["verify", "--builtin", "s3", "--classes", "ab", "--json"],
]


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@criterion(15, "byte-identical CLI output; verify exits 0 for S3 and Z2, Z3, Z4 calculi")
def check_15():
    for argv in DETERMINISM_COMMANDS:
        outputs = set()
        for seed in ("0", "1", "12345"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            proc = subprocess.run(
                [sys.executable, "-m", "bicalc", *argv],
                capture_output=True,
                env=env,
                check=False,
            )
            assert proc.returncode == 0, f"{argv}: {proc.stderr.decode()}"
            outputs.add(proc.stdout)
        assert len(outputs) == 1, f"{' '.join(argv)} differs between runs"
    targets = [("s3", c) for c in S3_CLASSES.values()] + [(z, "all") for z in ("z2", "z3", "z4")]
    for group, classes in targets:
        code, out, _ = _cli("verify", "--builtin", group, "--classes", classes)
        assert code == 0, f"verify {group} {classes}: exit {code}\n{out}"
    return f"{len(DETERMINISM_COMMANDS)} commands x 3 hash seeds; verify on {len(targets)} calculi"


# -- runners --------------------------------------------------------------------


def _record(n):
    try:
        detail = CHECKS[n]()
    except AssertionError as exc:
        RESULTS[n] = (False, str(exc).splitlines()[0] if str(exc) else "assertion failed")
        raise
    RESULTS[n] = (True, detail or "")


@pytest.mark.parametrize("n", sorted(CHECKS), ids=lambda n: f"criterion_{n:02d}")
def test_criterion(n):
    _record(n)


def main() -> int:
    failed = 0
    for n in sorted(CHECKS):
        try:
            _record(n)
        except AssertionError:
            failed += 1
        ok, detail = RESULTS[n]
        print(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {TITLES[n]}  [{detail}]")
    print(f"{len(CHECKS) - failed} of {len(CHECKS)} criteria pass")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
