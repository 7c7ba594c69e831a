"""Command-line interface: ``bicalc <command> <action> [options]``.

Exit codes: 0 success, 1 failed verification, 2 usage or input error.
Every document is written as compact JSON (DOT for ``export dot``), so
identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import sys

from .calculus import CalculusError, make_calculus
from .exterior import (
    DEFAULT_CAP,
    DEFAULT_MAX_MONOMIALS,
    WedgeCapError,
    WedgeForm,
    volume_and_epsilon,
)
from .geometry import (
    Connection,
    connection_forms,
    curvature,
    metric_build,
    parallelizing_connection,
    solve_torsionless,
    torsion,
)
from .group import GroupError, build_group, load_cayley
from .integration import cohomology_check, integrate_top
from .io import InputError, cayley_dot, dumps, read_json, write_text
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- shared option handling ---------------------------------------------------


def _common(p: argparse.ArgumentParser, calculus: bool = True):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME", help="s3, z4, d5, z2xz3, ...")
    src.add_argument("--cayley", metavar="PATH", help="JSON Cayley table document")
    if calculus:
        p.add_argument("--classes", metavar="LABELS", help="class representatives, comma separated, or 'all'")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="highest form degree to build")
        p.add_argument("--max-monomials", type=int, default=DEFAULT_MAX_MONOMIALS,
                       help="largest tensor space |G'|^p to build")
    p.add_argument("--out", metavar="PATH", help="write the document here instead of stdout")


def _group(args):
    if args.builtin:
        return build_group(args.builtin)
    return load_cayley(read_json(args.cayley))


def _spec(args):
    if not args.classes:
        raise UsageError("--classes is required")
    spec = make_calculus(_group(args), args.classes)
    spec._exterior = spec.exterior(cap=args.cap, max_monomials=args.max_monomials)
    return spec


def _labels(spec, mono):
    return [spec.group.labels[g] for g in mono]


# -- commands -----------------------------------------------------------------


def cmd_group_describe(args):
    G = _group(args)
    doc = G.to_document()
    doc["classes"] = [[G.labels[g] for g in c] for c in G.conjugacy_classes()]
    doc["abelian"] = G.is_abelian()
    return doc


def cmd_calculus_dims(args):
    alg = _spec(args).exterior()
    try:
        dims = alg.dims(max_degree=args.degree)
    except WedgeCapError as exc:
        return {"dims": exc.dims, "truncated_at": len(exc.dims), "reason": str(exc)}
    if dims[-1] != 0:
        return {"dims": dims, "truncated_at": len(dims)}
    return {"dims": dims}


def cmd_calculus_constants(args):
    spec = _spec(args)
    doc = {"gprime": _labels(spec, spec.gprime)}
    doc.update(spec.constants.to_document())
    doc["braiding"] = spec.braiding.to_document()
    return doc


def cmd_calculus_cartan_maurer(args):
    spec = _spec(args)
    alg = spec.exterior()
    return {"dtheta": {spec.group.labels[g]: alg.theta(g).d().to_document() for g in spec.gprime}}


def cmd_exterior_basis(args):
    spec = _spec(args)
    alg = spec.exterior()
    if args.degree is not None:
        degrees = [args.degree]
    else:
        degrees = range(len(alg.dims()))
    out = []
    for p in degrees:
        sp = alg.space(p)
        relations = []
        for mono in sp.monomials():
            if sp.is_basis(mono):
                continue
            relations.append({
                "monomial": _labels(spec, mono),
                "reduces_to": [
                    {"monomial": _labels(spec, b), "coeff": str(k)}
                    for b, k in sorted(sp.reduce(mono).items())
                ],
            })
        out.append({
            "degree": p,
            "dimension": sp.dimension,
            "basis": [_labels(spec, b) for b in sp.basis],
            "relations": relations,
        })
    return {"spaces": out}


def cmd_exterior_epsilon(args):
    spec = _spec(args)
    vol = [x for x in args.vol.split(",") if x] if args.vol else None
    eps = volume_and_epsilon(spec, vol)
    return {
        "degree": eps.degree,
        "vol": _labels(spec, eps.vol),
        "values": [{"monomial": _labels(spec, m), "value": str(v)} for m, v in eps.nonzero()],
        "right_character": {
            spec.group.labels[g]: int(x) for g, x in enumerate(eps.right_character)
        },
    }


def _connection(args, spec):
    choice = args.connection
    if choice == "parallelizing":
        return parallelizing_connection(spec)
    if choice == "zero":
        return Connection(spec)
    return Connection.from_document(spec, read_json(choice))


def _matrix_doc(spec, forms):
    lab = spec.group.labels
    return [
        {"row": lab[i], "col": lab[j], "form": f.to_document()}
        for (i, j), f in sorted(forms.items())
        if f
    ]


def cmd_geometry_curvature(args):
    spec = _spec(args)
    conn = _connection(args, spec)
    R = curvature(spec, conn)
    return {
        "connection": conn.to_document(),
        "ad_invariant": conn.is_ad_invariant(),
        "flat": all(not r for r in R.values()),
        "curvature": _matrix_doc(spec, R),
    }


def cmd_geometry_torsion(args):
    spec = _spec(args)
    conn = _connection(args, spec)
    T = torsion(spec, conn)
    lab = spec.group.labels
    return {
        "connection": conn.to_document(),
        "torsion_free": all(not t for t in T.values()),
        "torsion": {lab[g]: t.to_document() for g, t in sorted(T.items()) if t},
    }


def cmd_geometry_solve_torsionless(args):
    spec = _spec(args)
    fam = solve_torsionless(spec)
    if fam is None:
        return {"solvable": False}
    doc = {"solvable": True, "dimension": fam.dimension}
    doc.update(fam.to_document())
    return doc


def cmd_geometry_connection_forms(args):
    spec = _spec(args)
    return {"omega": _matrix_doc(spec, connection_forms(spec, _connection(args, spec)))}


def cmd_geometry_metric(args):
    spec = _spec(args)
    kind = args.metric
    if kind in ("delta", "cc"):
        m = metric_build(spec, kind)
    else:
        m = metric_build(spec, "custom", read_json(kind))
    return {"gprime": _labels(spec, spec.gprime), "metric": m.to_document(), "biinvariant": m.is_biinvariant()}


def cmd_integrate(args):
    spec = _spec(args)
    eps = volume_and_epsilon(spec)
    if args.form is None:
        _, doc = cohomology_check(spec, eps)
        return doc
    w = WedgeForm.from_document(spec.exterior(), read_json(args.form))
    res = integrate_top(spec, w, eps)
    lab = spec.group.labels
    return {
        "value": str(res.value),
        "contributions": {lab[g]: str(v) for g, v in enumerate(res.contributions) if v},
    }


def cmd_export_dot(args):
    return cayley_dot(_spec(args))


def cmd_verify(args):
    spec = _spec(args)
    rep = run_suite(spec, args.suite, args.seed)
    return rep


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bicalc", description="Bicovariant calculi on finite groups")
    top = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def action(group_parser, name, fn, calculus=True, help=None):
        p = group_parser.add_parser(name, help=help)
        _common(p, calculus)
        p.set_defaults(func=fn)
        return p

    g = top.add_parser("group", help="finite groups").add_subparsers(dest="action", required=True)
    action(g, "describe", cmd_group_describe, calculus=False)

    c = top.add_parser("calculus", help="first-order data").add_subparsers(dest="action", required=True)
    p = action(c, "dims", cmd_calculus_dims)
    p.add_argument("--degree", type=int, help="stop the scan at this degree")
    action(c, "constants", cmd_calculus_constants)
    action(c, "cartan-maurer", cmd_calculus_cartan_maurer)

    e = top.add_parser("exterior", help="wedge spaces").add_subparsers(dest="action", required=True)
    p = action(e, "basis", cmd_exterior_basis)
    p.add_argument("--degree", type=int)
    p = action(e, "epsilon", cmd_exterior_epsilon)
    p.add_argument("--vol", metavar="LABELS", help="volume monomial, comma separated")

    geo = top.add_parser("geometry", help="connections and metrics").add_subparsers(dest="action", required=True)
    for name, fn in (
        ("curvature", cmd_geometry_curvature),
        ("torsion", cmd_geometry_torsion),
        ("connection-forms", cmd_geometry_connection_forms),
    ):
        p = action(geo, name, fn)
        p.add_argument("--connection", default="parallelizing", metavar="parallelizing|zero|PATH")
    action(geo, "solve-torsionless", cmd_geometry_solve_torsionless)
    p = action(geo, "metric", cmd_geometry_metric)
    p.add_argument("--metric", default="delta", metavar="delta|cc|PATH")

    p = top.add_parser("integrate", help="integrate a top form or check the top cohomology")
    _common(p)
    p.add_argument("--form", metavar="PATH")
    p.set_defaults(func=cmd_integrate)

    p = top.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("--suite", default="all", choices=["all", *SUITES])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.set_defaults(func=cmd_verify)

    x = top.add_parser("export", help="graph export").add_subparsers(dest="action", required=True)
    action(x, "dot", cmd_export_dot)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
        if hasattr(result, "checks"):
            if args.json:
                text = dumps(result.to_document())
            else:
                text = "\n".join(result.lines()) + "\n"
                text += f"{'PASS' if result.passed else 'FAIL'}: {len(result.failures())} of {len(result.checks)} checks failed\n"
            write_text(text, args.out, stdout)
            return EXIT_OK if result.passed else EXIT_FAIL
        text = result if isinstance(result, str) else dumps(result)
        write_text(text, args.out, stdout)
        return EXIT_OK
    except UsageError as exc:
        stderr.write(f"bicalc: usage error: {exc}\n")
        return EXIT_USAGE
    except (InputError, GroupError, CalculusError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        stderr.write(f"bicalc: error: {msg}\n")
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
