"""Haar functional and integration of top-degree forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .calculus import CalculusError, CalculusSpec
from .exterior import EpsilonTensor, WedgeForm, volume_and_epsilon
from .funalg import FunG, delta
from .linalg import IncrementalBasis
from .report import Report
from .scalar import ZERO, Scalar

__all__ = [
    "IntegralResult",
    "haar",
    "integrate_top",
    "stokes_check",
    "cohomology_check",
]


@dataclass(frozen=True)
class IntegralResult:
    value: Scalar
    contributions: tuple  # one Scalar per group element

    def __eq__(self, other):
        if isinstance(other, IntegralResult):
            return self.value == other.value
        return self.value == other


def haar(f: FunG) -> Scalar:
    """``h(f) = sum_g f(g)``."""
    return sum(f.values, ZERO)


def _eps(spec, eps):
    return eps if eps is not None else volume_and_epsilon(spec)


def integrate_top(spec: CalculusSpec, w: WedgeForm, eps: EpsilonTensor | None = None) -> IntegralResult:
    """``int w = sum_g sum_I w_I(g) eps(I)`` over the reduced terms of ``w``."""
    eps = _eps(spec, eps)
    if w.degree != eps.degree:
        raise CalculusError(f"only forms of top degree {eps.degree} can be integrated")
    G = spec.group
    contrib = [ZERO] * G.order
    for mono, f in w.terms.items():
        e = eps(mono)
        if not e:
            continue
        for g in G:
            if f.values[g]:
                contrib[g] = contrib[g] + f.values[g] * e
    return IntegralResult(sum(contrib, ZERO), tuple(contrib))


def stokes_check(spec: CalculusSpec, u: WedgeForm, eps: EpsilonTensor | None = None) -> Scalar:
    """``int du``; zero whenever the top cohomology assumption holds."""
    return integrate_top(spec, u.d(), eps).value


def cohomology_check(spec: CalculusSpec, eps: EpsilonTensor | None = None):
    """Check that every (p-1)-monomial is closed and that vol is not exact.

    Returns ``(report, document)``.
    """
    alg = spec.exterior()
    eps = _eps(spec, eps)
    p = eps.degree
    G = spec.group
    lab = G.labels
    top = alg.space(p)
    (b,) = top.basis
    rep = Report("cohomology")
    if p == 0:
        raise CalculusError("the top degree is 0; there is nothing to integrate")

    # (i) d of constant (p-1)-monomials
    bad = [m for m in itertools.product(spec.gprime, repeat=p - 1) if alg.d_monomial_constant(m)]
    rep.add(
        "closed_monomials",
        not bad,
        "" if not bad else "d of " + "^".join(lab[g] for g in bad[0]) + " is not zero",
    )

    # (ii) vol outside the image of d on (p-1)-forms with function coefficients
    lower = alg.space(p - 1)
    image = IncrementalBasis()
    for g, I in itertools.product(G, lower.basis):
        out = alg.form({I: delta(G, g)}, p - 1).d()
        vec = {x: v for x, v in enumerate(out.coefficient(b).values) if v}
        image.add((g, I), vec)
    scale = top.reduce(eps.vol)[b]
    vol_vec = {x: Scalar(scale) for x in range(G.order)}
    exact = image.contains(vol_vec)
    rep.add(
        "vol_not_exact",
        not exact,
        f"rank of d: {len(image)} from {G.order * lower.dimension} to {G.order}",
    )

    # Stokes on delta-coefficient (p-1)-forms
    first = ZERO
    for g, I in itertools.product(G, lower.basis):
        val = stokes_check(spec, alg.form({I: delta(G, g)}, p - 1), eps)
        if val:
            first = val
            break
    rep.add("stokes", not first, "" if not first else f"int d(u) = {first}")

    doc = {
        "top_degree": p,
        "vol": [lab[g] for g in eps.vol],
        "stokes": str(first),
        "cohomology": {"closed": not bad, "vol_exact": exact},
    }
    return rep, doc
