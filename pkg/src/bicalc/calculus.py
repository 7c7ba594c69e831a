"""Bicovariant first-order calculi on a finite group.

A calculus is fixed by a union ``G'`` of non-trivial conjugacy classes:
the left-invariant one-forms ``theta^g`` with ``g`` in ``G'`` form a basis
of the one-forms.  This module holds that choice, the braiding on pairs
of basis forms, the structure constants ``c`` and ``C`` and the exhaustive
check of the algebraic identities they satisfy.
"""

from __future__ import annotations

import itertools

from .funalg import FunG, delta, tangent_apply
from .group import Group, GroupError, build_group
from .report import Report

__all__ = [
    "CalculusSpec",
    "CalculusError",
    "Braiding",
    "StructureConstants",
    "make_calculus",
    "braiding",
    "structure_constants",
    "differential_function",
    "differential_dx",
    "theta_sum",
    "identity_suite",
]


class CalculusError(ValueError):
    pass


class CalculusSpec:
    """The group together with the ordered set ``G'``.

    ``gprime`` is sorted by element index, which fixes the lex order of
    every monomial basis built on top of it.
    """

    def __init__(self, group: Group, gprime):
        gprime = tuple(sorted(set(gprime)))
        if not gprime:
            raise CalculusError("G' must be non-empty")
        if group.identity in gprime:
            raise CalculusError("the identity cannot carry a one-form")
        gset = set(gprime)
        for g in gprime:
            for h in group:
                if group.adjoint(h, g) not in gset:
                    raise CalculusError(
                        f"G' is not a union of conjugacy classes: "
                        f"ad({group.labels[h]}) {group.labels[g]} is missing"
                    )
        self.group = group
        self.gprime = gprime
        self.dim = len(gprime)
        self.position = {g: i for i, g in enumerate(gprime)}
        self._constants = None
        self._braiding = None
        self._exterior = None

    def __repr__(self):
        labs = ",".join(self.group.labels[g] for g in self.gprime)
        return f"CalculusSpec({self.group.name}, G'={{{labs}}})"

    def __eq__(self, other):
        return (
            isinstance(other, CalculusSpec)
            and self.group == other.group
            and self.gprime == other.gprime
        )

    def __hash__(self):
        return hash((self.group, self.gprime))

    def labels(self, elements) -> list[str]:
        return [self.group.labels[g] for g in elements]

    def monomial(self, labels) -> tuple[int, ...]:
        """Parse a sequence of labels into a monomial of ``G'`` elements."""
        out = tuple(self.group.index(x) for x in labels)
        for g in out:
            if g not in self.position:
                raise CalculusError(f"{self.group.labels[g]} is not in G'")
        return out

    @property
    def constants(self) -> "StructureConstants":
        if self._constants is None:
            self._constants = StructureConstants(self)
        return self._constants

    @property
    def braiding(self) -> "Braiding":
        if self._braiding is None:
            self._braiding = Braiding(self)
        return self._braiding

    def exterior(self, **options):
        """The exterior algebra over this calculus (built lazily, cached)."""
        from .exterior import ExteriorAlgebra

        if self._exterior is None or options:
            alg = ExteriorAlgebra(self, **options)
            if options:
                return alg
            self._exterior = alg
        return self._exterior


def make_calculus(group, class_representatives) -> CalculusSpec:
    """``G'`` = union of the conjugacy classes of the given elements.

    ``class_representatives`` may be labels, indices, a comma-separated
    string, or ``"all"`` for the universal calculus ``G \\ {e}``.
    """
    if not isinstance(group, Group):
        group = build_group(group)
    reps = class_representatives
    if isinstance(reps, str):
        if reps.strip().lower() == "all":
            return CalculusSpec(group, [g for g in group if g != group.identity])
        reps = [r for r in reps.split(",") if r.strip()]
    reps = list(reps)
    if not reps:
        raise CalculusError("at least one class representative is required")
    gprime = set()
    for r in reps:
        try:
            g = group.index(r.strip() if isinstance(r, str) else r)
        except GroupError as exc:
            raise CalculusError(str(exc)) from None
        if g == group.identity:
            raise CalculusError("the identity class cannot be part of G'")
        gprime.update(group.class_of(g))
    return CalculusSpec(group, gprime)


class Braiding:
    """``Lambda(theta^i (x) theta^j) = theta^{i^-1 j i} (x) theta^i``."""

    def __init__(self, spec: CalculusSpec):
        self.spec = spec
        G = spec.group
        self._map = {}
        self._inv = {}
        for i, j in itertools.product(spec.gprime, repeat=2):
            k = G.adjoint(G.inv(i), j)
            if k not in spec.position:  # pragma: no cover - excluded by CalculusSpec
                raise CalculusError("G' not closed under conjugation")
            self._map[i, j] = (k, i)
            self._inv[k, i] = (i, j)

    def apply(self, i: int, j: int) -> tuple[int, int]:
        return self._map[i, j]

    def inverse(self, k: int, l: int) -> tuple[int, int]:
        return self._inv[k, l]

    def entry(self, i, j, k, l) -> int:
        """Matrix element ``Lambda^{ij}_{kl}``: 1 iff ``k = i^-1 j i`` and ``l = i``."""
        return int(self._map[i, j] == (k, l))

    def tables(self):
        """Flat position tables for the kernels: forward and inverse images."""
        pos = self.spec.position
        gp = self.spec.gprime
        d = len(gp)
        lf, ls, jf, js = [], [], [], []
        for a in range(d):
            for b in range(d):
                k, l = self._map[gp[a], gp[b]]
                lf.append(pos[k])
                ls.append(pos[l])
                i, j = self._inv[gp[a], gp[b]]
                jf.append(pos[i])
                js.append(pos[j])
        return lf, ls, jf, js

    def on_triple(self, slot: int, t: tuple) -> tuple:
        """Apply the braiding to positions ``slot, slot+1`` of a tuple."""
        k, l = self._map[t[slot], t[slot + 1]]
        return t[:slot] + (k, l) + t[slot + 2:]

    def braid_relation_holds(self) -> bool:
        for t in itertools.product(self.spec.gprime, repeat=3):
            lhs = self.on_triple(0, self.on_triple(1, self.on_triple(0, t)))
            rhs = self.on_triple(1, self.on_triple(0, self.on_triple(1, t)))
            if lhs != rhs:
                return False
        return True

    def to_document(self) -> list:
        lab = self.spec.group.labels
        return [
            {"upper": [lab[i], lab[j]], "lower": [lab[k], lab[l]], "value": "1"}
            for (i, j), (k, l) in sorted(self._map.items())
        ]


class StructureConstants:
    """The constants of ``t_g t_g' = sum_h c^h_{g,g'} t_h`` and the deformed bracket.

    ``c(h, g, g2)`` is defined for any upper ``h`` in G; ``C(g, g1, g2)``
    for any second lower argument in G, both straight from their delta
    formulas.
    """

    def __init__(self, spec: CalculusSpec):
        self.spec = spec
        self.group = spec.group

    def c(self, h: int, g: int, g2: int) -> int:
        G = self.group
        return (h == G.mul(g2, g)) - (h == g) - (h == g2)

    def C(self, g: int, g1: int, g2: int) -> int:
        G = self.group
        return (g1 == G.adjoint(G.inv(g2), g)) - (g == g1)

    def c_entries(self):
        """Non-zero ``c^h_{g,g'}`` with ``g, g'`` in G' and ``h`` in G."""
        gp = self.spec.gprime
        for h in self.group:
            for g, g2 in itertools.product(gp, repeat=2):
                v = self.c(h, g, g2)
                if v:
                    yield (h, g, g2), v

    def C_entries(self):
        gp = self.spec.gprime
        for g, g1, g2 in itertools.product(gp, repeat=3):
            v = self.C(g, g1, g2)
            if v:
                yield (g, g1, g2), v

    def to_document(self) -> dict:
        lab = self.group.labels

        def rows(entries):
            return [
                {"upper": lab[u], "lower": [lab[a], lab[b]], "value": str(v)}
                for (u, a, b), v in entries
            ]

        return {"c": rows(self.c_entries()), "C": rows(self.C_entries())}


def braiding(spec: CalculusSpec) -> Braiding:
    return spec.braiding


def structure_constants(spec: CalculusSpec) -> StructureConstants:
    return spec.constants


# --------------------------------------------------------------------------
# differentials of functions


def differential_function(spec: CalculusSpec, f: FunG):
    """``df = sum_{h in G'} (t_h f) theta^h`` as a one-form."""
    alg = spec.exterior()
    return alg.form({(h,): tangent_apply(h, f) for h in spec.gprime}, degree=1)


def differential_dx(spec: CalculusSpec, h):
    """``dx^h`` via ``x^{hg} - x^h`` on ``theta^g``, computed from the table."""
    G = spec.group
    h = G.index(h)
    alg = spec.exterior()
    terms = {(g,): delta(G, G.mul(h, g)) - delta(G, h) for g in spec.gprime}
    return alg.form(terms, degree=1)


def theta_sum(spec: CalculusSpec):
    """The bi-invariant one-form ``Theta``, summed over G'."""
    alg = spec.exterior()
    return sum((alg.theta(g) for g in spec.gprime[1:]), alg.theta(spec.gprime[0]))


# --------------------------------------------------------------------------
# identities


def identity_suite(spec: CalculusSpec) -> Report:
    """Check every structure-constant identity exhaustively."""
    G = spec.group
    gp = spec.gprime
    K = spec.constants
    c, C = K.c, K.C
    rep = Report(f"identities {spec!r}")

    def braided(g1, g2):
        # the (g3, g4) with Lambda^{g3 g4}_{g1 g2} = 1
        return g2, G.adjoint(g2, g1)

    bad = [
        (h, g1, g2, g3)
        for h in G
        for g1 in G
        for g2, g3 in itertools.product(gp, repeat=2)
        if c(G.adjoint(h, g1), G.adjoint(h, g2), G.adjoint(h, g3)) != c(g1, g2, g3)
    ]
    rep.add("c_ad_invariance", not bad, _first(bad))

    bad = [
        (h, g1, g2, g3)
        for h in G
        for g1, g2, g3 in itertools.product(gp, repeat=3)
        if C(G.adjoint(h, g1), G.adjoint(h, g2), G.adjoint(h, g3)) != C(g1, g2, g3)
    ]
    rep.add("C_ad_invariance", not bad, _first(bad))

    bad = [
        t
        for t in itertools.product(gp, repeat=3)
        if C(*t) != c(t[0], t[1], t[2]) - c(t[0], *braided(t[1], t[2]))
    ]
    rep.add("C_equals_c_minus_braided_c", not bad, _first(bad))

    bad = [
        (g, g1, g2)
        for g, g1, g2 in itertools.product(gp, repeat=3)
        if C(g, g1, g2) != C(g1, g, G.inv(g2))
    ]
    rep.add("propC", not bad, _first(bad))

    bad = []
    for h1, h2, g1, g2 in itertools.product(gp, repeat=4):
        g3, g4 = braided(g1, g2)
        lhs = sum(C(k, h1, g1) * C(h2, k, g2) - C(k, h1, g3) * C(h2, k, g4) for k in gp)
        rhs = sum(C(k, g1, g2) * C(h2, h1, k) for k in gp)
        if lhs != rhs:
            bad.append((h1, h2, g1, g2))
    rep.add("deformed_jacobi", not bad, _first(bad))

    # h runs over all of G: c^h_{g,g'} can be supported on g'g outside G'
    bad = []
    for h1, h2, g, g2 in itertools.product(gp, repeat=4):
        lhs = sum(C(k, h1, g) * C(h2, k, g2) for k in gp)
        rhs = sum(c(h, g, g2) * C(h2, h1, h) for h in G)
        if lhs != rhs:
            bad.append((h1, h2, g, g2))
    rep.add("fusion", not bad, _first(bad))

    bad = []
    basis = [delta(G, x) for x in G]
    nonunit = [h for h in G if h != G.identity]
    for g, g2 in itertools.product(gp, repeat=2):
        for f in basis:
            lhs = tangent_apply(g, tangent_apply(g2, f))
            rhs = _combo(f, [(c(h, g, g2), h) for h in nonunit])
            if lhs != rhs:
                bad.append((g, g2))
                break
    rep.add("tangent_composition", not bad, _first(bad))

    bad = []
    for g1, g2 in itertools.product(gp, repeat=2):
        g3, g4 = braided(g1, g2)
        for f in basis:
            lhs = tangent_apply(g1, tangent_apply(g2, f)) - tangent_apply(g3, tangent_apply(g4, f))
            rhs = _combo(f, [(C(h, g1, g2), h) for h in gp])
            if lhs != rhs:
                bad.append((g1, g2))
                break
    rep.add("deformed_lie_algebra", not bad, _first(bad))

    rep.add("braid_relation", spec.braiding.braid_relation_holds())
    return rep


def _combo(f: FunG, coeff_elements) -> FunG:
    from .funalg import zero

    out = zero(f.group)
    for k, h in coeff_elements:
        if k:
            out = out + tangent_apply(h, f) * k
    return out


def _first(bad) -> str:
    return f"first failure at {bad[0]}" if bad else ""
