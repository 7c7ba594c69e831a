"""Connections with their curvature and torsion; metrics and gauge maps.

Index conventions: a connection stores ``Gamma^{g1}_{g3,g2}`` keyed as
``(g1, g3, g2)``; the first lower index pairs with the form,
``omega^{g1}_{g2} = sum_{g3} Gamma^{g1}_{g3,g2} theta^{g3}``.  Form
matrices are dicts keyed by ``(row, column)`` element pairs over G'.
"""

from __future__ import annotations

import itertools
import random

from .calculus import CalculusError, CalculusSpec
from .exterior import TensorForm, WedgeForm
from .funalg import FunG, delta, tangent_apply, translate
from .linalg import SingularMatrixError, matrix_inverse, solve_affine
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "GeometryError",
    "Connection",
    "Metric",
    "GaugeMap",
    "TorsionlessFamily",
    "parallelizing_connection",
    "solve_torsionless",
    "random_connection",
    "connection_forms",
    "curvature",
    "curvature_of_forms",
    "torsion",
    "covariant_derivative",
    "gauge_transform",
    "metric_build",
    "lower_index",
    "adjoint_gauge",
    "lie_derivative",
    "contraction",
]


class GeometryError(CalculusError):
    pass


class Connection:
    """Constant connection coefficients over G'^3 (zeros are not stored)."""

    def __init__(self, spec: CalculusSpec, gamma=None):
        self.spec = spec
        out = {}
        for key, v in (gamma or {}).items():
            g1, g3, g2 = key
            for g in key:
                if g not in spec.position:
                    raise GeometryError(f"connection index {spec.group.labels[g]} is not in G'")
            v = as_scalar(v)
            if v:
                out[g1, g3, g2] = v
        self.gamma = out

    def __call__(self, g1, g3, g2) -> Scalar:
        return self.gamma.get((g1, g3, g2), ZERO)

    def __eq__(self, other):
        return isinstance(other, Connection) and self.spec == other.spec and self.gamma == other.gamma

    def __repr__(self):
        return f"Connection({len(self.gamma)} nonzero entries)"

    def __add__(self, other):
        out = dict(self.gamma)
        for k, v in other.gamma.items():
            out[k] = out.get(k, ZERO) + v
        return Connection(self.spec, out)

    def scaled(self, s) -> "Connection":
        s = as_scalar(s)
        return Connection(self.spec, {k: v * s for k, v in self.gamma.items()})

    def is_ad_invariant(self) -> bool:
        G = self.spec.group
        return all(
            self(G.adjoint(h, g1), G.adjoint(h, g3), G.adjoint(h, g2)) == self(g1, g3, g2)
            for h in G
            for g1, g3, g2 in itertools.product(self.spec.gprime, repeat=3)
        )

    def to_document(self) -> list:
        lab = self.spec.group.labels
        return [
            {"upper": lab[g1], "lower": [lab[g3], lab[g2]], "value": str(v)}
            for (g1, g3, g2), v in sorted(self.gamma.items())
        ]

    @classmethod
    def from_document(cls, spec: CalculusSpec, doc) -> "Connection":
        if isinstance(doc, dict):
            doc = doc.get("entries", doc.get("gamma"))
        if not isinstance(doc, list):
            raise GeometryError("connection document must be a list of entries")
        G = spec.group
        gamma = {}
        for entry in doc:
            try:
                g1 = G.index(entry["upper"])
                g3, g2 = (G.index(x) for x in entry["lower"])
                v = as_scalar(entry["value"])
            except (KeyError, TypeError, ValueError) as exc:
                raise GeometryError(f"bad connection entry {entry!r}: {exc}") from None
            key = (g1, g3, g2)
            gamma[key] = gamma.get(key, ZERO) + v
        return cls(spec, gamma)


def parallelizing_connection(spec: CalculusSpec) -> Connection:
    """``Gamma^{g1}_{g2,g3} = C^{g1}_{g3,g2^-1}``; C is evaluated by its delta formula."""
    G = spec.group
    K = spec.constants
    gamma = {}
    for g1, f, a in itertools.product(spec.gprime, repeat=3):
        v = K.C(g1, a, G.inv(f))
        if v:
            gamma[g1, f, a] = Scalar(v)
    return Connection(spec, gamma)


def random_connection(spec: CalculusSpec, rng: random.Random, bound: int = 3,
                      density: float = 0.5) -> Connection:
    gamma = {}
    for key in itertools.product(spec.gprime, repeat=3):
        if rng.random() < density:
            gamma[key] = Scalar(rng.randint(-bound, bound), rng.randint(-1, 1))
    return Connection(spec, gamma)


class TorsionlessFamily:
    """Affine space ``particular + span(kernel)`` of torsion-free connections."""

    def __init__(self, spec, particular: Connection, kernel: list[Connection]):
        self.spec = spec
        self.particular = particular
        self.kernel = kernel

    @property
    def dimension(self) -> int:
        return len(self.kernel)

    def member(self, coefficients) -> Connection:
        out = self.particular
        for c, k in zip(coefficients, self.kernel):
            out = out + k.scaled(c)
        return out

    def to_document(self) -> dict:
        return {
            "particular": self.particular.to_document(),
            "kernel": [k.to_document() for k in self.kernel],
        }


def solve_torsionless(spec: CalculusSpec) -> TorsionlessFamily | None:
    """Solve ``Gamma^{g1}_{g2,g3} - Gamma^{g1}_{g3, g3 g2 g3^-1} = C^{g1}_{g2,g3}``.

    Returns ``None`` when the system has no solution.
    """
    G = spec.group
    K = spec.constants
    unknowns = list(itertools.product(spec.gprime, repeat=3))
    equations = []
    for g1, g2, g3 in unknowns:
        coeffs = {}
        a = (g1, g2, g3)
        b = (g1, g3, G.adjoint(g3, g2))
        coeffs[a] = coeffs.get(a, 0) + 1
        coeffs[b] = coeffs.get(b, 0) - 1
        equations.append((coeffs, K.C(g1, g2, g3)))
    solved = solve_affine(equations, unknowns)
    if solved is None:
        return None
    particular, kernel = solved
    return TorsionlessFamily(
        spec,
        Connection(spec, {k: Scalar(v) for k, v in particular.items()}),
        [Connection(spec, {k: Scalar(v) for k, v in vec.items()}) for vec in kernel],
    )


# -- connection forms, curvature, torsion -----------------------------------


def connection_forms(spec: CalculusSpec, conn: Connection) -> dict:
    """``omega[(g1, g2)] = sum_{g3} Gamma^{g1}_{g3,g2} theta^{g3}``."""
    alg = spec.exterior()
    omega = {key: alg.zero(1) for key in itertools.product(spec.gprime, repeat=2)}
    acc: dict = {}
    for (g1, g3, g2), v in conn.gamma.items():
        acc.setdefault((g1, g2), {})[(g3,)] = v
    for key, terms in acc.items():
        omega[key] = alg.form(terms, 1)
    return omega


def curvature_of_forms(spec: CalculusSpec, omega: dict) -> dict:
    """``R = d omega + omega ^ omega`` for any matrix of one-forms."""
    gp = spec.gprime
    out = {}
    for g1, g2 in itertools.product(gp, repeat=2):
        r = omega[g1, g2].d()
        for g3 in gp:
            r = r + (omega[g1, g3] ^ omega[g3, g2])
        out[g1, g2] = r
    return out


def _expanded_curvature(spec, conn):
    """Tensor coefficients ``X[g1,g2][(g3,g4)]`` of the expanded formula."""
    gp = spec.gprime
    K = spec.constants
    out = {}
    for g1, g2 in itertools.product(gp, repeat=2):
        x = {}
        for g3, g4 in itertools.product(gp, repeat=2):
            v = ZERO
            for h in gp:
                c = K.c(h, g3, g4)
                if c:
                    v = v - conn(g1, h, g2) * c
                v = v + conn(g1, g3, h) * conn(h, g4, g2)
            if v:
                x[g3, g4] = v
        out[g1, g2] = x
    return out


def curvature(spec: CalculusSpec, conn: Connection, check: bool = True) -> dict:
    """Curvature two-forms, cross-checked against the expanded formula.

    The check runs twice: once after reduction to the wedge basis and once
    in the tensor space, where ``sum X_{kl} theta^k ^ theta^l`` embeds with
    coefficient ``X_{kl} - X_{l, l k l^-1}`` on ``theta^k (x) theta^l``.
    """
    alg = spec.exterior()
    braid = spec.braiding
    R = curvature_of_forms(spec, connection_forms(spec, conn))
    if not check:
        return R
    for key, x in _expanded_curvature(spec, conn).items():
        if alg.form(x, 2) != R[key]:
            raise GeometryError(f"curvature mismatch at {spec.labels(key)}: definition vs expanded")
        tensor = {}
        for (k, l), v in x.items():
            tensor[k, l] = tensor.get((k, l), ZERO) + v
            bk = braid.apply(k, l)
            tensor[bk] = tensor.get(bk, ZERO) - v
        tensor = {m: v for m, v in tensor.items() if v}
        if TensorForm.from_terms(alg, tensor, 2) != R[key].embed():
            raise GeometryError(f"curvature mismatch at {spec.labels(key)}: tensor embedding")
    return R


def torsion(spec: CalculusSpec, conn: Connection, check: bool = True) -> dict:
    """``T^{g1} = d theta^{g1} + omega^{g1}_{g2} ^ theta^{g2}``."""
    alg = spec.exterior()
    gp = spec.gprime
    omega = connection_forms(spec, conn)
    K = spec.constants
    out = {}
    for g1 in gp:
        t = alg.theta(g1).d()
        for g2 in gp:
            t = t + (omega[g1, g2] ^ alg.theta(g2))
        if check:
            x = {}
            for g2, g3 in itertools.product(gp, repeat=2):
                v = conn(g1, g2, g3) - K.c(g1, g2, g3)
                if v:
                    x[g2, g3] = v
            if alg.form(x, 2) != t:
                raise GeometryError(f"torsion mismatch at {spec.group.labels[g1]}")
        out[g1] = t
    return out


def covariant_derivative(spec: CalculusSpec, conn: Connection, rho: WedgeForm) -> TensorForm:
    """``nabla(f theta^g) = df (x) theta^g - f omega^g_{g'} (x) theta^{g'}``."""
    if rho.degree != 1:
        raise GeometryError("covariant_derivative takes a one-form")
    alg = rho.alg
    gp = spec.gprime
    out = TensorForm(alg, 2, {})
    for (g,), f in rho.terms.items():
        terms = {}
        for h in gp:
            tf = tangent_apply(h, f)
            if tf:
                terms[h, g] = tf
        for g3, g2 in itertools.product(gp, repeat=2):
            v = conn(g, g3, g2)
            if v:
                key = (g3, g2)
                cur = terms.get(key)
                add = f * (-v)
                terms[key] = add if cur is None else cur + add
        out = out + TensorForm.from_terms(alg, terms, 2)
    return out


# -- gauge maps -------------------------------------------------------------


class GaugeMap:
    """A field of invertible matrices ``a^i_j(g)`` over G'."""

    def __init__(self, spec: CalculusSpec, matrices):
        self.spec = spec
        G = spec.group
        n = spec.dim
        mats = []
        for m in matrices:
            if len(m) != n or any(len(row) != n for row in m):
                raise GeometryError(f"gauge matrices must be {n}x{n}")
            mats.append([[as_scalar(x) for x in row] for row in m])
        if len(mats) != G.order:
            raise GeometryError(f"need one matrix per group element ({G.order})")
        self.matrices = mats
        self._inverse = None

    @classmethod
    def constant(cls, spec, matrix) -> "GaugeMap":
        return cls(spec, [matrix] * spec.group.order)

    @classmethod
    def identity(cls, spec) -> "GaugeMap":
        n = spec.dim
        return cls.constant(spec, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def inverse(self) -> "GaugeMap":
        if self._inverse is None:
            inv = []
            for g, m in enumerate(self.matrices):
                try:
                    inv.append(matrix_inverse(m, ONE, ZERO))
                except SingularMatrixError:
                    raise GeometryError(
                        f"gauge matrix is singular at {self.spec.group.labels[g]}"
                    ) from None
            self._inverse = GaugeMap(self.spec, inv)
            self._inverse._inverse = self
        return self._inverse

    def entry(self, i, j) -> FunG:
        """The function ``g -> a^i_j(g)`` for elements ``i, j`` of G'."""
        p, q = self.spec.position[i], self.spec.position[j]
        return FunG(self.spec.group, [m[p][q] for m in self.matrices])

    def at(self, g) -> list:
        return self.matrices[self.spec.group.index(g)]


def gauge_transform(spec: CalculusSpec, conn: Connection, a: GaugeMap):
    """``omega' = a omega a^-1 + a d(a^-1)`` and its curvature."""
    alg = spec.exterior()
    gp = spec.gprime
    ainv = a.inverse()
    omega = connection_forms(spec, conn)
    A = {(i, j): a.entry(i, j) for i, j in itertools.product(gp, repeat=2)}
    B = {(i, j): ainv.entry(i, j) for i, j in itertools.product(gp, repeat=2)}
    dB = {key: alg.function(f).d() for key, f in B.items()}
    new = {}
    for i, j in itertools.product(gp, repeat=2):
        w = alg.zero(1)
        for k in gp:
            if A[i, k]:
                inner = alg.zero(1)
                for l in gp:
                    if omega[k, l] and B[l, j]:
                        inner = inner + omega[k, l] * B[l, j]
                w = w + A[i, k] * (inner + dB[k, j])
        new[i, j] = w
    return new, curvature_of_forms(spec, new)


def conjugate_forms(spec, a: GaugeMap, forms: dict) -> dict:
    """``a F a^-1`` for a matrix of forms, functions crossing to the left."""
    gp = spec.gprime
    ainv = a.inverse()
    out = {}
    for i, j in itertools.product(gp, repeat=2):
        acc = None
        for k, l in itertools.product(gp, repeat=2):
            f = forms[k, l]
            if not f:
                continue
            aik, blj = a.entry(i, k), ainv.entry(l, j)
            if not aik or not blj:
                continue
            term = aik * (f * blj)
            acc = term if acc is None else acc + term
        out[i, j] = acc if acc is not None else spec.exterior().zero(forms[gp[0], gp[0]].degree)
    return out


# -- metrics ------------------------------------------------------------------


class Metric:
    """Constant ``gamma_{ij}`` over G' (a dense matrix in G' order)."""

    def __init__(self, spec: CalculusSpec, matrix):
        n = spec.dim
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise GeometryError(f"metric must be a {n}x{n} matrix")
        self.spec = spec
        self.matrix = [[as_scalar(x) for x in row] for row in matrix]

    def __call__(self, i, j) -> Scalar:
        pos = self.spec.position
        return self.matrix[pos[i]][pos[j]]

    def is_biinvariant(self) -> bool:
        G = self.spec.group
        gp = self.spec.gprime
        return all(
            self(G.adjoint(h, i), G.adjoint(h, j)) == self(i, j)
            for h in G
            for i, j in itertools.product(gp, repeat=2)
        )

    def to_document(self) -> list:
        return [[str(x) for x in row] for row in self.matrix]

    @classmethod
    def from_document(cls, spec, doc) -> "Metric":
        if isinstance(doc, dict):
            doc = doc.get("matrix")
        if not isinstance(doc, list):
            raise GeometryError("metric document must be a matrix of scalar strings")
        for row in doc:
            if not isinstance(row, list):
                raise GeometryError("metric rows must be lists")
            for x in row:
                if not isinstance(x, (str, int)):
                    raise GeometryError("metric entries must be constants")
        return cls(spec, doc)


def metric_build(spec: CalculusSpec, kind: str = "delta", matrix=None) -> Metric:
    """``delta``, ``cc`` (``gamma_ij = C^k_{l,i} C^l_{k,j}``) or a custom matrix."""
    gp = spec.gprime
    if kind == "delta":
        return Metric(spec, [[ONE if i == j else ZERO for j in gp] for i in gp])
    if kind == "cc":
        K = spec.constants
        rows = []
        for i in gp:
            row = []
            for j in gp:
                row.append(Scalar(sum(K.C(k, l, i) * K.C(l, k, j)
                                      for k, l in itertools.product(gp, repeat=2))))
            rows.append(row)
        return Metric(spec, rows)
    if kind == "custom":
        if matrix is None:
            raise GeometryError("a custom metric needs a matrix")
        if isinstance(matrix, Metric):
            return matrix
        return Metric.from_document(spec, matrix)
    raise GeometryError(f"unknown metric kind {kind!r}")


def lower_index(metric: Metric, phi) -> list:
    """``phi_i = sum_k phi^k gamma_{k,i}`` with components in G' order."""
    n = metric.spec.dim
    phi = [as_scalar(x) for x in phi]
    if len(phi) != n:
        raise GeometryError(f"vector must have {n} components")
    return [sum((phi[k] * metric.matrix[k][i] for k in range(n)), ZERO) for i in range(n)]


def adjoint_gauge(spec: CalculusSpec, alpha) -> GaugeMap:
    """``a^h_{h'}(g) = delta^{ad(alpha(g)) h}_{h'}``; ``alpha`` maps G to G."""
    G = spec.group
    gp = spec.gprime
    if callable(alpha):
        images = [G.index(alpha(g)) for g in G]
    else:
        images = [G.index(x) for x in alpha]
    if len(images) != G.order:
        raise GeometryError("alpha must be defined on every group element")
    mats = []
    for g in G:
        x = images[g]
        mats.append([[ONE if G.adjoint(x, h) == h2 else ZERO for h2 in gp] for h in gp])
    return GaugeMap(spec, mats)


def metric_invariant_under(metric: Metric, a: GaugeMap) -> bool:
    """Pointwise ``a^T gamma a == gamma``."""
    n = metric.spec.dim
    gam = metric.matrix
    for m in a.matrices:
        for p, q in itertools.product(range(n), repeat=2):
            s = ZERO
            for h, k in itertools.product(range(n), repeat=2):
                if m[h][p] and m[k][q]:
                    s = s + m[h][p] * gam[h][k] * m[k][q]
            if s != gam[p][q]:
                return False
    return True


# -- Lie derivative and contraction -----------------------------------------


def lie_derivative(spec: CalculusSpec, g, T):
    """``l_{t_g} T = R_{g^-1} T - T``."""
    G = spec.group
    g = G.index(g)
    if g == G.identity:
        raise GeometryError("the Lie derivative along t_e is undefined")
    ginv = G.inv(g)
    if isinstance(T, FunG):
        return translate("right", ginv, T) - T
    if isinstance(T, (WedgeForm, TensorForm)):
        return T.act("right", ginv) - T
    raise TypeError(f"cannot take a Lie derivative of {type(T).__name__}")


def contraction(spec: CalculusSpec, g, w):
    """``i_{t_g}`` on functions (zero) and one-forms (the theta^g coefficient)."""
    G = spec.group
    g = G.index(g)
    if g not in spec.position:
        raise GeometryError(f"{G.labels[g]} is not in G'")
    if isinstance(w, FunG):
        return FunG(G, [ZERO] * G.order)
    if w.degree == 0:
        return FunG(G, [ZERO] * G.order)
    if w.degree == 1:
        return w.coefficient((g,))
    raise GeometryError("contraction is only supported on forms of degree 0 and 1")


def delta_basis(spec: CalculusSpec):
    return [delta(spec.group, g) for g in spec.group]
