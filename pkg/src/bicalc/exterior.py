"""The braided exterior algebra of a bicovariant calculus.

Degree-``p`` forms with constant coefficients are the image of the braided
antisymmetrizer ``A_p`` acting on the tensor space ``G'^p``.  A monomial
``theta^{g1} ^ ... ^ theta^{gp}`` is identified with ``A_p(g1, ..., gp)``;
two combinations of monomials are equal iff their images agree.  The
tensor space splits into braid-group orbits, and ``A_p`` maps each orbit
into itself, so the rank computation runs orbit by orbit.

General forms carry function coefficients written to the left of the
monomial.  Moving a function to the left across ``theta^g`` uses
``theta^g f = (R_{g^-1} f) theta^g``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from . import kernels
from .calculus import CalculusError, CalculusSpec
from .funalg import FunG, tangent_apply, translate, unit
from .funalg import zero as zero_function
from .linalg import IncrementalBasis
from .scalar import Scalar, as_scalar

__all__ = [
    "DEFAULT_CAP",
    "DEFAULT_MAX_MONOMIALS",
    "WedgeCapError",
    "WedgeSpace",
    "ExteriorAlgebra",
    "WedgeForm",
    "TensorForm",
    "EpsilonTensor",
    "wedge_space",
    "reduce_monomial",
    "wedge_product",
    "exterior_derivative",
    "cartan_maurer",
    "act_on_form",
    "volume_and_epsilon",
]

DEFAULT_CAP = 12
# largest |G'|^p tensor space built without an explicit override
DEFAULT_MAX_MONOMIALS = 20_000


class WedgeCapError(CalculusError):
    """The degree cap or monomial budget was hit before the forms ran out."""

    def __init__(self, message, dims=()):
        super().__init__(message)
        self.dims = list(dims)


class WedgeSpace:
    """Reduction data for one degree.

    ``basis`` holds the pivot monomials (lex-earliest independent images),
    ``reduce(m)`` rewrites any monomial in that basis.
    """

    def __init__(self, alg: "ExteriorAlgebra", degree: int, basis, reduction):
        self.alg = alg
        self.degree = degree
        self.basis = tuple(basis)
        self.dimension = len(self.basis)
        self._reduction = reduction
        self._basis_set = frozenset(self.basis)

    def __repr__(self):
        return f"WedgeSpace(degree={self.degree}, dimension={self.dimension})"

    def reduce(self, mono) -> dict:
        """``{basis monomial: Fraction}`` equal to ``mono`` in this degree."""
        mono = tuple(mono)
        if len(mono) != self.degree:
            raise ValueError(f"monomial {mono} does not have degree {self.degree}")
        if self.dimension == 0:
            return {}
        try:
            return dict(self._reduction[mono])
        except KeyError:
            raise CalculusError(f"{mono} is not a monomial over G'") from None

    def is_basis(self, mono) -> bool:
        return tuple(mono) in self._basis_set

    def embed(self, mono) -> dict:
        """Tensor image ``A_p(mono)`` as ``{tensor monomial: int}``."""
        return self.alg.antisymmetrize(mono)

    def monomials(self):
        return itertools.product(self.alg.spec.gprime, repeat=self.degree)


class ExteriorAlgebra:
    """Lazily built wedge spaces plus the operations on forms."""

    def __init__(self, spec: CalculusSpec, cap: int = DEFAULT_CAP,
                 max_monomials: int = DEFAULT_MAX_MONOMIALS):
        self.spec = spec
        self.group = spec.group
        self.cap = cap
        self.max_monomials = max_monomials
        self._spaces: dict[int, WedgeSpace] = {}
        self._tables = spec.braiding.tables()
        self._d_const: dict[tuple, dict] = {}
        self._antisym_memo: dict = {}
        K = spec.constants
        # d theta^g = - sum c^g_{g1,g2} theta^{g1} theta^{g2}
        self._dtheta = {
            g: [
                (g1, g2, -K.c(g, g1, g2))
                for g1, g2 in itertools.product(spec.gprime, repeat=2)
                if K.c(g, g1, g2)
            ]
            for g in spec.gprime
        }

    def __repr__(self):
        return f"ExteriorAlgebra({self.spec!r})"

    # -- spaces ---------------------------------------------------------

    def space(self, p: int) -> WedgeSpace:
        if p < 0:
            raise ValueError("negative degree")
        sp = self._spaces.get(p)
        if sp is not None:
            return sp
        for q in range(p):
            if q in self._spaces and self._spaces[q].dimension == 0:
                return self._store(WedgeSpace(self, p, (), {}))
        if p <= 1:
            if p == 0:
                basis = [()]
            else:
                basis = [(g,) for g in self.spec.gprime]
            red = {m: ((m, Fraction(1)),) for m in basis}
            return self._store(WedgeSpace(self, p, basis, red))
        # the ideal property: once a degree vanishes all higher ones do
        if p - 1 not in self._spaces:
            self.space(p - 1)
            return self.space(p)
        if p > self.cap:
            raise WedgeCapError(
                f"degree {p} exceeds the cap {self.cap} before the forms vanished",
                self._known_dims(),
            )
        size = self.spec.dim ** p
        if size > self.max_monomials:
            raise WedgeCapError(
                f"degree {p} needs {size} monomials, over the budget of {self.max_monomials}",
                self._known_dims(),
            )
        return self._store(self._build(p))

    def _store(self, sp):
        self._spaces[sp.degree] = sp
        return sp

    def _known_dims(self):
        out = []
        for q in itertools.count():
            if q not in self._spaces:
                return out
            out.append(self._spaces[q].dimension)

    def _build(self, p: int) -> WedgeSpace:
        d = self.spec.dim
        gp = self.spec.gprime
        lf, ls, jf, js = self._tables
        labels = kernels.braid_orbits(lf, ls, jf, js, d, p)
        order = np.argsort(labels, kind="stable")
        bounds = np.flatnonzero(np.diff(labels[order])) + 1
        local = np.empty(d ** p, dtype=np.int32)
        pw = [d ** (p - 1 - k) for k in range(p)]

        def mono_of(code):
            return tuple(gp[(code // w) % d] for w in pw)

        basis = []
        reduction = {}
        for codes in np.split(order, bounds):
            codes = np.sort(codes).astype(np.int64)
            local[codes] = np.arange(len(codes), dtype=np.int32)
            rows, cols, vals = kernels.antisym_block(lf, ls, d, p, codes, local)
            starts = np.searchsorted(rows, np.arange(len(codes) + 1))
            monos = [mono_of(int(c)) for c in codes]
            inc = IncrementalBasis(fast=True)
            for r, mono in enumerate(monos):
                lo, hi = starts[r], starts[r + 1]
                if lo == hi:
                    reduction[mono] = ()
                    continue
                image = dict(zip(cols[lo:hi].tolist(), vals[lo:hi].tolist()))
                combo = inc.add(r, image)
                if combo is None:
                    basis.append(mono)
                    reduction[mono] = ((mono, Fraction(1)),)
                else:
                    reduction[mono] = tuple(
                        (monos[t], _to_fraction(v)) for t, v in sorted(combo.items()) if v
                    )
        basis.sort()
        return WedgeSpace(self, p, basis, reduction)

    def dims(self, max_degree: int | None = None) -> list[int]:
        """Dimensions by degree until they vanish.

        With ``max_degree`` the scan stops there even if forms remain;
        without it, :class:`WedgeCapError` is raised at the cap or budget.
        """
        out = []
        for p in itertools.count():
            if max_degree is not None and p > max_degree:
                return out
            try:
                dim = self.space(p).dimension
            except WedgeCapError as exc:
                exc.dims = out
                raise
            out.append(dim)
            if dim == 0:
                return out

    def top_degree(self) -> int:
        dims = self.dims()
        return len(dims) - 2

    def antisymmetrize(self, mono) -> dict:
        """Tensor image of a monomial under the braided antisymmetrizer."""
        pos = self.spec.position
        gp = self.spec.gprime
        lf, ls, _, _ = self._tables
        image = kernels.python_backend.antisymmetrize(
            lf, ls, self.spec.dim, tuple(pos[g] for g in mono), self._antisym_memo
        )
        return {tuple(gp[i] for i in m): v for m, v in sorted(image.items())}

    def reduce(self, mono) -> dict:
        return self.space(len(mono)).reduce(mono)

    # -- building forms -------------------------------------------------

    def _coerce_coeff(self, value) -> FunG:
        if isinstance(value, FunG):
            return value
        return unit(self.group) * as_scalar(value)

    def form(self, terms, degree: int | None = None) -> "WedgeForm":
        """Form from ``{monomial: coefficient}``; monomials are reduced."""
        terms = dict(terms)
        if degree is None:
            if not terms:
                raise ValueError("degree is required for an empty form")
            degree = len(next(iter(terms)))
        sp = self.space(degree)
        out: dict = {}
        for mono, coeff in terms.items():
            mono = tuple(mono)
            if len(mono) != degree:
                raise ValueError(f"monomial {mono} is not of degree {degree}")
            f = self._coerce_coeff(coeff)
            if not f:
                continue
            for b, k in sp.reduce(mono).items():
                _acc(out, b, f * k)
        return WedgeForm(self, degree, out)

    def zero(self, degree: int) -> "WedgeForm":
        return WedgeForm(self, degree, {})

    def function(self, f) -> "WedgeForm":
        return self.form({(): self._coerce_coeff(f)}, 0)

    def theta(self, g) -> "WedgeForm":
        g = self.group.index(g)
        if g not in self.spec.position:
            raise CalculusError(f"{self.group.labels[g]} is not in G'")
        return self.form({(g,): 1}, 1)

    def monomial(self, mono, coeff=1) -> "WedgeForm":
        mono = tuple(self.group.index(g) for g in mono)
        return self.form({mono: coeff}, len(mono))

    def cross(self, f: FunG, mono) -> FunG:
        """The function ``f'`` with ``theta^mono f = f' theta^mono``."""
        G = self.group
        k = G.identity
        for g in mono:
            k = G.mul(k, G.inv(g))
        if k == G.identity:
            return f
        return translate("right", k, f)

    def d_theta(self, g) -> "WedgeForm":
        g = self.group.index(g)
        return self.form({(g1, g2): v for g1, g2, v in self._dtheta[g]}, 2)

    def d_monomial_constant(self, mono) -> dict:
        """``d`` of a constant-coefficient monomial, reduced, as ``{basis: Fraction}``."""
        mono = tuple(mono)
        hit = self._d_const.get(mono)
        if hit is not None:
            return hit
        p = len(mono)
        target = self.space(p + 1)
        out: dict = {}
        for k, g in enumerate(mono):
            sign = -1 if k % 2 else 1
            for g1, g2, v in self._dtheta[g]:
                new = mono[:k] + (g1, g2) + mono[k + 1:]
                for b, coef in target.reduce(new).items():
                    x = out.get(b, 0) + sign * v * coef
                    if x:
                        out[b] = x
                    else:
                        out.pop(b, None)
        self._d_const[mono] = out
        return out


def _to_fraction(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def _acc(out: dict, key, f: FunG):
    cur = out.get(key)
    new = f if cur is None else cur + f
    if new:
        out[key] = new
    else:
        out.pop(key, None)


class WedgeForm:
    """A degree-``p`` form ``sum f_I theta^I`` over basis monomials ``I``."""

    __slots__ = ("alg", "degree", "terms")

    def __init__(self, alg: ExteriorAlgebra, degree: int, terms: dict):
        self.alg = alg
        self.degree = degree
        self.terms = terms

    # -- structure ------------------------------------------------------

    def __repr__(self):
        return f"WedgeForm(degree={self.degree}, {self.describe()})"

    def describe(self) -> str:
        lab = self.alg.group.labels
        if not self.terms:
            return "0"
        parts = []
        for mono, f in sorted(self.terms.items()):
            m = "^".join(f"th{lab[g]}" for g in mono) or "1"
            parts.append(f"{f.to_document()}*{m}")
        return " + ".join(parts)

    def coefficient(self, mono) -> FunG:
        mono = tuple(self.alg.group.index(g) for g in mono)
        return self.terms.get(mono, zero_function(self.alg.group))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, WedgeForm):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def _same(self, other):
        if not isinstance(other, WedgeForm):
            raise TypeError(f"expected a WedgeForm, got {type(other).__name__}")
        if other.degree != self.degree:
            raise ValueError(f"degrees differ: {self.degree} and {other.degree}")
        if other.alg.spec != self.alg.spec:
            raise ValueError("forms belong to different calculi")

    # -- linear structure -----------------------------------------------

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        out = dict(self.terms)
        for m, f in other.terms.items():
            _acc(out, m, f)
        return WedgeForm(self.alg, self.degree, out)

    __radd__ = __add__

    def __sub__(self, other):
        self._same(other)
        return self + (-other)

    def __neg__(self):
        return WedgeForm(self.alg, self.degree, {m: -f for m, f in self.terms.items()})

    def __rmul__(self, other):
        """Left multiplication by a scalar or a function."""
        if isinstance(other, FunG):
            out = {}
            for m, f in self.terms.items():
                _acc(out, m, other * f)
            return WedgeForm(self.alg, self.degree, out)
        try:
            s = as_scalar(other)
        except TypeError:
            return NotImplemented
        if not s:
            return self.alg.zero(self.degree)
        return WedgeForm(self.alg, self.degree, {m: f * s for m, f in self.terms.items()})

    def __mul__(self, other):
        """Right multiplication; a function is moved left across the monomials."""
        if isinstance(other, FunG):
            out = {}
            for m, f in self.terms.items():
                _acc(out, m, f * self.alg.cross(other, m))
            return WedgeForm(self.alg, self.degree, out)
        if isinstance(other, WedgeForm):
            return NotImplemented
        return self.__rmul__(other)

    # -- algebra ----------------------------------------------------------

    def wedge(self, other: "WedgeForm") -> "WedgeForm":
        if other.alg.spec != self.alg.spec:
            raise ValueError("forms belong to different calculi")
        alg = self.alg
        deg = self.degree + other.degree
        sp = alg.space(deg)
        out: dict = {}
        for m1, f1 in self.terms.items():
            for m2, f2 in other.terms.items():
                coeff = f1 * alg.cross(f2, m1)
                if not coeff:
                    continue
                for b, k in sp.reduce(m1 + m2).items():
                    _acc(out, b, coeff * k)
        return WedgeForm(alg, deg, out)

    __xor__ = wedge

    def d(self) -> "WedgeForm":
        """Exterior derivative: ``d(f theta^I) = df ^ theta^I + f d theta^I``."""
        alg = self.alg
        deg = self.degree + 1
        sp = alg.space(deg)
        out: dict = {}
        for mono, f in self.terms.items():
            for h in alg.spec.gprime:
                tf = tangent_apply(h, f)
                if not tf:
                    continue
                for b, k in sp.reduce((h,) + mono).items():
                    _acc(out, b, tf * k)
            for b, k in alg.d_monomial_constant(mono).items():
                _acc(out, b, f * k)
        return WedgeForm(alg, deg, out)

    def act(self, side: str, h) -> "WedgeForm":
        """Left or right group action on the form."""
        alg = self.alg
        G = alg.group
        h = G.index(h)
        if side == "left":
            out = {}
            for m, f in self.terms.items():
                _acc(out, m, translate("left", h, f))
            return WedgeForm(alg, self.degree, out)
        if side == "right":
            sp = alg.space(self.degree)
            out = {}
            for m, f in self.terms.items():
                rf = translate("right", h, f)
                moved = tuple(G.adjoint(h, g) for g in m)
                for b, k in sp.reduce(moved).items():
                    _acc(out, b, rf * k)
            return WedgeForm(alg, self.degree, out)
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")

    def embed(self) -> "TensorForm":
        """The form as an element of the tensor power, via the antisymmetrizer."""
        out: dict = {}
        for mono, f in self.terms.items():
            for t, v in self.alg.antisymmetrize(mono).items():
                _acc(out, t, f * v)
        return TensorForm(self.alg, self.degree, out)

    def to_document(self) -> dict:
        lab = self.alg.group.labels
        return {
            "degree": self.degree,
            "terms": [
                {"coeff": f.to_document(), "monomial": [lab[g] for g in m]}
                for m, f in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_document(cls, alg: ExteriorAlgebra, doc: dict) -> "WedgeForm":
        try:
            degree = int(doc["degree"])
            raw = doc["terms"]
        except (KeyError, TypeError, ValueError):
            raise ValueError("form document needs 'degree' and 'terms'") from None
        out = alg.zero(degree)
        for term in raw:
            mono = alg.spec.monomial(term["monomial"])
            if len(mono) != degree:
                raise ValueError(f"monomial {term['monomial']} is not of degree {degree}")
            f = FunG.from_document(alg.group, term.get("coeff", {}))
            out = out + alg.form({mono: f}, degree)
        return out


class TensorForm:
    """An element of the tensor power of the one-forms, left coefficients.

    No relations are imposed; ``theta^g f = (R_{g^-1} f) theta^g`` still
    holds, so right multiplication and tensor products move functions left.
    """

    __slots__ = ("alg", "degree", "terms")

    def __init__(self, alg: ExteriorAlgebra, degree: int, terms: dict):
        self.alg = alg
        self.degree = degree
        self.terms = terms

    @classmethod
    def from_terms(cls, alg, terms, degree):
        out = {}
        for m, c in terms.items():
            f = alg._coerce_coeff(c)
            if f:
                _acc(out, tuple(m), f)
        return cls(alg, degree, out)

    def __repr__(self):
        return f"TensorForm(degree={self.degree}, {len(self.terms)} terms)"

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, TensorForm):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if other.degree != self.degree:
            raise ValueError("degrees differ")
        out = dict(self.terms)
        for m, f in other.terms.items():
            _acc(out, m, f)
        return TensorForm(self.alg, self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorForm(self.alg, self.degree, {m: -f for m, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, other):
        if isinstance(other, FunG):
            out = {}
            for m, f in self.terms.items():
                _acc(out, m, other * f)
            return TensorForm(self.alg, self.degree, out)
        s = as_scalar(other)
        out = {}
        for m, f in self.terms.items():
            _acc(out, m, f * s)
        return TensorForm(self.alg, self.degree, out)

    def __mul__(self, other):
        if isinstance(other, FunG):
            out = {}
            for m, f in self.terms.items():
                _acc(out, m, f * self.alg.cross(other, m))
            return TensorForm(self.alg, self.degree, out)
        return self.__rmul__(other)

    def tensor(self, other) -> "TensorForm":
        if isinstance(other, WedgeForm):
            other = other.embed()
        out = {}
        for m1, f1 in self.terms.items():
            for m2, f2 in other.terms.items():
                _acc(out, m1 + m2, f1 * self.alg.cross(f2, m1))
        return TensorForm(self.alg, self.degree + other.degree, out)

    def act(self, side: str, h) -> "TensorForm":
        G = self.alg.group
        h = G.index(h)
        out = {}
        for m, f in self.terms.items():
            if side == "left":
                _acc(out, m, translate("left", h, f))
            elif side == "right":
                _acc(out, tuple(G.adjoint(h, g) for g in m), translate("right", h, f))
            else:
                raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        return TensorForm(self.alg, self.degree, out)


class EpsilonTensor:
    """Proportionality constants of top-degree monomials against ``vol``.

    ``right_character[g]`` is the sign with ``R_g vol = sign * vol``.  It is
    1 on the subgroup generated by G' but can be -1 elsewhere: for the
    two-cycle calculus on S3 a transposition swaps the two generators.
    """

    def __init__(self, degree, vol, values, right_character):
        self.degree = degree
        self.vol = tuple(vol)
        self.values = dict(values)
        self.right_character = tuple(right_character)

    @property
    def right_invariant(self) -> bool:
        return all(x == 1 for x in self.right_character)

    def __call__(self, mono) -> Fraction:
        return self.values.get(tuple(mono), Fraction(0))

    def nonzero(self):
        return sorted(self.values.items())


# --------------------------------------------------------------------------
# functional interface


def _alg(spec_or_alg) -> ExteriorAlgebra:
    if isinstance(spec_or_alg, ExteriorAlgebra):
        return spec_or_alg
    return spec_or_alg.exterior()


def wedge_space(spec, p: int) -> WedgeSpace:
    return _alg(spec).space(p)


def reduce_monomial(space: WedgeSpace, mono) -> dict:
    return space.reduce(mono)


def wedge_product(u: WedgeForm, v: WedgeForm) -> WedgeForm:
    return u.wedge(v)


def exterior_derivative(w: WedgeForm) -> WedgeForm:
    return w.d()


def cartan_maurer(spec) -> dict:
    """``g -> d theta^g`` for every ``g`` in G'."""
    alg = _alg(spec)
    return {g: alg.theta(g).d() for g in alg.spec.gprime}


def act_on_form(side: str, h, w: WedgeForm) -> WedgeForm:
    return w.act(side, h)


def volume_and_epsilon(spec, vol_choice=None) -> EpsilonTensor:
    """Pick the volume monomial and tabulate epsilon on the top degree."""
    alg = _alg(spec)
    top = alg.top_degree()
    sp = alg.space(top)
    if sp.dimension != 1:
        raise CalculusError(f"top degree {top} has dimension {sp.dimension}, not 1")
    (b,) = sp.basis
    if vol_choice is not None:
        vol = alg.spec.monomial(vol_choice) if not _is_index_tuple(vol_choice) else tuple(vol_choice)
        if len(vol) != top:
            raise CalculusError(f"volume monomial must have degree {top}")
        scale = sp.reduce(vol).get(b)
        if not scale:
            raise CalculusError("the chosen volume monomial vanishes")
    else:
        vol = None
        for m in sp.monomials():
            scale = sp.reduce(m).get(b)
            if scale:
                vol = m
                break
    values = {}
    for m in sp.monomials():
        k = sp.reduce(m).get(b)
        if k:
            values[m] = k / scale
    G = alg.group
    character = []
    for g in G:
        moved = alg.form({vol: 1}, top).act("right", g)
        sign = moved.coefficient(b)[G.identity] / Scalar(scale)
        if moved != alg.form({vol: sign}, top) or sign not in (1, -1):
            raise CalculusError(f"R_{G.labels[g]} does not map vol to a multiple of itself")
        character.append(Fraction(int(sign.re)))
    return EpsilonTensor(top, vol, values, character)


def _is_index_tuple(x) -> bool:
    return all(isinstance(g, (int, np.integer)) for g in x)


# kept for callers that want a Scalar-valued epsilon
def epsilon_scalar(eps: EpsilonTensor, mono) -> Scalar:
    return Scalar(eps(mono))
