"""The commutative algebra Fun(G) of scalar functions on a finite group."""

from __future__ import annotations

from .group import Group
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "FunG",
    "delta",
    "unit",
    "zero",
    "translate",
    "partial_origin",
    "tangent_apply",
    "random_function",
]


class FunG:
    """A function ``G -> Q(i)`` stored as its table of values.

    ``f.values[g]`` is ``f(g)``.  Instances are immutable; arithmetic
    returns new objects.  Multiplication is pointwise.
    """

    __slots__ = ("group", "values")

    def __init__(self, group: Group, values):
        values = tuple(v if isinstance(v, Scalar) else as_scalar(v) for v in values)
        if len(values) != group.order:
            raise ValueError(f"expected {group.order} values, got {len(values)}")
        self.group = group
        self.values = values

    @classmethod
    def _raw(cls, group, values):
        f = object.__new__(cls)
        f.group = group
        f.values = values
        return f

    def __call__(self, g):
        return self.values[self.group.index(g)]

    def __getitem__(self, g: int) -> Scalar:
        return self.values[g]

    def __iter__(self):
        return iter(self.values)

    def _check(self, other: "FunG"):
        if other.group is not self.group and other.group != self.group:
            raise ValueError("functions live on different groups")

    def __add__(self, other):
        if not isinstance(other, FunG):
            return NotImplemented
        self._check(other)
        return FunG._raw(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        if not isinstance(other, FunG):
            return NotImplemented
        self._check(other)
        return FunG._raw(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return FunG._raw(self.group, tuple(-a for a in self.values))

    def __mul__(self, other):
        if isinstance(other, FunG):
            self._check(other)
            return FunG._raw(self.group, tuple(a * b for a, b in zip(self.values, other.values)))
        try:
            s = as_scalar(other)
        except TypeError:
            return NotImplemented
        return FunG._raw(self.group, tuple(a * s for a in self.values))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, FunG):
            return self.group == other.group and self.values == other.values
        if isinstance(other, int) and other == 0:
            return not any(self.values)
        return NotImplemented

    def __hash__(self):
        return hash(self.values)

    def __bool__(self):
        return any(self.values)

    def __repr__(self):
        return f"FunG({self.to_document()})"

    def translate(self, side: str, g) -> "FunG":
        return translate(side, g, self)

    def to_document(self) -> dict[str, str]:
        """Label -> scalar string, zero values omitted."""
        return {
            self.group.labels[g]: str(v) for g, v in enumerate(self.values) if v
        }

    @classmethod
    def from_document(cls, group: Group, doc: dict) -> "FunG":
        vals = [ZERO] * group.order
        for lab, text in doc.items():
            vals[group.index(lab)] = as_scalar(text)
        return cls._raw(group, tuple(vals))


def delta(group: Group, g) -> FunG:
    """The indicator function ``x^g``."""
    g = group.index(g)
    return FunG._raw(group, tuple(ONE if h == g else ZERO for h in range(group.order)))


def unit(group: Group) -> FunG:
    return FunG._raw(group, (ONE,) * group.order)


def zero(group: Group) -> FunG:
    return FunG._raw(group, (ZERO,) * group.order)


def translate(side: str, g, f: FunG) -> FunG:
    """Pullback by left or right multiplication.

    ``left``:  ``(L_g f)(x) = f(g x)``;  ``right``: ``(R_g f)(x) = f(x g)``.
    """
    G = f.group
    g = G.index(g)
    t = G.table
    vals = f.values
    if side == "left":
        row = t[g]
        return FunG._raw(G, tuple(vals[row[x]] for x in range(G.order)))
    if side == "right":
        return FunG._raw(G, tuple(vals[t[x][g]] for x in range(G.order)))
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def partial_origin(g, f: FunG) -> Scalar:
    """Finite difference ``f(g) - f(e)``."""
    g = f.group.index(g)
    if g == f.group.identity:
        raise ValueError("partial derivative along the identity is undefined")
    return f.values[g] - f.values[f.group.identity]


def tangent_apply(h, f: FunG) -> FunG:
    """``t_h f = R_{h^-1} f - f``."""
    G = f.group
    h = G.index(h)
    if h == G.identity:
        raise ValueError("t_e is not a tangent vector")
    return translate("right", G.inverse[h], f) - f


def random_function(group: Group, rng, bound: int = 3, complex_values: bool = True) -> FunG:
    """A function with small Gaussian-integer values drawn from ``rng``."""
    vals = []
    for _ in range(group.order):
        im = rng.randint(-1, 1) if complex_values else 0
        vals.append(Scalar(rng.randint(-bound, bound), im))
    return FunG._raw(group, tuple(vals))
