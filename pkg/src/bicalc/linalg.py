"""Exact sparse row reduction over a field (Fraction or Scalar entries).

Vectors are dicts ``{column: value}`` with no stored zeros.  Columns must
be mutually comparable so pivots can be chosen deterministically.
"""

from __future__ import annotations

from fractions import Fraction

try:  # much faster exact rationals when available
    from gmpy2 import mpq as _fast_rational
except ImportError:  # pragma: no cover
    _fast_rational = Fraction

__all__ = [
    "IncrementalBasis",
    "rank",
    "solve_affine",
    "matrix_inverse",
    "matmul",
    "SingularMatrixError",
]


class SingularMatrixError(ValueError):
    pass


def _field(v, kind=Fraction):
    return kind(v) if isinstance(v, int) else v


def _axpy(target: dict, alpha, source: dict):
    """target += alpha * source, dropping zeros."""
    for k, v in source.items():
        x = target.get(k)
        x = alpha * v if x is None else x + alpha * v
        if x:
            target[k] = x
        else:
            target.pop(k, None)


class IncrementalBasis:
    """Grow a basis of a span one tagged vector at a time.

    ``add(tag, vec)`` returns ``None`` when ``vec`` is independent of the
    vectors accepted so far (``tag`` joins the basis); otherwise it returns
    ``{basis_tag: coeff}`` with ``vec == sum(coeff * vector(basis_tag))``.

    With ``fast=True`` integer input is promoted to gmpy2 rationals when
    gmpy2 is installed; returned coefficients are then gmpy2 values too.
    """

    def __init__(self, fast: bool = False):
        self._kind = _fast_rational if fast else Fraction
        # (pivot column, row vector, row as a combination of basis tags)
        self._rows: list[tuple[object, dict, dict]] = []
        self.tags: list = []

    def __len__(self):
        return len(self._rows)

    def _reduce(self, vec: dict):
        vec = dict(vec)
        combo: dict = {}
        for piv, row, expr in self._rows:
            alpha = vec.get(piv)
            if alpha:
                _axpy(vec, -alpha, row)
                _axpy(combo, alpha, expr)
        return vec, combo

    def add(self, tag, vec: dict):
        residual, combo = self._reduce(vec)
        if not residual:
            return combo
        piv = min(residual)
        inv = 1 / _field(residual[piv], self._kind)
        row = {k: v * inv for k, v in residual.items()}
        expr = {tag: inv}
        _axpy(expr, -inv, combo)
        self._rows.append((piv, row, expr))
        self.tags.append(tag)
        return None

    def contains(self, vec: dict) -> bool:
        residual, _ = self._reduce(vec)
        return not residual


def rank(rows) -> int:
    """Rank of a list of sparse rows."""
    basis = IncrementalBasis()
    for i, r in enumerate(rows):
        basis.add(i, {k: v for k, v in r.items() if v})
    return len(basis)


def solve_affine(equations, unknowns):
    """Solve ``sum_j coeff[j] * x_j = rhs`` exactly.

    ``equations`` is an iterable of ``(coeffs, rhs)`` with ``coeffs`` a
    dict keyed by unknowns.  Returns ``(particular, kernel)`` as dicts
    keyed by unknown (particular omits zeros) or ``None`` if inconsistent.
    """
    order = {u: i for i, u in enumerate(unknowns)}
    rhs_key = len(order)  # sorts after every unknown column
    pivots: dict[int, dict] = {}
    for coeffs, rhs in equations:
        row = {order[u]: _field(v) for u, v in coeffs.items() if v}
        if rhs:
            row[rhs_key] = -_field(rhs)
        # eliminate existing pivots
        for piv, prow in pivots.items():
            alpha = row.get(piv)
            if alpha:
                _axpy(row, -alpha, prow)
        cols = [c for c in row if c != rhs_key]
        if not cols:
            if row.get(rhs_key):
                return None
            continue
        piv = min(cols)
        inv = 1 / _field(row[piv])
        row = {k: v * inv for k, v in row.items()}
        # keep pivot rows fully reduced
        for other in pivots.values():
            alpha = other.get(piv)
            if alpha:
                _axpy(other, -alpha, row)
        pivots[piv] = row
    free = [i for i in range(len(order)) if i not in pivots]
    particular = {}
    for piv, row in pivots.items():
        val = -row.get(rhs_key, 0)
        if val:
            particular[unknowns[piv]] = val
    kernel = []
    for f in free:
        vec = {unknowns[f]: Fraction(1)}
        for piv, row in pivots.items():
            alpha = row.get(f)
            if alpha:
                vec[unknowns[piv]] = -alpha
        kernel.append(vec)
    return particular, kernel


def matmul(a, b, zero=0):
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            s = zero
            for t in range(m):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def matrix_inverse(a, one=1, zero=0):
    """Gauss-Jordan inverse of a square matrix of field elements."""
    n = len(a)
    aug = [list(a[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = _field(one) / _field(aug[col][col])
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
