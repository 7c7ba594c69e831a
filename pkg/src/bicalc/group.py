"""Finite groups given by Cayley tables.

Elements are the integers ``0..n-1`` with index 0 the identity.  The
table entry ``table[g][h]`` is the index of ``g*h``.  For permutation
groups the product applies ``g`` first and ``h`` second, so with the S3
labels ``a=(12)``, ``b=(23)`` we get ``a*b = (132)``, written ``ab``.
"""

from __future__ import annotations

import itertools
import json
import re
from pathlib import Path

import numpy as np

__all__ = [
    "Group",
    "GroupError",
    "build_group",
    "group_from_table",
    "load_cayley",
    "symmetric_group",
    "cyclic_group",
    "dihedral_group",
    "direct_product",
]


class GroupError(ValueError):
    """Raised for malformed Cayley tables or unknown group descriptors."""


class Group:
    """An immutable finite group.

    Use :func:`build_group` or :func:`group_from_table` rather than calling
    the constructor directly; those validate the table first.
    """

    def __init__(self, labels, table, name="G"):
        self.name = name
        self.labels = tuple(labels)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.labels)
        self.identity = 0
        self.inverse = tuple(row.index(0) for row in self.table)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._classes = None

    def __repr__(self):
        return f"Group({self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __eq__(self, other):
        return (
            isinstance(other, Group)
            and self.labels == other.labels
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.labels, self.table))

    def index(self, label) -> int:
        """Element index for a label (ints are passed through)."""
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.order:
                raise GroupError(f"element index {label} out of range")
            return int(label)
        try:
            return self._index[label]
        except KeyError:
            raise GroupError(
                f"unknown element {label!r}; known: {', '.join(self.labels)}"
            ) from None

    def label(self, g: int) -> str:
        return self.labels[g]

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def product(self, *elements: int) -> int:
        out = self.identity
        for g in elements:
            out = self.table[out][g]
        return out

    def adjoint(self, h: int, g: int) -> int:
        """``ad(h) g = h g h^-1``."""
        t = self.table
        return t[t[h][g]][self.inverse[h]]

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Orbits of the adjoint action, ``(e,)`` first.

        Classes are listed in order of their smallest element and each
        class is sorted, so the result only depends on the table.
        """
        if self._classes is None:
            seen = set()
            classes = []
            for g in range(self.order):
                if g in seen:
                    continue
                orbit = tuple(sorted({self.adjoint(h, g) for h in range(self.order)}))
                seen.update(orbit)
                classes.append(orbit)
            self._classes = classes
        return list(self._classes)

    def class_of(self, g: int) -> tuple[int, ...]:
        for cls in self.conjugacy_classes():
            if g in cls:
                return cls
        raise GroupError(f"element {g} not in any class")  # pragma: no cover

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[g][h] == t[h][g] for g in range(self.order) for h in range(g))

    def to_document(self) -> dict:
        return {
            "order": self.order,
            "labels": list(self.labels),
            "table": [list(row) for row in self.table],
        }


# --------------------------------------------------------------------------
# validation


def group_from_table(labels, table, name="G") -> Group:
    """Validate a Cayley table and build a :class:`Group`.

    ``labels[0]`` must be the identity.  Raises :class:`GroupError` naming
    the offending indices on the first failed check.
    """
    labels = [str(x) for x in labels]
    n = len(labels)
    if n == 0:
        raise GroupError("empty group")
    if len(set(labels)) != n:
        dup = sorted({x for x in labels if labels.count(x) > 1})
        raise GroupError(f"duplicate labels: {dup}")
    for lab in labels:
        if not lab or "," in lab or lab.strip() != lab:
            raise GroupError(f"label {lab!r} must be non-empty, without commas or padding")
    if len(table) != n or any(len(row) != n for row in table):
        raise GroupError(f"table must be {n}x{n}")
    try:
        arr = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise GroupError(f"table entries must be integers: {exc}") from None
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        i, j = bad[0]
        raise GroupError(f"entry ({i},{j}) = {arr[i, j]} is not an element index")

    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(arr[i]), full):
            j = _first_repeat(arr[i])
            raise GroupError(f"not a Latin square: row {i} repeats value {arr[i, j]} (column {j})")
        if not np.array_equal(np.sort(arr[:, i]), full):
            j = _first_repeat(arr[:, i])
            raise GroupError(f"not a Latin square: column {i} repeats value {arr[j, i]} (row {j})")

    if not np.array_equal(arr[0], full) or not np.array_equal(arr[:, 0], full):
        wrong = [g for g in range(n) if arr[0, g] != g or arr[g, 0] != g]
        raise GroupError(
            f"element 0 ({labels[0]!r}) is not the identity: fails for elements {wrong[:5]}"
        )

    # (a*b)*c == a*(b*c), one slice per a
    for a in range(n):
        left = arr[arr[a]]            # left[b, c] = (a*b)*c
        right = arr[a][arr]           # right[b, c] = a*(b*c)
        diff = np.argwhere(left != right)
        if len(diff):
            b, c = diff[0]
            raise GroupError(f"associativity fails for ({a},{b},{c})")

    for g in range(n):
        h = int(np.nonzero(arr[g] == 0)[0][0])
        if arr[h, g] != 0:
            raise GroupError(f"element {g} has right inverse {h} that is not a left inverse")

    return Group(labels, arr.tolist(), name=name)


def _first_repeat(values) -> int:
    seen = set()
    for j, v in enumerate(values):
        if v in seen:
            return j
        seen.add(v)
    return 0


def load_cayley(path_or_doc) -> Group:
    """Read a Cayley-table JSON document from a path or an already parsed dict."""
    if isinstance(path_or_doc, dict):
        doc = path_or_doc
        name = "cayley"
    else:
        path = Path(path_or_doc)
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise GroupError(f"cannot read Cayley document {path}: {exc}") from None
        name = path.stem
    if not isinstance(doc, dict) or not {"order", "labels", "table"} <= set(doc):
        raise GroupError("Cayley document needs keys 'order', 'labels', 'table'")
    if doc["order"] != len(doc["labels"]):
        raise GroupError(f"order {doc['order']} does not match {len(doc['labels'])} labels")
    return group_from_table(doc["labels"], doc["table"], name=name)


# --------------------------------------------------------------------------
# builtin families

# the labels used for S3 throughout: a=(12), b=(23), c=(13), ab=(132), ba=(123)
_S3_LABELS = {
    (0, 1, 2): "e",
    (1, 0, 2): "a",
    (0, 2, 1): "b",
    (2, 1, 0): "c",
}
_S3_ORDER = ["e", "a", "b", "c", "ab", "ba"]


def _compose(p, q):
    """Apply permutation ``p`` then ``q``."""
    return tuple(q[p[i]] for i in range(len(p)))


def _cycle_label(p) -> str:
    seen = set()
    parts = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        parts.append("(" + "".join(str(i + 1) for i in cyc) + ")")
    return "".join(parts) or "e"


def _from_elements(elements, mul, labels, name) -> Group:
    index = {g: i for i, g in enumerate(elements)}
    table = [[index[mul(g, h)] for h in elements] for g in elements]
    return group_from_table(labels, table, name=name)


def symmetric_group(n: int) -> Group:
    if n < 1:
        raise GroupError("s0 is not supported")
    perms = list(itertools.permutations(range(n)))
    if n == 3:
        a, b = (1, 0, 2), (0, 2, 1)
        named = dict(_S3_LABELS)
        named[_compose(a, b)] = "ab"
        named[_compose(b, a)] = "ba"
        by_label = {v: k for k, v in named.items()}
        perms = [by_label[lab] for lab in _S3_ORDER]
        labels = _S3_ORDER
    else:
        labels = [_cycle_label(p) for p in perms]
    return _from_elements(perms, _compose, labels, f"s{n}")


def cyclic_group(n: int) -> Group:
    if n < 1:
        raise GroupError("z0 is not supported")
    labels = ["e"] + ["a" if k == 1 else f"a{k}" for k in range(1, n)]
    return _from_elements(list(range(n)), lambda x, y: (x + y) % n, labels, f"z{n}")


def dihedral_group(n: int) -> Group:
    """Symmetries of the regular n-gon, order 2n, elements ``r^k s^j``."""
    if n < 1:
        raise GroupError("d0 is not supported")
    elements = [(k, j) for j in (0, 1) for k in range(n)]

    def mul(x, y):
        (k1, j1), (k2, j2) = x, y
        return ((k1 + (-k2 if j1 else k2)) % n, (j1 + j2) % 2)

    def lab(x):
        k, j = x
        r = "" if k == 0 else ("r" if k == 1 else f"r{k}")
        out = r + ("s" if j else "")
        return out or "e"

    return _from_elements(elements, mul, [lab(x) for x in elements], f"d{n}")


def direct_product(g1: Group, g2: Group) -> Group:
    elements = [(x, y) for x in range(g1.order) for y in range(g2.order)]

    def mul(p, q):
        return (g1.mul(p[0], q[0]), g2.mul(p[1], q[1]))

    def lab(p):
        if p == (0, 0):
            return "e"
        return f"{g1.labels[p[0]]}.{g2.labels[p[1]]}"

    return _from_elements(elements, mul, [lab(p) for p in elements], f"{g1.name}x{g2.name}")


_FACTOR_RE = re.compile(r"^([szd])(\d+)$")
_FAMILIES = {"s": symmetric_group, "z": cyclic_group, "d": dihedral_group}


def build_group(descriptor) -> Group:
    """Build a group from ``"s3"``, ``"z4"``, ``"d5"``, ``"z2xz2"``, a
    Cayley document dict, or a path to a Cayley JSON file."""
    if isinstance(descriptor, Group):
        return descriptor
    if isinstance(descriptor, dict):
        return load_cayley(descriptor)
    if isinstance(descriptor, Path):
        return load_cayley(descriptor)
    text = str(descriptor).strip().lower()
    factors = text.split("x")
    groups = []
    for f in factors:
        m = _FACTOR_RE.match(f)
        if not m:
            raise GroupError(
                f"unknown group {descriptor!r}: expected sN, zN, dN or products like z2xz3"
            )
        groups.append(_FAMILIES[m[1]](int(m[2])))
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return out
