"""JSON documents and DOT export."""

from __future__ import annotations

import json
from pathlib import Path

from .calculus import CalculusSpec

__all__ = ["InputError", "read_json", "dumps", "write_text", "cayley_dot"]


class InputError(ValueError):
    """A file or document supplied by the user could not be used."""


def read_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def dumps(doc) -> str:
    """Canonical compact serialization used for every emitted document."""
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False) + "\n"


def write_text(text: str, out=None, stream=None):
    if out is None:
        stream.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc.strerror or exc}") from None


def _q(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def cayley_dot(spec: CalculusSpec) -> str:
    """Cayley graph of the calculus as DOT text.

    The edge labelled ``h`` runs from ``g`` to ``g h^-1``: it records that
    the right translation ``R_h`` moves the point function ``x^g`` onto
    ``x^{g h^-1}``.  Involutions give unoriented edges, emitted once per
    pair of nodes.  The output is a ``graph`` when every element of G' is
    an involution and a ``digraph`` otherwise.
    """
    G = spec.group
    lab = G.labels
    invol = {h: G.inv(h) == h for h in spec.gprime}
    undirected = all(invol.values())
    arrow = " -- " if undirected else " -> "
    lines = [f"{'graph' if undirected else 'digraph'} {_q(G.name)} {{"]
    for g in G:
        lines.append(f"  {_q(lab[g])};")
    seen = set()
    for g in G:
        for h in spec.gprime:
            target = G.mul(g, G.inv(h))
            attrs = [f"label={_q(lab[h])}"]
            if invol[h]:
                key = (min(g, target), max(g, target), h)
                if key in seen:
                    continue
                seen.add(key)
                if not undirected:
                    attrs.append("dir=none")
            lines.append(f"  {_q(lab[g])}{arrow}{_q(lab[target])} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
