"""Facet-list text format.

::

    # optional comment lines
    dim 2 vertices 6
    1 2 6
    1 3 6
    ...

One facet per line, whitespace-separated labels. Labels that look like
integers are read as ints, ``a:b`` as a tuple of ints, anything else as a
string; if a file mixes these kinds every label is kept as a string.
"""
from __future__ import annotations

import re
from pathlib import Path

from .complex import ComplexError, SimplicialComplex, from_facets

_INT = re.compile(r"-?\d+\Z")
_TUPLE = re.compile(r"-?\d+(?::-?\d+)+\Z")


class FormatError(ValueError):
    pass


def parse_label(token: str):
    if _INT.match(token):
        return int(token)
    if _TUPLE.match(token):
        return tuple(int(x) for x in token.split(":"))
    return token


def format_label(v) -> str:
    if isinstance(v, tuple):
        return ":".join(str(x) for x in v)
    s = str(v)
    if not s or any(ch.isspace() for ch in s) or s.startswith("#"):
        raise FormatError(f"label {v!r} cannot be written to a facet file")
    return s


def write_facets(X: SimplicialComplex) -> str:
    lines = [f"dim {X.dim} vertices {X.num_vertices}"]
    lines.extend(" ".join(format_label(v) for v in f) for f in X.facets())
    return "\n".join(lines) + "\n"


def parse_facets(text: str) -> SimplicialComplex:
    header = None
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if header is None:
            m = re.fullmatch(r"dim\s+(-?\d+)\s+vertices\s+(\d+)", stripped)
            if not m:
                raise FormatError(f"line {lineno}: expected header 'dim <d> vertices <n>'")
            header = (int(m.group(1)), int(m.group(2)))
            continue
        tokens = stripped.split()
        if len(set(tokens)) != len(tokens):
            raise FormatError(f"line {lineno}: facet repeats a vertex")
        rows.append((lineno, tokens))
    if header is None:
        raise FormatError("missing header line")
    if not rows:
        raise FormatError("no facets after header")
    labels = {tok: parse_label(tok) for _, toks in rows for tok in toks}
    if len({type(v) for v in labels.values()}) > 1:
        labels = {tok: tok for tok in labels}
    try:
        X = from_facets([labels[t] for t in toks] for _, toks in rows)
    except ComplexError as exc:
        raise FormatError(str(exc)) from None
    dim, nverts = header
    if X.dim != dim:
        raise FormatError(f"header declares dim {dim}, facets give dim {X.dim}")
    if X.num_vertices != nverts:
        raise FormatError(f"header declares {nverts} vertices, facets use {X.num_vertices}")
    return X


def parse_facet_file(path) -> SimplicialComplex:
    return parse_facets(Path(path).read_text())


def write_facet_file(X: SimplicialComplex, path) -> None:
    Path(path).write_text(write_facets(X))
