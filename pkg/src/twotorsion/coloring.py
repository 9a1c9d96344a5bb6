"""Vertex colorings, face patterns, and the pattern-complex quotient."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

import numpy as np

from .complex import SimplicialComplex, delta_degree, from_facets
from .formats import FormatError, format_label, parse_label
from .homology import homology


class ColoringError(ValueError):
    """Coloring is partial or violates a precondition."""


class SearchFailure(RuntimeError):
    """Resampling budget exhausted before every bad event was avoided."""


@dataclass(frozen=True)
class Coloring:
    assignment: Mapping

    @property
    def palette(self) -> frozenset:
        return frozenset(self.assignment.values())

    def __getitem__(self, v):
        return self.assignment[v]

    def __len__(self):
        return len(self.assignment)


@dataclass(frozen=True)
class RefineConfig:
    seed: int = 0
    max_resamples: int = 100_000
    strategy: str = "resample-local"
    # overrides the ceil((3eL^2n)^(1/d)) palette; below it the search may fail
    second_palette: int | None = None

    def __post_init__(self):
        if self.second_palette is not None and self.second_palette < 1:
            raise ValueError("second_palette must be positive")
        if self.max_resamples < 1:
            raise ValueError("max_resamples must be positive")
        if self.strategy not in ("resample-local", "restart-global"):
            raise ValueError(f"unknown strategy {self.strategy!r}")


def _check_total(X: SimplicialComplex, c: Coloring):
    missing = [v for v in X.vertices if v not in c.assignment]
    if missing:
        raise ColoringError(f"coloring misses vertices {missing[:5]!r}")


def is_proper(X: SimplicialComplex, c: Coloring) -> bool:
    _check_total(X, c)
    return all(c[u] != c[v] for u, v in X.faces(1))


def pattern_of(face, c: Coloring) -> tuple:
    """Multiset of colors on a face, as a sorted tuple."""
    return tuple(sorted(c[v] for v in face))


def _faces_by_pattern(X, c, k):
    groups = defaultdict(list)
    for f in X.faces(k):
        groups[pattern_of(f, c)].append(f)
    return groups


def patterns_distinct(X: SimplicialComplex, c: Coloring, k: int, mode: str = "all-pairs") -> bool:
    """True iff no two distinct k-faces share a pattern.

    ``mode="intersecting-only"`` restricts the comparison to pairs of faces
    with a common vertex.
    """
    if mode not in ("all-pairs", "intersecting-only"):
        raise ValueError(f"unknown mode {mode!r}")
    _check_total(X, c)
    for faces in _faces_by_pattern(X, c, k).values():
        if len(faces) < 2:
            continue
        if mode == "all-pairs":
            return False
        seen = set()
        for f in faces:
            if seen.intersection(f):
                return False
            seen.update(f)
    return True


def block_coloring(T) -> Coloring:
    """Color sphere S_i of each chain from palette block i mod 3.

    ``T`` is a Telescope or a GroupRealization. Colors are 1..3(d+1).
    """
    d = T.d
    assignment = {}
    for chain in T.sphere_chains:
        for i, sphere in enumerate(chain):
            base = (i % 3) * (d + 1)
            for j, v in enumerate(sphere):
                assignment[v] = base + j + 1
    missing = set(T.complex.vertices) - assignment.keys()
    if missing:
        raise ColoringError(f"sphere lists do not cover vertices {sorted(missing)[:5]!r}")
    return Coloring(assignment)


def second_palette_size(L: int, n: int, d: int) -> int:
    """Number of colors for the random second coloring: ceil((3eL^2n)^(1/d))."""
    x = (3 * math.e * L * L * n) ** (1.0 / d)
    q = math.ceil(x)
    # guard against x landing a hair above an integer
    if (q - 1) > 0 and (q - 1) ** d >= 3 * math.e * L * L * n:
        q -= 1
    return q


def bad_event_pairs(X: SimplicialComplex, c: Coloring, k: int) -> list:
    """Vertex-disjoint pairs of k-faces with equal patterns under c.

    Each entry is ``(sigma, tau, matching)`` where ``matching`` lists the
    vertex pairs sent to each other by equal c-colors. Unordered pairs,
    sigma before tau in canonical order.
    """
    events = []
    for faces in _faces_by_pattern(X, c, k).values():
        for sigma, tau in combinations(faces, 2):
            if set(sigma).isdisjoint(tau):
                by_color = {c[v]: v for v in tau}
                events.append((sigma, tau, tuple((v, by_color[c[v]]) for v in sigma)))
    return events


@dataclass
class RefineResult:
    coloring: Coloring
    second: dict
    palette_bound: int
    q: int
    L: int
    n: int
    d: int
    resamples: int
    events: int


def refine(X: SimplicialComplex, c: Coloring, L: int | None = None,
           cfg: RefineConfig | None = None) -> RefineResult:
    """Product coloring (c, c2) giving every (d-1)-face its own pattern.

    c2 is drawn uniformly from ceil((3eL^2n)^(1/d)) colors per vertex and
    bad events (disjoint face pairs whose c-patterns agree and whose c2
    values agree along the induced matching) are removed by resampling
    the vertices of the lowest-index violated event.
    """
    cfg = cfg or RefineConfig()
    d = X.dim
    if d < 2:
        raise ColoringError("refinement needs a complex of dimension >= 2")
    if not is_proper(X, c):
        raise ColoringError("input coloring is not proper")
    if not patterns_distinct(X, c, d - 1, "intersecting-only"):
        raise ColoringError("intersecting (d-1)-faces share a pattern under the input coloring")
    delta = delta_degree(X, 0, d - 1)
    if L is None:
        L = delta
    elif L < delta:
        raise ColoringError(f"L={L} is below the vertex degree {delta}")
    n = X.num_vertices
    q = cfg.second_palette or second_palette_size(L, n, d)
    events = bad_event_pairs(X, c, d - 1)
    verts = list(X.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    rng = np.random.default_rng(cfg.seed)
    resamples = 0
    if not events:
        c2 = np.zeros(n, dtype=np.int64)
    else:
        matchings = [np.array([[pos[a], pos[b]] for a, b in m], dtype=np.int64) for _, _, m in events]
        touching = defaultdict(list)
        for idx, m in enumerate(matchings):
            for v in m.ravel():
                touching[int(v)].append(idx)

        def violated(idx):
            m = matchings[idx]
            return bool(np.all(c2[m[:, 0]] == c2[m[:, 1]]))

        c2 = rng.integers(q, size=n)
        bad = {i for i in range(len(events)) if violated(i)}
        while bad:
            if resamples >= cfg.max_resamples:
                raise SearchFailure(
                    f"{len(bad)} bad events remain after {resamples} resamples (seed {cfg.seed})"
                )
            resamples += 1
            if cfg.strategy == "restart-global":
                c2 = rng.integers(q, size=n)
                bad = {i for i in range(len(events)) if violated(i)}
                continue
            idx = min(bad)
            vs = np.unique(matchings[idx])
            c2[vs] = rng.integers(q, size=len(vs))
            recheck = {j for v in vs for j in touching[int(v)]}
            for j in recheck:
                if violated(j):
                    bad.add(j)
                else:
                    bad.discard(j)
    second = {v: int(c2[pos[v]]) for v in verts}
    product = Coloring({v: (c[v], second[v]) for v in verts})
    return RefineResult(
        coloring=product,
        second=second,
        palette_bound=len(c.palette) * q,
        q=q, L=L, n=n, d=d,
        resamples=resamples,
        events=len(events),
    )


def event_frequencies(X: SimplicialComplex, events, q: int, trials: int, seed: int = 0,
                      chunk: int = 20_000) -> np.ndarray:
    """Fraction of uniform random q-colorings c2 under which each bad event
    occurs, i.e. c2 agrees along the event's whole matching."""
    pos = {v: i for i, v in enumerate(X.vertices)}
    mats = [np.array([[pos[a], pos[b]] for a, b in m], dtype=np.int64) for _, _, m in events]
    rng = np.random.default_rng(seed)
    hits = np.zeros(len(mats), dtype=np.int64)
    done = 0
    while done < trials:
        size = min(chunk, trials - done)
        c2 = rng.integers(q, size=(size, X.num_vertices))
        for i, m in enumerate(mats):
            hits[i] += np.all(c2[:, m[:, 0]] == c2[:, m[:, 1]], axis=1).sum()
        done += size
    return hits / trials


def refine_coloring(X: SimplicialComplex, c: Coloring, L: int | None = None,
                    cfg: RefineConfig | None = None) -> Coloring:
    return refine(X, c, L, cfg).coloring


def dependency_degree(X: SimplicialComplex, sigma, L: int | None = None, n: int | None = None) -> int:
    """Ordered pairs (s, t) of vertex-disjoint faces of sigma's dimension
    where s or t meets sigma.

    When L and n are given the count is checked against 2*L**2*n.
    """
    sigma = tuple(sigma)
    k = len(sigma) - 1
    faces = X.faces(k)
    hit = [f for f in faces if not set(f).isdisjoint(sigma)]
    hit_set = set(hit)
    count = 0
    for s in hit:
        s_set = set(s)
        for t in faces:
            if s_set.isdisjoint(t):
                # (t, s) is counted from t's side when t also meets sigma
                count += 1 if t in hit_set else 2
    if L is not None and n is not None and count > 2 * L * L * n:
        raise ColoringError(f"dependency count {count} exceeds 2L^2n = {2 * L * L * n}")
    return count


def pattern_complex(X: SimplicialComplex, c: Coloring) -> SimplicialComplex:
    """Complex on the colors whose faces are the patterns of faces of X."""
    if not is_proper(X, c):
        raise ColoringError("pattern complex needs a proper coloring")
    return from_facets(pattern_of(f, c) for f in X.facets())


def verify_quotient_torsion(X: SimplicialComplex, c: Coloring) -> bool:
    """Compare the torsion of H_{d-1} for X and its pattern complex.

    Requires a proper coloring that gives every (d-1)-face its own pattern.
    """
    d = X.dim
    if not is_proper(X, c):
        raise ColoringError("coloring is not proper")
    if not patterns_distinct(X, c, d - 1, "all-pairs"):
        raise ColoringError("(d-1)-faces do not have pairwise distinct patterns")
    Y = pattern_complex(X, c)
    if Y.dim < d - 1:
        return False
    return homology(X, [d - 1]).torsion[d - 1] == homology(Y, [d - 1]).torsion[d - 1]


def format_coloring(c: Coloring, header: Mapping | None = None) -> str:
    """``vertex<TAB>color`` lines, optional ``# key: value`` header first."""
    lines = [f"# {k}: {v}" for k, v in (header or {}).items()]
    for v in sorted(c.assignment):
        lines.append(f"{format_label(v)}\t{format_label(c[v])}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> tuple:
    """Inverse of format_coloring; returns (Coloring, header dict)."""
    header = {}
    assignment = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep:
                header[key.strip()] = value.strip()
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'vertex<TAB>color'")
        v, col = parse_label(parts[0].strip()), parse_label(parts[1].strip())
        if v in assignment:
            raise FormatError(f"line {lineno}: vertex {parts[0]!r} colored twice")
        assignment[v] = col
    return Coloring(assignment), header
