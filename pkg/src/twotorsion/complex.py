"""Simplicial complexes over labeled vertices.

Faces are stored as sorted tuples of vertex labels. Labels can be any
mutually comparable hashable values (ints, strings, tuples of ints); the
natural Python order of the labels fixes the orientation of every face.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

Face = tuple


class ComplexError(ValueError):
    """Malformed face, illegal gluing, or label collision."""


def _sort_labels(labels):
    try:
        return sorted(labels)
    except TypeError as exc:
        raise ComplexError(f"vertex labels are not mutually comparable: {exc}") from None


def make_face(vertices: Iterable[Hashable]) -> Face:
    vs = list(vertices)
    if not vs:
        raise ComplexError("empty face")
    if len(set(vs)) != len(vs):
        raise ComplexError(f"face {vs!r} has a repeated vertex")
    return tuple(_sort_labels(vs))


class SimplicialComplex:
    """A downward-closed family of faces.

    Instances are immutable. Build them with :func:`from_facets` or one of
    the structural operations rather than by calling the constructor with
    a hand-made face family.
    """

    __slots__ = ("_faces", "_index", "_facets")

    def __init__(self, faces_by_dim: Sequence[Iterable[Face]] = ()):
        layers = []
        for layer in faces_by_dim:
            layer = sorted(set(layer))
            if not layer:
                break
            layers.append(tuple(layer))
        self._faces = tuple(layers)
        self._index = tuple({f: i for i, f in enumerate(layer)} for layer in self._faces)
        self._facets = None

    # -- basic accessors -------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self._faces) - 1

    @property
    def vertices(self) -> tuple:
        if not self._faces:
            return ()
        return tuple(f[0] for f in self._faces[0])

    @property
    def num_vertices(self) -> int:
        return len(self._faces[0]) if self._faces else 0

    def faces(self, k: int) -> tuple:
        if 0 <= k < len(self._faces):
            return self._faces[k]
        return ()

    def face_index(self, k: int) -> Mapping[Face, int]:
        return self._index[k] if 0 <= k < len(self._index) else {}

    def all_faces(self):
        for layer in self._faces:
            yield from layer

    def __contains__(self, face) -> bool:
        face = tuple(face)
        k = len(face) - 1
        return 0 <= k < len(self._index) and face in self._index[k]

    def facets(self) -> tuple:
        """Maximal faces, sorted by (dimension, vertices)."""
        if self._facets is None:
            covered = set()
            for layer in self._faces[1:]:
                for f in layer:
                    covered.update(combinations(f, len(f) - 1))
            self._facets = tuple(f for f in self.all_faces() if f not in covered)
        return self._facets

    def f_vector(self) -> tuple:
        return tuple(len(layer) for layer in self._faces)

    def __len__(self):
        return sum(len(layer) for layer in self._faces)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._faces == other._faces

    def __hash__(self):
        return hash(self._faces)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, f_vector={self.f_vector()})"

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls(())


def from_facets(facets: Iterable[Iterable[Hashable]]) -> SimplicialComplex:
    """Downward closure of a list of faces."""
    layers: list[set] = []
    for raw in facets:
        f = make_face(raw)
        for k in range(len(f)):
            while len(layers) <= k:
                layers.append(set())
            layers[k].update(combinations(f, k + 1))
    # labels are validated for comparability when the layers are sorted
    for layer in layers:
        _sort_labels(layer)
    return SimplicialComplex(layers)


def skeleton(X: SimplicialComplex, i: int) -> list:
    """The i-dimensional faces of X in canonical order; empty if i is out of range."""
    return list(X.faces(i))


def f_vector(X: SimplicialComplex) -> tuple:
    return X.f_vector()


def delta_degree(X: SimplicialComplex, i: int, j: int) -> int:
    """Largest number of j-faces containing a single i-face."""
    if not (0 <= i <= j <= X.dim):
        raise ComplexError(f"need 0 <= i <= j <= dim, got i={i}, j={j}, dim={X.dim}")
    counts = dict.fromkeys(X.faces(i), 0)
    for tau in X.faces(j):
        for sigma in combinations(tau, i + 1):
            counts[sigma] += 1
    return max(counts.values(), default=0)


def relabel(X: SimplicialComplex, mapping: Mapping) -> SimplicialComplex:
    """Apply an injective relabeling of the vertices."""
    images = [mapping[v] for v in X.vertices]
    if len(set(images)) != len(images):
        raise ComplexError("relabeling is not injective")
    return from_facets([mapping[v] for v in f] for f in X.facets())


def prefix_label(prefix, v) -> str:
    return f"{prefix}.{v}"


def disjoint_union(*complexes: SimplicialComplex) -> SimplicialComplex:
    """Disjoint union; component i has its labels rewritten as ``"i.<label>"``."""
    facets = []
    for i, X in enumerate(complexes):
        facets.extend([prefix_label(i, v) for v in f] for f in X.facets())
    return from_facets(facets)


def identify_vertices(X: SimplicialComplex, first: Sequence, second: Sequence) -> SimplicialComplex:
    """Glue ``first[i]`` to ``second[i]`` for every i.

    The merged vertex keeps the smaller of the two labels. A face that
    contains both members of a pair cannot survive the quotient and is
    reported as an error.
    """
    first, second = list(first), list(second)
    if len(first) != len(second):
        raise ComplexError("pairing lists have different lengths")
    if len(set(first)) != len(first) or len(set(second)) != len(second):
        raise ComplexError("pairing lists must not repeat vertices")
    if set(first) & set(second):
        raise ComplexError("pairing lists overlap")
    verts = set(X.vertices)
    missing = [v for v in first + second if v not in verts]
    if missing:
        raise ComplexError(f"vertices not in complex: {missing!r}")
    image = {}
    for a, b in zip(first, second):
        keep = min(a, b)
        image[a] = image[b] = keep
    glued = []
    for f in X.facets():
        g = [image.get(v, v) for v in f]
        if len(set(g)) != len(g):
            raise ComplexError(f"gluing collapses face {f!r}")
        glued.append(g)
    return from_facets(glued)


def suspension_with_points(X: SimplicialComplex, v_new, u_new) -> SimplicialComplex:
    """Cone X off to ``v_new`` and to ``u_new``."""
    if v_new == u_new:
        raise ComplexError("suspension points must be distinct")
    verts = set(X.vertices)
    for p in (v_new, u_new):
        if p in verts:
            raise ComplexError(f"suspension point {p!r} already a vertex")
    facets = [[v_new], [u_new]]
    for f in X.facets():
        facets.append(list(f) + [v_new])
        facets.append(list(f) + [u_new])
    return from_facets(facets)


def simplex_boundary(vertices: Sequence) -> SimplicialComplex:
    vs = make_face(vertices)
    return from_facets(combinations(vs, len(vs) - 1))


@dataclass(frozen=True)
class IntegerMatrix:
    """Sparse integer matrix stored column by column.

    ``columns[j]`` maps row index to a nonzero Python int.
    """

    nrows: int
    ncols: int
    columns: tuple

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntegerMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, x in enumerate(row):
                if x:
                    cols[j][i] = int(x)
        return cls(nrows, ncols, tuple(cols))

    def to_dense(self) -> list:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                out[i][j] = x
        return out

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def transpose(self) -> "IntegerMatrix":
        cols = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                cols[i][j] = x
        return IntegerMatrix(self.ncols, self.nrows, tuple(cols))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = []
        for col in other.columns:
            acc: dict = {}
            for k, y in col.items():
                for i, x in self.columns[k].items():
                    acc[i] = acc.get(i, 0) + x * y
            cols.append({i: x for i, x in acc.items() if x})
        return IntegerMatrix(self.nrows, other.ncols, tuple(cols))

    def apply(self, vector: Sequence[int]) -> list:
        """Matrix-vector product."""
        if len(vector) != self.ncols:
            raise ValueError("vector length does not match column count")
        out = [0] * self.nrows
        for j, y in enumerate(vector):
            if y:
                for i, x in self.columns[j].items():
                    out[i] += x * y
        return out

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)


def boundary_matrix(X: SimplicialComplex, k: int) -> IntegerMatrix:
    """Matrix of the boundary map from k-chains to (k-1)-chains.

    Rows follow ``X.faces(k-1)`` and columns follow ``X.faces(k)``. Deleting
    the j-th vertex of a sorted face contributes the sign (-1)**j.
    """
    if not (1 <= k <= X.dim):
        raise ComplexError(f"boundary degree {k} out of range 1..{X.dim}")
    rows = X.face_index(k - 1)
    cols = []
    for tau in X.faces(k):
        col = {}
        for j in range(k + 1):
            col[rows[tau[:j] + tau[j + 1:]]] = -1 if j % 2 else 1
        cols.append(col)
    return IntegerMatrix(len(rows), len(cols), tuple(cols))


def chain_of_faces(X: SimplicialComplex, k: int, faces: Iterable[Face]) -> list:
    """Integer k-chain with coefficient 1 on each of ``faces`` (which must be sorted tuples)."""
    index = X.face_index(k)
    z = [0] * len(index)
    for f in faces:
        z[index[tuple(f)]] += 1
    return z


def simplex_boundary_chain(X: SimplicialComplex, vertices: Sequence) -> list:
    """The (k-1)-chain given by the oriented boundary of the sorted simplex on ``vertices``."""
    tau = make_face(vertices)
    k = len(tau) - 1
    index = X.face_index(k - 1)
    z = [0] * len(index)
    for j in range(k + 1):
        face = tau[:j] + tau[j + 1:]
        if face not in index:
            raise ComplexError(f"boundary face {face!r} not in complex")
        z[index[face]] += -1 if j % 2 else 1
    return z
