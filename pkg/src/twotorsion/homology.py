"""Integer homology of simplicial complexes via Smith normal form."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd
from typing import Sequence

from .complex import IntegerMatrix, SimplicialComplex, boundary_matrix


class HomologyError(ValueError):
    pass


@dataclass(frozen=True)
class SmithForm:
    """Nonzero diagonal of the Smith normal form of an integer matrix.

    When computed with ``transforms=True`` the unimodular matrices satisfy
    ``diag == U @ M @ V`` and ``U_inv``, ``V_inv`` are their inverses (all
    dense, as lists of rows).
    """

    invariants: tuple
    shape: tuple
    U: list | None = field(default=None, repr=False, compare=False)
    V: list | None = field(default=None, repr=False, compare=False)
    U_inv: list | None = field(default=None, repr=False, compare=False)
    V_inv: list | None = field(default=None, repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.invariants if d > 1)

    def diagonal_matrix(self) -> list:
        m, n = self.shape
        D = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.invariants):
            D[i][i] = d
        return D


def invariant_factor_form(diagonal: Sequence[int]) -> tuple:
    """Rewrite a diagonal presentation as a divisibility chain.

    ``diag(a, b)`` is equivalent to ``diag(gcd(a, b), lcm(a, b))``, so the
    multiset of nonzero absolute values is normalized pairwise.
    """
    ds = sorted(abs(d) for d in diagonal if d)
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            g = gcd(ds[i], ds[j])
            if g != ds[i]:
                ds[i], ds[j] = g, ds[i] * ds[j] // g
    return tuple(ds)


def torsion_signature(orders: Sequence[int]) -> tuple:
    """Invariant factors (> 1) of a direct sum of cyclic groups of the given orders."""
    return tuple(d for d in invariant_factor_form(orders) if d > 1)


def _as_matrix(M) -> IntegerMatrix:
    if isinstance(M, IntegerMatrix):
        return M
    return IntegerMatrix.from_dense([list(r) for r in M], None if M else 0)


# -- sparse elimination -------------------------------------------------------

def _sparse_diagonal(M: IntegerMatrix) -> list:
    rows: dict = {}
    cols: dict = {}
    for j, col in enumerate(M.columns):
        if col:
            cols[j] = dict(col)
            for i, x in col.items():
                rows.setdefault(i, {})[j] = x
    diag = []

    def set_entry(i, j, x):
        if x:
            rows.setdefault(i, {})[j] = x
            cols.setdefault(j, {})[i] = x
        else:
            r = rows.get(i)
            if r is not None and j in r:
                del r[j]
                if not r:
                    del rows[i]
            c = cols.get(j)
            if c is not None and i in c:
                del c[i]
                if not c:
                    del cols[j]

    while rows:
        # minimal |entry|, ties broken by lowest row then column
        best = None
        for i in sorted(rows):
            for j, x in rows[i].items():
                a = abs(x)
                if best is None or a < best[0] or (a == best[0] and i == best[1] and j < best[2]):
                    best = (a, i, j)
            if best[0] == 1:
                break
        _, p, q = best
        a = rows[p][q]
        clean = True
        for i in [i for i in cols[q] if i != p]:
            f = cols[q][i] // a
            for j, x in list(rows[p].items()):
                set_entry(i, j, rows.get(i, {}).get(j, 0) - f * x)
            if rows.get(i, {}).get(q):
                clean = False
        for j in [j for j in rows[p] if j != q]:
            f = rows[p][j] // a
            for i, x in list(cols[q].items()):
                set_entry(i, j, cols.get(j, {}).get(i, 0) - f * x)
            if cols.get(j, {}).get(p):
                clean = False
        if clean and len(rows[p]) == 1 and len(cols[q]) == 1:
            diag.append(abs(a))
            set_entry(p, q, 0)
    return diag


# -- dense elimination with transforms ----------------------------------------

def _dense_smith(A: list, m: int, n: int):
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    U_inv = [row[:] for row in U]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    V_inv = [row[:] for row in V]

    def row_add(dst, src, f):  # row_dst += f * row_src
        if not f:
            return
        for M in (A, U):
            rs, rd = M[src], M[dst]
            for j in range(len(rd)):
                if rs[j]:
                    rd[j] += f * rs[j]
        for row in U_inv:
            row[src] -= f * row[dst]

    def row_swap(a, b):
        if a != b:
            for M in (A, U):
                M[a], M[b] = M[b], M[a]
            for row in U_inv:
                row[a], row[b] = row[b], row[a]

    def row_neg(a):
        for M in (A, U):
            M[a] = [-x for x in M[a]]
        for row in U_inv:
            row[a] = -row[a]

    def col_add(dst, src, f):  # col_dst += f * col_src
        if not f:
            return
        for M in (A, V):
            for row in M:
                if row[src]:
                    row[dst] += f * row[src]
        rs, rd = V_inv[dst], V_inv[src]
        for j in range(n):
            if rs[j]:
                rd[j] -= f * rs[j]

    def col_swap(a, b):
        if a != b:
            for M in (A, V):
                for row in M:
                    row[a], row[b] = row[b], row[a]
            V_inv[a], V_inv[b] = V_inv[b], V_inv[a]

    def min_entry(t):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        # nothing smaller exists; same pick as a full scan
                        return best
        return best

    invariants = []
    t = 0
    while t < min(m, n):
        best = min_entry(t)
        if best is None:
            break
        while True:
            _, p, q = best
            row_swap(t, p)
            col_swap(t, q)
            a = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // a))
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // a))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                best = min_entry(t)
                continue
            if abs(a) == 1:
                break
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % a), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
            best = min_entry(t)
        if A[t][t] < 0:
            row_neg(t)
        invariants.append(A[t][t])
        t += 1
    return tuple(invariants), U, V, U_inv, V_inv


def smith_normal_form(M, transforms: bool = False) -> SmithForm:
    """Smith normal form of an integer matrix.

    Pivots are chosen as the nonzero entry of least absolute value. Without
    transforms the elimination runs on the sparse column storage and the
    resulting diagonal is put into invariant-factor form afterwards; with
    transforms a dense elimination keeps the divisibility chain directly.
    """
    M = _as_matrix(M)
    if not transforms:
        return SmithForm(invariant_factor_form(_sparse_diagonal(M)), M.shape)
    invariants, U, V, U_inv, V_inv = _dense_smith(M.to_dense(), M.nrows, M.ncols)
    return SmithForm(invariants, M.shape, U, V, U_inv, V_inv)


# -- homology -----------------------------------------------------------------

@dataclass(frozen=True)
class HomologySummary:
    """Betti numbers and torsion invariant factors, per dimension.

    Only the dimensions in ``betti`` were computed.
    """

    f_vector: tuple
    betti: dict
    torsion: dict

    @property
    def dims(self) -> tuple:
        return tuple(sorted(self.betti))

    @property
    def betti_numbers(self) -> tuple:
        return tuple(self.betti[k] for k in self.dims)

    def reduced_betti(self, k: int) -> int:
        return self.betti[k] - 1 if k == 0 and self.f_vector else self.betti[k]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in self.betti.items())

    def describe(self, k: int) -> str:
        parts = []
        if self.betti[k]:
            parts.append("Z" if self.betti[k] == 1 else f"Z^{self.betti[k]}")
        parts.extend(f"Z/{q}" for q in self.torsion[k])
        return " + ".join(parts) or "0"


def homology(X: SimplicialComplex, dims: Sequence[int] | None = None) -> HomologySummary:
    """Integral homology of X in the requested dimensions (default: all)."""
    fv = X.f_vector()
    if dims is None:
        dims = range(len(fv))
    dims = sorted(set(dims))
    for k in dims:
        if not 0 <= k < len(fv):
            raise HomologyError(f"dimension {k} out of range for complex of dim {X.dim}")
    forms: dict = {}

    def snf(k):
        if k not in forms:
            forms[k] = smith_normal_form(boundary_matrix(X, k)) if 1 <= k <= X.dim else None
        return forms[k]

    betti, torsion = {}, {}
    for k in dims:
        below, above = snf(k), snf(k + 1)
        betti[k] = fv[k] - (below.rank if below else 0) - (above.rank if above else 0)
        torsion[k] = above.torsion if above else ()
    return HomologySummary(fv, betti, torsion)


def betti_bound(n: int, i: int) -> int:
    """Upper bound on the i-th Betti number of a complex on n vertices."""
    return comb(n, i + 1)


def is_boundary(X: SimplicialComplex, k: int, z: Sequence[int]) -> bool:
    """Whether the k-chain z lies in the image of the boundary map into k-chains.

    Appending z as an extra column keeps the column lattice unchanged
    exactly when the rank and the product of the invariant factors (the
    index of the lattice in its saturation) both stay the same, so two
    sparse Smith forms decide membership without any transforms.
    """
    m = len(X.faces(k))
    if len(z) != m:
        raise HomologyError(f"chain has length {len(z)}, expected {m}")
    col = {i: int(x) for i, x in enumerate(z) if x}
    if not col:
        return True
    B = boundary_matrix(X, k + 1) if k < X.dim else IntegerMatrix(m, 0, ())
    before = smith_normal_form(B).invariants
    after = smith_normal_form(IntegerMatrix(m, B.ncols + 1, B.columns + (col,))).invariants
    return len(before) == len(after) and _product(before) == _product(after)


def is_homologous(X: SimplicialComplex, k: int, z1: Sequence[int], z2: Sequence[int]) -> bool:
    return is_boundary(X, k, [a - b for a, b in zip(z1, z2, strict=True)])


def _product(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


# -- coordinates of classes ---------------------------------------------------

@dataclass(frozen=True)
class ClassCoordinates:
    free: tuple
    torsion: tuple
    moduli: tuple

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def scaled(self, c: int) -> "ClassCoordinates":
        return ClassCoordinates(
            tuple(c * x for x in self.free),
            tuple((c * x) % q for x, q in zip(self.torsion, self.moduli)),
            self.moduli,
        )


class HomologyBasis:
    """A fixed basis of H_k(X) in which cycles get canonical coordinates.

    The basis comes from the Smith form of the boundary map into k-chains
    (for the torsion part) and of the boundary map out of k-chains
    restricted to the complementary block (for the free part).
    """

    def __init__(self, X: SimplicialComplex, k: int):
        if not 0 <= k <= X.dim:
            raise HomologyError(f"dimension {k} out of range")
        self.X, self.k = X, k
        m = len(X.faces(k))
        into = boundary_matrix(X, k + 1) if k < X.dim else IntegerMatrix(m, 0, ())
        s_into = smith_normal_form(into, transforms=True)
        self._U = s_into.U
        self._r = s_into.rank
        self._invariants = s_into.invariants
        self._out = boundary_matrix(X, k) if k >= 1 else None
        if self._out is not None:
            # boundary of the columns of U_inv beyond the image block
            cols = [[s_into.U_inv[i][j] for i in range(m)] for j in range(self._r, m)]
            images = [self._out.apply(c) for c in cols]
            A = [[images[j][i] for j in range(len(images))] for i in range(self._out.nrows)]
            s_out = smith_normal_form(IntegerMatrix.from_dense(A, m - self._r), transforms=True)
            self._Q_inv = s_out.V_inv
            self._s = s_out.rank
        else:
            self._Q_inv = None
            self._s = 0
        self.moduli = tuple(d for d in self._invariants if d > 1)
        self.rank = m - self._r - self._s

    def coordinates(self, z: Sequence[int]) -> ClassCoordinates:
        z = [int(x) for x in z]
        m = len(self._U)
        if len(z) != m:
            raise HomologyError(f"chain has length {len(z)}, expected {m}")
        if self._out is not None and any(self._out.apply(z)):
            raise HomologyError("chain is not a cycle")
        w = [sum(u * x for u, x in zip(row, z) if x) for row in self._U]
        torsion = tuple(w[i] % d for i, d in enumerate(self._invariants) if d > 1)
        tail = w[self._r:]
        if self._Q_inv is not None:
            coords = [sum(q * x for q, x in zip(row, tail) if x) for row in self._Q_inv]
            free = tuple(coords[self._s:])
        else:
            free = tuple(tail)
        return ClassCoordinates(free, torsion, self.moduli)


def class_coordinates(X: SimplicialComplex, k: int, z: Sequence[int],
                      basis: HomologyBasis | None = None) -> ClassCoordinates:
    """Coordinates of the class of the k-cycle z; equal iff homologous."""
    if basis is None:
        basis = HomologyBasis(X, k)
    return basis.coordinates(z)
