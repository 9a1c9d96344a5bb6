"""Complexes with prescribed 2-group torsion in codimension-one homology.

The building block P(d) has 2(d+1) vertices split into two disjoint
d-simplex boundaries a and b with 2[a] = [b] in homology. Chaining t
copies b-to-a and filling the last b-sphere gives torsion Z/2^t; disjoint
unions of such telescopes realize any finite abelian 2-group.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .complex import (
    SimplicialComplex,
    delta_degree,
    disjoint_union,
    from_facets,
    identify_vertices,
    prefix_label,
    simplex_boundary_chain,
    suspension_with_points,
)
from .homology import homology, is_boundary, torsion_signature


class ConstructionError(RuntimeError):
    """A built complex failed its integrity check."""


P2_FACETS = (
    (1, 2, 6), (1, 3, 6), (2, 4, 6), (3, 5, 6), (2, 3, 4),
    (2, 3, 5), (1, 3, 4), (1, 4, 5), (1, 2, 5),
)


@dataclass(frozen=True)
class TwoGroup:
    """Direct sum of cyclic groups Z/2^e for each exponent e."""

    exponents: tuple

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if not exps:
            raise ValueError("a TwoGroup needs at least one exponent")
        if any(e < 1 for e in exps):
            raise ValueError(f"exponents must be positive, got {exps}")
        object.__setattr__(self, "exponents", tuple(sorted(exps, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "TwoGroup":
        """Accept ``"3,1"`` (exponents) or ``"2^3+2^1"`` (cyclic orders)."""
        text = text.replace(" ", "")
        if "^" in text:
            exps = []
            for term in text.split("+"):
                base, _, e = term.partition("^")
                if base != "2" or not e:
                    raise ValueError(f"not a power of two: {term!r}")
                exps.append(int(e))
            return cls(tuple(exps))
        return cls(tuple(int(e) for e in text.split(",") if e))

    @property
    def log2_order(self) -> int:
        return sum(self.exponents)

    @property
    def order(self) -> int:
        return 2 ** self.log2_order

    def invariant_factors(self) -> tuple:
        return tuple(2 ** e for e in reversed(self.exponents))

    def __str__(self):
        return " + ".join(f"Z/{2 ** e}" for e in self.exponents)


@dataclass(frozen=True)
class Block:
    complex: SimplicialComplex
    d: int
    a_sphere: tuple
    b_sphere: tuple


@dataclass(frozen=True)
class Telescope:
    complex: SimplicialComplex
    d: int
    t: int
    sphere_lists: tuple

    @property
    def sphere_chains(self) -> tuple:
        return (self.sphere_lists,)


@dataclass(frozen=True)
class GroupRealization:
    complex: SimplicialComplex
    d: int
    group: TwoGroup
    sphere_chains: tuple


def identify_roles(X: SimplicialComplex, sphere_x: Sequence, sphere_y: Sequence, d: int | None = None) -> Block:
    """Decide which sphere is a and which is b, so that [b] = +-2[a].

    Raises ConstructionError when neither assignment satisfies the relation.
    """
    sphere_x, sphere_y = tuple(sphere_x), tuple(sphere_y)
    if d is None:
        d = len(sphere_x) - 1
    if len(sphere_x) != d + 1 or len(sphere_y) != d + 1 or set(sphere_x) & set(sphere_y):
        raise ConstructionError("spheres must be disjoint lists of d+1 vertices")
    zx = simplex_boundary_chain(X, sphere_x)
    zy = simplex_boundary_chain(X, sphere_y)

    def twice(z1, z2):  # [z2] = +-2[z1]
        return any(is_boundary(X, d - 1, [b - s * 2 * a for a, b in zip(z1, z2)]) for s in (1, -1))

    ok_x_is_a, ok_y_is_a = twice(zx, zy), twice(zy, zx)
    if ok_x_is_a == ok_y_is_a:
        raise ConstructionError("sphere classes do not satisfy b = +-2a in exactly one orientation")
    if ok_x_is_a:
        return Block(X, d, sphere_x, sphere_y)
    return Block(X, d, sphere_y, sphere_x)


@lru_cache(maxsize=None)
def build_p2() -> Block:
    """Six-vertex projective plane with one triangle removed."""
    X = from_facets(P2_FACETS)
    return identify_roles(X, (1, 2, 3), (4, 5, 6), 2)


@lru_cache(maxsize=None)
def build_p(d: int) -> Block:
    """Building block P(d) on vertices 1..2(d+1), by suspension from P(2)."""
    if d < 2:
        raise ValueError("P(d) needs d >= 2")
    if d == 2:
        return build_p2()
    prev = build_p(d - 1)
    vs, us = prev.a_sphere, prev.b_sphere
    v_new, u_new = 2 * d + 1, 2 * d + 2
    S = suspension_with_points(prev.complex, v_new, u_new)
    X = from_facets(list(S.facets()) + [(u_new,) + vs, (v_new,) + us])
    return identify_roles(X, (v_new,) + vs, (u_new,) + us, d)


def build_telescope(d: int, t: int, bijections: Sequence[Sequence[int]] | None = None) -> Telescope:
    """Chain t copies of P(d), b-sphere to a-sphere, then fill the last b-sphere.

    ``bijections[i]`` (optional) permutes the a-sphere of copy i+1 before it
    is glued to the b-sphere of copy i; the default is index order.
    """
    if d < 2 or t < 1:
        raise ValueError("need d >= 2 and t >= 1")
    block = build_p(d)
    if bijections is None:
        bijections = [tuple(range(d + 1))] * (t - 1)
    if len(bijections) != t - 1:
        raise ValueError(f"need {t - 1} gluing bijections, got {len(bijections)}")
    X = disjoint_union(*([block.complex] * t))
    a = [[prefix_label(i, v) for v in block.a_sphere] for i in range(t)]
    b = [[prefix_label(i, v) for v in block.b_sphere] for i in range(t)]
    spheres = [a[0]]
    for i, perm in enumerate(bijections):
        if sorted(perm) != list(range(d + 1)):
            raise ValueError(f"not a permutation of 0..{d}: {perm!r}")
        target = [a[i + 1][p] for p in perm]
        X = identify_vertices(X, b[i], target)
        merged = [min(x, y) for x, y in zip(b[i], target)]
        spheres.append(merged)
    spheres.append(b[t - 1])
    X = from_facets(list(X.facets()) + [b[t - 1]])
    return Telescope(X, d, t, tuple(tuple(s) for s in spheres))


def realize_group(d: int, G: TwoGroup) -> GroupRealization:
    """Disjoint union of one telescope per cyclic summand of G."""
    if d < 2:
        raise ValueError("need d >= 2")
    telescopes = [build_telescope(d, e) for e in G.exponents]
    X = disjoint_union(*(T.complex for T in telescopes))
    chains = tuple(
        tuple(tuple(prefix_label(i, v) for v in s) for s in T.sphere_lists)
        for i, T in enumerate(telescopes)
    )
    return GroupRealization(X, d, G, chains)


def build_for_group(d: int, G: TwoGroup) -> SimplicialComplex:
    return realize_group(d, G).complex


def p_top_faces(d: int) -> int:
    """Closed form of the top-face count of P(d)."""
    return 11 * 2 ** (d - 2) - 2


@dataclass(frozen=True)
class BoundsReport:
    num_vertices: int
    vertex_bound: int
    delta: int
    delta_bound: int

    @property
    def vertices_ok(self) -> bool:
        return self.num_vertices <= self.vertex_bound

    @property
    def delta_ok(self) -> bool:
        return self.delta <= self.delta_bound

    @property
    def passed(self) -> bool:
        return self.vertices_ok and self.delta_ok


def check_bounds(X: SimplicialComplex, d: int, G: TwoGroup) -> BoundsReport:
    """Compare |V| with 2(d+1)log2|G| and the vertex degree in (d-1)-faces
    with twice the number of (d-1)-faces of P(d)."""
    return BoundsReport(
        num_vertices=X.num_vertices,
        vertex_bound=2 * (d + 1) * G.log2_order,
        delta=delta_degree(X, 0, d - 1),
        delta_bound=2 * len(build_p(d).complex.faces(d - 1)),
    )


def certify(X: SimplicialComplex, d: int, G: TwoGroup) -> tuple:
    """Torsion of H_{d-1}(X); raises ConstructionError unless it matches G."""
    torsion = homology(X, dims=[d - 1]).torsion[d - 1]
    if torsion != torsion_signature(G.invariant_factors()):
        raise ConstructionError(f"expected torsion {G.invariant_factors()}, found {torsion}")
    return torsion


def empty_triangle_partitions(X: SimplicialComplex, d: int) -> list:
    """All splits of V(X) into two disjoint (d+1)-sets whose simplex is missing
    but whose boundary is present. Used to check the sphere pair of P(d)."""
    verts = X.vertices
    out = []
    for S in combinations(verts, d + 1):
        T = tuple(v for v in verts if v not in S)
        if len(T) != d + 1 or S > T:
            continue
        if all(_is_empty_simplex(X, s) for s in (S, T)):
            out.append((S, T))
    return out


def _is_empty_simplex(X, s) -> bool:
    return s not in X and all(f in X for f in combinations(s, len(s) - 1))
