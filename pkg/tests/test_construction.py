from itertools import combinations, permutations, product
import random

import pytest

from twotorsion.complex import delta_degree, from_facets, simplex_boundary_chain
from twotorsion.construction import (
    ConstructionError,
    TwoGroup,
    build_for_group,
    build_p,
    build_p2,
    build_telescope,
    certify,
    check_bounds,
    empty_triangle_partitions,
    identify_roles,
    p_top_faces,
    realize_group,
)
from twotorsion.homology import HomologyBasis, homology


def test_two_group_parsing():
    assert TwoGroup.parse("2^2+2^1") == TwoGroup((2, 1)) == TwoGroup.parse("1,2")
    assert TwoGroup((1, 3)).exponents == (3, 1)
    assert TwoGroup((3, 1)).invariant_factors() == (2, 8)
    assert TwoGroup((3, 1)).order == 16
    with pytest.raises(ValueError):
        TwoGroup(())
    with pytest.raises(ValueError):
        TwoGroup.parse("3^2")
    with pytest.raises(ValueError):
        TwoGroup((0,))


def test_p2_block():
    blk = build_p2()
    assert blk.complex.f_vector() == (6, 15, 9)
    assert {blk.a_sphere, blk.b_sphere} == {(1, 2, 3), (4, 5, 6)}
    h = homology(blk.complex)
    assert h.betti[1] == 1 and h.torsion[1] == ()


def test_p2_sphere_partition_is_unique():
    # all 10 splits of {1..6} into two triples, checked against the face list
    X = build_p2().complex
    splits = [(S, tuple(v for v in range(1, 7) if v not in S))
              for S in combinations(range(1, 7), 3) if 1 in S]
    assert len(splits) == 10
    empty = [s for s in splits
             if all(t not in X and all(e in X for e in combinations(t, 2)) for t in s)]
    assert empty == [((1, 2, 3), (4, 5, 6))]
    assert empty_triangle_partitions(X, 2) == empty


def test_identify_roles_p2_exactly_one_assignment():
    X = build_p2().complex
    blk = identify_roles(X, (4, 5, 6), (1, 2, 3))
    assert blk.a_sphere == build_p2().a_sphere
    basis = HomologyBasis(X, 1)
    a = basis.coordinates(simplex_boundary_chain(X, blk.a_sphere))
    b = basis.coordinates(simplex_boundary_chain(X, blk.b_sphere))
    assert b in (a.scaled(2), a.scaled(-2))
    assert a not in (b.scaled(2), b.scaled(-2))


def test_identify_roles_rejects_cylinder(cylinder):
    with pytest.raises(ConstructionError):
        identify_roles(cylinder, (1, 2, 3), (4, 5, 6))


@pytest.mark.parametrize("d", [3, 4])
def test_p_d_block(d):
    blk = build_p(d)
    X = blk.complex
    assert X.num_vertices == 2 * (d + 1)
    assert set(blk.a_sphere).isdisjoint(blk.b_sphere)
    assert set(blk.a_sphere) | set(blk.b_sphere) == set(X.vertices)
    for s in (blk.a_sphere, blk.b_sphere):
        assert tuple(sorted(s)) not in X
        assert all(f in X for f in combinations(sorted(s), d))
    h = homology(X)
    assert h.betti[d - 1] == 1 and h.torsion[d - 1] == ()
    prev = build_p(d - 1)
    # a-sphere extends the previous a-sphere by the new suspension point v'
    assert set(blk.a_sphere) == {2 * d + 1, *prev.a_sphere}


def test_p3_top_faces():
    assert len(build_p(3).complex.faces(3)) == 2 * 9 + 2 == 20


def test_top_face_recursion_closed_form():
    # f(2) = 9, f(d) = 2 f(d-1) + 2, solved: 11 * 2^(d-2) - 2
    f = {2: 9}
    for d in range(3, 9):
        f[d] = 2 * f[d - 1] + 2
    assert all(p_top_faces(d) == f[d] for d in f)
    for d in range(2, 6):
        assert len(build_p(d).complex.faces(d)) == f[d]


@pytest.mark.parametrize("d,t,torsion", [(2, 1, 2), (2, 3, 8), (3, 2, 4)])
def test_telescope_examples(d, t, torsion):
    T = build_telescope(d, t)
    X = T.complex
    assert X.num_vertices == (d + 1) * (t + 1)
    h = homology(X, [d - 1])
    assert h.torsion[d - 1] == (torsion,)
    assert h.betti[d - 1] == 0
    assert len(T.sphere_lists) == t + 1
    flat = [v for s in T.sphere_lists for v in s]
    assert len(flat) == len(set(flat)) and set(flat) == set(X.vertices)


def test_rp2_telescope_faces():
    X = build_telescope(2, 1).complex
    assert X.f_vector() == (6, 15, 10)


@pytest.mark.parametrize("t", [2, 3, 4])
def test_gluing_bijection_independence(t):
    perms = list(permutations(range(3)))
    rng = random.Random(t)
    choices = list(product(perms, repeat=t - 1))
    if len(choices) > 40:
        choices = rng.sample(choices, 40)
    for bij in choices:
        T = build_telescope(2, t, bijections=bij)
        h = homology(T.complex, [1])
        assert h.torsion[1] == (2 ** t,) and h.betti[1] == 0


def test_bad_bijection_rejected():
    with pytest.raises(ValueError):
        build_telescope(2, 2, bijections=[(0, 0, 1)])


def test_build_for_group_examples():
    X = build_for_group(2, TwoGroup((2, 1)))
    assert X.num_vertices == 15
    assert homology(X, [1]).torsion[1] == (2, 4)
    Y = build_for_group(2, TwoGroup((1,)))
    assert Y.f_vector() == (6, 15, 10)
    assert homology(Y, [1]).torsion[1] == (2,)
    assert build_for_group(2, TwoGroup((3,))).num_vertices == 12 <= 2 * 3 * 3


def test_build_for_random_groups():
    rng = random.Random(5)
    for _ in range(30):
        d = rng.choice([2, 3])
        total = rng.randint(1, 12)
        exps = []
        while total:
            e = rng.randint(1, total)
            exps.append(e)
            total -= e
        G = TwoGroup(tuple(exps))
        X = build_for_group(d, G)
        assert certify(X, d, G) == G.invariant_factors()
        assert X.num_vertices == sum((d + 1) * (e + 1) for e in G.exponents)
        assert X.num_vertices <= 2 * (d + 1) * G.log2_order


def test_certify_rejects_wrong_group():
    X = build_for_group(2, TwoGroup((2,)))
    with pytest.raises(ConstructionError):
        certify(X, 2, TwoGroup((1, 1)))


def test_check_bounds_examples():
    X = build_telescope(2, 4).complex
    r = check_bounds(X, 2, TwoGroup((4,)))
    assert r.num_vertices == 15 == (2 + 1) * (4 + 1)
    assert r.delta_bound == 30
    assert r.delta <= 30 and r.passed
    single = check_bounds(build_telescope(2, 1).complex, 2, TwoGroup((1,)))
    assert single.delta == 5 and single.passed


def test_group_realization_spheres_cover_vertices():
    R = realize_group(3, TwoGroup((2, 2)))
    flat = [v for chain in R.sphere_chains for s in chain for v in s]
    assert sorted(flat) == sorted(R.complex.vertices)
    assert len(flat) == len(set(flat))


def test_delta_within_bound_across_grid():
    for d in (2, 3, 4):
        bound = 2 * len(build_p(d).complex.faces(d - 1))
        for t in (1, 2, 3):
            assert delta_degree(build_telescope(d, t).complex, 0, d - 1) <= bound
