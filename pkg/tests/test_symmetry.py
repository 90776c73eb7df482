import itertools
import json
import math

import numpy as np
import pytest

from conftest import decomposition, group, polytope
from sumsquares.numeric import is_special_orthogonal, rotation_2d
from sumsquares.polytopes import DEFAULT_CATALOG, hyperplane_basis
from sumsquares.symmetry import (
    ClosureOverflow,
    MatrixGroup,
    NotASymmetry,
    all_signed_permutation_rotations,
    catalog_generators,
    close_group,
    decompose_edges,
    edge_action,
    expected_order,
    is_edge_transitive,
    is_symmetry,
)


def same_set(g, mats):
    """Every oracle matrix is in g exactly once and the sizes agree."""
    idx = g.index_of(np.asarray(mats))
    return len(mats) == g.order and np.all(idx >= 0) and len(set(idx.tolist())) == g.order


def cycle_type(perm):
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        n, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            n += 1
        out.append(n)
    return sorted(out)


# ---- brute-force oracles, independent of the closure code ----

def frame_rotations_3d(vertices):
    """All rotations mapping an adjacent vertex pair onto any adjacent pair."""
    v = np.asarray(vertices)
    d = np.linalg.norm(v[:, None] - v[None], axis=-1)
    dmin = d[d > 1e-9].min()
    adj = np.abs(d - dmin) < 1e-9
    a, b = v[0], v[np.flatnonzero(adj[0])[0]]

    def frame(x, y):
        return np.column_stack([x, y, np.cross(x, y)])

    src_inv = np.linalg.inv(frame(a, b))
    out = []
    for i, j in zip(*np.nonzero(adj)):
        r = frame(v[i], v[j]) @ src_inv
        imgs = v @ r.T
        if is_special_orthogonal(r) and all(np.abs(v - x).max(axis=1).min() < 1e-9 for x in imgs):
            out.append(r)
    return out


def quat_mul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def binary_octahedral():
    hurwitz = [s * e for e in np.eye(4) for s in (1, -1)]
    hurwitz += [np.array(s) / 2 for s in itertools.product((-1, 1), repeat=4)]
    other = []
    for i, j in itertools.combinations(range(4), 2):
        for si, sj in itertools.product((-1, 1), repeat=2):
            x = np.zeros(4)
            x[i], x[j] = si, sj
            other.append(x / np.sqrt(2))
    return hurwitz, other


def rotations_24cell_by_quaternions():
    """x -> a x b with a, b from the same coset of the Hurwitz units in the binary octahedral group."""
    t, o = binary_octahedral()
    mats = {}
    for coset in (t, o):
        for a, b in itertools.product(coset, repeat=2):
            m = np.column_stack([quat_mul(quat_mul(a, e), b) for e in np.eye(4)])
            mats[tuple(np.round(m, 9).ravel())] = m
    return list(mats.values())


def simplex_rotations_brute(n):
    b = hyperplane_basis(n)
    out = []
    for perm in itertools.permutations(range(n + 1)):
        p = np.eye(n + 1)[:, perm]
        m = b @ p @ b.T
        if np.linalg.det(m) > 0:
            out.append(m)
    return out


def test_close_group_small():
    assert close_group([np.eye(3)]).order == 1
    g = close_group([rotation_2d(np.pi / 2)])
    assert g.order == 4
    g.check_closure()
    with pytest.raises(ValueError):
        close_group([np.diag([1.0, -1.0])])


def test_closure_overflow():
    with pytest.raises(ClosureOverflow):
        close_group([rotation_2d(2 * np.pi / 50)], max_order=20)
    # an irrational angle never closes
    with pytest.raises(ClosureOverflow):
        close_group([rotation_2d(1.0)], max_order=500)


def test_cube_group_matches_signed_permutations():
    oracle = all_signed_permutation_rotations(3)
    assert len(oracle) == 24
    assert same_set(group("hypercube-3"), oracle)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hypercube_cross_groups_brute(n):
    oracle = all_signed_permutation_rotations(n)
    assert len(oracle) == 2 ** (n - 1) * math.factorial(n)
    assert same_set(group(f"hypercube-{n}"), oracle)
    assert same_set(group(f"cross-polytope-{n}"), oracle)


@pytest.mark.parametrize("n", range(2, 7))
def test_simplex_group_brute(n):
    oracle = simplex_rotations_brute(n)
    assert len(oracle) == math.factorial(n + 1) // 2
    assert same_set(group(f"simplex-{n}"), oracle)


@pytest.mark.parametrize("name", ["icosahedron", "dodecahedron", "hypercube-3", "cross-polytope-3", "simplex-3"])
def test_3d_groups_by_frame_enumeration(name):
    oracle = frame_rotations_3d(polytope(name).vertices)
    assert same_set(group(name), oracle)


def test_icosahedral_order():
    assert len(frame_rotations_3d(polytope("icosahedron").vertices)) == 60


def test_24cell_group_by_quaternions():
    oracle = rotations_24cell_by_quaternions()
    assert len(oracle) == 576
    p = polytope("24cell")
    assert all(is_symmetry(p, m) for m in oracle[::37])
    assert same_set(group("24cell"), oracle)


@pytest.mark.parametrize("name", DEFAULT_CATALOG)
def test_catalog_orders_and_orbit_stabilizer(name):
    g = group(name)
    assert g.order == expected_order(name)
    d = decomposition(name)
    assert d.stabilizer_order * polytope(name).edge_count == g.order


@pytest.mark.parametrize("name", DEFAULT_CATALOG)
def test_generators_are_symmetries(name):
    p = polytope(name)
    assert all(is_symmetry(p, m) for m in catalog_generators(name))


@pytest.mark.parametrize("name", DEFAULT_CATALOG)
def test_closure_invariants(name):
    g = group(name)
    g.check_closure()
    assert np.allclose(g.elements[0], np.eye(g.dim))
    if g.order <= 600:
        prods = np.matmul(g.elements[:, None], g.elements[None]).reshape(-1, g.dim, g.dim)
        idx = g.index_of(prods).reshape(g.order, g.order)
        assert np.all(idx >= 0)
        # Latin square: each row of the multiplication table is a permutation
        assert all(len(set(row)) == g.order for row in idx.tolist())


@pytest.mark.slow
def test_600cell_group():
    g = group("600cell")
    assert g.order == 7200
    g.check_closure()
    d = decomposition("600cell")
    assert d.orbit_sizes == [720] and d.stabilizer_order == 10


def test_check_closure_detects_missing_element():
    g = group("hypercube-3")
    broken = MatrixGroup(g.elements[:-1], g.generator_indices)
    with pytest.raises(ValueError):
        broken.check_closure()


def test_is_symmetry():
    cube = polytope("hypercube-3")
    rz = lambda t: np.block([[rotation_2d(t), np.zeros((2, 1))], [np.zeros((1, 2)), np.ones((1, 1))]])
    assert is_symmetry(cube, np.eye(3))
    assert is_symmetry(cube, rz(np.pi / 2))
    assert not is_symmetry(cube, rz(np.pi / 4))
    for name in ("icosahedron", "24cell", "simplex-4"):
        p = polytope(name)
        assert is_symmetry(p, np.eye(p.ambient_dim))


def test_edge_action():
    cube = polytope("hypercube-3")
    np.testing.assert_array_equal(edge_action(cube, np.eye(3)), np.arange(12))
    rz = np.array([[0.0, -1, 0], [1, 0, 0], [0, 0, 1]])
    assert cycle_type(edge_action(cube, rz).tolist()) == [4, 4, 4]
    with pytest.raises(NotASymmetry):
        edge_action(cube, np.array([[np.sqrt(0.5), -np.sqrt(0.5), 0], [np.sqrt(0.5), np.sqrt(0.5), 0], [0, 0, 1]]))


@pytest.mark.parametrize("name", ["hypercube-3", "icosahedron", "24cell"])
def test_edge_action_functorial(name):
    p, g = polytope(name), group(name)
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = g.elements[rng.integers(g.order, size=2)]
        lhs = edge_action(p, a @ b)
        rhs = edge_action(p, a)[edge_action(p, b)]
        np.testing.assert_array_equal(lhs, rhs)


@pytest.mark.parametrize("name,e,k", [("hypercube-3", 12, 2), ("icosahedron", 30, 2), ("24cell", 96, 6),
                                       ("simplex-3", 6, 2), ("cross-polytope-4", 24, 8)])
def test_decompose_transitive(name, e, k):
    p, g = polytope(name), group(name)
    for base in (0, e // 2, e - 1):
        d = decompose_edges(p, g, base)
        assert d.orbit_sizes == [e] and is_edge_transitive(d)
        assert d.stabilizer_order == k and k * e == g.order
        assert len(d.cosets) == e
        assert {len(c) for c in d.cosets.values()} == {k}
        # cosets partition G
        members = sorted(i for c in d.cosets.values() for i in c)
        assert members == list(range(g.order))


def test_stabilizer_includes_edge_flip():
    p, g = polytope("hypercube-3"), group("hypercube-3")
    d = decompose_edges(p, g, 0)
    i, j = p.edges[0]
    flips = 0
    for r in d.stabilizer:
        img = g.elements[r] @ p.vertices[i]
        flips += np.allclose(img, p.vertices[j])
    assert flips == 1


def test_decompose_cuboid_controls():
    d = decompose_edges(polytope("cuboid-1-1-2"), group("cuboid-1-1-2"))
    assert d.orbit_sizes == [8, 4] and not is_edge_transitive(d)
    assert group("cuboid-1-1-2").order == 8
    assert d.orbit_stabilizer_holds()
    d = decompose_edges(polytope("cuboid-1-2-3"), group("cuboid-1-2-3"))
    assert d.orbit_sizes == [4, 4, 4]


def test_group_json_roundtrip():
    g = group("icosahedron")
    doc = json.loads(g.to_json())
    assert doc["format"] == "matrix-group" and doc["version"] == 1 and doc["order"] == 60
    h = MatrixGroup.from_json(g.to_json())
    np.testing.assert_array_equal(h.elements, g.elements)
    assert h.generator_indices == g.generator_indices
    doc["version"] = 2
    with pytest.raises(ValueError):
        MatrixGroup.from_dict(doc)


def test_unknown_generators():
    with pytest.raises(KeyError):
        catalog_generators("moebius")
