"""Proper symmetry groups as explicit sets of rotation matrices.

Groups are realized by breadth-first closure from a handful of generators
per catalog polytope and stored densely, shape (|G|, N, N). The edge action
of every element is computed by vertex lookup, from which orbits, the
stabilizer of a base edge and its cosets follow.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .numeric import DEFAULT_TOL, PointIndex, Tol, is_special_orthogonal
from .polytopes import PHI, Polytope, canonical_name, hyperplane_basis

GROUP_FORMAT_VERSION = 1
DEFAULT_MAX_ORDER = 50000


class ClosureOverflow(RuntimeError):
    """Closure produced more than ``max_order`` elements."""


class NotASymmetry(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MatrixGroup:
    """Finite group of N x N orthogonal matrices, identity first.

    Constructing one directly does no validation (test fixtures rely on
    that); use ``close_group`` to build a verified group.
    """

    elements: np.ndarray
    generator_indices: tuple = ()
    tol: Tol = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        els = np.array(self.elements, dtype=float)
        if els.ndim != 3 or els.shape[1] != els.shape[2]:
            raise ValueError(f"elements must have shape (G, N, N), got {els.shape}")
        els.setflags(write=False)
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "generator_indices", tuple(int(i) for i in self.generator_indices))
        object.__setattr__(self, "_index", None)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements.shape[1]

    @property
    def generators(self) -> np.ndarray:
        return self.elements[list(self.generator_indices)]

    def index_of(self, mats) -> np.ndarray:
        """Element index of each matrix (-1 if absent)."""
        if self._index is None:
            object.__setattr__(self, "_index", PointIndex(self.elements, self.tol))
        mats = np.asarray(mats, dtype=float).reshape(-1, self.dim, self.dim)
        return self._index.find(mats, exhaustive=self.order <= 200)

    def check_closure(self) -> None:
        """Raise unless the set contains I, is closed and holds only rotations.

        Closure under left multiplication by the generators suffices: every
        element is a word in the generators and the set is finite.
        """
        eye = np.eye(self.dim)
        if self.index_of(eye)[0] < 0:
            raise ValueError("group lacks the identity")
        bad = [i for i, m in enumerate(self.elements) if not is_special_orthogonal(m, self.tol)]
        if bad:
            raise ValueError(f"elements {bad[:5]} are not rotations")
        gens = self.generators if self.generator_indices else self.elements
        products = np.matmul(gens[:, None], self.elements[None]).reshape(-1, self.dim, self.dim)
        if np.any(self.index_of(products) < 0):
            raise ValueError("group is not closed under products")
        if np.any(self.index_of(np.transpose(self.elements, (0, 2, 1))) < 0):
            raise ValueError("group is not closed under inverses")

    def to_dict(self) -> dict:
        return {
            "format": "matrix-group",
            "version": GROUP_FORMAT_VERSION,
            "dim": self.dim,
            "order": self.order,
            "generator_indices": list(self.generator_indices),
            "elements": self.elements.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> MatrixGroup:
        if d.get("format") != "matrix-group" or d.get("version") != GROUP_FORMAT_VERSION:
            raise ValueError("not a version-1 matrix-group document")
        g = cls(np.array(d["elements"], dtype=float), d.get("generator_indices", ()))
        if g.order != d["order"] or g.dim != d["dim"]:
            raise ValueError("order/dim fields disagree with elements")
        return g

    @classmethod
    def from_json(cls, text: str) -> MatrixGroup:
        return cls.from_dict(json.loads(text))


def close_group(generators, tol: Tol = DEFAULT_TOL, max_order: int = DEFAULT_MAX_ORDER) -> MatrixGroup:
    """Group generated by ``generators``, by BFS under left multiplication."""
    gens = np.array(generators, dtype=float)
    if gens.ndim == 2:
        gens = gens[None]
    if gens.ndim != 3 or not len(gens):
        raise ValueError("need at least one square generator")
    for k, g in enumerate(gens):
        if not is_special_orthogonal(g, tol):
            raise ValueError(f"generator {k} is not special orthogonal")
    n = gens.shape[1]
    index = PointIndex(np.eye(n)[None], tol)
    frontier = np.eye(n)[None]
    while len(frontier):
        cand = np.matmul(gens[:, None], frontier[None]).reshape(-1, n, n)
        cand = cand[index.find(cand, strict=True) < 0]
        if not len(cand):
            break
        # drop repeats inside the batch on both hash grids
        k0, k1 = index.keys(cand.reshape(len(cand), -1))
        keep = np.zeros(len(cand), bool)
        keep[np.unique(k0, return_index=True)[1]] = True
        keep &= np.isin(np.arange(len(cand)), np.unique(k1, return_index=True)[1])
        frontier = cand[keep]
        if len(index) + len(frontier) > max_order:
            raise ClosureOverflow(f"closure overflow: more than {max_order} elements")
        index.add(frontier)
    elements = index.points
    gen_idx = index.find(gens, strict=True)
    return MatrixGroup(elements, tuple(gen_idx), tol)


def signed_permutation_rotations(n: int) -> list[np.ndarray]:
    """Quarter turns in the coordinate planes (i, i+1).

    They generate every signed permutation matrix of determinant +1, which is
    the rotation group of the n-cube and of the n-cross-polytope.
    """
    gens = []
    for i in range(n - 1):
        m = np.eye(n)
        m[[i, i + 1], [i, i + 1]] = 0.0
        m[i, i + 1], m[i + 1, i] = -1.0, 1.0
        gens.append(m)
    return gens


def all_signed_permutation_rotations(n: int) -> list[np.ndarray]:
    out = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((-1, 1), repeat=n):
            m = np.zeros((n, n))
            m[list(range(n)), list(perm)] = signs
            if np.linalg.det(m) > 0:
                out.append(m)
    return out


def simplex_rotations(n: int) -> list[np.ndarray]:
    """3-cycles (0 1 k) of the n+1 simplex vertices, conjugated into R^n."""
    b = hyperplane_basis(n)
    gens = []
    for k in range(2, n + 1):
        # permutation sending e_0 -> e_1 -> e_k -> e_0
        perm = np.eye(n + 1)
        perm[[0, 1, k], [0, 1, k]] = 0.0
        perm[1, 0] = perm[k, 1] = perm[0, k] = 1.0
        gens.append(b @ perm @ b.T)
    return gens


def axis_rotation(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation in R^3."""
    u = np.asarray(axis, dtype=float)
    u = u / np.linalg.norm(u)
    k = np.array([[0, -u[2], u[1]], [u[2], 0, -u[0]], [-u[1], u[0], 0]])
    return np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * (k @ k)


def icosahedral_rotations() -> list[np.ndarray]:
    """A fifth turn about the vertex axis (0, 1, phi) and the coordinate 3-cycle."""
    cyc = np.roll(np.eye(3), 1, axis=0)
    return [axis_rotation((0, 1, PHI), 2 * np.pi / 5), cyc]


def _quat_left(q):
    a, b, c, d = q
    return np.array([[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]])


def _quat_right(q):
    a, b, c, d = q
    return np.array([[a, -b, -c, -d], [b, a, d, -c], [c, -d, a, b], [d, c, -b, a]])


def icosian_rotations() -> list[np.ndarray]:
    """Left and right multiplication by two generators of the binary icosahedral group."""
    s = np.array([1, 1, 1, 1]) / 2
    t = np.array([PHI, 1, 1 / PHI, 0]) / 2
    return [_quat_left(s), _quat_left(t), _quat_right(s), _quat_right(t)]


def rotations_24cell() -> list[np.ndarray]:
    """Quarter turns of the 4-cube plus a half-Hadamard rotation."""
    h = np.array([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]) / 2
    h[0] *= -1  # the symmetric Hadamard has det -1; flip a row to get a rotation
    return signed_permutation_rotations(4) + [h]


def catalog_generators(name: str) -> list[np.ndarray]:
    name = canonical_name(name)
    m = re.fullmatch(r"(simplex|hypercube|cross-polytope)-(\d+)", name)
    if m:
        n = int(m[2])
        return simplex_rotations(n) if m[1] == "simplex" else signed_permutation_rotations(n)
    if name in ("icosahedron", "dodecahedron"):
        return icosahedral_rotations()
    if name == "24cell":
        return rotations_24cell()
    if name == "600cell":
        return icosian_rotations()
    if name.startswith("cuboid-"):
        from .polytopes import build

        p = build(name)
        return [r for r in all_signed_permutation_rotations(3) if is_symmetry(p, r)]
    raise KeyError(f"no generators for {name!r}")


def expected_order(name: str) -> int:
    """Known rotation-group order for a catalog entry."""
    name = canonical_name(name)
    m = re.fullmatch(r"(simplex|hypercube|cross-polytope)-(\d+)", name)
    if m:
        n = int(m[2])
        if m[1] == "simplex":
            return math.factorial(n + 1) // 2
        return 2 ** (n - 1) * math.factorial(n)
    fixed = {"icosahedron": 60, "dodecahedron": 60, "24cell": 576, "600cell": 7200}
    if name in fixed:
        return fixed[name]
    if name.startswith("cuboid-"):
        return len(catalog_generators(name))
    raise KeyError(name)


def symmetry_group(p: Polytope, tol: Tol = DEFAULT_TOL, max_order: int = DEFAULT_MAX_ORDER) -> MatrixGroup:
    return close_group(catalog_generators(p.name), tol, max_order)


def vertex_action(p: Polytope, mats, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Vertex permutation of each matrix, shape (K, V); -1 where no vertex matches."""
    mats = np.asarray(mats, dtype=float).reshape(-1, p.ambient_dim, p.ambient_dim)
    images = np.einsum("kij,vj->kvi", mats, p.vertices)
    index = PointIndex(p.vertices, tol)
    return index.find(images, exhaustive=True).reshape(len(mats), p.vertex_count)


def is_symmetry(p: Polytope, m, tol: Tol = DEFAULT_TOL) -> bool:
    m = np.asarray(m, dtype=float)
    if m.shape != (p.ambient_dim, p.ambient_dim):
        raise ValueError("matrix and polytope dimensions disagree")
    perm = vertex_action(p, m, tol)[0]
    return bool(np.all(perm >= 0) and len(np.unique(perm)) == p.vertex_count)


def _edge_lookup(p: Polytope) -> np.ndarray:
    table = np.full((p.vertex_count, p.vertex_count), -1, dtype=np.intp)
    table[p.edges[:, 0], p.edges[:, 1]] = np.arange(p.edge_count)
    table[p.edges[:, 1], p.edges[:, 0]] = np.arange(p.edge_count)
    return table


def edge_actions(p: Polytope, mats, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Edge permutation of each matrix, shape (K, E): m(edge_l) = edge_{pi[l]}."""
    vperm = vertex_action(p, mats, tol)
    if np.any(vperm < 0):
        raise NotASymmetry("a vertex image is not a vertex")
    eperm = _edge_lookup(p)[vperm[:, p.edges[:, 0]], vperm[:, p.edges[:, 1]]]
    if np.any(eperm < 0):
        raise NotASymmetry("an edge image is not an edge")
    return eperm


def edge_action(p: Polytope, m, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    return edge_actions(p, m, tol)[0]


@dataclass(frozen=True)
class EdgeOrbitDecomposition:
    """Edge orbits under G plus the stabilizer/coset structure of one base edge.

    ``cosets[l]`` lists the element indices sending the base edge to edge l,
    for every l in the base edge's orbit.
    """

    orbits: tuple
    base_edge: int
    stabilizer: tuple
    cosets: dict
    group_order: int

    @property
    def stabilizer_order(self) -> int:
        return len(self.stabilizer)

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    @property
    def edge_count(self) -> int:
        return sum(self.orbit_sizes)

    def orbit_stabilizer_holds(self) -> bool:
        base_orbit = next(o for o in self.orbits if self.base_edge in o)
        return self.stabilizer_order * len(base_orbit) == self.group_order


def decompose_edges(p: Polytope, g: MatrixGroup, base_edge: int = 0, tol: Tol = DEFAULT_TOL) -> EdgeOrbitDecomposition:
    perms = edge_actions(p, g.elements, tol)
    # orbits via union of the edge cycles of all elements
    parent = np.arange(p.edge_count)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    sources = perms[list(g.generator_indices)] if g.generator_indices else perms
    for perm in sources:
        for a, b in enumerate(perm):
            ra, rb = find(a), find(int(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    roots = np.array([find(x) for x in range(p.edge_count)])
    orbits = sorted(
        (tuple(int(x) for x in np.flatnonzero(roots == r)) for r in set(roots.tolist())),
        key=lambda o: (-len(o), o[0]),
    )
    orbits = tuple(orbits)
    images = perms[:, base_edge]
    cosets = {int(l): tuple(int(i) for i in np.flatnonzero(images == l)) for l in np.unique(images)}
    stabilizer = cosets[base_edge]
    decomp = EdgeOrbitDecomposition(orbits, base_edge, stabilizer, cosets, g.order)
    if not decomp.orbit_stabilizer_holds():
        raise ArithmeticError("orbit-stabilizer count failed; group or edge action is inconsistent")
    return decomp


def is_edge_transitive(decomp: EdgeOrbitDecomposition) -> bool:
    return len(decomp.orbits) == 1
