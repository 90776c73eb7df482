"""Vertex/edge construction for edge-transitive polytopes and negative controls.

All catalog polytopes are centered at the origin and rescaled to unit edge
length. Edges are stored as index pairs (i, j) with i < j. Except for the
cuboid, the edge set is the set of minimal-distance vertex pairs, which is
the edge set for every regular polytope shipped here.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field

import numpy as np

from .numeric import DEFAULT_TOL, Tol

PHI = (1 + np.sqrt(5)) / 2


@dataclass(frozen=True, eq=False)
class Polytope:
    name: str
    vertices: np.ndarray
    edges: np.ndarray
    negative_control: bool = field(default=False, compare=False)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        e = np.array(self.edges, dtype=np.intp).reshape(-1, 2)
        if v.ndim != 2 or len(v) < 2:
            raise ValueError("need at least two vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertices have non-finite entries")
        if len(e) and (e.min() < 0 or e.max() >= len(v)):
            raise ValueError("edge refers to a missing vertex")
        if np.any(e[:, 0] == e[:, 1]):
            raise ValueError("edge endpoints must be distinct")
        e = np.sort(e, axis=1)
        e = e[np.lexsort((e[:, 1], e[:, 0]))]
        if len(np.unique(e, axis=0)) != len(e):
            raise ValueError("duplicate edge")
        if np.abs(v.mean(axis=0)).max() > DEFAULT_TOL.eq_tol * max(1.0, np.abs(v).max()):
            raise ValueError("vertex centroid is not at the origin")
        if np.linalg.matrix_rank(v, tol=1e-8) != v.shape[1]:
            raise ValueError("vertices do not span the ambient space")
        v.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "edges", e)

    @property
    def ambient_dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_vectors(self) -> np.ndarray:
        """Edge vectors v_j - v_i, shape (E, N). Defined only up to sign."""
        return self.vertices[self.edges[:, 1]] - self.vertices[self.edges[:, 0]]

    def edge_lengths(self) -> np.ndarray:
        return np.linalg.norm(self.edge_vectors(), axis=1)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ambient_dim": self.ambient_dim,
            "vertices": self.vertices.tolist(),
            "edges": self.edges.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> Polytope:
        p = cls(d["name"], d["vertices"], d["edges"])
        if p.ambient_dim != d.get("ambient_dim", p.ambient_dim):
            raise ValueError("ambient_dim disagrees with vertex coordinates")
        return p

    @classmethod
    def from_json(cls, text: str) -> Polytope:
        return cls.from_dict(json.loads(text))


def extract_edges(vertices, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """All vertex pairs at the minimal pairwise distance, as (i, j), i < j."""
    v = np.asarray(vertices, dtype=float)
    if len(v) < 2:
        raise ValueError("need at least two vertices")
    i, j = np.triu_indices(len(v), k=1)
    d = np.linalg.norm(v[i] - v[j], axis=1)
    keep = np.abs(d - d.min()) <= tol.eq_tol
    return np.stack([i[keep], j[keep]], axis=1)


def normalize_unit_edges(p: Polytope, tol: Tol = DEFAULT_TOL) -> Polytope:
    lengths = p.edge_lengths()
    if not len(lengths) or np.ptp(lengths) > tol.eq_tol * max(1.0, lengths.max()):
        raise ValueError(f"{p.name}: edge lengths are not uniform, not unit-normalizable")
    return Polytope(p.name, p.vertices / lengths.mean(), p.edges, p.negative_control)


def _from_vertices(name, vertices) -> Polytope:
    v = np.asarray(vertices, dtype=float)
    v = v - v.mean(axis=0)
    return normalize_unit_edges(Polytope(name, v, extract_edges(v)))


def _check_n(n):
    if not 2 <= n <= 6:
        raise ValueError(f"dimension {n} outside the supported range 2..6")


def build_hypercube(n: int) -> Polytope:
    _check_n(n)
    return _from_vertices(f"hypercube-{n}", list(itertools.product((-1, 1), repeat=n)))


def build_cross_polytope(n: int) -> Polytope:
    _check_n(n)
    eye = np.eye(n)
    return _from_vertices(f"cross-polytope-{n}", np.vstack([eye, -eye]))


def hyperplane_basis(n: int) -> np.ndarray:
    """Orthonormal rows (n, n+1) spanning the sum-zero hyperplane of R^(n+1).

    Helmert rows: (1, ..., 1, -k, 0, ..., 0) / sqrt(k (k+1)) for k = 1..n.
    """
    b = np.zeros((n, n + 1))
    for k in range(1, n + 1):
        b[k - 1, :k] = 1.0
        b[k - 1, k] = -k
        b[k - 1] /= np.sqrt(k * (k + 1))
    return b


def build_simplex(n: int) -> Polytope:
    _check_n(n)
    # column i of the hyperplane basis is the image of the basis point e_i
    return _from_vertices(f"simplex-{n}", hyperplane_basis(n).T)


def build_24cell() -> Polytope:
    verts = set()
    for pos in itertools.combinations(range(4), 2):
        for signs in itertools.product((-1, 1), repeat=2):
            x = [0, 0, 0, 0]
            x[pos[0]], x[pos[1]] = signs
            verts.add(tuple(x))
    return _from_vertices("24cell", sorted(verts))


def icosahedron_vertices() -> np.ndarray:
    base = [(0, s1, s2 * PHI) for s1 in (-1, 1) for s2 in (-1, 1)]
    return np.array([np.roll(b, r) for r in range(3) for b in base], dtype=float)


def dodecahedron_vertices() -> np.ndarray:
    cube = list(itertools.product((-1, 1), repeat=3))
    # (0, ±phi, ±1/phi) cyclic: the dual of the icosahedron in the same frame
    base = [(0, s1 * PHI, s2 / PHI) for s1 in (-1, 1) for s2 in (-1, 1)]
    rest = [np.roll(b, r) for r in range(3) for b in base]
    return np.array(cube + rest, dtype=float)


def build_icosahedron() -> Polytope:
    return _from_vertices("icosahedron", icosahedron_vertices())


def build_dodecahedron() -> Polytope:
    return _from_vertices("dodecahedron", dodecahedron_vertices())


def _even_permutations(k):
    for perm in itertools.permutations(range(k)):
        inversions = sum(perm[a] > perm[b] for a in range(k) for b in range(a + 1, k))
        if inversions % 2 == 0:
            yield perm


def build_600cell() -> Polytope:
    """The 120 unit icosians (binary icosahedral group) as points of R^4."""
    verts = []
    eye = np.eye(4)
    verts.extend(np.vstack([eye, -eye]))
    verts.extend(np.array(s) / 2 for s in itertools.product((-1, 1), repeat=4))
    base = np.array([PHI, 1.0, 1 / PHI, 0.0]) / 2
    for perm in _even_permutations(4):
        for signs in itertools.product((-1, 1), repeat=3):
            x = base * np.array(signs + (1,))
            verts.append(x[list(perm)])
    return _from_vertices("600cell", verts)


def build_cuboid(a: float, b: float, c: float) -> Polytope:
    """Box with sides a, b, c. Edges join vertices differing in one sign.

    Not edge-transitive unless a == b == c; kept as a negative control, so
    the edge lengths are left as given.
    """
    sides = np.array([a, b, c], dtype=float)
    if np.any(sides <= 0):
        raise ValueError("cuboid sides must be positive")
    signs = np.array(list(itertools.product((-1, 1), repeat=3)))
    verts = signs * sides / 2
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(8), 2)
        if np.count_nonzero(signs[i] != signs[j]) == 1
    ]
    name = "cuboid-" + "-".join(f"{s:g}" for s in sides)
    uniform = np.ptp(sides) == 0
    return Polytope(name, verts, edges, negative_control=not uniform)


DEFAULT_CATALOG = (
    [f"simplex-{n}" for n in range(2, 7)]
    + [f"hypercube-{n}" for n in range(2, 7)]
    + [f"cross-polytope-{n}" for n in range(2, 7)]
    + ["icosahedron", "dodecahedron", "24cell"]
)
CONTROLS = ["cuboid-1-1-2", "cuboid-1-2-3"]
ALIASES = {
    "triangle": "simplex-2",
    "tetrahedron": "simplex-3",
    "square": "hypercube-2",
    "cube": "hypercube-3",
    "tesseract": "hypercube-4",
    "octahedron": "cross-polytope-3",
    "16cell": "cross-polytope-4",
}

_FAMILIES = {
    "simplex": build_simplex,
    "hypercube": build_hypercube,
    "cross-polytope": build_cross_polytope,
}
_SINGLES = {
    "icosahedron": build_icosahedron,
    "dodecahedron": build_dodecahedron,
    "24cell": build_24cell,
    "600cell": build_600cell,
}
_NUM = r"(\d+(?:\.\d+)?)"


def canonical_name(name: str) -> str:
    return ALIASES.get(name, name)


def build(name: str) -> Polytope:
    """Catalog polytope by name, e.g. ``hypercube-4``, ``24cell``, ``cuboid-1-1-2``."""
    name = canonical_name(name)
    if name in _SINGLES:
        return _SINGLES[name]()
    m = re.fullmatch(r"(simplex|hypercube|cross-polytope)-(\d+)", name)
    if m:
        return _FAMILIES[m[1]](int(m[2]))
    m = re.fullmatch(rf"cuboid-{_NUM}-{_NUM}-{_NUM}", name)
    if m:
        return build_cuboid(*(float(s) for s in m.groups()))
    raise KeyError(f"unknown polytope {name!r}")
