"""Numerical checks of the representation-theoretic identities behind the law.

All representations handled here are the real standard representation of a
rotation group on R^N, so complex conjugation of matrix entries is the
identity. Every check returns an absolute deviation; comparing it against a
tolerance is left to the caller.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .numeric import DEFAULT_TOL, Tol, as_vec, orthonormalize
from .polytopes import Polytope
from .symmetry import MatrixGroup

# character norms of genuine groups are integers; anything this close to 1 is irreducible
IRREDUCIBLE_TOL = 1e-3


class HypothesisError(ValueError):
    """Input lies outside the hypotheses of the identity being checked."""


@dataclass(frozen=True)
class OrthogonalityReport:
    """Outcome of the full orthogonality-relation check.

    ``worst_indices`` is the zero-based quadruple (n, m, n', m') with the
    largest deviation; ``diagonal_deviation`` restricts to n = n', m = m'.
    """

    max_abs_deviation: float
    worst_indices: tuple
    group_order: int
    dimension: int
    diagonal_deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_abs_deviation <= self.tol

    def to_dict(self) -> dict:
        d = asdict(self)
        d["worst_indices"] = list(self.worst_indices)
        d["passed"] = self.passed
        return d


def verify_unitary(g: MatrixGroup) -> float:
    """max over R of max_ij |(R^T R - I)_ij|."""
    gram = np.einsum("rki,rkj->rij", g.elements, g.elements)
    return float(np.abs(gram - np.eye(g.dim)).max())


def character_norm(g: MatrixGroup) -> float:
    """(1/|G|) sum_R trace(R)^2.

    Equals 1 exactly when the standard representation is absolutely
    irreducible. A plane rotation group C_k (k >= 3) gives 2: it has no
    invariant real line, but splits over the complex numbers.
    """
    tr = np.trace(g.elements, axis1=1, axis2=2)
    return float((tr**2).sum() / g.order)


def change_basis(g: MatrixGroup, basis) -> np.ndarray:
    """Matrices Gamma(R) of every element in an orthonormal basis (rows v_i).

    Gamma(R)_ij = <R v_j, v_i>.
    """
    b = np.asarray(basis, dtype=float)
    return np.einsum("ik,rkl,jl->rij", b, g.elements, b)


def verify_schur(g: MatrixGroup, tol: Tol = DEFAULT_TOL, basis=None, require_irreducible=True) -> OrthogonalityReport:
    """Check sum_R Gamma_nm Gamma_n'm' = delta_nn' delta_mm' |G|/N for every quadruple.

    Raises HypothesisError when the representation is not irreducible and
    ``require_irreducible`` is set; the deviation is then not a breach of
    the relations but a failure of their hypothesis.
    """
    if require_irreducible:
        chi = character_norm(g)
        if abs(chi - 1.0) > IRREDUCIBLE_TOL:
            raise HypothesisError(f"hypothesis failure: character norm {chi:.6g} != 1, representation is reducible")
    gam = g.elements if basis is None else change_basis(g, basis)
    n = g.dim
    sums = np.einsum("rab,rcd->abcd", gam, gam)
    eye = np.eye(n)
    target = np.einsum("ac,bd->abcd", eye, eye) * g.order / n
    dev = np.abs(sums - target)
    worst = tuple(int(i) for i in np.unravel_index(np.argmax(dev), dev.shape))
    diag = np.abs(np.einsum("abab->ab", sums) - g.order / n).max()
    return OrthogonalityReport(float(dev.max()), worst, g.order, n, float(diag), tol.verify_tol)


def edge_direction(p: Polytope, base_edge: int) -> np.ndarray:
    e = p.edge_vectors()[base_edge]
    return e / np.linalg.norm(e)


def edge_basis(p: Polytope, base_edge: int, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (rows) of R^N whose first row is the base edge direction.

    The standard basis completes it; dependent candidates are dropped in
    input order.
    """
    n = p.ambient_dim
    rows = np.vstack([edge_direction(p, base_edge), np.eye(n)])
    return orthonormalize(rows, tol, skip_dependent=True)


def _unit_edge(p: Polytope, base_edge: int, tol: Tol) -> np.ndarray:
    e = p.edge_vectors()[base_edge]
    if abs(np.linalg.norm(e) - 1.0) > tol.eq_tol:
        raise HypothesisError("base edge is not of unit length; normalize the polytope first")
    return e


def edge_images(g: MatrixGroup, e) -> np.ndarray:
    """R(e) for every element R, shape (|G|, N)."""
    return np.einsum("rij,j->ri", g.elements, e)


def _check_basis(basis, n, tol):
    b = np.asarray(basis, dtype=float)
    if b.shape != (n, n) or np.abs(b @ b.T - np.eye(n)).max() > tol.eq_tol * 10:
        raise ValueError("basis must be N orthonormal vectors")
    return b


def verify_sos0(g: MatrixGroup, p: Polytope, base_edge: int, basis, tol: Tol = DEFAULT_TOL) -> float:
    """First column of Gamma(R) against the coordinates of R(e), over all R.

    Needs ``basis[0]`` to be the unit base edge direction.
    """
    e = _unit_edge(p, base_edge, tol)
    b = _check_basis(basis, p.ambient_dim, tol)
    if abs(abs(b[0] @ e) - 1.0) > tol.eq_tol:
        raise ValueError("basis[0] is not aligned with the base edge")
    e = b[0]  # same line as the edge; fixes the sign to match v_1
    first_col = change_basis(g, b)[:, :, 0]
    coords = edge_images(g, e) @ b.T
    return float(np.abs(first_col - coords).max())


def verify_sos2(g: MatrixGroup, p: Polytope, base_edge: int, basis=None, tol: Tol = DEFAULT_TOL) -> float:
    """max_i |sum_R <R(e), v_i>^2 - |G|/N| for an edge-adapted orthonormal basis."""
    e = _unit_edge(p, base_edge, tol)
    b = edge_basis(p, base_edge, tol) if basis is None else _check_basis(basis, p.ambient_dim, tol)
    if abs(abs(b[0] @ e) - 1.0) > tol.eq_tol:
        raise ValueError("basis[0] is not aligned with the base edge")
    sums = ((edge_images(g, e) @ b.T) ** 2).sum(axis=0)
    return float(np.abs(sums - g.order / p.ambient_dim).max())


def verify_sos3(g: MatrixGroup, p: Polytope, base_edge: int, v, tol: Tol = DEFAULT_TOL) -> float:
    """|sum_R <R(e), v>^2 - |G|/N| for a unit vector v."""
    e = _unit_edge(p, base_edge, tol)
    v = as_vec(v)
    if abs(np.linalg.norm(v) - 1.0) > tol.eq_tol:
        raise ValueError("v must be a unit vector")
    total = float(((edge_images(g, e) @ v) ** 2).sum())
    return abs(total - g.order / p.ambient_dim)
