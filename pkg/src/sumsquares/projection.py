"""Projection of edge sets onto subspaces and the sum-of-squares law check."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numeric import DEFAULT_TOL, Subspace, Tol, as_vec
from .polytopes import Polytope
from .representation import HypothesisError, edge_images
from .symmetry import EdgeOrbitDecomposition, MatrixGroup, decompose_edges, is_edge_transitive


def _check_dims(s: Subspace, n: int):
    if s.ambient_dim != n:
        raise ValueError(f"dimension mismatch: subspace in R^{s.ambient_dim}, data in R^{n}")


def project_vector(s: Subspace, x) -> np.ndarray:
    """Coordinates b_i = <x, u_i> of the projection of x in the basis of S."""
    x = as_vec(x)
    _check_dims(s, len(x))
    return s.basis @ x


def sum_squares(p: Polytope) -> float:
    return float((p.edge_vectors() ** 2).sum())


def projected_edge_norms(p: Polytope, s: Subspace) -> np.ndarray:
    """||P_S(e_l)||^2 for every edge."""
    _check_dims(s, p.ambient_dim)
    return ((p.edge_vectors() @ s.basis.T) ** 2).sum(axis=1)


def sum_squares_projected(p: Polytope, s: Subspace) -> float:
    return float(projected_edge_norms(p, s).sum())


@dataclass(frozen=True)
class LawReport:
    """sigma, sigma' and the ratio test for one (polytope, subspace) pair.

    When the group does not act edge-transitively, ``hypothesis_violated`` is
    set and ``passed`` is False; the raw numbers are still filled in.
    """

    polytope: str
    n: int
    m: int
    sigma: float
    sigma_prime: float
    expected_ratio: float
    deviation: float
    passed: bool
    seed: int | None = None
    subspace: str = ""
    hypothesis_violated: bool = False
    orbit_sizes: tuple = ()

    @property
    def orbit_count(self) -> int:
        return len(self.orbit_sizes)

    @property
    def law_gap(self) -> float:
        """|sigma' - sigma M/N| in absolute terms."""
        return abs(self.sigma_prime - self.sigma * self.expected_ratio)


def verify_law(
    p: Polytope,
    s: Subspace,
    g: MatrixGroup,
    tol: Tol = DEFAULT_TOL,
    decomp: EdgeOrbitDecomposition | None = None,
) -> LawReport:
    """Compare sigma'/sigma with M/N after checking edge-transitivity of ``g``.

    ``decomp`` may be passed to reuse one edge decomposition over many
    subspaces.
    """
    _check_dims(s, p.ambient_dim)
    if decomp is None:
        decomp = decompose_edges(p, g, tol=tol)
    violated = not is_edge_transitive(decomp)
    sigma = sum_squares(p)
    sigma_p = sum_squares_projected(p, s)
    ratio = s.dim / p.ambient_dim
    dev = abs(sigma_p / sigma - ratio)
    return LawReport(
        polytope=p.name,
        n=p.ambient_dim,
        m=s.dim,
        sigma=sigma,
        sigma_prime=sigma_p,
        expected_ratio=ratio,
        deviation=dev,
        passed=(not violated) and dev <= tol.verify_tol,
        seed=s.seed,
        subspace=s.label,
        hypothesis_violated=violated,
        orbit_sizes=tuple(decomp.orbit_sizes),
    )


@dataclass(frozen=True)
class GroupAverage:
    group_sum: float
    coset_sum: float
    target: float

    @property
    def deviation(self) -> float:
        return max(abs(self.group_sum - self.target), abs(self.coset_sum - self.target))


def group_average(p, s, g, base_edge=0, tol=DEFAULT_TOL, decomp=None) -> GroupAverage:
    """Both sides of sum_R ||P_S(R e)||^2 = k sum_l ||P_S(e_l)||^2 = |G| M/N.

    The group side sums over all elements; the coset side sums once per
    edge and multiplies by the stabilizer order k.
    """
    _check_dims(s, p.ambient_dim)
    if decomp is None or decomp.base_edge != base_edge:
        decomp = decompose_edges(p, g, base_edge, tol)
    if not is_edge_transitive(decomp):
        raise HypothesisError(f"hypothesis violated: {len(decomp.orbits)} edge orbits")
    e = p.edge_vectors()[base_edge]
    group_sum = float(((edge_images(g, e) @ s.basis.T) ** 2).sum())
    coset_sum = decomp.stabilizer_order * sum_squares_projected(p, s)
    target = g.order * s.dim / p.ambient_dim * float(e @ e)
    return GroupAverage(group_sum, coset_sum, target)


def group_average_check(p, s, g, base_edge=0, tol=DEFAULT_TOL, decomp=None) -> float:
    return group_average(p, s, g, base_edge, tol, decomp).deviation
