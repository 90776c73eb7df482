"""Small dense linear algebra helpers, seeded sampling and tolerant lookup.

Everything here works on float64 numpy arrays of modest size (ambient
dimension at most 8). Random sampling goes through ``numpy.random.default_rng``
(PCG64) with an explicit integer seed, so every sample is a pure function of
its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MAX_DIM = 8


@dataclass(frozen=True)
class Tol:
    """Tolerance bundle.

    eq_tol
        absolute tolerance for entrywise comparisons
    verify_tol
        bound on the deviation reported by a verification
    key_digits
        decimals kept when hashing coordinates (must be coarser than eq_tol)
    """

    eq_tol: float = 1e-9
    verify_tol: float = 1e-8
    key_digits: int = 6

    def __post_init__(self):
        if not 0 < self.eq_tol < self.verify_tol:
            raise ValueError("need 0 < eq_tol < verify_tol")
        if self.key_digits < 1 or 10.0 ** (-self.key_digits) <= 2 * self.eq_tol:
            raise ValueError("key_digits must hash coarser than eq_tol")


DEFAULT_TOL = Tol()


def as_vec(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    return v


def inner(a, b) -> float:
    a, b = as_vec(a), as_vec(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return float(a @ b)


def orthonormalize(vectors, tol: Tol = DEFAULT_TOL, skip_dependent=False):
    """Modified Gram-Schmidt with one full re-orthogonalization pass.

    Parameters
    ----------
    vectors : array_like, shape (k, n)
        Rows to orthonormalize, in order.
    tol : Tol
        A vector whose residual norm falls below ``tol.verify_tol`` (relative
        to its original norm) counts as linearly dependent.
    skip_dependent : bool
        Drop dependent rows instead of raising. Used to complete a partial
        basis; ties are broken by input order.

    Returns
    -------
    ndarray, shape (r, n)
        Orthonormal rows spanning the same subspace as the input.
    """
    rows = np.atleast_2d(np.asarray(vectors, dtype=float))
    if rows.size == 0:
        raise ValueError("degenerate subspace: no vectors")
    if not np.all(np.isfinite(rows)):
        raise ValueError("vectors have non-finite entries")
    basis: list[np.ndarray] = []
    for k, row in enumerate(rows):
        w = row.copy()
        before = np.linalg.norm(w)
        # two MGS sweeps; the second removes what cancellation left behind
        for _ in range(2):
            for b in basis:
                w -= (b @ w) * b
        after = np.linalg.norm(w)
        if before == 0.0 or after <= tol.verify_tol * before:
            if skip_dependent:
                continue
            raise ValueError(f"degenerate subspace: vector {k} is dependent")
        basis.append(w / after)
    return np.array(basis)


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.uint64(seed % 2**64))


def random_unit_vector(dim: int, seed: int) -> np.ndarray:
    """Uniform sample from the unit sphere in R^dim (normalized Gaussian)."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = _rng(seed)
    while True:
        x = rng.standard_normal(dim)
        nrm = np.linalg.norm(x)
        if nrm > 1e-12:
            return x / nrm


@dataclass(frozen=True)
class Subspace:
    """An M-dimensional linear subspace of R^N held by an orthonormal basis.

    ``basis`` has shape (M, N); its rows are u_1, ..., u_M.
    """

    basis: np.ndarray
    seed: int | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        b = np.atleast_2d(np.array(self.basis, dtype=float))
        m, n = b.shape
        if not 1 <= m <= n:
            raise ValueError(f"need 1 <= M <= N, got M={m}, N={n}")
        if np.abs(b @ b.T - np.eye(m)).max() > DEFAULT_TOL.eq_tol * 10:
            raise ValueError("subspace basis is not orthonormal")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[1]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def projector(self) -> np.ndarray:
        """The N x N orthogonal projector onto the subspace."""
        return self.basis.T @ self.basis

    def complement(self) -> Subspace | None:
        """Orthogonal complement, or None when the subspace is all of R^N."""
        n = self.ambient_dim
        if self.dim == n:
            return None
        rows = np.vstack([self.basis, np.eye(n)])
        full = orthonormalize(rows, skip_dependent=True)
        return Subspace(full[self.dim:], label=f"complement({self.label})")


def random_subspace(n: int, m: int, seed: int) -> Subspace:
    """Haar-uniform m-dimensional subspace of R^n."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    rng = _rng(seed)
    while True:
        try:
            basis = orthonormalize(rng.standard_normal((m, n)))
        except ValueError:
            continue
        return Subspace(basis, seed=seed, label=f"haar(seed={seed})")


def axis_subspace(n: int, m: int) -> Subspace:
    """span(e_1, ..., e_m) inside R^n."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    return Subspace(np.eye(n)[:m], label="axis")


def is_special_orthogonal(m, tol: Tol = DEFAULT_TOL) -> bool:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or not np.all(np.isfinite(a)):
        return False
    if np.abs(a.T @ a - np.eye(a.shape[0])).max() > tol.eq_tol:
        return False
    return abs(np.linalg.det(a) - 1.0) <= tol.eq_tol


def rotation_2d(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


class PointIndex:
    """Tolerant lookup of points (flattened to rows) by rounded-coordinate keys.

    Each row is hashed on two grids of spacing 10**-key_digits, the second
    offset by half a cell, so a point within eq_tol of a stored one is found
    unless it straddles a boundary on both grids at once. Every hash hit is
    confirmed by an entrywise comparison at eq_tol.
    """

    def __init__(self, points, tol: Tol = DEFAULT_TOL):
        pts = np.asarray(points, dtype=float)
        self.shape = pts.shape[1:]
        self.tol = tol
        d = int(np.prod(self.shape))
        # fixed odd multipliers; int64 products wrap, which is what a hash wants
        rng = np.random.default_rng(0x5EED)
        self._weights = rng.integers(1, 2**62, size=d, dtype=np.int64) | 1
        self._points = np.empty((0, d))
        self._keys = [np.empty(0, np.int64), np.empty(0, np.int64)]
        self._order = [np.empty(0, np.intp), np.empty(0, np.intp)]
        self.add(pts)

    def __len__(self):
        return len(self._points)

    @property
    def points(self) -> np.ndarray:
        return self._points.reshape((-1,) + self.shape)

    def keys(self, flat: np.ndarray):
        scaled = flat * 10.0 ** self.tol.key_digits
        with np.errstate(over="ignore"):
            return [
                (np.rint(scaled + off).astype(np.int64) * self._weights).sum(axis=1)
                for off in (0.0, 0.5)
            ]

    def add(self, points) -> None:
        flat = np.asarray(points, dtype=float).reshape(-1, self._weights.size)
        if not len(flat):
            return
        new_keys = self.keys(flat)
        self._points = np.vstack([self._points, flat])
        for g in range(2):
            allk = np.concatenate([self._keys[g][np.argsort(self._order[g])], new_keys[g]])
            order = np.argsort(allk, kind="stable")
            self._keys[g] = allk[order]
            self._order[g] = order

    def find(self, queries, strict=False, exhaustive=False) -> np.ndarray:
        """Index of the stored point matching each query, or -1.

        strict
            raise if a hash hit fails the eq_tol confirmation (a near miss
            between 10**-key_digits and eq_tol means corrupted arithmetic)
        exhaustive
            fall back to a nearest-point scan for queries missed by both grids
        """
        flat = np.asarray(queries, dtype=float).reshape(-1, self._weights.size)
        out = np.full(len(flat), -1, dtype=np.intp)
        if not len(self._points):
            return out
        qkeys = self.keys(flat)
        for g in range(2):
            todo = np.flatnonzero(out < 0)
            if not len(todo):
                break
            keys = self._keys[g]
            pos = np.searchsorted(keys, qkeys[g][todo])
            pos = np.minimum(pos, len(keys) - 1)
            hit = keys[pos] == qkeys[g][todo]
            cand = self._order[g][pos[hit]]
            rows = todo[hit]
            ok = np.abs(self._points[cand] - flat[rows]).max(axis=1) <= self.tol.eq_tol
            if strict and not ok.all():
                raise ArithmeticError("hash hit failed tolerance confirmation")
            out[rows[ok]] = cand[ok]
        if exhaustive:
            for i in np.flatnonzero(out < 0):
                dev = np.abs(self._points - flat[i]).max(axis=1)
                j = int(np.argmin(dev))
                if dev[j] <= self.tol.eq_tol:
                    out[i] = j
        return out
