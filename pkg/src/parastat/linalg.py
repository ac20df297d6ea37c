"""Dense complex matrix kernel: Kronecker products, brackets, Hermitian
eigendecomposition, and cyclic invariant subspaces.

Everything here is a pure function of its inputs; outputs are fresh arrays.
The total-dimension budget is read from PARASTAT_MAX_DIM (default 4096).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ArgumentError, HermiticityError, ShapeError, SizingError

DEFAULT_MAX_DIM = 4096


def max_dim() -> int:
    """Configured cap on total matrix dimension."""
    return int(os.environ.get("PARASTAT_MAX_DIM", DEFAULT_MAX_DIM))


def check_dim(d: int):
    cap = max_dim()
    if d > cap:
        raise SizingError(f"dimension {d} exceeds PARASTAT_MAX_DIM={cap}")


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ShapeError(f"expected a matrix, got ndim={m.ndim}")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product, with the dimension budget enforced."""
    a = _as_matrix(a)
    b = _as_matrix(b)
    check_dim(a.shape[0] * b.shape[0])
    check_dim(a.shape[1] * b.shape[1])
    return np.kron(a, b)


def bracket(a, b, sign: str = "commutator") -> np.ndarray:
    """ab - ba for "commutator", ab + ba for "anticommutator"."""
    a = _as_matrix(a)
    b = _as_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ShapeError(f"bracket needs equal square matrices, got {a.shape} and {b.shape}")
    if sign == "commutator":
        return a @ b - b @ a
    if sign == "anticommutator":
        return a @ b + b @ a
    raise ArgumentError(f"unknown bracket sign {sign!r}")


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues ascending; columns of `vectors` are unit eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray


def hermitian_eig(h, tol: float = 1e-10) -> EigenDecomposition:
    """Deterministic Hermitian eigendecomposition.

    The input must satisfy ||h - h^dag||_max <= tol * max(1, ||h||_max).
    Output eigenvector phases are canonicalized (first significant component
    real positive) and exact ties are ordered by that component's position,
    so equal inputs give identical outputs.
    """
    h = _as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ShapeError("hermitian_eig needs a square matrix")
    scale = max(1.0, float(np.max(np.abs(h))) if h.size else 1.0)
    violation = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if violation > tol * scale:
        raise HermiticityError(
            f"matrix is not Hermitian: max |h - h^dag| = {violation:.3e}",
            violation=violation,
        )
    hs = (h + h.conj().T) / 2.0
    values, vectors = scipy.linalg.eigh(hs, driver="evr")
    vectors = _canonicalize_columns(vectors)
    values, vectors = _order_ties(values, vectors)
    return EigenDecomposition(values=values, vectors=vectors)


def _canonicalize_columns(v: np.ndarray, eps: float = 1e-8) -> np.ndarray:
    v = v.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        idx = np.flatnonzero(np.abs(col) > eps)
        if idx.size == 0:
            idx = [int(np.argmax(np.abs(col)))]
        lead = col[idx[0]]
        if abs(lead) > 0:
            v[:, j] = col * (np.conj(lead) / abs(lead))
    return v


def _order_ties(values, vectors, tie_tol: float = 1e-12):
    """Within clusters of equal eigenvalues, sort columns by the position of
    their first significant component."""
    order = np.arange(len(values))
    i = 0
    while i < len(values):
        j = i + 1
        while j < len(values) and values[j] - values[i] <= tie_tol * max(1.0, abs(values[i])):
            j += 1
        if j - i > 1:
            def first_sig(col_idx):
                col = vectors[:, col_idx]
                nz = np.flatnonzero(np.abs(col) > 1e-8)
                return int(nz[0]) if nz.size else vectors.shape[0]
            cluster = sorted(range(i, j), key=first_sig)
            order[i:j] = cluster
        i = j
    return values[order], vectors[:, order]


def cyclic_subspace(ops, seed, tol: float = 1e-9, expand=None) -> np.ndarray:
    """Orthonormal basis of the smallest subspace containing `seed` and closed
    under every operator in `ops`.

    Breadth-first application of the operators in their given order, with
    modified Gram-Schmidt and one re-orthogonalization pass; residuals of norm
    <= tol are discarded.  Deterministic for fixed input order.

    `expand`, when given, is a predicate on basis vectors; vectors it rejects
    are kept in the basis but not expanded further.  Callers use this to stop
    at a truncation boundary where the operators are no longer exact.
    """
    seed = np.asarray(seed, dtype=complex).ravel()
    nrm = np.linalg.norm(seed)
    if nrm == 0:
        raise ArgumentError("seed vector must be nonzero")
    mats = [_as_matrix(o) for o in ops]
    for m in mats:
        if m.shape != (seed.size, seed.size):
            raise ShapeError("operators must be square of the seed's dimension")
    basis = [seed / nrm]
    frontier = [0]
    while frontier:
        next_frontier = []
        for bi in frontier:
            if expand is not None and not expand(basis[bi]):
                continue
            for m in mats:
                w = m @ basis[bi]
                w = _mgs_orthogonalize(w, basis)
                nw = np.linalg.norm(w)
                if nw > tol:
                    basis.append(w / nw)
                    next_frontier.append(len(basis) - 1)
        frontier = next_frontier
    return np.column_stack(basis)


def _mgs_orthogonalize(w, basis):
    for b in basis:
        w = w - (b.conj() @ w) * b
    # second pass guards against cancellation for nearly dependent vectors
    for b in basis:
        w = w - (b.conj() @ w) * b
    return w
