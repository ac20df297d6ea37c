"""Generalized Jaynes-Cummings Hamiltonians on the paraboson-parafermion
ladder: assembly, spectra, the V_{m,n} selection rule, and unitary quenches.

Three Hamiltonians are supported on a ladder representation of order p:

    dyn      (w_b/2){b+,b-} + (w_f/2)[f+,f-] + (w_f-w_b)p/2
                 + (lambda/2)({b-,f+} + {b+,f-})          (lambda real)
    dynstar  same free part
                 + l1 b-f+ + l2 f+b- + conj(l2) b+f- + conj(l1) f-b+
    free     the free part alone; the interaction lives in the algebra

The constant shift makes the free spectrum on V_{m,n} come out as
w_b*m + w_f*n with ground energy zero; that pattern is verified numerically
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ArgumentError, HermiticityError
from .linalg import hermitian_eig
from .pbf import PBFFockRep


class HamiltonianKind(Enum):
    DYN = "dyn"
    DYNSTAR = "dynstar"
    FREE = "free"

    @classmethod
    def parse(cls, name: str) -> "HamiltonianKind":
        for k in cls:
            if k.value == name.lower():
                return k
        raise ArgumentError(f"unknown hamiltonian kind {name!r}")


@dataclass(frozen=True)
class JCParams:
    omega_b: float
    omega_f: float
    p: int
    boson_cutoff: int
    lam: complex | None = None
    lam1: complex | None = None
    lam2: complex | None = None

    def __post_init__(self):
        if not (np.isfinite(self.omega_b) and np.isfinite(self.omega_f)):
            raise ArgumentError("frequencies must be finite")
        if self.p < 1:
            raise ArgumentError("order p must be >= 1")


def free_hamiltonian(params: JCParams, rep: PBFFockRep) -> np.ndarray:
    eye = np.eye(rep.dim)
    h_b = 0.5 * params.omega_b * (rep.b_plus @ rep.b_minus + rep.b_minus @ rep.b_plus)
    h_f = 0.5 * params.omega_f * (rep.f_plus @ rep.f_minus - rep.f_minus @ rep.f_plus)
    shift = 0.5 * (params.omega_f - params.omega_b) * params.p
    return h_b + h_f + shift * eye


def interaction_hamiltonian(kind: HamiltonianKind, params: JCParams, rep: PBFFockRep) -> np.ndarray:
    bp, bm, fp, fm = rep.b_plus, rep.b_minus, rep.f_plus, rep.f_minus
    if kind is HamiltonianKind.FREE:
        return np.zeros((rep.dim, rep.dim), dtype=complex)
    if kind is HamiltonianKind.DYN:
        if params.lam is None:
            raise ArgumentError("dyn coupling needs lambda")
        lam = complex(params.lam)
        if abs(lam.imag) > 1e-10 * max(1.0, abs(lam)):
            raise HermiticityError(
                "coefficient lambda must be real for the dyn Hamiltonian",
                violation=abs(lam.imag),
            )
        lam = lam.real
        return 0.5 * lam * ((bm @ fp + fp @ bm) + (bp @ fm + fm @ bp))
    if kind is HamiltonianKind.DYNSTAR:
        if params.lam1 is None or params.lam2 is None:
            raise ArgumentError("dynstar coupling needs lambda1 and lambda2")
        l1 = complex(params.lam1)
        l2 = complex(params.lam2)
        return (
            l1 * (bm @ fp)
            + l2 * (fp @ bm)
            + np.conj(l2) * (bp @ fm)
            + np.conj(l1) * (fm @ bp)
        )
    raise ArgumentError(f"unhandled hamiltonian kind {kind}")


def build_hamiltonian(kind: HamiltonianKind, params: JCParams, rep: PBFFockRep) -> np.ndarray:
    if params.p != rep.p:
        raise ArgumentError(f"params order {params.p} != representation order {rep.p}")
    h = free_hamiltonian(params, rep) + interaction_hamiltonian(kind, params, rep)
    viol = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if viol > 1e-10 * max(1.0, float(np.max(np.abs(h)))):
        raise HermiticityError(
            f"assembled {kind.value} Hamiltonian is not Hermitian", violation=viol
        )
    return h


@dataclass
class SelectionRuleReport:
    max_offblock: float
    worst_transition: tuple | None  # ((m, n), (m', n'))


def selection_rule_check(h_interact: np.ndarray, rep: PBFFockRep) -> SelectionRuleReport:
    """The interaction may only connect V_{m,n} to V_{m-1,n+1} and V_{m+1,n-1};
    report the largest matrix element violating that, interior-restricted."""
    blocks = rep.block_indices()
    interior = rep.interior_mask()
    worst = 0.0
    worst_tr = None
    for (m, n), cols in blocks.items():
        if not all(interior[c] for c in cols):
            continue
        for (mp, np_), rows in blocks.items():
            if not all(interior[r] for r in rows):
                continue
            if (mp, np_) in ((m - 1, n + 1), (m + 1, n - 1)):
                continue
            val = float(np.max(np.abs(h_interact[np.ix_(rows, cols)])))
            if val > worst:
                worst = val
                worst_tr = ((m, n), (mp, np_))
    return SelectionRuleReport(max_offblock=worst, worst_transition=worst_tr)


def spectrum(h: np.ndarray) -> np.ndarray:
    return hermitian_eig(h).values


def total_excitation_operator(rep: PBFFockRep) -> np.ndarray:
    """N_b + N_f reconstructed from the generators."""
    eye = np.eye(rep.dim)
    n_b = 0.5 * (rep.b_plus @ rep.b_minus + rep.b_minus @ rep.b_plus - rep.p * eye)
    n_f = 0.5 * (rep.f_plus @ rep.f_minus - rep.f_minus @ rep.f_plus + rep.p * eye)
    return n_b + n_f


@dataclass
class QuenchResult:
    times: np.ndarray
    populations: dict  # (m, n) -> array of probabilities per time
    norm_drift: float


def evolve(h: np.ndarray, psi0, times, rep: PBFFockRep) -> QuenchResult:
    """psi(t) = V exp(-i Lambda t) V^dag psi0, with per-subspace populations."""
    psi0 = np.asarray(psi0, dtype=complex).ravel()
    if psi0.size != rep.dim:
        raise ArgumentError("initial state dimension does not match the ladder")
    nrm = np.linalg.norm(psi0)
    if abs(nrm - 1.0) > 1e-10:
        raise ArgumentError(f"initial state must be unit norm (got {nrm:.12g})")
    times = np.asarray(times, dtype=float)
    eig = hermitian_eig(h)
    coeff = eig.vectors.conj().T @ psi0
    # propagate all times at once; psi_t has shape (t, dim)
    phases = np.exp(-1j * np.outer(times, eig.values))
    psi_t = (eig.vectors @ (phases * coeff[None, :]).T).T
    probs = np.abs(psi_t) ** 2
    norms = probs.sum(axis=1)
    blocks = rep.block_indices()
    pops = {
        key: probs[:, cols].sum(axis=1) for key, cols in sorted(blocks.items())
    }
    return QuenchResult(
        times=times,
        populations=pops,
        norm_drift=float(np.max(np.abs(norms - 1.0))) if times.size else 0.0,
    )


def basis_state(rep: PBFFockRep, m: int, n: int, branch: int = 0) -> np.ndarray:
    """Unit vector on the ladder basis column labelled (m, n, branch)."""
    for i, l in enumerate(rep.labels):
        if (l.m, l.n, l.branch) == (m, n, branch):
            v = np.zeros(rep.dim, dtype=complex)
            v[i] = 1.0
            return v
    raise ArgumentError(f"no ladder state with (m, n, branch) = ({m}, {n}, {branch})")
