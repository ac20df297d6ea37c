"""Truncated Fock spaces, braided tensor-product copies, and the Green
ansatz for paraboson / parafermion / mixed representations.

A representation of order p lives on the p-fold tensor power of a "copy"
space (multimode boson/fermion Fock space, or a boson-fermion mixture).
Within a copy the species follow fixed sign rules (boson modes commute,
fermion modes anticommute via Jordan-Wigner strings, boson-fermion pairs
commute in the symmetric mixture and anticommute in the antisymmetric one).
Across copies, operators are embedded with left Klein dressing: slots to the
left of the active one are multiplied by the diagonal operator that scales a
basis vector of degree h by theta(op_degree, h).  Cross-slot exchange of
homogeneous operators then picks up exactly the commutation factor.

Annihilation operators are dressed with the inverse of the species degree so
that raising and lowering embeddings stay exact adjoints for every
commutation factor (for the order-2 groups used by the shipped defaults the
two conventions coincide).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np
import scipy.sparse

from .algebras import AlgebraKind, DegreeAssignment, GeneratorLabel, _check_counts
from .errors import ArgumentError
from .groups import Bicharacter, FiniteAbelianGroup, is_commutation_factor, roots_of_unity
from .linalg import check_dim, cyclic_subspace

GREEN_KINDS = (AlgebraKind.PB, AlgebraKind.PF, AlgebraKind.PBF, AlgebraKind.PFB)


def boson_ops(cutoff: int):
    """Raising, lowering, and number matrices on the (cutoff+1)-dim boson space.

    Hard truncation: raising annihilates the top state.
    """
    if cutoff < 1:
        raise ArgumentError("boson cutoff must be >= 1")
    d = cutoff + 1
    bp = np.zeros((d, d), dtype=complex)
    for n in range(cutoff):
        bp[n + 1, n] = math.sqrt(n + 1)
    num = np.diag(np.arange(d, dtype=float)).astype(complex)
    return bp, bp.conj().T, num


def fermion_ops():
    """Raising, lowering, and number matrices on the 2-dim fermion space."""
    fp = np.array([[0, 0], [1, 0]], dtype=complex)
    fm = np.array([[0, 1], [0, 0]], dtype=complex)
    num = np.diag([0.0, 1.0]).astype(complex)
    return fp, fm, num


@dataclass(frozen=True)
class CopySpace:
    """One tensor factor of the Green ansatz: a multimode particle space."""

    m_b: int
    m_f: int
    cutoff: int | None
    bf_anticommute: bool
    dim: int
    species: tuple  # species per factor, bosons first
    occupations: np.ndarray  # (dim, n_factors) int
    total_quanta: np.ndarray  # (dim,) int
    ops: dict  # GeneratorLabel -> ndarray

    @property
    def algebra(self) -> AlgebraKind:
        if self.m_f == 0:
            return AlgebraKind.CCR
        if self.m_b == 0:
            return AlgebraKind.CAR
        return AlgebraKind.WAS if self.bf_anticommute else AlgebraKind.WS

    def degrees(self, deg: DegreeAssignment) -> np.ndarray:
        """Degree coordinates of every basis vector under the assignment."""
        g = deg.group
        degmat = np.array([deg.degree(sp) for sp in self.species], dtype=np.int64)
        coords = self.occupations @ degmat
        return coords % np.array(g.factors, dtype=np.int64)


def _intra_sign(sp_a: str, sp_b: str, bf_anticommute: bool) -> int:
    if sp_a == "b" and sp_b == "b":
        return 1
    if sp_a == "f" and sp_b == "f":
        return -1
    return -1 if bf_anticommute else 1


def build_copy(m_b: int, m_f: int, cutoff: int | None, bf_anticommute: bool = False) -> CopySpace:
    """Multimode copy space with mode operators obeying the intra-copy sign rules."""
    factors = []
    species = []
    for _ in range(m_b):
        factors.append(boson_ops(cutoff))
        species.append("b")
    for _ in range(m_f):
        factors.append(fermion_ops())
        species.append("f")
    if not factors:
        raise ArgumentError("copy space needs at least one mode")
    dims = [f[0].shape[0] for f in factors]
    dim = math.prod(dims)
    check_dim(dim)
    occupations = np.array(list(itertools.product(*(range(d) for d in dims))), dtype=np.int64)
    total_quanta = occupations.sum(axis=1)

    ops = {}
    for slot, (mats, sp) in enumerate(zip(factors, species)):
        for sign, mat in ((1, mats[0]), (-1, mats[1])):
            pieces = []
            for t in range(len(factors)):
                if t < slot:
                    s = _intra_sign(sp, species[t], bf_anticommute)
                    if s == 1:
                        pieces.append(scipy.sparse.identity(dims[t], dtype=complex))
                    else:
                        signs = (-1.0) ** np.arange(dims[t])
                        pieces.append(scipy.sparse.diags(signs.astype(complex)))
                elif t == slot:
                    pieces.append(scipy.sparse.csr_matrix(mat))
                else:
                    pieces.append(scipy.sparse.identity(dims[t], dtype=complex))
            full = reduce(lambda a, b: scipy.sparse.kron(a, b, format="csr"), pieces)
            mode = (slot + 1) if sp == "b" else (slot - m_b + 1)
            ops[GeneratorLabel(sp, mode, sign)] = np.asarray(full.todense())
    return CopySpace(
        m_b=m_b,
        m_f=m_f,
        cutoff=cutoff,
        bf_anticommute=bf_anticommute,
        dim=dim,
        species=tuple(species),
        occupations=occupations,
        total_quanta=total_quanta,
        ops=ops,
    )


@dataclass(frozen=True)
class GreenAnsatzRep:
    """Order-p Green ansatz on the p-fold braided tensor power of a copy."""

    kind: AlgebraKind
    p: int
    copy: CopySpace
    theta: Bicharacter
    deg: DegreeAssignment
    generators: dict  # GeneratorLabel -> ndarray on the full space
    vacuum: np.ndarray
    dim: int
    total_quanta: np.ndarray  # (dim,) int
    basis_degrees: np.ndarray  # (dim, rank) int

    @property
    def cutoff(self):
        return self.copy.cutoff

    def interior_mask(self, margin: int = 3) -> np.ndarray:
        """States far enough from the boson cutoff for truncation-free checks."""
        if self.copy.cutoff is None:
            return np.ones(self.dim, dtype=bool)
        return self.total_quanta <= self.copy.cutoff - margin

    def generator_order(self):
        return sorted(self.generators, key=lambda l: (l.species, l.mode, -l.sign))


def _dressing_phases(theta: Bicharacter, copy_degrees_idx: np.ndarray, op_degree) -> np.ndarray:
    g = theta.group
    row = theta.table[g.index(op_degree)]
    return roots_of_unity(g.order)[row[copy_degrees_idx]]


def _copy_degree_indices(copy: CopySpace, deg: DegreeAssignment) -> np.ndarray:
    g = deg.group
    coords = copy.degrees(deg)
    idx = np.zeros(copy.dim, dtype=np.int64)
    for c, d in zip(coords.T, g.factors):
        idx = idx * d + c
    return idx


def _embed_sparse(copy, theta, deg, p, op, op_degree, slot):
    if not 1 <= slot <= p:
        raise ArgumentError(f"slot {slot} out of range 1..{p}")
    phases = _dressing_phases(theta, _copy_degree_indices(copy, deg), op_degree)
    pieces = []
    for k in range(1, p + 1):
        if k < slot:
            pieces.append(scipy.sparse.diags(phases))
        elif k == slot:
            pieces.append(scipy.sparse.csr_matrix(np.asarray(op, dtype=complex)))
        else:
            pieces.append(scipy.sparse.identity(copy.dim, dtype=complex))
    return reduce(lambda a, b: scipy.sparse.kron(a, b, format="csr"), pieces)


def green_embed(op, op_degree, slot: int, rep: GreenAnsatzRep) -> np.ndarray:
    """Embed a homogeneous copy operator into the given slot of the full space,
    Klein-dressed on the slots to its left."""
    return np.asarray(
        _embed_sparse(rep.copy, rep.theta, rep.deg, rep.p, op, op_degree, slot).todense()
    )


def _signed_degree(deg: DegreeAssignment, species: str, sign: int):
    d = deg.degree(species)
    return d if sign > 0 else deg.group.neg(d)


def build_green_rep(
    kind: AlgebraKind,
    p: int,
    m_b: int,
    m_f: int,
    cutoff: int | None,
    theta: Bicharacter,
    deg: DegreeAssignment,
) -> GreenAnsatzRep:
    """Green ansatz: each generator is the sum over slots of its dressed
    single-copy embedding.  No relation verification happens here."""
    if kind not in GREEN_KINDS:
        raise ArgumentError(f"Green ansatz is defined for {[k.value for k in GREEN_KINDS]}")
    _check_counts(kind, m_b, m_f)
    if p < 1:
        raise ArgumentError("order p must be >= 1")
    if not is_commutation_factor(theta):
        raise ArgumentError("braided tensor powers require a skew-symmetric bicharacter")
    if theta.group != deg.group:
        raise ArgumentError("bicharacter and degree assignment use different groups")
    copy = build_copy(m_b, m_f, cutoff, bf_anticommute=(kind is AlgebraKind.PFB))
    dim = copy.dim**p
    check_dim(dim)

    generators = {}
    for label, op in copy.ops.items():
        acc = None
        op_deg = _signed_degree(deg, label.species, label.sign)
        for k in range(1, p + 1):
            emb = _embed_sparse(copy, theta, deg, p, op, op_deg, k)
            acc = emb if acc is None else acc + emb
        generators[label] = np.asarray(acc.todense())

    vacuum = np.zeros(dim, dtype=complex)
    vacuum[0] = 1.0

    tq = np.zeros(1, dtype=np.int64)
    for _ in range(p):
        tq = (tq[:, None] + copy.total_quanta[None, :]).ravel()
    g = deg.group
    coords = np.zeros((1, g.rank), dtype=np.int64)
    copy_coords = copy.degrees(deg)
    fac = np.array(g.factors, dtype=np.int64)
    for _ in range(p):
        coords = (coords[:, None, :] + copy_coords[None, :, :]).reshape(-1, g.rank) % fac

    return GreenAnsatzRep(
        kind=kind,
        p=p,
        copy=copy,
        theta=theta,
        deg=deg,
        generators=generators,
        vacuum=vacuum,
        dim=dim,
        total_quanta=tq,
        basis_degrees=coords,
    )


def default_theta(kind: AlgebraKind):
    """Canonical grading and commutation factor for the single-species ansatz:
    sign-anticommuting copies for parabosons, plain commuting copies for
    parafermions.  Mixed kinds are resolved by the commutation-factor search."""
    z2 = FiniteAbelianGroup((2,))
    if kind is AlgebraKind.PB:
        return Bicharacter(z2, [[1]]), DegreeAssignment(z2, {"b": (1,)})
    if kind is AlgebraKind.PF:
        return Bicharacter.trivial(z2), DegreeAssignment(z2, {"f": (1,)})
    raise ArgumentError(f"no canonical factor for {kind.value}; run the factor search")


@dataclass(frozen=True)
class SingleModeReference:
    """Closed-form ladder data for the one-mode paraboson representation of
    order p: the level-2n and level-(2n+1) normalization constants and the
    implied raising matrix elements."""

    norm_even: float
    norm_odd: float
    me_up_even: float  # <2n+1| raise |2n>
    me_up_odd: float  # <2n+2| raise |2n+1>


def _pochhammer_half(p: int, n: int) -> Fraction:
    """(p/2)_n with (p/2)_0 = 1, kept exact."""
    acc = Fraction(1)
    for k in range(n):
        acc *= Fraction(p, 2) + k
    return acc


def single_mode_reference(p: int, n: int) -> SingleModeReference:
    if p < 1 or n < 0:
        raise ArgumentError("need p >= 1 and n >= 0")
    poch_n = _pochhammer_half(p, n)
    poch_n1 = _pochhammer_half(p, n + 1)
    fact = math.factorial(n)
    norm_even = 2.0**n * math.sqrt(fact * float(poch_n))
    norm_odd = 2.0**n * math.sqrt(fact * 2.0 * float(poch_n1))
    return SingleModeReference(
        norm_even=norm_even,
        norm_odd=norm_odd,
        me_up_even=math.sqrt(2 * n + p),
        me_up_odd=math.sqrt(2 * n + 2),
    )


@dataclass(frozen=True)
class FockSubmodule:
    """Cyclic submodule generated from the vacuum, with restricted generators."""

    basis: np.ndarray  # (full_dim, k) orthonormal columns
    quanta: np.ndarray  # (k,) total quantum number per basis vector
    generators: dict  # GeneratorLabel -> (k, k) matrix

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def fock_submodule(rep: GreenAnsatzRep, tol: float = 1e-9) -> FockSubmodule:
    """Extract the submodule generated by the vacuum under all generators and
    restrict the generator matrices to it.  Basis vectors are ordered by total
    quantum number, then by construction order."""
    ops = [rep.generators[l] for l in rep.generator_order()]
    basis = cyclic_subspace(ops, rep.vacuum, tol=tol)
    quanta = np.rint(
        np.real(np.einsum("ij,i,ij->j", basis.conj(), rep.total_quanta, basis))
    ).astype(int)
    order = np.argsort(quanta, kind="stable")
    basis = basis[:, order]
    quanta = quanta[order]
    gens = {
        l: basis.conj().T @ rep.generators[l] @ basis for l in rep.generator_order()
    }
    return FockSubmodule(basis=basis, quanta=quanta, generators=gens)
