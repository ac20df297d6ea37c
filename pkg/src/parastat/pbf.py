"""Fock-like representation of the relative parabose set with one paraboson
and one parafermion mode, organized into the V_{m,n} ladder, plus the
exhaustive search over Z2 x Z2 commutation factors that makes the
construction close.

The ladder carrier decomposes as a grid of subspaces V_{m,n} indexed by the
paraboson quantum number m >= 0 and the parafermion quantum number
0 <= n <= p.  Interior subspaces are two-dimensional; the boundary rows and
columns (m = 0, n = 0, n = p) are one-dimensional.  Number operators are
recovered from the generators as

    N_b = ({b+, b-} - p) / 2        N_f = ([f+, f-] + p) / 2

and must be integer-diagonal on the constructed basis; failure signals an
incompatible braiding choice.  Basis vectors contaminated by the boson
cutoff (non-integer number content) are dropped from the ladder; with a
valid factor this only affects states near the truncation boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebras import (
    AlgebraKind,
    DegreeAssignment,
    GeneratorLabel,
    verify_relations,
)
from .errors import ArgumentError, StructureError
from .fock import GreenAnsatzRep, build_green_rep
from .groups import (
    Bicharacter,
    FiniteAbelianGroup,
    enumerate_bicharacters,
    is_commutation_factor,
)
from .linalg import cyclic_subspace

_B_PLUS = GeneratorLabel("b", 1, 1)
_B_MINUS = GeneratorLabel("b", 1, -1)
_F_PLUS = GeneratorLabel("f", 1, 1)
_F_MINUS = GeneratorLabel("f", 1, -1)


def klein_group_degrees() -> DegreeAssignment:
    """The Z2 x Z2 grading with the boson odd in the first factor and the
    fermion odd in the second."""
    g = FiniteAbelianGroup((2, 2))
    return DegreeAssignment(g, {"b": (1, 0), "f": (0, 1)})


@dataclass(frozen=True)
class LadderLabel:
    m: int
    n: int
    branch: int

    def __str__(self):
        return f"V[{self.m},{self.n}]#{self.branch}"


@dataclass
class PBFFockRep:
    """Cyclic Fock-like module on the V_{m,n} ladder basis."""

    p: int
    boson_cutoff: int
    labels: list  # LadderLabel per basis column
    basis: np.ndarray  # (full_dim, k) orthonormal columns in the tensor space
    b_plus: np.ndarray
    b_minus: np.ndarray
    f_plus: np.ndarray
    f_minus: np.ndarray
    theta_used: Bicharacter
    deg_used: DegreeAssignment

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def m_values(self) -> np.ndarray:
        return np.array([l.m for l in self.labels])

    @property
    def n_values(self) -> np.ndarray:
        return np.array([l.n for l in self.labels])

    def generators(self) -> dict:
        return {
            _B_PLUS: self.b_plus,
            _B_MINUS: self.b_minus,
            _F_PLUS: self.f_plus,
            _F_MINUS: self.f_minus,
        }

    def interior_mask(self, margin: int = 3) -> np.ndarray:
        return self.m_values <= self.boson_cutoff - margin

    def block_indices(self) -> dict:
        """(m, n) -> column indices of V_{m,n}."""
        out = {}
        for i, l in enumerate(self.labels):
            out.setdefault((l.m, l.n), []).append(i)
        return out


def subspace_dims(rep: PBFFockRep) -> dict:
    """(m, n) -> dim V_{m,n}, restricted to the reliable interior
    m <= cutoff - 3, n <= p."""
    out = {}
    for (m, n), idx in rep.block_indices().items():
        if m <= rep.boson_cutoff - 3 and n <= rep.p:
            out[(m, n)] = len(idx)
    return out


def _number_operators(rep: GreenAnsatzRep):
    bp = rep.generators[_B_PLUS]
    bm = rep.generators[_B_MINUS]
    fp = rep.generators[_F_PLUS]
    fm = rep.generators[_F_MINUS]
    eye = np.eye(rep.dim)
    n_b = (bp @ bm + bm @ bp - rep.p * eye) / 2.0
    n_f = (fp @ fm - fm @ fp + rep.p * eye) / 2.0
    return n_b, n_f


def build_pbf_rep(
    p: int,
    boson_cutoff: int,
    theta: Bicharacter,
    deg: DegreeAssignment,
    tol: float = 1e-9,
) -> PBFFockRep:
    """Construct the cyclic module over symmetric-mixture copies and organize
    it into the V_{m,n} ladder.

    The caller is expected to pass a factor admitted by `factor_search` for
    the same order (overriding knowingly otherwise); a factor that does not
    close the algebra surfaces here as a StructureError when the number
    operators fail to be integer-diagonal on low-lying states.
    """
    green = build_green_rep(AlgebraKind.PBF, p, 1, 1, boson_cutoff, theta, deg)
    order = [_B_PLUS, _B_MINUS, _F_PLUS, _F_MINUS]
    # Expand only vectors supported strictly below the cutoff: every operator
    # application is then truncation-exact, so the constructed module is the
    # exact Fock-like module cut along total quanta <= cutoff, free of the
    # downward-cascading truncation echoes an unrestricted closure collects.
    boundary = green.total_quanta >= boson_cutoff
    exact_support = lambda v: not np.any(np.abs(v[boundary]) > 1e-12)  # noqa: E731
    basis = cyclic_subspace(
        [green.generators[l] for l in order],
        green.vacuum,
        tol=tol,
        expand=exact_support,
    )
    n_b, n_f = _number_operators(green)
    mb = basis.conj().T @ n_b @ basis
    mf = basis.conj().T @ n_f @ basis
    quanta = np.rint(
        np.real(np.einsum("ij,i,ij->j", basis.conj(), green.total_quanta, basis))
    ).astype(int)

    k = basis.shape[1]
    gate = 10 * tol
    clean = np.ones(k, dtype=bool)
    for j in range(k):
        for mat in (mb, mf):
            off = max(
                np.max(np.abs(np.delete(mat[:, j], j))) if k > 1 else 0.0,
                np.max(np.abs(np.delete(mat[j, :], j))) if k > 1 else 0.0,
            )
            d = mat[j, j]
            if off > gate or abs(d - round(d.real)) > gate or round(d.real) < 0:
                clean[j] = False
    bad_interior = (~clean) & (quanta <= boson_cutoff - 3)
    if bad_interior.any():
        j = int(np.flatnonzero(bad_interior)[0])
        raise StructureError(
            f"number operators are not integer-diagonal on a state with "
            f"{quanta[j]} quanta; the braiding does not close the algebra"
        )

    keep = np.flatnonzero(clean)
    ms = np.rint(np.real(np.diagonal(mb)[keep])).astype(int)
    ns = np.rint(np.real(np.diagonal(mf)[keep])).astype(int)
    order_idx = sorted(range(len(keep)), key=lambda i: (ms[i], ns[i], i))
    cols = keep[order_idx]
    labels = []
    branch_count = {}
    for i in order_idx:
        key = (int(ms[i]), int(ns[i]))
        b = branch_count.get(key, 0)
        branch_count[key] = b + 1
        labels.append(LadderLabel(m=key[0], n=key[1], branch=b))

    q = basis[:, cols]
    proj = {l: q.conj().T @ green.generators[l] @ q for l in order}
    return PBFFockRep(
        p=p,
        boson_cutoff=boson_cutoff,
        labels=labels,
        basis=q,
        b_plus=proj[_B_PLUS],
        b_minus=proj[_B_MINUS],
        f_plus=proj[_F_PLUS],
        f_minus=proj[_F_MINUS],
        theta_used=theta,
        deg_used=deg,
    )


@dataclass
class FactorSearchResult:
    theta: Bicharacter
    deg: DegreeAssignment
    max_residual: float
    pfb_max_residual: float
    pfb_passes: bool

    def to_payload(self) -> dict:
        return {
            "theta_gen_matrix": [list(r) for r in self.theta.gen_matrix],
            "deg_b": list(self.deg.degree("b")),
            "deg_f": list(self.deg.degree("f")),
            "pbf_max_residual": self.max_residual,
            "pfb_max_residual": self.pfb_max_residual,
            "pfb_passes": self.pfb_passes,
        }


def factor_search(p: int, boson_cutoff: int, tol: float = 1e-10) -> list[FactorSearchResult]:
    """Try every Z2 x Z2 commutation factor against the coupled trilinear
    relations of the relative parabose set, built from symmetric-mixture
    copies; report the factors that close the algebra on the interior,
    sorted by residual.  Each passing factor is additionally tested against
    the relative parafermi set built from antisymmetric-mixture copies.
    """
    if boson_cutoff < 4:
        raise ArgumentError("factor search needs a boson cutoff of at least 4")
    deg = klein_group_degrees()
    group = deg.group
    factors = [b for b in enumerate_bicharacters(group) if is_commutation_factor(b)]
    results = []
    for theta in factors:
        rep = build_green_rep(AlgebraKind.PBF, p, 1, 1, boson_cutoff, theta, deg)
        rpt = verify_relations(
            rep.generators, AlgebraKind.PBF, interior=rep.interior_mask(), tol=tol
        )
        if rpt.max_residual > tol:
            continue
        rep_fb = build_green_rep(AlgebraKind.PFB, p, 1, 1, boson_cutoff, theta, deg)
        rpt_fb = verify_relations(
            rep_fb.generators, AlgebraKind.PFB, interior=rep_fb.interior_mask(), tol=tol
        )
        results.append(
            FactorSearchResult(
                theta=theta,
                deg=deg,
                max_residual=rpt.max_residual,
                pfb_max_residual=rpt_fb.max_residual,
                pfb_passes=rpt_fb.max_residual <= tol,
            )
        )
    results.sort(key=lambda r: (r.max_residual, r.theta.key()))
    return results


@dataclass
class BraidedProductRep:
    """Generators of two graded representations embedded on the dressed
    tensor product of their carrier spaces (left factor undressed)."""

    generators: dict
    dim: int
    total_quanta: np.ndarray
    basis_degrees: np.ndarray
    cutoff: int | None

    def interior_mask(self, margin: int = 3) -> np.ndarray:
        if self.cutoff is None:
            return np.ones(self.dim, dtype=bool)
        return self.total_quanta <= self.cutoff - margin


def braided_product_rep(
    rep_a: GreenAnsatzRep, rep_b: GreenAnsatzRep, theta: Bicharacter
) -> BraidedProductRep:
    """Embed rep_a's generators as x (x) I and rep_b's as D (x) y, where D is
    the Klein dressing by theta on rep_a's basis degrees.  Candidate straight
    commutation / anticommutation representations arise this way; callers
    verify them against the intended relation set."""
    if rep_a.deg.group != rep_b.deg.group:
        raise ArgumentError("the two factors are graded by different groups")
    if theta.group != rep_a.deg.group:
        raise ArgumentError("braiding factor lives on a different group")
    if not is_commutation_factor(theta):
        raise ArgumentError("braided products need a skew-symmetric bicharacter")
    overlap = set(rep_a.generators) & set(rep_b.generators)
    if overlap:
        raise ArgumentError(f"generator labels collide: {sorted(map(str, overlap))}")
    g = theta.group
    fac = np.array(g.factors, dtype=np.int64)
    eye_b = np.eye(rep_b.dim, dtype=complex)
    gens = {}
    for label, mat in rep_a.generators.items():
        gens[label] = np.kron(mat, eye_b)
    idx_a = np.zeros(rep_a.dim, dtype=np.int64)
    for c, d in zip(rep_a.basis_degrees.T, g.factors):
        idx_a = idx_a * d + c
    from .groups import roots_of_unity

    roots = roots_of_unity(g.order)
    for label, mat in rep_b.generators.items():
        d = rep_b.deg.degree(label.species)
        if label.sign < 0:
            d = g.neg(d)
        phases = roots[theta.table[g.index(d)][idx_a]]
        gens[label] = np.kron(np.diag(phases), mat)
    tq = (rep_a.total_quanta[:, None] + rep_b.total_quanta[None, :]).ravel()
    degs = (
        rep_a.basis_degrees[:, None, :] + rep_b.basis_degrees[None, :, :]
    ).reshape(-1, g.rank) % fac
    cutoffs = [c for c in (rep_a.cutoff, rep_b.cutoff) if c is not None]
    return BraidedProductRep(
        generators=gens,
        dim=rep_a.dim * rep_b.dim,
        total_quanta=tq,
        basis_degrees=degs,
        cutoff=min(cutoffs) if cutoffs else None,
    )
