"""Finite abelian groups, their bicharacters and commutation factors, the
universal R-matrix of the group algebra, and the induced braiding.

All classification data is exact: bicharacter values are integer exponents of
a fixed primitive n-th root of unity (n the group order), and R-matrix
coefficients live in the cyclotomic field Q(zeta_n).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cyclotomic import CycNum
from .errors import ArgumentError, SizingError

DEFAULT_ORDER_BOUND = 64
# Guard against combinatorial blow-up for heavily factored groups: the number
# of bicharacter candidates is prod gcd(d_i, d_j) over all generator pairs.
MAX_BICHARACTER_CANDIDATES = 1 << 16


def roots_of_unity(n: int) -> np.ndarray:
    """exp(2 pi i k / n) for k = 0..n-1, with the exactly representable values
    (+-1, +-i) pinned and conjugate symmetry enforced, so that phase products
    and adjoints of phase-dressed operators stay exact where possible."""
    r = np.exp(2j * np.pi * np.arange(n) / n)
    r[0] = 1.0
    if n % 2 == 0:
        r[n // 2] = -1.0
    if n % 4 == 0:
        r[n // 4] = 1j
        r[3 * n // 4] = -1j
    for k in range(1, (n + 1) // 2):
        r[n - k] = np.conj(r[k])
    return r


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{d1} x ... x Z_{dr}, elements as coordinate tuples, lexicographic order."""

    factors: tuple[int, ...]

    def __post_init__(self):
        if not self.factors or any(d < 2 for d in self.factors):
            raise ArgumentError("every cyclic factor must be an integer >= 2")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(d) for d in self.factors)))

    def index(self, el) -> int:
        idx = 0
        for c, d in zip(el, self.factors):
            idx = idx * d + (c % d)
        return idx

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def neg(self, a) -> tuple[int, ...]:
        return tuple((-x) % d for x, d in zip(a, self.factors))

    def contains(self, el) -> bool:
        return len(el) == len(self.factors) and all(
            0 <= c < d for c, d in zip(el, self.factors)
        )

    def pairing_exponent(self, chi, g) -> int:
        """Exponent of zeta_n in the canonical pairing <chi, g>.

        chi is a character encoded by its exponent tuple under the chosen
        primitive roots per cyclic factor (identifying the dual group with
        the group itself).
        """
        n = self.order
        return sum(a * c * (n // d) for a, c, d in zip(chi, g, self.factors)) % n

    def __str__(self):
        return "x".join(f"Z{d}" for d in self.factors)

    @classmethod
    def parse(cls, spec: str) -> "FiniteAbelianGroup":
        """Parse descriptors like "Z2", "Z2xZ2", "Z3xZ4"."""
        m = re.fullmatch(r"Z(\d+)(?:xZ(\d+))*", spec.strip())
        if not m:
            raise ArgumentError(f"cannot parse group descriptor {spec!r}")
        parts = re.findall(r"Z(\d+)", spec.strip())
        factors = tuple(int(p) for p in parts)
        if any(d < 2 for d in factors):
            raise ArgumentError(f"cyclic factors must be >= 2 in {spec!r}")
        return cls(factors)


@dataclass(frozen=True)
class Character:
    """A character of the group, encoded by an exponent tuple."""

    group: FiniteAbelianGroup
    exponents: tuple[int, ...]

    def value_exponent(self, g) -> int:
        return self.group.pairing_exponent(self.exponents, g)

    def value(self, g) -> CycNum:
        return CycNum.root(self.group.order, self.value_exponent(g))


class Bicharacter:
    """A map theta: G x G -> C* multiplicative in each argument.

    Stored as an n x n table of exponents of zeta_n (exact) together with the
    generator-pair exponent matrix that produced it: the value on generator
    pair (i, j) is exp(2*pi*i * m_ij / gcd(d_i, d_j)).
    """

    def __init__(self, group: FiniteAbelianGroup, gen_matrix):
        self.group = group
        self.gen_matrix = tuple(tuple(int(x) for x in row) for row in gen_matrix)
        self.table = self._build_table()

    def _build_table(self) -> np.ndarray:
        g = self.group
        n = g.order
        els = np.array(g.elements(), dtype=np.int64)  # (n, r)
        # theta(a, b) = zeta_n ^ sum_ij m_ij * (n / gcd(d_i,d_j)) * a_i * b_j
        scale = np.array(
            [
                [m * (n // math.gcd(di, dj)) for m, dj in zip(row, g.factors)]
                for row, di in zip(self.gen_matrix, g.factors)
            ],
            dtype=np.int64,
        )
        table = (els @ scale @ els.T) % n
        return table.astype(np.int64)

    @classmethod
    def trivial(cls, group: FiniteAbelianGroup) -> "Bicharacter":
        r = group.rank
        return cls(group, [[0] * r for _ in range(r)])

    def exponent(self, a, b) -> int:
        return int(self.table[self.group.index(a), self.group.index(b)])

    def value(self, a, b) -> CycNum:
        return CycNum.root(self.group.order, self.exponent(a, b))

    def phase(self, a, b) -> complex:
        return complex(roots_of_unity(self.group.order)[self.exponent(a, b)])

    def phase_table(self) -> np.ndarray:
        return roots_of_unity(self.group.order)[self.table]

    def is_valid(self) -> bool:
        """Check both multiplicativity axioms and normalization exhaustively."""
        g = self.group
        n = g.order
        els = g.elements()
        idx = {el: i for i, el in enumerate(els)}
        t = self.table
        prod = np.array([[idx[g.add(a, b)] for b in els] for a in els], dtype=np.int64)
        # theta(ab, c) == theta(a, c) * theta(b, c) for all a, b, c
        lhs = t[prod, :]  # (n, n, n): [a, b, c]
        rhs = (t[:, None, :] + t[None, :, :]) % n
        if not np.array_equal(lhs % n, rhs):
            return False
        # theta(a, bc) == theta(a, b) * theta(a, c)
        lhs2 = t[:, prod]  # (n, n, n): [a, b, c]
        rhs2 = (t[:, :, None] + t[:, None, :]) % n
        if not np.array_equal(lhs2 % n, rhs2):
            return False
        e = idx[g.identity]
        return not t[e, :].any() and not t[:, e].any()

    def key(self) -> tuple:
        return tuple(itertools.chain.from_iterable(self.gen_matrix))

    def __eq__(self, other):
        return (
            isinstance(other, Bicharacter)
            and self.group == other.group
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.group, self.table.tobytes()))

    def __repr__(self):
        return f"Bicharacter({self.group}, gen_matrix={self.gen_matrix})"


def enumerate_bicharacters(
    group: FiniteAbelianGroup, max_order: int = DEFAULT_ORDER_BOUND
) -> list[Bicharacter]:
    """All bicharacters of the group, in lexicographic generator-matrix order.

    Candidates are the choices of values on generator pairs compatible with
    the generator orders; every candidate table is then validated against the
    bicharacter axioms on all pairs.
    """
    n = group.order
    if n > max_order:
        raise SizingError(f"group order {n} exceeds bound {max_order}")
    r = group.rank
    ranges = [
        range(math.gcd(group.factors[i], group.factors[j]))
        for i in range(r)
        for j in range(r)
    ]
    total = math.prod(len(rg) for rg in ranges)
    if total > MAX_BICHARACTER_CANDIDATES:
        raise SizingError(
            f"{total} bicharacter candidates exceed the enumeration budget"
        )
    out = []
    seen = set()
    for flat in itertools.product(*ranges):
        gen = [flat[i * r : (i + 1) * r] for i in range(r)]
        theta = Bicharacter(group, gen)
        if not theta.is_valid():
            raise ArithmeticError("generator-pair candidate failed bicharacter axioms")
        b = theta.table.tobytes()
        if b in seen:
            raise ArithmeticError("duplicate bicharacter in enumeration")
        seen.add(b)
        out.append(theta)
    return out


def is_commutation_factor(theta: Bicharacter) -> bool:
    """True iff theta(g,h) * theta(h,g) == 1 for all g, h (exact)."""
    n = theta.group.order
    return not ((theta.table + theta.table.T) % n).any()


@dataclass
class RMatrix:
    """Element of CG (x) CG given by a sparse coefficient map.

    Keys are pairs of group elements (coordinate tuples, the dual group being
    identified with the group); values are exact cyclotomic numbers.
    """

    group: FiniteAbelianGroup
    coefficients: dict = field(default_factory=dict)

    def complex_coefficients(self) -> dict:
        return {k: v.to_complex() for k, v in self.coefficients.items()}


def bicharacter_to_rmatrix(theta: Bicharacter) -> RMatrix:
    """R = (1/n^2) sum_{g,h,g',h'} theta(g,h) conj<g',g> conj<h',h> g' (x) h'.

    Evaluated exactly: for each output pair the quadruple sum is folded into
    counts per power of zeta_n and reduced in Q(zeta_n).
    """
    g = theta.group
    n = g.order
    els = g.elements()
    coords = np.array(els, dtype=np.int64)
    # pairing exponent matrix P[a, g] over zeta_n
    mult = np.array([n // d for d in g.factors], dtype=np.int64)
    P = (coords * mult) @ coords.T % n  # (n, n): P[chi, g]
    t = theta.table
    coeffs = {}
    scale = Fraction(1, n * n)
    for ia, a in enumerate(els):
        # exponent of theta(g,h) * conj<a,g> * conj<b,h> is t[g,h] - P[a,g] - P[b,h]
        base = (t - P[ia][:, None]) % n  # (n_g, n_h)
        for ib, b in enumerate(els):
            expo = (base - P[ib][None, :]) % n
            counts = np.bincount(expo.ravel(), minlength=n)
            val = CycNum.from_counts(n, counts, scale)
            if not val.is_zero():
                coeffs[(a, b)] = val
    return RMatrix(group=g, coefficients=coeffs)


def _tensor_product_coeffs(group, left, right, slots_l, slots_r, nslots):
    """Multiply two sparse CG^(x nslots) elements given by coefficient dicts.

    left/right map slot-index tuples (restricted to slots_l / slots_r) to
    CycNum; omitted slots carry the identity.  Group elements multiply
    coordinate-wise, coefficients multiply in Q(zeta_n).
    """
    e = group.identity
    out = {}
    for kl, cl in left.items():
        full_l = [e] * nslots
        for s, el in zip(slots_l, kl):
            full_l[s] = el
        for kr, cr in right.items():
            key = list(full_l)
            for s, el in zip(slots_r, kr):
                key[s] = group.add(key[s], el)
            key = tuple(key)
            c = cl * cr
            if key in out:
                out[key] = out[key] + c
            else:
                out[key] = c
    return {k: v for k, v in out.items() if not v.is_zero()}


@dataclass(frozen=True)
class QTReport:
    qt_axioms_ok: bool
    triangular: bool
    coproduct_ok: bool
    invertible: bool
    intertwines: bool


def check_quasitriangular(r: RMatrix, group: FiniteAbelianGroup) -> QTReport:
    """Verify the quasitriangularity axioms of R over CG exactly.

    Checks (Delta x id)R = R13 R23 and (id x Delta)R = R13 R12 with
    Delta(g) = g x g, invertibility of R, the intertwining relation
    R Delta(x) = Delta_op(x) R (automatic for commutative CG, still checked),
    and the triangularity flag R21 R = e x e.
    """
    n = group.order
    c = r.coefficients

    # (Delta x id) R: g x g x h, compared against R13 R23
    lhs1 = {(g, g, h): v for (g, h), v in c.items()}
    rhs1 = _tensor_product_coeffs(group, c, c, (0, 2), (1, 2), 3)
    coproduct_ok = _dicts_equal(lhs1, rhs1)

    # (id x Delta) R: g x h x h, compared against R13 R12
    lhs2 = {(g, h, h): v for (g, h), v in c.items()}
    rhs2 = _tensor_product_coeffs(group, c, c, (0, 2), (0, 1), 3)
    coproduct_ok = coproduct_ok and _dicts_equal(lhs2, rhs2)

    # invertibility: all braiding values (Fourier transform of R) nonzero
    invertible = True
    for a in group.elements():
        for b in group.elements():
            if braiding_on_lines(r, a, b).is_zero():
                invertible = False
                break
        if not invertible:
            break

    # R Delta(x) = Delta_op(x) R for x ranging over the group basis
    intertwines = True
    for x in group.elements():
        lhs = {(group.add(g, x), group.add(h, x)): v for (g, h), v in c.items()}
        rhs = {(group.add(x, g), group.add(x, h)): v for (g, h), v in c.items()}
        if not _dicts_equal(lhs, rhs):
            intertwines = False
            break

    # triangularity: R21 * R == e x e
    r21 = {(h, g): v for (g, h), v in c.items()}
    prod = _tensor_product_coeffs(group, r21, c, (0, 1), (0, 1), 2)
    e = group.identity
    unit = {(e, e): CycNum.one(n)}
    triangular = _dicts_equal(prod, unit)

    return QTReport(
        qt_axioms_ok=coproduct_ok and invertible and intertwines,
        triangular=triangular,
        coproduct_ok=coproduct_ok,
        invertible=invertible,
        intertwines=intertwines,
    )


def _dicts_equal(a, b) -> bool:
    keys = set(a) | set(b)
    for k in keys:
        va = a.get(k)
        vb = b.get(k)
        if va is None:
            va = CycNum.zero(vb.order)
        if vb is None:
            vb = CycNum.zero(va.order)
        if not (va - vb).is_zero():
            return False
    return True


def braiding_on_lines(r: RMatrix, a, b) -> CycNum:
    """Braiding factor picked up by swapping one-dimensional graded lines.

    For x of degree a and y of degree b the braiding sends x (x) y to
    factor * (y (x) x); the factor is sum c_{g,h} <a,g> <b,h>.
    """
    g = r.group
    n = g.order
    acc = CycNum.zero(n)
    for (gg, hh), coeff in r.coefficients.items():
        k = (g.pairing_exponent(a, gg) + g.pairing_exponent(b, hh)) % n
        acc = acc + coeff.times_root(k)
    return acc


def rmatrix_to_bicharacter(r: RMatrix) -> Bicharacter:
    """Invert the bicharacter -> R-matrix correspondence via the line braiding.

    Each braiding value must be an exact root of unity; the recovered table is
    returned as a Bicharacter (reconstructed from its generator pairs).
    """
    g = r.group
    n = g.order
    rank = g.rank
    gen = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        ei = tuple(1 if k == i else 0 for k in range(rank))
        for j in range(rank):
            ej = tuple(1 if k == j else 0 for k in range(rank))
            val = braiding_on_lines(r, ei, ej)
            e = val.as_root_of_unity()
            if e is None:
                raise ArithmeticError("braiding value is not a root of unity")
            d = math.gcd(g.factors[i], g.factors[j])
            if (e * d) % n != 0:
                raise ArithmeticError("braiding value has incompatible order")
            gen[i][j] = (e * d // n) % d
    theta = Bicharacter(g, gen)
    # confirm the full table, not only generator pairs
    for a in g.elements():
        for b in g.elements():
            if not (braiding_on_lines(r, a, b) - theta.value(a, b)).is_zero():
                raise ArithmeticError("line braiding does not extend bilinearly")
    return theta


@dataclass(frozen=True)
class GradedVector:
    """A homogeneous vector together with its degree in the grading group."""

    degree: tuple[int, ...]
    vec: np.ndarray


def braid(theta: Bicharacter, x: GradedVector, y: GradedVector) -> GradedVector:
    """psi(x (x) y) = theta(deg x, deg y) * (y (x) x)."""
    g = theta.group
    if not g.contains(x.degree) or not g.contains(y.degree):
        raise ArgumentError("degree is not an element of the grading group")
    factor = theta.phase(x.degree, y.degree)
    return GradedVector(
        degree=g.add(x.degree, y.degree),
        vec=factor * np.kron(np.asarray(y.vec), np.asarray(x.vec)),
    )
