"""Hochschild chains and cochains in low degrees.

Chains of degree n live in A (x) A^(x)n with coordinates indexed
lexicographically by (i_0, ..., i_n).  The module provides the boundary b,
the degree-1 coboundary, Connes' boundary B, the Lie derivative and interior
product of a derivation, homology/cohomology presentations with deterministic
class representatives, and the H0-valued pairing <X, alpha> = i_X(alpha).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .algebra import FiniteAlgebra, check_guard, commutator_subspace
from .exactlin import (Q, ZERO, ONE, QMatrix, ExactLinError, in_row_span,
                       nullspace, quotient_basis, row_space, vec, vec_is_zero)


class HochschildError(ValueError):
    pass


# ---------------------------------------------------------------------------
# chains

@dataclass(frozen=True)
class Chain:
    algebra: FiniteAlgebra
    degree: int
    coords: tuple  # length dim^(degree+1)

    def __post_init__(self):
        if self.degree < 0:
            raise HochschildError("degree must be >= 0")
        if len(self.coords) != self.algebra.dim ** (self.degree + 1):
            raise HochschildError("coordinate length mismatch")

    def __add__(self, other):
        self._same(other)
        return Chain(self.algebra, self.degree,
                     tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return Chain(self.algebra, self.degree,
                     tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, c):
        c = Q(c)
        return Chain(self.algebra, self.degree,
                     tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self):
        return vec_is_zero(self.coords)

    def _same(self, other):
        if self.algebra is not other.algebra or self.degree != other.degree:
            raise HochschildError("chain mismatch")


def chain_space_dim(A: FiniteAlgebra, n: int) -> int:
    return A.dim ** (n + 1)


def zero_chain(A: FiniteAlgebra, n: int) -> Chain:
    return Chain(A, n, (ZERO,) * chain_space_dim(A, n))


def chain_from_coords(A: FiniteAlgebra, n: int, coords: Sequence) -> Chain:
    return Chain(A, n, vec(coords))


def encode_index(A: FiniteAlgebra, indices: Sequence[int]) -> int:
    idx = 0
    for i in indices:
        idx = idx * A.dim + i
    return idx


def decode_index(A: FiniteAlgebra, idx: int, n: int) -> tuple:
    out = []
    for _ in range(n + 1):
        idx, r = divmod(idx, A.dim)
        out.append(r)
    return tuple(reversed(out))


def elementary_chain(A: FiniteAlgebra, indices: Sequence[int]) -> Chain:
    n = len(indices) - 1
    coords = [ZERO] * chain_space_dim(A, n)
    coords[encode_index(A, indices)] = ONE
    return Chain(A, n, tuple(coords))


def chain_sparse(c: Chain):
    """Sparse view [(multi-index, value), ...] used in CLI reports."""
    A = c.algebra
    return [(decode_index(A, i, c.degree), x)
            for i, x in enumerate(c.coords) if x]


# ---------------------------------------------------------------------------
# cochains of degree 1

@dataclass(frozen=True)
class Cochain1:
    """A linear map A -> A; row j holds the coordinates of the image of e_j."""
    algebra: FiniteAlgebra
    rows: tuple

    def __post_init__(self):
        d = self.algebra.dim
        if len(self.rows) != d or any(len(r) != d for r in self.rows):
            raise HochschildError("cochain must be a dim x dim table")

    def apply(self, x: Sequence) -> tuple:
        d = self.algebra.dim
        out = [ZERO] * d
        for j, xj in enumerate(x):
            if xj:
                for k, r in enumerate(self.rows[j]):
                    if r:
                        out[k] += xj * r
        return tuple(out)

    def apply_basis(self, j: int) -> tuple:
        return self.rows[j]

    def flatten(self) -> tuple:
        return tuple(x for row in self.rows for x in row)

    def is_zero(self):
        return all(vec_is_zero(r) for r in self.rows)


def cochain_from_flat(A: FiniteAlgebra, flat: Sequence) -> Cochain1:
    d = A.dim
    flat = vec(flat)
    if len(flat) != d * d:
        raise HochschildError("flat cochain length mismatch")
    return Cochain1(A, tuple(flat[j * d:(j + 1) * d] for j in range(d)))


def zero_cochain(A: FiniteAlgebra) -> Cochain1:
    return cochain_from_flat(A, (ZERO,) * (A.dim * A.dim))


def inner_derivation(A: FiniteAlgebra, a: Sequence) -> Cochain1:
    """[a, .] : x -> ax - xa."""
    d = A.dim
    rows = []
    for j in range(d):
        ej = A.basis_vector(j)
        rows.append(tuple(p - q for p, q in
                          zip(A.mul(a, ej), A.mul(ej, a))))
    return Cochain1(A, tuple(rows))


def commutator(X: Cochain1, Y: Cochain1) -> Cochain1:
    A = X.algebra
    rows = tuple(tuple(p - q for p, q in
                       zip(X.apply(Y.rows[j]), Y.apply(X.rows[j])))
                 for j in range(A.dim))
    return Cochain1(A, rows)


def coboundary_beta(f: Cochain1) -> QMatrix:
    """Degree-1 coboundary defect: row (i, j) holds a f(b) - f(ab) + f(a) b
    evaluated at (a, b) = (e_i, e_j); the zero matrix iff f is a derivation."""
    A = f.algebra
    d = A.dim
    rows = []
    for i in range(d):
        ei = A.basis_vector(i)
        for j in range(d):
            ej = A.basis_vector(j)
            t1 = A.mul(ei, f.apply_basis(j))
            t2 = f.apply(A.structure[i][j])
            t3 = A.mul(f.apply_basis(i), ej)
            rows.append(tuple(a - b + c for a, b, c in zip(t1, t2, t3)))
    return QMatrix(rows, cols=d)


def is_derivation(f: Cochain1) -> bool:
    return all(vec_is_zero(r) for r in coboundary_beta(f))


def require_derivation(f: Cochain1) -> None:
    if not is_derivation(f):
        raise HochschildError("cochain is not a derivation")


# ---------------------------------------------------------------------------
# chain-level operators

def boundary_b(c: Chain) -> Chain:
    """The Hochschild boundary: face maps plus the cyclic last face with
    sign (-1)^n."""
    if c.degree < 1:
        raise HochschildError("boundary undefined in degree 0")
    A = c.algebra
    n = c.degree
    out = [ZERO] * chain_space_dim(A, n - 1)
    for idx, x in enumerate(c.coords):
        if not x:
            continue
        a = decode_index(A, idx, n)
        for i in range(n):
            sign = -x if i % 2 else x
            prod = A.structure[a[i]][a[i + 1]]
            rest = a[:i] + a[i + 2:]
            for k, p in enumerate(prod):
                if p:
                    out[encode_index(A, a[:i] + (k,) + rest[i:])] += sign * p
        sign = -x if n % 2 else x
        prod = A.structure[a[n]][a[0]]
        for k, p in enumerate(prod):
            if p:
                out[encode_index(A, (k,) + a[1:n])] += sign * p
    return Chain(A, n - 1, tuple(out))


def lie_derivative(X: Cochain1, c: Chain, *, checked: bool = True) -> Chain:
    """Sum over slots of applying the derivation X in one slot."""
    if checked:
        require_derivation(X)
    A = c.algebra
    n = c.degree
    out = [ZERO] * len(c.coords)
    for idx, x in enumerate(c.coords):
        if not x:
            continue
        a = decode_index(A, idx, n)
        for i in range(n + 1):
            row = X.rows[a[i]]
            for k, r in enumerate(row):
                if r:
                    out[encode_index(A, a[:i] + (k,) + a[i + 1:])] += x * r
    return Chain(A, n, tuple(out))


def interior_product(X: Cochain1, c: Chain, *, checked: bool = True) -> Chain:
    """(-1)^(n+1) X(a_n) a_0 (x) a_1 (x) ... (x) a_(n-1)."""
    if c.degree < 1:
        raise HochschildError("interior product undefined in degree 0")
    if checked:
        require_derivation(X)
    A = c.algebra
    n = c.degree
    sgn = ONE if (n + 1) % 2 == 0 else -ONE
    out = [ZERO] * chain_space_dim(A, n - 1)
    for idx, x in enumerate(c.coords):
        if not x:
            continue
        a = decode_index(A, idx, n)
        head = A.mul(X.rows[a[n]], A.basis_vector(a[0]))
        for k, p in enumerate(head):
            if p:
                out[encode_index(A, (k,) + a[1:n])] += sgn * x * p
    return Chain(A, n - 1, tuple(out))


def connes_B(c: Chain) -> Chain:
    """Connes' boundary in the explicit, non-normalized form: for each cyclic
    rotation, a 1 (x) ... term and an a_i (x) 1 (x) ... term, both with sign
    (-1)^(n i)."""
    A = c.algebra
    n = c.degree
    unit = A.unit
    out = [ZERO] * chain_space_dim(A, n + 1)
    for idx, x in enumerate(c.coords):
        if not x:
            continue
        a = decode_index(A, idx, n)
        for i in range(n + 1):
            sign = -x if (n * i) % 2 else x
            cyc = a[i:] + a[:i]
            for u, cu in enumerate(unit):
                if cu:
                    out[encode_index(A, (u,) + cyc)] += sign * cu
                    out[encode_index(A, (cyc[0], u) + cyc[1:])] += sign * cu
    return Chain(A, n + 1, tuple(out))


def h_left_multiply(aprime: Sequence, c: Chain) -> Chain:
    """The homotopy a_0 (x) ... -> a' a_0 (x) ... used against inner
    derivations."""
    A = c.algebra
    n = c.degree
    out = [ZERO] * len(c.coords)
    for idx, x in enumerate(c.coords):
        if not x:
            continue
        a = decode_index(A, idx, n)
        head = A.mul(aprime, A.basis_vector(a[0]))
        for k, p in enumerate(head):
            if p:
                out[encode_index(A, (k,) + a[1:])] += x * p
    return Chain(A, n, tuple(out))


# ---------------------------------------------------------------------------
# homology presentations

@dataclass(frozen=True)
class HomologyPresentation:
    algebra: FiniteAlgebra
    degree: int
    kind: str  # "homology" or "cohomology"
    ambient_dim: int
    cycle_basis: QMatrix
    boundary_basis: QMatrix
    class_reps: QMatrix
    reduce: Callable[[Sequence], tuple]

    @property
    def dim(self) -> int:
        return self.class_reps.rows

    def reduce_chain(self, c: Chain) -> tuple:
        if c.algebra is not self.algebra or c.degree != self.degree:
            raise HochschildError("chain does not match the presentation")
        return self.reduce(c.coords)

    def rep_chain(self, k: int) -> Chain:
        return Chain(self.algebra, self.degree, self.class_reps[k])

    def class_to_chain(self, coords: Sequence) -> Chain:
        coords = vec(coords)
        if len(coords) != self.dim:
            raise HochschildError("class coordinate length mismatch")
        out = [ZERO] * self.ambient_dim
        for c, row in zip(coords, self.class_reps):
            if c:
                for k, x in enumerate(row):
                    if x:
                        out[k] += c * x
        return Chain(self.algebra, self.degree, tuple(out))


def _boundary_operator_rows(A: FiniteAlgebra, n: int) -> QMatrix:
    """Rows = images under b of the degree-n basis chains (dom x cod)."""
    rows = []
    for idx in range(chain_space_dim(A, n)):
        coords = [ZERO] * chain_space_dim(A, n)
        coords[idx] = ONE
        rows.append(boundary_b(Chain(A, n, tuple(coords))).coords)
    return QMatrix(rows, cols=chain_space_dim(A, n - 1))


def _cycle_condition_matrix(A: FiniteAlgebra, n: int) -> QMatrix:
    """Matrix M with {z : Mz = 0} the degree-n cycles (cod x dom)."""
    dom = chain_space_dim(A, n)
    cod = chain_space_dim(A, n - 1)
    cols = [[ZERO] * dom for _ in range(cod)]
    for idx in range(dom):
        coords = [ZERO] * dom
        coords[idx] = ONE
        img = boundary_b(Chain(A, n, tuple(coords))).coords
        for k, x in enumerate(img):
            if x:
                cols[k][idx] = x
    return QMatrix(cols, cols=dom)


def homology(A: FiniteAlgebra, n: int, *,
             max_dim: Optional[int] = None) -> HomologyPresentation:
    """H_n(A, A) with canonical cycle/boundary bases and class reps."""
    check_guard(A.dim, n, max_dim)
    check_guard(A.dim, n + 1, max_dim)
    N = chain_space_dim(A, n)
    if n == 0:
        cycles = QMatrix.identity(N)
    else:
        cycles = nullspace(_cycle_condition_matrix(A, n))
    boundaries = row_space(_boundary_operator_rows(A, n + 1))
    reps, reduce = quotient_basis(cycles, boundaries)
    return HomologyPresentation(A, n, "homology", N, cycles, boundaries,
                                reps, reduce)


def derivation_basis(A: FiniteAlgebra) -> QMatrix:
    """Basis of Der(A), each row a flattened dim x dim map."""
    d = A.dim
    rows = []
    for i in range(d):
        for j in range(d):
            cij = A.structure[i][j]
            for m in range(d):
                row = [ZERO] * (d * d)
                for s, c in enumerate(cij):
                    if c:
                        row[s * d + m] += c
                for k in range(d):
                    ckj = A.structure[k][j][m]
                    if ckj:
                        row[i * d + k] -= ckj
                    cik = A.structure[i][k][m]
                    if cik:
                        row[j * d + k] -= cik
                rows.append(row)
    return nullspace(QMatrix(rows, cols=d * d))


def inner_derivation_basis(A: FiniteAlgebra) -> QMatrix:
    d = A.dim
    rows = []
    for i in range(d):
        flat = inner_derivation(A, A.basis_vector(i)).flatten()
        if not vec_is_zero(flat):
            rows.append(flat)
    return row_space(QMatrix(rows, cols=d * d))


def cohomology_h1(A: FiniteAlgebra) -> HomologyPresentation:
    """H^1(A, A) = Der(A) / inner derivations, on flattened d x d maps."""
    derivations = derivation_basis(A)
    inner = inner_derivation_basis(A)
    reps, reduce = quotient_basis(derivations, inner)
    return HomologyPresentation(A, 1, "cohomology", A.dim * A.dim,
                                derivations, inner, reps, reduce)


def pairing(X: Cochain1, alpha: Chain,
            h0: HomologyPresentation) -> tuple:
    """<X, alpha> = class of i_X(alpha) in H_0; alpha must have degree 1."""
    if alpha.degree != 1:
        raise HochschildError("pairing requires a degree-1 chain")
    if X.algebra is not alpha.algebra or h0.algebra is not alpha.algebra:
        raise HochschildError("pairing: mismatched algebras")
    return h0.reduce(interior_product(X, alpha, checked=False).coords)


# ---------------------------------------------------------------------------
# descent verification

@dataclass(frozen=True)
class DescentCheck:
    name: str
    case: str
    ok: bool


@dataclass(frozen=True)
class DescentReport:
    algebra: FiniteAlgebra
    degree: int
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]


def verify_descent(A: FiniteAlgebra, n: int, *,
                   max_dim: Optional[int] = None) -> DescentReport:
    """Exact verification that L_X, i_X, B and the inner-derivation operators
    descend to homology at degree n on the given algebra."""
    pres_n = homology(A, n, max_dim=max_dim)
    pres_lo = homology(A, n - 1, max_dim=max_dim) if n >= 1 else None
    check_guard(A.dim, n + 2, max_dim)
    boundaries_hi = row_space(_boundary_operator_rows(A, n + 2))
    checks = []

    def add(name, case, ok):
        checks.append(DescentCheck(name, case, ok))

    der = derivation_basis(A)
    for xi, xflat in enumerate(der):
        X = cochain_from_flat(A, xflat)
        for zi, z in enumerate(pres_n.cycle_basis):
            lz = lie_derivative(X, Chain(A, n, z), checked=False)
            add("L_X cycles->cycles", f"X{xi} z{zi}",
                in_row_span(lz.coords, pres_n.cycle_basis))
            if pres_lo is not None:
                iz = interior_product(X, Chain(A, n, z), checked=False)
                add("i_X cycles->cycles", f"X{xi} z{zi}",
                    in_row_span(iz.coords, pres_lo.cycle_basis))
        for bi, b in enumerate(pres_n.boundary_basis):
            lb = lie_derivative(X, Chain(A, n, b), checked=False)
            add("L_X boundaries->boundaries", f"X{xi} b{bi}",
                in_row_span(lb.coords, pres_n.boundary_basis))
            if pres_lo is not None:
                ib = interior_product(X, Chain(A, n, b), checked=False)
                add("i_X boundaries->boundaries", f"X{xi} b{bi}",
                    in_row_span(ib.coords, pres_lo.boundary_basis))

    for ai in range(A.dim):
        inner = inner_derivation(A, A.basis_vector(ai))
        if inner.is_zero():
            continue
        for zi in range(pres_n.dim):
            z = pres_n.rep_chain(zi)
            lz = lie_derivative(inner, z, checked=False)
            add("L_inner vanishes on homology", f"a{ai} z{zi}",
                vec_is_zero(pres_n.reduce(lz.coords)))
            if pres_lo is not None:
                iz = interior_product(inner, z, checked=False)
                add("i_inner vanishes on homology", f"a{ai} z{zi}",
                    vec_is_zero(pres_lo.reduce(iz.coords)))

    for zi in range(pres_n.dim):
        z = pres_n.rep_chain(zi)
        bBz = boundary_b(connes_B(z))
        add("b(B(cycle)) is a boundary", f"z{zi}",
            in_row_span(bBz.coords, pres_n.boundary_basis))
    for bi, b in enumerate(pres_n.boundary_basis):
        Bb = connes_B(Chain(A, n, b))
        add("B boundaries->boundaries", f"b{bi}",
            in_row_span(Bb.coords, boundaries_hi))

    return DescentReport(A, n, tuple(checks))
