"""The bracket space E(A) = H^1 (+) H_1 and its nondegenerate quotient.

E(A) carries the Leibniz bracket

    [[(X1, a1), (X2, a2)]] = ([X1, X2], L_X1 a2 - L_X2 a1 + B<X2, a1>)

and the H0-valued symmetric form (e1, e2) = <X2, a1> + <X1, a2>.  The radical
J of the form is a two-sided bracket ideal; the quotient carries a
nondegenerate induced form.  Both facts are re-verified exactly whenever the
quotient is constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .algebra import FiniteAlgebra, center
from .exactlin import (Q, ZERO, ONE, QMatrix, in_row_span, membership,
                       nullspace, quotient_basis, rank, stack, vec,
                       vec_is_zero)
from .hochschild import (Chain, Cochain1, HomologyPresentation, boundary_b,
                         cochain_from_flat, cohomology_h1, connes_B, homology,
                         interior_product, lie_derivative, pairing)


class CourantError(ValueError):
    pass


@dataclass(frozen=True)
class EElement:
    """An element of E(A) in class coordinates over a fixed ESpace."""
    space: "ESpace"
    x: tuple      # H^1 class coordinates
    alpha: tuple  # H_1 class coordinates

    def __post_init__(self):
        if len(self.x) != self.space.h1co.dim or \
                len(self.alpha) != self.space.h1.dim:
            raise CourantError("coordinate length mismatch")

    def to_vec(self) -> tuple:
        return self.x + self.alpha

    def __add__(self, other):
        self._same(other)
        return EElement(self.space,
                        tuple(a + b for a, b in zip(self.x, other.x)),
                        tuple(a + b for a, b in zip(self.alpha, other.alpha)))

    def __sub__(self, other):
        self._same(other)
        return EElement(self.space,
                        tuple(a - b for a, b in zip(self.x, other.x)),
                        tuple(a - b for a, b in zip(self.alpha, other.alpha)))

    def __mul__(self, c):
        c = Q(c)
        return EElement(self.space, tuple(c * a for a in self.x),
                        tuple(c * a for a in self.alpha))

    __rmul__ = __mul__

    def _same(self, other):
        if self.space is not other.space:
            raise CourantError("elements of different E-spaces")


class ESpace:
    """E(A) with fixed presentations of H^1, H_1, H_0 and the center."""

    def __init__(self, algebra: FiniteAlgebra, *,
                 max_dim: Optional[int] = None):
        self.algebra = algebra
        self.h1co = cohomology_h1(algebra)
        self.h1 = homology(algebra, 1, max_dim=max_dim)
        self.h0 = homology(algebra, 0, max_dim=max_dim)
        self.center_basis = center(algebra)
        self.dim = self.h1co.dim + self.h1.dim
        # pairing table: P[i][j] = <X_i, alpha_j> in H_0 class coordinates
        self._ptable = tuple(
            tuple(pairing(self._derivation_rep(i), self.h1.rep_chain(j),
                          self.h0)
                  for j in range(self.h1.dim))
            for i in range(self.h1co.dim))
        self._check_d_map_descent()

    # -- representatives ----------------------------------------------------

    def _derivation_rep(self, k: int) -> Cochain1:
        return cochain_from_flat(self.algebra, self.h1co.class_reps[k])

    def derivation_of(self, xcoords: Sequence) -> Cochain1:
        d = self.algebra.dim
        flat = [ZERO] * (d * d)
        for c, row in zip(xcoords, self.h1co.class_reps):
            if c:
                for k, v in enumerate(row):
                    if v:
                        flat[k] += c * v
        return cochain_from_flat(self.algebra, flat)

    def chain_of(self, acoords: Sequence) -> Chain:
        return self.h1.class_to_chain(acoords)

    def element(self, x: Sequence, alpha: Sequence) -> EElement:
        return EElement(self, vec(x), vec(alpha))

    def from_vec(self, v: Sequence) -> EElement:
        v = vec(v)
        if len(v) != self.dim:
            raise CourantError("E-vector length mismatch")
        return EElement(self, v[:self.h1co.dim], v[self.h1co.dim:])

    def basis_element(self, k: int) -> EElement:
        return self.from_vec(tuple(ONE if i == k else ZERO
                                   for i in range(self.dim)))

    def class_of_derivation(self, X: Cochain1) -> tuple:
        return self.h1co.reduce(X.flatten())

    def class_of_chain(self, c: Chain) -> tuple:
        return self.h1.reduce_chain(c)

    def h0_class(self, element_coords: Sequence) -> tuple:
        return self.h0.reduce(vec(element_coords))

    # -- the structure maps -------------------------------------------------

    def pairing_classes(self, xcoords: Sequence, acoords: Sequence) -> tuple:
        """<X, alpha> in H_0 class coordinates, bilinear in class coords."""
        out = [ZERO] * self.h0.dim
        for i, xi in enumerate(xcoords):
            if not xi:
                continue
            for j, aj in enumerate(acoords):
                if aj:
                    c = xi * aj
                    for k, p in enumerate(self._ptable[i][j]):
                        if p:
                            out[k] += c * p
        return tuple(out)

    def bilinear_form(self, e1: EElement, e2: EElement) -> tuple:
        self._check(e1, e2)
        a = self.pairing_classes(e2.x, e1.alpha)
        b = self.pairing_classes(e1.x, e2.alpha)
        return tuple(p + q for p, q in zip(a, b))

    def rho(self, e: EElement) -> tuple:
        return e.x

    def d_map(self, h0coords: Sequence) -> EElement:
        """D(h) = (0, class of B on a representative of h)."""
        h0coords = vec(h0coords)
        if len(h0coords) != self.h0.dim:
            raise CourantError("H0 coordinate length mismatch")
        rep = self.h0.class_to_chain(h0coords)
        alpha = self.h1.reduce_chain(connes_B(rep))
        return EElement(self, (ZERO,) * self.h1co.dim, alpha)

    def _check_d_map_descent(self):
        # B of a commutator representative must land in the boundaries,
        # otherwise D would depend on the representative
        for row in self.h0.boundary_basis:
            b = connes_B(Chain(self.algebra, 0, row))
            if not in_row_span(b.coords, self.h1.boundary_basis):
                raise CourantError(
                    "B does not descend on H0: representative dependence")

    def courant_bracket(self, e1: EElement, e2: EElement) -> EElement:
        self._check(e1, e2)
        X1 = self.derivation_of(e1.x)
        X2 = self.derivation_of(e2.x)
        a1 = self.chain_of(e1.alpha)
        a2 = self.chain_of(e2.alpha)
        from .hochschild import commutator
        xb = self.class_of_derivation(commutator(X1, X2))
        t = lie_derivative(X1, a2, checked=False) \
            - lie_derivative(X2, a1, checked=False)
        h = self.pairing_classes(e2.x, e1.alpha)
        bterm = connes_B(self.h0.class_to_chain(h))
        ab = self.h1.reduce(tuple(p + q for p, q in
                                  zip(t.coords, bterm.coords)))
        return EElement(self, xb, ab)

    def skew_bracket(self, e1: EElement, e2: EElement) -> EElement:
        half = Q(1, 2)
        b = self.courant_bracket(e1, e2)
        d = self.d_map(self.bilinear_form(e1, e2))
        return EElement(self, b.x,
                        tuple(p - half * q for p, q in zip(b.alpha, d.alpha)))

    def center_action(self, xcoords: Sequence, zcoords: Sequence) -> tuple:
        """X(z) for z central; the result is checked to be central again."""
        if not in_row_span(vec(zcoords), self.center_basis):
            raise CourantError("center_action: element is not central")
        X = self.derivation_of(xcoords)
        out = X.apply(vec(zcoords))
        if not in_row_span(out, self.center_basis):
            raise CourantError("center_action: image left the center")
        return out

    def z_scale(self, zcoords: Sequence, e: EElement) -> EElement:
        """The Z(A)-module action z.(X, alpha) on class coordinates."""
        A = self.algebra
        z = vec(zcoords)
        X = self.derivation_of(e.x)
        rows = tuple(A.mul(z, X.rows[j]) for j in range(A.dim))
        xz = self.class_of_derivation(Cochain1(A, rows))
        a = self.chain_of(e.alpha)
        out = [ZERO] * len(a.coords)
        for idx, c in enumerate(a.coords):
            if c:
                i0 = idx // A.dim
                rest = idx % A.dim
                prod = A.mul(z, A.basis_vector(i0))
                for k, p in enumerate(prod):
                    if p:
                        out[k * A.dim + rest] += c * p
        az = self.h1.reduce(out)
        return EElement(self, xz, az)

    def h0_action(self, xcoords: Sequence, h0coords: Sequence) -> tuple:
        """The action of a derivation class on H_0 = A/[A, A] (well-defined
        because derivations preserve the commutator subspace)."""
        X = self.derivation_of(xcoords)
        rep = self.h0.class_to_chain(vec(h0coords))
        return self.h0.reduce(X.apply(rep.coords))

    def _check(self, e1: EElement, e2: EElement):
        if e1.space is not self or e2.space is not self:
            raise CourantError("elements of a different E-space")


# module-level aliases matching the operation names
def courant_bracket(e1: EElement, e2: EElement) -> EElement:
    return e1.space.courant_bracket(e1, e2)

def skew_bracket(e1: EElement, e2: EElement) -> EElement:
    return e1.space.skew_bracket(e1, e2)

def bilinear_form(e1: EElement, e2: EElement) -> tuple:
    return e1.space.bilinear_form(e1, e2)

def rho(e: EElement) -> tuple:
    return e.x


def kernel_J(E: ESpace) -> QMatrix:
    """Basis of the radical {e : (e, e') = 0 for all e'} in E coordinates."""
    hc, hh, h0d = E.h1co.dim, E.h1.dim, E.h0.dim
    rows = []
    # pairing with basis (X_l, 0): <X_l, alpha-part> = 0
    for l in range(hc):
        for k in range(h0d):
            rows.append([ZERO] * hc +
                        [E._ptable[l][j][k] for j in range(hh)])
    # pairing with basis (0, alpha_m): <x-part, alpha_m> = 0
    for m in range(hh):
        for k in range(h0d):
            rows.append([E._ptable[i][m][k] for i in range(hc)] +
                        [ZERO] * hh)
    if not rows:
        return QMatrix.identity(E.dim)
    return nullspace(QMatrix(rows, cols=E.dim))


class EpsilonSpace:
    """The quotient of E(A) by the radical of the form.

    Construction re-verifies, exactly, that the radical is a two-sided
    bracket ideal and that the induced form is nondegenerate; a failure of
    either raises CourantError.
    """

    def __init__(self, espace: ESpace):
        self.espace = espace
        self.algebra = espace.algebra
        self.J = kernel_J(espace)
        reps, reduce = quotient_basis(QMatrix.identity(espace.dim), self.J)
        self.class_reps = reps
        self._reduce = reduce
        self.dim = reps.rows
        self._verify_ideal()
        self.form_table = tuple(
            tuple(self._form_on_reps(i, j) for j in range(self.dim))
            for i in range(self.dim))
        self._verify_nondegenerate()

    # -- coordinates --------------------------------------------------------

    def reduce(self, evec: Sequence) -> tuple:
        """E(A) coordinates -> epsilon(A) class coordinates."""
        return self._reduce(evec)

    def project(self, e: EElement) -> tuple:
        return self._reduce(e.to_vec())

    def lift(self, coords: Sequence) -> EElement:
        coords = vec(coords)
        if len(coords) != self.dim:
            raise CourantError("epsilon coordinate length mismatch")
        out = [ZERO] * self.espace.dim
        for c, row in zip(coords, self.class_reps):
            if c:
                for k, x in enumerate(row):
                    if x:
                        out[k] += c * x
        return self.espace.from_vec(out)

    def basis_coords(self, k: int) -> tuple:
        return tuple(ONE if i == k else ZERO for i in range(self.dim))

    # -- induced structure --------------------------------------------------

    def bracket(self, u: Sequence, v: Sequence) -> tuple:
        b = self.espace.courant_bracket(self.lift(u), self.lift(v))
        return self._reduce(b.to_vec())

    def form(self, u: Sequence, v: Sequence) -> tuple:
        u, v = vec(u), vec(v)
        out = [ZERO] * self.espace.h0.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if vj:
                    c = ui * vj
                    for k, p in enumerate(self.form_table[i][j]):
                        if p:
                            out[k] += c * p
        return tuple(out)

    def z_scale(self, zcoords: Sequence, u: Sequence) -> tuple:
        return self._reduce(self.espace.z_scale(zcoords, self.lift(u)).to_vec())

    def rho(self, u: Sequence) -> tuple:
        """Induced anchor; only well-defined when the algebra is commutative
        (the radical then sits inside the H_1 summand)."""
        if not self.algebra.is_commutative():
            raise CourantError(
                "rho on the quotient requires a commutative algebra")
        for row in self.J:
            if not vec_is_zero(row[:self.espace.h1co.dim]):
                raise CourantError(
                    "radical leaves the H_1 summand: rho undefined")
        return self.lift(u).x

    # -- construction-time verification -------------------------------------

    def _form_on_reps(self, i: int, j: int) -> tuple:
        e1 = self.espace.from_vec(self.class_reps[i])
        e2 = self.espace.from_vec(self.class_reps[j])
        return self.espace.bilinear_form(e1, e2)

    def _verify_ideal(self):
        E = self.espace
        for j, jrow in enumerate(self.J):
            ej = E.from_vec(jrow)
            for k in range(E.dim):
                ek = E.basis_element(k)
                left = E.courant_bracket(ej, ek).to_vec()
                right = E.courant_bracket(ek, ej).to_vec()
                if not in_row_span(left, self.J) or \
                        not in_row_span(right, self.J):
                    raise CourantError(
                        f"radical is not a bracket ideal at (J{j}, e{k})")

    def _verify_nondegenerate(self):
        if self.dim == 0:
            return
        rows = [[x for cell in self.form_table[i] for x in cell]
                for i in range(self.dim)]
        if rank(QMatrix(rows, cols=self.dim * self.espace.h0.dim)) != self.dim:
            raise CourantError("induced form on the quotient is degenerate")


def epsilon(E: ESpace) -> EpsilonSpace:
    return EpsilonSpace(E)


def build_espace(A: FiniteAlgebra, *, max_dim: Optional[int] = None) -> ESpace:
    return ESpace(A, max_dim=max_dim)
