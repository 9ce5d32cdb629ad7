"""Dirac structures: isotropy, maximal isotropy, bracket closure, graphs.

Submodules are Q-subspaces of E(A) or of the nondegenerate quotient, stored
as canonical (RREF) spanning sets.  Verdicts are exact; the Z(A)-stability of
a submodule is reported as a separate flag alongside the Q-linear verdict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import FiniteAlgebra
from .courant import CourantError, EpsilonSpace, ESpace
from .exactlin import (Q, ZERO, ONE, QMatrix, in_row_span, membership,
                       nullspace, rank, row_space, span_contains, stack, vec,
                       vec_is_zero)
from .hochschild import (Chain, Cochain1, HochschildError,
                         HomologyPresentation, connes_B, homology,
                         interior_product)


class DiracError(ValueError):
    pass


# ---------------------------------------------------------------------------
# submodules

@dataclass(frozen=True)
class Submodule:
    """A spanning set of vectors in E(A) or epsilon(A) coordinates."""
    ambient: object  # ESpace or EpsilonSpace
    vectors: QMatrix

    def __post_init__(self):
        dim = _ambient_dim(self.ambient)
        if self.vectors.cols != dim:
            raise DiracError("spanning vectors do not match the ambient")
        object.__setattr__(self, "vectors", row_space(self.vectors))

    @property
    def dim(self) -> int:
        return self.vectors.rows

    @property
    def on_quotient(self) -> bool:
        return isinstance(self.ambient, EpsilonSpace)


def _ambient_dim(amb) -> int:
    return amb.dim


def _form(amb, u, v) -> tuple:
    if isinstance(amb, EpsilonSpace):
        return amb.form(u, v)
    return amb.bilinear_form(amb.from_vec(u), amb.from_vec(v))


def _bracket(amb, u, v) -> tuple:
    if isinstance(amb, EpsilonSpace):
        return amb.bracket(u, v)
    return amb.courant_bracket(amb.from_vec(u), amb.from_vec(v)).to_vec()


def _z_scale(amb, z, u) -> tuple:
    if isinstance(amb, EpsilonSpace):
        return amb.z_scale(z, u)
    return amb.z_scale(z, amb.from_vec(u)).to_vec()


def _center_basis(amb) -> QMatrix:
    if isinstance(amb, EpsilonSpace):
        return amb.espace.center_basis
    return amb.center_basis


def _h0_dim(amb) -> int:
    if isinstance(amb, EpsilonSpace):
        return amb.espace.h0.dim
    return amb.h0.dim


def _unit_vec(n, k):
    return tuple(ONE if i == k else ZERO for i in range(n))


def is_isotropic(L: Submodule) -> bool:
    """The form vanishes on all spanning pairs."""
    for i in range(L.dim):
        for j in range(i, L.dim):
            if not vec_is_zero(_form(L.ambient, L.vectors[i], L.vectors[j])):
                return False
    return True


def orthogonal(L: Submodule) -> QMatrix:
    """L-perp = {e : (e, l) = 0 in H_0 for every l in L}."""
    amb = L.ambient
    n = _ambient_dim(amb)
    h0d = _h0_dim(amb)
    # form of the ambient basis against each spanning vector, stacked over
    # the H0 coordinates
    rows = []
    for l in L.vectors:
        cols = [_form(amb, _unit_vec(n, k), l) for k in range(n)]
        for h in range(h0d):
            rows.append([cols[k][h] for k in range(n)])
    if not rows:
        return QMatrix.identity(n)
    return nullspace(QMatrix(rows, cols=n))


def is_maximally_isotropic(L: Submodule) -> bool:
    """L isotropic and equal to its orthogonal."""
    if not is_isotropic(L):
        return False
    perp = orthogonal(L)
    return rank(perp) == L.dim and span_contains(L.vectors, perp)


def is_bracket_closed(L: Submodule):
    """Returns (closed, counterexample); the counterexample names the pair of
    spanning indices and the offending bracket value."""
    for i in range(L.dim):
        for j in range(L.dim):
            b = _bracket(L.ambient, L.vectors[i], L.vectors[j])
            if not in_row_span(b, L.vectors):
                return False, (i, j, b)
    return True, None


def is_z_stable(L: Submodule) -> bool:
    for z in _center_basis(L.ambient):
        for l in L.vectors:
            if not in_row_span(_z_scale(L.ambient, z, l), L.vectors):
                return False
    return True


@dataclass(frozen=True)
class DiracVerdict:
    isotropic: bool
    maximal: bool
    closed: bool
    dirac: bool
    z_stable: bool
    pre_quotient: bool
    counterexample: Optional[tuple]

    def to_json(self) -> dict:
        from .exactlin import rat_str
        ce = None
        if self.counterexample is not None:
            i, j, b = self.counterexample
            ce = {"pair": [i, j], "bracket": [rat_str(x) for x in b]}
        return {"isotropic": self.isotropic, "maximal": self.maximal,
                "closed": self.closed, "dirac": self.dirac,
                "z_stable": self.z_stable, "pre_quotient": self.pre_quotient,
                "counterexample": ce}


def is_dirac(L: Submodule) -> DiracVerdict:
    """Full verdict; requires a nondegenerate ambient (the quotient) with
    epsilon(A) != 0."""
    if not L.on_quotient:
        raise DiracError("Dirac verdicts require the nondegenerate quotient; "
                         "use is_maximally_isotropic for the pre-quotient view")
    if _ambient_dim(L.ambient) == 0:
        raise DiracError("the quotient is zero: Dirac structures undefined")
    iso = is_isotropic(L)
    maximal = is_maximally_isotropic(L) if iso else False
    closed, ce = is_bracket_closed(L)
    return DiracVerdict(iso, maximal, closed, maximal and closed,
                        is_z_stable(L), False, ce)


# ---------------------------------------------------------------------------
# biderivation bracket tables

@dataclass(frozen=True)
class BracketTable:
    """Values {e_i, e_j} of a bilinear biderivation on a commutative algebra."""
    algebra: FiniteAlgebra
    table: tuple  # table[i][j]: coords of {e_i, e_j}

    def __post_init__(self):
        A = self.algebra
        if not A.is_commutative():
            raise DiracError("bracket tables require a commutative algebra")
        d = A.dim
        if len(self.table) != d or any(len(r) != d for r in self.table) or \
                any(len(self.table[i][j]) != d
                    for i in range(d) for j in range(d)):
            raise DiracError("bracket table has wrong shape")
        _check_biderivation(A, self.table)

    def eval(self, a: Sequence, b: Sequence) -> tuple:
        d = self.algebra.dim
        out = [ZERO] * d
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    c = ai * bj
                    for k, t in enumerate(self.table[i][j]):
                        if t:
                            out[k] += c * t
        return tuple(out)


def _check_biderivation(A: FiniteAlgebra, table) -> None:
    d = A.dim
    for i in range(d):
        for j in range(d):
            for k in range(d):
                # {e_i, e_j e_k} = {e_i, e_j} e_k + e_j {e_i, e_k}
                lhs = [ZERO] * d
                for s, c in enumerate(A.structure[j][k]):
                    if c:
                        for m, t in enumerate(table[i][s]):
                            if t:
                                lhs[m] += c * t
                rhs = tuple(p + q for p, q in
                            zip(A.mul(table[i][j], A.basis_vector(k)),
                                A.mul(A.basis_vector(j), table[i][k])))
                if tuple(lhs) != rhs:
                    raise DiracError(
                        f"second-slot biderivation law fails at ({i},{j},{k})")
                # {e_j e_k, e_i} = {e_j, e_i} e_k + e_j {e_k, e_i}
                lhs = [ZERO] * d
                for s, c in enumerate(A.structure[j][k]):
                    if c:
                        for m, t in enumerate(table[s][i]):
                            if t:
                                lhs[m] += c * t
                rhs = tuple(p + q for p, q in
                            zip(A.mul(table[j][i], A.basis_vector(k)),
                                A.mul(A.basis_vector(j), table[k][i])))
                if tuple(lhs) != rhs:
                    raise DiracError(
                        f"first-slot biderivation law fails at ({i},{j},{k})")


def make_bracket_table(A: FiniteAlgebra, table) -> BracketTable:
    d = A.dim
    t = tuple(tuple(vec(table[i][j]) for j in range(d)) for i in range(d))
    return BracketTable(A, t)


def biderivation_space(A: FiniteAlgebra) -> QMatrix:
    """Basis of all biderivation tables, flattened as (i, j, k) -> t[i][j][k].

    Used to draw random biderivations without rejection sampling.
    """
    if not A.is_commutative():
        raise DiracError("biderivation space requires a commutative algebra")
    d = A.dim

    def pos(i, j, k):
        return (i * d + j) * d + k

    rows = []
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for m in range(d):
                    # second slot law, coordinate m
                    row = [ZERO] * (d ** 3)
                    for s, c in enumerate(A.structure[j][k]):
                        if c:
                            row[pos(i, s, m)] += c
                    for s in range(d):
                        ek = A.structure[s][k][m]
                        if ek:
                            row[pos(i, j, s)] -= ek
                        ej = A.structure[j][s][m]
                        if ej:
                            row[pos(i, k, s)] -= ej
                    rows.append(row)
                    # first slot law, coordinate m
                    row = [ZERO] * (d ** 3)
                    for s, c in enumerate(A.structure[j][k]):
                        if c:
                            row[pos(s, i, m)] += c
                    for s in range(d):
                        ek = A.structure[s][k][m]
                        if ek:
                            row[pos(j, i, s)] -= ek
                        ej = A.structure[j][s][m]
                        if ej:
                            row[pos(k, i, s)] -= ej
                    rows.append(row)
    return nullspace(QMatrix(rows, cols=d ** 3))


def table_from_flat(A: FiniteAlgebra, flat: Sequence) -> BracketTable:
    d = A.dim
    flat = vec(flat)
    t = tuple(tuple(flat[(i * d + j) * d:(i * d + j) * d + d]
                    for j in range(d)) for i in range(d))
    return BracketTable(A, t)


def is_poisson(t: BracketTable) -> bool:
    """Brute-force oracle: skew-symmetry and the Jacobi identity on all basis
    pairs and triples."""
    A = t.algebra
    d = A.dim
    for i in range(d):
        for j in range(i, d):
            if tuple(-x for x in t.table[i][j]) != t.table[j][i]:
                return False
    for i in range(d):
        for j in range(d):
            for k in range(d):
                s = [ZERO] * d
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = t.table[a][b]
                    for m, x in enumerate(inner):
                        if x:
                            for q, y in enumerate(t.table[m][c]):
                                if y:
                                    s[q] += x * y
                if not vec_is_zero(s):
                    return False
    return True


# ---------------------------------------------------------------------------
# Poisson graphs

def hamiltonian_map(E: ESpace, t: BracketTable):
    """The map sending the class of a (x) b to the derivation a {b, .},
    realized on chain representatives; returns a function on degree-1 chain
    coordinates.  Well-definedness (vanishing on the boundaries) is asserted.
    """
    A = E.algebra
    if t.algebra is not A:
        raise DiracError("bracket table over a different algebra")
    d = A.dim

    def on_chain(coords: Sequence) -> Cochain1:
        rows = [[ZERO] * d for _ in range(d)]
        for idx, c in enumerate(coords):
            if not c:
                continue
            i, j = divmod(idx, d)
            ei = A.basis_vector(i)
            for k in range(d):
                prod = A.mul(ei, t.table[j][k])
                for m, p in enumerate(prod):
                    if p:
                        rows[k][m] += c * p
        return Cochain1(A, tuple(tuple(r) for r in rows))

    for b in E.h1.boundary_basis:
        if not on_chain(b).is_zero():
            raise DiracError("hamiltonian map does not vanish on boundaries")
    return on_chain


def poisson_graph(E: ESpace, eps: EpsilonSpace, t: BracketTable):
    """The graph of the hamiltonian map over the H_1 class basis, in E(A),
    together with its projection to the quotient."""
    A = E.algebra
    if not A.is_commutative():
        raise DiracError("Poisson graphs require a commutative algebra")
    pi = hamiltonian_map(E, t)
    rows = []
    for k in range(E.h1.dim):
        X = pi(E.h1.class_reps[k])
        xclass = E.class_of_derivation(X)
        rows.append(xclass + _unit_vec(E.h1.dim, k))
    L_E = Submodule(E, QMatrix(rows, cols=E.dim))
    proj = [eps.reduce(r) for r in L_E.vectors] or []
    L_eps = Submodule(eps, QMatrix(proj, cols=eps.dim))
    return L_E, L_eps


# ---------------------------------------------------------------------------
# closed 2-forms

@dataclass(frozen=True)
class TwoFormClass:
    espace: ESpace
    h2: HomologyPresentation
    coords: tuple  # H_2 class coordinates

    def rep(self) -> Chain:
        return self.h2.class_to_chain(self.coords)


def _two_form_conditions(E: ESpace, h2: HomologyPresentation,
                         h3: HomologyPresentation, coords) -> bool:
    rep = h2.class_to_chain(vec(coords))
    if not vec_is_zero(h3.reduce_chain(connes_B(rep))):
        return False
    for i in range(E.h1co.dim):
        X = E._derivation_rep(i)
        for j in range(i, E.h1co.dim):
            Y = E._derivation_rep(j)
            iY = interior_product(Y, rep, checked=False)
            iX = interior_product(X, rep, checked=False)
            s = (interior_product(X, iY, checked=False)
                 + interior_product(Y, iX, checked=False))
            if not vec_is_zero(E.h0.reduce(s.coords)):
                return False
    return True


def two_form(E: ESpace, coords: Sequence, *, h2=None, h3=None,
             max_dim: Optional[int] = None) -> TwoFormClass:
    """Validated closed alternating 2-form class; raises DiracError if the
    closedness or alternation condition fails."""
    h2 = h2 or homology(E.algebra, 2, max_dim=max_dim)
    h3 = h3 or homology(E.algebra, 3, max_dim=max_dim)
    coords = vec(coords)
    if len(coords) != h2.dim:
        raise DiracError("2-form coordinate length mismatch")
    if not _two_form_conditions(E, h2, h3, coords):
        raise DiracError("2-form is not closed and alternating")
    return TwoFormClass(E, h2, coords)


def two_form_graph(eps: EpsilonSpace, omega: TwoFormClass):
    """The graph {(X, i_X omega)} over the H^1 class basis, projected to the
    quotient, with its Dirac verdict attached."""
    E = omega.espace
    if _ambient_dim(eps) == 0:
        raise DiracError("the quotient is zero: Dirac structures undefined")
    rep = omega.rep()
    rows = []
    for k in range(E.h1co.dim):
        X = E._derivation_rep(k)
        ix = interior_product(X, rep, checked=False)
        rows.append(_unit_vec(E.h1co.dim, k) + E.h1.reduce_chain(ix))
    L_E = Submodule(E, QMatrix(rows, cols=E.dim))
    proj = [eps.reduce(r) for r in L_E.vectors]
    L = Submodule(eps, QMatrix(proj, cols=eps.dim))
    return L, is_dirac(L)


def find_two_form_witness(E: ESpace, *, rng=None, random_tries: int = 50,
                          grid_limit: int = 7,
                          max_dim: Optional[int] = None):
    """Bounded search for a nonzero closed alternating 2-form class.

    Exhausts the grid {-1, 0, 1} on the H_2 class coordinates when the class
    space is small, then draws random rational coordinates.  Returns
    ``(witness_or_None, h2)``; absence is a recorded outcome, not an error.
    """
    h2 = homology(E.algebra, 2, max_dim=max_dim)
    h3 = homology(E.algebra, 3, max_dim=max_dim)
    m = h2.dim
    if m == 0:
        return None, h2
    if m <= grid_limit:
        for combo in itertools.product((-1, 0, 1), repeat=m):
            if all(c == 0 for c in combo):
                continue
            coords = vec(combo)
            if _two_form_conditions(E, h2, h3, coords):
                return TwoFormClass(E, h2, coords), h2
    if rng is not None:
        for _ in range(random_tries):
            coords = vec([rng.randint(-5, 5) for _ in range(m)])
            if vec_is_zero(coords):
                continue
            if _two_form_conditions(E, h2, h3, coords):
                return TwoFormClass(E, h2, coords), h2
    return None, h2


# ---------------------------------------------------------------------------
# the Lie-algebroid consequences of a Dirac structure

@dataclass(frozen=True)
class LieAlgebroidReport:
    anchor_bracket_ok: bool
    leibniz_rule_ok: bool
    skew_ok: bool
    jacobi_ok: bool

    @property
    def ok(self):
        return (self.anchor_bracket_ok and self.leibniz_rule_ok
                and self.skew_ok and self.jacobi_ok)

    def to_json(self):
        return {"anchor_bracket": self.anchor_bracket_ok,
                "leibniz_rule": self.leibniz_rule_ok,
                "skew": self.skew_ok, "jacobi": self.jacobi_ok,
                "ok": self.ok}


def lie_algebroid_check(eps: EpsilonSpace, L: Submodule, *,
                        rng=None, z_samples: int = 5) -> LieAlgebroidReport:
    """For a Dirac structure L: the anchor intertwines brackets, the central
    Leibniz rule holds on the preimage in E(A), and the restricted bracket is
    a Lie bracket."""
    if L.ambient is not eps:
        raise DiracError("submodule is not over the given quotient")
    verdict = is_dirac(L)
    if not verdict.dirac:
        raise DiracError("lie_algebroid_check requires a Dirac structure")
    E = eps.espace
    cb = E.center_basis
    cdim = cb.rows

    def sigma(u):
        """Matrix of the anchor of u on the center (rows: images of the
        center basis in center coordinates)."""
        x = eps.lift(u).x
        rows = []
        for z in cb:
            img = E.center_action(x, z)
            rows.append(list(membership(img, cb)))
        return rows

    def mat_sub(P, R):
        return [[a - b for a, b in zip(p, r)] for p, r in zip(P, R)]

    def mat_mul(P, R):
        n = len(P)
        return [[sum((P[i][k] * R[k][j] for k in range(n)), ZERO)
                 for j in range(n)] for i in range(n)]

    anchor_ok = True
    skew_ok = True
    for i in range(L.dim):
        si = sigma(L.vectors[i])
        for j in range(L.dim):
            br = eps.bracket(L.vectors[i], L.vectors[j])
            sj = sigma(L.vectors[j])
            # rows are images of the center basis, so composition reverses
            comm = mat_sub(mat_mul(sj, si), mat_mul(si, sj))
            if sigma(br) != comm:
                anchor_ok = False
            rb = eps.bracket(L.vectors[j], L.vectors[i])
            if not vec_is_zero(tuple(a + b for a, b in zip(br, rb))):
                skew_ok = False

    leibniz_ok = True
    draws = []
    for k in range(cdim):
        draws.append(cb[k])
    if rng is not None:
        for _ in range(z_samples):
            coeffs = [rng.randint(-3, 3) for _ in range(cdim)]
            z = [ZERO] * cb.cols
            for c, row in zip(coeffs, cb):
                for m, x in enumerate(row):
                    z[m] += Q(c) * x
            draws.append(tuple(z))
    for z in draws:
        for i in range(L.dim):
            xz = E.center_action(eps.lift(L.vectors[i]).x, z)
            for j in range(L.dim):
                lhs = eps.bracket(L.vectors[i],
                                  eps.z_scale(z, L.vectors[j]))
                rhs = tuple(a + b for a, b in zip(
                    eps.z_scale(z, eps.bracket(L.vectors[i], L.vectors[j])),
                    eps.z_scale(xz, L.vectors[j])))
                if lhs != rhs:
                    leibniz_ok = False

    jacobi_ok = True
    for i in range(L.dim):
        for j in range(L.dim):
            for k in range(L.dim):
                a = eps.bracket(L.vectors[i],
                                eps.bracket(L.vectors[j], L.vectors[k]))
                b = eps.bracket(eps.bracket(L.vectors[i], L.vectors[j]),
                                L.vectors[k])
                c = eps.bracket(L.vectors[j],
                                eps.bracket(L.vectors[i], L.vectors[k]))
                if a != tuple(p + q for p, q in zip(b, c)):
                    jacobi_ok = False
    return LieAlgebroidReport(anchor_ok, leibniz_ok, skew_ok, jacobi_ok)
