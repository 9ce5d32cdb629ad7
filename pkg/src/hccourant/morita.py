"""Transport between an algebra and its matrix algebra.

The chain-level maps are the entrywise extension of a derivation and the
corner embedding a_0 (x) ... (x) a_n -> E11(a_0) (x) ... (x) E11(a_n).  The
module verifies, exactly, that they induce bracket- and form-preserving
bijections E(A) -> E(M_r(A)) and epsilon(A) -> epsilon(M_r(A)), and
transports Dirac structures along the induced isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import FiniteAlgebra, matrix_algebra, opposite_algebra
from .courant import EpsilonSpace, ESpace
from .dirac import DiracVerdict, Submodule, is_dirac
from .exactlin import (Q, ZERO, ONE, QMatrix, in_row_span, make_reducer,
                       membership, rank, vec, vec_is_zero)
from .hochschild import (Chain, Cochain1, boundary_b, chain_space_dim,
                         connes_B, elementary_chain, encode_index,
                         decode_index, interior_product)


class MoritaError(ValueError):
    pass


def cotr(X: Cochain1, M: FiniteAlgebra, r: int) -> Cochain1:
    """Entrywise application of a derivation of A on M_r(A)."""
    A = X.algebra
    d = A.dim
    D = r * r * d
    rows = []
    for b in range(D):
        pq, i = divmod(b, d)
        img = [ZERO] * D
        for k, x in enumerate(X.rows[i]):
            if x:
                img[pq * d + k] = x
        rows.append(tuple(img))
    return Cochain1(M, tuple(rows))


def inc(c: Chain, M: FiniteAlgebra, r: int) -> Chain:
    """Corner embedding of chains: every slot lands in the (1,1) corner."""
    A = c.algebra
    d = A.dim
    n = c.degree
    out = [ZERO] * chain_space_dim(M, n)
    for idx, x in enumerate(c.coords):
        if not x:
            continue
        a = decode_index(A, idx, n)
        out[encode_index(M, tuple(i for i in a))] += x
    return Chain(M, n, tuple(out))


# note: with the basis order E_pq(e_i) at index (p r + q) d + i, the (1,1)
# corner E11(e_i) sits at index i, so the corner embedding is index-preserving


@dataclass(frozen=True)
class MoritaMaps:
    source: ESpace
    target: ESpace
    r: int
    h1co_map: QMatrix   # H^1(A) class basis -> H^1(M_r) class coords
    h1_map: QMatrix     # H_1(A) class basis -> H_1(M_r) class coords
    h0_map: QMatrix     # H_0(A) class basis -> H_0(M_r) class coords
    h0_inv: QMatrix     # the computed inverse of h0_map

    def map_e_vec(self, v) -> tuple:
        """E(A) class coordinates -> E(M_r(A)) class coordinates."""
        src, tgt = self.source, self.target
        v = vec(v)
        x, a = v[:src.h1co.dim], v[src.h1co.dim:]
        out = [ZERO] * tgt.dim
        for c, row in zip(x, self.h1co_map):
            if c:
                for k, y in enumerate(row):
                    if y:
                        out[k] += c * y
        off = tgt.h1co.dim
        for c, row in zip(a, self.h1_map):
            if c:
                for k, y in enumerate(row):
                    if y:
                        out[off + k] += c * y
        return tuple(out)

    def map_h0(self, h) -> tuple:
        out = [ZERO] * self.target.h0.dim
        for c, row in zip(vec(h), self.h0_map):
            if c:
                for k, y in enumerate(row):
                    if y:
                        out[k] += c * y
        return tuple(out)


def build_morita_maps(src: ESpace, tgt: ESpace, r: int) -> MoritaMaps:
    A = src.algebra
    M = tgt.algebra
    h1co_rows = []
    for k in range(src.h1co.dim):
        TX = cotr(src._derivation_rep(k), M, r)
        h1co_rows.append(tgt.class_of_derivation(TX))
    h1_rows = []
    for k in range(src.h1.dim):
        ia = inc(src.h1.rep_chain(k), M, r)
        if not boundary_b(ia).is_zero():
            raise MoritaError("corner embedding broke a cycle")
        h1_rows.append(tgt.class_of_chain(ia))
    h0_rows = []
    for k in range(src.h0.dim):
        ia = inc(src.h0.class_to_chain(
            tuple(ONE if i == k else ZERO for i in range(src.h0.dim))), M, r)
        h0_rows.append(tgt.h0.reduce_chain(ia))
    h0_map = QMatrix(h0_rows, cols=tgt.h0.dim)
    if rank(h0_map) != src.h0.dim or src.h0.dim != tgt.h0.dim:
        raise MoritaError("corner embedding does not identify H_0")
    h0_inv = QMatrix(
        [membership(tuple(ONE if i == k else ZERO
                          for i in range(tgt.h0.dim)), h0_map)
         for k in range(tgt.h0.dim)], cols=src.h0.dim)
    return MoritaMaps(src, tgt, r,
                      QMatrix(h1co_rows, cols=tgt.h1co.dim),
                      QMatrix(h1_rows, cols=tgt.h1.dim),
                      h0_map, h0_inv)


@dataclass(frozen=True)
class MoritaReport:
    algebra: str
    r: int
    h1co_bijective: bool
    h1_bijective: bool
    h0_bijective: bool
    pairing_preserved: bool
    bracket_preserved: bool
    homotopy_identity: bool
    quotient_dims_match: bool
    quotient_bracket_preserved: bool
    quotient_form_preserved: bool

    @property
    def ok(self):
        return all((self.h1co_bijective, self.h1_bijective,
                    self.h0_bijective, self.pairing_preserved,
                    self.bracket_preserved, self.homotopy_identity,
                    self.quotient_dims_match,
                    self.quotient_bracket_preserved,
                    self.quotient_form_preserved))

    def to_json(self):
        return {"algebra": self.algebra, "r": self.r,
                "h1_cohomology_bijective": self.h1co_bijective,
                "h1_homology_bijective": self.h1_bijective,
                "h0_bijective": self.h0_bijective,
                "pairing_preserved": self.pairing_preserved,
                "bracket_preserved": self.bracket_preserved,
                "homotopy_identity": self.homotopy_identity,
                "quotient_dims_match": self.quotient_dims_match,
                "quotient_bracket_preserved": self.quotient_bracket_preserved,
                "quotient_form_preserved": self.quotient_form_preserved,
                "ok": self.ok}


@dataclass(frozen=True)
class MoritaContext:
    maps: MoritaMaps
    src_eps: EpsilonSpace
    tgt_eps: EpsilonSpace
    report: MoritaReport

    def map_eps(self, u) -> tuple:
        lifted = self.src_eps.lift(u).to_vec()
        return self.tgt_eps.reduce(self.maps.map_e_vec(lifted))


def _check_homotopy_identity(A: FiniteAlgebra, M: FiniteAlgebra,
                             r: int) -> bool:
    """(1_M - E11(1)) (x) E11(a) = -b{(1_M - E11(1)) (x) E11(a) (x) E11(1)}
    as an exact chain identity, for every basis a."""
    d = A.dim
    D = M.dim
    u = list(M.unit)
    for k, c in enumerate(A.unit):  # subtract E11(1)
        u[k] -= c
    e11_1 = [ZERO] * D
    for k, c in enumerate(A.unit):
        e11_1[k] = c
    for i in range(d):
        # expected: u (x) E11(e_i)
        expected = [ZERO] * (D * D)
        for k, x in enumerate(u):
            if x:
                expected[k * D + i] = x
        # chain u (x) E11(e_i) (x) E11(1)
        coords = [ZERO] * (D ** 3)
        for k, x in enumerate(u):
            if not x:
                continue
            for m, y in enumerate(e11_1):
                if y:
                    coords[(k * D + i) * D + m] = x * y
        img = boundary_b(Chain(M, 2, tuple(coords)))
        if tuple(-x for x in img.coords) != tuple(expected):
            return False
    return True


def verify_morita(A: FiniteAlgebra, r: int = 2, *,
                  max_dim: Optional[int] = None,
                  src: Optional[ESpace] = None) -> MoritaContext:
    """Build E and epsilon on both sides and verify the transport exactly."""
    M = matrix_algebra(A, r)
    src = src or ESpace(A, max_dim=max_dim)
    tgt = ESpace(M, max_dim=max_dim if max_dim is not None else M.dim)
    maps = build_morita_maps(src, tgt, r)

    h1co_bij = (rank(maps.h1co_map) == src.h1co.dim
                and src.h1co.dim == tgt.h1co.dim)
    h1_bij = (rank(maps.h1_map) == src.h1.dim and src.h1.dim == tgt.h1.dim)
    h0_bij = True  # enforced in build_morita_maps

    # pairing: <T(X), I(alpha)> = phi(<X, alpha>) on class bases
    pairing_ok = True
    for i in range(src.h1co.dim):
        xi = tuple(ONE if k == i else ZERO for k in range(src.h1co.dim))
        for j in range(src.h1.dim):
            aj = tuple(ONE if k == j else ZERO for k in range(src.h1.dim))
            lhs = tgt.pairing_classes(maps.h1co_map[i], maps.h1_map[j])
            rhs = maps.map_h0(src.pairing_classes(xi, aj))
            if lhs != rhs:
                pairing_ok = False

    # bracket: (T (+) I) [[u, v]] = [[(T (+) I) u, (T (+) I) v]]
    bracket_ok = True
    for i in range(src.dim):
        u = src.basis_element(i)
        for j in range(src.dim):
            v = src.basis_element(j)
            lhs = maps.map_e_vec(src.courant_bracket(u, v).to_vec())
            rhs = tgt.courant_bracket(
                tgt.from_vec(maps.map_e_vec(u.to_vec())),
                tgt.from_vec(maps.map_e_vec(v.to_vec()))).to_vec()
            if lhs != rhs:
                bracket_ok = False

    homotopy_ok = _check_homotopy_identity(A, M, r)

    src_eps = EpsilonSpace(src)
    tgt_eps = EpsilonSpace(tgt)
    dims_ok = src_eps.dim == tgt_eps.dim

    # induced map on the quotients and its bracket/form preservation
    qb_ok = True
    qf_ok = True
    if dims_ok:
        def qmap(u):
            return tgt_eps.reduce(maps.map_e_vec(src_eps.lift(u).to_vec()))
        basis = [src_eps.basis_coords(k) for k in range(src_eps.dim)]
        images = QMatrix([qmap(b) for b in basis] or [],
                         cols=tgt_eps.dim)
        if rank(images) != src_eps.dim:
            qb_ok = qf_ok = False
        else:
            for i, u in enumerate(basis):
                for j, v in enumerate(basis):
                    lhs = qmap(src_eps.bracket(u, v))
                    rhs = tgt_eps.bracket(images[i], images[j])
                    if lhs != rhs:
                        qb_ok = False
                    if maps.map_h0(src_eps.form(u, v)) != \
                            tgt_eps.form(images[i], images[j]):
                        qf_ok = False
    else:
        qb_ok = qf_ok = False

    report = MoritaReport(A.name, r, h1co_bij, h1_bij, h0_bij, pairing_ok,
                          bracket_ok, homotopy_ok, dims_ok, qb_ok, qf_ok)
    return MoritaContext(maps, src_eps, tgt_eps, report)


def transport_dirac(ctx: MoritaContext, L: Submodule) -> tuple:
    """Image of a Dirac structure under the induced isomorphism, re-verified
    on the target; returns (submodule, verdict)."""
    if not ctx.report.ok:
        raise MoritaError("transport requires a verified Morita context")
    if L.ambient is not ctx.src_eps:
        raise MoritaError("submodule is not over the source quotient")
    rows = [ctx.map_eps(v) for v in L.vectors]
    out = Submodule(ctx.tgt_eps, QMatrix(rows, cols=ctx.tgt_eps.dim))
    verdict = is_dirac(out)
    return out, verdict


# ---------------------------------------------------------------------------
# the opposite-algebra isomorphism

@dataclass(frozen=True)
class OppositeReport:
    algebra: str
    h_dims_match: bool
    presentations_coincide: bool
    bracket_tables_match: bool
    form_tables_match: bool

    @property
    def ok(self):
        return (self.h_dims_match and self.presentations_coincide
                and self.bracket_tables_match and self.form_tables_match)

    def to_json(self):
        return {"algebra": self.algebra,
                "h_dims_match": self.h_dims_match,
                "presentations_coincide": self.presentations_coincide,
                "bracket_tables_match": self.bracket_tables_match,
                "form_tables_match": self.form_tables_match, "ok": self.ok}


def verify_opposite(A: FiniteAlgebra, *,
                    max_dim: Optional[int] = None) -> OppositeReport:
    """E(A) vs E(A^op) under the identity on chains.

    Degree-1 cycle and boundary spaces, derivations and inner derivations all
    literally coincide for the opposite product, so both sides share their
    canonical presentations; the bracket and form tables are then compared
    entry by entry.
    """
    E = ESpace(A, max_dim=max_dim)
    Eop = ESpace(opposite_algebra(A), max_dim=max_dim)
    dims = (E.h1co.dim == Eop.h1co.dim and E.h1.dim == Eop.h1.dim
            and E.h0.dim == Eop.h0.dim)
    same_pres = (E.h1co.class_reps == Eop.h1co.class_reps
                 and E.h1.class_reps == Eop.h1.class_reps
                 and E.h0.class_reps == Eop.h0.class_reps)
    brackets = True
    forms = True
    if dims and same_pres:
        for i in range(E.dim):
            u, uo = E.basis_element(i), Eop.basis_element(i)
            for j in range(E.dim):
                v, vo = E.basis_element(j), Eop.basis_element(j)
                if E.courant_bracket(u, v).to_vec() != \
                        Eop.courant_bracket(uo, vo).to_vec():
                    brackets = False
                if E.bilinear_form(u, v) != Eop.bilinear_form(uo, vo):
                    forms = False
    else:
        brackets = forms = dims and same_pres
    return OppositeReport(A.name, dims, same_pres, brackets, forms)
