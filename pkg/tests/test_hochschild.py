"""Chain-level operator identities, verified exactly.

Covered here: b^2 = 0; the degree-1 coboundary defect; homology dimensions
frozen from independent hand computations; the Cartan identities
L_[X,Y] = [L_X, L_Y] and i_[X,Y] = L_X i_Y - i_Y L_X; the homotopy
h b - b h = (-1)^(n+1) i_[a',.]; L_X = B i_X + i_X B on degree-1 homology;
and the product rule for the degree-raising map on commutative algebras.
"""

import pytest

from hccourant.algebra import build_v1, ground_field, truncated_poly
from hccourant.exactlin import Q, in_row_span, vec
from hccourant.hochschild import (Chain, Cochain1, boundary_b,
                                  coboundary_beta, cohomology_h1, commutator,
                                  connes_B, derivation_basis, elementary_chain,
                                  h_left_multiply, homology, inner_derivation,
                                  inner_derivation_basis, interior_product,
                                  is_derivation, lie_derivative, pairing,
                                  verify_descent)
from conftest import rand_chain, rand_derivation, rand_vec, rng_for

SMALL = ("q", "qx2", "qx3", "v1_1", "v1_2", "ut2")


@pytest.mark.parametrize("name", SMALL + ("v1_3", "m2q"))
@pytest.mark.parametrize("degree", (1, 2))
def test_b_squared_zero(algebras, name, degree):
    A = algebras[name]
    rng = rng_for(f"bb/{name}/{degree}")
    for _ in range(5):
        c = rand_chain(rng, A, degree + 1)
        assert boundary_b(boundary_b(c)).is_zero()


def test_boundary_on_elementary_chain():
    A = truncated_poly(2)
    # b(x (x) x) = x*x - x*x = 0; b(1 (x) x) = x - x = 0
    assert boundary_b(elementary_chain(A, (1, 1))).is_zero()
    assert boundary_b(elementary_chain(A, (0, 1))).is_zero()
    # b(x (x) x (x) x) at degree 2: x^2 (x) x - x (x) x^2 + x^2 (x) x = 0
    assert boundary_b(elementary_chain(A, (1, 1, 1))).is_zero()


# frozen dimensions, computed independently by hand:
# H_*(Q[x]/(x^2)) has dim 1 in every degree >= 1 over Q; H_0 = A.
# V[1]: H_0 = A (commutative), H_1 dims from the Kahler module.
EXPECTED_H = {
    ("q", 0): 1, ("q", 1): 0, ("q", 2): 0,
    ("qx2", 0): 2, ("qx2", 1): 1, ("qx2", 2): 1,
    ("qx3", 0): 3, ("qx3", 1): 2, ("qx3", 2): 2,
    ("v1_1", 0): 2, ("v1_1", 1): 1,
    ("v1_2", 0): 3, ("v1_2", 1): 3,
    ("v1_3", 0): 4, ("v1_3", 1): 6,
    ("m2q", 0): 1, ("m2q", 1): 0,
    ("ut2", 0): 2, ("ut2", 1): 0,
}


@pytest.mark.parametrize("key", sorted(EXPECTED_H))
def test_homology_dimensions(algebras, key):
    name, degree = key
    assert homology(algebras[name], degree).dim == EXPECTED_H[key]


EXPECTED_H1_COHOM = {"q": 0, "qx2": 1, "qx3": 2, "v1_1": 1, "v1_2": 4,
                     "v1_3": 9, "m2q": 0, "ut2": 0}


@pytest.mark.parametrize("name", sorted(EXPECTED_H1_COHOM))
def test_cohomology_dimensions(algebras, name):
    assert cohomology_h1(algebras[name]).dim == EXPECTED_H1_COHOM[name]


def test_derivation_detection():
    A = truncated_poly(3)
    # d/dx: 1 -> 0, x -> 1, x^2 -> 2x is NOT a derivation of Q[x]/(x^3)?
    # It is: d(x*x^2) = d(0) = 0 and x d(x^2) + x^2 d(x) = 2x^2*x + x^2 = x^2?
    # No: x*(2x) + x^2*1 = 3x^2 != 0 in degree 3... but x*x^2 = 0 so the rule
    # needs 3x^2 = 0 -- false.  So d/dx is not a derivation here; x d/dx is.
    ddx = Cochain1(A, ((0, 0, 0), (1, 0, 0), (0, 2, 0)))
    assert not is_derivation(ddx)
    xddx = Cochain1(A, ((0, 0, 0), (0, 1, 0), (0, 0, 2)))
    assert is_derivation(xddx)
    assert not any(any(r) for r in coboundary_beta(xddx))


def test_inner_derivations_of_commutative_vanish():
    A = truncated_poly(3)
    assert inner_derivation_basis(A).rows == 0
    x = A.basis_vector(1)
    assert all(not any(r) for r in inner_derivation(A, x).rows)


@pytest.mark.parametrize("name", SMALL)
def test_cartan_identities(algebras, name):
    A = algebras[name]
    dbasis = derivation_basis(A)
    rng = rng_for(f"cartan/{name}")
    for _ in range(8):
        X = rand_derivation(rng, A, dbasis)
        Y = rand_derivation(rng, A, dbasis)
        XY = commutator(X, Y)
        for n in (1, 2):
            c = rand_chain(rng, A, n)
            lhs = lie_derivative(XY, c, checked=False)
            rhs = lie_derivative(X, lie_derivative(Y, c, checked=False),
                                 checked=False) - \
                lie_derivative(Y, lie_derivative(X, c, checked=False),
                               checked=False)
            assert lhs.coords == rhs.coords
            lhs = interior_product(XY, c, checked=False)
            rhs = lie_derivative(
                X, interior_product(Y, c, checked=False), checked=False) - \
                interior_product(Y, lie_derivative(X, c, checked=False),
                                 checked=False)
            assert lhs.coords == rhs.coords


@pytest.mark.parametrize("name", SMALL)
def test_homotopy_identity(algebras, name):
    A = algebras[name]
    rng = rng_for(f"homotopy/{name}")
    for _ in range(8):
        aprime = rand_vec(rng, A.dim)
        inner = inner_derivation(A, aprime)
        for n in (1, 2):
            c = rand_chain(rng, A, n)
            lhs = h_left_multiply(aprime, boundary_b(c)) - \
                boundary_b(h_left_multiply(aprime, c))
            # with the (-1)^(n+1) sign folded into the interior product,
            # the homotopy identity reads h b - b h = i_[., a']
            rhs = interior_product(inner, c, checked=False)
            assert lhs.coords == tuple(-x for x in rhs.coords)


@pytest.mark.parametrize("name", SMALL)
def test_lie_derivative_is_homotopic_to_b_ix_plus_ix_b(algebras, name):
    A = algebras[name]
    h1 = homology(A, 1)
    dbasis = derivation_basis(A)
    rng = rng_for(f"lem-lx/{name}")
    for _ in range(8):
        X = rand_derivation(rng, A, dbasis)
        for k in range(h1.dim):
            a = h1.rep_chain(k)
            lhs = lie_derivative(X, a, checked=False)
            rhs = connes_B(interior_product(X, a, checked=False)) + \
                interior_product(X, connes_B(a), checked=False)
            diff = lhs - rhs
            assert in_row_span(diff.coords, h1.boundary_basis)


def test_connes_B_of_degree0_is_cycle():
    A = truncated_poly(3)
    rng = rng_for("connesB")
    for _ in range(10):
        a = Chain(A, 0, rand_vec(rng, A.dim))
        assert boundary_b(connes_B(a)).is_zero()


def test_kahler_product_rule():
    """class(B(a a')) = class(a.B(a') + a'.B(a)) in degree-1 homology, for
    commutative algebras: the product rule of the universal derivative."""
    for A in (truncated_poly(3), build_v1(2)):
        h1 = homology(A, 1)
        rng = rng_for(f"kahler/{A.name}")
        for _ in range(10):
            a = rand_vec(rng, A.dim)
            ap = rand_vec(rng, A.dim)
            prod = connes_B(Chain(A, 0, A.mul(a, ap)))
            # multiply a 1-chain by an algebra element on the left slot
            def lmul(z, c):
                out = [Q(0)] * A.dim ** 2
                for idx, x in enumerate(c.coords):
                    if x:
                        i0, i1 = divmod(idx, A.dim)
                        za = A.mul(z, A.basis_vector(i0))
                        for k, y in enumerate(za):
                            if y:
                                out[k * A.dim + i1] += x * y
                return Chain(A, 1, tuple(out))
            rule = lmul(a, connes_B(Chain(A, 0, ap))) + \
                lmul(ap, connes_B(Chain(A, 0, a)))
            assert h1.reduce_chain(prod) == h1.reduce_chain(rule)


def test_pairing_value():
    A = truncated_poly(2)
    h0 = homology(A, 0)
    # <x d/dx, class(1 (x) x)> = X(x)*1 = x
    X = Cochain1(A, ((0, 0), (0, 1)))
    assert is_derivation(X)
    val = pairing(X, elementary_chain(A, (0, 1)), h0)
    assert val == h0.reduce_chain(Chain(A, 0, A.basis_vector(1)))


@pytest.mark.parametrize("name", ("qx2", "v1_1", "v1_2"))
def test_descent(algebras, name):
    rep = verify_descent(algebras[name], 1)
    assert rep.ok, rep
