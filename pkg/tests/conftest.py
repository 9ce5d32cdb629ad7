import random
import zlib

import pytest

from hccourant.algebra import FiniteAlgebra
from hccourant.courant import EpsilonSpace, ESpace
from hccourant.exactlin import Q, QMatrix
from hccourant.files import BUNDLED_ALGEBRAS, load_algebra_ref
from hccourant.hochschild import Chain, Cochain1, derivation_basis


@pytest.fixture(scope="session")
def algebras():
    return {name: load_algebra_ref(name) for name in BUNDLED_ALGEBRAS}


@pytest.fixture(scope="session")
def espaces(algebras):
    return {name: ESpace(A) for name, A in algebras.items()}


@pytest.fixture(scope="session")
def epsilons(espaces):
    return {name: EpsilonSpace(E) for name, E in espaces.items()
            if E.dim > 0}


def rand_q(rng, lo=-4, hi=4):
    return Q(rng.randint(lo, hi))


def rand_vec(rng, n):
    return tuple(rand_q(rng) for _ in range(n))


def rand_combination(rng, basis: QMatrix):
    out = [Q(0)] * basis.cols
    for row in basis:
        c = rand_q(rng, -3, 3)
        if c:
            for k, x in enumerate(row):
                if x:
                    out[k] += c * x
    return tuple(out)


def rand_derivation(rng, A: FiniteAlgebra, basis=None) -> Cochain1:
    basis = basis if basis is not None else derivation_basis(A)
    flat = rand_combination(rng, basis)
    d = A.dim
    return Cochain1(A, tuple(tuple(flat[j * d:(j + 1) * d])
                             for j in range(d)))


def rand_chain(rng, A: FiniteAlgebra, n: int) -> Chain:
    return Chain(A, n, rand_vec(rng, A.dim ** (n + 1)))


def rng_for(name: str) -> random.Random:
    return random.Random(zlib.crc32(name.encode()))
