import random

import pytest

from nfs.arith import is_irreducible_mod_p, poly_mod
from nfs.relations import Relation
from nfs.sieve_algebraic import AlgebraicDecomposition
from nfs.sieve_rational import RationalDecomposition
from nfs.sqroots import (
    SquareRootError,
    algebraic_sqrt,
    elt_mul,
    extract_factors,
    inert_prime_search,
    rational_sqrt_mod_n,
    to_monic,
)

F = [33, 28, 1, 1]


def rels(*exps, sign=0):
    return [Relation(1, 1, RationalDecomposition(sign, e), AlgebraicDecomposition()) for e in exps]


def test_rational_sqrt_examples():
    n = 10**9 + 7
    assert rational_sqrt_mod_n(rels({2: 3}, {2: 3}, sign=1), 1, n) == 8
    assert rational_sqrt_mod_n(rels({2: 2, 3: 4}), 1, n) == 18
    with pytest.raises(SquareRootError):
        rational_sqrt_mod_n(rels({2: 3}), 1, n)
    with pytest.raises(SquareRootError):
        rational_sqrt_mod_n(rels({2: 2}, sign=1), 1, n)


def test_inert_prime_examples():
    assert inert_prime_search([1, 0, 1, 1], start=2) == 2
    assert inert_prime_search([-2, 0, 1], start=3) == 3
    q = inert_prime_search(F)
    assert is_irreducible_mod_p(poly_mod(F, q), q)


def _checked_lift(xi_sq, g, q, rng):
    steps = []

    def on_step(j, modulus, residual):
        assert modulus == q ** (2**j)
        assert not any(residual)
        steps.append(j)

    gamma = algebraic_sqrt(xi_sq, g, q, rng, on_step)
    return gamma, steps


def test_sqrt_of_one_and_constants():
    g = to_monic(F)
    q = inert_prime_search(g)
    assert algebraic_sqrt([1, 0, 0], g, q) == [1, 0, 0]
    for c in (2, 7, 1234567):
        gamma, _ = _checked_lift([c * c, 0, 0], g, q, random.Random(c))
        assert gamma in ([c, 0, 0], [-c, 0, 0])


def test_sqrt_round_trip_random():
    rng = random.Random(17)
    for f in (F, [-5, 3, -2, 1], [2, 0, 0, 0, 3, 1]):
        g = to_monic(f)
        q = inert_prime_search(g)
        for _ in range(100):
            gamma0 = [rng.randint(-1000, 1000) for _ in range(len(g) - 1)]
            if not any(gamma0):
                continue
            gamma, steps = _checked_lift(elt_mul(gamma0, gamma0, g), g, q, rng)
            assert gamma in (gamma0, [-c for c in gamma0])
            assert steps == list(range(1, len(steps) + 1))


def test_sqrt_of_nonsquare_fails():
    g = to_monic(F)
    q = inert_prime_search(g)
    with pytest.raises(SquareRootError):
        algebraic_sqrt([2, 0, 0], g, q)


def test_extract_factors_examples():
    assert extract_factors(18, 4, 77) == (11, 7)
    assert extract_factors(5, 5, 77) is None
    assert extract_factors(5, 72, 77) is None


def test_sqrt_moves_past_prime_dividing_xi():
    g = to_monic(F)
    q = inert_prime_search(g)
    gamma0 = [q, 2 * q, -q]
    gamma = algebraic_sqrt(elt_mul(gamma0, gamma0, g), g, q)
    assert gamma in (gamma0, [-c for c in gamma0])
    assert algebraic_sqrt([0, 0, 0], g, q) == [0, 0, 0]
