import math
import random

import pytest
import sympy

from conftest import factor_oracle, is_smooth_oracle
from nfs.sieve_algebraic import (
    RationalRootError,
    algebraic_factor_base,
    norm,
    sieve_algebraic_region,
    smooth_decompose_algebraic,
    smooth_line_algebraic,
)
from nfs.sieve_rational import (
    rational_factor_base,
    sieve_rational_region,
    smooth_decompose_rational,
    smooth_line_rational,
)

F = [33, 28, 1, 1]
X = sympy.symbols("x")


# --- rational side ---------------------------------------------------------


@pytest.mark.parametrize("B,want", [(2, [2]), (10, [2, 3, 5, 7])])
def test_rational_factor_base(B, want):
    assert rational_factor_base(B).primes == want


def test_rational_factor_base_count():
    assert len(rational_factor_base(30).primes) == 10


def test_rational_decompose_examples():
    d = smooth_decompose_rational(3, 1, 35, rational_factor_base(2))
    assert (d.sign, d.exponents) == (1, {2: 5})
    assert smooth_decompose_rational(1, 1, 35, rational_factor_base(13)) is None
    d = smooth_decompose_rational(1, 1, 35, rational_factor_base(17))
    assert (d.sign, d.exponents) == (1, {2: 1, 17: 1})


def test_rational_decompose_zero_value():
    with pytest.raises(ValueError):
        smooth_decompose_rational(35, 1, 35, rational_factor_base(7))


def test_rational_region_examples():
    got = sieve_rational_region(1, 2, rational_factor_base(3))
    assert [(a, b) for a, b, _ in got] == [(-1, 1), (0, 1), (1, 1)]
    assert [d.value() for _, _, d in got] == [-3, -2, -1]
    assert sieve_rational_region(1, 35, rational_factor_base(2)) == []


def test_rational_region_skips_noncoprime_and_reconstructs():
    u, m = 40, 35
    got = sieve_rational_region(u, m, rational_factor_base(50))
    assert got
    for a, b, dec in got:
        assert math.gcd(a, b) == 1
        assert dec.value() == a - b * m


def test_rational_region_partition_independent():
    fb = rational_factor_base(30)
    whole = sieve_rational_region(30, 35, fb)
    parts = sieve_rational_region(30, 35, fb, (1, 12)) + sieve_rational_region(30, 35, fb, (13, 30))
    assert whole == parts


def test_rational_line_handles_zero_value():
    # a = b*m lies inside the box for b = 1, m = 3
    fb = rational_factor_base(7)
    assert 3 not in smooth_line_rational(1, 10, 3, fb)


def test_rational_probes_match_oracle():
    rng = random.Random(11)
    for _ in range(1000):
        m = rng.randint(2, 10**6)
        B = rng.randint(2, 500)
        b = rng.randint(1, 300)
        a = rng.randint(-3000, 3000)
        if math.gcd(a, b) != 1 or a == b * m:
            continue
        fb = rational_factor_base(B)
        want = is_smooth_oracle(a - b * m, B)
        dec = smooth_decompose_rational(a, b, m, fb)
        assert (dec is not None) == want
        if dec:
            assert dec.exponents == factor_oracle(a - b * m)
        assert (a in smooth_line_rational(b, abs(a) + 1, m, fb)) == want


# --- algebraic side --------------------------------------------------------


def test_norm_examples():
    assert norm(1, 0, F) == 1
    assert norm(1, 0, [5, 3, 0, 1]) == 1
    assert norm(1, 1, F) == 63
    assert norm(0, 1, F) == 33


def test_norm_matches_resultant():
    rng = random.Random(2)
    for _ in range(200):
        d = rng.randint(1, 5)
        f = [rng.randint(-100, 100) for _ in range(d)] + [rng.randint(1, 9)]
        a, b = rng.randint(-500, 500), rng.randint(1, 500)
        res = sympy.resultant(sympy.Poly(list(reversed(f)), X), sympy.Poly([-b, a], X))
        assert abs(norm(a, b, f)) == abs(int(res))


def test_algebraic_factor_base_examples():
    assert algebraic_factor_base(F, 2).ideals == []
    assert algebraic_factor_base(F, 3).ideals == [(3, 0), (3, 1)]
    assert algebraic_factor_base([0, 1], 20).ideals == [(p, 0) for p in (2, 3, 5, 7, 11, 13, 17, 19)]


def test_algebraic_factor_base_is_exact():
    afb = algebraic_factor_base(F, 200)
    want = [(p, r) for p in sympy.primerange(2, 201) for r in range(p) if sum(c * r**i for i, c in enumerate(F)) % p == 0]
    assert afb.ideals == want


def test_algebraic_decompose_examples():
    assert smooth_decompose_algebraic(3, 1, F, algebraic_factor_base(F, 17)).exponents == {(3, 0): 2, (17, 3): 1}
    assert smooth_decompose_algebraic(3, 1, F, algebraic_factor_base(F, 13)) is None
    assert smooth_decompose_algebraic(1, 1, F, algebraic_factor_base(F, 2)) is None


def test_algebraic_decompose_rational_root():
    with pytest.raises(RationalRootError):
        smooth_decompose_algebraic(1, 1, [-1, 0, 1], algebraic_factor_base([-1, 0, 1], 5))


def test_algebraic_region_examples():
    assert sieve_algebraic_region(1, F, algebraic_factor_base(F, 3)) == []
    got = {(a, b): dec for a, b, dec in sieve_algebraic_region(1, F, algebraic_factor_base(F, 11))}
    assert got[(0, 1)].exponents == {(3, 0): 1, (11, 0): 1}
    # N(-1, 1) = 5 and N(1, 1) = 63 = 3^2 7 are 11-smooth as well
    assert got[(-1, 1)].exponents == {(5, 4): 1}
    assert got[(1, 1)].exponents == {(3, 1): 2, (7, 1): 1}
    assert set(got) == {(-1, 1), (0, 1), (1, 1)}


def test_algebraic_region_unique_root_per_prime():
    afb = algebraic_factor_base(F, 100)
    for a, b, dec in sieve_algebraic_region(30, F, afb):
        assert math.gcd(a, b) == 1
        seen = set()
        prod = 1
        for (p, r), e in dec.exponents.items():
            assert p not in seen
            seen.add(p)
            assert (a - b * r) % p == 0
            prod *= p**e
        assert prod == abs(norm(a, b, F))


def test_algebraic_region_partition_independent():
    afb = algebraic_factor_base(F, 60)
    whole = sieve_algebraic_region(25, F, afb)
    parts = sieve_algebraic_region(25, F, afb, (1, 9)) + sieve_algebraic_region(25, F, afb, (10, 25))
    assert whole == parts


def test_nonmonic_projective_pairs_rejected():
    f = [7, -3, 5, 6]  # lc = 6
    afb = algebraic_factor_base(f, 50)
    assert smooth_decompose_algebraic(1, 2, f, afb) is None
    assert smooth_line_algebraic(3, 20, f, afb) == []


def test_algebraic_probes_match_oracle():
    rng = random.Random(13)
    for _ in range(300):
        d = rng.choice([2, 3, 4, 5])
        f = [rng.randint(-50, 50) for _ in range(d)] + [rng.choice([1, 1, 2, 3])]
        if math.gcd(*f) != 1 or sympy.Poly(list(reversed(f)), X).is_irreducible is False:
            continue
        B2 = rng.randint(5, 300)
        afb = algebraic_factor_base(f, B2)
        b = rng.randint(1, 40)
        a = rng.randint(-200, 200)
        if math.gcd(a, b) != 1:
            continue
        v = norm(a, b, f)
        want = math.gcd(b, f[-1]) == 1 and is_smooth_oracle(v, B2)
        dec = smooth_decompose_algebraic(a, b, f, afb)
        assert (dec is not None) == want
        if dec:
            got = {}
            for (p, _), e in dec.exponents.items():
                got[p] = got.get(p, 0) + e
            assert got == factor_oracle(v)
        assert (a in smooth_line_algebraic(b, abs(a) + 1, f, afb)) == want
