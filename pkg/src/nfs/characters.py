"""
Quadratic characters that screen exponent-even products for squareness.

Linear characters (q, s) evaluate the Legendre symbol of a - b*s mod q.
Function-field characters (p, r(x)) evaluate whether a - b*x is a square in
F_p[x]/(r), either directly (Euler) or through the two-Legendre-symbol
reciprocity reduction.
"""

import math
import random
from dataclasses import dataclass

from nfs.arith import (
    FFElement,
    integer_nth_root,
    is_probable_prime,
    legendre,
    next_probable_prime,
    poly_divmod,
    poly_eval,
    poly_factor_mod_p,
    poly_mod,
    poly_roots_mod_p,
)


class CharacterVanishes(ValueError):
    """The character is zero on the given element (its ideal divides it)."""


class SamplingBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LinearCharacter:
    q: int
    s: int


@dataclass(frozen=True)
class FFCharacter:
    p: int
    r_poly: tuple[int, ...]  # monic, least-degree first

    @property
    def degree(self) -> int:
        return len(self.r_poly) - 1


def gnfs_character_base(f, bound: int, count: int, scan_budget: int = 100000) -> list[LinearCharacter]:
    """
    First `count` pairs (q, s) with q > bound prime, f(s) = 0 and f'(s) != 0 mod q.

    Primes dividing the leading coefficient are skipped.

    >>> gnfs_character_base([33, 28, 1, 1], 13, 1)
    [LinearCharacter(q=17, s=3)]
    """
    out: list[LinearCharacter] = []
    if count <= 0:
        return out
    df = [i * c for i, c in enumerate(f)][1:]
    q = bound
    for _ in range(scan_budget):
        q = next_probable_prime(q + 1)
        if f[-1] % q == 0:
            continue
        for s in poly_roots_mod_p(f, q):
            if poly_eval(df, s, q) != 0:
                out.append(LinearCharacter(q, s))
                if len(out) == count:
                    return out
    raise SamplingBudgetExceeded(f"found only {len(out)} of {count} characters")


def chi_linear(c: LinearCharacter, a: int, b: int) -> int:
    v = (a - b * c.s) % c.q
    if v == 0:
        raise CharacterVanishes(f"({c.q}, {c.s}) divides {a} - {b} alpha")
    return legendre(v, c.q)


def sample_upsilon(
    f,
    x_bound: int,
    rng: random.Random,
    max_tries: int = 100000,
    k: int | None = None,
) -> FFCharacter:
    """
    Draw (p, r) with p a probable prime in (x^(1/(k+1)), x^(1/k)] and r an
    unrepeated irreducible factor of f mod p of degree <= k.

    k is uniform in {1, ..., d} and redrawn after every failed attempt
    unless pinned by the caller. Primes where f mod p is not squarefree or
    drops degree are rejected.
    """
    d = len(f) - 1
    if x_bound < 2**d:
        raise ValueError("x_bound must be at least 2^d")
    for _ in range(max_tries):
        kk = k if k is not None else rng.randint(1, d)
        lo = integer_nth_root(x_bound, kk + 1)
        hi = integer_nth_root(x_bound, kk)
        if hi <= lo:
            continue
        p = rng.randint(lo + 1, hi)
        if not is_probable_prime(p, rng=rng):
            continue
        if f[-1] % p == 0:
            continue
        factors = poly_factor_mod_p(poly_mod(f, p), p, rng)
        if any(e > 1 for _, e in factors):
            continue
        eligible = [g for g, _ in factors if len(g) - 1 <= kk]
        if not eligible:
            continue
        return FFCharacter(p, tuple(rng.choice(eligible)))
    raise SamplingBudgetExceeded("no character found within the retry budget")


def chi_ff_reciprocity(c: FFCharacter, a: int, b: int) -> int:
    """
    ((a - b x) / r) via two Legendre symbols mod p:

        (-b/p)^k * (-1)^(((p-1)/2) ((p^k-1)/2)) * (r(a/b) / p),  k = deg r
    """
    p, k = c.p, c.degree
    if p == 2:
        return 1
    if b % p == 0:
        # a - b x = a is a constant; a^((p^k-1)/2) = (a/p)^k
        if a % p == 0:
            raise CharacterVanishes(f"p = {p} divides both a and b")
        return legendre(a, p) ** k
    t = a * pow(b, -1, p) % p
    rv = poly_eval(c.r_poly, t, p)
    if rv == 0:
        raise CharacterVanishes(f"r({t}) = 0 mod {p}")
    sign = legendre(-b, p) ** k
    if ((p - 1) // 2) % 2 and ((pow(p, k, 4) - 1) // 2) % 2:
        sign = -sign
    return sign * legendre(rv, p)


def chi_ff_euler(c: FFCharacter, a: int, b: int) -> int:
    """(a - b x)^((p^k - 1)/2) in F_p[x]/(r), as +-1."""
    return chi_element(c, [a, -b])


def chi_element(c, coeffs) -> int:
    """
    Character value of an element sum coeffs[i] alpha^i (Euler form).

    Works for both character kinds; a LinearCharacter (q, s) is the
    function-field character of r = x - s.
    """
    if isinstance(c, LinearCharacter):
        c = FFCharacter(c.q, ((-c.s) % c.q, 1))
    if c.p == 2:
        return 1
    elt = FFElement(coeffs, c.r_poly, c.p)
    if not elt:
        raise CharacterVanishes("element lies in the character's ideal")
    return 1 if elt.is_square() else -1


def default_rnfs_character_count(n: int, d: int, cap: int = 4096) -> int:
    return min(cap, 4 * d * (math.ceil(math.log2(n)) + d * d))


def default_gnfs_character_count(n: int) -> int:
    return int(3 * math.log2(n))


def default_x_bound(afb_bound: int, d: int) -> int:
    """Character norms x with every sampled prime above 2 B'."""
    return max(2**d, (2 * afb_bound) ** (d + 1))


def is_unramified_factor(f, p: int, r_poly) -> bool:
    """r | f mod p with multiplicity exactly 1."""
    g = poly_mod(f, p)
    q, rem = poly_divmod(g, list(r_poly), p)
    if rem:
        return False
    return bool(poly_divmod(q, list(r_poly), p)[1])

