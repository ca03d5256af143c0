"""
Algebraic side of the sieve: pairs whose norm F(a, b) factors over the
first-degree prime ideals (p, r), f(r) = 0 mod p, with p <= B'.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from nfs.arith import poly_roots_mod_p, primes_up_to
from nfs.polyselect import homogeneous_eval
from nfs.sieve_rational import divide_out, line_values


class RationalRootError(ValueError):
    """N(a - b alpha) = 0: f has the rational root a/b."""


@dataclass
class AlgebraicFactorBase:
    bound: int
    ideals: list[tuple[int, int]]
    roots: dict[int, list[int]] = field(default_factory=dict)
    lead: int = 1


@dataclass
class AlgebraicDecomposition:
    exponents: dict[tuple[int, int], int] = field(default_factory=dict)
    sign: int = 0


def norm(a: int, b: int, f) -> int:
    """
    Homogeneous norm F(a, b) = sum ci a^i b^(d-i).

    >>> norm(1, 1, [33, 28, 1, 1]), norm(0, 1, [33, 28, 1, 1])
    (63, 33)
    """
    if a == 0 and b == 0:
        raise ValueError("(0, 0) has no norm")
    return homogeneous_eval(f, a, b)


def algebraic_factor_base(f, bound: int) -> AlgebraicFactorBase:
    """
    All (p, r) with p <= bound prime and f(r) = 0 mod p.

    >>> algebraic_factor_base([33, 28, 1, 1], 3).ideals
    [(3, 0), (3, 1)]
    """
    ideals = []
    roots = {}
    for p in primes_up_to(bound):
        if all(c % p == 0 for c in f):
            raise ValueError(f"f vanishes identically mod {p}")
        rs = poly_roots_mod_p(f, p)
        if rs:
            roots[p] = rs
            ideals.extend((p, r) for r in rs)
    return AlgebraicFactorBase(bound=bound, ideals=ideals, roots=roots, lead=f[-1])


def smooth_decompose_algebraic(a: int, b: int, f, afb: AlgebraicFactorBase) -> AlgebraicDecomposition | None:
    """
    Split |F(a, b)| over the ideal base, or None when not B'-smooth.

    Pairs with gcd(b, lc(f)) > 1 (a projective root divides the norm) are
    treated as not smooth.

    >>> fb = algebraic_factor_base([33, 28, 1, 1], 17)
    >>> smooth_decompose_algebraic(3, 1, [33, 28, 1, 1], fb).exponents
    {(3, 0): 2, (17, 3): 1}
    """
    v = norm(a, b, f)
    if v == 0:
        raise RationalRootError(f"f has the rational root {a}/{b}")
    sign = int(v < 0)
    v = abs(v)
    exps = {}
    if math.gcd(b, afb.lead) > 1:
        # projective root: p | b and p | lc(f); not in the base
        return None
    for p in afb.roots:
        if v == 1:
            break
        if v % p:
            continue
        e = 0
        while v % p == 0:
            v //= p
            e += 1
        r = a * pow(b, -1, p) % p
        if r not in afb.roots.get(p, ()):
            raise AssertionError(f"norm divisible by {p} but {r} is not a root")
        exps[(p, r)] = e
    if v != 1:
        return None
    return AlgebraicDecomposition(exponents=exps, sign=sign)


def smooth_line_algebraic(b: int, u: int, f, afb: AlgebraicFactorBase) -> list[int]:
    """All a in [-u, u] with gcd(a, b) = 1 and F(a, b) nonzero and B'-smooth."""
    if math.gcd(b, afb.lead) > 1:
        return []
    a_grid = np.arange(-u, u + 1)
    d = len(f) - 1
    bound = sum(abs(c) for c in f) * max(u, b) ** d + 1
    b_pows = [b**k for k in range(d + 1)]

    def evaluate(a):
        acc = a * 0 + f[d]
        for i in range(d - 1, -1, -1):
            acc = acc * a + f[i] * b_pows[d - i]
        return acc

    vals = line_values(evaluate, a_grid, bound)
    orig_zero = vals == 0
    for p, rs in afb.roots.items():
        if b % p == 0:
            continue
        for r in rs:
            divide_out(vals, (b * r + u) % p, p)
    ok = (np.abs(vals) == 1) & ~orig_zero & (np.gcd(a_grid, b) == 1)
    return [int(a) for a in a_grid[ok]]


def sieve_algebraic_region(u: int, f, afb: AlgebraicFactorBase, b_range: tuple[int, int] | None = None):
    """Coprime pairs |a| <= u, 0 < b <= u with F(a, b) smooth, ascending (b, a)."""
    if u < 1:
        raise ValueError("half-width must be at least 1")
    lo, hi = b_range or (1, u)
    out = []
    for b in range(max(lo, 1), min(hi, u) + 1):
        for a in smooth_line_algebraic(b, u, f, afb):
            out.append((a, b, smooth_decompose_algebraic(a, b, f, afb)))
    return out
