"""
Rational side of the sieve: pairs (a, b) with a - b*m smooth over the
primes up to B.
"""

from dataclasses import dataclass, field

import numpy as np

from nfs.arith import primes_up_to

INT64_SAFE = 1 << 62


@dataclass
class RationalFactorBase:
    bound: int
    primes: list[int]


@dataclass
class RationalDecomposition:
    sign: int
    exponents: dict[int, int] = field(default_factory=dict)

    def value(self) -> int:
        v = -1 if self.sign else 1
        for p, e in self.exponents.items():
            v *= p**e
        return v


def rational_factor_base(bound: int) -> RationalFactorBase:
    if bound < 2:
        raise ValueError("factor base bound must be at least 2")
    return RationalFactorBase(bound, primes_up_to(bound))


def trial_factor(value: int, primes) -> dict[int, int] | None:
    """Exponent map of |value| over `primes`, or None if a cofactor remains."""
    v = abs(value)
    if v == 0:
        raise ValueError("cannot factor zero")
    exps = {}
    for p in primes:
        if v == 1:
            break
        if v % p == 0:
            e = 0
            while v % p == 0:
                v //= p
                e += 1
            exps[p] = e
    return exps if v == 1 else None


def smooth_decompose_rational(a: int, b: int, m: int, fb: RationalFactorBase) -> RationalDecomposition | None:
    """
    Decomposition of a - b*m over the factor base, or None when not smooth.

    >>> smooth_decompose_rational(3, 1, 35, rational_factor_base(2))
    RationalDecomposition(sign=1, exponents={2: 5})
    """
    v = a - b * m
    if v == 0:
        raise ValueError(f"degenerate pair ({a}, {b}): a - b*m = 0")
    exps = trial_factor(v, fb.primes)
    if exps is None:
        return None
    return RationalDecomposition(sign=int(v < 0), exponents=exps)


# ---------------------------------------------------------------------------
# line sieving


def line_values(coeff_fn, a_values: np.ndarray, bound: int) -> np.ndarray:
    """Evaluate coeff_fn on the a-grid in int64 when safe, else as Python ints."""
    if bound < INT64_SAFE:
        return coeff_fn(a_values.astype(np.int64))
    return coeff_fn(a_values.astype(object))


def divide_out(values: np.ndarray, start: int, p: int) -> None:
    """Divide every entry at start, start+p, ... by its full power of p (in place)."""
    idx = np.arange(start, len(values), p)
    while idx.size:
        sub = values[idx]
        keep = (sub % p == 0) & (sub != 0)
        idx = idx[keep]
        if not idx.size:
            break
        values[idx] = values[idx] // p


def smooth_line_rational(b: int, u: int, m: int, fb: RationalFactorBase) -> list[int]:
    """All a in [-u, u] with gcd(a, b) = 1 and a - b m nonzero and B-smooth."""
    a_grid = np.arange(-u, u + 1)
    bound = u + b * abs(m) + 1
    vals = line_values(lambda a: a - b * m, a_grid, bound)
    orig_zero = vals == 0
    for p in fb.primes:
        if b % p == 0:
            continue
        divide_out(vals, (b * m + u) % p, p)
    ok = (np.abs(vals) == 1) & ~orig_zero & (np.gcd(a_grid, b) == 1)
    return [int(a) for a in a_grid[ok]]


def sieve_rational_region(u: int, m: int, fb: RationalFactorBase, b_range: tuple[int, int] | None = None):
    """
    Coprime pairs |a| <= u, 0 < b <= u with a - b m smooth, ascending (b, a).

    ``b_range`` restricts b to [lo, hi] for partitioned sieving.
    """
    if u < 1:
        raise ValueError("half-width must be at least 1")
    lo, hi = b_range or (1, u)
    out = []
    for b in range(max(lo, 1), min(hi, u) + 1):
        for a in smooth_line_rational(b, u, m, fb):
            out.append((a, b, smooth_decompose_rational(a, b, m, fb)))
    return out

