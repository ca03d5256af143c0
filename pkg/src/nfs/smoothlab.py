"""
Counting smooth numbers.

Every counter here uses the strict convention: Psi(x, y) counts the
y-smooth z with 1 <= z < x (note: most references count z <= x).
Smooth numbers are enumerated directly, prime by prime, by multiplying the
current set by powers of p; residue-class and character variants are
computed from the same enumeration.
"""

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from nfs.arith import primes_up_to

INT64_LIMIT = 2**62


class IndeterminateGoodness(ValueError):
    """Too few smooth numbers coprime to r to classify the modulus."""


@lru_cache(maxsize=8)
def _smooth_array(x: int, y: int) -> np.ndarray:
    if x >= INT64_LIMIT:
        raise ValueError("x must be below 2^62")
    found = np.array([1], dtype=np.int64) if x > 1 else np.array([], dtype=np.int64)
    for p in primes_up_to(min(y, x - 1)):
        layer = found[found < (x + p - 1) // p] * p
        parts = [found]
        while layer.size:
            parts.append(layer)
            layer = layer[layer < (x + p - 1) // p] * p
        found = np.concatenate(parts)
    found.sort()
    found.flags.writeable = False
    return found


def smooth_numbers(x: int, y: int) -> np.ndarray:
    """
    Sorted y-smooth z with 1 <= z < x.

    >>> smooth_numbers(10, 2).tolist()
    [1, 2, 4, 8]
    """
    if x < 1 or y < 1:
        raise ValueError("need x >= 1 and y >= 1")
    return _smooth_array(int(x), int(y))


def psi_count(x: int, y: int) -> int:
    """
    >>> psi_count(10, 2)
    4
    >>> psi_count(1000, 1)
    1
    """
    return int(smooth_numbers(x, y).size)


def psi_coprime(x: int, y: int, r: int) -> int:
    z = smooth_numbers(x, y)
    return int(np.count_nonzero(np.gcd(z, r) == 1))


def psi_progression(x: int, y: int, a: int, r: int) -> int:
    """
    >>> psi_progression(10, 2, 0, 3)
    0
    """
    z = smooth_numbers(x, y)
    return int(np.count_nonzero(z % r == a % r))


def psi_char(x: int, y: int, chi) -> int:
    """Sum of chi(z) over the y-smooth z < x."""
    return sum(chi(int(z)) for z in smooth_numbers(x, y))


def residue_counts(x: int, y: int, r: int) -> np.ndarray:
    """counts[a] = Psi(x, y, a, r) for a in [0, r)."""
    return np.bincount(smooth_numbers(x, y) % r, minlength=r)


def rho_empirical(x: int, y: int) -> Fraction:
    """
    Psi(x, y) / floor(x) as an exact fraction.

    >>> rho_empirical(10, 10)
    Fraction(9, 10)
    """
    return Fraction(psi_count(x, y), int(x))


def euler_phi(r: int) -> int:
    out, m, p = r, r, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def goodness_test(r: int, F: int, B: int, eps: float = 0.15) -> tuple[bool, float]:
    """
    Is r a B-good modulus at height F?

    For each a coprime to r the exponent e(a) is solved from
    Psi(F, B, a, r) = (Psi_r(F, B) / phi(r))^(1 + e(a)); r is good when
    max |e(a)| <= eps. An empty class gives e = -inf.

    >>> goodness_test(2, 100, 5)
    (True, 0.0)
    """
    if r < 2 or F <= r:
        raise ValueError("need r >= 2 and F > r")
    counts = residue_counts(F, B, r)
    coprime = np.gcd(np.arange(r), r) == 1
    total = int(counts[coprime].sum())
    phi = euler_phi(r)
    if total <= phi:
        raise IndeterminateGoodness(f"Psi_r = {total} smooth values for phi(r) = {phi} classes")
    log_mean = math.log(total / phi)
    worst = 0.0
    for c in counts[coprime].tolist():
        e = math.log(c) / log_mean - 1 if c else -math.inf
        if abs(e) > abs(worst):
            worst = e
    return abs(worst) <= eps, worst


def l_notation(n: int, a: float, c: float) -> float:
    """
    exp(c (ln n)^a (ln ln n)^(1 - a)).

    >>> round(l_notation(10**6, 1, 0.5))
    1000
    """
    if n < 16:
        raise ValueError("n must be at least 16")
    ln = math.log(n)
    return math.exp(c * ln**a * math.log(ln) ** (1 - a))
