"""
Number-field polynomial selection.

Integer polynomials are lists of ints, least-degree first:
``[c0, c1, ..., cd]`` means c0 + c1 x + ... + cd x^d. The homogeneous form
is F(x, y) = sum ci x^i y^(d-i).
"""

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from nfs.arith import (
    integer_nth_root,
    is_irreducible_mod_p,
    poly_factor_mod_p,
    poly_mod,
    primes_up_to,
)

logger = logging.getLogger("nfs.polyselect")

IRREDUCIBILITY_PROBES = 25


@dataclass
class PolySelectResult:
    poly: list[int]
    m: int
    shortcut_factor: int | None = None


@dataclass
class Irreducibility:
    status: str  # "irreducible" | "reducible" | "unknown"
    factors: list[list[int]] = field(default_factory=list)

    def __bool__(self):
        return self.status == "irreducible"


# ---------------------------------------------------------------------------
# integer polynomial helpers


def zpoly_trim(f):
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def zpoly_eval(f, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def homogeneous_eval(f, a: int, b: int) -> int:
    """F(a, b) = sum ci a^i b^(d-i)."""
    d = len(f) - 1
    acc = 0
    bp = 1
    for i in range(d, -1, -1):
        acc += f[i] * a**i * bp
        bp *= b
    return acc


def zpoly_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return zpoly_trim(out)


def zpoly_derivative(f):
    return zpoly_trim([i * c for i, c in enumerate(f)][1:] or [0])


def resultant(f, g) -> int:
    """
    Exact resultant of two integer polynomials.

    Euclid over Q with Fractions; fine for the small degrees used here.

    >>> resultant([-1, 0, 1], [1, 1])
    0
    >>> resultant([33, 28, 1, 1], [3, -1])
    153
    """
    f = [Fraction(c) for c in zpoly_trim(f)]
    g = [Fraction(c) for c in zpoly_trim(g)]
    if f == [0] or g == [0]:
        return 0
    res = Fraction(1)
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return int(res * g[0] ** m)
        if m < n:
            if (m * n) % 2:
                res = -res
            f, g = g, f
            continue
        # Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r), r = f mod g
        r = list(f)
        for i in range(m, n - 1, -1):
            c = r[i] / g[n]
            if c:
                for j in range(n + 1):
                    r[i - n + j] -= c * g[j]
        r = r[:n]
        while len(r) > 1 and r[-1] == 0:
            r.pop()
        if not r or r == [0]:
            return 0
        k = len(r) - 1
        res *= g[n] ** (m - k)
        if (m * n) % 2:
            res = -res
        f, g = g, r


def discriminant(f) -> int:
    """
    Disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f).

    >>> discriminant([2, 3, 4])
    -23
    >>> discriminant([7, 1, 9, 4])
    -36979
    """
    f = zpoly_trim(f)
    d = len(f) - 1
    r = resultant(f, zpoly_derivative(f))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, f[-1])
    assert rem == 0
    return q


# ---------------------------------------------------------------------------
# selection


def base_m_digits(n: int, m: int, d: int) -> list[int]:
    digits = []
    rest = n
    for _ in range(d):
        rest, c = divmod(rest, m)
        digits.append(c)
    digits.append(rest)
    return digits


def base_m_expand(n: int, d: int, m: int | None = None) -> PolySelectResult:
    """
    Base-m expansion f with f(m) = n, m = floor(n^(1/d)) unless given.

    >>> r = base_m_expand(45113, 3); (r.m, r.poly)
    (35, [33, 28, 1, 1])
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    if m is None:
        m = integer_nth_root(n, d)
    f = base_m_digits(n, m, d)
    shortcut = None
    if m**d == n:
        shortcut = m
    else:
        g = math.gcd(m, n)
        if 1 < g < n:
            shortcut = g
    return PolySelectResult(poly=f, m=m, shortcut_factor=shortcut)


def rnfs_m(n: int, d: int) -> int:
    """m with m^d <= n < 2 m^d."""
    m = integer_nth_root(n, d)
    if not 2 * m**d > n:
        raise ValueError(f"no m with m^{d} <= n < 2m^{d} for n={n}")
    return m


def default_height(n: int, m: int, d: int) -> int:
    return max(integer_nth_root(n**2, 3 * d), 2 * m)


def randomized_poly(n: int, m: int, d: int, height: int, rng: random.Random, coeffs=None) -> list[int]:
    """
    f = fhat + R with R(x, 1) = sum_i c_i (x - m) x^(d-i-1), c_i uniform in [-H, H].

    ``coeffs`` overrides the random draw (used to pin degenerate cases).
    """
    if d % 2 == 0:
        raise ValueError("randomized polynomials need odd degree")
    if height <= 0:
        raise ValueError("height must be positive")
    if not m**d <= n < 2 * m**d:
        raise ValueError("need m^d <= n < 2 m^d")
    fhat = base_m_digits(n, m, d)
    if coeffs is None:
        coeffs = [rng.randint(-height, height) for _ in range(d)]
    f = list(fhat)
    for i, c in enumerate(coeffs):
        # c (x - m) x^(d-i-1)
        f[d - i] += c
        f[d - i - 1] -= m * c
    return f


def _rational_roots(f) -> list[Fraction]:
    """Rational roots of an integer polynomial by the rational root theorem."""
    f = zpoly_trim(f)
    roots = []
    if f[0] == 0:
        roots.append(Fraction(0))
        k = 0
        while f[k] == 0:
            k += 1
        f = f[k:]
    if len(f) == 1:
        return roots
    for p in _divisors(abs(f[0])):
        for q in _divisors(abs(f[-1])):
            for s in (1, -1):
                x = Fraction(s * p, q)
                if x.denominator == q and x not in roots:
                    num = sum(c * x.numerator**i * x.denominator ** (len(f) - 1 - i) for i, c in enumerate(f))
                    if num == 0:
                        roots.append(x)
    return roots


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _linear_factor(f, root: Fraction):
    """Split f = (q x - p) * h for a rational root p/q."""
    lin = [-root.numerator, root.denominator]
    # synthetic division over Z
    d = len(f) - 1
    h = [0] * d
    rem = list(f)
    for i in range(d, 0, -1):
        c = rem[i] // lin[1]
        h[i - 1] = c
        rem[i] -= c * lin[1]
        rem[i - 1] -= c * lin[0]
    return lin, zpoly_trim(h)


def irreducibility_check(f, probes: int = IRREDUCIBILITY_PROBES) -> Irreducibility:
    """
    Classify f over Z.

    Linear factors are found exactly by the rational root theorem (cheap while
    |c0| is small); otherwise an irreducible reduction mod a prime not
    dividing disc(f) * lc(f) certifies irreducibility. When every probe
    prime yields a reducible image the answer is "unknown".
    """
    f = zpoly_trim(f)
    d = len(f) - 1
    if d < 1:
        raise ValueError("degree must be positive")
    if d == 1:
        return Irreducibility("irreducible")
    if abs(f[0]) < 10**12 and abs(f[-1]) < 10**6 or f[0] == 0:
        roots = _rational_roots(f)
        if roots:
            lin, h = _linear_factor(f, roots[0])
            return Irreducibility("reducible", [lin, h])
        if d <= 3:
            return Irreducibility("irreducible")
    disc = discriminant(f)
    if disc == 0:
        return _zassenhaus_reducible(f) or Irreducibility("unknown")
    tried = 0
    for p in primes_up_to(2000):
        if disc % p == 0 or f[-1] % p == 0:
            continue
        if is_irreducible_mod_p(poly_mod(f, p), p):
            return Irreducibility("irreducible")
        tried += 1
        if tried >= probes:
            break
    found = _zassenhaus_reducible(f)
    return found or Irreducibility("unknown")


def _zassenhaus_reducible(f) -> Irreducibility | None:
    """Exact integer factor via sympy when available in the pipeline."""
    try:
        import sympy
    except ImportError:  # pragma: no cover
        return None
    x = sympy.symbols("x")
    expr = sum(c * x**i for i, c in enumerate(f))
    _, factors = sympy.factor_list(expr)
    if len(factors) == 1 and factors[0][1] == 1:
        return None
    out = []
    for g, e in factors:
        coeffs = [int(c) for c in reversed(sympy.Poly(g, x).all_coeffs())]
        out.extend([coeffs] * e)
    return Irreducibility("reducible", out)


def reducible_shortcut(factors, m: int, n: int) -> int | None:
    """gcd(g(m), n) for a factor g of f, when nontrivial."""
    for g in factors:
        v = math.gcd(zpoly_eval(g, m), n)
        if 1 < v < n:
            return v
    return None


def discriminant_bound_check(f, n: int, d: int) -> bool:
    """|disc f| < d^(2d) n^(2 - 3/d), compared exactly as integers."""
    disc = abs(discriminant(f))
    # |disc|^d < d^(2d^2) n^(2d - 3)
    return disc**d < d ** (2 * d * d) * n ** (2 * d - 3)


def rnfs_parameter_predicate(delta: float, kappa: float, sigma: float, beta: float, beta_p: float) -> bool:
    """Asymptotic constraints kappa > 1/delta and 2 sigma > max(beta, beta')."""
    return kappa > 1 / delta and 2 * sigma > max(beta, beta_p) and min(delta, kappa, sigma, beta, beta_p) > 0


def factor_over_fp_degrees(f, p: int, rng=None) -> list[int]:
    return sorted(len(g) - 1 for g, e in poly_factor_mod_p(poly_mod(f, p), p, rng) for _ in range(e))
