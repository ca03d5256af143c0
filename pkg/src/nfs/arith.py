"""
Integer and finite-field primitives.

Polynomials over F_p are plain lists of residues, least-degree first, with
trailing zeros stripped; the zero polynomial is ``[]``.
"""

import math
import random

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
EXHAUSTIVE_ROOT_LIMIT = 1 << 16


def gcd_ext(a: int, b: int) -> tuple[int, int, int]:
    """
    Return (g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g.

    >>> gcd_ext(14, 77)[0]
    7
    >>> g, s, t = gcd_ext(45113, 35); (g, s * 45113 + t * 35)
    (1, 1)
    """
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus == 0:
        raise ZeroDivisionError("modulus must be positive")
    if modulus < 0 or exp < 0:
        raise ValueError("need modulus >= 1 and exp >= 0")
    return pow(base, exp, modulus)


def jacobi(a: int, n: int) -> int:
    """
    Jacobi symbol (a/n) for odd n >= 3.

    >>> jacobi(3, 7), jacobi(15, 17), jacobi(21, 7)
    (-1, 1, 0)
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"jacobi needs odd n >= 3, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    """Legendre symbol for an odd prime p (via the Jacobi algorithm)."""
    return jacobi(a, p)


def is_probable_prime(n: int, rounds: int = 32, rng: random.Random | None = None) -> bool:
    """
    Miller-Rabin with `rounds` random witnesses.

    A False answer is a proof of compositeness. Witnesses come from `rng`
    so results are reproducible for a seeded stream.
    """
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < SMALL_PRIMES[-1] ** 2:
        return True
    if rng is None:
        rng = random.Random(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_probable_prime(n: int, rng: random.Random | None = None) -> int:
    """Least probable prime >= n."""
    if n <= 2:
        return 2
    n |= 1
    while not is_probable_prime(n, rng=rng):
        n += 2
    return n


def integer_nth_root(n: int, d: int) -> int:
    """
    Largest m with m**d <= n, by bisection on [1, 2**(bitlen/d + 1)].

    >>> integer_nth_root(45113, 3)
    35
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if d == 1:
        return n
    lo, hi = 1, 1 << (n.bit_length() // d + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**d <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def is_perfect_power(n: int) -> tuple[int, int] | None:
    """Return (root, k) with root**k == n for the largest such k >= 2, else None."""
    for k in range(n.bit_length(), 1, -1):
        r = integer_nth_root(n, k)
        if r > 1 and r**k == n:
            return r, k
    return None


def primes_up_to(bound: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


# ---------------------------------------------------------------------------
# polynomials over F_p


def poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mod(f, p: int) -> list[int]:
    return poly_trim([c % p for c in f])


def poly_deg(f: list[int]) -> int:
    return len(f) - 1


def poly_eval(f, x: int, p: int | None = None) -> int:
    acc = 0
    if p is None:
        for c in reversed(f):
            acc = acc * x + c
        return acc
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def poly_add(f, g, p: int) -> list[int]:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return poly_trim(out)


def poly_sub(f, g, p: int) -> list[int]:
    return poly_add(f, [-c % p for c in g], p)


def poly_mul(f, g, p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly_trim([c % p for c in out])


def poly_divmod(f, g, p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i] * inv % p
        if c:
            q[i - dg] = c
            for j, gj in enumerate(g):
                r[i - dg + j] = (r[i - dg + j] - c * gj) % p
    return poly_trim(q), poly_trim(r[:dg])


def poly_rem(f, g, p: int) -> list[int]:
    return poly_divmod(f, g, p)[1]


def poly_monic(f, p: int) -> list[int]:
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def poly_gcd(f, g, p: int) -> list[int]:
    f, g = poly_mod(f, p), poly_mod(g, p)
    while g:
        f, g = g, poly_rem(f, g, p)
    return poly_monic(f, p)


def poly_powmod(f, e: int, g, p: int) -> list[int]:
    """f**e mod (g, p)."""
    result = [1] if len(g) > 1 else []
    base = poly_rem(f, g, p)
    while e:
        if e & 1:
            result = poly_rem(poly_mul(result, base, p), g, p)
        e >>= 1
        if e:
            base = poly_rem(poly_mul(base, base, p), g, p)
    return result


def poly_derivative(f, p: int | None = None) -> list[int]:
    out = [i * c for i, c in enumerate(f)][1:]
    return poly_mod(out, p) if p is not None else out


def poly_roots_mod_p(f, p: int, rng: random.Random | None = None) -> list[int]:
    """
    Sorted list of the r in [0, p) with f(r) = 0 mod p.

    >>> poly_roots_mod_p([33, 28, 1, 1], 3)
    [0, 1]
    >>> poly_roots_mod_p([33, 28, 1, 1], 2)
    []
    """
    f = poly_mod(f, p)
    if not f:
        raise ValueError("zero polynomial has every residue as a root")
    if len(f) == 1:
        return []
    if p < EXHAUSTIVE_ROOT_LIMIT:
        return [r for r in range(p) if poly_eval(f, r, p) == 0]
    # product of the distinct linear factors is gcd(f, x^p - x)
    xp = poly_powmod([0, 1], p, f, p)
    g = poly_gcd(f, poly_sub(xp, [0, 1], p), p)
    if rng is None:
        rng = random.Random(p)
    roots = [(-c[0]) % p for c in _equal_degree_split(g, 1, p, rng)]
    return sorted(roots)


# ---------------------------------------------------------------------------
# factorization over F_p


def _squarefree_decomposition(f, p: int) -> list[tuple[list[int], int]]:
    """Monic f -> [(g_i, i)] with f = prod g_i**i, each g_i squarefree."""
    out = []
    i = 1
    df = poly_derivative(f, p)
    if not df:
        # f = h(x^p)
        h = [f[j] for j in range(0, len(f), p)]
        return [(g, e * p) for g, e in _squarefree_decomposition(h, p)]
    c = poly_gcd(f, df, p)
    w = poly_divmod(f, c, p)[0]
    while len(w) > 1:
        y = poly_gcd(w, c, p)
        z = poly_divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = poly_divmod(c, y, p)[0]
    if len(c) > 1:
        h = [c[j] for j in range(0, len(c), p)]
        out.extend((g, e * p) for g, e in _squarefree_decomposition(h, p))
    return out


def _distinct_degree(f, p: int) -> list[tuple[list[int], int]]:
    """Squarefree monic f -> [(product of all degree-k factors, k)]."""
    out = []
    h = [0, 1]
    k = 0
    while len(f) - 1 >= 2 * (k + 1):
        k += 1
        h = poly_powmod(h, p, f, p)
        g = poly_gcd(f, poly_sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, k))
            f = poly_divmod(f, g, p)[0]
            h = poly_rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree_split(f, k: int, p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus: split a product of degree-k irreducibles (p odd)."""
    n = len(f) - 1
    if n <= k:
        return [f] if n > 0 else []
    if p == 2:
        return _split_gf2(f, k)
    e = (p**k - 1) // 2
    while True:
        a = poly_trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        g = poly_gcd(f, a, p)
        if 1 < len(g) < len(f):
            break
        b = poly_sub(poly_powmod(a, e, f, p), [1], p)
        g = poly_gcd(f, b, p)
        if 1 < len(g) < len(f):
            break
    h = poly_divmod(f, g, p)[0]
    return _equal_degree_split(g, k, p, rng) + _equal_degree_split(h, k, p, rng)


def _irreducibles_gf2(k: int) -> list[list[int]]:
    """All monic irreducible polynomials of degree k over F_2 (small k)."""
    out = []
    for bits in range(1 << k):
        cand = [(bits >> i) & 1 for i in range(k)] + [1]
        if is_irreducible_mod_p(cand, 2):
            out.append(cand)
    return out


def _split_gf2(f, k: int) -> list[list[int]]:
    out = []
    for g in _irreducibles_gf2(k):
        if not poly_rem(f, g, 2):
            out.append(g)
    return out


def poly_factor_mod_p(f, p: int, rng: random.Random | None = None) -> list[tuple[list[int], int]]:
    """
    Factor f over F_p into monic irreducibles with multiplicities.

    The leading coefficient is dropped; sorted by (degree, coefficients).

    >>> poly_factor_mod_p([1, 0, 1], 5)
    [([2, 1], 1), ([3, 1], 1)]
    """
    f = poly_mod(f, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    f = poly_monic(f, p)
    if rng is None:
        rng = random.Random(p)
    out = []
    for g, mult in _squarefree_decomposition(f, p):
        for h, k in _distinct_degree(g, p):
            for piece in _equal_degree_split(h, k, p, rng):
                out.append((piece, mult))
    merged: dict[tuple, int] = {}
    for g, e in out:
        merged[tuple(g)] = merged.get(tuple(g), 0) + e
    return sorted(((list(g), e) for g, e in merged.items()), key=lambda t: (len(t[0]), t[0][::-1]))


def is_irreducible_mod_p(f, p: int) -> bool:
    """Rabin-style test: x^(p^n) = x mod f and gcd(x^(p^(n/q)) - x, f) = 1."""
    f = poly_monic(poly_mod(f, p), p)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if poly_eval(f, 0, p) == 0:
        return False
    h = [0, 1]
    powers = {}
    for i in range(1, n + 1):
        h = poly_powmod(h, p, f, p)
        powers[i] = h
    if poly_sub(powers[n], [0, 1], p):
        return False
    for q in _prime_divisors(n):
        g = poly_gcd(f, poly_sub(powers[n // q], [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# extension fields F_p[t]/(g)


class FFElement:
    """An element of F_p[t]/(g) for a monic irreducible g."""

    __slots__ = ("coeffs", "modulus", "p")

    def __init__(self, coeffs, modulus, p: int):
        self.p = p
        self.modulus = tuple(modulus)
        self.coeffs = tuple(poly_rem(poly_mod(coeffs, p), list(modulus), p))

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def order(self) -> int:
        return self.p**self.degree

    def _wrap(self, coeffs) -> "FFElement":
        return FFElement(coeffs, self.modulus, self.p)

    def _check(self, other: "FFElement"):
        if other.modulus != self.modulus or other.p != self.p:
            raise ValueError("operands live in different fields")

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == tuple(poly_mod([other], self.p))
        return isinstance(other, FFElement) and (self.coeffs, self.modulus, self.p) == (
            other.coeffs,
            other.modulus,
            other.p,
        )

    def __hash__(self):
        return hash((self.coeffs, self.modulus, self.p))

    def __repr__(self):
        return f"FFElement({list(self.coeffs)}, mod {list(self.modulus)}, p={self.p})"

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        self._check(other)
        return self._wrap(poly_add(list(self.coeffs), list(other.coeffs), self.p))

    def __sub__(self, other):
        self._check(other)
        return self._wrap(poly_sub(list(self.coeffs), list(other.coeffs), self.p))

    def __mul__(self, other):
        self._check(other)
        return self._wrap(poly_mul(list(self.coeffs), list(other.coeffs), self.p))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(poly_powmod(list(self.coeffs), e, list(self.modulus), self.p))

    def inverse(self) -> "FFElement":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero in a finite field")
        # extended Euclid in F_p[t]
        p = self.p
        r0, r1 = list(self.modulus), list(self.coeffs)
        s0, s1 = [], [1]
        while r1:
            q, r = poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
        inv_lead = pow(r0[0], -1, p)
        return self._wrap([c * inv_lead for c in s0])

    def is_square(self) -> bool:
        """Euler criterion (every element is a square when p = 2)."""
        if not self.coeffs or self.p == 2:
            return True
        return self ** ((self.order - 1) // 2) == 1

    def sqrt(self, rng: random.Random | None = None) -> "FFElement | None":
        """Tonelli-Shanks in F_{p^k}; None for non-squares."""
        if not self.coeffs:
            return self
        q = self.order
        if self.p == 2:
            return self ** ((q) // 2)
        if not self.is_square():
            return None
        s, t = 0, q - 1
        while t % 2 == 0:
            t //= 2
            s += 1
        if rng is None:
            rng = random.Random(q)
        k = self.degree
        while True:
            z = self._wrap([rng.randrange(self.p) for _ in range(k)])
            if z and not z.is_square():
                break
        c = z**t
        x = self ** ((t + 1) // 2)
        b = self**t
        m = s
        while b != 1:
            i, b2 = 0, b
            while b2 != 1:
                b2 = b2 * b2
                i += 1
            g = c ** (1 << (m - i - 1))
            x = x * g
            c = g * g
            b = b * c
            m = i
        return x


def ff_op(kind: str, *operands: FFElement, exponent: int | None = None, rng=None):
    """Dispatch table over FFElement for mul / inv / pow / sqrt."""
    if kind == "mul":
        a, b = operands
        return a * b
    if kind == "inv":
        return operands[0].inverse()
    if kind == "pow":
        return operands[0] ** exponent
    if kind == "sqrt":
        return operands[0].sqrt(rng)
    raise ValueError(f"unknown field operation {kind!r}")
