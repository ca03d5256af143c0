"""
Square roots for a dependency and the final gcd step.

The algebraic root is found in Z[x]/(g) for a monic g: a square root of
xi^2 modulo an inert prime q is inverted and lifted q-adically with

    delta <- delta (3 - delta^2 xi^2) / 2

which doubles the precision each step; gamma = delta * xi^2 is then read off
with symmetric residues and checked exactly.
"""

import logging
import math
import random

from nfs.arith import FFElement, is_irreducible_mod_p, next_probable_prime, poly_mod
from nfs.polyselect import discriminant, zpoly_eval

logger = logging.getLogger("nfs.sqroots")

MAX_LIFT_STEPS = 64
MAX_PRIME_SWITCHES = 16


class SquareRootError(ArithmeticError):
    pass


class InertPrimeNotFound(SquareRootError):
    pass


# ---------------------------------------------------------------------------
# Z[x]/(g), g monic


def to_monic(f) -> list[int]:
    """g(y) = lc^(d-1) f(y / lc); a root of g is lc * alpha."""
    d = len(f) - 1
    lc = f[-1]
    return [f[i] * lc ** (d - 1 - i) for i in range(d)] + [1]


def reduce_mod(h, g) -> list[int]:
    """Remainder of an integer polynomial by a monic one, padded to length deg g."""
    d = len(g) - 1
    h = list(h)
    for i in range(len(h) - 1, d - 1, -1):
        c = h[i]
        if c:
            for j in range(d):
                h[i - d + j] -= c * g[j]
            h[i] = 0
    h = h[:d]
    return h + [0] * (d - len(h))


def elt_mul(x, y, g) -> list[int]:
    out = [0] * (len(x) + len(y) - 1)
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                out[i + j] += a * b
    return reduce_mod(out, g)


def elt_mod(x, modulus: int) -> list[int]:
    """Symmetric residues in (-modulus/2, modulus/2]."""
    half = modulus // 2
    out = []
    for c in x:
        c %= modulus
        if c > half:
            c -= modulus
        out.append(c)
    return out


def elt_product(elements, g) -> list[int]:
    """Product tree over Z[x]/(g)."""
    d = len(g) - 1
    layer = [reduce_mod(e, g) for e in elements] or [[1] + [0] * (d - 1)]
    while len(layer) > 1:
        nxt = [elt_mul(layer[i], layer[i + 1], g) for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def elt_eval(x, value: int, modulus: int) -> int:
    acc = 0
    for c in reversed(x):
        acc = (acc * value + c) % modulus
    return acc


# ---------------------------------------------------------------------------
# rational side


def combined_rational_exponents(relations) -> tuple[int, dict[int, int]]:
    signs = 0
    total: dict[int, int] = {}
    for rel in relations:
        signs += rel.rational.sign
        for p, e in rel.rational.exponents.items():
            total[p] = total.get(p, 0) + e
    return signs, total


def rational_sqrt_mod_n(relations, fprime_m: int, n: int, extra: int = 1) -> int:
    """
    z = f'(m) * extra * prod p^(E_p / 2) mod n for a dependency with even exponents.

    `extra` carries any further square-root factor the caller knows exactly
    (the leading-coefficient power for non-monic polynomials).
    """
    signs, total = combined_rational_exponents(relations)
    if signs % 2:
        raise SquareRootError("odd number of negative rational values")
    z = fprime_m * extra % n
    for p, e in sorted(total.items()):
        if e % 2:
            raise SquareRootError(f"odd combined exponent {e} at prime {p}")
        z = z * pow(p, e // 2, n) % n
    return z


# ---------------------------------------------------------------------------
# algebraic side


def inert_prime_search(f, start: int = 3, budget: int = 2000) -> int:
    """
    Least probable prime q >= start with f mod q irreducible and q not
    dividing disc(f) or lc(f).

    >>> inert_prime_search([1, 0, 1, 1], start=2)
    2
    >>> inert_prime_search([-2, 0, 1], start=3)
    3
    """
    disc = discriminant(f)
    q = next_probable_prime(max(start, 2))
    for _ in range(budget):
        if disc % q and f[-1] % q and is_irreducible_mod_p(poly_mod(f, q), q):
            return q
        q = next_probable_prime(q + 1)
    raise InertPrimeNotFound(f"no inert prime in {budget} candidates from {start}")


def dependency_square(relations, f) -> tuple[list[int], list[int]]:
    """
    (g, xi^2) with g = to_monic(f) and xi^2 = g'(beta)^2 prod (lc a - b beta).
    """
    g = to_monic(f)
    lc = f[-1]
    dg = [i * c for i, c in enumerate(g)][1:]
    prod = elt_product([[lc * rel.a, -rel.b] for rel in relations], g)
    dg_elt = reduce_mod(dg, g)
    return g, elt_mul(elt_mul(prod, dg_elt, g), dg_elt, g)


def algebraic_sqrt(xi_sq, g, q: int, rng: random.Random | None = None, on_step=None) -> list[int]:
    """
    gamma in Z[x]/(g) with gamma^2 = xi_sq exactly.

    `on_step(j, modulus, residual)` is called after every lift with the
    coefficients of delta^2 xi^2 - 1, which must all vanish mod q^(2^j).
    When q = 2 or xi^2 vanishes mod q the next inert prime above q is used.
    """
    d = len(g) - 1
    xi_sq = reduce_mod(xi_sq, g)
    one = [1] + [0] * (d - 1)
    if xi_sq == one:
        return one
    if not any(xi_sq):
        return [0] * d
    for _ in range(MAX_PRIME_SWITCHES):
        # xi^2 must be a unit mod q; otherwise move to the next inert prime
        if q != 2 and FFElement(xi_sq, g, q):
            break
        q = inert_prime_search(g, start=q + 1)
    else:
        raise SquareRootError("xi^2 is divisible by every inert prime tried")
    root = FFElement(xi_sq, g, q).sqrt(rng)
    if root is None:
        raise SquareRootError("xi^2 is not a square modulo the inert prime")
    inv = root.inverse()
    delta = list(inv.coeffs) + [0] * (d - len(inv.coeffs))

    height = max(abs(c) for c in xi_sq)
    give_up = 2 * (d * height + 1) ** 2
    modulus = q
    for j in range(1, MAX_LIFT_STEPS + 1):
        modulus = modulus * modulus
        half = (modulus + 1) // 2  # inverse of 2 mod an odd modulus
        t = elt_mul(elt_mul(delta, delta, g), xi_sq, g)
        t = [(-c) % modulus for c in t]
        t[0] = (t[0] + 3) % modulus
        delta = [c * half % modulus for c in elt_mul(delta, t, g)]
        residual = elt_mul(elt_mul(delta, delta, g), xi_sq, g)
        residual[0] -= 1
        residual = [c % modulus for c in residual]
        if on_step is not None:
            on_step(j, modulus, residual)
        if any(residual):
            raise SquareRootError(f"lift lost precision at step {j}")
        gamma = elt_mod(elt_mul(delta, xi_sq, g), modulus)
        if elt_mul(gamma, gamma, g) == xi_sq:
            return gamma
        if modulus > give_up * give_up:
            break
    raise SquareRootError("lift did not converge to an exact square root")


def extract_factors(x: int, y: int, n: int) -> tuple[int, int] | None:
    """
    Nontrivial split of n from x^2 = y^2 mod n, or None when x = +-y.

    >>> extract_factors(18, 4, 77)
    (11, 7)
    """
    d1 = math.gcd(x + y, n)
    d2 = math.gcd(x - y, n)
    if 1 < d1 < n and 1 < d2 < n:
        return d1, d2
    for d in (d1, d2):
        if 1 < d < n:
            return d, n // d
    return None


def congruence_from_dependency(relations, f, m: int, n: int, q: int, rng=None, on_step=None) -> tuple[int, int]:
    """
    (x, y) with x^2 = y^2 mod n from a dependency whose parities all vanish.

    x comes from the rational side, y = gamma(lc * m) from the algebraic one.
    """
    lc = f[-1]
    g, xi_sq = dependency_square(relations, f)
    gamma = algebraic_sqrt(xi_sq, g, q, rng=rng, on_step=on_step)
    dg = [i * c for i, c in enumerate(g)][1:]
    beta_m = lc * m % n
    if lc != 1 and len(relations) % 2:
        raise SquareRootError("non-monic dependencies need an even number of relations")
    extra = pow(lc, len(relations) // 2, n) if lc != 1 else 1
    x = rational_sqrt_mod_n(relations, zpoly_eval(dg, beta_m) % n, n, extra)
    y = elt_eval(gamma, beta_m, n)
    if (x * x - y * y) % n:
        raise SquareRootError("assembled pair is not a congruence of squares")
    return x, y
