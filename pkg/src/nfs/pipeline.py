"""
End-to-end drivers: deterministic GNFS and the randomized variant.

Both share the same skeleton: choose a polynomial, sieve a (a, b) box on
both sides, screen with quadratic characters, find GF(2) dependencies and
turn each into a congruence of squares that is checked before use.
"""

import json
import logging
import math
import random
import time
from contextlib import contextmanager
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from nfs.arith import integer_nth_root, is_perfect_power, is_probable_prime, primes_up_to
from nfs.characters import (
    CharacterVanishes,
    SamplingBudgetExceeded,
    chi_ff_reciprocity,
    chi_linear,
    default_gnfs_character_count,
    default_rnfs_character_count,
    default_x_bound,
    gnfs_character_base,
    sample_upsilon,
)
from nfs.gf2linalg import ColumnSchema, assemble_matrix, kernel_basis, selected_rows
from nfs.polyselect import (
    base_m_expand,
    default_height,
    homogeneous_eval,
    irreducibility_check,
    randomized_poly,
    reducible_shortcut,
    rnfs_m,
    zpoly_derivative,
    zpoly_eval,
)
from nfs.relations import Relation, RelationHeader, read_relations, write_relations
from nfs.sieve_algebraic import (
    AlgebraicFactorBase,
    algebraic_factor_base,
    smooth_decompose_algebraic,
    smooth_line_algebraic,
)
from nfs.sieve_rational import (
    RationalFactorBase,
    rational_factor_base,
    smooth_decompose_rational,
    smooth_line_rational,
)
from nfs.sqroots import (
    InertPrimeNotFound,
    SquareRootError,
    congruence_from_dependency,
    extract_factors,
    inert_prime_search,
    to_monic,
)

logger = logging.getLogger("nfs.pipeline")

TRIAL_DIVISION_BOUND = 10**4
GROWTH = 1.5
MAX_HALF_WIDTH = 200_000
SOFT_HALF_WIDTH = 3000


class InvalidInput(ValueError):
    pass


class PerfectPowerInput(InvalidInput):
    def __init__(self, n: int, root: int, k: int):
        super().__init__(f"{n} = {root}^{k}")
        self.root = root
        self.k = k


@dataclass
class SieveParams:
    n: int
    d: int
    m: int
    B: int
    B2: int
    B3: int
    u: int
    max_dependency_retries: int = 64
    max_polynomial_retries: int = 6
    seed: int = 0
    mode: str = "gnfs"
    trial_bound: int = TRIAL_DIVISION_BOUND
    partitions: int = 1
    workers: int = 1
    height: int | None = None
    x_bound: int | None = None
    deepening_levels: int = 4

    def grown(self) -> "SieveParams":
        p = SieveParams(**asdict(self))
        p.B = int(self.B * GROWTH)
        p.B2 = int(self.B2 * GROWTH)
        p.u = min(int(self.u * GROWTH), MAX_HALF_WIDTH)
        return p


@dataclass
class FactorReport:
    n: int
    status: str
    factors: list[int] = field(default_factory=list)
    congruences_tried: int = 0
    relations_used: int = 0
    mode: str = "gnfs"
    poly: list[int] = field(default_factory=list)
    m: int = 0
    attempts: int = 0
    congruences: list[tuple[int, int]] = field(default_factory=list)
    message: str = ""
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict:
        d = asdict(self)
        d["congruences"] = [list(c) for c in self.congruences]
        if not timings:
            d.pop("timings")
        return d

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True)


# ---------------------------------------------------------------------------
# parameters


def smooth_probability(value: float, bound: float) -> float:
    """u^-u approximation to the chance a number of this size is smooth."""
    if value <= bound:
        return 1.0
    u = math.log(value) / math.log(bound)
    return u**-u


def estimate_yield(u: int, m: int, f, B: int, B2: int, grid: int = 16) -> float:
    """Expected both-sides-smooth coprime pairs in the box, from a fixed sample grid."""
    total = 0.0
    count = 0
    for i in range(grid):
        b = max(1, round((i + 0.5) * u / grid))
        for j in range(grid):
            a = round(-u + (j + 0.5) * 2 * u / grid)
            r = abs(a - b * m) or 1
            nv = abs(homogeneous_eval(f, a, b)) or 1
            total += smooth_probability(r, B) * smooth_probability(nv, B2)
            count += 1
    return total / count * (2 * u + 1) * u * 6 / math.pi**2


def choose_half_width(target: float, m: int, f, B: int, B2: int) -> int:
    lo, hi = 1, 16
    while estimate_yield(hi, m, f, B, B2) < target and hi < MAX_HALF_WIDTH:
        lo, hi = hi, hi * 2
    hi = min(hi, MAX_HALF_WIDTH)
    while lo < hi:
        mid = (lo + hi) // 2
        if estimate_yield(mid, m, f, B, B2) >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def optimal_degree(n: int, mode: str = "gnfs") -> int:
    ln = math.log(n)
    v = (3 * ln / math.log(ln)) ** (1 / 3)
    if mode == "rnfs":
        odd = [k for k in range(3, 2 * int(v) + 4, 2)]
        return min(odd, key=lambda k: (abs(k - v), k))
    return max(3, round(v))


def smoothness_bound(n: int) -> int:
    ln = math.log(n)
    b = math.exp(0.9 * ln ** (1 / 3) * math.log(ln) ** (2 / 3))
    return int(min(max(b, 100), 10**6))


def validate_input(n: int) -> None:
    if n < 15:
        raise InvalidInput(f"n = {n} is below 15")
    pp = is_perfect_power(n)
    if pp:
        raise PerfectPowerInput(n, *pp)
    if n % 2 == 0:
        raise InvalidInput(f"n = {n} is even")
    if is_probable_prime(n):
        raise InvalidInput(f"n = {n} is a probable prime")


def default_params(n: int, mode: str = "gnfs", seed: int = 0, **overrides) -> SieveParams:
    """
    Desk-scale defaults: degree from the usual (3 ln n / ln ln n)^(1/3),
    B = B' = exp(0.9 (ln n)^(1/3) (ln ln n)^(2/3)) clamped to [100, 10^6],
    and a sieve half-width sized for about 1.2x the column count.

    >>> default_params(45113).d
    3
    """
    if mode not in ("gnfs", "rnfs"):
        raise ValueError(f"unknown mode {mode!r}")
    validate_input(n)
    d = overrides.pop("d", None) or optimal_degree(n, mode)
    B = overrides.pop("B", None) or smoothness_bound(n)
    B2 = overrides.pop("B2", None) or B
    if mode == "gnfs":
        m = overrides.pop("m", None) or integer_nth_root(n, d)
        f = base_m_expand(n, d, m).poly
        B3 = overrides.pop("B3", None) or default_gnfs_character_count(n)
        height = None
    else:
        if d % 2 == 0:
            raise InvalidInput("randomized mode needs odd degree")
        m = overrides.pop("m", None) or rnfs_m(n, d)
        height = overrides.pop("height", None) or default_height(n, m, d)
        # typical coefficient shape of a sampled polynomial
        f = [m * height] * d + [height]
        B3 = overrides.pop("B3", None) or default_rnfs_character_count(n, d)
    u = overrides.pop("u", None)
    while u is None:
        target = 1.2 * (len(primes_up_to(B)) + len(primes_up_to(B2)) + B3 + 2)
        u = choose_half_width(target, m, f, B, B2)
        if u > SOFT_HALF_WIDTH and B2 < 10**6:
            # box too large for these bounds: trade it for bigger factor bases
            B, B2, u = int(B * GROWTH), int(B2 * GROWTH), None
    x_bound = overrides.pop("x_bound", None)
    if mode == "rnfs" and x_bound is None:
        x_bound = default_x_bound(B2, d)
    return SieveParams(n=n, d=d, m=m, B=B, B2=B2, B3=B3, u=u, seed=seed, mode=mode, height=height, x_bound=x_bound, **overrides)


# ---------------------------------------------------------------------------
# sieving


def sieve_b_range(b_lo: int, b_hi: int, u: int, m: int, f, rfb: RationalFactorBase, afb: AlgebraicFactorBase):
    """Both-sides-smooth coprime pairs for b in [b_lo, b_hi], ascending (b, a)."""
    out = []
    for b in range(b_lo, b_hi + 1):
        rat = smooth_line_rational(b, u, m, rfb)
        if not rat:
            continue
        alg = set(smooth_line_algebraic(b, u, f, afb))
        out.extend((a, b) for a in rat if a in alg)
    return out


def partition_b(u: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, u))
    edges = [1 + (u * i) // parts for i in range(parts)] + [u + 1]
    return [(edges[i], edges[i + 1] - 1) for i in range(parts)]


def sieve_pairs(params: SieveParams, f, rfb, afb) -> list[tuple[int, int]]:
    ranges = partition_b(params.u, params.partitions)
    args = [(lo, hi, params.u, params.m, f, rfb, afb) for lo, hi in ranges]
    if params.workers > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=params.workers) as pool:
            chunks = list(pool.map(_sieve_star, args))
    else:
        chunks = [sieve_b_range(*a) for a in args]
    pairs = [pr for chunk in chunks for pr in chunk]
    pairs.sort(key=lambda t: (t[1], t[0]))
    return pairs


def _sieve_star(args):
    return sieve_b_range(*args)


def build_relations(pairs, m: int, f, rfb, afb) -> list[Relation]:
    rels = []
    for a, b in pairs:
        rd = smooth_decompose_rational(a, b, m, rfb)
        ad = smooth_decompose_algebraic(a, b, f, afb)
        if rd is None or ad is None:
            raise AssertionError(f"line sieve and trial division disagree at ({a}, {b})")
        rels.append(Relation(a, b, rd, ad))
    return rels


def attach_characters(relations, chars, evaluate) -> list:
    """Keep the characters that vanish on no relation; fill in each relation's bit string."""
    kept = []
    columns = []
    for c in chars:
        bits = []
        try:
            for rel in relations:
                bits.append("1" if evaluate(c, rel.a, rel.b) == -1 else "0")
        except CharacterVanishes:
            continue
        kept.append(c)
        columns.append(bits)
    for i, rel in enumerate(relations):
        rel.chars = "".join(col[i] for col in columns)
    return kept


def build_schema(relations, n_chars: int, lead: int) -> ColumnSchema:
    primes = sorted({p for r in relations for p in r.rational.exponents})
    ideals = sorted({pr for r in relations for pr in r.algebraic.exponents})
    return ColumnSchema(primes, ideals, n_chars=n_chars, count_column=lead != 1)


def ideal_parity_ok(relations) -> bool:
    total: dict = {}
    for r in relations:
        for pr, e in r.algebraic.exponents.items():
            total[pr] = total.get(pr, 0) + e
    return all(e % 2 == 0 for e in total.values())


# ---------------------------------------------------------------------------
# drivers


def _stream(seed: int, label: str, attempt: int = 0) -> random.Random:
    return random.Random(f"{seed}:{label}:{attempt}")


def trial_division(n: int, bound: int) -> int | None:
    for p in primes_up_to(bound - 1):
        if p * p > n:
            break
        if n % p == 0:
            return p
    return None


class _Clock:
    def __init__(self, timings: dict):
        self.timings = timings

    @contextmanager
    def __call__(self, stage: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[stage] = self.timings.get(stage, 0.0) + time.perf_counter() - t0


def _success(report: FactorReport, d: int) -> FactorReport:
    report.status = "success"
    report.factors = sorted([d, report.n // d])
    return report


def run_dependencies(relations, f, m: int, n: int, q: int, max_tries: int, report: FactorReport, rng, stop_at_first=True, on_step=None):
    """
    Try kernel vectors in order; record every verified congruence.

    Returns a factor of n or None.
    """
    lead = f[-1]
    schema = build_schema(relations, len(relations[0].chars) if relations else 0, lead)
    if len(relations) < schema.ncols + 1:
        return None, schema
    M = assemble_matrix(relations, schema)
    found = None
    for v in kernel_basis(M)[:max_tries]:
        dep = [relations[i] for i in selected_rows(v)]
        if not ideal_parity_ok(dep):
            raise AssertionError("dependency with an odd ideal exponent")
        report.congruences_tried += 1
        try:
            x, y = congruence_from_dependency(dep, f, m, n, q, rng=rng, on_step=on_step)
        except SquareRootError as exc:
            logger.debug("dependency rejected: %s", exc)
            continue
        assert (x * x - y * y) % n == 0
        report.congruences.append((x, y))
        split = extract_factors(x, y, n)
        if split and found is None:
            found = split[0]
            report.relations_used = len(dep)
            if stop_at_first:
                break
    return found, schema


def _load_or_sieve(params: SieveParams, f, relations_in, clock, header_extra=None):
    rfb = rational_factor_base(params.B)
    afb = algebraic_factor_base(f, params.B2)
    if relations_in:
        header, rels = read_relations(relations_in)
        if header.n != params.n or header.f != list(f) or header.m != params.m:
            raise InvalidInput("relation file was produced for a different n, f or m")
        return rels, rfb, afb, True
    with clock("sieve"):
        pairs = sieve_pairs(params, f, rfb, afb)
    with clock("decompose"):
        rels = build_relations(pairs, params.m, f, rfb, afb)
    return rels, rfb, afb, False


def _header(params: SieveParams, f, n_chars: int) -> RelationHeader:
    return RelationHeader(n=params.n, m=params.m, f=list(f), B=params.B, B2=params.B2, chars=n_chars)


def gnfs_factor(
    params: SieveParams,
    relations_out=None,
    relations_in=None,
    stop_at_first: bool = True,
    on_step=None,
) -> FactorReport:
    """
    Factor n: trial division, base-m polynomial, sieve, characters,
    dependencies, square roots. Grows B, B' and u by 1.5 after a failed round.
    """
    n = params.n
    report = FactorReport(n=n, status="failure", mode="gnfs")
    clock = _Clock(report.timings)
    validate_input(n)
    with clock("trial_division"):
        p = trial_division(n, params.trial_bound)
    if p:
        report.message = "trial division"
        return _success(report, p)

    cur = params
    m = params.m
    for attempt in range(params.max_polynomial_retries + 1):
        report.attempts = attempt + 1
        with clock("polyselect"):
            sel = base_m_expand(n, cur.d, m)
            if sel.shortcut_factor:
                report.message = "polynomial selection shortcut"
                return _success(report, sel.shortcut_factor)
            f = sel.poly
            irr = irreducibility_check(f)
            if irr.status == "reducible":
                g = reducible_shortcut(irr.factors, m, n)
                if g:
                    report.message = "reducible polynomial"
                    return _success(report, g)
                m -= 1
                continue
            if irr.status == "unknown":
                logger.warning("irreducibility of %s not certified; continuing", f)
            fp = math.gcd(zpoly_eval(zpoly_derivative(f), m), n)
            if 1 < fp < n:
                report.message = "f'(m) shares a factor with n"
                return _success(report, fp)
            try:
                q = inert_prime_search(to_monic(f))
            except InertPrimeNotFound:
                m -= 1
                continue
        report.poly, report.m = f, m
        cur = SieveParams(**{**asdict(cur), "m": m})
        rels, rfb, afb, loaded = _load_or_sieve(cur, f, relations_in if attempt == 0 else None, clock)
        if not loaded:
            with clock("characters"):
                chars = gnfs_character_base(f, cur.B2, cur.B3)
                kept = attach_characters(rels, chars, chi_linear)
            if relations_out:
                write_relations(relations_out, _header(cur, f, len(kept)), rels)
        logger.info("attempt %d: %d relations (B=%d, B'=%d, u=%d)", attempt, len(rels), cur.B, cur.B2, cur.u)
        with clock("linalg_sqrt"):
            found, schema = run_dependencies(
                rels, f, m, n, q, cur.max_dependency_retries, report, _stream(cur.seed, "sqrt", attempt), stop_at_first, on_step
            )
        if found:
            return _success(report, found)
        if report.congruences and not stop_at_first:
            report.message = "congruences collected"
        cur = cur.grown()
    report.message = report.message or "retries exhausted"
    return report


def stochastic_deepening_search(K: int, sampler, tester, quota: int):
    """
    Doubling search: for level i = 0..ceil(log2 K) draw 2^i samples and give
    each a budget of quota / 2^i tests. Returns (sample, level, work) for the
    first sample whose tester call succeeds, or None.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    levels = math.ceil(math.log2(K)) + 1 if K > 1 else 1
    work = 0
    for i in range(levels):
        budget = max(1, quota >> i)
        for _ in range(1 << i):
            sample = sampler()
            work += budget
            if tester(sample, budget):
                return sample, i, work
    return None


def _rnfs_sample_poly(params: SieveParams, rng, report: FactorReport):
    for _ in range(1000):
        f = randomized_poly(params.n, params.m, params.d, params.height, rng)
        if f[-1] == 0:
            continue
        if math.gcd(math.gcd(*f), params.n) > 1:
            continue
        irr = irreducibility_check(f)
        if irr.status != "irreducible":
            if irr.status == "reducible":
                g = reducible_shortcut(irr.factors, params.m, params.n)
                if g:
                    report.message = f"reducible sample revealed factor {g}"
            continue
        return f
    raise RuntimeError("could not sample an irreducible polynomial")


def _pilot_tester(params: SieveParams, rng):
    rfb = rational_factor_base(params.B)
    n_cols = len(rfb.primes) * 2 + params.B3 + 2
    need_rate = 1.2 * n_cols / ((2 * params.u + 1) * params.u * 6 / math.pi**2)

    def tester(f, budget):
        afb = algebraic_factor_base(f, params.B2)
        hits = 0
        for _ in range(budget):
            b = rng.randint(1, params.u)
            a = rng.randint(-params.u, params.u)
            if math.gcd(a, b) != 1 or a == b * params.m or homogeneous_eval(f, a, b) == 0:
                continue
            if smooth_decompose_rational(a, b, params.m, rfb) and smooth_decompose_algebraic(a, b, f, afb):
                hits += 1
        return hits >= need_rate * budget

    return tester


def rnfs_congruence(params: SieveParams, relations_out=None, on_step=None, pilot_budget: int = 2048):
    """
    Randomized variant: returns (x, y, report) with x^2 = y^2 mod n verified,
    or (None, None, report) when every retry fails.
    """
    n = params.n
    report = FactorReport(n=n, status="failure", mode="rnfs")
    clock = _Clock(report.timings)
    validate_input(n)
    cur = params
    for attempt in range(params.max_polynomial_retries + 1):
        report.attempts = attempt + 1
        rng = _stream(cur.seed, "poly", attempt)
        with clock("polyselect"):
            picked = stochastic_deepening_search(
                cur.deepening_levels,
                lambda: _rnfs_sample_poly(cur, rng, report),
                _pilot_tester(cur, _stream(cur.seed, "pilot", attempt)),
                pilot_budget,
            )
            f = picked[0] if picked else _rnfs_sample_poly(cur, rng, report)
            try:
                q = inert_prime_search(to_monic(f))
            except InertPrimeNotFound:
                cur = cur.grown()
                continue
        report.poly, report.m = f, cur.m
        rels, rfb, afb, _ = _load_or_sieve(cur, f, None, clock)
        with clock("characters"):
            crng = _stream(cur.seed, "upsilon", attempt)
            chars = []
            seen = set()
            try:
                while len(chars) < cur.B3:
                    c = sample_upsilon(f, cur.x_bound, crng)
                    if c not in seen:
                        seen.add(c)
                        chars.append(c)
            except SamplingBudgetExceeded:
                logger.warning("character sampling stopped at %d", len(chars))
            kept = attach_characters(rels, chars, chi_ff_reciprocity)
        if relations_out:
            write_relations(relations_out, _header(cur, f, len(kept)), rels)
        logger.info("rnfs attempt %d: %d relations, %d characters", attempt, len(rels), len(kept))
        with clock("linalg_sqrt"):
            run_dependencies(
                rels, f, cur.m, n, q, cur.max_dependency_retries, report, _stream(cur.seed, "sqrt", attempt), False, on_step
            )
        if report.congruences:
            splitting = [(x, y) for x, y in report.congruences if extract_factors(x, y, n)]
            x, y = splitting[0] if splitting else report.congruences[0]
            if splitting:
                report.status = "success"
                report.factors = sorted(extract_factors(x, y, n))
            else:
                report.status = "congruence"
                report.message = "only trivial congruences"
            return x, y, report
        cur = cur.grown()
    report.message = "retries exhausted"
    return None, None, report


def factor(n: int, mode: str = "gnfs", seed: int = 0, **overrides) -> FactorReport:
    params = default_params(n, mode, seed, **overrides)
    if mode == "gnfs":
        return gnfs_factor(params)
    _, _, report = rnfs_congruence(params)
    return report

