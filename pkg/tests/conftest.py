"""Independent oracles shared by the test modules."""

import numpy as np
import sympy


def factor_oracle(value: int) -> dict[int, int]:
    return {int(p): int(e) for p, e in sympy.factorint(abs(value)).items()}


def is_smooth_oracle(value: int, bound: int) -> bool:
    if value == 0:
        return False
    return all(p <= bound for p in factor_oracle(value))


def psi_naive(x: int, y: int) -> int:
    """Count y-smooth z < x by dividing every candidate by every prime <= y."""
    rest = np.arange(1, x, dtype=np.int64)
    for p in sympy.primerange(2, y + 1):
        while True:
            hit = rest % p == 0
            if not hit.any():
                break
            rest[hit] //= p
    return int(np.count_nonzero(rest == 1))


def gf2_rank_oracle(dense) -> int:
    """Row reduction over GF(2) on a numpy array, pivots scanned right to left."""
    a = np.array(dense, dtype=np.uint8) % 2
    rank = 0
    rows, cols = a.shape
    for c in range(cols - 1, -1, -1):
        pivot = next((r for r in range(rank, rows) if a[r, c]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] ^= a[rank]
        rank += 1
    return rank


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {number:>2} [{'PASS' if passed else 'FAIL'}] {title}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
