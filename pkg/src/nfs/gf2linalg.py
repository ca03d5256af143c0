"""
Dense GF(2) matrices with rows packed into Python ints (bit j = column j)
and left-kernel extraction by Gaussian elimination.
"""

from dataclasses import dataclass, field


class SchemaError(KeyError):
    pass


@dataclass
class ColumnSchema:
    """[sign | rational primes | algebraic ideals | characters | (count)]"""

    primes: list[int]
    ideals: list[tuple[int, int]]
    n_chars: int = 0
    count_column: bool = False
    _prime_col: dict = field(init=False, repr=False)
    _ideal_col: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.primes = sorted(self.primes)
        self.ideals = sorted(self.ideals)
        self._prime_col = {p: 1 + i for i, p in enumerate(self.primes)}
        base = 1 + len(self.primes)
        self._ideal_col = {pr: base + i for i, pr in enumerate(self.ideals)}

    @property
    def char_offset(self) -> int:
        return 1 + len(self.primes) + len(self.ideals)

    @property
    def ncols(self) -> int:
        return self.char_offset + self.n_chars + int(self.count_column)

    def row_bits(self, relation) -> int:
        bits = relation.rational.sign & 1
        for p, e in relation.rational.exponents.items():
            if p not in self._prime_col:
                raise SchemaError(f"prime {p} not in schema")
            if e & 1:
                bits |= 1 << self._prime_col[p]
        for pr, e in relation.algebraic.exponents.items():
            if pr not in self._ideal_col:
                raise SchemaError(f"ideal {pr} not in schema")
            if e & 1:
                bits |= 1 << self._ideal_col[pr]
        if len(relation.chars) != self.n_chars:
            raise SchemaError("character string length does not match schema")
        for j, ch in enumerate(relation.chars):
            if ch == "1":
                bits |= 1 << (self.char_offset + j)
        if self.count_column:
            bits |= 1 << (self.ncols - 1)
        return bits


@dataclass
class GF2Matrix:
    rows: list[int]
    ncols: int

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_dense(cls, dense) -> "GF2Matrix":
        dense = [list(r) for r in dense]
        ncols = len(dense[0]) if dense else 0
        rows = []
        for r in dense:
            bits = 0
            for j, v in enumerate(r):
                if v & 1:
                    bits |= 1 << j
            rows.append(bits)
        return cls(rows, ncols)

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def left_multiply(self, v: int) -> int:
        """v^T M as a packed column vector (v is a packed row selection)."""
        acc = 0
        i = 0
        while v:
            if v & 1:
                acc ^= self.rows[i]
            v >>= 1
            i += 1
        return acc

    def rank(self) -> int:
        return self.nrows - len(kernel_basis(self))


def assemble_matrix(relations, schema: ColumnSchema) -> GF2Matrix:
    """
    One row per relation in the schema's column order.

    >>> from nfs.relations import Relation
    >>> from nfs.sieve_rational import RationalDecomposition
    >>> from nfs.sieve_algebraic import AlgebraicDecomposition
    >>> rel = Relation(3, 1, RationalDecomposition(1, {2: 5}), AlgebraicDecomposition())
    >>> assemble_matrix([rel], ColumnSchema([2], [])).to_dense()
    [[1, 1]]
    """
    return GF2Matrix([schema.row_bits(r) for r in relations], schema.ncols)


def kernel_basis(M: GF2Matrix) -> list[int]:
    """
    Basis of {v : v^T M = 0}; each vector packs a row selection (bit i = row i).

    >>> kernel_basis(GF2Matrix.from_dense([[1, 1], [1, 1]]))
    [3]
    """
    pivots: dict[int, tuple[int, int]] = {}
    basis = []
    for i, row in enumerate(M.rows):
        v, combo = row, 1 << i
        while v:
            h = v.bit_length() - 1
            piv = pivots.get(h)
            if piv is None:
                pivots[h] = (v, combo)
                break
            v ^= piv[0]
            combo ^= piv[1]
        if not v:
            basis.append(combo)
    return basis


def selected_rows(v: int) -> list[int]:
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out
