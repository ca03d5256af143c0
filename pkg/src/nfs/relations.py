"""
Relations and the line-oriented relation file.

File layout::

    # nfs-relations n=<n> m=<m> f=<c0>,<c1>,...,<cd> B=<B> B2=<B'> chars=<k>
    a b | s p1^e1 p2^e2 ... | (p1,r1)^e1 ... | c1c2...ck

with primes and ideals ascending and the character field a bit string
('1' where the character is -1). Writing and re-reading reproduces the
file byte for byte.
"""

import re
from dataclasses import dataclass, field

from nfs.sieve_algebraic import AlgebraicDecomposition
from nfs.sieve_rational import RationalDecomposition


@dataclass
class Relation:
    a: int
    b: int
    rational: RationalDecomposition
    algebraic: AlgebraicDecomposition
    chars: str = ""

    @property
    def key(self) -> tuple[int, int]:
        return (self.a, self.b)


@dataclass
class RelationHeader:
    n: int
    m: int
    f: list[int]
    B: int
    B2: int
    chars: int
    extra: dict[str, str] = field(default_factory=dict)


def format_relation(rel: Relation) -> str:
    rat = " ".join(f"{p}^{e}" for p, e in sorted(rel.rational.exponents.items()))
    alg = " ".join(f"({p},{r})^{e}" for (p, r), e in sorted(rel.algebraic.exponents.items()))
    rat_field = f"{rel.rational.sign} {rat}".rstrip()
    return f"{rel.a} {rel.b} | {rat_field} | {alg} | {rel.chars}".rstrip()


_IDEAL = re.compile(r"\((\d+),(\d+)\)\^(\d+)")


def parse_relation(line: str) -> Relation:
    parts = [s.strip() for s in line.split("|")]
    if len(parts) != 4:
        raise ValueError(f"malformed relation line: {line!r}")
    a, b = (int(t) for t in parts[0].split())
    rat_tokens = parts[1].split()
    sign = int(rat_tokens[0])
    rat = {}
    for tok in rat_tokens[1:]:
        p, e = tok.split("^")
        rat[int(p)] = int(e)
    alg = {}
    for tok in parts[2].split():
        mt = _IDEAL.fullmatch(tok)
        if not mt:
            raise ValueError(f"malformed ideal token {tok!r}")
        p, r, e = (int(g) for g in mt.groups())
        alg[(p, r)] = e
    chars = parts[3]
    if chars.strip("01"):
        raise ValueError(f"character field must be a bit string: {chars!r}")
    return Relation(a, b, RationalDecomposition(sign, rat), AlgebraicDecomposition(alg), chars)


def format_header(h: RelationHeader) -> str:
    fields = [
        f"n={h.n}",
        f"m={h.m}",
        "f=" + ",".join(str(c) for c in h.f),
        f"B={h.B}",
        f"B2={h.B2}",
        f"chars={h.chars}",
    ]
    fields.extend(f"{k}={v}" for k, v in h.extra.items())
    return "# nfs-relations " + " ".join(fields)


def parse_header(line: str) -> RelationHeader:
    if not line.startswith("# nfs-relations "):
        raise ValueError("missing relation file header")
    kv = dict(tok.split("=", 1) for tok in line[len("# nfs-relations ") :].split())
    h = RelationHeader(
        n=int(kv.pop("n")),
        m=int(kv.pop("m")),
        f=[int(c) for c in kv.pop("f").split(",")],
        B=int(kv.pop("B")),
        B2=int(kv.pop("B2")),
        chars=int(kv.pop("chars")),
    )
    h.extra = kv
    return h


def dumps(header: RelationHeader, relations) -> str:
    lines = [format_header(header)]
    lines.extend(format_relation(r) for r in relations)
    return "\n".join(lines) + "\n"


def loads(text: str) -> tuple[RelationHeader, list[Relation]]:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty relation file")
    header = parse_header(lines[0])
    return header, [parse_relation(ln) for ln in lines[1:] if ln.strip()]


def write_relations(path, header: RelationHeader, relations) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dumps(header, relations))


def read_relations(path) -> tuple[RelationHeader, list[Relation]]:
    with open(path, encoding="ascii") as fh:
        return loads(fh.read())
