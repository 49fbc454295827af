"""Exact linear algebra over prime fields GF(q).

Column-subset ranks, reduced row echelon forms, codeword enumeration and
brute-force minimum Hamming distance for generator matrices over GF(q)
with q prime.  The q=2 path packs each column into a machine integer and
reduces with XOR; the general path uses residue arithmetic with modular
inverses.  Every function here is a pure function of its inputs; shared
state is never mutated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    DegenerateCodeError,
    IncompatibleMatricesError,
    InputFormatError,
    InvalidArgumentError,
    InvalidSubsetError,
    ResourceLimitError,
)

DEFAULT_CODEWORD_CAP = 2 ** 24
MAX_MODULUS = 251


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldMatrix:
    """A generator matrix over GF(q), columns labelled 1..n.

    ``entries`` is stored row-major as a tuple of row tuples with residues
    in [0, q).  The modulus must be prime and at most 251; extension
    fields are rejected.
    """

    q: int
    entries: tuple[tuple[int, ...], ...]
    _columns: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False, default=()
    )
    _colwords: tuple[int, ...] = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or not 2 <= self.q <= MAX_MODULUS:
            raise InvalidArgumentError(f"modulus must be an integer in [2, {MAX_MODULUS}], got {self.q!r}")
        if not is_prime(self.q):
            raise InvalidArgumentError(f"modulus {self.q} is not prime; extension fields are unsupported")
        rows = tuple(tuple(int(e) for e in row) for row in self.entries)
        if not rows or not rows[0]:
            raise InvalidArgumentError("matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise InvalidArgumentError("rows have unequal lengths")
        for row in rows:
            for e in row:
                if not 0 <= e < self.q:
                    raise InvalidArgumentError(f"entry {e} out of range for GF({self.q})")
        object.__setattr__(self, "entries", rows)
        cols = tuple(tuple(row[j] for row in rows) for j in range(width))
        object.__setattr__(self, "_columns", cols)
        if self.q == 2:
            words = tuple(sum(bit << i for i, bit in enumerate(col)) for col in cols)
            object.__setattr__(self, "_colwords", words)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], q: int = 2) -> "FieldMatrix":
        return cls(q, tuple(tuple(r) for r in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def column(self, label: int) -> tuple[int, ...]:
        """Column vector for a 1-based column label."""
        if not 1 <= label <= self.cols:
            raise InvalidSubsetError(f"column {label} outside 1..{self.cols}")
        return self._columns[label - 1]

    def submatrix(self, labels: Iterable[int]) -> "FieldMatrix":
        """Matrix formed by the given columns, in sorted label order."""
        chosen = check_column_subset(labels, self.cols)
        if not chosen:
            raise InvalidArgumentError("submatrix needs at least one column")
        return FieldMatrix(self.q, tuple(tuple(row[j - 1] for j in chosen) for row in self.entries))


def check_column_subset(labels: Iterable[int], n: int) -> tuple[int, ...]:
    """Normalise a column subset to a sorted tuple, validating range."""
    out = sorted(set(int(x) for x in labels))
    for x in out:
        if not 1 <= x <= n:
            raise InvalidSubsetError(f"column {x} outside 1..{n}")
    return tuple(out)


def _rank_words_gf2(words: Iterable[int]) -> int:
    # Greedy XOR basis keyed by highest set bit.
    basis: dict[int, int] = {}
    rank = 0
    for w in words:
        while w:
            hi = w.bit_length() - 1
            b = basis.get(hi)
            if b is None:
                basis[hi] = w
                rank += 1
                break
            w |= b
    return rank


def _rank_vectors_modp(vectors: Iterable[Iterable[int]], q: int) -> int:
    # Echelon basis with pivot entries normalised to 1.
    basis: list[tuple[int, list[int]]] = []
    for vec in vectors:
        v = list(vec)
        for piv, b in basis:
            c = v[piv]
            if c:
                v = [(a - c * bb) % q for a, bb in zip(v, b)]
        piv = next((i for i, a in enumerate(v) if a), None)
        if piv is not None:
            inv = pow(v[piv], -1, q)
            basis.append((piv, [(a * inv) % q for a in v]))
    return len(basis)


def rank_of_columns(m: FieldMatrix, labels: Iterable[int]) -> int:
    """Rank over GF(q) of the submatrix formed by the given columns.

    Args:
        m: The matrix.
        labels: 1-based column labels; duplicates are ignored.

    Returns:
        The linear rank of the selected columns.  Deterministic; for q=2
        the columns are processed as bit-packed words.
    """
    chosen = check_column_subset(labels, m.cols)
    if m.q == 2:
        return _rank_words_gf2(m._colwords[j - 1] for j in chosen)
    return _rank_vectors_modp((m._columns[j - 1] for j in chosen), m.q)


def reduced_row_basis(m: FieldMatrix) -> tuple[tuple[int, ...], ...]:
    """Nonzero rows of the reduced row echelon form, sorted by pivot."""
    q = m.q
    basis: list[tuple[int, list[int]]] = []
    for row in m.entries:
        v = list(row)
        for piv, b in basis:
            c = v[piv]
            if c:
                v = [(a - c * bb) % q for a, bb in zip(v, b)]
        piv = next((j for j, a in enumerate(v) if a), None)
        if piv is None:
            continue
        inv = pow(v[piv], -1, q)
        v = [(a * inv) % q for a in v]
        for idx, (p2, b2) in enumerate(basis):
            c = b2[piv]
            if c:
                basis[idx] = (p2, [(a - c * vv) % q for a, vv in zip(b2, v)])
        basis.append((piv, v))
    basis.sort()
    return tuple(tuple(v) for _, v in basis)


def row_space_equal(a: FieldMatrix, b: FieldMatrix) -> bool:
    """Whether two matrices span the same row space (hence the same code)."""
    if a.q != b.q:
        raise IncompatibleMatricesError(f"moduli differ: {a.q} vs {b.q}")
    if a.cols != b.cols:
        raise IncompatibleMatricesError(f"column counts differ: {a.cols} vs {b.cols}")
    return reduced_row_basis(a) == reduced_row_basis(b)


def _iter_span(basis: tuple[tuple[int, ...], ...], q: int, width: int) -> Iterator[tuple[int, ...]]:
    for coeffs in itertools.product(range(q), repeat=len(basis)):
        word = [0] * width
        for c, row in zip(coeffs, basis):
            if c:
                for j, e in enumerate(row):
                    if e:
                        word[j] = (word[j] + c * e) % q
        yield tuple(word)


def enumerate_codewords(m: FieldMatrix, cap: int = DEFAULT_CODEWORD_CAP) -> Iterator[tuple[int, ...]]:
    """Yield every vector of the row space exactly once.

    Iterates all coefficient tuples over a reduced row basis, so the
    number of words is q**rank.  Raises ResourceLimitError if that
    exceeds ``cap``.
    """
    basis = reduced_row_basis(m)
    if m.q ** len(basis) > cap:
        raise ResourceLimitError(
            f"enumerating {m.q}^{len(basis)} codewords exceeds the cap of {cap}"
        )
    return _iter_span(basis, m.q, m.cols)


def min_distance_bruteforce(
    m: FieldMatrix,
    labels: Iterable[int] | None = None,
    cap: int = DEFAULT_CODEWORD_CAP,
) -> int:
    """Minimum Hamming weight of the code restricted to the given columns.

    Args:
        m: Generator matrix of the code.
        labels: Columns of the restriction; defaults to all columns.
        cap: Enumeration budget, compared against q**rank.

    Returns:
        min{wt(c) : c a nonzero codeword of the restricted code}.

    Raises:
        DegenerateCodeError: the restricted code is the zero code.
    """
    chosen = check_column_subset(labels, m.cols) if labels is not None else tuple(range(1, m.cols + 1))
    if not chosen:
        raise DegenerateCodeError("restriction to the empty column set is the zero code")
    sub = m.submatrix(chosen)
    basis = reduced_row_basis(sub)
    if not basis:
        raise DegenerateCodeError("restricted code is the zero code")
    if m.q ** len(basis) > cap:
        raise ResourceLimitError(
            f"enumerating {m.q}^{len(basis)} codewords exceeds the cap of {cap}"
        )
    best = len(chosen) + 1
    for coeffs in itertools.product(range(m.q), repeat=len(basis)):
        if not any(coeffs):
            continue
        weight = 0
        for j in range(len(chosen)):
            if sum(c * row[j] for c, row in zip(coeffs, basis)) % m.q:
                weight += 1
        if weight < best:
            best = weight
    return best


def parse_matrix(text: str) -> FieldMatrix:
    """Parse the plain matrix format: ``%`` comments, an optional leading
    ``q <prime>`` line, then one whitespace-separated row per line."""
    q = 2
    rows: list[list[int]] = []
    seen_row = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        toks = line.split()
        if toks[0] == "q":
            if seen_row:
                raise InputFormatError(f"line {lineno}: 'q' line must precede the rows")
            if len(toks) != 2:
                raise InputFormatError(f"line {lineno}: expected 'q <prime>'")
            try:
                q = int(toks[1])
            except ValueError:
                raise InputFormatError(f"line {lineno}: bad modulus {toks[1]!r}") from None
            continue
        try:
            rows.append([int(t) for t in toks])
        except ValueError:
            raise InputFormatError(f"line {lineno}: non-integer entry in {line!r}") from None
        seen_row = True
    if not rows:
        raise InputFormatError("no matrix rows found")
    try:
        return FieldMatrix(q, tuple(tuple(r) for r in rows))
    except InvalidArgumentError as exc:
        raise InputFormatError(str(exc)) from None


def format_matrix(m: FieldMatrix) -> str:
    """Canonical text form; ``parse_matrix`` round-trips it."""
    lines = [f"q {m.q}"]
    lines.extend(" ".join(str(e) for e in row) for row in m.entries)
    return "\n".join(lines) + "\n"
