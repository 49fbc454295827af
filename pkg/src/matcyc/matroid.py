"""Matroids as memoized rank oracles.

A matroid is a ground set of 1-based labels plus a rank function obeying
boundedness, monotonicity and submodularity.  Four oracle sources are
supported: column spaces of a FieldMatrix, uniform matroids, explicit
rank tables, and basis lists.  Duals and minors wrap their parent's
oracle instead of materialising anything.

Subsets are bitmasks internally; the public API accepts any iterable of
labels and emits sorted tuples, so output order is deterministic.
"""

from __future__ import annotations

import itertools
from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import (
    InputFormatError,
    InvalidArgumentError,
    InvalidMinorSpecError,
    InvalidSubsetError,
    ResourceLimitError,
)
from .fields import FieldMatrix, _rank_vectors_modp, _rank_words_gf2

EXACT_MEMO_LIMIT = 16          # ground sets this small get an unbounded memo
MEMO_LRU_CAP = 2 ** 20
VALIDATED_ORACLE_LIMIT = 16    # rank tables / bases beyond this are rejected
BRUTE_FORCE_MAX_GROUND = 16

CERT_EDGE = "edge"
CERT_RESTRICTION = "restriction"
CERT_CONTRACTION = "contraction"
CERT_COMBINED = "combined"
CERT_BRUTE = "brute-force"


@dataclass(frozen=True)
class MinorSpec:
    """restrict_to ⊇ contract_by; the minor lives on their difference."""

    restrict_to: tuple[int, ...]
    contract_by: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "restrict_to", tuple(sorted(set(self.restrict_to))))
        object.__setattr__(self, "contract_by", tuple(sorted(set(self.contract_by))))
        if not set(self.contract_by) <= set(self.restrict_to):
            raise InvalidMinorSpecError(
                f"contract set {self.contract_by} not contained in restrict set {self.restrict_to}"
            )

    @property
    def ground(self) -> tuple[int, ...]:
        return tuple(x for x in self.restrict_to if x not in set(self.contract_by))


class Matroid:
    """Ground set plus memoized rank oracle.

    Instances are immutable apart from the rank memo, which is a
    transparent cache: any interleaving of queries returns exactly what
    the uncached oracle would.  Derived matroids (duals, minors) share
    the parent oracle read-only.
    """

    __slots__ = (
        "labels",
        "size",
        "kind",
        "provenance",
        "matrix",
        "_pos",
        "_full",
        "_rank_mask_fn",
        "_cache",
        "_lru",
    )

    def __init__(
        self,
        labels: tuple[int, ...],
        rank_mask_fn: Callable[[int], int],
        kind: str,
        provenance: str,
        matrix: FieldMatrix | None = None,
    ) -> None:
        self.labels = labels
        self.size = len(labels)
        self.kind = kind
        self.provenance = provenance
        self.matrix = matrix
        self._pos = {lab: i for i, lab in enumerate(labels)}
        self._full = (1 << self.size) - 1
        self._rank_mask_fn = rank_mask_fn
        self._lru = self.size > EXACT_MEMO_LIMIT
        self._cache: dict[int, int] = OrderedDict() if self._lru else {}

    # -- constructors ------------------------------------------------

    @classmethod
    def from_matrix(cls, matrix: FieldMatrix) -> "Matroid":
        """Matroid of the column space: rank(X) = rank of the columns X."""
        n = matrix.cols
        if matrix.q == 2:
            words = matrix._colwords

            def rank_mask(mask: int) -> int:
                sel = []
                i = 0
                while mask:
                    if mask & 1:
                        sel.append(words[i])
                    mask >>= 1
                    i += 1
                return _rank_words_gf2(sel)

        else:
            columns = matrix._columns
            q = matrix.q

            def rank_mask(mask: int) -> int:
                sel = []
                i = 0
                while mask:
                    if mask & 1:
                        sel.append(columns[i])
                    mask >>= 1
                    i += 1
                return _rank_vectors_modp(sel, q)

        prov = f"matrix GF({matrix.q}) {matrix.rows}x{matrix.cols}"
        return cls(tuple(range(1, n + 1)), rank_mask, "linear", prov, matrix=matrix)

    @classmethod
    def uniform(cls, n: int, k: int) -> "Matroid":
        """Uniform matroid: rank(X) = min(|X|, k)."""
        if not (isinstance(n, int) and isinstance(k, int) and 0 <= k <= n and n >= 0):
            raise InvalidArgumentError(f"uniform matroid needs 0 <= k <= n, got n={n}, k={k}")

        def rank_mask(mask: int) -> int:
            c = bin(mask).count("1")
            return c if c < k else k

        return cls(tuple(range(1, n + 1)), rank_mask, "uniform", f"uniform({n},{k})")

    @classmethod
    def from_rank_table(cls, n: int, table: Mapping[tuple[int, ...], int]) -> "Matroid":
        """Matroid from an explicit subset -> rank table.

        The table must cover all 2^n subsets and is validated against the
        rank axioms exhaustively; n > 16 is rejected.
        """
        if n > VALIDATED_ORACLE_LIMIT:
            raise ResourceLimitError(f"rank tables are only accepted up to n={VALIDATED_ORACLE_LIMIT}")
        if n < 1:
            raise InvalidArgumentError("ground set must be nonempty")
        ranks = [-1] * (1 << n)
        for key, value in table.items():
            mask = 0
            for lab in key:
                if not 1 <= int(lab) <= n:
                    raise InvalidSubsetError(f"element {lab} outside 1..{n}")
                mask |= 1 << (int(lab) - 1)
            ranks[mask] = int(value)
        if any(r < 0 for r in ranks):
            raise InvalidArgumentError(f"rank table is incomplete: needs all {1 << n} subsets")
        _validate_rank_axioms(n, ranks)
        return cls(tuple(range(1, n + 1)), ranks.__getitem__, "rank-table", f"rank-table(n={n})")

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        """Matroid from its list of bases; rank(X) = max |X ∩ B|.

        Equal cardinality is required, and the induced rank function is
        validated against the axioms exhaustively (n <= 16), which
        rejects families that fail basis exchange.
        """
        if n > VALIDATED_ORACLE_LIMIT:
            raise ResourceLimitError(f"basis lists are only accepted up to n={VALIDATED_ORACLE_LIMIT}")
        if n < 1:
            raise InvalidArgumentError("ground set must be nonempty")
        masks = []
        for basis in bases:
            mask = 0
            for lab in basis:
                if not 1 <= int(lab) <= n:
                    raise InvalidSubsetError(f"element {lab} outside 1..{n}")
                mask |= 1 << (int(lab) - 1)
            masks.append(mask)
        if not masks:
            raise InvalidArgumentError("at least one basis is required")
        card = bin(masks[0]).count("1")
        if any(bin(b).count("1") != card for b in masks):
            raise InvalidArgumentError("bases must all have the same cardinality")
        masks = sorted(set(masks))
        ranks = [max(bin(mask & b).count("1") for b in masks) for mask in range(1 << n)]
        _validate_rank_axioms(n, ranks)
        return cls(
            tuple(range(1, n + 1)),
            ranks.__getitem__,
            "bases",
            f"bases(n={n}, {len(masks)} bases)",
        )

    # -- mask plumbing -----------------------------------------------

    def mask_of(self, x: Iterable[int]) -> int:
        mask = 0
        for lab in x:
            pos = self._pos.get(lab)
            if pos is None:
                raise InvalidSubsetError(f"element {lab} not in ground set {self.labels}")
            mask |= 1 << pos
        return mask

    def labels_of(self, mask: int) -> tuple[int, ...]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.labels[i])
            mask >>= 1
            i += 1
        return tuple(out)

    def _rank(self, mask: int) -> int:
        cache = self._cache
        r = cache.get(mask)
        if r is None:
            r = self._rank_mask_fn(mask)
            if self._lru and len(cache) >= MEMO_LRU_CAP:
                cache.popitem(last=False)  # type: ignore[call-arg]
            cache[mask] = r
        elif self._lru:
            cache.move_to_end(mask)  # type: ignore[attr-defined]
        return r

    def _closure_mask(self, mask: int) -> int:
        r = self._rank(mask)
        out = mask
        rest = self._full & ~mask
        while rest:
            bit = rest & -rest
            if self._rank(mask | bit) == r:
                out |= bit
            rest ^= bit
        return out

    def _cyc_mask(self, mask: int) -> int:
        r = self._rank(mask)
        out = mask
        rest = mask
        while rest:
            bit = rest & -rest
            if self._rank(mask ^ bit) != r:
                out ^= bit
            rest ^= bit
        return out

    # -- rank-function interface --------------------------------------

    def rank(self, x: Iterable[int]) -> int:
        return self._rank(self.mask_of(x))

    def nullity(self, x: Iterable[int]) -> int:
        mask = self.mask_of(x)
        return bin(mask).count("1") - self._rank(mask)

    @property
    def full_rank(self) -> int:
        return self._rank(self._full)

    def is_independent(self, x: Iterable[int]) -> bool:
        mask = self.mask_of(x)
        return self._rank(mask) == bin(mask).count("1")

    def closure(self, x: Iterable[int]) -> tuple[int, ...]:
        """x plus every element whose addition keeps the rank."""
        return self.labels_of(self._closure_mask(self.mask_of(x)))

    def cyc(self, x: Iterable[int]) -> tuple[int, ...]:
        """The elements of x whose removal keeps the rank."""
        return self.labels_of(self._cyc_mask(self.mask_of(x)))

    def is_flat(self, x: Iterable[int]) -> bool:
        mask = self.mask_of(x)
        return self._closure_mask(mask) == mask

    def is_cyclic_set(self, x: Iterable[int]) -> bool:
        mask = self.mask_of(x)
        return self._cyc_mask(mask) == mask

    def is_cyclic_flat(self, x: Iterable[int]) -> bool:
        mask = self.mask_of(x)
        return self._cyc_mask(mask) == mask and self._closure_mask(mask) == mask

    # -- derived matroids ----------------------------------------------

    def dual(self) -> "Matroid":
        """Matroid with rank*(A) = |A| + rank(E−A) − rank(E)."""
        parent = self
        full = self._full
        total = self._rank(full)

        def rank_mask(mask: int) -> int:
            return bin(mask).count("1") + parent._rank(full & ~mask) - total

        return Matroid(self.labels, rank_mask, "dual", f"dual of {self.provenance}")

    def minor(
        self,
        restrict_to: Iterable[int] | None = None,
        contract_by: Iterable[int] = (),
    ) -> "Matroid":
        """Restrict to ``restrict_to`` then contract ``contract_by``.

        The two operations commute; the result lives on their difference
        with rank(A) = rank(A ∪ contract) − rank(contract).
        """
        y = self.labels if restrict_to is None else tuple(restrict_to)
        ymask = self.mask_of(y)
        xmask = self.mask_of(contract_by)
        if xmask & ~ymask:
            raise InvalidMinorSpecError("contract set must be contained in the restrict set")
        parent = self
        ground = self.labels_of(ymask & ~xmask)
        bitmap = [1 << self._pos[lab] for lab in ground]
        base = parent._rank(xmask)

        def rank_mask(mask: int) -> int:
            pm = xmask
            i = 0
            while mask:
                if mask & 1:
                    pm |= bitmap[i]
                mask >>= 1
                i += 1
            return parent._rank(pm) - base

        prov = (
            f"minor restrict={self.labels_of(ymask)} contract={self.labels_of(xmask)}"
            f" of {self.provenance}"
        )
        return Matroid(ground, rank_mask, "minor", prov)

    def restrict(self, y: Iterable[int]) -> "Matroid":
        return self.minor(restrict_to=y)

    def contract(self, x: Iterable[int]) -> "Matroid":
        return self.minor(contract_by=x)

    def apply(self, spec: MinorSpec) -> "Matroid":
        return self.minor(spec.restrict_to, spec.contract_by)

    def __repr__(self) -> str:
        return f"Matroid({self.provenance}, n={self.size})"


def _validate_rank_axioms(n: int, ranks: list[int]) -> None:
    # Local checks suffice: boundedness everywhere, unit monotone steps,
    # and submodularity on pairs of single-element extensions imply the
    # full axioms.
    if ranks[0] != 0:
        raise InvalidArgumentError("rank of the empty set must be 0")
    bits = [1 << i for i in range(n)]
    for mask in range(1 << n):
        r = ranks[mask]
        if not 0 <= r <= bin(mask).count("1"):
            raise InvalidArgumentError(f"rank {r} out of bounds for subset mask {mask:#x}")
        outside = [b for b in bits if not mask & b]
        for a in outside:
            ra = ranks[mask | a]
            if ra < r or ra > r + 1:
                raise InvalidArgumentError("rank function is not monotone with unit steps")
        for ai in range(len(outside)):
            a = outside[ai]
            ra = ranks[mask | a]
            for b in outside[ai + 1:]:
                if ra + ranks[mask | b] < ranks[mask | a | b] + r:
                    raise InvalidArgumentError("rank function is not submodular")


# -- uniformity ------------------------------------------------------


def uniform_parameters(m: Matroid) -> tuple[int, int] | None:
    """(n, k) if m is the uniform matroid on its ground set, else None.

    Checks rank(X) = min(|X|, k) with k = rank(E) on every subset of size
    at most k+1; larger subsets are forced by monotonicity.
    """
    n = m.size
    if m.kind == "uniform":
        return (n, m._rank(m._full))
    k = m._rank(m._full)
    positions = range(n)
    for size in range(min(k + 1, n) + 1):
        want = size if size < k else k
        for combo in itertools.combinations(positions, size):
            mask = 0
            for p in combo:
                mask |= 1 << p
            if m._rank(mask) != want:
                return None
    return (n, k)


@dataclass(frozen=True)
class UniformWitness:
    """A certified uniform minor: restrict/contract sets and parameters.

    ``certificate`` records which detection route produced it.
    """

    restrict_to: tuple[int, ...]
    contract_by: tuple[int, ...]
    n: int
    k: int
    certificate: str

    def minor_of(self, m: Matroid) -> Matroid:
        return m.minor(self.restrict_to, self.contract_by)


def certified_witness(
    m: Matroid,
    restrict_to: Iterable[int],
    contract_by: Iterable[int],
    n: int,
    k: int,
    certificate: str,
) -> UniformWitness:
    """Build a witness and re-validate it against the actual minor.

    Fails closed: a witness that does not survive the direct uniformity
    check raises instead of being surfaced.
    """
    w = UniformWitness(
        tuple(sorted(set(restrict_to))), tuple(sorted(set(contract_by))), n, k, certificate
    )
    got = uniform_parameters(w.minor_of(m))
    if got != (n, k):
        raise AssertionError(
            f"witness validation failed: claimed U({n},{k}) via {certificate}, minor gives {got}"
        )
    return w


def _minor_uniform_params_match(m: Matroid, ymask: int, xmask: int, n2: int, k2: int) -> bool:
    rx = m._rank(xmask)
    free = []
    rest = ymask & ~xmask
    while rest:
        bit = rest & -rest
        free.append(bit)
        rest ^= bit
    for size in range(min(k2 + 1, n2) + 1):
        want = size if size < k2 else k2
        for combo in itertools.combinations(free, size):
            pm = xmask
            for bit in combo:
                pm |= bit
            if m._rank(pm) - rx != want:
                return False
    return True


def find_uniform_minor(
    m: Matroid, n2: int, k2: int, max_ground: int = BRUTE_FORCE_MAX_GROUND
) -> UniformWitness | None:
    """Exhaustive search for a U(n2, k2) minor; the ground-truth oracle.

    Pairs (restrict, contract) are scanned with |restrict| ascending and
    lexicographic tie-breaking, so the first witness found is minimal in
    that documented order.
    """
    if not (0 <= k2 <= n2):
        raise InvalidArgumentError(f"need 0 <= k <= n, got n={n2}, k={k2}")
    if m.size > max_ground:
        raise ResourceLimitError(
            f"brute-force minor search limited to ground sets of size {max_ground}"
        )
    if n2 > m.size:
        return None
    positions = list(range(m.size))
    for ysize in range(n2, m.size + 1):
        xsize = ysize - n2
        for ycombo in itertools.combinations(positions, ysize):
            ymask = 0
            for p in ycombo:
                ymask |= 1 << p
            ry = m._rank(ymask)
            if ry < k2:
                continue
            for xcombo in itertools.combinations(ycombo, xsize):
                xmask = 0
                for p in xcombo:
                    xmask |= 1 << p
                if ry - m._rank(xmask) != k2:
                    continue
                if _minor_uniform_params_match(m, ymask, xmask, n2, k2):
                    return UniformWitness(
                        m.labels_of(ymask), m.labels_of(xmask), n2, k2, CERT_BRUTE
                    )
    return None


def uniform_contains(n: int, k: int, sub_n: int, sub_k: int) -> bool:
    """Whether U(sub_n, sub_k) occurs as a minor of U(n, k).

    Contracting i elements and deleting j leaves U(n-i-j, max(0, k-i)),
    so exactly the pairs with sub_k <= k and sub_n - sub_k <= n - k are
    reachable.
    """
    if not (0 <= k <= n and 0 <= sub_k <= sub_n):
        raise InvalidArgumentError("parameters must satisfy 0 <= k <= n and 0 <= k' <= n'")
    return sub_k <= k and sub_n - sub_k <= n - k


# -- text formats ----------------------------------------------------


def parse_uniform_spec(text: str) -> Matroid:
    """Parse ``uniform <n> <k>``."""
    toks = [t for line in text.splitlines() for t in line.split() if not line.strip().startswith("%")]
    if len(toks) != 3 or toks[0] != "uniform":
        raise InputFormatError("expected 'uniform <n> <k>'")
    try:
        n, k = int(toks[1]), int(toks[2])
    except ValueError:
        raise InputFormatError("uniform parameters must be integers") from None
    try:
        return Matroid.uniform(n, k)
    except InvalidArgumentError as exc:
        raise InputFormatError(str(exc)) from None


def _parse_label_list(tok: str) -> tuple[int, ...]:
    tok = tok.strip()
    if tok in ("-", "{}", ""):
        return ()
    try:
        return tuple(int(t) for t in tok.split(","))
    except ValueError:
        raise InputFormatError(f"bad element list {tok!r}") from None


def parse_rank_table(text: str) -> Matroid:
    """Parse ``n <size>`` then lines ``<subset or -> -> <rank>``."""
    n = None
    table: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        toks = line.split()
        if toks[0] == "n":
            if len(toks) != 2:
                raise InputFormatError(f"line {lineno}: expected 'n <size>'")
            n = int(toks[1])
            continue
        if len(toks) != 3 or toks[1] != "->":
            raise InputFormatError(f"line {lineno}: expected '<subset> -> <rank>'")
        try:
            rank = int(toks[2])
        except ValueError:
            raise InputFormatError(f"line {lineno}: bad rank {toks[2]!r}") from None
        table[_parse_label_list(toks[0])] = rank
    if n is None:
        raise InputFormatError("missing 'n <size>' header")
    try:
        return Matroid.from_rank_table(n, table)
    except (InvalidArgumentError, InvalidSubsetError) as exc:
        raise InputFormatError(str(exc)) from None


def parse_bases(text: str) -> Matroid:
    """Parse ``n <size>`` then one comma-separated basis per line."""
    n = None
    bases: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        toks = line.split()
        if toks[0] == "n":
            if len(toks) != 2:
                raise InputFormatError(f"line {lineno}: expected 'n <size>'")
            n = int(toks[1])
            continue
        if len(toks) != 1:
            raise InputFormatError(f"line {lineno}: expected one comma-separated basis")
        bases.append(_parse_label_list(toks[0]))
    if n is None:
        raise InputFormatError("missing 'n <size>' header")
    try:
        return Matroid.from_bases(n, bases)
    except (InvalidArgumentError, InvalidSubsetError) as exc:
        raise InputFormatError(str(exc)) from None
