"""Detection of uniform minors from the lattice of cyclic flats.

A minor is uniform exactly when its cyclic-flat lattice is the two-element
chain, which turns uniformity checks into conditions on the parent's
cyclic flats.  This module implements four certificate routes (covering
edges of the Hasse diagram, restriction-only, contraction-only, and the
combined restrict/contract criterion) plus the binary (GF(2)) excluded
minor test and the field-size scan for forbidden uniform minors.  Every
witness is re-validated against the actual minor before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidArgumentError, InvalidMinorSpecError
from .fields import is_prime
from .lattice import CyclicFlatLattice, LatticeEdge, enumerate_cyclic_flats
from .matroid import (
    BRUTE_FORCE_MAX_GROUND,
    CERT_COMBINED,
    CERT_CONTRACTION,
    CERT_EDGE,
    CERT_RESTRICTION,
    Matroid,
    UniformWitness,
    certified_witness,
    find_uniform_minor,
    uniform_contains,
)


def _lattice_of(m: Matroid, lattice: CyclicFlatLattice | None) -> CyclicFlatLattice:
    return lattice if lattice is not None else enumerate_cyclic_flats(m)


def edge_minor(
    m: Matroid,
    lower: Iterable[int],
    upper: Iterable[int],
    lattice: CyclicFlatLattice | None = None,
) -> UniformWitness:
    """Uniform minor certified by a covering edge X ⋖ Y of the lattice.

    Restricting to Y and contracting X leaves no cyclic flat strictly
    between bottom and top, so the minor is U(|Y−X|, Δrank).
    """
    lat = _lattice_of(m, lattice)
    edge = lat.cover_edge(lower, upper)
    return _witness_from_edge(m, edge)


def _witness_from_edge(m: Matroid, edge: LatticeEdge) -> UniformWitness:
    n2 = len(edge.upper.elements) - len(edge.lower.elements)
    return certified_witness(
        m, edge.upper.elements, edge.lower.elements, n2, edge.drank, CERT_EDGE
    )


def carve_witness_from_edge(m: Matroid, edge: LatticeEdge, n2: int, k2: int) -> UniformWitness:
    """Carve a U(n2, k2) witness out of the uniform minor an edge certifies.

    Inside U(a+b, a) with a = Δrank ≥ k2 and b = Δnullity ≥ n2−k2,
    contracting a−k2 elements and keeping n2 of the rest leaves U(n2, k2).
    """
    avail = sorted(set(edge.upper.elements) - set(edge.lower.elements))
    extra = avail[: edge.drank - k2]
    kept = avail[len(extra): len(extra) + n2]
    contract = tuple(sorted(set(edge.lower.elements) | set(extra)))
    restrict = tuple(sorted(set(contract) | set(kept)))
    return certified_witness(m, restrict, contract, n2, k2, CERT_EDGE)


def hasse_violations(
    m: Matroid, n2: int, k2: int, lattice: CyclicFlatLattice | None = None
) -> tuple[LatticeEdge, ...]:
    """Covering edges with Δrank ≥ k2 and Δnullity ≥ n2−k2.

    Each such edge certifies a U(n2, k2) minor; a matroid avoiding
    U(n2, k2) minors therefore has none of these edges.
    """
    if not (0 <= k2 <= n2):
        raise InvalidArgumentError(f"need 0 <= k <= n, got n={n2}, k={k2}")
    lat = _lattice_of(m, lattice)
    return tuple(
        edge
        for edge in lat.edges
        if uniform_contains(edge.drank + edge.dnullity, edge.drank, n2, k2)
    )


def restriction_uniform(
    m: Matroid, y: Iterable[int], lattice: CyclicFlatLattice | None = None
) -> UniformWitness | None:
    """Witness that the restriction to y is uniform, or None.

    After shrinking the ambient matroid to cl(y), where y has full rank,
    the restriction is uniform iff y is independent (free case) or y is a
    cyclic set and every cyclic flat of lower rank meets y independently.
    The answer agrees exactly with the direct uniformity check on the
    restriction.
    """
    ymask = m.mask_of(y)
    size = bin(ymask).count("1")
    ry = m._rank(ymask)
    if ry == size:
        return certified_witness(m, m.labels_of(ymask), (), size, size, CERT_RESTRICTION)
    cly = m._closure_mask(ymask)
    # Cheap rejection: the top of the shrunk lattice must be a cyclic flat.
    if m._cyc_mask(cly) != cly:
        return None
    if m._cyc_mask(ymask) != ymask:
        return None
    lat = _lattice_of(m, lattice)
    for node in lat.nodes:
        z = m.mask_of(node.elements)
        if z & ~cly:
            continue
        if node.rank >= ry:
            continue
        zy = z & ymask
        if m._rank(zy) != bin(zy).count("1"):
            return None
    return certified_witness(m, m.labels_of(ymask), (), size, ry, CERT_RESTRICTION)


def contraction_uniform(
    m: Matroid, x: Iterable[int], lattice: CyclicFlatLattice | None = None
) -> UniformWitness | None:
    """Witness that the contraction by x is uniform, or None.

    Contracting the cyclic part of x first leaves an independent set to
    contract; the result is uniform iff x spans (all-loops case) or x is
    a flat and joining x to any positive-rank cyclic flat of the shrunk
    matroid closes to everything.  Agrees exactly with the direct check.
    """
    xmask = m.mask_of(x)
    full = m._full
    n2 = m.size - bin(xmask).count("1")
    rx = m._rank(xmask)
    total = m._rank(full)
    if rx == total:
        return certified_witness(m, m.labels_of(full), m.labels_of(xmask), n2, 0, CERT_CONTRACTION)
    cx = m._cyc_mask(xmask)
    # Cheap rejection: the bottom of the shrunk lattice must be empty,
    # i.e. the cyclic part of x must itself be a cyclic flat.
    if m._closure_mask(cx) != cx:
        return None
    if m._closure_mask(xmask) != xmask:
        return None
    rcx = m._rank(cx)
    lat = _lattice_of(m, lattice)
    for node in lat.nodes:
        z = m.mask_of(node.elements)
        if cx & ~z:
            continue
        if node.rank <= rcx:
            continue
        if m._closure_mask(xmask | z) != full:
            return None
    return certified_witness(
        m, m.labels_of(full), m.labels_of(xmask), n2, total - rx, CERT_CONTRACTION
    )


def combined_uniform(
    m: Matroid,
    x: Iterable[int],
    y: Iterable[int],
    lattice: CyclicFlatLattice | None = None,
) -> UniformWitness | None:
    """Witness that restricting to y and contracting x leaves a uniform
    matroid, or None.

    The check runs in the interval between cyc(x) and cl(y): there y has
    full rank and the leftover part of x is independent.  The free and
    all-loops cases are answered directly; otherwise the minor is uniform
    iff cl(x) ∩ y = x, every element of y − x stays in cyc(y), and each
    cyclic flat of the interval either meets y independently or joins
    with x and the cyclic part of the intersection to close onto the
    whole interval.  Agrees exactly with the direct check on the minor.
    """
    ymask = m.mask_of(y)
    xmask = m.mask_of(x)
    if xmask & ~ymask:
        raise InvalidMinorSpecError("contract set must be contained in the restrict set")
    n2 = bin(ymask & ~xmask).count("1")
    ry = m._rank(ymask)
    rx = m._rank(xmask)
    cx = m._cyc_mask(xmask)
    rcx = m._rank(cx)
    restrict_labels = m.labels_of(ymask)
    contract_labels = m.labels_of(xmask)

    if ry - rcx == bin(ymask & ~cx).count("1"):
        # y minus the cyclic part of x is independent there: free minor.
        return certified_witness(m, restrict_labels, contract_labels, n2, n2, CERT_COMBINED)
    if rx == ry:
        # x already spans the restriction: everything left is a loop.
        return certified_witness(m, restrict_labels, contract_labels, n2, 0, CERT_COMBINED)

    if m._closure_mask(xmask) & ymask != xmask:
        return None
    if (ymask & ~xmask) & ~m._cyc_mask(ymask):
        return None
    cly = m._closure_mask(ymask)
    lat = _lattice_of(m, lattice)
    for node in lat.nodes:
        z = m.mask_of(node.elements)
        if cx & ~z or z & ~cly:
            continue
        zy = z & ymask
        if m._rank(zy) - rcx == bin(zy & ~cx).count("1"):
            continue
        if m._closure_mask(xmask | m._cyc_mask(zy)) & cly != cly:
            return None
    return certified_witness(m, restrict_labels, contract_labels, n2, ry - rx, CERT_COMBINED)


def tutte_binary_test(
    m: Matroid,
    lattice: CyclicFlatLattice | None = None,
    max_ground: int = BRUTE_FORCE_MAX_GROUND,
) -> tuple[bool, UniformWitness | None]:
    """Whether m is representable over GF(2): no U(4,2) minor.

    A Hasse edge with both differences ≥ 2 is a cheap non-binarity
    certificate; absent one, the exhaustive minor search decides.
    Returns (True, None) or (False, witness).
    """
    violations = hasse_violations(m, 4, 2, lattice)
    if violations:
        return False, carve_witness_from_edge(m, violations[0], 4, 2)
    witness = find_uniform_minor(m, 4, 2, max_ground=max_ground)
    return (witness is None), witness


def forbidden_uniform_ranks(q: int) -> tuple[int, ...]:
    """Ranks k for which U(q+2, k) rules out GF(q)-representability."""
    ks = {2, q}
    ks.update(range(4, q - 1))
    if q % 2 == 1:
        ks.update((3, q - 1))
    return tuple(sorted(ks))


@dataclass(frozen=True)
class FieldCheckReport:
    """Outcome of the forbidden-minor scan for GF(q).

    An empty witness list is a necessary condition only: the scan is
    conditional on the MDS conjecture (settled for prime q) and never
    certifies representability.
    """

    q: int
    checked: tuple[tuple[int, int], ...]
    witnesses: tuple[UniformWitness, ...]
    skipped_trivially: bool

    @property
    def clean(self) -> bool:
        return not self.witnesses


def field_necessary_check(
    m: Matroid,
    q: int,
    lattice: CyclicFlatLattice | None = None,
    max_ground: int = BRUTE_FORCE_MAX_GROUND,
) -> FieldCheckReport:
    """Scan for the uniform minors that forbid linearity over GF(q).

    Searches for U(q+2, k) minors over the applicable ranks k, trying a
    Hasse-edge certificate before the exhaustive search.  A ground set
    smaller than q+2 cannot host any of them, so the scan is skipped.
    """
    if not is_prime(q):
        raise InvalidArgumentError(f"field size {q} is not prime")
    n2 = q + 2
    if n2 > m.size:
        return FieldCheckReport(q, (), (), skipped_trivially=True)
    lat = _lattice_of(m, lattice)
    checked = []
    witnesses = []
    for k2 in forbidden_uniform_ranks(q):
        checked.append((n2, k2))
        edges = hasse_violations(m, n2, k2, lat)
        if edges:
            witnesses.append(carve_witness_from_edge(m, edges[0], n2, k2))
            continue
        w = find_uniform_minor(m, n2, k2, max_ground=max_ground)
        if w is not None:
            witnesses.append(w)
    return FieldCheckReport(q, tuple(checked), tuple(witnesses), skipped_trivially=False)


__all__ = [
    "edge_minor",
    "carve_witness_from_edge",
    "hasse_violations",
    "restriction_uniform",
    "contraction_uniform",
    "combined_uniform",
    "tutte_binary_test",
    "forbidden_uniform_ranks",
    "FieldCheckReport",
    "field_necessary_check",
    "UniformWitness",
    "uniform_contains",
]
