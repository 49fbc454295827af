"""Storage-code semantics on top of the matroid layer.

Non-degeneracy, global and punctured minimum distance read off the
lattice of cyclic flats, locality discovery for (r, δ) repair, the
structural checks satisfied by binary locally repairable codes, and the
MDS test.  All distances computed here are exact lattice quantities;
``fields.min_distance_bruteforce`` stays available as the independent
oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import (
    DegenerateCodeError,
    InapplicableTheoremError,
    InvalidArgumentError,
    InvalidSubsetError,
    NoLocalityError,
)
from .fields import min_distance_bruteforce
from .lattice import (
    EDGE_NULLITY,
    CyclicFlatLattice,
    classify_edge,
    enumerate_cyclic_flats,
)
from .matroid import Matroid, uniform_parameters
from .detect import tutte_binary_test


def _lattice_of(m: Matroid, lattice: CyclicFlatLattice | None) -> CyclicFlatLattice:
    return lattice if lattice is not None else enumerate_cyclic_flats(m)


def is_nondegenerate(m: Matroid, x: Iterable[int] | None = None) -> bool:
    """Whether the restriction to x is a non-degenerate storage code.

    True iff the cyclic-flat lattice of the restriction has top x and
    bottom ∅, i.e. x is a cyclic set and contains no loops.
    """
    xmask = m._full if x is None else m.mask_of(x)
    if xmask == 0:
        raise InvalidSubsetError("non-degeneracy is about nonempty coordinate sets")
    if m._cyc_mask(xmask) != xmask:
        return False
    rest = xmask
    while rest:
        bit = rest & -rest
        if m._rank(bit) == 0:
            return False
        rest ^= bit
    return True


def _restricted_zmasks(m: Matroid, ymask: int, zmasks: Iterable[int]) -> set[int]:
    # Cyclic flats of the restriction: cyc(Z ∩ Y) over parent flats Z.
    return {m._cyc_mask(z & ymask) for z in zmasks}


def _restricted_distance(m: Matroid, ymask: int, zmasks: list[int]) -> int | None:
    """Distance of the restriction to ymask, or None if degenerate."""
    if ymask == 0 or m._cyc_mask(ymask) != ymask:
        return None
    rest = ymask
    while rest:
        bit = rest & -rest
        if m._rank(bit) == 0:
            return None
        rest ^= bit
    if ymask in set(zmasks):
        sub = [z for z in zmasks if z & ~ymask == 0]
    else:
        sub = list(_restricted_zmasks(m, ymask, zmasks))
    eta_y = bin(ymask).count("1") - m._rank(ymask)
    worst = max(
        bin(z).count("1") - m._rank(z) for z in sub if z != ymask
    )
    return eta_y + 1 - worst


def global_distance(m: Matroid, lattice: CyclicFlatLattice | None = None) -> int:
    """Minimum distance: nullity(E) + 1 − max nullity over proper cyclic flats."""
    if not is_nondegenerate(m):
        raise DegenerateCodeError(
            "matroid is a degenerate storage code (loops or non-cyclic ground set)"
        )
    lat = _lattice_of(m, lattice)
    top_nullity = lat.top.nullity
    worst = max(node.nullity for node in lat.nodes if node != lat.top)
    return top_nullity + 1 - worst


def punctured_params(
    m: Matroid, x: Iterable[int], lattice: CyclicFlatLattice | None = None
) -> tuple[int, int]:
    """(dimension, distance) of the restriction to x.

    The dimension is the rank of the restriction's top cyclic flat and
    the distance comes from the nullity gap to the runner-up.
    """
    xmask = m.mask_of(x)
    if xmask == 0:
        raise InvalidSubsetError("cannot puncture to the empty coordinate set")
    lat = _lattice_of(m, lattice)
    zmasks = [m.mask_of(node.elements) for node in lat.nodes]
    d = _restricted_distance(m, xmask, zmasks)
    if d is None:
        raise DegenerateCodeError(f"restriction to {m.labels_of(xmask)} is degenerate")
    return m._rank(xmask), d


def s_value(m: Matroid, x: Iterable[int], lattice: CyclicFlatLattice | None = None) -> int:
    """|x| − d_x + 1 for a cyclic flat x; the locality cost of using x.

    Cross-checked against the equivalent lattice form rank(x) + the
    largest nullity strictly below x.
    """
    xmask = m.mask_of(x)
    lat = _lattice_of(m, lattice)
    if not lat.has_node(m.labels_of(xmask)):
        raise InvalidArgumentError(f"{m.labels_of(xmask)} is not a cyclic flat")
    if xmask == 0:
        raise InvalidArgumentError("the empty cyclic flat has no repair semantics")
    zmasks = [m.mask_of(node.elements) for node in lat.nodes]
    d = _restricted_distance(m, xmask, zmasks)
    if d is None:
        raise DegenerateCodeError(f"restriction to {m.labels_of(xmask)} is degenerate")
    s = bin(xmask).count("1") - d + 1
    below = max(
        node.nullity
        for node, z in zip(lat.nodes, zmasks)
        if z != xmask and z & ~xmask == 0
    )
    assert s == m._rank(xmask) + below, "the two locality-cost formulas disagree"
    return s


@dataclass(frozen=True)
class ElementLocality:
    element: int
    r: int
    repair_set: tuple[int, ...]


def locality_of_element(
    m: Matroid, element: int, delta: int, lattice: CyclicFlatLattice | None = None
) -> ElementLocality:
    """Best locality r for one coordinate at the requested delta.

    The closure of any valid repair set is a cyclic flat whose local
    distance is no smaller, so the cyclic flats through the element
    decide existence and bound the answer.  The exact minimum is then a
    lexicographic scan of repair sets by increasing size up to that
    bound (the closure can cost strictly more than what it closed, so
    flats alone do not determine the minimum).  The reported repair set
    is the lexicographically first one of the optimal size.
    """
    if delta < 2:
        raise InvalidArgumentError("delta must be at least 2")
    if element not in m._pos:
        raise InvalidSubsetError(f"element {element} not in ground set")
    if not is_nondegenerate(m):
        raise DegenerateCodeError("locality is defined for non-degenerate storage codes")
    lat = _lattice_of(m, lattice)
    zmasks = [m.mask_of(node.elements) for node in lat.nodes]
    ebit = 1 << m._pos[element]

    bound: int | None = None
    for node, z in zip(lat.nodes, zmasks):
        if not z & ebit:
            continue
        d = _restricted_distance(m, z, zmasks)
        if d is None or d < delta:
            continue
        s = bin(z).count("1") - d + 1
        if bound is None or s < bound:
            bound = s
    if bound is None:
        raise NoLocalityError(
            f"no repair set for element {element} reaches local distance {delta}"
        )

    others = [lab for lab in m.labels if lab != element]
    for size in range(delta, bound + delta):
        for combo in combinations(others, size - 1):
            rmask = ebit
            for lab in combo:
                rmask |= 1 << m._pos[lab]
            d = _restricted_distance(m, rmask, zmasks)
            if d is not None and d >= delta:
                return ElementLocality(element, size - delta + 1, m.labels_of(rmask))
    raise AssertionError("cyclic-flat bound produced no repair set within its size")


@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    counterexamples: tuple[str, ...] = ()


@dataclass(frozen=True)
class BinaryStructureResult:
    """Verdicts for the lattice conditions a binary LRC must satisfy."""

    applicable: bool
    reason: str | None
    d: int | None
    conditions: tuple[ConditionResult, ...]

    @property
    def passed(self) -> bool:
        return self.applicable and all(c.passed for c in self.conditions)


@dataclass
class LrcReport:
    """Code parameters, per-coordinate localities and the verify verdict."""

    n: int
    k: int
    d: int | None
    delta: int
    r: int
    nondegenerate: bool
    localities: tuple[ElementLocality, ...]
    failing: tuple[int, ...]
    achieved_r: int | None
    binary_structure: BinaryStructureResult | None = None

    @property
    def passed(self) -> bool:
        return self.nondegenerate and not self.failing

    def locality_of(self, element: int) -> ElementLocality | None:
        for loc in self.localities:
            if loc.element == element:
                return loc
        return None


def locality_profile(
    m: Matroid, lattice: CyclicFlatLattice | None = None
) -> tuple[tuple[int, int], ...]:
    """Best achievable r for every delta from 2 up to the distance.

    Delta is fixed per query in the locality definition; this loops it to
    give the (delta, r) trade-off curve.
    """
    if not is_nondegenerate(m):
        raise DegenerateCodeError("locality is defined for non-degenerate storage codes")
    lat = _lattice_of(m, lattice)
    d = global_distance(m, lat)
    profile = []
    for delta in range(2, d + 1):
        worst = 0
        for element in m.labels:
            worst = max(worst, locality_of_element(m, element, delta, lat).r)
        profile.append((delta, worst))
    return tuple(profile)


def verify_lrc(
    m: Matroid, r: int, delta: int, lattice: CyclicFlatLattice | None = None
) -> LrcReport:
    """Check that every coordinate has locality (r, delta).

    Failures are report content, not errors: degenerate inputs and
    coordinates with no or too-weak repair sets appear in ``failing``.
    """
    if r < 1:
        raise InvalidArgumentError("r must be at least 1")
    if delta < 2:
        raise InvalidArgumentError("delta must be at least 2")
    n = m.size
    k = m.full_rank
    if not is_nondegenerate(m):
        return LrcReport(
            n, k, None, delta, r,
            nondegenerate=False, localities=(), failing=m.labels, achieved_r=None,
        )
    lat = _lattice_of(m, lattice)
    d = global_distance(m, lat)
    localities = []
    failing = []
    achieved = 0
    for element in m.labels:
        try:
            loc = locality_of_element(m, element, delta, lat)
        except NoLocalityError:
            failing.append(element)
            continue
        localities.append(loc)
        achieved = max(achieved, loc.r)
        if loc.r > r:
            failing.append(element)
    return LrcReport(
        n, k, d, delta, r,
        nondegenerate=True,
        localities=tuple(localities),
        failing=tuple(sorted(failing)),
        achieved_r=achieved if len(localities) == n else None,
    )


def binary_structure_check(
    m: Matroid, r: int, delta: int, lattice: CyclicFlatLattice | None = None
) -> BinaryStructureResult:
    """Evaluate the lattice conditions binary (r, delta) LRCs satisfy.

    Needs a binary matroid and distance d > 2; with d <= 2 the result is
    flagged not applicable instead of failing.  Conditions: bottom/top
    cyclic flats are ∅ and E; every top edge is a nullity edge labelled
    at least d−1; and each element sits in a cyclic flat that is small in
    rank (delta = 2) or whose lower covers are all nullity edges labelled
    at least delta−1 with covered ranks at most r−2 (delta > 2).
    """
    if delta < 2:
        raise InvalidArgumentError("delta must be at least 2")
    binary = m.kind == "linear" and m.matrix is not None and m.matrix.q == 2
    lat = _lattice_of(m, lattice)
    if not binary:
        ok, witness = tutte_binary_test(m, lat)
        if not ok:
            raise InapplicableTheoremError(
                f"matroid is not binary: U(4,2) minor at restrict={witness.restrict_to} "
                f"contract={witness.contract_by}"
            )
    d = global_distance(m, lat)
    if d <= 2:
        return BinaryStructureResult(
            applicable=False,
            reason=f"requires distance > 2, but d = {d}",
            d=d,
            conditions=(),
        )

    conditions = []

    bottom_ok = lat.bottom.elements == ()
    top_ok = lat.top.elements == m.labels
    bad = []
    if not bottom_ok:
        bad.append(f"bottom is {lat.bottom.set_str()}")
    if not top_ok:
        bad.append(f"top is {lat.top.set_str()}")
    conditions.append(ConditionResult("bottom and top are {} and the ground set", not bad, tuple(bad)))

    bad = []
    for edge in lat.lower_covers(lat.top):
        label = classify_edge(edge)
        if label.kind != EDGE_NULLITY or label.dnullity < d - 1:
            bad.append(f"{edge.lower.set_str()} -> top has (Δρ,Δη)=({edge.drank},{edge.dnullity})")
    conditions.append(
        ConditionResult(f"top edges are nullity edges labelled >= {d - 1}", not bad, tuple(bad))
    )

    if delta == 2:
        bad = []
        for element in m.labels:
            if not any(element in node.elements and node.rank <= r for node in lat.nodes):
                bad.append(f"element {element} lies in no cyclic flat of rank <= {r}")
        conditions.append(
            ConditionResult(f"every element lies in a cyclic flat of rank <= {r}", not bad, tuple(bad))
        )
    else:
        bad = []
        for element in m.labels:
            found = False
            for node in lat.nodes:
                if element not in node.elements:
                    continue
                covers = lat.lower_covers(node)
                if not covers:
                    continue
                good = True
                for edge in covers:
                    label = classify_edge(edge)
                    if label.kind != EDGE_NULLITY or label.dnullity < delta - 1:
                        good = False
                        break
                    if edge.lower.rank > r - 2:
                        good = False
                        break
                if good:
                    found = True
                    break
            if not found:
                bad.append(f"element {element} has no qualifying cyclic flat")
        conditions.append(
            ConditionResult(
                f"every element lies in a cyclic flat whose lower covers are nullity"
                f" edges labelled >= {delta - 1} with covered ranks <= {r - 2}",
                not bad,
                tuple(bad),
            )
        )

    return BinaryStructureResult(applicable=True, reason=None, d=d, conditions=tuple(conditions))


def mds_check(m: Matroid) -> bool:
    """Whether m is the matroid of an MDS code with 0 < k < n.

    For matroids built from a matrix, the claimed distance n − k + 1 is
    cross-checked by exhaustive codeword enumeration.
    """
    params = uniform_parameters(m)
    if params is None:
        return False
    n, k = params
    if not 0 < k < n:
        return False
    if m.kind == "linear" and m.matrix is not None:
        assert min_distance_bruteforce(m.matrix) == n - k + 1, "MDS distance cross-check failed"
    return True
