"""The lattice of cyclic flats.

Enumerates all cyclic flats of a matroid, builds the Hasse diagram of
their inclusion order with (Δrank, Δnullity) edge data, classifies edges
into the rank / nullity / elementary / mixed taxonomy, computes cyclic
flats of minors without rebuilding the minor, and canonicalises the
labelled lattice shape ("configuration") for isomorphism comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    InvalidArgumentError,
    InvalidEdgeError,
    InvalidMinorSpecError,
    ResourceLimitError,
)
from .matroid import Matroid

LINEAR_GF2_ENUM_LIMIT = 20
GENERAL_ENUM_LIMIT = 16
CONFIG_NODE_LIMIT = 24
_CONFIG_ORDERING_LIMIT = 2_000_000

EDGE_RANK = "rank"
EDGE_NULLITY = "nullity"
EDGE_ELEMENTARY = "elementary"
EDGE_MIXED = "mixed"


@dataclass(frozen=True)
class LatticeNode:
    elements: tuple[int, ...]
    rank: int

    @property
    def nullity(self) -> int:
        return len(self.elements) - self.rank

    def set_str(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"


@dataclass(frozen=True)
class LatticeEdge:
    lower: LatticeNode
    upper: LatticeNode

    @property
    def drank(self) -> int:
        return self.upper.rank - self.lower.rank

    @property
    def dnullity(self) -> int:
        return self.upper.nullity - self.lower.nullity


@dataclass(frozen=True)
class EdgeLabel:
    """Taxonomy of a covering edge by its (Δrank, Δnullity) pair.

    rank: Δrank = l > 1 with Δnullity = 1; nullity: Δnullity = l > 1 with
    Δrank = 1; elementary: both 1; mixed: both > 1 (never occurs for
    binary matroids).
    """

    kind: str
    drank: int
    dnullity: int

    @property
    def amount(self) -> int:
        return self.drank if self.kind == EDGE_RANK else self.dnullity

    def dot_label(self) -> str:
        if self.kind == EDGE_RANK:
            return f"ρ={self.drank}"
        if self.kind == EDGE_NULLITY:
            return f"η={self.dnullity}"
        if self.kind == EDGE_MIXED:
            return f"ρ={self.drank},η={self.dnullity}"
        return ""


def classify_edge(edge: LatticeEdge) -> EdgeLabel:
    dr, dn = edge.drank, edge.dnullity
    if dr > 1 and dn == 1:
        kind = EDGE_RANK
    elif dn > 1 and dr == 1:
        kind = EDGE_NULLITY
    elif dr == 1 and dn == 1:
        kind = EDGE_ELEMENTARY
    else:
        kind = EDGE_MIXED
    return EdgeLabel(kind, dr, dn)


class CyclicFlatLattice:
    """Cyclic flats of a matroid under inclusion, with covering edges.

    Nodes are ordered by (rank, size, elements) and edges by (lower,
    upper) in that node order, so all derived output is deterministic.
    """

    def __init__(self, matroid: Matroid, nodes: tuple[LatticeNode, ...], edges: tuple[LatticeEdge, ...],
                 bottom: LatticeNode, top: LatticeNode) -> None:
        self.matroid = matroid
        self.nodes = nodes
        self.edges = edges
        self.bottom = bottom
        self.top = top
        self._by_elements = {node.elements: node for node in nodes}

    def __len__(self) -> int:
        return len(self.nodes)

    def has_node(self, elements: Iterable[int]) -> bool:
        return tuple(sorted(elements)) in self._by_elements

    def node(self, elements: Iterable[int]) -> LatticeNode:
        key = tuple(sorted(elements))
        node = self._by_elements.get(key)
        if node is None:
            raise InvalidArgumentError(f"{key} is not a cyclic flat of {self.matroid.provenance}")
        return node

    def cover_edge(self, lower: Iterable[int], upper: Iterable[int]) -> LatticeEdge:
        lo = tuple(sorted(lower))
        up = tuple(sorted(upper))
        for edge in self.edges:
            if edge.lower.elements == lo and edge.upper.elements == up:
                return edge
        raise InvalidEdgeError(f"{lo} is not covered by {up} in the cyclic-flat lattice")

    def lower_covers(self, node: LatticeNode) -> tuple[LatticeEdge, ...]:
        return tuple(e for e in self.edges if e.upper == node)

    def upper_covers(self, node: LatticeNode) -> tuple[LatticeEdge, ...]:
        return tuple(e for e in self.edges if e.lower == node)

    def node_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(node.elements for node in self.nodes)


def _flat_masks(m: Matroid, threshold: int) -> set[int] | None:
    """All flats by closure-driven BFS, or None once ``threshold`` is hit."""
    bottom = m._closure_mask(0)
    flats = {bottom}
    frontier = [bottom]
    full = m._full
    while frontier:
        nxt = []
        for f in frontier:
            rest = full & ~f
            while rest:
                bit = rest & -rest
                rest ^= bit
                g = m._closure_mask(f | bit)
                if g not in flats:
                    flats.add(g)
                    nxt.append(g)
                    if len(flats) > threshold:
                        return None
        frontier = nxt
    return flats


def enumerate_flats(m: Matroid, max_ground: int | None = None) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All flats with their ranks, ordered by (rank, size, elements)."""
    _check_enum_budget(m, max_ground)
    flats = _flat_masks(m, 1 << m.size)
    assert flats is not None
    out = sorted(
        (m._rank(f), bin(f).count("1"), m.labels_of(f)) for f in flats
    )
    return tuple((labels, rank) for rank, _, labels in out)


def _check_enum_budget(m: Matroid, max_ground: int | None) -> None:
    if max_ground is None:
        max_ground = LINEAR_GF2_ENUM_LIMIT if (
            m.kind == "linear" and m.matrix is not None and m.matrix.q == 2
        ) else GENERAL_ENUM_LIMIT
    if m.size > max_ground:
        raise ResourceLimitError(
            f"cyclic-flat enumeration limited to ground sets of size {max_ground}, got {m.size}"
        )


def enumerate_cyclic_flats(m: Matroid, max_ground: int | None = None) -> CyclicFlatLattice:
    """Build the full lattice of cyclic flats of ``m``.

    Flats are generated bottom-up by repeatedly closing F ∪ {e}; cyclic
    ones are kept.  If the flat count exceeds 2^n / 4 the generation is
    abandoned for an exhaustive scan of all subsets, which keeps the
    worst case bounded without a correctness assumption.
    """
    _check_enum_budget(m, max_ground)
    full = m._full
    flats = _flat_masks(m, max((1 << m.size) // 4, 4))
    if flats is None:
        cf_masks = [
            mask
            for mask in range(full + 1)
            if m._cyc_mask(mask) == mask and m._closure_mask(mask) == mask
        ]
    else:
        cf_masks = [f for f in flats if m._cyc_mask(f) == f]

    decorated = sorted(
        (m._rank(mask), bin(mask).count("1"), m.labels_of(mask), mask) for mask in cf_masks
    )
    nodes = tuple(LatticeNode(labels, rank) for rank, _, labels, _ in decorated)
    masks = [mask for _, _, _, mask in decorated]

    edges = []
    for j, upper_mask in enumerate(masks):
        lowers = [i for i in range(len(masks)) if masks[i] != upper_mask and masks[i] & ~upper_mask == 0]
        for i in lowers:
            if any(
                t != i and masks[i] & ~masks[t] == 0 and masks[t] != masks[i]
                for t in lowers
            ):
                continue
            edges.append(LatticeEdge(nodes[i], nodes[j]))
    edges.sort(key=lambda e: (e.lower.rank, len(e.lower.elements), e.lower.elements,
                              e.upper.rank, len(e.upper.elements), e.upper.elements))

    bottom_mask = m._closure_mask(0)
    top_mask = m._cyc_mask(full)
    by_mask = dict(zip(masks, nodes))
    bottom = by_mask[bottom_mask]
    top = by_mask[top_mask]
    return CyclicFlatLattice(m, nodes, tuple(edges), bottom, top)


def label_edges(lattice: CyclicFlatLattice) -> tuple[tuple[LatticeEdge, EdgeLabel], ...]:
    return tuple((edge, classify_edge(edge)) for edge in lattice.edges)


def lattice_join(m: Matroid, a: Iterable[int], b: Iterable[int]) -> tuple[int, ...]:
    """Join of two cyclic flats: the closure of their union."""
    return m.labels_of(m._closure_mask(m.mask_of(a) | m.mask_of(b)))


def lattice_meet(m: Matroid, a: Iterable[int], b: Iterable[int]) -> tuple[int, ...]:
    """Meet of two cyclic flats: the cyclic part of their intersection."""
    return m.labels_of(m._cyc_mask(m.mask_of(a) & m.mask_of(b)))


def minor_cyclic_flats(
    m: Matroid,
    restrict_to: Iterable[int] | None = None,
    contract_by: Iterable[int] = (),
    lattice: CyclicFlatLattice | None = None,
) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Cyclic flats (with ranks) of the minor restrict/contract of ``m``.

    Computed from the parent's cyclic flats alone:

      contract = {}:    cyc(Z ∩ Y)
      restrict = E:     cl(X ∪ Z) − X
      otherwise:        cl(X ∪ cyc(Z ∩ Y)) ∩ (Y − X)

    When the contract set is cyclic and the restrict set is a flat, the
    interval shortcut {Z − X : X ⊆ Z ⊆ Y} applies with ranks
    rank(Z) − rank(X).
    """
    ymask = m._full if restrict_to is None else m.mask_of(restrict_to)
    xmask = m.mask_of(contract_by)
    if xmask & ~ymask:
        raise InvalidMinorSpecError("contract set must be contained in the restrict set")
    if lattice is None:
        lattice = enumerate_cyclic_flats(m)
    zmasks = [m.mask_of(node.elements) for node in lattice.nodes]
    base = m._rank(xmask)

    results: dict[int, int] = {}
    if m._cyc_mask(xmask) == xmask and m._closure_mask(ymask) == ymask:
        for z, node in zip(zmasks, lattice.nodes):
            if xmask & ~z == 0 and z & ~ymask == 0:
                results.setdefault(z & ~xmask, node.rank - base)
    elif xmask == 0:
        for z in zmasks:
            s = m._cyc_mask(z & ymask)
            results.setdefault(s, m._rank(s))
    elif ymask == m._full:
        for z in zmasks:
            s = m._closure_mask(xmask | z) & ~xmask
            results.setdefault(s, m._rank(s | xmask) - base)
    else:
        window = ymask & ~xmask
        for z in zmasks:
            s = m._closure_mask(xmask | m._cyc_mask(z & ymask)) & window
            results.setdefault(s, m._rank(s | xmask) - base)

    out = sorted((rank, bin(mask).count("1"), m.labels_of(mask)) for mask, rank in results.items())
    return tuple((labels, rank) for rank, _, labels in out)


# -- configurations ---------------------------------------------------


@dataclass(frozen=True)
class Configuration:
    """Canonical form of a lattice: per-node (size, rank) labels plus the
    covering relation as index pairs.  Equal configurations mean the two
    labelled lattices are isomorphic."""

    labels: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int], ...]

    def min_distance(self) -> int:
        """Code minimum distance determined by the configuration alone."""
        if len(self.labels) < 2:
            raise InvalidArgumentError("configuration has no proper cyclic flats below the top")
        lowers = {lo for lo, _ in self.edges}
        tops = [i for i in range(len(self.labels)) if i not in lowers]
        if len(tops) != 1:
            raise InvalidArgumentError("configuration does not have a unique top element")
        top = tops[0]
        nullity = [size - rank for size, rank in self.labels]
        return nullity[top] + 1 - max(nullity[i] for i in range(len(self.labels)) if i != top)


def configuration(lattice: CyclicFlatLattice, max_nodes: int = CONFIG_NODE_LIMIT) -> Configuration:
    """Canonicalise the (size, rank)-labelled lattice up to isomorphism.

    Colours are refined by neighbour multisets, then all colour-preserving
    orderings are enumerated and the lexicographically least encoding is
    returned.  Refinement keeps the enumeration tiny in practice; a guard
    rejects pathological colour classes.
    """
    count = len(lattice.nodes)
    if count > max_nodes:
        raise ResourceLimitError(f"configuration canonicalisation limited to {max_nodes} nodes")
    index = {node: i for i, node in enumerate(lattice.nodes)}
    ups: list[list[int]] = [[] for _ in range(count)]
    downs: list[list[int]] = [[] for _ in range(count)]
    for edge in lattice.edges:
        ups[index[edge.lower]].append(index[edge.upper])
        downs[index[edge.upper]].append(index[edge.lower])

    colors: list[tuple] = [(len(node.elements), node.rank) for node in lattice.nodes]
    while True:
        refined = [
            (colors[i], tuple(sorted(colors[j] for j in downs[i])), tuple(sorted(colors[j] for j in ups[i])))
            for i in range(count)
        ]
        if len(set(refined)) == len(set(colors)) and all(
            (refined[i] == refined[j]) == (colors[i] == colors[j])
            for i in range(count) for j in range(i + 1, count)
        ):
            break
        colors = refined

    groups: dict[tuple, list[int]] = {}
    for i, c in enumerate(colors):
        groups.setdefault(c, []).append(i)
    ordered_groups = [groups[c] for c in sorted(groups)]

    total = 1
    for g in ordered_groups:
        for f in range(2, len(g) + 1):
            total *= f
        if total > _CONFIG_ORDERING_LIMIT:
            raise ResourceLimitError("configuration canonicalisation search space too large")

    raw_labels = [(len(node.elements), node.rank) for node in lattice.nodes]
    raw_edges = [(index[e.lower], index[e.upper]) for e in lattice.edges]
    best: tuple | None = None
    for perms in itertools.product(*(itertools.permutations(g) for g in ordered_groups)):
        order = [i for perm in perms for i in perm]
        position = [0] * count
        for new, old in enumerate(order):
            position[old] = new
        encoding = (
            tuple(raw_labels[old] for old in order),
            tuple(sorted((position[lo], position[hi]) for lo, hi in raw_edges)),
        )
        if best is None or encoding < best:
            best = encoding
    assert best is not None
    return Configuration(labels=best[0], edges=best[1])


# -- DOT export -------------------------------------------------------


def to_dot(lattice: CyclicFlatLattice) -> str:
    """Graphviz rendering: one node per cyclic flat, edges bottom-to-top,
    edge labels from the rank/nullity taxonomy."""
    index = {node: i for i, node in enumerate(lattice.nodes)}
    lines = ["digraph cyclic_flats {", "  rankdir=BT;"]
    for node in lattice.nodes:
        label = f"{node.set_str()}\\nρ={node.rank} η={node.nullity}"
        lines.append(f'  n{index[node]} [label="{label}"];')
    for edge in lattice.edges:
        label = classify_edge(edge).dot_label()
        attr = f' [label="{label}"]' if label else ""
        lines.append(f"  n{index[edge.lower]} -> n{index[edge.upper]}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
