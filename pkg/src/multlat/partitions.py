"""Set partitions and coordinate-assignment maps between Z^n and Z^(n+k).

An acceptable map sends each target coordinate either to a fixed source
coordinate or to zero, with every source coordinate used at least once. Such
maps (up to relabeling of the sources) correspond to partitions of the set
{0, ..., n+k} into n+1 blocks: target coordinate j sits in the block of the
source it copies, and the block containing the ghost element 0 collects the
zeroed coordinates. Example: the partition {{0,3,4},{1,5},{2,7,8},{6}} of
{0..8} corresponds to the map (a,b,c) -> (a,b,0,0,a,c,b,b).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .lattice import Lattice, lattice_from_rows


@dataclass(frozen=True)
class SetPartition:
    """Partition of {0, ..., ground_size-1} into sorted blocks ordered by minimum."""

    ground_size: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.ground_size < 1:
            raise ValueError("ground set must be nonempty")
        seen: set[int] = set()
        prev_min = -1
        for block in self.blocks:
            if not block:
                raise ValueError("empty block")
            if list(block) != sorted(block):
                raise ValueError("blocks must be sorted")
            if block[0] <= prev_min:
                raise ValueError("blocks must be ordered by their minimum")
            prev_min = block[0]
            seen.update(block)
        if seen != set(range(self.ground_size)):
            raise ValueError("blocks must partition the ground set exactly")
        if sum(len(b) for b in self.blocks) != self.ground_size:
            raise ValueError("blocks overlap")

    @property
    def block_count(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class AcceptableMap:
    """Map Z^source_dim -> Z^target_dim given by one entry per target coordinate.

    assignment[j] is 0 when target coordinate j is identically zero, and
    i in 1..source_dim when it copies source coordinate i. Every source index
    must appear at least once, which makes the map injective.
    """

    source_dim: int
    target_dim: int
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.source_dim < 0 or self.target_dim < self.source_dim:
            raise ValueError("need 0 <= source_dim <= target_dim")
        if len(self.assignment) != self.target_dim:
            raise ValueError("assignment length must equal target_dim")
        used = set()
        for a in self.assignment:
            if not 0 <= a <= self.source_dim:
                raise ValueError(f"assignment entry {a} out of range")
            if a:
                used.add(a)
        if used != set(range(1, self.source_dim + 1)):
            raise ValueError("every source coordinate must be used")


def stirling2(u: int, v: int) -> int:
    """Number of partitions of a u-element set into v nonempty blocks."""
    if u < 0 or v < 0:
        raise ValueError("arguments must be nonnegative")
    if v > u:
        return 0
    if u == 0:
        return 1
    if v == 0:
        return 0
    prev = [1] + [0] * v
    for _ in range(u):
        cur = [0] * (v + 1)
        for j in range(1, v + 1):
            cur[j] = j * prev[j] + prev[j - 1]
        prev = cur
    return prev[v]


def enumerate_partitions(ground_size: int, block_count: int) -> Iterator[SetPartition]:
    """All partitions of {0..ground_size-1} into block_count blocks.

    Deterministic order: lexicographic in the restricted-growth string that
    assigns each element its block label.
    """
    if not 1 <= block_count <= ground_size:
        raise ValueError("need 1 <= block_count <= ground_size")
    labels = [0] * ground_size

    def rec(i: int, used: int) -> Iterator[SetPartition]:
        if i == ground_size:
            if used == block_count:
                blocks: list[list[int]] = [[] for _ in range(block_count)]
                for elem, lab in enumerate(labels):
                    blocks[lab].append(elem)
                yield SetPartition(ground_size, tuple(tuple(b) for b in blocks))
            return
        # still need block_count - used fresh labels among the remaining slots
        if used + (ground_size - i) < block_count:
            return
        top = min(used, block_count - 1)
        for lab in range(top + 1):
            labels[i] = lab
            yield from rec(i + 1, max(used, lab + 1))

    yield from rec(0, 0)


def partition_to_map(p: SetPartition, source_dim: int) -> AcceptableMap:
    """Ordered acceptable map encoded by a partition with source_dim+1 blocks.

    The block containing 0 marks the zeroed target coordinates; the remaining
    blocks, in order of their minima, give the coordinates copying sources
    1..source_dim.
    """
    if p.block_count != source_dim + 1:
        raise ValueError("partition must have source_dim + 1 blocks")
    target_dim = p.ground_size - 1
    assignment = [0] * target_dim
    for label, block in enumerate(p.blocks):
        if label == 0:
            continue
        for elem in block:
            assignment[elem - 1] = label
    return AcceptableMap(source_dim, target_dim, tuple(assignment))


def map_to_partition(g: AcceptableMap) -> SetPartition:
    """Partition of {0..target_dim} encoded by a map; inverts partition_to_map.

    For an unordered map this still produces a valid partition, whose image
    under partition_to_map is the ordered form of g.
    """
    groups: dict[int, list[int]] = {0: [0]}
    for j, a in enumerate(g.assignment):
        groups.setdefault(a, []).append(j + 1)
    blocks = sorted(groups.values(), key=lambda b: b[0])
    return SetPartition(g.target_dim + 1, tuple(tuple(b) for b in blocks))


def is_ordered(g: AcceptableMap) -> bool:
    """Do the sources appear for the first time in the order 1, 2, ..., n?"""
    seen: list[int] = []
    for a in g.assignment:
        if a and a not in seen:
            seen.append(a)
    return seen == list(range(1, g.source_dim + 1))


def order_map(g: AcceptableMap) -> tuple[AcceptableMap, tuple[int, ...]]:
    """Relabel the sources of g so their first uses come in increasing order.

    Returns (ordered, perm) where perm[i-1] is the new label of source i.
    The two maps agree after permuting source coordinates: composing g with
    x -> (x[perm[1]-1], ..., x[perm[n]-1]) on the source side yields the
    ordered map, and the relabeling with this property is unique.
    """
    first_use: list[int] = []
    for a in g.assignment:
        if a and a not in first_use:
            first_use.append(a)
    relabel = {old: new + 1 for new, old in enumerate(first_use)}
    ordered = AcceptableMap(
        g.source_dim,
        g.target_dim,
        tuple(relabel[a] if a else 0 for a in g.assignment),
    )
    perm = tuple(relabel[i] for i in range(1, g.source_dim + 1))
    return ordered, perm


def apply_map(g: AcceptableMap, lat: Lattice) -> Lattice:
    """Image of a full-rank lattice under an acceptable map.

    Each basis row is transported coordinate by coordinate; the image has the
    same rank inside Z^target_dim.
    """
    if lat.ambient_dim != g.source_dim:
        raise ValueError("lattice ambient dimension must equal the map source")
    if not lat.is_full_rank:
        raise ValueError("apply_map needs a full-rank lattice")
    rows = [
        tuple(row[a - 1] if a else 0 for a in g.assignment)
        for row in lat.basis
    ]
    return lattice_from_rows(g.target_dim, rows)


def enumerate_ordered_maps(source_dim: int, target_dim: int) -> Iterator[AcceptableMap]:
    """All ordered acceptable maps Z^source_dim -> Z^target_dim.

    There are stirling2(target_dim + 1, source_dim + 1) of them, one per
    partition of {0..target_dim} into source_dim + 1 blocks.
    """
    if source_dim < 0 or target_dim < source_dim:
        raise ValueError("need 0 <= source_dim <= target_dim")
    for p in enumerate_partitions(target_dim + 1, source_dim + 1):
        yield partition_to_map(p, source_dim)


def map_to_string(g: AcceptableMap) -> str:
    """Assignment pattern like 'a,b,0,0,a,c,b,b' (letters name the sources)."""
    out = []
    for a in g.assignment:
        if a == 0:
            out.append("0")
        elif a <= 26:
            out.append(chr(ord("a") + a - 1))
        else:
            out.append(f"s{a}")
    return ",".join(out)


def map_from_string(text: str) -> AcceptableMap:
    """Parse the assignment pattern produced by map_to_string."""
    entries = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok == "0":
            entries.append(0)
        elif tok.startswith("s") and tok[1:].isdigit():
            entries.append(int(tok[1:]))
        elif len(tok) == 1 and "a" <= tok <= "z":
            entries.append(ord(tok) - ord("a") + 1)
        else:
            raise ValueError(f"bad assignment token {tok!r}")
    source_dim = max(entries, default=0)
    return AcceptableMap(source_dim, len(entries), tuple(entries))
