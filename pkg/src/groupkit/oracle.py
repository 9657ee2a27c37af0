"""Brute-force ground truth for the chain searches.

Everything here recomputes coset structure straight off the multiplication
table and enumerates by cartesian product over partition blocks, so the
results are independent of the incremental searches they are used to check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import config
from .errors import (
    EnumerationLimitExceeded,
    GroupMismatch,
    MidEmpty,
    SizeLimitExceeded,
)
from .groups import ElementSet, Group, bit_indices

__all__ = [
    "Partition",
    "right_coset_partition",
    "double_coset_partition",
    "all_right_transversals",
    "all_middle_transversals",
    "all_maximal_direct_triples",
    "enumerate_subgroups",
]


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering a whole group, ordered by least element."""

    group: Group
    blocks: tuple[ElementSet, ...]

    def __post_init__(self) -> None:
        union = 0
        for block in self.blocks:
            if block.group is not self.group:
                raise GroupMismatch("partition block belongs to a different group")
            if block.mask == 0:
                raise ValueError("partition blocks must be nonempty")
            if block.mask & union:
                raise ValueError("partition blocks overlap")
            union |= block.mask
        if union != self.group.full_mask:
            raise ValueError("partition blocks fail to cover the group")

    def __len__(self) -> int:
        return len(self.blocks)

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]


def _require_subgroup_pair(h: ElementSet, k: ElementSet | None) -> Group:
    g = h.group
    h.require_subgroup("H")
    if k is not None:
        if k.group is not g:
            raise GroupMismatch("H and K belong to different groups")
        k.require_subgroup("K")
    return g


def right_coset_partition(h: ElementSet) -> Partition:
    """All right cosets H*g, each listed once, ordered by least member."""
    g = _require_subgroup_pair(h, None)
    t = g.table
    hbits = list(bit_indices(h.mask))
    remaining = g.full_mask
    blocks = []
    while remaining:
        x = (remaining & -remaining).bit_length() - 1
        cm = 0
        for a in hbits:
            cm |= 1 << t[a][x]
        blocks.append(g.subset_from_mask(cm))
        remaining &= ~cm
    return Partition(g, tuple(blocks))


def double_coset_partition(h: ElementSet, k: ElementSet) -> Partition:
    """All double cosets H*g*K, ordered by least member."""
    g = _require_subgroup_pair(h, k)
    t = g.table
    hbits = list(bit_indices(h.mask))
    kbits = list(bit_indices(k.mask))
    remaining = g.full_mask
    blocks = []
    while remaining:
        x = (remaining & -remaining).bit_length() - 1
        cm = 0
        for a in hbits:
            ax = t[a][x]
            row = t[ax]
            for b in kbits:
                cm |= 1 << row[b]
        blocks.append(g.subset_from_mask(cm))
        remaining &= ~cm
    return Partition(g, tuple(blocks))


def _one_per_block(partition: Partition, limit: int | None) -> set[ElementSet]:
    cap = config.enum_limit() if limit is None else limit
    total = 1
    for block in partition.blocks:
        total *= len(block)
        if total > cap:
            raise EnumerationLimitExceeded(
                f"{total}+ combinations exceed the cap of {cap}; raise the limit to continue"
            )
    g = partition.group
    out = set()
    for combo in itertools.product(*(block.indices() for block in partition.blocks)):
        mask = 0
        for i in combo:
            mask |= 1 << i
        out.add(g.subset_from_mask(mask))
    return out


def all_right_transversals(h: ElementSet, *, limit: int | None = None) -> set[ElementSet]:
    """Every set holding exactly one element of each right coset of H."""
    return _one_per_block(right_coset_partition(h), limit)


def all_middle_transversals(
    h: ElementSet, k: ElementSet, *, limit: int | None = None
) -> set[ElementSet]:
    """Every set holding exactly one element of each double coset of (H, K)."""
    return _one_per_block(double_coset_partition(h, k), limit)


def _raw_mid_mask(g: Group, hmask: int, kmask: int) -> int:
    """Middle director by definition: x is in when |H*x*K| = |H||K|."""
    t = g.table
    hbits = list(bit_indices(hmask))
    kbits = list(bit_indices(kmask))
    target = len(hbits) * len(kbits)
    mid = 0
    for x in range(g.order):
        seen = 0
        for a in hbits:
            row = t[t[a][x]]
            for b in kbits:
                seen |= 1 << row[b]
        if seen.bit_count() == target:
            mid |= 1 << x
    return mid


def all_maximal_direct_triples(
    h: ElementSet, k: ElementSet, *, limit: int | None = None
) -> set[ElementSet]:
    """Every maximal X with H*X*K direct: one element of Mid per double
    coset meeting Mid.  Raises MidEmpty when the middle director is empty."""
    g = _require_subgroup_pair(h, k)
    mid = _raw_mid_mask(g, h.mask, k.mask)
    if mid == 0:
        raise MidEmpty("the middle director is empty; no direct middle exists")
    cap = config.enum_limit() if limit is None else limit
    parts = []
    total = 1
    for block in double_coset_partition(h, k).blocks:
        cell = block.mask & mid
        if cell:
            parts.append(list(bit_indices(cell)))
            total *= len(parts[-1])
            if total > cap:
                raise EnumerationLimitExceeded(
                    f"{total}+ combinations exceed the cap of {cap}; "
                    "raise the limit to continue"
                )
    out = set()
    for combo in itertools.product(*parts):
        mask = 0
        for i in combo:
            mask |= 1 << i
        out.add(g.subset_from_mask(mask))
    return out


def enumerate_subgroups(g: Group, *, bound: int | None = None) -> set[ElementSet]:
    """All subgroups of g, by closing each known subgroup with one extra
    element until nothing new appears.  Refuses groups above the bound."""
    cap = config.DEFAULT_SUBGROUP_ENUM_BOUND if bound is None else bound
    if g.order > cap:
        raise SizeLimitExceeded(
            f"subgroup enumeration is limited to order {cap}, got {g.order}"
        )
    trivial = g.trivial_subgroup()
    known = {trivial}
    frontier = [trivial]
    while frontier:
        s = frontier.pop()
        outside = g.full_mask & ~s.mask
        for x in bit_indices(outside):
            bigger = s.with_element(x).generated_subgroup()
            if bigger not in known:
                known.add(bigger)
                frontier.append(bigger)
    return known
