"""Subset products, directness predicates, and the middle director.

Conventions: A*B is the setwise product {a*b}.  The pair (A, B) is direct
when every product a*b is distinct, i.e. |A*B| = |A||B|.  A triple A*X*B is
middle direct when the sets A*x*B for x in X are pairwise disjoint, and
direct when additionally every A*x*B is itself direct.  The middle director
of (A, B) is the set of x making A*{x}*B direct; for subgroups H, K that is
exactly the x with H meeting K^x trivially.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import GroupMismatch
from .groups import ElementSet, Group, bit_indices

__all__ = [
    "set_product",
    "is_direct_pair",
    "double_coset",
    "is_middle_direct",
    "is_direct_triple",
    "mid_director",
    "mid_director_subgroups",
    "MidTag",
    "MidCase",
    "classify_mid",
    "is_right_transversal",
    "is_middle_transversal",
    "is_middle_factor",
]


def _same_group(*sets: ElementSet) -> Group:
    g = sets[0].group
    for s in sets[1:]:
        if s.group is not g:
            raise GroupMismatch("operands belong to different groups")
    return g


def _product_mask(g: Group, amask: int, bmask: int) -> int:
    t = g.table
    out = 0
    for x in bit_indices(amask):
        row = t[x]
        for y in bit_indices(bmask):
            out |= 1 << row[y]
    return out


def set_product(a: ElementSet, b: ElementSet) -> ElementSet:
    """The setwise product A*B."""
    g = _same_group(a, b)
    return g.subset_from_mask(_product_mask(g, a.mask, b.mask))


def is_direct_pair(a: ElementSet, b: ElementSet) -> bool:
    """True when all products a*b are pairwise distinct."""
    g = _same_group(a, b)
    return _product_mask(g, a.mask, b.mask).bit_count() == len(a) * len(b)


def double_coset(h: ElementSet, x: int, k: ElementSet) -> ElementSet:
    """The double coset H*x*K for subgroups H and K."""
    g = _same_group(h, k)
    h.require_subgroup("H")
    k.require_subgroup("K")
    g._check_index(x)
    t = g.table
    hx = 0
    for a in bit_indices(h.mask):
        hx |= 1 << t[a][x]
    return g.subset_from_mask(_product_mask(g, hx, k.mask))


def _middle_cell_mask(g: Group, amask: int, x: int, bmask: int) -> int:
    t = g.table
    ax = 0
    for a in bit_indices(amask):
        ax |= 1 << t[a][x]
    return _product_mask(g, ax, bmask)


def is_middle_direct(a: ElementSet, x: ElementSet, b: ElementSet) -> bool:
    """True when the sets A*t*B for t in X are pairwise disjoint."""
    g = _same_group(a, x, b)
    seen = 0
    for t in bit_indices(x.mask):
        cell = _middle_cell_mask(g, a.mask, t, b.mask)
        if cell & seen:
            return False
        seen |= cell
    return True


def is_direct_triple(a: ElementSet, x: ElementSet, b: ElementSet) -> bool:
    """True when all products a*t*b over A x X x B are pairwise distinct."""
    g = _same_group(a, x, b)
    per_cell = len(a) * len(b)
    seen = 0
    for t in bit_indices(x.mask):
        cell = _middle_cell_mask(g, a.mask, t, b.mask)
        if cell.bit_count() != per_cell or cell & seen:
            return False
        seen |= cell
    return True


def mid_director(a: ElementSet, b: ElementSet) -> ElementSet:
    """All x with A*{x}*B direct, for arbitrary subsets A and B."""
    g = _same_group(a, b)
    target = len(a) * len(b)
    mask = 0
    for x in range(g.order):
        if _middle_cell_mask(g, a.mask, x, b.mask).bit_count() == target:
            mask |= 1 << x
    return g.subset_from_mask(mask)


def mid_director_subgroups(h: ElementSet, k: ElementSet) -> ElementSet:
    """The middle director of subgroups via the conjugate test
    H ∩ K^x = {1}; agrees with mid_director on subgroup inputs."""
    g = _same_group(h, k)
    h.require_subgroup("H")
    k.require_subgroup("K")
    t = g.table
    inv = g.inverse
    id_bit = 1 << g.identity
    kbits = list(bit_indices(k.mask))
    mask = 0
    for x in range(g.order):
        xi = inv[x]
        kx = 0
        for s in kbits:
            kx |= 1 << t[t[x][s]][xi]
        if h.mask & kx == id_bit:
            mask |= 1 << x
    return g.subset_from_mask(mask)


class MidTag(enum.Enum):
    EMPTY = "Empty"
    FULL = "Full"
    PROPER_NONEMPTY = "ProperNonempty"


@dataclass(frozen=True)
class MidCase:
    """Classification of a middle director together with the set itself."""

    tag: MidTag
    mid: ElementSet

    def __post_init__(self) -> None:
        size = len(self.mid)
        order = self.mid.group.order
        expected = (
            MidTag.EMPTY if size == 0 else MidTag.FULL if size == order else MidTag.PROPER_NONEMPTY
        )
        if self.tag is not expected:
            raise ValueError(f"tag {self.tag} inconsistent with a mid of size {size}/{order}")


def classify_mid(h: ElementSet, k: ElementSet) -> MidCase:
    """Compute and classify the middle director of two subgroups."""
    mid = mid_director_subgroups(h, k)
    size = len(mid)
    if size == 0:
        tag = MidTag.EMPTY
    elif size == mid.group.order:
        tag = MidTag.FULL
    else:
        tag = MidTag.PROPER_NONEMPTY
    return MidCase(tag, mid)


def is_right_transversal(h: ElementSet, t: ElementSet) -> bool:
    """True when T hits every right coset H*g exactly once."""
    g = _same_group(h, t)
    h.require_subgroup("H")
    prod = _product_mask(g, h.mask, t.mask)
    return prod == g.full_mask and prod.bit_count() == len(h) * len(t)


def is_middle_transversal(h: ElementSet, x: ElementSet, k: ElementSet) -> bool:
    """True when X hits every double coset H*g*K exactly once."""
    g = _same_group(h, x, k)
    h.require_subgroup("H")
    k.require_subgroup("K")
    seen = 0
    for t in bit_indices(x.mask):
        cell = _middle_cell_mask(g, h.mask, t, k.mask)
        if cell & seen:
            return False
        seen |= cell
    return seen == g.full_mask


def is_middle_factor(h: ElementSet, x: ElementSet, k: ElementSet) -> bool:
    """True when H*X*K is direct and covers the whole group."""
    return is_middle_transversal(h, x, k) and is_direct_triple(h, x, k)
