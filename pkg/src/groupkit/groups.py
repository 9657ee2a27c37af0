"""Concrete finite groups with full multiplication tables.

Elements are the indices 0..order-1.  A Group owns an immutable table,
canonical element names, and optional single-letter generator names used by
the word parser.  Subsets of a group are ElementSet values backed by int
bitmasks, which keeps the set algebra in this package cheap.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import config
from .errors import (
    GroupMismatch,
    IndexOutOfRange,
    InvalidSpec,
    NotAGroup,
    NotASubgroup,
    SizeLimitExceeded,
)

__all__ = [
    "Group",
    "ElementSet",
    "GroupSpec",
    "build_group",
    "bit_indices",
]


def bit_indices(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Group:
    """A finite group on 0..order-1 given by its multiplication table.

    table[x][y] is the product x*y.  Construction validates the Latin-square
    property, a two-sided identity, two-sided inverses, and associativity
    (fully up to order 256, by seeded sampling above that).
    """

    __slots__ = (
        "order",
        "table",
        "identity",
        "inverse",
        "names",
        "generator_names",
        "kind",
        "description",
        "full_mask",
        "_name_to_index",
        "_loose_names",
        "_abelian",
    )

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        names: Sequence[str],
        *,
        kind: str = "cayley",
        description: str | None = None,
        generator_names: dict[str, int] | None = None,
    ) -> None:
        n = len(table)
        if n == 0:
            raise InvalidSpec("a group needs at least one element")
        if len(names) != n:
            raise InvalidSpec(f"{n} table rows but {len(names)} names")
        rows = []
        for i, row in enumerate(table):
            row = tuple(row)
            if len(row) != n:
                raise InvalidSpec(f"table row {i} has length {len(row)}, expected {n}")
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                    raise InvalidSpec(f"table row {i} holds {v!r}, expected 0..{n - 1}")
            rows.append(row)
        self.order = n
        self.table = tuple(rows)
        self.names = tuple(str(s) for s in names)
        if len(set(self.names)) != n:
            raise InvalidSpec("element names must be pairwise distinct")
        self.kind = kind
        self.description = description if description is not None else kind
        self.full_mask = (1 << n) - 1
        self._abelian: bool | None = None

        self._check_latin()
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()
        self._check_associativity()

        gen = dict(generator_names or {})
        for sym, idx in gen.items():
            if len(sym) != 1 or not sym.isalpha():
                raise InvalidSpec(f"generator symbol {sym!r} must be a single letter")
            if not 0 <= idx < n:
                raise InvalidSpec(f"generator {sym!r} maps to invalid index {idx}")
        self.generator_names = gen

        self._name_to_index = {s: i for i, s in enumerate(self.names)}
        # Whitespace-insensitive fallback for parenthesized names; ambiguous
        # keys (possible once a cycle name holds multi-digit points) are dropped.
        loose: dict[str, int] = {}
        seen_twice: set[str] = set()
        for i, s in enumerate(self.names):
            key = "".join(s.split())
            if key in loose or key in seen_twice:
                loose.pop(key, None)
                seen_twice.add(key)
            else:
                loose[key] = i
        self._loose_names = loose

    # -- validation -------------------------------------------------------

    def _check_latin(self) -> None:
        n = self.order
        full = frozenset(range(n))
        for i, row in enumerate(self.table):
            if set(row) != full:
                raise NotAGroup(f"row {i} is not a permutation of the elements")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise NotAGroup(f"column {j} is not a permutation of the elements")

    def _find_identity(self) -> int:
        n = self.order
        id_row = tuple(range(n))
        for e in range(n):
            if self.table[e] == id_row and all(self.table[i][e] == i for i in range(n)):
                return e
        raise NotAGroup("no two-sided identity element")

    def _find_inverses(self) -> tuple[int, ...]:
        e = self.identity
        inv = []
        for i, row in enumerate(self.table):
            j = row.index(e)
            if self.table[j][i] != e:
                raise NotAGroup(f"element {i} has no two-sided inverse")
            inv.append(j)
        return tuple(inv)

    def _check_associativity(self) -> None:
        n = self.order
        t = self.table
        if n <= config.FULL_ASSOCIATIVITY_BOUND:
            for i in range(n):
                ti = t[i]
                for j in range(n):
                    lhs = t[ti[j]]
                    tj = t[j]
                    if any(lhs[k] != ti[tj[k]] for k in range(n)):
                        raise NotAGroup(f"associativity fails at i={i}, j={j}")
        else:
            rng = random.Random(0xA55C ^ n)
            for _ in range(config.ASSOCIATIVITY_SAMPLES_PER_ELEMENT * n):
                i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if t[t[i][j]][k] != t[i][t[j][k]]:
                    raise NotAGroup(f"associativity fails at i={i}, j={j}, k={k}")

    # -- arithmetic -------------------------------------------------------

    def _check_index(self, x: int) -> int:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self.order:
            raise IndexOutOfRange(f"element index {x!r} not in 0..{self.order - 1}")
        return x

    def multiply(self, x: int, y: int) -> int:
        """Product x*y."""
        return self.table[self._check_index(x)][self._check_index(y)]

    def power(self, x: int, k: int) -> int:
        """x**k for any integer k (negative powers use the inverse)."""
        self._check_index(x)
        if k < 0:
            x, k = self.inverse[x], -k
        acc = self.identity
        while k:
            if k & 1:
                acc = self.table[acc][x]
            x = self.table[x][x]
            k >>= 1
        return acc

    def conjugate(self, x: int, by: int) -> int:
        """by * x * by^-1."""
        t = self.table
        return t[t[self._check_index(by)][self._check_index(x)]][self.inverse[by]]

    def is_abelian(self) -> bool:
        if self._abelian is None:
            t = self.table
            n = self.order
            self._abelian = all(
                t[i][j] == t[j][i] for i in range(n) for j in range(i + 1, n)
            )
        return self._abelian

    def center(self) -> ElementSet:
        """Elements commuting with everything."""
        t = self.table
        n = self.order
        mask = 0
        for z in range(n):
            if all(t[z][x] == t[x][z] for x in range(n)):
                mask |= 1 << z
        return ElementSet._from_mask(self, mask)

    # -- set constructors ---------------------------------------------------

    def subset(self, elements: Iterable[int]) -> ElementSet:
        return ElementSet(self, elements)

    def subset_from_mask(self, mask: int) -> ElementSet:
        if not 0 <= mask <= self.full_mask:
            raise IndexOutOfRange(f"mask {mask:#x} has bits outside 0..{self.order - 1}")
        return ElementSet._from_mask(self, mask)

    def singleton(self, x: int) -> ElementSet:
        return ElementSet._from_mask(self, 1 << self._check_index(x))

    def empty_set(self) -> ElementSet:
        return ElementSet._from_mask(self, 0)

    def full_set(self) -> ElementSet:
        return ElementSet._from_mask(self, self.full_mask)

    def trivial_subgroup(self) -> ElementSet:
        return ElementSet._from_mask(self, 1 << self.identity)

    # -- names --------------------------------------------------------------

    def name_of(self, x: int) -> str:
        return self.names[self._check_index(x)]

    def index_of_name(self, name: str) -> int | None:
        """Index for an exact canonical name, else a whitespace-insensitive
        match for parenthesized names, else None."""
        hit = self._name_to_index.get(name)
        if hit is not None:
            return hit
        return self._loose_names.get("".join(name.split()))

    def __repr__(self) -> str:
        return f"Group({self.description!r}, order={self.order})"


class ElementSet:
    """Immutable subset of one group's elements, stored as an int bitmask."""

    __slots__ = ("group", "mask")

    def __init__(self, group: Group, elements: Iterable[int]) -> None:
        mask = 0
        for x in elements:
            group._check_index(x)
            mask |= 1 << x
        self.group = group
        self.mask = mask

    @classmethod
    def _from_mask(cls, group: Group, mask: int) -> "ElementSet":
        self = cls.__new__(cls)
        self.group = group
        self.mask = mask
        return self

    # -- basic protocol ------------------------------------------------------

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self) -> Iterator[int]:
        return bit_indices(self.mask)

    def __contains__(self, x: int) -> bool:
        return isinstance(x, int) and 0 <= x < self.group.order and self.mask >> x & 1 == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.group is other.group and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((id(self.group), self.mask))

    def __repr__(self) -> str:
        return "{" + ", ".join(self.names()) + "}"

    def indices(self) -> tuple[int, ...]:
        return tuple(bit_indices(self.mask))

    def names(self) -> list[str]:
        """Canonical names in ascending index order."""
        g = self.group
        return [g.names[i] for i in bit_indices(self.mask)]

    # -- set algebra ----------------------------------------------------------

    def _check_same_group(self, other: "ElementSet") -> None:
        if self.group is not other.group:
            raise GroupMismatch("element sets belong to different groups")

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check_same_group(other)
        return ElementSet._from_mask(self.group, self.mask & other.mask)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check_same_group(other)
        return ElementSet._from_mask(self.group, self.mask | other.mask)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._check_same_group(other)
        return ElementSet._from_mask(self.group, self.mask & ~other.mask)

    def __le__(self, other: "ElementSet") -> bool:
        self._check_same_group(other)
        return self.mask & ~other.mask == 0

    def issubset(self, other: "ElementSet") -> bool:
        return self <= other

    def complement(self) -> "ElementSet":
        return ElementSet._from_mask(self.group, self.group.full_mask & ~self.mask)

    def with_element(self, x: int) -> "ElementSet":
        return ElementSet._from_mask(self.group, self.mask | 1 << self.group._check_index(x))

    # -- group-aware operations ------------------------------------------------

    def conjugate_by(self, x: int) -> "ElementSet":
        """The set x * self * x^-1."""
        g = self.group
        g._check_index(x)
        t = g.table
        xi = g.inverse[x]
        mask = 0
        for s in bit_indices(self.mask):
            mask |= 1 << t[t[x][s]][xi]
        return ElementSet._from_mask(g, mask)

    def is_subgroup(self) -> bool:
        """True when the set is nonempty and closed under the product."""
        g = self.group
        m = self.mask
        if m == 0 or m >> g.identity & 1 == 0:
            return False
        t = g.table
        members = list(bit_indices(m))
        return all(m >> t[x][y] & 1 for x in members for y in members)

    def generated_subgroup(self) -> "ElementSet":
        """Closure of this set under multiplication (the trivial subgroup
        when the set is empty)."""
        g = self.group
        t = g.table
        mask = 1 << g.identity
        frontier = [g.identity]
        gens = list(bit_indices(self.mask))
        for x in gens:
            if mask >> x & 1 == 0:
                mask |= 1 << x
                frontier.append(x)
        while frontier:
            x = frontier.pop()
            for y in gens:
                for z in (t[x][y], t[y][x]):
                    if mask >> z & 1 == 0:
                        mask |= 1 << z
                        frontier.append(z)
        return ElementSet._from_mask(g, mask)

    def require_subgroup(self, label: str = "set") -> "ElementSet":
        if not self.is_subgroup():
            raise NotASubgroup(f"{label} {self!r} is not a subgroup")
        return self


# -- specs and builders ----------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    """Validated description of a buildable group."""

    kind: str
    n: int | None = None
    factors: tuple["GroupSpec", ...] | None = None
    names: tuple[str, ...] | None = None
    table: tuple[tuple[int, ...], ...] | None = None
    degree: int | None = None
    generators: tuple[tuple[tuple[int, ...], ...], ...] | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "GroupSpec":
        if not isinstance(data, dict):
            raise InvalidSpec(f"group spec must be an object, got {type(data).__name__}")
        kind = data.get("kind")
        if kind in ("cyclic", "dihedral", "symmetric"):
            n = data.get("n")
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise InvalidSpec(f"{kind} group needs a positive integer n")
            return cls(kind=kind, n=n)
        if kind == "direct_product":
            factors = data.get("factors")
            if not isinstance(factors, list) or not factors:
                raise InvalidSpec("direct_product needs a nonempty factors list")
            return cls(kind=kind, factors=tuple(cls.from_dict(f) for f in factors))
        if kind == "cayley":
            names = data.get("names")
            table = data.get("table")
            if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
                raise InvalidSpec("cayley group needs a list of string names")
            if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
                raise InvalidSpec("cayley group needs a table as a list of rows")
            return cls(
                kind=kind,
                names=tuple(names),
                table=tuple(tuple(r) for r in table),
            )
        if kind == "permutation":
            degree = data.get("degree")
            gens = data.get("generators")
            if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
                raise InvalidSpec("permutation group needs a positive integer degree")
            if not isinstance(gens, list):
                raise InvalidSpec("permutation group needs a generators list")
            out = []
            for gi, cycles in enumerate(gens):
                if not isinstance(cycles, list):
                    raise InvalidSpec(f"generator {gi} must be a list of cycles")
                packed = []
                for cycle in cycles:
                    if not isinstance(cycle, list) or not all(
                        isinstance(p, int) and not isinstance(p, bool) for p in cycle
                    ):
                        raise InvalidSpec(f"generator {gi} holds a malformed cycle")
                    packed.append(tuple(cycle))
                out.append(tuple(packed))
            return cls(kind=kind, degree=degree, generators=tuple(out))
        raise InvalidSpec(f"unknown group kind {kind!r}")

    @classmethod
    def from_inline(cls, text: str) -> "GroupSpec":
        """Parse the compact kind:n form, e.g. 'cyclic:12'."""
        kind, sep, arg = text.partition(":")
        kind = kind.strip()
        if not sep or kind not in ("cyclic", "dihedral", "symmetric"):
            raise InvalidSpec(
                f"inline group {text!r} not understood; use kind:n with kind in "
                "cyclic/dihedral/symmetric, or give a JSON object"
            )
        try:
            n = int(arg)
        except ValueError:
            raise InvalidSpec(f"inline group {text!r} needs an integer parameter") from None
        return cls.from_dict({"kind": kind, "n": n})

    def to_dict(self) -> dict:
        if self.kind in ("cyclic", "dihedral", "symmetric"):
            return {"kind": self.kind, "n": self.n}
        if self.kind == "direct_product":
            return {"kind": self.kind, "factors": [f.to_dict() for f in self.factors or ()]}
        if self.kind == "cayley":
            return {
                "kind": self.kind,
                "names": list(self.names or ()),
                "table": [list(r) for r in self.table or ()],
            }
        return {
            "kind": self.kind,
            "degree": self.degree,
            "generators": [[list(c) for c in g] for g in self.generators or ()],
        }


def _check_order(order: int, limit: int, what: str) -> None:
    if order > limit:
        raise SizeLimitExceeded(f"{what} has order {order}, above the limit {limit}")


def _build_cyclic(n: int, limit: int) -> Group:
    _check_order(n, limit, f"cyclic group of order {n}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = [str(i) for i in range(n)]
    return Group(table, names, kind="cyclic", description=f"cyclic:{n}")


def _rot_name(i: int) -> str:
    return "1" if i == 0 else "a" if i == 1 else f"a^{i}"


def _refl_name(i: int) -> str:
    return "b" if i == 0 else "ba" if i == 1 else f"ba^{i}"


def _build_dihedral(n: int, limit: int) -> Group:
    # order 2n; indices 0..n-1 are a^i, n..2n-1 are b*a^i
    _check_order(2 * n, limit, f"dihedral group on {n} rotations")
    size = 2 * n
    table = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            table[i][j] = (i + j) % n
            table[i][n + j] = n + (j - i) % n
            table[n + i][j] = n + (i + j) % n
            table[n + i][n + j] = (j - i) % n
    names = [_rot_name(i) for i in range(n)] + [_refl_name(i) for i in range(n)]
    gens = {"a": 1 % n, "b": n}
    return Group(table, names, kind="dihedral", description=f"dihedral:{n}", generator_names=gens)


def _cycle_name(perm: Sequence[int]) -> str:
    """Disjoint-cycle notation on 1-based points; '()' for the identity."""
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) or "()"


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Apply p first, then q."""
    return tuple(q[x] for x in p)


def _build_symmetric(n: int, limit: int) -> Group:
    order = math.factorial(n)
    _check_order(order, limit, f"symmetric group on {n} points")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[_compose(p, q)] for q in perms] for p in perms]
    names = [_cycle_name(p) for p in perms]
    return Group(table, names, kind="symmetric", description=f"symmetric:{n}")


def _build_direct_product(spec: GroupSpec, limit: int) -> Group:
    factors = [_build(f, limit) for f in spec.factors or ()]
    order = math.prod(f.order for f in factors)
    _check_order(order, limit, "direct product")
    sizes = [f.order for f in factors]

    def split(idx: int) -> list[int]:
        parts = []
        for size in reversed(sizes):
            parts.append(idx % size)
            idx //= size
        return parts[::-1]

    def join(parts: Sequence[int]) -> int:
        idx = 0
        for size, p in zip(sizes, parts):
            idx = idx * size + p
        return idx

    decomp = [split(i) for i in range(order)]
    table = [
        [
            join([f.table[xi][yi] for f, xi, yi in zip(factors, xs, ys)])
            for ys in decomp
        ]
        for xs in decomp
    ]
    names = ["(" + ",".join(f.names[xi] for f, xi in zip(factors, xs)) + ")" for xs in decomp]
    desc = "x".join(f.description for f in factors)
    return Group(table, names, kind="direct_product", description=desc)


def _perm_from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> tuple[int, ...]:
    perm = list(range(degree))
    for cycle in cycles:
        if len(cycle) != len(set(cycle)):
            raise InvalidSpec(f"cycle {list(cycle)} repeats a point")
        for p in cycle:
            if not 1 <= p <= degree:
                raise InvalidSpec(f"cycle point {p} outside 1..{degree}")
        step = list(range(degree))
        for pos, p in enumerate(cycle):
            step[p - 1] = cycle[(pos + 1) % len(cycle)] - 1
        perm = list(_compose(perm, step))
    return tuple(perm)


_GEN_SYMBOLS = "abcdefghijklmnopqrstuvwxyz"


def _build_permutation(spec: GroupSpec, limit: int) -> Group:
    degree = spec.degree or 1
    gens = [_perm_from_cycles(cycles, degree) for cycles in spec.generators or ()]
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        p = queue.popleft()
        for q in gens:
            r = _compose(p, q)
            if r not in index:
                if len(elements) >= limit:
                    raise SizeLimitExceeded(
                        f"permutation closure exceeds the order limit {limit}"
                    )
                index[r] = len(elements)
                elements.append(r)
                queue.append(r)
    table = [[index[_compose(p, q)] for q in elements] for p in elements]
    names = [_cycle_name(p) for p in elements]
    gen_names = {
        _GEN_SYMBOLS[i]: index[g] for i, g in enumerate(gens) if i < len(_GEN_SYMBOLS)
    }
    return Group(
        table,
        names,
        kind="permutation",
        description=f"permutation:deg{degree}",
        generator_names=gen_names,
    )


def _build(spec: GroupSpec, limit: int) -> Group:
    if spec.kind == "cyclic":
        return _build_cyclic(spec.n or 1, limit)
    if spec.kind == "dihedral":
        return _build_dihedral(spec.n or 1, limit)
    if spec.kind == "symmetric":
        return _build_symmetric(spec.n or 1, limit)
    if spec.kind == "direct_product":
        return _build_direct_product(spec, limit)
    if spec.kind == "cayley":
        _check_order(len(spec.table or ()), limit, "cayley group")
        return Group(spec.table or (), spec.names or (), kind="cayley", description="cayley")
    if spec.kind == "permutation":
        return _build_permutation(spec, limit)
    raise InvalidSpec(f"unknown group kind {spec.kind!r}")


def build_group(spec: GroupSpec | dict, *, max_order: int | None = None) -> Group:
    """Build a group from a GroupSpec or its dict form."""
    if isinstance(spec, dict):
        spec = GroupSpec.from_dict(spec)
    limit = config.max_order() if max_order is None else max_order
    return _build(spec, limit)
