"""Finite groups given by multiplication tables.

Elements are dense integer indices ``0 .. order-1`` and the identity is always
index 0 (explicit tables are relabelled on load if needed).  Subgroups are
immutable sorted tuples of element indices tied to their parent group.
"""

from __future__ import annotations

import itertools
import json
import random
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    GroupTableError,
    NoIdentity,
    NoInverse,
    NonAssociativeTable,
    NotASubgroup,
    ParentMismatch,
)

EXHAUSTIVE_ORDER = 64
BRUTE_FORCE_ORDER = 16


class FiniteGroup:
    """A finite group presented by its Cayley table."""

    def __init__(self, mult, names=None, name=None, *, check=True):
        table = [list(map(int, row)) for row in mult]
        n = len(table)
        if n == 0:
            raise GroupTableError("empty multiplication table")
        if any(len(row) != n for row in table):
            raise GroupTableError("multiplication table is not square")
        if any(not 0 <= x < n for row in table for x in row):
            raise GroupTableError("table entry out of range")

        identity = _find_identity(table)
        if identity != 0:
            table, names = _swap_labels(table, names, 0, identity)

        inv = []
        for g in range(n):
            row = table[g]
            try:
                h = row.index(0)
            except ValueError:
                raise NoInverse(f"element {g} has no inverse") from None
            if table[h][g] != 0:
                raise NoInverse(f"element {g} has no two-sided inverse")
            inv.append(h)

        self.order = n
        self.identity = 0
        self.mult = tuple(tuple(row) for row in table)
        self.inv = tuple(inv)
        self.element_names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        if len(self.element_names) != n:
            raise GroupTableError("wrong number of element names")
        self.name = name
        if check:
            self._check_associative()

    def _check_associative(self):
        m = np.asarray(self.mult)
        n = self.order
        if n <= EXHAUSTIVE_ORDER:
            left = m[m, :]  # [g, h, k] -> (gh)k
            right = m[:, m]  # [g, h, k] -> g(hk)
            bad = np.argwhere(left != right)
            if len(bad):
                g, h, k = map(int, bad[0])
                raise NonAssociativeTable(f"({g}*{h})*{k} != {g}*({h}*{k})")
            return
        warnings.warn(
            f"group of order {n} exceeds {EXHAUSTIVE_ORDER}; associativity is sampled",
            stacklevel=3,
        )
        rng = np.random.default_rng(0)
        g, h, k = rng.integers(0, n, size=(3, 20000))
        left = m[m[g, h], k]
        right = m[g, m[h, k]]
        bad = np.flatnonzero(left != right)
        if len(bad):
            i = bad[0]
            raise NonAssociativeTable(f"({g[i]}*{h[i]})*{k[i]} != {g[i]}*({h[i]}*{k[i]})")

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mult == other.mult

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash(self.mult)

    def __repr__(self):
        label = self.name or f"order {self.order}"
        return f"FiniteGroup({label})"

    def mul(self, *elements: int) -> int:
        out = 0
        for x in elements:
            out = self.mult[out][x]
        return out

    def conj(self, g: int, x: int) -> int:
        """Return g x g^-1."""
        return self.mult[self.mult[g][x]][self.inv[g]]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mult[x][g]
            k += 1
        return k

    def name_of(self, g: int) -> str:
        return self.element_names[g]

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, (0,), check=False)

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)), check=False)

    @cached_property
    def is_abelian(self) -> bool:
        m = self.mult
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(a))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "identity": 0,
            "mult": [list(row) for row in self.mult],
            "names": list(self.element_names),
            **({"name": self.name} if self.name else {}),
        }

    @classmethod
    def from_json(cls, data) -> FiniteGroup:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            order, mult = data["order"], data["mult"]
        except (KeyError, TypeError) as exc:
            raise GroupTableError(f"malformed group JSON: {exc}") from None
        if len(mult) != order:
            raise GroupTableError("'order' does not match the table size")
        identity = data.get("identity", 0)
        group = cls(mult, data.get("names"), data.get("name"))
        if identity != _find_identity([list(r) for r in mult]):
            raise NoIdentity(f"declared identity {identity} is not the identity")
        return group


def _find_identity(table) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    raise NoIdentity("table has no two-sided identity")


def _swap_labels(table, names, a, b):
    perm = list(range(len(table)))
    perm[a], perm[b] = b, a
    new = [[0] * len(table) for _ in table]
    for x, row in enumerate(table):
        for y, z in enumerate(row):
            new[perm[x]][perm[y]] = perm[z]
    if names is not None:
        names = list(names)
        names[a], names[b] = names[b], names[a]
    return new, names


@dataclass(frozen=True)
class Subgroup:
    """A subgroup, stored as the sorted tuple of its element indices."""

    parent: FiniteGroup = field(compare=False, repr=False)
    elements: tuple[int, ...]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        if self.check:
            _validate_subgroup(self.parent, elems)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.elements == other.elements and self.parent == other.parent

    def __hash__(self):
        return hash(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elementset

    def __iter__(self):
        return iter(self.elements)

    def __le__(self, other: Subgroup) -> bool:
        _same_parent(self, other)
        return self.elementset <= other.elementset

    def __lt__(self, other: Subgroup) -> bool:
        return self <= other and len(self) < len(other)

    @cached_property
    def elementset(self) -> frozenset[int]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def sort_key(self):
        return (len(self.elements), self.elements)

    @cached_property
    def is_cyclic(self) -> bool:
        return any(self.parent.element_order(g) == len(self) for g in self.elements)


def _validate_subgroup(group: FiniteGroup, elems: Sequence[int]):
    s = set(elems)
    if any(not 0 <= g < group.order for g in s):
        raise NotASubgroup("element index out of range")
    if 0 not in s:
        raise NotASubgroup("subset does not contain the identity")
    for a in s:
        if group.inv[a] not in s:
            raise NotASubgroup(f"not closed under inverses ({a})")
        row = group.mult[a]
        for b in s:
            if row[b] not in s:
                raise NotASubgroup(f"not closed under multiplication ({a}*{b})")
    if group.order % len(s):
        raise NotASubgroup("subgroup order does not divide the group order")


def _same_parent(*subgroups: Subgroup):
    first = subgroups[0].parent
    for h in subgroups[1:]:
        if h.parent is not first and h.parent != first:
            raise ParentMismatch("subgroups belong to different groups")


@dataclass(frozen=True)
class Coset:
    """Left coset ``representative * subgroup`` with canonical (minimal) representative."""

    representative: int
    subgroup: Subgroup

    @classmethod
    def of(cls, g: int, subgroup: Subgroup) -> Coset:
        row = subgroup.parent.mult[g]
        return cls(min(row[h] for h in subgroup.elements), subgroup)

    @property
    def elements(self) -> tuple[int, ...]:
        row = self.subgroup.parent.mult[self.representative]
        return tuple(sorted(row[h] for h in self.subgroup.elements))

    def __contains__(self, g):
        return Coset.of(g, self.subgroup).representative == self.representative

    def translate(self, a: int) -> Coset:
        """Left translation a * (g H)."""
        return Coset.of(self.subgroup.parent.mult[a][self.representative], self.subgroup)


def coset_rep(group: FiniteGroup, g: int, subgroup: Subgroup) -> int:
    row = group.mult[g]
    return min(row[h] for h in subgroup.elements)


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    mult = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["e", "a"] + [f"a^{k}" for k in range(2, n)]
    return FiniteGroup(mult, names[:n], f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n; element r^i s^j is index i + n*j."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")

    def decode(x):
        return x % n, x // n

    def mul(x, y):
        i, j = decode(x)
        k, l = decode(y)
        # r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
        return (i + (k if j == 0 else -k)) % n + n * ((j + l) % 2)

    order = 2 * n
    mult = [[mul(x, y) for y in range(order)] for x in range(order)]
    names = []
    for x in range(order):
        i, j = decode(x)
        r = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        s = "s" if j else ""
        names.append((r + s) or "e")
    return FiniteGroup(mult, names, f"D{n}")


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle, x = [], start
        while x not in seen:
            seen.add(x)
            cycle.append(str(x + 1))
            x = perm[x]
        cycles.append("(" + "".join(cycle) + ")")
    return "".join(cycles) or "e"


def symmetric(n: int) -> FiniteGroup:
    """S_n for n <= 4; product is composition (p*q)(x) = p(q(x))."""
    if not 1 <= n <= 4:
        raise ValueError("symmetric groups are supported for 1 <= n <= 4")
    perms = sorted(itertools.permutations(range(n)))  # identity sorts first
    index = {p: i for i, p in enumerate(perms)}
    mult = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return FiniteGroup(mult, [_cycle_name(p) for p in perms], f"S{n}")


def quaternion() -> FiniteGroup:
    units = ["1", "i", "j", "k"]
    # unit products (without sign): i*j = k etc.
    table = {
        ("1", u): (1, u) for u in units
    }
    table.update({(u, "1"): (1, u) for u in units})
    table.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    elems = [(s, u) for s in (1, -1) for u in units]
    index = {e: i for i, e in enumerate(elems)}
    mult = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s, u = table[(u1, u2)]
            row.append(index[(s1 * s2 * s, u)])
        mult.append(row)
    names = [("" if s == 1 else "-") + u for s, u in elems]
    return FiniteGroup(mult, names, "Q8")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Element (x, y) is index x * |b| + y."""
    nb = b.order
    order = a.order * nb
    mult = [
        [a.mult[x // nb][y // nb] * nb + b.mult[x % nb][y % nb] for y in range(order)]
        for x in range(order)
    ]
    names = [f"({a.element_names[x // nb]},{b.element_names[x % nb]})" for x in range(order)]
    label = f"{a.name}x{b.name}" if a.name and b.name else None
    return FiniteGroup(mult, names, label, check=False)


def make_group(kind: str, *args, names=None) -> FiniteGroup:
    """Build a group by family name.

    ``kind`` is one of ``cyclic``, ``dihedral``, ``symmetric``, ``quaternion``,
    ``product`` (two FiniteGroup arguments) or ``table`` (an explicit table).
    """
    if kind == "cyclic":
        return cyclic(*args)
    if kind == "dihedral":
        return dihedral(*args)
    if kind == "symmetric":
        return symmetric(*args)
    if kind == "quaternion":
        return quaternion()
    if kind == "product":
        return direct_product(*args)
    if kind == "table":
        return FiniteGroup(args[0], names)
    raise ValueError(f"unknown group family {kind!r}")


NAMED_GROUPS = ("c2", "c3", "c4", "v4", "s3", "d4", "q8")


def named_group(spec: str) -> FiniteGroup:
    """Parse short names like ``c4``, ``d4``, ``s3``, ``v4``, ``q8``, ``c2xc3``."""
    spec = spec.strip().lower()
    if "x" in spec:
        parts = [named_group(p) for p in spec.split("x")]
        out = parts[0]
        for p in parts[1:]:
            out = direct_product(out, p)
        return out
    if spec == "v4":
        g = direct_product(cyclic(2), cyclic(2))
        g.name = "V4"
        return g
    if spec == "q8":
        return quaternion()
    if spec in ("e", "c1", "trivial"):
        return cyclic(1)
    family, digits = spec[0], spec[1:]
    if not digits.isdigit():
        raise ValueError(f"unknown group {spec!r}")
    n = int(digits)
    if family == "c":
        return cyclic(n)
    if family == "d":
        return dihedral(n)
    if family == "s":
        return symmetric(n)
    raise ValueError(f"unknown group {spec!r}")


# ---------------------------------------------------------------------------
# subgroup machinery


def generate(group: FiniteGroup, generators: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``generators``."""
    elems = {0}
    frontier = [0]
    gens = list(set(generators))
    while frontier:
        nxt = []
        for x in frontier:
            row = group.mult[x]
            for g in gens:
                y = row[g]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(group, tuple(elems), check=False)


def all_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by (order, elements).

    Grows the list from cyclic subgroups by repeatedly joining pairs.
    """
    found = {generate(group, [g]) for g in group}
    frontier = list(found)
    while frontier:
        new = set()
        for h in frontier:
            for k in list(found):
                if h.elementset <= k.elementset or k.elementset <= h.elementset:
                    continue
                j = generate(group, h.elements + k.elements)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = list(new)
    return sorted(found, key=Subgroup.sort_key)


def all_subgroups_brute_force(group: FiniteGroup) -> list[Subgroup]:
    """Test oracle: closure test over every subset containing the identity."""
    n = group.order
    if n > BRUTE_FORCE_ORDER:
        raise ValueError(f"brute-force enumeration is limited to order <= {BRUTE_FORCE_ORDER}")
    out = []
    others = range(1, n)
    for size in range(0, n):
        if n % (size + 1):
            continue
        for rest in itertools.combinations(others, size):
            elems = (0,) + rest
            try:
                out.append(Subgroup(group, elems))
            except NotASubgroup:
                pass
    return sorted(out, key=Subgroup.sort_key)


def normalizer(group: FiniteGroup, h: Subgroup) -> Subgroup:
    if h.parent != group:
        raise ParentMismatch("subgroup is not from this group")
    _validate_subgroup(group, h.elements)
    hs = h.elementset
    elems = [g for g in group if all(group.conj(g, x) in hs for x in h.elements)]
    return Subgroup(group, tuple(elems), check=False)


def left_cosets(group: FiniteGroup, h: Subgroup) -> list[Coset]:
    if h.parent != group:
        raise ParentMismatch("subgroup is not from this group")
    _validate_subgroup(group, h.elements)
    reps = sorted({coset_rep(group, g, h) for g in group})
    return [Coset(r, h) for r in reps]


def conjugate_subgroup(g: int, h: Subgroup) -> Subgroup:
    """g H g^-1."""
    group = h.parent
    return Subgroup(group, tuple(group.conj(g, x) for x in h.elements), check=False)


def intersect(h: Subgroup, k: Subgroup) -> Subgroup:
    _same_parent(h, k)
    return Subgroup(h.parent, tuple(h.elementset & k.elementset), check=False)


def intersect_all(group: FiniteGroup, subgroups: Iterable[Subgroup]) -> Subgroup:
    elems = set(range(group.order))
    for h in subgroups:
        elems &= h.elementset
    return Subgroup(group, tuple(elems), check=False)


def is_subchain_compatible(h: Subgroup, k: Subgroup) -> bool:
    """True when H is contained in K."""
    _same_parent(h, k)
    return h.elementset <= k.elementset


def is_normal(h: Subgroup, k: Subgroup) -> bool:
    """True when H is a normal subgroup of K."""
    group = h.parent
    hs = h.elementset
    return h <= k and all(group.conj(g, x) in hs for g in k for x in h)


def random_element(group: FiniteGroup, rng: random.Random) -> int:
    return rng.randrange(group.order)


def subgroup_labels(group: FiniteGroup, subgroups: Sequence[Subgroup] | None = None) -> dict[Subgroup, str]:
    """Short display labels: ``e``, ``C2``, ``V4``, ``H6``... with suffixes for repeats."""
    subgroups = list(subgroups) if subgroups is not None else all_subgroups(group)
    base = {}
    for h in subgroups:
        if len(h) == 1:
            base[h] = "e"
        elif h.is_cyclic:
            base[h] = f"C{len(h)}"
        elif len(h) == 4:
            base[h] = "V4"
        else:
            base[h] = f"H{len(h)}"
    counts: dict[str, int] = {}
    for label in base.values():
        counts[label] = counts.get(label, 0) + 1
    seen: dict[str, int] = {}
    out = {}
    for h in subgroups:
        label = base[h]
        if counts[label] > 1:
            seen[label] = seen.get(label, 0) + 1
            label = f"{label}_{seen[label]}"
        out[h] = label
    return out
