"""The link orbit category of a finite group, and the ordinary orbit category.

Objects are strictly increasing chains of subgroups ``H0 < ... < Hn``.  A morphism
``H -> K`` is a pair ``(iota, gamma H0)`` where ``iota`` is the unique
order-preserving inclusion with ``K[iota(j)] == H[j]`` and ``gamma`` is a coset of
``H0`` inside the intersection of the normalizers of all ``Hj``.  Composition of
``H -(g)-> K -(g')-> J`` is labelled by the coset of ``g g'``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .errors import InvalidChain, InvalidMorphism, NotComposable
from .groups import (
    Coset,
    FiniteGroup,
    Subgroup,
    all_subgroups,
    coset_rep,
    intersect_all,
    is_normal,
    left_cosets,
    normalizer,
    subgroup_labels,
)
from .report import Report


@dataclass(frozen=True)
class SubgroupChain:
    subgroups: tuple[Subgroup, ...]

    def __post_init__(self):
        subs = tuple(self.subgroups)
        object.__setattr__(self, "subgroups", subs)
        if not subs:
            raise InvalidChain("a chain needs at least one subgroup")
        parent = subs[0].parent
        for a, b in zip(subs, subs[1:]):
            if b.parent != parent:
                raise InvalidChain("subgroups from different groups")
            if not (a.elementset < b.elementset):
                raise InvalidChain("chain is not strictly increasing")

    @property
    def group(self) -> FiniteGroup:
        return self.subgroups[0].parent

    @property
    def n(self) -> int:
        """Simplex dimension: number of subgroups minus one."""
        return len(self.subgroups) - 1

    @property
    def base(self) -> Subgroup:
        return self.subgroups[0]

    def __len__(self):
        return len(self.subgroups)

    def __getitem__(self, i) -> Subgroup:
        return self.subgroups[i]

    def __iter__(self):
        return iter(self.subgroups)

    @cached_property
    def index_of(self) -> dict[Subgroup, int]:
        return {h: i for i, h in enumerate(self.subgroups)}

    @cached_property
    def normalizer(self) -> Subgroup:
        """Intersection of the normalizers of every subgroup in the chain."""
        group = self.group
        return intersect_all(group, (normalizer(group, h) for h in self.subgroups))

    def label(self, labels: dict[Subgroup, str] | None = None) -> str:
        labels = labels or subgroup_labels(self.group)
        return "<".join(labels[h] for h in self.subgroups)

    def elements(self) -> list[list[int]]:
        return [list(h.elements) for h in self.subgroups]


def multi_weil(group: FiniteGroup, chain: SubgroupChain) -> list[Coset]:
    """Cosets of H0 in the intersection of the normalizers of the chain."""
    big = chain.normalizer
    if not is_normal(chain.base, big):
        raise AssertionError("base subgroup is not normal in the normalizer intersection")
    reps = sorted({coset_rep(group, g, chain.base) for g in big})
    return [Coset(r, chain.base) for r in reps]


@dataclass(frozen=True)
class LinkMorphism:
    src: SubgroupChain
    dst: SubgroupChain
    iota: tuple[int, ...]
    gamma: Coset

    def __post_init__(self):
        object.__setattr__(self, "iota", tuple(self.iota))
        iota, src, dst = self.iota, self.src, self.dst
        if len(iota) != len(src):
            raise InvalidMorphism("iota has the wrong length")
        if any(not 0 <= i < len(dst) for i in iota) or any(a >= b for a, b in zip(iota, iota[1:])):
            raise InvalidMorphism("iota is not a strictly increasing map into the target")
        if any(dst[i] != h for i, h in zip(iota, src)):
            raise InvalidMorphism("iota does not realize the source chain inside the target")
        if self.gamma.subgroup != src.base:
            raise InvalidMorphism("gamma must be a coset of the source base subgroup")
        if self.gamma.representative not in src.normalizer:
            raise InvalidMorphism("gamma does not normalize every subgroup of the source")
        if Coset.of(self.gamma.representative, src.base) != self.gamma:
            raise InvalidMorphism("gamma representative is not canonical")

    @classmethod
    def _unchecked(cls, src, dst, iota, gamma) -> LinkMorphism:
        obj = object.__new__(cls)
        object.__setattr__(obj, "src", src)
        object.__setattr__(obj, "dst", dst)
        object.__setattr__(obj, "iota", iota)
        object.__setattr__(obj, "gamma", gamma)
        return obj

    @classmethod
    def make(cls, src: SubgroupChain, dst: SubgroupChain, iota, g: int) -> LinkMorphism:
        return cls(src, dst, tuple(iota), Coset.of(g, src.base))

    @property
    def g(self) -> int:
        return self.gamma.representative

    @property
    def is_endo(self) -> bool:
        return self.src == self.dst


def identity(chain: SubgroupChain) -> LinkMorphism:
    return LinkMorphism(chain, chain, tuple(range(len(chain))), Coset.of(0, chain.base))


def compose(f: LinkMorphism, h: LinkMorphism) -> LinkMorphism:
    """The composite ``h . f`` of ``f: H -> K`` and ``h: K -> J``; its label is ``gamma_f gamma_h``."""
    if f.dst != h.src:
        raise NotComposable("target of the first morphism is not the source of the second")
    group = f.src.group
    iota = tuple(h.iota[i] for i in f.iota)
    # closure under composition is checked by verify_axioms, not here
    return LinkMorphism._unchecked(f.src, h.dst, iota, Coset.of(group.mult[f.g][h.g], f.src.base))


def chain_inclusion(src: SubgroupChain, dst: SubgroupChain) -> tuple[int, ...] | None:
    pos = dst.index_of
    try:
        return tuple(pos[h] for h in src.subgroups)
    except KeyError:
        return None


def enumerate_chains(group: FiniteGroup, subgroups: Sequence[Subgroup] | None = None) -> list[SubgroupChain]:
    """All strictly increasing chains, ordered by (length, subgroup indices)."""
    subs = list(subgroups) if subgroups is not None else all_subgroups(group)
    above = {
        i: [j for j in range(len(subs)) if subs[i].elementset < subs[j].elementset]
        for i in range(len(subs))
    }
    found: list[tuple[int, ...]] = []

    def extend(path):
        found.append(path)
        for j in above[path[-1]]:
            extend(path + (j,))

    for i in range(len(subs)):
        extend((i,))
    found.sort(key=lambda p: (len(p), p))
    return [SubgroupChain(tuple(subs[i] for i in p)) for p in found]


def enumerate_chains_brute_force(group: FiniteGroup) -> list[SubgroupChain]:
    """Test oracle: every subset of the subgroup list that is totally ordered by inclusion."""
    subs = all_subgroups(group)
    out = []
    for r in range(1, len(subs) + 1):
        for combo in itertools.combinations(subs, r):
            ordered = sorted(combo, key=len)
            if all(a.elementset < b.elementset for a, b in zip(ordered, ordered[1:])):
                out.append(SubgroupChain(tuple(ordered)))
    return out


class LinkOrbitCategory:
    """Materialized link orbit category: every hom-set is built eagerly."""

    def __init__(self, group: FiniteGroup, objects: Sequence[SubgroupChain] | None = None):
        self.group = group
        self.subgroups = all_subgroups(group)
        self.objects = list(objects) if objects is not None else enumerate_chains(group, self.subgroups)
        self.index = {c: i for i, c in enumerate(self.objects)}
        self.labels = subgroup_labels(group, self.subgroups)
        self._weil = {c: multi_weil(group, c) for c in self.objects}
        self.homs: dict[tuple[int, int], list[LinkMorphism]] = {}
        for i, src in enumerate(self.objects):
            for j, dst in enumerate(self.objects):
                self.homs[i, j] = self._build_hom(src, dst)

    def _build_hom(self, src, dst) -> list[LinkMorphism]:
        iota = chain_inclusion(src, dst)
        if iota is None:
            return []
        return [LinkMorphism(src, dst, iota, c) for c in self._weil[src]]

    def hom(self, src: SubgroupChain, dst: SubgroupChain) -> list[LinkMorphism]:
        return self.homs[self.index[src], self.index[dst]]

    def multi_weil(self, chain: SubgroupChain) -> list[Coset]:
        return self._weil[chain]

    def morphisms(self) -> Iterator[LinkMorphism]:
        for ms in self.homs.values():
            yield from ms

    def label(self, chain: SubgroupChain) -> str:
        return chain.label(self.labels)

    def chain_by_label(self, text: str) -> SubgroupChain:
        for c in self.objects:
            if self.label(c) == text:
                return c
        raise KeyError(f"no chain labelled {text!r}; known: {[self.label(c) for c in self.objects]}")

    def __len__(self):
        return len(self.objects)


def hom(cat: LinkOrbitCategory, src: SubgroupChain, dst: SubgroupChain) -> list[LinkMorphism]:
    return cat.hom(src, dst)


def hom_count_formula(src: SubgroupChain, dst: SubgroupChain) -> int:
    """#inclusions times |intersection of normalizers| / |H0|."""
    inclusions = sum(
        1
        for iota in itertools.combinations(range(len(dst)), len(src))
        if all(dst[i] == h for i, h in zip(iota, src))
    )
    return inclusions * len(src.normalizer) // len(src.base)


def hom_brute_force(src: SubgroupChain, dst: SubgroupChain) -> set[tuple[tuple[int, ...], frozenset[int]]]:
    """Definition-level hom-set: filter every (order-preserving map, group element) pair.

    Returns the set of (iota, coset-as-element-set) pairs, so it shares no code
    with the canonical coset machinery.
    """
    group = src.group
    out = set()
    for iota in itertools.product(range(len(dst)), repeat=len(src)):
        if any(a >= b for a, b in zip(iota, iota[1:])):
            continue
        if any(dst[i].elementset != h.elementset for i, h in zip(iota, src)):
            continue
        for g in group:
            ok = True
            for h in src:
                conj = {group.mult[group.mult[g][x]][group.inv[g]] for x in h}
                if conj != h.elementset:
                    ok = False
                    break
            if ok:
                coset = frozenset(group.mult[g][x] for x in src.base)
                out.add((iota, coset))
    return out


def verify_hom_counts(cat: LinkOrbitCategory) -> Report:
    """Brute-force hom-sets against the formula and the enumerated hom-sets, for every pair."""
    report = Report(f"hom counts for {cat.group.name or cat.group.order}")
    mismatches = 0
    for src in cat.objects:
        for dst in cat.objects:
            brute = hom_brute_force(src, dst)
            listed = {(m.iota, frozenset(m.gamma.elements)) for m in cat.hom(src, dst)}
            ok = len(brute) == hom_count_formula(src, dst) and brute == listed
            mismatches += not ok
            report.check(ok, lambda: f"{cat.label(src)} -> {cat.label(dst)}: brute {len(brute)}, formula {hom_count_formula(src, dst)}")
    report.details = {"pairs": len(cat.objects) ** 2, "mismatches": mismatches}
    return report


def verify_axioms(cat: LinkOrbitCategory) -> Report:
    """Exhaustive identity, associativity, closure and hom-count checks."""
    report = Report(f"category axioms for {cat.group.name or cat.group.order}")
    n = len(cat.objects)
    homsets = {k: set(v) for k, v in cat.homs.items()}
    for (i, j), ms in cat.homs.items():
        src, dst = cat.objects[i], cat.objects[j]
        report.check(
            len(ms) == hom_count_formula(src, dst) and len(set(ms)) == len(ms),
            lambda: f"hom count mismatch {cat.label(src)} -> {cat.label(dst)}",
        )
        for m in ms:
            report.check(compose(identity(src), m) == m, lambda: f"left identity fails for {m}")
            report.check(compose(m, identity(dst)) == m, lambda: f"right identity fails for {m}")
    for i in range(n):
        report.check(identity(cat.objects[i]) in homsets[i, i], f"identity missing at object {i}")

    triples = 0
    for i in range(n):
        for j in range(n):
            first = cat.homs[i, j]
            if not first:
                continue
            for k in range(n):
                second = cat.homs[j, k]
                if not second:
                    continue
                comps = {}
                for f in first:
                    for h in second:
                        fh = compose(f, h)
                        comps[f, h] = fh
                        report.check(fh in homsets[i, k], lambda: f"composite not in hom-set {i}->{k}")
                for l in range(n):
                    third = cat.homs[k, l]
                    if not third:
                        continue
                    for (f, h), fh in comps.items():
                        for q in third:
                            triples += 1
                            left = compose(fh, q)
                            right = compose(f, compose(h, q))
                            report.check(left == right, lambda: f"associativity fails: {f}, {h}, {q}")
    report.details = {"objects": n, "morphisms": sum(len(v) for v in cat.homs.values()), "triples": triples}
    return report


# ---------------------------------------------------------------------------
# the ordinary orbit category


@dataclass(frozen=True)
class OrbitMorphism:
    """Equivariant map G/H -> G/K sending eH to gamma K."""

    src: Subgroup
    dst: Subgroup
    gamma: Coset = field()

    def __post_init__(self):
        group = self.src.parent
        g = self.gamma.representative
        ks = self.dst.elementset
        # g^-1 H g must lie in K for eH -> gK to be well defined
        if any(group.conj(group.inv[g], h) not in ks for h in self.src):
            raise InvalidMorphism("eH -> gamma K is not well defined")


def orbit_hom(group: FiniteGroup, h: Subgroup, k: Subgroup) -> list[OrbitMorphism]:
    """Morphisms G/H -> G/K in the orbit category."""
    ks = k.elementset
    out = []
    for c in left_cosets(group, k):
        g = c.representative
        if all(group.conj(group.inv[g], x) in ks for x in h):
            out.append(OrbitMorphism(h, k, c))
    return out


def orbit_fixed_points(group: FiniteGroup, h: Subgroup, k: Subgroup) -> int:
    """|(G/K)^H|, counting cosets (as element sets) fixed by left multiplication by H."""
    cosets = {frozenset(group.mult[g][x] for x in k) for g in group}
    return sum(
        1 for c in cosets if all(frozenset(group.mult[a][y] for y in c) == c for a in h)
    )


# ---------------------------------------------------------------------------
# export


def export_category(cat: LinkOrbitCategory, fmt: str = "dot", self_maps: bool = True) -> str:
    if fmt == "dot":
        return _to_dot(cat, self_maps)
    if fmt == "json":
        return json.dumps(category_to_json(cat), sort_keys=True, indent=1)
    raise ValueError(f"unknown format {fmt!r}")


def _to_dot(cat: LinkOrbitCategory, self_maps: bool) -> str:
    lines = [f'digraph "L_{cat.group.name or cat.group.order}" {{']
    for i, c in enumerate(cat.objects):
        lines.append(f'  n{i} [label="{cat.label(c)}"];')
    names = cat.group.element_names
    for (i, j), ms in sorted(cat.homs.items()):
        if not ms or (i == j and not self_maps):
            continue
        for m in ms:
            lines.append(f'  n{i} -> n{j} [label="{names[m.g]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def category_to_json(cat: LinkOrbitCategory) -> dict:
    return {
        "group": cat.group.to_json(),
        "objects": [c.elements() for c in cat.objects],
        "homs": {
            f"{i}->{j}": [{"iota": list(m.iota), "gamma": m.g} for m in ms]
            for (i, j), ms in sorted(cat.homs.items())
            if ms
        },
    }


def load_category(data) -> LinkOrbitCategory:
    """Rebuild a category from its JSON form and check it against the recomputed one."""
    if isinstance(data, str):
        data = json.loads(data)
    group = FiniteGroup.from_json(data["group"])
    objects = [
        SubgroupChain(tuple(Subgroup(group, tuple(h)) for h in chain)) for chain in data["objects"]
    ]
    cat = LinkOrbitCategory(group, objects)
    for key, entries in data["homs"].items():
        i, j = map(int, key.split("->"))
        src, dst = objects[i], objects[j]
        given = {LinkMorphism.make(src, dst, e["iota"], e["gamma"]) for e in entries}
        if given != set(cat.homs[i, j]):
            raise InvalidMorphism(f"hom-set {key} does not match the recomputed category")
    for (i, j), ms in cat.homs.items():
        if ms and f"{i}->{j}" not in data["homs"]:
            raise InvalidMorphism(f"hom-set {i}->{j} missing from JSON")
    return cat
