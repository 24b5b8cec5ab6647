"""Linking simplices as exact combinatorial objects.

For a chain ``H0 < ... < Hn`` the linking simplex is ``G x Delta^n`` with
``(g, x) ~ (g', x)`` whenever the last ``k`` coordinates of ``x`` vanish and
``g Hk == g' Hk``.  The stratum index of ``x`` is ``k = n - max{i : t_i != 0}``.
Points are stored with exact rational coordinates and a canonical (minimal)
representative of ``g Hk``.

The group acts on the left, ``a . (g, x) = (a g, x)``, so the stabilizer of a
point ``(g, x)`` in stratum ``k`` is the conjugate ``g Hk g^-1``; it equals ``Hk``
exactly when ``g`` normalizes ``Hk``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BadCoordinates, BadInclusion, ChainMismatch, InvalidMorphism, NotALinkMap
from .g_complex import GSemiSimplicialSet, GSimplicialMap, from_keyed
from .groups import FiniteGroup, Subgroup, conjugate_subgroup, coset_rep
from .link_category import (
    LinkMorphism,
    LinkOrbitCategory,
    SubgroupChain,
    compose,
    identity,
)
from .report import Report


def _coords(coords) -> tuple[Fraction, ...]:
    try:
        cs = tuple(Fraction(c) for c in coords)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise BadCoordinates(str(exc)) from None
    if not cs:
        raise BadCoordinates("no coordinates")
    if any(c < 0 or c > 1 for c in cs):
        raise BadCoordinates("coordinates must lie in [0, 1]")
    if sum(cs) != 1:
        raise BadCoordinates("coordinates must sum to 1")
    return cs


def stratum_index(coords: Sequence[Fraction]) -> int:
    n = len(coords) - 1
    top = max(i for i, t in enumerate(coords) if t != 0)
    return n - top


@dataclass(frozen=True)
class SimplexPoint:
    chain: SubgroupChain
    g: int
    coords: tuple[Fraction, ...]

    @property
    def k(self) -> int:
        return stratum_index(self.coords)

    @property
    def subgroup(self) -> Subgroup:
        return self.chain[self.k]

    def to_json(self, cat: LinkOrbitCategory | None = None) -> dict:
        chain = cat.index[self.chain] if cat is not None else self.chain.elements()
        return {"chain": chain, "g": self.g, "coords": [str(c) for c in self.coords]}


def canonicalize(p: SimplexPoint) -> SimplexPoint:
    cs = _coords(p.coords)
    if len(cs) != len(p.chain):
        raise BadCoordinates("coordinate count does not match the chain length")
    k = stratum_index(cs)
    group = p.chain.group
    return SimplexPoint(p.chain, coset_rep(group, p.g, p.chain[k]), cs)


def point(chain: SubgroupChain, g: int, coords: Iterable) -> SimplexPoint:
    return canonicalize(SimplexPoint(chain, g, tuple(coords)))


def point_from_json(data: dict, cat: LinkOrbitCategory) -> SimplexPoint:
    chain = data["chain"]
    if isinstance(chain, int):
        chain = cat.objects[chain]
    else:
        chain = SubgroupChain(tuple(Subgroup(cat.group, tuple(h)) for h in chain))
    return point(chain, int(data["g"]), data["coords"])


def equivalent(p: SimplexPoint, q: SimplexPoint) -> bool:
    """The gluing relation tested directly (no canonical forms)."""
    if p.chain != q.chain or tuple(map(Fraction, p.coords)) != tuple(map(Fraction, q.coords)):
        return False
    k = stratum_index(p.coords)
    group = p.chain.group
    h = p.chain[k]
    return group.mul(group.inv[p.g], q.g) in h


def act(a: int, p: SimplexPoint) -> SimplexPoint:
    group = p.chain.group
    return canonicalize(SimplexPoint(p.chain, group.mult[a][p.g], p.coords))


def stabilizer(p: SimplexPoint) -> Subgroup:
    return conjugate_subgroup(p.g, p.subgroup)


def stabilizer_brute_force(p: SimplexPoint) -> Subgroup:
    group = p.chain.group
    p = canonicalize(p)
    return Subgroup(group, tuple(a for a in group if act(a, p) == p))


def _check_inclusion(iota: Sequence[int], m: int):
    if any(not 0 <= i <= m for i in iota) or any(a >= b for a, b in zip(iota, iota[1:])):
        raise BadInclusion(f"{list(iota)} is not a strictly increasing map into [{m}]")


def iota_star(iota: Sequence[int], coords: Sequence, m: int) -> tuple[Fraction, ...]:
    """Push barycentric coordinates along iota: slot m - iota(k) receives t_(n-k)."""
    n = len(coords) - 1
    if len(iota) != n + 1:
        raise BadInclusion("inclusion length does not match the coordinate count")
    _check_inclusion(iota, m)
    out = [Fraction(0)] * (m + 1)
    for j in range(m + 1):
        out[m - j] = sum((Fraction(coords[n - k]) for k in range(n + 1) if iota[k] == j), Fraction(0))
    return tuple(out)


def induced_map(mor: LinkMorphism, p: SimplexPoint) -> SimplexPoint:
    """(g, x) -> (g gamma, iota_*(x))."""
    if p.chain != mor.src:
        raise ChainMismatch("point does not lie in the source linking simplex")
    group = p.chain.group
    return point(mor.dst, group.mult[p.g][mor.g], iota_star(mor.iota, p.coords, mor.dst.n))


def face_barycenters(chain: SubgroupChain) -> list[tuple[Fraction, ...]]:
    """Barycenters of every face of Delta^n (vertices and edge midpoints included)."""
    n = chain.n
    out = []
    for r in range(1, n + 2):
        for support in itertools.combinations(range(n + 1), r):
            w = Fraction(1, r)
            out.append(tuple(w if i in support else Fraction(0) for i in range(n + 1)))
    return out


def sample_points(chain: SubgroupChain) -> list[SimplexPoint]:
    """Canonical points over all face barycenters and all group elements."""
    seen = {}
    for coords in face_barycenters(chain):
        for g in chain.group:
            p = point(chain, g, coords)
            seen[p] = None
    return list(seen)


def verify_functor(group: FiniteGroup, cat: LinkOrbitCategory | None = None) -> Report:
    """Check functoriality, equivariance, injectivity and isovariance on the sample grid."""
    cat = cat or LinkOrbitCategory(group)
    report = Report(f"linking simplex functor for {group.name or group.order}")
    samples = {c: sample_points(c) for c in cat.objects}
    images: dict[tuple[LinkMorphism, SimplexPoint], SimplexPoint] = {}

    def image(m, p):
        key = (m, p)
        out = images.get(key)
        if out is None:
            out = images[key] = induced_map(m, p)
        return out

    for c in cat.objects:
        ident = identity(c)
        for p in samples[c]:
            report.check(image(ident, p) == p, lambda: f"identity moves {p}")
    for m in cat.morphisms():
        seen = {}
        for p in samples[m.src]:
            q = image(m, p)
            report.check(seen.setdefault(q, p) == p, lambda: f"{m} is not injective at {p}")
            report.check(stabilizer(q) == stabilizer(p), lambda: f"{m} changes isotropy at {p}")
            for a in group:
                report.check(image(m, act(a, p)) == act(a, q), lambda: f"{m} is not equivariant at {p}")
    pairs = 0
    n = len(cat.objects)
    for i in range(n):
        for j in range(n):
            for f in cat.homs[i, j]:
                for k in range(n):
                    for h in cat.homs[j, k]:
                        pairs += 1
                        fh = compose(f, h)
                        for p in samples[f.src]:
                            report.check(
                                image(fh, p) == image(h, image(f, p)),
                                lambda: f"composite mismatch at {p}",
                            )
    report.details = {"objects": n, "composable_pairs": pairs, "samples": sum(map(len, samples.values()))}
    return report


# ---------------------------------------------------------------------------
# cell structure


@dataclass(frozen=True)
class StratifiedCell:
    """Open cell (support S, coset g H_(n - max S)) of a linking simplex."""

    chain: SubgroupChain
    support: tuple[int, ...]
    g: int

    @property
    def dim(self) -> int:
        return len(self.support) - 1

    @property
    def k(self) -> int:
        return self.chain.n - max(self.support)

    @property
    def subgroup(self) -> Subgroup:
        return self.chain[self.k]

    def face(self, i: int) -> StratifiedCell:
        """Drop the i-th support index and coarsen the coset."""
        support = self.support[:i] + self.support[i + 1:]
        k = self.chain.n - max(support)
        return StratifiedCell(self.chain, support, coset_rep(self.chain.group, self.g, self.chain[k]))

    def translate(self, a: int) -> StratifiedCell:
        group = self.chain.group
        return StratifiedCell(self.chain, self.support, coset_rep(group, group.mult[a][self.g], self.subgroup))

    def barycenter(self) -> SimplexPoint:
        w = Fraction(1, len(self.support))
        coords = tuple(w if i in self.support else Fraction(0) for i in range(self.chain.n + 1))
        return point(self.chain, self.g, coords)

    def key(self):
        return (self.support, self.g)


@dataclass
class CellModel:
    chain: SubgroupChain
    cells: list[StratifiedCell]

    def by_dim(self, d: int) -> list[StratifiedCell]:
        return [c for c in self.cells if c.dim == d]

    def faces(self, cell: StratifiedCell) -> list[StratifiedCell]:
        return [cell.face(i) for i in range(len(cell.support))] if cell.dim > 0 else []

    def act(self, a: int, cell: StratifiedCell) -> StratifiedCell:
        return cell.translate(a)

    def counts(self) -> list[int]:
        return [len(self.by_dim(d)) for d in range(self.chain.n + 1)]


def cell_model(chain: SubgroupChain) -> CellModel:
    group = chain.group
    n = chain.n
    cells = []
    for r in range(1, n + 2):
        for support in itertools.combinations(range(n + 1), r):
            h = chain[n - max(support)]
            for g in sorted({coset_rep(group, x, h) for x in group}):
                cells.append(StratifiedCell(chain, support, g))
    return CellModel(chain, cells)


@lru_cache(maxsize=None)
def to_semisimplicial(chain: SubgroupChain) -> GSemiSimplicialSet:
    """Ordered semi-simplicial model of the linking simplex; simplex names are (support, g)."""
    model = cell_model(chain)
    group = chain.group
    levels = [[c.key() for c in model.by_dim(d)] for d in range(chain.n + 1)]

    def face(d, i, key):
        return StratifiedCell(chain, *key).face(i).key()

    def act_fn(a, key):
        return StratifiedCell(chain, *key).translate(a).key()

    x = from_keyed(group, levels, face, act_fn)
    x.chain = chain
    return x


def induced_cell(mor: LinkMorphism, cell: StratifiedCell) -> StratifiedCell:
    """Image of an open cell under the map induced by ``mor``."""
    if cell.chain != mor.src:
        raise ChainMismatch("cell does not lie in the source linking simplex")
    n, m = mor.src.n, mor.dst.n
    support = tuple(m - mor.iota[n - i] for i in cell.support)
    group = mor.src.group
    out = StratifiedCell(mor.dst, support, 0)
    return StratifiedCell(mor.dst, support, coset_rep(group, group.mult[cell.g][mor.g], out.subgroup))


def realize(mor: LinkMorphism) -> GSimplicialMap:
    """The induced map between semi-simplicial models."""
    src, dst = to_semisimplicial(mor.src), to_semisimplicial(mor.dst)
    rows = []
    for d in range(len(src.levels)):
        rows.append([dst.find(d, induced_cell(mor, StratifiedCell(mor.src, *key)).key()) for key in src.levels[d]])
    return GSimplicialMap(src, dst, rows)


def classify_link_map(f: GSimplicialMap, src: SubgroupChain, dst: SubgroupChain) -> LinkMorphism:
    """Recover (iota, gamma) from a map between semi-simplicial linking simplices.

    iota is read off from where the base vertices land, gamma from the image of
    the base top cell.  Raises NotALinkMap if the map is not of that form, which
    happens for maps that match subgroups only up to conjugacy.
    """
    x, y = to_semisimplicial(src), to_semisimplicial(dst)
    if f.src.levels != x.levels or f.dst.levels != y.levels:
        raise ChainMismatch("map is not between the given linking simplices")
    n, m = src.n, dst.n
    if not f.is_dimension_preserving:
        raise NotALinkMap("map collapses simplices")
    iota = []
    for j in range(n + 1):
        vertex = x.find(0, ((n - j,), coset_rep(src.group, 0, src[j])))
        (support,), _ = y.name(0, f.target(0, vertex))
        iota.append(m - support)
    top = x.find(n, (tuple(range(n + 1)), coset_rep(src.group, 0, src.base)))
    _, g = y.name(n, f.target(n, top))
    try:
        mor = LinkMorphism.make(src, dst, iota, g)
    except InvalidMorphism as exc:
        raise NotALinkMap(str(exc)) from None
    if realize(mor) != f:
        raise NotALinkMap("map differs from the realization of its (iota, gamma) label")
    return mor


def verify_classification(cat: LinkOrbitCategory, budget: int | None = None) -> Report:
    """Enumerate isovariant maps between all linking-simplex pairs and classify them."""
    from .g_complex import DEFAULT_BUDGET, enumerate_isovariant_maps

    report = Report(f"map classification for {cat.group.name or cat.group.order}")
    unlabelled = 0
    for (i, j), homset in cat.homs.items():
        src, dst = cat.objects[i], cat.objects[j]
        for mor in homset:
            report.check(classify_link_map(realize(mor), src, dst) == mor, lambda: f"classify(realize({mor})) differs")
        maps = enumerate_isovariant_maps(to_semisimplicial(src), to_semisimplicial(dst), budget or DEFAULT_BUDGET)
        labels = set()
        for f in maps:
            try:
                labels.add(classify_link_map(f, src, dst))
            except NotALinkMap:
                unlabelled += 1
        report.check(labels == set(homset), lambda: f"classification of {cat.label(src)} -> {cat.label(dst)} is not onto the hom-set")
    report.details = {"pairs": len(cat.homs), "conjugate_only_maps": unlabelled}
    return report


def describe(chain: SubgroupChain, labels: dict | None = None) -> str:
    """Human-readable cell model, strata and stabilizers."""
    group = chain.group
    model = cell_model(chain)
    lines = [f"linking simplex {chain.label(labels)} (dimension {chain.n}, group order {group.order})"]
    lines.append("cells per dimension: " + ", ".join(str(c) for c in model.counts()))
    for cell in model.cells:
        stab = conjugate_subgroup(cell.g, cell.subgroup)
        lines.append(
            f"  support={list(cell.support)} g={group.name_of(cell.g)} stratum k={cell.k} "
            f"stabilizer={[group.name_of(x) for x in stab]}"
        )
    return "\n".join(lines)
