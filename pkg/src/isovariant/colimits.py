"""Colimits of G-complexes and the coend of linking simplices with a diagram.

All constructions are degreewise quotients of disjoint unions computed with a
union-find, so they only accept dimension-preserving maps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import InvalidMap, NonFunctorialDiagram, NotIsovariantAttachment, NotIsovariantLeg
from .g_complex import (
    FORMAL_TERMINAL,
    GSemiSimplicialSet,
    GSimplicialMap,
    check_isovariant,
    discrete,
    disjoint_union,
    empty,
    exact_stratum,
    find_isovariance_violation,
    g_isomorphic,
    identity_map,
    orbit,
    product,
    product_map,
    quotient,
    random_isovariant_map,
    sphere,
    standard_simplex,
)
from .groups import FiniteGroup, all_subgroups, cyclic
from .link_category import LinkMorphism, LinkOrbitCategory, SubgroupChain, compose, identity
from .linking_simplex import realize, to_semisimplicial
from .report import Report

__all__ = [
    "FORMAL_TERMINAL",
    "Diagram",
    "PushoutData",
    "PushoutResult",
    "CylinderSpace",
    "pushout",
    "mediating_map",
    "glue",
    "double_mapping_cylinder",
    "collapse_cylinder",
    "mapping_telescope",
    "hocolim_pi0_property_test",
    "cell_pair",
    "attach_cell",
    "flip_disk",
    "flip_disk_build",
    "representable_diagram",
    "constant_diagram",
    "coend",
    "g_isomorphic",
    "generating_sets",
]


def _require_flat(f: GSimplicialMap, what: str):
    if not f.is_dimension_preserving:
        raise InvalidMap(f"{what} must not collapse simplices")


# ---------------------------------------------------------------------------
# pushouts


@dataclass
class PushoutData:
    """A span B <-f- A -g-> C.  Legs must be isovariant unless ``equivariant_only``."""

    a: GSemiSimplicialSet
    b: GSemiSimplicialSet
    c: GSemiSimplicialSet
    f: GSimplicialMap
    g: GSimplicialMap
    equivariant_only: bool = False

    def __post_init__(self):
        if self.f.src is not self.a and self.f.src.levels != self.a.levels:
            raise InvalidMap("f does not start at A")
        if self.g.src is not self.a and self.g.src.levels != self.a.levels:
            raise InvalidMap("g does not start at A")
        _require_flat(self.f, "f")
        _require_flat(self.g, "g")
        if not self.equivariant_only:
            for name, leg in (("f", self.f), ("g", self.g)):
                bad = find_isovariance_violation(leg)
                if bad is not None:
                    raise NotIsovariantLeg(f"{name} is not isovariant: {bad}")


@dataclass
class PushoutResult:
    space: GSemiSimplicialSet
    to_b: GSimplicialMap
    to_c: GSimplicialMap


def pushout(data: PushoutData) -> PushoutResult:
    union, (inc_b, inc_c) = disjoint_union(data.b, data.c, group=data.a.group)
    pairs = [
        ((d, inc_b.target(d, data.f.target(d, s))), (d, inc_c.target(d, data.g.target(d, s))))
        for d, s in data.a.simplices()
    ]
    space, q = quotient(union, pairs)
    return PushoutResult(space, inc_b.compose(q), inc_c.compose(q))


def mediating_map(result: PushoutResult, data: PushoutData, u: GSimplicialMap, v: GSimplicialMap) -> GSimplicialMap:
    """The unique map P -> Z with u = m . to_b and v = m . to_c.

    Raises InvalidMap if (u, v) is not a cocone.
    """
    if data.f.compose(u) != data.g.compose(v):
        raise InvalidMap("u . f != v . g: not a cocone")
    p = result.space
    rows: list[list[int | None]] = [[None] * p.count(d) for d in range(len(p.levels))]
    for leg, m in ((result.to_b, u), (result.to_c, v)):
        for d, s in leg.src.simplices():
            t = leg.target(d, s)
            z = m.target(d, s)
            if rows[d][t] is not None and rows[d][t] != z:
                raise InvalidMap("cocone does not factor through the pushout")
            rows[d][t] = z
    if any(x is None for row in rows for x in row):
        raise InvalidMap("pushout has simplices outside the images of B and C")
    return GSimplicialMap(p, u.dst, rows)


def glue(x: GSemiSimplicialSet, f: GSimplicialMap, g: GSimplicialMap):
    """Coequalizer of two isovariant maps A -> X."""
    for leg in (f, g):
        _require_flat(leg, "gluing map")
        if not check_isovariant(leg):
            raise NotIsovariantLeg("gluing maps must be isovariant")
    pairs = [((d, f.target(d, s)), (d, g.target(d, s))) for d, s in f.src.simplices()]
    return quotient(x, pairs)


# ---------------------------------------------------------------------------
# homotopy colimits


@dataclass
class CylinderSpace:
    """Double mapping cylinder with the cylinder coordinate of each simplex.

    ``cylinder_coordinate[(d, s)]`` is the (min, max) of the cylinder coordinate
    over the closed simplex: (0, 0) on the B end, (1, 1) on the C end, (0, 1) for
    simplices that cross the open cylinder.
    """

    space: GSemiSimplicialSet
    cylinder_coordinate: dict[tuple[int, int], tuple[Fraction, Fraction]]
    to_b: GSimplicialMap
    to_c: GSimplicialMap
    from_prism: GSimplicialMap
    prism: GSemiSimplicialSet
    data: PushoutData = field(repr=False)

    def open_cylinder(self) -> set[tuple[int, int]]:
        return {k for k, (lo, hi) in self.cylinder_coordinate.items() if (lo, hi) == (0, 1)}


def _end_key(q, a, end):
    return (q, a, 0, end, tuple((i, 0) for i in range(q + 1)))


def double_mapping_cylinder(data: PushoutData) -> CylinderSpace:
    """B x {0} u_f (A x [0,1]) u_g C x {1}, the interval factor carrying the trivial action."""
    group = data.a.group
    interval = standard_simplex(1, group)
    prism = product(data.a, interval)
    end0, end1 = interval.find(0, (0,)), interval.find(0, (1,))
    union, (inc_b, inc_p, inc_c) = disjoint_union(data.b, prism, data.c, group=group)
    pairs = []
    for d, s in data.a.simplices():
        pairs.append(((d, inc_p.target(d, prism.find(d, _end_key(d, s, end0)))), (d, inc_b.target(d, data.f.target(d, s)))))
        pairs.append(((d, inc_p.target(d, prism.find(d, _end_key(d, s, end1)))), (d, inc_c.target(d, data.g.target(d, s)))))
    space, q = quotient(union, pairs)
    coord: dict = {}
    zero, one = Fraction(0), Fraction(1)
    for d, s in data.b.simplices():
        coord[(d, q.target(d, inc_b.target(d, s)))] = (zero, zero)
    for d, s in data.c.simplices():
        coord[(d, q.target(d, inc_c.target(d, s)))] = (one, one)
    for d, s in prism.simplices():
        key = (d, q.target(d, inc_p.target(d, s)))
        if key not in coord:
            _, _, r, _, _ = prism.levels[d][s]
            coord[key] = (zero, one) if r == 1 else None
    if any(v is None for v in coord.values()):
        raise AssertionError("an end simplex of the prism was not glued")
    return CylinderSpace(space, coord, inc_b.compose(q), inc_c.compose(q), inc_p.compose(q), prism, data)


def collapse_cylinder(cyl: CylinderSpace, po: PushoutResult) -> GSimplicialMap:
    """The map hc -> pushout that crushes the cylinder coordinate.

    Prism simplices collapse onto the pushout image of their A-simplex, so the
    result is a map with collapsed (degenerate) images.
    """
    data = cyl.data
    hc = cyl.space
    rows: list[list] = [[None] * hc.count(d) for d in range(len(hc.levels))]
    for d, s in data.b.simplices():
        rows[d][cyl.to_b.target(d, s)] = po.to_b.target(d, s)
    for d, s in data.c.simplices():
        rows[d][cyl.to_c.target(d, s)] = po.to_c.target(d, s)
    for d, s in cyl.prism.simplices():
        t = cyl.from_prism.target(d, s)
        if rows[d][t] is not None:
            continue
        qa, a, _, _, path = cyl.prism.levels[d][s]
        image = po.to_b.target(qa, data.f.target(qa, a))
        rows[d][t] = (qa, image, tuple(u for u, _ in path))
    return GSimplicialMap(hc, po.space, rows)


def mapping_telescope(spaces: Sequence[GSemiSimplicialSet], maps: Sequence[GSimplicialMap]):
    """X0 x I u X1 x I u ... u Xk, gluing Xi x {1} to f_i(Xi) x {0}.

    Returns the telescope and the inclusion of each stage Xi (at its 0 end).
    """
    if len(maps) != len(spaces) - 1:
        raise InvalidMap("need one map between each consecutive pair of spaces")
    for f in maps:
        _require_flat(f, "telescope map")
    group = spaces[0].group
    interval = standard_simplex(1, group)
    end0, end1 = interval.find(0, (0,)), interval.find(0, (1,))
    pieces = [product(x, interval) for x in spaces[:-1]] + [spaces[-1]]
    union, incs = disjoint_union(*pieces, group=group)
    pairs = []
    last = len(spaces) - 1
    for i, f in enumerate(maps):
        for d, s in spaces[i].simplices():
            left = incs[i].target(d, pieces[i].find(d, _end_key(d, s, end1)))
            t = f.target(d, s)
            if i + 1 == last:
                right = incs[i + 1].target(d, t)
            else:
                right = incs[i + 1].target(d, pieces[i + 1].find(d, _end_key(d, t, end0)))
            pairs.append(((d, left), (d, right)))
    space, q = quotient(union, pairs)
    stages = []
    for i, x in enumerate(spaces):
        if i == last:
            rows = [[q.target(d, incs[i].target(d, s)) for s in range(x.count(d))] for d in range(len(x.levels))]
        else:
            rows = [
                [q.target(d, incs[i].target(d, pieces[i].find(d, _end_key(d, s, end0)))) for s in range(x.count(d))]
                for d in range(len(x.levels))
            ]
        stages.append(GSimplicialMap(x, space, rows))
    return space, stages


def _strata_dmc_pi0(data: PushoutData, h) -> tuple[int, dict]:
    """pi0 of the double mapping cylinder of the exact H-strata, as a graph on components."""
    from scipy.cluster.hierarchy import DisjointSet

    comps = {}
    for tag, x in (("A", data.a), ("B", data.b), ("C", data.c)):
        for i, comp in enumerate(exact_stratum(x, h).components()):
            for simplex in comp:
                comps[tag, simplex] = (tag, i)
    ds = DisjointSet(set(comps.values()))
    for d, s in exact_stratum(data.a, h):
        a_node = comps["A", (d, s)]
        ds.merge(a_node, comps["B", (d, data.f.target(d, s))])
        ds.merge(a_node, comps["C", (d, data.g.target(d, s))])
    return ds.n_subsets, {k: ds[v] for k, v in comps.items()}


def _random_piece(group: FiniteGroup, rng: random.Random, subgroups, chains) -> GSemiSimplicialSet:
    kind = rng.choice(("orbit", "orbit", "edge", "link"))
    if kind == "orbit":
        return orbit(group, rng.choice(subgroups))
    if kind == "edge":
        return product(orbit(group, rng.choice(subgroups)), standard_simplex(1))
    return to_semisimplicial(rng.choice(chains))


def _random_space(group, rng, subgroups, chains, lo, hi) -> GSemiSimplicialSet:
    pieces = [_random_piece(group, rng, subgroups, chains) for _ in range(rng.randint(lo, hi))]
    return disjoint_union(*pieces, group=group)[0]


def _random_leg(a, target, rng):
    f = random_isovariant_map(a, target, rng)
    if f is not None:
        return target, f
    union, (inc_t, inc_a) = disjoint_union(target, a, group=a.group)
    return union, inc_a


def random_pushout_data(group: FiniteGroup, rng: random.Random) -> PushoutData:
    subgroups = all_subgroups(group)
    from .link_category import enumerate_chains

    chains = [c for c in enumerate_chains(group, subgroups) if len(c) <= 2]
    a = _random_space(group, rng, subgroups, chains, 1, 2)
    b, f = _random_leg(a, _random_space(group, rng, subgroups, chains, 1, 3), rng)
    c, g = _random_leg(a, _random_space(group, rng, subgroups, chains, 1, 3), rng)
    return PushoutData(a, b, c, f, g)


def hocolim_pi0_property_test(seed: int, trials: int, group: FiniteGroup) -> Report:
    """Compare pi0 of the exact strata of the double mapping cylinder with the
    double mapping cylinder of the strata' pi0, over random isovariant spans."""
    report = Report(f"homotopy pushout pi0 agreement for {group.name or group.order}")
    subgroups = all_subgroups(group)
    agree = 0
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        data = random_pushout_data(group, rng)
        cyl = double_mapping_cylinder(data)
        ok = True
        for h in subgroups:
            stratum = exact_stratum(cyl.space, h)
            hc_comps = stratum.components()
            expected, node_of = _strata_dmc_pi0(data, h)
            ok &= len(hc_comps) == expected
            # the partition of B and C strata simplices must also agree
            label = {s: i for i, comp in enumerate(hc_comps) for s in comp}
            seen: dict = {}
            for tag, leg in (("B", cyl.to_b), ("C", cyl.to_c)):
                for d, s in exact_stratum(leg.src, h):
                    node = node_of[tag, (d, s)]
                    hc_label = label[(d, leg.target(d, s))]
                    ok &= seen.setdefault(node, hc_label) == hc_label
            if len(set(seen.values())) != len(seen):
                ok = False
        agree += ok
        report.check(ok, f"trial {trial} (seed {seed}) disagrees")
    report.details = {"trials": trials, "seed": seed, "agreement": f"{100 * agree / max(trials, 1):.1f}%"}
    return report


# ---------------------------------------------------------------------------
# cell attachment


def cell_pair(chain: SubgroupChain, n: int):
    """(Delta^H x S^(n-1), Delta^H x D^n, inclusion) with fixed triangulations, n <= 2."""
    if not 0 <= n <= 2:
        raise ValueError("cells are provided for n = 0, 1, 2")
    link = to_semisimplicial(chain)
    s, disk = sphere(n - 1), standard_simplex(n)
    inc = GSimplicialMap(s, disk, [[disk.find(d, k) for k in s.levels[d]] for d in range(len(s.levels))])
    boundary, body = product(link, s), product(link, disk)
    return boundary, body, product_map(identity_map(link), inc, boundary, body)


def attach_cell(x: GSemiSimplicialSet, chain: SubgroupChain, n: int, attaching: GSimplicialMap | None = None) -> PushoutResult:
    """Attach Delta^H x D^n along an isovariant map Delta^H x S^(n-1) -> X."""
    boundary, body, inc = cell_pair(chain, n)
    if attaching is None:
        if n:
            raise NotIsovariantAttachment("an attaching map is required for n > 0")
        attaching = GSimplicialMap(boundary, x, [])
    if attaching.src.levels != boundary.levels:
        raise InvalidMap("attaching map does not start at Delta^H x S^(n-1)")
    attaching = GSimplicialMap(boundary, attaching.dst, attaching.images)
    bad = find_isovariance_violation(attaching)
    if bad is not None:
        raise NotIsovariantAttachment(f"attaching map is not isovariant: {bad}")
    return pushout(PushoutData(boundary, x, body, attaching, inc))


@dataclass
class FlipDisk:
    space: GSemiSimplicialSet
    stages: list[str]
    cells: dict[str, GSimplicialMap]

    def axis(self) -> tuple[GSemiSimplicialSet, GSimplicialMap]:
        """The fixed diameter as a sub-complex with its inclusion."""
        from .g_complex import fixed_subset, subcomplex

        return subcomplex(self.space, fixed_subset(self.space, self.space.group.whole).simplices)


def _track(cells: dict, step: PushoutResult, new: str | None = None):
    for k, m in list(cells.items()):
        cells[k] = m.compose(step.to_b)
    if new:
        cells[new] = step.to_c


def flip_disk_build() -> FlipDisk:
    """The C2 flip disk from two fixed points, two free orbits, two link 0-cells
    and one link 1-cell; every attaching map is checked for isovariance."""
    group = cyclic(2)
    e, whole = group.trivial, group.whole
    fixed, free, link = SubgroupChain((whole,)), SubgroupChain((e,)), SubgroupChain((e, whole))
    x = empty(group)
    cells: dict[str, GSimplicialMap] = {}
    stages = []
    for name, chain in (("x1", fixed), ("x2", fixed), ("y1", free), ("y2", free)):
        step = attach_cell(x, chain, 0)
        _track(cells, step, name)
        x = step.space
        stages.append(f"{name}: Delta^{'G' if chain is fixed else 'e'} x D^0")

    # link 0-cells: ends of Delta^(e<G) glued to a fixed point and a free orbit
    to_fixed = realize(LinkMorphism.make(fixed, link, (1,), 0))
    to_free = realize(LinkMorphism.make(free, link, (0,), 0))
    ends, (inc_fixed, inc_free) = disjoint_union(to_fixed.src, to_free.src, group=group)
    ends_into_link = _from_union(ends, [inc_fixed, inc_free], [to_fixed, to_free], to_fixed.dst)
    for name, fx, fy in (("m1", "x1", "y1"), ("m2", "x2", "y2")):
        attaching = _from_union(ends, [inc_fixed, inc_free], [cells[fx], cells[fy]], x)
        step = pushout(PushoutData(ends, x, to_fixed.dst, attaching, ends_into_link))
        _track(cells, step, name)
        x = step.space
        stages.append(f"{name}: Delta^(e<G) x D^0 glued to {fx}, {fy}")

    boundary, body, inc = cell_pair(link, 1)
    link_space = to_semisimplicial(link)
    rows = []
    for d in range(len(boundary.levels)):
        row = []
        for q, a, r, b, path in boundary.levels[d]:
            end = sphere(0).levels[0][b]
            row.append(cells["m1" if end == (0,) else "m2"].target(d, a))
        rows.append(row)
    step = attach_cell(x, link, 1, GSimplicialMap(boundary, x, rows))
    _track(cells, step, "link")
    stages.append("link: Delta^(e<G) x D^1 glued to m1 and m2")
    del link_space
    return FlipDisk(step.space, stages, cells)


def _from_union(union, incs, maps, target) -> GSimplicialMap:
    rows = [[None] * union.count(d) for d in range(len(union.levels))]
    for inc, m in zip(incs, maps):
        for d, s in inc.src.simplices():
            rows[d][inc.target(d, s)] = m.target(d, s)
    return GSimplicialMap(union, target, rows)


def flip_disk() -> GSemiSimplicialSet:
    return flip_disk_build().space


# ---------------------------------------------------------------------------
# diagrams and the coend


class Diagram:
    """A contravariant functor from the link orbit category to semi-simplicial sets.

    Values carry the trivial group action (a complex over the trivial group).
    ``arrows[m]`` for ``m: K -> K'`` is a map ``T(K') -> T(K)``.
    """

    def __init__(self, cat: LinkOrbitCategory, values: Mapping[SubgroupChain, GSemiSimplicialSet], arrows: Mapping[LinkMorphism, GSimplicialMap], *, check=True):
        self.cat = cat
        trivial = cyclic(1)
        self.values = {c: values.get(c, empty(trivial)) for c in cat.objects}
        self.arrows = dict(arrows)
        if check:
            self.validate()

    def validate(self):
        cat = self.cat
        for m in cat.morphisms():
            arrow = self.arrows.get(m)
            if arrow is None:
                raise NonFunctorialDiagram(f"no arrow for a morphism {cat.label(m.src)} -> {cat.label(m.dst)}")
            if arrow.src.levels != self.values[m.dst].levels or arrow.dst.levels != self.values[m.src].levels:
                raise NonFunctorialDiagram("arrow has the wrong source or target")
            if not arrow.is_dimension_preserving:
                raise NonFunctorialDiagram("arrows must not collapse simplices")
        for c in cat.objects:
            if self.arrows[identity(c)] != identity_map(self.values[c]):
                raise NonFunctorialDiagram(f"identity of {cat.label(c)} is not sent to the identity")
        n = len(cat.objects)
        for i in range(n):
            for j in range(n):
                for f in cat.homs[i, j]:
                    tf = self.arrows[f]
                    for k in range(n):
                        for h in cat.homs[j, k]:
                            if self.arrows[compose(f, h)] != self.arrows[h].compose(tf):
                                raise NonFunctorialDiagram(
                                    f"T(h.f) != T(f).T(h) for {cat.label(f.src)} -> {cat.label(f.dst)} -> {cat.label(h.dst)}"
                                )

    @classmethod
    def from_sets(cls, cat, sets: Mapping[SubgroupChain, Sequence], act: Callable[[LinkMorphism, object], object], *, check=True) -> Diagram:
        """Set-valued diagram; ``act(m, x)`` sends x in T(m.dst) to T(m.src)."""
        trivial = cyclic(1)
        values = {c: discrete(trivial, list(sets[c])) if sets.get(c) else empty(trivial) for c in cat.objects}
        arrows = {}
        for m in cat.morphisms():
            src, dst = values[m.dst], values[m.src]
            row = [dst.find(0, act(m, x)) for x in (src.levels[0] if src.levels else ())]
            arrows[m] = GSimplicialMap(src, dst, [row] if src.levels else [])
        return cls(cat, values, arrows, check=check)

    def to_json(self) -> dict:
        cat = self.cat
        return {
            "group": cat.group.to_json(),
            "objects": [c.elements() for c in cat.objects],
            "values": {str(i): self.values[c].to_json(include_group=False) for i, c in enumerate(cat.objects)},
            "arrows": [
                {
                    "src": cat.index[m.src],
                    "dst": cat.index[m.dst],
                    "iota": list(m.iota),
                    "gamma": m.g,
                    "map": [list(row) for row in self.arrows[m].levelwise()],
                }
                for m in cat.morphisms()
            ],
        }

    @classmethod
    def from_json(cls, data, cat: LinkOrbitCategory | None = None) -> Diagram:
        import json

        from .groups import FiniteGroup, Subgroup

        if isinstance(data, str):
            data = json.loads(data)
        if cat is None:
            group = FiniteGroup.from_json(data["group"])
            objects = None
            if "objects" in data:
                objects = [SubgroupChain(tuple(Subgroup(group, tuple(h)) for h in c)) for c in data["objects"]]
            cat = LinkOrbitCategory(group, objects)
        trivial = cyclic(1)
        values = {}
        for key, v in data.get("values", {}).items():
            chain = cat.objects[int(key)]
            if isinstance(v, list):
                values[chain] = discrete(trivial, v)
            else:
                values[chain] = GSemiSimplicialSet.from_json(v, group=trivial)
        for c in cat.objects:
            values.setdefault(c, empty(trivial))
        arrows = {}
        for entry in data.get("arrows", []):
            src, dst = cat.objects[entry["src"]], cat.objects[entry["dst"]]
            m = LinkMorphism.make(src, dst, entry["iota"], entry["gamma"])
            arrows[m] = GSimplicialMap(values[dst], values[src], entry["map"])
        return cls(cat, values, arrows)


def representable_diagram(cat: LinkOrbitCategory, h: SubgroupChain) -> Diagram:
    """K -> hom(K, H), acting by precomposition; elements named by (iota, gamma)."""

    def name(m: LinkMorphism):
        return (m.iota, m.g)

    sets = {k: [name(m) for m in cat.hom(k, h)] for k in cat.objects}
    lookup = {(cat.index[m.src], name(m)): m for m in cat.morphisms() if m.dst == h}

    def act(m, x):
        phi = lookup[cat.index[m.dst], x]
        return name(compose(m, phi))

    return Diagram.from_sets(cat, sets, act)


def constant_diagram(cat: LinkOrbitCategory) -> Diagram:
    return Diagram.from_sets(cat, {c: ["*"] for c in cat.objects}, lambda m, x: x)


def coend(t: Diagram, rng: random.Random | None = None) -> GSemiSimplicialSet:
    """Linking simplices glued along T: the quotient of the disjoint union of
    Delta^K x T(K) by (Delta(m) x 1)(s) ~ (1 x T(m))(s) for every morphism m."""
    cat = t.cat
    group = cat.group
    objects = [c for c in cat.objects if t.values[c].levels]
    pieces = {c: product(to_semisimplicial(c), t.values[c]) for c in objects}
    union, incs = disjoint_union(*(pieces[c] for c in objects), group=group)
    inc = dict(zip(objects, incs))
    morphisms = [m for m in cat.morphisms() if t.values[m.dst].levels]
    if rng is not None:
        rng.shuffle(morphisms)
    pairs = []
    for m in morphisms:
        delta = realize(m)
        arrow = t.arrows[m]
        middle = product(to_semisimplicial(m.src), t.values[m.dst])
        for d, level in enumerate(middle.levels):
            for q, a, r, b, path in level:
                left = pieces[m.dst].find(d, (q, delta.target(q, a), r, b, path))
                right = pieces[m.src].find(d, (q, a, r, arrow.target(r, b), path))
                pairs.append(((d, inc[m.dst].target(d, left)), (d, inc[m.src].target(d, right))))
    space, _ = quotient(union, pairs)
    return space


# ---------------------------------------------------------------------------
# generating (acyclic) cofibrations


@dataclass
class GeneratingMap:
    chain: SubgroupChain
    n: int
    kind: str
    name: str

    def realize(self) -> tuple[GSemiSimplicialSet, GSemiSimplicialSet]:
        """Source and target complexes (n <= 2)."""
        boundary, body, _ = cell_pair(self.chain, self.n)
        if self.kind == "cofibration":
            return boundary, body
        return body, product(body, standard_simplex(1))


def generating_sets(group: FiniteGroup, n_max: int, cat: LinkOrbitCategory | None = None) -> dict[str, list[GeneratingMap]]:
    """Symbolic generating cofibrations and acyclic cofibrations up to dimension n_max."""
    cat = cat or LinkOrbitCategory(group)
    out: dict[str, list[GeneratingMap]] = {"cofibrations": [], "acyclic_cofibrations": []}
    for chain in cat.objects:
        label = cat.label(chain)
        for n in range(n_max + 1):
            out["cofibrations"].append(
                GeneratingMap(chain, n, "cofibration", f"Delta^({label}) x S^{n - 1} -> Delta^({label}) x D^{n}")
            )
            out["acyclic_cofibrations"].append(
                GeneratingMap(
                    chain, n, "acyclic", f"Delta^({label}) x D^{n} x {{0}} -> Delta^({label}) x D^{n} x [0,1]"
                )
            )
    return out
