import itertools
import json
import random

import pytest

import oracles
from isovariant.colimits import (
    Diagram,
    PushoutData,
    attach_cell,
    cell_pair,
    coend,
    collapse_cylinder,
    constant_diagram,
    double_mapping_cylinder,
    flip_disk,
    generating_sets,
    glue,
    hocolim_pi0_property_test,
    mapping_telescope,
    mediating_map,
    pushout,
    random_pushout_data,
    representable_diagram,
)
from isovariant.errors import InvalidMap, NonFunctorialDiagram, NotIsovariantAttachment, NotIsovariantLeg
from isovariant.g_complex import (
    GSimplicialMap,
    check_isovariant,
    disjoint_union,
    empty,
    exact_stratum,
    fixed_subset,
    from_complex,
    g_isomorphic,
    identity_map,
    orbit,
    product,
    standard_simplex,
    stratum_pi0,
)
from isovariant.groups import all_subgroups, cyclic
from isovariant.link_category import LinkOrbitCategory, SubgroupChain, compose, identity
from isovariant.linking_simplex import to_semisimplicial

C2 = cyclic(2)


def counts(x):
    return [x.count(d) for d in range(len(x.levels))]


def fixed_arc():
    return from_complex(C2, ["u", "v"], [{}, {}], [["u", "v"]])


def free_arcs():
    """Two disjoint edges swapped by C2."""
    return from_complex(C2, ["a0", "a1", "b0", "b1"], [{}, {"a0": "b0", "a1": "b1", "b0": "a0", "b1": "a1"}], [["a0", "a1"], ["b0", "b1"]])


def pi0_counts(x):
    return {h.elements: stratum_pi0(exact_stratum(x, h)).count for h in all_subgroups(x.group)}


def test_pushout_along_identities():
    x = free_arcs()
    one = identity_map(x)
    po = pushout(PushoutData(x, x, x, one, one))
    assert g_isomorphic(po.space, x) is not None


def test_wedge_of_fixed_arcs():
    point = orbit(C2, C2.whole)
    arc = fixed_arc()
    f = GSimplicialMap(point, arc, [[arc.find(0, ("u",))]])
    po = pushout(PushoutData(point, arc, arc, f, f))
    assert counts(po.space) == [3, 2]
    assert stratum_pi0(exact_stratum(po.space, C2.whole)).count == 1


def test_gluing_free_edges_at_free_endpoints():
    a = orbit(C2, C2.trivial)
    b = free_arcs()
    f = GSimplicialMap(a, b, [[b.find(0, ("a1",)), b.find(0, ("b1",))]])
    g = GSimplicialMap(a, b, [[b.find(0, ("a0",)), b.find(0, ("b0",))]])
    po = pushout(PushoutData(a, b, b, f, g))
    # brute force: 8 vertices, 2 pairs of endpoints identified, 4 edges
    assert counts(po.space) == [6, 4]
    assert pi0_counts(po.space)[C2.trivial.elements] == 2


def test_non_isovariant_leg_is_rejected():
    a = orbit(C2, C2.trivial)
    b = orbit(C2, C2.whole)
    f = GSimplicialMap(a, b, [[0, 0]])
    with pytest.raises(NotIsovariantLeg):
        PushoutData(a, b, b, f, f)
    data = PushoutData(a, b, b, f, f, equivariant_only=True)
    assert counts(pushout(data).space) == [1]


def test_mediating_map():
    point = orbit(C2, C2.whole)
    arc = fixed_arc()
    f = GSimplicialMap(point, arc, [[arc.find(0, ("u",))]])
    data = PushoutData(point, arc, arc, f, f)
    po = pushout(data)
    # cocone: fold both arcs onto one arc
    fold = identity_map(arc)
    m = mediating_map(po, data, fold, fold)
    assert po.to_b.compose(m) == fold and po.to_c.compose(m) == fold
    # unique: every simplex of the pushout lies in the image of B or C
    images = {(d, po.to_b.target(d, s)) for d, s in arc.simplices()} | {(d, po.to_c.target(d, s)) for d, s in arc.simplices()}
    assert images == set(po.space.simplices())
    # not a cocone: the two legs send the glued vertex to different places
    two = from_complex(C2, ["u", "v", "w", "z"], [{}, {}], [["u", "v"], ["w", "z"]])
    left = GSimplicialMap(arc, two, [[two.find(0, ("u",)), two.find(0, ("v",))], [two.find(1, ("u", "v"))]])
    right = GSimplicialMap(arc, two, [[two.find(0, ("w",)), two.find(0, ("z",))], [two.find(1, ("w", "z"))]])
    with pytest.raises(InvalidMap):
        mediating_map(po, data, left, right)


def test_double_mapping_cylinder_of_identities():
    a = free_arcs()
    one = identity_map(a)
    cyl = double_mapping_cylinder(PushoutData(a, a, a, one, one))
    assert pi0_counts(cyl.space) == pi0_counts(a)
    coords = set(cyl.cylinder_coordinate.values())
    assert coords == {(0, 0), (1, 1), (0, 1)}


def test_open_cylinder_is_a_times_interval():
    rng = random.Random(3)
    for _ in range(10):
        data = random_pushout_data(C2, rng)
        cyl = double_mapping_cylinder(data)
        for h in all_subgroups(C2):
            stratum = exact_stratum(cyl.space, h).simplices
            open_part = {k for k in cyl.open_cylinder() if k in stratum}
            expected = set()
            for d, s in cyl.prism.simplices():
                q, a, r, _, _ = cyl.prism.levels[d][s]
                if r == 1 and (q, a) in exact_stratum(data.a, h):
                    expected.add((d, cyl.from_prism.target(d, s)))
            assert open_part == expected


def test_flip_disk_boundary_cylinder():
    a = orbit(C2, C2.trivial)
    b = free_arcs()
    f = GSimplicialMap(a, b, [[b.find(0, ("a1",)), b.find(0, ("b1",))]])
    data = PushoutData(a, b, b, f, f)
    cyl = double_mapping_cylinder(data)
    po = pushout(data)
    free = C2.trivial
    assert stratum_pi0(exact_stratum(cyl.space, free)).count == stratum_pi0(exact_stratum(po.space, free)).count == 2


def test_collapsing_the_cylinder_gives_the_pushout():
    rng = random.Random(5)
    for _ in range(10):
        data = random_pushout_data(C2, rng)
        cyl = double_mapping_cylinder(data)
        po = pushout(data)
        crush = collapse_cylinder(cyl, po)
        hit = {(q, t) for row in crush.images for q, t, _ in row}
        assert hit == set(po.space.simplices())
        assert cyl.to_b.compose(_flat(crush)) == po.to_b


def _flat(crush):
    """Restrict the collapse map to its dimension-preserving part, for comparison."""
    rows = [[t if q == d else 0 for q, t, _ in row] for d, row in enumerate(crush.images)]
    return GSimplicialMap(crush.src, crush.dst, rows, check=False)


def test_mapping_telescope_of_identities():
    x = free_arcs()
    tel, stages = mapping_telescope([x, x, x], [identity_map(x), identity_map(x)])
    assert pi0_counts(tel) == pi0_counts(x)
    for s in stages:
        assert check_isovariant(s)


def test_mapping_telescope_needs_matching_lengths():
    x = free_arcs()
    with pytest.raises(InvalidMap):
        mapping_telescope([x, x], [])


@pytest.mark.parametrize("name,trials", [("c2", 50), ("s3", 30)])
def test_hocolim_pi0_small(name, trials, groups):
    report = hocolim_pi0_property_test(0, trials, groups[name])
    assert report.passed, report.failures
    assert report.details["agreement"] == "100.0%"


def test_attach_fixed_point_to_empty():
    g = SubgroupChain((C2.whole,))
    step = attach_cell(empty(C2), g, 0)
    assert counts(step.space) == [1]
    assert step.space.stabilizer(0, 0) == C2.whole


def test_cell_pair_shapes():
    link = SubgroupChain((C2.trivial, C2.whole))
    boundary, body, inc = cell_pair(link, 2)
    assert counts(boundary) == counts(product(to_semisimplicial(link), from_complex(cyclic(1), [0, 1, 2], [{}], [[0, 1], [1, 2], [0, 2]])))
    assert check_isovariant(inc)
    with pytest.raises(ValueError):
        cell_pair(link, 3)


def test_free_cell_on_fixed_points_is_rejected():
    disk = flip_disk()
    fixed = sorted(s for d, s in fixed_subset(disk, C2.whole).simplices if d == 0)
    free = SubgroupChain((C2.trivial,))
    boundary, _, _ = cell_pair(free, 1)
    attaching = GSimplicialMap(boundary, disk, [[fixed[0]] * boundary.count(0)])
    with pytest.raises(NotIsovariantAttachment):
        attach_cell(disk, free, 1, attaching)


def test_flip_disk_is_connected():
    disk = flip_disk()
    union, _ = disjoint_union(disk)
    from isovariant.g_complex import SimplexSet

    assert len(SimplexSet(union, frozenset(union.simplices())).components()) == 1


def test_glue_requires_isovariant_maps():
    a = orbit(C2, C2.trivial)
    x = orbit(C2, C2.whole)
    f = GSimplicialMap(a, x, [[0, 0]])
    with pytest.raises(NotIsovariantLeg):
        glue(x, f, f)


def _c2cat():
    return LinkOrbitCategory(C2)


@pytest.mark.parametrize("name", ["c2", "c4"])
def test_representable_coends(name, groups):
    cat = LinkOrbitCategory(groups[name])
    for h in cat.objects:
        assert g_isomorphic(coend(representable_diagram(cat, h)), to_semisimplicial(h)) is not None


def test_coend_is_independent_of_morphism_order(groups):
    cat = LinkOrbitCategory(groups["c4"])
    h = cat.chain_by_label("e<C2<C4")
    t = representable_diagram(cat, h)
    base = coend(t)
    for seed in range(3):
        assert g_isomorphic(coend(t, rng=random.Random(seed)), base) is not None


def test_constant_diagram_coend_collapses_free_points():
    # the strict coend identifies g with g*tau on the free stratum, so only fixed points remain
    x = coend(constant_diagram(_c2cat()))
    assert counts(x) == [2, 1]
    strata = pi0_counts(x)
    assert strata[C2.whole.elements] == 1
    assert strata[C2.trivial.elements] == 0


def test_diagram_requires_every_arrow():
    cat = _c2cat()
    t = constant_diagram(cat)
    arrows = dict(t.arrows)
    arrows.pop(next(m for m in arrows if m != identity(m.src)))
    with pytest.raises(NonFunctorialDiagram):
        Diagram(cat, t.values, arrows)


def test_corrupted_arrows_are_rejected_exactly_when_not_functorial():
    cat = _c2cat()
    checked = rejected = 0
    for h in cat.objects:
        t = representable_diagram(cat, h)
        for m, arrow in t.arrows.items():
            if not arrow.src.levels:
                continue
            for row in itertools.product(range(arrow.dst.count(0)), repeat=arrow.src.count(0)):
                if list(row) == arrow.levelwise()[0]:
                    continue
                arrows = dict(t.arrows)
                arrows[m] = GSimplicialMap(arrow.src, arrow.dst, [list(row)])
                plain = {k: (v.levelwise()[0] if v.src.levels else []) for k, v in arrows.items()}
                functorial = oracles.diagram_is_functorial(cat, plain, compose, identity)
                checked += 1
                try:
                    Diagram(cat, t.values, arrows)
                    accepted = True
                except NonFunctorialDiagram:
                    accepted = False
                    rejected += 1
                assert accepted == functorial
    assert checked > 0 and rejected > 0


def test_diagram_json_round_trip():
    cat = LinkOrbitCategory(cyclic(4))
    t = representable_diagram(cat, cat.chain_by_label("e<C2"))
    data = json.loads(json.dumps(t.to_json()))
    again = Diagram.from_json(data)
    assert g_isomorphic(coend(again), coend(t)) is not None


def test_generating_sets_counts(groups):
    assert len(generating_sets(groups["c2"], 2)["cofibrations"]) == 9
    assert len(generating_sets(groups["c4"], 0)["cofibrations"]) == 7
    assert generating_sets(groups["c2"], -1) == {"cofibrations": [], "acyclic_cofibrations": []}
    cell = generating_sets(groups["c2"], 1)["acyclic_cofibrations"][-1]
    src, dst = cell.realize()
    assert counts(src)[0] < counts(dst)[0]


def test_standard_simplex_interval_trivial_action():
    i = standard_simplex(1, C2)
    assert all(i.stabilizer(d, s) == C2.whole for d, s in i.simplices())
