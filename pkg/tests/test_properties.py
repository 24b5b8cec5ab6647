"""Randomized invariants over small groups."""
from fractions import Fraction as F

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from isovariant.g_complex import disjoint_union, quotient, stratum_pi0, exact_stratum, verify_complex
from isovariant.groups import all_subgroups, named_group
from isovariant.link_category import LinkOrbitCategory, compose
from isovariant.linking_simplex import (
    SimplexPoint,
    act,
    canonicalize,
    equivalent,
    induced_map,
    iota_star,
    stabilizer,
    stabilizer_brute_force,
    to_semisimplicial,
)

NAMES = ("c2", "c3", "c4", "v4", "s3", "d4")
CATS = {n: LinkOrbitCategory(named_group(n)) for n in NAMES}
SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def weights(draw, n):
    """A point of the standard n-simplex with small rational coordinates, some zeros allowed."""
    raw = draw(st.lists(st.integers(0, 6), min_size=n + 1, max_size=n + 1).filter(any))
    total = sum(raw)
    return tuple(F(x, total) for x in raw)


@st.composite
def points(draw, names=NAMES):
    cat = CATS[draw(st.sampled_from(names))]
    chain = draw(st.sampled_from(cat.objects))
    g = draw(st.integers(0, cat.group.order - 1))
    return SimplexPoint(chain, g, draw(weights(chain.n)))


@st.composite
def inclusions(draw):
    m = draw(st.integers(0, 5))
    n = draw(st.integers(0, m))
    iota = tuple(sorted(draw(st.sets(st.integers(0, m), min_size=n + 1, max_size=n + 1))))
    return iota, draw(weights(n)), m


@SETTINGS
@given(points())
def test_canonicalize_is_idempotent(p):
    c = canonicalize(p)
    assert canonicalize(c) == c
    assert equivalent(c, p)


@SETTINGS
@given(inclusions())
def test_iota_star_preserves_mass_and_matches_oracle(case):
    iota, coords, m = case
    out = iota_star(iota, coords, m)
    assert sum(out) == 1 and len(out) == m + 1
    assert out == oracles.iota_star(iota, coords, m)


@SETTINGS
@given(points(), st.data())
def test_action_law(p, data):
    group = p.chain[0].parent
    a = data.draw(st.integers(0, group.order - 1))
    b = data.draw(st.integers(0, group.order - 1))
    q = canonicalize(p)
    assert act(a, act(b, q)) == act(group.mult[a][b], q)
    assert act(0, q) == q


@SETTINGS
@given(points(("c4", "v4", "s3")), st.data())
def test_stabilizer_conjugates_along_the_orbit(p, data):
    group = p.chain[0].parent
    q = canonicalize(p)
    stab = stabilizer(q)
    assert stab == stabilizer_brute_force(q)
    a = data.draw(st.integers(0, group.order - 1))
    assert stabilizer(act(a, q)).elementset == {group.conj(a, x) for x in stab}


@SETTINGS
@given(points(("c2", "c4", "s3")), st.data())
def test_induced_maps_are_equivariant(p, data):
    cat = CATS[next(n for n in NAMES if CATS[n].group == p.chain[0].parent)]
    into = [m for m in cat.morphisms() if m.src == p.chain]
    m = data.draw(st.sampled_from(into))
    a = data.draw(st.integers(0, cat.group.order - 1))
    q = canonicalize(p)
    assert induced_map(m, act(a, q)) == act(a, induced_map(m, q))
    onward = [k for k in cat.morphisms() if k.src == m.dst]
    k = data.draw(st.sampled_from(onward))
    assert induced_map(compose(m, k), q) == induced_map(k, induced_map(m, q))


@SETTINGS
@given(st.sampled_from(("c2", "c4", "s3")), st.data())
def test_quotient_of_union_by_identity_pairs(name, data):
    cat = CATS[name]
    x = to_semisimplicial(data.draw(st.sampled_from(cat.objects)))
    union, (i, j) = disjoint_union(x, x)
    # gluing copies at a few vertices (plus their translates) sits between x and x + x
    picks = data.draw(st.lists(st.integers(0, x.count(0) - 1), max_size=3))
    q, m = quotient(union, [((0, i.target(0, s)), (0, j.target(0, s))) for s in picks])
    assert verify_complex(q).passed
    for d in range(len(x.levels)):
        assert x.count(d) <= q.count(d) <= 2 * x.count(d)
    for d, s in union.simplices():
        assert union.stabilizer(d, s) <= q.stabilizer(d, m.target(d, s))
    glued = {i.target(0, s) for s in picks}
    if not picks:
        assert [q.count(d) for d in range(len(q.levels))] == [2 * x.count(d) for d in range(len(x.levels))]
    else:
        assert q.count(0) <= 2 * x.count(0) - len(glued)


@SETTINGS
@given(st.sampled_from(NAMES), st.data())
def test_strata_partition_every_linking_simplex(name, data):
    cat = CATS[name]
    x = to_semisimplicial(data.draw(st.sampled_from(cat.objects)))
    seen = set()
    for h in all_subgroups(cat.group):
        stratum = exact_stratum(x, h).simplices
        assert not (seen & stratum)
        seen |= stratum
        pi = stratum_pi0(exact_stratum(x, h))
        assert pi.count <= len(stratum)
    assert seen == set(x.simplices())
