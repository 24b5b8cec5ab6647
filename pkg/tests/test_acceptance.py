"""Acceptance checks, one test function per criterion.

The terminal summary (see conftest.py) prints one PASS/FAIL line per criterion.
"""
import io
import itertools
import random
import re
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

import oracles
from conftest import BATTERY, BATTERY_WITH_Q8
from isovariant.cli import collapse_to_point, point_to_axis, run, run_verify, verify_coend
from isovariant.colimits import Diagram, attach_cell, cell_pair, constant_diagram, flip_disk, hocolim_pi0_property_test, representable_diagram
from isovariant.errors import GroupTableError, NoIdentity, NoInverse, NonAssociativeTable, NonFunctorialDiagram, NotIsovariantAttachment
from isovariant.g_complex import (
    GSimplicialMap,
    check_equivariant,
    check_isovariant,
    discrete,
    enumerate_isovariant_maps,
    exact_stratum,
    from_complex,
    isovariant_product_discrete,
    isovariant_product_membership,
    stratum_pi0,
    we_obstruction,
)
from isovariant.groups import FiniteGroup, cyclic
from isovariant.link_category import LinkOrbitCategory, SubgroupChain, compose, hom_brute_force, hom_count_formula, identity
from isovariant.linking_simplex import classify_link_map, realize, to_semisimplicial, verify_classification, verify_functor

FIXTURES = Path(__file__).parent / "fixtures"
C2 = cyclic(2)


# 1


@pytest.mark.parametrize("name", BATTERY_WITH_Q8)
def test_criterion_01_category_axioms(name, groups):
    start = time.perf_counter()
    (report,) = run_verify("category", groups[name])
    elapsed = time.perf_counter() - start
    assert report.passed, report.failures
    assert report.checks > 0
    assert elapsed < 60


# 2


@pytest.mark.parametrize("name", BATTERY_WITH_Q8)
def test_criterion_02_hom_count_oracle(name, groups):
    g = groups[name]
    cat = LinkOrbitCategory(g)
    mismatches = []
    for a, b in itertools.product(cat.objects, repeat=2):
        expected = oracles.hom_count(g, [h.elements for h in a], [h.elements for h in b])
        got = (len(hom_brute_force(a, b)), hom_count_formula(a, b), len(cat.hom(a, b)))
        if got != (expected,) * 3:
            mismatches.append((cat.label(a), cat.label(b), expected, got))
    assert mismatches == []
    (report,) = run_verify("homcount", g)
    assert report.passed, report.failures


# 3

# arrows drawn in the C4 picture: covering pairs only, with their multiplicities
FIGURE_C4 = {
    ("e<C4", "e<C2<C4"): 4,
    ("e<C2", "e<C2<C4"): 4,
    ("C2<C4", "e<C2<C4"): 2,
    ("e", "e<C4"): 4,
    ("e", "e<C2"): 4,
    ("C4", "e<C4"): 1,
    ("C4", "C2<C4"): 1,
    ("C2", "C2<C4"): 2,
    ("C2", "e<C2"): 2,
}


def _dot_multiplicities(text):
    labels = dict(re.findall(r'^\s*(n\d+) \[label="([^"]*)"\];$', text, re.M))
    edges = re.findall(r"^\s*(n\d+) -> (n\d+) ", text, re.M)
    counts = {}
    for a, b in edges:
        key = (labels[a], labels[b])
        counts[key] = counts.get(key, 0) + 1
    return labels, counts


def test_criterion_03_c4_figure():
    out = io.StringIO()
    assert run(["category", "--group", "c4", "--dot", "--no-self-maps"], out=out) == 0
    text = out.getvalue()
    again = io.StringIO()
    run(["category", "--group", "c4", "--dot", "--no-self-maps"], out=again)
    assert text == again.getvalue() == (FIXTURES / "c4.dot").read_text()

    labels, counts = _dot_multiplicities(text)
    assert len(labels) == 7
    for pair, n in FIGURE_C4.items():
        assert counts.get(pair) == n, pair
    root_order = {"e": 1, "C2": 2, "C4": 4}
    cat = LinkOrbitCategory(cyclic(4))
    for (src, dst), n in counts.items():
        assert n == 4 // root_order[src.split("<")[0]]
        assert set(src.split("<")) < set(dst.split("<"))
    # every proper inclusion of chains shows up
    expected_pairs = {
        (cat.label(a), cat.label(b))
        for a, b in itertools.product(cat.objects, repeat=2)
        if a != b and set(a.subgroups) <= set(b.subgroups)
    }
    assert set(counts) == expected_pairs


# 4


@pytest.mark.parametrize("name", BATTERY_WITH_Q8)
def test_criterion_04_functoriality(name, groups):
    report = verify_functor(groups[name])
    assert report.passed, report.failures
    assert report.checks > 0


# 5


def test_criterion_05_representable_coend(groups):
    start = time.perf_counter()
    for name in ("c2", "c4", "s3"):
        report = verify_coend(groups[name])
        assert report.passed, report.failures
        assert report.details["chains"] == len(LinkOrbitCategory(groups[name]).objects)
    assert time.perf_counter() - start < 120


# 6


def test_criterion_06_flip_disk_example():
    disk = flip_disk()
    into_axis = point_to_axis(disk)
    collapse = collapse_to_point(disk)
    assert check_equivariant(into_axis) and check_isovariant(into_axis)
    assert check_equivariant(collapse) and not check_isovariant(collapse)

    obstruction = we_obstruction(into_axis)
    assert not obstruction.passed
    assert any("source stratum is empty" in f and "[0]" in f for f in obstruction.failures), obstruction.failures

    fixed = stratum_pi0(exact_stratum(disk, C2.whole))
    free = stratum_pi0(exact_stratum(disk, C2.trivial))
    assert fixed.count == 1
    assert free.count == 2 and free.is_transitive


# 7


def _interval():
    return from_complex(C2, [0, -1, 1], [{}, {-1: 1, 1: -1}], [[0, -1], [0, 1]])


def _point(interval, v):
    if v == 0:
        return (0, interval.find(0, (0,))), [1]
    return (1, interval.find(1, (0, 1 if v > 0 else -1))), [1 - abs(v), abs(v)]


CASES = [
    (F(0), F(0)),
    (F(0), F(1, 2)),
    (F(-3, 4), F(0)),
    (F(1, 2), F(1, 2)),
    (F(-1, 3), F(1)),
    (F(1), F(-1)),
]


def test_criterion_07_isovariant_product():
    i = _interval()
    for a, b in CASES:
        expected = (a == 0) == (b == 0)  # both zero or both nonzero
        assert isovariant_product_membership(i, i, _point(i, a), _point(i, b)) is expected, (a, b)

    three = discrete(C2, ["a", "b", "c"], [[0, 1, 2], [1, 0, 2]])
    prod = isovariant_product_discrete(three, three)
    assert len(prod.levels) == 1 and prod.count(0) == 5


# 8


@pytest.mark.parametrize("name", BATTERY)
def test_criterion_08_hocolim_pi0(name, groups):
    start = time.perf_counter()
    report = hocolim_pi0_property_test(seed=2024, trials=200, group=groups[name])
    elapsed = time.perf_counter() - start
    assert report.details["trials"] >= 200
    assert report.details["agreement"] == "100.0%", report.failures
    assert report.passed
    assert elapsed < 120


# 9


@pytest.mark.parametrize("name", ["c2", "c4"])
def test_criterion_09_map_classification(name, groups):
    cat = LinkOrbitCategory(groups[name])
    for m in cat.morphisms():
        assert classify_link_map(realize(m), m.src, m.dst) == m
    report = verify_classification(cat)
    assert report.passed, report.failures
    assert report.details["pairs"] == len(cat.objects) ** 2
    for a, b in itertools.product(cat.objects, repeat=2):
        found = {classify_link_map(f, a, b) for f in enumerate_isovariant_maps(to_semisimplicial(a), to_semisimplicial(b))}
        assert found == set(cat.hom(a, b))


# 10


def _intercalate_swaps(table):
    """Latin squares obtained by flipping one 2x2 subsquare away from the identity row and column."""
    n = len(table)
    for r1, r2 in itertools.combinations(range(1, n), 2):
        for c1, c2 in itertools.combinations(range(1, n), 2):
            if table[r1][c1] == table[r2][c2] and table[r1][c2] == table[r2][c1]:
                out = [list(row) for row in table]
                out[r1][c1], out[r1][c2] = table[r1][c2], table[r1][c1]
                out[r2][c1], out[r2][c2] = table[r2][c2], table[r2][c1]
                yield out


ERRORS = {"identity": NoIdentity, "inverse": NoInverse, "associativity": NonAssociativeTable}


def _table_mutants(groups):
    rng = random.Random(10)
    for name in BATTERY:
        table = [list(row) for row in groups[name].mult]
        for mutant in _intercalate_swaps(table):
            yield mutant, True
        n = len(table)
        for _ in range(25):
            out = [list(row) for row in table]
            r, c = rng.randrange(n), rng.randrange(n)
            out[r][c] = (out[r][c] + rng.randrange(1, n)) % n
            yield out, False


def _is_latin(table):
    n = len(table)
    return all(sorted(row) == list(range(n)) for row in table) and all(
        sorted(col) == list(range(n)) for col in zip(*table)
    )


def _attachment_mutants():
    """Every equivariant attaching map for the free 1-cell into the flip disk and the fixed point."""
    free = SubgroupChain((C2.trivial,))
    boundary, _, _ = cell_pair(free, 1)
    for target in (flip_disk(), discrete(C2, ["p"])):
        for f in enumerate_isovariant_maps(boundary, target, isovariant=False):
            yield target, f


def _stab(space, s):
    return {g for g in range(space.group.order) if space.action[g][0][s] == s}


def test_criterion_10_mutation_suite(groups):
    # tables
    nonassoc = 0
    for table, latin in _table_mutants(groups):
        defect = oracles.table_defect(table)
        if defect is None:
            FiniteGroup(table)
            continue
        with pytest.raises(GroupTableError) as info:
            FiniteGroup(table)
        if latin or _is_latin(table):
            assert isinstance(info.value, ERRORS[defect]), (defect, type(info.value))
        nonassoc += defect == "associativity"
    assert nonassoc > 0

    # diagrams
    corrupted = 0
    for name in ("c2", "c3"):
        cat = LinkOrbitCategory(groups[name])
        diagrams = [representable_diagram(cat, h) for h in cat.objects] + [constant_diagram(cat)]
        for t in diagrams:
            for m, arrow in t.arrows.items():
                if not arrow.src.levels or arrow.dst.count(0) < 2:
                    continue
                rows = arrow.levelwise()
                for s in range(arrow.src.count(0)):
                    for new in range(arrow.dst.count(0)):
                        if new == rows[0][s]:
                            continue
                        row = list(rows[0])
                        row[s] = new
                        try:
                            bad = GSimplicialMap(arrow.src, arrow.dst, [row])
                        except Exception:
                            continue
                        arrows = dict(t.arrows)
                        arrows[m] = bad
                        plain = {k: (v.levelwise()[0] if v.src.levels else []) for k, v in arrows.items()}
                        if oracles.diagram_is_functorial(cat, plain, compose, identity):
                            Diagram(cat, t.values, arrows)
                            continue
                        corrupted += 1
                        with pytest.raises(NonFunctorialDiagram):
                            Diagram(cat, t.values, arrows)
    assert corrupted > 0

    # attachments
    rejected = 0
    free = SubgroupChain((C2.trivial,))
    for target, f in _attachment_mutants():
        isovariant = all(_stab(f.src, s) == _stab(target, f.target(0, s)) for s in range(f.src.count(0)))
        if isovariant:
            attach_cell(target, free, 1, f)
        else:
            rejected += 1
            with pytest.raises(NotIsovariantAttachment):
                attach_cell(target, free, 1, f)
    assert rejected > 0
