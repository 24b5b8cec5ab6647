"""Command-line entry point: ``isovariant <subcommand> ...``.

Exit codes: 0 success or pass, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import colimits, g_complex, groups, link_category, linking_simplex
from .errors import IsovariantError
from .g_complex import DEFAULT_BUDGET, GSemiSimplicialSet, GSimplicialMap
from .groups import FiniteGroup
from .link_category import LinkOrbitCategory
from .report import Report

VERIFY_TARGETS = ("lattice", "category", "homcount", "functor", "coend", "lemma-pi0", "classify", "flipdisk")


class UsageError(Exception):
    pass


def load_group(spec: str | None) -> FiniteGroup:
    """A named group (c4, s3, d4, q8, c2xc3, ...) or a path to a group JSON file."""
    if spec is None:
        raise UsageError("--group is required")
    path = Path(spec)
    if spec.endswith(".json") or path.is_file():
        try:
            return FiniteGroup.from_json(path.read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {spec}: {exc}") from None
    try:
        return groups.named_group(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _emit(text: str, path: str | None, out):
    if path:
        Path(path).write_text(text)
        print(f"wrote {path}", file=out)
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _config_line(args) -> str:
    keys = ("command", "target", "group", "seed", "trials", "budget", "format")
    parts = []
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            parts.append(f"{k}={v}")
    return "# config: " + " ".join(parts)


# ---------------------------------------------------------------------------
# verification suites


def verify_lattice(group: FiniteGroup) -> Report:
    report = Report(f"subgroup lattice for {group.name or group.order}")
    subs = groups.all_subgroups(group)
    report.check(len(set(subs)) == len(subs), "duplicate subgroups")
    if group.order <= 16:
        brute = groups.all_subgroups_brute_force(group)
        report.check(set(brute) == set(subs), "closure enumeration differs from brute force")
    subset = set(subs)
    for h in subs:
        report.check(h <= groups.normalizer(group, h), f"{h} not inside its normalizer")
        for k in subs:
            report.check(groups.intersect(h, k) in subset, "lattice not closed under intersection")
    report.details = {"subgroups": len(subs)}
    return report


def verify_coend(group: FiniteGroup, cat: LinkOrbitCategory | None = None, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Report:
    """coend(representable at H) is G-isomorphic to the linking simplex, for every chain."""
    cat = cat or LinkOrbitCategory(group)
    report = Report(f"representable coends for {group.name or group.order}")
    rng = random.Random(seed)
    for i, h in enumerate(cat.objects):
        t = colimits.representable_diagram(cat, h)
        target = linking_simplex.to_semisimplicial(h)
        report.check(
            colimits.g_isomorphic(colimits.coend(t), target, budget) is not None,
            lambda: f"coend at {cat.label(h)} is not isomorphic to the linking simplex",
        )
        if i == len(cat.objects) - 1:
            shuffled = colimits.coend(t, rng=rng)
            report.check(colimits.g_isomorphic(shuffled, target, budget) is not None, "coend depends on morphism order")
    report.details = {"chains": len(cat.objects)}
    return report


def verify_flipdisk() -> Report:
    report = Report("flip disk")
    fd = colimits.flip_disk_build()
    x = fd.space
    g = x.group
    fixed = g_complex.stratum_pi0(g_complex.exact_stratum(x, g.whole))
    free = g_complex.stratum_pi0(g_complex.exact_stratum(x, g.trivial))
    whole = g_complex.SimplexSet(x, frozenset(x.simplices()))
    report.check(fixed.count == 1, f"fixed stratum has {fixed.count} components")
    report.check(free.count == 2 and free.is_transitive, f"free stratum has {free.count} components")
    report.check(len(whole.components()) == 1, "flip disk is not connected")
    report.check(not g_complex.verify_complex(x).failures, "flip disk fails the complex invariants")
    report.details = {"stages": len(fd.stages), "simplices": [x.count(d) for d in range(len(x.levels))]}
    return report


def run_verify(target: str, group: FiniteGroup, *, trials=200, seed=0, budget=DEFAULT_BUDGET) -> list[Report]:
    cat = None

    def category():
        nonlocal cat
        if cat is None:
            cat = LinkOrbitCategory(group)
        return cat

    suites = {
        "lattice": lambda: verify_lattice(group),
        "category": lambda: link_category.verify_axioms(category()),
        "homcount": lambda: link_category.verify_hom_counts(category()),
        "functor": lambda: linking_simplex.verify_functor(group, category()),
        "coend": lambda: verify_coend(group, category(), budget, seed),
        "lemma-pi0": lambda: colimits.hocolim_pi0_property_test(seed, trials, group),
        "classify": lambda: linking_simplex.verify_classification(category(), budget),
        "flipdisk": verify_flipdisk,
    }
    names = VERIFY_TARGETS if target == "all" else (target,)
    return [suites[n]() for n in names]


# ---------------------------------------------------------------------------
# subcommands


def cmd_lattice(args, out) -> int:
    group = load_group(args.group)
    subs = groups.all_subgroups(group)
    labels = groups.subgroup_labels(group, subs)
    if args.json:
        rows = [
            {"label": labels[h], "elements": list(h.elements), "normal": groups.is_normal(h, group.whole),
             "normalizer": list(groups.normalizer(group, h).elements)}
            for h in subs
        ]
        _emit(json.dumps(rows, indent=1), args.emit, out)
        return 0
    lines = [f"{len(subs)} subgroups of {group.name or group.order} (order {group.order})"]
    for h in subs:
        normal = " normal" if groups.is_normal(h, group.whole) else ""
        lines.append(f"  {labels[h]}: order {len(h)} {{{', '.join(group.name_of(x) for x in h)}}}{normal}")
    _emit("\n".join(lines), args.emit, out)
    return 0


def cmd_chains(args, out) -> int:
    group = load_group(args.group)
    cat = LinkOrbitCategory(group)
    if args.json:
        _emit(json.dumps([{"label": cat.label(c), "subgroups": c.elements()} for c in cat.objects], indent=1), args.emit, out)
        return 0
    lines = [f"{len(cat.objects)} chains"]
    for i, c in enumerate(cat.objects):
        weil = len(cat.multi_weil(c))
        lines.append(f"  [{i}] {cat.label(c)}  dim {c.n}  |multi-Weil| {weil}")
    _emit("\n".join(lines), args.emit, out)
    return 0


def cmd_category(args, out) -> int:
    group = load_group(args.group)
    cat = LinkOrbitCategory(group)
    if args.dot:
        _emit(link_category.export_category(cat, "dot", self_maps=not args.no_self_maps), args.emit, out)
        return 0
    if args.json:
        text = link_category.export_category(cat, "json")
        link_category.load_category(text)
        _emit(text, args.emit, out)
        return 0
    lines = [f"link orbit category of {group.name or group.order}: {len(cat.objects)} objects"]
    for (i, j), ms in sorted(cat.homs.items()):
        if ms and (i != j or not args.no_self_maps):
            lines.append(f"  {cat.label(cat.objects[i])} -> {cat.label(cat.objects[j])}: {len(ms)}")
    _emit("\n".join(lines), args.emit, out)
    return 0


def cmd_simplex(args, out) -> int:
    group = load_group(args.group)
    cat = LinkOrbitCategory(group)
    try:
        chain = cat.chain_by_label(args.chain)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    text = linking_simplex.describe(chain, cat.labels)
    if args.point:
        data = json.loads(args.point)
        data.setdefault("chain", cat.index[chain])
        p = linking_simplex.point_from_json(data, cat)
        stab = linking_simplex.stabilizer(p)
        text += f"\npoint {p.to_json()} stratum k={p.k} stabilizer={[group.name_of(x) for x in stab]}"
    _emit(text, args.emit, out)
    return 0


def cmd_check(args, out) -> int:
    f = GSimplicialMap.from_json(_read_json(args.map))
    if args.equivariant:
        bad = g_complex.find_equivariance_violation(f)
        kind = "equivariant"
    else:
        bad = g_complex.find_isovariance_violation(f)
        kind = "isovariant"
    if bad is None:
        print(f"PASS map is {kind}", file=out)
        return 0
    print(f"FAIL map is not {kind}: {bad}", file=out)
    return 1


def _complex_summary(x: GSemiSimplicialSet) -> list[str]:
    lines = [f"simplices per dimension: {[x.count(d) for d in range(len(x.levels))]}"]
    for h in groups.all_subgroups(x.group):
        pi = g_complex.stratum_pi0(g_complex.exact_stratum(x, h))
        if pi.count:
            lines.append(f"  stratum {list(h.elements)}: {pi.count} components, N(H)-orbits {len(pi.orbits())}")
    return lines


def cmd_coend(args, out) -> int:
    if args.diagram:
        data = _read_json(args.diagram)
        cat = None
        if args.group:
            group = load_group(args.group)
            data = dict(data, group=group.to_json())
        t = colimits.Diagram.from_json(data, cat)
    else:
        group = load_group(args.group)
        cat = LinkOrbitCategory(group)
        if args.representable:
            try:
                t = colimits.representable_diagram(cat, cat.chain_by_label(args.representable))
            except KeyError as exc:
                raise UsageError(str(exc.args[0])) from None
        else:
            t = colimits.constant_diagram(cat)
    x = colimits.coend(t)
    if args.emit:
        Path(args.emit).write_text(json.dumps(x.to_json()))
    source = args.diagram or (f"representable at {args.representable}" if args.representable else "constant point diagram")
    print("\n".join([f"coend of {source}"] + _complex_summary(x)), file=out)
    return 0


def collapse_to_point(x: GSemiSimplicialSet) -> GSimplicialMap:
    """The equivariant map from X to a G-fixed point."""
    point = g_complex.orbit(x.group, x.group.whole)
    rows = [[(0, 0, (0,) * (d + 1))] * x.count(d) for d in range(len(x.levels))]
    return GSimplicialMap(x, point, rows)


def point_to_axis(x: GSemiSimplicialSet) -> GSimplicialMap:
    """The inclusion of a fixed point of X."""
    point = g_complex.orbit(x.group, x.group.whole)
    fixed = sorted(s for d, s in g_complex.fixed_subset(x, x.group.whole).simplices if d == 0)
    return GSimplicialMap(point, x, [[fixed[0]]])


def cmd_flipdisk(args, out) -> int:
    fd = colimits.flip_disk_build()
    x = fd.space
    for stage in fd.stages:
        print(f"  attached {stage}", file=out)
    print("\n".join(_complex_summary(x)), file=out)
    if args.emit:
        Path(args.emit).write_text(json.dumps(x.to_json()))
        print(f"wrote {args.emit}", file=out)
    if args.emit_collapse:
        Path(args.emit_collapse).write_text(json.dumps(collapse_to_point(x).to_json()))
        print(f"wrote {args.emit_collapse}", file=out)
    if args.emit_axis:
        Path(args.emit_axis).write_text(json.dumps(point_to_axis(x).to_json()))
        print(f"wrote {args.emit_axis}", file=out)
    return 0


def cmd_verify(args, out) -> int:
    group = load_group(args.group)
    ok = True
    for report in run_verify(args.target, group, trials=args.trials, seed=args.seed, budget=args.budget):
        print(report.summary(), file=out)
        for failure in report.failures:
            print(f"  counterexample: {failure}", file=out)
        ok &= report.passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isovariant", description="Link orbit categories and isovariant G-complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_group(p, required=True):
        p.add_argument("--group", required=required, help="named group (c2, c4, v4, s3, d4, q8, c2xc3, ...) or group JSON path")
        p.add_argument("--emit", metavar="PATH", help="write output to a file")
        return p

    p = with_group(sub.add_parser("lattice", help="subgroup lattice"))
    p.add_argument("--json", action="store_true")
    p = with_group(sub.add_parser("chains", help="strict subgroup chains"))
    p.add_argument("--json", action="store_true")
    p = with_group(sub.add_parser("category", help="the link orbit category"))
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("--no-self-maps", action="store_true", help="omit endomorphisms")

    p = sub.add_parser("simplex", help="linking simplices")
    ssub = p.add_subparsers(dest="action", required=True)
    d = with_group(ssub.add_parser("describe"))
    d.add_argument("--chain", required=True, help="chain label such as e<C2")
    d.add_argument("--point", help='JSON point {"g": 0, "coords": ["1/2", "1/2"]}')

    p = sub.add_parser("check", help="check a map JSON for equivariance or isovariance")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--isovariant", action="store_true", default=True)
    mode.add_argument("--equivariant", action="store_true")
    p.add_argument("map")

    p = with_group(sub.add_parser("coend", help="glue linking simplices along a diagram"), required=False)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--diagram", help="diagram JSON path")
    src.add_argument("--representable", metavar="CHAIN")
    src.add_argument("--constant", action="store_true")

    p = sub.add_parser("flipdisk", help="build the C2 flip disk")
    p.add_argument("--emit", metavar="PATH")
    p.add_argument("--emit-collapse", metavar="PATH", help="also write the map flip disk -> point")
    p.add_argument("--emit-axis", metavar="PATH", help="also write the map point -> flip disk axis")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("target", choices=VERIFY_TARGETS + ("all",))
    p.add_argument("--group", required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return parser


COMMANDS = {
    "lattice": cmd_lattice,
    "chains": cmd_chains,
    "category": cmd_category,
    "simplex": cmd_simplex,
    "check": cmd_check,
    "coend": cmd_coend,
    "flipdisk": cmd_flipdisk,
    "verify": cmd_verify,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    print(_config_line(args), file=sys.stderr)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IsovariantError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
