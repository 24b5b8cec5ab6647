"""Finite G-spaces modelled as ordered semi-simplicial sets with a G-action.

Simplices are addressed as ``(d, s)``: level ``d``, index ``s`` within the level.
Face ``d_i`` deletes vertex ``i``.  The group acts level-wise by permutations that
commute with every face map, so a group element fixing a simplex fixes it pointwise
and the isotropy of an interior point equals the stabilizer of its simplex.

Maps are allowed to collapse simplices: the image of a ``d``-simplex is a triple
``(q, t, surj)`` meaning "simplex ``t`` of level ``q`` repeated along the
nondecreasing surjection ``surj: [d] -> [q]``".  Dimension-preserving maps use the
identity surjection; colimit constructions require those.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .errors import (
    BadCoordinates,
    InvalidComplex,
    InvalidMap,
    NotClosedUnderAction,
    NotClosedUnderFaces,
    SearchBudgetExceeded,
)
from .groups import FiniteGroup, Subgroup, conjugate_subgroup, cyclic, normalizer
from .report import Report

DEFAULT_BUDGET = 10**7

Simplex = tuple[int, int]


class GSemiSimplicialSet:
    """Finite ordered semi-simplicial set with a level-wise action of ``group``.

    ``faces[d][i][s]`` is the index of ``d_i`` of simplex ``s`` at level ``d``
    (``faces[0]`` is empty) and ``action[g][d][s]`` is the index of ``g . s``.
    """

    def __init__(self, group: FiniteGroup, levels, faces, action=None, *, check=True, subdivided=False):
        self.group = group
        self.levels = tuple(tuple(level) for level in levels)
        while self.levels and not self.levels[-1]:
            self.levels = self.levels[:-1]
        top = len(self.levels)
        self.faces = tuple(
            tuple(tuple(int(x) for x in fi) for fi in faces[d]) if d > 0 else ()
            for d in range(top)
        )
        if action is None:
            ident = tuple(tuple(range(len(level))) for level in self.levels)
            self.action = tuple(ident for _ in range(group.order))
        else:
            self.action = tuple(
                tuple(tuple(int(x) for x in action[g][d]) for d in range(top)) for g in range(group.order)
            )
        self.subdivided = subdivided
        self._index = [{name: s for s, name in enumerate(level)} for level in self.levels]
        if check:
            self.validate()

    # -- basic queries -----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.levels) - 1

    def count(self, d: int) -> int:
        return len(self.levels[d]) if 0 <= d < len(self.levels) else 0

    def __len__(self):
        return sum(len(level) for level in self.levels)

    def simplices(self) -> Iterator[Simplex]:
        for d, level in enumerate(self.levels):
            for s in range(len(level)):
                yield d, s

    def name(self, d: int, s: int) -> Hashable:
        return self.levels[d][s]

    def find(self, d: int, name) -> int:
        return self._index[d][name]

    def face(self, d: int, i: int, s: int) -> int:
        return self.faces[d][i][s]

    def act(self, g: int, d: int, s: int) -> int:
        return self.action[g][d][s]

    def vertices(self, d: int, s: int) -> tuple[int, ...]:
        """Vertex indices of simplex (d, s) in order."""
        out = []
        for j in range(d + 1):
            t, e = s, d
            # drop every vertex above j, then every vertex below j
            for _ in range(d - j):
                t = self.faces[e][e][t]
                e -= 1
            for _ in range(j):
                t = self.faces[e][0][t]
                e -= 1
            out.append(t)
        return tuple(out)

    @cached_property
    def _stabilizers(self) -> tuple[tuple[frozenset[int], ...], ...]:
        out = []
        for d, level in enumerate(self.levels):
            stabs = [[] for _ in level]
            for g in range(self.group.order):
                row = self.action[g][d]
                for s in range(len(level)):
                    if row[s] == s:
                        stabs[s].append(g)
            out.append(tuple(frozenset(x) for x in stabs))
        return tuple(out)

    def stabilizer_set(self, d: int, s: int) -> frozenset[int]:
        return self._stabilizers[d][s]

    def stabilizer(self, d: int, s: int) -> Subgroup:
        return Subgroup(self.group, tuple(self._stabilizers[d][s]), check=False)

    @cached_property
    def cofaces(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """cofaces[d][s]: indices at level d+1 having (d, s) as a face."""
        out = []
        for d in range(len(self.levels)):
            co = [[] for _ in self.levels[d]]
            if d + 1 < len(self.levels):
                for i in range(d + 2):
                    for t, s in enumerate(self.faces[d + 1][i]):
                        co[s].append(t)
            out.append(tuple(tuple(sorted(set(c))) for c in co))
        return tuple(out)

    def orbit_representatives(self, d: int) -> list[int]:
        seen, reps = set(), []
        for s in range(self.count(d)):
            if s in seen:
                continue
            reps.append(s)
            seen.update(self.action[g][d][s] for g in range(self.group.order))
        return reps

    # -- validation --------------------------------------------------------

    def validate(self):
        group = self.group
        for d in range(1, len(self.levels)):
            if len(self.faces[d]) != d + 1:
                raise InvalidComplex(f"level {d} needs {d + 1} face maps")
            for fi in self.faces[d]:
                if len(fi) != len(self.levels[d]) or any(not 0 <= x < len(self.levels[d - 1]) for x in fi):
                    raise InvalidComplex(f"face map at level {d} has the wrong shape")
        for d in range(2, len(self.levels)):
            for s in range(len(self.levels[d])):
                for j in range(d + 1):
                    for i in range(j):
                        a = self.faces[d - 1][i][self.faces[d][j][s]]
                        b = self.faces[d - 1][j - 1][self.faces[d][i][s]]
                        if a != b:
                            raise InvalidComplex(f"simplicial identity d{i}d{j} fails at ({d},{s})")
        for g in range(group.order):
            for d, level in enumerate(self.levels):
                row = self.action[g][d]
                if sorted(row) != list(range(len(level))):
                    raise InvalidComplex(f"element {g} does not permute level {d}")
        for d in range(len(self.levels)):
            ident = tuple(range(len(self.levels[d])))
            if self.action[0][d] != ident:
                raise InvalidComplex("identity element acts nontrivially")
            for g in range(group.order):
                ag = self.action[g][d]
                for h in range(group.order):
                    ah, agh = self.action[h][d], self.action[group.mult[g][h]][d]
                    if any(ag[ah[s]] != agh[s] for s in ident):
                        raise InvalidComplex("action is not a homomorphism")
        for d in range(1, len(self.levels)):
            for g in range(group.order):
                up, down = self.action[g][d], self.action[g][d - 1]
                for fi in self.faces[d]:
                    if any(fi[up[s]] != down[fi[s]] for s in range(len(up))):
                        raise InvalidComplex("action does not commute with face maps")

    def __repr__(self):
        counts = [len(level) for level in self.levels]
        return f"GSemiSimplicialSet({self.group!r}, counts={counts})"

    # -- serialization -----------------------------------------------------

    def to_json(self, include_group=True) -> dict:
        data = {
            "levels": [[str(n) for n in level] for level in self.levels],
            "faces": {
                f"{d},{i}": list(self.faces[d][i])
                for d in range(1, len(self.levels))
                for i in range(d + 1)
            },
            "action": {
                str(g): {str(d): list(self.action[g][d]) for d in range(len(self.levels))}
                for g in range(self.group.order)
            },
        }
        if include_group:
            data["group"] = self.group.to_json()
        return data

    @classmethod
    def from_json(cls, data, group: FiniteGroup | None = None) -> GSemiSimplicialSet:
        if isinstance(data, str):
            data = json.loads(data)
        if group is None:
            group = FiniteGroup.from_json(data["group"]) if "group" in data else cyclic(1)
        levels = data["levels"]
        faces = [()] + [
            [data["faces"][f"{d},{i}"] for i in range(d + 1)] for d in range(1, len(levels))
        ]
        action = None
        if "action" in data:
            action = [
                [data["action"][str(g)][str(d)] for d in range(len(levels))] for g in range(group.order)
            ]
        return cls(group, levels, faces, action)


def from_keyed(
    group: FiniteGroup,
    levels: Sequence[Sequence[Hashable]],
    face_fn: Callable[[int, int, Hashable], Hashable],
    act_fn: Callable[[int, Hashable], Hashable] | None = None,
    *,
    check=True,
    subdivided=False,
) -> GSemiSimplicialSet:
    """Build a complex whose simplices are hashable keys.

    ``face_fn(d, i, key)`` gives the key of the i-th face, ``act_fn(g, key)`` the key
    of the translate (trivial action when omitted).
    """
    levels = [list(level) for level in levels]
    index = [{k: s for s, k in enumerate(level)} for level in levels]
    faces = [()]
    try:
        for d in range(1, len(levels)):
            faces.append([[index[d - 1][face_fn(d, i, k)] for k in levels[d]] for i in range(d + 1)])
    except KeyError as exc:
        raise NotClosedUnderFaces(f"face {exc} is missing") from None
    action = None
    if act_fn is not None:
        try:
            action = [
                [[index[d][act_fn(g, k)] for k in levels[d]] for d in range(len(levels))]
                for g in range(group.order)
            ]
        except KeyError as exc:
            raise NotClosedUnderAction(f"translate {exc} is missing") from None
    return GSemiSimplicialSet(group, levels, faces, action, check=check, subdivided=subdivided)


def discrete(group: FiniteGroup, names: Sequence[Hashable], action=None) -> GSemiSimplicialSet:
    """A finite G-set; ``action[g]`` is the permutation of ``names`` induced by g."""
    acts = None if action is None else [[list(action[g])] for g in range(group.order)]
    return GSemiSimplicialSet(group, [list(names)], [()], acts)


def orbit(group: FiniteGroup, h: Subgroup) -> GSemiSimplicialSet:
    """The G-set G/H with points named by canonical coset representatives."""
    from .groups import coset_rep

    reps = sorted({coset_rep(group, g, h) for g in group})
    return from_keyed(group, [reps], lambda d, i, k: None, lambda g, r: coset_rep(group, group.mult[g][r], h))


def fat_point(group: FiniteGroup, dim: int = 0) -> GSemiSimplicialSet:
    """One simplex in every level up to ``dim`` with trivial action.

    Every complex of dimension at most ``dim`` maps to it without collapsing, but
    collapse maps to the one-point complex (``dim == 0``) are usually what you want.
    """
    levels = [[f"*{d}"] for d in range(dim + 1)]
    faces = [()] + [[[0] for _ in range(d + 1)] for d in range(1, dim + 1)]
    return GSemiSimplicialSet(group, levels, faces)


def empty(group: FiniteGroup) -> GSemiSimplicialSet:
    return GSemiSimplicialSet(group, [], [])


# ---------------------------------------------------------------------------
# building from simplicial complexes


def from_complex(
    group: FiniteGroup,
    vertices: Sequence[Hashable],
    action,
    simplices: Iterable[Iterable[Hashable]],
) -> GSemiSimplicialSet:
    """Turn a simplicial complex with a simplicial G-action into an ordered model.

    ``action[g]`` is either a dict of vertex names (missing vertices are fixed) or a
    permutation of vertex positions; a callable ``action(g, v)`` is also accepted.  Vertices are
    ordered as listed.  If some group element moves a simplex without preserving
    that order, the complex is barycentrically subdivided once (the result has
    ``subdivided == True``).
    """
    vertices = list(vertices)
    vindex = {v: i for i, v in enumerate(vertices)}
    def move(g, v):
        if callable(action):
            return action(g, v)
        img = action[g]
        if isinstance(img, dict):
            return img.get(v, v)
        return vertices[img[vindex[v]]]

    simplex_set: set[frozenset] = {frozenset(s) for s in simplices}
    simplex_set |= {frozenset([v]) for v in vertices}
    for s in simplex_set:
        if not s <= set(vertices):
            raise InvalidComplex(f"simplex {sorted(s, key=str)} uses unknown vertices")
        for r in range(1, len(s)):
            for sub in itertools.combinations(s, r):
                if frozenset(sub) not in simplex_set:
                    raise NotClosedUnderFaces(f"face {sub} of {tuple(s)} is missing")
    for g in range(group.order):
        for s in simplex_set:
            if frozenset(move(g, v) for v in s) not in simplex_set:
                raise NotClosedUnderAction(f"element {g} moves {tuple(s)} outside the complex")

    def key(s):
        return tuple(sorted(s, key=vindex.__getitem__))

    respects = all(
        tuple(vindex[move(g, v)] for v in key(s)) == tuple(sorted(vindex[move(g, v)] for v in s))
        for g in range(group.order)
        for s in simplex_set
    )
    if respects:
        top = max(len(s) for s in simplex_set) if simplex_set else 0
        levels = [sorted((key(s) for s in simplex_set if len(s) == d + 1), key=lambda t: [vindex[v] for v in t]) for d in range(top)]
        return from_keyed(
            group,
            levels,
            lambda d, i, k: k[:i] + k[i + 1:],
            lambda g, k: tuple(sorted((move(g, v) for v in k), key=vindex.__getitem__)),
        )

    # barycentric subdivision: new vertices are the old simplices, ordered by size
    order = sorted(simplex_set, key=lambda s: (len(s), [vindex[v] for v in key(s)]))
    bindex = {s: i for i, s in enumerate(order)}
    flags: list[list[tuple]] = []
    for s in order:
        _extend_flags((s,), simplex_set, flags)
    top = max(len(f) for f in flags)
    levels = [
        sorted((f for f in flags if len(f) == d + 1), key=lambda f: [bindex[x] for x in f])
        for d in range(top)
    ]

    def move_simplex(g, s):
        return frozenset(move(g, v) for v in s)

    return from_keyed(
        group,
        levels,
        lambda d, i, k: k[:i] + k[i + 1:],
        lambda g, k: tuple(move_simplex(g, s) for s in k),
        subdivided=True,
    )


def _extend_flags(flag, simplex_set, out):
    out.append(flag)
    last = flag[-1]
    for s in simplex_set:
        if len(s) > len(last) and last < s:
            _extend_flags(flag + (s,), simplex_set, out)


# ---------------------------------------------------------------------------
# maps

Image = tuple[int, int, tuple[int, ...]]


def _degenerate_face(space: GSemiSimplicialSet, image: Image, k: int) -> Image:
    q, t, surj = image
    rest = surj[:k] + surj[k + 1:]
    v = surj[k]
    if v in rest:
        return q, t, rest
    return q - 1, space.faces[q][v][t], tuple(x - 1 if x > v else x for x in rest)


class GSimplicialMap:
    """A map of G-semi-simplicial sets, possibly collapsing simplices.

    ``assignment[d][s]`` is either a simplex index at level ``d`` of ``dst``, or a
    triple ``(q, t, surj)`` for a collapsed image.
    """

    def __init__(self, src: GSemiSimplicialSet, dst: GSemiSimplicialSet, assignment, *, check=True):
        self.src, self.dst = src, dst
        images = []
        for d in range(len(src.levels)):
            row = []
            for entry in assignment[d]:
                if isinstance(entry, dict):
                    entry = (entry["dim"], entry["simplex"], tuple(entry["surjection"]))
                if isinstance(entry, (tuple, list)):
                    q, t, surj = int(entry[0]), int(entry[1]), tuple(int(x) for x in entry[2])
                    if surj == tuple(range(d + 1)):
                        q = d
                    row.append((q, t, surj))
                else:
                    row.append((d, int(entry), tuple(range(d + 1))))
            images.append(tuple(row))
        self.images = tuple(images)
        if check:
            self.validate()

    def validate(self):
        src, dst = self.src, self.dst
        if src.group != dst.group:
            raise InvalidMap("source and target carry different groups")
        for d in range(len(src.levels)):
            if len(self.images[d]) != src.count(d):
                raise InvalidMap(f"assignment at level {d} has the wrong length")
            for s, (q, t, surj) in enumerate(self.images[d]):
                if len(surj) != d + 1 or surj[0] != 0 or surj[-1] != q or any(
                    b - a not in (0, 1) for a, b in zip(surj, surj[1:])
                ):
                    raise InvalidMap(f"bad surjection for simplex ({d},{s})")
                if not 0 <= t < dst.count(q):
                    raise InvalidMap(f"image of ({d},{s}) out of range")
        for d in range(1, len(src.levels)):
            for s in range(src.count(d)):
                img = self.images[d][s]
                for i in range(d + 1):
                    if _degenerate_face(dst, img, i) != self.images[d - 1][src.faces[d][i][s]]:
                        raise InvalidMap(f"map does not commute with face d{i} at ({d},{s})")

    @classmethod
    def from_vertices(cls, src, dst, vertex_map) -> GSimplicialMap:
        """Extend a vertex map; each image vertex tuple must determine a unique simplex."""
        vertex_map = list(vertex_map)
        lookup = {}
        for d, s in dst.simplices():
            lookup.setdefault(dst.vertices(d, s), []).append((d, s))
        assignment = []
        for d in range(len(src.levels)):
            row = []
            for s in range(src.count(d)):
                img = tuple(vertex_map[v] for v in src.vertices(d, s))
                dedup = tuple(k for k, _ in itertools.groupby(img))
                surj, level = [], 0
                for a, b in zip((None,) + img, img):
                    if a is not None and a != b:
                        level += 1
                    surj.append(level)
                hits = lookup.get(dedup, [])
                if len(hits) != 1:
                    raise InvalidMap(f"vertex image {img} does not determine a simplex of the target")
                row.append((hits[0][0], hits[0][1], tuple(surj)))
            assignment.append(row)
        return cls(src, dst, assignment)

    def __call__(self, d: int, s: int) -> Image:
        return self.images[d][s]

    @property
    def is_dimension_preserving(self) -> bool:
        return all(q == d for d, row in enumerate(self.images) for q, _, _ in row)

    def target(self, d: int, s: int) -> int:
        q, t, _ = self.images[d][s]
        if q != d:
            raise InvalidMap("map collapses this simplex")
        return t

    def levelwise(self) -> list[list[int]]:
        return [[self.target(d, s) for s in range(self.src.count(d))] for d in range(len(self.src.levels))]

    def __eq__(self, other):
        return isinstance(other, GSimplicialMap) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def compose(self, after: GSimplicialMap) -> GSimplicialMap:
        """``after . self``; both must be dimension preserving."""
        if not (self.is_dimension_preserving and after.is_dimension_preserving):
            raise InvalidMap("composition is implemented for dimension-preserving maps")
        rows = [[after.target(d, self.target(d, s)) for s in range(self.src.count(d))] for d in range(len(self.src.levels))]
        return GSimplicialMap(self.src, after.dst, rows)

    def to_json(self) -> dict:
        rows = []
        for d, row in enumerate(self.images):
            out = []
            for q, t, surj in row:
                out.append(t if q == d else {"dim": q, "simplex": t, "surjection": list(surj)})
            rows.append(out)
        return {"src": self.src.to_json(), "dst": self.dst.to_json(include_group=False), "assignment": rows}

    @classmethod
    def from_json(cls, data) -> GSimplicialMap:
        if isinstance(data, str):
            data = json.loads(data)
        src = GSemiSimplicialSet.from_json(data["src"])
        dst = GSemiSimplicialSet.from_json(data["dst"], group=src.group)
        return cls(src, dst, data["assignment"])


def identity_map(x: GSemiSimplicialSet) -> GSimplicialMap:
    return GSimplicialMap(x, x, [list(range(x.count(d))) for d in range(len(x.levels))])


@dataclass(frozen=True)
class Counterexample:
    simplex: Simplex
    reason: str
    source_stabilizer: tuple[int, ...] = ()
    target_stabilizer: tuple[int, ...] = ()

    def __str__(self):
        d, s = self.simplex
        text = f"simplex ({d},{s}): {self.reason}"
        if self.source_stabilizer or self.target_stabilizer:
            text += f" [stabilizer {list(self.source_stabilizer)} -> {list(self.target_stabilizer)}]"
        return text


def find_equivariance_violation(f: GSimplicialMap) -> Counterexample | None:
    src, dst = f.src, f.dst
    for g in range(src.group.order):
        for d, s in src.simplices():
            q, t, surj = f.images[d][s]
            if f.images[d][src.action[g][d][s]] != (q, dst.action[g][q][t], surj):
                return Counterexample((d, s), f"f(g.x) != g.f(x) for g = {src.group.name_of(g)}")
    return None


def find_isovariance_violation(f: GSimplicialMap) -> Counterexample | None:
    bad = find_equivariance_violation(f)
    if bad is not None:
        return bad
    for d, s in f.src.simplices():
        q, t, _ = f.images[d][s]
        a, b = f.src.stabilizer_set(d, s), f.dst.stabilizer_set(q, t)
        if a != b:
            return Counterexample((d, s), "isotropy changes", tuple(sorted(a)), tuple(sorted(b)))
    return None


def check_equivariant(f: GSimplicialMap) -> bool:
    return find_equivariance_violation(f) is None


def check_isovariant(f: GSimplicialMap) -> bool:
    return find_isovariance_violation(f) is None


# ---------------------------------------------------------------------------
# strata


@dataclass
class SimplexSet:
    """A set of simplices of a complex, with adjacency given by the face relation."""

    space: GSemiSimplicialSet
    simplices: frozenset[Simplex]

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, item):
        return item in self.simplices

    def __iter__(self):
        return iter(sorted(self.simplices))

    def is_closed_under_faces(self) -> bool:
        x = self.space
        return all(
            (d - 1, x.faces[d][i][s]) in self.simplices
            for d, s in self.simplices
            if d > 0
            for i in range(d + 1)
        )

    def components(self) -> list[list[Simplex]]:
        """Connected components, each sorted, ordered by their smallest simplex."""
        x = self.space
        ds = DisjointSet(self.simplices)
        for d, s in self.simplices:
            if d == 0:
                continue
            for i in range(d + 1):
                f = (d - 1, x.faces[d][i][s])
                if f in self.simplices:
                    ds.merge((d, s), f)
        comps = [sorted(c) for c in ds.subsets()]
        return sorted(comps)


@dataclass
class IsotropyStratum(SimplexSet):
    subgroup: Subgroup = field(default=None)


def simplex_stabilizer(x: GSemiSimplicialSet, d: int, s: int) -> Subgroup:
    return x.stabilizer(d, s)


def exact_stratum(x: GSemiSimplicialSet, h: Subgroup) -> IsotropyStratum:
    """Simplices whose stabilizer is exactly H (an open, generally non-closed set)."""
    target = h.elementset
    members = frozenset((d, s) for d, s in x.simplices() if x.stabilizer_set(d, s) == target)
    return IsotropyStratum(x, members, h)


def fixed_subset(x: GSemiSimplicialSet, h: Subgroup) -> SimplexSet:
    """Simplices fixed by every element of H; closed under faces."""
    target = h.elementset
    members = frozenset((d, s) for d, s in x.simplices() if target <= x.stabilizer_set(d, s))
    return SimplexSet(x, members)


@dataclass
class Pi0:
    count: int
    labels: dict[Simplex, int]
    action: dict[int, tuple[int, ...]]
    components: list[list[Simplex]]

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for c in range(self.count):
            if c in seen:
                continue
            orb = sorted({perm[c] for perm in self.action.values()})
            seen.update(orb)
            out.append(orb)
        return out

    @property
    def is_transitive(self) -> bool:
        return self.count > 0 and len(self.orbits()) == 1


def stratum_pi0(stratum: IsotropyStratum) -> Pi0:
    """Components of the stratum and the action of N_G(H) on them."""
    x = stratum.space
    comps = stratum.components()
    labels = {s: i for i, comp in enumerate(comps) for s in comp}
    action = {}
    if stratum.subgroup is not None:
        for g in normalizer(x.group, stratum.subgroup):
            perm = []
            for comp in comps:
                d, s = comp[0]
                perm.append(labels[(d, x.action[g][d][s])])
            action[g] = tuple(perm)
    return Pi0(len(comps), labels, action, comps)


def translate_stratum(x: GSemiSimplicialSet, g: int, stratum: IsotropyStratum) -> IsotropyStratum:
    members = frozenset((d, x.action[g][d][s]) for d, s in stratum.simplices)
    return IsotropyStratum(x, members, conjugate_subgroup(g, stratum.subgroup))


# ---------------------------------------------------------------------------
# isovariant products


def isovariant_product_discrete(x: GSemiSimplicialSet, y: GSemiSimplicialSet) -> GSemiSimplicialSet:
    """Pairs of points with equal isotropy, with the diagonal action."""
    if x.dim > 0 or y.dim > 0:
        raise ValueError("isovariant_product_discrete expects 0-dimensional G-sets")
    pairs = [
        (a, b)
        for a in range(x.count(0))
        for b in range(y.count(0))
        if x.stabilizer_set(0, a) == y.stabilizer_set(0, b)
    ]
    names = [(x.name(0, a), y.name(0, b)) for a, b in pairs]
    index = {p: i for i, p in enumerate(pairs)}
    action = [
        [[index[(x.action[g][0][a], y.action[g][0][b])] for a, b in pairs]] for g in range(x.group.order)
    ]
    return GSemiSimplicialSet(x.group, [names] if names else [], [()], action if names else None)


def product_projections(x, y, prod) -> tuple[GSimplicialMap, GSimplicialMap]:
    """The projections of an isovariant product of G-sets onto its factors."""
    px = [[x.find(0, a) for a, _ in prod.levels[0]]] if prod.levels else []
    py = [[y.find(0, b) for _, b in prod.levels[0]]] if prod.levels else []
    return GSimplicialMap(prod, x, px), GSimplicialMap(prod, y, py)


def _parse_coords(coords, d) -> tuple[Fraction, ...]:
    try:
        cs = tuple(Fraction(c) for c in coords)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise BadCoordinates(str(exc)) from None
    if len(cs) != d + 1:
        raise BadCoordinates("coordinate count does not match the simplex dimension")
    if any(c < 0 or c > 1 for c in cs) or sum(cs) != 1:
        raise BadCoordinates("coordinates must lie in [0, 1] and sum to 1")
    return cs


def point_isotropy(x: GSemiSimplicialSet, carrier: Simplex, coords) -> frozenset[int]:
    """Isotropy of the point with barycentric ``coords`` in simplex ``carrier``.

    The point lies in the interior of the face spanned by its nonzero coordinates;
    its isotropy is that face's stabilizer.
    """
    d, s = carrier
    cs = _parse_coords(coords, d)
    for i in reversed(range(d + 1)):
        if cs[i] == 0:
            s = x.faces[d][i][s]
            d -= 1
    return x.stabilizer_set(d, s)


def isovariant_product_membership(x, y, px, py) -> bool:
    """Whether (px, py) lies in the isovariant product; points are (carrier, coords)."""
    return point_isotropy(x, *px) == point_isotropy(y, *py)


FORMAL_TERMINAL = "⊤"


def isovariant_product(*spaces: GSemiSimplicialSet):
    """Isovariant product of G-sets; the empty product is the formal terminal symbol."""
    if not spaces:
        return FORMAL_TERMINAL
    out = spaces[0]
    for y in spaces[1:]:
        out = isovariant_product_discrete(out, y)
    return out


# ---------------------------------------------------------------------------
# map search


class _MapSearch:
    def __init__(self, x, y, *, isovariant=True, injective=False, budget=DEFAULT_BUDGET, rng=None):
        if x.group != y.group:
            raise InvalidMap("spaces carry different groups")
        self.x, self.y = x, y
        self.isovariant = isovariant
        self.injective = injective
        self.budget = budget
        self.nodes = 0
        self.rng = rng
        top = len(x.levels)
        self.assign: list[dict[int, int]] = [dict() for _ in range(top)]
        self.used: list[set[int]] = [set() for _ in range(top)]
        self.reps = [(d, s) for d in reversed(range(top)) for s in x.orbit_representatives(d)]
        self.extra: Callable[[int, int, int], bool] | None = None

    def compatible(self, d, s, t) -> bool:
        a, b = self.x.stabilizer_set(d, s), self.y.stabilizer_set(d, t)
        if self.isovariant:
            ok = a == b
        else:
            ok = a <= b
        return ok and (self.extra is None or self.extra(d, s, t))

    def candidates(self, d, s) -> list[int]:
        if d >= len(self.y.levels):
            return []
        out = [t for t in range(self.y.count(d)) if self.compatible(d, s, t)]
        if self.rng is not None:
            self.rng.shuffle(out)
        return out

    def assign_orbit(self, d, s, t, log) -> bool:
        x, y, group = self.x, self.y, self.x.group
        stack = [(d, s, t)]
        while stack:
            d, s, t = stack.pop()
            cur = self.assign[d].get(s)
            if cur is not None:
                if cur != t:
                    return False
                continue
            if d >= len(y.levels) or not self.compatible(d, s, t):
                return False
            for g in range(group.order):
                gs, gt = x.action[g][d][s], y.action[g][d][t]
                cur = self.assign[d].get(gs)
                if cur is None:
                    if self.injective and gt in self.used[d]:
                        return False
                    self.assign[d][gs] = gt
                    self.used[d].add(gt)
                    log.append((d, gs, gt))
                elif cur != gt:
                    return False
            for i in range(d + 1 if d > 0 else 0):
                stack.append((d - 1, x.faces[d][i][s], y.faces[d][i][t]))
        return True

    def undo(self, log, mark):
        while len(log) > mark:
            d, s, t = log.pop()
            del self.assign[d][s]
            self.used[d].discard(t)

    def run(self, limit=None) -> Iterator[GSimplicialMap]:
        log: list = []
        found = 0

        def rec(i):
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded(f"map search exceeded {self.budget} nodes")
            while i < len(self.reps) and self.reps[i][1] in self.assign[self.reps[i][0]]:
                i += 1
            if i == len(self.reps):
                rows = [[self.assign[d][s] for s in range(self.x.count(d))] for d in range(len(self.x.levels))]
                yield GSimplicialMap(self.x, self.y, rows, check=False)
                return
            d, s = self.reps[i]
            for t in self.candidates(d, s):
                mark = len(log)
                if self.assign_orbit(d, s, t, log):
                    yield from rec(i + 1)
                self.undo(log, mark)

        for m in rec(0):
            found += 1
            yield m
            if limit is not None and found >= limit:
                return


def enumerate_isovariant_maps(x, y, budget=DEFAULT_BUDGET, *, isovariant=True) -> list[GSimplicialMap]:
    """All dimension-preserving isovariant (or just equivariant) maps X -> Y."""
    return list(_MapSearch(x, y, isovariant=isovariant, budget=budget).run())


def random_isovariant_map(x, y, rng: random.Random, budget=10**5) -> GSimplicialMap | None:
    """Some isovariant map X -> Y found by randomized backtracking, or None."""
    try:
        return next(_MapSearch(x, y, budget=budget, rng=rng).run(limit=1), None)
    except SearchBudgetExceeded:
        return None


def _signature(x: GSemiSimplicialSet, d: int, s: int):
    return (len(x.stabilizer_set(d, s)), len(x.cofaces[d][s]))


def g_isomorphic(x: GSemiSimplicialSet, y: GSemiSimplicialSet, budget=DEFAULT_BUDGET) -> GSimplicialMap | None:
    """A G-isomorphism X -> Y, or None when none exists."""
    if x.group != y.group or [len(l) for l in x.levels] != [len(l) for l in y.levels]:
        return None
    for d in range(len(x.levels)):
        sx = sorted((sorted(x.stabilizer_set(d, s)), len(x.cofaces[d][s])) for s in range(x.count(d)))
        sy = sorted((sorted(y.stabilizer_set(d, s)), len(y.cofaces[d][s])) for s in range(y.count(d)))
        if sx != sy:
            return None
    search = _MapSearch(x, y, injective=True, budget=budget)
    search.extra = lambda d, s, t: _signature(x, d, s) == _signature(y, d, t)
    return next(search.run(limit=1), None)


# ---------------------------------------------------------------------------
# isovariant weak-equivalence obstruction


def _component_map(f: GSimplicialMap, h: Subgroup):
    src_pi = stratum_pi0(exact_stratum(f.src, h))
    dst_pi = stratum_pi0(exact_stratum(f.dst, h))
    mapping = {}
    for comp_id, comp in enumerate(src_pi.components):
        d, s = comp[0]
        q, t, _ = f.images[d][s]
        mapping[comp_id] = dst_pi.labels[(q, t)]
    return src_pi, dst_pi, mapping


def we_obstruction(f: GSimplicialMap) -> Report:
    """Necessary condition for an isovariant weak equivalence.

    For every subgroup H the map must induce a bijection between the components of
    the exact H-strata.  A failure is conclusive; a pass says nothing more.
    """
    from .groups import all_subgroups

    report = Report("isovariant weak-equivalence obstruction (length-0 chains)")
    report.details["conclusive"] = "only on failure"
    bad = find_isovariance_violation(f)
    if bad is not None:
        report.fail(f"map is not isovariant: {bad}")
        return report
    for h in all_subgroups(f.src.group):
        src_pi, dst_pi, mapping = _component_map(f, h)
        label = f"H={list(h.elements)}"
        if src_pi.count == 0 and dst_pi.count > 0:
            report.check(False, f"{label}: source stratum is empty, target stratum is not")
            continue
        if dst_pi.count == 0 and src_pi.count > 0:
            report.check(False, f"{label}: target stratum is empty, source stratum is not")
            continue
        report.check(
            src_pi.count == dst_pi.count,
            f"{label}: pi0 counts differ ({src_pi.count} vs {dst_pi.count})",
        )
        report.check(
            sorted(mapping.values()) == list(range(dst_pi.count)),
            f"{label}: induced map on pi0 is not a bijection",
        )
    return report


# ---------------------------------------------------------------------------
# constructions used by the colimit machinery


def _paths(q: int, r: int) -> list[tuple[tuple[int, int], ...]]:
    """Lattice paths (0,0) -> (q,r) with steps (1,0), (0,1), (1,1)."""
    out = []

    def rec(path):
        a, b = path[-1]
        if (a, b) == (q, r):
            out.append(tuple(path))
            return
        for da, db in ((1, 0), (0, 1), (1, 1)):
            if a + da <= q and b + db <= r:
                rec(path + [(a + da, b + db)])

    rec([(0, 0)])
    return out


def product(x: GSemiSimplicialSet, y: GSemiSimplicialSet) -> GSemiSimplicialSet:
    """Triangulated product with the diagonal action.

    A factor over the trivial group is treated as carrying the trivial action.
    Simplices are ``(sx, sy, path)`` with ``sx`` at level q, ``sy`` at level r and
    a monotone lattice path from (0,0) to (q,r).
    """
    group = x.group if x.group.order >= y.group.order else y.group
    for z in (x, y):
        if z.group.order != 1 and z.group != group:
            raise InvalidMap("factors carry different groups")
    top = x.dim + y.dim + 1 if len(x.levels) and len(y.levels) else 0
    levels: list[list] = [[] for _ in range(top)]
    for q in range(len(x.levels)):
        for r in range(len(y.levels)):
            for path in _paths(q, r):
                p = len(path) - 1
                for a in range(x.count(q)):
                    for b in range(y.count(r)):
                        levels[p].append((q, a, r, b, path))

    def face(p, k, key):
        q, a, r, b, path = key
        rest = path[:k] + path[k + 1:]
        ak, bk = path[k]
        if not any(u == ak for u, _ in rest):
            a = x.faces[q][ak][a]
            q -= 1
            rest = tuple((u - 1 if u > ak else u, v) for u, v in rest)
        if not any(v == bk for _, v in rest):
            b = y.faces[r][bk][b]
            r -= 1
            rest = tuple((u, v - 1 if v > bk else v) for u, v in rest)
        return q, a, r, b, rest

    def act(g, key):
        q, a, r, b, path = key
        ga = x.action[g][q][a] if x.group.order > 1 else a
        gb = y.action[g][r][b] if y.group.order > 1 else b
        return q, ga, r, gb, path

    return from_keyed(group, levels, face, act)


def product_map(f: GSimplicialMap, g: GSimplicialMap, src_product, dst_product) -> GSimplicialMap:
    """f x g between two products built by ``product``; both maps dimension preserving."""
    rows = []
    for d in range(len(src_product.levels)):
        row = []
        for q, a, r, b, path in src_product.levels[d]:
            row.append(dst_product.find(d, (q, f.target(q, a), r, g.target(r, b), path)))
        rows.append(row)
    return GSimplicialMap(src_product, dst_product, rows)


def disjoint_union(*spaces: GSemiSimplicialSet, group: FiniteGroup | None = None):
    """Coproduct; returns the union and the inclusion maps.  Names become (i, name)."""
    if group is None:
        group = spaces[0].group if spaces else cyclic(1)
    top = max((len(x.levels) for x in spaces), default=0)
    levels = [[(i, n) for i, x in enumerate(spaces) if d < len(x.levels) for n in x.levels[d]] for d in range(top)]
    offsets = [[0] * top for _ in spaces]
    for d in range(top):
        acc = 0
        for i, x in enumerate(spaces):
            offsets[i][d] = acc
            acc += x.count(d)
    faces = [()] + [
        [[offsets[i][d - 1] + x.faces[d][k][s] for i, x in enumerate(spaces) if d < len(x.levels) for s in range(x.count(d))] for k in range(d + 1)]
        for d in range(1, top)
    ]
    action = [
        [[offsets[i][d] + (x.action[g][d][s] if x.group.order > 1 else s) for i, x in enumerate(spaces) if d < len(x.levels) for s in range(x.count(d))] for d in range(top)]
        for g in range(group.order)
    ]
    union = GSemiSimplicialSet(group, levels, faces, action)
    incs = [
        GSimplicialMap(x, union, [[offsets[i][d] + s for s in range(x.count(d))] for d in range(len(x.levels))], check=False)
        for i, x in enumerate(spaces)
    ]
    return union, incs


def quotient(x: GSemiSimplicialSet, pairs: Iterable[tuple[Simplex, Simplex]]):
    """Degreewise quotient by the smallest G- and face-compatible relation containing ``pairs``.

    Returns the quotient complex and the (dimension-preserving) quotient map.
    """
    ds = [DisjointSet(range(x.count(d))) for d in range(len(x.levels))]
    stack = []
    for (d1, s1), (d2, s2) in pairs:
        if d1 != d2:
            raise InvalidMap("cannot identify simplices of different dimensions")
        stack.append((d1, s1, s2))
    group = x.group
    while stack:
        d, a, b = stack.pop()
        if ds[d].connected(a, b):
            continue
        for g in range(group.order):
            ga, gb = x.action[g][d][a], x.action[g][d][b]
            if not ds[d].connected(ga, gb):
                ds[d].merge(ga, gb)
                if d > 0:
                    for i in range(d + 1):
                        stack.append((d - 1, x.faces[d][i][ga], x.faces[d][i][gb]))
    reps = [sorted(min(c) for c in ds[d].subsets()) for d in range(len(x.levels))]
    rep_index = [{r: i for i, r in enumerate(level)} for level in reps]
    cls = [[rep_index[d][min(ds[d].subset(s))] for s in range(x.count(d))] for d in range(len(x.levels))]
    levels = [[x.levels[d][r] for r in reps[d]] for d in range(len(x.levels))]
    faces = [()] + [
        [[cls[d - 1][x.faces[d][i][r]] for r in reps[d]] for i in range(d + 1)] for d in range(1, len(x.levels))
    ]
    action = [
        [[cls[d][x.action[g][d][r]] for r in reps[d]] for d in range(len(x.levels))] for g in range(group.order)
    ]
    q = GSemiSimplicialSet(group, levels, faces, action)
    return q, GSimplicialMap(x, q, cls, check=False)


def subcomplex(x: GSemiSimplicialSet, members: Iterable[Simplex]):
    """A G-invariant, face-closed set of simplices as a complex with its inclusion."""
    members = set(members)
    for d, s in members:
        if any((d, x.action[g][d][s]) not in members for g in range(x.group.order)):
            raise NotClosedUnderAction(f"({d},{s}) has translates outside the set")
        if d > 0 and any((d - 1, x.faces[d][i][s]) not in members for i in range(d + 1)):
            raise NotClosedUnderFaces(f"({d},{s}) has faces outside the set")
    keep = [sorted(s for e, s in members if e == d) for d in range(len(x.levels))]
    while keep and not keep[-1]:
        keep.pop()
    index = [{s: i for i, s in enumerate(level)} for level in keep]
    levels = [[x.levels[d][s] for s in keep[d]] for d in range(len(keep))]
    faces = [()] + [[[index[d - 1][x.faces[d][i][s]] for s in keep[d]] for i in range(d + 1)] for d in range(1, len(keep))]
    action = [[[index[d][x.action[g][d][s]] for s in keep[d]] for d in range(len(keep))] for g in range(x.group.order)]
    sub = GSemiSimplicialSet(x.group, levels, faces, action)
    return sub, GSimplicialMap(sub, x, keep, check=False)


def standard_simplex(n: int, group: FiniteGroup | None = None) -> GSemiSimplicialSet:
    """Delta^n with trivial action; simplices named by their vertex tuples."""
    group = group or cyclic(1)
    levels = [list(itertools.combinations(range(n + 1), d + 1)) for d in range(n + 1)]
    return from_keyed(group, levels, lambda d, i, k: k[:i] + k[i + 1:])


def sphere(n: int, group: FiniteGroup | None = None) -> GSemiSimplicialSet:
    """Boundary of Delta^(n+1) with trivial action; S^-1 is empty."""
    group = group or cyclic(1)
    if n < 0:
        return empty(group)
    levels = [list(itertools.combinations(range(n + 2), d + 1)) for d in range(n + 1)]
    return from_keyed(group, levels, lambda d, i, k: k[:i] + k[i + 1:])


def verify_complex(x: GSemiSimplicialSet) -> Report:
    report = Report("G-semi-simplicial set invariants")
    try:
        x.validate()
        report.check(True, "")
    except InvalidComplex as exc:
        report.check(False, str(exc))
    return report
