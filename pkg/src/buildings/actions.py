"""Color-preserving group actions on finite buildings.

Group elements are chamber permutations: tuples p with p[k] the index of the
image of chamber k, chambers indexed in the building's sorted order.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Hashable, Iterable, Sequence

from .building import Building, InfiniteWError, enumerate_apartments
from .constructions import label_word, word_label

Perm = tuple


class ActionError(ValueError):
    pass


class NotAPermutationError(ActionError):
    pass


@dataclass
class ActionSpec:
    building: Building
    generators: tuple
    order: int | None = None

    def __post_init__(self):
        n = len(self.building.chambers)
        gens = []
        for g in self.generators:
            g = tuple(int(x) for x in g)
            if len(g) != n or sorted(g) != list(range(n)):
                raise NotAPermutationError(f"generator {list(g)} is not a permutation of {n} chambers")
            gens.append(g)
        self.generators = tuple(gens)

    @property
    def n(self) -> int:
        return len(self.building.chambers)

    def image(self, g: Perm, c: str) -> str:
        b = self.building
        return b.chambers[g[b.index[c]]]

    def to_json(self, building_ref: str | None = None) -> dict:
        doc = {"building": building_ref if building_ref is not None else self.building.to_json(),
               "generators": [list(g) for g in self.generators]}
        if self.order is not None:
            doc["order"] = self.order
        return doc

    @classmethod
    def from_json(cls, doc, base_dir: str | Path = ".") -> "ActionSpec":
        ref = doc["building"]
        if isinstance(ref, str):
            ref = json.loads((Path(base_dir) / ref).read_text())
        return cls(Building.from_json(ref), tuple(doc.get("generators", [])), doc.get("order"))


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(g: Perm, h: Perm) -> Perm:
    """g after h."""
    return tuple(g[x] for x in h)


def invert(g: Perm) -> Perm:
    out = [0] * len(g)
    for k, x in enumerate(g):
        out[x] = k
    return tuple(out)


def _colored_edges(b: Building) -> set:
    return {(b.index[x], b.index[y], i) for x, y, i in b.edges()}


def verify_action(spec: ActionSpec) -> bool:
    """Every generator maps colored edges onto colored edges."""
    edges = _colored_edges(spec.building)
    for g in spec.generators:
        for x, y, i in edges:
            a, c = g[x], g[y]
            if (min(a, c), max(a, c), i) not in edges:
                return False
    return True


# -- automorphism search -------------------------------------------------------

class _Search:
    """Backtracking extension of partial color-preserving maps."""

    def __init__(self, b: Building):
        self.b = b
        n = len(b.chambers)
        self.n = n
        idx = b.index
        self.adj = [[sorted(idx[y] for y in b.adj[c][i]) for i in b.system.generators]
                    for c in b.chambers]
        self.nbr = [{(i, y) for i, ys in enumerate(self.adj[x]) for y in ys} for x in range(n)]
        self.sig = [tuple(len(ys) for ys in self.adj[x]) for x in range(n)]
        # BFS order with a mapped predecessor for each chamber
        self.order = [0]
        self.pred = {0: None}
        q = deque([0])
        while q:
            x = q.popleft()
            for i, ys in enumerate(self.adj[x]):
                for y in ys:
                    if y not in self.pred:
                        self.pred[y] = (x, i)
                        self.order.append(y)
                        q.append(y)
        delta = b.delta_table()
        ch = b.chambers
        self.delta = lambda x, y: delta[(ch[x], ch[y])]

    def _consistent(self, phi, x, y) -> bool:
        if self.sig[x] != self.sig[y]:
            return False
        mapped = {(i, phi[z]) for i, z in self.nbr[x] if z in phi}
        image = set(phi.values())
        return mapped == {(i, u) for i, u in self.nbr[y] if u in image}

    def extend(self, fixed: dict) -> Perm | None:
        phi = {}
        used = set()
        root = None
        for x, y in fixed.items():
            if y in used or not self._consistent(phi, x, y):
                return None
            if root is not None and self.delta(root, x) != self.delta(phi[root], y):
                return None
            phi[x] = y
            used.add(y)
            root = x if root is None else root
        todo = [x for x in self.order if x not in phi]

        def rec(k, root):
            if k == len(todo):
                return True
            x = todo[k]
            p, i = self.pred[x] if self.pred[x] else (None, None)
            cands = self.adj[phi[p]][i] if p in phi else range(self.n)
            for y in cands:
                if y in used or not self._consistent(phi, x, y):
                    continue
                if root is not None and self.delta(root, x) != self.delta(phi[root], y):
                    continue
                phi[x] = y
                used.add(y)
                if rec(k + 1, root if root is not None else x):
                    return True
                del phi[x]
                used.discard(y)
            return False

        if rec(0, root):
            return tuple(phi[x] for x in range(self.n))
        return None


def automorphism_group(b: Building) -> ActionSpec:
    """Generators and exact order of Aut(b), via a stabilizer chain.

    For base points c0, c1, ... (breadth-first order) the orbit of c_k under
    the pointwise stabilizer of c0..c_{k-1} is found by asking the
    backtracking search for one extension per candidate image; the order is
    the product of the orbit sizes and the transversal elements generate.
    """
    if b.is_ball:
        raise ActionError("automorphism search needs a complete finite building")
    s = _Search(b)
    gens: list[Perm] = []
    order = 1
    fixed: dict = {}
    level_gens: list[Perm] = []
    for x in s.order:
        orbit = {x}
        # close under the transversal elements already found at this level
        for y in range(s.n):
            if y in orbit:
                continue
            g = s.extend({**fixed, x: y})
            if g is not None:
                level_gens.append(g)
                orbit = _orbit_of(x, level_gens, orbit)
        order *= len(orbit)
        gens.extend(level_gens)
        level_gens = []
        fixed[x] = x
    ident = identity(s.n)
    gens = sorted(set(g for g in gens if g != ident))
    return ActionSpec(b, tuple(gens), order)


def _orbit_of(x, gens, seed) -> set:
    orbit = set(seed) | {x}
    q = deque(orbit)
    while q:
        y = q.popleft()
        for g in gens:
            z = g[y]
            if z not in orbit:
                orbit.add(z)
                q.append(z)
    return orbit


# -- orbits ---------------------------------------------------------------------

@dataclass
class OrbitReport:
    kind: str
    orbits: list
    witnesses: dict = field(default_factory=dict)
    classes: dict = field(default_factory=dict)
    transitive: bool = False
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "transitive": self.transitive,
                "orbit_count": len(self.orbits),
                "orbit_sizes": [len(o) for o in self.orbits],
                "classes": self.classes, **self.extra}


def orbits(items: Sequence[Hashable], generators: Sequence[Perm],
           act: Callable[[Perm, Hashable], Hashable]) -> tuple[list[list], dict]:
    """Orbit partition of ``items`` (a union of orbits) with generator-word witnesses.

    witnesses[y] is a word (generator indices, applied left to right) taking
    the orbit's first element to y.
    """
    seen: dict = {}
    out = []
    for it in items:
        if it in seen:
            continue
        seen[it] = ()
        orb = [it]
        q = deque([it])
        while q:
            y = q.popleft()
            for k, g in enumerate(generators):
                z = act(g, y)
                if z not in seen:
                    seen[z] = seen[y] + (k,)
                    orb.append(z)
                    q.append(z)
        out.append(sorted(orb))
    return out, seen


def _act_chamber(g, x):
    return g[x]


def _act_pair(g, p):
    return (g[p[0]], g[p[1]])


def chamber_orbits(spec: ActionSpec) -> OrbitReport:
    orb, wit = orbits(range(spec.n), spec.generators, _act_chamber)
    return OrbitReport("chambers", orb, wit, transitive=len(orb) == 1)


def is_weyl_transitive(spec: ActionSpec) -> OrbitReport:
    """Orbits on each class {(a, b) : delta(a, b) = w}; transitive iff each is one orbit."""
    b = spec.building
    by_w: dict = {}
    for x in range(spec.n):
        for y in range(spec.n):
            by_w.setdefault(b.weyl_distance(b.chambers[x], b.chambers[y]), []).append((x, y))
    all_orbits, witnesses, classes = [], {}, {}
    ok = True
    for w in sorted(by_w, key=lambda w: (len(w), w)):
        orb, wit = orbits(by_w[w], spec.generators, _act_pair)
        all_orbits.extend(orb)
        witnesses.update(wit)
        classes[word_label(w)] = {"pairs": len(by_w[w]), "orbits": len(orb)}
        ok = ok and len(orb) == 1
    return OrbitReport("weyl", all_orbits, witnesses, classes, ok)


def is_strongly_transitive_max_atlas(spec: ActionSpec, apartments=None) -> OrbitReport:
    """Orbits on (apartment, chamber) pairs of the maximal atlas.

    Also records whether strong transitivity implies Weyl-transitivity on
    the instance (it must).
    """
    b = spec.building
    if not b.system.is_finite():
        raise InfiniteWError("the maximal atlas is only enumerated for finite W")
    if apartments is None:
        apartments = enumerate_apartments(b)
    keys = [frozenset(b.index[c] for c in A.chambers) for A in apartments]
    where = {k: n for n, k in enumerate(keys)}
    items = [(n, x) for n, k in enumerate(keys) for x in sorted(k)]

    def act(g, item):
        n, x = item
        return (where[frozenset(g[y] for y in keys[n])], g[x])

    orb, wit = orbits(items, spec.generators, act)
    strong = len(orb) == 1
    weyl = is_weyl_transitive(spec).transitive
    extra = {"apartments": len(apartments), "flags": len(items), "weyl_transitive": weyl,
             "implication_holds": (not strong) or weyl}
    return OrbitReport("apartment-chamber", orb, wit, transitive=strong, extra=extra)


# -- group elements, properness -------------------------------------------------

@dataclass
class ElementBall:
    elements: list
    depth: int
    closed: bool


def element_ball(spec: ActionSpec, depth: int | None) -> ElementBall:
    """Distinct permutations of word length <= depth over generators and inverses.

    ``closed`` is true when a level added nothing new, so the whole group was seen.
    """
    if depth is not None and depth < 0:
        raise ActionError("depth must be >= 0")
    letters = []
    for g in spec.generators:
        letters.append(g)
        gi = invert(g)
        if gi != g:
            letters.append(gi)
    e = identity(spec.n)
    seen = {e}
    frontier = [e]
    level = 0
    closed = False
    while depth is None or level < depth:
        nxt = []
        for h in frontier:
            for g in letters:
                k = compose(g, h)
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        level += 1
        if not nxt:
            closed = True
            break
        frontier = nxt
    if not closed and depth is not None:
        # the ball is the group iff one more level adds nothing
        closed = all(compose(g, h) in seen for h in frontier for g in letters)
    return ElementBall(sorted(seen), level, closed)


def group_order(spec: ActionSpec) -> int:
    return len(element_ball(spec, None).elements)


@dataclass
class CertificateReport:
    elements: list
    depth: int
    closed: bool

    def to_json(self):
        return {"count": len(self.elements), "depth": self.depth, "closed": self.closed,
                "elements": [list(g) for g in self.elements]}


def properness_certificate(spec: ActionSpec, B: Iterable[str], C: Iterable[str],
                           depth: int) -> CertificateReport:
    """{g : g(B) meets C} among elements of word length <= depth."""
    b = spec.building
    Bi = [b.index[b.check_chamber(c)] for c in B]
    Ci = {b.index[b.check_chamber(c)] for c in C}
    ball = element_ball(spec, depth)
    hits = [g for g in ball.elements if any(g[x] in Ci for x in Bi)]
    return CertificateReport(hits, ball.depth, ball.closed)


@dataclass
class DiscretenessReport:
    holds: bool
    depth: int
    closed: bool
    offenders: int

    def __bool__(self):
        return self.holds

    def to_json(self):
        return {"discrete": self.holds, "depth": self.depth, "closed": self.closed,
                "offenders": self.offenders}


def discreteness_witness(spec: ActionSpec, points: Sequence[str], epsilon: float,
                         depth: int) -> DiscretenessReport:
    """Whether only the identity moves every point less than epsilon (chamber metric)."""
    if epsilon <= 0:
        raise ActionError("epsilon must be positive")
    b = spec.building
    for c in points:
        b.check_chamber(c)
    ball = element_ball(spec, depth)
    e = identity(spec.n)
    bad = 0
    for g in ball.elements:
        if g == e:
            continue
        if all(b.distance(c, spec.image(g, c)) < epsilon for c in points):
            bad += 1
    return DiscretenessReport(bad == 0, ball.depth, ball.closed, bad)


def stabilizer(spec: ActionSpec, c: str) -> list[Perm]:
    k = spec.building.index[c]
    return [g for g in element_ball(spec, None).elements if g[k] == k]


# -- standard actions --------------------------------------------------------------

def cayley_left_action(b: Building) -> ActionSpec:
    """W acting on its (finite) Cayley building by left multiplication."""
    system = b.system
    gens = []
    for i in system.generators:
        gens.append(tuple(b.index[word_label(system.multiply((i,), label_word(c)))]
                          for c in b.chambers))
    return ActionSpec(b, tuple(gens), None)


def fano_singer_subgroup(b: Building) -> ActionSpec:
    """Order-21 group x -> x+1, x -> 2x (mod 7) on flags of the {0,1,3} Fano plane."""
    from .constructions import flag_label

    def perm(fp, fl):
        return tuple(b.index[flag_label(fp(p), fl(l))]
                     for p, l in (_parse_flag(c) for c in b.chambers))

    shift = perm(lambda p: (p + 1) % 7, lambda l: (l + 1) % 7)
    # line {i, i+1, i+3} doubles to {2i+6, 2i+7, 2i+9}
    double = perm(lambda p: 2 * p % 7, lambda l: (2 * l + 6) % 7)
    return ActionSpec(b, (shift, double), 21)


def _parse_flag(label: str) -> tuple[int, int]:
    p, l = label[1:].split("l")
    return int(p), int(l)
