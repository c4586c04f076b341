"""Buildings as edge-colored chamber graphs.

A :class:`Building` stores the chamber graph (C, EC, t) together with its
Coxeter system.  The W-valued distance is read off a minimal gallery found by
breadth-first search; :func:`verify_axioms` certifies that this is consistent
with (B2) by checking, for every reduced word, that galleries of that type
end exactly at the chambers with that Weyl distance.

A building may be a ball of radius R around a centre chamber in a larger
building (``ball_radius`` set).  Axioms are then checked only where the ball
cannot differ from the ambient building.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .coxeter import CoxeterSystem, Word


class BuildingError(ValueError):
    pass


class MalformedGraphError(BuildingError):
    pass


class DisconnectedError(BuildingError):
    pass


class NonReducedTypeError(BuildingError):
    pass


class InfiniteWError(BuildingError):
    pass


class UnknownChamberError(BuildingError, KeyError):
    def __str__(self):
        return f"unknown chamber {self.args[0]!r}"


@dataclass(frozen=True)
class Gallery:
    chambers: tuple
    type: tuple

    def __len__(self):
        return len(self.type)


@dataclass(frozen=True)
class Violation:
    kind: str  # B1-panel-size, B1-transitivity, B2-nonreduced, B2-mismatch, disconnected
    chambers: tuple
    detail: str = ""

    def to_json(self):
        return {"kind": self.kind, "chambers": list(self.chambers), "detail": self.detail}


@dataclass
class AxiomReport:
    violations: list = field(default_factory=list)
    sources_checked: int = 0
    max_length: int = 0
    interior_only: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set:
        return {v.kind for v in self.violations}

    def to_json(self):
        return {
            "axioms": "pass" if self.ok else "fail",
            "violations": [v.to_json() for v in self.violations],
            "sources_checked": self.sources_checked,
            "max_length": self.max_length,
            "interior_only": self.interior_only,
        }


@dataclass(frozen=True)
class Apartment:
    chambers: frozenset
    # chart[w] is the chamber playing the role of w in the Cayley building
    chart: dict = field(compare=False, hash=False, default_factory=dict)

    def __len__(self):
        return len(self.chambers)


class Building:
    """Finite edge-colored chamber graph of type (W, I).

    ``edges`` is an iterable of ``(a, b, color)``.  Chamber identifiers are
    strings; they are kept in lexicographic order, which fixes every
    tie-break (BFS order, serialization order).
    """

    def __init__(self, system: CoxeterSystem, chambers: Iterable[str],
                 edges: Iterable[Sequence], ball_radius: int | None = None,
                 ball_center: str | None = None):
        self.system = system
        chambers = list(chambers)
        if len(set(chambers)) != len(chambers):
            raise MalformedGraphError("duplicate chamber identifiers")
        for c in chambers:
            if not isinstance(c, str):
                raise MalformedGraphError(f"chamber id {c!r} is not a string")
        self.chambers: tuple[str, ...] = tuple(sorted(chambers))
        self.index = {c: k for k, c in enumerate(self.chambers)}
        self.adj: dict[str, dict[int, set]] = {c: {i: set() for i in system.generators}
                                               for c in self.chambers}
        self.colors: dict[frozenset, int] = {}
        for e in edges:
            if len(e) != 3:
                raise MalformedGraphError(f"edge {e!r} is not (a, b, color)")
            a, b, i = e
            if a not in self.index or b not in self.index:
                raise MalformedGraphError(f"edge {e!r} uses an unknown chamber")
            if a == b:
                raise MalformedGraphError(f"loop at {a!r}")
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < system.rank:
                raise MalformedGraphError(f"edge {e!r} has color outside I")
            key = frozenset((a, b))
            if key in self.colors:
                raise MalformedGraphError(f"parallel edge between {a!r} and {b!r}")
            self.colors[key] = i
            self.adj[a][i].add(b)
            self.adj[b][i].add(a)
        if ball_radius is not None:
            if ball_radius < 0:
                raise MalformedGraphError("ball_radius must be >= 0")
            if ball_center is None:
                ball_center = self._infer_center(ball_radius)
            elif ball_center not in self.index:
                raise MalformedGraphError(f"ball centre {ball_center!r} is not a chamber")
        else:
            ball_center = None
        self.ball_radius = ball_radius
        self.ball_center = ball_center
        # set on residues: the ambient colors, in the order of the new indices
        self.parent_colors: tuple | None = None
        self._bfs_cache: dict[str, tuple] = {}
        self._delta_cache: dict[tuple, Word] = {}

    # -- plumbing -------------------------------------------------------------

    def __repr__(self):
        extra = f", ball_radius={self.ball_radius}" if self.ball_radius is not None else ""
        return f"Building(rank={self.rank}, chambers={len(self.chambers)}, edges={len(self.colors)}{extra})"

    def __len__(self):
        return len(self.chambers)

    def __contains__(self, c):
        return c in self.index

    @property
    def rank(self) -> int:
        return self.system.rank

    @property
    def is_ball(self) -> bool:
        return self.ball_radius is not None

    def edges(self) -> list[tuple[str, str, int]]:
        out = []
        for key, i in self.colors.items():
            a, b = sorted(key)
            out.append((a, b, i))
        out.sort()
        return out

    def to_json(self) -> dict:
        doc = {
            "coxeter": self.system.to_json(),
            "chambers": list(self.chambers),
            "edges": [list(e) for e in self.edges()],
        }
        if self.ball_radius is not None:
            doc["ball_of_radius"] = self.ball_radius
            doc["ball_center"] = self.ball_center
        return doc

    @classmethod
    def from_json(cls, doc) -> "Building":
        from .coxeter import validate_matrix
        try:
            system = validate_matrix(doc["coxeter"]["m"])
            return cls(system, doc["chambers"], [tuple(e) for e in doc["edges"]],
                       ball_radius=doc.get("ball_of_radius"),
                       ball_center=doc.get("ball_center"))
        except (KeyError, TypeError) as exc:
            raise MalformedGraphError(f"bad building document: {exc}") from exc

    def check_chamber(self, c):
        if c not in self.index:
            raise UnknownChamberError(c)
        return c

    def neighbours(self, c: str, i: int) -> set:
        return self.adj[self.check_chamber(c)][i]

    def panel(self, c: str, i: int) -> frozenset:
        return frozenset(self.neighbours(c, i)) | {c}

    def panels(self, i: int) -> list[frozenset]:
        seen, out = set(), []
        for c in self.chambers:
            if c not in seen:
                p = self.panel(c, i)
                seen |= p
                out.append(p)
        return out

    def relabel(self, mapping: dict) -> "Building":
        """Copy with chambers renamed through ``mapping``."""
        edges = [(mapping[a], mapping[b], i) for a, b, i in self.edges()]
        center = mapping[self.ball_center] if self.ball_center is not None else None
        return Building(self.system, [mapping[c] for c in self.chambers], edges,
                        ball_radius=self.ball_radius, ball_center=center)

    def induced(self, chambers: Iterable[str], **kw) -> "Building":
        keep = set(chambers)
        edges = [(a, b, i) for a, b, i in self.edges() if a in keep and b in keep]
        return Building(self.system, keep, edges, **kw)

    def _infer_center(self, radius: int) -> str:
        for c in self.chambers:
            dist = self._plain_bfs(c)
            if len(dist) == len(self.chambers) and max(dist.values()) <= radius:
                return c
        raise MalformedGraphError(f"no chamber is within {radius} of all others")

    def _plain_bfs(self, a: str) -> dict:
        dist = {a: 0}
        q = deque([a])
        while q:
            x = q.popleft()
            for i in self.system.generators:
                for y in self.adj[x][i]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        q.append(y)
        return dist

    # -- distances ------------------------------------------------------------

    def bfs(self, a: str):
        """(dist, parent, parent_color) of a breadth-first search from ``a``.

        Neighbours are visited in lexicographic order, so the BFS tree and
        every gallery read off it are deterministic.
        """
        a = self.check_chamber(a)
        hit = self._bfs_cache.get(a)
        if hit is not None:
            return hit
        dist, parent, pcol = {a: 0}, {a: None}, {a: None}
        q = deque([a])
        while q:
            x = q.popleft()
            nbrs = sorted((y, i) for i in self.system.generators for y in self.adj[x][i])
            for y, i in nbrs:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    pcol[y] = i
                    q.append(y)
        out = (dist, parent, pcol)
        self._bfs_cache[a] = out
        return out

    def distance(self, a: str, c: str) -> int:
        dist = self.bfs(a)[0]
        self.check_chamber(c)
        if c not in dist:
            raise DisconnectedError(f"{a!r} and {c!r} lie in different components")
        return dist[c]

    def minimal_gallery(self, a: str, c: str) -> Gallery:
        dist, parent, pcol = self.bfs(a)
        self.check_chamber(c)
        if c not in dist:
            raise DisconnectedError(f"{a!r} and {c!r} lie in different components")
        chambers, colors = [c], []
        x = c
        while parent[x] is not None:
            colors.append(pcol[x])
            x = parent[x]
            chambers.append(x)
        return Gallery(tuple(reversed(chambers)), tuple(reversed(colors)))

    def weyl_distance(self, a: str, c: str) -> Word:
        key = (a, c)
        hit = self._delta_cache.get(key)
        if hit is None:
            hit = self.system.reduce(self.minimal_gallery(a, c).type)
            self._delta_cache[key] = hit
        return hit

    def galleries_of_type(self, a: str, type_: Sequence[int]) -> Iterator[Gallery]:
        """Every gallery of the given type starting at ``a``, lexicographic order."""
        a = self.check_chamber(a)
        type_ = self.system.check_word(type_)

        def rec(path):
            k = len(path) - 1
            if k == len(type_):
                yield Gallery(tuple(path), type_)
                return
            for y in sorted(self.adj[path[-1]][type_[k]]):
                path.append(y)
                yield from rec(path)
                path.pop()

        yield from rec([a])

    def gallery_of_type(self, a: str, type_: Sequence[int], end: str | None = None) -> Gallery | None:
        """The gallery of a reduced type from ``a`` to ``end``, or None.

        Without ``end`` the lexicographically first gallery of that type is
        returned.
        """
        if not self.system.is_reduced(type_):
            raise NonReducedTypeError(f"type {tuple(type_)} is not reduced")
        if end is not None:
            self.check_chamber(end)
        for g in self.galleries_of_type(a, type_):
            if end is None or g.chambers[-1] == end:
                return g
        return None

    def delta_table(self) -> dict:
        return {(a, c): self.weyl_distance(a, c) for a in self.chambers for c in self.chambers}

    def diameter(self) -> int:
        best = 0
        for a in self.chambers:
            dist = self.bfs(a)[0]
            if len(dist) != len(self.chambers):
                raise DisconnectedError("chamber graph is disconnected")
            best = max(best, max(dist.values()))
        return best

    # -- residues, balls ------------------------------------------------------

    def residue_chambers(self, c: str, J: Iterable[int]) -> frozenset:
        J = self.system.check_subset(J)
        c = self.check_chamber(c)
        seen = {c}
        todo = [c]
        while todo:
            x = todo.pop()
            for j in J:
                for y in self.adj[x][j]:
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
        return frozenset(seen)

    def residue(self, c: str, J: Iterable[int]) -> "Building":
        """Res_J(c) as a building of type (W_J, J); colors renumbered in order of J."""
        J = self.system.check_subset(J)
        chambers = self.residue_chambers(c, J)
        recolor = {j: k for k, j in enumerate(J)}
        edges = [(a, b, recolor[i]) for a, b, i in self.edges()
                 if i in recolor and a in chambers and b in chambers]
        radius = center = None
        if self.is_ball:
            dist = self.bfs(self.ball_center)[0]
            center = min(chambers, key=lambda x: (dist[x], x))
            radius = self.ball_radius - dist[center]
        out = Building(self.system.parabolic(J), chambers, edges,
                       ball_radius=radius, ball_center=center)
        out.parent_colors = J
        return out

    def ball(self, c: str, r: int) -> "Building":
        if r < 0:
            raise BuildingError("radius must be >= 0")
        dist = self.bfs(c)[0]
        keep = [x for x, d in dist.items() if d <= r]
        return self.induced(keep, ball_radius=r, ball_center=c)

    def interior(self) -> list[str]:
        """Chambers all of whose panels are complete."""
        if not self.is_ball:
            return list(self.chambers)
        dist = self.bfs(self.ball_center)[0]
        return [x for x in self.chambers if dist.get(x, self.ball_radius) < self.ball_radius]

    def is_thin(self) -> bool:
        return all(len(self.adj[x][i]) == 1 for x in self.interior() for i in self.system.generators)

    def is_thick(self) -> bool:
        return all(len(self.adj[x][i]) >= 2 for x in self.interior() for i in self.system.generators)

    def is_locally_finite(self) -> bool:
        # explicit chamber graphs have finite panels
        return True


# -- axioms -------------------------------------------------------------------

def verify_axioms(b: Building, max_length: int | None = None, limit: int | None = None) -> AxiomReport:
    """Check (B1) and (B2); an empty report certifies a building.

    For a plain finite building every chamber pair is checked against every
    reduced word up to ``max_length`` (default: graph diameter).  For a ball
    of radius R around c, galleries of length L from a are examined only when
    d(c, a) + L <= R, so none of them can leave the ball.
    """
    system = b.system
    report = AxiomReport(interior_only=b.is_ball)

    def add(v):
        if limit is None or len(report.violations) < limit:
            report.violations.append(v)

    # (B1)
    interior = set(b.interior())
    for x in b.chambers:
        for i in system.generators:
            nbrs = sorted(b.adj[x][i])
            if not nbrs and x in interior:
                add(Violation("B1-panel-size", (x,), f"no chamber is {i}-adjacent"))
            for p, u in enumerate(nbrs):
                for v in nbrs[p + 1:]:
                    if v not in b.adj[u][i]:
                        add(Violation("B1-transitivity", (x, u, v),
                                      f"{u!r} and {v!r} are {i}-adjacent to {x!r} but not to each other"))

    # (B2)
    if b.is_ball:
        cdist = b.bfs(b.ball_center)[0]
        budgets = {a: b.ball_radius - cdist[a] for a in b.chambers if a in cdist}
        for a in b.chambers:
            if a not in cdist:
                add(Violation("disconnected", (b.ball_center, a), "chamber not reachable from the centre"))
    else:
        if max_length is None:
            max_length = 0
            for a in b.chambers:
                dist = b.bfs(a)[0]
                max_length = max(max_length, max(dist.values()))
        budgets = {a: max_length for a in b.chambers}
    if max_length is not None:
        budgets = {a: min(L, max_length) for a, L in budgets.items()}
    report.max_length = max(budgets.values(), default=0)

    for a in b.chambers:
        L = budgets.get(a)
        if L is None or L < 0:
            continue
        report.sources_checked += 1
        dist = b.bfs(a)[0]
        if not b.is_ball and len(dist) != len(b.chambers):
            missing = sorted(set(b.chambers) - set(dist))
            add(Violation("disconnected", (a, missing[0]), f"{len(missing)} chambers unreachable"))
        by_delta: dict[Word, set] = {}
        for x, d in dist.items():
            if d > L:
                continue
            gallery_type = b.minimal_gallery(a, x).type
            w = system.reduce(gallery_type)
            if len(w) != len(gallery_type):
                add(Violation("B2-nonreduced", (a, x),
                              f"minimal gallery of type {gallery_type} is not reduced"))
                continue
            by_delta.setdefault(w, set()).add(x)
        _check_reduced_types(b, a, L, by_delta, add)
    return report


def _check_reduced_types(b: Building, a: str, L: int, by_delta: dict, add) -> None:
    # depth-first walk over the trie of reduced words, carrying gallery endpoints
    system = b.system
    stack = [((), (), frozenset([a]))]
    while stack:
        word, nf, ends = stack.pop()
        expected = by_delta.get(nf, set())
        if ends != expected:
            extra = sorted(ends - expected)
            missing = sorted(expected - ends)
            detail = f"type {word}: delta={nf}"
            if extra:
                detail += f"; galleries end at chambers with another distance {extra[:3]}"
            if missing:
                detail += f"; no gallery reaches {missing[:3]}"
            add(Violation("B2-mismatch", (a,) + tuple(extra[:1] or missing[:1]), detail))
        if len(word) == L:
            continue
        descents = system.right_descents(nf)
        for i in reversed(system.generators):
            if i in descents:
                continue
            nxt = frozenset(y for x in ends for y in b.adj[x][i])
            stack.append((word + (i,), system.multiply(nf, (i,)), nxt))


# -- apartments ---------------------------------------------------------------

def enumerate_apartments(b: Building) -> list[Apartment]:
    """All thin subbuildings of a finite building with finite W.

    Each apartment is found as the image of a delta-preserving map from the
    Cayley building of W, grown element by element in ShortLex order with
    backtracking over panel choices.
    """
    system = b.system
    if not system.is_finite():
        raise InfiniteWError("apartment enumeration needs a finite Coxeter group")
    if b.is_ball:
        raise BuildingError("apartments of a truncated ball are not defined")
    elements = system.enumerate_elements()
    inv = {w: system.inverse(w) for w in elements}
    delta = b.delta_table()
    found: dict[frozenset, Apartment] = {}

    for c in b.chambers:
        chart = {(): c}
        used = {c}

        def extend(k):
            if k == len(elements):
                key = frozenset(chart.values())
                if key not in found:
                    found[key] = Apartment(key, dict(chart))
                return
            w = elements[k]
            u, i = w[:-1], w[-1]
            for x in sorted(b.adj[chart[u]][i]):
                if x in used:
                    continue
                if all(delta[(chart[v], x)] == system.multiply(inv[v], w) for v in chart):
                    chart[w] = x
                    used.add(x)
                    extend(k + 1)
                    used.discard(x)
                    del chart[w]

        extend(1)
    return sorted(found.values(), key=lambda A: sorted(A.chambers))


# module-level forms of the operations

def weyl_distance(b: Building, a: str, c: str) -> Word:
    return b.weyl_distance(a, c)


def minimal_gallery(b: Building, a: str, c: str) -> Gallery:
    return b.minimal_gallery(a, c)


def gallery_of_type(b: Building, a: str, type_, end: str | None = None) -> Gallery | None:
    return b.gallery_of_type(a, type_, end)


def residue(b: Building, c: str, J) -> Building:
    return b.residue(c, J)


def ball(b: Building, c: str, r: int) -> Building:
    return b.ball(c, r)


def is_thin(b: Building) -> bool:
    return b.is_thin()


def is_thick(b: Building) -> bool:
    return b.is_thick()


def is_locally_finite(b: Building) -> bool:
    return b.is_locally_finite()
