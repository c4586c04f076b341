"""Generators of buildings: Cayley (thin), graph-product and flag buildings."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

from .building import Building, verify_axioms
from .coxeter import CoxeterSystem, Word, dihedral, validate_matrix


class ConstructionError(ValueError):
    pass


class TrivialVertexGroupError(ConstructionError):
    pass


class BadGroupTableError(ConstructionError):
    pass


class NotABuildingError(ConstructionError):
    def __init__(self, report):
        first = report.violations[0] if report.violations else None
        super().__init__(f"incidence structure is not a generalized triangle: {first}")
        self.report = report


def word_label(w: Word) -> str:
    return ".".join(map(str, w)) if w else "e"


def label_word(label: str) -> Word:
    return () if label == "e" else tuple(int(x) for x in label.split("."))


def cayley_building(system: CoxeterSystem, radius: int = 0) -> Building:
    """Thin building on W with t({w, wi}) = i; a ball of ``radius`` if W is infinite."""
    if radius < 0:
        raise ConstructionError("radius must be >= 0")
    finite = system.is_finite()
    elements = system.enumerate_elements(None if finite else radius)
    present = set(elements)
    edges = []
    for w in elements:
        for i in system.generators:
            v = system.multiply(w, (i,))
            if v in present and w < v:
                edges.append((word_label(w), word_label(v), i))
    labels = [word_label(w) for w in elements]
    if finite:
        return Building(system, labels, edges)
    return Building(system, labels, edges, ball_radius=radius, ball_center="e")


# -- finite groups and graph products ----------------------------------------

class FiniteGroupTable:
    """Multiplication table of a finite group; element 0 is the identity."""

    def __init__(self, table: Sequence[Sequence[int]]):
        t = [list(r) for r in table]
        n = len(t)
        if n == 0:
            raise BadGroupTableError("empty table")
        for r in t:
            if len(r) != n or any(not isinstance(x, int) or not 0 <= x < n for x in r):
                raise BadGroupTableError("table is not a square array of element indices")
        for g in range(n):
            if t[0][g] != g or t[g][0] != g:
                raise BadGroupTableError("element 0 is not the identity")
            if 0 not in t[g]:
                raise BadGroupTableError(f"element {g} has no inverse")
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise BadGroupTableError(f"not associative at ({a}, {b}, {c})")
        self.order = n
        self.table = tuple(tuple(r) for r in t)
        self._inv = tuple(t[g].index(0) for g in range(n))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def to_json(self):
        return {"order": self.order, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, doc):
        t = cls(doc["table"])
        if doc.get("order", t.order) != t.order:
            raise BadGroupTableError("order does not match the table")
        return t

    def __eq__(self, other):
        return isinstance(other, FiniteGroupTable) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroupTable(order={self.order})"


def cyclic_group(k: int) -> FiniteGroupTable:
    return FiniteGroupTable([[(a + b) % k for b in range(k)] for a in range(k)])


def klein_four() -> FiniteGroupTable:
    return FiniteGroupTable([[a ^ b for b in range(4)] for a in range(4)])


Syllable = tuple  # (color, nonidentity element)


@dataclass(frozen=True)
class GraphProductSpec:
    groups: tuple
    gamma_edges: frozenset

    def __init__(self, groups: Sequence[FiniteGroupTable], gamma_edges=()):
        groups = tuple(groups)
        for i, g in enumerate(groups):
            if g.order < 2:
                raise TrivialVertexGroupError(f"vertex group {i} is trivial")
        edges = set()
        for e in gamma_edges:
            i, j = e
            if i == j or not (0 <= i < len(groups) and 0 <= j < len(groups)):
                raise ConstructionError(f"bad commutation edge {e!r}")
            edges.add(frozenset((i, j)))
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "gamma_edges", frozenset(edges))

    @property
    def rank(self) -> int:
        return len(self.groups)

    def commute(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.gamma_edges

    def coxeter_system(self) -> CoxeterSystem:
        n = self.rank
        return validate_matrix([[1 if i == j else (2 if self.commute(i, j) else 0)
                                 for j in range(n)] for i in range(n)])

    def to_json(self):
        return {"groups": [g.to_json() for g in self.groups],
                "gamma_edges": sorted(sorted(e) for e in self.gamma_edges)}

    @classmethod
    def from_json(cls, doc):
        return cls([FiniteGroupTable.from_json(g) for g in doc["groups"]],
                   [tuple(e) for e in doc.get("gamma_edges", [])])

    # -- syllable normal forms ------------------------------------------------

    def canonical(self, word: Sequence[Syllable]) -> tuple:
        """Lexicographically least shuffle of a reduced syllable word."""
        rest = list(word)
        out = []
        while rest:
            best = None
            for k, (c, g) in enumerate(rest):
                if all(self.commute(c, d) for d, _ in rest[:k]):
                    if best is None or (c, g) < rest[best]:
                        best = k
            out.append(rest.pop(best))
        return tuple(out)

    def multiply_syllable(self, word: Sequence[Syllable], i: int, g: int) -> tuple:
        """Normal form of ``word * g`` with g in G_i."""
        word = list(word)
        if g == 0:
            return tuple(word)
        k = len(word) - 1
        while k >= 0:
            c, h = word[k]
            if c == i:
                prod_ = self.groups[i].mul(h, g)
                if prod_ == 0:
                    del word[k]
                else:
                    word[k] = (i, prod_)
                return self.canonical(word)
            if not self.commute(c, i):
                break
            k -= 1
        word.append((i, g))
        return self.canonical(word)

    def multiply(self, a: Sequence[Syllable], b: Sequence[Syllable]) -> tuple:
        out = tuple(a)
        for i, g in b:
            out = self.multiply_syllable(out, i, g)
        return out

    def inverse(self, a: Sequence[Syllable]) -> tuple:
        out: tuple = ()
        for i, g in reversed(a):
            out = self.multiply_syllable(out, i, self.groups[i].inv(g))
        return out


def syllable_label(word: Sequence[Syllable]) -> str:
    return "*".join(f"{i}^{g}" for i, g in word) if word else "e"


def graph_product_building(spec: GraphProductSpec, radius: int) -> Building:
    """Right-angled building on G_Gamma: a ~_i b iff a^-1 b is a nonidentity element of G_i.

    Chambers are the elements with at most ``radius`` syllables (gallery
    distance from the identity).  When Gamma is complete the building is
    finite and a large enough radius returns all of it without a ball flag.
    """
    if radius < 0:
        raise ConstructionError("radius must be >= 0")
    system = spec.coxeter_system()
    level = [()]
    elements = {(): 0}
    for k in range(radius):
        nxt = []
        for x in level:
            for i, G in enumerate(spec.groups):
                for g in range(1, G.order):
                    y = spec.multiply_syllable(x, i, g)
                    if y not in elements:
                        elements[y] = k + 1
                        nxt.append(y)
        level = nxt
    edges = set()
    for x in elements:
        for i, G in enumerate(spec.groups):
            for g in range(1, G.order):
                y = spec.multiply_syllable(x, i, g)
                if y in elements:
                    a, b = sorted((syllable_label(x), syllable_label(y)))
                    edges.add((a, b, i))
    labels = [syllable_label(x) for x in elements]
    complete = system.is_finite() and radius >= len(system.longest_element())
    if complete:
        return Building(system, labels, sorted(edges))
    return Building(system, labels, sorted(edges), ball_radius=radius, ball_center="e")


# -- incidence geometries ----------------------------------------------------

def flag_label(p: int, l: int) -> str:
    return f"p{p}l{l}"


def flag_building_from_incidence(points: Sequence, lines: Sequence[Sequence[int]],
                                 incidence=None) -> Building:
    """Flag complex of a point-line geometry as a building of type I_2(3).

    Flags (p, l) with p on l are chambers; 0-adjacent flags share the line,
    1-adjacent flags share the point.  ``incidence`` may override membership
    as a set of (point index, line index) pairs.
    """
    n = len(points)
    if incidence is None:
        incidence = {(p, l) for l, pts in enumerate(lines) for p in pts}
    incidence = {(int(p), int(l)) for p, l in incidence}
    for p, l in incidence:
        if not (0 <= p < n and 0 <= l < len(lines)):
            raise ConstructionError(f"incidence ({p}, {l}) out of range")
    flags = sorted(incidence)
    edges = []
    for (p, l), (q, m) in combinations(flags, 2):
        if l == m:
            edges.append((flag_label(p, l), flag_label(q, m), 0))
        elif p == q:
            edges.append((flag_label(p, l), flag_label(q, m), 1))
    b = Building(dihedral(3), [flag_label(p, l) for p, l in flags], edges)
    report = verify_axioms(b)
    if not report.ok:
        raise NotABuildingError(report)
    return b


def fano_plane() -> tuple[list[int], list[list[int]]]:
    """PG(2,2) from the difference set {0, 1, 3} mod 7."""
    return list(range(7)), [sorted({i, (i + 1) % 7, (i + 3) % 7}) for i in range(7)]


def projective_plane(q: int) -> tuple[list[int], list[list[int]]]:
    """PG(2, q) for prime q."""
    if q < 2 or any(q % d == 0 for d in range(2, int(q ** 0.5) + 1)):
        raise ConstructionError("q must be prime")
    reps = []
    for v in product(range(q), repeat=3):
        if any(v):
            lead = next(x for x in v if x)
            inv = pow(lead, -1, q)
            w = tuple(x * inv % q for x in v)
            if w not in reps:
                reps.append(w)
    lines = [[k for k, p in enumerate(reps) if sum(a * b for a, b in zip(p, h)) % q == 0]
             for h in reps]
    return list(range(len(reps))), lines


def fano_building() -> Building:
    return flag_building_from_incidence(*fano_plane())
