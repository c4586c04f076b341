"""Tits and Davis realizations as abstract simplicial complexes, and their homology."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Hashable, Iterable

from .building import Building, InfiniteWError


class RealizationError(ValueError):
    pass


class RankZeroError(RealizationError):
    pass


@dataclass(frozen=True, order=True)
class Residue:
    """Res_J(c) identified by its colors and chamber set, not by (c, J)."""
    colors: tuple
    chambers: tuple  # sorted chamber ids

    def __str__(self):
        return "{" + ",".join(map(str, self.colors)) + "}:" + ",".join(self.chambers)


class SimplicialComplex:
    """Downward-closed family of finite vertex sets, generated by its facets."""

    def __init__(self, simplices: Iterable[Iterable[Hashable]], vertices: Iterable[Hashable] = ()):
        gens = {frozenset(s) for s in simplices}
        gens.discard(frozenset())
        verts = set(vertices)
        for s in gens:
            verts |= s
        for v in verts:
            gens.add(frozenset([v]))
        # keep maximal generators only
        by_size = sorted(gens, key=len, reverse=True)
        facets: list[frozenset] = []
        for s in by_size:
            if not any(s < f for f in facets):
                facets.append(s)
        self.vertices = tuple(sorted(verts, key=_vkey))
        self.facets = tuple(sorted(facets, key=lambda f: sorted(map(_vkey, f))))
        self._simplices: dict[int, list[tuple]] | None = None

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def simplices(self, k: int) -> list[tuple]:
        """k-simplices as vertex tuples in vertex order, sorted."""
        if self._simplices is None:
            order = {v: n for n, v in enumerate(self.vertices)}
            out: dict[int, set] = {}
            for f in self.facets:
                fv = sorted(f, key=order.__getitem__)
                for r in range(1, len(fv) + 1):
                    out.setdefault(r - 1, set()).update(combinations(fv, r))
            self._simplices = {d: sorted(s, key=lambda t: [order[v] for v in t])
                               for d, s in out.items()}
        return self._simplices.get(k, [])

    def f_vector(self) -> list[int]:
        return [len(self.simplices(k)) for k in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def __contains__(self, s):
        s = frozenset(s)
        return any(s <= f for f in self.facets)

    def __repr__(self):
        return f"SimplicialComplex(vertices={len(self.vertices)}, facets={len(self.facets)}, dim={self.dimension})"

    def to_json(self) -> dict:
        return {"vertices": [str(v) for v in self.vertices],
                "facets": [sorted(str(v) for v in f) for f in self.facets]}

    @classmethod
    def from_json(cls, doc) -> "SimplicialComplex":
        return cls(doc["facets"], doc.get("vertices", ()))

    def to_off_text(self) -> str:
        """Facet list in an OFF-like layout: counts, vertex labels, then index lists."""
        idx = {v: n for n, v in enumerate(self.vertices)}
        lines = ["OFF", f"{len(self.vertices)} {len(self.facets)} 0"]
        lines += [str(v) for v in self.vertices]
        for f in self.facets:
            ids = sorted(idx[v] for v in f)
            lines.append(" ".join(map(str, [len(ids)] + ids)))
        return "\n".join(lines) + "\n"


def _vkey(v):
    return (type(v).__name__, str(v)) if not isinstance(v, (int, float)) else ("", v)


# -- homology ------------------------------------------------------------------

def boundary_matrix(K: SimplicialComplex, k: int) -> list[dict]:
    """Rows of the boundary map C_k -> C_{k-1}, one sparse dict per k-simplex."""
    if k <= 0:
        return [{} for _ in K.simplices(k)]
    faces = {s: n for n, s in enumerate(K.simplices(k - 1))}
    rows = []
    for s in K.simplices(k):
        row = {}
        for p in range(len(s)):
            row[faces[s[:p] + s[p + 1:]]] = -1 if p % 2 else 1
        rows.append(row)
    return rows


def integer_rank(rows: list[dict]) -> int:
    """Rank over Q of an integer matrix given by sparse rows, fraction-free elimination."""
    pivots: dict[int, dict] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            col = min(r)
            p = pivots.get(col)
            if p is None:
                pivots[col] = r
                break
            a, b = r[col], p[col]
            new = {}
            for c in set(r) | set(p):
                v = b * r.get(c, 0) - a * p.get(c, 0)
                if v:
                    new[c] = v
            if new:
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
            r = new
    return len(pivots)


def homology_ranks(K: SimplicialComplex, max_dim: int | None = None) -> list[int]:
    """Rational Betti numbers b_0 .. b_max_dim."""
    if max_dim is None:
        max_dim = max(K.dimension, 0)
    ranks = {}

    def rank(k):
        if k not in ranks:
            ranks[k] = integer_rank(boundary_matrix(K, k)) if k >= 1 else 0
        return ranks[k]

    return [len(K.simplices(k)) - rank(k) - rank(k + 1) for k in range(max_dim + 1)]


# -- realizations ----------------------------------------------------------------

def _residue_partition(b: Building, J: tuple) -> dict[str, Residue]:
    """Map each chamber to its J-residue."""
    out: dict[str, Residue] = {}
    for c in b.chambers:
        if c not in out:
            cham = b.residue_chambers(c, J)
            r = Residue(tuple(J), tuple(sorted(cham)))
            for x in cham:
                out[x] = r
    return out


def tits_realization(b: Building) -> SimplicialComplex:
    """Vertices are residues of cotype one; chamber c spans {Res_{I-i}(c) : i in I}."""
    if b.rank == 0:
        raise RankZeroError("the Tits realization is not defined for rank 0")
    I = tuple(b.system.generators)
    parts = {i: _residue_partition(b, tuple(j for j in I if j != i)) for i in I}
    facets = [[parts[i][c] for i in I] for c in b.chambers]
    return SimplicialComplex(facets)


def spherical_residues(b: Building) -> dict[tuple, dict[str, Residue]]:
    """For each spherical J, the map chamber -> Res_J(chamber), complete residues only.

    In a ball of radius R about c0, Res_J(x) lies inside the ball iff its
    chamber nearest to c0 is at distance <= R - l(w_J), w_J longest in W_J.
    """
    system = b.system
    out = {}
    cdist = b.bfs(b.ball_center)[0] if b.is_ball else None
    for J in system.spherical_subsets():
        J = tuple(sorted(J))
        part = _residue_partition(b, J)
        if cdist is not None:
            top = len(system.parabolic(J).longest_element()) if J else 0
            part = {x: r for x, r in part.items()
                    if min(cdist[y] for y in r.chambers) + top <= b.ball_radius}
        out[J] = part
    return out


def davis_realization(b: Building) -> SimplicialComplex:
    """Simplices are chains Res_J0(c) < ... < Res_Jm(c) of spherical residues."""
    res = spherical_residues(b)
    spherical = set(res)
    chains: list[list[tuple]] = []

    def grow(chain):
        extended = False
        for i in b.system.generators:
            if i in chain[-1]:
                continue
            J = tuple(sorted(chain[-1] + (i,)))
            if J in spherical:
                extended = True
                grow(chain + [J])
        if not extended:
            chains.append(chain)

    grow([()])
    simplices = set()
    for c in b.chambers:
        for chain in chains:
            s = []
            for J in chain:
                r = res[J].get(c)
                if r is None:
                    break
                s.append(r)
            simplices.add(frozenset(s))
    return SimplicialComplex(simplices)


def opposite_count(b: Building, c: str) -> int:
    """Number of chambers a with delta(a, c) = w0."""
    if not b.system.is_finite():
        raise InfiniteWError("opposition needs a finite Coxeter group")
    w0 = b.system.longest_element()
    b.check_chamber(c)
    return sum(1 for a in b.chambers if b.weyl_distance(a, c) == w0)
