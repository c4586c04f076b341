"""Piecewise-euclidean (M_0) structures on simplicial complexes.

Each simplex carries a euclidean shape given by its edge lengths; the metric
of a simplex is realised by Gram-matrix coordinates computed on demand.  The
intrinsic distance is estimated from above: a shortest path in a subdivided
graph fixes a sequence of simplices, then the crossing points between
consecutive simplices are moved by exact block minimisation.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .realizations import SimplicialComplex

Vertex = Hashable


class MetricError(ValueError):
    pass


class IncompatibleShapesError(MetricError):
    pass


class DegenerateShapeError(MetricError):
    pass


class NotInCommonSimplexError(MetricError):
    pass


class DisconnectedPointsError(MetricError):
    pass


class ToleranceNotReachedError(MetricError):
    def __init__(self, estimate):
        super().__init__(f"tolerance not reached; best upper bound {estimate.value!r}")
        self.estimate = estimate


# -- shapes -------------------------------------------------------------------

@dataclass(frozen=True)
class Shape:
    """A euclidean simplex given by its (dim+1) x (dim+1) edge-length matrix."""
    edge_lengths: tuple

    def __post_init__(self):
        d = np.asarray(self.edge_lengths, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise DegenerateShapeError("edge-length matrix must be square")
        if not np.allclose(d, d.T, rtol=0, atol=1e-12) or np.any(np.diag(d) != 0):
            raise DegenerateShapeError("edge-length matrix must be symmetric with zero diagonal")
        if np.any(d[~np.eye(len(d), dtype=bool)] <= 0):
            raise DegenerateShapeError("edge lengths must be positive")
        coordinates(d)  # raises if not realisable in general position

    @property
    def dim(self) -> int:
        return len(self.edge_lengths) - 1

    def to_json(self):
        return {"dim": self.dim, "edge_lengths": [list(r) for r in self.edge_lengths]}


def gram_matrix(d: np.ndarray) -> np.ndarray:
    """Gram matrix of the edge vectors from vertex 0."""
    d2 = np.asarray(d, dtype=float) ** 2
    return 0.5 * (d2[0, 1:][:, None] + d2[0, 1:][None, :] - d2[1:, 1:])


def coordinates(d) -> np.ndarray:
    """Vertex coordinates (rows) of a euclidean simplex with edge lengths ``d``.

    Realisable in general position iff the Gram matrix is positive definite,
    equivalently every Cayley-Menger determinant of a face has the euclidean sign.
    """
    d = np.asarray(d, dtype=float)
    k = len(d) - 1
    if k == 0:
        return np.zeros((1, 0))
    G = gram_matrix(d)
    scale = max(float(np.max(d)) ** 2, 1e-300)
    if np.min(np.linalg.eigvalsh(G)) <= 1e-12 * scale:
        raise DegenerateShapeError(f"edge lengths {d.tolist()} do not span a {k}-simplex")
    L = np.linalg.cholesky(G)
    return np.vstack([np.zeros(k), L])


# -- points and strings -----------------------------------------------------------

@dataclass(frozen=True)
class ComplexPoint:
    """Point of |K| given by barycentric weights on the vertices of a simplex."""
    simplex: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.simplex) != len(self.weights):
            raise MetricError("one weight per vertex is required")
        w = [float(x) for x in self.weights]
        if any(x < -1e-12 for x in w):
            raise MetricError("barycentric weights must be nonnegative")
        s = sum(w)
        if abs(s - 1) > 1e-9:
            raise MetricError(f"barycentric weights sum to {s}, not 1")
        pairs = sorted(((v, x / s) for v, x in zip(self.simplex, w) if x > 1e-15),
                       key=lambda t: _key(t[0]))
        object.__setattr__(self, "simplex", tuple(v for v, _ in pairs))
        object.__setattr__(self, "weights", tuple(x for _, x in pairs))

    @classmethod
    def vertex(cls, v) -> "ComplexPoint":
        return cls((v,), (1.0,))

    @classmethod
    def on(cls, weights: dict) -> "ComplexPoint":
        return cls(tuple(weights), tuple(weights.values()))

    @property
    def support(self) -> frozenset:
        return frozenset(self.simplex)


@dataclass(frozen=True)
class PLString:
    points: tuple
    witnesses: tuple  # simplices (vertex sets), one per step

    def __post_init__(self):
        if len(self.witnesses) != max(len(self.points) - 1, 0):
            raise MetricError("a string of m+1 points needs m witness simplices")


@dataclass
class DistanceEstimate:
    value: float
    converged: bool
    string: PLString | None = None
    levels: int = 0
    sweeps: int = 0


def _key(v):
    return (0, v, "") if isinstance(v, (int, float)) else (1, 0, str(v))


# -- the complex ---------------------------------------------------------------------

class MZeroComplex:
    """Simplicial complex with finitely many euclidean shapes.

    ``assignment`` is a sequence of ``(simplex, shape index, permutation)``:
    vertex ``simplex[p]`` is sent to shape vertex ``permutation[p]``.  Every
    facet must lie in an assigned simplex, and shapes must agree on shared
    edges (which is exactly face compatibility for euclidean simplices).
    """

    lazy = False

    def __init__(self, complex: SimplicialComplex, shapes: Sequence[Shape], assignment):
        self.complex = complex
        self.shapes = tuple(shapes)
        self.assignment = [(tuple(s), int(k), tuple(p)) for s, k, p in assignment]
        self._edge: dict[frozenset, float] = {}
        covered = set()
        for simplex, k, perm in self.assignment:
            if simplex not in complex:
                raise MetricError(f"assigned simplex {simplex} is not in the complex")
            if not 0 <= k < len(self.shapes):
                raise MetricError(f"shape index {k} out of range")
            shape = self.shapes[k]
            if len(perm) != len(simplex) or sorted(perm) != list(range(shape.dim + 1)):
                raise MetricError(f"bad vertex permutation {perm} for a {shape.dim}-simplex")
            for p, q in combinations(range(len(simplex)), 2):
                e = frozenset((simplex[p], simplex[q]))
                length = float(shape.edge_lengths[perm[p]][perm[q]])
                old = self._edge.setdefault(e, length)
                if abs(old - length) > 1e-12 * max(1.0, old):
                    raise IncompatibleShapesError(f"edge {sorted(e, key=_key)} has lengths {old} and {length}")
            covered.add(frozenset(simplex))
        for f in complex.facets:
            if len(f) > 1 and not any(f <= c for c in covered):
                raise MetricError(f"facet {sorted(f, key=_key)} has no shape")
        self._star: dict = {}
        for f in complex.facets:
            for v in f:
                self._star.setdefault(v, []).append(tuple(sorted(f, key=_key)))
        self._coords: dict[tuple, np.ndarray] = {}
        for f in complex.facets:
            self.facet_coordinates(tuple(sorted(f, key=_key)))

    # construction helpers

    @classmethod
    def from_edge_lengths(cls, complex: SimplicialComplex, lengths) -> "MZeroComplex":
        """Shapes read off per-edge lengths (a dict on frozensets or a function)."""
        if not callable(lengths):
            table = {frozenset(e): float(v) for e, v in lengths.items()}
            lengths = lambda u, v: table[frozenset((u, v))]  # noqa: E731
        shapes: dict[tuple, int] = {}
        assignment = []
        for f in complex.facets:
            verts = tuple(sorted(f, key=_key))
            d = tuple(tuple(0.0 if u == v else float(lengths(u, v)) for v in verts) for u in verts)
            if d not in shapes:
                shapes[d] = len(shapes)
            assignment.append((verts, shapes[d], tuple(range(len(verts)))))
        return cls(complex, [Shape(d) for d in shapes], assignment)

    @classmethod
    def regular(cls, complex: SimplicialComplex, length: float = 1.0) -> "MZeroComplex":
        """Every simplex a regular simplex with the given edge length."""
        return cls.from_edge_lengths(complex, lambda u, v: length)

    def to_json(self) -> dict:
        return {
            "shapes": [s.to_json() for s in self.shapes],
            "assignment": [[[str(v) for v in s], k, list(p)] for s, k, p in self.assignment],
        }

    @classmethod
    def from_json(cls, complex: SimplicialComplex, doc) -> "MZeroComplex":
        shapes = []
        for s in doc["shapes"]:
            shape = Shape(tuple(tuple(float(x) for x in r) for r in s["edge_lengths"]))
            if "dim" in s and s["dim"] != shape.dim:
                raise MetricError(f"shape declares dim {s['dim']} but has {shape.dim + 1} vertices")
            shapes.append(shape)
        return cls(complex, shapes, doc["assignment"])

    # geometry

    @property
    def vertices(self):
        return self.complex.vertices

    def star(self, v) -> list[tuple]:
        return self._star.get(v, [])

    def edge_length(self, u, v) -> float:
        return self._edge[frozenset((u, v))]

    def facets_containing(self, s: Iterable) -> list[tuple]:
        s = frozenset(s)
        if not s:
            return []
        v = next(iter(s))
        return [f for f in self.star(v) if s <= set(f)]

    def facet_coordinates(self, facet: tuple) -> np.ndarray:
        hit = self._coords.get(facet)
        if hit is None:
            d = [[0.0 if u == v else self.edge_length(u, v) for v in facet] for u in facet]
            hit = coordinates(d)
            self._coords[facet] = hit
        return hit

    def position(self, x: ComplexPoint, facet: tuple) -> np.ndarray:
        X = self.facet_coordinates(facet)
        idx = {v: n for n, v in enumerate(facet)}
        try:
            return sum(w * X[idx[v]] for v, w in zip(x.simplex, x.weights))
        except KeyError:
            raise NotInCommonSimplexError(f"point on {x.simplex} is not in {facet}") from None

    def simplex_distance(self, x: ComplexPoint, y: ComplexPoint, simplex=None) -> float:
        """d_a(x, y) inside a simplex containing both points."""
        need = x.support | y.support
        if simplex is not None:
            if not need <= set(simplex) or tuple(simplex) not in self.complex:
                raise NotInCommonSimplexError(f"{sorted(need, key=_key)} not in simplex {simplex}")
            need = frozenset(simplex)
        facets = self.facets_containing(need)
        if not facets:
            raise NotInCommonSimplexError(f"no simplex contains {sorted(need, key=_key)}")
        f = facets[0]
        return float(np.linalg.norm(self.position(x, f) - self.position(y, f)))


# -- operations ------------------------------------------------------------------

def string_length(mc: MZeroComplex, string: PLString) -> float:
    total = 0.0
    for k, a in enumerate(string.witnesses):
        total += mc.simplex_distance(string.points[k], string.points[k + 1], a)
    return total


def _closest_in_face(mc, p, a, q, b, face) -> tuple[ComplexPoint, float]:
    """Minimise d_a(p, z) + d_b(z, q) over z in the common face.

    Each face G of ``face`` is tried: projecting p and q orthogonally onto
    aff(G) leaves heights h_p, h_q, and the unfolded straight segment meets
    aff(G) at the fraction h_p / (h_p + h_q).  The best feasible candidate is
    the exact minimum because the objective is convex.
    """
    Xa, Xb = mc.facet_coordinates(a), mc.facet_coordinates(b)
    ia = {v: n for n, v in enumerate(a)}
    ib = {v: n for n, v in enumerate(b)}
    P, Q = mc.position(p, a), mc.position(q, b)
    face = sorted(face, key=_key)
    best = None
    for r in range(1, len(face) + 1):
        for G in combinations(face, r):
            lam_p, hp = _project(P, Xa[[ia[v] for v in G]])
            lam_q, hq = _project(Q, Xb[[ib[v] for v in G]])
            t = hp / (hp + hq) if hp + hq > 1e-300 else 0.0
            lam = lam_p + t * (lam_q - lam_p)
            if lam.min() < -1e-12:
                continue
            lam = np.clip(lam, 0.0, None)
            lam /= lam.sum()
            z = ComplexPoint(G, tuple(lam))
            Za = lam @ Xa[[ia[v] for v in G]]
            Zb = lam @ Xb[[ib[v] for v in G]]
            val = float(np.linalg.norm(P - Za) + np.linalg.norm(Zb - Q))
            if best is None or val < best[1]:
                best = (z, val)
    return best


def _project(P: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, float]:
    """Affine weights of the orthogonal projection of P onto aff(rows of V), and the height."""
    if len(V) == 1:
        return np.ones(1), float(np.linalg.norm(P - V[0]))
    E = (V[1:] - V[0]).T
    mu = np.linalg.lstsq(E, P - V[0], rcond=None)[0]
    foot = V[0] + E @ mu
    return np.concatenate([[1.0 - mu.sum()], mu]), float(np.linalg.norm(P - foot))


def _common_facet(mc, x: ComplexPoint, y: ComplexPoint):
    f = mc.facets_containing(x.support | y.support)
    return f[0] if f else None


def _subdivided_path(mc: MZeroComplex, x: ComplexPoint, y: ComplexPoint, k: int):
    """Shortest path among x, y, vertices and k-subdivision points of edges.

    Any two nodes lying in a common facet are joined by their distance in
    that facet.  Returns (points, witness facets) or None.
    """
    nodes: list[ComplexPoint] = []
    node_id: dict = {}

    def node(pt, key):
        if key not in node_id:
            node_id[key] = len(nodes)
            nodes.append(pt)
        return node_id[key]

    sx = node(x, "x")
    sy = node(y, "y")
    facet_nodes: dict[tuple, list[int]] = {}
    facets_of: dict[int, list[tuple]] = {}
    reach = _component(mc, x.support)
    for f in {f for v in reach for f in mc.star(v)}:
        ids = [node(ComplexPoint.vertex(v), ("v", v)) for v in f]
        for u, v in combinations(f, 2):
            u, v = sorted((u, v), key=_key)
            for s in range(1, k):
                ids.append(node(ComplexPoint((u, v), (1 - s / k, s / k)), ("e", u, v, s)))
        if x.support <= set(f):
            ids.append(sx)
        if y.support <= set(f):
            ids.append(sy)
        facet_nodes[f] = ids
        for n in ids:
            facets_of.setdefault(n, []).append(f)
    if sy not in facets_of:
        return None
    pos = {f: np.array([mc.position(nodes[n], f) for n in ids]) for f, ids in facet_nodes.items()}
    slot = {f: {n: s for s, n in enumerate(ids)} for f, ids in facet_nodes.items()}

    dist = {sx: 0.0}
    parent: dict[int, tuple] = {}
    heap = [(0.0, sx)]
    done = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == sy:
            break
        for f in sorted(facets_of.get(u, []), key=lambda t: [_key(v) for v in t]):
            P = pos[f]
            row = np.linalg.norm(P - P[slot[f][u]], axis=1)
            for n, dd in zip(facet_nodes[f], row):
                nd = d + float(dd)
                if n not in done and nd < dist.get(n, math.inf) - 1e-15:
                    dist[n] = nd
                    parent[n] = (u, f)
                    heapq.heappush(heap, (nd, n))
    if sy not in done:
        return None
    pts, wits = [nodes[sy]], []
    n = sy
    while n != sx:
        u, f = parent[n]
        pts.append(nodes[u])
        wits.append(f)
        n = u
    return pts[::-1], wits[::-1]


def _component(mc, start: frozenset) -> set:
    seen = set(start)
    todo = list(start)
    while todo:
        v = todo.pop()
        for f in mc.star(v):
            for u in f:
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
    return seen


def _shortcut(mc, pts: list, wits: list) -> tuple[list, list]:
    """Drop interior points whose neighbours already share a facet."""
    changed = True
    while changed:
        changed = False
        for s in range(1, len(pts) - 1):
            f = _common_facet(mc, pts[s - 1], pts[s + 1])
            if f is not None:
                del pts[s]
                wits[s - 1:s + 1] = [f]
                changed = True
                break
    return pts, wits


def _descend(mc, pts: list, wits: list, tol: float, max_sweeps: int):
    def total():
        return sum(mc.simplex_distance(pts[k], pts[k + 1], wits[k]) for k in range(len(wits)))

    value = total()
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        for s in range(1, len(pts) - 1):
            face = set(wits[s - 1]) & set(wits[s])
            z, _ = _closest_in_face(mc, pts[s - 1], wits[s - 1], pts[s + 1], wits[s], face)
            pts[s] = z
        new = total()
        if value - new < tol / 2:
            value = min(value, new)
            return value, sweeps, True
        value = new
    return value, sweeps, False


def geodesic_estimate(mc: MZeroComplex, x: ComplexPoint, y: ComplexPoint, tol: float = 1e-9,
                      max_sweeps: int = 10_000, max_levels: int = 6) -> DistanceEstimate:
    """Upper-bound estimate of the intrinsic distance with a refinement-agreement stop."""
    if tol <= 0:
        raise MetricError("tol must be positive")
    for pt in (x, y):
        if not mc.facets_containing(pt.support):
            raise NotInCommonSimplexError(f"point on {pt.simplex} is not in the complex")
    f = _common_facet(mc, x, y)
    if f is not None:
        return DistanceEstimate(mc.simplex_distance(x, y), True, PLString((x, y), (f,)))
    if not (y.support <= _component(mc, x.support)):
        raise DisconnectedPointsError("points lie in different components")
    best: DistanceEstimate | None = None
    prev = None
    total_sweeps = 0
    for level in range(max_levels):
        k = 2 ** (level + 1)
        pts, wits = _subdivided_path(mc, x, y, k)
        pts, wits = _shortcut(mc, list(pts), list(wits))
        value, sweeps, ok = _descend(mc, pts, wits, tol, max_sweeps)
        pts, wits = _shortcut(mc, pts, wits)
        value = min(value, sum(mc.simplex_distance(pts[i], pts[i + 1], wits[i]) for i in range(len(wits))))
        total_sweeps += sweeps
        if best is None or value < best.value:
            best = DistanceEstimate(value, False, PLString(tuple(pts), tuple(wits)))
        if prev is not None and abs(value - prev) <= tol / 2 and ok:
            best.converged = True
            break
        prev = value
    best.levels = level + 1
    best.sweeps = total_sweeps
    return best


def intrinsic_distance(mc: MZeroComplex, x: ComplexPoint, y: ComplexPoint, tol: float = 1e-9,
                       **kw) -> float:
    """Intrinsic distance within ``tol``; raises ToleranceNotReachedError carrying the best bound."""
    est = geodesic_estimate(mc, x, y, tol, **kw)
    if not est.converged:
        raise ToleranceNotReachedError(est)
    return est.value


def _vertex_to_opposite_face(X: np.ndarray, p: int) -> float:
    others = [q for q in range(len(X)) if q != p]
    best = math.inf
    for r in range(1, len(others) + 1):
        for G in combinations(others, r):
            lam, h = _project(X[p], X[list(G)])
            if lam.min() >= -1e-12:
                best = min(best, h)
    return best


def vertex_separation(mc) -> float:
    """min over vertices v and simplices a containing v of d_a(v, faces of a missing v)."""
    best = math.inf
    seen = set()
    for v in mc.vertices:
        for f in mc.star(v):
            if len(f) < 2 or f in seen:
                continue
            seen.add(f)
            X = mc.facet_coordinates(f)
            for p in range(len(f)):
                best = min(best, _vertex_to_opposite_face(X, p))
    if best == math.inf:
        raise MetricError("complex has no edges")
    return best


# -- properness ------------------------------------------------------------------

class GeneratedComplex:
    """Lazily described complex: ``star(v)`` yields the facets containing v.

    Only finitely many shapes are allowed, given through ``edge_length``.
    ``declared_bound`` is the number of star entries examined per vertex
    before the vertex is declared to lie in infinitely many simplices.
    """

    lazy = True

    def __init__(self, star: Callable[[Vertex], Iterable[Iterable[Vertex]]],
                 edge_length: Callable[[Vertex, Vertex], float] | None = None,
                 declared_bound: int = 64):
        self._star_fn = star
        self._edge_fn = edge_length or (lambda u, v: 1.0)
        self.declared_bound = declared_bound

    def star_prefix(self, v, n: int) -> list[tuple]:
        out = []
        for f in self._star_fn(v):
            out.append(tuple(sorted(f, key=_key)))
            if len(out) >= n:
                break
        return out

    def edge_length(self, u, v) -> float:
        return float(self._edge_fn(u, v))


@dataclass
class PropernessReport:
    locally_finite: bool
    partial: bool
    explored_vertices: int
    chain_bound: int
    separation: float
    witness_vertex: Vertex | None = None
    ball_facets: list | None = None
    ball_meets_at_least: int | None = None
    declared_bound: int | None = None

    @property
    def proper(self) -> bool:
        return self.locally_finite

    def to_json(self):
        return {
            "locally_finite": self.locally_finite,
            "proper": self.proper,
            "partial": self.partial,
            "explored_vertices": self.explored_vertices,
            "chain_bound": self.chain_bound,
            "separation": self.separation,
            "witness_vertex": None if self.witness_vertex is None else str(self.witness_vertex),
            "ball_facets": None if self.ball_facets is None
            else [[str(v) for v in f] for f in self.ball_facets],
            "ball_meets_at_least": self.ball_meets_at_least,
            "declared_bound": self.declared_bound,
        }


def _facet_separation(edge_length, f) -> float:
    d = [[0.0 if u == v else edge_length(u, v) for v in f] for u in f]
    X = coordinates(d)
    return min(_vertex_to_opposite_face(X, p) for p in range(len(f)))


def check_properness(mc, basepoint: ComplexPoint, r: float) -> PropernessReport:
    """Local finiteness verdict and a finite subcomplex containing the closed r-ball.

    Simplices are collected through vertex stars up to N(r) = ceil(r'/eps) + 1
    hops, eps the vertex separation seen so far and r' = r plus the longest
    edge seen; the candidate set is then trimmed to simplices that can meet
    the ball.
    """
    if r < 0:
        raise MetricError("r must be >= 0")
    lazy = getattr(mc, "lazy", False)
    bound = mc.declared_bound if lazy else None

    def star(v):
        if lazy:
            return mc.star_prefix(v, bound + 1)
        return mc.star(v)

    start = sorted(basepoint.support, key=_key)
    hops = {v: 0 for v in start}
    order = list(start)
    facets: set = set()
    eps = math.inf
    longest = 0.0
    witness = None
    head = 0
    chain_bound = 1
    while head < len(order):
        v = order[head]
        head += 1
        st = star(v)
        if lazy and len(st) > bound:
            witness = v
            break
        for f in st:
            if f in facets or len(f) < 2:
                continue
            facets.add(f)
            eps = min(eps, _facet_separation(mc.edge_length, f))
            longest = max(longest, max(mc.edge_length(a, b) for a, b in combinations(f, 2)))
        chain_bound = math.ceil((r + longest) / eps) + 1 if eps < math.inf else 1
        if hops[v] >= chain_bound:
            continue
        for f in st:
            for u in f:
                if u not in hops:
                    hops[u] = hops[v] + 1
                    order.append(u)

    if witness is not None:
        d_w = _graph_distance(mc, start, basepoint, witness, facets)
        meets = bound + 1 if d_w is not None and d_w <= r else None
        return PropernessReport(False, True, len(hops), chain_bound, eps, witness_vertex=witness,
                                ball_meets_at_least=meets, declared_bound=bound)

    ball = _trim_to_ball(mc, facets, basepoint, r)
    return PropernessReport(True, lazy, len(hops), chain_bound, eps, ball_facets=ball,
                            declared_bound=bound)


def _graph_distance(mc, start, basepoint, target, facets) -> float | None:
    """Length of a shortest edge path from the basepoint's carrier (an upper bound)."""
    sub = MZeroComplex.from_edge_lengths(SimplicialComplex(facets), mc.edge_length) if facets else None
    if target in start:
        return 0.0 if len(start) == 1 else None
    if sub is None:
        return None
    dist = _vertex_distances(sub, basepoint)
    return dist.get(target)


def _vertex_distances(sub: MZeroComplex, basepoint: ComplexPoint) -> dict:
    """Intrinsic distances from the basepoint to every vertex of a finite complex."""
    one_dim = sub.complex.dimension <= 1
    if one_dim:
        # geodesics in a metric graph run along edges
        dist = {}
        heap = []
        carrier = sub.facets_containing(basepoint.support)[0]
        for v in carrier:
            d0 = sub.simplex_distance(basepoint, ComplexPoint.vertex(v))
            heap.append((d0, _key(v), v))
        heapq.heapify(heap)
        while heap:
            d, _, v = heapq.heappop(heap)
            if v in dist:
                continue
            dist[v] = d
            for f in sub.star(v):
                for u in f:
                    if u not in dist:
                        heapq.heappush(heap, (d + sub.edge_length(u, v), _key(u), u))
        return dist
    out = {}
    for v in sub.vertices:
        try:
            out[v] = geodesic_estimate(sub, basepoint, ComplexPoint.vertex(v), tol=1e-6).value
        except DisconnectedPointsError:
            pass
    return out


def _trim_to_ball(mc, facets, basepoint, r) -> list:
    if not facets:
        return [tuple(sorted(basepoint.support, key=_key))]
    sub = MZeroComplex.from_edge_lengths(SimplicialComplex(facets), mc.edge_length)
    dist = _vertex_distances(sub, basepoint)
    keep = []
    for f in sorted(sub.complex.facets, key=lambda t: sorted(map(_key, t))):
        f = tuple(sorted(f, key=_key))
        if basepoint.support <= set(f):
            keep.append(f)
            continue
        ds = [dist[v] for v in f if v in dist]
        if not ds:
            continue
        slack = 0.0 if len(f) <= 2 else max(sub.edge_length(a, b) for a, b in combinations(f, 2))
        if min(ds) - slack <= r:
            keep.append(f)
    return keep


def davis_metric_complex(b, length: float = 1.0) -> MZeroComplex:
    """Davis realization of a building with every simplex regular of the given edge length."""
    from .realizations import davis_realization
    return MZeroComplex.regular(davis_realization(b), length)
