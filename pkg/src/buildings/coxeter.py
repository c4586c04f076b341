"""Coxeter systems: matrices, reduced words and ShortLex normal forms.

Words are tuples of generator indices.  Reduction uses braid-move orbits:
a word is reduced iff no word in its braid class has two equal adjacent
letters, and all reduced words of one element form a single braid class.
The normal form of an element is the ShortLex-least word in that class.

Braid classes blow up for groups like F4 or H4, so a finite W is also
enumerated once by Todd-Coxeter coset enumeration over the trivial
subgroup; reduction then becomes a table walk.  Setting ``use_table`` to
False forces the braid-move path, which remains the reference method.
"""
from __future__ import annotations

import math
from collections import deque
from itertools import combinations
from typing import Iterable, Sequence

INF = math.inf

Word = tuple  # tuple[int, ...]


class CoxeterError(ValueError):
    pass


class AsymmetricMatrixError(CoxeterError):
    def __init__(self, i, j):
        super().__init__(f"m[{i}][{j}] != m[{j}][{i}]")
        self.i, self.j = i, j


class BadDiagonalError(CoxeterError):
    def __init__(self, i):
        super().__init__(f"m[{i}][{i}] must be 1")
        self.i = self.j = i


class OffDiagonalTooSmallError(CoxeterError):
    def __init__(self, i, j):
        super().__init__(f"m[{i}][{j}] must be >= 2 or 0 (infinity)")
        self.i, self.j = i, j


class BadGeneratorIndexError(CoxeterError):
    pass


class InfiniteGroupError(CoxeterError):
    pass


class BadSubsetError(CoxeterError):
    pass


def validate_matrix(entries) -> "CoxeterSystem":
    """Check a square integer matrix (0 meaning infinity) and build the system."""
    rows = [list(r) for r in entries]
    n = len(rows)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise CoxeterError(f"row {i} has length {len(r)}, expected {n}")
        for j, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise CoxeterError(f"m[{i}][{j}] = {v!r} is not a natural number")
    for i in range(n):
        for j in range(n):
            if rows[i][j] != rows[j][i]:
                a, b = min(i, j), max(i, j)
                raise AsymmetricMatrixError(a, b)
    for i in range(n):
        if rows[i][i] != 1:
            raise BadDiagonalError(i)
        for j in range(n):
            if i != j and rows[i][j] == 1:
                raise OffDiagonalTooSmallError(min(i, j), max(i, j))
    return CoxeterSystem(rows)


class CoxeterSystem:
    """A Coxeter system (W, I) with I = {0, ..., rank-1}.

    Construct through :func:`validate_matrix` unless the matrix is known to be
    valid.  ``m[i][j]`` holds ``math.inf`` for infinite entries.
    """

    def __init__(self, entries):
        self.rank = len(entries)
        self.m = tuple(
            tuple(INF if (v == 0 and i != j) else int(v) for j, v in enumerate(row))
            for i, row in enumerate(entries)
        )
        # word -> frozenset of all reduced words of the same element
        self._orbits: dict[Word, frozenset] = {}
        self._step_cache: dict[tuple[Word, int], Word] = {}
        self._elements: list[Word] | None = None
        self._elements_radius = -1
        self._finite: bool | None = None
        # regular representation of a finite W: (right-mult table, normal forms)
        self._table: tuple[list[list[int]], list[Word]] | None = None
        self._table_tried = False
        self.use_table = True

    # -- basic data ---------------------------------------------------------

    @property
    def generators(self) -> range:
        return range(self.rank)

    def entries(self) -> list[list[int]]:
        """Serialized matrix, infinity as 0."""
        return [[0 if v == INF else v for v in row] for row in self.m]

    def to_json(self) -> dict:
        return {"rank": self.rank, "m": self.entries()}

    @classmethod
    def from_json(cls, doc) -> "CoxeterSystem":
        m = doc["m"]
        if "rank" in doc and doc["rank"] != len(m):
            raise CoxeterError(f"rank {doc['rank']} does not match matrix size {len(m)}")
        return validate_matrix(m)

    def __eq__(self, other):
        return isinstance(other, CoxeterSystem) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"CoxeterSystem({self.entries()})"

    def parabolic(self, J: Iterable[int]) -> "CoxeterSystem":
        """The system (W_J, J), generators renumbered in increasing order of J."""
        J = self.check_subset(J)
        return CoxeterSystem([[self.entries()[i][j] for j in J] for i in J])

    def check_subset(self, J: Iterable[int]) -> tuple[int, ...]:
        J = tuple(sorted(set(J)))
        for j in J:
            if not isinstance(j, int) or not 0 <= j < self.rank:
                raise BadSubsetError(f"{j!r} is not a generator index (rank {self.rank})")
        return J

    def check_word(self, word: Iterable[int]) -> Word:
        word = tuple(word)
        for x in word:
            if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < self.rank:
                raise BadGeneratorIndexError(f"letter {x!r} out of range for rank {self.rank}")
        return word

    # -- braid orbits -------------------------------------------------------

    def _braid_neighbours(self, w: Word):
        n = len(w)
        for p in range(n - 1):
            i, j = w[p], w[p + 1]
            if i == j:
                continue
            m = self.m[i][j]
            if m == INF or p + m > n:
                continue
            ok = True
            for k in range(m):
                if w[p + k] != (i if k % 2 == 0 else j):
                    ok = False
                    break
            if ok:
                swapped = tuple(j if k % 2 == 0 else i for k in range(m))
                yield w[:p] + swapped + w[p + m:]

    def _orbit(self, w: Word) -> frozenset:
        """All words reachable from ``w`` by braid moves (memoized)."""
        orb = self._orbits.get(w)
        if orb is not None:
            return orb
        seen = {w}
        todo = [w]
        while todo:
            u = todo.pop()
            for v in self._braid_neighbours(u):
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        orb = frozenset(seen)
        for u in orb:
            self._orbits[u] = orb
        return orb

    def _normal(self, reduced: Word) -> Word:
        return min(self._orbit(reduced))

    def reduced_words(self, word: Sequence[int]) -> list[Word]:
        """All reduced words of the element represented by ``word``, ShortLex order."""
        nf = self.reduce(word)
        return sorted(self._orbit(nf), key=_shortlex_key)

    def right_descents(self, word: Sequence[int]) -> frozenset:
        """Generators i with l(wi) < l(w)."""
        nf = self.reduce(word)
        if self._table is not None:
            table, forms = self._table
            c = self._element_id(nf)
            return frozenset(i for i in self.generators if len(forms[table[c][i]]) < len(nf))
        return frozenset(u[-1] for u in self._orbit(nf) if u)

    def _step(self, nf: Word, i: int) -> Word:
        key = (nf, i)
        out = self._step_cache.get(key)
        if out is not None:
            return out
        orb = self._orbit(nf)
        ending = [u for u in orb if u and u[-1] == i]
        if ending:
            out = self._normal(min(ending)[:-1])
        else:
            out = self._normal(nf + (i,))
        self._step_cache[key] = out
        return out

    # -- group operations ---------------------------------------------------

    def _regular(self):
        if not self.use_table:
            return None
        if not self._table_tried:
            self._table_tried = True
            if self.is_finite():
                table = coset_table(self)
                if table is not None:
                    self._table = (table, _shortlex_forms(table, self.rank))
        return self._table

    def _element_id(self, word: Word) -> int:
        table, _ = self._table
        c = 0
        for i in word:
            c = table[c][i]
        return c

    def reduce(self, word: Sequence[int]) -> Word:
        """ShortLex normal form of the element represented by ``word``."""
        word = self.check_word(word)
        if self._regular() is not None:
            return self._table[1][self._element_id(word)]
        nf: Word = ()
        for i in word:
            nf = self._step(nf, i)
        return nf

    def length(self, word: Sequence[int]) -> int:
        return len(self.reduce(word))

    def multiply(self, w1: Sequence[int], w2: Sequence[int]) -> Word:
        if self._regular() is not None:
            return self.reduce(self.check_word(w1) + self.check_word(w2))
        nf = self.reduce(w1)
        for i in self.check_word(w2):
            nf = self._step(nf, i)
        return nf

    def inverse(self, word: Sequence[int]) -> Word:
        return self.reduce(tuple(reversed(self.check_word(word))))

    def is_reduced(self, word: Sequence[int]) -> bool:
        word = self.check_word(word)
        return len(self.reduce(word)) == len(word)

    # -- finiteness ---------------------------------------------------------

    def is_finite_parabolic(self, J: Iterable[int]) -> bool:
        """Whether W_J is finite, by matching components against the finite types."""
        J = self.check_subset(J)
        for comp in self._components(J):
            if not self._component_is_finite(comp):
                return False
        return True

    def is_finite(self) -> bool:
        if self._finite is None:
            self._finite = self.is_finite_parabolic(range(self.rank))
        return self._finite

    def _components(self, J: tuple[int, ...]) -> list[list[int]]:
        left = set(J)
        comps = []
        while left:
            start = min(left)
            left.discard(start)
            comp = [start]
            todo = [start]
            while todo:
                i = todo.pop()
                for j in sorted(left):
                    if self.m[i][j] != 2:
                        left.discard(j)
                        comp.append(j)
                        todo.append(j)
            comps.append(sorted(comp))
        return comps

    def _component_is_finite(self, comp: list[int]) -> bool:
        n = len(comp)
        if n == 1:
            return True
        labels = {}
        for a, b in combinations(comp, 2):
            m = self.m[a][b]
            if m == INF:
                return False
            if m >= 3:
                labels[(a, b)] = m
        if n == 2:
            return True
        # the Coxeter graph of a finite irreducible group is a tree
        if len(labels) != n - 1:
            return False
        adj = {v: [] for v in comp}
        for a, b in labels:
            adj[a].append(b)
            adj[b].append(a)
        degrees = sorted(len(adj[v]) for v in comp)
        big = sorted(m for m in labels.values() if m > 3)
        if degrees[-1] > 3:
            return False
        if degrees[-1] == 3:
            # D_n, E_6, E_7, E_8: one branch point, simply laced
            if big or degrees.count(3) != 1:
                return False
            centre = next(v for v in comp if len(adj[v]) == 3)
            legs = sorted(self._leg_length(adj, centre, v) for v in adj[centre])
            if legs[0] != 1:
                return False
            return legs[1] == 1 or (legs[1] == 2 and legs[2] in (2, 3, 4))
        # a path
        ends = [v for v in comp if len(adj[v]) == 1]
        path = [ends[0]]
        prev = None
        while len(path) < n:
            nxt = [u for u in adj[path[-1]] if u != prev]
            prev = path[-1]
            path.append(nxt[0])
        seq = [self.m[path[k]][path[k + 1]] for k in range(n - 1)]
        if not big:
            return True  # A_n
        if len(big) > 1:
            return False
        if big == [4]:
            if seq[0] == 4 or seq[-1] == 4:
                return True  # B_n
            return n == 4 and seq[1] == 4  # F_4
        if big == [5]:
            return n in (3, 4) and (seq[0] == 5 or seq[-1] == 5)  # H_3, H_4
        return False

    @staticmethod
    def _leg_length(adj, centre, start) -> int:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                return length
            prev, cur = cur, nxt[0]
            length += 1

    def spherical_subsets(self) -> list[frozenset]:
        """All J with W_J finite, ordered by size then lexicographically."""
        out = []
        for k in range(self.rank + 1):
            for J in combinations(range(self.rank), k):
                if self.is_finite_parabolic(J):
                    out.append(frozenset(J))
        return out

    # -- enumeration --------------------------------------------------------

    def enumerate_elements(self, max_length: int | None = None) -> list[Word]:
        """Normal forms of length <= max_length in ShortLex order.

        ``max_length=None`` lists the whole group and requires W finite.
        """
        if max_length is None:
            if not self.is_finite():
                raise InfiniteGroupError("W is infinite; give max_length")
            max_length = -1
        elif max_length < 0:
            raise CoxeterError("max_length must be >= 0")
        if self._regular() is not None:
            forms = sorted(self._table[1], key=_shortlex_key)
            return forms if max_length < 0 else [w for w in forms if len(w) <= max_length]
        if self._elements is not None and (
            self._elements_radius < 0 or 0 <= max_length <= self._elements_radius
        ):
            if max_length < 0:
                return list(self._elements)
            return [w for w in self._elements if len(w) <= max_length]
        elements: list[Word] = [()]
        seen = {()}
        level: list[Word] = [()]
        k = 0
        while level and (max_length < 0 or k < max_length):
            nxt = []
            for u in level:
                desc = {v[-1] for v in self._orbit(u) if v}
                for i in range(self.rank):
                    if i in desc:
                        continue
                    nf = self._normal(u + (i,))
                    if nf not in seen:
                        seen.add(nf)
                        nxt.append(nf)
            nxt.sort()
            elements.extend(nxt)
            level = nxt
            k += 1
        exhausted = not level
        self._elements = elements
        self._elements_radius = -1 if exhausted else max_length
        return list(elements)

    def order(self) -> int:
        return len(self.enumerate_elements())

    def longest_element(self) -> Word:
        if not self.is_finite():
            raise InfiniteGroupError("a longest element exists only for finite W")
        return self.enumerate_elements()[-1]


def _shortlex_key(w: Word):
    return (len(w), w)


def coset_table(sys: CoxeterSystem, max_cosets: int = 200_000) -> list[list[int]] | None:
    """Right-multiplication table of W on itself by Todd-Coxeter enumeration.

    Cosets of the trivial subgroup, HLT strategy; generators are involutions so
    the table of each generator is its own inverse.  Row 0 is the identity.
    Returns None when more than ``max_cosets`` cosets are needed.
    """
    n = sys.rank
    relators = []
    for i in range(n):
        for j in range(i + 1, n):
            m = sys.m[i][j]
            if m != INF:
                relators.append((i, j) * m)
    T: list[list[int | None]] = [[None] * n]
    parent = [0]

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def merge(a, b, queue):
        a, b = rep(a), rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a, b):
        queue = deque()
        merge(a, b, queue)
        while queue:
            e = queue.popleft()
            for x in range(n):
                f = T[e][x]
                if f is None:
                    continue
                T[f][x] = None
                T[e][x] = None
                e1, f1 = rep(e), rep(f)
                if T[e1][x] is not None:
                    merge(f1, T[e1][x], queue)
                elif T[f1][x] is not None:
                    merge(e1, T[f1][x], queue)
                else:
                    T[e1][x] = f1
                    T[f1][x] = e1

    def define(c, x):
        d = len(T)
        T.append([None] * n)
        parent.append(d)
        T[c][x] = d
        T[d][x] = c

    def scan_and_fill(c, w):
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and T[f][w[i]] is not None:
                f = T[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and T[b][w[j]] is not None:
                b = T[b][w[j]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                T[f][w[i]] = b
                T[b][w[i]] = f
                return
            define(f, w[i])

    c = 0
    while c < len(T):
        if parent[c] == c:
            for w in relators:
                scan_and_fill(c, w)
                if parent[c] != c:
                    break
            if parent[c] == c:
                for x in range(n):
                    if T[c][x] is None:
                        define(c, x)
        if len(T) > max_cosets:
            return None
        c += 1
    live = [c for c in range(len(T)) if parent[c] == c]
    index = {c: k for k, c in enumerate(live)}
    return [[index[rep(T[c][x])] for x in range(n)] for c in live]


def _shortlex_forms(table: list[list[int]], rank: int) -> list[Word]:
    forms: list[Word | None] = [None] * len(table)
    forms[0] = ()
    level = [0]
    while level:
        nxt = []
        for c in level:
            for i in range(rank):
                d = table[c][i]
                if forms[d] is None:
                    forms[d] = forms[c] + (i,)
                    nxt.append(d)
        level = nxt
    return forms


# module-level forms of the operations

def reduce(sys: CoxeterSystem, word) -> Word:
    return sys.reduce(word)


def length(sys: CoxeterSystem, word) -> int:
    return sys.length(word)


def multiply(sys: CoxeterSystem, w1, w2) -> Word:
    return sys.multiply(w1, w2)


def inverse(sys: CoxeterSystem, word) -> Word:
    return sys.inverse(word)


def is_finite_parabolic(sys: CoxeterSystem, J) -> bool:
    return sys.is_finite_parabolic(J)


def enumerate_elements(sys: CoxeterSystem, max_length: int | None = None) -> list[Word]:
    return sys.enumerate_elements(max_length)


def longest_element(sys: CoxeterSystem) -> Word:
    return sys.longest_element()


def spherical_subsets(sys: CoxeterSystem) -> list[frozenset]:
    return sys.spherical_subsets()


# common systems

def dihedral(m: int) -> CoxeterSystem:
    """I_2(m); m = 0 gives the infinite dihedral group."""
    return validate_matrix([[1, m], [m, 1]])


def linear(labels: Sequence[int]) -> CoxeterSystem:
    """Path-shaped Coxeter diagram with the given consecutive labels (others 2)."""
    n = len(labels) + 1
    rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for k, m in enumerate(labels):
        rows[k][k + 1] = rows[k + 1][k] = m
    return validate_matrix(rows)


def type_A(n: int) -> CoxeterSystem:
    return linear([3] * (n - 1))


def type_B(n: int) -> CoxeterSystem:
    return linear([4] + [3] * (n - 2))


def type_H3() -> CoxeterSystem:
    return linear([5, 3])
