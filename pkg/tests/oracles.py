"""Independent oracles for the test suite.

The Coxeter oracle never rewrites words.  It represents W faithfully by the
geometric (Tits) reflection representation, B(e_i, e_j) = -cos(pi / m_ij)
with -1 for infinite entries, and identifies elements by rounded matrices.
A breadth-first search that extends words in increasing generator order
reaches every element first through its ShortLex-least reduced word.
"""
from __future__ import annotations

import math
from collections import deque

import numpy as np


def bilinear_form(m) -> np.ndarray:
    n = len(m)
    B = np.eye(n)
    for i in range(n):
        for j in range(n):
            if i != j:
                B[i, j] = -1.0 if m[i][j] in (0, math.inf) else -math.cos(math.pi / m[i][j])
    return B


def reflections(m) -> list[np.ndarray]:
    B = bilinear_form(m)
    n = len(m)
    out = []
    for i in range(n):
        S = np.eye(n)
        S[i, :] -= 2 * B[i, :]
        out.append(S)
    return out


def key(M: np.ndarray) -> bytes:
    return (np.round(M, 6) + 0.0).tobytes()


class CayleyBall:
    """Elements of length <= radius, keyed by matrix, valued by ShortLex word."""

    def __init__(self, m, radius: int | None, max_elements: int = 200_000):
        self.S = reflections(m)
        n = len(m)
        ident = np.eye(n)
        self.words = {key(ident): ()}
        self.matrix = {(): ident}
        level = [((), ident)]
        r = 0
        while level and (radius is None or r < radius) and len(self.words) <= max_elements:
            nxt = []
            for w, M in level:
                for i, S in enumerate(self.S):
                    N = M @ S
                    k = key(N)
                    if k not in self.words:
                        self.words[k] = w + (i,)
                        nxt.append((w + (i,), N))
            level = nxt
            r += 1
        self.complete = not level

    def __len__(self):
        return len(self.words)

    def normal_form(self, M: np.ndarray):
        return self.words[key(M)]

    def word_matrix(self, w) -> np.ndarray:
        M = np.eye(len(self.S))
        for i in w:
            M = M @ self.S[i]
        return M


def group_order(m, max_length: int = 60) -> int:
    """Order of a finite W by exhaustive BFS; raises if the search does not close."""
    ball = CayleyBall(m, max_length, max_elements=50_000)
    if not ball.complete:
        raise ValueError("group looks infinite")
    return len(ball)


def chamber_graph_distances(b, a) -> dict:
    """Plain BFS distances in a chamber graph, colors ignored."""
    dist = {a: 0}
    q = deque([a])
    while q:
        x = q.popleft()
        for i in b.system.generators:
            for y in b.adj[x][i]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
    return dist
