"""Independent reference computations used only by the tests."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from latticetri.exact import Matrix


def perm_sign(p) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(rows) -> Fraction:
    n = len(rows)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(perm_sign(p))
        for i in range(n):
            term *= rows[i][p[i]]
            if not term:
                break
        total += term
    return total


def char_poly_values(m: Matrix, points) -> list[Fraction]:
    """det(xI - m) evaluated at each x by brute-force permutation expansion."""
    n = m.n
    out = []
    for x in points:
        rows = [[(x if i == j else 0) - m[i, j] for j in range(n)] for i in range(n)]
        out.append(leibniz_det(rows))
    return out


def all_invariant_ideals(mats, n) -> list[frozenset]:
    found = []
    for k in range(n + 1):
        for subset in combinations(range(n), k):
            s = set(subset)
            if all(not m[i, j] for m in mats for i in range(n) if i not in s for j in s):
                found.append(frozenset(s))
    return found


def has_cycle(n, edges) -> bool:
    """Depth-first cycle detection on a directed graph given as (u, v) pairs."""
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
    state = [0] * n

    def visit(u):
        state[u] = 1
        for v in adj[u]:
            if state[v] == 1 or (state[v] == 0 and visit(v)):
                return True
        state[u] = 2
        return False

    return any(state[v] == 0 and visit(v) for v in range(n))


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]
