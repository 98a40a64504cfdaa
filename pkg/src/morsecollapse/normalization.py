"""The normalization of a combinatorial Morse function and the alternating sum it defines.

Equivalent Morse functions share a gradient field, so everything here is a
function of a :class:`DiscreteVectorField`.  The normalization is the least
solution of::

    h(tau) >= h(sigma) + 1   for every unmatched incidence sigma < tau
    h(sigma) == h(tau)       for every matched pair (sigma, tau)
    h >= 0

which is a longest-path computation once matched pairs are contracted.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

from .complex import Simplex, SimplicialComplex
from .field import ClosedVPath, DiscreteVectorField


@dataclass(frozen=True)
class NormalizedFunction:
    values: dict[Simplex, int]
    field: DiscreteVectorField

    def __getitem__(self, cell) -> int:
        return self.values[tuple(cell)]


@dataclass(frozen=True)
class NkfValue:
    value: int
    contributions: dict[Simplex, int]  # signed terms of the critical cells
    full_sum: int


def normalize_ids(K: SimplicialComplex, partner: Sequence[int]) -> list[int]:
    """Normalized values indexed by cell id."""
    n = len(K)
    faces_of = K.faces_of
    rep = list(range(n))
    for c in range(n):
        p = partner[c]
        if 0 <= p < c:
            rep[c] = p
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for t in range(n):
        rt = rep[t]
        pt = partner[t]
        for s in faces_of[t]:
            if s == pt:
                continue
            succ[rep[s]].append(rt)
            indeg[rt] += 1
    h = [0] * n
    queue = deque(c for c in range(n) if rep[c] == c and indeg[c] == 0)
    done = 0
    while queue:
        u = queue.popleft()
        done += 1
        hu = h[u] + 1
        for w in succ[u]:
            if h[w] < hu:
                h[w] = hu
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if done != sum(1 for c in range(n) if rep[c] == c):
        raise ClosedVPath([])
    for c in range(n):
        h[c] = h[rep[c]]
    assert max(h) < n
    return h


def normalize(V: DiscreteVectorField) -> NormalizedFunction:
    K = V.complex
    h = normalize_ids(K, V.partner)
    return NormalizedFunction(dict(zip(K.cells, h)), V)


def nkf_ids(K: SimplicialComplex, partner: Sequence[int], h: Sequence[int] | None = None) -> int:
    if h is None:
        h = normalize_ids(K, partner)
    dim_of = K.dim_of
    return sum(-h[c] if dim_of[c] % 2 else h[c] for c in range(len(K)) if partner[c] < 0)


def nkf(V: DiscreteVectorField) -> NkfValue:
    K = V.complex
    h = normalize_ids(K, V.partner)
    full = sum((-1) ** K.dim_of[c] * h[c] for c in range(len(K)))
    contributions = {K.cells[c]: (-1) ** K.dim_of[c] * h[c] for c in V.critical_ids()}
    value = sum(contributions.values())
    if value != full:
        raise AssertionError(f"alternating sums disagree: full {full}, critical {value}")
    return NkfValue(value, contributions, full)


class TooLarge(ValueError):
    pass


def brute_force_normalize(V: DiscreteVectorField, bound: int | None = None) -> NormalizedFunction:
    """Pointwise minimum over all integer functions in ``[0, bound]`` inducing ``V``.

    Works straight from the definition: a function induces ``V`` iff it is
    strictly increasing on unmatched incidences and weakly decreasing on
    matched ones.  For each cell the smallest attainable value is found by
    backtracking over complete assignments; no longest-path reasoning.
    """
    K = V.complex
    n = len(K)
    if n > 10:
        raise TooLarge(f"brute force limited to 10 cells, got {n}")
    if bound is None:
        bound = n
    if bound < n:
        raise ValueError("bound must be at least the number of cells")
    partner = V.partner
    faces_of = K.faces_of

    def consistent(g, t):
        for s in faces_of[t]:
            if partner[t] == s:
                if g[s] < g[t]:
                    return False
            elif g[s] >= g[t]:
                return False
        return True

    def exists(g, i):
        # cells are in dimension order, so faces of cell i are already set
        if i == n:
            return True
        if g[i] is not None:
            return consistent(g, i) and exists(g, i + 1)
        for x in range(bound + 1):
            g[i] = x
            if consistent(g, i) and exists(g, i + 1):
                g[i] = None
                return True
        g[i] = None
        return False

    values = {}
    for c in range(n):
        for x in range(bound + 1):
            g = [None] * n
            g[c] = x
            if exists(g, 0):
                values[K.cells[c]] = x
                break
        else:
            raise AssertionError(f"no equivalent function with values <= {bound}")
    return NormalizedFunction(values, V)
