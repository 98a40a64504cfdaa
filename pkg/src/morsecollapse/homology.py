"""Integer simplicial homology through Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .complex import SimplicialComplex, euler_characteristic, is_connected


@dataclass(frozen=True)
class BoundaryMatrix:
    """Sparse integer matrix; ``entries`` maps ``(row, col)`` to a nonzero int.

    Rows index (k-1)-cells and columns k-cells, both in complex order.
    """

    k: int
    shape: tuple[int, int]
    entries: dict[tuple[int, int], int]

    def to_dense(self) -> list[list[int]]:
        rows, cols = self.shape
        out = [[0] * cols for _ in range(rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out


def boundary_matrix(K: SimplicialComplex, k: int) -> BoundaryMatrix:
    if not 1 <= k <= K.dimension:
        raise ValueError(f"boundary dimension {k} outside 1..{K.dimension}")
    lo, hi = K.ids_of_dim(k - 1), K.ids_of_dim(k)
    entries = {}
    for col, t in enumerate(hi):
        for pos, s in enumerate(K.faces_of[t]):
            entries[(s - lo.start, col)] = -1 if pos % 2 else 1
    return BoundaryMatrix(k, (len(lo), len(hi)), entries)


def _invariant_factors(diagonal: list[int]) -> list[int]:
    """Turn any diagonal form into the divisibility chain d1 | d2 | ..."""
    d = sorted(abs(x) for x in diagonal if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            a, b = d[i], d[j]
            g = gcd(a, b)
            d[i], d[j] = g, a // g * b
    return sorted(d)


def smith_diagonal(entries: dict[tuple[int, int], int]) -> list[int]:
    """Invariant factors (nonzero SNF diagonal) of a sparse integer matrix.

    Pivot rule: smallest absolute value, ties broken by (row, column).
    Entries are Python ints, so intermediate growth is exact.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)

    def set_entry(r, c, v):
        if v:
            rows[r][c] = v
            cols.setdefault(c, set()).add(r)
        else:
            rows[r].pop(c, None)
            s = cols.get(c)
            if s is not None:
                s.discard(r)
                if not s:
                    del cols[c]

    diagonal = []
    while rows:
        best = None
        for r in sorted(rows):
            row = rows[r]
            for c in sorted(row):
                a = abs(row[c])
                if best is None or a < best[0]:
                    best = (a, r, c)
                    if a == 1:
                        break
            if best is not None and best[0] == 1:
                break
        _, pr, pc = best
        p = rows[pr][pc]
        # clear column pc using row pr
        for r in sorted(cols[pc] - {pr}):
            q = rows[r][pc] // p
            if q:
                for c, v in list(rows[pr].items()):
                    set_entry(r, c, rows[r].get(c, 0) - q * v)
        # clear row pr using column pc
        for c in sorted(set(rows[pr]) - {pc}):
            q = rows[pr][c] // p
            if q:
                for r in list(cols[pc]):
                    set_entry(r, c, rows[r].get(c, 0) - q * rows[r][pc])
        if len(rows[pr]) == 1 and cols[pc] == {pr}:
            diagonal.append(p)
            del rows[pr]
            del cols[pc]
        for r in [r for r, row in rows.items() if not row]:
            del rows[r]
    return _invariant_factors(diagonal)


def rank(entries: dict[tuple[int, int], int]) -> int:
    return len(smith_diagonal(entries))


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers and torsion coefficients per dimension."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    euler: int

    @property
    def unreduced_betti(self) -> tuple[int, ...]:
        return (self.betti[0] + 1,) + self.betti[1:]

    @property
    def acyclic(self) -> bool:
        return not any(self.betti) and not any(self.torsion)

    def to_json(self) -> dict:
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "euler": self.euler,
            "acyclic": self.acyclic,
        }


def homology(K: SimplicialComplex) -> HomologyProfile:
    n = K.dimension
    factors = {k: smith_diagonal(boundary_matrix(K, k).entries) for k in range(1, n + 1)}
    ranks = {k: len(f) for k, f in factors.items()}
    betti, torsion = [], []
    for k in range(n + 1):
        b = K.f_vector[k] - ranks.get(k, 0) - ranks.get(k + 1, 0)
        betti.append(b - 1 if k == 0 else b)
        torsion.append(tuple(d for d in factors.get(k + 1, []) if d > 1))
    return HomologyProfile(tuple(betti), tuple(torsion), euler_characteristic(K))


def is_acyclic(K: SimplicialComplex) -> bool:
    return homology(K).acyclic


def relaxed_hypotheses_hold(K: SimplicialComplex) -> bool:
    """Connected with Euler characteristic 1 and vanishing second homology."""
    if K.dimension > 2:
        raise ValueError("relaxed hypotheses are stated for complexes of dimension <= 2")
    if not is_connected(K) or euler_characteristic(K) != 1:
        return False
    h = homology(K)
    # H_2 of a 2-complex is free: the kernel of the top boundary map
    return len(h.betti) < 3 or h.betti[2] == 0
