"""Gradient paths and the Morse chain complex; the critical-incidence matching argument."""

from __future__ import annotations

from collections import deque
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field

from .complex import Simplex, SimplicialComplex, euler_characteristic
from .field import DiscreteVectorField
from .homology import homology, rank, relaxed_hypotheses_hold
from .normalization import nkf_ids, normalize_ids

MAX_PATHS = 10**6


class PathLimitExceeded(RuntimeError):
    pass


class HypothesisError(ValueError):
    """The complex or field does not satisfy the preconditions of the certificate."""


class NoCollapsibilityObstruction(ValueError):
    """The field has a single critical cell, so there is nothing to certify."""


class HallViolation(ValueError):
    """No complete matching: ``violator`` has more neighbours missing than present."""

    def __init__(self, certificate: "MatchingCertificate"):
        super().__init__(f"Hall condition fails for {sorted(certificate.violator)}")
        self.certificate = certificate


GradientPath = tuple[Simplex, ...]


def _path_succ(K: SimplicialComplex, partner: Sequence[int], cell: int) -> list[int]:
    """Next k-cells on a V-path from k-cell ``cell`` (empty unless it is paired upward)."""
    p = partner[cell]
    if p < 0 or K.dim_of[p] != K.dim_of[cell] + 1:
        return []
    return [f for f in K.faces_of[p] if f != cell]


def gradient_paths(V: DiscreteVectorField, start: Sequence, end: Sequence,
                   limit: int = MAX_PATHS) -> list[GradientPath]:
    """All V-paths from ``start`` to ``end`` as alternating k/(k+1)-cell sequences."""
    K = V.complex
    s, e = K.id(start), K.id(end)
    if K.dim_of[s] != K.dim_of[e]:
        raise ValueError("gradient paths join cells of equal dimension")
    out: list[GradientPath] = []
    stack: list[tuple[int, tuple[int, ...]]] = [(s, (s,))]
    while stack:
        c, trail = stack.pop()
        if c == e:
            out.append(tuple(K.cells[i] for i in trail))
            if len(out) > limit:
                raise PathLimitExceeded(f"more than {limit} gradient paths")
            continue
        up = V.partner[c]
        for nxt in reversed(_path_succ(K, V.partner, c)):
            stack.append((nxt, trail + (up, nxt)))
    return out


def path_sign(K: SimplicialComplex, path: Sequence[Simplex]) -> int:
    """Product of ``-[tau_i : sigma_i][tau_i : sigma_(i+1)]`` over the path's steps."""
    sign = 1
    for i in range(1, len(path), 2):
        lo, up, nxt = path[i - 1], path[i], path[i + 1]
        sign *= -K.orientation(lo, up) * K.orientation(nxt, up)
    return sign


def _level_order(K: SimplicialComplex, partner: Sequence[int], k: int) -> list[int]:
    """Topological order of k-cells along V-paths."""
    cells = K.ids_of_dim(k)
    indeg = {c: 0 for c in cells}
    for c in cells:
        for d in _path_succ(K, partner, c):
            indeg[d] += 1
    queue = deque(c for c in cells if indeg[c] == 0)
    order = []
    while queue:
        c = queue.popleft()
        order.append(c)
        for d in _path_succ(K, partner, c):
            indeg[d] -= 1
            if indeg[d] == 0:
                queue.append(d)
    assert len(order) == len(cells), "field is not acyclic"
    return order


@dataclass
class MorseChainComplex:
    """Critical-cell bases and integer boundary matrices.

    ``matrices[k][i][j]`` is the coefficient of ``basis[k-1][i]`` in the
    boundary of ``basis[k][j]``.
    """

    basis: list[list[Simplex]]
    matrices: dict[int, list[list[int]]] = field(default_factory=dict)

    def rank(self, k: int) -> int:
        m = self.matrices.get(k)
        if not m:
            return 0
        return rank({(i, j): v for i, row in enumerate(m) for j, v in enumerate(row) if v})

    def rational_betti(self) -> tuple[int, ...]:
        """Unreduced rational Betti numbers."""
        return tuple(len(self.basis[k]) - self.rank(k) - self.rank(k + 1)
                     for k in range(len(self.basis)))

    def composes_to_zero(self) -> bool:
        for k in range(2, len(self.basis)):
            a, b = self.matrices.get(k - 1), self.matrices.get(k)
            if not a or not b or not b[0]:
                continue
            for i in range(len(a)):
                for j in range(len(b[0])):
                    if sum(a[i][m] * b[m][j] for m in range(len(b))):
                        return False
        return True

    def to_json(self) -> dict:
        return {
            "basis": [[list(c) for c in cells] for cells in self.basis],
            "boundary": {str(k): m for k, m in sorted(self.matrices.items())},
        }


def _morse_column(K: SimplicialComplex, partner: Sequence[int], order: list[int], tau: int) -> dict[int, int]:
    """Signed V-path counts from the faces of ``tau`` to critical (k-1)-cells."""
    w: dict[int, int] = {}
    for pos, f in enumerate(K.faces_of[tau]):
        w[f] = w.get(f, 0) + (-1 if pos % 2 else 1)
    out: dict[int, int] = {}
    for c in order:
        x = w.get(c)
        if not x:
            continue
        if partner[c] < 0:
            out[c] = x
            continue
        up = partner[c]
        if K.dim_of[up] != K.dim_of[c] + 1:
            continue
        s_c = K.incidence_sign(c, up)
        for d in K.faces_of[up]:
            if d != c:
                w[d] = w.get(d, 0) - x * s_c * K.incidence_sign(d, up)
    return out


def morse_boundary(V: DiscreteVectorField) -> MorseChainComplex:
    K = V.complex
    partner = V.partner
    crit = [[c for c in K.ids_of_dim(k) if partner[c] < 0] for k in range(K.dimension + 1)]
    mcc = MorseChainComplex([[K.cells[c] for c in cs] for cs in crit])
    for k in range(1, K.dimension + 1):
        order = _level_order(K, partner, k - 1)
        row_of = {c: i for i, c in enumerate(crit[k - 1])}
        m = [[0] * len(crit[k]) for _ in crit[k - 1]]
        for j, tau in enumerate(crit[k]):
            for c, x in _morse_column(K, partner, order, tau).items():
                m[row_of[c]][j] = x
        mcc.matrices[k] = m
    return mcc


def simplicial_rational_betti(K: SimplicialComplex) -> tuple[int, ...]:
    return homology(K).unreduced_betti


def morse_homology_check(V: DiscreteVectorField) -> bool:
    return morse_boundary(V).rational_betti() == simplicial_rational_betti(V.complex)


# -- the bipartite graph of critical edges and critical triangles ---------------

@dataclass(frozen=True)
class CriticalIncidenceGraph:
    """Bipartite graph with sides ``a_side`` and ``b_side``.

    For a gradient field the sides are the critical edges and critical
    triangles; any hashable labels are accepted so the matching code can be
    exercised on arbitrary graphs.
    """

    a_side: tuple[Hashable, ...]
    b_side: tuple[Hashable, ...]
    edges: frozenset[tuple[Hashable, Hashable]]  # (a, b) pairs

    def neighbours_of_b(self, b) -> list:
        return [a for a in self.a_side if (a, b) in self.edges]


def reachable_level(K: SimplicialComplex, partner: Sequence[int], sources: Iterable[int]) -> set[int]:
    """k-cells reachable by V-paths from ``sources`` (sources included)."""
    seen = set(sources)
    stack = list(seen)
    while stack:
        c = stack.pop()
        for d in _path_succ(K, partner, c):
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return seen


def critical_incidence_graph(V: DiscreteVectorField) -> CriticalIncidenceGraph:
    K = V.complex
    if K.dimension > 2:
        raise HypothesisError("critical incidence graph is defined for complexes of dimension <= 2")
    partner = V.partner
    a_ids = [c for c in K.ids_of_dim(1) if partner[c] < 0]
    b_ids = [c for c in K.ids_of_dim(2) if partner[c] < 0]
    a_set = set(a_ids)
    edges = set()
    for t in b_ids:
        for e in reachable_level(K, partner, K.faces_of[t]) & a_set:
            edges.add((K.cells[e], K.cells[t]))
    return CriticalIncidenceGraph(tuple(K.cells[c] for c in a_ids),
                                  tuple(K.cells[c] for c in b_ids),
                                  frozenset(edges))


@dataclass(frozen=True)
class MatchingCertificate:
    """A maximum matching plus, when it is not complete, a Hall violator.

    ``violator_side`` is ``"B"`` when ``violator`` is a subset of ``b_side``
    with more elements than its neighbourhood, ``"A"`` for the symmetric case.
    """

    matching: tuple[tuple[Hashable, Hashable], ...]  # (a, b)
    complete: bool
    violator: frozenset = frozenset()
    neighbourhood: frozenset = frozenset()
    violator_side: str | None = None

    def to_json(self, name=lambda x: x) -> dict:
        return {
            "complete": self.complete,
            "matching": [[name(a), name(b)] for a, b in self.matching],
            "violator_side": self.violator_side,
            "violator": sorted(name(x) for x in self.violator),
            "neighbourhood": sorted(name(x) for x in self.neighbourhood),
        }


def hall_matching(G: CriticalIncidenceGraph) -> MatchingCertificate:
    """Maximum matching by augmenting paths; Hall violator when it is not complete."""
    adj_b = {b: [a for a in G.a_side if (a, b) in G.edges] for b in G.b_side}
    adj_a = {a: [b for b in G.b_side if (a, b) in G.edges] for a in G.a_side}
    match_a: dict = {}
    match_b: dict = {}

    def augment(b, seen) -> bool:
        for a in adj_b[b]:
            if a in seen:
                continue
            seen.add(a)
            if a not in match_a or augment(match_a[a], seen):
                match_a[a], match_b[b] = b, a
                return True
        return False

    for b in G.b_side:
        augment(b, set())
    matching = tuple((match_b[b], b) for b in G.b_side if b in match_b)
    if len(matching) == len(G.a_side) == len(G.b_side):
        return MatchingCertificate(matching, True)

    def alternating_closure(free, adj, mate):
        # from free vertices on one side: any edge across, matched edge back
        side, other = set(free), set()
        stack = list(free)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in other:
                    other.add(y)
                    stack.append(mate[y])
                    side.add(mate[y])
        return side, other

    free_b = [b for b in G.b_side if b not in match_b]
    if free_b:
        s, n = alternating_closure(free_b, adj_b, match_a)
        return MatchingCertificate(matching, False, frozenset(s), frozenset(n), "B")
    free_a = [a for a in G.a_side if a not in match_a]
    s, n = alternating_closure(free_a, adj_a, match_b)
    return MatchingCertificate(matching, False, frozenset(s), frozenset(n), "A")


@dataclass(frozen=True)
class GapCertificate:
    """Matched critical edge/triangle pairs with their normalized values."""

    rows: tuple[tuple[Simplex, Simplex, int, int], ...]  # (e, sigma, h(e), h(sigma))
    nkf: int

    @property
    def gaps(self) -> list[int]:
        return [hs - he for _, _, he, hs in self.rows]


def theorem_gap_certificate(V: DiscreteVectorField) -> GapCertificate:
    """Replay the matching argument: pair critical edges with critical triangles
    along gradient paths and check that every pair has a positive value gap."""
    K = V.complex
    if K.dimension > 2:
        raise HypothesisError("certificate applies to complexes of dimension <= 2")
    partner = V.partner
    crit = V.critical_ids()
    if len(crit) == 1:
        raise NoCollapsibilityObstruction("field has a single critical cell")
    if not relaxed_hypotheses_hold(K):
        raise HypothesisError("need a connected complex with Euler characteristic 1 and H_2 = 0")
    counts = [0] * 3
    for c in crit:
        counts[K.dim_of[c]] += 1
    if counts[0] != 1 or counts[1] != counts[2]:
        raise HypothesisError(f"critical vector {tuple(counts)} is not of the form (1, k, k)")
    assert counts[0] - counts[1] + counts[2] == euler_characteristic(K)
    cert = hall_matching(critical_incidence_graph(V))
    if not cert.complete:
        raise HallViolation(cert)
    h = normalize_ids(K, partner)
    rows = []
    for e, sigma in sorted(cert.matching, key=lambda p: K.index[p[0]]):
        he, hs = h[K.index[e]], h[K.index[sigma]]
        if not he < hs:
            raise AssertionError(f"gradient path from {sigma} to {e} without a value gap")
        rows.append((e, sigma, he, hs))
    value = nkf_ids(K, partner, h)
    gap_sum = sum(hs - he for _, _, he, hs in rows)
    if gap_sum != value or value <= 0:
        raise AssertionError(f"gap sum {gap_sum} does not certify N(K,f) = {value} > 0")
    return GapCertificate(tuple(rows), value)
