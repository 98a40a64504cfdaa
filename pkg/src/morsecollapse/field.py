"""Discrete vector fields, combinatorial Morse functions and their equivalence."""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .complex import ComplexError, Simplex, SimplicialComplex, cell_name, euler_characteristic


class FieldError(ValueError):
    """Base class for invalid discrete vector fields."""


class NotAMatching(FieldError):
    def __init__(self, cell: Simplex):
        super().__init__(f"cell {cell} occurs in more than one pair")
        self.cell = cell


class NotIncidence(FieldError):
    def __init__(self, lower: Simplex, upper: Simplex):
        super().__init__(f"{lower} is not an immediate face of {upper}")
        self.lower = lower
        self.upper = upper


class ClosedVPath(FieldError):
    """The matching has a closed gradient path; ``cycle`` lists it, first cell repeated last."""

    def __init__(self, cycle: list[Simplex]):
        super().__init__("closed V-path: " + " -> ".join(cell_name(c) for c in cycle))
        self.cycle = cycle


class NotMorse(ValueError):
    pass


def creates_cycle(K: SimplicialComplex, partner: list[int], lower: int, upper: int) -> bool:
    """Would pairing ``lower`` with ``upper`` close a V-path (given current pairs)?"""
    faces_of = K.faces_of
    dim = K.dim_of[lower]
    seen = set()
    stack = [f for f in faces_of[upper] if f != lower]
    while stack:
        f = stack.pop()
        if f == lower:
            return True
        if f in seen:
            continue
        seen.add(f)
        p = partner[f]
        if p >= 0 and K.dim_of[p] == dim + 1:
            stack.extend(g for g in faces_of[p] if g != f)
    return False


def _shortest_cycle(K: SimplicialComplex, partner: list[int]) -> list[int] | None:
    """Shortest closed V-path, as a cell-id list in V-path order, or None."""
    n = len(K)
    # V-path digraph: matched sigma -> tau (upward), tau -> its other faces (downward).
    succ: list[list[int]] = [[] for _ in range(n)]
    for c in range(n):
        p = partner[c]
        if p >= 0 and K.dim_of[p] == K.dim_of[c] + 1:
            succ[c].append(p)
            succ[p].extend(f for f in K.faces_of[p] if f != c)
    indeg = [0] * n
    for c in range(n):
        for d in succ[c]:
            indeg[d] += 1
    queue = deque(c for c in range(n) if indeg[c] == 0)
    removed = 0
    while queue:
        c = queue.popleft()
        removed += 1
        for d in succ[c]:
            indeg[d] -= 1
            if indeg[d] == 0:
                queue.append(d)
    if removed == n:
        return None
    best = None
    for start in range(n):
        if indeg[start] == 0 or partner[start] < 0 or K.dim_of[partner[start]] < K.dim_of[start]:
            continue
        prev = {start: None}
        queue = deque([start])
        found = None
        while queue and found is None:
            c = queue.popleft()
            for d in succ[c]:
                if d == start:
                    found = c
                    break
                if d not in prev:
                    prev[d] = c
                    queue.append(d)
        if found is None:
            continue
        path = [found]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        path.reverse()
        cycle = path + [start]
        if best is None or len(cycle) < len(best):
            best = cycle
    return best


class DiscreteVectorField:
    """An acyclic matching on the Hasse diagram of ``complex``.

    ``partner[i]`` is the id paired with cell ``i`` or ``-1`` when ``i`` is
    critical.  Instances are only produced by :func:`validate_field` (or
    trusted internal constructors) and are treated as immutable.
    """

    __slots__ = ("complex", "partner", "pair_ids")

    def __init__(self, K: SimplicialComplex, partner: Sequence[int]):
        self.complex = K
        self.partner = tuple(partner)
        self.pair_ids = tuple((c, p) for c, p in enumerate(self.partner)
                              if p > c)

    @property
    def pairs(self) -> list[tuple[Simplex, Simplex]]:
        cells = self.complex.cells
        return [(cells[a], cells[b]) for a, b in self.pair_ids]

    def critical_ids(self) -> list[int]:
        return [c for c, p in enumerate(self.partner) if p < 0]

    @property
    def critical(self) -> list[Simplex]:
        return [self.complex.cells[c] for c in self.critical_ids()]

    def is_critical(self, cell: Sequence) -> bool:
        return self.partner[self.complex.id(cell)] < 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, DiscreteVectorField) and self.complex == other.complex
                and self.partner == other.partner)

    def __hash__(self) -> int:
        return hash(self.partner)

    def __repr__(self) -> str:
        return f"DiscreteVectorField({len(self.pair_ids)} pairs, {self.complex!r})"


def field_from_partner(K: SimplicialComplex, partner: Sequence[int], check: bool = True) -> DiscreteVectorField:
    """Build a field from a partner array; ``check`` re-validates acyclicity."""
    if check:
        cycle = _shortest_cycle(K, list(partner))
        if cycle is not None:
            raise ClosedVPath([K.cells[c] for c in cycle])
    return DiscreteVectorField(K, partner)


def validate_field(K: SimplicialComplex, pairs: Iterable[tuple[Sequence, Sequence]]) -> DiscreteVectorField:
    """Check that ``pairs`` is an acyclic matching of immediate incidences."""
    partner = [-1] * len(K)
    for lower, upper in pairs:
        try:
            lo, up = K.id(tuple(lower)), K.id(tuple(upper))
        except ComplexError:
            raise NotIncidence(tuple(lower), tuple(upper)) from None
        if lo not in K.faces_of[up]:
            raise NotIncidence(K.cells[lo], K.cells[up])
        for c in (lo, up):
            if partner[c] >= 0:
                raise NotAMatching(K.cells[c])
        partner[lo], partner[up] = up, lo
    return field_from_partner(K, partner)


def empty_field(K: SimplicialComplex) -> DiscreteVectorField:
    return DiscreteVectorField(K, [-1] * len(K))


# -- Morse functions -----------------------------------------------------------

def _as_exact(value):
    if isinstance(value, bool) or not isinstance(value, Rational):
        raise TypeError(f"Morse values must be integers or Fractions, got {value!r}")
    return value


def _values_by_id(K: SimplicialComplex, f: Mapping) -> list:
    out = []
    for c in K.cells:
        if c not in f:
            raise KeyError(f"missing value for cell {c}")
        out.append(_as_exact(f[c]))
    return out


@dataclass(frozen=True)
class MorseCheck:
    """Outcome of :func:`is_morse_function`; truthy iff the function is Morse."""

    ok: bool
    cell: Simplex | None = None
    low_cofaces: tuple[Simplex, ...] = ()
    high_faces: tuple[Simplex, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_morse_function(K: SimplicialComplex, f: Mapping) -> MorseCheck:
    vals = _values_by_id(K, f)
    for i, c in enumerate(K.cells):
        low = tuple(K.cells[t] for t in K.cofaces_of[i] if vals[t] <= vals[i])
        high = tuple(K.cells[s] for s in K.faces_of[i] if vals[s] >= vals[i])
        if len(low) > 1 or len(high) > 1 or (low and high):
            return MorseCheck(False, c, low, high)
    return MorseCheck(True)


def gradient_field_of(K: SimplicialComplex, f: Mapping) -> DiscreteVectorField:
    check = is_morse_function(K, f)
    if not check:
        raise NotMorse(f"not a combinatorial Morse function at {check.cell}")
    vals = _values_by_id(K, f)
    pairs = []
    for t, fs in enumerate(K.faces_of):
        for s in fs:
            if vals[s] >= vals[t]:
                pairs.append((K.cells[s], K.cells[t]))
    return validate_field(K, pairs)


def comparison_profile(K: SimplicialComplex, f: Mapping) -> tuple[bool, ...]:
    """For every immediate incidence (in id order): is ``f(face) < f(coface)``?"""
    vals = _values_by_id(K, f)
    return tuple(vals[s] < vals[t] for t, fs in enumerate(K.faces_of) for s in fs)


def equivalent(K: SimplicialComplex, f: Mapping, g: Mapping) -> bool:
    """Same strict comparisons on every incidence; cross-checked against field equality."""
    by_profile = comparison_profile(K, f) == comparison_profile(K, g)
    by_field = gradient_field_of(K, f) == gradient_field_of(K, g)
    if by_profile != by_field:
        raise RuntimeError("equivalence criteria disagree")
    return by_profile


def dimension_function(K: SimplicialComplex) -> dict[Simplex, int]:
    return {c: len(c) - 1 for c in K.cells}


# -- critical cells ------------------------------------------------------------

@dataclass(frozen=True)
class CriticalReport:
    critical: tuple[tuple[Simplex, ...], ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.critical)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def alternating_sum(self) -> int:
        return sum((-1) ** d * m for d, m in enumerate(self.counts))


def critical_report(V: DiscreteVectorField) -> CriticalReport:
    K = V.complex
    per_dim: list[list[Simplex]] = [[] for _ in range(K.dimension + 1)]
    for c in V.critical_ids():
        per_dim[K.dim_of[c]].append(K.cells[c])
    report = CriticalReport(tuple(tuple(cs) for cs in per_dim))
    assert report.alternating_sum == euler_characteristic(K)
    return report


# -- generating fields -----------------------------------------------------------

def _incidences(K: SimplicialComplex) -> list[tuple[int, int]]:
    return [(s, t) for t, fs in enumerate(K.faces_of) for s in fs]


def all_fields(K: SimplicialComplex) -> Iterator[DiscreteVectorField]:
    """Every acyclic matching on ``K`` (exponential; small complexes only)."""
    inc = sorted(_incidences(K))
    partner = [-1] * len(K)

    def rec(i: int):
        if i == len(inc):
            yield DiscreteVectorField(K, partner)
            return
        yield from rec(i + 1)
        s, t = inc[i]
        if partner[s] < 0 and partner[t] < 0 and not creates_cycle(K, partner, s, t):
            partner[s], partner[t] = t, s
            yield from rec(i + 1)
            partner[s] = partner[t] = -1

    yield from rec(0)


def random_field(K: SimplicialComplex, rng: random.Random, density: float = 1.0) -> DiscreteVectorField:
    """Greedy random acyclic matching; each candidate pair is tried with probability ``density``."""
    inc = _incidences(K)
    rng.shuffle(inc)
    partner = [-1] * len(K)
    for s, t in inc:
        if partner[s] >= 0 or partner[t] >= 0 or rng.random() >= density:
            continue
        if not creates_cycle(K, partner, s, t):
            partner[s], partner[t] = t, s
    return DiscreteVectorField(K, partner)


def parse_value(text: str) -> Fraction | int:
    value = Fraction(text)
    return value.numerator if value.denominator == 1 else value
