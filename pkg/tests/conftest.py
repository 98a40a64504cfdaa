import random
from fractions import Fraction

import pytest

from morsecollapse.catalog import catalog
from morsecollapse.complex import SimplicialComplex
from morsecollapse.field import random_field

SAMPLE_COMPLEXES = ("point", "path_3", "path_6", "cycle_3", "cycle_5", "full_simplex_2",
                    "full_simplex_3", "rp2_6", "torus_7", "dunce_hat", "bing_house")


def sample_fields(per_complex=50, seed=2024, names=SAMPLE_COMPLEXES, max_cells=None):
    """Deterministic random fields, with densities spread over (0, 1]."""
    rng = random.Random(seed)
    out = []
    for name in names:
        K = catalog(name)
        if max_cells is not None and len(K) > max_cells:
            continue
        for i in range(per_complex):
            density = (i % 10 + 1) / 10
            out.append((name, random_field(K, rng, density)))
    return out


def rational_rank(rows):
    """Rank over Q by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def oracle_betti(K: SimplicialComplex):
    """Unreduced rational Betti numbers from dense signed boundary matrices."""
    ranks = {}
    for k in range(1, K.dimension + 1):
        lo, hi = K.cells_of_dim(k - 1), K.cells_of_dim(k)
        index = {c: i for i, c in enumerate(lo)}
        rows = [[0] * len(hi) for _ in lo]
        for j, t in enumerate(hi):
            for i in range(len(t)):
                rows[index[t[:i] + t[i + 1:]]][j] = (-1) ** i
        ranks[k] = rational_rank(rows)
    return tuple(K.f_vector[k] - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(K.dimension + 1))


@pytest.fixture(scope="session")
def samples():
    return sample_fields()


CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            status, title = CRITERIA[n]
            terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}")
