"""Acceptance criteria 1-12, one test each; a PASS/FAIL line per criterion is
printed as it finishes and repeated in the terminal summary."""

import functools
import itertools
import json
import random
import time

import pytest

from conftest import CRITERIA, oracle_betti, sample_fields
from morsecollapse.analysis import (CriticalIncidenceGraph, hall_matching, morse_boundary,
                                    theorem_gap_certificate)
from morsecollapse.catalog import catalog, cycle, full_simplex, path
from morsecollapse.cli import run
from morsecollapse.complex import build_from_maximal, cone
from morsecollapse.field import all_fields, critical_report, gradient_field_of, is_morse_function
from morsecollapse.formats import write_field
from morsecollapse.homology import homology, relaxed_hypotheses_hold
from morsecollapse.normalization import brute_force_normalize, nkf, normalize
from morsecollapse.search import (DEFAULT_BUDGET, BudgetExceeded, is_collapsible,
                                  min_critical_cells, nk, optimal_fields, prop3_witness)


DETAILS: dict[int, str] = {}


def criterion(n, title):
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                CRITERIA[n] = ("FAIL", title)
                print(f"criterion {n}: FAIL  {title}")
                raise
            full = f"{title} ({DETAILS[n]})" if n in DETAILS else title
            CRITERIA[n] = ("PASS", full)
            print(f"criterion {n}: PASS  {full}")
        return inner
    return wrap


@pytest.fixture(scope="module")
def field_samples():
    out = sample_fields(per_complex=50, seed=11)
    assert len(out) >= 500
    return out


@criterion(1, "normalization equals the brute-force pointwise minimum")
def test_criterion_01_normalization_oracle():
    start = time.perf_counter()
    checked = 0
    for name in ("point", "path_2", "path_3", "cycle_3", "full_simplex_2"):
        for V in all_fields(catalog(name)):
            assert normalize(V).values == brute_force_normalize(V).values, (name, V.pairs)
            checked += 1
    assert checked == 1 + 3 + 8 + 16 + 40
    assert time.perf_counter() - start < 10


@criterion(2, "normalized values: bounds, zeros, matched pairs, strict increase")
def test_criterion_02_normalization_properties(field_samples):
    for name, V in field_samples:
        K = V.complex
        h = normalize(V)
        for i, c in enumerate(K.cells):
            assert h[c] >= len(c) - 1
            assert (h[c] == 0) == (len(c) == 1 and V.partner[i] < 0)
        for t, fs in enumerate(K.faces_of):
            for s in fs:
                if V.partner[s] == t:
                    assert h.values[K.cells[s]] == h.values[K.cells[t]]
                else:
                    assert h.values[K.cells[s]] < h.values[K.cells[t]]


@criterion(3, "normalized values are Morse and induce the same field")
def test_criterion_03_normalization_is_morse(field_samples):
    for name, V in field_samples:
        h = normalize(V)
        assert is_morse_function(V.complex, h.values)
        assert gradient_field_of(V.complex, h.values) == V


@criterion(4, "full alternating sum equals the critical-cell sum")
def test_criterion_04_audit_identity(field_samples):
    for name, V in field_samples:
        value = nkf(V)
        K = V.complex
        h = normalize(V)
        full = sum((-1) ** (len(c) - 1) * h[c] for c in K.cells)
        crit = sum((-1) ** (len(c) - 1) * h[c] for c in V.critical)
        assert full == crit == value.value == value.full_sum


@criterion(5, "collapsible corpus: collapse, zero witness, N(K) = 0")
def test_criterion_05_collapsible_corpus():
    start = time.perf_counter()
    corpus = [full_simplex(d) for d in range(4)] + [path(n) for n in range(1, 11)]
    corpus += [cone(K) for K in (path(4), cycle(3), cycle(6), full_simplex(1),
                                 catalog("rp2_6"), catalog("torus_7"))]
    for K in corpus:
        res = is_collapsible(K)
        assert res.collapsible and res.exact
        assert nkf(prop3_witness(K, res)).value == 0
        r = nk(K)
        assert r.exact and r.value == 0
    assert time.perf_counter() - start < 60


def _prufer_edges(seq, n):
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    return edges + [(u, v)]


def _canonical_tree(n, edges):
    """Canonical string of an unlabeled tree (rooted at its center(s))."""
    adj = {i: [] for i in range(n)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)

    def encode(v, parent):
        return "(" + "".join(sorted(encode(w, v) for w in adj[v] if w != parent)) + ")"

    leaves = [v for v in adj if len(adj[v]) <= 1]
    remaining, degree = n, {v: len(adj[v]) for v in adj}
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for v in leaves:
            for w in adj[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        leaves = nxt
    return min(encode(c, None) for c in leaves) if leaves else "()"


def _all_trees(n):
    if n == 1:
        yield []
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield _prufer_edges(seq, n)


@criterion(6, "graphs: trees have N = 0, short cycles have N > 0")
def test_criterion_06_graphs():
    # labeled trees: n^(n-2) of them; unlabeled classes for n = 1..7 are 1,1,1,2,3,6,11
    classes = {}
    for n in range(1, 8):
        count = 0
        for edges in _all_trees(n):
            count += 1
            classes.setdefault(n, {}).setdefault(_canonical_tree(n, edges), edges)
        assert count == (n ** (n - 2) if n > 1 else 1)
    assert [len(classes[n]) for n in range(1, 8)] == [1, 1, 1, 2, 3, 6, 11]
    for n in range(1, 8):
        trees = _all_trees(n) if n <= 6 else classes[n].values()
        for edges in trees:
            K = build_from_maximal([[f"v{a}", f"v{b}"] for a, b in edges] or [["v0"]])
            r = nk(K)
            assert r.exact and r.value == 0
    values = {}
    for n in (3, 4, 5):
        r = nk(cycle(n))
        assert r.exact and r.value > 0
        values[n] = r.value
    optimal = [V for V in all_fields(cycle(3)) if critical_report(V).total == 2]
    assert values[3] == min(abs(nkf(V).value) for V in optimal) == 2


@criterion(7, "dunce hat: acyclic, not collapsible, positive certified N")
def test_criterion_07_dunce_hat():
    K = catalog("dunce_hat")
    assert homology(K).acyclic
    res = is_collapsible(K)
    assert not res.collapsible and res.exact and "no free faces" in res.note
    start = time.perf_counter()
    r = nk(K, DEFAULT_BUDGET, certify=True)
    elapsed = time.perf_counter() - start
    DETAILS[7] = (f"N = {r.value}" if r.exact else
                  f"exact=false: N <= {r.value} after {r.fields_examined} fields, all gap-certified")
    assert r.value is not None and r.value > 0
    assert r.certified == r.fields_examined > 0
    if not r.exact:
        assert "upper bound" in r.note
    assert elapsed < 600
    # the generic certificate on the first enumerated optima agrees
    seen = 0
    try:
        for V, value in optimal_fields(K, budget=3000):
            cert = theorem_gap_certificate(V)
            assert cert.nkf == value == sum(cert.gaps) > 0
            assert all(g > 0 for g in cert.gaps)
            seen += 1
    except BudgetExceeded:
        pass
    assert seen > 0


@criterion(8, "projective plane: relaxed hypotheses and N > 0")
def test_criterion_08_projective_plane():
    K = catalog("rp2_6")
    h = homology(K)
    assert h.euler == 1 and h.betti[2] == 0
    assert relaxed_hypotheses_hold(K)
    r = nk(K, certify=True)
    assert r.exact and r.value > 0
    assert r.value == 3
    assert r.certified == r.fields_examined


@criterion(9, "torus: optimal (1,2,1) field with N(T,f) = 0")
def test_criterion_09_torus():
    K = catalog("torus_7")
    opt = min_critical_cells(K)
    assert opt.exact and opt.critical_vector == (1, 2, 1)
    r = nk(K)
    assert r.exact and r.value == 0
    assert critical_report(r.witness).counts == (1, 2, 1)
    assert nkf(r.witness).value == 0


@criterion(10, "Morse chain complex has the simplicial rational homology")
def test_criterion_10_morse_homology():
    small = [n for n in ("point", "path_3", "path_6", "cycle_3", "cycle_5", "full_simplex_2",
                         "full_simplex_3", "rp2_6", "torus_7", "dunce_hat")
             if len(catalog(n)) <= 200]
    assert len(catalog("bing_house")) > 200
    for name, V in sample_fields(per_complex=30, seed=5, names=small):
        mcc = morse_boundary(V)
        assert mcc.composes_to_zero()
        assert mcc.rational_betti() == oracle_betti(V.complex), name


def _max_matching_brute(edges):
    for size in range(4, -1, -1):
        for chosen in itertools.combinations(edges, size):
            if len({a for a, _ in chosen}) == size and len({b for _, b in chosen}) == size:
                return size
    return 0


@criterion(11, "Hall matching is maximum on every 4+4 bipartite graph")
def test_criterion_11_matching():
    A, B = ("a0", "a1", "a2", "a3"), ("b0", "b1", "b2", "b3")
    pairs = [(a, b) for a in A for b in B]
    brute_cache = {}
    for mask in range(1 << 16):
        edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
        cert = hall_matching(CriticalIncidenceGraph(A, B, frozenset(edges)))
        if edges not in brute_cache:
            brute_cache[edges] = _max_matching_brute(edges)
        assert len(cert.matching) == brute_cache[edges]
        assert all(p in edges for p in cert.matching)
        if not cert.complete:
            side = cert.violator
            if cert.violator_side == "B":
                nbrs = {a for a, b in edges if b in side}
            else:
                nbrs = {b for a, b in edges if a in side}
            assert len(nbrs) < len(side)


@criterion(12, "CLI reports are byte-identical across runs and worker counts")
def test_criterion_12_determinism(tmp_path):
    V = min_critical_cells(catalog("dunce_hat")).witnesses[0]
    field = tmp_path / "d.field"
    field.write_text(write_field(V))
    f = str(field)
    commands = [
        ["info", "bing_house"], ["homology", "rp2_6"], ["normalize", "dunce_hat", f],
        ["nkf", "dunce_hat", f], ["optimal", "torus_7"], ["optimal", "dunce_hat"],
        ["nk", "torus_7"], ["nk", "cycle_5"], ["nk", "rp2_6", "--budget", "30000"],
        ["nk", "dunce_hat", "--budget", "20000", "--certify"],
        ["collapse", "dunce_hat"], ["collapse", "full_simplex_3"], ["certify", "dunce_hat"],
        ["certify", "dunce_hat", f], ["morse-complex", "dunce_hat", f], ["hall", "dunce_hat", f],
        ["plprobe", "cycle_3", "--depth", "1"], ["subdivide", "cycle_3"], ["export-dot", "dunce_hat", f],
        ["catalog"], ["catalog", "path_4"],
    ]
    for argv in commands:
        first = run(argv)
        assert first == run(argv), argv
        assert first == run(argv + ["--jobs", "4"]), argv
        if argv[0] != "export-dot":
            assert json.loads(first[0])["command"] == argv[0]
