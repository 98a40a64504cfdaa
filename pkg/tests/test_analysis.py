import itertools
import random

import pytest

from conftest import oracle_betti, sample_fields
from morsecollapse.analysis import (CriticalIncidenceGraph, HallViolation, HypothesisError,
                                    NoCollapsibilityObstruction, PathLimitExceeded,
                                    critical_incidence_graph, gradient_paths, hall_matching,
                                    morse_boundary, path_sign, theorem_gap_certificate)
from morsecollapse.catalog import catalog, full_simplex, path
from morsecollapse.field import empty_field, validate_field
from morsecollapse.homology import boundary_matrix
from morsecollapse.normalization import nkf
from morsecollapse.search import min_critical_cells, prop3_witness


def test_gradient_paths_on_a_path():
    K = path(4)
    V = validate_field(K, [(("b",), ("a", "b")), (("c",), ("b", "c")), (("d",), ("c", "d"))])
    paths = gradient_paths(V, ("d",), ("a",))
    assert paths == [(("d",), ("c", "d"), ("c",), ("b", "c"), ("b",), ("a", "b"), ("a",))]
    assert path_sign(K, paths[0]) == 1
    assert gradient_paths(V, ("a",), ("d",)) == []
    with pytest.raises(ValueError):
        gradient_paths(V, ("a",), ("a", "b"))


def test_path_limit():
    K = path(4)
    V = validate_field(K, [(("b",), ("a", "b")), (("c",), ("b", "c"))])
    assert len(gradient_paths(V, ("c",), ("a",))) == 1
    with pytest.raises(PathLimitExceeded):
        gradient_paths(V, ("c",), ("a",), limit=0)


def test_empty_field_reproduces_simplicial_boundary():
    K = catalog("rp2_6")
    mcc = morse_boundary(empty_field(K))
    for k in (1, 2):
        assert mcc.matrices[k] == boundary_matrix(K, k).to_dense()


def test_morse_homology_on_samples():
    for name, V in sample_fields(per_complex=10, seed=99, max_cells=200):
        mcc = morse_boundary(V)
        assert mcc.composes_to_zero(), name
        assert mcc.rational_betti() == oracle_betti(V.complex), name


def test_morse_complex_json():
    K = catalog("torus_7")
    data = morse_boundary(min_critical_cells(K).witnesses[0]).to_json()
    assert [len(b) for b in data["basis"]] == [1, 2, 1]
    # torus: every Morse boundary of an optimal field vanishes
    assert all(x == 0 for m in data["boundary"].values() for row in m for x in row)


def _brute_max_matching(a_side, b_side, edges):
    edges = sorted(edges)
    for size in range(min(len(a_side), len(b_side)), -1, -1):
        for chosen in itertools.combinations(edges, size):
            if len({a for a, _ in chosen}) == size and len({b for _, b in chosen}) == size:
                return size
    return 0


def _check_certificate(G, cert):
    for a, b in cert.matching:
        assert (a, b) in G.edges
    assert len({a for a, _ in cert.matching}) == len(cert.matching)
    if not cert.complete:
        if cert.violator_side == "B":
            nbrs = {a for a, b in G.edges if b in cert.violator}
        else:
            nbrs = {b for a, b in G.edges if a in cert.violator}
        assert nbrs == set(cert.neighbourhood)
        assert len(nbrs) < len(cert.violator)


def test_hall_small_graphs():
    rng = random.Random(5)
    for _ in range(300):
        na, nb = rng.randint(0, 4), rng.randint(0, 4)
        A, B = tuple(f"a{i}" for i in range(na)), tuple(f"b{i}" for i in range(nb))
        E = frozenset((a, b) for a in A for b in B if rng.random() < 0.4)
        G = CriticalIncidenceGraph(A, B, E)
        cert = hall_matching(G)
        assert len(cert.matching) == _brute_max_matching(A, B, E)
        assert cert.complete == (len(cert.matching) == na == nb)
        _check_certificate(G, cert)


def test_gap_certificate_on_dunce_hat():
    V = min_critical_cells(catalog("dunce_hat")).witnesses[0]
    G = critical_incidence_graph(V)
    assert len(G.a_side) == len(G.b_side) == 1
    cert = theorem_gap_certificate(V)
    assert cert.nkf == nkf(V).value == sum(cert.gaps) > 0
    assert all(g > 0 for g in cert.gaps)


def test_gap_certificate_preconditions():
    with pytest.raises(NoCollapsibilityObstruction):
        theorem_gap_certificate(prop3_witness(full_simplex(2)))
    with pytest.raises(HypothesisError):
        theorem_gap_certificate(min_critical_cells(catalog("torus_7")).witnesses[0])
    with pytest.raises(HypothesisError):
        theorem_gap_certificate(empty_field(catalog("dunce_hat")))  # not of the form (1, k, k)


def test_hall_violation_carries_certificate():
    G = CriticalIncidenceGraph(("x", "y"), ("s", "t"), frozenset({("x", "s"), ("x", "t")}))
    cert = hall_matching(G)
    assert not cert.complete
    _check_certificate(G, cert)
    err = HallViolation(cert)
    assert err.certificate is cert
    assert cert.to_json()["complete"] is False
