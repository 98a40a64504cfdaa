import pickle

import pytest

from morsecollapse.catalog import catalog, cycle, full_simplex, names, path
from morsecollapse.complex import (ComplexError, barycenter_label, barycentric_subdivision,
                                   build_from_maximal, cell_name, cone, connected_components,
                                   euler_characteristic, is_connected, simplex, to_json)


def test_simplex_is_sorted_and_validated():
    assert simplex(["c", "a", "b"]) == ("a", "b", "c")
    assert simplex([3, 1]) == ("1", "3")
    for bad in ([], ["a", "a"], ["a b"], ["->"], [":"], ["#x"], [""]):
        with pytest.raises(ComplexError):
            simplex(bad)


def test_closure_and_ordering():
    K = build_from_maximal([["a", "b", "c"], ["c", "d"]])
    assert K.f_vector == (4, 4, 1)
    keys = [(len(c), c) for c in K.cells]
    assert keys == sorted(keys)
    for i, c in enumerate(K.cells):
        assert K.id(c) == i
        for f in K.immediate_faces(c):
            assert c in K.immediate_cofaces(f)
    assert K.facets() == [("c", "d"), ("a", "b", "c")]
    assert K.vertices == ["a", "b", "c", "d"]


def test_empty_and_oversized_inputs():
    with pytest.raises(ComplexError):
        build_from_maximal([])
    with pytest.raises(ComplexError):
        build_from_maximal([[f"v{i}" for i in range(22)]])


def test_orientation_signs():
    K = full_simplex(2)
    abc = ("a", "b", "c")
    assert K.orientation(("b", "c"), abc) == 1
    assert K.orientation(("a", "c"), abc) == -1
    assert K.orientation(("a", "b"), abc) == 1


@pytest.mark.parametrize("name, f_vector", [
    ("point", (1,)),
    ("dunce_hat", (8, 24, 17)),
    ("rp2_6", (6, 15, 10)),
    ("torus_7", (7, 21, 14)),
    ("bing_house", (72, 237, 166)),
])
def test_fixed_catalog(name, f_vector):
    K = catalog(name)
    assert K.f_vector == f_vector
    assert is_connected(K)


def test_dunce_hat_edge_degrees():
    # every edge lies in 2 or 3 triangles, so nothing is free
    K = catalog("dunce_hat")
    degrees = sorted(len(K.cofaces_of[e]) for e in K.ids_of_dim(1))
    assert degrees.count(2) == 21 and degrees.count(3) == 3


def test_families():
    assert full_simplex(3).f_vector == (4, 6, 4, 1)
    assert path(5).f_vector == (5, 4)
    assert cycle(4).f_vector == (4, 4)
    assert catalog("cycle_6").f_vector == (6, 6)
    assert len(catalog("path_30").vertices) == 30
    with pytest.raises(KeyError):
        catalog("klein_bottle")
    assert "dunce_hat" in names()


def test_euler_and_components():
    assert euler_characteristic(catalog("torus_7")) == 0
    assert euler_characteristic(catalog("dunce_hat")) == 1
    K = build_from_maximal([["a", "b"], ["c"]])
    assert connected_components(K) == [["a", "b"], ["c"]]
    assert not is_connected(K)


def test_barycentric_subdivision():
    sd = barycentric_subdivision(full_simplex(2))
    assert sd.f_vector == (7, 12, 6)
    assert barycenter_label(("a", "b")) == "b1(a,b)"
    for name in ("cycle_3", "rp2_6"):
        K = catalog(name)
        assert euler_characteristic(barycentric_subdivision(K)) == euler_characteristic(K)


def test_cone():
    C = cone(cycle(4))
    assert C.f_vector == (5, 8, 4)
    assert euler_characteristic(C) == 1
    with pytest.raises(ComplexError):
        cone(build_from_maximal([["apex"]]))


def test_pickle_and_json_roundtrip():
    K = catalog("rp2_6")
    L = pickle.loads(pickle.dumps(K))
    assert L.cells == K.cells and L.faces_of == K.faces_of
    data = to_json(K)
    assert data["f_vector"] == [6, 15, 10]
    assert sum(len(x) for x in data["cells"]) == len(K)


def test_cell_name():
    assert cell_name(("a", "b")) == "ab"
    assert cell_name(("v01", "v02")) == "v01,v02"
