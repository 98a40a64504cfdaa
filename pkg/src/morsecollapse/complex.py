"""Finite abstract simplicial complexes with face/coface incidence.

A simplex is a tuple of vertex labels (strings) in strictly increasing
lexicographic order.  A :class:`SimplicialComplex` stores every cell once,
ordered by ``(dimension, vertices)``; that order is also the integer id of a
cell, which the search and normalization code use as a fast handle.

Orientation convention: the ``i``-th immediate face of ``tau`` is ``tau``
with its ``i``-th vertex removed, and it enters the boundary of ``tau``
with sign ``(-1) ** i``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from itertools import combinations

Simplex = tuple[str, ...]

MAX_CELLS = 2**20


class ComplexError(ValueError):
    """Raised for malformed complexes or simplices."""


def _check_label(label: str) -> None:
    if not label or any(ch.isspace() for ch in label):
        raise ComplexError(f"invalid vertex label {label!r}")
    if label in ("->", ":") or label.startswith("#"):
        raise ComplexError(f"reserved vertex label {label!r}")


def simplex(vertices: Iterable) -> Simplex:
    """Return the canonical (sorted) simplex on ``vertices``.

    Labels are converted with ``str``.  Duplicate or empty vertex sets raise
    :class:`ComplexError`.
    """
    labels = [str(v) for v in vertices]
    if not labels:
        raise ComplexError("empty simplex")
    for label in labels:
        _check_label(label)
    out = tuple(sorted(labels))
    if len(set(out)) != len(out):
        raise ComplexError(f"duplicate vertex in {labels}")
    return out


def cell_key(cell: Simplex) -> tuple[int, Simplex]:
    return (len(cell) - 1, cell)


def cell_name(cell: Simplex) -> str:
    """Compact display name: ``ab`` for single-character labels, else ``a,b``."""
    if all(len(v) == 1 for v in cell):
        return "".join(cell)
    return ",".join(cell)


class SimplicialComplex:
    """Immutable simplicial complex closed under faces.

    Attributes
    ----------
    cells : tuple of Simplex
        All cells sorted by ``(dimension, vertices)``.  Position = cell id.
    dim_of : tuple of int
        Dimension of each cell id.
    faces_of : tuple of tuple of int
        Immediate faces of each cell; position ``i`` is the face missing
        vertex ``i`` (sign ``(-1)**i``).
    cofaces_of : tuple of tuple of int
        Immediate cofaces of each cell, ascending ids.
    """

    __slots__ = ("cells", "index", "dim_of", "faces_of", "cofaces_of",
                 "f_vector", "dimension", "_by_dim")

    def __init__(self, cells: Iterable[Simplex]):
        cell_list = sorted(set(cells), key=cell_key)
        if not cell_list:
            raise ComplexError("empty complex")
        if len(cell_list) > MAX_CELLS:
            raise ComplexError(f"complex has more than {MAX_CELLS} cells")
        self.cells = tuple(cell_list)
        self.index = {c: i for i, c in enumerate(self.cells)}
        self.dim_of = tuple(len(c) - 1 for c in self.cells)
        faces = []
        cofaces: list[list[int]] = [[] for _ in self.cells]
        for i, c in enumerate(self.cells):
            if len(c) == 1:
                faces.append(())
                continue
            fs = []
            for k in range(len(c)):
                face = c[:k] + c[k + 1:]
                j = self.index.get(face)
                if j is None:
                    raise ComplexError(f"not closed under faces: {face} missing from {c}")
                fs.append(j)
                cofaces[j].append(i)
            faces.append(tuple(fs))
        self.faces_of = tuple(faces)
        self.cofaces_of = tuple(tuple(sorted(cs)) for cs in cofaces)
        self.dimension = self.dim_of[-1]
        counts = [0] * (self.dimension + 1)
        for d in self.dim_of:
            counts[d] += 1
        self.f_vector = tuple(counts)
        starts = [0]
        for n in counts:
            starts.append(starts[-1] + n)
        self._by_dim = tuple(range(starts[d], starts[d + 1]) for d in range(len(counts)))

    # -- container protocol -------------------------------------------------
    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.cells)

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        return f"SimplicialComplex(f_vector={self.f_vector})"

    def __getstate__(self):
        return self.cells

    def __setstate__(self, state):
        self.__init__(state)

    # -- queries --------------------------------------------------------------
    def ids_of_dim(self, d: int) -> range:
        if 0 <= d < len(self._by_dim):
            return self._by_dim[d]
        return range(0)

    def cells_of_dim(self, d: int) -> list[Simplex]:
        return [self.cells[i] for i in self.ids_of_dim(d)]

    def id(self, cell: Sequence) -> int:
        try:
            return self.index[tuple(cell)]
        except KeyError:
            raise ComplexError(f"{tuple(cell)} is not a cell of the complex") from None

    def immediate_faces(self, cell: Sequence) -> list[Simplex]:
        return [self.cells[j] for j in self.faces_of[self.id(cell)]]

    def immediate_cofaces(self, cell: Sequence) -> list[Simplex]:
        return [self.cells[j] for j in self.cofaces_of[self.id(cell)]]

    def incidence_sign(self, face_id: int, coface_id: int) -> int:
        """Sign of ``face`` in the boundary of ``coface`` (0 if not incident)."""
        try:
            pos = self.faces_of[coface_id].index(face_id)
        except ValueError:
            return 0
        return -1 if pos % 2 else 1

    def orientation(self, face: Sequence, coface: Sequence) -> int:
        sign = self.incidence_sign(self.id(face), self.id(coface))
        if sign == 0:
            raise ComplexError(f"{tuple(face)} is not an immediate face of {tuple(coface)}")
        return sign

    def facets(self) -> list[Simplex]:
        """Maximal cells, sorted by ``(dimension, vertices)``."""
        return [c for i, c in enumerate(self.cells) if not self.cofaces_of[i]]

    @property
    def vertices(self) -> list[str]:
        return [c[0] for c in self.cells_of_dim(0)]


def build_from_maximal(facets: Iterable[Iterable]) -> SimplicialComplex:
    """Downward closure of a collection of vertex sets."""
    cells: set[Simplex] = set()
    n_facets = 0
    for facet in facets:
        top = simplex(facet)
        n_facets += 1
        if top in cells:
            continue
        for k in range(1, len(top) + 1):
            cells.update(combinations(top, k))
            if len(cells) > MAX_CELLS:
                raise ComplexError(f"complex has more than {MAX_CELLS} cells")
    if n_facets == 0:
        raise ComplexError("empty facet list")
    return SimplicialComplex(cells)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(K.f_vector))


def connected_components(K: SimplicialComplex) -> list[list[str]]:
    """Vertex sets of the components of the 1-skeleton, each sorted."""
    parent = {v: v for v in K.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in K.cells_of_dim(1):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[str, list[str]] = {}
    for v in K.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(K: SimplicialComplex) -> bool:
    if len(K) == 0:
        raise ComplexError("empty complex")
    return len(connected_components(K)) == 1


def barycenter_label(cell: Simplex) -> str:
    # dimension prefix keeps string order equal to (dimension, vertices) order
    return f"b{len(cell) - 1}({','.join(cell)})"


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the face poset: one vertex per cell, one simplex per chain."""
    labels = [barycenter_label(c) for c in K.cells]
    flags: list[list[int]] = []

    def extend(chain: list[int]) -> None:
        # chain is ordered from the top cell down
        fs = K.faces_of[chain[-1]]
        if not fs:
            flags.append(chain)
            return
        for f in fs:
            extend(chain + [f])

    for top in range(len(K)):
        if not K.cofaces_of[top]:
            extend([top])
    return build_from_maximal([labels[i] for i in flag] for flag in flags)


def cone(K: SimplicialComplex, apex: str = "apex") -> SimplicialComplex:
    """Cone over ``K`` with a new vertex ``apex`` (collapsible)."""
    if (apex,) in K:
        raise ComplexError(f"apex {apex!r} already a vertex")
    return build_from_maximal([f + (apex,) for f in K.facets()])


def to_json(K: SimplicialComplex) -> dict:
    return {
        "dimension": K.dimension,
        "f_vector": list(K.f_vector),
        "cells": [[list(c) for c in K.cells_of_dim(d)] for d in range(K.dimension + 1)],
    }
