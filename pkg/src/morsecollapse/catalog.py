"""Named test complexes.

Fixed triangulations ship as ``.cplx`` files under ``data/``; the
parametric families (``full_simplex_d``, ``path_n``, ``cycle_n``) are built
on demand with letter labels (``a``, ``b``, ...) so that small members read
naturally.
"""

from __future__ import annotations

import re
import string
from importlib import resources

from .complex import ComplexError, SimplicialComplex, build_from_maximal
from .formats import parse_cplx

FIXED = ("point", "dunce_hat", "rp2_6", "torus_7", "bing_house")
FAMILIES = ("full_simplex_d", "path_n", "cycle_n")


def _labels(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    width = len(str(n - 1))
    return [f"v{i:0{width}d}" for i in range(n)]


def full_simplex(d: int) -> SimplicialComplex:
    if d < 0:
        raise ComplexError("dimension must be nonnegative")
    return build_from_maximal([_labels(d + 1)])


def path(n: int) -> SimplicialComplex:
    """Path graph on ``n`` vertices."""
    if n < 1:
        raise ComplexError("path needs at least one vertex")
    v = _labels(n)
    if n == 1:
        return build_from_maximal([v])
    return build_from_maximal(zip(v, v[1:]))


def cycle(n: int) -> SimplicialComplex:
    if n < 3:
        raise ComplexError("a simplicial cycle needs at least 3 vertices")
    v = _labels(n)
    return build_from_maximal(zip(v, v[1:] + v[:1]))


def names() -> list[str]:
    return list(FIXED) + list(FAMILIES)


def catalog(name: str) -> SimplicialComplex:
    if name in FIXED:
        text = resources.files(__package__).joinpath("data", f"{name}.cplx").read_text()
        return parse_cplx(text, source=f"{name}.cplx")
    m = re.fullmatch(r"(full_simplex|path|cycle)_(\d+)", name)
    if m:
        family, n = m.group(1), int(m.group(2))
        return {"full_simplex": full_simplex, "path": path, "cycle": cycle}[family](n)
    raise KeyError(f"unknown catalog complex {name!r}")
