"""Text formats: ``.cplx`` complexes, ``.field`` gradient fields, ``.mf`` functions."""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction

from .complex import ComplexError, Simplex, SimplicialComplex, build_from_maximal, cell_key, simplex
from .field import DiscreteVectorField, FieldError, parse_value, validate_field


class FormatError(ValueError):
    def __init__(self, source: str, line: int, column: int, message: str):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.source = source
        self.line = line
        self.column = column


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw, raw.index(stripped[0]) + 1


def _cell(tokens, source, lineno, col):
    try:
        return simplex(tokens)
    except ComplexError as exc:
        raise FormatError(source, lineno, col, str(exc)) from None


def parse_cplx(text: str, source: str = "<cplx>") -> SimplicialComplex:
    facets = []
    for lineno, raw, col in _content_lines(text):
        facets.append(_cell(raw.split(), source, lineno, col))
    if not facets:
        raise FormatError(source, 1, 1, "no simplices")
    return build_from_maximal(facets)


def write_cplx(K: SimplicialComplex) -> str:
    return "".join(" ".join(f) + "\n" for f in K.facets())


def parse_field(text: str, K: SimplicialComplex, source: str = "<field>") -> DiscreteVectorField:
    pairs = []
    for lineno, raw, col in _content_lines(text):
        lower, arrow, upper = raw.partition("->")
        if not arrow:
            raise FormatError(source, lineno, col, "expected 'lower -> upper'")
        lo = _cell(lower.split(), source, lineno, col)
        up = _cell(upper.split(), source, lineno, raw.index("->") + 3)
        if lo not in K or up not in K:
            missing = lo if lo not in K else up
            raise FormatError(source, lineno, col, f"{missing} is not a cell of the complex")
        pairs.append((lo, up))
    try:
        return validate_field(K, pairs)
    except FieldError as exc:
        raise FormatError(source, 0, 0, str(exc)) from exc


def write_field(V: DiscreteVectorField) -> str:
    pairs = sorted(V.pairs, key=lambda p: (cell_key(p[0]), cell_key(p[1])))
    return "".join(f"{' '.join(lo)} -> {' '.join(up)}\n" for lo, up in pairs)


def format_value(value) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


def parse_mf(text: str, K: SimplicialComplex | None = None, source: str = "<mf>") -> dict[Simplex, int | Fraction]:
    values: dict[Simplex, int | Fraction] = {}
    for lineno, raw, col in _content_lines(text):
        cell_text, colon, value_text = raw.rpartition(":")
        if not colon:
            raise FormatError(source, lineno, col, "expected 'cell : value'")
        c = _cell(cell_text.split(), source, lineno, col)
        if K is not None and c not in K:
            raise FormatError(source, lineno, col, f"{c} is not a cell of the complex")
        if c in values:
            raise FormatError(source, lineno, col, f"duplicate value for {c}")
        try:
            values[c] = parse_value(value_text.strip())
        except (ValueError, ZeroDivisionError):
            raise FormatError(source, lineno, raw.rindex(":") + 2, f"bad value {value_text.strip()!r}") from None
    if K is not None:
        for c in K.cells:
            if c not in values:
                raise FormatError(source, 0, 0, f"missing value for {c}")
    return values


def write_mf(K: SimplicialComplex, values: Mapping[Simplex, object]) -> str:
    return "".join(f"{' '.join(c)} : {format_value(values[c])}\n" for c in K.cells)
