"""Diagonal arguments over explicit finite sets.

A curried map F: X -> [X, Z] is a table of rows; the diagonal construction
post-composes the trace x -> F(x)(x) with a map on Z.  With Z = {0,1} and
negation the diagonal can never be a row (Cantor); if some row does equal
the diagonal, the post-map has a fixed point (Lawvere); and over the
three-valued set {0,1,J} with ~J = J representable diagonals exist, but
only with value J on the diagonal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EnumerationCapExceeded, InvalidDefinition, NotSurjective

SURJECTIVITY_CAP = 10**6


@dataclass(frozen=True)
class FinSet:
    elements: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise InvalidDefinition("finite set labels must be distinct")

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise InvalidDefinition(f"label {label!r} is not in {self.elements}") from None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class FinMap:
    """A total map between finite sets, tabulated in domain order."""

    dom: FinSet
    cod: FinSet
    table: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != len(self.dom):
            raise InvalidDefinition("table must assign a value to every domain element")
        cod = set(self.cod.elements)
        for v in self.table:
            if v not in cod:
                raise InvalidDefinition(f"value {v!r} is outside the codomain")

    @classmethod
    def from_dict(cls, dom: FinSet, cod: FinSet, mapping: dict) -> "FinMap":
        return cls(dom, cod, tuple(mapping[x] for x in dom))

    def __call__(self, x: str) -> str:
        return self.table[self.dom.index(x)]


@dataclass(frozen=True)
class CurriedMap:
    """F: X -> [X, Z], stored as one row of Z-values per element of X."""

    dom: FinSet
    cod_base: FinSet
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if len(self.rows) != len(self.dom):
            raise InvalidDefinition("one row per domain element required")
        cod = set(self.cod_base.elements)
        for row in self.rows:
            if len(row) != len(self.dom):
                raise InvalidDefinition("each row must cover the whole domain")
            if any(v not in cod for v in row):
                raise InvalidDefinition("row value outside the base codomain")

    def row(self, x: str) -> FinMap:
        return FinMap(self.dom, self.cod_base, self.rows[self.dom.index(x)])

    def __call__(self, x: str) -> FinMap:
        return self.row(x)


BOOL = FinSet(("0", "1"))
TRI = FinSet(("0", "1", "J"))


def identity_map(s: FinSet) -> FinMap:
    return FinMap(s, s, s.elements)


def bool_negation() -> FinMap:
    return FinMap(BOOL, BOOL, ("1", "0"))


def tri_negation() -> FinMap:
    """Lukasiewicz negation: swaps 0 and 1, fixes J."""
    return FinMap(TRI, TRI, ("1", "0", "J"))


def _check_post_map(F: CurriedMap, post: FinMap):
    if post.dom != F.cod_base or post.cod != F.cod_base:
        raise InvalidDefinition("the post-map must be an endomap of the base codomain")


def cantor_diagonal(F: CurriedMap, neg: FinMap) -> FinMap:
    """The map x -> neg(F(x)(x))."""
    _check_post_map(F, neg)
    return FinMap(F.dom, F.cod_base, tuple(neg(F.row(x)(x)) for x in F.dom))


def find_representation(F: CurriedMap, C: FinMap):
    """The first element whose row equals C pointwise, or None."""
    if C.dom != F.dom or C.cod != F.cod_base:
        raise InvalidDefinition("candidate map must go from the domain to the base codomain")
    for x, row in zip(F.dom, F.rows):
        if row == C.table:
            return x
    return None


def is_surjective(F: CurriedMap) -> bool:
    """Exhaustive check that every map X -> Z appears as a row."""
    total = len(F.cod_base) ** len(F.dom)
    if total > SURJECTIVITY_CAP:
        raise EnumerationCapExceeded(
            f"{total} candidate maps exceed the cap of {SURJECTIVITY_CAP}"
        )
    rows = set(F.rows)
    return all(
        candidate in rows
        for candidate in itertools.product(F.cod_base.elements, repeat=len(F.dom))
    )


def lawvere_fixed_point(F: CurriedMap, alpha: FinMap) -> tuple[str, str]:
    """A fixed point of alpha with its witness, whenever the diagonal is a row.

    Builds C(x) = alpha(F(x)(x)); if C = F(a) then F(a)(a) is fixed by alpha
    and (value, a) is returned.  When no row represents C the map F cannot be
    surjective onto [X, Z]; this is confirmed exhaustively before raising.
    """
    _check_post_map(F, alpha)
    C = cantor_diagonal(F, alpha)
    a = find_representation(F, C)
    if a is not None:
        value = F.row(a)(a)
        if alpha(value) != value:
            raise AssertionError("represented diagonal failed to yield a fixed point")
        return value, a
    if is_surjective(F):
        raise AssertionError("surjective map left the diagonal unrepresented")
    raise NotSurjective(
        "the diagonal is not represented, so F is not surjective onto the map set"
    )


def diagonal_via_delta(F: CurriedMap, alpha: FinMap) -> FinMap:
    """The diagonal built compositionally: alpha . eval . (F x I) . delta."""
    _check_post_map(F, alpha)
    values = []
    for x in F.dom:
        duplicated = (x, x)  # delta
        fn, arg = F.row(duplicated[0]), duplicated[1]  # F x I
        evaluated = fn(arg)  # eval
        values.append(alpha(evaluated))  # alpha
    return FinMap(F.dom, F.cod_base, tuple(values))


@dataclass(frozen=True)
class ThreeValuedReport:
    """Outcome of the diagonal over {0,1,J}: every representation sits at J."""

    diagonal: FinMap
    representations: tuple[str, ...]

    @property
    def witnessed(self) -> bool:
        return bool(self.representations)


def three_valued_diagonal_analysis(F: CurriedMap) -> ThreeValuedReport:
    """Diagonalize with Lukasiewicz negation and collect every representing row.

    Representation is possible here (unlike the two-valued case), but each
    representing element z must satisfy F(z)(z) = J since J is the only
    fixed point of the negation.
    """
    if F.cod_base != TRI:
        raise InvalidDefinition("three-valued analysis needs the base codomain {0, 1, J}")
    C = cantor_diagonal(F, tri_negation())
    reps = tuple(x for x, row in zip(F.dom, F.rows) if row == C.table)
    for z in reps:
        if F.row(z)(z) != "J":
            raise AssertionError("a represented diagonal left a non-J value on the diagonal")
    return ThreeValuedReport(C, reps)


def all_curried_maps(dom: FinSet, cod_base: FinSet):
    """Every curried map dom -> [dom, cod_base], for exhaustive desk-scale checks."""
    n = len(dom)
    for cells in itertools.product(cod_base.elements, repeat=n * n):
        rows = tuple(tuple(cells[i * n : (i + 1) * n]) for i in range(n))
        yield CurriedMap(dom, cod_base, rows)
