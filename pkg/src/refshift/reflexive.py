"""Reflexive categories from arc tables of knot and link diagrams.

Each arc of an oriented diagram begins on one arc and ends on another, so
the arcs serve simultaneously as the objects and the generating morphisms
of a category: every object is a morphism.  The trefoil table cycles three
arcs; the two-component link table makes each arc a self-morphism of the
other.  Composition is free, so the category has more morphisms than
objects, enumerable by word length.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Category, Generator, Word
from .errors import DanglingArc, InvalidDefinition


@dataclass(frozen=True)
class ArcTable:
    """Rows (arc, dom, cod); every endpoint must itself be an arc."""

    rows: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        names = [name for name, _, _ in self.rows]
        if len(set(names)) != len(names):
            raise InvalidDefinition("arc names must be distinct")
        arcs = set(names)
        for name, dom, cod in self.rows:
            if dom not in arcs or cod not in arcs:
                raise DanglingArc(f"arc {name}: {dom} -> {cod} references a missing arc")

    @property
    def arcs(self) -> tuple[str, ...]:
        return tuple(name for name, _, _ in self.rows)


TREFOIL = ArcTable((("A", "C", "B"), ("B", "A", "C"), ("C", "B", "A")))
LINK = ArcTable((("A", "B", "B"), ("B", "A", "A")))


def parse_arc_table(text: str) -> ArcTable:
    """One arc per line, "name: dom -> cod"; blank lines and ;-comments skipped."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        try:
            name, rest = (s.strip() for s in line.split(":", 1))
            dom, cod = (s.strip() for s in rest.split("->", 1))
        except ValueError:
            raise InvalidDefinition(f"line {lineno}: expected 'name: dom -> cod'") from None
        rows.append((name, dom, cod))
    return ArcTable(tuple(rows))


@dataclass(frozen=True)
class DiagramCategory:
    """The category induced by an arc table: objects are the arcs themselves."""

    category: Category
    arc_names: tuple[str, ...]


def build(table: ArcTable) -> DiagramCategory:
    """Objects = arcs, one generator per arc; identities are the empty words."""
    gens = tuple(Generator(name, dom, cod) for name, dom, cod in table.rows)
    return DiagramCategory(Category(frozenset(table.arcs), gens), table.arcs)


def _core_category(cat) -> Category:
    if isinstance(cat, DiagramCategory):
        return cat.category
    if isinstance(cat, Category):
        return cat
    return cat.base  # a CategoricalPair


def is_reflexive(cat) -> bool:
    """Every object must be the name of a user-supplied generating morphism.

    Auto-added sharp generators do not count, so digraph-built categories
    are reflexive only when their edges happen to be named after the nodes.
    """
    core = _core_category(cat)
    named = {g.name for g in core.generators if not g.is_sharp}
    return all(obj in named for obj in core.objects)


def enumerate_composites(cat, max_len: int) -> set[Word]:
    """All chainable generator words of length 1..max_len under free composition."""
    if max_len < 1:
        raise InvalidDefinition("max_len must be at least 1")
    core = _core_category(cat)
    gens = [g for g in core.generators if not g.is_sharp]
    frontier = [Word.of(g) for g in gens]
    words: set[Word] = set(frontier)
    for _ in range(max_len - 1):
        frontier = [
            Word.from_generators(w.gens + (g,))
            for w in frontier
            for g in gens
            if g.cod == w.dom
        ]
        words.update(frontier)
    return words
