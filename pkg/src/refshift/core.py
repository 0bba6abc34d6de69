"""Two-level word categories and the indicative shift.

The base level is a category presented by generators and optional rewrite
rules: morphisms are chainable words of generators, composition is
concatenation followed by normalization under the rules.  The second level
consists of reference arrows between those words.  A composable reference
(a -> b) shifts to (#a -> ba), where # is the distinguished self-morphism
attached to the codomain object of a; iterating the shift produces indirect
self-reference, and srt1 packages the one-step derivation (g -> F#) =>
(#g -> F#g).

Words are stored outermost-first: the word F#g means F after # after g, so
its first generator is the last one applied.  Equality of morphisms is word
equality after normalization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .errors import (
    ChainMismatch,
    DanglingEdge,
    EndpointMismatch,
    InvalidDefinition,
    InvalidRule,
    NoSharpGenerator,
    NotComposable,
    NotSrt1Shape,
    NotTwoCategory,
    RewriteBudgetExceeded,
)

DEFAULT_REWRITE_BUDGET = 10_000

# Runs shorter than this print literally (aa, ###g); longer runs compress
# to name^count (#^6).
_RLE_MIN = 4


@dataclass(frozen=True)
class Generator:
    """A named generating morphism dom -> cod of the base category."""

    name: str
    dom: str
    cod: str
    is_sharp: bool = False

    def __post_init__(self):
        if not self.name:
            raise InvalidDefinition("generator name must be nonempty")
        if any(ch.isspace() for ch in self.name) or "^" in self.name:
            raise InvalidDefinition(f"generator name {self.name!r} may not contain spaces or '^'")
        if self.is_sharp and self.dom != self.cod:
            raise InvalidDefinition(
                f"sharp generator {self.name} must be a self-morphism, got {self.dom} -> {self.cod}"
            )

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Word:
    """A chainable sequence of generators, outermost (last applied) first.

    The empty sequence is the identity of its object, so dom == cod is
    required when there are no generators.
    """

    gens: tuple[Generator, ...]
    dom: str
    cod: str

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        if self.gens:
            for left, right in zip(self.gens, self.gens[1:]):
                if left.dom != right.cod:
                    raise ChainMismatch(
                        f"generators {left.name}:{left.dom}->{left.cod} and "
                        f"{right.name}:{right.dom}->{right.cod} do not chain"
                    )
            if self.dom != self.gens[-1].dom or self.cod != self.gens[0].cod:
                raise ChainMismatch("word endpoints do not match its generator sequence")
        elif self.dom != self.cod:
            raise ChainMismatch("the empty word is an identity and needs dom == cod")

    @classmethod
    def identity(cls, obj: str) -> "Word":
        return cls((), obj, obj)

    @classmethod
    def from_generators(cls, gens: Iterable[Generator]) -> "Word":
        gens = tuple(gens)
        if not gens:
            raise InvalidDefinition("from_generators needs at least one generator; use identity(obj)")
        return cls(gens, gens[-1].dom, gens[0].cod)

    @classmethod
    def of(cls, *gens: Generator) -> "Word":
        return cls.from_generators(gens)

    @property
    def is_identity(self) -> bool:
        return not self.gens

    @property
    def is_self_morphism(self) -> bool:
        return self.dom == self.cod

    def __len__(self):
        return len(self.gens)

    def __str__(self):
        if not self.gens:
            return f"1_{self.dom}"
        pieces = []
        for name, group in itertools.groupby(g.name for g in self.gens):
            count = len(list(group))
            if count >= _RLE_MIN:
                pieces.append(f"{name}^{count}")
            else:
                pieces.extend([name] * count)
        if all(len(p.split("^")[0]) == 1 for p in pieces):
            return "".join(pieces)
        return " ".join(pieces)


@dataclass(frozen=True)
class RewriteRule:
    """Subword rewrite over generator names; "?v" tokens are placeholders.

    A placeholder matches exactly one generator and may be repeated (both
    occurrences must then match the same generator).  Replacement tokens are
    placeholders bound by the pattern, literal generator names, or "1"
    (which contributes nothing).
    """

    pattern: tuple[str, ...]
    replacement: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "pattern", tuple(self.pattern))
        object.__setattr__(self, "replacement", tuple(self.replacement))
        if not self.pattern:
            raise InvalidDefinition("rewrite pattern must be nonempty")
        bound = {t for t in self.pattern if t.startswith("?")}
        for tok in self.replacement:
            if tok.startswith("?") and tok not in bound:
                raise InvalidDefinition(f"replacement placeholder {tok} is not bound by the pattern")

    def apply_at(self, gens: tuple[Generator, ...], pos: int, cat: "Category"):
        """Return the rewritten generator tuple, or None if no match/progress."""
        size = len(self.pattern)
        if pos + size > len(gens):
            return None
        binding: dict[str, Generator] = {}
        segment = gens[pos : pos + size]
        for tok, gen in zip(self.pattern, segment):
            if tok.startswith("?"):
                seen = binding.get(tok)
                if seen is None:
                    binding[tok] = gen
                elif seen != gen:
                    return None
            elif gen.name != tok:
                return None
        repl: list[Generator] = []
        for tok in self.replacement:
            if tok == "1":
                continue
            if tok.startswith("?"):
                repl.append(binding[tok])
            else:
                repl.append(cat.generator(tok))
        if tuple(repl) == segment:
            return None  # no progress; keeps identity-shaped rules terminating
        return gens[:pos] + tuple(repl) + gens[pos + size :]

    def __str__(self):
        return f"{' '.join(self.pattern)} => {' '.join(self.replacement) or '1'}"


@dataclass(frozen=True)
class Category:
    """A base category presented by objects, generators, and rewrite rules."""

    objects: frozenset[str]
    generators: tuple[Generator, ...]
    rules: tuple[RewriteRule, ...] = ()
    rewrite_budget: int = DEFAULT_REWRITE_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "objects", frozenset(self.objects))
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "rules", tuple(self.rules))
        seen = set()
        sharps = set()
        for g in self.generators:
            if g.dom not in self.objects or g.cod not in self.objects:
                raise InvalidDefinition(f"generator {g.name}: {g.dom} -> {g.cod} uses unknown objects")
            key = (g.name, g.dom, g.cod, g.is_sharp)
            if key in seen:
                raise InvalidDefinition(f"duplicate generator {g.name}: {g.dom} -> {g.cod}")
            seen.add(key)
            if g.is_sharp:
                if g.dom in sharps:
                    raise InvalidDefinition(f"object {g.dom} has more than one sharp generator")
                sharps.add(g.dom)

    def generator(self, name: str) -> Generator:
        found = [g for g in self.generators if g.name == name]
        if not found:
            raise InvalidDefinition(f"unknown generator {name!r}")
        if len(found) > 1:
            raise InvalidDefinition(f"generator name {name!r} is ambiguous in this category")
        return found[0]

    def has_generator(self, name: str) -> bool:
        return any(g.name == name for g in self.generators)

    def sharp_at(self, obj: str):
        for g in self.generators:
            if g.is_sharp and g.dom == obj:
                return g
        return None

    def identity(self, obj: str) -> Word:
        if obj not in self.objects:
            raise InvalidDefinition(f"unknown object {obj!r}")
        return Word.identity(obj)

    def word(self, spec) -> Word:
        """Build a Word from a string ("F # g", "#^5", "RR", "1_O") or a name sequence."""
        if isinstance(spec, Word):
            return spec
        if isinstance(spec, str):
            s = spec.strip()
            if s.startswith("1_"):
                return self.identity(s[2:])
            tokens = s.split()
            if len(tokens) == 1 and "^" not in tokens[0] and not self.has_generator(tokens[0]):
                tokens = list(tokens[0])  # juxtaposed single-character names
        else:
            tokens = list(spec)
        gens: list[Generator] = []
        for tok in tokens:
            name, sep, count = tok.partition("^")
            try:
                n = int(count) if sep else 1
            except ValueError:
                raise InvalidDefinition(f"bad repetition count in {tok!r}") from None
            if n < 1:
                raise InvalidDefinition(f"bad repetition count in {tok!r}")
            gens.extend([self.generator(name)] * n)
        if not gens:
            raise InvalidDefinition("empty word spec; use 1_<object> for an identity")
        return Word.from_generators(gens)

    def normalize(self, w: Word) -> Word:
        """Exhaustive leftmost rewriting under this category's rules."""
        if not self.rules:
            return w
        gens = w.gens
        steps = 0
        while True:
            applied = None
            for pos in range(len(gens)):
                for rule in self.rules:
                    candidate = rule.apply_at(gens, pos, self)
                    if candidate is not None:
                        applied = candidate
                        break
                if applied is not None:
                    break
            if applied is None:
                break
            steps += 1
            if steps > self.rewrite_budget:
                raise RewriteBudgetExceeded(
                    f"normalization of {w} exceeded the budget of {self.rewrite_budget} steps"
                )
            gens = applied
        try:
            return Word(gens, w.dom, w.cod)
        except ChainMismatch as exc:
            raise InvalidRule(f"rewriting {w} produced an ill-typed word") from exc

    def words_equal(self, u: Word, v: Word) -> bool:
        return self.normalize(u) == self.normalize(v)


@dataclass(frozen=True)
class RefArrow:
    """A reference arrow between two words of the same base category."""

    src: Word
    dst: Word

    def __str__(self):
        return f"{self.src} -> {self.dst}"


@dataclass(frozen=True)
class CategoricalPair:
    """A base category together with reference arrows between its words.

    ``two_category`` enables horizontal composition; a lambda pair is a
    two-category in which shifting a self-morphism a uses aa for #a.
    """

    base: Category
    arrows: tuple[RefArrow, ...] = ()
    is_lambda_pair: bool = False
    two_category: bool = False

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        gens = set(self.base.generators)
        for arrow in self.arrows:
            for word in (arrow.src, arrow.dst):
                if word.dom not in self.base.objects or word.cod not in self.base.objects:
                    raise InvalidDefinition(f"arrow {arrow} uses objects outside the base category")
                if any(g not in gens for g in word.gens):
                    raise InvalidDefinition(f"arrow {arrow} uses generators outside the base category")

    @property
    def is_two_category(self) -> bool:
        return self.two_category or self.is_lambda_pair


@dataclass(frozen=True)
class DerivationStep:
    rule: str
    arrow: object  # anything with .src/.dst and a sensible str()
    note: str = ""


@dataclass(frozen=True)
class Derivation:
    """An audit trail of reference arrows, one named inference per step."""

    steps: tuple[DerivationStep, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def final(self):
        return self.steps[-1].arrow

    def to_json(self) -> dict:
        return {
            "steps": [
                {
                    "rule": s.rule,
                    "src_word": str(s.arrow.src),
                    "dst_word": str(s.arrow.dst),
                    "note": s.note,
                }
                for s in self.steps
            ]
        }


@dataclass(frozen=True)
class ShiftSequence:
    """Arrows produced by iterating the shift, with the reason for an early stop."""

    arrows: tuple[RefArrow, ...]
    rules: tuple[str, ...]
    stop_reason: str | None = None

    def __iter__(self):
        return iter(self.arrows)

    def __len__(self):
        return len(self.arrows)

    @property
    def final(self) -> RefArrow:
        return self.arrows[-1]


def compose(cat: Category, f: Word, g: Word) -> Word:
    """The word fg ("f after g"), normalized; requires cod(g) == dom(f)."""
    if f.dom != g.cod:
        raise ChainMismatch(
            f"cannot compose {f} after {g}: codomain {g.cod} does not match domain {f.dom}"
        )
    return cat.normalize(Word(f.gens + g.gens, g.dom, f.cod))


def is_composable_reference(pair: CategoricalPair, r: RefArrow) -> bool:
    """True when the composition dst . src is defined in the base category."""
    return r.src.cod == r.dst.dom


def shift_step(pair: CategoricalPair, r: RefArrow) -> tuple[RefArrow, str]:
    """The shifted arrow plus the inference label used to produce it.

    In a lambda pair a self-morphism source uses #a = aa (label
    "shift-lambda"); otherwise the sharp generator at the source's codomain
    is prepended (label "shift", or "shift-sharp-fallback" when a lambda
    pair falls back to a free sharp for a non-self source).
    """
    if not is_composable_reference(pair, r):
        raise NotComposable(
            f"{r} is not a composable reference: codomain {r.src.cod} != domain {r.dst.dom}"
        )
    if pair.is_lambda_pair and r.src.is_self_morphism:
        # #a = aa: the shift is horizontal composition with the identity on a.
        return horizontal_compose(pair, r, RefArrow(r.src, r.src)), "shift-lambda"
    sharp = pair.base.sharp_at(r.src.cod)
    if sharp is None:
        raise NoSharpGenerator(f"no sharp generator at object {r.src.cod!r}")
    label = "shift-sharp-fallback" if pair.is_lambda_pair else "shift"
    shifted_src = compose(pair.base, Word.of(sharp), r.src)
    shifted_dst = compose(pair.base, r.dst, r.src)
    return RefArrow(shifted_src, shifted_dst), label


def indicative_shift(pair: CategoricalPair, r: RefArrow) -> RefArrow:
    """Send a composable reference (a -> b) to (#a -> ba)."""
    arrow, _ = shift_step(pair, r)
    return arrow


def srt1(pair: CategoricalPair, r: RefArrow) -> Derivation:
    """First self-reference derivation: (g -> F#) shifts to (#g -> F#g).

    The final arrow has the shape (h -> Fh) with h = #g.
    """
    dst = r.dst
    if not dst.gens or not dst.gens[-1].is_sharp or dst.gens[-1].dom != r.src.cod:
        raise NotSrt1Shape(
            f"{r} does not end in the sharp of {r.src.cod!r}; expected a target of shape F#"
        )
    if not is_composable_reference(pair, r):
        raise NotComposable(f"{r} is not a composable reference")
    shifted, label = shift_step(pair, r)
    return Derivation((DerivationStep("axiom", r), DerivationStep(label, shifted)))


def iterate_shift(pair: CategoricalPair, r: RefArrow, n: int) -> ShiftSequence:
    """Apply the shift up to n times, stopping early when it no longer applies."""
    if n < 1:
        raise ValueError("n must be at least 1")
    arrows: list[RefArrow] = []
    labels: list[str] = []
    current = r
    reason = None
    for _ in range(n):
        try:
            current, label = shift_step(pair, current)
        except NotComposable:
            reason = "not-composable"
            break
        except NoSharpGenerator:
            reason = "no-sharp-generator"
            break
        arrows.append(current)
        labels.append(label)
    return ShiftSequence(tuple(arrows), tuple(labels), reason)


def horizontal_compose(pair: CategoricalPair, alpha: RefArrow, beta: RefArrow) -> RefArrow:
    """(a -> b) o0 (d -> e) = (ad -> be); requires a two-category pair."""
    if not pair.is_two_category:
        raise NotTwoCategory("horizontal composition needs a pair flagged as a two-category")
    src = compose(pair.base, alpha.src, beta.src)
    dst = compose(pair.base, alpha.dst, beta.dst)
    return RefArrow(src, dst)


def vertical_compose(pair: CategoricalPair, gamma: RefArrow, alpha: RefArrow) -> RefArrow:
    """(b -> c) o1 (a -> b) = (a -> c)."""
    if not pair.base.words_equal(alpha.dst, gamma.src):
        raise EndpointMismatch(
            f"cannot compose vertically: {alpha} does not end where {gamma} begins"
        )
    return RefArrow(alpha.src, gamma.dst)


def check_interchange(
    pair: CategoricalPair,
    alpha: RefArrow,
    beta: RefArrow,
    gamma: RefArrow,
    delta: RefArrow,
) -> bool:
    """Compare (alpha o0 beta) o1 (gamma o0 delta) with (gamma o1 alpha) o0 (delta o1 beta)."""
    if not pair.is_two_category:
        raise NotTwoCategory("the interchange law lives in a two-category")
    base = pair.base
    if not base.words_equal(alpha.dst, gamma.src):
        raise EndpointMismatch("gamma does not vertically follow alpha")
    if not base.words_equal(beta.dst, delta.src):
        raise EndpointMismatch("delta does not vertically follow beta")
    top = horizontal_compose(pair, alpha, beta)
    bottom = horizontal_compose(pair, gamma, delta)
    lhs = vertical_compose(pair, bottom, top)
    rhs = horizontal_compose(
        pair, vertical_compose(pair, gamma, alpha), vertical_compose(pair, delta, beta)
    )
    return base.words_equal(lhs.src, rhs.src) and base.words_equal(lhs.dst, rhs.dst)


def category_from_digraph(
    nodes: Sequence[str],
    edges: Sequence[tuple[str, str, str]],
    rules: Sequence[RewriteRule] = (),
) -> CategoricalPair:
    """Free categorical pair on a directed graph.

    One object per node, one sharp self-morphism per node, one generator per
    edge (name, dom, cod); multiple edges and loops are allowed but edge
    names must be distinct.  The arrow set starts empty.
    """
    node_list = list(nodes)
    if len(set(node_list)) != len(node_list):
        raise InvalidDefinition("duplicate node names")
    gens: list[Generator] = []
    for node in node_list:
        sharp_name = "#" if len(node_list) == 1 else f"#{node}"
        gens.append(Generator(sharp_name, node, node, is_sharp=True))
    seen_edges = set()
    for name, dom, cod in edges:
        if dom not in node_list or cod not in node_list:
            raise DanglingEdge(f"edge {name}: {dom} -> {cod} has an endpoint outside the node set")
        if name in seen_edges:
            raise InvalidDefinition(f"duplicate edge name {name!r}")
        seen_edges.add(name)
        gens.append(Generator(name, dom, cod))
    cat = Category(frozenset(node_list), tuple(gens), tuple(rules))
    return CategoricalPair(cat)


def simplest_pair() -> CategoricalPair:
    """One object, one sharp generator; shifting (1_O -> 1_O) walks out #^k -> #^(k(k-1)/2)."""
    return category_from_digraph(["O"], [])


def next_simplest_pair() -> CategoricalPair:
    """One object with a sharp generator and one extra morphism F."""
    return category_from_digraph(["O"], [("F", "O", "O")])


def russell_pair() -> CategoricalPair:
    """One object with sharp, a predicate R, and negation ~; feed (R -> ~#) to srt1."""
    return category_from_digraph(["O"], [("R", "O", "O"), ("~", "O", "O")])


BUILTIN_PAIRS = {
    "simplest": simplest_pair,
    "next-simplest": next_simplest_pair,
    "russell": russell_pair,
}


def parse_arrow(pair: CategoricalPair, text: str) -> RefArrow:
    """Parse "SRC -> DST" where each side is a word spec for the base category."""
    if "->" not in text:
        raise InvalidDefinition(f"arrow spec {text!r} needs the form 'SRC -> DST'")
    left, right = text.split("->", 1)
    return RefArrow(pair.base.word(left.strip()), pair.base.word(right.strip()))


def load_pair_text(text: str) -> CategoricalPair:
    """Load a pair from the declarative text format.

    Directives (one per line, '#'-to-end-of-line comments are NOT supported
    because '#' names sharp generators; use ';' for comments):

        object NAME [NAME ...]
        generator NAME : DOM -> COD
        sharp NAME : OBJ
        rule TOK [TOK ...] => TOK [TOK ...]
        arrow WORD -> WORD
        flags [lambda] [two-category]
    """
    objects: list[str] = []
    gens: list[Generator] = []
    rule_specs: list[tuple[tuple[str, ...], tuple[str, ...]]] = []
    arrow_specs: list[str] = []
    lambda_flag = False
    two_cat_flag = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head == "object":
                objects.extend(rest.split())
            elif head == "generator":
                name, arrow_part = (s.strip() for s in rest.split(":", 1))
                dom, cod = (s.strip() for s in arrow_part.split("->", 1))
                gens.append(Generator(name, dom, cod))
            elif head == "sharp":
                name, obj = (s.strip() for s in rest.split(":", 1))
                gens.append(Generator(name, obj, obj, is_sharp=True))
            elif head == "rule":
                pat, repl = rest.split("=>", 1)
                rule_specs.append((tuple(pat.split()), tuple(repl.split())))
            elif head == "arrow":
                arrow_specs.append(rest)
            elif head == "flags":
                for flag in rest.split():
                    if flag in ("lambda", "lambda-pair"):
                        lambda_flag = True
                    elif flag in ("two-category", "two_category"):
                        two_cat_flag = True
                    else:
                        raise InvalidDefinition(f"unknown flag {flag!r}")
            else:
                raise InvalidDefinition(f"unknown directive {head!r}")
        except ValueError as exc:
            raise InvalidDefinition(f"line {lineno}: cannot parse {line!r}") from exc

    names = [g.name for g in gens]
    if len(set(names)) != len(names):
        raise InvalidDefinition("generator names in a pair file must be unique")
    rules = tuple(RewriteRule(p, r) for p, r in rule_specs)
    cat = Category(frozenset(objects), tuple(gens), rules)
    for rule in rules:
        for tok in rule.pattern + rule.replacement:
            if not tok.startswith("?") and tok != "1":
                cat.generator(tok)  # raises on unknown names
    pair = CategoricalPair(cat, is_lambda_pair=lambda_flag, two_category=two_cat_flag)
    arrows = tuple(parse_arrow(pair, spec) for spec in arrow_specs)
    return replace(pair, arrows=arrows)


def load_pair(path) -> CategoricalPair:
    with open(path, "r", encoding="utf-8") as fh:
        return load_pair_text(fh.read())
