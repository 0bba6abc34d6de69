"""A seven-symbol formal language with decimal Goedel coding.

Symbols ( ) ~ P x | # map to digits 1..7; the code of a formula is the
digit string of its symbols read in decimal.  Substituting a number g into
the variable x replaces it with a run of g vertical slashes, so at the digit
level every 5 becomes a run of value(g) sixes.  Those runs reach hundreds of
thousands of digits, so both formulas and numbers are stored run-length
encoded: a sequence of (symbol, count) / (digit, count) runs with adjacent
runs distinct.  Counts are ordinary Python integers; nothing is ever
expanded to unary, and digit strings are only materialized on demand.

The sharp operation is self-substitution: sharp(g) composes g with itself,
giving the code of the decoded formula applied to its own numeral.  Applied
to the code of ~P(#x) this produces a formula that talks about its own code.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from typing import Iterable, Union

from .core import Derivation, DerivationStep
from .errors import (
    EmptyFormula,
    InvalidAxiom,
    InvalidSymbol,
    MaterializeTooLarge,
    NoFreeVariable,
    NotComposable,
    NotSrt1Shape,
)

ALPHABET = "()~Px|#"
CHAR_TO_DIGIT = {ch: i + 1 for i, ch in enumerate(ALPHABET)}
DIGIT_TO_CHAR = {i + 1: ch for i, ch in enumerate(ALPHABET)}

_MATERIALIZE_CAP = 10**6


def _int_str(n: int) -> str:
    """Decimal text of n, bypassing the interpreter's digit-count guard.

    Run counts produced by self-substitution can have tens of thousands of
    digits; they stay single integers here, but printing one trips the
    default conversion limit, so lift it just for the conversion.
    """
    try:
        return str(n)
    except ValueError:
        limit = sys.get_int_max_str_digits()
        sys.set_int_max_str_digits(0)
        try:
            return str(n)
        finally:
            sys.set_int_max_str_digits(limit)


def _merge_runs(runs):
    """Fuse adjacent runs with equal keys; drops nothing, counts stay >= 1."""
    out = []
    for key, count in runs:
        if count < 1:
            raise InvalidSymbol(f"run count must be >= 1, got {count}")
        if out and out[-1][0] == key:
            out[-1] = (key, out[-1][1] + count)
        else:
            out.append((key, count))
    return tuple(out)


@dataclass(frozen=True)
class Token:
    """One lexical token; only slash runs carry a count above 1."""

    kind: str  # a character of the alphabet
    count: int = 1


@dataclass(frozen=True)
class Formula:
    """A run-length encoded string over the seven-symbol alphabet."""

    runs: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "runs", tuple(tuple(r) for r in self.runs))
        for ch, count in self.runs:
            if ch not in CHAR_TO_DIGIT:
                raise InvalidSymbol(f"symbol {ch!r} is not in the alphabet {ALPHABET}")
            if count < 1:
                raise InvalidSymbol(f"run count must be >= 1, got {count}")
        for (a, _), (b, _) in zip(self.runs, self.runs[1:]):
            if a == b:
                raise InvalidSymbol("runs must be maximal: adjacent runs share a symbol")

    @classmethod
    def from_runs(cls, runs) -> "Formula":
        return cls(_merge_runs(runs))

    @property
    def length(self) -> int:
        return sum(count for _, count in self.runs)

    @property
    def has_var(self) -> bool:
        return any(ch == "x" for ch, _ in self.runs)

    @property
    def var_count(self) -> int:
        return sum(count for ch, count in self.runs if ch == "x")

    @property
    def is_numeral(self) -> bool:
        return len(self.runs) == 1 and self.runs[0][0] == "|"

    def tokens(self) -> list[Token]:
        out = []
        for ch, count in self.runs:
            if ch == "|":
                out.append(Token(ch, count))
            else:
                out.extend(Token(ch) for _ in range(count))
        return out

    def text(self, cap: int = _MATERIALIZE_CAP) -> str:
        if self.length > cap:
            raise MaterializeTooLarge(f"formula has {self.length} symbols, cap is {cap}")
        return "".join(ch * count for ch, count in self.runs)

    def __str__(self):
        pieces = []
        for ch, count in self.runs:
            pieces.append(ch * count if count <= 3 else f"{ch}^{_int_str(count)}")
        return "".join(pieces)


def parse(text: str) -> Formula:
    """Tokenize plain alphabet text; every alphabet string is a formula."""
    for ch in text:
        if ch not in CHAR_TO_DIGIT:
            raise InvalidSymbol(f"symbol {ch!r} is not in the alphabet {ALPHABET}")
    return Formula(tuple((ch, len(list(grp))) for ch, grp in itertools.groupby(text)))


def parse_compact(text: str) -> Formula:
    """Parse display text that may compress runs as in "~P(#|^341752)"."""
    runs: list[tuple[str, int]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch not in CHAR_TO_DIGIT:
            raise InvalidSymbol(f"symbol {ch!r} is not in the alphabet {ALPHABET}")
        i += 1
        if i < len(text) and text[i] == "^":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise InvalidSymbol("'^' must be followed by a count")
            runs.append((ch, int(text[i + 1 : j])))
            i = j
        else:
            runs.append((ch, 1))
    return Formula.from_runs(runs)


def numeral(n: int) -> Formula:
    """The in-language number n: a run of n slashes."""
    if n < 1:
        raise EmptyFormula("numerals start at 1; zero has no slash representation")
    return Formula((("|", n),))


@dataclass(frozen=True)
class GodelNumber:
    """A decimal number over digits 1..7, run-length encoded."""

    runs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "runs", tuple(tuple(r) for r in self.runs))
        if not self.runs:
            raise InvalidSymbol("a Goedel number has at least one digit")
        for digit, count in self.runs:
            if digit not in DIGIT_TO_CHAR:
                raise InvalidSymbol(f"digit {digit} is outside the coding range 1-7")
            if count < 1:
                raise InvalidSymbol(f"run count must be >= 1, got {count}")
        for (a, _), (b, _) in zip(self.runs, self.runs[1:]):
            if a == b:
                raise InvalidSymbol("runs must be maximal: adjacent runs share a digit")

    @classmethod
    def from_runs(cls, runs) -> "GodelNumber":
        return cls(_merge_runs(runs))

    @classmethod
    def from_int(cls, n: int) -> "GodelNumber":
        if n < 1:
            raise InvalidSymbol("Goedel numbers are positive")
        return cls.from_digits(str(n))

    @classmethod
    def from_digits(cls, digits: str) -> "GodelNumber":
        return cls(tuple((int(d), len(list(grp))) for d, grp in itertools.groupby(digits)))

    @classmethod
    def from_wire(cls, text: str) -> "GodelNumber":
        """Parse the wire format: whitespace-separated "dxN" runs or digit groups."""
        runs: list[tuple[int, int]] = []
        for tok in text.split():
            if "x" in tok:
                digit, _, count = tok.partition("x")
                if len(digit) != 1 or not digit.isdigit() or not count.isdigit():
                    raise InvalidSymbol(f"bad run token {tok!r}; expected dxN")
                runs.append((int(digit), int(count)))
            else:
                if not tok.isdigit():
                    raise InvalidSymbol(f"bad digit token {tok!r}")
                runs.extend((int(d), 1) for d in tok)
        if not runs:
            raise InvalidSymbol("empty number")
        return cls.from_runs(runs)

    @property
    def digit_length(self) -> int:
        return sum(count for _, count in self.runs)

    @property
    def has_five(self) -> bool:
        return any(d == 5 for d, _ in self.runs)

    def value(self) -> int:
        """The numeric value; cost grows with digit_length, so keep off hot paths."""
        v = 0
        for digit, count in self.runs:
            v = v * 10**count + digit * (10**count - 1) // 9
        return v

    def digits(self, cap: int = _MATERIALIZE_CAP) -> str:
        if self.digit_length > cap:
            raise MaterializeTooLarge(f"number has {self.digit_length} digits, cap is {cap}")
        return "".join(str(d) * count for d, count in self.runs)

    def wire(self) -> str:
        """Wire format: runs of one as grouped digits, longer runs as dxN ("341 6x34152 2")."""
        pieces = []
        singles = []
        for digit, count in self.runs:
            if count == 1:
                singles.append(str(digit))
            else:
                if singles:
                    pieces.append("".join(singles))
                    singles = []
                pieces.append(f"{digit}x{_int_str(count)}")
        if singles:
            pieces.append("".join(singles))
        return " ".join(pieces)

    def __str__(self):
        return self.wire()

    def __int__(self):
        return self.value()


def encode(f: Formula) -> GodelNumber:
    """Digit code of a nonempty formula; runs carry over one-for-one."""
    if not f.runs:
        raise EmptyFormula("the empty formula has no Goedel number")
    return GodelNumber(tuple((CHAR_TO_DIGIT[ch], count) for ch, count in f.runs))


def decode(g: GodelNumber) -> Formula:
    return Formula(tuple((DIGIT_TO_CHAR[d], count) for d, count in g.runs))


def compose_numbers(n: GodelNumber, m: GodelNumber) -> GodelNumber:
    """Replace every digit 5 in n by value(m) consecutive sixes.

    This is the digit-level image of substituting m's numeral for the
    variable; when n has no 5 the composition leaves n untouched.
    """
    if not n.has_five:
        return n
    count = m.value()
    runs = []
    for digit, k in n.runs:
        runs.append((6, k * count) if digit == 5 else (digit, k))
    return GodelNumber.from_runs(runs)


def sharp_decimal(g: GodelNumber) -> GodelNumber:
    """Self-substitution on digit strings: sharp(g) = g composed with itself."""
    return compose_numbers(g, g)


def substitute(s: Formula, t: Formula) -> Formula:
    """Replace every occurrence of the variable x in s by the formula t."""
    if not s.has_var:
        raise NoFreeVariable(f"{s} has no occurrence of the variable x")
    runs: list[tuple[str, int]] = []
    for ch, count in s.runs:
        if ch == "x":
            for _ in range(count):
                runs.extend(t.runs)
        else:
            runs.append((ch, count))
    if not runs:
        return Formula(())
    return Formula.from_runs(runs)


# --- the coding category: formulas, outside numbers, and the sharp operator ---


@dataclass(frozen=True)
class Fml:
    formula: Formula

    def __str__(self):
        return str(self.formula)


@dataclass(frozen=True)
class Num:
    number: GodelNumber

    def __str__(self):
        return self.number.wire()


@dataclass(frozen=True)
class SharpOp:
    def __str__(self):
        return "#"


SHARP = SharpOp()


@dataclass(frozen=True)
class FormalComposite:
    """A composition the language leaves unevaluated, kept flat for associativity."""

    parts: tuple["LMorphism", ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 2:
            raise InvalidSymbol("a formal composite has at least two factors")
        if any(isinstance(p, FormalComposite) for p in self.parts):
            raise InvalidSymbol("formal composites must be flattened")

    def __str__(self):
        return " o ".join(str(p) for p in self.parts)


LMorphism = Union[Fml, Num, SharpOp, FormalComposite]


def _numeral_code(f: Formula):
    """The slash count of a numeral as a GodelNumber, if its digits allow one."""
    count = f.runs[0][1]
    try:
        return GodelNumber.from_int(count)
    except InvalidSymbol:
        return None


def _compose_pair(a: LMorphism, b: LMorphism):
    """One defined composition step, or None when the pair stays formal."""
    if isinstance(a, Fml):
        if isinstance(b, Fml) and a.formula.has_var:
            return Fml(substitute(a.formula, b.formula))
        if isinstance(b, Num) and a.formula.has_var:
            return Fml(substitute(a.formula, numeral(b.number.value())))
        return None
    if isinstance(a, Num):
        if isinstance(b, Num) and a.number.has_five:
            return Num(compose_numbers(a.number, b.number))
        return None
    if isinstance(a, SharpOp):
        if isinstance(b, Num):
            return Num(sharp_decimal(b.number)) if b.number.has_five else None
        if isinstance(b, Fml) and b.formula.is_numeral:
            code = _numeral_code(b.formula)
            if code is not None and code.has_five:
                return Fml(numeral(sharp_decimal(code).value()))
        return None
    return None


def _flatten(m: LMorphism) -> tuple[LMorphism, ...]:
    return m.parts if isinstance(m, FormalComposite) else (m,)


def compose_morphisms(a: LMorphism, b: LMorphism) -> LMorphism:
    """Compose two morphisms of the coding category.

    Defined cases: substitution into a formula with a free variable (of a
    formula, numeral, or outside number), digit composition of numbers whose
    left factor has a 5, and sharp applied to such numbers or to numerals
    standing for them.  Everything else is a formal composite; composites
    are flattened and adjacent defined compositions are retried greedily, so
    associativity and reassociations like (S(x) o #) o g = S(#g) hold.
    """
    seq = list(_flatten(a) + _flatten(b))
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            result = _compose_pair(seq[i], seq[i + 1])
            if result is not None:
                seq[i : i + 2] = [result]
                changed = True
                break
    return seq[0] if len(seq) == 1 else FormalComposite(tuple(seq))


# --- reference arrows from numbers to the formulas they code ---


@dataclass(frozen=True)
class NumberArrow:
    """A reference from a code number to a formula of the language."""

    src: LMorphism
    dst: LMorphism

    def __str__(self):
        return f"{self.src} -> {self.dst}"


@dataclass(frozen=True)
class GodelPair:
    """Finite axiom arrows (code -> formula), closed under the shift."""

    axioms: tuple[NumberArrow, ...]

    def indicative_shift(self, arrow: NumberArrow) -> NumberArrow:
        """(g -> F) becomes (sharp g -> F with g's numeral substituted)."""
        if not isinstance(arrow.src, Num) or not isinstance(arrow.dst, Fml):
            raise NotComposable("the shift applies to (number -> formula) arrows")
        g = arrow.src.number
        if not g.has_five:
            raise NotComposable("the coded formula has no free variable, so no shift applies")
        return NumberArrow(Num(sharp_decimal(g)), compose_morphisms(arrow.dst, arrow.src))

    def srt1(self, arrow: NumberArrow) -> Derivation:
        """Shift an axiom whose formula mentions #x, yielding self-description."""
        if not isinstance(arrow.dst, Fml):
            raise NotSrt1Shape("expected a formula target")
        runs = arrow.dst.formula.runs
        if not any(a == "#" and b == "x" for (a, _), (b, _) in zip(runs, runs[1:])):
            raise NotSrt1Shape(f"{arrow.dst} does not apply # to its variable")
        shifted = self.indicative_shift(arrow)
        return Derivation((DerivationStep("axiom", arrow), DerivationStep("shift", shifted)))


def reference_pair(axioms: Iterable[tuple[GodelNumber, Formula]]) -> GodelPair:
    """Validate axiom arrows (number must code the formula) and build the pair."""
    checked = []
    for g, f in axioms:
        if encode(f) != g:
            raise InvalidAxiom(f"{g.wire()} is not the code of {f}")
        checked.append(NumberArrow(Num(g), Fml(f)))
    return GodelPair(tuple(checked))


SELF_REFUTER_SEED = 341752  # code of ~P(#x)


def build_self_refuter() -> tuple[GodelNumber, Formula]:
    """The formula asserting its own code's unprintability, with that code.

    Sharp the code of ~P(#x); decoding the result gives ~P(# |^341752),
    whose code is the very number that was decoded.  The round trip is
    verified on run-length form without materializing digits.
    """
    seed = GodelNumber.from_int(SELF_REFUTER_SEED)
    number = sharp_decimal(seed)
    formula = decode(number)
    if encode(formula) != number:
        raise AssertionError("self-refuter round trip failed")
    return number, formula
