"""The Smullyan printing machine as a categorical pair.

Strings over {~, P, R, [, ]} are classified by their leading marker; the
four marked shapes are read as assertions about what the machine can print:
PX about X, RX about XX, with ~ negating.  Each interpretable string gets a
reference arrow to the bracketed assertion it makes, and semantics is
evaluated against a finite printable set.  The string ~R~R asserts its own
unprintability, so a machine that only prints truths can never print it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Category, CategoricalPair, Derivation, DerivationStep, Generator, RefArrow, Word

ALPHABET = "~PR[]"

_OBJECT = "O"
_CATEGORY = Category(
    frozenset({_OBJECT}),
    tuple(Generator(ch, _OBJECT, _OBJECT) for ch in ALPHABET),
)


def smullyan_category() -> Category:
    """One object; one generator per alphabet symbol; composition is concatenation."""
    return _CATEGORY


def smullyan_pair() -> CategoricalPair:
    return CategoricalPair(_CATEGORY)


def word(s: str) -> Word:
    """The machine string s as a word of the Smullyan base category."""
    if not s:
        return Word.identity(_OBJECT)
    return _CATEGORY.word(list(s))


@dataclass(frozen=True)
class Classification:
    kind: str  # one of "P", "~P", "R", "~R"
    body: str  # the remainder X, possibly empty


@dataclass(frozen=True)
class MachineModel:
    """A machine identified with the finite set of strings it prints."""

    printable: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "printable", frozenset(self.printable))


def classify(s: str) -> Classification | None:
    """Longest-prefix classification; None when the string is not interpretable.

    ~P and ~R take precedence over bare ~, so "~~R" is not interpretable.
    """
    if s.startswith("~P"):
        return Classification("~P", s[2:])
    if s.startswith("~R"):
        return Classification("~R", s[2:])
    if s.startswith("P"):
        return Classification("P", s[1:])
    if s.startswith("R"):
        return Classification("R", s[1:])
    return None


def assertion_of(c: Classification) -> tuple[str, bool]:
    """The string whose printability the classified string asserts.

    Returns (subject, asserted_printable): P/~P talk about X itself, R/~R
    about the doubling XX; the ~ forms assert unprintability.
    """
    subject = c.body if c.kind in ("P", "~P") else c.body + c.body
    return subject, not c.kind.startswith("~")


def reference_arrow(s: str) -> RefArrow | None:
    """The rule arrow for an interpretable string, e.g. RX -> P[XX]; else None."""
    c = classify(s)
    if c is None:
        return None
    subject, positive = assertion_of(c)
    prefix = "P" if positive else "~P"
    return RefArrow(word(s), word(f"{prefix}[{subject}]"))


def semantics(s: str, m: MachineModel) -> bool | None:
    """Truth of s against the machine model; None when s has no meaning."""
    c = classify(s)
    if c is None:
        return None
    subject, positive = assertion_of(c)
    return (subject in m.printable) == positive


def truthfulness_violations(m: MachineModel) -> frozenset[str]:
    """Printed interpretable strings that are false under the model itself."""
    return frozenset(s for s in m.printable if semantics(s, m) is False)


def make_truthful(m: MachineModel) -> MachineModel:
    """Shrink a model to a truthful one by discarding printed falsehoods.

    Removal can falsify further printed claims, so iterate to a fixed point;
    the printable set only shrinks, so this terminates.
    """
    printable = set(m.printable)
    while True:
        bad = truthfulness_violations(MachineModel(frozenset(printable)))
        if not bad:
            return MachineModel(frozenset(printable))
        printable -= bad


SELF_REFUTER = "~R~R"


def goedel_miniature_report() -> Derivation:
    """The truth-but-unprintability argument for ~R~R as a checked derivation.

    Each step re-verifies its claim concretely before it is recorded: the
    one-string model exhibits the violation, and the empty model (like every
    model that omits ~R~R) makes the string true.
    """
    arrow = reference_arrow(SELF_REFUTER)
    assert arrow is not None
    if truthfulness_violations(MachineModel(frozenset({SELF_REFUTER}))) != frozenset({SELF_REFUTER}):
        raise AssertionError("~R~R failed to witness its own violation")
    if semantics(SELF_REFUTER, MachineModel(frozenset())) is not True:
        raise AssertionError("~R~R failed to come out true when unprinted")
    steps = (
        DerivationStep("axiom", arrow, "printing ~R~R asserts that ~R~R is not printable"),
        DerivationStep(
            "violation",
            arrow,
            "a machine whose printable set contains ~R~R prints a falsehood, witness ~R~R",
        ),
        DerivationStep("unprintable", arrow, "hence a truthful machine never prints ~R~R"),
        DerivationStep(
            "true",
            arrow,
            "every truthful machine omits ~R~R, so ~R~R is true but unprintable",
        ),
    )
    return Derivation(steps)
