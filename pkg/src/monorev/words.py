"""Signed words over alphabets mixing finite and integer-indexed generator families.

A generator is a (family, index) pair such as s3 or t(-1).  A letter is a
generator with a sign, and a word is a finite sequence of letters.  Words are
immutable values: every operation returns a new word.

The token grammar, used by both the parser and the formatter:

    word   := (letter SP)* letter | ""
    letter := atom ("^-1")?
    atom   := family "(" int ")" | family digit
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

# Families that conventionally range over all integers are always written in
# the parenthesized form, even for single-digit indices.
PAREN_FAMILIES = frozenset({"t"})


class WordSyntaxError(ValueError):
    """Raised for tokens that do not match the letter grammar."""


class UnknownGeneratorError(ValueError):
    """Raised for letters whose generator is not in the alphabet."""


@dataclass(frozen=True, order=True, slots=True)
class Generator:
    family: str
    index: int

    def __str__(self) -> str:
        if self.family not in PAREN_FAMILIES and 0 <= self.index <= 9:
            return f"{self.family}{self.index}"
        return f"{self.family}({self.index})"


@dataclass(frozen=True, order=True, slots=True)
class Letter:
    gen: Generator
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {self.sign!r}")

    def inverse(self) -> Letter:
        return Letter(self.gen, -self.sign)

    def __str__(self) -> str:
        return str(self.gen) + ("^-1" if self.sign < 0 else "")


@dataclass(frozen=True, slots=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __str__(self) -> str:
        return format_word(self)

    def is_positive(self) -> bool:
        return all(l.sign > 0 for l in self.letters)

    def inverse(self) -> "Word":
        return Word(tuple(l.inverse() for l in reversed(self.letters)))

    def reversed(self) -> "Word":
        """Letters in the opposite order, signs untouched (the mirror word)."""
        return Word(tuple(reversed(self.letters)))


EPSILON = Word()


def word_of(*letters: Letter) -> Word:
    return Word(tuple(letters))


@dataclass(slots=True)
class Alphabet:
    """Generator inventory of a presentation.

    finite maps a family name to the tuple of admissible indices;
    integer_families names the families indexed over all of Z.
    """

    finite: dict[str, tuple[int, ...]] = field(default_factory=dict)
    integer_families: frozenset[str] = frozenset()

    def __contains__(self, gen: Generator) -> bool:
        if gen.family in self.integer_families:
            return True
        return gen.index in self.finite.get(gen.family, ())

    def families(self) -> list[str]:
        return sorted(set(self.finite) | self.integer_families)

    def finite_generators(self) -> list[Generator]:
        return [
            Generator(fam, i)
            for fam in sorted(self.finite)
            for i in sorted(self.finite[fam])
        ]

    def require(self, gen: Generator) -> None:
        if gen.family not in self.finite and gen.family not in self.integer_families:
            raise UnknownGeneratorError(f"unknown generator family {gen.family!r}")
        if gen not in self:
            raise UnknownGeneratorError(
                f"index {gen.index} outside the range of family {gen.family!r}"
            )


_LETTER_RE = re.compile(r"([A-Za-z]+)(?:\((-?\d+)\)|(\d))(\^-1)?\Z")


def parse_letter(token: str, alphabet: Alphabet) -> Letter:
    m = _LETTER_RE.match(token)
    if m is None:
        raise WordSyntaxError(f"malformed letter token {token!r}")
    family, paren_index, digit_index, inv = m.groups()
    index = int(paren_index if paren_index is not None else digit_index)
    gen = Generator(family, index)
    alphabet.require(gen)
    return Letter(gen, -1 if inv else 1)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    return Word(tuple(parse_letter(tok, alphabet) for tok in text.split()))


def format_word(w: Word) -> str:
    return " ".join(str(l) for l in w)


def invert_word(w: Word) -> Word:
    return w.inverse()


def free_reduce(w: Word) -> Word:
    """Delete adjacent mutually inverse letters until none remain.

    Single left-to-right stack scan; the result is independent of deletion
    order, so this is the canonical free reduction.
    """
    stack: list[Letter] = []
    for letter in w:
        if stack and stack[-1].gen == letter.gen and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack))


def shift_word(w: Word, k: int, family: str = "t") -> Word:
    """Translate every index of the given family by k, fixing other letters."""
    return Word(
        tuple(
            Letter(Generator(l.gen.family, l.gen.index + k), l.sign)
            if l.gen.family == family
            else l
            for l in w
        )
    )
