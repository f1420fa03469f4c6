"""Step-by-step derivations and the translation-family substitution.

A derivation script replays an equality between words one rewrite at a
time, so a claimed consequence of the relations can be checked mechanically.
The text form is line-oriented:

    # optional comments
    presentation: d4:new
    start: t(1) t(0) s1 t(1) t(0) s1
    expect: s1 t(1) t(0) s1 t(1) t(0)
    rel translation i=2,j=1 rl @0
    rel t_braid i=1,j=1 lr @1
    cancel @4
    insert s1 @0

`rel` applies a bound schema instance at a position, reading it left-to-right
(lr: replace the left side by the right) or right-to-left (rl).  `cancel`
deletes an adjacent inverse pair and `insert` introduces one, which lets
scripts walk through group-level manipulations as well as positive ones.

The substitution half expresses every t(i) as a word in t(0) and t(1) alone:
conjugated alternating words for i >= 2, and the downward unfolding
t(i) = t(i+1)^-1 t(1) t(0) below zero.  verify_translation_product checks
the defining products collapse freely to t(1) t(0).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .presentation import Presentation
from .reversing import DEFAULT_FUEL, Empty, right_reverse
from .words import Generator, Letter, Word, free_reduce, invert_word, parse_letter, shift_word


class DerivationError(ValueError):
    """A script step that does not apply to the current word."""


@dataclass(frozen=True, slots=True)
class RelationStep:
    schema: str
    bindings: tuple[tuple[str, int], ...]
    direction: str  # "lr" | "rl"
    position: int


@dataclass(frozen=True, slots=True)
class CancelStep:
    position: int


@dataclass(frozen=True, slots=True)
class InsertStep:
    letter: Letter
    position: int


DerivationStep = Union[RelationStep, CancelStep, InsertStep]


@dataclass(frozen=True)
class DerivationScript:
    presentation: str
    start: Word
    expect: Word
    steps: tuple[DerivationStep, ...]


@dataclass(frozen=True)
class ScriptResult:
    ok: bool
    intermediates: tuple[Word, ...]
    failed_at: int | None
    error: str | None

    @property
    def final(self) -> Word:
        return self.intermediates[-1]


def apply_step(p: Presentation, word: Word, step: DerivationStep) -> Word:
    letters = list(word.letters)
    if isinstance(step, CancelStep):
        i = step.position
        if i < 0 or i + 1 >= len(letters):
            raise DerivationError(f"cancel @{i}: position out of range")
        if letters[i + 1] != letters[i].inverse():
            raise DerivationError(
                f"cancel @{i}: {letters[i]} {letters[i + 1]} is not an inverse pair"
            )
        return Word(tuple(letters[:i] + letters[i + 2:]))
    if isinstance(step, InsertStep):
        i = step.position
        if i < 0 or i > len(letters):
            raise DerivationError(f"insert @{i}: position out of range")
        return Word(tuple(letters[:i] + [step.letter, step.letter.inverse()] + letters[i:]))
    schema = p.schema(step.schema)
    inst = schema.instantiate(dict(step.bindings))
    if inst is None:
        raise DerivationError(f"rel {step.schema}: bindings give a degenerate instance")
    pattern, replacement = (inst.lhs, inst.rhs) if step.direction == "lr" else (inst.rhs, inst.lhs)
    i = step.position
    if i < 0 or i + len(pattern) > len(letters):
        raise DerivationError(f"rel {step.schema} @{i}: position out of range")
    window = Word(tuple(letters[i:i + len(pattern)]))
    if window != pattern:
        raise DerivationError(
            f"rel {step.schema} @{i}: expected {pattern} in the word, found {window}"
        )
    return Word(tuple(letters[:i] + list(replacement.letters) + letters[i + len(pattern):]))


def verify_script(p: Presentation, script: DerivationScript) -> ScriptResult:
    words = [script.start]
    for k, step in enumerate(script.steps):
        try:
            words.append(apply_step(p, words[-1], step))
        except DerivationError as exc:
            return ScriptResult(False, tuple(words), k, str(exc))
    if words[-1] != script.expect:
        return ScriptResult(False, tuple(words), None,
                            f"final word {words[-1]} differs from expected {script.expect}")
    return ScriptResult(True, tuple(words), None, None)


_REL_RE = re.compile(r"rel\s+(\S+)(?:\s+([a-z]=-?\d+(?:,[a-z]=-?\d+)*))?\s+(lr|rl)\s+@(\d+)\Z")
_CANCEL_RE = re.compile(r"cancel\s+@(\d+)\Z")
_INSERT_RE = re.compile(r"insert\s+(\S+)\s+@(\d+)\Z")


def parse_script(text: str, p: Presentation | None = None) -> DerivationScript:
    """Parse the line format; loads the named catalog entry unless one is given."""
    header: dict[str, str] = {}
    body: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if sep and not body and key in ("presentation", "start", "expect"):
            if key in header:
                raise DerivationError(f"duplicate {key!r} line")
            header[key] = value.strip()
            continue
        body.append(line)
    for key in ("presentation", "start", "expect"):
        if key not in header:
            raise DerivationError(f"script lacks a {key!r} line")
    if p is None:
        from . import catalog

        p = catalog.load(header["presentation"])
    steps: list[DerivationStep] = []
    for line in body:
        m = _REL_RE.match(line)
        if m is not None:
            name, raw_bindings, direction, pos = m.groups()
            bindings = []
            if raw_bindings:
                for part in raw_bindings.split(","):
                    pname, _, pval = part.partition("=")
                    bindings.append((pname, int(pval)))
            steps.append(RelationStep(name, tuple(bindings), direction, int(pos)))
            continue
        m = _CANCEL_RE.match(line)
        if m is not None:
            steps.append(CancelStep(int(m.group(1))))
            continue
        m = _INSERT_RE.match(line)
        if m is not None:
            steps.append(InsertStep(parse_letter(m.group(1), p.alphabet), int(m.group(2))))
            continue
        raise DerivationError(f"unrecognised script line {line!r}")
    start = p.parse(header["start"])
    expect = p.parse(header["expect"])
    return DerivationScript(header["presentation"], start, expect, tuple(steps))


def format_script(script: DerivationScript) -> str:
    lines = [
        f"presentation: {script.presentation}",
        f"start: {script.start}",
        f"expect: {script.expect}",
    ]
    for step in script.steps:
        if isinstance(step, RelationStep):
            parts = ["rel", step.schema]
            if step.bindings:
                parts.append(",".join(f"{k}={v}" for k, v in step.bindings))
            parts.append(step.direction)
            parts.append(f"@{step.position}")
            lines.append(" ".join(parts))
        elif isinstance(step, CancelStep):
            lines.append(f"cancel @{step.position}")
        else:
            lines.append(f"insert {step.letter} @{step.position}")
    return "\n".join(lines) + "\n"


def shift_script(p: Presentation, script: DerivationScript, k: int,
                 family: str = "t") -> DerivationScript:
    """Translate every family index in the script by k.

    Relation steps shift only bindings of Z-ranged parameters over the
    family, so the result replays the same derivation k levels up.
    """
    steps: list[DerivationStep] = []
    for step in script.steps:
        if isinstance(step, RelationStep):
            schema = p.schema(step.schema)
            shiftable = {pp.name for pp in schema.params
                         if pp.values is None and schema.param_family(pp.name) == family}
            bindings = tuple((name, value + k if name in shiftable else value)
                             for name, value in step.bindings)
            steps.append(RelationStep(step.schema, bindings, step.direction, step.position))
        elif isinstance(step, InsertStep):
            letter = step.letter
            if letter.gen.family == family:
                letter = Letter(Generator(family, letter.gen.index + k), letter.sign)
            steps.append(InsertStep(letter, step.position))
        else:
            steps.append(step)
    return DerivationScript(script.presentation,
                            shift_word(script.start, k, family),
                            shift_word(script.expect, k, family),
                            tuple(steps))


# -- expressing t(i) through t(0) and t(1) --------------------------------

_T0 = Word((Letter(Generator("t", 0)),))
_T1 = Word((Letter(Generator("t", 1)),))


@lru_cache(maxsize=None)
def t_expression(i: int) -> Word:
    """t(i) as a freely reduced word in t(0), t(1).

    For i >= 2 this is the conjugate P c P^-1 with P the alternating word
    t(1) t(0) t(1) ... of length i-1 and c the opposite letter; below zero
    the defining product is unfolded downward.  Lengths are 2i-1 for i >= 1
    and 2|i|+1 for i <= 0.
    """
    if i in (0, 1):
        return _T0 if i == 0 else _T1
    if i >= 2:
        prefix = Word(tuple(Letter(Generator("t", 1 - j % 2)) for j in range(i - 1)))
        centre = _T1 if i % 2 else _T0
        return prefix * centre * invert_word(prefix)
    # t(i) = t(i+1)^-1 t(1) t(0)
    return free_reduce(invert_word(t_expression(i + 1)) * _T1 * _T0)


def substitute_t(word: Word, family: str = "t") -> Word:
    """Replace each t(i) letter by its expression and freely reduce."""
    out: list[Letter] = []
    for letter in word:
        if letter.gen.family != family:
            out.append(letter)
            continue
        expr = t_expression(letter.gen.index)
        out.extend(expr.letters if letter.sign > 0 else invert_word(expr).letters)
    return free_reduce(Word(tuple(out)))


def verify_translation_product(i: int) -> bool:
    """Does t(i) t(i-1) collapse freely to t(1) t(0) after substitution?"""
    return free_reduce(t_expression(i) * t_expression(i - 1)) == _T1 * _T0


def verify_positive_equality(p: Presentation, u: Word, v: Word,
                             fuel: int = DEFAULT_FUEL) -> bool:
    """Equality certificate for positive words via right reversing.

    Only trustworthy as a negative answer when reversing is complete for p.
    """
    if not (u.is_positive() and v.is_positive()):
        raise ValueError("expected positive words")
    trace = right_reverse(p, invert_word(u) * v, fuel)
    return isinstance(trace.outcome, Empty)
