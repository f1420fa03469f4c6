"""Cube conditions and cancellativity certificates.

The right cube condition for a triple (u, v, w) reverses u^-1 w w^-1 v; on a
terminal outcome (v', u') it then reverses (u v')^-1 (v u') and passes only
if that second word vanishes.  The left condition mirrors this:
v w^-1 w u^-1 first, then (u' v)(v' u)^-1.

For a homogeneous presentation that is complemented on a side, the cube
condition on all generator triples makes reversing on that side a complete
equality test and yields cancellativity on the matching side.  With a
Z-indexed family the triple set is infinite, so certificates are bounded:
relations are translation-invariant in the family index, which lets every
triple be normalised to smallest family index 0, and a bound B covers all
normalised triples with indices up to 2B.

A triple that gets stuck in the first reversal counts as a failure (the
hypothesis word itself has no common multiple witness), and fuel exhaustion
anywhere makes the certificate undetermined rather than falsified.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .presentation import Presentation, check_complemented
from .reversing import (
    DEFAULT_FUEL,
    Diverged,
    Empty,
    ReversalTrace,
    Stuck,
    Terminal,
    left_reverse,
    right_reverse,
)
from .words import EPSILON, Generator, Letter, Word, invert_word


@dataclass(frozen=True)
class CubeResult:
    triple: tuple[Word, Word, Word]
    side: str
    status: str  # "pass" | "fail" | "inconclusive"
    reason: str
    first: ReversalTrace
    second: ReversalTrace | None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def cube_condition(p: Presentation, u: Word, v: Word, w: Word,
                   side: str = "right", fuel: int = DEFAULT_FUEL) -> CubeResult:
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    for word in (u, v, w):
        if not word.is_positive():
            raise ValueError("cube condition expects positive words")
    triple = (u, v, w)
    if side == "right":
        first = right_reverse(p, invert_word(u) * w * invert_word(w) * v, fuel)
    else:
        first = left_reverse(p, v * invert_word(w) * w * invert_word(u), fuel)
    out = first.outcome
    if isinstance(out, Diverged):
        return CubeResult(triple, side, "inconclusive", "first reversal ran out of fuel",
                          first, None)
    if isinstance(out, Stuck):
        return CubeResult(triple, side, "fail", "stuck-hypothesis", first, None)
    vp, up = (out.v_prime, out.u_prime) if isinstance(out, Terminal) else (EPSILON, EPSILON)
    if side == "right":
        second = right_reverse(p, invert_word(u * vp) * (v * up), fuel)
    else:
        second = left_reverse(p, (up * v) * invert_word(vp * u), fuel)
    out2 = second.outcome
    if isinstance(out2, Empty):
        return CubeResult(triple, side, "pass", "ok", first, second)
    if isinstance(out2, Diverged):
        return CubeResult(triple, side, "inconclusive", "second reversal ran out of fuel",
                          first, second)
    if isinstance(out2, Stuck):
        return CubeResult(triple, side, "fail", "stuck", first, second)
    return CubeResult(triple, side, "fail", "not-trivial", first, second)


def enumerate_generator_triples(p: Presentation, t_bound: int = 3) -> list[tuple[Generator, Generator, Generator]]:
    """Ordered generator triples, normalised in the integer families.

    Integer-family indices run over [0, 2*t_bound] and any triple that
    mentions the family must attain index 0, so each class of triples under
    index translation is enumerated exactly once.
    """
    if t_bound < 0:
        raise ValueError("t_bound must be >= 0")
    gens = list(p.alphabet.finite_generators())
    for fam in sorted(p.alphabet.integer_families):
        gens.extend(Generator(fam, d) for d in range(0, 2 * t_bound + 1))
    gens.sort()
    fams = p.alphabet.integer_families
    out = []
    for triple in itertools.product(gens, repeat=3):
        indices = [g.index for g in triple if g.family in fams]
        if indices and min(indices) != 0:
            continue
        out.append(triple)
    return out


def enumerate_word_triples(p: Presentation, max_len: int,
                           t_bound: int = 3) -> list[tuple[Word, Word, Word]]:
    """Ordered triples of positive words up to max_len, index-normalised.

    The cube condition quantifies over word triples; for homogeneous
    presentations generator triples suffice, this is the exhaustive
    fallback.  Normalisation shifts the smallest integer-family index
    across the whole triple to 0.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    gens = list(p.alphabet.finite_generators())
    for fam in sorted(p.alphabet.integer_families):
        gens.extend(Generator(fam, d) for d in range(0, 2 * t_bound + 1))
    gens.sort()
    fams = p.alphabet.integer_families
    words = [Word(tuple(Letter(g) for g in combo))
             for length in range(1, max_len + 1)
             for combo in itertools.product(gens, repeat=length)]
    out = []
    for triple in itertools.product(words, repeat=3):
        indices = [l.gen.index for w in triple for l in w if l.gen.family in fams]
        if indices and min(indices) != 0:
            continue
        out.append(triple)
    return out


@dataclass(frozen=True)
class Certificate:
    presentation: str
    claim: str  # "cancellative-up-to" | "complete-up-to" | "falsified" | "refused" | "undetermined"
    t_bound: int
    fuel: int
    triples_checked: int
    failures: tuple[tuple[str, tuple[str, str, str], str], ...]
    refusal: str | None
    tool_version: str

    @property
    def established(self) -> bool:
        return self.claim in ("cancellative-up-to", "complete-up-to",
                              "right-complete-up-to", "left-complete-up-to")

    def to_json(self) -> str:
        data = {
            "presentation": self.presentation,
            "claim": self.claim,
            "t_bound": self.t_bound,
            "fuel": self.fuel,
            "triples_checked": self.triples_checked,
            "failures": [
                {"side": side, "triple": list(triple), "reason": reason}
                for side, triple, reason in self.failures
            ],
            "refusal": self.refusal,
            "tool_version": self.tool_version,
        }
        return json.dumps(data, indent=2)


def _tool_version() -> str:
    from . import __version__

    return __version__


def certify(p: Presentation, t_bound: int = 3, fuel: int = DEFAULT_FUEL,
            goal: str = "cancellative", word_len: int | None = None) -> Certificate:
    """Run the bounded cube check and package the outcome.

    The goal picks the claim when everything passes on both sides:
    "cancellative" yields cancellative-up-to, "complete" stops at
    complete-up-to.  With only one complemented side the claim is the
    side-qualified right-/left-complete-up-to either way.  Any cube failure
    falsifies, fuel exhaustion without failure is undetermined, and a
    missing precondition (inhomogeneity or a complement conflict on both
    sides) refuses the check outright.

    word_len switches from generator triples to all word triples up to
    that length.  That is the only mode accepted for non-homogeneous
    presentations (the generator reduction needs homogeneity), and there
    the claim tops out at complete-up-to: without homogeneity,
    completeness alone does not buy cancellation.
    """
    if goal not in ("cancellative", "complete"):
        raise ValueError(f"goal must be 'cancellative' or 'complete', got {goal!r}")

    def refused(reason: str) -> Certificate:
        return Certificate(p.name, "refused", t_bound, fuel, 0, (), reason, _tool_version())

    if not p.homogeneous and word_len is None:
        return refused("presentation is not homogeneous, the generator-triple "
                       "reduction does not apply; rerun with a word length")
    right_rep, left_rep = check_complemented(p)
    sides = [side for side, rep in (("right", right_rep), ("left", left_rep))
             if rep.verdict == "complemented"]
    if not sides:
        pair, _ = right_rep.conflicts[0]
        return refused(
            f"not complemented on either side; e.g. generators ({pair[0]}, {pair[1]}) "
            "head more than one relation"
        )
    if word_len is None:
        triples = [(Word((Letter(a),)), Word((Letter(b),)), Word((Letter(c),)))
                   for a, b, c in enumerate_generator_triples(p, t_bound)]
    else:
        triples = enumerate_word_triples(p, word_len, t_bound)
    failures = []
    inconclusive = 0
    for side in sides:
        for u, v, w in triples:
            res = cube_condition(p, u, v, w, side=side, fuel=fuel)
            if res.status == "fail":
                failures.append((side, (str(u), str(v), str(w)), res.reason))
            elif res.status == "inconclusive":
                inconclusive += 1
    refusal = None
    if failures:
        claim = "falsified"
    elif inconclusive:
        claim = "undetermined"
        refusal = f"{inconclusive} cube checks ran out of fuel"
    elif not p.homogeneous:
        claim = "complete-up-to" if len(sides) == 2 else f"{sides[0]}-complete-up-to"
        refusal = "not homogeneous, completeness does not imply cancellativity here"
    elif len(sides) == 2:
        claim = "cancellative-up-to" if goal == "cancellative" else "complete-up-to"
    else:
        claim = f"{sides[0]}-complete-up-to"
        missing = "left" if "right" in sides else "right"
        refusal = f"{missing} side not complemented, claim restricted to {sides[0]} reversing"
    return Certificate(p.name, claim, t_bound, fuel, len(triples), tuple(failures),
                       refusal, _tool_version())


def certify_complete(p: Presentation, t_bound: int = 3,
                     fuel: int = DEFAULT_FUEL) -> Certificate:
    """Bounded completeness certificate: both-side cube checks only."""
    return certify(p, t_bound, fuel, goal="complete")


def certify_cancellative(p: Presentation, t_bound: int = 3,
                         fuel: int = DEFAULT_FUEL) -> Certificate:
    """Full chain: homogeneity, complementedness, then bounded cubes."""
    return certify(p, t_bound, fuel, goal="cancellative")
