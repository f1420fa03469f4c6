"""Positive presentations with finitely many relation schemas.

A schema is a pair of positive pattern words whose letters may carry a single
integer parameter with a constant offset, for example

    translation:  t(i) t(i-1) = t(j) t(j-1)

Binding the parameters yields relation instances.  A schema with no parameters
is an ordinary fixed relation.  Schemas answer pair-indexed queries (all
instances whose sides begin, or end, with a given ordered generator pair)
without ever enumerating the infinite instance family, which is what makes
word reversing over Z-indexed alphabets possible.

Relations are unordered pairs of words; instances returned by queries are
oriented so that the left side starts (or ends) with the first generator of
the queried pair.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .words import (
    Alphabet,
    Generator,
    Letter,
    Word,
    WordSyntaxError,
    format_word,
    parse_word,
)


class SchemaError(ValueError):
    """Raised for schemas that cannot support pair-indexed lookup."""


class AmbiguousComplementError(ValueError):
    """Raised when a complement query hits more than one relation."""

    def __init__(self, pair: tuple[Generator, Generator], instances: list["RelationInstance"]):
        self.pair = pair
        self.instances = instances
        listed = "; ".join(str(r) for r in instances)
        super().__init__(
            f"pair ({pair[0]}, {pair[1]}) is related by more than one relation: {listed}"
        )


@dataclass(frozen=True, slots=True)
class RelationInstance:
    lhs: Word
    rhs: Word
    schema: str
    bindings: tuple[tuple[str, int], ...] = ()

    def swapped(self) -> "RelationInstance":
        return RelationInstance(self.rhs, self.lhs, self.schema, self.bindings)

    def unordered_key(self):
        return frozenset((self.lhs.letters, self.rhs.letters))

    def label(self) -> str:
        if not self.bindings:
            return self.schema
        inner = ", ".join(f"{k}={v}" for k, v in self.bindings)
        return f"{self.schema}({inner})"

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} = {format_word(self.rhs)}"


@dataclass(frozen=True, slots=True)
class PatternLetter:
    family: str
    offset: int = 0
    param: str | None = None

    def concretize(self, bindings: dict[str, int]) -> Generator:
        index = self.offset + (bindings[self.param] if self.param else 0)
        return Generator(self.family, index)

    def render(self) -> str:
        if self.param is None:
            return str(Generator(self.family, self.offset))
        if self.offset == 0:
            return f"{self.family}({self.param})"
        sign = "+" if self.offset > 0 else "-"
        return f"{self.family}({self.param}{sign}{abs(self.offset)})"


@dataclass(frozen=True, slots=True)
class Param:
    """A schema parameter; values is None for parameters ranging over Z."""

    name: str
    values: tuple[int, ...] | None = None


@dataclass(frozen=True, slots=True)
class Schema:
    name: str
    params: tuple[Param, ...]
    lhs: tuple[PatternLetter, ...]
    rhs: tuple[PatternLetter, ...]

    def __post_init__(self) -> None:
        if not self.lhs or not self.rhs:
            raise SchemaError(f"schema {self.name}: relation sides must be non-empty")
        names = {p.name for p in self.params}
        used = {pl.param for pl in self.lhs + self.rhs if pl.param}
        if used != names:
            raise SchemaError(
                f"schema {self.name}: parameters {sorted(names)} do not match "
                f"pattern variables {sorted(used)}"
            )
        for end in (0, -1):
            bound = {pl.param for pl in (self.lhs[end], self.rhs[end]) if pl.param}
            if names - bound:
                raise SchemaError(
                    f"schema {self.name}: parameters {sorted(names - bound)} are not "
                    "determined by the boundary letters, pair lookup would not be finite"
                )
        for p in self.params:
            fams = {pl.family for pl in self.lhs + self.rhs if pl.param == p.name}
            if len(fams) > 1:
                raise SchemaError(
                    f"schema {self.name}: parameter {p.name} spans families {sorted(fams)}"
                )

    # -- instantiation ---------------------------------------------------

    def _param(self, name: str) -> Param:
        for p in self.params:
            if p.name == name:
                return p
        raise KeyError(name)

    def param_family(self, name: str) -> str:
        for pl in self.lhs + self.rhs:
            if pl.param == name:
                return pl.family
        raise KeyError(name)

    def instantiate(self, bindings: dict[str, int]) -> RelationInstance | None:
        """Concrete instance for the given parameter values.

        Returns None for degenerate instances whose two sides are the same
        word (these never count as relations).
        """
        if set(bindings) != {p.name for p in self.params}:
            raise ValueError(f"schema {self.name} expects bindings for "
                             f"{[p.name for p in self.params]}, got {sorted(bindings)}")
        for p in self.params:
            if p.values is not None and bindings[p.name] not in p.values:
                raise ValueError(
                    f"schema {self.name}: {p.name}={bindings[p.name]} outside domain"
                )
        lhs = Word(tuple(Letter(pl.concretize(bindings)) for pl in self.lhs))
        rhs = Word(tuple(Letter(pl.concretize(bindings)) for pl in self.rhs))
        if lhs == rhs:
            return None
        ordered = tuple((p.name, bindings[p.name]) for p in self.params)
        return RelationInstance(lhs, rhs, self.name, ordered)

    # -- pair-indexed lookup ---------------------------------------------

    def _solve(self, pats: tuple[PatternLetter, PatternLetter],
               gens: tuple[Generator, Generator]) -> dict[str, int] | None:
        bindings: dict[str, int] = {}
        for pl, g in zip(pats, gens):
            if pl.family != g.family:
                return None
            if pl.param is None:
                if pl.offset != g.index:
                    return None
                continue
            value = g.index - pl.offset
            if pl.param in bindings and bindings[pl.param] != value:
                return None
            dom = self._param(pl.param).values
            if dom is not None and value not in dom:
                return None
            bindings[pl.param] = value
        if len(bindings) != len(self.params):
            return None
        return bindings

    def _pair_query(self, x: Generator, y: Generator, end: int) -> list[RelationInstance]:
        found: list[RelationInstance] = []
        seen = set()
        for swap in (False, True):
            left, right = (self.rhs, self.lhs) if swap else (self.lhs, self.rhs)
            bindings = self._solve((left[end], right[end]), (x, y))
            if bindings is None:
                continue
            inst = self.instantiate(bindings)
            if inst is None:
                continue
            if swap:
                inst = inst.swapped()
            key = (inst.lhs.letters, inst.rhs.letters)
            if key not in seen:
                seen.add(key)
                found.append(inst)
        return found

    def leading(self, x: Generator, y: Generator) -> list[RelationInstance]:
        """Instances oriented so that lhs starts with x and rhs starts with y."""
        return self._pair_query(x, y, 0)

    def trailing(self, x: Generator, y: Generator) -> list[RelationInstance]:
        """Instances oriented so that lhs ends with x and rhs ends with y."""
        return self._pair_query(x, y, -1)

    # -- enumeration ------------------------------------------------------

    def instances(self, window: tuple[int, int] | None = None,
                  integer_families: frozenset[str] = frozenset()) -> list[RelationInstance]:
        """All instances whose integer-family indices lie in the window.

        Mirror duplicates (the same unordered relation with sides exchanged)
        are emitted once.  Schemas with Z-parameters require a window.
        """
        for pl in self.lhs + self.rhs:
            if pl.param is None and pl.family in integer_families:
                if window is None or not window[0] <= pl.offset <= window[1]:
                    return []
        ranges: list[tuple[str, list[int]]] = []
        for p in self.params:
            fam = self.param_family(p.name)
            offsets = [pl.offset for pl in self.lhs + self.rhs if pl.param == p.name]
            if p.values is None:
                if window is None:
                    raise ValueError(
                        f"schema {self.name}: cannot enumerate parameter {p.name} "
                        "over Z without a window"
                    )
                lo = max(window[0] - off for off in offsets)
                hi = min(window[1] - off for off in offsets)
                ranges.append((p.name, list(range(lo, hi + 1))))
            else:
                values = list(p.values)
                if window is not None and fam in integer_families:
                    values = [v for v in values
                              if all(window[0] <= v + off <= window[1] for off in offsets)]
                ranges.append((p.name, values))
        out: list[RelationInstance] = []
        seen = set()
        for combo in itertools.product(*(vals for _, vals in ranges)):
            inst = self.instantiate({name: v for (name, _), v in zip(ranges, combo)})
            if inst is None:
                continue
            key = inst.unordered_key()
            if key not in seen:
                seen.add(key)
                out.append(inst)
        return out

    def integer_params(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params if p.values is None)

    def render(self) -> str:
        left = " ".join(pl.render() for pl in self.lhs)
        right = " ".join(pl.render() for pl in self.rhs)
        return f"{left} = {right}"


def fixed_schema(name: str, lhs: Word, rhs: Word) -> Schema:
    """Schema with no parameters: a single concrete relation."""
    if not (lhs.is_positive() and rhs.is_positive()):
        raise SchemaError(f"schema {name}: relation sides must be positive words")
    return Schema(
        name,
        (),
        tuple(PatternLetter(l.gen.family, l.gen.index) for l in lhs),
        tuple(PatternLetter(l.gen.family, l.gen.index) for l in rhs),
    )


@dataclass(slots=True)
class Presentation:
    name: str
    alphabet: Alphabet
    schemas: tuple[Schema, ...]
    homogeneous: bool = True
    window: int | None = None
    _complements: dict = field(default_factory=dict, repr=False, compare=False)

    def schema(self, name: str) -> Schema:
        for s in self.schemas:
            if s.name == name:
                return s
        raise KeyError(f"presentation {self.name} has no schema named {name!r}")

    def parse(self, text: str) -> Word:
        return parse_word(text, self.alphabet)


# -- complements ----------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Equal:
    """Marker: the two queried generators coincide, so x^-1 x just cancels."""


EQUAL = Equal()


@dataclass(frozen=True, slots=True)
class ComplementPair:
    v_prime: Word
    u_prime: Word
    rule: RelationInstance


def instances_for_pair(p: Presentation, x: Generator, y: Generator,
                       side: str = "right") -> list[RelationInstance]:
    """All relation instances whose sides lead (right) or trail (left) with (x, y)."""
    p.alphabet.require(x)
    p.alphabet.require(y)
    out: list[RelationInstance] = []
    for s in p.schemas:
        out.extend(s.leading(x, y) if side == "right" else s.trailing(x, y))
    return out


def right_complement(p: Presentation, x: Generator, y: Generator):
    """Complement of x^-1 y: EQUAL, a ComplementPair with x*v' = y*u', or None.

    Ambiguity is detected lazily, per queried pair, so reversing still works
    on presentations whose conflicts live elsewhere in the alphabet.
    """
    if x == y:
        return EQUAL
    key = ("right", x, y)
    if key not in p._complements:
        insts = instances_for_pair(p, x, y, "right")
        if len(insts) > 1:
            p._complements[key] = AmbiguousComplementError((x, y), insts)
        elif not insts:
            p._complements[key] = None
        else:
            inst = insts[0]
            p._complements[key] = ComplementPair(inst.lhs[1:], inst.rhs[1:], inst)
    result = p._complements[key]
    if isinstance(result, AmbiguousComplementError):
        raise result
    return result


def left_complement(p: Presentation, x: Generator, y: Generator):
    """Complement of x y^-1: EQUAL, a ComplementPair with v'*x = u'*y, or None."""
    if x == y:
        return EQUAL
    key = ("left", x, y)
    if key not in p._complements:
        insts = instances_for_pair(p, x, y, "left")
        if len(insts) > 1:
            p._complements[key] = AmbiguousComplementError((x, y), insts)
        elif not insts:
            p._complements[key] = None
        else:
            inst = insts[0]
            p._complements[key] = ComplementPair(inst.lhs[:-1], inst.rhs[:-1], inst)
    result = p._complements[key]
    if isinstance(result, AmbiguousComplementError):
        raise result
    return result


# -- global checks --------------------------------------------------------


@dataclass(frozen=True)
class ComplementReport:
    side: str
    conflicts: tuple[tuple[tuple[Generator, Generator], tuple[RelationInstance, ...]], ...]

    @property
    def verdict(self) -> str:
        return "complemented" if not self.conflicts else "conflict"


def pair_scan_generators(p: Presentation, span: int = 2) -> list[Generator]:
    """Representative generators for pair scans.

    Schemas reference integer indices only through a parameter plus a bounded
    offset, so the relation pattern seen by a pair (t_a, t_b) depends only on
    the families and is invariant under translation; indices in [-span, span]
    cover every behavior the schema language can express.
    """
    gens = p.alphabet.finite_generators()
    for fam in sorted(p.alphabet.integer_families):
        gens.extend(Generator(fam, i) for i in range(-span, span + 1))
    return sorted(gens)


def check_complemented(p: Presentation, span: int = 2) -> tuple[ComplementReport, ComplementReport]:
    """Scan all generator pairs for complement conflicts, right and left.

    A pair conflicts when more than one relation leads (or trails) with it,
    or when a relation relates x... to x... with distinct sides.
    """
    reports = []
    gens = pair_scan_generators(p, span)
    for side in ("right", "left"):
        conflicts = []
        for x, y in itertools.product(gens, repeat=2):
            insts = instances_for_pair(p, x, y, side)
            if (x == y and insts) or len(insts) > 1:
                conflicts.append(((x, y), tuple(insts[:2])))
        reports.append(ComplementReport(side, tuple(conflicts)))
    return reports[0], reports[1]


def check_homogeneous(p: Presentation, span: int = 3) -> bool:
    """True when every relation instance has sides of equal length.

    Pattern sides have fixed length, so the symbolic check is exact; sampled
    instances are compared as well as a guard on the instantiation code.
    """
    for s in p.schemas:
        if len(s.lhs) != len(s.rhs):
            return False
        for inst in s.instances((-span, span), p.alphabet.integer_families):
            if len(inst.lhs) != len(inst.rhs):
                return False
    return True


def materialize_relations(p: Presentation) -> tuple[RelationInstance, ...]:
    """Every relation of a fully finite presentation, mirror-deduplicated."""
    if p.alphabet.integer_families:
        raise ValueError(
            f"presentation {p.name} has integer families; window it first"
        )
    out: list[RelationInstance] = []
    seen = set()
    for s in p.schemas:
        for inst in s.instances(None):
            key = inst.unordered_key()
            if key not in seen:
                seen.add(key)
                out.append(inst)
    return tuple(out)


def _binding_suffix(bindings: tuple[tuple[str, int], ...]) -> str:
    parts = []
    for k, v in bindings:
        parts.append(f"{k}{v}" if v >= 0 else f"{k}m{-v}")
    return "_".join(parts)


def instantiate_window(p: Presentation, n: int) -> Presentation:
    """Finite snapshot with integer-family indices restricted to [-n, n]."""
    if n < 1:
        raise ValueError("window must be at least 1")
    finite = dict(p.alphabet.finite)
    for fam in p.alphabet.integer_families:
        finite[fam] = tuple(range(-n, n + 1))
    alphabet = Alphabet(finite, frozenset())
    schemas = []
    for s in p.schemas:
        for inst in s.instances((-n, n), p.alphabet.integer_families):
            name = s.name
            if inst.bindings:
                name = f"{s.name}_{_binding_suffix(inst.bindings)}"
            schemas.append(fixed_schema(name, inst.lhs, inst.rhs))
    windowed = Presentation(f"{p.name}|window={n}", alphabet, tuple(schemas),
                            homogeneous=p.homogeneous, window=n)
    windowed.homogeneous = check_homogeneous(windowed)
    return windowed


# -- text format ----------------------------------------------------------

_PARAM_TOKEN = re.compile(r"([A-Za-z]+)\(([a-z])([+-]\d+)?\)\Z")


def _parse_pattern_token(token: str, alphabet: Alphabet,
                         params: dict[str, Param]) -> PatternLetter:
    m = _PARAM_TOKEN.match(token)
    if m is not None:
        family, name, offset = m.groups()
        if family not in alphabet.finite and family not in alphabet.integer_families:
            raise WordSyntaxError(f"unknown generator family {family!r}")
        if name not in params:
            if family in alphabet.integer_families:
                params[name] = Param(name, None)
            else:
                params[name] = Param(name, tuple(sorted(alphabet.finite[family])))
        return PatternLetter(family, int(offset or 0), name)
    letter = parse_word(token, alphabet)[0]
    if letter.sign < 0:
        raise WordSyntaxError("relation sides must be positive words")
    return PatternLetter(letter.gen.family, letter.gen.index)


def load_presentation(text: str, name: str = "user") -> Presentation:
    """Parse the plain-text presentation format.

    Header line:   generators: s1 s2 ... ; families: t
    Relations:     one `lhs = rhs` per line in the word grammar, or
                   `schema <name>: <pattern> = <pattern>` with single-letter
                   integer parameters and constant offsets.
    Lines starting with # are comments.
    """
    lines = [l.strip() for l in text.splitlines()]
    lines = [l for l in lines if l and not l.startswith("#")]
    if not lines or not lines[0].startswith("generators:"):
        raise WordSyntaxError("presentation must start with a 'generators:' header")
    header = lines[0]
    gen_part, _, fam_part = header.partition(";")
    finite: dict[str, list[int]] = {}
    dummy = Alphabet({}, frozenset())
    for tok in gen_part[len("generators:"):].split():
        m = re.match(r"([A-Za-z]+)(?:\((-?\d+)\)|(\d))\Z", tok)
        if m is None:
            raise WordSyntaxError(f"malformed generator token {tok!r} in header")
        fam, paren_index, digit_index = m.groups()
        finite.setdefault(fam, []).append(int(paren_index if paren_index is not None else digit_index))
    integer_families = frozenset()
    if fam_part:
        fam_part = fam_part.strip()
        if not fam_part.startswith("families:"):
            raise WordSyntaxError("expected 'families:' after ';' in header")
        integer_families = frozenset(fam_part[len("families:"):].split())
    alphabet = Alphabet({f: tuple(sorted(set(v))) for f, v in finite.items()},
                        integer_families)
    schemas: list[Schema] = []
    count = 0
    for line in lines[1:]:
        if line.startswith("schema "):
            head, _, body = line[len("schema "):].partition(":")
            sname = head.strip()
            if not sname or not body:
                raise WordSyntaxError(f"malformed schema line {line!r}")
            left_text, eq, right_text = body.partition("=")
            if not eq:
                raise WordSyntaxError(f"schema line {line!r} lacks '='")
            params: dict[str, Param] = {}
            lhs = tuple(_parse_pattern_token(t, alphabet, params) for t in left_text.split())
            rhs = tuple(_parse_pattern_token(t, alphabet, params) for t in right_text.split())
            schemas.append(Schema(sname, tuple(params.values()), lhs, rhs))
        else:
            left_text, eq, right_text = line.partition("=")
            if not eq:
                raise WordSyntaxError(f"expected 'lhs = rhs' or schema line, got {line!r}")
            count += 1
            lhs = parse_word(left_text, alphabet)
            rhs = parse_word(right_text, alphabet)
            if not (lhs.is_positive() and rhs.is_positive()):
                raise WordSyntaxError("relation sides must be positive words")
            schemas.append(fixed_schema(f"rel_{count}", lhs, rhs))
    p = Presentation(name, alphabet, tuple(schemas))
    p.homogeneous = check_homogeneous(p)
    return p


def save_presentation(p: Presentation) -> str:
    """Render a presentation in the plain-text format.

    Parameters over finite families are expanded into one schema per value,
    because the format infers finite parameter domains from the whole family.
    """
    gens = " ".join(str(g) for g in p.alphabet.finite_generators())
    header = f"generators: {gens}"
    if p.alphabet.integer_families:
        header += " ; families: " + " ".join(sorted(p.alphabet.integer_families))
    lines = [header]
    for s in p.schemas:
        finite_params = [pp for pp in s.params if pp.values is not None]
        expansions: list[dict[str, int]] = [{}]
        for pp in finite_params:
            expansions = [dict(e, **{pp.name: v}) for e in expansions for v in pp.values]
        for partial in expansions:
            remaining = tuple(pp for pp in s.params if pp.name not in partial)
            lhs = tuple(
                PatternLetter(pl.family, pl.offset + partial[pl.param], None)
                if pl.param in partial else pl
                for pl in s.lhs
            )
            rhs = tuple(
                PatternLetter(pl.family, pl.offset + partial[pl.param], None)
                if pl.param in partial else pl
                for pl in s.rhs
            )
            name = s.name
            if partial:
                bindings = tuple((pp.name, partial[pp.name]) for pp in finite_params)
                name = f"{s.name}_{_binding_suffix(bindings)}"
            try:
                sub = Schema(name, remaining, lhs, rhs)
            except SchemaError:
                continue
            if not remaining and Word(tuple(Letter(pl.concretize({})) for pl in lhs)) == \
                    Word(tuple(Letter(pl.concretize({})) for pl in rhs)):
                continue
            if remaining:
                lines.append(f"schema {sub.name}: {sub.render()}")
            else:
                lines.append(sub.render())
    return "\n".join(lines) + "\n"
