"""Dehornoy-style word reversing.

Right reversing rewrites x^-1 y (x, y generators) into v' u'^-1 where
x v' = y u' is a relation, and deletes x^-1 x outright.  Left reversing is
the mirror image: x y^-1 becomes v'^-1 u' where v' x = u' y, and x x^-1 is
deleted.  Both use the leftmost redex at every step, so traces are
deterministic and reproduce the usual reversing diagrams cell by cell.

A reversal ends in one of four ways: the word becomes empty, it reaches the
sorted terminal shape, it gets stuck on a pair with no complement, or the
step budget (fuel) runs out.

Traces store one small step record per rewrite; intermediate words are
replayed on demand by words().  Diverging reversals produce words that grow
without bound, so materializing every intermediate up front would cost
quadratic memory for no benefit.

The grid view replays a trace geometrically: positive letters run right,
negative letters are climbed against down-pointing edges, relation steps
close a square with two new labelled chains, and cancellations become
unoriented epsilon arcs.  Grids for left reversals are built from the
mirrored trace, so they come out flipped left-to-right relative to the
usual picture.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .presentation import EQUAL, Presentation, RelationInstance, left_complement, right_complement
from .words import Generator, Letter, Word, invert_word

DEFAULT_FUEL = 10000


@dataclass(frozen=True, slots=True)
class ReversalStep:
    position: int
    kind: str  # "cancel" | "relation"
    rule: RelationInstance | None


@dataclass(frozen=True, slots=True)
class Empty:
    """The word reversed to epsilon."""


@dataclass(frozen=True, slots=True)
class Terminal:
    """Reversal finished on a non-empty sorted word.

    Right: final word is v_prime * u_prime^-1.
    Left:  final word is u_prime^-1 * v_prime.
    """

    v_prime: Word
    u_prime: Word


@dataclass(frozen=True, slots=True)
class Stuck:
    position: int
    pair: tuple[Generator, Generator]


@dataclass(frozen=True, slots=True)
class Diverged:
    fuel: int


Outcome = Union[Empty, Terminal, Stuck, Diverged]


def _replacement(side: str, rule: RelationInstance) -> list[Letter]:
    """Letters a relation step splices in, from the oriented instance.

    Right rules are oriented x v' = y u' (leading pair), left rules
    v' x = u' y (trailing pair); see right_complement/left_complement.
    """
    if side == "right":
        v, u = rule.lhs[1:], rule.rhs[1:]
        return list(v.letters) + [l.inverse() for l in reversed(u.letters)]
    v, u = rule.lhs[:-1], rule.rhs[:-1]
    return [l.inverse() for l in reversed(v.letters)] + list(u.letters)


@dataclass(frozen=True, slots=True)
class ReversalTrace:
    side: str
    start: Word
    steps: tuple[ReversalStep, ...]
    outcome: Outcome
    final: Word

    @property
    def step_count(self) -> int:
        return len(self.steps)

    @property
    def reached_terminal(self) -> bool:
        return isinstance(self.outcome, (Empty, Terminal))

    def words(self) -> Iterator[Word]:
        """Replay the trace, yielding the start and every intermediate."""
        letters = list(self.start.letters)
        yield self.start
        for s in self.steps:
            if s.kind == "cancel":
                del letters[s.position:s.position + 2]
            else:
                letters[s.position:s.position + 2] = _replacement(self.side, s.rule)
            yield Word(tuple(letters))

    def touched_indices(self, family: str) -> tuple[int, int] | None:
        """Range of family indices appearing anywhere along the trace.

        Every intermediate letter comes from the start word or from a side
        of an applied relation, so scanning those is enough.
        """
        lo: int | None = None
        hi: int | None = None

        def visit(letters) -> None:
            nonlocal lo, hi
            for letter in letters:
                if letter.gen.family == family:
                    i = letter.gen.index
                    lo = i if lo is None else min(lo, i)
                    hi = i if hi is None else max(hi, i)

        visit(self.start)
        for s in self.steps:
            if s.rule is not None:
                visit(s.rule.lhs)
                visit(s.rule.rhs)
        if lo is None or hi is None:
            return None
        return lo, hi


def _classify_right(word: Word) -> Outcome:
    if not word:
        return Empty()
    split = len(word)
    for i, letter in enumerate(word):
        if letter.sign < 0:
            split = i
            break
    return Terminal(word[:split], invert_word(word[split:]))


def _classify_left(word: Word) -> Outcome:
    if not word:
        return Empty()
    split = len(word)
    for i, letter in enumerate(word):
        if letter.sign > 0:
            split = i
            break
    return Terminal(word[split:], invert_word(word[:split]))


def right_reverse(p: Presentation, word: Word, fuel: int = DEFAULT_FUEL) -> ReversalTrace:
    """Right-reverse until terminal shape, stuck pair, or fuel exhaustion.

    May raise AmbiguousComplementError when the leftmost redex pair is
    related by more than one relation.
    """
    steps: list[ReversalStep] = []
    letters = list(word.letters)
    hint = 0
    while True:
        pos = -1
        for i in range(hint, len(letters) - 1):
            if letters[i].sign < 0 and letters[i + 1].sign > 0:
                pos = i
                break
        if pos < 0:
            final = Word(tuple(letters))
            return ReversalTrace("right", word, tuple(steps), _classify_right(final), final)
        if len(steps) >= fuel:
            final = Word(tuple(letters))
            return ReversalTrace("right", word, tuple(steps), Diverged(fuel), final)
        x, y = letters[pos].gen, letters[pos + 1].gen
        comp = right_complement(p, x, y)
        if comp is None:
            final = Word(tuple(letters))
            return ReversalTrace("right", word, tuple(steps), Stuck(pos, (x, y)), final)
        if comp is EQUAL:
            del letters[pos:pos + 2]
            steps.append(ReversalStep(pos, "cancel", None))
        else:
            letters[pos:pos + 2] = _replacement("right", comp.rule)
            steps.append(ReversalStep(pos, "relation", comp.rule))
        # the prefix before pos-1 was redex-free and is untouched
        hint = max(0, pos - 1)


def left_reverse(p: Presentation, word: Word, fuel: int = DEFAULT_FUEL) -> ReversalTrace:
    """Mirror of right_reverse: rewrites x y^-1 and deletes x x^-1."""
    steps: list[ReversalStep] = []
    letters = list(word.letters)
    hint = 0
    while True:
        pos = -1
        for i in range(hint, len(letters) - 1):
            if letters[i].sign > 0 and letters[i + 1].sign < 0:
                pos = i
                break
        if pos < 0:
            final = Word(tuple(letters))
            return ReversalTrace("left", word, tuple(steps), _classify_left(final), final)
        if len(steps) >= fuel:
            final = Word(tuple(letters))
            return ReversalTrace("left", word, tuple(steps), Diverged(fuel), final)
        x, y = letters[pos].gen, letters[pos + 1].gen
        comp = left_complement(p, x, y)
        if comp is None:
            final = Word(tuple(letters))
            return ReversalTrace("left", word, tuple(steps), Stuck(pos, (x, y)), final)
        if comp is EQUAL:
            del letters[pos:pos + 2]
            steps.append(ReversalStep(pos, "cancel", None))
        else:
            letters[pos:pos + 2] = _replacement("left", comp.rule)
            steps.append(ReversalStep(pos, "relation", comp.rule))
        hint = max(0, pos - 1)


# -- single steps, for callers that drive the loop themselves -------------


@dataclass(frozen=True, slots=True)
class NoRedex:
    """The word is already in terminal shape for the requested side."""


def right_reverse_step(p: Presentation, word: Word):
    """One right-reversing step: (ReversalStep, Word), NoRedex, or Stuck."""
    return _one_step(p, word, "right")


def left_reverse_step(p: Presentation, word: Word):
    """One left-reversing step: (ReversalStep, Word), NoRedex, or Stuck."""
    return _one_step(p, word, "left")


def _one_step(p: Presentation, word: Word, side: str):
    letters = list(word.letters)
    first, second = (-1, 1) if side == "right" else (1, -1)
    complement = right_complement if side == "right" else left_complement
    for i in range(len(letters) - 1):
        if letters[i].sign == first and letters[i + 1].sign == second:
            x, y = letters[i].gen, letters[i + 1].gen
            comp = complement(p, x, y)
            if comp is None:
                return Stuck(i, (x, y))
            if comp is EQUAL:
                del letters[i:i + 2]
                return ReversalStep(i, "cancel", None), Word(tuple(letters))
            letters[i:i + 2] = _replacement(side, comp.rule)
            return ReversalStep(i, "relation", comp.rule), Word(tuple(letters))
    return NoRedex()


def reverse_quotient(p: Presentation, u: Word, v: Word, side: str = "right",
                     fuel: int = DEFAULT_FUEL) -> ReversalTrace:
    """Reverse u^-1 v (right) or u v^-1 (left) for positive words u, v.

    An Empty outcome certifies that u and v represent the same element.
    """
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    if not (u.is_positive() and v.is_positive()):
        raise ValueError("quotient reversal expects positive words")
    if side == "right":
        return right_reverse(p, invert_word(u) * v, fuel)
    return left_reverse(p, u * invert_word(v), fuel)


# -- grids ----------------------------------------------------------------


@dataclass(frozen=True, order=True, slots=True)
class GridNode:
    x: Fraction
    y: Fraction


@dataclass(frozen=True, slots=True)
class GridEdge:
    tail: GridNode
    head: GridNode
    label: Generator


@dataclass(frozen=True, slots=True)
class EpsilonArc:
    a: GridNode
    b: GridNode


@dataclass(frozen=True, slots=True)
class GridCell:
    corner: GridNode
    rule: RelationInstance


@dataclass(frozen=True)
class ReversingGrid:
    side: str
    nodes: tuple[GridNode, ...]
    path_edges: tuple[GridEdge, ...]
    completion_edges: tuple[GridEdge, ...]
    epsilon_arcs: tuple[EpsilonArc, ...]
    cells: tuple[GridCell, ...]
    final_path: tuple[tuple[GridEdge, int], ...]

    def boundary_word(self) -> Word:
        """The final path read as a word; equals the trace's final word."""
        w = Word(tuple(Letter(e.label, sign) for e, sign in self.final_path))
        return w.reversed() if self.side == "left" else w


def _mirror_trace(trace: ReversalTrace) -> ReversalTrace:
    """Reverse letter order (signs kept): turns a left trace into a right one."""
    steps = []
    n = len(trace.start)
    for step in trace.steps:
        pos = n - 2 - step.position
        rule = step.rule
        if rule is None:
            n -= 2
        else:
            rule = RelationInstance(rule.rhs.reversed(), rule.lhs.reversed(),
                                    rule.schema, rule.bindings)
            n += len(rule.lhs) + len(rule.rhs) - 4
        steps.append(ReversalStep(pos, step.kind, rule))
    outcome = trace.outcome
    if isinstance(outcome, Terminal):
        outcome = Terminal(outcome.v_prime.reversed(), outcome.u_prime.reversed())
    return ReversalTrace("right", trace.start.reversed(), tuple(steps), outcome,
                         trace.final.reversed())


def _chain(a: GridNode, b: GridNode, labels: Word, node) -> list[GridEdge]:
    k = len(labels)
    out = []
    prev = a
    for j, letter in enumerate(labels, start=1):
        if j == k:
            nxt = node(b.x, b.y)
        else:
            nxt = node(a.x + (b.x - a.x) * j / k, a.y + (b.y - a.y) * j / k)
        out.append(GridEdge(prev, nxt, letter.gen))
        prev = nxt
    return out


def build_grid(trace: ReversalTrace) -> ReversingGrid:
    """Replay a terminal or empty trace into its reversing diagram.

    Positive letters are horizontal edges pointing right; negative letters
    climb against vertical edges pointing down, so the start path rises
    from the origin and completions grow down and to the right.  A relation
    step closes the square on the redex with two interpolated chains that
    meet at the corner; a cancellation contributes an epsilon arc from the
    entry node of the first letter to the exit node of the second.
    """
    if not trace.reached_terminal:
        raise ValueError("grid requires a terminal or empty trace")
    side = trace.side
    if side == "left":
        trace = _mirror_trace(trace)
    nodes: dict[GridNode, None] = {}

    def node(x, y) -> GridNode:
        n = GridNode(Fraction(x), Fraction(y))
        nodes.setdefault(n, None)
        return n

    path: list[tuple[GridEdge, int]] = []
    path_edges: list[GridEdge] = []
    cur = node(0, 0)
    for letter in trace.start:
        if letter.sign > 0:
            nxt = node(cur.x + 1, cur.y)
            e = GridEdge(cur, nxt, letter.gen)
        else:
            nxt = node(cur.x, cur.y + 1)
            e = GridEdge(nxt, cur, letter.gen)
        path_edges.append(e)
        path.append((e, letter.sign))
        cur = nxt
    completion: list[GridEdge] = []
    arcs: list[EpsilonArc] = []
    cells: list[GridCell] = []
    for step in trace.steps:
        i = step.position
        (e1, s1), (e2, s2) = path[i], path[i + 1]
        entry1 = e1.head if s1 < 0 else e1.tail
        exit2 = e2.head if s2 > 0 else e2.tail
        if step.kind == "cancel":
            arcs.append(EpsilonArc(entry1, exit2))
            path[i:i + 2] = []
        else:
            rule = step.rule
            corner = node(exit2.x, entry1.y)
            v_edges = _chain(entry1, corner, rule.lhs[1:], node)
            u_edges = _chain(exit2, corner, rule.rhs[1:], node)
            completion.extend(v_edges)
            completion.extend(u_edges)
            cells.append(GridCell(corner, rule))
            path[i:i + 2] = [(e, 1) for e in v_edges] + [(e, -1) for e in reversed(u_edges)]
    return ReversingGrid(side, tuple(nodes), tuple(path_edges), tuple(completion),
                         tuple(arcs), tuple(cells), tuple(path))


def grid_to_dot(grid: ReversingGrid) -> str:
    """Deterministic DOT rendering of the completed material.

    Only the edges produced by reversing appear: relation chains as
    labelled arrows, cancellations as dashed undirected arcs.  The input
    path is the caller's word and is omitted, so a pure-cancellation grid
    reduces to its arcs.
    """
    used: set[GridNode] = set()
    for e in grid.completion_edges:
        used.add(e.tail)
        used.add(e.head)
    for a in grid.epsilon_arcs:
        used.add(a.a)
        used.add(a.b)
    index = {n: i for i, n in enumerate(sorted(used))}
    lines = ["digraph reversing_grid {", "  node [shape=point];"]
    edges = sorted(grid.completion_edges,
                   key=lambda e: (index[e.tail], index[e.head], str(e.label)))
    for e in edges:
        lines.append(f'  n{index[e.tail]} -> n{index[e.head]} [label="{e.label}"];')
    for a in sorted(grid.epsilon_arcs, key=lambda a: (index[a.a], index[a.b])):
        lines.append(f"  n{index[a.a]} -> n{index[a.b]} [style=dashed, dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
