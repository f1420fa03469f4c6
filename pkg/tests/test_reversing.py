"""Reversing traces, the one-step driver, quotients, grids, and DOT output.

The three-step reversal of t(2)^-1 s3 s3 in d4:new is used as the anchor
case throughout: its full trace, terminal split, grid shape, and DOT
rendering are frozen here letter for letter.
"""

import pytest

from monorev.presentation import AmbiguousComplementError
from monorev.reversing import (
    Diverged,
    Empty,
    NoRedex,
    Stuck,
    Terminal,
    build_grid,
    grid_to_dot,
    left_reverse,
    left_reverse_step,
    reverse_quotient,
    right_reverse,
    right_reverse_step,
)
from monorev.words import Generator

ANCHOR = "t(2)^-1 s3 s3"
ANCHOR_WORDS = [
    "t(2)^-1 s3 s3",
    "s3 t(2) s3^-1 t(2)^-1 s3",
    "s3 t(2) s3^-1 s3 t(2) s3^-1 t(2)^-1",
    "s3 t(2) t(2) s3^-1 t(2)^-1",
]

ANCHOR_DOT = """\
digraph reversing_grid {
  node [shape=point];
  n0 -> n1 [label="s3"];
  n1 -> n2 [label="t(2)"];
  n3 -> n2 [label="s3"];
  n3 -> n5 [label="s3"];
  n4 -> n3 [label="t(2)"];
  n5 -> n6 [label="t(2)"];
  n7 -> n6 [label="s3"];
  n8 -> n7 [label="t(2)"];
  n2 -> n5 [style=dashed, dir=none];
}
"""


def test_anchor_trace(d4):
    trace = right_reverse(d4, d4.parse(ANCHOR))
    assert trace.side == "right" and trace.step_count == 3
    assert [(s.position, s.kind) for s in trace.steps] == [
        (0, "relation"), (3, "relation"), (2, "cancel")]
    assert [s.rule.label() if s.rule else None for s in trace.steps] == [
        "t_braid(i=2, j=3)", "t_braid(i=2, j=3)", None]
    assert [str(w) for w in trace.words()] == ANCHOR_WORDS
    assert str(trace.final) == ANCHOR_WORDS[-1]
    out = trace.outcome
    assert isinstance(out, Terminal)
    assert str(out.v_prime) == "s3 t(2) t(2)" and str(out.u_prime) == "t(2) s3"
    assert trace.reached_terminal


def test_touched_indices(d4):
    trace = right_reverse(d4, d4.parse(ANCHOR))
    assert trace.touched_indices("t") == (2, 2)
    assert trace.touched_indices("s") == (3, 3)
    assert trace.touched_indices("r") is None


def test_single_cancellation(d4):
    trace = right_reverse(d4, d4.parse("s3^-1 s3"))
    assert isinstance(trace.outcome, Empty)
    assert trace.step_count == 1
    assert trace.steps[0].kind == "cancel" and trace.steps[0].rule is None
    assert not trace.final


def test_already_terminal(d4):
    trace = right_reverse(d4, d4.parse("s3 t(2)^-1"))
    assert trace.step_count == 0
    out = trace.outcome
    assert str(out.v_prime) == "s3" and str(out.u_prime) == "t(2)"


def test_stuck(two_commutes):
    trace = right_reverse(two_commutes, two_commutes.parse("b1^-1 c1"))
    assert trace.outcome == Stuck(0, (Generator("b", 1), Generator("c", 1)))
    assert not trace.reached_terminal
    assert str(trace.final) == "b1^-1 c1"


def test_fuel(d4):
    word = d4.parse(ANCHOR)
    short = right_reverse(d4, word, fuel=2)
    assert short.outcome == Diverged(2) and short.step_count == 2
    assert [str(w) for w in short.words()] == ANCHOR_WORDS[:3]
    assert right_reverse(d4, word, fuel=3).reached_terminal
    assert right_reverse(d4, word, fuel=0).outcome == Diverged(0)


def test_left_anchor(d4):
    # the mirror image of the anchor word reverses to the mirrored terminal
    trace = left_reverse(d4, d4.parse("s3 s3 t(2)^-1"))
    assert [(s.position, s.kind) for s in trace.steps] == [
        (1, "relation"), (0, "relation"), (3, "cancel")]
    out = trace.outcome
    assert str(out.v_prime) == "t(2) t(2) s3" and str(out.u_prime) == "s3 t(2)"
    assert str(trace.final) == "t(2)^-1 s3^-1 t(2) t(2) s3"


def test_one_step_replays_full_trace(d4):
    word = d4.parse(ANCHOR)
    full = right_reverse(d4, word)
    steps = []
    cur = word
    while True:
        got = right_reverse_step(d4, cur)
        if isinstance(got, NoRedex):
            break
        step, cur = got
        steps.append(step)
    assert steps == list(full.steps)
    assert cur == full.final


def test_one_step_terminal_and_stuck(d4, two_commutes):
    assert isinstance(right_reverse_step(d4, d4.parse("s3 t(2)^-1")), NoRedex)
    got = right_reverse_step(two_commutes, two_commutes.parse("b1^-1 c1"))
    assert isinstance(got, Stuck)
    step, after = left_reverse_step(d4, d4.parse("s3 s3^-1"))
    assert step.kind == "cancel" and not after


def test_ambiguity_propagates(yamada):
    with pytest.raises(AmbiguousComplementError):
        right_reverse(yamada, yamada.parse("s1^-1 t(1)"))


def test_reverse_quotient_equal(d4):
    u = d4.parse("t(1) t(0) s1 t(1) t(0) s1")
    v = d4.parse("s1 t(1) t(0) s1 t(1) t(0)")
    for side in ("right", "left"):
        trace = reverse_quotient(d4, u, v, side=side)
        assert isinstance(trace.outcome, Empty)
        assert trace.step_count == 17


def test_reverse_quotient_common_multiple(d4):
    trace = reverse_quotient(d4, d4.parse("s3"), d4.parse("t(2)"))
    out = trace.outcome
    assert str(out.v_prime) == "t(2) s3" and str(out.u_prime) == "s3 t(2)"
    # u v' and v u' really are the two sides of the braid relation
    assert str(d4.parse("s3") * out.v_prime) == "s3 t(2) s3"
    assert str(d4.parse("t(2)") * out.u_prime) == "t(2) s3 t(2)"


def test_reverse_quotient_validation(d4):
    with pytest.raises(ValueError):
        reverse_quotient(d4, d4.parse("s3^-1"), d4.parse("s3"))
    with pytest.raises(ValueError):
        reverse_quotient(d4, d4.parse("s3"), d4.parse("s3"), side="up")


# -- grids -----------------------------------------------------------------


def test_anchor_grid(d4):
    grid = build_grid(right_reverse(d4, d4.parse(ANCHOR)))
    assert len(grid.nodes) == 10
    assert len(grid.path_edges) == 3
    assert len(grid.completion_edges) == 8
    assert len(grid.epsilon_arcs) == 1
    assert [c.rule.label() for c in grid.cells] == [
        "t_braid(i=2, j=3)", "t_braid(i=2, j=3)"]
    assert str(grid.boundary_word()) == ANCHOR_WORDS[-1]


def test_anchor_dot(d4):
    grid = build_grid(right_reverse(d4, d4.parse(ANCHOR)))
    assert grid_to_dot(grid) == ANCHOR_DOT


def test_epsilon_only_grid(d4):
    grid = build_grid(right_reverse(d4, d4.parse("s3^-1 s3")))
    # three path nodes, but the DOT keeps only the two the arc touches
    assert len(grid.nodes) == 3 and not grid.completion_edges
    dot = grid_to_dot(grid)
    assert dot == (
        "digraph reversing_grid {\n"
        "  node [shape=point];\n"
        "  n0 -> n1 [style=dashed, dir=none];\n"
        "}\n"
    )


def test_left_grid_mirrors(d4):
    trace = left_reverse(d4, d4.parse("s3 s3 t(2)^-1"))
    grid = build_grid(trace)
    assert grid.side == "left"
    assert len(grid.cells) == 2 and len(grid.epsilon_arcs) == 1
    assert str(grid.boundary_word()) == str(trace.final)


def test_grid_requires_terminal(d4):
    trace = right_reverse(d4, d4.parse(ANCHOR), fuel=1)
    with pytest.raises(ValueError):
        build_grid(trace)
