"""The word layer: token grammar, word algebra, free reduction, shifts."""

import pytest

from monorev.words import (
    EPSILON,
    Alphabet,
    Generator,
    Letter,
    UnknownGeneratorError,
    Word,
    WordSyntaxError,
    free_reduce,
    invert_word,
    parse_word,
    shift_word,
    word_of,
)

AB = Alphabet({"s": (1, 2, 3, 10)}, frozenset({"t"}))


def test_round_trip_fixed_cases():
    for text in ("", "s3", "t(2)", "t(-1)", "s(10)", "s3^-1 t(2)",
                 "t(0)^-1 s1 s1 t(-3)"):
        assert str(parse_word(text, AB)) == text


def test_formatting_conventions():
    # t always takes parentheses, finite families only past one digit
    assert str(Generator("t", 1)) == "t(1)"
    assert str(Generator("s", 3)) == "s3"
    assert str(Generator("s", 10)) == "s(10)"
    assert str(Letter(Generator("t", -2), -1)) == "t(-2)^-1"


def test_digit_form_is_accepted_for_t():
    # the grammar allows t2; formatting normalises it
    assert str(parse_word("t2", AB)) == "t(2)"


@pytest.mark.parametrize("token", ["s", "3s", "s33", "s-3", "s3^1", "s3^-2", "t(2"])
def test_malformed_tokens(token):
    with pytest.raises(WordSyntaxError):
        parse_word(token, AB)


def test_unknown_generators():
    with pytest.raises(UnknownGeneratorError):
        parse_word("r1", AB)
    with pytest.raises(UnknownGeneratorError):
        parse_word("s5", AB)


def test_letter_sign_validation():
    with pytest.raises(ValueError):
        Letter(Generator("s", 1), 0)


def test_word_algebra():
    w = parse_word("s1 t(2)^-1", AB)
    assert len(w) == 2 and bool(w)
    assert not EPSILON
    assert str(w * w) == "s1 t(2)^-1 s1 t(2)^-1"
    assert str(w.inverse()) == "t(2) s1^-1"
    assert str(w.reversed()) == "t(2)^-1 s1"
    assert isinstance(w[0:1], Word) and str(w[0:1]) == "s1"
    assert w[1].sign == -1
    assert list(w) == list(w.letters)
    assert str(EPSILON * w) == str(w)


def test_word_of():
    a = Letter(Generator("s", 1))
    assert word_of(a, a.inverse()) == parse_word("s1 s1^-1", AB)


def test_free_reduce_fixed_cases():
    cases = {
        "s1 s1^-1": "",
        "s1 s2 s2^-1 s1^-1": "",
        "s1 s2^-1 s2 s3": "s1 s3",
        "s1 s1": "s1 s1",
        "t(1)^-1 t(1) t(1)": "t(1)",
    }
    for text, expected in cases.items():
        reduced = free_reduce(parse_word(text, AB))
        assert str(reduced) == expected
        assert free_reduce(reduced) == reduced


def test_free_reduce_kills_ww_inverse():
    w = parse_word("s1 t(2)^-1 s3 s3", AB)
    assert free_reduce(w * invert_word(w)) == EPSILON
    assert free_reduce(invert_word(w) * w) == EPSILON


def test_shift_word():
    w = parse_word("t(1) s3 t(-2)^-1", AB)
    assert str(shift_word(w, 2)) == "t(3) s3 t(0)^-1"
    assert str(shift_word(w, 0)) == str(w)
    # other families can be shifted by name
    assert str(shift_word(w, 1, family="s")) == "t(1) s4 t(-2)^-1"


def test_alphabet_membership():
    assert Generator("t", -100) in AB
    assert Generator("s", 2) in AB
    assert Generator("s", 4) not in AB
    assert AB.families() == ["s", "t"]
    assert [str(g) for g in AB.finite_generators()] == ["s1", "s2", "s3", "s(10)"]
