import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epshift.errors import EmptyWord, MalformedCell, UnknownSymbol
from epshift.words import (
    BINARY,
    Alphabet,
    Word,
    count_symbol,
    is_balanced_chains,
    is_primitive,
    primitive_root,
    rotate,
    word,
)

DIGITS = Alphabet(("1", "2", "3"))


def test_rotate_examples():
    assert rotate(word("123", DIGITS), 1).text == "231"
    ab = Alphabet(("a", "b"))
    assert rotate(word("ab", ab), 0).text == "ab"
    assert rotate(word("110"), 2).text == "011"


def test_rotate_empty_word_rejected():
    with pytest.raises(EmptyWord):
        rotate(word(""), 1)


@settings(max_examples=150, deadline=None, derandomize=True)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=12), st.integers(-20, 20), st.integers(-20, 20))
def test_rotate_composition(bits, i, j):
    w = Word(tuple(bits), BINARY)
    assert rotate(rotate(w, i), j) == rotate(w, (i + j) % len(w))


def test_is_primitive_examples():
    assert not is_primitive(word("0101"))
    assert is_primitive(word("110"))
    assert is_primitive(word("0"))
    with pytest.raises(EmptyWord):
        is_primitive(word(""))


def test_primitive_root_examples():
    assert primitive_root(word("0101")) == (word("01"), 2)
    assert primitive_root(word("110")) == (word("110"), 1)
    aa = Alphabet(("a",))
    assert primitive_root(word("aaa", aa)) == (word("a", aa), 3)


def test_primitive_root_consistency():
    for n in range(1, 9):
        for bits in itertools.product((0, 1), repeat=n):
            w = Word(bits, BINARY)
            root, k = primitive_root(w)
            assert root.symbols * k == w.symbols
            assert is_primitive(root)
            assert is_primitive(w) == (k == 1)


def test_doubling_occurrence_characterizes_primitivity():
    # w occurs exactly twice in w.w iff w is primitive (|w| <= 10, binary)
    for n in range(1, 11):
        for bits in itertools.product((0, 1), repeat=n):
            w = "".join(map(str, bits))
            doubled = w + w
            occurrences = sum(
                1 for i in range(len(doubled) - n + 1) if doubled[i:i + n] == w
            )
            assert (occurrences == 2) == is_primitive(Word(bits, BINARY))


def test_count_symbol_examples():
    assert count_symbol(word("10100"), "0") == 3
    assert count_symbol(word(""), "0") == 0
    assert count_symbol(word("110"), "1") == 2
    with pytest.raises(UnknownSymbol):
        count_symbol(word("110"), "2")


def test_balanced_chains_examples():
    assert is_balanced_chains([word("10"), word("1"), word("10")])
    assert not is_balanced_chains([word("100"), word("1")])
    assert is_balanced_chains([word("1")])


def test_balanced_chains_rejects_malformed_cells():
    with pytest.raises(MalformedCell):
        is_balanced_chains([word("01")])
    with pytest.raises(MalformedCell):
        is_balanced_chains([word("101")])


def test_word_literals_round_trip():
    primed = Alphabet(("a", "b", "x0'"))
    w = word("[a,b,x0',a]", primed)
    assert w.labels() == ("a", "b", "x0'", "a")
    assert word(w.text, primed) == w
    assert word("[]", primed).symbols == ()
    assert word("110").text == "110"


def test_alphabet_validation_and_minting():
    with pytest.raises(ValueError):
        Alphabet(("0", "0"))
    a = BINARY
    assert a.mint_label() == "x0'"
    b = a.extend("x0'")
    assert b.mint_label() == "x1'"
    with pytest.raises(UnknownSymbol):
        word("2")
