"""Filter language memberships against the independent enumeration oracles.

Each built-in language has two routes: the package's stack/recursion
membership code and the oracle in tests/oracles.py, written separately
from first principles.  Sweeps compare them on every short word; the
grammar-backed filters additionally get grammar-versus-oracle sweeps.
"""

import itertools

import pytest

from rrkit import FilterSpec, InputError, parse_filter_name
from rrkit.errors import UnsupportedFilterError
from rrkit.filters import (
    ALPHABET_FULL,
    ALPHABET_X,
    SHARP,
    d1_counter,
    dyck_grammar,
    dyck_member,
    m_inf_member,
    m_member,
    m_plus_member,
    s_sharp_member,
    s_sharp_up_member,
    sym_member,
    symmetric_grammar,
    symmetric_sharp_grammar,
)

import oracles


def all_words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def test_dyck_member_sweep():
    for w in all_words(("a1", "abar1"), 8):
        assert dyck_member(1, w) == oracles.dyck_oracle(1, w), w
    for w in all_words(("a1", "a2", "abar1", "abar2"), 6):
        assert dyck_member(2, w) == oracles.dyck_oracle(2, w), w


def test_sym_member_sweep():
    for w in all_words(ALPHABET_X, 6):
        assert sym_member(w) == oracles.sym_oracle(w), w


def test_sym_member_is_mirror_not_free_group():
    # x1 xbar1 xbar1 x1 reduces to nothing as a free group word but the
    # second half must mirror the first, symbol by symbol
    assert sym_member(("x1", "x2", "xbar2", "xbar1"))
    assert not sym_member(("x1", "xbar1", "xbar1", "x1"))


def test_s_sharp_member_sweep():
    for w in all_words(ALPHABET_X + (SHARP,), 5):
        assert s_sharp_member(w) == oracles.s_sharp_oracle(w), w


def test_s_sharp_rejects_trailing_run():
    assert s_sharp_member(("#", "x1", "xbar1"))
    assert s_sharp_member(("x1", "#", "xbar1"))
    assert not s_sharp_member(("x1", "xbar1", "#"))
    assert not s_sharp_member(("#",))


def test_m_family_sweep():
    for w in all_words(ALPHABET_FULL, 5):
        assert m_member(w) == oracles.m_oracle(w), w
        assert m_inf_member(w) == oracles.m_inf_oracle(w), w
        assert m_plus_member(w) == oracles.m_plus_oracle(w), w
        assert s_sharp_up_member(w) == oracles.s_sharp_up_oracle(w), w


def test_m_inf_nested_blocks():
    assert m_inf_member(("a", "abar"))
    assert m_inf_member(("a", "a", "abar", "abar"))
    # two adjacent inner blocks need a nonempty separator
    assert not m_inf_member(("a", "a", "abar", "a", "abar", "abar"))
    assert m_inf_member(("a", "a", "abar", "x1", "xbar1", "a", "abar", "abar"))
    # the filler between blocks must itself flatten to S with # padding
    assert not m_inf_member(("a", "a", "abar", "x1", "a", "abar", "abar"))


def test_m_plus_examples():
    assert m_plus_member(("a",))
    assert m_plus_member(("abar", "a"))
    assert m_plus_member(("x1", "abar"))
    assert not m_plus_member(("a", "abar"))
    assert not m_plus_member(("x1", "xbar2"))


def test_s_sharp_up_is_the_union():
    for w in all_words(ALPHABET_FULL, 4):
        assert s_sharp_up_member(w) == (m_inf_member(w) or m_plus_member(w)), w


def test_membership_rejects_foreign_symbols():
    with pytest.raises(InputError):
        dyck_member(1, ("a2",))
    with pytest.raises(InputError):
        sym_member(("a",))
    with pytest.raises(InputError):
        m_member(("z",))


def test_dyck_grammar_matches_oracle():
    g = dyck_grammar(1).cnf()
    for w in all_words(("a1", "abar1"), 8):
        assert g.cyk(w) == oracles.dyck_oracle(1, w), w


def test_symmetric_grammar_matches_oracle():
    g = symmetric_grammar().cnf()
    for w in all_words(ALPHABET_X, 6):
        assert g.cyk(w) == oracles.sym_oracle(w), w


def test_symmetric_sharp_grammar_matches_oracle():
    g = symmetric_sharp_grammar().cnf()
    for w in all_words(ALPHABET_X + (SHARP,), 5):
        assert g.cyk(w) == oracles.s_sharp_oracle(w), w


def test_d1_counter_matches_grammar():
    c = d1_counter()
    g = dyck_grammar(1).cnf()
    for w in all_words(("a1", "abar1"), 8):
        assert c.accepts(w) == g.cyk(w), w


def test_filterspec_contains_dispatch():
    assert FilterSpec.dyck(2).contains(("a2", "abar2"))
    assert FilterSpec.symmetric().contains(("x1", "xbar1"))
    assert FilterSpec.symmetric_sharp().contains(("#", "x1", "xbar1"))
    assert FilterSpec.s_sharp_up().contains(("a",))
    assert FilterSpec.from_counter(d1_counter()).contains(("a1", "abar1"))
    g = dyck_grammar(1)
    assert FilterSpec.from_grammar(g).contains(("a1", "abar1"))
    assert not FilterSpec.from_grammar(g).contains(("a1",))


def test_filterspec_alphabets_are_ordered_tuples():
    assert FilterSpec.dyck(2).alphabet == ("a1", "a2", "abar1", "abar2")
    assert FilterSpec.symmetric().alphabet == ALPHABET_X
    assert FilterSpec.from_grammar(dyck_grammar(1)).alphabet == ("a1", "abar1")


def test_filterspec_is_hashable():
    assert {FilterSpec.dyck(1): "v"}[FilterSpec.dyck(1)] == "v"


def test_filter_grammar_unavailable_kinds():
    with pytest.raises(UnsupportedFilterError):
        FilterSpec.s_sharp_up().filter_grammar()
    with pytest.raises(UnsupportedFilterError):
        FilterSpec.from_counter(d1_counter()).filter_grammar()


def test_parse_filter_name():
    assert parse_filter_name("dyck1").n == 1
    assert parse_filter_name("dyck2").n == 2
    assert parse_filter_name("dyckN:3").n == 3
    assert parse_filter_name("sym").kind == "symmetric"
    assert parse_filter_name("symsharp").kind == "symmetric_sharp"
    assert parse_filter_name("ssharpup").kind == "s_sharp_up"
    with pytest.raises(InputError):
        parse_filter_name("dyckN:x")
    with pytest.raises(InputError):
        parse_filter_name("unknown")


def test_describe():
    assert FilterSpec.dyck(2).describe() == "dyck2"
    assert FilterSpec.symmetric().describe() == "symmetric"
