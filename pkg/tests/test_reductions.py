"""Product grammars, the derivation transducer, marking, and the morphism
reduction.  The load-bearing checks are language-level: the triple product
is compared word by word against separate membership routes, and both
directions of the derivation-transducer correspondence are exercised on a
small grammar.
"""

import itertools
import random

import pytest

from rrkit import (
    Cfg,
    InputError,
    Nfa,
    bar_hillel,
    cs_transducer,
    height_bound,
    intersection_nonempty,
    intersection_shortest,
    mark_automaton,
    parse_grammar,
    reduce_d2_to_ssharpup,
    ssharpup_embedding,
)
from rrkit.errors import ContractError
from rrkit.filters import dyck_grammar, m_inf_member, m_plus_member, s_sharp_up_member
from rrkit.reductions import D2_ALPHABET

from generators import random_cnf, random_nfa
from oracles import dyck_words, grammar_words, naive_accepts


def product_words(g, a, max_len):
    prod = bar_hillel(g, a)
    return set(grammar_words(prod.rules, prod.axiom, max_len, prod.nonterminals))


def direct_words(g, a, max_len):
    cnf = g.cnf()
    return {
        w
        for w in grammar_words(g.rules, g.axiom, max_len, g.nonterminals)
        if naive_accepts(a.transitions, a.initial, a.accepting, w)
    }


def test_bar_hillel_language_random():
    rng = random.Random(911)
    for _ in range(12):
        g = random_cnf(rng)
        a = random_nfa(rng, max_states=3, allow_epsilon=rng.random() < 0.5)
        assert product_words(g, a, 6) == direct_words(g, a, 6), (g, a)


def test_bar_hillel_epsilon_junctions():
    # the only accepting run crosses an epsilon move mid-word
    g = parse_grammar("S -> A B\nA -> a1\nB -> abar1").cnf()
    a = Nfa.build(
        ("a1", "abar1"),
        "q0",
        {"q3"},
        {("q0", "a1", "q1"), ("q1", "", "q2"), ("q2", "abar1", "q3")},
    )
    assert product_words(g, a, 4) == {("a1", "abar1")}


def test_bar_hillel_nonterminal_count_epsilon_free_cnf():
    g = parse_grammar("S -> A B\nA -> a1\nB -> abar1")
    assert g.is_cnf()
    for states in (1, 2, 3):
        a = random_nfa(random.Random(states), max_states=1, alphabet=("a1", "abar1"))
        a = Nfa.build(
            ("a1", "abar1"),
            "q0",
            {f"q{states - 1}"},
            {(f"q{i}", "a1", f"q{(i + 1) % states}") for i in range(states)},
            states={f"q{i}" for i in range(states)},
        )
        prod = bar_hillel(g, a)
        assert len(prod.nonterminals) == 3 * states**2 + 1, states


def test_bar_hillel_fresh_axiom_and_terminal_check():
    g = parse_grammar("S -> a1")
    a = Nfa.build(("a1",), "q0", {"q0"}, {("q0", "a1", "q0")})
    prod = bar_hillel(g, a)
    assert prod.axiom == "S'"
    with pytest.raises(InputError):
        bar_hillel(g, Nfa.build(("b",), "q0", {"q0"}, set()))


def test_bar_hillel_handles_long_mixed_bodies():
    g = parse_grammar("S -> a1 S abar1 |")
    a = Nfa.build(
        ("a1", "abar1"),
        "q0",
        {"q0"},
        {("q0", "a1", "q1"), ("q1", "abar1", "q0")},
    )
    words = product_words(g, a, 6)
    assert words == {(), ("a1", "abar1")}


def test_intersection_helpers_agree_with_product():
    rng = random.Random(912)
    for _ in range(25):
        g = random_cnf(rng)
        a = random_nfa(rng, max_states=3, allow_epsilon=rng.random() < 0.5)
        prod = bar_hillel(g, a)
        nonempty = intersection_nonempty(g, a)
        assert nonempty == prod.nonempty(), (g, a)
        w = intersection_shortest(g, a)
        assert (w is not None) == nonempty
        if w is not None:
            assert g.cyk(w)
            assert a.accepts(w)
            if w:
                shorter = {
                    u
                    for u in grammar_words(
                        g.rules, g.axiom, len(w) - 1, g.nonterminals
                    )
                    if a.accepts(u)
                }
                assert shorter == set(), (g, a, w)


def test_intersection_epsilon_word():
    g = dyck_grammar(1).cnf()
    a = Nfa.build(("a1", "abar1"), "q0", {"q1"}, {("q0", "", "q1")})
    assert intersection_nonempty(g, a)
    assert intersection_shortest(g, a) == ()


def test_intersection_requires_cnf():
    g = parse_grammar("S -> a1 S abar1 |")
    a = Nfa.build(("a1", "abar1"), "q0", {"q0"}, set())
    with pytest.raises(ContractError):
        intersection_nonempty(g, a)
    with pytest.raises(ContractError):
        intersection_shortest(g, a)


# -- derivation transducer -----------------------------------------------------


def toy_grammar():
    return parse_grammar("S -> A B\nA -> a1\nB -> abar1")


def test_cs_transducer_outputs_are_grammar_words():
    # single production, so the whole derivation history is one typed
    # block pair and its encoding fits a short sweep
    g = parse_grammar("S -> a1")
    t = cs_transducer(g)
    seen = set()
    for u in dyck_words(2, 12):
        for out in t.transduce(u, 6):
            assert g.cyk(out), (u, out)
            seen.add(out)
    assert seen == {("a1",)}


def test_cs_transducer_silent_outside_bracket_images():
    t = cs_transducer(dyck_grammar(1).cnf())
    # a lone unencoded pair decodes to no block sequence at all
    assert t.transduce(("a1", "abar1"), 5) == set()


def test_cs_transducer_preimages_exist():
    g = toy_grammar()
    t = cs_transducer(g)
    d2 = dyck_grammar(2).cnf()
    for w in [("a1", "abar1")]:
        path = Nfa.build(
            ("a1", "abar1"),
            "p0",
            {f"p{len(w)}"},
            {(f"p{i}", sym, f"p{i + 1}") for i, sym in enumerate(w)},
        )
        dom = t.compose_automaton(path)
        u = intersection_shortest(d2, dom)
        assert u is not None
        assert w in t.transduce(u, len(w))


def test_cs_transducer_empty_grammar_has_empty_range():
    g = parse_grammar("S -> S S\nS -> a1 a1").cnf()
    # S never terminates: no derivations, so no outputs anywhere short
    t = cs_transducer(g)
    for u in dyck_words(2, 8):
        assert t.transduce(u, 4) == set(), u


# -- marking -------------------------------------------------------------------


def two_state_loop():
    return Nfa.build(
        D2_ALPHABET,
        "q0",
        {"q0"},
        {("q0", "a1", "q1"), ("q1", "abar1", "q0")},
    )


def test_height_bound_formula():
    one = Nfa.build(D2_ALPHABET, "q0", {"q0"}, set())
    assert height_bound(one) == 10
    assert height_bound(two_state_loop()) == 34


def test_mark_automaton_state_count():
    a = two_state_loop()
    marked = mark_automaton(a)
    m = height_bound(a)
    assert len(marked.nfa.states) == 2 * (m + 1) + 1
    assert marked.nfa.states == frozenset(marked.height) | {marked.reject_state}


def test_mark_automaton_alphabet_check():
    with pytest.raises(InputError):
        mark_automaton(Nfa.build(("a1",), "q0", {"q0"}, set()))


def test_mark_reject_state_is_a_sink():
    marked = mark_automaton(two_state_loop())
    for src, _, dst in marked.nfa.transitions:
        assert src != marked.reject_state
        assert dst != marked.reject_state or src != marked.reject_state


def test_marking_respects_heights():
    marked = mark_automaton(two_state_loop())
    h = marked.height
    for src, label, dst in marked.nfa.transitions:
        if dst == marked.reject_state:
            continue
        if label == "":
            assert h[dst] == h[src]
        elif label in ("a1", "a2"):
            assert h[dst] == h[src] + 1
        else:
            assert h[dst] == h[src] - 1


def test_marked_words_have_balanced_heights():
    marked = mark_automaton(two_state_loop()).nfa.trimmed()
    count = 0
    for w in marked.accepted_words(6):
        level = 0
        for sym in w:
            level += 1 if sym in ("a1", "a2") else -1
            assert level >= 0, w
        assert level == 0, w
        count += 1
    assert count > 0


def test_marking_preserves_dyck_emptiness():
    rng = random.Random(913)
    d2 = dyck_grammar(2).cnf()
    for _ in range(15):
        a = random_nfa(rng, max_states=2, alphabet=D2_ALPHABET,
                       allow_epsilon=rng.random() < 0.5)
        before = intersection_nonempty(d2, a)
        after = intersection_nonempty(d2, mark_automaton(a).nfa)
        assert before == after, a


# -- morphism reduction --------------------------------------------------------


def test_embedding_shape():
    assert ssharpup_embedding(()) == ("a", "x1", "x2", "xbar2", "xbar1", "abar")
    w = ssharpup_embedding(("a1", "abar1"))
    assert w == ("a", "x1", "x2", "a", "x1", "xbar1", "abar", "#", "#",
                 "xbar2", "xbar1", "abar")


def test_embedding_membership():
    assert s_sharp_up_member(ssharpup_embedding(()))
    assert s_sharp_up_member(ssharpup_embedding(("a1", "abar1")))
    assert s_sharp_up_member(ssharpup_embedding(("a2", "a1", "abar1", "abar2")))
    # type mismatch: heights balance, so the unbalanced route is closed,
    # and the mirror route fails on x1 against xbar2
    bad = ssharpup_embedding(("a1", "abar2"))
    assert not m_inf_member(bad)
    assert not m_plus_member(bad)
    assert not s_sharp_up_member(bad)
    # height imbalance alone is caught by the unbalanced route, which is
    # why the reduction target must keep its machine height-balanced
    lopsided = ssharpup_embedding(("a1",))
    assert m_plus_member(lopsided)
    assert not m_inf_member(lopsided)


def test_reduction_positive():
    a = Nfa.build(
        D2_ALPHABET, "q0", {"q2"}, {("q0", "a1", "q1"), ("q1", "abar1", "q2")}
    )
    b = reduce_d2_to_ssharpup(a)
    expected = ssharpup_embedding(("a1", "abar1"))
    accepted = list(b.accepted_words(len(expected)))
    assert accepted == [expected]
    assert s_sharp_up_member(expected)


def test_reduction_negative_balanced_mismatch():
    # the machine's one word balances heights but mismatches bracket types,
    # so the reduction output is nonempty yet misses the filter entirely
    a = Nfa.build(
        D2_ALPHABET, "q0", {"q2"}, {("q0", "a1", "q1"), ("q1", "abar2", "q2")}
    )
    b = reduce_d2_to_ssharpup(a)
    accepted = list(b.accepted_words(14))
    assert accepted != []
    assert all(not s_sharp_up_member(w) for w in accepted)


def test_reduction_negative_empty():
    a = Nfa.build(D2_ALPHABET, "q0", {"q1"}, {("q0", "a1", "q1")})
    b = reduce_d2_to_ssharpup(a)
    assert b.shortest_witness() is None
