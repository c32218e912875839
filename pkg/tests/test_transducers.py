import pytest

from rrkit import Nfa, Transducer
from rrkit.errors import InputError
from rrkit.filters import dyck_encoder

from oracles import dyck_oracle


def renamer():
    # a -> x, b -> y, letter by letter
    return Transducer.build(
        ("a", "b"),
        ("x", "y"),
        "s",
        {"s"},
        {("s", "a", "x", "s"), ("s", "b", "y", "s")},
    )


def doubler():
    # a -> a a
    return Transducer.build(
        ("a",),
        ("a",),
        "s",
        {"s"},
        {("s", "a", "a", "m"), ("m", "", "a", "s")},
    )


def test_transduce_letter_map():
    t = renamer()
    assert t.transduce(("a", "b", "a"), 10) == {("x", "y", "x")}
    assert t.transduce((), 10) == {()}


def test_transduce_output_bound():
    t = doubler()
    assert t.transduce(("a", "a"), 10) == {("a",) * 4}
    assert t.transduce(("a", "a"), 3) == set()


def test_transduce_rejects_foreign_input():
    with pytest.raises(InputError):
        renamer().transduce(("z",), 5)


def test_inverted():
    t = renamer().inverted()
    assert t.transduce(("x", "y"), 10) == {("a", "b")}


def test_compose_feeds_output_forward():
    first = Transducer.build(
        ("a",), ("b",), "s", {"s"}, {("s", "a", "b", "s")}
    )
    second = Transducer.build(
        ("b",), ("c",), "s", {"s"}, {("s", "b", "c", "s")}
    )
    chained = first.compose(second)
    assert chained.transduce(("a", "a"), 10) == {("c", "c")}


def test_compose_automaton_restricts_by_output():
    t = doubler()
    exactly_two = Nfa.build(
        ("a",), "p0", {"p2"}, {("p0", "a", "p1"), ("p1", "a", "p2")}
    )
    dom = t.compose_automaton(exactly_two)
    assert dom.accepts(("a",))
    assert not dom.accepts(())
    assert not dom.accepts(("a", "a"))


def test_domain_nfa():
    t = Transducer.build(
        ("a", "b"), ("x",), "s", {"t"}, {("s", "a", "x", "t")}
    )
    dom = t.domain_nfa()
    assert dom.accepts(("a",))
    assert not dom.accepts(("b",))
    assert not dom.accepts(())


def test_trimmed_preserves_relation():
    t = Transducer.build(
        ("a",),
        ("x",),
        "s",
        {"t"},
        {("s", "a", "x", "t"), ("dead", "a", "x", "dead")},
    )
    u = t.trimmed()
    assert "dead" not in u.states
    assert u.transduce(("a",), 5) == t.transduce(("a",), 5)


def test_json_round_trip():
    t = renamer()
    assert Transducer.from_json(t.to_json()) == t


def test_dyck_encoder_images():
    h = dyck_encoder(3)
    assert h.transduce(("a2",), 10) == {("a1", "a2", "a2")}
    assert h.transduce(("abar3",), 10) == {("abar2", "abar2", "abar2", "abar1")}


def test_dyck_encoder_preserves_balance():
    h = dyck_encoder(2)
    for w in [
        (),
        ("a1", "abar1"),
        ("a2", "a1", "abar1", "abar2"),
        ("a1", "abar1", "a2", "abar2"),
        ("a1", "abar2"),
        ("a2", "a1", "abar2", "abar1"),
    ]:
        (img,) = h.transduce(w, 4 * len(w) + 1) or {None}
        assert img is not None
        assert dyck_oracle(2, img) == dyck_oracle(2, w), w


def test_validation():
    with pytest.raises(InputError):
        Transducer.build(("a",), ("x",), "s", {"s"}, {("s", "q", "x", "s")})
    with pytest.raises(InputError):
        Transducer.build(("a",), ("x",), "s", {"s"}, {("s", "a", "q", "s")})
    with pytest.raises(InputError):
        Transducer.from_json("[]")
