"""Hardness gadgets: height marking and the union-filter embedding.

The marking transformation pins a height level to every state so the
machine can only accept balanced-looking words, without changing whether
it meets the two-pair bracket language.  The embedding reduction then
maps the bracket emptiness question into the union filter: a witness u
becomes a x1 x2 phi(u) xbar2 xbar1 abar, which lands in the nesting half
of the union exactly when u was balanced.
"""

from rrkit import (
    Nfa,
    intersection_shortest,
    mark_automaton,
    reduce_d2_to_ssharpup,
    ssharpup_embedding,
)
from rrkit.filters import dyck_grammar, m_inf_member, s_sharp_up_member


def main():
    a = Nfa.build(
        ("a1", "a2", "abar1", "abar2"),
        "q0",
        {"q2"},
        {("q0", "a1", "q1"), ("q1", "a2", "q1"), ("q1", "abar1", "q2")},
    )
    marked = mark_automaton(a)
    print(f"original states: {len(a.states)}, marked states: {len(marked.nfa.states)}")
    print(f"height of the marked initial state: {marked.height[marked.nfa.initial]}")

    d2 = dyck_grammar(2).cnf()
    u = intersection_shortest(d2, a)
    print(f"shortest balanced word through the machine: {' '.join(u)}")

    w = ssharpup_embedding(u)
    print(f"embedded witness ({len(w)} symbols): {' '.join(w)}")
    print(f"  in the nesting half:  {m_inf_member(w)}")
    print(f"  in the union filter:  {s_sharp_up_member(w)}")

    b = reduce_d2_to_ssharpup(a)
    print(f"reduced machine accepts the embedding: {b.accepts(w)}")


if __name__ == "__main__":
    main()
