"""Derivations as bracket words.

The encoding transducer turns two-pair bracket words back into terminal
words of a grammar: a balanced word spells out a derivation history, and
the transducer replays it.  Running it over all short balanced words
recovers exactly the grammar's language from the bracket side, and
composing it with a single-word automaton finds a bracket preimage for
any target word.
"""

from itertools import product

from rrkit import Nfa, cs_transducer, intersection_shortest, parse_grammar
from rrkit.filters import dyck_grammar


def balanced(word):
    height = {"a1": 1, "a2": 1, "abar1": -1, "abar2": -1}
    level = 0
    for sym in word:
        level += height[sym]
        if level < 0:
            return False
    return level == 0


g = parse_grammar("S -> a1").cnf()
t = cs_transducer(g)

print("image sweep over balanced words up to length 6:")
seen = set()
for n in range(7):
    for u in product(("a1", "a2", "abar1", "abar2"), repeat=n):
        if balanced(u):
            for w in t.transduce(u, 6):
                seen.add(w)
                print(f"  {' '.join(u)}  ->  {' '.join(w)}")
print(f"distinct outputs: {sorted(seen)}")

target = ("a1",)
path = Nfa.build(("a1",), "p0", {"p1"}, {("p0", "a1", "p1")})
u = intersection_shortest(dyck_grammar(2).cnf(), t.compose_automaton(path))
print(f"\nbracket preimage of {' '.join(target)}: {' '.join(u)}")
assert target in t.transduce(u, 1)
