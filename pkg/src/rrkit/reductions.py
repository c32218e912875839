"""Grammar/automaton constructions the decision engine is built from.

Contents: the triple-product grammar for a CFG/NFA intersection, worklist
variants of the same product that avoid materializing the grammar, a
transducer turning Dyck words into the words of a given grammar, the
derivation-height bound, the height-marking transformation, and the
morphism reduction embedding two-pair bracket realizability into S_#^up.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Optional

from .automata import EPSILON, Nfa
from .errors import ContractError, InputError
from .filters import ALPHABET_FULL, dyck_alphabet, dyck_encoder, dyck_grammar
from .grammars import Cfg
from .transducers import Transducer

D2_ALPHABET = dyck_alphabet(2)


def _triple(q: str, sym: str, p: str) -> str:
    return f"[{q},{sym},{p}]"


class _Moves:
    """Closure and symbol-step tables shared by the product constructions."""

    def __init__(self, a: Nfa):
        self.states = sorted(a.states)
        self.closure = {q: tuple(sorted(a.eps_closure({q}))) for q in self.states}
        self.closure_inv: dict[str, list[str]] = {q: [] for q in self.states}
        for r in self.states:
            for q in self.closure[r]:
                self.closure_inv[q].append(r)
        self._step: dict[tuple[str, str], tuple[str, ...]] = {}
        by_src: dict[str, list[tuple[str, str]]] = {}
        for src, label, dst in a.transitions:
            if label != EPSILON:
                by_src.setdefault(src, []).append((label, dst))
        for q in self.states:
            per_symbol: dict[str, set[str]] = {}
            for q2 in self.closure[q]:
                for label, dst in by_src.get(q2, ()):
                    per_symbol.setdefault(label, set()).update(self.closure[dst])
            for label, targets in per_symbol.items():
                self._step[(q, label)] = tuple(sorted(targets))

    def targets(self, q: str, sigma: str) -> tuple[str, ...]:
        """States reachable from q by eps-moves, one sigma move, eps-moves."""
        return self._step.get((q, sigma), ())


def bar_hillel(g: Cfg, a: Nfa) -> Cfg:
    """Triple-product grammar generating L(g) ∩ L(a).

    Nonterminals are a fresh axiom plus [q,A,p] for every grammar
    nonterminal A and automaton state pair; a word derived from [q,A,p]
    takes the automaton from q to p.  Epsilon transitions of the automaton
    are absorbed by closing junction states under epsilon reachability.
    Terminal rules A -> s become direct rules [q,A,p] -> s, so for a CNF
    input the nonterminal count is exactly |N|*|Q|^2 + 1; bracket
    nonterminals [q,s,p] for terminal s are materialized only for longer
    mixed rule bodies.
    """
    terminal_set = set(g.terminals)
    for t in g.terminals:
        if t not in a.alphabet:
            raise InputError(f"grammar terminal {t!r} is missing from the automaton alphabet")
    moves = _Moves(a)
    states = moves.states

    axiom = g.axiom + "'"
    nonterminals: list[str] = [axiom]
    for sym in g.nonterminals:
        for q in states:
            for p in states:
                nonterminals.append(_triple(q, sym, p))

    rules: dict[tuple[str, tuple[str, ...]], None] = {}
    for q_f in sorted(a.accepting):
        rules[(axiom, (_triple(a.initial, g.axiom, q_f),))] = None

    # terminal bracket nonterminals demanded by mixed rule bodies, in
    # first-use order; maps to True once the matching rule is emittable
    bracket_uses: dict[tuple[str, str, str], None] = {}

    def chain_bodies(rhs: tuple[str, ...], q: str, p: str) -> Iterator[tuple[str, ...]]:
        # boundary states: the first symbol starts exactly at q, the last
        # ends exactly at p, and each junction may cross an epsilon path
        def walk(i: int, start: str, acc: tuple[str, ...]) -> Iterator[tuple[str, ...]]:
            sym = rhs[i]
            if i == len(rhs) - 1:
                yield acc + (_use(start, sym, p),)
                return
            for v in states:
                here = _use(start, sym, v)
                for u in moves.closure[v]:
                    yield from walk(i + 1, u, acc + (here,))

        def _use(u: str, sym: str, v: str) -> str:
            if sym in terminal_set:
                bracket_uses.setdefault((u, sym, v), None)
            return _triple(u, sym, v)

        return walk(0, q, ())

    for lhs, rhs in g.rules:
        if rhs == ():
            for q in states:
                for p in moves.closure[q]:
                    rules[(_triple(q, lhs, p), ())] = None
        elif len(rhs) == 1 and rhs[0] in terminal_set:
            for q in states:
                for p in moves.targets(q, rhs[0]):
                    rules[(_triple(q, lhs, p), (rhs[0],))] = None
        else:
            for q in states:
                for p in states:
                    for body in chain_bodies(rhs, q, p):
                        rules[(_triple(q, lhs, p), body)] = None

    for u, sigma, v in bracket_uses:
        nonterminals.append(_triple(u, sigma, v))
        if v in moves.targets(u, sigma):
            rules[(_triple(u, sigma, v), (sigma,))] = None

    return Cfg(frozenset(nonterminals), g.terminals, tuple(rules), axiom)


def _require_cnf(g: Cfg) -> None:
    if not g.is_cnf():
        raise ContractError("this operation expects a grammar in Chomsky normal form")


def _split_cnf_rules(g: Cfg) -> tuple[list[tuple[str, str]], list[tuple[str, str, str]], bool]:
    terminal_rules: list[tuple[str, str]] = []
    binary_rules: list[tuple[str, str, str]] = []
    axiom_eps = False
    for lhs, rhs in g.rules:
        if rhs == ():
            axiom_eps = True
        elif len(rhs) == 1:
            terminal_rules.append((lhs, rhs[0]))
        else:
            binary_rules.append((lhs, rhs[0], rhs[1]))
    return terminal_rules, binary_rules, axiom_eps


def intersection_nonempty(g: Cfg, a: Nfa) -> bool:
    """Decide L(g) ∩ L(a) ≠ ∅ for CNF g without materializing the product.

    Worklist closure over derivable triples (q, A, p): terminal rules seed
    the set, binary rules join a triple ending at r with one starting in
    the epsilon closure of r.  Language-equal to emptiness of bar_hillel
    output, but memory stays proportional to the derivable triples.
    """
    _require_cnf(g)
    for t in g.terminals:
        if t not in a.alphabet:
            raise InputError(f"grammar terminal {t!r} is missing from the automaton alphabet")
    terminal_rules, binary_rules, axiom_eps = _split_cnf_rules(g)
    if axiom_eps and a.eps_closure({a.initial}) & a.accepting:
        return True
    goals = {(a.initial, g.axiom, p) for p in a.accepting}
    moves = _Moves(a)
    left_rules: dict[str, list[tuple[str, str]]] = {}
    right_rules: dict[str, list[tuple[str, str]]] = {}
    for lhs, b, c in binary_rules:
        left_rules.setdefault(b, []).append((lhs, c))
        right_rules.setdefault(c, []).append((lhs, b))

    known: set[tuple[str, str, str]] = set()
    starts: dict[tuple[str, str], list[str]] = {}
    ends: dict[tuple[str, str], list[str]] = {}
    queue: deque[tuple[str, str, str]] = deque()

    def add(q: str, sym: str, p: str) -> bool:
        t = (q, sym, p)
        if t in known:
            return False
        known.add(t)
        starts.setdefault((sym, q), []).append(p)
        ends.setdefault((sym, p), []).append(q)
        queue.append(t)
        return t in goals

    for lhs, sigma in terminal_rules:
        for q in moves.states:
            for p in moves.targets(q, sigma):
                if add(q, lhs, p):
                    return True
    while queue:
        q, sym, p = queue.popleft()
        for lhs, c in left_rules.get(sym, ()):
            for r2 in moves.closure[p]:
                for p2 in tuple(starts.get((c, r2), ())):
                    if add(q, lhs, p2):
                        return True
        for lhs, b in right_rules.get(sym, ()):
            for r in moves.closure_inv[q]:
                for q0 in tuple(ends.get((b, r), ())):
                    if add(q0, lhs, p):
                        return True
    return False


def intersection_shortest(g: Cfg, a: Nfa) -> Optional[tuple[str, ...]]:
    """A shortest word of L(g) ∩ L(a) for CNF g, or None when empty.

    Dijkstra over derivable triples: a triple's distance is the length of
    a shortest word derivable from it, terminal seeds cost 1, a binary
    join costs the sum of its parts.  Parent links rebuild the word.
    """
    _require_cnf(g)
    for t in g.terminals:
        if t not in a.alphabet:
            raise InputError(f"grammar terminal {t!r} is missing from the automaton alphabet")
    terminal_rules, binary_rules, axiom_eps = _split_cnf_rules(g)
    if axiom_eps and a.eps_closure({a.initial}) & a.accepting:
        return ()
    goals = {(a.initial, g.axiom, p) for p in a.accepting}
    moves = _Moves(a)
    left_rules: dict[str, list[tuple[str, str]]] = {}
    right_rules: dict[str, list[tuple[str, str]]] = {}
    for lhs, b, c in binary_rules:
        left_rules.setdefault(b, []).append((lhs, c))
        right_rules.setdefault(c, []).append((lhs, b))

    Triple = tuple[str, str, str]
    dist: dict[Triple, int] = {}
    parent: dict[Triple, tuple] = {}
    counter = 0
    heap: list[tuple[int, int, Triple, tuple]] = []

    def push(t: Triple, d: int, how: tuple) -> None:
        nonlocal counter
        if t not in dist:
            counter += 1
            heapq.heappush(heap, (d, counter, t, how))

    for lhs, sigma in terminal_rules:
        for q in moves.states:
            for p in moves.targets(q, sigma):
                push((q, lhs, p), 1, ("leaf", sigma))

    starts: dict[tuple[str, str], list[tuple[str, int]]] = {}
    ends: dict[tuple[str, str], list[tuple[str, int]]] = {}
    goal_hit: Optional[Triple] = None
    while heap:
        d, _, t, how = heapq.heappop(heap)
        if t in dist:
            continue
        dist[t] = d
        parent[t] = how
        q, sym, p = t
        if t in goals:
            goal_hit = t
            break
        starts.setdefault((sym, q), []).append((p, d))
        ends.setdefault((sym, p), []).append((q, d))
        for lhs, c in left_rules.get(sym, ()):
            for r2 in moves.closure[p]:
                for p2, d2 in starts.get((c, r2), ()):
                    push((q, lhs, p2), d + d2, ("join", t, (r2, c, p2)))
        for lhs, b in right_rules.get(sym, ()):
            for r in moves.closure_inv[q]:
                for q0, d0 in ends.get((b, r), ()):
                    push((q0, lhs, p), d + d0, ("join", (q0, b, r), t))
    if goal_hit is None:
        return None

    word: list[str] = []
    stack: list[Triple] = [goal_hit]
    while stack:
        t = stack.pop()
        how = parent[t]
        if how[0] == "leaf":
            word.append(how[1])
        else:
            stack.append(how[2])
            stack.append(how[1])
    return tuple(word)


def cs_transducer(g: Cfg) -> Transducer:
    """Transducer whose image of the two-pair Dyck language is L(g).

    The grammar is CNF-converted and each nonterminal gets a bracket
    type; a top-down derivation becomes the bracket word recording its
    stack history (push = open, pop = close).  The finite control only
    checks local rule shape: reading close_A at the base state commits to
    a rule of A, writing the terminal for A -> s or collecting the two
    child opens for A -> B C.  D2 input words are decoded into typed
    brackets by the inverse of the block encoder, so well-nestedness of
    the input is what guarantees pop consistency.
    """
    g1 = g.cnf()
    index = {nt: k + 1 for k, nt in enumerate(g1.ordered_nonterminals)}
    opens = {nt: f"a{k}" for nt, k in index.items()}
    closes = {nt: f"abar{k}" for nt, k in index.items()}
    base = "pop"
    transitions: dict[tuple[str, str, str, str], None] = {}
    transitions[("start", opens[g1.axiom], EPSILON, base)] = None
    for lhs, rhs in g1.rules:
        if rhs == ():
            transitions[(base, closes[lhs], EPSILON, base)] = None
        elif len(rhs) == 1:
            transitions[(base, closes[lhs], rhs[0], base)] = None
        else:
            b, c = rhs
            s_rule = f"rule[{lhs}]"
            s_pair = f"rule[{lhs}>{c}]"
            transitions[(base, closes[lhs], EPSILON, s_rule)] = None
            transitions[(s_rule, opens[c], EPSILON, s_pair)] = None
            transitions[(s_pair, opens[b], EPSILON, base)] = None
    replay = Transducer.build(
        dyck_alphabet(len(g1.nonterminals)),
        sorted(g1.terminals),
        "start",
        {base},
        transitions,
    )
    return dyck_encoder(len(g1.nonterminals)).inverted().compose(replay)


@lru_cache(maxsize=1)
def _cnf_d2() -> Cfg:
    return dyck_grammar(2).cnf()


def height_bound(a: Nfa) -> int:
    """Bound m such that a nonempty L(a) ∩ D₂ has a witness of height ≤ m.

    m is one more than the nonterminal count of the triple-product grammar
    of the fixed CNF two-pair Dyck grammar with a, computed by the count
    formula rather than by materializing the product.  A shortest witness
    has a derivation tree with no repeated nonterminal on any root path,
    so its bracket height cannot exceed the nonterminal count.
    """
    return len(_cnf_d2().nonterminals) * len(a.states) ** 2 + 2


@dataclass(frozen=True, eq=False)
class MarkedNfa:
    """An NFA over the two-pair bracket alphabet carrying a height marking.

    Every transition of `nfa` between height-carrying states respects the
    marking: opens go one level up, closes one level down, epsilon moves
    stay level.  The marking is zero at the initial state and at every
    accepting state.  Moves that would leave the tracked band fall into
    `reject_state`, which carries no height, accepts nothing, and has no
    way out.
    """

    nfa: Nfa
    height: Mapping[str, int]
    reject_state: str


def mark_automaton(a: Nfa) -> MarkedNfa:
    """Height-marking transformation over the two-pair bracket alphabet.

    States are (q, level) pairs for levels 0..m with m = height_bound(a);
    bracket moves shift the level, epsilon moves copy it, and moves past
    the band go to the absorbing reject state.  Intersection with the
    two-pair Dyck language is empty before iff empty after, and every
    accepted word has nonnegative prefix heights ending at zero.
    """
    if set(a.alphabet) != set(D2_ALPHABET):
        raise InputError("the marking transformation expects the two-pair bracket alphabet")
    m = height_bound(a)
    reject = "r"
    name = lambda q, i: f"({q},{i})"
    transitions: set[tuple[str, str, str]] = set()
    for src, label, dst in sorted(a.transitions):
        for i in range(m + 1):
            if label == EPSILON:
                transitions.add((name(src, i), EPSILON, name(dst, i)))
            elif label in ("a1", "a2"):
                target = name(dst, i + 1) if i + 1 <= m else reject
                transitions.add((name(src, i), label, target))
            else:
                target = name(dst, i - 1) if i - 1 >= 0 else reject
                transitions.add((name(src, i), label, target))
    states = {name(q, i) for q in a.states for i in range(m + 1)}
    states.add(reject)
    height = {name(q, i): i for q in sorted(a.states) for i in range(m + 1)}
    nfa = Nfa(
        frozenset(states),
        D2_ALPHABET,
        name(a.initial, 0),
        frozenset(name(q, 0) for q in a.accepting),
        frozenset(transitions),
    )
    return MarkedNfa(nfa, height, reject)


_EMBED = {
    "a1": ("a", "x1"),
    "a2": ("a", "x2"),
    "abar1": ("xbar1", "abar", "#", "#"),
    "abar2": ("xbar2", "abar", "#", "#"),
}


def ssharpup_embedding(u: tuple[str, ...]) -> tuple[str, ...]:
    """The canonical witness embedding: a x1 x2 · images of u · xbar2 xbar1 abar."""
    body: list[str] = []
    for sym in u:
        body.extend(_EMBED[sym])
    return ("a", "x1", "x2", *body, "xbar2", "xbar1", "abar")


def reduce_d2_to_ssharpup(a: Nfa) -> Nfa:
    """NFA ℬ with L(a) ∩ D₂ ≠ ∅ iff L(ℬ) ∩ S_#^up ≠ ∅.

    ℬ reads a fixed prefix a x1 x2, then simulates the height-marked
    automaton on the letter images a x1 / a x2 / xbar1 abar # # /
    xbar2 abar # #, then reads the fixed suffix xbar2 xbar1 abar.  Each
    image is one chained path, so ℬ accepts exactly the embedded words of
    the marked language; a marked witness embeds into the M-iteration
    language, while any embedded non-witness fails both membership routes.
    """
    marked = mark_automaton(a).nfa.trimmed()
    transitions: set[tuple[str, str, str]] = set()
    transitions.add(("pre0", "a", "pre1"))
    transitions.add(("pre1", "x1", "pre2"))
    transitions.add(("pre2", "x2", marked.initial))
    for src, label, dst in sorted(marked.transitions):
        if label == EPSILON:
            transitions.add((src, EPSILON, dst))
            continue
        image = _EMBED[label]
        prev = src
        for k, sym in enumerate(image[:-1], start=1):
            mid = f"m[{src}|{label}|{dst}]{k}"
            transitions.add((prev, sym, mid))
            prev = mid
        transitions.add((prev, image[-1], dst))
    for f in sorted(marked.accepting):
        transitions.add((f, EPSILON, "sfx0"))
    transitions.add(("sfx0", "xbar2", "sfx1"))
    transitions.add(("sfx1", "xbar1", "sfx2"))
    transitions.add(("sfx2", "abar", "sfx3"))
    result = Nfa.build(
        ALPHABET_FULL,
        "pre0",
        {"sfx3"},
        transitions,
        states=set(marked.states) | {"pre0", "pre1", "pre2", "sfx0", "sfx1", "sfx2", "sfx3"},
    )
    return result.trimmed()
