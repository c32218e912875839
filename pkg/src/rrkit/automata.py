"""Nondeterministic finite automata over token alphabets.

Words are tuples of symbol names (symbols are multi-character strings such
as "a1" or "abar2"), not single characters.  A transition label equal to
the empty string denotes an epsilon move.  The order of the declared
alphabet matters: shortest-witness extraction breaks ties lexicographically
by that order.  Values are immutable; every operation returns a new object.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional

from .errors import InputError

EPSILON = ""

Word = "tuple[str, ...]"


@dataclass(frozen=True)
class Nfa:
    states: frozenset[str]
    alphabet: tuple[str, ...]
    initial: str
    accepting: frozenset[str]
    transitions: frozenset[tuple[str, str, str]]

    def __post_init__(self) -> None:
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError("alphabet contains duplicate symbols")
        if EPSILON in self.alphabet:
            raise InputError("the empty string is reserved for epsilon labels")
        if self.initial not in self.states:
            raise InputError(f"initial state {self.initial!r} is not a state")
        bad = self.accepting - self.states
        if bad:
            raise InputError(f"accepting states {sorted(bad)} are not states")
        symbols = set(self.alphabet)
        for src, label, dst in self.transitions:
            if src not in self.states or dst not in self.states:
                raise InputError(f"transition ({src!r},{label!r},{dst!r}) uses unknown states")
            if label != EPSILON and label not in symbols:
                raise InputError(f"transition label {label!r} is not in the alphabet")

    @classmethod
    def build(
        cls,
        alphabet: Iterable[str],
        initial: str,
        accepting: Iterable[str],
        transitions: Iterable[tuple[str, str, str]],
        states: Iterable[str] = (),
    ) -> "Nfa":
        """Construct an NFA, inferring the state set from the pieces given."""
        trans = frozenset((src, label, dst) for src, label, dst in transitions)
        sts = {initial, *accepting, *states}
        for src, _, dst in trans:
            sts.add(src)
            sts.add(dst)
        return cls(frozenset(sts), tuple(alphabet), initial, frozenset(accepting), trans)

    # -- adjacency caches ------------------------------------------------

    @cached_property
    def _eps_out(self) -> Mapping[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {}
        for src, label, dst in self.transitions:
            if label == EPSILON:
                out.setdefault(src, []).append(dst)
        return {q: tuple(sorted(ds)) for q, ds in out.items()}

    @cached_property
    def _sym_out(self) -> Mapping[tuple[str, str], tuple[str, ...]]:
        out: dict[tuple[str, str], list[str]] = {}
        for src, label, dst in self.transitions:
            if label != EPSILON:
                out.setdefault((src, label), []).append(dst)
        return {k: tuple(sorted(ds)) for k, ds in out.items()}

    def eps_closure(self, states: Iterable[str]) -> frozenset[str]:
        """All states reachable from `states` through epsilon moves alone."""
        seen = set(states)
        todo = list(seen)
        while todo:
            q = todo.pop()
            for nxt in self._eps_out.get(q, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return frozenset(seen)

    def step(self, states: Iterable[str], symbol: str) -> frozenset[str]:
        """Epsilon-closed successor set after reading one symbol."""
        if symbol not in self.alphabet:
            raise InputError(f"symbol {symbol!r} is not in the alphabet")
        after = set()
        for q in states:
            after.update(self._sym_out.get((q, symbol), ()))
        return self.eps_closure(after)

    # -- language operations ---------------------------------------------

    def accepts(self, word: Iterable[str]) -> bool:
        current = self.eps_closure({self.initial})
        for symbol in word:
            current = self.step(current, symbol)
            if not current:
                return False
        return bool(current & self.accepting)

    def distances_to_accepting(self) -> dict[str, int]:
        """Minimum number of symbol moves from each state to acceptance.

        Epsilon moves are free; unreachable states are absent from the map.
        Computed by a 0/1 BFS over reversed transitions.
        """
        rev_free: dict[str, list[str]] = {}
        rev_sym: dict[str, list[str]] = {}
        for src, label, dst in self.transitions:
            (rev_free if label == EPSILON else rev_sym).setdefault(dst, []).append(src)
        dist: dict[str, int] = {q: 0 for q in self.accepting}
        dq: deque[str] = deque(self.accepting)
        while dq:
            q = dq.popleft()
            d = dist[q]
            for p in rev_free.get(q, ()):
                if p not in dist or dist[p] > d:
                    dist[p] = d
                    dq.appendleft(p)
            for p in rev_sym.get(q, ()):
                if p not in dist or dist[p] > d + 1:
                    dist[p] = d + 1
                    dq.append(p)
        return dist

    def shortest_witness(self) -> Optional[tuple[str, ...]]:
        """A shortest accepted word, or None if the language is empty.

        Among all accepted words of minimum length, returns the smallest one
        in the lexicographic order induced by the declared alphabet.
        """
        back = self.distances_to_accepting()
        current = self.eps_closure({self.initial})
        best = min((back[q] for q in current if q in back), default=None)
        if best is None:
            return None
        word: list[str] = []
        remaining = best
        while remaining > 0:
            for symbol in self.alphabet:
                after = self.step(current, symbol)
                if any(back.get(q, -1) == remaining - 1 for q in after):
                    word.append(symbol)
                    current = after
                    remaining -= 1
                    break
            else:  # pragma: no cover - inconsistent distance map
                raise AssertionError("witness extraction lost the target distance")
        return tuple(word)

    def sub_automaton(self, start: str, end: str) -> "Nfa":
        """Same transition structure, but run from `start` and accept at `end`."""
        if start not in self.states or end not in self.states:
            raise InputError("sub-automaton endpoints must be existing states")
        return Nfa(self.states, self.alphabet, start, frozenset({end}), self.transitions)

    def accepted_words(self, max_len: int) -> Iterator[tuple[str, ...]]:
        """Yield every accepted word of length <= max_len, shortest first.

        The search walks the prefix trie of live state sets, so it only
        touches prefixes that can still reach some state.
        """
        start = self.eps_closure({self.initial})
        queue: deque[tuple[tuple[str, ...], frozenset[str]]] = deque([((), start)])
        while queue:
            word, current = queue.popleft()
            if current & self.accepting:
                yield word
            if len(word) < max_len:
                for symbol in self.alphabet:
                    after = self.step(current, symbol)
                    if after:
                        queue.append((word + (symbol,), after))

    def is_empty(self) -> bool:
        return self.shortest_witness() is None

    def has_epsilon_moves(self) -> bool:
        return any(label == EPSILON for _, label, _ in self.transitions)

    def without_epsilon_moves(self) -> "Nfa":
        """Equivalent NFA with no epsilon transitions, on the same state set.

        Reads go through closures on both ends; a state becomes accepting
        when its closure meets an accepting state.
        """
        transitions: set[tuple[str, str, str]] = set()
        accepting: set[str] = set()
        for q in self.states:
            closure = self.eps_closure({q})
            if closure & self.accepting:
                accepting.add(q)
            for symbol in self.alphabet:
                for p in self.step(closure, symbol):
                    transitions.add((q, symbol, p))
        return Nfa(
            self.states,
            self.alphabet,
            self.initial,
            frozenset(accepting),
            frozenset(transitions),
        )

    def trimmed(self) -> "Nfa":
        """Drop states that are unreachable or cannot reach acceptance.

        The initial state is always kept so the result is a valid automaton.
        """
        fwd: dict[str, set[str]] = {}
        bwd: dict[str, set[str]] = {}
        for src, _, dst in self.transitions:
            fwd.setdefault(src, set()).add(dst)
            bwd.setdefault(dst, set()).add(src)
        reach = {self.initial}
        todo = [self.initial]
        while todo:
            q = todo.pop()
            for nxt in fwd.get(q, ()):
                if nxt not in reach:
                    reach.add(nxt)
                    todo.append(nxt)
        live = set(self.accepting)
        todo = list(live)
        while todo:
            q = todo.pop()
            for prv in bwd.get(q, ()):
                if prv not in live:
                    live.add(prv)
                    todo.append(prv)
        keep = (reach & live) | {self.initial}
        return Nfa(
            frozenset(keep),
            self.alphabet,
            self.initial,
            self.accepting & keep,
            frozenset(t for t in self.transitions if t[0] in keep and t[2] in keep),
        )

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "states": sorted(self.states),
            "alphabet": list(self.alphabet),
            "initial": self.initial,
            "accepting": sorted(self.accepting),
            "transitions": [
                {"from": src, "label": label, "to": dst}
                for src, label, dst in sorted(self.transitions)
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Nfa":
        try:
            transitions = [
                (t["from"], t["label"], t["to"]) for t in data["transitions"]
            ]
            return cls(
                frozenset(data["states"]),
                tuple(data["alphabet"]),
                data["initial"],
                frozenset(data["accepting"]),
                frozenset(transitions),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed automaton object: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Nfa":
        return cls.from_dict(json.loads(text))
