"""One-counter automata with zero/positive guards.

The counter starts at 0 and never goes negative: a -1 move is only enabled
when the current value is positive, regardless of the guard.  Acceptance is
by final state, optionally also requiring counter value 0.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .automata import EPSILON, Nfa
from .errors import ContractError, InputError

GUARDS = ("any", "zero", "positive")
ACCEPT_MODES = ("final_state", "final_state_and_zero")

# (src, read, guard, delta, dst); read == "" is an epsilon move
CounterTransition = "tuple[str, str, str, int, str]"


@dataclass(frozen=True)
class CounterAutomaton:
    states: frozenset[str]
    alphabet: tuple[str, ...]
    initial: str
    accepting: frozenset[str]
    transitions: frozenset[tuple[str, str, str, int, str]]
    accept_mode: str = "final_state"

    def __post_init__(self) -> None:
        if self.initial not in self.states:
            raise InputError(f"initial state {self.initial!r} is not a state")
        if self.accepting - self.states:
            raise InputError("accepting states must be states")
        if self.accept_mode not in ACCEPT_MODES:
            raise InputError(f"unknown accept mode {self.accept_mode!r}")
        symbols = set(self.alphabet)
        for src, read, guard, delta, dst in self.transitions:
            if src not in self.states or dst not in self.states:
                raise InputError("transition endpoints must be states")
            if read != EPSILON and read not in symbols:
                raise InputError(f"read symbol {read!r} is not in the alphabet")
            if guard not in GUARDS:
                raise InputError(f"unknown guard {guard!r}")
            if delta not in (-1, 0, 1):
                raise InputError(f"counter delta must be -1, 0 or +1, got {delta!r}")

    @classmethod
    def build(
        cls,
        alphabet: Iterable[str],
        initial: str,
        accepting: Iterable[str],
        transitions: Iterable[tuple[str, str, str, int, str]],
        accept_mode: str = "final_state",
        states: Iterable[str] = (),
    ) -> "CounterAutomaton":
        trans = frozenset(transitions)
        sts = {initial, *accepting, *states}
        for src, _, _, _, dst in trans:
            sts.add(src)
            sts.add(dst)
        return cls(frozenset(sts), tuple(alphabet), initial, frozenset(accepting), trans, accept_mode)

    @cached_property
    def _by_state(self) -> Mapping[str, tuple[tuple[str, str, int, str], ...]]:
        out: dict[str, list[tuple[str, str, int, str]]] = {}
        for src, read, guard, delta, dst in self.transitions:
            out.setdefault(src, []).append((read, guard, delta, dst))
        return {q: tuple(sorted(es)) for q, es in out.items()}

    def _guard_ok(self, guard: str, value: int) -> bool:
        if guard == "zero":
            return value == 0
        if guard == "positive":
            return value > 0
        return True

    def _is_accepting(self, state: str, value: int) -> bool:
        if state not in self.accepting:
            return False
        return value == 0 if self.accept_mode == "final_state_and_zero" else True

    def accepts(self, word: Iterable[str]) -> bool:
        """True when some run over the word ends accepting.

        For termination the counter is capped at |w| * |Q| + |Q|; epsilon
        moves are explored under configuration-visited pruning within that
        cap.  Runs that need larger counter values are out of scope.
        """
        w = tuple(word)
        for sym in w:
            if sym not in self.alphabet:
                raise InputError(f"symbol {sym!r} is not in the alphabet")
        cap = len(w) * len(self.states) + len(self.states)
        start = (self.initial, 0, 0)
        seen = {start}
        queue = deque([start])
        while queue:
            state, pos, value = queue.popleft()
            if pos == len(w) and self._is_accepting(state, value):
                return True
            for read, guard, delta, dst in self._by_state.get(state, ()):
                if read == EPSILON:
                    npos = pos
                elif pos < len(w) and w[pos] == read:
                    npos = pos + 1
                else:
                    continue
                if not self._guard_ok(guard, value):
                    continue
                nval = value + delta
                if nval < 0 or nval > cap:
                    continue
                config = (dst, npos, nval)
                if config not in seen:
                    seen.add(config)
                    queue.append(config)
        return False

    def shortest_word(self, max_len: int, counter_cap: Optional[int] = None) -> Optional[tuple[str, ...]]:
        """Shortest accepted word found with counter values <= counter_cap
        and length <= max_len; None when none exists within those bounds.

        0/1 BFS: epsilon moves cost nothing, symbol moves cost one, so the
        first accepting configuration popped is reached by a shortest word.
        """
        cap = counter_cap if counter_cap is not None else max_len + len(self.states)
        queue = deque([(self.initial, 0, ())])
        done: set[tuple[str, int]] = set()
        while queue:
            state, value, word = queue.popleft()
            if (state, value) in done:
                continue
            done.add((state, value))
            if self._is_accepting(state, value):
                return word
            for read, guard, delta, dst in self._by_state.get(state, ()):
                if not self._guard_ok(guard, value):
                    continue
                nval = value + delta
                if nval < 0 or nval > cap:
                    continue
                if read == EPSILON:
                    if (dst, nval) not in done:
                        queue.appendleft((dst, nval, word))
                elif len(word) < max_len:
                    if (dst, nval) not in done:
                        queue.append((dst, nval, word + (read,)))
        return None

    # -- constructions -------------------------------------------------------

    def product(self, a: Nfa) -> "CounterAutomaton":
        """Counter automaton for L(self) intersected with L(a).

        State set is the cartesian product; counter moves come from this
        machine, the NFA component changes only on real symbols.
        """
        if set(self.alphabet) != set(a.alphabet):
            raise ContractError("product requires identical alphabets")
        pair = lambda q, p: f"({q},{p})"
        transitions: set[tuple[str, str, str, int, str]] = set()
        a_states = sorted(a.states)
        for src, read, guard, delta, dst in sorted(self.transitions):
            if read == EPSILON:
                for p in a_states:
                    transitions.add((pair(src, p), EPSILON, guard, delta, pair(dst, p)))
            else:
                for p, label, p2 in sorted(a.transitions):
                    if label == read:
                        transitions.add((pair(src, p), read, guard, delta, pair(dst, p2)))
        for p, label, p2 in sorted(a.transitions):
            if label == EPSILON:
                for q in sorted(self.states):
                    transitions.add((pair(q, p), EPSILON, "any", 0, pair(q, p2)))
        return CounterAutomaton.build(
            self.alphabet,
            pair(self.initial, a.initial),
            {pair(f, g) for f in self.accepting for g in a.accepting},
            transitions,
            accept_mode=self.accept_mode,
            states={pair(q, p) for q in self.states for p in a.states},
        )

    def to_nfa(self, cap: Optional[int] = None) -> Nfa:
        """Finite unfolding of the counter up to `cap` (default |Q| squared).

        States are (state, value) pairs; moves that would push the counter
        past the cap fall into an absorbing reject state.  For a nonempty
        machine the default cap is large enough to keep some witness, so
        emptiness is preserved.
        """
        if cap is None:
            cap = len(self.states) ** 2
        pair = lambda q, c: f"({q},{c})"
        reject = "reject"
        while reject in self.states:
            reject += "'"
        transitions: set[tuple[str, str, str]] = set()
        for src, read, guard, delta, dst in sorted(self.transitions):
            for value in range(cap + 1):
                if not self._guard_ok(guard, value):
                    continue
                nval = value + delta
                if nval < 0:
                    continue
                target = pair(dst, nval) if nval <= cap else reject
                transitions.add((pair(src, value), read, target))
        if self.accept_mode == "final_state_and_zero":
            accepting = {pair(q, 0) for q in sorted(self.accepting)}
        else:
            accepting = {pair(q, c) for q in sorted(self.accepting) for c in range(cap + 1)}
        states = {pair(q, c) for q in self.states for c in range(cap + 1)}
        states.add(reject)
        return Nfa(
            frozenset(states),
            self.alphabet,
            pair(self.initial, 0),
            frozenset(accepting),
            frozenset(transitions),
        )

    # -- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "states": sorted(self.states),
            "alphabet": list(self.alphabet),
            "initial": self.initial,
            "accepting": sorted(self.accepting),
            "accept_mode": self.accept_mode,
            "transitions": [
                {"from": src, "read": read, "guard": guard, "delta": delta, "to": dst}
                for src, read, guard, delta, dst in sorted(self.transitions)
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CounterAutomaton":
        try:
            transitions = [
                (t["from"], t["read"], t["guard"], int(t["delta"]), t["to"])
                for t in data["transitions"]
            ]
            return cls(
                frozenset(data["states"]),
                tuple(data["alphabet"]),
                data["initial"],
                frozenset(data["accepting"]),
                frozenset(transitions),
                data.get("accept_mode", "final_state"),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed counter automaton object: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CounterAutomaton":
        return cls.from_dict(json.loads(text))
