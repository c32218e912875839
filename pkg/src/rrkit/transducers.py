"""Rational transducers: bounded application, composition, domain extraction.

Every transition reads at most one symbol and writes at most one symbol;
longer outputs are represented by chains of states built at construction
time.  The empty string stands for epsilon on either tape.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .automata import EPSILON, Nfa
from .errors import ContractError, InputError


@dataclass(frozen=True)
class Transducer:
    input_alphabet: tuple[str, ...]
    output_alphabet: tuple[str, ...]
    states: frozenset[str]
    initial: str
    accepting: frozenset[str]
    transitions: frozenset[tuple[str, str, str, str]]  # (src, read, write, dst)

    def __post_init__(self) -> None:
        if self.initial not in self.states:
            raise InputError(f"initial state {self.initial!r} is not a state")
        if self.accepting - self.states:
            raise InputError("accepting states must be states")
        ins = set(self.input_alphabet)
        outs = set(self.output_alphabet)
        for src, read, write, dst in self.transitions:
            if src not in self.states or dst not in self.states:
                raise InputError("transition endpoints must be states")
            if read != EPSILON and read not in ins:
                raise InputError(f"read symbol {read!r} is not in the input alphabet")
            if write != EPSILON and write not in outs:
                raise InputError(f"write symbol {write!r} is not in the output alphabet")

    @classmethod
    def build(
        cls,
        input_alphabet: Iterable[str],
        output_alphabet: Iterable[str],
        initial: str,
        accepting: Iterable[str],
        transitions: Iterable[tuple[str, str, str, str]],
        states: Iterable[str] = (),
    ) -> "Transducer":
        trans = frozenset(transitions)
        sts = {initial, *accepting, *states}
        for src, _, _, dst in trans:
            sts.add(src)
            sts.add(dst)
        return cls(
            tuple(input_alphabet),
            tuple(output_alphabet),
            frozenset(sts),
            initial,
            frozenset(accepting),
            trans,
        )

    @cached_property
    def _by_state(self) -> Mapping[str, tuple[tuple[str, str, str], ...]]:
        out: dict[str, list[tuple[str, str, str]]] = {}
        for src, read, write, dst in self.transitions:
            out.setdefault(src, []).append((read, write, dst))
        return {q: tuple(sorted(es)) for q, es in out.items()}

    # -- application -------------------------------------------------------

    def transduce(self, word: Iterable[str], max_out: int) -> set[tuple[str, ...]]:
        """All outputs of length <= max_out produced on the given input.

        Breadth-first search over configurations (state, input position,
        output so far); the visited set makes epsilon cycles harmless.
        """
        w = tuple(word)
        for sym in w:
            if sym not in self.input_alphabet:
                raise InputError(f"input symbol {sym!r} is not in the input alphabet")
        start = (self.initial, 0, ())
        seen = {start}
        queue = deque([start])
        results: set[tuple[str, ...]] = set()
        while queue:
            state, pos, out = queue.popleft()
            if pos == len(w) and state in self.accepting:
                results.add(out)
            for read, write, dst in self._by_state.get(state, ()):
                if read == EPSILON:
                    npos = pos
                elif pos < len(w) and w[pos] == read:
                    npos = pos + 1
                else:
                    continue
                nout = out if write == EPSILON else out + (write,)
                if len(nout) > max_out:
                    continue
                config = (dst, npos, nout)
                if config not in seen:
                    seen.add(config)
                    queue.append(config)
        return results

    # -- composition -------------------------------------------------------

    def compose(self, other: "Transducer") -> "Transducer":
        """Relation composition: feed this machine's output tape to `other`.

        The product moves jointly on real symbols; an epsilon write here or
        an epsilon read there advances one side alone.  The result is
        trimmed of unreachable and dead states.
        """
        if set(self.output_alphabet) != set(other.input_alphabet):
            raise ContractError("composition needs matching middle alphabets")
        transitions: set[tuple[str, str, str, str]] = set()
        pair = lambda a, b: f"({a},{b})"
        states1 = sorted(self.states)
        states2 = sorted(other.states)
        for src1, read, write, dst1 in sorted(self.transitions):
            if write == EPSILON:
                for q2 in states2:
                    transitions.add((pair(src1, q2), read, EPSILON, pair(dst1, q2)))
            else:
                for src2, read2, write2, dst2 in sorted(other.transitions):
                    if read2 == write:
                        transitions.add((pair(src1, src2), read, write2, pair(dst1, dst2)))
        for src2, read2, write2, dst2 in sorted(other.transitions):
            if read2 == EPSILON:
                for q1 in states1:
                    transitions.add((pair(q1, src2), EPSILON, write2, pair(q1, dst2)))
        composed = Transducer.build(
            self.input_alphabet,
            other.output_alphabet,
            pair(self.initial, other.initial),
            {pair(f1, f2) for f1 in self.accepting for f2 in other.accepting},
            transitions,
            states={pair(q1, q2) for q1 in states1 for q2 in states2},
        )
        return composed.trimmed()

    def compose_automaton(self, a: Nfa) -> Nfa:
        """NFA for {w : some output of this machine on w is accepted by a}.

        The automaton constrains the output tape; the result reads the
        input tape.  Trimmed like the transducer composition.
        """
        if set(self.output_alphabet) != set(a.alphabet):
            raise ContractError("automaton alphabet must match the output alphabet")
        pair = lambda q, p: f"({q},{p})"
        transitions: set[tuple[str, str, str]] = set()
        a_states = sorted(a.states)
        for src, read, write, dst in sorted(self.transitions):
            if write == EPSILON:
                for p in a_states:
                    transitions.add((pair(src, p), read, pair(dst, p)))
            else:
                for p, label, p2 in sorted(a.transitions):
                    if label == write:
                        transitions.add((pair(src, p), read, pair(dst, p2)))
        for p, label, p2 in sorted(a.transitions):
            if label == EPSILON:
                for q in sorted(self.states):
                    transitions.add((pair(q, p), EPSILON, pair(q, p2)))
        result = Nfa.build(
            self.input_alphabet,
            pair(self.initial, a.initial),
            {pair(f, g) for f in self.accepting for g in a.accepting},
            transitions,
            states={pair(q, p) for q in self.states for p in a.states},
        )
        return result.trimmed()

    def domain_nfa(self) -> Nfa:
        """Project away the output tape, keeping states and acceptance."""
        return Nfa(
            self.states,
            self.input_alphabet,
            self.initial,
            self.accepting,
            frozenset((src, read, dst) for src, read, _, dst in self.transitions),
        )

    def inverted(self) -> "Transducer":
        """Swap the tapes: the inverse relation."""
        return Transducer(
            self.output_alphabet,
            self.input_alphabet,
            self.states,
            self.initial,
            self.accepting,
            frozenset((src, write, read, dst) for src, read, write, dst in self.transitions),
        )

    def trimmed(self) -> "Transducer":
        fwd: dict[str, set[str]] = {}
        bwd: dict[str, set[str]] = {}
        for src, _, _, dst in self.transitions:
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
        return Transducer(
            self.input_alphabet,
            self.output_alphabet,
            frozenset(keep),
            self.initial,
            self.accepting & keep,
            frozenset(t for t in self.transitions if t[0] in keep and t[3] in keep),
        )

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "input_alphabet": list(self.input_alphabet),
            "output_alphabet": list(self.output_alphabet),
            "states": sorted(self.states),
            "initial": self.initial,
            "accepting": sorted(self.accepting),
            "transitions": [
                {"from": src, "read": read, "write": write, "to": dst}
                for src, read, write, dst in sorted(self.transitions)
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Transducer":
        try:
            transitions = [
                (t["from"], t["read"], t["write"], t["to"])
                for t in data["transitions"]
            ]
            return cls(
                tuple(data["input_alphabet"]),
                tuple(data["output_alphabet"]),
                frozenset(data["states"]),
                data["initial"],
                frozenset(data["accepting"]),
                frozenset(transitions),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed transducer object: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Transducer":
        return cls.from_dict(json.loads(text))
