"""Context-free grammars: normal forms, membership, emptiness, shortest words.

Rules are (lhs, rhs) pairs where rhs is a tuple of symbols; the empty tuple
is an epsilon rule.  The rule tuple keeps insertion order (first lhs is the
axiom in the text format), and all derived maps are computed lazily.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .errors import ContractError, InputError

Rule = "tuple[str, tuple[str, ...]]"


@dataclass(frozen=True)
class Cfg:
    nonterminals: frozenset[str]
    terminals: frozenset[str]
    rules: tuple[tuple[str, tuple[str, ...]], ...]
    axiom: str

    def __post_init__(self) -> None:
        if self.axiom not in self.nonterminals:
            raise InputError(f"axiom {self.axiom!r} is not a nonterminal")
        overlap = self.nonterminals & self.terminals
        if overlap:
            raise InputError(f"symbols {sorted(overlap)} are both terminal and nonterminal")
        symbols = self.nonterminals | self.terminals
        for lhs, rhs in self.rules:
            if lhs not in self.nonterminals:
                raise InputError(f"rule lhs {lhs!r} is not a nonterminal")
            for sym in rhs:
                if sym not in symbols:
                    raise InputError(f"rule symbol {sym!r} is not declared")

    @classmethod
    def build(
        cls,
        rules: Iterable[tuple[str, Iterable[str]]],
        axiom: str,
        nonterminals: Iterable[str] = (),
        terminals: Iterable[str] = (),
    ) -> "Cfg":
        """Construct a grammar; nonterminals default to the set of lhs symbols."""
        normalized: list[tuple[str, tuple[str, ...]]] = []
        seen = set()
        for lhs, rhs in rules:
            rule = (lhs, tuple(rhs))
            if rule not in seen:
                seen.add(rule)
                normalized.append(rule)
        nts = set(nonterminals) | {axiom} | {lhs for lhs, _ in normalized}
        terms = set(terminals)
        for _, rhs in normalized:
            for sym in rhs:
                if sym not in nts:
                    terms.add(sym)
        return cls(frozenset(nts), frozenset(terms), tuple(normalized), axiom)

    @cached_property
    def ordered_nonterminals(self) -> tuple[str, ...]:
        """Nonterminals in a stable order: axiom, then first appearance in
        the rules (left-hand sides before body symbols), then the rest
        sorted.  Iterating the frozenset directly is hash-order."""
        order = [self.axiom]
        seen = {self.axiom}
        for lhs, rhs in self.rules:
            for sym in (lhs, *rhs):
                if sym in self.nonterminals and sym not in seen:
                    seen.add(sym)
                    order.append(sym)
        order.extend(sorted(self.nonterminals - seen))
        return tuple(order)

    @cached_property
    def rules_by_lhs(self) -> Mapping[str, tuple[tuple[str, ...], ...]]:
        out: dict[str, list[tuple[str, ...]]] = {}
        for lhs, rhs in self.rules:
            out.setdefault(lhs, []).append(rhs)
        return {lhs: tuple(rhss) for lhs, rhss in out.items()}

    # -- normal form -------------------------------------------------------

    def is_cnf(self) -> bool:
        """Chomsky normal form: every rule is A -> B C, A -> t, or axiom -> eps,
        and the axiom never appears on a right-hand side."""
        for _, rhs in self.rules:
            if self.axiom in rhs:
                return False
        for lhs, rhs in self.rules:
            if len(rhs) == 0:
                if lhs != self.axiom:
                    return False
            elif len(rhs) == 1:
                if rhs[0] not in self.terminals:
                    return False
            elif len(rhs) == 2:
                if rhs[0] not in self.nonterminals or rhs[1] not in self.nonterminals:
                    return False
            else:
                return False
        return True

    def _fresh(self, base: str, taken: set[str]) -> str:
        name = base
        while name in taken:
            name += "'"
        taken.add(name)
        return name

    def cnf(self) -> "Cfg":
        """Convert to Chomsky normal form.

        Steps, in order: retire an axiom that occurs on a right-hand side,
        eliminate epsilon rules (keeping axiom -> eps when the grammar
        derives the empty word), eliminate unit rules, split long rules,
        and finally replace terminals inside two-symbol bodies.
        Fresh nonterminals carry structured names derived from the content
        they stand for.
        """
        if self.is_cnf():
            return self
        taken = set(self.nonterminals) | set(self.terminals)
        rules = list(self.rules)
        axiom = self.axiom

        if any(axiom in rhs for _, rhs in rules):
            new_axiom = self._fresh(axiom + "0", taken)
            rules.insert(0, (new_axiom, (axiom,)))
            axiom = new_axiom

        # epsilon elimination
        nullable: set[str] = set()
        changed = True
        while changed:
            changed = False
            for lhs, rhs in rules:
                if lhs not in nullable and all(s in nullable for s in rhs):
                    nullable.add(lhs)
                    changed = True
        expanded: list[tuple[str, tuple[str, ...]]] = []
        seen: set[tuple[str, tuple[str, ...]]] = set()

        def emit(lhs: str, rhs: tuple[str, ...]) -> None:
            rule = (lhs, rhs)
            if rule not in seen:
                seen.add(rule)
                expanded.append(rule)

        for lhs, rhs in rules:
            optional = [i for i, s in enumerate(rhs) if s in nullable]
            for mask in range(1 << len(optional)):
                dropped = {optional[i] for i in range(len(optional)) if mask >> i & 1}
                body = tuple(s for i, s in enumerate(rhs) if i not in dropped)
                if body:
                    emit(lhs, body)
        if axiom in nullable:
            expanded.insert(0, (axiom, ()))
        rules = expanded

        # unit rule elimination
        nts = {lhs for lhs, _ in rules} | {axiom} | set(self.nonterminals)
        unit_reach: dict[str, set[str]] = {a: {a} for a in nts}
        changed = True
        while changed:
            changed = False
            for lhs, rhs in rules:
                if len(rhs) == 1 and rhs[0] in nts:
                    for a in nts:
                        if lhs in unit_reach[a] and rhs[0] not in unit_reach[a]:
                            unit_reach[a].add(rhs[0])
                            changed = True
        non_unit = [
            (lhs, rhs) for lhs, rhs in rules if not (len(rhs) == 1 and rhs[0] in nts)
        ]
        merged: list[tuple[str, tuple[str, ...]]] = []
        seen = set()
        for a in sorted(nts, key=lambda x: (x != axiom, x)):
            for b in sorted(unit_reach[a], key=lambda x: (x != a, x)):
                for lhs, rhs in non_unit:
                    if lhs == b and (a, rhs) not in seen:
                        seen.add((a, rhs))
                        merged.append((a, rhs))
        rules = merged

        # split long rules
        split: list[tuple[str, tuple[str, ...]]] = []
        chain_names: dict[tuple[str, ...], str] = {}
        for lhs, rhs in rules:
            while len(rhs) > 2:
                tail = rhs[1:]
                if tail not in chain_names:
                    # dots, not spaces: names must stay single tokens in the text format
                    chain_names[tail] = self._fresh("<" + ".".join(tail) + ">", taken)
                split.append((lhs, (rhs[0], chain_names[tail])))
                lhs, rhs = chain_names[tail], tail
            split.append((lhs, rhs))
        rules = []
        seen = set()
        for rule in split:
            if rule not in seen:
                seen.add(rule)
                rules.append(rule)

        # terminals inside two-symbol bodies
        proxy_names: dict[str, str] = {}
        final: list[tuple[str, tuple[str, ...]]] = []
        for lhs, rhs in rules:
            if len(rhs) == 2:
                body = []
                for sym in rhs:
                    if sym in self.terminals:
                        if sym not in proxy_names:
                            proxy_names[sym] = self._fresh("<" + sym + ">", taken)
                        body.append(proxy_names[sym])
                    else:
                        body.append(sym)
                final.append((lhs, tuple(body)))
            else:
                final.append((lhs, rhs))
        for sym in sorted(proxy_names):
            final.append((proxy_names[sym], (sym,)))

        nts = {lhs for lhs, _ in final} | {axiom}
        for _, rhs in final:
            for sym in rhs:
                if sym not in self.terminals:
                    nts.add(sym)
        return Cfg(frozenset(nts), self.terminals, tuple(final), axiom)

    # -- language queries ---------------------------------------------------

    def productive(self) -> frozenset[str]:
        """Nonterminals that derive at least one terminal word."""
        good: set[str] = set()
        changed = True
        while changed:
            changed = False
            for lhs, rhs in self.rules:
                if lhs not in good and all(
                    s in self.terminals or s in good for s in rhs
                ):
                    good.add(lhs)
                    changed = True
        return frozenset(good)

    def nonempty(self) -> bool:
        return self.axiom in self.productive()

    def cyk(self, word: Iterable[str]) -> bool:
        """CYK membership for CNF grammars."""
        if not self.is_cnf():
            raise ContractError("cyk requires a grammar in Chomsky normal form")
        w = tuple(word)
        for sym in w:
            if sym not in self.terminals:
                raise InputError(f"word symbol {sym!r} is not a terminal")
        if not w:
            return (self.axiom, ()) in self.rules
        n = len(w)
        table: dict[tuple[int, int], set[str]] = {}
        for i, sym in enumerate(w):
            table[(i, 1)] = {
                lhs for lhs, rhs in self.rules if rhs == (sym,)
            }
        binary = [
            (lhs, rhs) for lhs, rhs in self.rules if len(rhs) == 2
        ]
        for span in range(2, n + 1):
            for i in range(n - span + 1):
                cell: set[str] = set()
                for k in range(1, span):
                    left = table[(i, k)]
                    right = table[(i + k, span - k)]
                    if left and right:
                        for lhs, (b, c) in binary:
                            if b in left and c in right:
                                cell.add(lhs)
                table[(i, span)] = cell
        return self.axiom in table[(0, n)]

    @cached_property
    def _terminal_rank(self) -> Mapping[str, int]:
        return {t: i for i, t in enumerate(sorted(self.terminals))}

    def shortest_word(self) -> Optional[tuple[str, ...]]:
        """A shortest derivable word, or None when the language is empty.

        Ties are broken lexicographically over the sorted terminal names,
        matching the automaton-side convention, so values are stable.
        Uses Knuth's generalization of Dijkstra over (length, word) costs.
        """
        rank = self._terminal_rank

        def key(word: tuple[str, ...]) -> tuple:
            return (len(word), tuple(rank[s] for s in word))

        settled: dict[str, tuple[str, ...]] = {}
        while True:
            best_nt: Optional[str] = None
            best_word: Optional[tuple[str, ...]] = None
            for lhs, rhs in self.rules:
                if lhs in settled:
                    continue
                parts: list[tuple[str, ...]] = []
                for sym in rhs:
                    if sym in self.terminals:
                        parts.append((sym,))
                    elif sym in settled:
                        parts.append(settled[sym])
                    else:
                        break
                else:
                    candidate = tuple(s for part in parts for s in part)
                    if best_word is None or key(candidate) < key(best_word):
                        best_word = candidate
                        best_nt = lhs
            if best_nt is None:
                break
            settled[best_nt] = best_word  # type: ignore[assignment]
        return settled.get(self.axiom)


# -- text format --------------------------------------------------------------


def parse_grammar(text: str) -> Cfg:
    """Parse the line-oriented grammar format.

    Each line reads "LHS -> sym sym ... | sym ...": alternatives are split
    on "|", tokens on whitespace, and an empty alternative denotes epsilon.
    Lines starting with "#" are comments.  Nonterminals are exactly the
    symbols that occur on some left-hand side; the first lhs is the axiom.
    """
    rules: list[tuple[str, tuple[str, ...]]] = []
    axiom: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "->" not in line:
            raise InputError(f"line {lineno}: expected 'LHS -> ...', got {line!r}")
        head, _, body = line.partition("->")
        lhs = head.strip()
        if not lhs or len(lhs.split()) != 1:
            raise InputError(f"line {lineno}: left-hand side must be a single symbol")
        if axiom is None:
            axiom = lhs
        for alt in body.split("|"):
            rules.append((lhs, tuple(alt.split())))
    if axiom is None:
        raise InputError("grammar text contains no rules")
    return Cfg.build(rules, axiom)


def format_grammar(g: Cfg) -> str:
    """Render a grammar in the text format, axiom group first.

    Nonterminals that have no rules cannot be expressed in this format and
    are silently dropped by a parse of the output.
    """
    order: list[str] = []
    grouped: dict[str, list[tuple[str, ...]]] = {}
    for lhs, rhs in g.rules:
        if lhs not in grouped:
            grouped[lhs] = []
            order.append(lhs)
        grouped[lhs].append(rhs)
    if g.axiom in grouped:
        order.remove(g.axiom)
        order.insert(0, g.axiom)
    lines = []
    for lhs in order:
        alts = " | ".join(" ".join(rhs) for rhs in grouped[lhs])
        lines.append(f"{lhs} -> {alts}")
    return "\n".join(lines) + "\n"
