"""Preciseness and conciseness measures for inferred expressions.

Word counts come from an ε-free position-style NFA built compositionally
(interleaving is a product automaton) and determinized on the fly, so each
word is counted exactly once however ambiguous the expression is.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .regex import (Concat, Empty, Epsilon, Interleave, Opt, Plus, Regex,
                    Star, Sym, Union, matches, symbol_leaves, tokens, to_text)
from .soa import SampleSet

DEFAULT_STATE_CAP = 10 ** 6
METACHAR_COUNT = 8


class StateLimitExceeded(RuntimeError):
    pass


class SampleOutsideLanguage(ValueError):
    pass


class _Nfa:
    """ε-free NFA with a single initial state."""

    __slots__ = ("delta", "init", "finals")

    def __init__(self):
        self.delta: list[dict[int, set[int]]] = []
        self.init = 0
        self.finals: set[int] = set()

    def new_state(self) -> int:
        self.delta.append({})
        return len(self.delta) - 1

    def add(self, p: int, a: int, q: int) -> None:
        self.delta[p].setdefault(a, set()).add(q)

    def copy_out(self, src: int, dst: int) -> None:
        """Give ``dst`` every outgoing transition of ``src``."""
        for a, qs in list(self.delta[src].items()):
            self.delta[dst].setdefault(a, set()).update(qs)

    def embed(self, other: _Nfa) -> int:
        """Copy ``other``'s states in; returns the offset."""
        off = len(self.delta)
        for d in other.delta:
            self.delta.append({a: {q + off for q in qs} for a, qs in d.items()})
        return off

    def __len__(self) -> int:
        return len(self.delta)


def _fresh(final: bool) -> _Nfa:
    m = _Nfa()
    m.new_state()
    if final:
        m.finals.add(0)
    return m


def _build(r: Regex, cap: int) -> _Nfa:
    if isinstance(r, Empty):
        return _fresh(False)
    if isinstance(r, Epsilon):
        return _fresh(True)
    if isinstance(r, Sym):
        m = _fresh(False)
        q = m.new_state()
        m.add(0, r.symbol.id, q)
        m.finals.add(q)
        return m
    if isinstance(r, (Star, Plus, Opt)):
        inner = _build(r.child, cap)
        m = _fresh(r.nullable)
        off = m.embed(inner)
        m.copy_out(off + inner.init, 0)
        m.finals |= {f + off for f in inner.finals}
        if not isinstance(r, Opt):
            for f in inner.finals:
                m.copy_out(off + inner.init, f + off)
        return m
    parts = [_build(c, cap) for c in r.items]
    if isinstance(r, Union):
        m = _fresh(any(p.init in p.finals for p in parts))
        for p in parts:
            off = m.embed(p)
            m.copy_out(off + p.init, 0)
            m.finals |= {f + off for f in p.finals}
        return m
    if isinstance(r, Concat):
        m = _Nfa()
        m.embed(parts[0])
        m.finals = set(parts[0].finals)
        for p in parts[1:]:
            off = m.embed(p)
            start = off + p.init
            for f in m.finals:
                m.copy_out(start, f)
            new_finals = {f + off for f in p.finals}
            if p.init in p.finals:
                new_finals |= m.finals
            m.finals = new_finals
        return m
    if isinstance(r, Interleave):
        return _product(parts, cap)
    raise TypeError(r)


def _product(parts: Sequence[_Nfa], cap: int) -> _Nfa:
    m = _Nfa()
    start = tuple(p.init for p in parts)
    index = {start: m.new_state()}
    todo = [start]
    while todo:
        st = todo.pop()
        here = index[st]
        if all(q in p.finals for q, p in zip(st, parts)):
            m.finals.add(here)
        for k, (q, p) in enumerate(zip(st, parts)):
            for a, targets in p.delta[q].items():
                for t in targets:
                    nxt = st[:k] + (t,) + st[k + 1:]
                    if nxt not in index:
                        if len(index) >= cap:
                            raise StateLimitExceeded(
                                f"interleaving product exceeds {cap} states")
                        index[nxt] = m.new_state()
                        todo.append(nxt)
                    m.add(here, a, index[nxt])
    return m


def count_words(r: Regex, ell_max: int, state_cap: int = DEFAULT_STATE_CAP) -> list[int]:
    """Number of distinct words of each length 0..ell_max in L(r)."""
    nfa = _build(r, state_cap)
    finals = nfa.finals
    alphabet = sorted(r.symbols)
    start = frozenset((nfa.init,))
    moves: dict[frozenset, list[frozenset]] = {}
    counts = []
    layer = {start: 1}
    for _ in range(ell_max + 1):
        counts.append(sum(n for s, n in layer.items() if s & finals))
        nxt: dict[frozenset, int] = {}
        for s, n in layer.items():
            outs = moves.get(s)
            if outs is None:
                outs = []
                for a in alphabet:
                    t = frozenset(q for p in s for q in nfa.delta[p].get(a, ()))
                    if t:
                        outs.append(t)
                moves[s] = outs
                if len(moves) > state_cap:
                    raise StateLimitExceeded(f"determinization exceeds {state_cap} states")
            for t in outs:
                nxt[t] = nxt.get(t, 0) + n
        layer = nxt
    return counts


def ell_max(r: Regex) -> int:
    return 2 * len(symbol_leaves(r)) + 1


def language_size(r: Regex, state_cap: int = DEFAULT_STATE_CAP) -> int:
    return sum(count_words(r, ell_max(r), state_cap)[1:])


def log2_binomial(n: int, k: int) -> float:
    if k < 0 or k > n:
        raise ValueError(f"C({n}, {k}) is undefined")
    k = min(k, n - k)
    return sum(math.log2(n - i) for i in range(k)) - math.log2(math.factorial(k)) if k else 0.0


def _length_profile(r: Regex, samples: SampleSet, top: int) -> dict[int, int]:
    per_length: dict[int, int] = {}
    for w in samples.distinct():
        if 1 <= len(w) <= top:
            if not matches(r, w):
                raise SampleOutsideLanguage(
                    f"sample {samples.alphabet.spell(w)!r} is not in L({to_text(r)})")
            per_length[len(w)] = per_length.get(len(w), 0) + 1
    return per_length


def datacost(r: Regex, samples: SampleSet, state_cap: int = DEFAULT_STATE_CAP,
             counts: list[int] | None = None) -> float:
    """Bits to pick the sample's words of each length out of L(r)."""
    top = ell_max(r)
    if counts is None:
        counts = count_words(r, top, state_cap)
    per_length = _length_profile(r, samples, top)
    total = 0.0
    for ell in range(1, top + 1):
        k = per_length.get(ell, 0)
        if k > counts[ell]:
            raise SampleOutsideLanguage(f"{k} samples of length {ell} but |L| = {counts[ell]}")
        total += 2 * math.log2(ell) + log2_binomial(counts[ell], k)
    return total


def len_metric(r: Regex) -> int:
    n = sum(1 for _ in tokens(r, explicit_concat=True))
    sigma = len(set(symbol_leaves(r)))
    return n * math.ceil(math.log2(sigma + METACHAR_COUNT))


def nd(r: Regex) -> int:
    if isinstance(r, (Star, Plus, Opt)):
        return nd(r.child) + 1
    return max((nd(c) for c in r.children), default=0)


@dataclass
class MetricsReport:
    expression: str
    language_size: int
    datacost: float | None
    len: int
    nd: int
    ell_max: int
    counts: list[int] = field(default_factory=list)
    note: str | None = None

    def to_json(self) -> str:
        doc = {
            "expression": self.expression,
            "language_size": str(self.language_size),
            "datacost": None if self.datacost is None else round(self.datacost, 6),
            "len": self.len,
            "nd": self.nd,
            "ell_max": self.ell_max,
            "counts": [str(c) for c in self.counts],
        }
        if self.note:
            doc["note"] = self.note
        return json.dumps(doc, ensure_ascii=False)

    def to_text(self) -> str:
        dc = "n/a" if self.datacost is None else f"{self.datacost:.3f}"
        lines = [
            f"expression     {self.expression}",
            f"|L(r)|         {self.language_size}",
            f"datacost       {dc}",
            f"Len            {self.len}",
            f"ND             {self.nd}",
            f"ell_max        {self.ell_max}",
        ]
        if self.note:
            lines.append(f"note           {self.note}")
        return "\n".join(lines)


def evaluate(r: Regex, samples: SampleSet | None = None,
             state_cap: int = DEFAULT_STATE_CAP) -> MetricsReport:
    top = ell_max(r)
    counts = count_words(r, top, state_cap)
    dc, note = None, None
    if samples is not None:
        try:
            dc = datacost(r, samples, state_cap, counts)
        except SampleOutsideLanguage as exc:
            note = str(exc)
    return MetricsReport(to_text(r), sum(counts[1:]), dc, len_metric(r), nd(r), top,
                         counts, note)


def words_of_length(r: Regex, symbols: Iterable[int], ell: int) -> int:
    """Brute-force count of length-``ell`` words over ``symbols`` matched by ``r``."""
    from itertools import product
    return sum(1 for w in product(sorted(set(symbols)), repeat=ell) if matches(r, w))
