"""Single occurrence automata and the graph operations used to rewrite them.

An SOA is a digraph whose inner vertices carry expressions (plain symbols
right after construction, arbitrary pairwise alphabet-disjoint SOIREs once
vertices have been contracted). ``src`` and ``snk`` are the only entry and
exit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .regex import EPSILON, Alphabet, Regex, Sym, to_text

SRC = 0
SNK = 1

_NO_RANK = math.inf
# creation stamps are shared by all automata so extracted copies never tie
_creation = itertools.count()


@dataclass
class SampleSet:
    """Ordered multiset of words (tuples of symbol ids) over an alphabet."""

    words: list[tuple[int, ...]] = field(default_factory=list)
    alphabet: Alphabet = field(default_factory=Alphabet)

    @classmethod
    def from_strings(cls, items: Iterable[str], alphabet: Alphabet | None = None,
                     letters: bool | None = None) -> SampleSet:
        alphabet = Alphabet() if alphabet is None else alphabet
        return cls([alphabet.word(s, letters) for s in items], alphabet)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.words)

    def distinct(self) -> list[tuple[int, ...]]:
        return list(dict.fromkeys(self.words))

    def symbols(self) -> list[int]:
        """Symbol ids occurring in the words, in order of first appearance."""
        seen: dict[int, None] = {}
        for w in self.words:
            for a in w:
                if a not in seen:
                    seen[a] = None
        return list(seen)

    def spelled(self) -> list[str]:
        return [self.alphabet.spell(w) for w in self.words]


class SoaError(ValueError):
    pass


class Soa:
    """Generalized single occurrence automaton.

    Inner vertex ids are allocated from a counter; ``order_key`` gives every
    vertex a deterministic position (rank of its earliest symbol in the
    sample, then creation order) which all iteration goes through.
    """

    def __init__(self, rank: dict[int, int] | None = None):
        self.labels: dict[int, Regex] = {}
        self._succ: dict[int, set[int]] = {SRC: set(), SNK: set()}
        self._pred: dict[int, set[int]] = {SRC: set(), SNK: set()}
        self.rank = dict(rank or {})
        self._keys: dict[int, tuple] = {SRC: (-1, 0), SNK: (_NO_RANK, math.inf)}
        self._ids = itertools.count(2)

    src = SRC
    snk = SNK

    # -- construction -----------------------------------------------------

    def add_vertex(self, label: Regex) -> int:
        v = next(self._ids)
        self.labels[v] = label
        self._succ[v] = set()
        self._pred[v] = set()
        ranks = [self.rank.get(a, _NO_RANK) for a in label.symbols]
        self._keys[v] = (min(ranks, default=_NO_RANK), next(_creation))
        return v

    def add_edge(self, x: int, y: int) -> None:
        self._succ[x].add(y)
        self._pred[y].add(x)

    def remove_edge(self, x: int, y: int) -> None:
        self._succ[x].discard(y)
        self._pred[y].discard(x)

    def copy(self) -> Soa:
        other = Soa.__new__(Soa)
        other.labels = dict(self.labels)
        other._succ = {v: set(s) for v, s in self._succ.items()}
        other._pred = {v: set(s) for v, s in self._pred.items()}
        other.rank = self.rank
        other._keys = dict(self._keys)
        other._ids = itertools.count(max(self._succ) + 1)
        return other

    # -- queries ----------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return self.ordered(self._succ)

    @property
    def inner(self) -> list[int]:
        return self.ordered(v for v in self._succ if v not in (SRC, SNK))

    @property
    def edges(self) -> set[tuple[int, int]]:
        return {(x, y) for x, ys in self._succ.items() for y in ys}

    def order_key(self, v: int) -> tuple:
        return self._keys[v]

    def ordered(self, vs: Iterable[int]) -> list[int]:
        return sorted(vs, key=self._keys.__getitem__)

    def _check(self, v: int) -> None:
        if v not in self._succ:
            raise SoaError(f"unknown vertex {v}")

    def succ(self, v: int) -> set[int]:
        self._check(v)
        return set(self._succ[v])

    def pred(self, v: int) -> set[int]:
        self._check(v)
        return set(self._pred[v])

    def reach(self, v: int) -> set[int]:
        """Vertices reachable from ``v`` by at least one edge."""
        self._check(v)
        seen: set[int] = set()
        stack = list(self._succ[v])
        while stack:
            x = stack.pop()
            if x not in seen:
                seen.add(x)
                stack.extend(self._succ[x])
        return seen

    def _reach_avoiding(self, start: int, avoid: int) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self._succ[x]:
                if y != avoid and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def first(self) -> list[int]:
        """Inner vertices whose only predecessor is the source."""
        return [v for v in self.inner if self._pred[v] == {SRC}]

    def label_text(self, v: int) -> str:
        if v == SRC:
            return "src"
        if v == SNK:
            return "snk"
        return to_text(self.labels[v])

    def sccs(self) -> list[list[int]]:
        """Strongly connected components that contain a cycle.

        A singleton counts only with a self-loop. Components come out sorted
        by their earliest vertex in ``order_key``; members are sorted too.
        """
        index: dict[int, int] = {}
        low: dict[int, int] = {}
        on_stack: set[int] = set()
        stack: list[int] = []
        comps: list[list[int]] = []
        counter = itertools.count()
        for root in self.vertices:
            if root in index:
                continue
            index[root] = low[root] = next(counter)
            stack.append(root)
            on_stack.add(root)
            work = [(root, iter(self.ordered(self._succ[root])))]
            while work:
                v, it = work[-1]
                for w in it:
                    if w not in index:
                        index[w] = low[w] = next(counter)
                        stack.append(w)
                        on_stack.add(w)
                        work.append((w, iter(self.ordered(self._succ[w]))))
                        break
                    if w in on_stack:
                        low[v] = min(low[v], index[w])
                else:
                    work.pop()
                    if work:
                        u = work[-1][0]
                        low[u] = min(low[u], low[v])
                    if low[v] == index[v]:
                        comp = []
                        while True:
                            w = stack.pop()
                            on_stack.discard(w)
                            comp.append(w)
                            if w == v:
                                break
                        if len(comp) > 1 or v in self._succ[v]:
                            comps.append(self.ordered(comp))
        comps.sort(key=lambda c: self._keys[c[0]])
        return comps

    def has_cycle(self) -> bool:
        return bool(self.sccs())

    def exclusive(self, v: int) -> set[int]:
        """Vertices u such that every src-to-snk path through u visits v first.

        Always contains ``v``; never contains ``src`` or ``snk``.
        """
        self._check(v)
        if v in (SRC, SNK):
            raise SoaError("exclusive() needs an inner vertex")
        bypass = self._reach_avoiding(SRC, v)
        return {v} | {u for u in self.reach(v) if u not in bypass and u not in (SRC, SNK)}

    def exclusive_region(self, v: int) -> set[int]:
        """The single-entry, single-exit part of ``exclusive(v)``.

        Let t be the farthest vertex that both post-dominates ``v`` (every
        path from v to snk passes t) and is exclusive to ``v``. The region is
        every vertex on a path from v to t. It is entered only through v and
        left only from t, so it can be extracted and contracted without
        adding words. Without such a t the region is ``{v}``.
        """
        excl = self.exclusive(v)
        post = [t for t in excl - {v} if SNK not in self._reach_avoiding(v, t)]
        if not post:
            return {v}
        # post-dominators of v are totally ordered along every path
        t = max(post, key=lambda x: len(self.reach(v) - self.reach(x)))
        between = self.reach(v) & {u for u in self._succ if t in self.reach(u)}
        return {v, t} | between

    def accepts(self, word: Sequence[int]) -> bool:
        """Path check for symbol-labelled SOAs (as built from samples)."""
        by_symbol = {next(iter(lab.symbols)): v for v, lab in self.labels.items()
                     if isinstance(lab, Sym)}
        cur = SRC
        for a in word:
            nxt = by_symbol.get(a)
            if nxt is None or nxt not in self._succ[cur]:
                return False
            cur = nxt
        return SNK in self._succ[cur]

    # -- rewriting --------------------------------------------------------

    def contract(self, vs: Iterable[int], label: Regex) -> int:
        """Replace the vertices ``vs`` by one new vertex labelled ``label``.

        Edges crossing the boundary are moved to the new vertex; edges inside
        ``vs`` (and hence any self-loop on the result) disappear.
        """
        group = set(vs)
        if not group:
            raise SoaError("contract() needs a non-empty vertex set")
        for u in group:
            self._check(u)
            if u in (SRC, SNK):
                raise SoaError("cannot contract src or snk")
        ins = {x for u in group for x in self._pred[u]} - group
        outs = {y for u in group for y in self._succ[u]} - group
        for u in group:
            for x in self._pred.pop(u):
                if x not in group:
                    self._succ[x].discard(u)
            for y in self._succ.pop(u):
                if y not in group:
                    self._pred[y].discard(u)
            del self.labels[u]
            del self._keys[u]
        w = self.add_vertex(label)
        for x in ins:
            self.add_edge(x, w)
        for y in outs:
            self.add_edge(w, y)
        return w

    def absorb_into_source(self, v: int) -> None:
        """Contract ``{src, v}`` into ``src``; ``v`` must be src's only successor."""
        if self._succ[SRC] != {v}:
            raise SoaError("vertex is not the only successor of src")
        for y in self._succ.pop(v):
            self._pred[y].discard(v)
            if y != v:
                self.add_edge(SRC, y)
        self._pred.pop(v)
        self._succ[SRC].discard(v)
        del self.labels[v]
        del self._keys[v]

    def extract(self, vs: Iterable[int]) -> Soa:
        """Copy of the subgraph on ``vs`` with fresh src/snk; self is unchanged."""
        group = set(vs)
        for u in group:
            self._check(u)
            if u in (SRC, SNK):
                raise SoaError("cannot extract src or snk")
        sub = Soa(self.rank)
        mapping = {}
        for u in self.ordered(group):
            w = sub.add_vertex(self.labels[u])
            sub._keys[w] = self._keys[u]
            mapping[u] = w
        for u in group:
            for y in self._succ[u]:
                if y in group:
                    sub.add_edge(mapping[u], mapping[y])
                else:
                    sub.add_edge(mapping[u], SNK)
            if self._pred[u] - group:
                sub.add_edge(SRC, mapping[u])
        return sub

    def add_epsilon(self) -> int:
        """Route src's edges to vertices with several predecessors via a new ε vertex."""
        targets = [v for v in self.ordered(self._succ[SRC]) if len(self._pred[v]) > 1]
        e = self.add_vertex(EPSILON)
        for v in targets:
            self.remove_edge(SRC, v)
            self.add_edge(e, v)
        self.add_edge(SRC, e)
        return e

    # -- export -----------------------------------------------------------

    def to_dot(self, name: str = "soa") -> str:
        def quote(s: str) -> str:
            return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        lines.append('  n0 [label="src", shape=circle, style=filled, fillcolor="#3366cc", fontcolor=white];')
        lines.append('  n1 [label="snk", shape=doublecircle, style=filled, fillcolor="#339933", fontcolor=white];')
        for v in self.inner:
            lines.append(f"  n{v} [label={quote(self.label_text(v))}, shape=circle];")
        for x in self.vertices:
            for y in self.ordered(self._succ[x]):
                lines.append(f"  n{x} -> n{y};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        es = ", ".join(f"{self.label_text(x)}->{self.label_text(y)}"
                       for x in self.vertices for y in self.ordered(self._succ[x]))
        return f"Soa({es})"


def first_appearance(samples: SampleSet) -> dict[int, int]:
    return {a: k for k, a in enumerate(samples.symbols())}


def build_soa(samples: SampleSet) -> Soa:
    """The 2T-INF automaton: one vertex per symbol, one edge per adjacent pair."""
    soa = Soa(first_appearance(samples))
    vertex: dict[int, int] = {}
    for a in samples.symbols():
        vertex[a] = soa.add_vertex(Sym(samples.alphabet[a]))
    pairs: set[tuple[int, int]] = set()
    for w in set(samples.words):
        if not w:
            pairs.add((SRC, SNK))
            continue
        pairs.add((SRC, vertex[w[0]]))
        pairs.update((vertex[x], vertex[y]) for x, y in zip(w, w[1:]))
        pairs.add((vertex[w[-1]], SNK))
    for x, y in pairs:
        soa.add_edge(x, y)
    return soa
