"""Learning SOIREs from positive samples.

The pipeline builds the 2T-INF automaton of the sample and rewrites it into
an expression. Cycles are resolved either by ``+`` (a self-loop) or by
``merge``, which splits the symbols of a strongly connected component into
groups whose relative order never conflicts and joins the sub-results with
``&``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

from .regex import (EMPTY, EPSILON, Regex, Sym, concat, interleave, plus,
                    simplify, union)
from .soa import SRC, SampleSet, Soa, build_soa

__all__ = [
    "ConstraintGraph", "por", "cs", "filter_samples", "constraint_graph",
    "clique_removal", "mis_partition", "merge", "soa2soire", "isoire",
]

log = logging.getLogger(__name__)


def _precedes(samples: SampleSet) -> dict[int, int]:
    """For each symbol y, a bitmask of the symbols occurring before some y."""
    before: dict[int, int] = {}
    for w in set(samples.words):
        seen = 0
        for a in w:
            before[a] = before.get(a, 0) | seen
            seen |= 1 << a
    return before


def por(samples: SampleSet) -> set[tuple[int, int]]:
    """Ordered pairs (x, y), x != y, with x before y in some word."""
    out = set()
    for y, mask in _precedes(samples).items():
        x = 0
        while mask:
            if mask & 1 and x != y:
                out.add((x, y))
            mask >>= 1
            x += 1
    return out


def cs(samples: SampleSet) -> set[tuple[int, int]]:
    """The pairs of ``por`` whose reverse is in ``por`` too."""
    pairs = por(samples)
    return {(x, y) for x, y in pairs if (y, x) in pairs}


def filter_samples(symbols: Iterable[int], samples: SampleSet,
                   keep_empty: bool = True) -> SampleSet:
    """Project every word onto ``symbols``; order and multiplicity are kept."""
    keep = frozenset(symbols)
    words = [tuple(a for a in w if a in keep) for w in samples.words]
    if not keep_empty:
        words = [w for w in words if w]
    return SampleSet(words, samples.alphabet)


@dataclass
class ConstraintGraph:
    """Undirected graph over symbols; an edge marks an order conflict."""

    nodes: list[int] = field(default_factory=list)
    adj: dict[int, set[int]] = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, nodes: Iterable[int], pairs: Iterable[tuple[int, int]]):
        g = cls()
        for v in nodes:
            g.add_node(v)
        for x, y in pairs:
            if x != y:
                g.add_node(x)
                g.add_node(y)
                g.adj[x].add(y)
                g.adj[y].add(x)
        return g

    def add_node(self, v: int) -> None:
        if v not in self.adj:
            self.nodes.append(v)
            self.adj[v] = set()

    @property
    def edges(self) -> set[frozenset[int]]:
        return {frozenset((x, y)) for x in self.nodes for y in self.adj[x]}

    def __len__(self) -> int:
        return len(self.nodes)

    def without(self, removed: Iterable[int]) -> ConstraintGraph:
        gone = set(removed)
        nodes = [v for v in self.nodes if v not in gone]
        return ConstraintGraph(nodes, {v: self.adj[v] - gone for v in nodes})

    def is_independent(self, vs: Iterable[int]) -> bool:
        vs = set(vs)
        return all(not (self.adj[v] & vs) for v in vs)


def constraint_graph(samples: SampleSet) -> ConstraintGraph:
    return ConstraintGraph.from_pairs(samples.symbols(), cs(samples))


def _ramsey(nodes: list[int], adj: dict[int, set[int]]) -> tuple[set[int], set[int]]:
    # Returns (clique, independent set); the pivot is the first node and
    # ties keep the neighbourhood's result.
    if not nodes:
        return set(), set()
    v, rest = nodes[0], nodes[1:]
    nbrs = [u for u in rest if u in adj[v]]
    non_nbrs = [u for u in rest if u not in adj[v]]
    c1, i1 = _ramsey(nbrs, adj)
    c2, i2 = _ramsey(non_nbrs, adj)
    c1.add(v)
    i2.add(v)
    return max(c1, c2, key=len), max(i1, i2, key=len)


def _ramsey_order(g: ConstraintGraph) -> list[int]:
    # low degree first, then the graph's own node order
    pos = {v: k for k, v in enumerate(g.nodes)}
    return sorted(g.nodes, key=lambda v: (len(g.adj[v]), pos[v]))


def clique_removal(g: ConstraintGraph) -> set[int]:
    """Approximate maximum independent set by repeated Ramsey clique removal.

    The best of the independent sets found while peeling off cliques is
    returned, then greedily extended so that it is maximal in ``g``.
    """
    if not g.nodes:
        raise ValueError("clique_removal() needs a non-empty graph")
    nodes = _ramsey_order(g)
    best: set[int] = set()
    while nodes:
        clique, iset = _ramsey(nodes, g.adj)
        if len(iset) > len(best):
            best = iset
        nodes = [v for v in nodes if v not in clique]
    for v in _ramsey_order(g):
        if v not in best and not (g.adj[v] & best):
            best.add(v)
    return best


def mis_partition(g: ConstraintGraph) -> list[list[int]]:
    """Peel independent sets off ``g`` until no node is left."""
    out = []
    while g.nodes:
        w = clique_removal(g)
        out.append([v for v in g.nodes if v in w])
        g = g.without(w)
    return out


def merge(samples: SampleSet) -> Regex:
    """Interleave the sub-expressions learned for each conflict-free group."""
    distinct = SampleSet(samples.distinct(), samples.alphabet)
    groups = mis_partition(constraint_graph(distinct))
    log.debug("merge: groups %s", [[samples.alphabet[a].name for a in grp] for grp in groups])
    if len(groups) <= 1:
        # no order conflict splits the component; fall back to (a|b|...)+
        syms = groups[0] if groups else distinct.symbols()
        return plus(union(*(Sym(samples.alphabet[a]) for a in syms)))
    parts = []
    for grp in groups:
        sub = filter_samples(grp, distinct)
        parts.append(soa2soire(sub, build_soa(sub)))
    return interleave(*parts)


def _or_pair(soa: Soa, first: list[int]) -> tuple[int, int]:
    reach = {v: soa.reach(v) for v in first}
    pairs = [(u, v) for i, u in enumerate(first) for v in first[i + 1:]]
    common = {p: reach[p[0]] & reach[p[1]] for p in pairs}
    maximal = [p for p in pairs if not any(common[p] < common[q] for q in pairs)]
    return maximal[0]


def soa2soire(samples: SampleSet, soa: Soa) -> Regex:
    """Rewrite a (generalized) SOA into a SOIRE accepting at least its words.

    ``soa`` is not modified. The result is not simplified; ``isoire`` does
    that.
    """
    soa = soa.copy()
    prefix: list[Regex] = []
    while True:
        if not soa.edges:
            result: Regex = EMPTY
            break
        if len(soa.vertices) == 2:
            result = EPSILON
            break
        comps = soa.sccs()
        if comps:
            comp = comps[0]
            if len(comp) == 1:
                label = plus(soa.labels[comp[0]])
            else:
                syms = set().union(*(soa.labels[v].symbols for v in comp))
                label = merge(filter_samples(syms, samples, keep_empty=False))
            log.debug("cycle: %s -> %s", [soa.label_text(v) for v in comp], label)
            soa.contract(comp, label)
            continue
        first = soa.first()
        if soa.succ(SRC) != set(first):
            e = soa.add_epsilon()
            log.debug("add epsilon before %s", [soa.label_text(v) for v in soa.succ(e)])
            continue
        if len(first) == 1:
            v = first[0]
            log.debug("split off %s", soa.label_text(v))
            prefix.append(soa.labels[v])
            soa.absorb_into_source(v)
            continue
        for v in first:
            region = soa.exclusive_region(v)
            if len(region) > 1:
                label = soa2soire(samples, soa.extract(region))
                log.debug("region %s -> %s", [soa.label_text(u) for u in soa.ordered(region)], label)
                soa.contract(region, label)
                break
        else:
            u, v = _or_pair(soa, first)
            label = union(soa.labels[u], soa.labels[v])
            log.debug("or %s, %s", soa.label_text(u), soa.label_text(v))
            soa.contract((u, v), label)
    if isinstance(result, type(EMPTY)) and prefix:
        raise AssertionError("SOA lost its path to the sink")
    return concat(*prefix, result)


def isoire(samples: SampleSet) -> Regex:
    """Infer a SOIRE accepting every word of ``samples``."""
    return simplify(soa2soire(samples, build_soa(samples)))
