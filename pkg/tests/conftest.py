import itertools
from functools import reduce

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from soire.regex import (EPSILON, Alphabet, Concat, Empty, Epsilon, Interleave, Opt, Plus,
                         Star, Sym, Union)
from soire.soa import SampleSet

settings.register_profile(
    "props", max_examples=1000, derandomize=True, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("props")

RUNNING_EXAMPLE = ["begk", "aabengk", "abegjj", "beg", "beghk", "behgj", "belhg",
                   "bheg", "bfcmd", "bfdm", "afmcd", "adf"]
MASTERS = ["acfu", "acful", "acfum", "acfulm", "acfuml"]

LETTERS = "abcd"
ABCD = Alphabet(LETTERS)


@pytest.fixture
def running_example():
    return SampleSet.from_strings(RUNNING_EXAMPLE, letters=True)


@pytest.fixture
def masters():
    return SampleSet.from_strings(MASTERS, letters=True)


def _shuffle(u, v):
    # naive recursion, deliberately unlike the memoised library version
    if not u:
        return {v}
    if not v:
        return {u}
    return {u[:1] + w for w in _shuffle(u[1:], v)} | {v[:1] + w for w in _shuffle(u, v[1:])}


def _join(xs, ys, n, op):
    by_len = {}
    for v in ys:
        by_len.setdefault(len(v), []).append(v)
    out = set()
    for u in xs:
        for k in range(n - len(u) + 1):
            for v in by_len.get(k, ()):
                out |= op(u, v)
    return out


def language(r, n):
    """Every word of L(r) of length <= n, by direct set semantics."""
    if isinstance(r, Empty):
        return set()
    if isinstance(r, Epsilon):
        return {()}
    if isinstance(r, Sym):
        return {(r.symbol.id,)} if n >= 1 else set()
    if isinstance(r, Union):
        return set().union(*(language(c, n) for c in r.items))
    if isinstance(r, Concat):
        return reduce(lambda a, b: _join(a, b, n, lambda u, v: {u + v}),
                      (language(c, n) for c in r.items))
    if isinstance(r, Interleave):
        return reduce(lambda a, b: _join(a, b, n, _shuffle),
                      (language(c, n) for c in r.items))
    inner = language(r.child, n)
    if isinstance(r, Opt):
        return inner | {()}
    closure, frontier = {()}, {()}
    while frontier:
        frontier = _join(frontier, inner, n, lambda u, v: {u + v}) - closure
        closure |= frontier
    if isinstance(r, Plus):
        return _join(closure, inner, n, lambda u, v: {u + v})
    return closure


def words_upto(symbols, n):
    for k in range(n + 1):
        yield from itertools.product(symbols, repeat=k)


def regexes(letters=LETTERS, max_leaves=6):
    syms = st.sampled_from([Sym(ABCD[c]) for c in letters])
    base = st.one_of(syms, st.just(EPSILON))

    def extend(children):
        nary = st.lists(children, min_size=2, max_size=3)
        return st.one_of(
            nary.map(Union), nary.map(Concat), nary.map(Interleave),
            children.map(Star), children.map(Plus), children.map(Opt),
        )

    return st.recursive(base, extend, max_leaves=max_leaves)


def samples_strategy(letters="abcdef", max_words=8, max_len=6):
    word = st.lists(st.sampled_from(letters), max_size=max_len).map("".join)
    return st.lists(word, min_size=1, max_size=max_words)
