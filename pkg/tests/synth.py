"""Synthetic workloads for the scale checks."""

import random

from soire.regex import Concat, Interleave, Opt, Plus, Star, Sym, Union, parse

SCALE_EXPR = "a*b?(c d? e & f g? & h+)(i|j k?)(l & m? & n*)o?"


def generate(r, rng):
    if isinstance(r, Sym):
        return [r.symbol.id]
    if isinstance(r, Concat):
        return [a for c in r.items for a in generate(c, rng)]
    if isinstance(r, Union):
        return generate(rng.choice(r.items), rng)
    if isinstance(r, Opt):
        return generate(r.child, rng) if rng.random() < 0.5 else []
    if isinstance(r, (Star, Plus)):
        n = (1 if isinstance(r, Plus) else 0)
        while rng.random() < 0.5:
            n += 1
        return [a for _ in range(n) for a in generate(r.child, rng)]
    if isinstance(r, Interleave):
        parts = [generate(c, rng) for c in r.items]
        out = []
        idx = [0] * len(parts)
        live = [k for k, p in enumerate(parts) if p]
        while live:
            k = rng.choice(live)
            out.append(parts[k][idx[k]])
            idx[k] += 1
            if idx[k] == len(parts[k]):
                live.remove(k)
        return out
    return []


def structured_words(n, seed=7):
    rng = random.Random(seed)
    from soire.regex import Alphabet
    al = Alphabet()
    r = parse(SCALE_EXPR, al)
    return [tuple(generate(r, rng)) for _ in range(n)], al, r


def uniform_words(n, symbols=15, max_len=12, seed=11):
    rng = random.Random(seed)
    return [tuple(rng.randrange(symbols) for _ in range(rng.randint(0, max_len))) for _ in range(n)]
