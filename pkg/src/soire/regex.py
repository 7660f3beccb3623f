"""Regular expressions with interleaving: AST, text syntax, semantics.

Expressions are immutable trees over interned symbols. The concrete syntax
uses ``|`` (union), ``&`` (interleaving), juxtaposition or ``·``
(concatenation) and the postfix operators ``? * +``. Binding strength from
tightest to loosest is: postfix, concatenation, ``&``, ``|``.

>>> alpha = Alphabet()
>>> r = parse("a(bc)?d+", alpha)
>>> to_text(r)
'a(bc)?d+'
>>> matches(r, alpha.word("abcdd"))
True
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Symbol", "Alphabet", "Regex", "Empty", "Epsilon", "Sym", "Union", "Concat",
    "Interleave", "Star", "Plus", "Opt", "EMPTY", "EPSILON", "RegexSyntaxError",
    "union", "concat", "interleave", "star", "plus", "opt",
    "parse", "to_text", "tokens", "is_soire", "shuffle", "matches", "derive",
    "simplify", "canonical", "equivalent_modulo_order", "symbol_leaves",
]

METACHARS = frozenset("|·&?*+()")
EPSILON_TOKENS = ("ε", "EPS")
EMPTY_TOKENS = ("∅", "EMPTY")
_EXTRA_NAME_CHARS = frozenset("_-.:")


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


def _is_name_char(ch: str) -> bool:
    return (ch.isalnum() or ch in _EXTRA_NAME_CHARS) and ch not in "εΕ∅"


def valid_name(name: str) -> bool:
    return bool(name) and all(_is_name_char(c) for c in name)


@dataclass(frozen=True, order=True)
class Symbol:
    id: int
    name: str


class Alphabet:
    """Interning table mapping symbol names to dense integer ids."""

    def __init__(self, names: Iterable[str] = ()):
        self._symbols: list[Symbol] = []
        self._by_name: dict[str, Symbol] = {}
        for name in names:
            self.intern(name)

    def intern(self, name: str) -> Symbol:
        sym = self._by_name.get(name)
        if sym is None:
            if not valid_name(name):
                raise ValueError(f"invalid symbol name {name!r}")
            sym = Symbol(len(self._symbols), name)
            self._symbols.append(sym)
            self._by_name[name] = sym
        return sym

    def __getitem__(self, key: int | str) -> Symbol:
        if isinstance(key, str):
            return self._by_name[key]
        return self._symbols[key]

    def __contains__(self, name: object) -> bool:
        return name in self._by_name

    def __len__(self) -> int:
        return len(self._symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._symbols)

    def __repr__(self) -> str:
        return f"Alphabet({[s.name for s in self._symbols]!r})"

    def single_letters(self) -> bool:
        return all(len(s.name) == 1 for s in self._symbols)

    def word(self, text: str, letters: bool | None = None) -> tuple[int, ...]:
        """Intern a word written as whitespace-separated names or as letters.

        With ``letters=None`` the text is split into single letters when it
        contains no whitespace and is not itself a known multi-letter name.
        """
        text = text.strip()
        if not text or text in EPSILON_TOKENS:
            return ()
        if letters is None:
            letters = not any(c.isspace() for c in text) and not (
                len(text) > 1 and text in self._by_name)
        parts = list(text) if letters else text.split()
        return tuple(self.intern(p).id for p in parts)

    def spell(self, word: Sequence[int], sep: str | None = None) -> str:
        if not word:
            return "ε"
        names = [self._symbols[i].name for i in word]
        if sep is None:
            sep = "" if all(len(n) == 1 for n in names) else " "
        return sep.join(names)


class Regex:
    """Base class of expression nodes. Instances are immutable and hashable."""

    __slots__ = ("_key", "_hash", "nullable", "_syms")
    prec = 4

    def _setup(self, key: tuple, nullable: bool) -> None:
        self._key = key
        self._hash = hash((type(self).__name__, key))
        self.nullable = nullable
        self._syms = None

    def __eq__(self, other: object) -> bool:
        return self is other or (type(self) is type(other) and self._hash == other._hash
                                 and self._key == other._key)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"{type(self).__name__}({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)

    @property
    def children(self) -> tuple[Regex, ...]:
        return ()

    @property
    def symbols(self) -> frozenset[int]:
        """Ids of all symbols occurring in the expression."""
        if self._syms is None:
            self._syms = frozenset().union(*(c.symbols for c in self.children))
        return self._syms


class Empty(Regex):
    __slots__ = ()

    def __init__(self):
        self._setup((), False)


class Epsilon(Regex):
    __slots__ = ()

    def __init__(self):
        self._setup((), True)


EMPTY = Empty()
EPSILON = Epsilon()


class Sym(Regex):
    __slots__ = ("symbol",)

    def __init__(self, symbol: Symbol):
        self.symbol = symbol
        self._setup((symbol.id, symbol.name), False)

    @property
    def symbols(self) -> frozenset[int]:
        if self._syms is None:
            self._syms = frozenset((self.symbol.id,))
        return self._syms


class _Nary(Regex):
    __slots__ = ("items",)

    def __init__(self, items: Iterable[Regex]):
        flat: list[Regex] = []
        for item in items:
            if type(item) is type(self):
                flat.extend(item.items)
            else:
                flat.append(item)
        if len(flat) < 2:
            raise ValueError(f"{type(self).__name__} needs at least two operands")
        self.items = tuple(flat)
        self._setup(self.items, self._nullable(self.items))

    @property
    def children(self) -> tuple[Regex, ...]:
        return self.items


class Union(_Nary):
    __slots__ = ()
    prec = 0

    @staticmethod
    def _nullable(items):
        return any(i.nullable for i in items)


class Interleave(_Nary):
    __slots__ = ()
    prec = 1

    @staticmethod
    def _nullable(items):
        return all(i.nullable for i in items)


class Concat(_Nary):
    __slots__ = ()
    prec = 2

    @staticmethod
    def _nullable(items):
        return all(i.nullable for i in items)


class _Unary(Regex):
    __slots__ = ("child",)
    prec = 3
    op = ""

    def __init__(self, child: Regex):
        self.child = child
        self._setup((child,), self._nullable(child))

    @property
    def children(self) -> tuple[Regex, ...]:
        return (self.child,)


class Star(_Unary):
    __slots__ = ()
    op = "*"

    @staticmethod
    def _nullable(child):
        return True


class Plus(_Unary):
    __slots__ = ()
    op = "+"

    @staticmethod
    def _nullable(child):
        return child.nullable


class Opt(_Unary):
    __slots__ = ()
    op = "?"

    @staticmethod
    def _nullable(child):
        return True


# Smart constructors. These keep expressions small (drop ∅ and ε where the
# language allows it, deduplicate union operands) and are what the inference
# and derivative code build with; the raw classes preserve structure exactly.

def union(*rs: Regex) -> Regex:
    seen: dict[Regex, None] = {}
    for r in rs:
        for item in (r.items if isinstance(r, Union) else (r,)):
            if not isinstance(item, Empty):
                seen[item] = None
    items = list(seen)
    if not items:
        return EMPTY
    return items[0] if len(items) == 1 else Union(items)


def _product(cls, rs: Sequence[Regex]) -> Regex:
    items: list[Regex] = []
    for r in rs:
        if isinstance(r, Empty):
            return EMPTY
        if isinstance(r, Epsilon):
            continue
        items.extend(r.items if isinstance(r, cls) else (r,))
    if not items:
        return EPSILON
    return items[0] if len(items) == 1 else cls(items)


def concat(*rs: Regex) -> Regex:
    return _product(Concat, rs)


def interleave(*rs: Regex) -> Regex:
    return _product(Interleave, rs)


def star(r: Regex) -> Regex:
    if isinstance(r, (Empty, Epsilon)):
        return EPSILON
    if isinstance(r, (Star, Plus, Opt)):
        r = r.child
    return Star(r)


def plus(r: Regex) -> Regex:
    if isinstance(r, (Empty, Epsilon, Star, Plus)):
        return r
    return Plus(r)


def opt(r: Regex) -> Regex:
    if isinstance(r, Empty):
        return EPSILON
    if r.nullable:
        return r
    return Opt(r)


# ---------------------------------------------------------------- syntax

def _lex(text: str) -> list[tuple[str, str, int]]:
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in METACHARS:
            out.append(("op", ch, i))
            i += 1
        elif ch == "ε":
            out.append(("eps", ch, i))
            i += 1
        elif ch == "∅":
            out.append(("empty", ch, i))
            i += 1
        elif _is_name_char(ch):
            j = i
            while j < n and _is_name_char(text[j]):
                j += 1
            out.append(("name", text[i:j], i))
            i = j
        else:
            raise RegexSyntaxError(f"unknown metacharacter {ch!r}", text, i)
    return out


def _auto_letters(toks) -> bool:
    # Two names separated only by whitespace mean multi-letter names are in use.
    return not any(t1[0] == t2[0] == "name" for t1, t2 in zip(toks, toks[1:]))


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet, letters: bool | None):
        self.text = text
        self.alphabet = alphabet
        toks = _lex(text)
        if letters is None:
            letters = _auto_letters(toks)
        self.toks = []
        for kind, val, pos in toks:
            if kind == "name" and val in EPSILON_TOKENS[1:]:
                self.toks.append(("eps", val, pos))
            elif kind == "name" and val in EMPTY_TOKENS[1:]:
                self.toks.append(("empty", val, pos))
            elif kind == "name" and letters and not (len(val) > 1 and val in alphabet):
                self.toks.extend(("name", c, pos + k) for k, c in enumerate(val))
            else:
                self.toks.append((kind, val, pos))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def error(self, message: str):
        raise RegexSyntaxError(message, self.text, self.peek()[2])

    def parse(self) -> Regex:
        if not self.toks:
            self.error("empty expression")
        if len(self.toks) == 1 and self.toks[0][0] == "empty":
            return EMPTY
        r = self.union()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return r

    def _nary(self, sub, op: str, cls):
        items = [sub()]
        while self.peek()[:2] == ("op", op):
            self.i += 1
            items.append(sub())
        return items[0] if len(items) == 1 else cls(items)

    def union(self):
        return self._nary(self.interleave, "|", Union)

    def interleave(self):
        return self._nary(self.concat, "&", Interleave)

    def concat(self):
        items = [self.postfix()]
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "·":
                self.i += 1
                items.append(self.postfix())
            elif kind in ("name", "eps", "empty") or (kind == "op" and val == "("):
                items.append(self.postfix())
            else:
                break
        return items[0] if len(items) == 1 else Concat(items)

    def postfix(self):
        r = self.atom()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "?*+":
                self.i += 1
                r = {"?": Opt, "*": Star, "+": Plus}[val](r)
            else:
                return r

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "name":
            self.i += 1
            return Sym(self.alphabet.intern(val))
        if kind == "eps":
            self.i += 1
            return EPSILON
        if kind == "empty":
            self.error("∅ may only appear as the whole expression")
        if kind == "op" and val == "(":
            self.i += 1
            r = self.union()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.i += 1
            return r
        self.error(f"unexpected {val!r}" if kind != "end" else "unexpected end of expression")


def parse(text: str, alphabet: Alphabet | None = None, letters: bool | None = None) -> Regex:
    """Parse expression text, interning new symbol names into ``alphabet``.

    With ``letters=None`` a run of name characters is split into single-letter
    symbols unless some names are written apart by whitespace only, or the
    run is already a multi-letter name of ``alphabet``.
    """
    if alphabet is None:
        alphabet = Alphabet()
    return _Parser(text, alphabet, letters).parse()


def tokens(r: Regex, explicit_concat: bool = False,
           names: Mapping[str, str] | None = None) -> Iterator[str]:
    """Yield the printed tokens of ``r`` with minimal parentheses."""

    def group(child: Regex, needs: bool):
        if needs:
            yield "("
            yield from walk(child)
            yield ")"
        else:
            yield from walk(child)

    def walk(node: Regex):
        if isinstance(node, Sym):
            name = node.symbol.name
            yield names.get(name, name) if names else name
        elif isinstance(node, Epsilon):
            yield "ε"
        elif isinstance(node, Empty):
            yield "∅"
        elif isinstance(node, _Unary):
            yield from group(node.child, node.child.prec < 3)
            yield node.op
        else:
            sep = {Union: "|", Interleave: "&", Concat: "·"}[type(node)]
            for k, child in enumerate(node.items):
                if k and (sep != "·" or explicit_concat):
                    yield sep
                yield from group(child, child.prec <= node.prec)

    return walk(r)


def to_text(r: Regex, names: Mapping[str, str] | None = None) -> str:
    """Canonical text of ``r``; deterministic and re-parseable."""
    toks = list(tokens(r, names=names))
    words = [t for t in toks if t not in METACHARS and t not in ("ε", "∅")]
    if all(len(w) == 1 for w in words):
        return "".join(toks)
    out: list[str] = []
    prev = None
    for t in toks:
        if t in ("|", "&"):
            out.append(f" {t} ")
        else:
            left_ends = prev is not None and (prev not in METACHARS or prev in ")?*+")
            right_starts = t not in METACHARS or t == "("
            if left_ends and right_starts:
                out.append(" ")
            out.append(t)
        prev = t
    return "".join(out)


# ------------------------------------------------------------- semantics

def symbol_leaves(r: Regex) -> list[int]:
    """Symbol ids at the leaves of ``r``, left to right (with repetitions)."""
    if isinstance(r, Sym):
        return [r.symbol.id]
    out: list[int] = []
    for c in r.children:
        out.extend(symbol_leaves(c))
    return out


def is_soire(r: Regex) -> bool:
    leaves = symbol_leaves(r)
    return len(leaves) == len(set(leaves))


def shuffle(u: Sequence, v: Sequence) -> set[tuple]:
    """All interleavings of ``u`` and ``v`` preserving each word's order."""
    u, v = tuple(u), tuple(v)
    memo: dict[tuple[int, int], set[tuple]] = {}

    def go(i: int, j: int) -> set[tuple]:
        if i == len(u):
            return {v[j:]}
        if j == len(v):
            return {u[i:]}
        key = (i, j)
        if key not in memo:
            memo[key] = ({(u[i],) + w for w in go(i + 1, j)}
                         | {(v[j],) + w for w in go(i, j + 1)})
        return memo[key]

    return go(0, 0)


@lru_cache(maxsize=1 << 18)
def derive(r: Regex, a: int) -> Regex:
    """Brzozowski derivative of ``r`` with respect to symbol id ``a``."""
    if isinstance(r, (Empty, Epsilon)):
        return EMPTY
    if isinstance(r, Sym):
        return EPSILON if r.symbol.id == a else EMPTY
    if a not in r.symbols:
        return EMPTY
    if isinstance(r, Union):
        return union(*(derive(c, a) for c in r.items))
    if isinstance(r, Concat):
        head, rest = r.items[0], concat(*r.items[1:])
        d = concat(derive(head, a), rest)
        return union(d, derive(rest, a)) if head.nullable else d
    if isinstance(r, Interleave):
        parts = []
        for k, c in enumerate(r.items):
            dc = derive(c, a)
            if not isinstance(dc, Empty):
                parts.append(interleave(*r.items[:k], dc, *r.items[k + 1:]))
        return union(*parts)
    if isinstance(r, (Star, Plus)):
        return concat(derive(r.child, a), star(r.child))
    if isinstance(r, Opt):
        return derive(r.child, a)
    raise TypeError(r)


def matches(r: Regex, word: Iterable[int]) -> bool:
    for a in word:
        r = derive(r, a)
        if isinstance(r, Empty):
            return False
    return r.nullable


# ------------------------------------------------------------ rewriting

def _simplify_once(r: Regex) -> Regex:
    if isinstance(r, (Empty, Epsilon, Sym)):
        return r
    if isinstance(r, _Unary):
        c = _simplify_once(r.child)
        if isinstance(c, Epsilon):
            return EPSILON
        if isinstance(r, Opt):
            if c.nullable:
                return c
            if isinstance(c, Plus):
                return Star(c.child)
            return Opt(c)
        if isinstance(r, Plus):
            if isinstance(c, (Opt, Star)):
                return Star(c.child)
            if isinstance(c, Plus):
                return c
            return Star(c) if c.nullable else Plus(c)
        # Star
        if isinstance(c, (Opt, Plus, Star)):
            return Star(c.child)
        return Star(c)
    items = [_simplify_once(c) for c in r.items]
    if isinstance(r, Union):
        has_eps = any(isinstance(c, Epsilon) for c in items)
        rest = [c for c in items if not isinstance(c, Epsilon)]
        if not rest:
            return EPSILON
        body = rest[0] if len(rest) == 1 else Union(rest)
        return Opt(body) if has_eps else body
    cls = type(r)
    rest = [c for c in items if not isinstance(c, Epsilon)]
    if not rest:
        return EPSILON
    return rest[0] if len(rest) == 1 else cls(rest)


def simplify(r: Regex) -> Regex:
    """Rewrite to a fixpoint with language-preserving cleanup rules.

    Handles the ``or ε`` constructions left by inference (``r|ε`` becomes
    ``r?``), collapses stacked postfix operators and drops ε operands.
    """
    while True:
        s = _simplify_once(r)
        if s == r:
            return s
        r = s


def canonical(r: Regex) -> Regex:
    """Sort union and interleave operands so commutative variants compare equal."""
    if isinstance(r, _Unary):
        return type(r)(canonical(r.child))
    if isinstance(r, (Union, Interleave)):
        items = sorted((canonical(c) for c in r.items), key=to_text)
        return type(r)(items)
    if isinstance(r, Concat):
        return Concat([canonical(c) for c in r.items])
    return r


def equivalent_modulo_order(r1: Regex, r2: Regex) -> bool:
    return canonical(r1) == canonical(r2)
