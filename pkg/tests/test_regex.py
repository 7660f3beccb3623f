import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soire.regex import (EMPTY, EPSILON, Alphabet, Concat, Interleave, Opt, Plus, RegexSyntaxError,
                         Star, Sym, Union, equivalent_modulo_order, is_soire, matches, parse,
                         shuffle, simplify, symbol_leaves, to_text, tokens)

from conftest import ABCD, LETTERS, language, regexes, words_upto


def w(text, alphabet):
    return alphabet.word(text, letters=True)


class TestParse:
    def test_optional_group_expression(self):
        al = Alphabet()
        r = parse("a(bc)?d+", al)
        a, b, c, d = (Sym(al[x]) for x in "abcd")
        assert r == Concat([a, Opt(Concat([b, c])), Plus(d)])

    def test_epsilon_and_aliases(self):
        assert parse("ε") is EPSILON
        assert parse("EPS") is EPSILON
        assert parse("∅") is EMPTY
        assert parse("EMPTY") is EMPTY

    def test_interleave_binds_looser_than_concat(self):
        al = Alphabet()
        r = parse("acfu(l?&m?)", al)
        a, c, f, u, l, m = (Sym(al[x]) for x in "acfulm")
        assert r == Concat([a, c, f, u, Interleave([Opt(l), Opt(m)])])
        # without parentheses the concatenation is one operand of &
        r2 = parse("acful?&m?", al)
        assert isinstance(r2, Interleave)
        assert r2.items[1] == Opt(m)

    def test_union_loosest(self):
        r = parse("ab&c|d")
        assert isinstance(r, Union)
        assert isinstance(r.items[0], Interleave)

    def test_multi_letter_names(self):
        al = Alphabet()
        r = parse("author title (url | ee)?", al)
        assert [al[i].name for i in symbol_leaves(r)] == ["author", "title", "url", "ee"]
        assert to_text(r) == "author title (url | ee)?"

    def test_flattening(self):
        r = parse("(a|b)|c")
        assert isinstance(r, Union) and len(r.items) == 3

    @pytest.mark.parametrize("bad, pos", [("a|", 2), ("(ab", 3), ("a$b", 1), ("*a", 0), ("a∅", 1)])
    def test_errors_report_position(self, bad, pos):
        with pytest.raises(RegexSyntaxError) as info:
            parse(bad)
        assert info.value.position == pos


class TestPrint:
    def test_examples(self):
        assert to_text(parse("acfu(l?&m?)")) == "acfu(l?&m?)"
        assert to_text(EPSILON) == "ε"
        assert to_text(EMPTY) == "∅"
        assert to_text(parse("j+|k")) == "j+|k"
        assert to_text(parse("((a)(b))*")) == "(ab)*"

    def test_explicit_concat_tokens(self):
        toks = list(tokens(parse("acfu(l?&m?)"), explicit_concat=True))
        assert toks == list("a·c·f·u·(l?&m?)")

    def test_abbreviated_names(self):
        r = parse("author title")
        assert to_text(r, {"author": "a", "title": "c"}) == "ac"

    @given(regexes())
    def test_round_trip(self, r):
        assert parse(to_text(r), ABCD) == r


class TestSoire:
    def test_examples(self):
        assert is_soire(parse("a?(b?c&d*(e|f)?)"))
        assert not is_soire(parse("a+b&c+b"))
        assert is_soire(EPSILON)


class TestShuffle:
    def test_examples(self):
        al = Alphabet("abcd")
        assert shuffle(w("ab", al), w("c", al)) == {w(x, al) for x in ["cab", "acb", "abc"]}
        assert shuffle((), w("u", al)) == {w("u", al)}
        got = shuffle(w("ab", al), w("cd", al))
        assert got == {w(x, al) for x in ["abcd", "acbd", "acdb", "cabd", "cadb", "cdab"]}

    @given(st.lists(st.sampled_from("ab"), max_size=6), st.lists(st.sampled_from("cd"), max_size=6))
    def test_cardinality_on_disjoint_alphabets(self, u, v):
        got = shuffle(u, v)
        assert len(got) == math.comb(len(u) + len(v), len(u))
        assert got == shuffle(v, u)


class TestMatch:
    def test_examples(self):
        al = Alphabet()
        r = parse("ab&c", al)
        assert matches(r, w("cab", al))
        assert not matches(r, w("cba", al))
        r = parse("a(bc)?d+", al)
        assert matches(r, w("add", al))
        assert not matches(r, w("abd", al))
        assert not matches(EMPTY, ())
        assert matches(EPSILON, ())

    @settings(max_examples=1000)
    @given(regexes())
    def test_agrees_with_enumeration(self, r):
        lang = language(r, 5)
        for word in words_upto(range(len(LETTERS)), 5):
            assert matches(r, word) == (word in lang)


class TestSimplify:
    def test_examples(self):
        al = Alphabet("abc")
        a, b, c = (Sym(al[x]) for x in "abc")
        assert simplify(Opt(Plus(a))) == Star(a)
        assert simplify(Union([b, EPSILON])) == Opt(b)
        assert simplify(Opt(Opt(c))) == Opt(c)
        assert simplify(Opt(Concat([Opt(a), Star(b)]))) == Concat([Opt(a), Star(b)])

    @given(regexes())
    def test_preserves_language(self, r):
        s = simplify(r)
        assert language(s, 5) == language(r, 5)
        if is_soire(r):
            assert is_soire(s)
        assert simplify(s) == s


def test_equivalence_modulo_order():
    al = Alphabet()
    assert equivalent_modulo_order(parse("(j+|k)?(a&b)", al), parse("(k|j+)?(b&a)", al))
    assert not equivalent_modulo_order(parse("ab", al), parse("ba", al))
