"""Reading sample words from plain text files and from XML documents."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Iterator, TextIO
from xml.parsers import expat

from .regex import Alphabet
from .soa import SampleSet

# Element name abbreviations used for DBLP records.
DBLP_ABBREVIATIONS = {
    "author": "a", "editor": "b", "title": "c", "booktitle": "d",
    "pages": "e", "year": "f", "address": "g", "journal": "h",
    "volume": "i", "number": "j", "month": "k", "url": "l", "ee": "m",
    "cdrom": "n", "cite": "o", "publisher": "p", "note": "q",
    "crossref": "r", "isbn": "s", "series": "t", "school": "u",
    "chapter": "v", "publnr": "w",
}

_CHUNK = 1 << 16


class XmlSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def read_samples(lines: Iterable[str], alphabet: Alphabet | None = None,
                 letters: bool = False) -> SampleSet:
    """One word per line, symbols separated by whitespace.

    Blank lines are the empty word and lines starting with ``#`` are
    skipped. With ``letters`` every character of a line is a symbol.
    """
    alphabet = alphabet if alphabet is not None else Alphabet()
    words = []
    for raw in lines:
        line = raw.rstrip("\r\n")
        if line.lstrip().startswith("#"):
            continue
        names = [c for c in line if not c.isspace()] if letters else line.split()
        words.append(tuple(alphabet.intern(n).id for n in names))
    return SampleSet(words, alphabet)


def local_name(tag: str) -> str:
    if tag.startswith("{"):
        return tag.rsplit("}", 1)[-1]
    return tag.rsplit(":", 1)[-1]


def iter_child_sequences(stream: BinaryIO, targets: Iterable[str] | None = None
                         ) -> Iterator[tuple[str, tuple[str, ...]]]:
    """Yield (element, child names) for each closed occurrence of a target.

    ``targets=None`` reports every element. Only the open element stack is
    kept, so memory does not depend on the size of the document.
    """
    wanted = None if targets is None else set(targets)
    stack: list[tuple[str, list[str] | None]] = []
    ready: list[tuple[str, tuple[str, ...]]] = []

    def start(tag, _attrs):
        name = local_name(tag)
        if stack and stack[-1][1] is not None:
            stack[-1][1].append(name)
        stack.append((name, [] if wanted is None or name in wanted else None))

    def end(_tag):
        name, kids = stack.pop()
        if kids is not None:
            ready.append((name, tuple(kids)))

    parser = expat.ParserCreate()
    parser.StartElementHandler = start
    parser.EndElementHandler = end
    try:
        while True:
            chunk = stream.read(_CHUNK)
            parser.Parse(chunk, not chunk)
            if ready:
                yield from ready
                ready.clear()
            if not chunk:
                break
    except expat.ExpatError as exc:
        raise XmlSyntaxError(expat.errors.messages[exc.code], exc.lineno, exc.offset) from None


def extract_samples(stream: BinaryIO, target: str, alphabet: Alphabet | None = None
                    ) -> SampleSet:
    """Child element sequences of every ``target`` element in the document."""
    alphabet = alphabet if alphabet is not None else Alphabet()
    words = [tuple(alphabet.intern(n).id for n in kids)
             for _, kids in iter_child_sequences(stream, [target])]
    return SampleSet(words, alphabet)


@dataclass
class ElementSampleTable:
    samples: dict[str, SampleSet] = field(default_factory=dict)
    occurrences: Counter = field(default_factory=Counter)
    documents: int = 0
    alphabet: Alphabet = field(default_factory=Alphabet)

    def add_document(self, stream: BinaryIO, targets: Iterable[str] | None = None) -> None:
        for name, kids in iter_child_sequences(stream, targets):
            word = tuple(self.alphabet.intern(n).id for n in kids)
            if name not in self.samples:
                self.samples[name] = SampleSet([], self.alphabet)
            self.samples[name].words.append(word)
            self.occurrences[name] += 1
        self.documents += 1

    def __getitem__(self, name: str) -> SampleSet:
        return self.samples.get(name, SampleSet([], self.alphabet))


def check_abbreviations(mapping: dict[str, str]) -> None:
    seen: dict[str, str] = {}
    for full, short in mapping.items():
        if short in seen:
            raise ValueError(f"abbreviation {short!r} used for both {seen[short]!r} and {full!r}")
        seen[short] = full


def read_abbreviations(handle: TextIO) -> dict[str, str]:
    """``name abbrev`` pairs, one per line."""
    out = {}
    for line in handle:
        parts = line.split()
        if parts and not parts[0].startswith("#"):
            if len(parts) != 2:
                raise ValueError(f"bad abbreviation line: {line.rstrip()!r}")
            out[parts[0]] = parts[1]
    check_abbreviations(out)
    return out
