"""Group presentations and relator words.

A word is a finite sequence of letters ``(generator_index, exponent)`` with
nonzero integer exponents, kept exactly as written: none of the analysis
functions reduce a word behind the caller's back.  That matters because the
letter weight ``L(w) = sum |exponent|`` feeds the exclusion radius
``1/(2L)`` of the obstruction certificates, and silent reduction would
silently strengthen them.

Grammar for word text (terms separated by whitespace)::

    word   := term { WS term } ;
    term   := ident [ "^" int ] | "[" ident "," ident "]" ;
    ident  := letter { letter | digit | "_" } ;
    int    := [ "-" ] digit { digit } ;   (zero rejected)

``[u, v]`` is commutator shorthand for ``u v u^-1 v^-1`` and is accepted for
single generators only.

Presentation files are UTF-8 text::

    # comment to end of line
    gens: a b
    rel: [a,b]
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import EmptyWordError, WordSyntaxError

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INT_RE = re.compile(r"-?[0-9]+")


@dataclass(frozen=True)
class Generator:
    """A named generator. Names are case-sensitive tokens of letters,
    digits and underscores, starting with a letter."""

    name: str

    def __post_init__(self):
        if not _IDENT_RE.fullmatch(self.name):
            raise WordSyntaxError(f"invalid generator name {self.name!r}")


@dataclass(frozen=True)
class Word:
    """A relator word: ordered letters ``(generator_index, exponent)``.

    ``n_generators`` records the size of the ambient generator list, so
    index bounds can be checked without the presentation at hand.
    """

    letters: tuple[tuple[int, int], ...]
    n_generators: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(g), int(e)) for g, e in self.letters))
        for g, e in self.letters:
            if e == 0:
                raise WordSyntaxError("zero exponent in word letters")
            if not 0 <= g < self.n_generators:
                raise WordSyntaxError(
                    f"generator index {g} out of range for {self.n_generators} generators"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generators plus relator words."""

    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]
    name: str | None = field(default=None)

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise WordSyntaxError("duplicate generator names in presentation")
        for w in self.relators:
            if w.n_generators != len(self.generators):
                raise WordSyntaxError("relator references a different generator list")

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)


def parse_word(text: str, generators: list[Generator] | tuple[Generator, ...]) -> Word:
    """Parse ``text`` into a :class:`Word` over ``generators``.

    The letter sequence is kept exactly as written (no free reduction);
    commutator shorthand ``[u,v]`` expands to ``u v u^-1 v^-1``.  Errors
    carry the 0-based character position of the offending token.
    """
    index = {g.name: i for i, g in enumerate(generators)}
    n = len(generators)
    letters: list[tuple[int, int]] = []
    pos = 0
    end = len(text)

    def skip_ws(p: int) -> int:
        while p < end and text[p].isspace():
            p += 1
        return p

    def read_ident(p: int) -> tuple[int, int]:
        m = _IDENT_RE.match(text, p)
        if not m:
            raise WordSyntaxError(f"expected generator name at {text[p:p+10]!r}", position=p)
        name = m.group(0)
        if name not in index:
            raise WordSyntaxError(f"unknown generator {name!r}", position=p)
        return index[name], m.end()

    pos = skip_ws(pos)
    need_ws = False
    while pos < end:
        if need_ws:
            new = skip_ws(pos)
            if new == pos:
                raise WordSyntaxError("expected whitespace between terms", position=pos)
            pos = new
            if pos >= end:
                break
        if text[pos] == "[":
            p = skip_ws(pos + 1)
            u, p = read_ident(p)
            p = skip_ws(p)
            if p >= end or text[p] != ",":
                raise WordSyntaxError("expected ',' in commutator", position=p)
            p = skip_ws(p + 1)
            v, p = read_ident(p)
            p = skip_ws(p)
            if p >= end or text[p] != "]":
                raise WordSyntaxError("expected ']' closing commutator", position=p)
            letters += [(u, 1), (v, 1), (u, -1), (v, -1)]
            pos = p + 1
        else:
            g, p = read_ident(pos)
            exp = 1
            if p < end and text[p] == "^":
                m = _INT_RE.match(text, p + 1)
                if not m:
                    raise WordSyntaxError("expected integer exponent after '^'", position=p + 1)
                exp = int(m.group(0))
                if exp == 0:
                    raise WordSyntaxError("zero exponent", position=p + 1)
                p = m.end()
            letters.append((g, exp))
            pos = p
        need_ws = True
    return Word(tuple(letters), n)


def word_to_string(w: Word, generators) -> str:
    """Serialize a word; ``parse_word`` of the result reproduces ``w``."""
    names = [g.name if isinstance(g, Generator) else str(g) for g in generators]
    parts = []
    for g, e in w.letters:
        parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
    return " ".join(parts)


def exponent_sum(w: Word, g: int) -> int:
    """Sum of exponents of letters on generator ``g``, on the word as
    written."""
    if not 0 <= g < w.n_generators:
        raise IndexError(f"generator index {g} out of range for {w.n_generators} generators")
    return sum(e for gi, e in w.letters if gi == g)


def is_homogeneous(w: Word) -> bool:
    """True iff every generator's exponent sum vanishes.  Such relators
    have determinant-1 values on any invertible tuple, so their
    determinant curve is closed."""
    sums = [0] * w.n_generators
    for g, e in w.letters:
        sums[g] += e
    return all(s == 0 for s in sums)


def relator_length(w: Word) -> int:
    """Letter weight L(w) = sum of |exponent| over the word as written."""
    if not w.letters:
        raise EmptyWordError("relator length of the empty word is undefined")
    return sum(abs(e) for _, e in w.letters)


def invert(w: Word) -> Word:
    """Reverse the letter order and negate every exponent."""
    return Word(tuple((g, -e) for g, e in reversed(w.letters)), w.n_generators)


def free_reduce(w: Word) -> Word:
    """Merge adjacent same-generator letters and drop zero exponents,
    repeating until stable."""
    out: list[tuple[int, int]] = []
    for g, e in w.letters:
        if out and out[-1][0] == g:
            merged = out[-1][1] + e
            if merged == 0:
                out.pop()
            else:
                out[-1] = (g, merged)
        else:
            out.append((g, e))
    return Word(tuple(out), w.n_generators)


def concat(*words: Word) -> Word:
    """Concatenate words over the same generator list, without reduction."""
    if not words:
        raise EmptyWordError("concat needs at least one word")
    n = words[0].n_generators
    for w in words:
        if w.n_generators != n:
            raise WordSyntaxError("cannot concatenate words over different generator lists")
    letters: tuple[tuple[int, int], ...] = ()
    for w in words:
        letters += w.letters
    return Word(letters, n)


def parse_presentation(text: str, name: str | None = None) -> Presentation:
    """Parse a presentation file body (``gens:`` line, ``rel:`` lines,
    ``#`` comments)."""
    generators: tuple[Generator, ...] | None = None
    relator_texts: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens:"):
            if generators is not None:
                raise WordSyntaxError("second 'gens:' line", line=lineno)
            tokens = line[len("gens:"):].split()
            if not tokens:
                raise WordSyntaxError("empty generator list", line=lineno)
            try:
                generators = tuple(Generator(t) for t in tokens)
            except WordSyntaxError as exc:
                raise WordSyntaxError(exc.message, line=lineno) from None
        elif line.startswith("rel:"):
            relator_texts.append((line[len("rel:"):].strip(), lineno))
        else:
            raise WordSyntaxError(f"unrecognized line {line!r}", line=lineno)
    if generators is None:
        raise WordSyntaxError("missing 'gens:' line")
    relators = []
    for body, lineno in relator_texts:
        try:
            relators.append(parse_word(body, generators))
        except WordSyntaxError as exc:
            raise WordSyntaxError(exc.message, position=exc.position, line=lineno) from None
    return Presentation(generators, tuple(relators), name=name)


def load_presentation(path, name: str | None = None) -> Presentation:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_presentation(fh.read(), name=name)
