"""Induced approximate representations along finite-index coset data.

Given a subgroup H <= G of index N, a full set of coset representatives
g_1, ..., g_N turns every generator g of G into coset data
``g g_i = g_{j(i)} h_i``.  A representation-like assignment pi on H's
generators then induces block matrices on C^{N k}: the block in column i,
row j(i) is pi evaluated on h_i, all other blocks in that column are zero.
The coset table is user-supplied data; nothing here enumerates cosets or
verifies that a table comes from an actual group.

Words over G's generators are inducted letter by letter (an approximate
representation has no canonical value on words, so left-to-right evaluation
is the only well-defined choice); a letter with exponent -1 contributes the
conjugate transpose of the +1 block matrix.

File formats::

    # coset action              # subgroup rep
    index: 2                    gens: h
    act: t 1 -> 2 ; e           cmatrix 2
    act: t 2 -> 1 ; h           ...rows...
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import CosetTableError, MatrixError, WordSyntaxError
from .linalg import UnitaryTuple, adjoint, evaluate_word, load_matrix
from .relators import Generator, Word, concat, parse_word

_ACT_RE = re.compile(r"act:\s*(\S+)\s+(\d+)\s*->\s*(\d+)\s*;\s*(.*)$")


@dataclass(frozen=True)
class CosetAction:
    """Coset data for each G-generator: ``table[g][i] = (j, h_word)`` with
    0-based coset indices, meaning ``g g_i = g_j h``.

    For each fixed generator, i -> j must be a permutation of the cosets.
    """

    index: int
    g_generators: tuple[Generator, ...]
    h_generators: tuple[Generator, ...]
    table: tuple[tuple[tuple[int, Word], ...], ...]

    def __post_init__(self):
        if self.index < 1:
            raise CosetTableError(f"coset index must be >= 1, got {self.index}")
        if len(self.table) != len(self.g_generators):
            raise CosetTableError("one table row per G-generator required")
        n_h = len(self.h_generators)
        for gen, row in zip(self.g_generators, self.table):
            if len(row) != self.index:
                raise CosetTableError(
                    f"generator {gen.name!r}: expected {self.index} coset entries, "
                    f"got {len(row)}"
                )
            targets = [j for j, _ in row]
            if sorted(targets) != list(range(self.index)):
                raise CosetTableError(
                    f"generator {gen.name!r}: coset map {targets} is not a permutation"
                )
            for _, h_word in row:
                if h_word.n_generators != n_h:
                    raise CosetTableError(
                        f"generator {gen.name!r}: h-word over wrong generator list"
                    )


def induce_generator(rep: UnitaryTuple, action: CosetAction, g_index: int) -> np.ndarray:
    """The primitive induced block matrix of one G-generator (exponent +1).

    ``rep.matrices[i]`` is taken to correspond to ``action.h_generators[i]``.
    """
    if not 0 <= g_index < len(action.g_generators):
        raise CosetTableError(f"G-generator index {g_index} out of range")
    if len(rep.matrices) != len(action.h_generators):
        raise MatrixError(
            f"rep has {len(rep.matrices)} matrices but the action names "
            f"{len(action.h_generators)} H-generators"
        )
    k = rep.dim
    big = action.index * k
    out = np.zeros((big, big), dtype=np.complex128)
    for i, (j, h_word) in enumerate(action.table[g_index]):
        out[j * k:(j + 1) * k, i * k:(i + 1) * k] = evaluate_word(h_word, rep)
    return out


def induce_element(rep: UnitaryTuple, action: CosetAction, g_word: Word) -> np.ndarray:
    """Induce a word over G's generators, letter by letter."""
    if g_word.n_generators != len(action.g_generators):
        raise CosetTableError("word is over a different G-generator list")
    big = action.index * rep.dim
    acc = np.eye(big, dtype=np.complex128)
    for g, e in g_word.letters:
        prim = induce_generator(rep, action, g)
        base = prim if e > 0 else adjoint(prim)
        acc = acc @ np.linalg.matrix_power(base, abs(e))
    return acc


def induce_defect(rep: UnitaryTuple, action: CosetAction, g: Word, g_prime: Word) -> float:
    """``|| Ind(g g') - Ind(g) Ind(g') ||`` with the concatenated word
    inducted as written (no free reduction)."""
    combined = induce_element(rep, action, concat(g, g_prime))
    split = induce_element(rep, action, g) @ induce_element(rep, action, g_prime)
    return float(np.linalg.norm(combined - split, 2))


def parse_action(text: str, h_generators: tuple[Generator, ...]) -> CosetAction:
    """Parse the coset-action file format (1-based coset indices on disk)."""
    index: int | None = None
    order: list[str] = []
    entries: dict[str, dict[int, tuple[int, Word]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("index:"):
            if index is not None:
                raise CosetTableError(f"line {lineno}: second 'index:' line")
            try:
                index = int(line[len("index:"):].strip())
            except ValueError:
                raise CosetTableError(f"line {lineno}: malformed index") from None
            continue
        m = _ACT_RE.match(line)
        if not m:
            raise CosetTableError(f"line {lineno}: unrecognized line {line!r}")
        if index is None:
            raise CosetTableError(f"line {lineno}: 'act:' before 'index:'")
        gname, i_s, j_s, word_text = m.groups()
        i, j = int(i_s), int(j_s)
        if not (1 <= i <= index and 1 <= j <= index):
            raise CosetTableError(f"line {lineno}: coset index out of range 1..{index}")
        word_text = word_text.strip()
        if word_text == "e":
            h_word = Word((), len(h_generators))
        else:
            try:
                h_word = parse_word(word_text, h_generators)
            except WordSyntaxError as exc:
                raise CosetTableError(f"line {lineno}: {exc}") from None
        if gname not in entries:
            order.append(gname)
            entries[gname] = {}
        if i - 1 in entries[gname]:
            raise CosetTableError(f"line {lineno}: duplicate entry for {gname!r} coset {i}")
        entries[gname][i - 1] = (j - 1, h_word)
    if index is None:
        raise CosetTableError("missing 'index:' line")
    table = []
    for gname in order:
        row = entries[gname]
        missing = sorted(set(range(index)) - set(row))
        if missing:
            raise CosetTableError(
                f"generator {gname!r}: missing entries for cosets {[m + 1 for m in missing]}"
            )
        table.append(tuple(row[i] for i in range(index)))
    return CosetAction(
        index=index,
        g_generators=tuple(Generator(g) for g in order),
        h_generators=tuple(h_generators),
        table=tuple(table),
    )


def parse_rep(text: str, unitarity_tol: float = 1e-8) -> UnitaryTuple:
    """Parse a subgroup-rep file: a ``gens:`` line followed by one
    ``cmatrix`` dump per generator."""
    lines = text.splitlines()
    pos = 0

    def next_content() -> int:
        nonlocal pos
        while pos < len(lines):
            stripped = lines[pos].split("#", 1)[0].strip()
            if stripped:
                return pos
            pos += 1
        return -1

    if next_content() < 0 or not lines[pos].split("#", 1)[0].strip().startswith("gens:"):
        raise MatrixError("rep file must start with a 'gens:' line")
    gen_names = lines[pos].split("#", 1)[0].strip()[len("gens:"):].split()
    if not gen_names:
        raise MatrixError("rep file has an empty generator list")
    pos += 1
    mats = []
    for name in gen_names:
        if next_content() < 0:
            raise MatrixError(f"missing matrix block for generator {name!r}")
        header = lines[pos].strip()
        if not header.startswith("cmatrix "):
            raise MatrixError(f"expected 'cmatrix <n>' for generator {name!r}")
        try:
            n = int(header.split()[1])
        except (IndexError, ValueError):
            raise MatrixError("malformed 'cmatrix' header") from None
        block = lines[pos:pos + n + 1]
        if len(block) != n + 1:
            raise MatrixError(f"truncated matrix block for generator {name!r}")
        mats.append(load_matrix("\n".join(block)))
        pos += n + 1
    if next_content() >= 0:
        raise MatrixError(f"trailing content in rep file at line {pos + 1}")
    return UnitaryTuple(tuple(mats), tuple(gen_names), unitarity_tol)


def load_action(path, h_generators: tuple[Generator, ...]) -> CosetAction:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_action(fh.read(), h_generators)


def load_rep(path, unitarity_tol: float = 1e-8) -> UnitaryTuple:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_rep(fh.read(), unitarity_tol)
