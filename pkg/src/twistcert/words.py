"""Dehn-twist words over the curve alphabet {a_i, b_j, c_k, d_l}, their
symplectic evaluation, and the block grammar of certifiable words.

A word is written left to right in application order; its homology matrix is
therefore the product of the letter matrices in reverse written order. This
convention is pinned by an anchor test reproducing a known 4x4 matrix exactly
(the forward product yields a different matrix).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .matrices import IntMatrix, SpMatrix, mat_pow

KINDS = ("a", "b", "c", "d")

# Non-commuting letter pairs: (a_m, b_m), (b_n, c_n), (b_{n+1}, c_n), (c_n, d_n).
# Twists along all other curve pairs are disjoint and commute.


@dataclass(frozen=True)
class CurveLetter:
    kind: str
    index: int

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("curve index must be >= 1")

    def max_index(self, genus: int) -> int:
        return genus if self.kind in ("a", "b") else genus - 1

    def valid_for(self, genus: int) -> bool:
        return 1 <= self.index <= self.max_index(genus)

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


def curves_commute(x: CurveLetter, y: CurveLetter) -> bool:
    """True iff the twists along x and y commute (disjoint curves)."""
    pair = {(x.kind, x.index), (y.kind, y.index)}
    if len(pair) == 1:
        return True
    k1, k2 = sorted((x, y), key=lambda c: c.kind)
    if (k1.kind, k2.kind) == ("a", "b"):
        return k1.index != k2.index
    if (k1.kind, k2.kind) == ("b", "c"):
        return k1.index not in (k2.index, k2.index + 1)
    if (k1.kind, k2.kind) == ("c", "d"):
        return k1.index != k2.index
    return True


@dataclass(frozen=True)
class TwistWord:
    """Sequence of (letter, nonzero exponent) pairs over a fixed genus."""

    genus: int
    letters: tuple[tuple[CurveLetter, int], ...]

    def __post_init__(self) -> None:
        if self.genus < 2:
            raise ValueError("genus must be >= 2")
        for letter, exponent in self.letters:
            if exponent == 0:
                raise ValueError("zero exponents must not be stored")
            if not letter.valid_for(self.genus):
                raise ValueError(f"letter {letter} out of range for genus {self.genus}")

    def __len__(self) -> int:
        return len(self.letters)

    def concat(self, other: TwistWord) -> TwistWord:
        if self.genus != other.genus:
            raise ValueError("genus mismatch")
        return TwistWord(self.genus, self.letters + other.letters)


class WordSyntaxError(ValueError):
    """Parse failure; carries the byte offset of the offending token."""

    def __init__(self, offset: int, message: str):
        super().__init__(f"at offset {offset}: {message}")
        self.offset = offset


_TOKEN_RE = re.compile(r"^([abcd])([0-9]+)(?:\^(-?[0-9]+))?$")


def parse_word(text: str, genus: int) -> TwistWord:
    """Parse whitespace-separated tokens like `d1^-2 c1^-2 a1`.

    A token is kind letter + decimal index + optional ^ signed exponent
    (default 1); zero exponents are dropped.
    """
    letters: list[tuple[CurveLetter, int]] = []
    for match in re.finditer(r"\S+", text):
        token = match.group(0)
        offset = match.start()
        m = _TOKEN_RE.match(token)
        if m is None:
            raise WordSyntaxError(offset, f"malformed token {token!r}")
        kind, index_text, exp_text = m.groups()
        index = int(index_text)
        if index < 1:
            raise WordSyntaxError(offset, f"curve index must be >= 1 in {token!r}")
        letter = CurveLetter(kind, index)
        if not letter.valid_for(genus):
            raise WordSyntaxError(
                offset,
                f"{letter} out of range for genus {genus} "
                f"(max index {letter.max_index(genus)})",
            )
        exponent = 1 if exp_text is None else int(exp_text)
        if exponent == 0:
            continue
        letters.append((letter, exponent))
    return TwistWord(genus, tuple(letters))


def format_word(word: TwistWord) -> str:
    """Canonical text form; exponent suffix omitted when 1."""
    parts = []
    for letter, exponent in word.letters:
        parts.append(str(letter) if exponent == 1 else f"{letter}^{exponent}")
    return " ".join(parts)


@lru_cache(maxsize=None)
def generator_matrix(letter: CurveLetter, genus: int) -> SpMatrix:
    """Homology action of the left Dehn twist along the letter's curve, in the
    basis ([a_1],...,[a_g],[b_1],...,[b_g]).

    Twists along the separating curves d_l act trivially (Torelli).
    """
    if not letter.valid_for(genus):
        raise ValueError(f"letter {letter} out of range for genus {genus}")
    n = 2 * genus
    i = letter.index
    if letter.kind == "a":
        m = IntMatrix.from_unit_entries(n, {(i, genus + i): 1})
    elif letter.kind == "b":
        m = IntMatrix.from_unit_entries(n, {(genus + i, i): -1})
    elif letter.kind == "c":
        m = IntMatrix.from_unit_entries(n, {
            (i, genus + i): -1,
            (i + 1, genus + i + 1): -1,
            (i + 1, genus + i): 1,
            (i, genus + i + 1): 1,
        })
    else:
        m = IntMatrix.identity(n)
    return SpMatrix(m, genus)


def eval_word(word: TwistWord) -> SpMatrix:
    """Evaluate in reverse written order: eval(x_1 ... x_k) = M(x_k)...M(x_1)."""
    acc = IntMatrix.identity(2 * word.genus)
    for letter, exponent in reversed(word.letters):
        gen = generator_matrix(letter, word.genus)
        base = gen if exponent > 0 else gen.inverse()
        acc = acc @ mat_pow(base.m, abs(exponent))
    return SpMatrix(acc, word.genus)


# ---------------------------------------------------------------------------
# The certifiable family: blocks (all d_l at -2)(b powers)(c powers in {0,-2})
# (a powers)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TBlock:
    """Exponent data of one block: p for a-letters, q for b-letters, r for
    c-letters (each entry 0 or -2); the d-part is implicit, every d_l at -2."""

    genus: int
    p: tuple[int, ...]
    q: tuple[int, ...]
    r: tuple[int, ...]

    def __post_init__(self) -> None:
        g = self.genus
        if len(self.p) != g or len(self.q) != g or len(self.r) != g - 1:
            raise ValueError("exponent vector lengths must be (g, g, g-1)")
        if any(x not in (0, -2) for x in self.r):
            raise ValueError("c-exponents must be 0 or -2")

    def letters(self) -> tuple[tuple[CurveLetter, int], ...]:
        """The block in canonical order: d-part, b-part, c-part, a-part."""
        out: list[tuple[CurveLetter, int]] = []
        for l in range(1, self.genus):
            out.append((CurveLetter("d", l), -2))
        for j, qj in enumerate(self.q, start=1):
            if qj:
                out.append((CurveLetter("b", j), qj))
        for k, rk in enumerate(self.r, start=1):
            if rk:
                out.append((CurveLetter("c", k), rk))
        for i, pi in enumerate(self.p, start=1):
            if pi:
                out.append((CurveLetter("a", i), pi))
        return tuple(out)


@dataclass(frozen=True)
class TDecomposition:
    """Ordered block decomposition witnessing membership in the family."""

    genus: int
    blocks: tuple[TBlock, ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("decomposition must be non-empty")
        if any(b.genus != self.genus for b in self.blocks):
            raise ValueError("block genus mismatch")

    def reassemble(self) -> TwistWord:
        letters: tuple[tuple[CurveLetter, int], ...] = ()
        for block in self.blocks:
            letters = letters + block.letters()
        return TwistWord(self.genus, letters)


@dataclass(frozen=True)
class FamilyRejection:
    """Why a word is not (syntactically) a product of family blocks."""

    position: int
    reason: str

    def __str__(self) -> str:
        return f"letter {self.position}: {self.reason}"


_PART_RANK = {"d": 0, "b": 1, "c": 2, "a": 3}


def _merged_runs(word: TwistWord) -> list[tuple[str, list[tuple[int, int, int]]]]:
    """Maximal same-kind runs with same-index exponents merged and indices
    sorted ascending. Each entry is (kind, [(index, exponent, first_position)]).

    Only commutations of disjoint twists are used: same-kind twists always
    commute, and powers of one letter merge. Merged-to-zero letters drop.
    """
    runs: list[tuple[str, list[tuple[int, int, int]]]] = []
    for pos, (letter, exponent) in enumerate(word.letters):
        if runs and runs[-1][0] == letter.kind:
            runs[-1][1].append((letter.index, exponent, pos))
        else:
            runs.append((letter.kind, [(letter.index, exponent, pos)]))
    merged: list[tuple[str, list[tuple[int, int, int]]]] = []
    for kind, items in runs:
        by_index: dict[int, tuple[int, int]] = {}
        for index, exponent, pos in items:
            if index in by_index:
                old_exp, old_pos = by_index[index]
                by_index[index] = (old_exp + exponent, old_pos)
            else:
                by_index[index] = (exponent, pos)
        entries = [(i, e, p) for i, (e, p) in sorted(by_index.items()) if e != 0]
        if entries:
            merged.append((kind, entries))
    return merged


def validate_family_T(word: TwistWord) -> TDecomposition | FamilyRejection:
    """Greedy left-to-right block parser for the certifiable family.

    Returns a TDecomposition, or a FamilyRejection carrying the earliest
    offending letter position. An empty word is rejected (trivial product).
    """
    g = word.genus
    if not word.letters:
        return FamilyRejection(0, "empty word is the trivial product")
    runs = _merged_runs(word)
    if not runs:
        return FamilyRejection(0, "word collapses to the trivial product")

    blocks: list[TBlock] = []
    current: dict[str, dict[int, int]] | None = None
    rank = 4  # forces the first run to open a block via its d-part

    def close_block() -> None:
        assert current is not None
        blocks.append(TBlock(
            g,
            tuple(current["a"].get(i, 0) for i in range(1, g + 1)),
            tuple(current["b"].get(j, 0) for j in range(1, g + 1)),
            tuple(current["c"].get(k, 0) for k in range(1, g)),
        ))

    for kind, entries in runs:
        first_pos = min(pos for _, _, pos in entries)
        if kind == "d":
            # a commuting d-run equals a power of the base product iff every
            # index 1..g-1 carries the same total -2m; it then opens m blocks
            indices = [i for i, _, _ in entries]
            exponents = {e for _, e, _ in entries}
            if indices != list(range(1, g)):
                return FamilyRejection(
                    first_pos,
                    f"block must open with the full d-part d1^-2 .. d{g - 1}^-2",
                )
            if len(exponents) != 1:
                return FamilyRejection(
                    first_pos, "d-exponent totals must agree across all indices")
            total = exponents.pop()
            if total >= 0 or total % 2 != 0:
                return FamilyRejection(
                    first_pos, f"d-exponents must total -2m per index, got {total}")
            if current is not None:
                close_block()
            for _ in range(-total // 2 - 1):
                current = {"a": {}, "b": {}, "c": {}}
                close_block()
            current = {"a": {}, "b": {}, "c": {}}
            rank = 0
            continue
        if current is None or _PART_RANK[kind] <= rank:
            return FamilyRejection(
                first_pos,
                f"{kind}-letters cannot appear here; expected a new block d-part",
            )
        if kind == "c":
            for index, exponent, pos in entries:
                if exponent != -2:
                    return FamilyRejection(
                        pos, f"c{index} exponent must be -2 in a block, got {exponent}")
        rank = _PART_RANK[kind]
        for index, exponent, _ in entries:
            current[kind][index] = exponent

    assert current is not None
    close_block()
    return TDecomposition(g, tuple(blocks))


def hat_tau_d_word(genus: int) -> TwistWord:
    """The base word d1^-2 ... d(g-1)^-2 (acts trivially on homology)."""
    return TwistWord(genus, tuple(
        (CurveLetter("d", l), -2) for l in range(1, genus)
    ))
