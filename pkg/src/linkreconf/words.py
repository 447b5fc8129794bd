"""Words in the free group on x_1..x_k (1-based generators)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Letter = Tuple[int, int]


@dataclass(frozen=True)
class FreeWord:
    """A possibly unreduced product of letters ``x_i^e`` with ``e`` in {+1, -1}."""

    letters: Tuple[Letter, ...] = ()
    k: int = 0

    def __post_init__(self):
        for i, e in self.letters:
            if e not in (1, -1) or i < 1:
                raise ValueError(f"bad letter ({i}, {e})")
        if self.letters:
            top = max(i for i, _ in self.letters)
            if top > self.k:
                object.__setattr__(self, "k", top)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters, max(self.k, other.k))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((i, -e) for i, e in reversed(self.letters)), self.k)

    def is_reduced(self) -> bool:
        return all(a[0] != b[0] or a[1] != -b[1] for a, b in zip(self.letters, self.letters[1:]))


def generator(i: int, e: int = 1, k: int = 0) -> FreeWord:
    if e == 0:
        return FreeWord((), k)
    sign = 1 if e > 0 else -1
    return FreeWord(((i, sign),) * abs(e), k)


def reduce(w: FreeWord) -> FreeWord:
    stack: List[Letter] = []
    for letter in w.letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return FreeWord(tuple(stack), w.k)


def in_cyclic_subgroup(w: FreeWord, j: int) -> bool:
    """True iff ``w`` reduces to a power of ``x_j`` (the empty word included)."""
    return all(i == j for i, _ in reduce(w).letters)


def abelianize(w: FreeWord, k: Optional[int] = None) -> Tuple[int, ...]:
    n = max(w.k, k or 0)
    out = [0] * n
    for i, e in w.letters:
        out[i - 1] += e
    return tuple(out)


def word_from_crossings(cs: Sequence[Tuple[int, int]], k: int = 0) -> FreeWord:
    """Literal product of ``x_i^e`` over an ordered crossing sequence."""
    return FreeWord(tuple((int(i), int(e)) for i, e in cs), k)


def apply_hom(w: FreeWord, images: Dict[int, FreeWord]) -> FreeWord:
    """Apply the homomorphism sending ``x_i`` to ``images[i]`` (identity elsewhere)."""
    letters: List[Letter] = []
    for i, e in w.letters:
        img = images.get(i)
        if img is None:
            letters.append((i, e))
        else:
            letters.extend((img if e > 0 else img.inverse()).letters)
    return FreeWord(tuple(letters), w.k)


def conjugation_hom(i: int, j: int, k: int = 0) -> Dict[int, FreeWord]:
    """Images for the map fixing every generator except ``x_j -> x_i x_j x_i^-1``."""
    return {j: FreeWord(((i, 1), (j, 1), (i, -1)), k)}


def curves_reconfigurable(
    crossings: Sequence[Sequence[Tuple[int, int]]],
) -> Tuple[bool, Optional[Tuple[int, FreeWord]]]:
    """Decide the word condition; the witness is the first failing index and its reduced word."""
    k = len(crossings)
    for j, cs in enumerate(crossings, start=1):
        w = reduce(word_from_crossings(cs, k))
        if not in_cyclic_subgroup(w, j):
            return False, (j, w)
    return True, None


_TOKEN = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, k: int = 0) -> FreeWord:
    """Parse ``x2 x1^-1 x3^2`` style text; ``1`` or empty means the identity."""
    letters: List[Letter] = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"cannot parse {tok!r}")
        i = int(m.group(1))
        e = int(m.group(2)) if m.group(2) is not None else 1
        letters.extend(generator(i, e).letters)
    return FreeWord(tuple(letters), k)


def format_word(w: FreeWord) -> str:
    if not w.letters:
        return "1"
    parts = []
    for i, e in w.letters:
        parts.append(f"x{i}" if e == 1 else f"x{i}^-1")
    return " ".join(parts)


def format_compact(w: FreeWord) -> str:
    """Like :func:`format_word` but merges runs into powers."""
    if not w.letters:
        return "1"
    parts = []
    run_i, run_e = w.letters[0][0], 0
    for i, e in w.letters:
        if i == run_i and (run_e == 0 or (run_e > 0) == (e > 0)):
            run_e += e
            continue
        parts.append(f"x{run_i}" if run_e == 1 else f"x{run_i}^{run_e}")
        run_i, run_e = i, e
    parts.append(f"x{run_i}" if run_e == 1 else f"x{run_i}^{run_e}")
    return " ".join(parts)


def concat(words: Iterable[FreeWord]) -> FreeWord:
    out = FreeWord()
    for w in words:
        out = out * w
    return out
