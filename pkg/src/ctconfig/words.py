"""Graded words: Koszul signs, canonical wedge words, arrangements."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement, permutations


def koszul_sign(seq, degs) -> int:
    """Sign of sorting ``seq`` (letters are keys into ``degs``) into canonical order."""
    s = 0
    for a in range(len(seq)):
        da = degs[seq[a]]
        if not da % 2:
            continue
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b] and degs[seq[b]] % 2:
                s += 1
    return -1 if s % 2 else 1


def canonical(seq, degs):
    """(sign, sorted word), or (0, None) when an odd letter repeats."""
    srt = tuple(sorted(seq))
    for a in range(len(srt) - 1):
        if srt[a] == srt[a + 1] and degs[srt[a]] % 2:
            return 0, None
    return koszul_sign(seq, degs), srt


def block_sign(blocks_degs, order) -> int:
    """Koszul sign of permuting homogeneous blocks into ``order``."""
    s = 0
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                s += blocks_degs[order[a]] * blocks_degs[order[b]]
    return -1 if s % 2 else 1


def wedge_words(letters, degs, m: int) -> list:
    """Canonical words of length m: odd letters appear at most once."""
    out = []
    for w in combinations_with_replacement(sorted(letters), m):
        if all(not (w[a] == w[a + 1] and degs[w[a]] % 2) for a in range(len(w) - 1)):
            out.append(w)
    return out


@lru_cache(maxsize=None)
def arrangements(word: tuple, parities: tuple):
    """Distinct orderings of a canonical word with Koszul sign and multiplicity.

    ``parities[k]`` is the degree parity of ``word[k]``.  Summing a function
    over all m! orderings equals summing over these with weight
    ``multiplicity`` (repeated letters are even, so their swaps are free).
    """
    degs = dict(zip(word, parities))
    mult = 1
    for letter in set(word):
        for k in range(2, word.count(letter) + 1):
            mult *= k
    out = []
    for seq in sorted(set(permutations(word))):
        out.append((seq, koszul_sign(seq, degs), mult))
    return tuple(out)


def parities_of(word, degs) -> tuple:
    return tuple(degs[x] % 2 for x in word)
