"""Ordinal-indexed families of word sequences.

A sequence of l >= 2 words belongs to the level-xi family when its
offset set d_map(seq) is a member of A_xi; level 0 is the single-word
sequences.  Relative to a base stream the same test applies to the
recovered letter-word sequence, whose block structure generally differs
from the output's own offsets.  Every (long enough) sequence splits
uniquely into consecutive level-xi blocks, each later block taken with
the concatenation of everything before it; the splitting is computed
directly on the offset stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import schreier
from .errors import BudgetExceeded, HorizonExceeded, ReductionMismatch
from .ordinal import Ordinal
from .schreier import DEFAULT_CONFIG, SchreierConfig
from .words import (
    Alphabet,
    VarWordStream,
    Word,
    WordSeq,
    d_map,
    is_variable_word,
    reduce_seq,
    seq_sort_key,
    substitute,
)

MAX_LETTER_BUDGET = 16


@dataclass(frozen=True)
class WxiQuery:
    xi: Ordinal
    alph: Alphabet
    side: str  # "constant" | "variable"
    base: VarWordStream | None = None
    cfg: SchreierConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if self.side not in ("constant", "variable"):
            raise ValueError(f"unknown side {self.side!r}")


def side_consistent(seq: WordSeq, side: str, alph: Alphabet) -> bool:
    if side == "constant":
        return all(not is_variable_word(w, alph) for w in seq)
    return all(is_variable_word(w, alph) for w in seq)


def match_reduction(stream: VarWordStream, useq: WordSeq, side: str) -> WordSeq:
    """Invert a block reduction: the letter-word sequence t with
    stream[t] == useq.  Raises ReductionMismatch when there is none,
    or when t has the wrong side (constant words / variable blocks)."""
    var = stream.alph.variable
    blocks = []
    i = 1
    for u in useq:
        consumed = 0
        letters = []
        while consumed < len(u):
            w = stream.word_at(i)
            if consumed + len(w) > len(u):
                raise ReductionMismatch("length does not align with stream word boundaries")
            segment = u.letters[consumed : consumed + len(w)]
            letter = None
            for src, got in zip(w.letters, segment):
                if src == var:
                    if letter is None:
                        letter = got
                    elif letter != got:
                        raise ReductionMismatch("inconsistent variable substitution")
                elif src != got:
                    raise ReductionMismatch("constant letters disagree")
            letters.append(letter)
            consumed += len(w)
            i += 1
        if side == "constant" and var in letters:
            raise ReductionMismatch("variable letters in a constant-side reduction")
        if side == "variable" and var not in letters:
            raise ReductionMismatch("a block of a variable-side reduction lacks the variable")
        blocks.append(Word(tuple(letters)))
    return tuple(blocks)


def in_wxi(query: WxiQuery, useq: WordSeq) -> bool:
    """Membership in the level-xi family (absolute, or relative to a base
    stream when the query carries one)."""
    if not side_consistent(useq, query.side, query.alph):
        return False
    if query.base is not None:
        t = match_reduction(query.base, useq, query.side)
        probe = t
    else:
        probe = useq
    if not query.xi.terms:
        return len(probe) == 1
    if len(probe) < 2:
        return False
    return schreier.mem(query.xi, d_map(probe), query.cfg)


def canonical_rep(
    xi: Ordinal, seq: WordSeq, cfg: SchreierConfig = DEFAULT_CONFIG
) -> tuple[tuple[int, ...], bool]:
    """Split a sequence into consecutive level-xi blocks.

    Returns (boundaries m1 < m2 < ..., residual): words 1..m1 form the
    first block, words m_(n-1)+1..m_n the later ones (understood with the
    collapsed head prepended, which leaves the offset stream unchanged).
    `residual` marks a trailing segment that is a proper initial part of
    a member.  Boundaries are unique because the families are thin.
    """
    if not xi.terms:
        raise ValueError("canonical splitting needs xi >= 1")
    if not seq:
        return ((), False)
    offsets = d_map(seq)
    boundaries = []
    pos = 0
    words_done = 1
    while pos < len(offsets):
        try:
            end = schreier._consume(xi, offsets, pos, cfg)
        except HorizonExceeded:
            return (tuple(boundaries), True)
        words_done += end - pos
        boundaries.append(words_done)
        pos = end
    if not boundaries:
        # single word, xi >= 1: always a proper initial part
        return ((), True)
    return (tuple(boundaries), False)


def _shapes(total: int, parts: int):
    """Compositions of `total` into `parts` positive parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _shapes(total - first, parts - 1):
            yield (first,) + rest


def _fill_words(shape: tuple[int, ...], side: str, alph: Alphabet):
    """All side-consistent word sequences with the given word lengths."""
    per_word = []
    for length in shape:
        ws = []
        if side == "constant":
            for letters in product(alph.symbols, repeat=length):
                ws.append(Word(letters))
        else:
            for letters in product(alph.full, repeat=length):
                if alph.variable in letters:
                    ws.append(Word(letters))
        per_word.append(ws)
    for combo in product(*per_word):
        yield tuple(combo)


def enumerate_wxi(
    xi: Ordinal,
    alph: Alphabet,
    side: str,
    letter_budget: int,
    cfg: SchreierConfig = DEFAULT_CONFIG,
) -> tuple[WordSeq, ...]:
    """All level-xi sequences with total letter count <= letter_budget.

    Enumerates offset sets first (the sparse constraint), then shapes,
    then letters; output sorted canonically.
    """
    if letter_budget > MAX_LETTER_BUDGET:
        raise BudgetExceeded(f"letter budget capped at {MAX_LETTER_BUDGET}")
    out = []
    if not xi.terms:
        for total in range(1, letter_budget + 1):
            out.extend(_fill_words((total,), side, alph))
        return tuple(sorted(out, key=seq_sort_key))
    for d in schreier._members(xi, 2, letter_budget, cfg.limit_rule):
        if not d:
            continue
        starts = (1,) + d
        for total in range(starts[-1], letter_budget + 1):
            shape = tuple(starts[i + 1] - starts[i] for i in range(len(starts) - 1))
            shape += (total - starts[-1] + 1,)
            out.extend(_fill_words(shape, side, alph))
    return tuple(sorted(out, key=seq_sort_key))


def enumerate_reductions_wxi(
    xi: Ordinal,
    stream: VarWordStream,
    side: str,
    letter_budget: int,
    cfg: SchreierConfig = DEFAULT_CONFIG,
) -> tuple[WordSeq, ...]:
    """Level-xi reductions of the stream (relative block structure), for
    letter-word sequences within the budget and the stream horizon."""
    budget = min(letter_budget, stream.horizon)
    out = []
    for t in enumerate_wxi(xi, stream.alph, side, budget, cfg):
        out.append(reduce_seq(stream, t))
    return tuple(sorted(out, key=seq_sort_key))


def star_status(xi: Ordinal, seq: WordSeq, cfg: SchreierConfig = DEFAULT_CONFIG) -> str:
    """'member', 'segment' (proper initial part of a member), or 'outside'
    of the level-xi family, decided on the offset stream."""
    if not xi.terms:
        if not seq:
            return "segment"
        return "member" if len(seq) == 1 else "outside"
    if not seq:
        return "segment"
    offsets = d_map(seq)
    try:
        end = schreier._consume(xi, offsets, 0, cfg)
    except HorizonExceeded:
        return "segment"
    if end == len(offsets):
        return "member"
    return "outside"


def transfer_check(
    xi: Ordinal,
    s: Word,
    alph: Alphabet,
    letter_budget: int,
    cfg: SchreierConfig = DEFAULT_CONFIG,
    side: str = "constant",
) -> dict:
    """Exhaustively compare the shift of the level-xi family by the word s
    against the transfer-index family restricted to extensions of s.

    Both sides are cut to sequences with total letters <= letter_budget.
    """
    n = len(s) + 1
    xi_n = schreier.transfer_index(xi, n, cfg)
    lhs, rhs = set(), set()
    universe = [()]
    for total in range(1, letter_budget + 1):
        for parts in range(1, total + 1):
            for shape in _shapes(total, parts):
                universe.extend(_fill_words(shape, side, alph))
    mode = "constant" if side == "constant" else "variable"
    from .words import is_prefix, word_diff

    for u in universe:
        if u == ():
            if in_wxi(WxiQuery(xi, alph, side, cfg=cfg), (s,)):
                lhs.add(u)
        else:
            if is_prefix(s, u[0], alph, mode):
                shifted = (s, word_diff(u[0], s, alph, mode)) + u[1:]
                if in_wxi(WxiQuery(xi, alph, side, cfg=cfg), shifted):
                    lhs.add(u)
        extends = u == () or is_prefix(s, u[0], alph, mode)
        if extends and in_wxi(WxiQuery(xi_n, alph, side, cfg=cfg), u):
            rhs.add(u)
    ok = lhs == rhs
    report = {
        "xi": str(xi),
        "word": "".join(s.letters),
        "transfer_index": str(xi_n),
        "letter_budget": letter_budget,
        "lhs_size": len(lhs),
        "rhs_size": len(rhs),
        "equal": ok,
    }
    if not ok:
        diff = sorted(lhs ^ rhs, key=seq_sort_key)[:5]
        report["counterexamples"] = [[("".join(w.letters)) for w in seq] for seq in diff]
    return report


@dataclass(frozen=True)
class Subspace:
    """A combinatorial subspace given by its variable generator: a finite
    sequence for finite dimension, a stream for the infinite case."""

    generator: "WordSeq | VarWordStream"

    def finite_generator(self) -> WordSeq:
        if isinstance(self.generator, VarWordStream):
            raise ValueError("stream-generated subspace has no finite point set")
        return self.generator


def subspace_points(gen, alph: Alphabet) -> tuple[Word, ...]:
    """The constant words spanned by a variable generator sequence: all
    per-word substitutions, concatenated."""
    from .words import reduced_words

    if isinstance(gen, Subspace):
        gen = gen.finite_generator()
    rw, _ = reduced_words(gen, alph)
    return rw


def span(tseq: WordSeq, alph: Alphabet) -> tuple[WordSeq, ...]:
    """Word-by-word substitution images (no concatenation): sequences
    (t1(a1), ..., tm(am)) over all constant letter choices."""
    if not tseq:
        return ()
    out = []
    for assign in product(alph.symbols, repeat=len(tseq)):
        out.append(tuple(substitute(w, a, alph) for w, a in zip(tseq, assign)))
    return tuple(sorted(set(out), key=seq_sort_key))


def is_xi_subspace(
    gen,
    xi: Ordinal,
    alph: Alphabet,
    base: VarWordStream | None = None,
    cfg: SchreierConfig = DEFAULT_CONFIG,
) -> bool:
    """A generator spans a level-xi subspace when it is a variable member
    of the level-xi family (relative to the base when given)."""
    if isinstance(gen, Subspace):
        gen = gen.finite_generator()
    return in_wxi(WxiQuery(xi, alph, "variable", base=base, cfg=cfg), gen)
