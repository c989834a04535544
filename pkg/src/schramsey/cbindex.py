"""Strong derivative and index of hereditary families on a stream.

A member survives one derivative pass when its escape set (the reduced
words extending its concatenation whose appended-tail sequence falls
outside the family) admits no unbounded chain in the strict-prefix
order.  The index is the number of passes, minus one, needed to empty
the family; level 0 is the once-derived family.

Membership after j passes is evaluated lazily and memoized per
(sequence, level), so escape tests at level j+1 consult the level-j
family itself rather than a frozen materialization.  Two chain oracles
are provided:

  * horizon(H): a depth-first search for a strict-prefix chain of
    length H inside the truncated reduced-word universe, extending by
    at most `max_block_words` stream words per step.  "Chain found" and
    "no escape word in the search window" are definite at this horizon;
    anything else is reported as undecided.

  * exact rule "length": sound for families whose level-j survivors are
    exactly the sequences of length <= K - j for some K (the hereditary
    closures of the fixed-length families): a member escapes at the
    current maximum length and nowhere below it.

Only finite indices are computed; deeper structure is out of reach of a
finite pass count and reported as budget-exceeded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .errors import BudgetExceeded, HorizonExceeded, OracleUndecided, ReductionMismatch
from .words import (
    Alphabet,
    VarWordStream,
    Word,
    WordSeq,
    is_variable_word,
    seq_sort_key,
)


@dataclass(frozen=True)
class ChainOracle:
    mode: str  # "exact" | "horizon"
    rule: str | None = None
    horizon: int | None = None
    max_block_words: int = 2
    node_budget: int = 500_000

    def __post_init__(self):
        if self.mode == "exact":
            if self.rule not in EXACT_RULES:
                raise ValueError(f"unknown exact rule {self.rule!r}")
        elif self.mode == "horizon":
            if self.horizon is None or self.horizon < 2:
                raise ValueError("horizon mode needs H >= 2")
        else:
            raise ValueError(f"unknown oracle mode {self.mode!r}")


@dataclass(frozen=True)
class CBFamily:
    """A hereditary family given by an intensional membership test plus a
    materialized seed list used for survivor iteration and counts."""

    alph: Alphabet
    side: str
    member_fn: Callable[[WordSeq], bool]
    seeds: tuple[WordSeq, ...]
    label: str = "family"


def explicit_cb_family(alph: Alphabet, side: str, members, label: str = "explicit") -> CBFamily:
    mset = frozenset(members)
    seeds = tuple(sorted(mset, key=seq_sort_key))
    return CBFamily(alph, side, lambda seq: seq in mset, seeds, label)


def _seq_words(alph: Alphabet, side: str, letter_budget: int):
    pool = alph.symbols if side == "constant" else alph.full
    for length in range(1, letter_budget + 1):
        for letters in product(pool, repeat=length):
            if side == "variable" and alph.variable not in letters:
                continue
            yield Word(letters)


def length_truncation_family(
    alph: Alphabet, side: str, max_len: int, seed_letter_budget: int
) -> CBFamily:
    """The hereditary closure of the fixed-length family: all sequences of
    at most max_len side-consistent words (any letters), seeded within the
    given total letter budget."""

    def member(seq: WordSeq) -> bool:
        if len(seq) > max_len:
            return False
        for w in seq:
            if is_variable_word(w, alph) != (side == "variable"):
                return False
        return True

    seeds = [()]
    frontier = [((), 0)]
    for _ in range(max_len):
        nxt = []
        for seq, used in frontier:
            for w in _seq_words(alph, side, seed_letter_budget - used):
                cand = seq + (w,)
                nxt.append((cand, used + len(w)))
                seeds.append(cand)
        frontier = nxt
    return CBFamily(
        alph,
        side,
        member,
        tuple(sorted(seeds, key=seq_sort_key)),
        label=f"len<={max_len}",
    )


@dataclass
class DerivativeState:
    family: CBFamily
    stream: VarWordStream
    oracle: ChainOracle
    level: int
    survivors: tuple[WordSeq, ...]
    _engine: "_Engine" = field(repr=False, default=None)


class _Engine:
    def __init__(self, family: CBFamily, stream: VarWordStream, oracle: ChainOracle):
        self.family = family
        self.stream = stream
        self.oracle = oracle
        self.member_memo: dict[tuple[WordSeq, int], bool] = {}
        self.escape_memo: dict[tuple[WordSeq, int], bool] = {}
        self.universe_memo: dict[WordSeq, bool] = {}
        self.maxlen_memo: dict[int, int] = {}
        self.nodes = 0

    def in_universe(self, seq: WordSeq) -> bool:
        """Is seq a reduction of the stream (on the family's side)?  The
        derivative only ever sees the family cut to this universe."""
        if seq not in self.universe_memo:
            if not seq:
                value = True
            else:
                from .wxi import match_reduction

                try:
                    match_reduction(self.stream, seq, self.family.side)
                    value = True
                except (ReductionMismatch, HorizonExceeded):
                    value = False
            self.universe_memo[seq] = value
        return self.universe_memo[seq]

    # -- membership after `level` passes --------------------------------
    def member_at(self, seq: WordSeq, level: int) -> bool:
        if level == 0:
            return self.family.member_fn(seq) and self.in_universe(seq)
        key = (seq, level)
        if key not in self.member_memo:
            value = self.member_at(seq, level - 1) and not self.escapes(seq, level - 1)
            self.member_memo[key] = value
        return self.member_memo[key]

    def survivors(self, level: int) -> tuple[WordSeq, ...]:
        return tuple(m for m in self.family.seeds if self.member_at(m, level))

    # -- escape decision at a level --------------------------------------
    def escapes(self, seq: WordSeq, level: int) -> bool:
        key = (seq, level)
        if key not in self.escape_memo:
            if self.oracle.mode == "exact":
                value = EXACT_RULES[self.oracle.rule](self, seq, level)
            else:
                value = self._chain_search(seq, level)
            self.escape_memo[key] = value
        return self.escape_memo[key]

    # -- horizon-mode chain search ---------------------------------------
    def _stream_pos(self, seq: WordSeq) -> int:
        """Stream words consumed by the member's concatenation."""
        total = sum(len(w) for w in seq)
        k = 0
        used = 0
        while used < total:
            k += 1
            used += len(self.stream.word_at(k))
        if used != total:
            raise ValueError(f"{self.family.label}: member does not align with the stream")
        return k

    def _chain_search(self, seq: WordSeq, level: int) -> bool:
        H = self.oracle.horizon
        alph = self.stream.alph
        side = self.family.side
        pool = alph.symbols if side == "constant" else alph.full
        k0 = self._stream_pos(seq)
        touched_horizon = False

        def steps(k: int):
            nonlocal touched_horizon
            for b in range(1, self.oracle.max_block_words + 1):
                try:
                    ws = [self.stream.word_at(k + j) for j in range(1, b + 1)]
                except HorizonExceeded:
                    touched_horizon = True
                    return
                for assign in product(pool, repeat=b):
                    if side == "variable" and alph.variable not in assign:
                        continue
                    chunk: tuple[str, ...] = ()
                    for w, letter in zip(ws, assign):
                        chunk += tuple(
                            letter if ch == alph.variable else ch for ch in w.letters
                        )
                    yield chunk, b

        def dfs(tail: tuple[str, ...], k: int, depth: int) -> bool:
            if depth >= H:
                return True
            self.nodes += 1
            if self.nodes > self.oracle.node_budget:
                raise BudgetExceeded("chain search exceeded its node budget")
            for chunk, b in steps(k):
                new_tail = tail + chunk
                if not self.member_at(seq + (Word(new_tail),), level):
                    if dfs(new_tail, k + b, depth + 1):
                        return True
            return False

        found = dfs((), k0, 0)
        if found:
            return True
        if touched_horizon:
            raise OracleUndecided(
                f"no chain of length {H} found but the stream horizon was reached"
            )
        return False

    # -- exact rules -------------------------------------------------------
    def current_max_len(self, level: int) -> int:
        if level not in self.maxlen_memo:
            lens = [len(m) for m in self.family.seeds if self.member_at(m, level)]
            self.maxlen_memo[level] = max(lens) if lens else -1
        return self.maxlen_memo[level]


def _length_rule(engine: _Engine, seq: WordSeq, level: int) -> bool:
    return len(seq) == engine.current_max_len(level)


EXACT_RULES: dict[str, Callable] = {"length": _length_rule}


def initial_state(family: CBFamily, stream: VarWordStream, oracle: ChainOracle) -> DerivativeState:
    engine = _Engine(family, stream, oracle)
    return DerivativeState(family, stream, oracle, 0, engine.survivors(0), engine)


def derivative(state: DerivativeState) -> DerivativeState:
    """One derivative pass; survivors at the next level."""
    engine = state._engine
    level = state.level + 1
    return DerivativeState(
        state.family, state.stream, state.oracle, level, engine.survivors(level), engine
    )


def so_index(
    family: CBFamily, stream: VarWordStream, oracle: ChainOracle, budget: int = 32
) -> int:
    """Smallest level at which the derived family is empty: the family
    seen after j+1 passes is the level-j derivative, so the returned
    index matches the convention that level 0 is the once-derived family.
    """
    state = initial_state(family, stream, oracle)
    for _ in range(budget):
        state = derivative(state)
        if not state.survivors:
            return state.level - 1
    raise BudgetExceeded(f"family not empty after {budget} derivative passes")


def derivative_profile(
    family: CBFamily, stream: VarWordStream, oracle: ChainOracle, levels: int
) -> list[int]:
    """Survivor counts (over the seeds) at levels 0..levels."""
    state = initial_state(family, stream, oracle)
    counts = [len(state.survivors)]
    for _ in range(levels):
        state = derivative(state)
        counts.append(len(state.survivors))
    return counts


def monotonicity_check(
    small: CBFamily,
    large: CBFamily,
    stream: VarWordStream,
    substream: VarWordStream | None,
    oracle: ChainOracle,
    budget: int = 32,
) -> dict:
    """Index comparisons: contained families index no higher; passing to a
    reduction of the stream does not lower the index."""
    report = {}
    i_small = so_index(small, stream, oracle, budget)
    i_large = so_index(large, stream, oracle, budget)
    report["small"] = i_small
    report["large"] = i_large
    report["contained_le"] = i_small <= i_large
    if substream is not None:
        i_sub = so_index(large, substream, oracle, budget)
        report["substream"] = i_sub
        report["substream_ge"] = i_sub >= i_large
    return report
