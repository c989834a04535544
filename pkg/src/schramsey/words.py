"""Words over a finite alphabet with one distinguished variable letter,
and the reduction calculus on (finite prefixes of) infinite sequences of
variable words.

A reduction substitutes one letter (or the variable itself) into each
word of a stream prefix and concatenates consecutive blocks; the block
structure of the substituted letter-word t is recorded by d_map(t).
Text form: letters juxtaposed, '_' for the variable (a_b = a,var,b).

The prefix order between words is strict (shorter, agreeing letterwise,
and in variable mode with a variable remainder).  Between a finite
sequence and a stream the order is read as "strict initial segment";
the sequence-versus-sequence form is seq_is_prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceeded, HorizonExceeded, ReductionMismatch

VAR = "_"

MAX_REDUCTION_WORDS = 14


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    variable: str = VAR

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        if self.variable in self.symbols:
            raise ValueError("variable must not be an alphabet symbol")

    @property
    def full(self) -> tuple[str, ...]:
        return self.symbols + (self.variable,)


@dataclass(frozen=True)
class Word:
    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("words are non-empty")

    def __len__(self) -> int:
        return len(self.letters)

    def __repr__(self) -> str:
        return f"Word({''.join(self.letters)})"


WordSeq = tuple[Word, ...]


def word(text: str, alph: Alphabet) -> Word:
    """Parse juxtaposed single-character symbols, VAR for the variable."""
    letters = []
    for ch in text:
        if ch == alph.variable or ch in alph.symbols:
            letters.append(ch)
        else:
            raise ValueError(f"letter {ch!r} not in alphabet")
    return Word(tuple(letters))


def word_text(w: Word) -> str:
    return "".join(w.letters)


def seq_text(seq: WordSeq) -> str:
    return "(" + ",".join(word_text(w) for w in seq) + ")"


def is_variable_word(w: Word, alph: Alphabet) -> bool:
    return alph.variable in w.letters


def concat(w1: Word, w2: Word) -> Word:
    return Word(w1.letters + w2.letters)


def substitute(w: Word, letter: str, alph: Alphabet) -> Word:
    """Replace every occurrence of the variable in w by `letter`."""
    if not is_variable_word(w, alph):
        raise ValueError("substitution into a constant word")
    if letter != alph.variable and letter not in alph.symbols:
        raise ValueError(f"letter {letter!r} not in alphabet")
    return Word(tuple(letter if ch == alph.variable else ch for ch in w.letters))


def is_prefix(w1: Word, w2: Word, alph: Alphabet, mode: str = "constant") -> bool:
    """Strict prefix order on words.  In variable mode the remainder must
    itself contain the variable."""
    k, l = len(w1), len(w2)
    if k >= l or w1.letters != w2.letters[:k]:
        return False
    if mode == "variable":
        return alph.variable in w2.letters[k:]
    if mode != "constant":
        raise ValueError(f"unknown mode {mode!r}")
    return True


def word_diff(w2: Word, w1: Word, alph: Alphabet, mode: str = "constant") -> Word:
    """w2 - w1 where w1 is a strict prefix of w2 in the given mode."""
    if not is_prefix(w1, w2, alph, mode):
        raise ValueError(f"{word_text(w1)} is not a {mode}-mode prefix of {word_text(w2)}")
    return Word(w2.letters[len(w1) :])


def seq_is_prefix(s: WordSeq, t: WordSeq) -> bool:
    """Strict initial-segment order on word sequences."""
    return len(s) < len(t) and t[: len(s)] == s


def d_map(seq: WordSeq) -> tuple[int, ...]:
    """Cumulative word-start offsets {k2 < ... < kl}; empty for one word."""
    if not seq:
        raise ValueError("d_map needs a non-empty sequence")
    offsets = []
    pos = 1
    for w in seq[:-1]:
        pos += len(w)
        offsets.append(pos)
    return tuple(offsets)


def flatten(seq: WordSeq) -> Word:
    letters: tuple[str, ...] = ()
    for w in seq:
        letters += w.letters
    return Word(letters)


@dataclass(frozen=True)
class VarWordStream:
    """Finite materialized prefix of an infinite sequence of variable words.

    Reading past the horizon raises instead of fabricating entries.
    """

    alph: Alphabet
    prefix: tuple[Word, ...]
    label: str = "explicit"

    def __post_init__(self):
        if not self.prefix:
            raise ValueError("stream horizon must be >= 1")
        for w in self.prefix:
            if not is_variable_word(w, self.alph):
                raise ValueError("stream entries must be variable words")

    @property
    def horizon(self) -> int:
        return len(self.prefix)

    def word_at(self, i: int) -> Word:
        """1-based access within the horizon."""
        if not 1 <= i <= len(self.prefix):
            raise HorizonExceeded(f"stream {self.label!r} has horizon {len(self.prefix)}")
        return self.prefix[i - 1]


def upsilon_stream(alph: Alphabet, horizon: int) -> VarWordStream:
    """The identity stream: the bare variable repeated."""
    v = Word((alph.variable,))
    return VarWordStream(alph, (v,) * horizon, label="e")


def pattern_stream(alph: Alphabet, head: list[str], repeat: list[str], horizon: int) -> VarWordStream:
    words = [word(t, alph) for t in head]
    body = [word(t, alph) for t in repeat]
    if not body and len(words) < horizon:
        raise ValueError("pattern too short for the requested horizon")
    while len(words) < horizon:
        words.extend(body)
    return VarWordStream(alph, tuple(words[:horizon]), label=f"pattern:{','.join(head)};{','.join(repeat)}")


def reduce_word(stream: VarWordStream, t: Word) -> Word:
    """Substitute t's i-th letter into the stream's i-th word, concatenated."""
    out: tuple[str, ...] = ()
    for i, letter in enumerate(t.letters, start=1):
        out += substitute(stream.word_at(i), letter, stream.alph).letters
    return Word(out)


def reduce_seq(stream: VarWordStream, t: WordSeq) -> WordSeq:
    """Block-wise reduction: each word of t reduces one block of the stream.

    The block complexity of the output relative to the stream equals
    d_map(t) by construction.
    """
    out = []
    pos = 1
    for block in t:
        letters: tuple[str, ...] = ()
        for letter in block.letters:
            letters += substitute(stream.word_at(pos), letter, stream.alph).letters
            pos += 1
        out.append(Word(letters))
    return tuple(out)


def reduce_stream(stream: VarWordStream, t_words: WordSeq):
    """Reduce as many whole blocks of t_words as the horizon allows.

    Returns a VarWordStream when every produced block is variable, and a
    plain WordSeq otherwise.  Raises if not even one block fits.
    """
    out = []
    pos = 1
    for block in t_words:
        if pos + len(block) - 1 > stream.horizon:
            break
        letters: tuple[str, ...] = ()
        for letter in block.letters:
            letters += substitute(stream.word_at(pos), letter, stream.alph).letters
            pos += 1
        out.append(Word(letters))
    if not out:
        raise HorizonExceeded("no whole block fits within the stream horizon")
    seq = tuple(out)
    if all(is_variable_word(w, stream.alph) for w in seq):
        return VarWordStream(stream.alph, seq, label=f"{stream.label}[reduced]")
    return seq


def reduced_words(seq: WordSeq, alph: Alphabet) -> tuple[tuple[Word, ...], tuple[Word, ...]]:
    """(constant, variable) reduced words of a finite variable-word block:
    every per-word substitution, concatenated."""
    for w in seq:
        if not is_variable_word(w, alph):
            raise ValueError("reduced_words needs variable words")
    rw, vrw = set(), set()
    for assign in product(alph.full, repeat=len(seq)):
        out: tuple[str, ...] = ()
        for w, letter in zip(seq, assign):
            out += substitute(w, letter, alph).letters
        target = vrw if alph.variable in assign else rw
        target.add(Word(out))
    return tuple(sorted(rw, key=lambda w: w.letters)), tuple(sorted(vrw, key=lambda w: w.letters))


def finite_reductions(seq: WordSeq, alph: Alphabet):
    """All block-partition x substitution reductions consuming seq entirely.

    Returns (constant, variable) lists of (sequence, d-value) pairs, each
    including the empty sequence with d = ().
    """
    n = len(seq)
    if n > MAX_REDUCTION_WORDS:
        raise BudgetExceeded(f"finite_reductions capped at {MAX_REDUCTION_WORDS} words")
    for w in seq:
        if not is_variable_word(w, alph):
            raise ValueError("finite_reductions needs variable words")
    rw = [((), ())]
    vrw = [((), ())]
    for cuts in product([False, True], repeat=max(n - 1, 0)):
        bounds = [0] + [i + 1 for i, c in enumerate(cuts) if c] + [n]
        blocks = [seq[bounds[i] : bounds[i + 1]] for i in range(len(bounds) - 1)]
        d = tuple(b + 1 for b in bounds[1:-1])
        for assign in product(alph.full, repeat=n):
            out = []
            variable_sides = []
            pos = 0
            constant = True
            for block in blocks:
                letters: tuple[str, ...] = ()
                has_var = False
                for w in block:
                    letter = assign[pos]
                    pos += 1
                    if letter == alph.variable:
                        has_var = True
                    letters += substitute(w, letter, alph).letters
                out.append(Word(letters))
                variable_sides.append(has_var)
                constant = constant and not has_var
            if constant:
                rw.append((tuple(out), d))
            elif all(variable_sides):
                vrw.append((tuple(out), d))
    return _dedup(rw), _dedup(vrw)


def seq_sort_key(seq: WordSeq):
    return (len(seq), tuple(w.letters for w in seq))


def _dedup(pairs):
    seen = {}
    for seq, d in pairs:
        seen.setdefault(seq, d)
    return tuple(sorted(seen.items(), key=lambda kv: seq_sort_key(kv[0])))


def match_word_reduction(stream: VarWordStream, t: Word, mode: str) -> tuple[str, ...]:
    """Recover the per-word letters that reduce a stream prefix to t.

    The prefix length is fixed by |t| (reductions preserve letter counts);
    raises ReductionMismatch if the letters cannot be produced, or if the
    recovered letter-word has the wrong mode ('constant' or 'variable').
    """
    assigns = []
    pos = 0
    i = 1
    while pos < len(t):
        w = stream.word_at(i)
        segment = t.letters[pos : pos + len(w)]
        if len(segment) < len(w):
            raise ReductionMismatch("length does not align with stream word boundaries")
        letter = None
        for src, got in zip(w.letters, segment):
            if src == stream.alph.variable:
                if letter is None:
                    letter = got
                elif letter != got:
                    raise ReductionMismatch("inconsistent variable substitution")
            elif src != got:
                raise ReductionMismatch("constant letters disagree")
        assigns.append(letter)
        pos += len(w)
        i += 1
    has_var = stream.alph.variable in assigns
    if mode == "constant" and has_var:
        raise ReductionMismatch("variable letters in a constant-mode reduction")
    if mode == "variable" and not has_var:
        raise ReductionMismatch("no variable letter in a variable-mode reduction")
    return tuple(assigns)


def family_shift(fam, s: Word):
    """The shifted family: sequences w with s a prefix of w1 such that
    re-splitting (s, w1-s, w2, ...) lands in fam; the empty sequence is
    included exactly when (s) is a member."""
    out = set()
    for m in fam:
        if m == (s,):
            out.add(())
        elif len(m) >= 2 and m[0] == s:
            out.add((concat(m[0], m[1]),) + m[2:])
    return frozenset(out)


def family_restrict(fam, s: Word, alph: Alphabet, mode: str = "constant"):
    """Members whose first word strictly extends s (plus the empty one)."""
    out = set()
    for m in fam:
        if m == ():
            out.add(m)
        elif is_prefix(s, m[0], alph, mode):
            out.add(m)
    return frozenset(out)


def _locate_prefix(stream: VarWordStream, t: Word, mode: str) -> int:
    """Number of stream words whose lengths sum to |t|, with t realizable."""
    total = 0
    k = 0
    while total < len(t):
        k += 1
        total += len(stream.word_at(k))
    if total != len(t):
        raise ReductionMismatch("length does not align with stream word boundaries")
    match_word_reduction(stream, t, mode)
    return k


def stream_shift(stream: VarWordStream, t: Word, mode: str) -> VarWordStream:
    """Graft t onto the next stream word and drop the consumed prefix."""
    k = _locate_prefix(stream, t, mode)
    head = concat(t, stream.word_at(k + 1))
    return VarWordStream(
        stream.alph, (head,) + stream.prefix[k + 1 :], label=f"{stream.label}-shift"
    )


def stream_drop(stream: VarWordStream, t: Word, mode: str) -> VarWordStream:
    """Drop the stream prefix that t reduces."""
    k = _locate_prefix(stream, t, mode)
    if k >= stream.horizon:
        raise HorizonExceeded("nothing left past the consumed prefix")
    return VarWordStream(stream.alph, stream.prefix[k:], label=f"{stream.label}-drop")
