"""Trees and hereditary families of word sequences.

A family is a tree when closed under initial segments, and hereditary
when additionally closed under total variable reductions of members.
Constant-side families inherit both notions through their variable
witnesses: a variable sequence witnesses a constant one when the latter
lies in its word-by-word substitution span.

All closures here are exact set transforms on explicit finite families;
the two horizon-bound checks (chain existence, tree dichotomy) label
their answers with the bounds used.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import wxi
from .errors import HorizonExceeded, ReductionMismatch
from .ordinal import Ordinal
from .schreier import DEFAULT_CONFIG, SchreierConfig
from .words import (
    Alphabet,
    VarWordStream,
    Word,
    WordSeq,
    finite_reductions,
    seq_is_prefix,
    seq_sort_key,
    seq_text,
    word,
    word_text,
)

EMPTY: WordSeq = ()


@dataclass(frozen=True)
class FamilyOfSeqs:
    alph: Alphabet
    side: str  # "constant" | "variable"
    members: frozenset

    def __post_init__(self):
        if self.side not in ("constant", "variable"):
            raise ValueError(f"unknown side {self.side!r}")
        for m in self.members:
            if not wxi.side_consistent(m, self.side, self.alph):
                raise ValueError(f"{seq_text(m)} is not {self.side}-side")

    def sorted_members(self) -> tuple[WordSeq, ...]:
        return tuple(sorted(self.members, key=seq_sort_key))

    def replace(self, members) -> "FamilyOfSeqs":
        return FamilyOfSeqs(self.alph, self.side, frozenset(members))


def family_from_texts(alph: Alphabet, side: str, seqs) -> FamilyOfSeqs:
    members = set()
    for texts in seqs:
        members.add(tuple(word(t, alph) for t in texts))
    return FamilyOfSeqs(alph, side, frozenset(members))


def star_closure(fam: FamilyOfSeqs) -> FamilyOfSeqs:
    """Close under initial segments and add the empty sequence."""
    out = set(fam.members)
    out.add(EMPTY)
    for m in fam.members:
        for i in range(1, len(m)):
            out.add(m[:i])
    return fam.replace(out)


def is_tree(fam: FamilyOfSeqs) -> bool:
    return star_closure(fam).members == fam.members


def is_thin(fam: FamilyOfSeqs) -> bool:
    """No member is a proper initial segment of another."""
    members = fam.sorted_members()
    for a in members:
        for b in members:
            if seq_is_prefix(a, b):
                return False
    return True


def substar(fam: FamilyOfSeqs) -> FamilyOfSeqs:
    """Hereditary closure of a variable-side family: total variable
    reductions of members and their initial segments, plus the empty
    sequence."""
    if fam.side != "variable":
        raise ValueError("substar closes variable-side families; use g_substar")
    out = {EMPTY}
    for m in star_closure(fam).members:
        if m == EMPTY:
            continue
        _, vrw = finite_reductions(m, fam.alph)
        for seq, _d in vrw:
            if seq:
                out.add(seq)
    return fam.replace(out)


def is_hereditary(fam: FamilyOfSeqs) -> bool:
    if fam.side == "variable":
        return substar(fam).members == fam.members
    return g_substar(fam).members == fam.members


def f_g(fam: FamilyOfSeqs) -> FamilyOfSeqs:
    """Variable witnesses: sequences whose substitution span lies in the
    constant family.  Candidate shapes come from the family's members."""
    if fam.side != "constant":
        raise ValueError("f_g consumes a constant-side family")
    shapes = {tuple(len(w) for w in m) for m in fam.members if m}
    witnesses = set()
    for shape in shapes:
        for t in wxi._fill_words(shape, "variable", fam.alph):
            if all(s in fam.members for s in wxi.span(t, fam.alph)):
                witnesses.add(t)
    return FamilyOfSeqs(fam.alph, "variable", frozenset(witnesses))


def g_substar(fam: FamilyOfSeqs) -> FamilyOfSeqs:
    """Hereditary closure of a constant-side family: spans of the closed
    witness family, plus the empty sequence."""
    if fam.side != "constant":
        raise ValueError("g_substar closes constant-side families")
    closed = substar(f_g(fam))
    out = {EMPTY}
    for t in closed.members:
        if t == EMPTY:
            continue
        out.update(wxi.span(t, fam.alph))
    return fam.replace(out)


def _prefix_reductions_contained(t: WordSeq, members: frozenset, alph: Alphabet) -> bool:
    """Every initial segment of t (t included) has all its total variable
    reductions inside `members`."""
    for i in range(1, len(t) + 1):
        _, vrw = finite_reductions(t[:i], alph)
        for seq, _d in vrw:
            if seq and seq not in members:
                return False
    return True


def hereditary_kernel(fam: FamilyOfSeqs) -> FamilyOfSeqs:
    """Largest hereditary subfamily (with the empty sequence adjoined).

    Variable side: keep members all of whose initial segments (taken
    reflexively) have their variable reductions inside the family.
    Constant side: keep members all of whose variable witnesses satisfy
    the same condition against the constant family.
    """
    if fam.side == "variable":
        kept = {EMPTY}
        for t in fam.members:
            if t == EMPTY or _prefix_reductions_contained(t, fam.members, fam.alph):
                kept.add(t)
        return fam.replace(kept)
    witnesses = f_g(fam)
    good_witness = {}

    def witness_ok(t: WordSeq) -> bool:
        if t not in good_witness:
            ok = True
            for i in range(1, len(t) + 1):
                for u, _d in finite_reductions(t[:i], fam.alph)[1]:
                    if u and not all(s in fam.members for s in wxi.span(u, fam.alph)):
                        ok = False
                        break
                if not ok:
                    break
            good_witness[t] = ok
        return good_witness[t]

    kept = {EMPTY}
    for s in fam.members:
        if s == EMPTY:
            continue
        ts = [t for t in witnesses.members if s in wxi.span(t, fam.alph)]
        if ts and all(witness_ok(t) for t in ts):
            kept.add(s)
    return fam.replace(kept)


def pointwise_closed_trunc(fam: FamilyOfSeqs, stream: VarWordStream, horizon: int):
    """Search for a reduction chain of length `horizon` all of whose
    prefixes are members.  Returns ('open', chain) with the witness, or
    ('closed', horizon); the answer is only meaningful at this horizon.
    """
    children: dict[WordSeq, set] = {}
    for m in fam.members:
        if m:
            children.setdefault(m[:-1], set()).add(m[-1])

    def realizable(k: int, x: Word):
        # x must reduce whole stream words starting after position k
        total = 0
        b = 0
        while total < len(x):
            b += 1
            try:
                total += len(stream.word_at(k + b))
            except HorizonExceeded:
                return None
        if total != len(x):
            return None
        try:
            wxi.match_reduction(
                VarWordStream(stream.alph, stream.prefix[k : k + b]), (x,), fam.side
            )
        except ReductionMismatch:
            return None
        return b

    def dfs(cur: WordSeq, k: int):
        if len(cur) >= horizon:
            return cur
        for x in sorted(children.get(cur, ()), key=lambda w: (len(w), w.letters)):
            b = realizable(k, x)
            if b is None:
                continue
            hit = dfs(cur + (x,), k + b)
            if hit is not None:
                return hit
        return None

    chain = dfs(EMPTY, 0)
    if chain is not None:
        return ("open", chain)
    return ("closed", horizon)


def tree_dichotomy_check(
    fam: FamilyOfSeqs,
    xi: Ordinal,
    stream: VarWordStream,
    letter_budget: int,
    cfg: SchreierConfig = DEFAULT_CONFIG,
) -> dict:
    """For a tree family, compare the two horns over the truncated
    reduction universe of the stream:

      (a) every level-xi reduction avoids the family;
      (b) every family member among the reductions is a proper initial
          part of a level-xi member.

    Exhaustive at the stated bounds; reports both truth values and any
    counterexample to their equivalence.
    """
    if not is_tree(fam):
        raise ValueError("tree_dichotomy_check needs a tree family")
    side = fam.side
    budget = min(letter_budget, stream.horizon)
    universe = [EMPTY]
    for total in range(1, budget + 1):
        for parts in range(1, total + 1):
            for shape in wxi._shapes(total, parts):
                for t in wxi._fill_words(shape, side, stream.alph):
                    universe.append(_reduce_by(stream, t))
    a_bad = []
    b_bad = []
    for r in universe:
        status = wxi.star_status(xi, r, cfg)
        if status == "member" and r in fam.members:
            a_bad.append(r)
        if r in fam.members and status != "segment":
            b_bad.append(r)
    a_holds = not a_bad
    b_holds = not b_bad
    report = {
        "xi": str(xi),
        "letter_budget": budget,
        "universe_size": len(universe),
        "xi_reductions_avoid_family": a_holds,
        "family_inside_proper_segments": b_holds,
        "equivalent": a_holds == b_holds,
    }
    if not a_holds:
        report["family_xi_overlap"] = [seq_text(r) for r in a_bad[:5]]
    if not b_holds:
        report["members_outside_segments"] = [seq_text(r) for r in b_bad[:5]]
    return report


def _reduce_by(stream: VarWordStream, t: WordSeq) -> WordSeq:
    from .words import reduce_seq

    return reduce_seq(stream, t)


def family_to_json(fam: FamilyOfSeqs) -> str:
    return json.dumps(
        {
            "alphabet": list(fam.alph.symbols),
            "side": fam.side,
            "members": [[word_text(w) for w in m] for m in fam.sorted_members()],
        },
        sort_keys=True,
    )


def family_from_json(text: str) -> FamilyOfSeqs:
    data = json.loads(text)
    alph = Alphabet(tuple(data["alphabet"]))
    return family_from_texts(alph, data["side"], data["members"])
