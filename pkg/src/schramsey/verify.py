"""Brute-force finite-instance verifiers and witness searches.

Every search runs over explicitly bounded universes and stamps its
bounds into the result; nothing here claims more than the finite
instance it examined.  Witnesses carry certificates that an independent
checker re-derives from scratch: the checker's set membership goes
through `mem_direct`, a split-searching recursion that shares no code
with the greedy membership used by the searches.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from . import ordinal as o
from . import schreier, wxi
from .errors import BudgetExceeded, HorizonExceeded
from .ordinal import Ordinal
from .schreier import DEFAULT_CONFIG, SchreierConfig
from .words import (
    Alphabet,
    VarWordStream,
    Word,
    WordSeq,
    d_map,
    finite_reductions,
    is_variable_word,
    reduce_seq,
    seq_sort_key,
    seq_text,
    upsilon_stream,
    word_text,
)

MAX_COLORING_SPACE = 1 << 20


# --- independent membership checker ------------------------------------


def _splits(s: tuple, count: int):
    """All ways to cut s into `count` consecutive non-empty blocks."""
    if count == 0:
        if not s:
            yield ()
        return
    if len(s) < count:
        return
    for cuts in combinations(range(1, len(s)), count - 1):
        bounds = (0,) + cuts + (len(s),)
        yield tuple(s[bounds[i] : bounds[i + 1]] for i in range(count))


def mem_direct(xi: Ordinal, s, cfg: SchreierConfig = DEFAULT_CONFIG) -> bool:
    """Membership by the recursive definition with exhaustive split search
    (no greedy shortcut); the independent oracle for mem."""
    t = tuple(s)
    if not xi.terms:
        return t == ()
    if not t:
        return False
    k = o.kind(xi)
    if k == "successor":
        return mem_direct(o.pred(xi), t[1:], cfg)
    terms = xi.terms
    if len(terms) == 1 and terms[0][1] == 1:
        e = terms[0][0]
        n = t[0]
        if o.kind(e) == "successor":
            below = o.omega_pow(o.pred(e))
            return any(
                all(mem_direct(below, blk, cfg) for blk in split)
                for split in _splits(t, n)
            )
        return mem_direct(o.omega_pow(cfg.step(e, n)), t, cfg)
    powers = []
    for exp, count in reversed(terms):
        powers.extend([o.omega_pow(exp)] * count)
    return any(
        all(mem_direct(p, blk, cfg) for p, blk in zip(powers, split))
        for split in _splits(t, len(powers))
    )


# --- colorings ----------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    """Serializable coloring: a named rule with parameters, or a table."""

    domain: str  # "finsets" | "words" | "wordseqs" | "wordset"
    colors: int
    rule: str
    params: tuple = ()

    def to_json(self) -> dict:
        return {
            "domain": self.domain,
            "colors": self.colors,
            "rule": self.rule,
            "params": list(self.params),
        }

    @staticmethod
    def from_json(data: dict) -> "Coloring":
        return Coloring(
            data["domain"], data["colors"], data["rule"], tuple(map(tuple_or_id, data["params"]))
        )


def tuple_or_id(x):
    return tuple(x) if isinstance(x, list) else x


def _key_text(x) -> str:
    if isinstance(x, Word):
        return word_text(x)
    if isinstance(x, tuple) and all(isinstance(w, Word) for w in x):
        return seq_text(x)
    if isinstance(x, frozenset):
        return "{" + ",".join(sorted(word_text(w) for w in x)) + "}"
    return str(tuple(x))


def apply_coloring(col: Coloring, x) -> int:
    r = col.colors
    if col.rule == "const":
        return col.params[0] if col.params else 1
    if col.rule == "table":
        table = dict(col.params)
        return table[_key_text(x)]
    if col.domain == "finsets":
        if col.rule == "min_mod":
            return (min(x) % r) + 1 if x else 1
        if col.rule == "size_mod":
            return (len(x) % r) + 1
        if col.rule == "pair_bits":
            mask, n = col.params
            pairs = list(combinations(range(1, n + 1), 2))
            return ((mask >> pairs.index(tuple(x))) & 1) + 1
    if col.domain == "words":
        if col.rule == "first_letter":
            symbols = col.params[0]
            return (symbols.index(x.letters[0]) % r) + 1 if x.letters[0] in symbols else 1
        if col.rule == "len_mod":
            return (len(x) % r) + 1
    if col.domain == "wordseqs":
        if col.rule == "first_len_mod":
            return (len(x[0]) % r) + 1 if x else 1
        if col.rule == "total_len_mod":
            return (sum(len(w) for w in x) % r) + 1
        if col.rule == "first_letter":
            symbols = col.params[0]
            ch = x[0].letters[0] if x else None
            return (symbols.index(ch) % r) + 1 if ch in symbols else 1
    if col.domain == "wordset":
        if col.rule == "size_mod":
            return (len(x) % r) + 1
        if col.rule == "min_len_mod":
            return (min(len(w) for w in x) % r) + 1 if x else 1
    raise ValueError(f"coloring rule {col.rule!r} undefined on domain {col.domain!r}")


# --- witnesses ----------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    kind: str
    payload: tuple
    certificate: tuple
    bounds: tuple


@dataclass(frozen=True)
class SearchOutcome:
    witness: Witness | None
    exhausted: bool
    visited: int
    expected: int | None = None

    @property
    def found(self) -> bool:
        return self.witness is not None


# --- ordinal Ramsey search ----------------------------------------------


def ramsey_schreier_search(
    xi: Ordinal,
    max_n: int,
    coloring: Coloring,
    target: int,
    cfg: SchreierConfig = DEFAULT_CONFIG,
) -> SearchOutcome:
    """Find the canonically least L within {1..max_n}, |L| >= target, on
    which every family member contained in L has one color."""
    members = schreier.enumerate_members(xi, max_n, cfg)
    visited = 0
    for size in range(target, max_n + 1):
        for L in combinations(range(1, max_n + 1), size):
            visited += 1
            ls = set(L)
            inside = [m for m in members if set(m) <= ls]
            colors = {apply_coloring(coloring, m) for m in inside}
            if len(colors) <= 1:
                cert = tuple((m, apply_coloring(coloring, m)) for m in inside)
                witness = Witness(
                    kind="mono_set",
                    payload=(L, str(xi), coloring),
                    certificate=cert,
                    bounds=(("max_n", max_n), ("target", target)),
                )
                return SearchOutcome(witness, False, visited)
    expected = sum(comb(max_n, size) for size in range(target, max_n + 1))
    return SearchOutcome(None, True, visited, expected)


def check_mono_set_witness(w: Witness, cfg: SchreierConfig = DEFAULT_CONFIG) -> bool:
    """Re-derive a mono_set certificate from scratch: enumerate subsets of
    L directly, test membership with the split-searching recursion, and
    re-apply the coloring."""
    L, xi_text, coloring = w.payload
    xi = o.parse(xi_text)
    found = []
    for size in range(0, len(L) + 1):
        for sub in combinations(L, size):
            if mem_direct(xi, sub, cfg):
                found.append(sub)
    cert_sets = sorted(m for m, _c in w.certificate)
    if sorted(found) != cert_sets:
        return False
    colors = set()
    for m, c in w.certificate:
        actual = apply_coloring(coloring, m)
        if actual != c:
            return False
        colors.add(actual)
    return len(colors) <= 1


def ramsey_pair_sweep(max_n: int, target: int = 3) -> dict:
    """Exhaust every 2-coloring of the pairs of {1..max_n}: does each one
    admit a `target`-element set all of whose pairs share a color?  Scans
    the whole coloring space; reports the least defeating coloring, if any.
    """
    pairs = list(combinations(range(1, max_n + 1), 2))
    triple_masks = []
    for trip in combinations(range(1, max_n + 1), target):
        mask = 0
        for p in combinations(trip, 2):
            mask |= 1 << pairs.index(p)
        triple_masks.append((trip, mask))
    total = 1 << len(pairs)
    defeater = None
    visited = 0
    for c in range(total):
        visited += 1
        ok = any((c & m) == 0 or (c & m) == m for _t, m in triple_masks)
        if not ok and defeater is None:
            defeater = c
    return {
        "max_n": max_n,
        "target": target,
        "colorings": total,
        "visited": visited,
        "all_have_witness": defeater is None,
        "defeating_coloring": defeater,
        "pair_order": pairs,
    }


# --- reduction-prefix witness search -------------------------------------


def _color(c, x) -> int:
    return apply_coloring(c, x) if isinstance(c, Coloring) else c(x)


def _prefix_reductions(u: WordSeq, alph: Alphabet, side: str):
    """Reductions of a stream prefix u: letter-words over at most len(u)
    letters, block-wise; yields (reduced sequence, letters used)."""
    m = len(u)
    pool = alph.symbols if side == "constant" else alph.full
    for used in range(1, m + 1):
        for cuts in product([False, True], repeat=used - 1):
            bounds = [0] + [i + 1 for i, c in enumerate(cuts) if c] + [used]
            for assign in product(pool, repeat=used):
                blocks = []
                ok = True
                for bi in range(len(bounds) - 1):
                    lo, hi = bounds[bi], bounds[bi + 1]
                    seg = assign[lo:hi]
                    if side == "variable" and alph.variable not in seg:
                        ok = False
                        break
                    letters: tuple[str, ...] = ()
                    for idx in range(lo, hi):
                        w = u[idx]
                        letter = assign[idx]
                        letters += tuple(
                            letter if ch == alph.variable else ch for ch in w.letters
                        )
                    blocks.append(Word(letters))
                if ok:
                    yield tuple(blocks), used


def _family_reductions(u: WordSeq, xi: Ordinal, alph: Alphabet, side: str, member_fn):
    """The level-xi reductions of the prefix u on one side, deduplicated."""
    seen = {}
    for seq, _used in _prefix_reductions(u, alph, side):
        if seq in seen:
            continue
        if not xi.terms:
            seen[seq] = len(seq) == 1
        else:
            seen[seq] = len(seq) >= 2 and member_fn(xi, d_map(seq))
    return tuple(sorted((s for s, m in seen.items() if m), key=seq_sort_key))


def carlson_witness_search(
    xi: Ordinal,
    chi1,
    chi2,
    stream: VarWordStream,
    depth: int,
    block_cap: int = 2,
    cfg: SchreierConfig = DEFAULT_CONFIG,
) -> SearchOutcome:
    """Backtracking search for a variable-reduction prefix of the stream,
    `depth` blocks long, whose level-xi reductions are chi1-monochromatic
    on the constant side and chi2-monochromatic on the variable side.

    Candidate blocks span at most block_cap stream words; the first
    witness in canonical order (block size, then letters) is returned.
    """
    alph = stream.alph
    mem_fn = lambda x, d: schreier.mem(x, d, cfg)
    per_step = sum(
        (len(alph.full)) ** b - len(alph.symbols) ** b for b in range(1, block_cap + 1)
    )
    visited_leaves = 0
    pruned_leaves = 0

    def blocks_from(k: int):
        for b in range(1, block_cap + 1):
            if k + b > stream.horizon:
                return
            ws = [stream.word_at(k + j) for j in range(1, b + 1)]
            for assign in product(alph.full, repeat=b):
                if alph.variable not in assign:
                    continue
                letters: tuple[str, ...] = ()
                for w, letter in zip(ws, assign):
                    letters += tuple(
                        letter if ch == alph.variable else ch for ch in w.letters
                    )
                yield Word(letters), b

    def mono(u: WordSeq):
        const = _family_reductions(u, xi, alph, "constant", mem_fn)
        c1 = {_color(chi1, s) for s in const}
        if len(c1) > 1:
            return None
        var = _family_reductions(u, xi, alph, "variable", mem_fn)
        c2 = {_color(chi2, s) for s in var}
        if len(c2) > 1:
            return None
        return const, var

    def dfs(u: WordSeq, k: int):
        nonlocal visited_leaves, pruned_leaves
        if len(u) == depth:
            visited_leaves += 1
            return u
        for blk, b in blocks_from(k):
            cand = u + (blk,)
            if mono(cand) is None:
                pruned_leaves += per_step ** (depth - len(cand))
                continue
            hit = dfs(cand, k + b)
            if hit is not None:
                return hit
        return None

    found = dfs((), 0)
    if found is None:
        return SearchOutcome(None, True, visited_leaves + pruned_leaves, per_step**depth)
    const, var = mono(found)
    cert = tuple(
        [("c", seq_text(s), _color(chi1, s)) for s in const]
        + [("v", seq_text(s), _color(chi2, s)) for s in var]
    )
    witness = Witness(
        kind="reduction_prefix",
        payload=(
            tuple(word_text(w) for w in found),
            str(xi),
            chi1 if isinstance(chi1, Coloring) else None,
            chi2 if isinstance(chi2, Coloring) else None,
            alph.symbols,
        ),
        certificate=cert,
        bounds=(("depth", depth), ("block_cap", block_cap), ("horizon", stream.horizon)),
    )
    return SearchOutcome(witness, False, visited_leaves + pruned_leaves, per_step**depth)


def check_reduction_prefix_witness(
    w: Witness, chi1=None, chi2=None, cfg: SchreierConfig = DEFAULT_CONFIG
) -> bool:
    """Re-derive a reduction_prefix certificate with the independent
    membership recursion and fresh reduction enumeration."""
    words_text, xi_text, pc1, pc2, symbols = w.payload
    chi1 = chi1 if chi1 is not None else pc1
    chi2 = chi2 if chi2 is not None else pc2
    alph = Alphabet(tuple(symbols))
    xi = o.parse(xi_text)
    from .words import word

    u = tuple(word(t, alph) for t in words_text)
    for v in u:
        if not is_variable_word(v, alph):
            return False
    mem_fn = lambda x, d: mem_direct(x, d, cfg)
    const = _family_reductions(u, xi, alph, "constant", mem_fn)
    var = _family_reductions(u, xi, alph, "variable", mem_fn)
    expect_c = {seq_text(s): _color(chi1, s) for s in const}
    expect_v = {seq_text(s): _color(chi2, s) for s in var}
    got_c = {t: c for side, t, c in w.certificate if side == "c"}
    got_v = {t: c for side, t, c in w.certificate if side == "v"}
    if expect_c != got_c or expect_v != got_v:
        return False
    return len(set(expect_c.values())) <= 1 and len(set(expect_v.values())) <= 1


def subspace_search(
    xi: Ordinal,
    chi,
    stream: VarWordStream,
    depth: int,
    block_cap: int = 2,
    cfg: SchreierConfig = DEFAULT_CONFIG,
) -> SearchOutcome:
    """Search for a prefix all of whose level-xi variable reductions span
    subspaces of one chi-color: the subspace coloring is pulled back to
    generators and the prefix search reused."""
    from .wxi import subspace_points

    pulled = lambda seq: _color(chi, frozenset(subspace_points(seq, stream.alph)))
    trivial = Coloring("wordseqs", 1, "const", (1,))
    out = carlson_witness_search(xi, trivial, pulled, stream, depth, block_cap, cfg)
    if out.witness is None:
        return out
    base = out.witness
    gens = [t for side, t, _c in base.certificate if side == "v"]
    cert = []
    for side, t, c in base.certificate:
        if side == "v":
            cert.append((t, c))
    witness = Witness(
        kind="subspace_prefix",
        payload=(base.payload[0], str(xi), chi if isinstance(chi, Coloring) else None, stream.alph.symbols),
        certificate=tuple(cert),
        bounds=base.bounds,
    )
    return SearchOutcome(witness, False, out.visited, out.expected)


def check_subspace_witness(w: Witness, chi=None, cfg: SchreierConfig = DEFAULT_CONFIG) -> bool:
    words_text, xi_text, pc, symbols = w.payload
    chi = chi if chi is not None else pc
    alph = Alphabet(tuple(symbols))
    xi = o.parse(xi_text)
    from .words import word
    from .wxi import subspace_points

    u = tuple(word(t, alph) for t in words_text)
    mem_fn = lambda x, d: mem_direct(x, d, cfg)
    var = _family_reductions(u, xi, alph, "variable", mem_fn)
    expect = {seq_text(s): _color(chi, frozenset(subspace_points(s, alph))) for s in var}
    got = dict(w.certificate)
    if expect != got:
        return False
    return len(set(expect.values())) <= 1


# --- Hales-Jewett instances ----------------------------------------------


_LETTERS = "abcdefgh"


def _hj_cube(xi: Ordinal, alph: Alphabet, M: int, cfg: SchreierConfig) -> tuple[WordSeq, ...]:
    """Level-xi sequences whose word lengths sum to exactly M."""
    return tuple(
        s
        for s in wxi.enumerate_wxi(xi, alph, "constant", M, cfg)
        if sum(len(w) for w in s) == M
    )


def _hj_generators(xi: Ordinal, alph: Alphabet, M: int, n: int, cfg: SchreierConfig):
    """Variable n-word generators of total length M, paired with their
    level-xi reduction sets (full consumption, own offsets)."""
    gens = []
    for shape in wxi._shapes(M, n) if n <= M else ():
        for g in wxi._fill_words(shape, "variable", alph):
            rset = []
            for seq, _d in finite_reductions(g, alph)[0]:
                if not seq:
                    continue
                if not xi.terms:
                    ok = len(seq) == 1
                else:
                    ok = len(seq) >= 2 and schreier.mem(xi, d_map(seq), cfg)
                if ok:
                    rset.append(seq)
            if rset:
                gens.append((g, tuple(rset)))
    return gens


def hj_level(
    r: int,
    n: int,
    k: int,
    xi: Ordinal,
    M: int,
    cfg: SchreierConfig = DEFAULT_CONFIG,
    coloring_budget: int = MAX_COLORING_SPACE,
):
    """Exhaust every r-coloring of the level-xi length-M sequences: does
    each one admit a monochromatic n-word generator?  Returns
    (ok, defeating assignment or None, colorings checked, cube)."""
    alph = Alphabet(tuple(_LETTERS[:k]))
    cube = _hj_cube(xi, alph, M, cfg)
    if not cube:
        return (False, None, 0, cube)
    space = r ** len(cube)
    if space > coloring_budget:
        raise BudgetExceeded(f"coloring space {space} exceeds budget; frontier M={M}")
    gens = _hj_generators(xi, alph, M, n, cfg)
    index = {s: i for i, s in enumerate(cube)}
    gen_idx = [
        (g, tuple(index[s] for s in rset))
        for g, rset in gens
        if all(s in index for s in rset)
    ]
    count = 0
    for assign in product(range(1, r + 1), repeat=len(cube)):
        count += 1
        if not any(len({assign[i] for i in idxs}) == 1 for _g, idxs in gen_idx):
            return (False, dict(zip(cube, assign)), count, cube)
    return (bool(cube), None, count, cube)


def hales_jewett_M(
    r: int,
    n: int,
    k: int,
    xi: Ordinal,
    m_max: int,
    cfg: SchreierConfig = DEFAULT_CONFIG,
    coloring_budget: int = MAX_COLORING_SPACE,
) -> dict:
    """Least M <= m_max such that every r-coloring of the level-xi
    sequences of total length M admits an n-word variable generator whose
    reductions inside that set are monochromatic.

    Exhausts the full coloring space at each M; records a defeating
    coloring for every M that fails.
    """
    defeaters: dict[int, dict] = {}
    checked: dict[int, int] = {}
    for M in range(1, m_max + 1):
        ok, defeated, count, cube = hj_level(r, n, k, xi, M, cfg, coloring_budget)
        checked[M] = count
        if ok:
            return {
                "M": M,
                "cube_size": len(cube),
                "colorings_checked": checked,
                "defeaters": {
                    mm: {seq_text(s): c for s, c in d.items()}
                    for mm, d in defeaters.items()
                },
                "bounds": {"m_max": m_max, "r": r, "n": n, "k": k, "xi": str(xi)},
            }
        if defeated is not None:
            defeaters[M] = defeated
    return {
        "M": None,
        "cube_size": None,
        "colorings_checked": checked,
        "defeaters": {
            mm: {seq_text(s): c for s, c in d.items()} for mm, d in defeaters.items()
        },
        "bounds": {"m_max": m_max, "r": r, "n": n, "k": k, "xi": str(xi)},
    }


def hj_line_search(
    coloring,
    xi: Ordinal,
    alph: Alphabet,
    M: int,
    n: int = 1,
    cfg: SchreierConfig = DEFAULT_CONFIG,
) -> SearchOutcome:
    """Single-coloring mode: the canonically least monochromatic n-word
    generator of total length M for the given coloring."""
    gens = _hj_generators(xi, alph, M, n, cfg)
    visited = 0
    for g, rset in gens:
        visited += 1
        colors = {_color(coloring, s) for s in rset}
        if len(colors) == 1:
            cert = tuple((seq_text(s), _color(coloring, s)) for s in rset)
            witness = Witness(
                kind="hj_line",
                payload=(
                    tuple(word_text(w) for w in g),
                    str(xi),
                    coloring if isinstance(coloring, Coloring) else None,
                    alph.symbols,
                    M,
                ),
                certificate=cert,
                bounds=(("M", M), ("n", n)),
            )
            return SearchOutcome(witness, False, visited, len(gens))
    return SearchOutcome(None, True, visited, len(gens))


def check_hj_line_witness(w: Witness, coloring=None, cfg: SchreierConfig = DEFAULT_CONFIG) -> bool:
    words_text, xi_text, pc, symbols, M = w.payload
    coloring = coloring if coloring is not None else pc
    alph = Alphabet(tuple(symbols))
    xi = o.parse(xi_text)
    from .words import word

    g = tuple(word(t, alph) for t in words_text)
    if sum(len(x) for x in g) != M:
        return False
    for x in g:
        if not is_variable_word(x, alph):
            return False
    expect = {}
    for seq, _d in finite_reductions(g, alph)[0]:
        if not seq:
            continue
        if not xi.terms:
            ok = len(seq) == 1
        else:
            ok = len(seq) >= 2 and mem_direct(xi, d_map(seq), cfg)
        if ok:
            expect[seq_text(seq)] = _color(coloring, seq)
    got = dict(w.certificate)
    if expect != got:
        return False
    return len(set(expect.values())) <= 1


def check_witness(w: Witness, cfg: SchreierConfig = DEFAULT_CONFIG, **ctx) -> bool:
    """Dispatch to the kind-specific independent checker."""
    if w.kind == "mono_set":
        return check_mono_set_witness(w, cfg)
    if w.kind == "reduction_prefix":
        return check_reduction_prefix_witness(w, cfg=cfg, **ctx)
    if w.kind == "subspace_prefix":
        return check_subspace_witness(w, cfg=cfg, **ctx)
    if w.kind == "hj_line":
        return check_hj_line_witness(w, cfg=cfg, **ctx)
    raise ValueError(f"unknown witness kind {w.kind!r}")


# --- dichotomy fixtures ---------------------------------------------------

# Two intensional families over variable-word sequences, each hereditary
# once closed, shaped so their index machinery lands just past the first
# limit level.  "wide": members have 2k+2 words and first-word length
# k-1; closing under prefixes and reductions leaves exactly the numeric
# law  len(t) <= 2*len(t1) + 4.  "narrow": members have k+1 words and
# first-word length 2k-1; the closure law splits on the parity of the
# first word's length.  Both laws are validated in the test suite against
# a definitional split-and-unsubstitute search.


def wide_fixture_member(t: WordSeq) -> bool:
    """Hereditary closure of the wide fixture family."""
    if not t:
        return True
    return len(t) <= 2 * len(t[0]) + 4


def narrow_fixture_member(t: WordSeq) -> bool:
    """Hereditary closure of the narrow fixture family."""
    if not t:
        return True
    c = len(t[0])
    if c % 2 == 1:
        return 2 * len(t) <= c + 3
    return 2 * len(t) <= c


def nw_fixture_check(
    fixture: str,
    alph: Alphabet,
    letter_budget: int = 8,
    cfg: SchreierConfig = DEFAULT_CONFIG,
) -> dict:
    """Probe a dichotomy fixture at truncation.

    wide:   every first-limit-level sequence in the reduction universe of
            the identity stream lies inside the fixture's constant-side
            closure (substitution spans of the hereditary closure).
    narrow: on the stream (v, vv, vv, ...) every first-limit-level
            variable reduction lies in the complement of the closure.
    empty:  vacuous pass.

    Also reports the chain-closedness of a small materialized shadow and
    its derivative profile, both horizon-qualified.
    """
    from . import cbindex, families
    from .words import pattern_stream

    report: dict = {"fixture": fixture, "letter_budget": letter_budget}
    if fixture == "empty":
        report.update({"probed": 0, "consistent": True})
        return report
    if fixture == "wide":
        members = wxi.enumerate_wxi(o.OMEGA, alph, "constant", letter_budget, cfg)
        inside = [s for s in members if wide_fixture_member(s)]
        report.update(
            {
                "probed": len(members),
                "inside": len(inside),
                "consistent": len(inside) == len(members),
                "horn": "inside",
            }
        )
        shadow_members = {
            s
            for s in _all_var_seqs(alph, 6)
            if wide_fixture_member(s)
        }
        shadow = families.FamilyOfSeqs(alph, "variable", frozenset(shadow_members) | {()})
    elif fixture == "narrow":
        stream = pattern_stream(alph, ["_"], ["__"], 5)
        outside = []
        probed = 0
        for t in _all_var_seqs(alph, stream.horizon):
            try:
                v = reduce_seq(stream, t)
            except HorizonExceeded:
                continue
            if len(v) >= 2 and schreier.mem(o.OMEGA, d_map(v), cfg):
                probed += 1
                if not narrow_fixture_member(v):
                    outside.append(v)
        report.update(
            {
                "probed": probed,
                "outside": len(outside),
                "consistent": len(outside) == probed,
                "horn": "complement",
            }
        )
        shadow_members = {
            s for s in _all_var_seqs(alph, 5) if narrow_fixture_member(s)
        }
        shadow = families.FamilyOfSeqs(alph, "variable", frozenset(shadow_members) | {()})
    else:
        raise ValueError(f"unknown fixture {fixture!r}")
    e = upsilon_stream(alph, 24)
    state_fam = cbindex.explicit_cb_family(alph, "variable", shadow.members, label=fixture)
    profile = cbindex.derivative_profile(
        state_fam, e, cbindex.ChainOracle("horizon", horizon=3), 2
    )
    closed = families.pointwise_closed_trunc(shadow, e, horizon=8)
    report["shadow_size"] = len(shadow.members)
    report["shadow_closed_at_8"] = closed[0] == "closed"
    report["derivative_profile"] = profile
    return report


def _all_var_seqs(alph: Alphabet, letter_budget: int):
    """All variable-word sequences with total letters <= budget."""
    out = []
    for total in range(1, letter_budget + 1):
        for parts in range(1, total + 1):
            for shape in wxi._shapes(total, parts):
                out.extend(wxi._fill_words(shape, "variable", alph))
    return out
