"""The recursive ordinal-indexed families A_xi of finite subsets of N.

A_0 = {{}}, A_1 = singletons, and

  * A_(z+1): pop the minimum, the rest must lie in A_z;
  * A_(w^(b+1)): n = min s consecutive blocks, each in A_(w^b);
  * A_(w^l), l limit: delegate to A_(w^(l_n)) where n = min s and
    (l_n) is the configured approximating sequence of l;
  * composite limit index w^a*p + sum w^(a_i)*p_i: consecutive block
    groups in increasing-exponent order, the leading power's p blocks
    coming last.

These families are thin (no member is a proper initial segment of
another), so a member's block decomposition is unique and the greedy
left-to-right consumption below decides membership exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import ordinal as o
from .errors import BudgetExceeded, HorizonExceeded
from .ordinal import Ordinal

FinSet = tuple[int, ...]

MAX_ENUM_GROUND = 24


@dataclass(frozen=True)
class SchreierConfig:
    """Chooses which approximating sequence instantiates limit exponents:
    'fixed' uses (l)_n, 'succ' iterates it down to a successor ordinal."""

    limit_rule: str = "fixed"

    def __post_init__(self):
        if self.limit_rule not in ("fixed", "succ"):
            raise ValueError(f"unknown limit rule {self.limit_rule!r}")

    def step(self, lam: Ordinal, n: int) -> Ordinal:
        if self.limit_rule == "fixed":
            return o.fixed_seq(lam, n)
        return o.fixed_seq_succ(lam, n)


DEFAULT_CONFIG = SchreierConfig()


def validate_finset(s) -> FinSet:
    t = tuple(s)
    prev = 0
    for x in t:
        if not isinstance(x, int) or x <= prev:
            raise ValueError(f"{t} is not a strictly increasing set of naturals >= 1")
        prev = x
    return t


def _consume(xi: Ordinal, stream, pos: int, cfg: SchreierConfig) -> int:
    """Greedily consume one A_xi member from stream[pos:]; return the end
    position.  Raises HorizonExceeded if the stream runs out mid-member."""
    if not xi.terms:
        return pos
    k = o.kind(xi)
    if k == "successor":
        if pos >= len(stream):
            raise HorizonExceeded("stream exhausted while consuming a member")
        return _consume(o.pred(xi), stream, pos + 1, cfg)
    terms = xi.terms
    if len(terms) == 1 and terms[0][1] == 1:
        e = terms[0][0]
        if pos >= len(stream):
            raise HorizonExceeded("stream exhausted while consuming a member")
        n = stream[pos]
        if o.kind(e) == "successor":
            below = o.omega_pow(o.pred(e))
            end = pos
            for _ in range(n):
                end = _consume(below, stream, end, cfg)
            return end
        return _consume(o.omega_pow(cfg.step(e, n)), stream, pos, cfg)
    end = pos
    for exp, count in reversed(terms):
        power = o.omega_pow(exp)
        for _ in range(count):
            end = _consume(power, stream, end, cfg)
    return end


def initial_segment(xi: Ordinal, stream, cfg: SchreierConfig = DEFAULT_CONFIG) -> FinSet:
    """The unique prefix of the (strictly increasing) stream lying in A_xi.

    The caller supplies the horizon: if the materialized stream is too
    short to complete a member, HorizonExceeded is raised.
    """
    t = validate_finset(stream)
    end = _consume(xi, t, 0, cfg)
    return t[:end]


def mem(xi: Ordinal, s, cfg: SchreierConfig = DEFAULT_CONFIG) -> bool:
    """Exact membership test for A_xi via greedy decomposition."""
    t = validate_finset(s)
    try:
        end = _consume(xi, t, 0, cfg)
    except HorizonExceeded:
        return False
    return end == len(t)


@lru_cache(maxsize=None)
def _members(xi: Ordinal, lo: int, hi: int, rule: str) -> tuple[FinSet, ...]:
    """All members of A_xi with min >= lo and max <= hi, lexicographically."""
    cfg = SchreierConfig(rule)
    if not xi.terms:
        return ((),)
    k = o.kind(xi)
    out: list[FinSet] = []
    if k == "successor":
        below = o.pred(xi)
        for n in range(lo, hi + 1):
            for rest in _members(below, n + 1, hi, rule):
                out.append((n,) + rest)
        return tuple(sorted(out))
    terms = xi.terms
    if len(terms) == 1 and terms[0][1] == 1:
        e = terms[0][0]
        if o.kind(e) == "successor":
            below = o.omega_pow(o.pred(e))
            for n in range(lo, hi + 1):
                for first in _members_min_exact(below, n, hi, rule):
                    for rest in _block_runs(below, n - 1, first[-1] + 1, hi, rule):
                        out.append(first + rest)
            return tuple(sorted(out))
        for n in range(lo, hi + 1):
            sub = o.omega_pow(cfg.step(e, n))
            out.extend(_members_min_exact(sub, n, hi, rule))
        return tuple(sorted(out))
    groups = []
    for exp, count in reversed(terms):
        groups.extend([o.omega_pow(exp)] * count)
    for combo in _group_runs(tuple(groups), lo, hi, rule):
        out.append(combo)
    return tuple(sorted(out))


def _members_min_exact(xi: Ordinal, n: int, hi: int, rule: str) -> tuple[FinSet, ...]:
    return tuple(t for t in _members(xi, n, hi, rule) if t and t[0] == n)


def _block_runs(xi: Ordinal, count: int, lo: int, hi: int, rule: str) -> tuple[FinSet, ...]:
    """Concatenations of `count` consecutive A_xi blocks starting at >= lo."""
    if count == 0:
        return ((),)
    out = []
    for first in _members(xi, lo, hi, rule):
        if not first:
            out.append(())
            continue
        for rest in _block_runs(xi, count - 1, first[-1] + 1, hi, rule):
            out.append(first + rest)
    return tuple(out)


def _group_runs(powers: tuple[Ordinal, ...], lo: int, hi: int, rule: str) -> tuple[FinSet, ...]:
    if not powers:
        return ((),)
    out = []
    for first in _members(powers[0], lo, hi, rule):
        nxt = first[-1] + 1 if first else lo
        for rest in _group_runs(powers[1:], nxt, hi, rule):
            out.append(first + rest)
    return tuple(out)


def enumerate_members(
    xi: Ordinal, max_n: int, cfg: SchreierConfig = DEFAULT_CONFIG
) -> tuple[FinSet, ...]:
    """All members of A_xi contained in {1..max_n}, in lexicographic order.

    Generated recursively per minimum element; agrees pointwise with mem.
    """
    if max_n > MAX_ENUM_GROUND:
        raise BudgetExceeded(f"enumeration ground set capped at {MAX_ENUM_GROUND}")
    return _members(xi, 1, max_n, cfg.limit_rule)


def transfer_index(xi: Ordinal, n: int, cfg: SchreierConfig = DEFAULT_CONFIG) -> Ordinal:
    """The index xi_n with  A_xi(n) = A_(xi_n) restricted to {n+1, n+2, ...},
    where A_xi(n) collects the sets s > {n} with {n} u s in A_xi."""
    if n < 1:
        raise ValueError("transfer_index needs n >= 1")
    if not xi.terms:
        raise ValueError("transfer_index needs xi >= 1")
    k = o.kind(xi)
    if k == "successor":
        return o.pred(xi)
    terms = xi.terms
    if len(terms) == 1 and terms[0][1] == 1:
        e = terms[0][0]
        if o.kind(e) == "successor":
            below = o.omega_pow(o.pred(e))
            rec = transfer_index(below, n, cfg)
            if n == 1:
                return rec
            return o.add(o.nat_mul(below, n - 1), rec)
        return transfer_index(o.omega_pow(cfg.step(e, n)), n, cfg)
    exp_m, coeff_m = terms[-1]
    if coeff_m == 1:
        head = Ordinal(terms[:-1])
    else:
        head = Ordinal(terms[:-1] + ((exp_m, coeff_m - 1),))
    return o.add(head, transfer_index(o.omega_pow(exp_m), n, cfg))


def shifted_members(xi: Ordinal, n: int, max_n: int, cfg: SchreierConfig = DEFAULT_CONFIG):
    """A_xi(n) within {n+1..max_n}: tails of members whose minimum is n."""
    out = []
    for s in enumerate_members(xi, max_n, cfg):
        if s and s[0] == n:
            out.append(s[1:])
    return tuple(sorted(out))
