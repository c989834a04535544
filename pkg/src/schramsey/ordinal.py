"""Ordinal arithmetic in Cantor normal form, capped below the first
fixed point of a -> w^a.

An ordinal is a finite sum  w^e1*c1 + ... + w^ek*ck  with e1 > ... > ek
(each exponent again such a sum) and positive integer coefficients.
The empty sum is 0.  The normal form is unique, so structural equality
of term lists is ordinal equality and ordinals can be dict keys.

Every limit ordinal here carries a canonical approximating sequence
(`fixed_seq`), plus the variant that iterates it down to a successor
(`fixed_seq_succ`).  Ordinals whose approximation would require an
epsilon number (a = w^a) are not representable in this normal form at
all, which is exactly the supported range.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .errors import OrdinalParseError, OrdinalRangeError

MAX_TOWER_DEPTH = 64
MAX_COEFF = 2**63 - 1


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """A Cantor-normal-form ordinal: tuple of (exponent, coefficient) terms."""

    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for exp, coeff in self.terms:
            if not isinstance(exp, Ordinal) or not isinstance(coeff, int):
                raise TypeError("terms must be (Ordinal, int) pairs")
            if coeff < 1:
                raise ValueError("coefficients must be >= 1")
            if coeff > MAX_COEFF:
                raise OrdinalRangeError(f"coefficient {coeff} exceeds cap")
            if prev is not None and compare(prev, exp) <= 0:
                raise ValueError("exponents must be strictly decreasing")
            prev = exp

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __lt__(self, other: "Ordinal") -> bool:
        return compare(self, other) < 0

    def __repr__(self) -> str:
        return f"Ordinal[{format_ordinal(self)}]"

    def __str__(self) -> str:
        return format_ordinal(self)


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def from_int(n: int) -> Ordinal:
    if n < 0:
        raise ValueError("ordinals are non-negative")
    if n == 0:
        return ZERO
    return Ordinal(((ZERO, n),))


def to_int(a: Ordinal) -> int:
    """Inverse of from_int; rejects infinite ordinals."""
    if not a.terms:
        return 0
    if len(a.terms) == 1 and a.terms[0][0] == ZERO:
        return a.terms[0][1]
    raise ValueError(f"{a} is not a natural number")


def is_finite(a: Ordinal) -> bool:
    return not a.terms or (len(a.terms) == 1 and a.terms[0][0] == ZERO)


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0, 1 as a <, =, > b."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def tower_depth(a: Ordinal) -> int:
    if not a.terms:
        return 0
    return 1 + max(tower_depth(e) for e, _ in a.terms)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum; left terms below b's leading exponent are absorbed."""
    if not b.terms:
        return a
    if not a.terms:
        return b
    lead = b.terms[0][0]
    kept = []
    merged_coeff = b.terms[0][1]
    for exp, coeff in a.terms:
        c = compare(exp, lead)
        if c > 0:
            kept.append((exp, coeff))
        elif c == 0:
            merged_coeff += coeff
            break
        else:
            break
    return Ordinal(tuple(kept) + ((lead, merged_coeff),) + b.terms[1:])


def nat_mul(a: Ordinal, n: int) -> Ordinal:
    """a*n for a natural n >= 1 (n-fold ordinal sum)."""
    if n < 1:
        raise ValueError("nat_mul needs n >= 1")
    if not a.terms or n == 1:
        return a
    (exp, coeff), rest = a.terms[0], a.terms[1:]
    return Ordinal(((exp, coeff * n),) + rest)


def omega_pow(a: Ordinal) -> Ordinal:
    """w**a.  Rejects results past the tower-depth cap (approaching e_0)."""
    if tower_depth(a) + 1 > MAX_TOWER_DEPTH:
        raise OrdinalRangeError("w**a would exceed the supported tower depth")
    return Ordinal(((a, 1),))


def kind(a: Ordinal) -> str:
    """'zero' | 'successor' | 'limit'."""
    if not a.terms:
        return "zero"
    if a.terms[-1][0] == ZERO:
        return "successor"
    return "limit"


def pred(a: Ordinal) -> Ordinal:
    """Predecessor of a successor ordinal."""
    if kind(a) != "successor":
        raise ValueError(f"{a} is not a successor")
    exp, coeff = a.terms[-1]
    if coeff == 1:
        return Ordinal(a.terms[:-1])
    return Ordinal(a.terms[:-1] + ((exp, coeff - 1),))


def fixed_seq(lam: Ordinal, n: int) -> Ordinal:
    """The n-th member of the canonical approximating sequence of a limit.

    (w)_n = n;  (w^(a+1))_n = w^a*n;  (w^a)_n = w^((a)_n) for limit a;
    and for a composite limit the last term sheds one copy of its power,
    replaced by that power's own n-th approximant.  Always < lam.
    """
    if n < 1:
        raise ValueError("fixed_seq needs n >= 1")
    if kind(lam) != "limit":
        raise ValueError(f"{lam} is not a non-zero limit ordinal")
    terms = lam.terms
    if len(terms) == 1 and terms[0][1] == 1:
        e = terms[0][0]
        if e == ONE:
            return from_int(n)
        ek = kind(e)
        if ek == "successor":
            return nat_mul(omega_pow(pred(e)), n)
        # e a limit: e < w^e always holds in this normal form, so the
        # epsilon-number branch (e = w^e) cannot be reached.
        return omega_pow(fixed_seq(e, n))
    exp_m, coeff_m = terms[-1]
    if coeff_m == 1:
        head = Ordinal(terms[:-1])
    else:
        head = Ordinal(terms[:-1] + ((exp_m, coeff_m - 1),))
    return add(head, fixed_seq(omega_pow(exp_m), n))


def fixed_seq_path(lam: Ordinal, n: int) -> tuple[Ordinal, ...]:
    """Strictly decreasing trace lam, (lam)_n, ((lam)_n)_n, ... ending at
    the first successor ordinal."""
    if kind(lam) != "limit":
        raise ValueError(f"{lam} is not a non-zero limit ordinal")
    path = [lam]
    cur = lam
    while kind(cur) == "limit":
        cur = fixed_seq(cur, n)
        path.append(cur)
    return tuple(path)


def fixed_seq_succ(lam: Ordinal, n: int) -> Ordinal:
    """The successor ordinal reached by iterating fixed_seq at fixed n."""
    return fixed_seq_path(lam, n)[-1]


# --- text form ---------------------------------------------------------
#
#   expr := term ('+' term)*
#   term := atom ('*' nat)?
#   atom := nat | 'w' | 'w^' atom | 'w^(' expr ')'
#
# Whitespace is insignificant.  Terms must appear in strictly decreasing
# exponent order; the canonical form emitted by format_ordinal parses
# back to the same ordinal byte-for-byte.


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise OrdinalParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a natural number")
        value = int(self.text[start : self.pos])
        if value > MAX_COEFF:
            self.pos = start
            self.error("number exceeds coefficient cap")
        return value

    def atom(self) -> Ordinal:
        ch = self.peek()
        if ch.isdigit():
            return from_int(self.nat())
        if ch == "w":
            self.pos += 1
            if self.peek() != "^":
                return OMEGA
            self.pos += 1
            if self.peek() == "(":
                self.pos += 1
                inner = self.expr()
                self.take(")")
                return omega_pow(inner)
            return omega_pow(self.atom())
        self.error("expected a number, 'w', or 'w^'")

    def term(self) -> Ordinal:
        value = self.atom()
        if self.peek() == "*":
            self.pos += 1
            n = self.nat()
            if n == 0:
                self.error("zero multiplier")
            if not value.terms:
                self.error("cannot multiply the zero term")
            value = nat_mul(value, n)
        return value

    def expr(self) -> Ordinal:
        first_pos = self.pos
        total = self.term()
        while self.peek() == "+":
            self.pos += 1
            here = self.pos
            nxt = self.term()
            if not total.terms or not nxt.terms:
                self.pos = here
                self.error("zero term inside a sum")
            if compare(total.terms[-1][0], nxt.terms[0][0]) <= 0:
                self.pos = here
                self.error("terms not in strictly decreasing exponent order")
            total = Ordinal(total.terms + nxt.terms)
        if not total.terms and self.pos - first_pos > 1:
            self.error("malformed zero")
        return total


def parse(text: str) -> Ordinal:
    p = _Parser(text)
    value = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        p.error("trailing input")
    return value


def _atom_text(a: Ordinal) -> str | None:
    """Render a as a grammar atom if possible (nat, w, or w^atom)."""
    if is_finite(a):
        return str(to_int(a))
    if len(a.terms) == 1 and a.terms[0][1] == 1:
        e = a.terms[0][0]
        if e == ONE:
            return "w"
        inner = _atom_text(e)
        if inner is not None:
            return f"w^{inner}"
    return None


def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp == ZERO:
            parts.append(str(coeff))
            continue
        if exp == ONE:
            base = "w"
        else:
            atom = _atom_text(exp)
            base = f"w^{atom}" if atom is not None else f"w^({format_ordinal(exp)})"
        parts.append(base if coeff == 1 else f"{base}*{coeff}")
    return " + ".join(parts)


