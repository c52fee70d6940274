"""Ordinals below omega^omega^omega in Cantor normal form.

Values are immutable ``Ordinal`` instances holding a tuple of
``(exponent, coefficient)`` pairs with strictly decreasing exponents.  The
text form uses ``w`` for omega, e.g. ``w^2*3+w+5`` or ``w^(w+1)``.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache, total_ordering

DEFAULT_DEPTH_CAP = 3


class OrdinalError(ValueError):
    pass


class Cmp(Enum):
    LT = -1
    EQ = 0
    GT = 1


def depth_cap() -> int:
    raw = os.environ.get("COMBINACH_DEPTH_CAP")
    if raw is None:
        return DEFAULT_DEPTH_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise OrdinalError(f"COMBINACH_DEPTH_CAP must be an integer, got {raw!r}")
    if cap < 1:
        raise OrdinalError("COMBINACH_DEPTH_CAP must be >= 1")
    return cap


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for exp, coef in self.terms:
            if not isinstance(coef, int) or coef < 1:
                raise OrdinalError(f"coefficient must be a positive integer: {coef!r}")
            if prev is not None and not _cmp(exp, prev) is Cmp.LT:
                raise OrdinalError("exponents must be strictly decreasing")
            prev = exp

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise OrdinalError("negative ordinal")
        return cls(((ZERO, n),)) if n else ZERO

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0].is_zero

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    def finite_value(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def depth(self) -> int:
        """Nesting depth: 0 for zero, 1 for positive integers, 2 below w^w, ..."""
        if not self.terms:
            return 0
        return 1 + max(exp.depth for exp, _ in self.terms)

    def predecessor(self) -> "Ordinal":
        if not self.is_successor:
            raise OrdinalError(f"{self} is not a successor")
        *head, (exp, coef) = self.terms
        if coef > 1:
            head.append((exp, coef - 1))
        return Ordinal(tuple(head))

    def succ(self) -> "Ordinal":
        return add(self, ONE)

    def split_finite(self) -> tuple["Ordinal", int]:
        """Return ``(limit_part, n)`` with ``self == limit_part + n``."""
        if self.is_successor:
            return Ordinal(self.terms[:-1]), self.terms[-1][1]
        return self, 0

    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return _cmp(self, other) is Cmp.LT

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"


def _cmp(a: Ordinal, b: Ordinal) -> Cmp:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c is not Cmp.EQ:
            return c
        if ca != cb:
            return Cmp.LT if ca < cb else Cmp.GT
    if len(a.terms) == len(b.terms):
        return Cmp.EQ
    return Cmp.LT if len(a.terms) < len(b.terms) else Cmp.GT


def ord_compare(a: Ordinal, b: Ordinal) -> Cmp:
    return _cmp(a, b)


ZERO = Ordinal(())
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def omega_power(exp: Ordinal, coef: int = 1) -> Ordinal:
    return Ordinal(((exp, coef),))


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum; left terms smaller than b's leading exponent are absorbed."""
    if not b.terms:
        return a
    lead_exp, lead_coef = b.terms[0]
    kept = [t for t in a.terms if _cmp(t[0], lead_exp) is Cmp.GT]
    same = [c for e, c in a.terms if _cmp(e, lead_exp) is Cmp.EQ]
    kept.append((lead_exp, lead_coef + sum(same)))
    kept.extend(b.terms[1:])
    return Ordinal(tuple(kept))


@lru_cache(maxsize=1 << 16)
def fundamental_sequence(a: Ordinal, k: int) -> Ordinal:
    """k-th element (k >= 1) of the canonical ladder converging to limit ``a``.

    ``g + w^(b+1)`` maps to ``g + w^b * k``; ``g + w^b`` with ``b`` a limit maps
    to ``g + w^(fundamental_sequence(b, k))``.
    """
    if not a.is_limit:
        raise OrdinalError(f"{a} is not a limit ordinal")
    if k < 1:
        raise OrdinalError("ladder index starts at 1")
    *head, (exp, coef) = a.terms
    if coef > 1:
        head.append((exp, coef - 1))
    base = Ordinal(tuple(head))
    if exp.is_successor:
        return add(base, omega_power(exp.predecessor(), k))
    return add(base, omega_power(fundamental_sequence(exp, k)))


# ---------------------------------------------------------------- text form

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.tokens: list[str] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            tok = m.group(1) or m.group(2)
            if tok.strip():
                self.tokens.append(tok)
            pos = m.end()
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = expected or "a token"
            raise OrdinalError(f"syntax error in {self.text!r}: expected {want}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self) -> Ordinal:
        value = self.term()
        while self.peek() == "+":
            self.take("+")
            value = add(value, self.term())
        return value

    def term(self) -> Ordinal:
        tok = self.peek()
        if tok is not None and tok.isdigit():
            return Ordinal.of(int(self.take()))
        if tok == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return self.coefficient(inner)
        self.take("w")
        exp = ONE
        if self.peek() == "^":
            self.take("^")
            exp = self.atom()
        return self.coefficient(omega_power(exp))

    def atom(self) -> Ordinal:
        # exponent: integer, parenthesised expression, or right-associative w^...
        tok = self.peek()
        if tok is not None and tok.isdigit():
            return Ordinal.of(int(self.take()))
        if tok == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        self.take("w")
        if self.peek() == "^":
            self.take("^")
            return omega_power(self.atom())
        return OMEGA

    def coefficient(self, value: Ordinal) -> Ordinal:
        if self.peek() != "*":
            return value
        self.take("*")
        tok = self.take()
        if not tok.isdigit():
            raise OrdinalError(f"syntax error in {self.text!r}: coefficient must be a natural number")
        n = int(tok)
        if n == 0:
            raise OrdinalError(f"syntax error in {self.text!r}: coefficients are positive")
        if value.is_zero:
            return ZERO
        if len(value.terms) != 1:
            raise OrdinalError(f"coefficient applies to a single omega power in {self.text!r}")
        exp, coef = value.terms[0]
        return Ordinal(((exp, coef * n),))


def ord_parse(text: str, cap: int | None = None) -> Ordinal:
    parser = _Parser(text)
    if not parser.tokens:
        raise OrdinalError("empty ordinal expression")
    value = parser.expr()
    if parser.peek() is not None:
        raise OrdinalError(f"syntax error in {text!r}: trailing {parser.peek()!r}")
    check_depth(value, cap)
    return value


def check_depth(value: Ordinal, cap: int | None = None) -> Ordinal:
    cap = depth_cap() if cap is None else cap
    if value.depth > cap:
        raise OrdinalError(f"ordinal {value} exceeds depth cap {cap}")
    return value


def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for exp, coef in a.terms:
        if exp.is_zero:
            parts.append(str(coef))
            continue
        if exp == ONE:
            s = "w"
        elif exp.is_finite or (len(exp.terms) == 1 and exp.terms[0][1] == 1):
            s = f"w^{format_ordinal(exp)}"
        else:
            s = f"w^({format_ordinal(exp)})"
        parts.append(s if coef == 1 else f"{s}*{coef}")
    return "+".join(parts)


def as_ordinal(value) -> Ordinal:
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int):
        return Ordinal.of(value)
    if isinstance(value, str):
        return ord_parse(value)
    raise TypeError(f"cannot interpret {value!r} as an ordinal")
