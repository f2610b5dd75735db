"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial carries its own variable-name tuple; terms are exponent tuples
mapped to nonzero ``Fraction`` coefficients.  Term orders are
degree-compatible by construction (degrevlex with a configurable variable
priority), which is what every Groebner / normal form routine here assumes.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError

Term = tuple[int, ...]


def term_degree(t: Term) -> int:
    return sum(t)


def term_mul(s: Term, t: Term) -> Term:
    return tuple(a + b for a, b in zip(s, t))


def term_divides(s: Term, t: Term) -> bool:
    """True when s | t."""
    return all(a <= b for a, b in zip(s, t))


def term_div(t: Term, s: Term) -> Term:
    return tuple(a - b for a, b in zip(t, s))


def term_lcm(s: Term, t: Term) -> Term:
    return tuple(max(a, b) for a, b in zip(s, t))


class DegRevLex:
    """Degree-reverse-lexicographic term order.

    ``priority`` lists variable indices from most to least significant; ties
    in total degree are broken by the smallest exponent on the least
    significant end.  The order is total, multiplicative and compatible with
    total degree.
    """

    def __init__(self, nvars: int, priority: list[int] | None = None):
        self.nvars = nvars
        self.priority = tuple(priority if priority is not None else range(nvars))
        if sorted(self.priority) != list(range(nvars)):
            raise ValueError("priority must be a permutation of the variables")
        self._rev = tuple(reversed(self.priority))

    def key(self, t: Term):
        """Sort key: bigger key = bigger term."""
        return (sum(t), tuple(-t[v] for v in self._rev))

    def greater(self, s: Term, t: Term) -> bool:
        return self.key(s) > self.key(t)

    def sorted_terms(self, terms, reverse: bool = True) -> list[Term]:
        return sorted(terms, key=self.key, reverse=reverse)

    def __eq__(self, other):
        return (isinstance(other, DegRevLex) and self.nvars == other.nvars
                and self.priority == other.priority)

    def __hash__(self):
        return hash((self.nvars, self.priority))

    def __repr__(self):
        return f"DegRevLex(nvars={self.nvars}, priority={list(self.priority)})"


def affine_order(n: int) -> DegRevLex:
    """Order for dehomogenized variables x1 > ... > xn."""
    return DegRevLex(n)


def projective_order(n: int) -> DegRevLex:
    """Order for X0..Xn with X1 > ... > Xn > X0, so leading terms avoid X0
    whenever possible and dehomogenization preserves leading terms."""
    return DegRevLex(n + 1, priority=list(range(1, n + 1)) + [0])


def affine_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1))


def projective_names(n: int) -> tuple[str, ...]:
    return tuple(f"X{i}" for i in range(0, n + 1))


class Poly:
    """Immutable-by-convention sparse polynomial."""

    __slots__ = ("names", "terms")

    def __init__(self, names: tuple[str, ...], terms=None):
        self.names = tuple(names)
        clean: dict[Term, Fraction] = {}
        for t, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if len(t) != len(self.names):
                    raise ValueError("exponent tuple does not match variables")
                clean[tuple(t)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, names) -> "Poly":
        return cls(names, {})

    @classmethod
    def const(cls, names, c) -> "Poly":
        return cls(names, {tuple([0] * len(names)): Fraction(c)})

    @classmethod
    def variable(cls, names, i: int) -> "Poly":
        e = [0] * len(names)
        e[i] = 1
        return cls(names, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, names, term: Term, c=1) -> "Poly":
        return cls(names, {tuple(term): Fraction(c)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((term_degree(t) for t in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {term_degree(t) for t in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self) -> int:
        if not self.is_homogeneous():
            raise ValueError("polynomial is not homogeneous")
        return self.degree()

    def leading_term(self, order: DegRevLex) -> Term:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: DegRevLex) -> Fraction:
        return self.terms[self.leading_term(order)]

    # -- arithmetic --------------------------------------------------------

    def _require_same_vars(self, other: "Poly"):
        if self.names != other.names:
            raise ValueError(
                f"variable mismatch: {self.names} vs {other.names}")

    def __add__(self, other: "Poly") -> "Poly":
        self._require_same_vars(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, Fraction(0)) + c
        return Poly(self.names, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._require_same_vars(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, Fraction(0)) - c
        return Poly(self.names, out)

    def __neg__(self) -> "Poly":
        return Poly(self.names, {t: -c for t, c in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._require_same_vars(other)
        out: dict[Term, Fraction] = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                t = term_mul(t1, t2)
                out[t] = out.get(t, Fraction(0)) + c1 * c2
        return Poly(self.names, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(self.names, {t: c * v for t, v in self.terms.items()})

    def mul_term(self, term: Term, c=1) -> "Poly":
        c = Fraction(c)
        return Poly(self.names,
                    {term_mul(t, term): c * v for t, v in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(self.names, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.names == other.names
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def monic(self, order: DegRevLex) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_coeff(order))

    # -- calculus / substitution -------------------------------------------

    def partial(self, i: int) -> "Poly":
        out: dict[Term, Fraction] = {}
        for t, c in self.terms.items():
            if t[i]:
                s = list(t)
                s[i] -= 1
                s = tuple(s)
                out[s] = out.get(s, Fraction(0)) + c * t[i]
        return Poly(self.names, out)

    def evaluate(self, values) -> Fraction:
        values = [Fraction(v) for v in values]
        total = Fraction(0)
        for t, c in self.terms.items():
            prod = c
            for e, v in zip(t, values):
                if e:
                    prod *= v ** e
            total += prod
        return total

    # -- (de)homogenization -------------------------------------------------

    def dehomogenize(self, homog_var: int = 0) -> "Poly":
        """Set the chosen variable to 1 and drop it from the variable list."""
        names = self.names[:homog_var] + self.names[homog_var + 1:]
        out: dict[Term, Fraction] = {}
        for t, c in self.terms.items():
            s = t[:homog_var] + t[homog_var + 1:]
            out[s] = out.get(s, Fraction(0)) + c
        return Poly(names, out)

    def homogenize(self, homog_var: int = 0, name: str = "X0",
                   names: tuple[str, ...] | None = None) -> "Poly":
        """Insert a homogenizing variable at the given position."""
        if names is None:
            names = self.names[:homog_var] + (name,) + self.names[homog_var:]
        d = max((term_degree(t) for t in self.terms), default=0)
        out: dict[Term, Fraction] = {}
        for t, c in self.terms.items():
            s = t[:homog_var] + (d - term_degree(t),) + t[homog_var:]
            out[s] = c
        return Poly(names, out)

    # -- text ---------------------------------------------------------------

    def format(self, order: DegRevLex | None = None) -> str:
        if not self.terms:
            return "0"
        order = order or DegRevLex(len(self.names))
        parts = []
        for t in order.sorted_terms(self.terms):
            c = self.terms[t]
            mono = "*".join(
                self.names[i] + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(t) if e)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self.format()})"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[-+*/^()]))")


def parse_poly(text: str, names) -> Poly:
    """Parse a polynomial in the given variables.

    Accepts rational coefficients (``11/6``), ``^`` powers, explicit or
    implicit ``*`` and parentheses, e.g. ``"X0^5*X1 - 11/6*X0^4*X1^2"`` or
    ``"2+x2^2"``.
    """
    names = tuple(names)
    index = {nm: i for i, nm in enumerate(names)}
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise InputError(f"cannot tokenize polynomial near {text[pos:]!r}")
            break
        pos = m.end()
        for kind in ("num", "name", "op"):
            if m.group(kind) is not None:
                tokens.append((kind, m.group(kind)))
                break
    ptr = 0

    def peek():
        return tokens[ptr] if ptr < len(tokens) else (None, None)

    def take():
        nonlocal ptr
        tok = tokens[ptr]
        ptr += 1
        return tok

    def parse_sum() -> Poly:
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = parse_product().scale(sign)
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                nxt = parse_product()
                acc = acc + nxt if val == "+" else acc - nxt
            else:
                return acc

    def parse_product() -> Poly:
        acc = parse_power()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * parse_power()
            elif kind == "op" and val == "/":
                take()
                k2, v2 = take()
                if k2 != "num":
                    raise InputError("'/' must be followed by an integer")
                acc = acc.scale(Fraction(1, int(v2)))
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                acc = acc * parse_power()  # implicit multiplication
            else:
                return acc

    def parse_power() -> Poly:
        base = parse_atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            k2, v2 = take()
            if k2 != "num":
                raise InputError("'^' must be followed by an integer")
            return base ** int(v2)
        return base

    def parse_atom() -> Poly:
        kind, val = take() if ptr < len(tokens) else (None, None)
        if kind == "num":
            return Poly.const(names, int(val))
        if kind == "name":
            if val not in index:
                raise InputError(f"unknown variable {val!r} (expected one of {list(names)})")
            return Poly.variable(names, index[val])
        if kind == "op" and val == "(":
            inner = parse_sum()
            k2, v2 = take() if ptr < len(tokens) else (None, None)
            if (k2, v2) != ("op", ")"):
                raise InputError("unbalanced parentheses")
            return inner
        if kind == "op" and val == "-":
            return -parse_atom()
        raise InputError(f"unexpected token {val!r} in polynomial")

    if not tokens:
        raise InputError("empty polynomial string")
    result = parse_sum()
    if ptr != len(tokens):
        raise InputError(f"trailing input in polynomial: {tokens[ptr:]}")
    return result


def parse_rational(text: str) -> Fraction:
    """Parse 'p' or 'p/q' (used for coordinates in scheme files)."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational literal {text!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
