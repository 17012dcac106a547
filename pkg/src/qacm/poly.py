"""Exact arithmetic for polynomials in x0..x4 over a prime field.

Monomials are exponent 5-tuples.  Polynomials are dicts mapping monomials to
nonzero coefficients in [1, p).  Everything is immutable by convention; all
operations return fresh objects.
"""

from __future__ import annotations

from .errors import UserInputError

NVARS = 5
VARNAMES = tuple(f"x{i}" for i in range(NVARS))

Mono = tuple  # exponent 5-tuple


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """GF(p) with p an odd prime (characteristic 2 is rejected)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not _is_prime(p):
            raise UserInputError(f"field characteristic {p} is not prime")
        if p == 2:
            raise UserInputError("characteristic 2 is not supported")
        self.p = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


DEFAULT_FIELD = PrimeField(32003)


# ---------------------------------------------------------------- monomials

MONO_ONE: Mono = (0,) * NVARS


def mono_degree(m: Mono) -> int:
    return sum(m)


def mono_mul(m1: Mono, m2: Mono) -> Mono:
    return tuple(a + b for a, b in zip(m1, m2))


def mono_divides(m1: Mono, m2: Mono) -> bool:
    return all(a <= b for a, b in zip(m1, m2))


def mono_div(m1: Mono, m2: Mono) -> Mono:
    """m1 / m2; caller guarantees divisibility."""
    return tuple(a - b for a, b in zip(m1, m2))


def mono_lcm(m1: Mono, m2: Mono) -> Mono:
    return tuple(max(a, b) for a, b in zip(m1, m2))


def monomials_of_degree(d: int):
    """All exponent tuples of total degree d, in no particular order."""
    if d < 0:
        return
    stack = [((), d)]
    while stack:
        prefix, rest = stack.pop()
        if len(prefix) == NVARS - 1:
            yield prefix + (rest,)
            continue
        for e in range(rest + 1):
            stack.append((prefix + (e,), rest - e))


class TermOrder:
    """Monomial order: grevlex (default) or lex, with x0 > x1 > ... > x4.

    key() returns a tuple that sorts ascending with the order, so
    max(monos, key=order.key) is the lead monomial.
    """

    __slots__ = ("kind",)

    def __init__(self, kind: str):
        if kind not in ("grevlex", "lex"):
            raise UserInputError(f"unknown term order {kind!r}")
        self.kind = kind

    def key(self, m: Mono):
        if self.kind == "grevlex":
            # higher degree wins; ties broken against the reversed exponents
            return (sum(m), tuple(-e for e in reversed(m)))
        return m

    def compare(self, m1: Mono, m2: Mono) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self.kind == other.kind

    def __hash__(self):
        return hash(("TermOrder", self.kind))

    def __repr__(self):
        return f"TermOrder({self.kind!r})"


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


# -------------------------------------------------------------- polynomials


class Polynomial:
    """Element of GF(p)[x0..x4], stored as {monomial: coefficient}."""

    __slots__ = ("field", "terms")

    def __init__(self, field: PrimeField, terms=None):
        self.field = field
        clean = {}
        if terms:
            p = field.p
            for m, c in terms.items():
                c %= p
                if c:
                    clean[m] = c
        self.terms = clean

    # ---- constructors

    @classmethod
    def zero(cls, field: PrimeField) -> "Polynomial":
        return cls(field)

    @classmethod
    def constant(cls, field: PrimeField, c: int) -> "Polynomial":
        return cls(field, {MONO_ONE: c})

    @classmethod
    def one(cls, field: PrimeField) -> "Polynomial":
        return cls.constant(field, 1)

    @classmethod
    def variable(cls, field: PrimeField, i: int) -> "Polynomial":
        e = [0] * NVARS
        e[i] = 1
        return cls(field, {tuple(e): 1})

    @classmethod
    def from_monomial(cls, field: PrimeField, m: Mono, c: int = 1) -> "Polynomial":
        return cls(field, {m: c})

    # ---- structure

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        """Max total degree of a term; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self):
        """Common degree of all terms; None for zero; raises if inhomogeneous."""
        degs = {mono_degree(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise UserInputError(f"polynomial is not homogeneous: {self}")
        return degs.pop()

    def is_constant(self) -> bool:
        return all(m == MONO_ONE for m in self.terms)

    def constant_value(self) -> int:
        return self.terms.get(MONO_ONE, 0)

    # ---- arithmetic

    def _check_field(self, other: "Polynomial"):
        if self.field != other.field:
            raise UserInputError("polynomials over different fields")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_field(other)
        p = self.field.p
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = (res.get(m, 0) + c) % p
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        out = Polynomial.__new__(Polynomial)
        out.field = self.field
        out.terms = res
        return out

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_field(other)
        p = self.field.p
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = (res.get(m, 0) - c) % p
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        out = Polynomial.__new__(Polynomial)
        out.field = self.field
        out.terms = res
        return out

    def __neg__(self) -> "Polynomial":
        p = self.field.p
        out = Polynomial.__new__(Polynomial)
        out.field = self.field
        out.terms = {m: p - c for m, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check_field(other)
        p = self.field.p
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = (res.get(m, 0) + c1 * c2) % p
                if s:
                    res[m] = s
                else:
                    res.pop(m, None)
        out = Polynomial.__new__(Polynomial)
        out.field = self.field
        out.terms = res
        return out

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        c %= self.field.p
        if c == 0:
            return Polynomial.zero(self.field)
        p = self.field.p
        out = Polynomial.__new__(Polynomial)
        out.field = self.field
        out.terms = {m: (c0 * c) % p for m, c0 in self.terms.items()}
        return out

    def mul_term(self, m: Mono, c: int) -> "Polynomial":
        """Multiply by the single term c*m."""
        c %= self.field.p
        if c == 0:
            return Polynomial.zero(self.field)
        p = self.field.p
        out = Polynomial.__new__(Polynomial)
        out.field = self.field
        out.terms = {mono_mul(m0, m): (c0 * c) % p for m0, c0 in self.terms.items()}
        return out

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise UserInputError("negative polynomial power")
        result = Polynomial.one(self.field)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field.p, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # ---- leading terms

    def lead_monomial(self, order: TermOrder = GREVLEX) -> Mono:
        if not self.terms:
            raise ValueError("zero polynomial has no lead monomial")
        return max(self.terms, key=order.key)

    def lead_coefficient(self, order: TermOrder = GREVLEX) -> int:
        return self.terms[self.lead_monomial(order)]

    def monic(self, order: TermOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.lead_coefficient(order)))

    def sorted_terms(self, order: TermOrder = GREVLEX):
        """Terms as (mono, coeff) pairs, largest monomial first."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # ---- rendering

    def __str__(self):
        return render_polynomial(self)

    def __repr__(self):
        return f"<poly {self}>"


def _render_mono(m: Mono) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(VARNAMES[i])
        elif e > 1:
            parts.append(f"{VARNAMES[i]}^{e}")
    return "*".join(parts)


def render_polynomial(f: Polynomial, order: TermOrder = GREVLEX) -> str:
    """Canonical text form, terms in descending order, balanced coefficients."""
    if f.is_zero():
        return "0"
    p = f.field.p
    pieces = []
    for m, c in f.sorted_terms(order):
        c_bal = c if c <= p // 2 else c - p  # balanced representative
        sign = "-" if c_bal < 0 else "+"
        mag = abs(c_bal)
        ms = _render_mono(m)
        if not ms:
            body = str(mag)
        elif mag == 1:
            body = ms
        else:
            body = f"{mag}*{ms}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# ------------------------------------------------------------------- parser


class ParseError(UserInputError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"parse error at position {pos}: {message}")
        self.pos = pos


class _Parser:
    """Recursive descent over + - * ^, integer literals, x0..x4, parens."""

    def __init__(self, text: str, field: PrimeField):
        self.text = text
        self.field = field
        self.i = 0

    def _skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def _peek(self):
        self._skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def parse(self) -> Polynomial:
        result = self._expr()
        self._skip_ws()
        if self.i < len(self.text):
            raise ParseError(f"unexpected {self.text[self.i]!r}", self.i)
        return result

    def _expr(self) -> Polynomial:
        ch = self._peek()
        if ch == "-":
            self.i += 1
            result = -self._term()
        else:
            if ch == "+":
                self.i += 1
            result = self._term()
        while True:
            ch = self._peek()
            if ch == "+":
                self.i += 1
                result = result + self._term()
            elif ch == "-":
                self.i += 1
                result = result - self._term()
            else:
                return result

    def _term(self) -> Polynomial:
        result = self._factor()
        while self._peek() == "*":
            self.i += 1
            result = result * self._factor()
        return result

    def _factor(self) -> Polynomial:
        base = self._atom()
        if self._peek() == "^":
            self.i += 1
            exp = self._integer()
            return base ** exp
        return base

    def _atom(self) -> Polynomial:
        ch = self._peek()
        if ch == "(":
            self.i += 1
            inner = self._expr()
            if self._peek() != ")":
                raise ParseError("expected ')'", self.i)
            self.i += 1
            return inner
        if ch == "-":
            self.i += 1
            return -self._atom()
        if ch.isdigit():
            return Polynomial.constant(self.field, self._integer())
        if ch.isalpha():
            return self._variable()
        raise ParseError("expected a variable, number or '('", self.i)

    def _integer(self) -> int:
        self._skip_ws()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == start:
            raise ParseError("expected an integer", self.i)
        return int(self.text[start : self.i])

    def _variable(self) -> Polynomial:
        self._skip_ws()
        start = self.i
        while self.i < len(self.text) and (
            self.text[self.i].isalnum() or self.text[self.i] == "_"
        ):
            self.i += 1
        name = self.text[start : self.i]
        if name not in VARNAMES:
            raise ParseError(f"unknown variable {name!r} (use x0..x4)", start)
        return Polynomial.variable(self.field, VARNAMES.index(name))


def parse_polynomial(text: str, field: PrimeField = DEFAULT_FIELD) -> Polynomial:
    """Parse text in the x0..x4 grammar into an exact polynomial."""
    return _Parser(text, field).parse()
