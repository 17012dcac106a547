"""Twisted graded free modules and their elements.

A FreeModule with twists (a_1..a_r) models ⊕ S(-a_i) (or ⊕ R(-a_i) when a
quadric ring is attached).  Elements store terms as {(monomial, position):
coefficient}; the total degree of a term is deg(monomial) + twist[position].
"""

from __future__ import annotations

from math import comb

from .errors import UserInputError
from .poly import (
    GREVLEX,
    MONO_ONE,
    Mono,
    Polynomial,
    PrimeField,
    TermOrder,
    mono_degree,
    mono_mul,
    render_polynomial,
)
from .rings import Ambient


def dim_s(d: int) -> int:
    """dim of the degree-d piece of S = k[x0..x4]."""
    return comb(d + 4, 4) if d >= 0 else 0


def dim_r(d: int) -> int:
    """dim of the degree-d piece of R = S/(q)."""
    return dim_s(d) - dim_s(d - 2)


class FreeModule:
    __slots__ = ("field", "twists", "ring")

    def __init__(self, field: PrimeField, twists, ring: Ambient = None):
        self.field = field
        self.twists = tuple(int(a) for a in twists)
        self.ring = ring

    @property
    def rank(self) -> int:
        return len(self.twists)

    def dim(self, n: int) -> int:
        """k-dimension of the degree-n graded piece."""
        piece = dim_r if self.ring is not None else dim_s
        return sum(piece(n - a) for a in self.twists)

    def zero(self) -> "ModuleElement":
        return ModuleElement(self, {})

    def element(self, components) -> "ModuleElement":
        comps = list(components)
        if len(comps) != self.rank:
            raise UserInputError(
                f"expected {self.rank} components, got {len(comps)}"
            )
        terms = {}
        for pos, f in enumerate(comps):
            if f.field != self.field:
                raise UserInputError("component over the wrong field")
            for m, c in f.terms.items():
                terms[(m, pos)] = c
        return ModuleElement(self, terms)

    def basis_element(self, pos: int, mono: Mono = MONO_ONE, coeff: int = 1) -> "ModuleElement":
        return ModuleElement(self, {(mono, pos): coeff % self.field.p})

    def shift(self, t: int) -> "FreeModule":
        """F(t): twists drop by t, so degree-n pieces become degree n+t ones."""
        return FreeModule(self.field, tuple(a - t for a in self.twists), self.ring)

    def __eq__(self, other):
        return (
            isinstance(other, FreeModule)
            and self.field == other.field
            and self.twists == other.twists
            and self.ring == other.ring
        )

    def __hash__(self):
        return hash((self.field.p, self.twists, self.ring))

    def __repr__(self):
        base = "R" if self.ring is not None else "S"
        return f"{base}{list(self.twists)}"


class ModuleElement:
    """Homogeneous-by-use element of a twisted free module."""

    __slots__ = ("module", "terms")

    def __init__(self, module: FreeModule, terms):
        self.module = module
        p = module.field.p
        clean = {}
        for k, c in terms.items():
            c %= p
            if c:
                clean[k] = c
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def components(self):
        comps = [dict() for _ in range(self.module.rank)]
        for (m, pos), c in self.terms.items():
            comps[pos][m] = c
        return tuple(Polynomial(self.module.field, d) for d in comps)

    def term_degree(self, key) -> int:
        m, pos = key
        return mono_degree(m) + self.module.twists[pos]

    @property
    def degree(self):
        """Common total degree; None for zero; raises if inhomogeneous."""
        degs = {self.term_degree(k) for k in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise UserInputError("module element is not homogeneous")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self.term_degree(k) for k in self.terms}) <= 1

    def _check(self, other: "ModuleElement"):
        if self.module != other.module:
            raise UserInputError("module elements from different free modules")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        p = self.module.field.p
        res = dict(self.terms)
        for k, c in other.terms.items():
            s = (res.get(k, 0) + c) % p
            if s:
                res[k] = s
            else:
                res.pop(k, None)
        out = ModuleElement.__new__(ModuleElement)
        out.module = self.module
        out.terms = res
        return out

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def __neg__(self) -> "ModuleElement":
        p = self.module.field.p
        out = ModuleElement.__new__(ModuleElement)
        out.module = self.module
        out.terms = {k: p - c for k, c in self.terms.items()}
        return out

    def scale(self, c: int) -> "ModuleElement":
        c %= self.module.field.p
        p = self.module.field.p
        out = ModuleElement.__new__(ModuleElement)
        out.module = self.module
        out.terms = {}
        if c:
            out.terms = {k: (c0 * c) % p for k, c0 in self.terms.items()}
        return out

    def mul_term(self, m: Mono, c: int) -> "ModuleElement":
        p = self.module.field.p
        c %= p
        out = ModuleElement.__new__(ModuleElement)
        out.module = self.module
        out.terms = {}
        if c:
            out.terms = {
                (mono_mul(m0, m), pos): (c0 * c) % p
                for (m0, pos), c0 in self.terms.items()
            }
        return out

    def mul_poly(self, f: Polynomial) -> "ModuleElement":
        acc = self.module.zero()
        for m, c in f.terms.items():
            acc = acc + self.mul_term(m, c)
        return acc

    def lead(self, order: "ModuleOrder"):
        """(mono, pos) of the largest term."""
        if not self.terms:
            raise ValueError("zero element has no lead term")
        return max(self.terms, key=order.key)

    def lead_coefficient(self, order: "ModuleOrder") -> int:
        return self.terms[self.lead(order)]

    def monic(self, order: "ModuleOrder") -> "ModuleElement":
        if not self.terms:
            return self
        return self.scale(self.module.field.inv(self.lead_coefficient(order)))

    def __eq__(self, other):
        return (
            isinstance(other, ModuleElement)
            and self.module == other.module
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.module, frozenset(self.terms.items())))

    def __repr__(self):
        comps = ", ".join(render_polynomial(f) for f in self.components)
        return f"({comps})"


class ModuleOrder:
    """Order on (monomial, position) pairs.

    kind "top": term over position, comparing monomials with the base order
    and breaking ties by smaller position.  kind "schreyer": the induced
    order for syzygy modules, where m*e_i is weighed by the parent lead term
    of the i-th basis image, ties by smaller index i.
    """

    __slots__ = ("base", "kind", "parent_key", "leads")

    def __init__(self, base: TermOrder = GREVLEX, kind: str = "top",
                 parent_key=None, leads=None):
        self.base = base
        self.kind = kind
        if kind == "schreyer":
            if parent_key is None or leads is None:
                raise ValueError("schreyer order needs parent key and leads")
            self.parent_key = parent_key
            self.leads = list(leads)
        elif kind == "top":
            self.parent_key = None
            self.leads = None
        else:
            raise ValueError(f"unknown module order kind {kind!r}")

    @classmethod
    def schreyer(cls, parent: "ModuleOrder", leads) -> "ModuleOrder":
        return cls(parent.base, "schreyer", parent_key=parent.key, leads=leads)

    def key(self, k):
        m, pos = k
        if self.kind == "top":
            return (self.base.key(m), -pos)
        lm, lpos = self.leads[pos]
        return (self.parent_key((mono_mul(m, lm), lpos)), -pos)

    def __repr__(self):
        return f"ModuleOrder({self.kind}, base={self.base.kind})"
