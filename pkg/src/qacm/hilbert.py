"""Hilbert functions and polynomials, cohomology tables with depth
certificates, ACM/MCM decision procedures, regularity, degree and genus.

Dimension counts go through lead-term staircases of Groebner bases; h^1/h^2
of sheafified modules are certified zero (or flagged nonzero) purely through
pd over S, never computed as dimensions.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import EngineError, UserInputError
from .groebner import Ideal, buchberger, r_lift_vectors, s_form
from .linalg import rank_mod_p
from .modules import FreeModule, ModuleElement, dim_s
from .poly import mono_divides, monomials_of_degree
from .resolutions import (
    GradedModule,
    PROBE_WINDOW,
    Resolution,
    minimal_resolution_s,
    pd_s,
)

NONZERO_MARK = "nonzero, not computed"


# ------------------------------------------------------ span / staircase


class _Span:
    """Degreewise dimensions of an S-span of vectors in a free module."""

    def __init__(self, vectors, module: FreeModule):
        self.module = s_form(module)
        vecs = [ModuleElement(self.module, v.terms) for v in vectors
                if not v.is_zero()]
        if vecs:
            gb = buchberger(vecs, module=self.module)
            self.leads = gb.leads
        else:
            self.leads = []
        self._by_pos = {}
        for m, pos in self.leads:
            self._by_pos.setdefault(pos, []).append(m)
        self._dims = {}

    def dim(self, n: int) -> int:
        if n in self._dims:
            return self._dims[n]
        total = 0
        for pos, a in enumerate(self.module.twists):
            d = n - a
            if d < 0:
                continue
            pos_leads = self._by_pos.get(pos)
            if not pos_leads:
                continue
            total += sum(
                1
                for mono in monomials_of_degree(d)
                if any(mono_divides(lm, mono) for lm in pos_leads)
            )
        self._dims[n] = total
        return total


def _module_span(module: GradedModule) -> tuple[_Span, FreeModule, bool]:
    """(span of the defining vectors with q adjoined, ambient free module,
    is_cokernel).  Cached on the module."""
    cached = getattr(module, "_span_data", None)
    if cached is not None:
        return cached
    if module.kind == "submodule":
        ambient = module.ambient
        vectors = list(module.gens) + r_lift_vectors(ambient)
        span = _Span(vectors, ambient)
        data = (span, ambient, False)
    else:
        pres = module.pres
        ambient = pres.target
        vectors = pres.columns() + r_lift_vectors(ambient)
        span = _Span(vectors, ambient)
        data = (span, ambient, True)
    module._span_data = data
    return data


def module_dim(module: GradedModule, n: int) -> int:
    """k-dimension of the degree-n piece."""
    span, ambient, is_coker = _module_span(module)
    amb_s = s_form(ambient)
    if is_coker:
        return amb_s.dim(n) - span.dim(n)
    # submodule of an R-free module: subtract the q*F part
    sub = span.dim(n)
    if ambient.ring is not None:
        sub -= sum(dim_s(n - 2 - a) for a in ambient.twists)
    return sub


# ------------------------------------------------- Hilbert data/polynomial


class HilbertPolynomial:
    """Exact polynomial in n of degree <= 3, with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def binomial(cls, shift: int, k: int, scale: int = 1) -> "HilbertPolynomial":
        """scale * C(n + shift, k) expanded in the power basis."""
        coeffs = [Fraction(scale)]
        for j in range(k):
            # multiply by (n + shift - j)
            nxt = [Fraction(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i] += c * (shift - j)
                nxt[i + 1] += c
            coeffs = nxt
        if k:
            fact = 1
            for j in range(2, k + 1):
                fact *= j
            coeffs = [c / fact for c in coeffs]
        return cls(coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return HilbertPolynomial([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + HilbertPolynomial([-c for c in other.coeffs])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __call__(self, n: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def binomial_coefficients(self):
        """Integers (c0..c3) with P(n) = sum c_i * C(n+i, i)."""
        cs = [Fraction(0)] * 4
        rem = self
        for i in range(3, -1, -1):
            basis = HilbertPolynomial.binomial(i, i)
            deg = rem.degree
            if deg is not None and deg == i:
                cs[i] = rem.leading_coefficient / basis.leading_coefficient
                rem = rem - HilbertPolynomial([c * cs[i] for c in basis.coeffs])
        if rem.coeffs:
            raise EngineError("Hilbert polynomial has degree > 3")
        out = []
        for c in cs:
            if c.denominator != 1:
                raise EngineError("non-integral binomial coefficient")
            out.append(int(c))
        return out

    def __eq__(self, other):
        return isinstance(other, HilbertPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def expanded_strings(self):
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts.append(f"{c}*n^{i}" if i else f"{c}")
        return " + ".join(parts)


class HilbertData:
    """Hilbert function values over a window, with the extracted polynomial."""

    __slots__ = ("window", "values", "polynomial", "stabilization_degree")

    def __init__(self, window, values):
        self.window = (int(window[0]), int(window[1]))
        self.values = dict(values)
        self.polynomial = None
        self.stabilization_degree = None

    def row(self):
        lo, hi = self.window
        return [self.values[n] for n in range(lo, hi + 1)]


def hilbert_function(module: GradedModule, window=PROBE_WINDOW) -> HilbertData:
    lo, hi = window
    if lo > hi:
        raise UserInputError("empty Hilbert window")
    values = {n: module_dim(module, n) for n in range(lo, hi + 1)}
    return HilbertData(window, values)


def hilbert_polynomial(data: HilbertData) -> HilbertPolynomial:
    """Degree <= 3 polynomial matching the stabilized tail of the values.

    Requires 5 consecutive vanishing 4th differences at the top of the
    window (the module dimension is at most 4, so degree <= 3; the margin
    guards against coincidences).
    """
    lo, hi = data.window
    vals = [data.values[n] for n in range(lo, hi + 1)]
    if len(vals) < 9:
        raise UserInputError(
            "window too short to certify stabilization (need 9 values)"
        )
    d4 = [
        sum((-1) ** k * comb(4, k) * vals[i + 4 - k] for k in range(5))
        for i in range(len(vals) - 4)
    ]
    if any(d4[-5:]):
        raise UserInputError(
            "window too short to certify stabilization (fourth differences "
            "do not vanish)"
        )
    # Newton interpolation through the top four values
    m = hi - 3
    pts = vals[-4:]
    diffs = [list(pts)]
    for _ in range(3):
        prev = diffs[-1]
        diffs.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    poly = HilbertPolynomial([0])
    for i in range(4):
        # Delta^i v(m) * C(n - m, i)
        poly = poly + _scaled_binomial(-m, i, diffs[i][0])
    stab = hi + 1
    for n in range(hi, lo - 1, -1):
        if poly(n) == data.values[n]:
            stab = n
        else:
            break
    data.polynomial = poly
    data.stabilization_degree = stab
    return poly


def _scaled_binomial(shift: int, k: int, scale) -> HilbertPolynomial:
    base = HilbertPolynomial.binomial(shift, k)
    return HilbertPolynomial([c * scale for c in base.coeffs])


# ------------------------------------------------------- cohomology table


class CohomologyTable:
    """h^0 row plus h^1/h^2 vanishing certificates for the sheafified module.

    h^i dimensions for i > 0 are never computed: a row is either certified
    zero by the depth certificate (pd over S) or flagged with NONZERO_MARK.
    """

    __slots__ = ("window", "h0", "h1_zero", "h2_zero", "pd", "depth")

    def __init__(self, window, h0, h1_zero, h2_zero, pd, depth):
        self.window = window
        self.h0 = dict(h0)
        self.h1_zero = h1_zero
        self.h2_zero = h2_zero
        self.pd = pd
        self.depth = depth

    def row(self, i: int):
        lo, hi = self.window
        if i == 0:
            return [self.h0[n] for n in range(lo, hi + 1)]
        zero = self.h1_zero if i == 1 else self.h2_zero
        mark = 0 if zero else NONZERO_MARK
        return [mark for _ in range(lo, hi + 1)]


def cohomology_table(module: GradedModule, window=PROBE_WINDOW) -> CohomologyTable:
    if module.ring is None:
        raise UserInputError("cohomology tables are for modules over R")
    pd = pd_s(module)
    depth = 5 - pd
    if depth < 2:
        raise UserInputError(
            "module has depth < 2 (not saturated); saturate it before "
            "asking for a cohomology table"
        )
    hf = hilbert_function(module, window)
    return CohomologyTable(window, hf.values, h1_zero=(pd <= 2),
                           h2_zero=(pd <= 1), pd=pd, depth=depth)


# ----------------------------------------------------- curve-level checks


def degree_genus(ideal: Ideal):
    """(degree, arithmetic genus) from the Hilbert polynomial of R/I."""
    if ideal.ring is None:
        raise UserInputError("degree/genus are defined for curves on Q")
    quotient = GradedModule.quotient_by_ideal(ideal)
    data = hilbert_function(quotient, PROBE_WINDOW)
    poly = hilbert_polynomial(data)
    if poly.degree != 1:
        raise UserInputError(
            "ideal does not define a curve (Hilbert polynomial of R/I is "
            f"{poly!r}, not linear)"
        )
    d = poly.coeffs[1]
    const = poly.coeffs[0]
    if d.denominator != 1 or const.denominator != 1:
        raise EngineError("non-integral curve Hilbert polynomial")
    return int(d), 1 - int(const)


class AcmCertificate:
    __slots__ = ("acm", "saturated", "pd", "betti")

    def __init__(self, acm, saturated, pd, betti):
        self.acm = acm
        self.saturated = saturated
        self.pd = pd
        self.betti = betti


def acm_curve_check(ideal: Ideal) -> AcmCertificate:
    """A curve is ACM iff its ideal is saturated and pd_S(S/(I+q)) = 3."""
    degree_genus(ideal)  # dimension guard
    from .groebner import saturate_irrelevant

    saturated = saturate_irrelevant(ideal).equals(ideal)
    s_ideal = Ideal(ideal.s_generators(), ring=None, field=ideal.field)
    coord_ring = GradedModule.quotient_by_ideal(s_ideal)
    res = minimal_resolution_s(coord_ring)
    pd = res.length
    return AcmCertificate(acm=(saturated and pd == 3), saturated=saturated,
                          pd=pd, betti=res.betti_table())


class McmCertificate:
    __slots__ = ("mcm", "pd", "hp_degree", "betti")

    def __init__(self, mcm, pd, hp_degree, betti):
        self.mcm = mcm
        self.pd = pd
        self.hp_degree = hp_degree
        self.betti = betti


def mcm_check(module: GradedModule) -> McmCertificate:
    """Maximal Cohen-Macaulay over R: pd_S = 1 and Krull dimension 4."""
    if module.ring is None:
        raise UserInputError("MCM checks are for modules over R")
    if module.is_zero():
        raise UserInputError("the zero module is not a meaningful MCM input")
    res = minimal_resolution_s(module)
    pd = res.length
    data = hilbert_function(module, PROBE_WINDOW)
    poly = hilbert_polynomial(data)
    hp_degree = poly.degree if poly.degree is not None else -1
    return McmCertificate(mcm=(pd == 1 and hp_degree == 3), pd=pd,
                          hp_degree=hp_degree, betti=res.betti_table())


def regularity(module: GradedModule) -> int:
    """Castelnuovo-Mumford regularity from the minimal S-resolution."""
    if module.is_zero():
        raise UserInputError("regularity of the zero module")
    res = minimal_resolution_s(module)
    return max(max(degs) - step for step, degs in enumerate(res.betti_degrees()))


# -------------------------------------------- global generation (ranks)


def _monomial_index(module_s: FreeModule, n: int):
    """Sorted list of (mono, pos) spanning the degree-n piece of a free
    S-module."""
    out = []
    for pos, a in enumerate(module_s.twists):
        d = n - a
        if d < 0:
            continue
        for mono in monomials_of_degree(d):
            out.append((mono, pos))
    out.sort()
    return out


def _vector_rows(vectors, index_map, p):
    rows = []
    for v in vectors:
        if v.is_zero():
            continue
        row = [0] * len(index_map)
        for k, c in v.terms.items():
            row[index_map[k]] = c % p  # KeyError here would mean a degree bug
        rows.append(row)
    return rows


def global_generation_check(module: GradedModule, n: int, probe: int = 4) -> bool:
    """True iff degree-n elements generate every piece up to degree n+probe.

    Checked through surjectivity of the multiplication maps
    S_{m-n} (x) M_n -> M_m, as mod-p rank computations.
    """
    span, ambient, is_coker = _module_span(module)
    pd = pd_s(module)
    if module.ring is not None and 5 - pd < 2:
        raise UserInputError("module is not saturated")
    amb_s = s_form(ambient)
    p = amb_s.field.p
    if is_coker:
        raw_gens = module.pres.columns()
    else:
        raw_gens = list(module.gens)
    lifts = r_lift_vectors(ambient)
    for m in range(n, n + probe + 1):
        target = module_dim(module, m)
        basis_m = _monomial_index(amb_s, m)
        index_map = {k: i for i, k in enumerate(basis_m)}
        # rows spanning the part that counts as zero (relations, resp. q*F)
        if is_coker:
            trivial_vectors = raw_gens + lifts
        else:
            trivial_vectors = lifts
        trivial_rows = []
        for v in trivial_vectors:
            d = v.degree
            if d is None or d > m:
                continue
            for mono in monomials_of_degree(m - d):
                trivial_rows.append(v.mul_term(mono, 1))
        trivial_rows = _vector_rows(trivial_rows, index_map, p)
        base_rank = rank_mod_p(trivial_rows, p) if trivial_rows else 0
        # products of degree-n module elements with degree m-n monomials
        product_rows = []
        if is_coker:
            for pos, a in enumerate(amb_s.twists):
                if a > n:
                    continue
                for mono in monomials_of_degree(m - a):
                    # only monomials with a degree-(n-a) divisor: always true
                    product_rows.append(
                        ModuleElement(amb_s, {(mono, pos): 1})
                    )
        else:
            degree_n_sources = raw_gens + lifts
            for v in degree_n_sources:
                d = v.degree
                if d is None or d > n:
                    continue
                for mono1 in monomials_of_degree(n - d):
                    vn = v.mul_term(mono1, 1)
                    for mono2 in monomials_of_degree(m - n):
                        product_rows.append(vn.mul_term(mono2, 1))
        rows = trivial_rows + _vector_rows(product_rows, index_map, p)
        got = (rank_mod_p(rows, p) if rows else 0) - base_rank
        if got != target:
            return False
    return True


# --------------------------------------------------- exactness assertions


def span_of_columns(gmap) -> _Span:
    return _Span(gmap.columns(), gmap.target)


def verify_exactness(res: Resolution, window=PROBE_WINDOW) -> bool:
    """Degreewise exactness of an S-resolution at every interior step."""
    lo, hi = window
    for a, b in zip(res.maps, res.maps[1:]):
        span_a = span_of_columns(a)
        span_b = span_of_columns(b)
        middle = s_form(a.source)
        for n in range(lo, hi + 1):
            if middle.dim(n) - span_a.dim(n) != span_b.dim(n):
                return False
    return True
