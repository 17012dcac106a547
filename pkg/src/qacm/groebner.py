"""Buchberger engine for ideals of S and submodules of free modules.

One engine serves both: polynomials are treated as rank-1 module elements.
Everything over R = S/(q) is computed in S by adjoining q (for ideals) or
q times each free-module basis element (for submodules), per the
quotient-ring strategy.

The engine optionally tracks representations of basis elements in terms of
the input generators; zero reductions then yield syzygies of the inputs,
and the per-pair division expressions yield the Schreyer generating set of
the syzygy module of the Groebner basis itself.
"""

from __future__ import annotations

import heapq

from .errors import EngineError, UserInputError
from .modules import FreeModule, ModuleElement, ModuleOrder
from .poly import (
    GREVLEX,
    MONO_ONE,
    Polynomial,
    TermOrder,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)
from .rings import Ambient

SATURATION_LIMIT = 50


class GroebnerBasis:
    """Reduced Groebner basis of a submodule (or ideal, rank-1 case)."""

    __slots__ = ("module", "order", "elements", "leads")

    def __init__(self, module: FreeModule, order: ModuleOrder, elements):
        self.module = module
        self.order = order
        self.elements = list(elements)
        self.leads = [g.lead(order) for g in self.elements]

    @property
    def polynomials(self):
        """Basis as polynomials; only valid for the rank-1 untwisted case."""
        if self.module.twists != (0,):
            raise UserInputError("not an ideal basis")
        return [g.components[0] for g in self.elements]

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({len(self.elements)} elements in {self.module})"


def _as_vector(x, module: FreeModule) -> ModuleElement:
    if isinstance(x, ModuleElement):
        if x.module != module:
            raise UserInputError("module element in the wrong free module")
        return x
    if isinstance(x, Polynomial):
        return module.element([x])
    raise UserInputError(f"cannot interpret {type(x).__name__} as a module element")


def _ideal_module(field) -> FreeModule:
    return FreeModule(field, (0,))


class _Engine:
    """Mutable Buchberger state; built once per call, discarded after."""

    def __init__(self, module: FreeModule, order: ModuleOrder,
                 track: bool, use_criteria: bool):
        self.module = module
        self.order = order
        self.okey = order.key
        self.field = module.field
        self.track = track
        # the product criterion is only safe for plain polynomial input
        self.use_criteria = use_criteria and module.rank == 1 and not track
        self.basis: list[ModuleElement] = []
        self.leads: list = []
        self.reps: list[ModuleElement] = []
        self.rep_module: FreeModule | None = None
        self.syzygies: list[ModuleElement] = []
        self.taus: list[dict] = []
        self.pairs: list = []

    # ---- reduction

    def _find_reducer(self, mono, pos):
        for i, (gm, gp) in enumerate(self.leads):
            if gp == pos and mono_divides(gm, mono):
                return i
        return None

    def reduce_full(self, v: ModuleElement):
        """Full normal form; returns (remainder terms, quotients per index)."""
        p = self.field.p
        h = dict(v.terms)
        rem = {}
        quots: dict[int, dict] = {}
        while h:
            k = max(h, key=self.okey)
            mono, pos = k
            c = h[k]
            gi = self._find_reducer(mono, pos)
            if gi is None:
                rem[k] = c
                del h[k]
                continue
            gm, _ = self.leads[gi]
            q = mono_div(mono, gm)
            for (m2, p2), c2 in self.basis[gi].terms.items():
                kk = (mono_mul(m2, q), p2)
                s = (h.get(kk, 0) - c * c2) % p
                if s:
                    h[kk] = s
                else:
                    h.pop(kk, None)
            d = quots.setdefault(gi, {})
            d[q] = (d.get(q, 0) + c) % p
        return rem, quots

    def _rep_combination(self, seed_terms: dict, quots: dict, scale: int = 1):
        """seed - sum(quots_i * rep_i), times scale, in the rep module."""
        p = self.field.p
        acc = dict(seed_terms)
        for gi, qd in quots.items():
            rep = self.reps[gi]
            for (m0, pos0), c0 in rep.terms.items():
                for qm, qc in qd.items():
                    kk = (mono_mul(m0, qm), pos0)
                    s = (acc.get(kk, 0) - c0 * qc) % p
                    if s:
                        acc[kk] = s
                    else:
                        acc.pop(kk, None)
        if scale != 1:
            acc = {k: (c * scale) % p for k, c in acc.items()}
        return ModuleElement(self.rep_module, acc)

    # ---- pair bookkeeping

    def _push_pairs(self, t: int):
        mt, pt = self.leads[t]
        for i in range(t):
            mi, pi = self.leads[i]
            if pi != pt:
                continue
            lcm = mono_lcm(mi, mt)
            deg = mono_degree(lcm) + self.module.twists[pt]
            heapq.heappush(self.pairs, (deg, i, t, lcm))

    def add_inputs(self, vectors, rep_twists=None):
        if self.track:
            if rep_twists is None:
                rep_twists = []
                for v in vectors:
                    d = v.degree
                    rep_twists.append(0 if d is None else d)
            self.rep_module = FreeModule(self.field, rep_twists)
        for i, v in enumerate(vectors):
            rem, quots = self.reduce_full(v)
            if not rem:
                if self.track:
                    seed = {(MONO_ONE, i): 1}
                    self.syzygies.append(self._rep_combination(seed, quots))
                continue
            k = max(rem, key=self.okey)
            lc = rem[k]
            inv = self.field.inv(lc)
            p = self.field.p
            g = ModuleElement(self.module, {kk: (c * inv) % p for kk, c in rem.items()})
            self.basis.append(g)
            self.leads.append(k)
            if self.track:
                seed = {(MONO_ONE, i): 1}
                self.reps.append(self._rep_combination(seed, quots, scale=inv))
            self._push_pairs(len(self.basis) - 1)

    def run(self):
        p = self.field.p
        while self.pairs:
            _, i, j, lcm = heapq.heappop(self.pairs)
            mi, pi = self.leads[i]
            mj, _ = self.leads[j]
            if self.use_criteria and mono_mul(mi, mj) == lcm:
                continue  # coprime lead monomials: S-pair reduces to zero
            ui = mono_div(lcm, mi)
            uj = mono_div(lcm, mj)
            s = self.basis[i].mul_term(ui, 1) - self.basis[j].mul_term(uj, 1)
            rem, quots = self.reduce_full(s)
            tau = {(ui, i): 1, (uj, j): p - 1}
            for gi, qd in quots.items():
                for qm, qc in qd.items():
                    kk = (qm, gi)
                    tau[kk] = (tau.get(kk, 0) - qc) % p
                    if not tau[kk]:
                        del tau[kk]
            if self.track:
                seed = (self.reps[i].mul_term(ui, 1)
                        - self.reps[j].mul_term(uj, 1)).terms
            if not rem:
                self.taus.append(tau)
                if self.track:
                    sigma = self._rep_combination(seed, quots)
                    if not sigma.is_zero():
                        self.syzygies.append(sigma)
                continue
            k = max(rem, key=self.okey)
            lc = rem[k]
            inv = self.field.inv(lc)
            g = ModuleElement(self.module, {kk: (c * inv) % p for kk, c in rem.items()})
            self.basis.append(g)
            self.leads.append(k)
            t = len(self.basis) - 1
            tau[(MONO_ONE, t)] = (p - lc) % p
            self.taus.append(tau)
            if self.track:
                self.reps.append(self._rep_combination(seed, quots, scale=inv))
            self._push_pairs(t)

    # ---- reduced basis extraction

    def reduced_basis(self) -> list[ModuleElement]:
        order_idx = sorted(range(len(self.basis)),
                           key=lambda i: self.okey(self.leads[i]))
        minimal = []
        for i in order_idx:
            m, pos = self.leads[i]
            if any(kp == pos and mono_divides(km, m)
                   for km, kp in (self.leads[j] for j in minimal)):
                continue
            minimal.append(i)
        kept = [self.basis[i] for i in minimal]
        kept_leads = [self.leads[i] for i in minimal]
        reduced = []
        p = self.field.p
        for i, g in enumerate(kept):
            others = [(kept[j], kept_leads[j]) for j in range(len(kept)) if j != i]
            reduced.append(_reduce_against(g, others, self.okey, p))
        reduced.sort(key=lambda g: self.okey(g.lead(self.order)))
        return reduced


def _reduce_against(g: ModuleElement, others, okey, p) -> ModuleElement:
    h = dict(g.terms)
    rem = {}
    while h:
        k = max(h, key=okey)
        mono, pos = k
        c = h[k]
        hit = None
        for b, (bm, bp) in others:
            if bp == pos and mono_divides(bm, mono):
                hit = (b, bm)
                break
        if hit is None:
            rem[k] = c
            del h[k]
            continue
        b, bm = hit
        q = mono_div(mono, bm)
        for (m2, p2), c2 in b.terms.items():
            kk = (mono_mul(m2, q), p2)
            s = (h.get(kk, 0) - c * c2) % p
            if s:
                h[kk] = s
            else:
                h.pop(kk, None)
    return ModuleElement(g.module, rem)


def _check_homogeneous(vectors):
    for v in vectors:
        if not v.is_homogeneous():
            raise UserInputError("generators must be homogeneous")


def buchberger(gens, order: TermOrder = GREVLEX,
               module: FreeModule | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of an ideal (list of polynomials) or of a
    submodule (list of elements of one free module)."""
    gens = list(gens)
    if module is None:
        if gens and isinstance(gens[0], ModuleElement):
            module = gens[0].module
        elif gens:
            module = _ideal_module(gens[0].field)
        else:
            raise UserInputError("empty generator list needs an explicit module")
    vectors = [_as_vector(g, module) for g in gens]
    vectors = [v for v in vectors if not v.is_zero()]
    _check_homogeneous(vectors)
    morder = ModuleOrder(order, "top")
    eng = _Engine(module, morder, track=False, use_criteria=True)
    eng.add_inputs(vectors)
    eng.run()
    return GroebnerBasis(module, morder, eng.reduced_basis())


def normal_form(x, gb: GroebnerBasis):
    """Remainder of x modulo gb; zero iff x lies in the span."""
    was_poly = isinstance(x, Polynomial)
    v = _as_vector(x, gb.module)
    okey = gb.order.key
    p = gb.module.field.p
    pairs = list(zip(gb.elements, gb.leads))
    r = _reduce_against(v, pairs, okey, p)
    return r.components[0] if was_poly else r


class SyzygyResult:
    """Raw output of a tracked Buchberger run."""

    __slots__ = ("rep_module", "syzygies", "gb", "taus", "tau_module",
                 "schreyer_order")

    def __init__(self, rep_module, syzygies, gb, taus, tau_module, schreyer_order):
        self.rep_module = rep_module
        self.syzygies = syzygies
        self.gb = gb
        self.taus = taus
        self.tau_module = tau_module
        self.schreyer_order = schreyer_order


def syzygy_generators(vectors, module: FreeModule | None = None,
                      order: TermOrder = GREVLEX,
                      rep_twists=None) -> SyzygyResult:
    """Generators of the syzygy module of the given (homogeneous) vectors.

    Every S-pair is processed (no skip criteria), so the recorded per-pair
    division expressions are the full Schreyer generating set for the
    syzygies of the returned Groebner basis; their images in input
    coordinates, together with the zero reductions of redundant inputs,
    generate the syzygies of the inputs.

    rep_twists fixes the twists of the free module the syzygies live in;
    by default the degrees of the input vectors are used (zero vectors get
    twist 0, so pass rep_twists explicitly when inputs may be zero).
    """
    vectors = list(vectors)
    if module is None:
        if not vectors:
            raise UserInputError("cannot infer the free module of no vectors")
        module = vectors[0].module
    vectors = [_as_vector(v, module) for v in vectors]
    _check_homogeneous(vectors)
    morder = ModuleOrder(order, "top")
    eng = _Engine(module, morder, track=True, use_criteria=False)
    eng.add_inputs(vectors, rep_twists=rep_twists)
    eng.run()
    gb = GroebnerBasis(module, morder, eng.basis)
    tau_degrees = []
    for g in eng.basis:
        d = g.degree
        tau_degrees.append(0 if d is None else d)
    tau_module = FreeModule(module.field, tau_degrees)
    taus = [ModuleElement(tau_module, t) for t in eng.taus]
    schreyer = ModuleOrder.schreyer(morder, eng.leads)
    return SyzygyResult(eng.rep_module, eng.syzygies, gb, taus, tau_module,
                        schreyer)


def satisfies_buchberger_criterion(vectors, order: ModuleOrder) -> bool:
    """Every S-pair (matching lead positions) reduces to zero against the
    given vectors under the given order."""
    vectors = [v for v in vectors if not v.is_zero()]
    if not vectors:
        return True
    p = vectors[0].module.field.p
    okey = order.key
    monic = [v.monic(order) for v in vectors]
    pairs_basis = [(v, v.lead(order)) for v in monic]
    for i in range(len(monic)):
        mi, pi = pairs_basis[i][1]
        for j in range(i + 1, len(monic)):
            mj, pj = pairs_basis[j][1]
            if pi != pj:
                continue
            lcm = mono_lcm(mi, mj)
            s = monic[i].mul_term(mono_div(lcm, mi), 1) \
                - monic[j].mul_term(mono_div(lcm, mj), 1)
            if not _reduce_against(s, pairs_basis, okey, p).is_zero():
                return False
    return True


def lift_through(vectors, target: ModuleElement, module: FreeModule | None = None):
    """Polynomial coefficients expressing target as a combination of vectors,
    or None when target is not in their span.  Exact, no mod-q slack."""
    vectors = list(vectors)
    if module is None:
        module = target.module
    vectors = [_as_vector(v, module) for v in vectors]
    _check_homogeneous(vectors)
    morder = ModuleOrder(GREVLEX, "top")
    eng = _Engine(module, morder, track=True, use_criteria=False)
    eng.add_inputs(vectors)
    eng.run()
    rem, quots = eng.reduce_full(_as_vector(target, module))
    if rem:
        return None
    acc = eng._rep_combination({}, quots).scale(-1)
    comps = acc.components
    return list(comps)


# ------------------------------------------------------------------- ideals


class Ideal:
    """Homogeneous ideal of S, or of R when a quadric ring is attached."""

    def __init__(self, gens, ring: Ambient = None, field=None):
        gens = [g for g in gens if not g.is_zero()]
        if field is None:
            if gens:
                field = gens[0].field
            elif ring is not None:
                field = ring.field
            else:
                raise UserInputError("cannot infer the field of an empty ideal")
        for g in gens:
            if g.field != field:
                raise UserInputError("ideal generators over different fields")
            if not g.is_homogeneous():
                raise UserInputError(f"ideal generator not homogeneous: {g}")
        if ring is not None and ring.field != field:
            raise UserInputError("quadric ring over a different field")
        self.field = field
        self.ring = ring
        self.gens = tuple(gens)
        self._gb = None
        self._min_gens = None

    def s_generators(self):
        """Generators of the ideal's lift to S (q adjoined in ambient R)."""
        lift = list(self.gens)
        if self.ring is not None:
            lift.append(self.ring.quadric)
        return lift

    def gb(self) -> GroebnerBasis:
        """Reduced grevlex Groebner basis of the S-lift (cached)."""
        if self._gb is None:
            self._gb = buchberger(self.s_generators(),
                                  module=_ideal_module(self.field))
        return self._gb

    def contains(self, f: Polynomial) -> bool:
        if f.field != self.field:
            raise UserInputError("membership test across different fields")
        return normal_form(f, self.gb()).is_zero()

    def equals(self, other: "Ideal") -> bool:
        if self.field != other.field or self.ring != other.ring:
            return False
        return _gb_signature(self.gb()) == _gb_signature(other.gb())

    def minimal_generators(self):
        """Minimal homogeneous generators (over R when ambient is R)."""
        if self._min_gens is None:
            self._min_gens = minimal_generators(self.gens, self.ring, self.field)
        return self._min_gens

    def with_ring(self, ring: Ambient) -> "Ideal":
        return Ideal(self.gens, ring=ring, field=self.field)

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.gens)
        amb = "R" if self.ring is not None else "S"
        return f"Ideal[{amb}]({inside})"


def _gb_signature(gb: GroebnerBasis):
    return tuple(tuple(sorted(g.terms.items())) for g in gb.elements)


def _poly_sort_key(f: Polynomial, order: TermOrder = GREVLEX):
    d = f.homogeneous_degree()
    return (d if d is not None else -1,
            tuple(sorted(((order.key(m), c) for m, c in f.terms.items()),
                         reverse=True)))


def minimal_generators(polys, ring: Ambient = None, field=None):
    """Greedy minimal generating set, ascending by degree (graded Nakayama)."""
    polys = [f for f in polys if not f.is_zero()]
    if field is None and polys:
        field = polys[0].field
    if not polys:
        return []
    ambient = [] if ring is None else [ring.quadric]
    kept = []
    for f in sorted(polys, key=_poly_sort_key):
        gb = buchberger(kept + ambient, module=_ideal_module(field)) \
            if (kept or ambient) else None
        if gb is None or not normal_form(f, gb).is_zero():
            kept.append(f.monic())
    return kept


def _vector_sort_key(v: ModuleElement, okey):
    d = v.degree
    return (d if d is not None else -1,
            tuple(sorted(((okey(k), c) for k, c in v.terms.items()),
                         reverse=True)))


def r_lift_vectors(module: FreeModule):
    """q*e_i generators realizing an R-submodule computation in S."""
    if module.ring is None:
        return []
    q = module.ring.quadric
    s_module = FreeModule(module.field, module.twists)
    return [s_module.basis_element(i).mul_poly(q) for i in range(module.rank)]


def s_form(module: FreeModule) -> FreeModule:
    """The same twisted free module regarded over S."""
    if module.ring is None:
        return module
    return FreeModule(module.field, module.twists)


def minimal_vector_generators(vectors, module: FreeModule):
    """Greedy minimal generators of a submodule (over R if module.ring set)."""
    s_mod = s_form(module)
    vecs = [ModuleElement(s_mod, v.terms) for v in vectors if not v.is_zero()]
    ambient = r_lift_vectors(module)
    morder = ModuleOrder(GREVLEX, "top")
    kept = []
    for v in sorted(vecs, key=lambda w: _vector_sort_key(w, morder.key)):
        if kept or ambient:
            gb = buchberger(kept + ambient, module=s_mod)
            if normal_form(v, gb).is_zero():
                continue
        kept.append(v.monic(morder))
    return kept


def ideal_quotient(numerator: Ideal, denominator: Ideal) -> Ideal:
    """(numerator : denominator) in the shared ambient ring."""
    if numerator.ring != denominator.ring or numerator.field != denominator.field:
        raise UserInputError("ideal quotient needs a common ambient ring")
    dgens = [g for g in denominator.gens if not g.is_zero()]
    if denominator.ring is not None:
        q_gb = buchberger([denominator.ring.quadric])
        dgens = [g for g in dgens if not normal_form(g, q_gb).is_zero()]
    if not dgens:
        raise UserInputError("quotient by the zero ideal")
    num_lift = numerator.s_generators()
    field = numerator.field
    result = None
    for f in dgens:
        colon = _colon_by_element(num_lift, f, field)
        result = colon if result is None else _intersect_s(result, colon, field)
    return Ideal(minimal_generators(result, numerator.ring, field),
                 ring=numerator.ring, field=field)


def _colon_by_element(igens, f: Polynomial, field):
    """Generators of (I : f) in S via syzygies of [f | I-generators]."""
    module = _ideal_module(field)
    vectors = [module.element([f])] + [module.element([g]) for g in igens]
    syz = syzygy_generators(vectors, module=module)
    out = []
    for s in syz.syzygies:
        comp = _rep_component(s, 0, field)
        if not comp.is_zero():
            out.append(comp)
    return out


def _rep_component(s: ModuleElement, idx: int, field) -> Polynomial:
    terms = {m: c for (m, pos), c in s.terms.items() if pos == idx}
    return Polynomial(field, terms)


def _intersect_s(gens_a, gens_b, field):
    """Generators of the intersection of two S-ideals via a rank-2 syzygy."""
    two = FreeModule(field, (0, 0))
    one = Polynomial.one(field)
    zero = Polynomial.zero(field)
    vectors = [two.element([one, one])]
    vectors += [two.element([g, zero]) for g in gens_a]
    vectors += [two.element([zero, g]) for g in gens_b]
    syz = syzygy_generators(vectors, module=two)
    out = []
    for s in syz.syzygies:
        comp = _rep_component(s, 0, field)
        if not comp.is_zero():
            out.append(comp)
    return out


def ideal_intersection(a: Ideal, b: Ideal) -> Ideal:
    if a.ring != b.ring or a.field != b.field:
        raise UserInputError("ideal intersection needs a common ambient ring")
    gens = _intersect_s(a.s_generators(), b.s_generators(), a.field)
    return Ideal(minimal_generators(gens, a.ring, a.field),
                 ring=a.ring, field=a.field)


def irrelevant_ideal(field, ring: Ambient = None) -> Ideal:
    from .poly import NVARS

    return Ideal([Polynomial.variable(field, i) for i in range(NVARS)],
                 ring=ring, field=field)


def saturate_irrelevant(ideal: Ideal) -> Ideal:
    """I : m^infinity, by iterating the quotient by m until stable."""
    m = irrelevant_ideal(ideal.field, ideal.ring)
    current = ideal
    for _ in range(SATURATION_LIMIT):
        nxt = ideal_quotient(current, m)
        if nxt.equals(current):
            return Ideal(minimal_generators(current.gens, ideal.ring, ideal.field),
                         ring=ideal.ring, field=ideal.field)
        current = nxt
    raise EngineError(
        f"saturation did not stabilize within {SATURATION_LIMIT} quotients"
    )
