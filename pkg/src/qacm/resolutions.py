"""Graded maps and modules, syzygies, minimal free resolutions over S, and
E-type resolutions of curve ideals over R.

Degree/depth questions about R-modules are always answered after restricting
scalars to S: S is regular, so projective dimension over S terminates and
converts local-cohomology vanishing into resolution lengths.
"""

from __future__ import annotations

from .errors import EngineError, UserInputError
from .groebner import (
    Ideal,
    minimal_vector_generators,
    r_lift_vectors,
    s_form,
    saturate_irrelevant,
    syzygy_generators,
)
from .modules import FreeModule, ModuleElement
from .poly import Polynomial
from .rings import Ambient

PROBE_WINDOW = (-2, 10)


class GradedMap:
    """Matrix of homogeneous polynomials between twisted free modules.

    entries[i][j] is the (target basis i, source basis j) entry; column j is
    the image of the j-th source basis element.  Entry (i, j) must be zero
    or homogeneous of degree source.twists[j] - target.twists[i].
    """

    __slots__ = ("source", "target", "entries")

    def __init__(self, source: FreeModule, target: FreeModule, entries):
        if source.field != target.field or source.ring != target.ring:
            raise UserInputError("graded map between incompatible modules")
        entries = tuple(tuple(row) for row in entries)
        if len(entries) != target.rank or any(len(r) != source.rank for r in entries):
            raise UserInputError("entry matrix shape does not match the modules")
        for i, row in enumerate(entries):
            for j, e in enumerate(row):
                if e.is_zero():
                    continue
                d = e.homogeneous_degree()
                if d != source.twists[j] - target.twists[i]:
                    raise UserInputError(
                        f"entry ({i},{j}) has degree {d}, expected "
                        f"{source.twists[j] - target.twists[i]}"
                    )
        self.source = source
        self.target = target
        self.entries = entries

    @classmethod
    def from_columns(cls, source: FreeModule, target: FreeModule, columns):
        comp_lists = [col.components for col in columns]
        rows = [[comps[i] for comps in comp_lists] for i in range(target.rank)]
        return cls(source, target, rows)

    def column(self, j: int) -> ModuleElement:
        terms = {}
        for i in range(self.target.rank):
            for m, c in self.entries[i][j].terms.items():
                terms[(m, i)] = c
        return ModuleElement(self.target, terms)

    def columns(self):
        return [self.column(j) for j in range(self.source.rank)]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self after other (matrix product self . other)."""
        if other.target != self.source:
            raise UserInputError("graded maps do not compose")
        field = self.source.field
        rows = []
        for i in range(self.target.rank):
            row = []
            for j in range(other.source.rank):
                acc = Polynomial.zero(field)
                for k in range(self.source.rank):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(row)
        return GradedMap(other.source, self.target, rows)

    def shift(self, t: int) -> "GradedMap":
        return GradedMap(self.source.shift(t), self.target.shift(t), self.entries)

    def with_ring(self, ring: Ambient) -> "GradedMap":
        src = FreeModule(self.source.field, self.source.twists, ring)
        tgt = FreeModule(self.target.field, self.target.twists, ring)
        return GradedMap(src, tgt, self.entries)

    def __repr__(self):
        return f"GradedMap({self.source} -> {self.target})"


def kernel_generators(m: GradedMap):
    """Minimal generators of ker(m) over the map's ambient ring.

    The kernel lives in the source free module; over R the computation
    adjoins q times each target basis element, projects the S-syzygies back
    to the source coordinates, and minimalizes over R.
    """
    field = m.source.field
    target_s = s_form(m.target)
    cols = [ModuleElement(target_s, m.column(j).terms)
            for j in range(m.source.rank)]
    vectors = list(cols)
    rep_twists = list(m.source.twists)
    lifts = r_lift_vectors(m.target)
    vectors += lifts
    rep_twists += [a + 2 for a in m.target.twists][: len(lifts)]
    if not vectors:
        return []
    syz = syzygy_generators(vectors, module=target_s, rep_twists=rep_twists)
    ncols = m.source.rank
    source_s = FreeModule(field, m.source.twists)
    projected = []
    for s in syz.syzygies:
        terms = {k: c for k, c in s.terms.items() if k[1] < ncols}
        if terms:
            projected.append(ModuleElement(source_s, terms))
    return minimal_vector_generators(projected, m.source)


def syzygy(m) -> GradedMap:
    """First syzygy map: free module on minimal kernel generators -> source.

    Accepts a graded map, or a plain generator set (a list of elements of
    one free module, syzygies taken over that module's ambient ring)."""
    if not isinstance(m, GradedMap):
        gens = list(m)
        if not gens:
            raise UserInputError("syzygies of an empty generator set")
        ambient = gens[0].module
        degs = []
        for g in gens:
            d = g.degree
            degs.append(0 if d is None else d)
        gen_mod = FreeModule(ambient.field, degs, ambient.ring)
        cols = [ModuleElement(ambient, g.terms) for g in gens]
        m = GradedMap.from_columns(gen_mod, ambient, cols)
    gens = kernel_generators(m)
    ring = m.source.ring
    field = m.source.field
    degs = [g.degree for g in gens]
    syz_source = FreeModule(field, degs, ring)
    target = m.source
    cols = [ModuleElement(target, g.terms) for g in gens]
    return GradedMap.from_columns(syz_source, target, cols)


def minimize(m: GradedMap) -> GradedMap:
    """Remove nonzero-constant entries by pivoting; drop zero columns.

    The cokernel is unchanged up to isomorphism; the result has no unit
    entries, so its target basis is a minimal generating set.
    """
    field = m.source.field
    entries = [list(row) for row in m.entries]
    ttw = list(m.target.twists)
    stw = list(m.source.twists)
    while True:
        pivot = None
        for i, row in enumerate(entries):
            for j, e in enumerate(row):
                if not e.is_zero() and e.is_constant():
                    pivot = (i, j, e.constant_value())
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j, c = pivot
        inv = field.inv(c)
        new_entries = []
        for k in range(len(entries)):
            if k == i:
                continue
            row = []
            for l in range(len(entries[0])):
                if l == j:
                    continue
                corr = entries[k][j] * entries[i][l]
                row.append(entries[k][l] - corr.scale(inv))
            new_entries.append(row)
        entries = new_entries
        del ttw[i]
        del stw[j]
    keep_cols = [j for j in range(len(stw))
                 if any(not entries[i][j].is_zero() for i in range(len(ttw)))]
    entries = [[row[j] for j in keep_cols] for row in entries]
    stw = [stw[j] for j in keep_cols]
    ring = m.source.ring
    return GradedMap(FreeModule(field, stw, ring),
                     FreeModule(field, ttw, ring), entries)


class GradedModule:
    """Finitely generated graded module over S or R.

    Either a cokernel of a graded map, or a submodule of a free module given
    by generators.  Minimal presentations (over the ambient ring) and
    S-presentations (scalars restricted to S) are computed on demand and
    cached.
    """

    def __init__(self, kind, pres=None, ambient=None, gens=None):
        self.kind = kind
        self.pres = pres
        self.ambient = ambient
        self.gens = list(gens) if gens is not None else None
        self._min_pres = None
        self._s_pres = None
        self._s_res = None

    # ---- constructors

    @classmethod
    def presented(cls, pres: GradedMap) -> "GradedModule":
        return cls("cokernel", pres=pres)

    @classmethod
    def submodule(cls, ambient: FreeModule, gens) -> "GradedModule":
        gens = [g for g in gens if not g.is_zero()]
        for g in gens:
            if not g.is_homogeneous():
                raise UserInputError("submodule generators must be homogeneous")
        return cls("submodule", ambient=ambient, gens=gens)

    @classmethod
    def free(cls, module: FreeModule) -> "GradedModule":
        empty = GradedMap(FreeModule(module.field, (), module.ring), module,
                          [[] for _ in range(module.rank)])
        return cls.presented(empty)

    @classmethod
    def from_ideal(cls, ideal: Ideal) -> "GradedModule":
        """The ideal as a submodule of the rank-1 free module."""
        one = FreeModule(ideal.field, (0,), ideal.ring)
        return cls.submodule(one, [one.element([g]) for g in ideal.gens])

    @classmethod
    def quotient_by_ideal(cls, ideal: Ideal) -> "GradedModule":
        """R/I (or S/I) as a cokernel."""
        one = FreeModule(ideal.field, (0,), ideal.ring)
        gens = ideal.minimal_generators()
        src = FreeModule(ideal.field, [g.homogeneous_degree() for g in gens],
                         ideal.ring)
        return cls.presented(GradedMap(src, one, [list(gens)]))

    # ---- structure

    @property
    def ring(self) -> Ambient:
        base = self.pres.target if self.kind == "cokernel" else self.ambient
        return base.ring

    @property
    def field(self):
        base = self.pres.target if self.kind == "cokernel" else self.ambient
        return base.field

    def minimal_presentation(self) -> GradedMap:
        if self._min_pres is not None:
            return self._min_pres
        if self.kind == "submodule":
            kept = minimal_vector_generators(self.gens, self.ambient)
            ring = self.ambient.ring
            field = self.ambient.field
            gen_mod = FreeModule(field, [g.degree for g in kept], ring)
            amb_ring = FreeModule(field, self.ambient.twists, ring)
            cols = [ModuleElement(amb_ring, g.terms) for g in kept]
            alpha = GradedMap.from_columns(gen_mod, amb_ring, cols)
            rel = kernel_generators(alpha)
            rel_mod = FreeModule(field, [v.degree for v in rel], ring)
            cols2 = [ModuleElement(gen_mod, v.terms) for v in rel]
            self._min_pres = GradedMap.from_columns(rel_mod, gen_mod, cols2)
        else:
            m = minimize(self.pres)
            rel = minimal_vector_generators(m.columns(), m.target)
            ring = m.target.ring
            field = m.target.field
            rel_mod = FreeModule(field, [v.degree for v in rel], ring)
            cols = [ModuleElement(m.target, v.terms) for v in rel]
            self._min_pres = GradedMap.from_columns(rel_mod, m.target, cols)
        return self._min_pres

    def s_presentation(self) -> GradedMap:
        """Minimal presentation of the module with scalars restricted to S."""
        if self._s_pres is not None:
            return self._s_pres
        mp = self.minimal_presentation()
        if self.ring is None:
            self._s_pres = mp
            return mp
        # S-relations of the minimal generators: the R-relations plus q*e_i
        target_s = s_form(mp.target)
        cols = [ModuleElement(target_s, mp.column(j).terms)
                for j in range(mp.source.rank)]
        cols += r_lift_vectors(mp.target)
        rel = minimal_vector_generators(cols, target_s)
        field = target_s.field
        rel_mod = FreeModule(field, [v.degree for v in rel])
        cols2 = [ModuleElement(target_s, v.terms) for v in rel]
        self._s_pres = GradedMap.from_columns(rel_mod, target_s, cols2)
        return self._s_pres

    def generator_degrees(self):
        return self.minimal_presentation().target.twists

    def relation_degrees(self):
        return self.minimal_presentation().source.twists

    def is_zero(self) -> bool:
        return self.minimal_presentation().target.rank == 0

    def twist(self, t: int) -> "GradedModule":
        """M(t), with M(t)_n = M_{n+t}."""
        if self.kind == "submodule":
            amb = self.ambient.shift(t)
            return GradedModule.submodule(
                amb, [ModuleElement(amb, g.terms) for g in self.gens]
            )
        return GradedModule.presented(self.pres.shift(t))

    def __repr__(self):
        return f"GradedModule({self.kind}, gens deg {list(self.generator_degrees())})"


def direct_sum(*summands: GradedModule) -> GradedModule:
    """Direct sum via block-diagonal minimal presentations."""
    if not summands:
        raise UserInputError("direct sum of nothing")
    ring = summands[0].ring
    field = summands[0].field
    for m in summands:
        if m.ring != ring or m.field != field:
            raise UserInputError("direct sum across different ambient rings")
    parts = [m.minimal_presentation() for m in summands]
    ttw = [a for p in parts for a in p.target.twists]
    stw = [a for p in parts for a in p.source.twists]
    zero = Polynomial.zero(field)
    entries = [[zero] * len(stw) for _ in range(len(ttw))]
    i0 = j0 = 0
    for p in parts:
        for i in range(p.target.rank):
            for j in range(p.source.rank):
                entries[i0 + i][j0 + j] = p.entries[i][j]
        i0 += p.target.rank
        j0 += p.source.rank
    return GradedModule.presented(
        GradedMap(FreeModule(field, stw, ring), FreeModule(field, ttw, ring),
                  entries)
    )


class Resolution:
    """Chain of graded maps ... -> F2 -> F1 -> F0 with zero compositions."""

    def __init__(self, maps, minimal: bool = True):
        self.maps = list(maps)
        self.minimal = minimal
        for a, b in zip(self.maps, self.maps[1:]):
            if not a.compose(b).is_zero():
                raise EngineError("resolution maps do not compose to zero")

    @property
    def length(self) -> int:
        """Projective dimension of the resolved module (minimal resolution)."""
        return sum(1 for m in self.maps if m.source.rank > 0)

    def betti_degrees(self):
        """Generator degrees at each step: [F0 twists, F1 twists, ...]."""
        if not self.maps:
            return []
        out = [tuple(self.maps[0].target.twists)]
        for m in self.maps:
            if m.source.rank > 0:
                out.append(tuple(m.source.twists))
        return out

    def betti_table(self):
        """step -> {degree: count}."""
        table = {}
        for step, degs in enumerate(self.betti_degrees()):
            counts = {}
            for d in degs:
                counts[d] = counts.get(d, 0) + 1
            table[step] = dict(sorted(counts.items()))
        return table

    def __repr__(self):
        ranks = " <- ".join(str(len(d)) for d in self.betti_degrees())
        return f"Resolution({ranks}; pd={self.length})"


def minimal_resolution_s(module: GradedModule, max_steps: int = 6) -> Resolution:
    """Minimal graded free resolution over S (finite: S is regular of dim 5)."""
    first = module.s_presentation()
    maps = [first]
    while len(maps) < max_steps:
        last = maps[-1]
        if last.source.rank == 0:
            break
        nxt = syzygy(last)
        if nxt.source.rank == 0:
            break
        maps.append(nxt)
    if maps[-1].source.rank > 0 and len(maps) >= max_steps:
        nxt = syzygy(maps[-1])
        if nxt.source.rank > 0:
            raise EngineError("resolution did not terminate within max_steps")
    return Resolution(maps)


def pd_s(module: GradedModule) -> int:
    """Projective dimension over S."""
    return minimal_resolution_s(module).length


class EtypeResolution:
    """0 -> E -> L -> I_C -> 0 with L free on the minimal generators of I_C."""

    __slots__ = ("ideal", "kernel", "middle", "alpha")

    def __init__(self, ideal: Ideal, kernel: GradedModule, middle: FreeModule,
                 alpha: GradedMap):
        self.ideal = ideal
        self.kernel = kernel
        self.middle = middle
        self.alpha = alpha

    @property
    def middle_twists(self):
        return self.middle.twists


def etype_resolution(ideal: Ideal, window=PROBE_WINDOW) -> EtypeResolution:
    """E-type resolution of a saturated curve ideal over R.

    Checks: ambient is R; the ideal is saturated; R/I has a linear Hilbert
    polynomial (a one-dimensional subscheme).  Equidimensionality and the
    locally-CM condition are not verified (that would need primary
    decomposition); the graded consequences are checked instead, and the
    degreewise exactness of the resulting sequence is asserted over the
    probe window.
    """
    from .hilbert import degree_genus, hilbert_function  # cycle-free at runtime

    if ideal.ring is None:
        raise UserInputError("E-type resolutions are defined for ideals over R")
    if not saturate_irrelevant(ideal).equals(ideal):
        raise UserInputError(
            "ideal is not saturated; saturate it first so that the ideal "
            "equals the full module of sections of its sheaf"
        )
    degree_genus(ideal)  # raises unless the Hilbert polynomial is linear
    gens = ideal.minimal_generators()
    field = ideal.field
    middle = FreeModule(field, [g.homogeneous_degree() for g in gens], ideal.ring)
    rank_one = FreeModule(field, (0,), ideal.ring)
    alpha = GradedMap(middle, rank_one, [list(gens)])
    kernel = GradedModule.submodule(middle, kernel_generators(alpha))
    lo, hi = window
    hf_kernel = hilbert_function(kernel, window).values
    hf_ideal = hilbert_function(GradedModule.from_ideal(ideal), window).values
    for n in range(lo, hi + 1):
        if middle.dim(n) - hf_kernel[n] != hf_ideal[n]:
            raise EngineError(
                f"E-type sequence fails section-level exactness in degree {n}"
            )
    return EtypeResolution(ideal, kernel, middle, alpha)
