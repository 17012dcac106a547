"""The rank-2 spinor module E0 on the quadric threefold, its matrix
factorization and 2-periodic resolution tail, first Chern class and duality,
and the decomposition of MCM modules into twists of E0 plus free summands.

Twist conventions (used everywhere): M(t)_n = M_{n+t}.  Decomposition
reports list free summands R(-b) by b and spinor summands E0(-a) by a, so
decompose(E0(t)) reports e0_twists {-t}.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import EngineError, UserInputError
from .groebner import Ideal, lift_through
from .hilbert import (
    hilbert_function,
    hilbert_polynomial,
    mcm_check,
)
from .linalg import rank_mod_p
from .modules import FreeModule, ModuleElement, dim_r, dim_s
from .poly import DEFAULT_FIELD, NVARS, Polynomial
from .resolutions import (
    GradedMap,
    GradedModule,
    EtypeResolution,
    PROBE_WINDOW,
    etype_resolution,
    syzygy,
)
from .rings import QuadricRing, canonical_ring


def canonical_line_ideal(ring: QuadricRing) -> Ideal:
    field = ring.field
    v = lambda i: Polynomial.variable(field, i)
    return Ideal([v(0), v(2), v(4)], ring=ring)


def _check_line_on_quadric(line: Ideal, ring: QuadricRing):
    gens = line.minimal_generators()
    if len(gens) != 3 or any(g.homogeneous_degree() != 1 for g in gens):
        raise UserInputError("the line ideal must be generated by 3 linear forms")
    rows = []
    for g in gens:
        row = [0] * NVARS
        for mono, c in g.terms.items():
            row[list(mono).index(1)] = c
        rows.append(row)
    if rank_mod_p(rows, ring.field.p) != 3:
        raise UserInputError("the three linear forms are not independent")
    if not Ideal(gens, ring=None, field=line.field).contains(ring.quadric):
        raise UserInputError("the given line does not lie on the quadric")


def construct_e0(ring: QuadricRing | None = None,
                 line: Ideal | None = None) -> GradedModule:
    """E0: the syzygy module of a line's ideal inside R(-1)^3.

    The unique nonfree indecomposable MCM module over R; 4 minimal
    generators in degree 2, rank 2.  The E-type context is attached to the
    returned module for downstream Chern-class computations.
    """
    if ring is None:
        ring = canonical_ring(DEFAULT_FIELD)
    if line is None:
        line = canonical_line_ideal(ring)
    if line.ring != ring:
        line = Ideal(line.gens, ring=ring, field=line.field)
    _check_line_on_quadric(line, ring)
    context = etype_resolution(line)
    module = context.kernel
    module._etype_context = context
    return module


@lru_cache(maxsize=4)
def _canonical_e0_cached(p: int) -> GradedModule:
    from .poly import PrimeField

    return construct_e0(canonical_ring(PrimeField(p)))


def canonical_e0(field=DEFAULT_FIELD) -> GradedModule:
    return _canonical_e0_cached(field.p)


def hf_e0(n: int) -> int:
    """Hilbert function of E0: 4*dim S_{n-2} - 4*dim S_{n-3} (exact for all n,
    from the length-1 S-resolution)."""
    return 4 * (dim_s(n - 2) - dim_s(n - 3))


# ------------------------------------------------------ matrix factorization


class MatrixFactorization:
    """Pair (A, B) of square graded matrices over S with A*B = B*A = q*Id.

    B is indexed so that composing A after B shifts degrees by 2 (the degree
    of q).  A free module has no matrix factorization tail; it is encoded as
    the empty factorization with is_free set.
    """

    __slots__ = ("a", "b", "quadric", "is_free")

    def __init__(self, a: GradedMap, b: GradedMap, quadric: Polynomial,
                 is_free: bool = False):
        self.a = a
        self.b = b
        self.quadric = quadric
        self.is_free = is_free
        if not is_free:
            self._verify()

    @property
    def size(self) -> int:
        return self.a.target.rank

    def _verify(self):
        a, b, q = self.a, self.b, self.quadric
        if a.source.rank != a.target.rank or b.source.rank != b.target.rank:
            raise EngineError("matrix factorization blocks are not square")
        ab = a.compose(b)
        ba = b.compose(a.shift(-2))
        for m, name in ((ab, "A*B"), (ba, "B*A")):
            for i in range(m.target.rank):
                for j in range(m.source.rank):
                    want = q if i == j else Polynomial.zero(q.field)
                    if m.entries[i][j] != want:
                        raise EngineError(
                            f"{name} is not q*Id at entry ({i},{j})"
                        )

    def to_dict(self):
        def map_dict(g: GradedMap):
            return {
                "source_twists": list(g.source.twists),
                "target_twists": list(g.target.twists),
                "entries": [[str(e) for e in row] for row in g.entries],
            }

        if self.is_free:
            return {"free": True, "quadric": str(self.quadric)}
        return {
            "free": False,
            "quadric": str(self.quadric),
            "a": map_dict(self.a),
            "b": map_dict(self.b),
        }


def extract_mf(module: GradedModule) -> MatrixFactorization:
    """Matrix factorization behind the 2-periodic resolution tail of an MCM
    module.  The presentation matrix is lifted to S and its partner solved
    exactly, column by column, so that A*B = q*Id holds on the nose."""
    ring = module.ring
    if ring is None:
        raise UserInputError("matrix factorizations live over R")
    cert = mcm_check(module)
    if not cert.mcm:
        raise UserInputError(
            f"module is not MCM (pd_S = {cert.pd}, Hilbert degree = "
            f"{cert.hp_degree}); no periodic tail"
        )
    q = ring.quadric
    field = module.field
    mp = module.minimal_presentation()
    # generators appearing in no relation split off as free summands
    zero_rows = [i for i in range(mp.target.rank)
                 if all(e.is_zero() for e in mp.entries[i])]
    if mp.source.rank == 0 or len(zero_rows) == mp.target.rank:
        empty = FreeModule(field, ())
        none = GradedMap(empty, empty, [])
        return MatrixFactorization(none, none, q, is_free=True)
    if zero_rows:
        keep = [i for i in range(mp.target.rank) if i not in zero_rows]
        target = FreeModule(field, [mp.target.twists[i] for i in keep])
        entries = [[mp.entries[i][j] for j in range(mp.source.rank)]
                   for i in keep]
        a = GradedMap(FreeModule(field, mp.source.twists), target, entries)
    else:
        a = GradedMap(FreeModule(field, mp.source.twists),
                      FreeModule(field, mp.target.twists), mp.entries)
    if a.source.rank != a.target.rank:
        raise EngineError(
            "minimal presentation of the stable part is not square; "
            "the resolution tail cannot be 2-periodic"
        )
    cols = a.columns()
    b_cols = []
    for j in range(a.target.rank):
        target_vec = a.target.basis_element(j).mul_poly(q)
        coeffs = lift_through(cols, target_vec, module=a.target)
        if coeffs is None:
            raise EngineError(
                "q*Id does not lift through the presentation matrix; "
                "the module is not the cokernel of a matrix factorization"
            )
        b_cols.append(coeffs)
    b_source = FreeModule(field, [t + 2 for t in a.target.twists])
    b_entries = [[b_cols[j][k] for j in range(len(b_cols))]
                 for k in range(a.source.rank)]
    b = GradedMap(b_source, a.source, b_entries)
    return MatrixFactorization(a, b, q)


def verify_periodicity(module: GradedModule, window=(0, 8)) -> bool:
    """syz^1_R matches M(-1) and syz^2_R matches M(-2) on Hilbert functions
    and graded betti numbers (trivially true for free modules)."""
    if module.ring is None:
        raise UserInputError("periodicity is about modules over R")
    cert = mcm_check(module)
    if not cert.mcm:
        raise UserInputError("module is not MCM; the tail need not be periodic")
    mp = module.minimal_presentation()
    if mp.source.rank == 0:
        return True
    ring_target = FreeModule(module.field, mp.target.twists, module.ring)
    syz1 = GradedModule.submodule(
        ring_target,
        [ModuleElement(ring_target, mp.column(j).terms)
         for j in range(mp.source.rank)],
    )
    beta = syzygy(mp)
    ring_mid = FreeModule(module.field, mp.source.twists, module.ring)
    syz2 = GradedModule.submodule(
        ring_mid,
        [ModuleElement(ring_mid, beta.column(j).terms)
         for j in range(beta.source.rank)],
    )
    for shift, candidate in ((-1, syz1), (-2, syz2)):
        reference = module.twist(shift)
        if hilbert_function(candidate, window).values != \
                hilbert_function(reference, window).values:
            return False
        cp = candidate.minimal_presentation()
        rp = reference.minimal_presentation()
        if sorted(cp.target.twists) != sorted(rp.target.twists):
            return False
        if sorted(cp.source.twists) != sorted(rp.source.twists):
            return False
    return True


# --------------------------------------------------------- chern and duality


def rank_over_r(module: GradedModule) -> int:
    """Rank from the leading Hilbert coefficient (P_R has leading 1/3)."""
    poly = hilbert_polynomial(hilbert_function(module, PROBE_WINDOW))
    if poly.degree != 3:
        raise UserInputError("module is not of full dimension; rank undefined")
    r = poly.leading_coefficient * 3
    if r.denominator != 1:
        raise EngineError("non-integral rank")
    return int(r)


def chern1_and_dual(module: GradedModule,
                    context: EtypeResolution | None = None):
    """(c1, dual twist) for a rank-2 module arising in an E-type resolution.

    c1 = sum of the middle twists negated (the curve's ideal sheaf has
    c1 = 0 in codimension 2), shifted by rank * t when the module is a
    twist by t of the context kernel; for rank 2, the dual is M(-c1).
    """
    if context is None:
        context = getattr(module, "_etype_context", None)
    if context is None:
        raise UserInputError("no E-type resolution context supplied")
    rank = rank_over_r(module)
    if rank != 2:
        raise UserInputError(f"Chern-class duality needs rank 2, got rank {rank}")
    base_degrees = context.kernel.generator_degrees()
    mod_degrees = module.generator_degrees()
    t = base_degrees[0] - mod_degrees[0]
    if hilbert_function(module, PROBE_WINDOW).values != \
            hilbert_function(context.kernel.twist(t), PROBE_WINDOW).values:
        raise UserInputError(
            "module is not a twist of the supplied E-type kernel"
        )
    c1 = -sum(context.middle_twists) + rank * t
    return c1, -c1


# ------------------------------------------------------------- decomposition


class DecompositionReport:
    """Multisets of twists: free part R(-b_j), spinor part E0(-a_i)."""

    __slots__ = ("free_twists", "e0_twists", "residual", "detail")

    def __init__(self, free_twists, e0_twists, residual=None, detail=""):
        self.free_twists = sorted(free_twists)
        self.e0_twists = sorted(e0_twists)
        self.residual = residual
        self.detail = detail

    @property
    def matched(self) -> bool:
        return self.residual is None

    def __repr__(self):
        if self.matched:
            return (f"DecompositionReport(free={self.free_twists}, "
                    f"e0={self.e0_twists})")
        return f"DecompositionReport(unmatched: {self.detail})"


def decompose_acm(module: GradedModule) -> DecompositionReport:
    """Split an MCM module into twists of E0 plus free summands.

    Graded betti numbers of the minimal presentation determine the only
    decomposition the classification allows: each E0(-a) accounts for 4
    relations in degree 3+a and 4 generators in degree 2+a; generators left
    over are free summands.  The candidate is then verified against the
    Hilbert function on the probe window.  A mismatch returns the stable
    part as a non-empty residual (for genuinely MCM inputs over a
    nonsingular quadric this signals an engine or input bug, not a
    mathematical possibility)."""
    if module.ring is None:
        raise UserInputError("decomposition is for modules over R")
    cert = mcm_check(module)
    if not cert.mcm:
        raise UserInputError("module is not MCM; decomposition undefined")
    mp = module.minimal_presentation()
    gen_degrees = list(mp.target.twists)
    rel_degrees = list(mp.source.twists)
    rel_counts = {}
    for d in rel_degrees:
        rel_counts[d] = rel_counts.get(d, 0) + 1
    e0_twists = []
    for d, c in sorted(rel_counts.items()):
        if c % 4 != 0:
            return DecompositionReport(
                [], [], residual=module,
                detail=f"{c} relations in degree {d}: not a multiple of 4",
            )
        e0_twists += [d - 3] * (c // 4)
    remaining = list(gen_degrees)
    for a in e0_twists:
        for _ in range(4):
            want = 2 + a
            if want not in remaining:
                return DecompositionReport(
                    [], [], residual=module,
                    detail=f"missing a generator in degree {want} for an "
                           f"E0({-a}) block",
                )
            remaining.remove(want)
    free_twists = remaining
    lo, hi = PROBE_WINDOW
    hf = hilbert_function(module, PROBE_WINDOW).values
    for n in range(lo, hi + 1):
        expected = sum(hf_e0(n - a) for a in e0_twists) + \
            sum(dim_r(n - b) for b in free_twists)
        if expected != hf[n]:
            return DecompositionReport(
                [], [], residual=module,
                detail=f"Hilbert mismatch in degree {n}: candidate gives "
                       f"{expected}, module has {hf[n]}",
            )
    return DecompositionReport(free_twists, e0_twists)
