"""Independent degreewise linear-algebra oracle for the test suite.

The engine counts dimensions under lead-term staircases of Groebner bases;
this oracle never looks at a Groebner basis.  It builds the degree-n pieces
of free modules as explicit monomial-indexed vector spaces over GF(p) and
answers every dimension question with a matrix rank (its own elimination,
not the engine's).
"""

from __future__ import annotations

import numpy as np

from qacm.modules import FreeModule
from qacm.poly import monomials_of_degree


def rank_gf(rows, p: int) -> int:
    """Rank over GF(p): insert rows one by one into a reduced echelon basis.

    Each insertion is a single mod-p matrix-vector reduction against the
    basis (kept in reduced form, so one pass clears every pivot column);
    entries stay below len(basis) * p^2 < 2^63 before the final reduction.
    """
    if not len(rows):
        return 0
    ncols = len(rows[0])
    cap = min(len(rows), ncols)
    basis = np.zeros((cap, ncols), dtype=np.int64)
    pivots: list[int] = []
    for row in rows:
        r = np.asarray(row, dtype=np.int64) % p
        if pivots:
            coeffs = r[pivots]
            if coeffs.any():
                r = (r - coeffs @ basis[: len(pivots)]) % p
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            continue
        c = int(nz[0])
        r = (r * pow(int(r[c]), p - 2, p)) % p
        if pivots:
            col = basis[: len(pivots), c].copy()
            if col.any():
                basis[: len(pivots)] = (basis[: len(pivots)]
                                        - np.outer(col, r)) % p
        basis[len(pivots)] = r
        pivots.append(c)
    return len(pivots)


def nullity_gf(rows, p: int) -> int:
    if not len(rows):
        return 0
    return len(rows[0]) - rank_gf(transpose(rows), p)


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def basis_of_degree(module: FreeModule, n: int):
    """Monomial basis of the degree-n piece of ⊕ S(-a_i), sorted."""
    out = []
    for pos, a in enumerate(module.twists):
        d = n - a
        if d < 0:
            continue
        for mono in monomials_of_degree(d):
            out.append((mono, pos))
    out.sort()
    return out


def vector_row(vec_terms, index: dict, p: int):
    row = [0] * len(index)
    for key, c in vec_terms.items():
        row[index[key]] = c % p
    return row


def _product_rows(vectors, module_s: FreeModule, n: int, p: int):
    """Rows spanning the degree-n piece of the S-span of the vectors."""
    index = {k: i for i, k in enumerate(basis_of_degree(module_s, n))}
    rows = []
    for v in vectors:
        d = v.degree
        if d is None or d > n:
            continue
        for mono in monomials_of_degree(n - d):
            shifted = v.mul_term(mono, 1)
            rows.append(vector_row(shifted.terms, index, p))
    return rows, index


def span_dim_oracle(vectors, module_s: FreeModule, n: int) -> int:
    p = module_s.field.p
    rows, _ = _product_rows(vectors, module_s, n, p)
    return rank_gf(rows, p)


def q_lift_vectors(module: FreeModule):
    """q * e_i for an R-free module, built without the engine's helper."""
    if module.ring is None:
        return []
    q = module.ring.quadric
    flat = FreeModule(module.field, module.twists)
    out = []
    for i in range(module.rank):
        out.append(flat.basis_element(i).mul_poly(q))
    return out


def module_dim_oracle(module, n: int) -> int:
    """Degree-n dimension of a GradedModule, all ranks, no staircases."""
    from qacm.groebner import s_form
    from qacm.modules import ModuleElement

    if module.kind == "submodule":
        ambient = module.ambient
        amb_s = s_form(ambient)
        p = amb_s.field.p
        lifts = q_lift_vectors(ambient)
        gens = [ModuleElement(amb_s, g.terms) for g in module.gens]
        full = span_dim_oracle(gens + lifts, amb_s, n)
        trivial = span_dim_oracle(lifts, amb_s, n) if lifts else 0
        return full - trivial
    pres = module.pres
    ambient = pres.target
    amb_s = s_form(ambient)
    cols = [ModuleElement(amb_s, pres.column(j).terms)
            for j in range(pres.source.rank)]
    lifts = q_lift_vectors(ambient)
    total = len(basis_of_degree(amb_s, n))
    return total - span_dim_oracle(cols + lifts, amb_s, n)


def map_rank_oracle(gmap, n: int) -> int:
    """Rank of the degree-n piece of a graded map (over S)."""
    from qacm.groebner import s_form

    src = s_form(gmap.source)
    tgt = s_form(gmap.target)
    p = src.field.p
    tgt_index = {k: i for i, k in enumerate(basis_of_degree(tgt, n))}
    rows = []
    for mono, pos in basis_of_degree(src, n):
        image = gmap.column(pos).mul_term(mono, 1)
        rows.append(vector_row(image.terms, tgt_index, p))
    return rank_gf(rows, p)


def resolution_exact_oracle(res, window) -> bool:
    """Rank-nullity exactness of consecutive maps in an S-resolution."""
    from qacm.groebner import s_form

    lo, hi = window
    for a, b in zip(res.maps, res.maps[1:]):
        middle = s_form(a.source)
        for n in range(lo, hi + 1):
            dim_mid = len(basis_of_degree(middle, n))
            if dim_mid == 0:
                continue
            if map_rank_oracle(a, n) + map_rank_oracle(b, n) != dim_mid:
                return False
    return True
