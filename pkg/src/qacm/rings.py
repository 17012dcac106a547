"""The ambient rings: S = GF(p)[x0..x4] and the quadric quotient R = S/(q)."""

from __future__ import annotations

from .errors import UserInputError
from .linalg import rank_mod_p
from .poly import DEFAULT_FIELD, NVARS, Polynomial, PrimeField, parse_polynomial


class QuadricRing:
    """R = S/(q) for a nondegenerate quadratic form q.

    Degenerate quadrics (Gram rank < 5) are rejected at construction: the
    MCM classification used downstream needs the quadric cone to have an
    isolated singularity.
    """

    __slots__ = ("field", "quadric")

    def __init__(self, quadric: Polynomial):
        self.field = quadric.field
        if quadric.is_zero() or quadric.homogeneous_degree() != 2:
            raise UserInputError("quadric must be homogeneous of degree 2")
        if gram_rank(quadric) < NVARS:
            raise UserInputError(
                "quadric is degenerate (Gram rank < 5); only nonsingular "
                "quadric hypersurfaces are supported"
            )
        self.quadric = quadric

    def __eq__(self, other):
        return isinstance(other, QuadricRing) and self.quadric == other.quadric

    def __hash__(self):
        return hash(("QuadricRing", self.quadric))

    def __repr__(self):
        return f"QuadricRing({self.quadric})"


# ambient tag: None means the polynomial ring S, a QuadricRing means R
Ambient = QuadricRing | None


def gram_rank(q: Polynomial) -> int:
    """Rank of the symmetric Gram matrix of a quadratic form (char != 2).

    Uses 2*B with B the polarization, which has the same rank since 2 is a
    unit.
    """
    p = q.field.p
    g = [[0] * NVARS for _ in range(NVARS)]
    for mono, c in q.terms.items():
        support = [i for i, e in enumerate(mono) if e]
        if len(support) == 1:
            i = support[0]
            g[i][i] = (2 * c) % p
        else:
            i, j = support
            g[i][j] = c % p
            g[j][i] = c % p
    return rank_mod_p(g, p)


def canonical_quadric(field: PrimeField = DEFAULT_FIELD) -> Polynomial:
    return parse_polynomial("x0*x1 + x2*x3 + x4^2", field)


def canonical_ring(field: PrimeField = DEFAULT_FIELD) -> QuadricRing:
    return QuadricRing(canonical_quadric(field))
