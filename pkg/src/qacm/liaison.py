"""CI-liaison of curves on the quadric: links, parity, and the stable
fingerprint that classifies even liaison classes of ACM curves.

A link by a complete intersection (f, g) on Q containing the curve is the
ideal quotient ((f, g) + (q)) : I_C computed in S and then saturated.  The
fingerprint of an ACM curve is the multiset of spinor twists of its E-type
kernel, normalized modulo uniform shift with free summands dropped; two ACM
curves lie in the same even CI-liaison class exactly when the fingerprints
agree.
"""

from __future__ import annotations

from .errors import EngineError, UserInputError
from .groebner import Ideal, ideal_quotient, saturate_irrelevant
from .hilbert import acm_curve_check, degree_genus, hilbert_function, \
    hilbert_polynomial
from .mcm import DecompositionReport, decompose_acm
from .resolutions import GradedModule, etype_resolution


class LinkResult:
    __slots__ = ("linked_ideal", "ci_degrees", "degree_left", "degree_right")

    def __init__(self, linked_ideal: Ideal, ci_degrees, degree_left, degree_right):
        self.linked_ideal = linked_ideal
        self.ci_degrees = ci_degrees
        self.degree_left = degree_left    # deg C + deg C'
        self.degree_right = degree_right  # 2 * deg f * deg g

    @property
    def degrees_add_up(self) -> bool:
        return self.degree_left == self.degree_right


def _regular_sequence_on_r(f, g, ring, field):
    """(f, g) cut out a curve on Q iff S/(f, g, q) has a linear Hilbert
    polynomial (codimension 3 in S)."""
    s_ideal = Ideal([f, g, ring.quadric], ring=None, field=field)
    quotient = GradedModule.quotient_by_ideal(s_ideal)
    poly = hilbert_polynomial(hilbert_function(quotient))
    return poly.degree == 1


def ci_link(ideal: Ideal, f, g) -> LinkResult:
    """Link the curve by the complete intersection (f, g) on Q."""
    if ideal.ring is None:
        raise UserInputError("CI links are for curves on Q (ideals over R)")
    for h, name in ((f, "f"), (g, "g")):
        if h.is_zero() or not h.is_homogeneous():
            raise UserInputError(f"{name} must be homogeneous and nonzero")
        if not ideal.contains(h):
            raise UserInputError(f"{name} does not lie in the curve's ideal")
    if not _regular_sequence_on_r(f, g, ideal.ring, ideal.field):
        raise UserInputError(
            "(f, g) is not a regular sequence on R; the link is degenerate"
        )
    ci = Ideal([f, g], ring=ideal.ring, field=ideal.field)
    linked = saturate_irrelevant(ideal_quotient(ci, ideal))
    deg_c, _ = degree_genus(ideal)
    deg_c2, _ = degree_genus(linked)
    df = f.homogeneous_degree()
    dg = g.homogeneous_degree()
    result = LinkResult(linked, (df, dg), deg_c + deg_c2, 2 * df * dg)
    if not result.degrees_add_up:
        raise EngineError(
            f"degree additivity fails: {deg_c} + {deg_c2} != 2*{df}*{dg}"
        )
    return result


def parity_invariant(ideal: Ideal) -> str:
    """Degree parity; constant on CI-liaison classes."""
    degree, _ = degree_genus(ideal)
    return "odd" if degree % 2 else "even"


class LiaisonFingerprint:
    """Spinor twists of the E-type kernel, free part dropped, shifted so the
    smallest twist is 0.  Empty = the class of complete intersections."""

    __slots__ = ("e0_shifts", "report")

    def __init__(self, e0_shifts, report: DecompositionReport):
        self.e0_shifts = tuple(e0_shifts)
        self.report = report

    @property
    def is_ci_class(self) -> bool:
        return not self.e0_shifts

    def __eq__(self, other):
        return (isinstance(other, LiaisonFingerprint)
                and self.e0_shifts == other.e0_shifts)

    def __hash__(self):
        return hash(self.e0_shifts)

    def __repr__(self):
        if self.is_ci_class:
            return "LiaisonFingerprint(CI class)"
        return f"LiaisonFingerprint(E0 shifts {list(self.e0_shifts)})"


def fingerprint(ideal: Ideal) -> LiaisonFingerprint:
    """Even-liaison-class fingerprint of an ACM curve."""
    cert = acm_curve_check(ideal)
    if not cert.acm:
        raise UserInputError(
            "fingerprints are defined for ACM curves only (the input fails "
            f"the ACM check: saturated={cert.saturated}, pd={cert.pd})"
        )
    kernel = etype_resolution(ideal).kernel
    report = decompose_acm(kernel)
    if not report.matched:
        raise EngineError(f"E-type kernel failed to decompose: {report.detail}")
    if not report.e0_twists:
        return LiaisonFingerprint((), report)
    base = min(report.e0_twists)
    return LiaisonFingerprint(
        tuple(sorted(a - base for a in report.e0_twists)), report
    )


def same_even_class(ideal_a: Ideal, ideal_b: Ideal) -> bool:
    """Same even CI-liaison class, via fingerprint equality (complete by the
    classification of ACM sheaves on Q)."""
    return fingerprint(ideal_a) == fingerprint(ideal_b)
