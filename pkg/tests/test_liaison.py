import pytest

from qacm.errors import UserInputError
from qacm.groebner import Ideal, saturate_irrelevant
from qacm.liaison import (
    LiaisonFingerprint,
    ci_link,
    fingerprint,
    parity_invariant,
    same_even_class,
)
from qacm.poly import DEFAULT_FIELD

F = DEFAULT_FIELD


# ------------------------------------------------------------------- links


def test_link_line_to_the_other_ruling(line, other_line, x):
    result = ci_link(line, x[0], x[4])
    assert result.linked_ideal.equals(other_line)
    assert result.ci_degrees == (1, 1)
    assert result.degree_left == 2 and result.degree_right == 2
    assert result.degrees_add_up


def test_link_is_an_involution(line, x):
    once = ci_link(line, x[0], x[4])
    twice = ci_link(once.linked_ideal, x[0], x[4])
    assert twice.linked_ideal.equals(saturate_irrelevant(line))


def test_link_through_a_different_ci(line, x):
    # V(x2, x0+x4) meets Q in the line plus another line
    result = ci_link(line, x[2], x[0] + x[4])
    assert result.degrees_add_up
    back = ci_link(result.linked_ideal, x[2], x[0] + x[4])
    assert back.linked_ideal.equals(line)
    assert same_even_class(line, result.linked_ideal)


def test_link_rejects_degenerate_ci(line, x):
    with pytest.raises(UserInputError, match="regular sequence"):
        ci_link(line, x[0], x[0])


def test_link_rejects_f_outside_the_ideal(line, x):
    with pytest.raises(UserInputError, match="does not lie"):
        ci_link(line, x[1], x[4])


def test_link_requires_r_ambient(x):
    s_line = Ideal([x[0], x[2], x[4]], ring=None)
    with pytest.raises(UserInputError, match="over R"):
        ci_link(s_line, x[0], x[4])


# ------------------------------------------------------------------ parity


def test_parity_values(line, ci_curve, skew_lines):
    assert parity_invariant(line) == "odd"
    assert parity_invariant(ci_curve) == "even"
    assert parity_invariant(skew_lines) == "even"


def test_parity_preserved_by_links(line, x):
    linked = ci_link(line, x[0], x[4]).linked_ideal
    assert parity_invariant(linked) == parity_invariant(line)


# ------------------------------------------------------------- fingerprints


def test_fingerprint_of_line(line):
    fp = fingerprint(line)
    assert not fp.is_ci_class
    assert fp.e0_shifts == (0,)


def test_fingerprint_of_ci_curve(ci_curve):
    fp = fingerprint(ci_curve)
    assert fp.is_ci_class
    assert fp.e0_shifts == ()


def test_fingerprint_of_linked_line(line, other_line):
    assert fingerprint(other_line) == fingerprint(line)


def test_fingerprint_requires_acm(skew_lines):
    with pytest.raises(UserInputError, match="ACM"):
        fingerprint(skew_lines)


def test_fingerprint_equality_semantics():
    a = LiaisonFingerprint((0, 1), None)
    b = LiaisonFingerprint((0, 1), None)
    c = LiaisonFingerprint((), None)
    assert a == b and a != c and c.is_ci_class


# ----------------------------------------------------------- even classes


def test_same_even_class_line_and_linked(line, other_line):
    assert same_even_class(line, other_line)


def test_line_not_in_ci_class(line, ci_curve):
    # the concrete form of the parity obstruction
    assert not same_even_class(line, ci_curve)


def test_same_even_class_reflexive(line):
    assert same_even_class(line, line)


def test_even_class_preserved_under_double_link(line, x):
    double = ci_link(ci_link(line, x[0], x[4]).linked_ideal,
                     x[0], x[4]).linked_ideal
    assert same_even_class(line, double)


def test_ci_class_closed_under_linking(ci_curve, x):
    g = x[4] * x[4] + x[0] * x[1]
    result = ci_link(ci_curve, x[0], g)
    assert result.degree_left == 4  # conic links to a conic
    assert fingerprint(result.linked_ideal).is_ci_class
    assert same_even_class(ci_curve, result.linked_ideal)


def test_link_by_a_degree_two_surface(line, x):
    # (x0, x2*x3 - x4^2) cuts a degree-4 CI on Q; the residual of the line
    # is a non-reduced cubic supported on the conic x0 = x4 = 0
    from qacm.hilbert import acm_curve_check, degree_genus
    from qacm.mcm import decompose_acm
    from qacm.resolutions import etype_resolution

    g = x[2] * x[3] - x[4] * x[4]
    result = ci_link(line, x[0], g)
    assert result.ci_degrees == (1, 2)
    assert result.degree_left == 4 == result.degree_right
    assert degree_genus(result.linked_ideal) == (3, 0)
    assert acm_curve_check(result.linked_ideal).acm
    # the kernel is E0(-1); the fingerprint normalizes the shift away
    report = decompose_acm(etype_resolution(result.linked_ideal).kernel)
    assert report.e0_twists == [1]
    assert fingerprint(result.linked_ideal).e0_shifts == (0,)
    assert same_even_class(line, result.linked_ideal)
    back = ci_link(result.linked_ideal, x[0], g)
    assert back.linked_ideal.equals(line)
