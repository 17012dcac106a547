"""Cross-checks of the Groebner layer against sympy's implementation over
GF(p).  Reduced Groebner bases are unique for a fixed order, so the two
engines must agree exactly (up to sympy's symmetric coefficient range)."""

import sympy

from qacm.groebner import buchberger, normal_form
from qacm.poly import DEFAULT_FIELD, parse_polynomial

F = DEFAULT_FIELD
XS = sympy.symbols("x0 x1 x2 x3 x4")

CASES = [
    ["x0", "x4", "x0*x1 + x2*x3 + x4^2"],
    ["x0", "x2", "x4", "x0*x1 + x2*x3 + x4^2"],
    ["x4", "x0*x1", "x0*x3", "x1*x2", "x2*x3", "x0*x1 + x2*x3 + x4^2"],
    ["x0*x1 - x2^2", "x1*x3 - x4^2", "x0*x1 + x2*x3 + x4^2"],
    ["x0^2 + x1^2 + x2^2", "x3*x4", "x0*x1 + x2*x3 + x4^2"],
    ["x0^2*x1 - x3^3", "x2^2 - x0*x4", "x1*x4 - x2*x3"],
]


def to_sympy(text):
    return sympy.parse_expr(text.replace("^", "**"),
                            local_dict={str(s): s for s in XS})


def from_sympy(expr):
    return parse_polynomial(str(expr).replace("**", "^"), F).monic()


def test_reduced_bases_match_sympy():
    for case in CASES:
        ours = {str(g) for g in buchberger(
            [parse_polynomial(t, F) for t in case]).polynomials}
        theirs = sympy.groebner([to_sympy(t) for t in case], *XS,
                                order="grevlex", modulus=F.p)
        assert ours == {str(from_sympy(e)) for e in theirs.exprs}


def test_normal_forms_match_sympy():
    case = CASES[3]
    gb = buchberger([parse_polynomial(t, F) for t in case])
    sym_gb = sympy.groebner([to_sympy(t) for t in case], *XS,
                            order="grevlex", modulus=F.p)
    probes = ["x0^3 + x1*x2*x3", "x2^2*x4 - x0*x4^2", "x0*x1*x2*x3*x4",
              "x4^4 + x3^4"]
    for text in probes:
        ours = normal_form(parse_polynomial(text, F), gb)
        theirs = sym_gb.reduce(to_sympy(text))[1]
        theirs_poly = parse_polynomial(str(theirs).replace("**", "^"), F)
        assert ours == theirs_poly


def test_random_homogeneous_ideals_match_sympy():
    import random

    from qacm.groebner import satisfies_buchberger_criterion
    from qacm.poly import Polynomial, monomials_of_degree

    rng = random.Random(2024)
    degree_pool = {d: list(monomials_of_degree(d)) for d in (1, 2, 3)}
    for _ in range(15):
        gens = []
        for _ in range(rng.randint(2, 4)):
            d = rng.choice((1, 2, 2, 3))
            monos = rng.sample(degree_pool[d], rng.randint(1, 3))
            gens.append(Polynomial(
                F, {m: rng.randrange(1, F.p) for m in monos}))
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        gb = buchberger(gens)
        assert satisfies_buchberger_criterion(gb.elements, gb.order)
        sym = sympy.groebner(
            [to_sympy(str(g)) for g in gens], *XS,
            order="grevlex", modulus=F.p)
        assert {str(g) for g in gb.polynomials} == \
            {str(from_sympy(e)) for e in sym.exprs}
