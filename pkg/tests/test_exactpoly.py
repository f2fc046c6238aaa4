"""Tests for the exact polynomial layer: ring axioms, resultants, roots."""

import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pretzelchar.exactpoly import (
    NotEliminableError,
    Poly,
    PolynomialError,
    RationalFn,
    complex_roots,
    divexact,
    gcd,
    resultant,
    resultant_bareiss,
    resultant_prs,
    roots_double,
    squarefree_decomposition,
    squarefree_primitive,
)

X = Poly.variable("t")
Y = Poly.variable("u")
Z = Poly.variable("w")


def random_poly(rng, vars=("t", "u"), max_terms=5, max_deg=4, coeff_bound=9):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        expo = tuple(rng.randint(0, max_deg) for _ in vars)
        num = rng.randint(-coeff_bound, coeff_bound)
        den = rng.randint(1, 4)
        terms[expo] = terms.get(expo, Fraction(0)) + Fraction(num, den)
    return Poly(vars, terms)


def test_ring_axioms_bulk():
    rng = random.Random(20240811)
    for _ in range(1000):
        p = random_poly(rng)
        q = random_poly(rng)
        r = random_poly(rng)
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p + Poly.zero() == p
        assert p * Poly.const(1) == p
        assert p + (-p) == Poly.zero()


def test_additive_inverse_and_difference_of_squares():
    assert X + (-X) == Poly.zero()
    assert (X + 1) * (X - 1) == X * X - 1


def test_substitute_clears_denominators():
    a = Poly.variable("a")
    b = Poly.variable("b")
    r = RationalFn(a + 1, b)
    out = (X * X).substitute("t", r)
    assert out.num == (a + 1) ** 2
    assert out.den == b * b


def test_degrees_and_leading():
    p = 3 * X**2 * Y + X - 7
    assert p.degree("t") == 2
    assert p.degree("u") == 1
    assert p.degree("w") == 0
    assert p.leading_coefficient("t") == 3 * Y
    assert Poly.zero().degree("t") == -1


# ------------------------------------------------------------------ resultants


def test_resultant_linear_sign_convention():
    a, b = Poly.variable("a"), Poly.variable("b")
    assert resultant(X - a, X - b, "t") == a - b


def test_resultant_shared_root_vanishes():
    assert resultant(X**2 - 1, X - 1, "t") == Poly.zero()


def test_resultant_product_formula_oracle():
    # oracle first: Res(f, g) = lc(f)^deg(g) * prod g(root_i) over roots of f;
    # for f = x^2 + 1 the roots are +-i, so g = x^2 - 1 gives (-2)(-2) = 4
    oracle = 1
    for root in (1j, -1j):
        oracle *= root**2 - 1
    assert oracle.real == pytest.approx(4.0) and abs(oracle.imag) < 1e-14
    assert resultant(X**2 + 1, X**2 - 1, "t") == Poly.const(4)


def test_resultant_product_formula_random_rational_roots():
    rng = random.Random(7)
    for _ in range(25):
        f_roots = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        g_roots = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        lf = Fraction(rng.randint(1, 4))
        lg = Fraction(rng.randint(1, 4))
        f = Poly.const(lf)
        for r in f_roots:
            f = f * (X - Poly.const(r))
        g = Poly.const(lg)
        for r in g_roots:
            g = g * (X - Poly.const(r))
        expected = lf ** len(g_roots) * math.prod(
            (lg * math.prod((a - b) for b in g_roots) for a in f_roots), start=Fraction(1)
        )
        assert resultant(f, g, "t") == Poly.const(expected)


def test_resultant_detects_planted_common_factor():
    rng = random.Random(99)
    for _ in range(30):
        common = random_poly(rng, vars=("t",), max_terms=3, max_deg=2) + X**3
        p = common * (random_poly(rng, vars=("t", "u"), max_terms=3, max_deg=2) + Y + 1)
        q = common * (random_poly(rng, vars=("t", "u"), max_terms=3, max_deg=2) + Y**2 + 2)
        assert resultant(p, q, "t").is_zero()
        assert gcd(p, q).degree("t") > 0


def test_resultant_nonzero_for_coprime():
    p = X**2 + Y
    q = X + Y + 1
    r = resultant(p, q, "t")
    # eliminant vanishes exactly where the two curves intersect
    assert r == (Y + 1) ** 2 + Y


def test_bareiss_and_prs_agree():
    rng = random.Random(3)
    for _ in range(20):
        p = random_poly(rng, vars=("t", "u", "w"), max_terms=4, max_deg=3)
        q = random_poly(rng, vars=("t", "u", "w"), max_terms=4, max_deg=3)
        if p.degree("t") <= 0 or q.degree("t") <= 0:
            continue
        assert resultant_bareiss(p, q, "t") == resultant_prs(p, q, "t")


def test_resultant_against_sympy():
    import sympy

    rng = random.Random(12)
    ts, us, ws = sympy.symbols("t u w")
    for _ in range(10):
        p = random_poly(rng, vars=("t", "u", "w"), max_terms=4, max_deg=3)
        q = random_poly(rng, vars=("t", "u", "w"), max_terms=4, max_deg=3)
        if p.degree("t") <= 0 or q.degree("t") <= 0:
            continue
        sp = sympy.sympify(p.to_text().replace("^", "**"))
        sq = sympy.sympify(q.to_text().replace("^", "**"))
        want = sympy.expand(sympy.resultant(sp, sq, ts))
        got = sympy.sympify(resultant(p, q, "t").to_text().replace("^", "**"))
        assert sympy.expand(got - want) == 0


def test_resultant_degree_zero_rejected():
    with pytest.raises(NotEliminableError):
        resultant(X + 1, Y + 1, "t")


# ------------------------------------------------------------------ gcd / squarefree


def test_gcd_of_products():
    rng = random.Random(4)
    for _ in range(20):
        g = random_poly(rng, vars=("t", "u"), max_terms=3, max_deg=2) + X * Y + 1
        a = g * (random_poly(rng, vars=("t", "u"), max_terms=2, max_deg=2) + X + 2)
        b = g * (random_poly(rng, vars=("t", "u"), max_terms=2, max_deg=2) + Y + 3)
        d = gcd(a, b)
        assert try_div(a, d) and try_div(b, d)
        assert try_div(d, g.primitive()) or d.total_degree() >= g.total_degree()


def try_div(a, b):
    from pretzelchar.exactpoly import try_divexact

    return try_divexact(a, b) is not None


def test_squarefree_examples():
    p = (X - 1) ** 2 * (X + 2)
    assert squarefree_primitive(p, "t") == (X - 1) * (X + 2)
    assert squarefree_primitive(6 * X + 6, "t") == X + 1
    assert squarefree_primitive(X**2 - 2 * X + 1, "t") == X - 1
    with pytest.raises(PolynomialError):
        squarefree_primitive(Poly.zero(), "t")


def test_squarefree_decomposition_reassembles():
    p = (X - 1) ** 3 * (X + 2) ** 2 * (X * X + 1)
    parts = squarefree_decomposition(p, "t")
    rebuilt = Poly.const(1)
    for f, m in parts:
        rebuilt = rebuilt * f**m
    assert rebuilt.primitive() == p.primitive()
    mults = sorted(m for _, m in parts)
    assert mults == [1, 2, 3]


def test_divexact_roundtrip():
    rng = random.Random(5)
    for _ in range(40):
        a = random_poly(rng, vars=("t", "u"), max_terms=4, max_deg=3) + X + 1
        b = random_poly(rng, vars=("t", "u"), max_terms=3, max_deg=2) + Y + 1
        assert divexact(a * b, b) == a


# ------------------------------------------------------------------ numeric roots


def test_complex_roots_quadratics():
    roots = complex_roots(X**2 + 1)
    vals = sorted((complex(r) for r, _ in roots), key=lambda z: z.imag)
    assert vals[0] == pytest.approx(-1j) and vals[1] == pytest.approx(1j)
    roots = complex_roots(X**2 - 3 * X + 2)
    vals = sorted((complex(r) for r, _ in roots), key=lambda z: z.real)
    assert vals[0] == pytest.approx(1.0) and vals[1] == pytest.approx(2.0)


def test_complex_roots_cube_root_of_two():
    roots = complex_roots(X**3 - 2, precision=128)
    assert len(roots) == 3
    with mpmath.workprec(160):
        for r, mult in roots:
            assert mult == 1
            assert abs(abs(r) ** 3 - 2) < mpmath.mpf(2) ** (-100)


def test_complex_roots_residual_bound_and_multiplicity():
    rng = random.Random(6)
    for _ in range(10):
        roots = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)]
        p = Poly.const(1)
        for r in roots:
            p = p * (X - Poly.const(r))
        p = p * (X - Poly.const(roots[0]))  # plant a double root
        found = complex_roots(p, precision=128)
        assert sum(m for _, m in found) == p.degree("t")
        coeffs = [c for c in p.coefficient_map("t").items()]
        with mpmath.workprec(200):
            for root, _ in found:
                val = sum(
                    mpmath.mpf(c.constant_value().numerator)
                    / c.constant_value().denominator
                    * root**d
                    for d, c in coeffs
                )
                scale = sum(
                    abs(mpmath.mpf(c.constant_value().numerator) / c.constant_value().denominator)
                    * abs(root) ** d
                    for d, c in coeffs
                )
                assert abs(val) <= mpmath.mpf(2) ** (-64) * (1 + scale)


def test_roots_double_sampler_path():
    p = (X - 2) * (X + 3) * (X * X + 1)
    got = roots_double(p)
    assert len(got) == 4
    for z in got:
        val = (z - 2) * (z + 3) * (z * z + 1)
        assert abs(val) < 1e-9


# ------------------------------------------------------------------ text form


def test_canonical_text_examples():
    p = Z * Y**6 + 1
    assert p.to_text() == "u^6*w + 1"
    assert Poly.parse("w*u^6 + 1") == p
    assert Poly.parse("u^6*w+1") == p
    assert Poly.zero().to_text() == "0"
    assert Poly.parse("0") == Poly.zero()
    assert Poly.parse("-3/2*t + t") == Poly.parse("-1/2*t")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6))
def test_parse_print_roundtrip_hypothesis(seed):
    rng = random.Random(seed)
    p = random_poly(rng, vars=("t", "u", "w", "s1"), max_terms=6, max_deg=5)
    assert Poly.parse(p.to_text()) == p


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_ring_commutativity_hypothesis(a, b):
    pa = random_poly(random.Random(a), vars=("t", "u"))
    pb = random_poly(random.Random(b), vars=("t", "u"))
    assert pa * pb == pb * pa
    assert pa + pb == pb + pa


# ------------------------------------------------------------------ rational functions


def test_rationalfn_reduction_and_eval():
    r = RationalFn((X**2 - 1) * Y, (X - 1) * Y)
    assert r.num == X + 1
    assert r.den == Poly.const(1)
    r2 = RationalFn(X, X * X + 1)
    assert r2.evaluate({"t": 2.0}) == pytest.approx(0.4)
    with pytest.raises(PolynomialError):
        RationalFn(X, Poly.zero())


def test_rationalfn_arithmetic():
    a = RationalFn(Poly.const(1), X)
    b = RationalFn(Poly.const(1), X + 1)
    s = a + b
    assert s.num == 2 * X + 1
    assert s.den == X * (X + 1)
    q = a / b
    assert q.num == X + 1 and q.den == X
