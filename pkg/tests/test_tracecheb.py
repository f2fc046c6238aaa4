"""Trace-polynomial calculus: recurrences, closed forms, root sets."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from pretzelchar.exactpoly import Poly, RationalFn
from pretzelchar.tracecheb import (
    gamma_eq_beta_roots,
    gamma_eq_minus_beta_roots,
    omega_compose,
    omega_eval,
    omega_eval_closed,
    omega_poly,
    omega_triple,
)

T = Poly.variable("t")


def test_omega_base_table():
    assert omega_poly(0) == Poly.zero()
    assert omega_poly(1) == Poly.const(1)
    assert omega_poly(2) == T
    assert omega_poly(3) == T**2 - 1
    assert omega_poly(4) == T**3 - 2 * T
    assert omega_poly(-2) == -T


def test_omega_identities_exact_polynomial_level():
    for k in range(-12, 13):
        # odd symmetry
        assert omega_poly(k) + omega_poly(-k) == Poly.zero()
        # three-term recurrence
        assert omega_poly(k + 1) - T * omega_poly(k) + omega_poly(k - 1) == Poly.zero()
        # normalization identity
        assert (
            omega_poly(k) ** 2 - T * omega_poly(k) * omega_poly(k - 1) + omega_poly(k - 1) ** 2
            == Poly.const(1)
        )


def test_omega_eval_matches_poly_and_closed_form():
    rng = random.Random(1)
    pts = [complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(100)]
    pts += [2.0 + 0j, -2.0 + 0j, 1.9999 + 0j]
    for k in range(-12, 13):
        poly = omega_poly(k)
        for t in pts:
            via_rec = omega_eval(k, t)
            via_poly = poly.evaluate({"t": t}) if not poly.is_zero() else 0
            assert abs(via_rec - complex(via_poly)) <= 1e-10 * (1 + abs(via_rec))
            via_closed = omega_eval_closed(k, t)
            assert abs(via_rec - via_closed) <= 1e-8 * (1 + abs(via_rec))


def test_omega_eval_degenerate_branch_values():
    # a = 1 branch: k * a^(k-1)
    assert omega_eval(5, 2.0) == pytest.approx(5.0)
    # a = i: (i^3 - i^-3)/(i - i^-1) = -1, cross-check omega_3 = t^2 - 1 at 0
    assert omega_eval(3, 0.0) == pytest.approx(-1.0)
    assert complex(omega_poly(3).evaluate({"t": 0})) == pytest.approx(-1.0)
    # a = -1 branch: k * a^(k-1) = 4 * (-1)^3, and the limit of the generic branch
    assert omega_eval(4, -2.0) == pytest.approx(-4.0)
    limit = omega_eval_closed(4, -2.0 + 1e-9)
    assert limit == pytest.approx(-4.0, abs=1e-4)


def test_omega_eval_exact_fraction_arguments():
    assert omega_eval(4, Fraction(1, 2)) == Fraction(1, 8) - 1


def test_omega_triple_invariants():
    s = Poly.variable("t")
    for k in range(-6, 7):
        tri = omega_triple(k)
        assert tri.gamma == s * tri.beta - tri.alpha
        assert tri.beta**2 - s * tri.beta * tri.alpha + tri.alpha**2 == Poly.const(1)


# ------------------------------------------------------------------ root sets


def test_gamma_eq_beta_k1():
    rs = gamma_eq_beta_roots(1)
    assert rs.polynomial == T - 1
    assert [r.value for r in rs.roots] == [pytest.approx(1.0)]
    vals = [c.value for c in rs.candidates]
    assert vals == [pytest.approx(1.0), pytest.approx(-2.0)]
    assert [c.is_root for c in rs.candidates] == [True, False]


def test_gamma_eq_beta_k0():
    rs = gamma_eq_beta_roots(0)
    assert rs.polynomial == Poly.const(1)
    assert rs.roots == ()
    assert len(rs.candidates) == 1
    assert rs.candidates[0].value == pytest.approx(-2.0)
    assert not rs.candidates[0].is_root


def test_gamma_eq_beta_k2_matches_cosines():
    rs = gamma_eq_beta_roots(2)
    assert rs.polynomial == T**2 - T - 1
    expect = sorted([2 * math.cos(math.pi / 5), 2 * math.cos(3 * math.pi / 5)])
    got = sorted(r.value for r in rs.roots)
    for a, b in zip(expect, got):
        assert abs(a - b) < 1e-12
    # golden-ratio roots against the formula (1 +- sqrt 5)/2
    assert sorted([(1 + math.sqrt(5)) / 2, (1 - math.sqrt(5)) / 2]) == pytest.approx(got)
    for r in rs.roots:
        assert abs(complex(r.minpoly.evaluate({"t": r.value}))) < 1e-9


def test_gamma_eq_beta_negative_k_mirrors_positive():
    # omega_{k+1} - omega_k is invariant under k -> -k-1
    for k in range(0, 5):
        assert gamma_eq_beta_roots(k).polynomial == gamma_eq_beta_roots(-k - 1).polynomial


def test_gamma_eq_minus_beta():
    rs = gamma_eq_minus_beta_roots(1)
    assert rs.polynomial == T + 1
    assert [r.value for r in rs.roots] == [pytest.approx(-1.0)]
    rs0 = gamma_eq_minus_beta_roots(0)
    assert rs0.polynomial == Poly.const(1)
    assert rs0.roots == ()
    rs2 = gamma_eq_minus_beta_roots(2)
    assert rs2.polynomial == T**2 + T - 1
    for r in rs2.roots:
        # each root satisfies omega_3(s) = -omega_2(s)
        val = omega_eval(3, r.value) + omega_eval(2, r.value)
        assert abs(val) < 1e-12


def test_new_part_peeling_divisor_tower():
    rs = gamma_eq_beta_roots(4)  # n = 9
    by_denominator = {r.cos_label[1] for r in rs.roots}
    assert by_denominator == {3, 9}
    for r in rs.roots:
        assert abs(complex(r.minpoly.evaluate({"t": r.value}))) < 1e-9
        if r.cos_label[1] == 9:
            assert r.minpoly == T**3 - 3 * T - 1


# ------------------------------------------------------------------ composition


def test_omega_compose_small():
    p = Poly.variable("s1")
    q = Poly.variable("s2")
    r = RationalFn(p, q)
    assert omega_compose(2, r) == r
    c3 = omega_compose(3, r)
    assert c3.num == p * p - q * q and c3.den == q * q
    c4 = omega_compose(4, r)
    assert c4.num == p**3 - 2 * p * q * q and c4.den == q**3


def test_omega_compose_matches_numeric():
    rng = random.Random(2)
    p = Poly.variable("s1") + 2
    q = Poly.variable("s1") ** 2 + 1
    r = RationalFn(p, q)
    for k in range(-6, 7):
        comp = omega_compose(k, r)
        for _ in range(5):
            x = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
            direct = omega_eval(k, r.evaluate({"s1": x}))
            via = comp.evaluate({"s1": x})
            assert abs(direct - via) < 1e-9 * (1 + abs(direct))


def test_matrix_power_oracle():
    """X^k = omega_k(tr X) X - omega_{k-1}(tr X) I against repeated products."""
    rng = random.Random(3)

    def rand_sl2():
        while True:
            a = complex(rng.gauss(0, 1), rng.gauss(0, 1))
            b = complex(rng.gauss(0, 1), rng.gauss(0, 1))
            c = complex(rng.gauss(0, 1), rng.gauss(0, 1))
            if abs(b) < 0.2:
                continue
            d = (1 + b * c) / a if abs(a) > 0.2 else None
            if d is None:
                continue
            return ((a, b), (c, d))

    def mul(A, B):
        return (
            (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
        )

    def inv(A):
        return ((A[1][1], -A[0][1]), (-A[1][0], A[0][0]))

    for _ in range(60):
        X = rand_sl2()
        t = X[0][0] + X[1][1]
        P = ((1 + 0j, 0j), (0j, 1 + 0j))
        Xi = inv(X)
        N = ((1 + 0j, 0j), (0j, 1 + 0j))
        for k in range(0, 9):
            for M, kk in ((P, k), (N, -k)):
                ok, ok1 = omega_eval(kk, t), omega_eval(kk - 1, t)
                want = (
                    (ok * X[0][0] - ok1, ok * X[0][1]),
                    (ok * X[1][0], ok * X[1][1] - ok1),
                )
                err = max(abs(want[i][j] - M[i][j]) for i in range(2) for j in range(2))
                scale = 1 + max(abs(M[i][j]) for i in range(2) for j in range(2))
                assert err <= 1e-10 * scale
            P = mul(P, X)
            N = mul(N, Xi)
