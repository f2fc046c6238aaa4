"""Matrix layer: trace identities, reconstruction round-trips, operators."""

import cmath
import random
from dataclasses import dataclass

import pytest

from pretzelchar.slc2 import (
    FiveTuple,
    Mat2,
    Rep,
    ReducibleConfigurationError,
    bj_expansion,
    common_eigenvector,
    compute_operators,
    five_tuple_from_charpoint,
    five_tuple_of,
    five_tuple_residual,
    mat_pow,
    normalize_upper,
    random_sl2,
    random_with_trace,
    reconstruct,
    reducible_locus,
    verify_relations,
)


@dataclass(frozen=True)
class Params:
    k1: int
    k2: int
    k3: int


@dataclass(frozen=True)
class Point:
    t: complex
    s1: complex
    s2: complex
    s3: complex
    tau: complex


def fro(M):
    return M.frobenius()


# ------------------------------------------------------------------ identities


def test_cayley_hamilton_inverse():
    rng = random.Random(0)
    I = Mat2.identity()
    for _ in range(1000):
        X = random_sl2(rng)
        t = X.trace()
        lhs = X.inverse_sl2()
        rhs = t * I - X
        assert (lhs - rhs).frobenius() <= 1e-12 * (1 + lhs.frobenius())


def test_lemma_xyx_and_anticommutator():
    rng = random.Random(1)
    I = Mat2.identity()
    for _ in range(1000):
        X = random_sl2(rng)
        Y = random_sl2(rng)
        t1, t2, t12 = X.trace(), Y.trace(), (X * Y).trace()
        lhs1 = X * Y * X
        rhs1 = t12 * X - Y.inverse_sl2()
        scale1 = 1 + lhs1.frobenius()
        assert (lhs1 - rhs1).frobenius() <= 1e-12 * scale1
        lhs2 = X * Y + Y * X
        rhs2 = (t12 - t1 * t2) * I + t2 * X + t1 * Y
        scale2 = 1 + lhs2.frobenius()
        assert (lhs2 - rhs2).frobenius() <= 1e-12 * scale2


def test_mat_pow_against_repeated_multiplication():
    rng = random.Random(2)
    for _ in range(200):
        X = random_sl2(rng)
        P = Mat2.identity()
        for k in range(9):
            assert (mat_pow(X, k) - P).frobenius() <= 1e-10 * (1 + P.frobenius())
            Pn = mat_pow(X, -k)
            Q = P.inverse_sl2() if k else Mat2.identity()
            # inverse_sl2 of X^k equals X^{-k} only entrywise up to det drift
            assert (Pn - _inv_chain(X, k)).frobenius() <= 1e-9 * (1 + Pn.frobenius())
            P = P * X


def _inv_chain(X, k):
    out = Mat2.identity()
    Xi = X.inverse_sl2()
    for _ in range(k):
        out = out * Xi
    return out


# ------------------------------------------------------------------ five tuples


def test_five_tuple_from_charpoint_values():
    p = Point(t=0.0, s1=0.3, s2=0.4, s3=0.5, tau=0.0)
    ft = five_tuple_from_charpoint(p)
    assert ft.t123 == pytest.approx(0.0)
    p2 = Point(t=2.0, s1=2.0, s2=2.0, s3=2.0, tau=2 * 4 + 2 - 2)
    ft2 = five_tuple_from_charpoint(p2)
    assert (ft2.t12, ft2.t23, ft2.t13) == (2.0, 2.0, 2.0)


def test_five_tuple_nu0_reading_adjudication():
    """Random equal-trace triples satisfy the symmetric reading, not the variant."""
    rng = random.Random(3)
    worst_sym = 0.0
    literal_large = 0
    n = 300
    for _ in range(n):
        t = complex(rng.gauss(0, 1), rng.gauss(0, 1))
        X1, X2, X3 = (random_with_trace(rng, t) for _ in range(3))
        ft = five_tuple_of(X1, X2, X3)
        scale = 1 + max(abs(ft.t12), abs(ft.t23), abs(ft.t13), abs(ft.t123)) ** 3
        worst_sym = max(worst_sym, five_tuple_residual(ft, "symmetric") / scale)
        if five_tuple_residual(ft, "literal") / scale > 1e-6:
            literal_large += 1
    assert worst_sym < 1e-10
    assert literal_large >= int(0.95 * n)


def test_reconstruction_roundtrip_bulk():
    rng = random.Random(4)
    count = 0
    while count < 500:
        t = complex(rng.gauss(0, 1), rng.gauss(0, 1))
        X1, X2, X3 = (random_with_trace(rng, t) for _ in range(3))
        if common_eigenvector([X1, X2, X3]):
            continue
        ft = five_tuple_of(X1, X2, X3)
        Y1, Y2, Y3 = reconstruct(ft)
        back = five_tuple_of(Y1, Y2, Y3)
        dev = max(
            abs(back.t - ft.t),
            abs(back.t12 - ft.t12),
            abs(back.t23 - ft.t23),
            abs(back.t13 - ft.t13),
            abs(back.t123 - ft.t123),
        )
        scale = 1 + max(abs(ft.t12), abs(ft.t23), abs(ft.t13), abs(ft.t123))
        assert dev <= 1e-10 * scale
        count += 1


def test_reconstruction_rejects_all_identity():
    ft = FiveTuple(2.0, 2.0, 2.0, 2.0, 2.0)
    with pytest.raises(ReducibleConfigurationError):
        reconstruct(ft)


def test_reconstruction_rejects_non_character():
    from pretzelchar.slc2 import NotACharacterError

    with pytest.raises(NotACharacterError):
        reconstruct(FiveTuple(0.3, 1.7, -0.4, 2.2, 5.0))


def test_reconstruction_with_degenerate_first_pair():
    """Product X1 X2 = I makes the (1,2) anchor singular; others must take over."""
    rng = random.Random(5)
    t = 1.2
    while True:
        X1 = random_with_trace(rng, t)
        X2 = X1.inverse_sl2()
        X3 = random_with_trace(rng, t)
        if not common_eigenvector([X1, X2, X3]):
            break
    ft = five_tuple_of(X1, X2, X3)
    assert abs(ft.t12 - 2) < 1e-12
    Y1, Y2, Y3 = reconstruct(ft)
    back = five_tuple_of(Y1, Y2, Y3)
    assert abs(back.t123 - ft.t123) < 1e-9


# ------------------------------------------------------------------ operators


def trefoil_curve_rep(tval, params=Params(0, 0, 0)):
    s = tval * tval - 1
    tau = tval * (s + 2)
    point = Point(t=tval, s1=s, s2=s, s3=s, tau=tau)
    X1, X2, X3 = reconstruct(five_tuple_from_charpoint(point))
    return Rep(X1=X1, X2=X2, X3=X3, params=params)


def test_operator_identities_on_curve_points():
    for tval in (1.3, 0.7 + 0.4j, 2.4, 1.9 - 0.3j):
        rep = trefoil_curve_rep(tval)
        assert verify_relations(rep) <= 1e-9
        ops = compute_operators(rep)
        I = Mat2.identity()
        prod = ops.B[1] * ops.B[2] * ops.B[3]
        assert (prod - I).frobenius() <= 1e-9 * (1 + prod.frobenius())
        for j in (1, 2, 3):
            alt = bj_expansion(rep, ops, j)
            assert (alt - ops.B[j]).frobenius() <= 1e-9 * (1 + alt.frobenius())
        # longitudes share a trace and commute with their meridians
        tL = [ops.L[j].trace() for j in (1, 2, 3)]
        assert abs(tL[0] - tL[1]) <= 1e-9 * (1 + abs(tL[0]))
        assert abs(tL[1] - tL[2]) <= 1e-9 * (1 + abs(tL[1]))
        comm = ops.L[1] * rep.X1 - rep.X1 * ops.L[1]
        assert comm.frobenius() <= 1e-9 * (1 + ops.L[1].frobenius())


def test_abelian_rep_operators_trivial():
    rng = random.Random(6)
    X = random_sl2(rng)
    rep = Rep(X1=X, X2=X, X3=X, params=Params(1, 2, 1))
    ops = compute_operators(rep)
    I = Mat2.identity()
    for j in (1, 2, 3):
        assert (ops.Y[j] - I).frobenius() < 1e-12
        assert (ops.B[j] - I).frobenius() < 1e-10
        assert (ops.L[j] - I).frobenius() < 1e-10
        want = X * X  # A_j collapses to X_{j+} X_{j-}
        assert (ops.A[j] - want).frobenius() < 1e-10


def test_trace_of_relation_word_formula():
    """tr(A_j) = 2 - (s_j + 2 - t^2)(gamma_j - beta_j)^2 on equal-trace pairs."""
    from pretzelchar.tracecheb import omega_eval

    rng = random.Random(7)
    for _ in range(200):
        t = complex(rng.gauss(0, 1), rng.gauss(0, 1))
        k = rng.randint(-4, 4)
        Xp = random_with_trace(rng, t)
        Xm = random_with_trace(rng, t)
        Y = Xp * Xm.inverse_sl2()
        s = Y.trace()
        A = mat_pow(Y, k) * Xp * mat_pow(Y, -k) * Xm
        beta, gamma = omega_eval(k, s), omega_eval(k + 1, s)
        want = 2 - (s + 2 - t * t) * (gamma - beta) ** 2
        got = A.trace()
        assert abs(got - want) <= 1e-9 * (1 + abs(got))


def test_verify_relations_negative_control():
    rng = random.Random(8)
    hits = 0
    for _ in range(50):
        t = complex(rng.gauss(0, 1), rng.gauss(0, 1))
        rep = Rep(
            X1=random_with_trace(rng, t),
            X2=random_with_trace(rng, t),
            X3=random_with_trace(rng, t),
            params=Params(1, 1, 1),
        )
        if verify_relations(rep) > 1e-3:
            hits += 1
    assert hits >= 48  # random triples are essentially never representations


def test_trivial_rep_residual_zero():
    I = Mat2.identity()
    rep = Rep(X1=I, X2=I, X3=I, params=Params(2, 1, 0))
    assert verify_relations(rep) == 0.0


# ------------------------------------------------------------------ normalization


def test_normalize_upper_reads_off_u_and_w():
    rep = trefoil_curve_rep(1.4)
    rep2, u, w = normalize_upper(rep)
    assert abs(rep2.X1.c) < 1e-10
    assert abs(u + 1 / u - 1.4) < 1e-10
    assert abs(u) >= 1.0 - 1e-12
    # hand elimination of the trefoil system gives w = -u^{-6}
    assert abs(w + u**-6) <= 1e-8 * (1 + abs(w))


def test_normalize_upper_at_sample_u_1_1():
    rep = trefoil_curve_rep(1.1 + 1 / 1.1)  # meridian eigenvalue u = 1.1
    rep2, u, w = normalize_upper(rep)
    assert abs(u - 1.1) < 1e-9
    assert abs(w + u**-6) < 1e-8


def test_normalize_upper_rejects_central():
    I = Mat2.identity()
    rep = Rep(X1=I, X2=I, X3=I, params=Params(0, 0, 0))
    from pretzelchar.slc2 import CentralMeridianError

    with pytest.raises(CentralMeridianError):
        normalize_upper(rep)


def test_normalize_upper_already_triangular():
    rep = trefoil_curve_rep(1.8)
    rep2, u, w = normalize_upper(rep)
    rep3, u2, w2 = normalize_upper(rep2)
    assert abs(u - u2) < 1e-10 and abs(w - w2) < 1e-10


# ------------------------------------------------------------------ reducible locus


def test_reducible_locus_trefoil_alexander_values():
    locus, info = reducible_locus(Params(0, 0, 0))
    # u^4 - u^2 + 1: the Alexander polynomial of the trefoil evaluated at u^2
    from pretzelchar.exactpoly import Poly

    U = Poly.variable("u")
    assert locus == U**4 - U**2 + 1
    assert info["matches_display"]
    assert info["abelian_only_at_u_plus_minus_1"][1]
    assert info["abelian_only_at_u_plus_minus_1"][-1]


def test_reducible_locus_roots_admit_nonabelian_reducibles():
    """Numeric control: at locus roots the upper-triangular system has rank < 2."""
    import numpy as np

    params = Params(0, 0, 0)
    locus, _ = reducible_locus(params)
    from pretzelchar.exactpoly import roots_double

    for u in roots_double(locus):
        if abs(u.imag) < 1e-9 and abs(abs(u) - 1) > 1e-6:
            continue
        k1, k2, k3 = params.k1, params.k2, params.k3
        m = np.array(
            [
                [(k1 + 1) / u - k1 * u, (k1 + k2 + 1) * (u - 1 / u)],
                [(k1 + k3 + 1) * (1 / u - u), (k1 + 1) * u - k1 / u],
            ]
        )
        s = np.linalg.svd(m, compute_uv=False)
        assert s[-1] < 1e-8
        # build the representation from the kernel and check the relations
        v = np.linalg.svd(m)[2][-1]
        a2 = 1 + v[1]
        a3 = 1 + v[0]
        X1 = Mat2(u, 1, 0, 1 / u)
        X2 = Mat2(u, a2, 0, 1 / u)
        X3 = Mat2(u, a3, 0, 1 / u)
        rep = Rep(X1=X1, X2=X2, X3=X3, params=params)
        assert verify_relations(rep) <= 1e-8


def test_reducible_locus_symmetric_params():
    locus1, info1 = reducible_locus(Params(2, 2, 2))
    assert info1["matches_display"]
    # determinant depends only on the symmetric functions of the twists
    locus2, _ = reducible_locus(Params(2, 2, 2))
    assert locus1 == locus2
    la, _ = reducible_locus(Params(1, 2, 3))
    lb, _ = reducible_locus(Params(3, 1, 2))
    assert la == lb
