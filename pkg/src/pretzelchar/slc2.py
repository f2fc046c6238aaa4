"""Complex 2x2 matrix layer: trace identities, reconstruction, operators.

Everything here is scalar-generic: entries may be python complex (the
default) or mpmath.mpc (the high-precision adjudication mode), since only
field arithmetic and a square root are used.  Matrix powers go through the
two-term trace-polynomial expansion X^k = omega_k(tr X) X - omega_{k-1}
(tr X) I, so the identity that the rest of the pipeline leans on is
exercised on every call.

The pretzel presentation is hard-coded: generators x1, x2, x3, with x_{j+}
denoting the cyclic successor and x_{j-} the predecessor.  A representation
is stored as the image triple (X1, X2, X3) plus the twist parameters
(k1, k2, k3); the knot relations are equivalent to A_1 = A_2 = A_3 for
A_j = Y_j^{k_j} X_{j+} Y_j^{-k_j} X_{j-},  Y_j = X_{j+} X_{j-}^{-1},
and verify_relations measures exactly that equality.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import TYPE_CHECKING

import mpmath

from .tracecheb import omega_eval

if TYPE_CHECKING:  # only for annotations; variety imports this module at runtime
    from .variety import CharPoint, PretzelParams

JPLUS = {1: 2, 2: 3, 3: 1}
JMINUS = {1: 3, 2: 1, 3: 2}


class ReconstructionError(ValueError):
    pass


class ReducibleConfigurationError(ReconstructionError):
    """The trace data does not admit an irreducible triple."""


class NotACharacterError(ReconstructionError):
    """The five-tuple violates the trace relation of triple products."""


class CentralMeridianError(ValueError):
    """Normalization is impossible because the meridian image is +-identity."""


def _sqrt(z):
    if isinstance(z, (mpmath.mpf, mpmath.mpc)):
        return mpmath.sqrt(z)
    return cmath.sqrt(complex(z))


class Mat2:
    """2x2 matrix, row major, scalar-generic."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    @staticmethod
    def identity(like=1 + 0j) -> "Mat2":
        one = like * 0 + 1
        zero = like * 0
        return Mat2(one, zero, zero, one)

    def __mul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        return Mat2(self.a * other, self.b * other, self.c * other, self.d * other)

    __rmul__ = __mul__

    def __add__(self, other):
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def inverse_sl2(self) -> "Mat2":
        """Inverse assuming det = 1 (the adjugate)."""
        return Mat2(self.d, -self.b, -self.c, self.a)

    def inverse(self) -> "Mat2":
        det = self.det()
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def frobenius(self) -> float:
        return float(
            abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2 + abs(self.d) ** 2
        ) ** 0.5

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __repr__(self):
        return f"Mat2([{self.a}, {self.b}; {self.c}, {self.d}])"


def mat_pow(X: Mat2, k: int) -> Mat2:
    """Integer matrix power via the trace-polynomial expansion (det = 1)."""
    t = X.trace()
    ok = omega_eval(k, t)
    ok1 = omega_eval(k - 1, t)
    return Mat2(ok * X.a - ok1, ok * X.b, ok * X.c, ok * X.d - ok1)


@dataclass(frozen=True)
class FiveTuple:
    """Trace data (t, t12, t23, t13, t123) of an equal-trace triple."""

    t: complex
    t12: complex
    t23: complex
    t13: complex
    t123: complex


@dataclass
class Rep:
    """Image triple of the pretzel generators plus the twist parameters."""

    X1: Mat2
    X2: Mat2
    X3: Mat2
    params: "PretzelParams"

    def matrices(self):
        return (self.X1, self.X2, self.X3)

    def matrix(self, j: int) -> Mat2:
        return (self.X1, self.X2, self.X3)[j - 1]

    def twist(self, j: int) -> int:
        return (self.params.k1, self.params.k2, self.params.k3)[j - 1]


@dataclass
class Operators:
    Y: dict
    A: dict
    B: dict
    L: dict


# ------------------------------------------------------------------ five-tuples


def five_tuple_from_charpoint(p: "CharPoint") -> FiveTuple:
    """Trace coordinates (t, s1, s2, s3, tau) to pairwise/triple traces.

    tr(X_{j+} X_{j-}) = t^2 - s_j identifies t12 = t^2 - s3, t23 = t^2 - s1,
    t13 = t^2 - s2, and tau = t^3 + t - tr(X1 X2 X3) inverts to the triple
    trace.
    """
    t = p.t
    return FiveTuple(
        t=t,
        t12=t * t - p.s3,
        t23=t * t - p.s1,
        t13=t * t - p.s2,
        t123=t**3 + t - p.tau,
    )


def charpoint_values_from_five_tuple(ft: FiveTuple):
    """(t, s1, s2, s3, tau) values recovered from a five-tuple."""
    t = ft.t
    return (t, t * t - ft.t23, t * t - ft.t13, t * t - ft.t12, t**3 + t - ft.t123)


def five_tuple_of(X1: Mat2, X2: Mat2, X3: Mat2) -> FiveTuple:
    return FiveTuple(
        t=X1.trace(),
        t12=(X1 * X2).trace(),
        t23=(X2 * X3).trace(),
        t13=(X1 * X3).trace(),
        t123=(X1 * X2 * X3).trace(),
    )


def triple_trace_coefficients(ft: FiveTuple, reading: str = "symmetric"):
    """Coefficients (nu0, nu1) of the quadratic satisfied by the triple trace.

    reading="symmetric" uses t^2 (3 - t12 - t23 - t13); reading="literal"
    replaces t12 by a second copy of t13, reproducing a printing variant that
    the random-triple oracle rejects (see verify output).
    """
    t = ft.t
    if reading == "symmetric":
        lin = ft.t12 + ft.t23 + ft.t13
    elif reading == "literal":
        lin = ft.t13 + ft.t23 + ft.t13
    else:
        raise ValueError(f"unknown reading {reading!r}")
    nu0 = (
        t * t * (3 - lin)
        + ft.t12**2
        + ft.t23**2
        + ft.t13**2
        + ft.t12 * ft.t23 * ft.t13
        - 4
    )
    nu1 = t * (ft.t12 + ft.t23 + ft.t13) - t**3
    return nu0, nu1


def five_tuple_residual(ft: FiveTuple, reading: str = "symmetric") -> float:
    """|t123^2 - nu1 t123 + nu0|, the defect of the triple-trace relation."""
    nu0, nu1 = triple_trace_coefficients(ft, reading)
    return abs(ft.t123**2 - nu1 * ft.t123 + nu0)


# ------------------------------------------------------------------ reconstruction


def _eigenvalue_branch(t):
    """Root u of z^2 - t z + 1 with |u| >= 1, ties broken by Im u >= 0."""
    disc = _sqrt(t * t - 4)
    u1 = (t + disc) / 2
    u2 = (t - disc) / 2
    a1, a2 = abs(u1), abs(u2)
    if abs(a1 - a2) < 1e-12:
        return u1 if float((u1 - u2).imag) >= 0 or u1 == u2 else u2
    return u1 if a1 > a2 else u2


def _solve4(rows, rhs):
    """Dense 4x4 solve with partial pivoting; scalar-generic."""
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    n = 4
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if abs(m[piv][col]) < 1e-10:
            raise ReducibleConfigurationError("reconstruction linear system is singular")
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col:
                f = m[r][col] / m[col][col]
                for cc in range(col, n + 1):
                    m[r][cc] = m[r][cc] - f * m[col][cc]
    return [m[i][4] / m[i][i] for i in range(n)]


def _trace_row(W: Mat2):
    # coefficients of tr(W X) in the unknown entries (x0, x1, x2, x3) of X
    return (W.a, W.c, W.b, W.d)


def _build_pair(t, tpair):
    """Normal form for a pair with equal traces t and product trace tpair.

    P = [[u, 1], [0, 1/u]] and Q lower triangular with a corner entry making
    tr(P Q) = tpair; returns the pair or None when every choice collapses
    onto a shared eigenvector.
    """
    u = _eigenvalue_branch(t)
    one = t * 0 + 1
    P = Mat2(u, one, t * 0, 1 / u)
    disc = _sqrt(t * t - 4)
    best = None
    for sign in (1, -1):
        a = (t + sign * disc) / 2
        c = tpair - u * a - (t - a) / u
        if best is None or abs(c) > abs(best[1]):
            best = (a, c)
    a, c = best
    if abs(c) < 1e-12:
        return None
    Q = Mat2(a, t * 0, c, t - a)
    return P, Q


def common_eigenvector(mats, tol: float = 1e-8):
    """True when all matrices share an eigenvector (reducible tuple)."""
    X = next((m for m in mats if m.frobenius() > 0), None)
    if X is None:
        return True
    t = X.trace()
    disc = _sqrt(t * t - 4)
    vectors = []
    for ev in ((t + disc) / 2, (t - disc) / 2):
        r1 = (X.a - ev, X.b)
        r2 = (X.c, X.d - ev)
        row = r1 if abs(r1[0]) + abs(r1[1]) >= abs(r2[0]) + abs(r2[1]) else r2
        if abs(row[0]) >= abs(row[1]):
            if abs(row[0]) < tol:  # X is scalar: every vector is eigen
                return not any(
                    abs(m.b) > tol or abs(m.c) > tol or abs(m.a - m.d) > tol for m in mats
                )
            vectors.append((-row[1] / row[0], 1))
        else:
            vectors.append((1, -row[0] / row[1]))
    for v in vectors:
        shared = True
        for m in mats:
            w = (m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1])
            cross = w[0] * v[1] - w[1] * v[0]
            scale = max(abs(w[0]), abs(w[1]), 1e-30)
            if abs(cross) > tol * scale:
                shared = False
                break
        if shared:
            return True
    return False


def reconstruct(ft: FiveTuple, tol: float = 1e-8):
    """Rebuild an irreducible triple (X1, X2, X3) from a five-tuple.

    The five-tuple must satisfy the triple-trace relation (checked first).
    The triple is anchored on one irreducible pair put in normal form, and
    the remaining matrix is solved from its four linear trace conditions.
    Any of the three pairs may serve as the anchor; points where a specific
    product degenerates (for instance X1 X2 = I on the isolated components)
    make that pair reducible even though the triple is fine, so all three
    anchors are tried before declaring the configuration reducible.
    """
    scale = 1 + max(abs(ft.t), abs(ft.t12), abs(ft.t23), abs(ft.t13), abs(ft.t123)) ** 3
    res = five_tuple_residual(ft)
    if res > tol * scale:
        raise NotACharacterError(
            f"five-tuple violates the triple-trace relation (residual {res:.3e})"
        )
    t = ft.t
    anchors = (
        # (pair trace, third-matrix rows as (W, rhs) descriptors, assembly)
        ("12", ft.t12, (ft.t13, ft.t23, ft.t123)),
        ("13", ft.t13, (ft.t12, ft.t23, ft.t123)),
        ("23", ft.t23, (ft.t12, ft.t13, ft.t123)),
    )
    last_error = None
    for name, tpair, (tp1, tp2, tp3) in anchors:
        pair = _build_pair(t, tpair)
        if pair is None:
            last_error = ReducibleConfigurationError("anchored pair shares an eigenvector")
            continue
        P, Q = pair
        try:
            if name == "12":
                rows = [_trace_row(Mat2.identity(t)), _trace_row(P), _trace_row(Q), _trace_row(P * Q)]
                rhs = [t, tp1, tp2, tp3]  # tr X3, tr(X1 X3), tr(X2 X3), tr(X1 X2 X3)
                x = _solve4(rows, rhs)
                X3 = Mat2(x[0], x[1], x[2], x[3])
                triple = (P, Q, X3)
            elif name == "13":
                rows = [_trace_row(Mat2.identity(t)), _trace_row(P), _trace_row(Q), _trace_row(Q * P)]
                rhs = [t, tp1, tp2, tp3]  # tr X2, tr(X1 X2), tr(X2 X3) = tr(X3 X1 X2 ...)
                # tr(X1 X2) = t12 uses W = X1 = P; tr(X2 X3): W = X3 = Q? product order:
                # unknown is X2; tr(X2 X3) = tr(X3 X2) -> W = Q; tr(X1 X2 X3) = tr(X3 X1 X2) -> W = Q P
                x = _solve4(rows, rhs)
                X2 = Mat2(x[0], x[1], x[2], x[3])
                triple = (P, X2, Q)
            else:
                rows = [_trace_row(Mat2.identity(t)), _trace_row(P), _trace_row(Q), _trace_row(P * Q)]
                rhs = [t, tp1, tp2, tp3]  # tr X1, tr(X1 X2), tr(X1 X3), tr(X1 X2 X3) = tr(X2 X3 X1)
                x = _solve4(rows, rhs)
                X1 = Mat2(x[0], x[1], x[2], x[3])
                triple = (X1, P, Q)
        except ReducibleConfigurationError as exc:
            last_error = exc
            continue
        X1, X2, X3 = triple
        third = {"12": X3, "13": X2, "23": X1}[name]
        if abs(third.det() - 1) > 1e-6 * (1 + third.frobenius() ** 2):
            last_error = ReducibleConfigurationError("solved matrix leaves SL(2,C)")
            continue
        got = five_tuple_of(X1, X2, X3)
        err = max(
            abs(got.t - ft.t),
            abs(got.t12 - ft.t12),
            abs(got.t23 - ft.t23),
            abs(got.t13 - ft.t13),
            abs(got.t123 - ft.t123),
        )
        if err > 1e-6 * scale:
            last_error = ReducibleConfigurationError("anchored solution misses the five-tuple")
            continue
        if common_eigenvector([X1, X2, X3]):
            last_error = ReducibleConfigurationError("triple has a common eigenvector")
            continue
        return X1, X2, X3
    raise last_error or ReducibleConfigurationError("reducible configuration")


# ------------------------------------------------------------------ operators and relations


def compute_operators(rep: Rep) -> Operators:
    """The derived words: Y_j, A_j (relation words), B_j and longitudes L_j.

    B_j = Y_{j+}^{-k_{j+}} Y_{j-}^{k_{j-}+1} multiply to B1 B2 B3 = I, and
    L_j = B_{j+} B_j B_{j-} is the longitude paired with the meridian x_j.
    """
    X = {1: rep.X1, 2: rep.X2, 3: rep.X3}
    k = {1: rep.params.k1, 2: rep.params.k2, 3: rep.params.k3}
    Y = {j: X[JPLUS[j]] * X[JMINUS[j]].inverse_sl2() for j in (1, 2, 3)}
    A = {
        j: mat_pow(Y[j], k[j]) * X[JPLUS[j]] * mat_pow(Y[j], -k[j]) * X[JMINUS[j]]
        for j in (1, 2, 3)
    }
    B = {j: mat_pow(Y[JPLUS[j]], -k[JPLUS[j]]) * mat_pow(Y[JMINUS[j]], k[JMINUS[j]] + 1) for j in (1, 2, 3)}
    L = {j: B[JPLUS[j]] * B[j] * B[JMINUS[j]] for j in (1, 2, 3)}
    return Operators(Y=Y, A=A, B=B, L=L)


def bj_expansion(rep: Rep, ops: Operators, j: int) -> Mat2:
    """Four-term trace-polynomial expansion of B_j, for cross-checking.

    B_j = -beta_{j+} gamma_{j-} Y_j^{-1} + beta_{j+} beta_{j-} Y_{j+}
          + gamma_{j+} gamma_{j-} Y_{j-} - gamma_{j+} beta_{j-} I.
    """
    jp, jm = JPLUS[j], JMINUS[j]
    sp, sm = ops.Y[jp].trace(), ops.Y[jm].trace()
    kp, km = rep.twist(jp), rep.twist(jm)
    bp, gp = omega_eval(kp, sp), omega_eval(kp + 1, sp)
    bm, gm = omega_eval(km, sm), omega_eval(km + 1, sm)
    I = Mat2.identity(sp)
    return (
        (-bp * gm) * ops.Y[j].inverse_sl2()
        + (bp * bm) * ops.Y[jp]
        + (gp * gm) * ops.Y[jm]
        + (-gp * bm) * I
    )


def verify_relations(rep: Rep) -> float:
    """Relative defect of the knot relations A_1 = A_2 = A_3.

    Returns max_j ||A_j - A_{j+}||_F / (1 + max_j ||A_j||_F); a point is
    accepted as a genuine character when this is at most 1e-9.
    """
    ops = compute_operators(rep)
    A = ops.A
    scale = 1 + max(A[j].frobenius() for j in (1, 2, 3))
    worst = max((A[1] - A[2]).frobenius(), (A[2] - A[3]).frobenius(), (A[1] - A[3]).frobenius())
    return worst / scale


RELATION_TOL = 1e-9


def is_genuine(rep: Rep, tol: float = RELATION_TOL) -> bool:
    return verify_relations(rep) <= tol


# ------------------------------------------------------------------ normalization


def normalize_upper(rep: Rep):
    """Conjugate so the meridian image X1 is upper triangular.

    Returns (rep', u, w) where u is the upper-left entry of X1 and w that of
    the longitude L1 afterwards; u follows the |u| >= 1 eigenvalue branch.
    The longitude commutes with its meridian, so it comes out upper
    triangular in the same basis (checked, within tolerance).
    """
    X1 = rep.X1
    t = X1.trace()
    if abs(X1.b) < 1e-13 and abs(X1.c) < 1e-13 and abs(X1.a - X1.d) < 1e-13:
        raise CentralMeridianError("meridian image is central")
    u = _eigenvalue_branch(t)
    r1 = (X1.a - u, X1.b)
    r2 = (X1.c, X1.d - u)
    row = r1 if abs(r1[0]) + abs(r1[1]) >= abs(r2[0]) + abs(r2[1]) else r2
    if abs(row[0]) >= abs(row[1]):
        v = (-row[1] / row[0], row[0] * 0 + 1)
    else:
        v = (row[0] * 0 + 1, -row[0] / row[1])
    # complete v to a determinant-one basis
    e = (1, 0) if abs(v[1]) > 1e-8 else (0, 1)
    d = v[0] * e[1] - v[1] * e[0]
    g = Mat2(v[0], e[0] / d, v[1], e[1] / d)
    gi = g.inverse_sl2()

    def conj(M):
        return gi * M * g

    ops = compute_operators(rep)
    X1c = conj(rep.X1)
    L1c = conj(ops.L[1])
    off = abs(X1c.c) + abs(L1c.c)
    if off > 1e-6 * (1 + L1c.frobenius()):
        raise CentralMeridianError(
            f"longitude failed to triangularize with the meridian (off-diagonal {off:.2e})"
        )
    rep2 = Rep(X1=X1c, X2=conj(rep.X2), X3=conj(rep.X3), params=rep.params)
    return rep2, X1c.a, L1c.a


# ------------------------------------------------------------------ reducible locus


def _upper(u, b):
    """U(u, b) = [[u, b], [0, 1/u]] over rational functions."""
    from .exactpoly import RationalFn

    zero = RationalFn.const(0)
    return (u, b, zero, 1 / u)


def _rf_mat_mul(A, B):
    return (
        A[0] * B[0] + A[1] * B[2],
        A[0] * B[1] + A[1] * B[3],
        A[2] * B[0] + A[3] * B[2],
        A[2] * B[1] + A[3] * B[3],
    )


def _rf_mat_inv_sl2(A):
    return (A[3], -A[1], -A[2], A[0])


def _rf_mat_pow(A, k: int):
    one = A[0] * 0 + 1
    zero = A[0] * 0
    out = (one, zero, zero, one)
    base = A if k >= 0 else _rf_mat_inv_sl2(A)
    for _ in range(abs(k)):
        out = _rf_mat_mul(out, base)
    return out


def reducible_locus(params: "PretzelParams"):
    """Eigenvalue locus of non-abelian reducible representations.

    Derived symbolically from the upper-triangular ansatz X_j = U(u, a_j),
    a_1 = 1: the relation words A_j are computed as words in U-matrices, the
    equality A_1 = A_2 = A_3 reduces to a 2x2 linear system in (a_2 - 1,
    a_3 - 1), and the returned polynomial is its Laurent-cleared determinant
    in u.  Also reports whether the independently derived system matches the
    textbook display of that system, and flags the u = +-1 degeneration
    (there the system is nonsingular, so only abelian images survive).
    """
    from .exactpoly import Poly, RationalFn, divexact

    u = RationalFn.from_poly(Poly.variable("u"))
    a2 = RationalFn.from_poly(Poly.variable("a2"))
    a3 = RationalFn.from_poly(Poly.variable("a3"))
    one = RationalFn.const(1)
    a = {1: one, 2: a2, 3: a3}
    k = {1: params.k1, 2: params.k2, 3: params.k3}
    X = {j: _upper(u, a[j]) for j in (1, 2, 3)}
    Y = {j: _rf_mat_mul(X[JPLUS[j]], _rf_mat_inv_sl2(X[JMINUS[j]])) for j in (1, 2, 3)}
    A = {}
    for j in (1, 2, 3):
        A[j] = _rf_mat_mul(
            _rf_mat_mul(_rf_mat_pow(Y[j], k[j]), X[JPLUS[j]]),
            _rf_mat_mul(_rf_mat_pow(Y[j], -k[j]), X[JMINUS[j]]),
        )
        assert A[j][2].is_zero(), "relation word left the upper-triangular ansatz"
    # corner entries are affine in a2, a3; equations E1 - E2 and E1 - E3
    rows = []
    for other in (2, 3):
        num = (A[1][1] - A[other][1]).num
        c2 = num.derivative("a2")
        c3 = num.derivative("a3")
        assert c2.degree("a2") == 0 and c2.degree("a3") == 0, "system is not linear"
        assert c3.degree("a2") == 0 and c3.degree("a3") == 0, "system is not linear"
        assert num.subs_value("a2", 1).subs_value("a3", 1).is_zero(), "abelian image must solve it"
        rows.append((c2, c3))
    det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    locus = _strip_var_power(det, "u").primitive()
    # the display this derivation is checked against, rows cleared by u:
    k1, k2, k3 = params.k1, params.k2, params.k3
    uv = Poly.variable("u")
    det_display = (k1 + k3 + 1) * (1 - uv**2) * (k1 + k2 + 1) * (uv**2 - 1) - (
        (k1 + 1) * uv**2 - k1
    ) * ((k1 + 1) - k1 * uv**2)
    det_display = _strip_var_power(det_display, "u").primitive()
    matches = det_display == locus
    degenerate = {
        1: locus.evaluate({"u": 1}) != 0,
        -1: locus.evaluate({"u": -1}) != 0,
    }
    return locus, {
        "matches_display": bool(matches),
        "abelian_only_at_u_plus_minus_1": degenerate,
    }


def _strip_var_power(p, var: str):
    """Divide out the largest monomial power of var (a Laurent unit)."""
    if p.is_zero() or var not in p.vars:
        return p
    i = p.vars.index(var)
    low = min(e[i] for e in p.terms)
    if low == 0:
        return p
    terms = {e[:i] + (e[i] - low,) + e[i + 1 :]: c for e, c in p.terms.items()}
    from .exactpoly import Poly

    return Poly(p.vars, terms)


# ------------------------------------------------------------------ random generators (test support)


def random_sl2(rng, spread: float = 1.0) -> Mat2:
    while True:
        a = complex(rng.gauss(0, spread), rng.gauss(0, spread))
        b = complex(rng.gauss(0, spread), rng.gauss(0, spread))
        c = complex(rng.gauss(0, spread), rng.gauss(0, spread))
        if abs(a) < 0.2:
            continue
        d = (1 + b * c) / a
        return Mat2(a, b, c, d)


def random_with_trace(rng, t, spread: float = 1.0) -> Mat2:
    while True:
        a = complex(rng.gauss(0, spread), rng.gauss(0, spread))
        b = complex(rng.gauss(0, spread), rng.gauss(0, spread))
        if abs(b) < 0.2:
            continue
        d = t - a
        c = (a * d - 1) / b
        return Mat2(a, b, c, d)
