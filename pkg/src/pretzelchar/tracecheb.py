"""Chebyshev-like trace polynomials for SL(2,C) matrix powers.

omega_k is the degree |k|-1 integer polynomial with omega_0 = 0, omega_1 = 1
and the three-term recurrence omega_{k+1} = t*omega_k - omega_{k-1}; in terms
of an eigenvalue a with a + 1/a = t it equals (a^k - a^-k)/(a - a^-1), with
the limit k*a^(k-1) at t = +-2.  Negative indices satisfy omega_{-k} =
-omega_k, which is how they are computed here.

These polynomials govern matrix powers (X^k = omega_k(tr X) X - omega_{k-1}
(tr X) I) and, evaluated at the twist-region traces s_j, supply the
alpha/beta/gamma coefficients that the component classification and the
A-polynomial elimination are written in.

Root-set helpers return exact data: the defining polynomial, one small
"new part" defining polynomial per root (obtained by peeling divisor
polynomials, never by general factorization), a float approximation and a
2*cos(m*pi/n) label.  The candidate list for the gamma = beta family keeps
the closed-form cosine value at theta = pi even though the defining
polynomial does not vanish there; callers get an explicit validity flag
instead of a silent choice (the downstream representation oracle settles
what that flag means geometrically).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactpoly import Poly, RationalFn

_T = Poly.variable("t")


@lru_cache(maxsize=None)
def omega_poly(k: int) -> Poly:
    """The trace polynomial omega_k as an exact Poly in t."""
    if k < 0:
        return -omega_poly(-k)
    if k == 0:
        return Poly.zero()
    prev, cur = Poly.zero(), Poly.const(1)
    for _ in range(k - 1):
        prev, cur = cur, _T * cur - prev
    return cur


def omega_eval(k: int, t):
    """omega_k at a numeric argument, by the defining recurrence.

    The recurrence is uniformly accurate, including at t = +-2 where the
    closed form degenerates to k*a^(k-1); it costs O(|k|), which is cheap at
    the twist parameters in play.  Works for complex, mpmath and Fraction
    scalars alike.
    """
    sign = 1
    if k < 0:
        k, sign = -k, -1
    if k == 0:
        return 0 * t
    prev, cur = 0 * t, 1 + 0 * t
    for _ in range(k - 1):
        prev, cur = cur, t * cur - prev
    return sign * cur


def omega_eval_closed(k: int, t: complex) -> complex:
    """Closed-form evaluation: (a^k - a^-k)/(a - a^-1) with a + 1/a = t.

    Kept separate from omega_eval as an independent cross-check; picks the
    k*a^(k-1) branch when the eigenvalues collide.
    """
    import cmath

    disc = cmath.sqrt(complex(t) * complex(t) - 4)
    if abs(disc) < 1e-12:
        a = complex(t) / 2
        return k * a ** (k - 1)
    a = (complex(t) + disc) / 2
    return (a**k - a**-k) / (a - 1 / a)


@dataclass(frozen=True)
class OmegaTriple:
    """Consecutive trace polynomials (omega_{k-1}, omega_k, omega_{k+1})."""

    alpha: Poly
    beta: Poly
    gamma: Poly
    k: int


def omega_triple(k: int) -> OmegaTriple:
    return OmegaTriple(omega_poly(k - 1), omega_poly(k), omega_poly(k + 1), k)


def omega_compose(k: int, r: RationalFn) -> RationalFn:
    """omega_k evaluated at a rational function, denominator r.den^(|k|-1).

    Uses the numerator recurrence N_{k+1} = num*N_k - den^2*N_{k-1}, which
    keeps the result reduced whenever r is reduced.
    """
    if k < 0:
        out = omega_compose(-k, r)
        return RationalFn(-out.num, out.den, reduce=False)
    if k == 0:
        return RationalFn.const(0)
    den2 = r.den * r.den
    prev, cur = Poly.zero(), Poly.const(1)
    for _ in range(k - 1):
        prev, cur = cur, r.num * cur - den2 * prev
    return RationalFn(cur, r.den ** max(k - 1, 0), reduce=False)


# ------------------------------------------------------------------ root sets


@dataclass(frozen=True)
class AlgebraicReal:
    """A real root carried as (small defining polynomial, float, cosine label)."""

    minpoly: Poly
    value: float
    cos_label: tuple[int, int]  # value = 2*cos(label[0]*pi / label[1])

    def label_text(self) -> str:
        m, n = self.cos_label
        return f"2cos({m}pi/{n})"


@dataclass(frozen=True)
class CosineCandidate:
    """One member of the closed-form candidate list, with a validity flag.

    is_root records whether the defining polynomial actually vanishes there;
    the s = -2 entry (theta = pi) never is a root, and stays flagged.
    """

    h: int
    n: int
    value: float
    is_root: bool


@dataclass(frozen=True)
class RootSet:
    polynomial: Poly
    roots: tuple[AlgebraicReal, ...]
    candidates: tuple[CosineCandidate, ...] = field(default=())


def _odd_divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def _diff_poly(n: int) -> Poly:
    """omega_{k+1} - omega_k for n = 2k+1 (n odd, n >= 1)."""
    k = (n - 1) // 2
    return omega_poly(k + 1) - omega_poly(k)


@lru_cache(maxsize=None)
def _sum_poly(n: int) -> Poly:
    """omega_{k+1} + omega_k for n = 2k+1."""
    k = (n - 1) // 2
    return omega_poly(k + 1) + omega_poly(k)


@lru_cache(maxsize=None)
def _new_part(n: int, family: str) -> Poly:
    """Defining polynomial of the roots whose angle has exact denominator n.

    Peels the divisor-level polynomials by exact trial division; this gives
    the minimal polynomial of 2cos(m*pi/n) (resp. 2cos(2m*pi/n)) without any
    general factorization machinery.
    """
    from .exactpoly import divexact

    base = _diff_poly(n) if family == "diff" else _sum_poly(n)
    out = base.primitive()
    for d in _odd_divisors(n):
        if d == n:
            continue
        part = _new_part(d, family)
        if part.total_degree() > 0:
            out = divexact(out, part)
    return out.primitive()


def _reduced_angle(m: int, n: int) -> tuple[int, int]:
    g = math.gcd(m, n)
    return m // g, n // g


def gamma_eq_beta_roots(k: int) -> RootSet:
    """Roots of omega_{k+1}(s) = omega_k(s), plus the cosine candidate list.

    The polynomial roots are s = 2cos((2h+1)pi/n) for angles strictly inside
    (0, pi), n = |2k+1|.  The candidate list also includes theta = pi (s =
    -2), where the polynomial does not vanish; its flag is False and the
    discrepancy is left to the caller to resolve empirically.
    """
    n = abs(2 * k + 1)
    poly = _diff_poly(n).primitive()
    roots = []
    candidates = []
    for h in range((n - 1) // 2 + 1):
        m = 2 * h + 1
        value = 2.0 * math.cos(m * math.pi / n)
        is_root = m < n  # theta = pi, i.e. s = -2, is never a root
        candidates.append(CosineCandidate(h=h, n=n, value=value, is_root=is_root))
        if is_root:
            mr, nr = _reduced_angle(m, n)
            roots.append(
                AlgebraicReal(minpoly=_new_part(nr, "diff"), value=value, cos_label=(mr, nr))
            )
    return RootSet(polynomial=poly, roots=tuple(roots), candidates=tuple(candidates))


def gamma_eq_minus_beta_roots(k: int) -> RootSet:
    """Roots of omega_{k+1}(s) = -omega_k(s): s = 2cos(2h pi/n), h = 1..(n-1)/2.

    No closed-form candidate list accompanies this family; only the
    polynomial's actual roots are returned.
    """
    n = abs(2 * k + 1)
    poly = _sum_poly(n).primitive()
    roots = []
    for h in range(1, (n - 1) // 2 + 1):
        value = 2.0 * math.cos(2 * h * math.pi / n)
        mr, nr = _reduced_angle(2 * h, n)
        roots.append(AlgebraicReal(minpoly=_new_part(nr, "sum"), value=value, cos_label=(mr, nr)))
    return RootSet(polynomial=poly, roots=tuple(roots), candidates=())


def exact_root_value(root: AlgebraicReal, precision: int = 128):
    """High-precision numeric value of a root (adjudication helper)."""
    import mpmath

    m, n = root.cos_label
    with mpmath.workprec(precision + 16):
        return 2 * mpmath.cos(mpmath.pi * m / n)
