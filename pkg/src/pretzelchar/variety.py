"""Component builders for the irreducible character variety of P(2k1+1, 2k2+1, 2k3+1).

The variety embeds in C^5 with coordinates (t, s1, s2, s3, tau): t the common
meridian trace, s_j the twist-region traces tr(X_{j+} X_{j-}^{-1}), and tau
the affine-shifted triple trace t^3 + t - tr(X1 X2 X3).  A point is a
character exactly when kappa = delta, with

    delta = 4 + sigma3 + 2 sigma2 - sigma1^2,
    kappa = tau^2 - t (sigma1 + 2) tau + t^2 (sigma2 + 4),

sigma_i the elementary symmetric functions of the s_j.  The irreducible part
splits into six kinds of components:

    X0_1   isolated points at t = 0 with gamma_j = -beta_j and tau^2 = delta != 0
    X0_2   isolated points at t = 0 with delta = 0 and matched cosine angles
    X1     isolated points where one product X_{l+} X_{l-} is the identity
    X2     conics in (t, tau) over fixed twist traces with gamma_j = beta_j
    X3_sin the all-equal-traces part of the main curve
    X3_reg the main curve in a chart (s_{l+}, s_{l-})

(beta_j, gamma_j are omega_{k_j}, omega_{k_j+1} at s_j.)  Every builder puts
its points through the same oracle: reconstruct matrices from the trace
coordinates and measure the defect of the knot relations.  Points that fail
are reported with reasons, never silently dropped, and known textual
ambiguities (the s = -2 candidate traces, the two wordings of the X0_2
matching condition) are carried as explicit flags that the oracle settles.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import slc2
from .exactpoly import Poly, RationalFn, divexact, gcd, roots_double, squarefree_primitive
from .slc2 import (
    CentralMeridianError,
    ReconstructionError,
    Rep,
    five_tuple_from_charpoint,
    verify_relations,
)
from .tracecheb import (
    gamma_eq_beta_roots,
    gamma_eq_minus_beta_roots,
    omega_compose,
    omega_eval,
    omega_poly,
)

RELATION_TOL = 1e-9
JPLUS = {1: 2, 2: 3, 3: 1}
JMINUS = {1: 3, 2: 1, 3: 2}


@dataclass(frozen=True)
class PretzelParams:
    k1: int
    k2: int
    k3: int

    def twist(self, j: int) -> int:
        return (self.k1, self.k2, self.k3)[j - 1]

    def strands(self) -> tuple[int, int, int]:
        return (2 * self.k1 + 1, 2 * self.k2 + 1, 2 * self.k3 + 1)

    def label(self) -> str:
        p, q, r = self.strands()
        return f"P({p},{q},{r})"


@dataclass(frozen=True)
class CharPoint:
    t: complex
    s1: complex
    s2: complex
    s3: complex
    tau: complex

    def svals(self):
        return (self.s1, self.s2, self.s3)

    def sigma(self):
        s1, s2, s3 = self.svals()
        return (s1 + s2 + s3, s1 * s2 + s2 * s3 + s3 * s1, s1 * s2 * s3)

    def delta(self):
        sigma1, sigma2, sigma3 = self.sigma()
        return 4 + sigma3 + 2 * sigma2 - sigma1**2

    def kappa(self):
        sigma1, sigma2, _ = self.sigma()
        return self.tau**2 - self.t * (sigma1 + 2) * self.tau + self.t**2 * (sigma2 + 4)

    def character_residual(self) -> float:
        """Relative defect of kappa = delta, the membership equation in C^5."""
        k, d = self.kappa(), self.delta()
        return abs(k - d) / (1 + abs(k) + abs(d))

    def key(self, digits: int = 9):
        return tuple(
            (round(z.real, digits), round(z.imag, digits))
            for z in (
                complex(self.t),
                complex(self.s1),
                complex(self.s2),
                complex(self.s3),
                complex(self.tau),
            )
        )


@dataclass
class VerifiedPoint:
    point: CharPoint
    rep: Rep | None
    residual: float
    ok: bool
    reason: str = ""
    flags: dict = field(default_factory=dict)


@dataclass
class CurveChart:
    """One-dimensional component data in a chart (s_{l+}, s_{l-}).

    chart l places the two chart variables at positions l+ and l- and the
    eliminated trace at position l; lam, s_chart and t2 are rational
    functions of the chart variables.  Diagonal descriptions (the all-equal
    singular curve, and the fully degenerate regular case) use the same
    container with curve = s_{l+} - s_{l-}.
    """

    chart: int
    var_plus: str
    var_minus: str
    curve: Poly
    lam: RationalFn
    s_chart: RationalFn
    t2: RationalFn
    t2_alt: RationalFn | None = None
    pivot: Poly | None = None
    removed_factors: list = field(default_factory=list)

    def place(self, sp, sm, sl):
        slot = {self.chart: sl, JPLUS[self.chart]: sp, JMINUS[self.chart]: sm}
        return (slot[1], slot[2], slot[3])


@dataclass
class ConicData:
    s_values: tuple[complex, complex, complex]
    s_info: tuple  # per twist position: dict(value, is_root, minpoly, label, h, n)
    generic_poly: Poly  # kappa - delta in (t, tau, s1, s2, s3)
    delta: complex
    sigma: tuple[complex, complex, complex]


@dataclass
class VarietyComponent:
    kind: str  # X0_1, X0_2, X1, X2_conic, X3_sin, X3_reg
    component_id: str
    params: PretzelParams
    points: list[VerifiedPoint] = field(default_factory=list)
    rejected: list[VerifiedPoint] = field(default_factory=list)
    conic: ConicData | None = None
    curve: CurveChart | None = None
    valid: bool = True
    notes: list[str] = field(default_factory=list)

    def is_one_dimensional(self) -> bool:
        return self.curve is not None or self.conic is not None


@dataclass
class SampleResult:
    component_id: str
    points: list[VerifiedPoint]
    rejected: list[VerifiedPoint]
    skipped: list[str]

    def max_residual(self) -> float:
        return max((vp.residual for vp in self.points), default=0.0)


# ------------------------------------------------------------------ the oracle


def verify_point(params: PretzelParams, point: CharPoint, tol: float = RELATION_TOL) -> VerifiedPoint:
    """Reconstruct matrices from trace coordinates and measure the relations.

    The single gate every builder output passes through: five-tuple from the
    coordinates, triple reconstruction (irreducible anchor), then the defect
    of A_1 = A_2 = A_3.
    """
    flags = {"character_residual": point.character_residual()}
    ft = five_tuple_from_charpoint(point)
    try:
        X1, X2, X3 = slc2.reconstruct(ft)
    except ReconstructionError as exc:
        return VerifiedPoint(
            point, None, float("inf"), False, reason=f"reconstruction: {exc}", flags=flags
        )
    rep = Rep(X1=X1, X2=X2, X3=X3, params=params)
    residual = verify_relations(rep)
    ok = residual <= tol and flags["character_residual"] <= tol
    reason = "" if ok else f"relation residual {residual:.3e}"
    return VerifiedPoint(point, rep, residual, ok, reason=reason, flags=flags)


def _dedup(points):
    seen = {}
    for p in points:
        seen.setdefault(p.key(), p)
    return list(seen.values())


# ------------------------------------------------------------------ X0


def build_x0(params: PretzelParams, tol: float = RELATION_TOL) -> list[VarietyComponent]:
    """Isolated characters with meridian trace zero.

    Two families: gamma_j = -beta_j for all j with tau^2 = delta nonzero, and
    the delta = 0 family cut out by matching cosines of rescaled angles.  The
    matching condition has two competing wordings (multiplier 2k_j+1 with
    common value != -1, versus k_j+1 with value != +-1); both are enumerated
    and flagged, and only oracle-verified points are emitted.
    """
    comp1 = VarietyComponent(kind="X0_1", component_id="X0_1", params=params)
    root_sets = [gamma_eq_minus_beta_roots(params.twist(j)) for j in (1, 2, 3)]
    for combo in product(*(rs.roots for rs in root_sets)):
        s = tuple(r.value for r in combo)
        point0 = CharPoint(0.0, s[0], s[1], s[2], 0.0)
        d = point0.delta()
        if abs(d) <= 1e-10:
            comp1.notes.append(f"candidate s={_fmt(s)} has delta = 0; deferred to X0_2")
            continue
        for root in _both_sqrt(d):
            vp = verify_point(params, CharPoint(0.0, s[0], s[1], s[2], root), tol)
            (comp1.points if vp.ok else comp1.rejected).append(vp)
    comp1.points = _vp_dedup(comp1.points)

    comp2 = VarietyComponent(kind="X0_2", component_id="X0_2", params=params)
    outcomes = {}
    for reading, multipliers, forbidden in (
        ("theorem", [abs(2 * params.twist(j) + 1) for j in (1, 2, 3)], ("minus_one",)),
        ("prop", [abs(params.twist(j) + 1) for j in (1, 2, 3)], ("minus_one", "plus_one")),
    ):
        cand = _cosine_matched_angles(multipliers, forbidden)
        emitted, rejected = [], []
        for q1, q2, q3 in cand:
            s = tuple(2 * math.cos(math.pi * float(q)) for q in (q1, q2, q3))
            point = CharPoint(0.0, s[0], s[1], s[2], 0.0)
            if abs(point.delta()) > 1e-9:
                continue  # the angle lattice guarantees delta = 0; guard anyway
            vp = verify_point(params, point, tol)
            vp.flags["reading"] = reading
            vp.flags["angles_over_pi"] = (str(q1), str(q2), str(q3))
            (emitted if vp.ok else rejected).append(vp)
        outcomes[reading] = {"verified": _vp_dedup(emitted), "rejected": rejected}
    merged = _vp_dedup(outcomes["theorem"]["verified"] + outcomes["prop"]["verified"])
    only_theorem = _vp_key_set(outcomes["theorem"]["verified"]) - _vp_key_set(
        outcomes["prop"]["verified"]
    )
    only_prop = _vp_key_set(outcomes["prop"]["verified"]) - _vp_key_set(
        outcomes["theorem"]["verified"]
    )
    comp2.points = merged
    comp2.rejected = outcomes["theorem"]["rejected"] + outcomes["prop"]["rejected"]
    comp2.notes.append(
        "X0_2 wording comparison: theorem(2k+1, != -1) verified "
        f"{len(outcomes['theorem']['verified'])}, prop(k+1, != +-1) verified "
        f"{len(outcomes['prop']['verified'])}; only-theorem {len(only_theorem)}, "
        f"only-prop {len(only_prop)}"
    )
    return [comp1, comp2]


def _cosine_matched_angles(multipliers, forbidden):
    """Rational angle triples (theta_j = pi q_j) with matched scaled cosines.

    Solves m1 q1 = +-m2 q2 + 2a, m2 q2 = +-m3 (e1 q1 + e2 q2) + 2b over the
    integer lattice, with q3 = e1 q1 + e2 q2 enforcing delta = 0.  The
    forbidden set rejects common cosine value -1 (and +1 when asked), which
    is decidable exactly for rational angles.
    """
    m1, m2, m3 = multipliers
    results = []
    seen = set()
    if m1 == 0 or m2 == 0 or m3 == 0:
        # a zero multiplier makes its cosine identically 1; matching then
        # forces value 1, which every forbidden set rejects
        return results
    bound_a = m1 + m2 + 1
    bound_b = m2 + 2 * m3 + 1
    for sa in (1, -1):
        for sb in (1, -1):
            for e1 in (1, -1):
                for e2 in (1, -1):
                    det = m1 * (m2 - sb * m3 * e2) - (-sa * m2) * (sb * m3 * e1)
                    if det == 0:
                        continue
                    for a in range(-bound_a, bound_a + 1):
                        for b in range(-bound_b, bound_b + 1):
                            q1 = Fraction((m2 - sb * m3 * e2) * 2 * a + sa * m2 * 2 * b, det)
                            q2 = Fraction(m1 * 2 * b + sb * m3 * e1 * 2 * a, det)
                            q1 %= 2
                            q2 %= 2
                            q3 = (e1 * q1 + e2 * q2) % 2
                            # common cosine value from the scaled angle, exactly
                            scaled = (m1 * q1) % 2
                            if scaled == 1 and "minus_one" in forbidden:
                                continue
                            if scaled == 0 and "plus_one" in forbidden:
                                continue
                            key = tuple(sorted((q1, q2, q3)))
                            full_key = (q1, q2, q3)
                            if full_key in seen:
                                continue
                            seen.add(full_key)
                            # require genuine matching for all three (guard
                            # against lattice solutions that drifted mod 2)
                            c1 = math.cos(math.pi * float(m1 * q1))
                            c2 = math.cos(math.pi * float(m2 * q2))
                            c3 = math.cos(math.pi * float(m3 * q3))
                            if abs(c1 - c2) > 1e-9 or abs(c2 - c3) > 1e-9:
                                continue
                            results.append((q1, q2, q3))
    return results


# ------------------------------------------------------------------ X1


def build_x1(params: PretzelParams, tol: float = RELATION_TOL) -> VarietyComponent:
    """Isolated points where one product X_{l+} X_{l-} is the identity.

    For each strand l, both neighbours must satisfy gamma = beta, and
    t^2 = s_l + 2 = s_{l+} + s_{l-} must land in the open interval (0, 4);
    the triple trace is then forced to t, i.e. tau = t^3.
    """
    comp = VarietyComponent(kind="X1", component_id="X1", params=params)
    for ell in (1, 2, 3):
        rs_p = gamma_eq_beta_roots(params.twist(JPLUS[ell]))
        rs_m = gamma_eq_beta_roots(params.twist(JMINUS[ell]))
        for rp, rm in product(rs_p.roots, rs_m.roots):
            total = rp.value + rm.value
            if not (0.0 + 1e-12 < total < 4.0 - 1e-12):
                if abs(total) < 1e-12 or abs(total - 4) < 1e-12:
                    comp.notes.append(
                        f"l={ell}: boundary sum {total:.3f} excluded (open interval)"
                    )
                continue
            for sign in (1, -1):
                t = sign * math.sqrt(total)
                sl = total - 2
                slot = {ell: sl, JPLUS[ell]: rp.value, JMINUS[ell]: rm.value}
                point = CharPoint(t, slot[1], slot[2], slot[3], t**3)
                vp = verify_point(params, point, tol)
                vp.flags["chart"] = ell
                (comp.points if vp.ok else comp.rejected).append(vp)
    comp.points = _vp_dedup(comp.points)
    return comp


# ------------------------------------------------------------------ X2


def conic_generic_poly() -> Poly:
    """kappa - delta as an exact polynomial in (t, tau, s1, s2, s3)."""
    t, tau = Poly.variable("t"), Poly.variable("tau")
    s1, s2, s3 = (Poly.variable(n) for n in ("s1", "s2", "s3"))
    sigma1 = s1 + s2 + s3
    sigma2 = s1 * s2 + s2 * s3 + s3 * s1
    sigma3 = s1 * s2 * s3
    delta = 4 + sigma3 + 2 * sigma2 - sigma1**2
    return tau**2 - t * (sigma1 + 2) * tau + t**2 * (sigma2 + 4) - delta


def build_x2(params: PretzelParams) -> list[VarietyComponent]:
    """One conic per triple of candidate twist traces.

    Candidates come from the closed-form cosine list {2cos((2h+1)pi/n_j)},
    h = 0..(n_j-1)/2, n_j = |2k_j+1|, including the flagged h with angle pi
    (trace -2) at which the defining polynomial gamma = beta does not vanish.
    Conics containing a flagged trace are emitted with valid=False; sampling
    settles empirically whether they carry characters.
    """
    generic = conic_generic_poly()
    rsets = [gamma_eq_beta_roots(params.twist(j)) for j in (1, 2, 3)]
    comps = []
    for idx in product(*(range(len(rs.candidates)) for rs in rsets)):
        infos = []
        values = []
        all_valid = True
        for j, i in enumerate(idx):
            cand = rsets[j].candidates[i]
            valid_before = sum(1 for c in rsets[j].candidates[:i] if c.is_root)
            root = rsets[j].roots[valid_before] if cand.is_root else None
            infos.append(
                {
                    "value": cand.value,
                    "is_root": cand.is_root,
                    "h": cand.h,
                    "n": cand.n,
                    "minpoly": root.minpoly if root else None,
                    "label": root.label_text() if root else "2cos(pi) = -2",
                }
            )
            values.append(cand.value)
            all_valid = all_valid and cand.is_root
        point0 = CharPoint(0.0, values[0], values[1], values[2], 0.0)
        conic = ConicData(
            s_values=tuple(values),
            s_info=tuple(infos),
            generic_poly=generic,
            delta=point0.delta(),
            sigma=point0.sigma(),
        )
        comp = VarietyComponent(
            kind="X2_conic",
            component_id="X2[" + ",".join(str(i) for i in idx) + "]",
            params=params,
            conic=conic,
            valid=all_valid,
        )
        if not all_valid:
            comp.notes.append(
                "contains the flagged trace -2 (angle pi), where gamma = beta fails"
            )
        comps.append(comp)
    return comps


def x2_component_count(params: PretzelParams) -> int:
    """Number of emitted conics: (n_j + 1)/2 per strand, n_j = |2 k_j + 1|.

    For nonnegative twists this is the classification's (k1+1)(k2+1)(k3+1);
    for negative twists the mirrored count via |2k+1| is the convention here.
    """
    return math.prod((abs(2 * params.twist(j) + 1) + 1) // 2 for j in (1, 2, 3))


# ------------------------------------------------------------------ X3 singular


def build_x3_singular(params: PretzelParams, tol: float = RELATION_TOL) -> VarietyComponent:
    """The all-equal-traces slice of the main curve.

    The pairwise parallelism of the (beta_j, gamma_j) vectors forces
    s1 = s2 = s3 = v + 1/v with v^(2 gcd(k1-k2, k2-k3)) = 1.  With unequal
    twists this is a finite trace list; with k1 = k2 = k3 it is a curve
    (two branches, one per sign of t), emitted in diagonal chart form.
    """
    comp = VarietyComponent(kind="X3_sin", component_id="X3_sin", params=params)
    k1, k2, k3 = params.k1, params.k2, params.k3
    g = math.gcd(abs(k1 - k2), abs(k2 - k3))
    if g == 0:
        comp.curve = _diagonal_chart(params)
        comp.notes.append("k1 = k2 = k3: singular part is a curve (both t-signs)")
        return comp
    for m in range(0, g + 1):
        s = 2 * math.cos(math.pi * m / g)
        if abs(s - 2) < 1e-12:
            comp.notes.append("v = 1 (s = 2) excluded: all twist traces would equal 2")
            continue
        flags = {}
        if abs(s + 2) < 1e-12:
            flags["branch_anomaly"] = (
                "v = -1: parallelism fails at the degenerate eigenvalue branch"
            )
        pts = _solve_singular_candidate(params, s, flags)
        for vp in pts:
            (comp.points if vp.ok else comp.rejected).append(vp)
    comp.points = _vp_dedup(comp.points)
    return comp


def _solve_singular_candidate(params: PretzelParams, s: float, flags: dict):
    """Solve the curve equations for lambda and t at a fixed common trace s."""
    out = []
    lam = None
    residuals = []
    for j in (1, 2, 3):
        k = params.twist(j)
        b, gmm = omega_eval(k, s), omega_eval(k + 1, s)
        if abs(gmm + b) > 1e-12 and lam is None:
            lam = ((2 + s) * gmm + 2 * s * b) / (gmm + b)
    if lam is None:
        out.append(
            VerifiedPoint(
                CharPoint(0.0, s, s, s, 0.0),
                None,
                float("inf"),
                False,
                reason="gamma_j + beta_j = 0 for all j: no lambda solves the system",
                flags=flags,
            )
        )
        return out
    for j in (1, 2, 3):
        k = params.twist(j)
        b, gmm = omega_eval(k, s), omega_eval(k + 1, s)
        residuals.append(abs((lam - 2 - s) * gmm - (2 * s - lam) * b))
    if max(residuals) > 1e-8:
        out.append(
            VerifiedPoint(
                CharPoint(0.0, s, s, s, 0.0),
                None,
                float("inf"),
                False,
                reason=f"inconsistent equations at s={s:.6f} (residual {max(residuals):.2e})",
                flags=flags,
            )
        )
        return out
    sigma1, sigma2, sigma3 = 3 * s, 3 * s * s, s**3
    delta = 4 + sigma3 + 2 * sigma2 - sigma1**2
    den = lam**2 - (sigma1 + 2) * lam + sigma2 + 4
    if abs(den) < 1e-12:
        out.append(
            VerifiedPoint(
                CharPoint(0.0, s, s, s, 0.0),
                None,
                float("inf"),
                False,
                reason="t^2 denominator vanishes: no finite meridian trace",
                flags=flags,
            )
        )
        return out
    t2 = delta / den
    if abs(t2) < 1e-12 or abs(sigma1 + 2 - 2 * lam) < 1e-12:
        out.append(
            VerifiedPoint(
                CharPoint(0.0, s, s, s, 0.0),
                None,
                float("inf"),
                False,
                reason="side condition violated (t = 0 or sigma1 + 2 = 2 lambda)",
                flags=flags,
            )
        )
        return out
    for t in _both_sqrt(t2):
        point = CharPoint(t, s, s, s, t * lam)
        vp = verify_point(params, point)
        vp.flags.update(flags)
        out.append(vp)
    return out


# ------------------------------------------------------------------ X3 regular


def _omega_pair_polys(k: int, var: str):
    beta = omega_poly(k).rename({"t": var}) if k != 0 else Poly.zero()
    gamma = omega_poly(k + 1).rename({"t": var}) if k + 1 != 0 else Poly.zero()
    return beta, gamma


def chart_pivot(params: PretzelParams, ell: int):
    """gamma_{l-} beta_{l+} - gamma_{l+} beta_{l-} as a two-variable polynomial."""
    vp, vm = f"s{JPLUS[ell]}", f"s{JMINUS[ell]}"
    bp, gp = _omega_pair_polys(params.twist(JPLUS[ell]), vp)
    bm, gm = _omega_pair_polys(params.twist(JMINUS[ell]), vm)
    return gm * bp - gp * bm, (vp, vm, bp, gp, bm, gm)


def build_x3_regular(
    params: PretzelParams, chart: int | None = None, tol: float = RELATION_TOL
) -> VarietyComponent:
    """The main curve, as one polynomial equation in a chart (s_{l+}, s_{l-}).

    Solving the neighbour relations linearly for lambda and s_l and feeding
    them into the remaining relation for j = l gives the chart equation.
    Branches lying inside the chart's own degeneracy loci (vanishing pivot,
    t = 0, sigma1 + 2 = 2 lambda) are divided out and recorded.  When every
    pivot is identically zero (twists all 0 or all -1) the relations force
    equal traces and an explicit lambda, and the curve collapses to the
    diagonal; that diagonal chart is returned instead.
    """
    charts = [chart] if chart is not None else [1, 2, 3]
    built = []
    for ell in charts:
        data = _build_chart(params, ell)
        if data is not None:
            built.append(data)
    comp = VarietyComponent(kind="X3_reg", component_id="X3_reg", params=params)
    if not built:
        diag = _degenerate_diagonal_chart(params)
        if diag is None:
            raise ValueError("no regular chart")
        comp.curve = diag
        comp.notes.append(
            "all chart pivots vanish identically; relations force equal traces "
            "(diagonal chart substituted)"
        )
        return comp
    built.sort(key=lambda c: (c.curve.total_degree(), c.chart))
    comp.curve = built[0]
    comp.notes.append(f"chart l={built[0].chart} selected (minimal curve degree)")
    return comp


def x3_regular_all_charts(params: PretzelParams):
    """Every nondegenerate chart, for cross-validation."""
    out = []
    for ell in (1, 2, 3):
        data = _build_chart(params, ell)
        if data is not None:
            out.append(data)
    return out


def _build_chart(params: PretzelParams, ell: int) -> CurveChart | None:
    pivot, (vp, vm, bp, gp, bm, gm) = chart_pivot(params, ell)
    if pivot.is_zero():
        return None
    sp = RationalFn.from_poly(Poly.variable(vp))
    sm = RationalFn.from_poly(Poly.variable(vm))
    piv = RationalFn.from_poly(pivot)
    bp_, gp_, bm_, gm_ = (RationalFn.from_poly(q) for q in (bp, gp, bm, gm))
    lam = 2 + (sm * (gm_ * bp_ - bp_ * bm_) - sp * (gp_ * bm_ - bp_ * bm_)) / piv
    s_chart = 2 + (sm - sp) * (gp_ * gm_ - bp_ * bm_) / piv
    kl = params.twist(ell)
    beta_l = omega_compose(kl, s_chart)
    gamma_l = omega_compose(kl + 1, s_chart)
    sigma1 = sp + sm + s_chart
    equation = (lam - 2 - s_chart) * gamma_l - (sigma1 - s_chart - lam) * beta_l
    if equation.is_zero():
        return None
    curve = equation.num.primitive()
    main_var = vp if curve.degree(vp) > 0 else vm
    curve = squarefree_primitive(curve, main_var)
    removed = []
    # excluded loci: chart pivot, t = 0, sigma1 + 2 - 2 lambda = 0
    t2 = _chart_t2(sp, sm, bp_, gp_, bm_, gm_)
    side = sigma1 + 2 - 2 * lam
    for locus, why in ((pivot, "chart pivot"), (t2.num, "t = 0"), (side.num, "sigma1+2-2lambda = 0")):
        if locus.is_zero() or locus.is_constant():
            continue
        while True:
            g = gcd(curve, locus)
            if g.is_constant():
                break
            curve = divexact(curve, g).primitive()
            removed.append((g, why))
            if curve.is_constant():
                return None
    t2_alt = _chart_t2_alt(lam, s_chart, sp, sm)
    return CurveChart(
        chart=ell,
        var_plus=vp,
        var_minus=vm,
        curve=curve.primitive(),
        lam=lam,
        s_chart=s_chart,
        t2=t2,
        t2_alt=t2_alt,
        pivot=pivot,
        removed_factors=removed,
    )


def _chart_t2(sp, sm, bp, gp, bm, gm):
    """t^2 as the quotient of shifted squared differences (trace identity)."""
    dp = (gp - bp) * (gp - bp)
    dm = (gm - bm) * (gm - bm)
    return ((sp + 2) * dp - (sm + 2) * dm) / (dp - dm)


def _chart_t2_alt(lam, s_chart, sp, sm):
    """t^2 through the membership equation, for samples where (24) degenerates."""
    sigma1 = sp + sm + s_chart
    sigma2 = sp * sm + (sp + sm) * s_chart
    sigma3 = sp * sm * s_chart
    delta = 4 + sigma3 + 2 * sigma2 - sigma1 * sigma1
    den = lam * lam - (sigma1 + 2) * lam + sigma2 + 4
    if den.is_zero():
        return None
    return delta / den


def _diagonal_chart(params: PretzelParams) -> CurveChart:
    """All-equal-traces curve: lambda = ((2+s) gamma + 2 s beta)/(gamma + beta)."""
    k = params.k1
    s = RationalFn.from_poly(Poly.variable("s1"))
    beta = omega_compose(k, s)
    gamma = omega_compose(k + 1, s)
    lam = ((2 + s) * gamma + 2 * s * beta) / (gamma + beta)
    sigma1, sigma2, sigma3 = 3 * s, 3 * s * s, s * s * s
    delta = 4 + sigma3 + 2 * sigma2 - sigma1 * sigma1
    den = lam * lam - (sigma1 + 2) * lam + sigma2 + 4
    t2 = delta / den
    return CurveChart(
        chart=3,
        var_plus="s1",
        var_minus="s2",
        curve=(Poly.variable("s1") - Poly.variable("s2")).primitive(),
        lam=lam,
        s_chart=s,
        t2=t2,
        t2_alt=None,
        pivot=None,
    )


def _degenerate_diagonal_chart(params: PretzelParams) -> CurveChart | None:
    """Collapsed chart for twists all 0 (lambda = 2 + s) or all -1 (lambda = 2s)."""
    k = params.k1
    if not (params.k1 == params.k2 == params.k3 and k in (0, -1)):
        return None
    s = RationalFn.from_poly(Poly.variable("s1"))
    lam = s + 2 if k == 0 else 2 * s
    sigma1, sigma2, sigma3 = 3 * s, 3 * s * s, s * s * s
    delta = 4 + sigma3 + 2 * sigma2 - sigma1 * sigma1
    den = lam * lam - (sigma1 + 2) * lam + sigma2 + 4
    t2 = delta / den
    return CurveChart(
        chart=3,
        var_plus="s1",
        var_minus="s2",
        curve=(Poly.variable("s1") - Poly.variable("s2")).primitive(),
        lam=lam,
        s_chart=s,
        t2=t2,
        t2_alt=None,
        pivot=None,
    )


# ------------------------------------------------------------------ sampling


def _both_sqrt(z):
    r = cmath.sqrt(complex(z))
    return (r, -r) if abs(r) > 0 else (r,)


def _fmt(values):
    return "(" + ", ".join(f"{complex(v):.6g}" for v in values) + ")"


def _vp_dedup(vps):
    seen = {}
    for vp in vps:
        seen.setdefault(vp.point.key(), vp)
    return list(seen.values())


def _vp_key_set(vps):
    return {vp.point.key() for vp in vps}


def _rational_slices(rng: random.Random, lo=-3, hi=3):
    while True:
        num = rng.randint(lo * 12, hi * 12)
        den = rng.randint(3, 12)
        yield Fraction(num, den)


def sample_component(
    component: VarietyComponent,
    n: int,
    seed: int = 0,
    tol: float = RELATION_TOL,
) -> SampleResult:
    """Deterministic-under-seed verified samples of one component.

    Finite components return their stored points (all of them).  Conics are
    sliced at random rational meridian traces, curves at random rational
    chart values; every sampled point goes through the reconstruction
    oracle, and points that fail side conditions or verification are
    reported in the rejected/skipped lists rather than dropped.
    """
    rng = random.Random((seed, component.component_id).__repr__())
    if component.conic is not None:
        return _sample_conic(component, n, rng, tol)
    if component.curve is not None:
        return _sample_curve(component, n, rng, tol)
    points = list(component.points)
    return SampleResult(
        component.component_id,
        points=points,
        rejected=list(component.rejected),
        skipped=[] if points or component.rejected else ["component is empty"],
    )


def _sample_conic(component, n, rng, tol):
    conic = component.conic
    s1, s2, s3 = conic.s_values
    sigma1, sigma2, _ = conic.sigma
    points, rejected, skipped = [], [], []
    slices = _rational_slices(rng)
    attempts = 0
    while len(points) < n and attempts < 40 * max(n, 1):
        if attempts >= 25 and not points:
            skipped.append(
                f"no verified point in {attempts} slices; component carries no characters"
            )
            break
        attempts += 1
        t0 = float(next(slices))
        if abs(t0) < 0.15 or abs(abs(t0) - 2.0) < 0.1:
            continue
        bq = -t0 * (sigma1 + 2)
        cq = t0 * t0 * (sigma2 + 4) - conic.delta
        disc = cmath.sqrt(bq * bq - 4 * cq)
        for tau in ((-bq + disc) / 2, (-bq - disc) / 2):
            if len(points) >= n:
                break
            vp = verify_point(component.params, CharPoint(t0, s1, s2, s3, tau), tol)
            vp.flags["slice_t"] = t0
            if vp.ok:
                points.append(vp)
            else:
                rejected.append(vp)
    if len(points) < n:
        skipped.append(f"collected {len(points)} of {n} requested verified points")
    return SampleResult(component.component_id, points, rejected, skipped)


def _sample_curve(component, n, rng, tol):
    chart = component.curve
    points, rejected, skipped = [], [], []
    slices = _rational_slices(rng)
    attempts = 0
    while len(points) < n and attempts < 60 * max(n, 1):
        if attempts >= 30 and not points:
            skipped.append(
                f"no verified point in {attempts} slices; component carries no characters"
            )
            break
        attempts += 1
        sp0 = next(slices)
        sliced = chart.curve.subs_value(chart.var_plus, sp0)
        if sliced.is_zero() or chart.var_minus not in sliced.vars:
            skipped.append(f"slice {sp0} degenerate")
            continue
        if sliced.degree(chart.var_minus) < 1:
            skipped.append(f"slice {sp0} has no roots")
            continue
        for sm0 in roots_double(sliced):
            if len(points) >= n:
                break
            vals = {chart.var_plus: complex(sp0), chart.var_minus: sm0}
            if chart.pivot is not None:
                pv = complex(chart.pivot.evaluate(vals))
                if abs(pv) < 1e-8:
                    skipped.append(f"chart-degenerate sample at {_fmt(vals.values())}")
                    continue
            try:
                lam = complex(chart.lam.evaluate(vals))
                sl = complex(chart.s_chart.evaluate(vals))
            except ZeroDivisionError:
                skipped.append(f"pole of chart functions at slice {sp0}")
                continue
            t2 = _eval_t2(chart, vals)
            if t2 is None:
                skipped.append(f"t^2 undefined at slice {sp0}")
                continue
            svals = chart.place(complex(sp0), sm0, sl)
            sigma1 = sum(svals)
            if abs(t2) < 1e-10:
                skipped.append("side condition t = 0 at a sample (excluded locus)")
                continue
            if abs(sigma1 + 2 - 2 * lam) < 1e-10:
                skipped.append("side condition sigma1 + 2 = 2 lambda at a sample")
                continue
            for t in _both_sqrt(t2):
                if len(points) >= n:
                    break
                point = CharPoint(t, svals[0], svals[1], svals[2], t * lam)
                vp = verify_point(component.params, point, tol)
                vp.flags["slice"] = str(sp0)
                if vp.ok:
                    points.append(vp)
                else:
                    rejected.append(vp)
    if len(points) < n:
        skipped.append(f"collected {len(points)} of {n} requested verified points")
    return SampleResult(component.component_id, points, rejected, skipped)


def _eval_t2(chart: CurveChart, vals):
    try:
        return complex(chart.t2.evaluate(vals))
    except ZeroDivisionError:
        pass
    if chart.t2_alt is not None:
        try:
            return complex(chart.t2_alt.evaluate(vals))
        except ZeroDivisionError:
            return None
    return None


# ------------------------------------------------------------------ assembly


def build_all(params: PretzelParams, tol: float = RELATION_TOL) -> list[VarietyComponent]:
    """Every component of the irreducible character variety, oracle-checked."""
    comps = []
    comps.extend(build_x0(params, tol))
    comps.append(build_x1(params, tol))
    comps.extend(build_x2(params))
    sin = build_x3_singular(params, tol)
    try:
        reg = build_x3_regular(params, tol=tol)
    except ValueError as exc:
        reg = VarietyComponent(kind="X3_reg", component_id="X3_reg", params=params, valid=False)
        reg.notes.append(str(exc))
    if (
        sin.curve is not None
        and reg.curve is not None
        and sin.curve.curve == reg.curve.curve
        and sin.curve.lam == reg.curve.lam
    ):
        # fully degenerate twists: the whole curve is singular-type and the
        # regular builder already returned it; avoid double emission
        sin = VarietyComponent(kind="X3_sin", component_id="X3_sin", params=params)
        sin.notes.append("entire curve is singular-type; carried by X3_reg (diagonal chart)")
    comps.append(sin)
    comps.append(reg)
    return comps
