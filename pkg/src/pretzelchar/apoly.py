"""A-polynomial factors of odd pretzel knots by resultant elimination.

The meridian is x1; for a representation with the meridian and its longitude
both upper triangular, u and w denote their upper-left entries.  The hard
factor carried by the main curve is cut out by eliminating (s1, s2, s3,
lambda) from the polynomial system

    (lam - 2 - s_j) gamma_j = (sigma1 - s_j - lam) beta_j      (j = 1, 2, 3)
    t^2 (lam^2 - (sigma1+2) lam + sigma2 + 4) = delta          (membership)
    (1+w)(u + 1/u)(sigma1 + 2 - 2 lam)
        = (1-w)(u - 1/u)(sigma1 + 2 - 2 t^2)                   (longitude)

with t = u + 1/u; the Laurent clearings (u^2 for the membership equation,
u^3 for the longitude equation) are recorded so the spurious u = 0 root can
be discarded downstream.  Resultant chains provably introduce extraneous
factors, so every candidate factor is tested against verified-by-
reconstruction (u, w) samples of its source component and discards are
recorded with evidence.

Conic components have all three twist traces constant, and their factor
comes from the longitude-trace relation
    q (u^2 + w) = (1 + w)(u^2 + 1) T(lam)
(q the trace of the word B3, T the reduced trace of X2 B3^{-1}) joined with
the membership equation; lambda and then any irrational twist traces are
eliminated by resultants against their defining polynomials.  On every
conic the longitude turns out to act trivially (w = 1 at all verified
samples), so these factors all reduce to w - 1; they are still derived by
elimination and then validated, never asserted.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from . import variety as _variety
from .exactpoly import (
    Poly,
    RationalFn,
    divexact,
    gcd,
    resultant,
    squarefree_decomposition,
    squarefree_primitive,
    try_divexact,
)
from .slc2 import CentralMeridianError, compute_operators, normalize_upper
from .tracecheb import omega_eval, omega_poly
from .variety import (
    CharPoint,
    PretzelParams,
    VarietyComponent,
    build_all,
    sample_component,
)

DEFAULT_ORDER = ("s3", "s2", "s1", "lam")


class DegenerateEliminationError(RuntimeError):
    pass


class EliminationLostCurveError(RuntimeError):
    pass


@dataclass
class EliminationSystem:
    equations: list
    elimination_order: tuple
    multipliers: dict
    params: PretzelParams


@dataclass
class UWSample:
    point: CharPoint
    u: complex
    w: complex
    lam: complex
    source: str

    def sigma1(self):
        return sum(self.point.svals())

    def t2(self):
        return self.point.t**2


@dataclass
class APolyFactor:
    poly: Poly
    source: str
    filtered: list = field(default_factory=list)
    vanish_fraction: float = 1.0
    max_relative_value: float = 0.0
    n_samples: int = 0
    symmetric: bool = True
    empty: bool = False
    note: str = ""


# ------------------------------------------------------------------ system assembly


def _sigma_polys():
    s1, s2, s3 = (Poly.variable(n) for n in ("s1", "s2", "s3"))
    return (
        s1 + s2 + s3,
        s1 * s2 + s2 * s3 + s3 * s1,
        s1 * s2 * s3,
    )


def _beta_gamma(k: int, var: str):
    beta = omega_poly(k).rename({"t": var}) if k != 0 else Poly.zero()
    gamma = omega_poly(k + 1).rename({"t": var}) if k + 1 != 0 else Poly.zero()
    return beta, gamma


def relation_equation(params: PretzelParams, j: int) -> Poly:
    """(lam - 2 - s_j) gamma_j - (sigma1 - s_j - lam) beta_j, all polynomial."""
    lam = Poly.variable("lam")
    sj = Poly.variable(f"s{j}")
    sigma1 = _sigma_polys()[0]
    beta, gamma = _beta_gamma(params.twist(j), f"s{j}")
    return (lam - 2 - sj) * gamma - (sigma1 - sj - lam) * beta


def membership_equation() -> Poly:
    """t^2(lam^2 - (sigma1+2) lam + sigma2 + 4) = delta, cleared by u^2."""
    lam, u = Poly.variable("lam"), Poly.variable("u")
    sigma1, sigma2, sigma3 = _sigma_polys()
    delta = 4 + sigma3 + 2 * sigma2 - sigma1**2
    t2u2 = (u**2 + 1) ** 2
    return t2u2 * (lam**2 - (sigma1 + 2) * lam + sigma2 + 4) - u**2 * delta


def longitude_equation() -> Poly:
    """(1+w)(u+1/u)(sigma1+2-2 lam) = (1-w)(u-1/u)(sigma1+2-2t^2), times u^3."""
    lam, u, w = Poly.variable("lam"), Poly.variable("u"), Poly.variable("w")
    sigma1 = _sigma_polys()[0]
    lhs = (1 + w) * u**2 * (u**2 + 1) * (sigma1 + 2 - 2 * lam)
    rhs = (1 - w) * (u**2 - 1) * ((sigma1 + 2) * u**2 - 2 * (u**2 + 1) ** 2)
    return lhs - rhs


def build_system(params: PretzelParams) -> EliminationSystem:
    eqs = [relation_equation(params, j) for j in (1, 2, 3)]
    eqs.append(membership_equation())
    eqs.append(longitude_equation())
    return EliminationSystem(
        equations=eqs,
        elimination_order=DEFAULT_ORDER,
        multipliers={"membership": "u^2", "longitude": "u^3"},
        params=params,
    )


# ------------------------------------------------------------------ elimination


class OrderBudgetExceededError(DegenerateEliminationError):
    """Deterministic cost guard tripped; the caller retries another order."""


TERM_CAP = 3000
NODE_CAP = 24000

# factors provably disjoint from the main curve: u, w are eigenvalues (never
# zero), u = +-1 is the parabolic meridian the samplers avoid, and u^2 + 1
# is the t = 0 locus excluded by the side conditions
_PEELABLE = (
    Poly.variable("u"),
    Poly.variable("w"),
    Poly.variable("u") - 1,
    Poly.variable("u") + 1,
    Poly.variable("u") ** 2 + 1,
)


def _reduce_step(p: Poly, prefer_var: str | None, log=None) -> Poly:
    """Growth control between resultant steps.

    Rational content, monomial factors and a short dictionary of provably
    excluded loci are stripped; repeated factors are divided out when a
    cheap randomized probe reports their presence (the exact reduction runs
    in the cheapest variable).  Everything removed is recorded.
    """
    from .exactpoly import squarefree_probe

    p = p.primitive()
    for cand in _PEELABLE:
        count = 0
        while True:
            q = try_divexact(p, cand)
            if q is None:
                break
            p = q.primitive()
            count += 1
        if count and log is not None:
            log.append(f"peeled ({cand.to_text()})^{count}")
    if p.is_constant():
        return p
    var = min((v for v in p.vars if p.degree(v) > 0), key=lambda v: p.degree(v), default=None)
    if var is None:
        return p
    if prefer_var and 0 < p.degree(prefer_var) <= p.degree(var):
        var = prefer_var
    if squarefree_probe(p, var):
        return p
    # the exact reduction is a pseudo-remainder chain whose cost explodes with
    # size; past this deterministic threshold the repeated factors are kept
    # and the budget guards decide whether the order stays affordable
    if len(p.terms) > 220 and len(p.vars) > 2:
        if log is not None:
            log.append(f"squarefree reduction skipped at {len(p.terms)} terms")
        return p
    reduced = squarefree_primitive(p, var)
    if log is not None and reduced != p:
        log.append(f"squarefree reduction in {var}")
    return reduced


def _resultant_node_estimate(p: Poly, q: Poly, var: str) -> int:
    params = (set(p.vars) | set(q.vars)) - {var}
    est = 1
    for y in params:
        est *= p.degree(y) * q.degree(var) + q.degree(y) * p.degree(var) + 1
    return est


def _eliminate_pool(eqs, order, log, depth=0):
    """One branch of the elimination; returns a list of (u, w) constraints.

    A zero resultant means the pivot pair shares a factor g; the solution
    set splits as V(g) union V(pivot/g, e/g), and both branches are pursued
    (the union of their projections is reported as a product downstream).
    """
    eqs = [e for e in eqs if not e.is_zero() and not e.is_constant()]
    for i, var in enumerate(order):
        nxt = order[i + 1] if i + 1 < len(order) else "u"
        with_var = [e for e in eqs if e.degree(var) > 0]
        without = [e for e in eqs if e.degree(var) <= 0]
        if not with_var:
            continue
        if len(with_var) == 1:
            # a lone equation in this variable can always be solved for it:
            # it adds no constraint visible to the projection
            eqs = without
            continue
        pivot = min(with_var, key=lambda e: (e.degree(var), e.total_degree(), len(e.terms)))
        new = []
        for e in with_var:
            if e is pivot:
                continue
            if _resultant_node_estimate(pivot, e, var) > NODE_CAP:
                raise OrderBudgetExceededError(
                    f"resultant in {var} too large for this order"
                )
            r = resultant(pivot, e, var)
            if r.is_zero():
                if depth >= 6:
                    raise DegenerateEliminationError("branch splitting depth exhausted")
                g = gcd(pivot, e)
                if g.is_constant():
                    raise DegenerateEliminationError(
                        f"zero resultant without a shared factor in {var}"
                    )
                log.append(f"zero resultant in {var}: branching on shared factor")
                rest = [x for x in eqs if x is not pivot and x is not e]
                branch_shared = _eliminate_pool(
                    rest + [g], order[i:], log, depth + 1
                )
                branch_split = _eliminate_pool(
                    rest + [divexact(pivot, g).primitive(), divexact(e, g).primitive()],
                    order[i:],
                    log,
                    depth + 1,
                )
                return branch_shared + branch_split
            reduced = _reduce_step(r, nxt, log)
            if len(reduced.terms) > TERM_CAP:
                raise OrderBudgetExceededError(
                    f"intermediate of {len(reduced.terms)} terms exceeds the cap"
                )
            new.append(reduced)
        eqs = without + new
        uniq = []
        for e in eqs:
            if not e.is_constant() and not any(e == f for f in uniq):
                uniq.append(e)
        eqs = uniq
    final = [e for e in eqs if not e.is_constant()]
    if not final:
        # the branch imposed no condition visible in (u, w): vacuous
        return []
    out = final[0]
    for e in final[1:]:
        out = gcd(out, e)
    if out.is_constant():
        return []
    return [out.primitive()]


def _eliminate_once(equations, order, log=None):
    log = log if log is not None else []
    parts = _eliminate_pool([e.primitive() for e in equations], order, log)
    uniq = []
    for p in parts:
        p = p.primitive()
        if not any(p == q for q in uniq):
            uniq.append(p)
    out = Poly.const(1)
    for p in uniq:
        out = out * p
    if out.is_constant():
        raise DegenerateEliminationError(
            "every branch was vacuous: the order lost the projection"
        )
    return out.primitive()


def _order_preference(base):
    """The documented default first, then orders that postpone the blow-up.

    Eliminating lambda early is usually dramatically cheaper because every
    relation equation is linear in it; the full permutation list remains as
    the last resort.
    """
    base = tuple(base)
    rest = [v for v in base if v != "lam"]
    preferred = [base]
    if "lam" in base:
        preferred.append(("lam",) + tuple(rest))
        preferred.append(("lam",) + tuple(reversed(rest)))
    for perm in permutations(base):
        if perm not in preferred:
            preferred.append(perm)
    return preferred


def eliminate(system: EliminationSystem, order=None):
    """Project the system to (u, w) by successive resultants.

    Orders are tried in a deterministic sequence (the documented default
    first); an order is abandoned when a resultant degenerates beyond
    branch-splitting or when deterministic size guards report that it would
    blow up, and the next order takes over.  Returns the projected
    polynomial and the order that produced it.
    """
    tried = []
    orders = [tuple(order)] if order else _order_preference(system.elimination_order)
    last = None
    for perm in orders:
        log: list = []
        try:
            return _eliminate_once(system.equations, perm, log), perm
        except DegenerateEliminationError as exc:
            tried.append((perm, str(exc)))
            last = exc
    raise DegenerateEliminationError(
        f"all {len(tried)} elimination orders degenerate; last: {last}"
    )


# ------------------------------------------------------------------ verified samples


def _uw_from_verified(vp, source):
    rep2, u, w = normalize_upper(vp.rep)
    lam = vp.point.tau / vp.point.t
    return UWSample(point=vp.point, u=complex(u), w=complex(w), lam=complex(lam), source=source)


def x3_uw_samples(params: PretzelParams, n: int = 30, seed: int = 0, components=None):
    """Verified (u, w) samples from the one-dimensional main-curve parts.

    Returns {component_id: [UWSample]}; samples whose meridian is parabolic
    (u = +-1) are skipped since the eigenvalue chart degenerates there.
    """
    comps = components if components is not None else build_all(params)
    out = {}
    for comp in comps:
        if comp.kind not in ("X3_reg", "X3_sin") or comp.curve is None:
            continue
        got = []
        sr = sample_component(comp, 2 * n, seed=seed)
        for vp in sr.points:
            if len(got) >= n:
                break
            if abs(abs(complex(vp.point.t)) - 2) < 1e-6 or abs(complex(vp.point.t)) < 1e-8:
                continue
            try:
                got.append(_uw_from_verified(vp, comp.component_id))
            except CentralMeridianError:
                continue
        if got:
            out[comp.component_id] = got
    return out


def x2_uw_samples(component: VarietyComponent, n: int = 20, seed: int = 0):
    sr = sample_component(component, n, seed=seed)
    out = []
    for vp in sr.points:
        try:
            out.append(_uw_from_verified(vp, component.component_id))
        except CentralMeridianError:
            continue
    return out


# ------------------------------------------------------------------ identities on samples


def uw_identity_residual(sample: UWSample) -> float:
    """Defect of (1+w)(u+1/u)(sigma1+2-2 lam) = (1-w)(u-1/u)(sigma1+2-2 t^2)."""
    u, w = sample.u, sample.w
    sigma1 = sample.sigma1()
    lhs = (1 + w) * (u + 1 / u) * (sigma1 + 2 - 2 * sample.lam)
    rhs = (1 - w) * (u - 1 / u) * (sigma1 + 2 - 2 * sample.t2())
    return abs(lhs - rhs) / (1 + abs(lhs) + abs(rhs))


def q_theta_residual(sample: UWSample, rep) -> float:
    """tr(B3) against theta (sigma1 + 2 - 2 t^2) kappa / t^2 from traces."""
    ops = compute_operators(rep)
    q = ops.B[3].trace()
    p = sample.point
    k1 = rep.params.k1
    k2 = rep.params.k2
    b1, g1 = omega_eval(k1, p.s1), omega_eval(k1 + 1, p.s1)
    b2, g2 = omega_eval(k2, p.s2), omega_eval(k2 + 1, p.s2)
    lam = sample.lam
    denom = (lam - 2 - p.s1) * (lam - 2 - p.s2)
    if abs(denom) < 1e-12:
        return 0.0  # theta undefined on this slice; identity vacuous
    theta = (b1 * b2) / denom
    sigma1 = sample.sigma1()
    pred = theta * (sigma1 + 2 - 2 * p.t**2) * p.kappa() / p.t**2
    return abs(q - pred) / (1 + abs(q) + abs(pred))


# ------------------------------------------------------------------ factor filtering


KNOWN_LOCI = (
    (Poly.variable("u"), "clearing multiplier locus (u = 0)"),
    (Poly.variable("w"), "longitude eigenvalue zero (w = 0)"),
    (Poly.variable("u") ** 2 + 1, "meridian trace zero locus (t = 0)"),
    (Poly.variable("u") - 1, "parabolic meridian (u = 1)"),
    (Poly.variable("u") + 1, "parabolic meridian (u = -1)"),
)


def _relative_value(p: Poly, u: complex, w: complex) -> float:
    vals = {"u": u, "w": w}
    val = abs(complex(p.evaluate(vals)))
    scale = p.eval_scale(vals)
    return val / (1 + scale)


def _strip_monomial(p: Poly):
    """Remove u^a w^b content; returns (stripped, [(factor, exponent)])."""
    removed = []
    for name in ("u", "w"):
        if name not in p.vars:
            continue
        i = p.vars.index(name)
        low = min(e[i] for e in p.terms)
        if low > 0:
            terms = {e[:i] + (e[i] - low,) + e[i + 1 :]: c for e, c in p.terms.items()}
            p = Poly(p.vars, terms)
            removed.append((Poly.variable(name), low))
    return p, removed


def _candidate_factors(p: Poly, splitters=()):
    """Squarefree candidates of a bivariate eliminant, split by helper gcds."""
    cands = []
    work, monomials = _strip_monomial(p.primitive())
    for mono, mult in monomials:
        cands.append(mono)
    pieces = [f for f, _ in squarefree_decomposition(work, "u" if "u" in work.vars else work.vars[0])]
    for splitter in splitters:
        nxt = []
        for piece in pieces:
            g = gcd(piece, splitter)
            if g.is_constant() or g == piece.primitive():
                nxt.append(piece)
            else:
                nxt.append(g)
                rest = try_divexact(piece, g)
                if rest is not None and not rest.is_constant():
                    nxt.append(rest.primitive())
        pieces = nxt
    for locus, _ in KNOWN_LOCI:
        nxt = []
        for piece in pieces:
            changed = True
            while changed and not piece.is_constant():
                changed = False
                q = try_divexact(piece, locus)
                if q is not None:
                    if locus not in nxt:
                        nxt.append(locus)
                    piece = q.primitive()
                    changed = True
            if not piece.is_constant():
                nxt.append(piece)
        pieces = nxt
    for piece in pieces:
        if not piece.is_constant():
            cands.append(piece.primitive())
    uniq = []
    for c in cands:
        if not any(c == d for d in uniq):
            uniq.append(c)
    return uniq


def reversed_poly(p: Poly) -> Poly:
    """u^deg_u w^deg_w p(1/u, 1/w), primitive-normalized."""
    du = p.degree("u") if "u" in p.vars else 0
    dw = p.degree("w") if "w" in p.vars else 0
    terms = {}
    for e, c in p.terms.items():
        idx = dict(zip(p.vars, e))
        new = dict(idx)
        if "u" in p.vars:
            new["u"] = du - idx.get("u", 0)
        if "w" in p.vars:
            new["w"] = dw - idx.get("w", 0)
        terms[tuple(new[v] for v in p.vars)] = c
    return Poly(p.vars, terms).primitive()


def filter_extraneous(
    p: Poly,
    samples,
    source: str = "",
    splitters=(),
    tol: float = 1e-7,
    keep_fraction: float = 0.9,
):
    """Split an eliminant and keep the parts that vanish on verified samples.

    Requires samples spanning distinct meridian eigenvalues.  Candidates that
    sit inside a known excluded locus are discarded with that reason; the
    rest are judged by their vanishing fraction.  Raises when nothing
    survives, which always indicates an upstream construction bug.
    """
    if len({round(s.u.real, 8) for s in samples}) < min(5, len(samples)):
        raise ValueError("samples must span distinct meridian eigenvalues")
    known = {locus: why for locus, why in KNOWN_LOCI}
    retained = []
    discards = []
    for cand in _candidate_factors(p, splitters):
        why = known.get(cand)
        hits = sum(1 for s in samples if _relative_value(cand, s.u, s.w) <= tol)
        frac = hits / max(len(samples), 1)
        if frac >= keep_fraction:
            maxval = max(_relative_value(cand, s.u, s.w) for s in samples)
            factor = APolyFactor(
                poly=cand.primitive(),
                source=source,
                vanish_fraction=frac,
                max_relative_value=maxval,
                n_samples=len(samples),
                symmetric=_symmetry_flag(cand),
            )
            retained.append(factor)
        else:
            discards.append(
                {
                    "factor": cand.to_text(),
                    "reason": why or f"does not vanish on samples",
                    "vanish_fraction": frac,
                }
            )
    if not retained:
        raise EliminationLostCurveError(
            f"elimination lost the curve: no candidate factor vanishes on {source}"
        )
    for f in retained:
        f.filtered = discards
    return retained


def _symmetry_flag(p: Poly) -> bool:
    rev = reversed_poly(p)
    pp = p.primitive()
    return rev == pp or rev == (-1 * pp).primitive()


# ------------------------------------------------------------------ conic factors


def _conic_elimination_equations(params: PretzelParams):
    """E1 (longitude-trace relation) and the membership equation, symbolic.

    E1: q (u^2 + w) - (1 + w)(u^2 + 1) T with q = tr B3 and t T = tr(X2 B3^-1)
    expanded through the four-term form of B3; everything is polynomial in
    (s1, s2, s3, lam, u, w).
    """
    u, w, lam = Poly.variable("u"), Poly.variable("w"), Poly.variable("lam")
    s1, s2, s3 = (Poly.variable(n) for n in ("s1", "s2", "s3"))
    b1, g1 = _beta_gamma(params.k1, "s1")
    b2, g2 = _beta_gamma(params.k2, "s2")
    sigma1 = s1 + s2 + s3
    q = -b1 * g2 * s3 + b1 * b2 * s1 + g1 * g2 * s2 - 2 * g1 * b2
    T = (sigma1 - lam - s3) * g1 * g2 + (g1 - b1) * (g2 - b2)
    e1 = q * (u**2 + w) - (1 + w) * (u**2 + 1) * T
    return e1, membership_equation()


def x2_factor(
    params: PretzelParams,
    component: VarietyComponent,
    n_samples: int = 20,
    seed: int = 0,
) -> APolyFactor:
    """The A-polynomial factor contributed by one conic component.

    Substitutes the conic's twist traces (exactly when rational, through
    resultants against their defining polynomials otherwise), eliminates
    lambda, and filters against verified samples of the conic.  Flagged
    conics that carry no characters yield an explicit empty-factor marker.
    """
    if component.conic is None:
        raise ValueError("component is not a conic")
    samples = x2_uw_samples(component, n_samples, seed)
    if not component.valid or not samples:
        return APolyFactor(
            poly=Poly.const(1),
            source=component.component_id,
            empty=True,
            note="no verified characters on this conic (flagged trace -2)"
            if not component.valid
            else "no verified samples",
        )
    e1, e2 = _conic_elimination_equations(params)
    for j, info in enumerate(component.conic.s_info, start=1):
        minpoly = info["minpoly"]
        var = f"s{j}"
        if minpoly is None:
            continue
        mp = minpoly.rename({"t": var}) if "t" in minpoly.vars else minpoly
        if mp.degree(var) == 1:
            cm = mp.coefficient_map(var)
            value = Fraction(-cm.get(0, Poly.zero()).constant_value()) / Fraction(
                cm[1].constant_value()
            )
            e1 = e1.subs_value(var, value)
            e2 = e2.subs_value(var, value)
        else:
            e1 = resultant(e1, mp, var) if e1.degree(var) > 0 else e1
            e2 = resultant(e2, mp, var) if e2.degree(var) > 0 else e2
            e1 = e1.primitive()
            e2 = e2.primitive()
    if e1.degree("lam") > 0 and e2.degree("lam") > 0:
        eliminant = resultant(e1, e2, "lam").primitive()
    else:
        eliminant = (e1 if e2.degree("lam") > 0 else e2).primitive()
    factors = filter_extraneous(eliminant, samples, source=component.component_id)
    factors.sort(key=lambda f: (f.poly.total_degree(), len(f.poly.terms)))
    best = factors[0]
    if len(factors) > 1:
        merged = factors[0].poly
        for f in factors[1:]:
            merged = merged * f.poly
        best = APolyFactor(
            poly=merged.primitive(),
            source=component.component_id,
            filtered=factors[0].filtered,
            vanish_fraction=min(f.vanish_fraction for f in factors),
            max_relative_value=max(f.max_relative_value for f in factors),
            n_samples=factors[0].n_samples,
            symmetric=_symmetry_flag(merged),
        )
    return best


# ------------------------------------------------------------------ the full pipeline


@dataclass
class APolyResult:
    params: PretzelParams
    hard_factors: list
    conic_factors: list
    elimination_order: tuple
    eliminant_degree: tuple
    notes: list = field(default_factory=list)

    def all_factors(self):
        return [f for f in self.hard_factors + self.conic_factors if not f.empty]


def hard_factors(params: PretzelParams, n_samples: int = 30, seed: int = 0, components=None):
    """Factors carried by the main curve, filtered per one-dimensional source."""
    system = build_system(params)
    eliminant, order = eliminate(system)
    try:
        alt, _ = eliminate(system, order=("s2", "s3", "s1", "lam"))
        splitters = (alt,)
    except DegenerateEliminationError:
        splitters = ()
    samples_by_source = x3_uw_samples(params, n_samples, seed, components=components)
    if not samples_by_source:
        raise EliminationLostCurveError("no verified main-curve samples to filter against")
    factors = []
    notes = []
    for source, samples in samples_by_source.items():
        new = filter_extraneous(eliminant, samples, source=source, splitters=splitters)
        for f in new:
            dup = next((g for g in factors if g.poly == f.poly), None)
            if dup is None:
                factors.append(f)
            else:
                dup.source = dup.source + "+" + source
    return factors, (eliminant, order, notes)


def full_a_polynomial(params: PretzelParams, n_samples: int = 30, seed: int = 0) -> APolyResult:
    """Hard factors plus one factor per conic, duplicates merged."""
    components = build_all(params)
    hard, (eliminant, order, notes) = hard_factors(
        params, n_samples=n_samples, seed=seed, components=components
    )
    conic_factors = []
    for comp in components:
        if comp.kind != "X2_conic":
            continue
        factor = x2_factor(params, comp, n_samples=max(20, n_samples // 2), seed=seed)
        dup = next(
            (g for g in conic_factors if not g.empty and not factor.empty and g.poly == factor.poly),
            None,
        )
        if dup is not None:
            dup.source = dup.source + "+" + factor.source
            continue
        conic_factors.append(factor)
    du = eliminant.degree("u") if "u" in eliminant.vars else 0
    dw = eliminant.degree("w") if "w" in eliminant.vars else 0
    return APolyResult(
        params=params,
        hard_factors=hard,
        conic_factors=conic_factors,
        elimination_order=order,
        eliminant_degree=(du, dw),
        notes=notes,
    )


# ------------------------------------------------------------------ the (3,3,.) shortcut


def specialized_p33_factor(params: PretzelParams, n_samples: int = 30, seed: int = 0):
    """Independent route to the hard factor for twists (1, 1, k3).

    The first two relation equations solve in closed form (lam = s1 + s2 + 1
    and s3 = s1 s2 + 1), so with e = s1 + s2 the longitude equation becomes
    linear in e; substituting its solution into the membership equation and
    the third relation equation leaves two polynomials in (s3, u, w), whose
    resultant in s3 is the factor.  Used to cross-validate the generic chain.
    """
    if (params.k1, params.k2) != (1, 1):
        raise ValueError("shortcut requires twists (1, 1, k3)")
    e, s3 = Poly.variable("e"), Poly.variable("s3")
    u, w = Poly.variable("u"), Poly.variable("w")
    sigma1 = e + s3
    sigma2 = (s3 - 1) + s3 * e
    sigma3 = (s3 - 1) * s3
    lam = e + 1
    delta = 4 + sigma3 + 2 * sigma2 - sigma1**2
    membership = (u**2 + 1) ** 2 * (lam**2 - (sigma1 + 2) * lam + sigma2 + 4) - u**2 * delta
    longitude = (1 + w) * u**2 * (u**2 + 1) * (sigma1 + 2 - 2 * lam) - (1 - w) * (
        u**2 - 1
    ) * ((sigma1 + 2) * u**2 - 2 * (u**2 + 1) ** 2)
    # longitude is linear in e: solve and substitute
    a = longitude.derivative("e")
    b = longitude.subs_value("e", 0)
    assert a.degree("e") == 0 and b.degree("e") == 0
    e_fn = RationalFn(-b, a)
    p1 = membership.substitute("e", e_fn).num.primitive()
    b3, g3 = _beta_gamma(params.k3, "s3")
    third = (e - 1 - s3) * g3 + b3
    p2 = third.substitute("e", e_fn).num.primitive()
    eliminant = resultant(p1, p2, "s3").primitive()
    samples_by_source = x3_uw_samples(params, n_samples, seed)
    merged = [s for group in samples_by_source.values() for s in group]
    factors = filter_extraneous(eliminant, merged, source="X3(specialized)")
    return factors, eliminant


def solved_twist_sum(params: PretzelParams) -> RationalFn:
    """The closed-form e = s1 + s2 on the curve of a (1, 1, k3) knot."""
    if (params.k1, params.k2) != (1, 1):
        raise ValueError("requires twists (1, 1, k3)")
    s3 = Poly.variable("s3")
    u, w = Poly.variable("u"), Poly.variable("w")
    num = (1 + w * u**2) * u**2 * s3 - (w - 1) * (u**6 - 1)
    den = u**2 * (w + u**2)
    return RationalFn(num, den)


def vanishing_loci_agree(f: Poly, g: Poly, samples, tol: float = 1e-7) -> bool:
    """Do two factors cut out the same points along the verified samples?"""
    for s in samples:
        a = _relative_value(f, s.u, s.w) <= tol
        b = _relative_value(g, s.u, s.w) <= tol
        if a != b:
            return False
    return True
