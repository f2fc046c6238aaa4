"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a finite map from exponent vectors to nonzero Fraction
coefficients.  Each Poly carries its own ordered tuple of variable names;
binary operations align variable sets on the fly, so polynomials built in
different contexts combine freely.  The zero polynomial has no terms and no
variables.

Variable order is global and total: the coordinate names used by the knot
pipeline (t, u, w, s1, s2, s3, lam, tau, v) come first in that fixed order,
anything else follows alphabetically.  The order fixes canonical printing
(graded lexicographic) and the sign normalization of primitive parts; it has
no semantic effect on arithmetic.

Conventions fixed here and relied on elsewhere:

* resultant(f, g, v) follows Res(f, g) = lc(f)^deg(g) * prod g(a_i) over the
  roots a_i of f, i.e. the determinant of the standard Sylvester matrix with
  deg(g) rows of f-coefficients on top.  resultant(x - a, x - b, x) == a - b.
* primitive parts have integer coefficients and positive leading coefficient
  under the graded-lex order.
* complex_roots refines companion-matrix starting values with simultaneous
  Aberth iteration in mpmath working precision; precision below 53 bits
  short-circuits to the double-precision path.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import mpmath
import numpy as np

_PIPELINE_VARS = ("t", "u", "w", "s1", "s2", "s3", "lam", "tau", "v")
_VAR_RANK = {name: i for i, name in enumerate(_PIPELINE_VARS)}


class PolynomialError(ValueError):
    pass


class NotEliminableError(PolynomialError):
    """Raised when a resultant is requested in a variable of degree zero."""


class RootRefinementError(RuntimeError):
    """Aberth iteration failed to converge; carries the partial results."""

    def __init__(self, message, partial_roots):
        super().__init__(message)
        self.partial_roots = partial_roots


def var_key(name: str):
    """Sort key realizing the global total order on variable names."""
    rank = _VAR_RANK.get(name)
    if rank is not None:
        return (0, rank, name)
    return (1, 0, name)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise PolynomialError(f"not an exact coefficient: {value!r}")


def _as_coeff(value):
    """Exact coefficient, as a plain int when integral (ints are much faster)."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return _as_coeff(Fraction(value))
    raise PolynomialError(f"not an exact coefficient: {value!r}")


def _coeff_div(a, b):
    """Exact division of coefficients; int when the quotient is integral."""
    q = Fraction(a) / Fraction(b)
    return q.numerator if q.denominator == 1 else q


class Poly:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str] = (), terms: Mapping[tuple, Fraction] | None = None):
        vars = tuple(vars)
        clean: dict[tuple, Fraction] = {}
        if terms:
            for expo, coeff in terms.items():
                coeff = _as_coeff(coeff)
                if coeff:
                    clean[tuple(expo)] = coeff
        # drop variables that appear in no monomial, keep the rest sorted
        if clean:
            used = [i for i in range(len(vars)) if any(e[i] for e in clean)]
            order = sorted(used, key=lambda i: var_key(vars[i]))
            if order != list(range(len(vars))):
                vars = tuple(vars[i] for i in order)
                clean = {tuple(e[i] for i in order): c for e, c in clean.items()}
        else:
            vars = ()
        self.vars = vars
        self.terms = clean
        self._hash = None

    # ---------------------------------------------------------------- constructors

    @staticmethod
    def zero() -> "Poly":
        return _ZERO

    @staticmethod
    def const(value) -> "Poly":
        value = _as_coeff(value)
        if not value:
            return _ZERO
        return Poly((), {(): value})

    @staticmethod
    def variable(name: str) -> "Poly":
        return Poly((name,), {(1,): 1})

    @staticmethod
    def from_terms(entries: Iterable[tuple], vars: Sequence[str]) -> "Poly":
        """Build from (coefficient, exponent-tuple) pairs over the given vars."""
        acc: dict[tuple, Fraction] = {}
        for coeff, expo in entries:
            expo = tuple(expo)
            acc[expo] = acc.get(expo, 0) + _as_coeff(coeff)
        return Poly(vars, acc)

    # ---------------------------------------------------------------- predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> Fraction:
        if self.vars:
            raise PolynomialError("not a constant polynomial")
        return self.terms.get((), Fraction(0))

    # ---------------------------------------------------------------- alignment

    def _aligned(self, other: "Poly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        merged = tuple(sorted(set(self.vars) | set(other.vars), key=var_key))
        return merged, self._remap(merged), other._remap(merged)

    def _remap(self, merged: tuple) -> dict:
        if self.vars == merged:
            return self.terms
        pos = [merged.index(v) for v in self.vars]
        n = len(merged)
        out = {}
        for expo, coeff in self.terms.items():
            row = [0] * n
            for p, e in zip(pos, expo):
                row[p] = e
            out[tuple(row)] = coeff
        return out

    # ---------------------------------------------------------------- ring ops

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        vars, a, b = self._aligned(other)
        out = dict(a)
        for expo, coeff in b.items():
            acc = out.get(expo)
            if acc is None:
                out[expo] = coeff
            else:
                acc = acc + coeff
                if acc:
                    out[expo] = acc
                else:
                    del out[expo]
        return _raw(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return _ZERO
        if other.is_constant():
            c = other.terms[()]
            return _raw(self.vars, {e: k * c for e, k in self.terms.items()})
        if self.is_constant():
            c = self.terms[()]
            return _raw(other.vars, {e: k * c for e, k in other.terms.items()})
        vars, a, b = self._aligned(other)
        out: dict[tuple, Fraction] = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                acc = get(key)
                if acc is None:
                    out[key] = c1 * c2
                else:
                    acc = acc + c1 * c2
                    if acc:
                        out[key] = acc
                    else:
                        del out[key]
        return _raw(vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise PolynomialError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly({self.to_text()!r})"

    # ---------------------------------------------------------------- queries

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial, 0 if var absent."""
        if not self.terms:
            return -1
        try:
            i = self.vars.index(var)
        except ValueError:
            return 0
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficient_map(self, var: str) -> dict[int, "Poly"]:
        """View as univariate in var: power -> coefficient Poly in the rest."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1 :]
        buckets: dict[int, dict] = {}
        for expo, coeff in self.terms.items():
            d = expo[i]
            buckets.setdefault(d, {})[expo[:i] + expo[i + 1 :]] = coeff
        return {d: _raw(rest, t) for d, t in buckets.items()}

    def leading_coefficient(self, var: str) -> "Poly":
        cm = self.coefficient_map(var)
        if not cm:
            return _ZERO
        return cm[max(cm)]

    def _grlex_leading(self):
        """(exponent, coeff) of the graded-lex leading monomial."""
        return max(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive (0 for zero)."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer-primitive form with positive graded-lex leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self._grlex_leading()[1] < 0:
            c = -c
        return _raw(self.vars, {e: _coeff_div(k, c) for e, k in self.terms.items()})

    # ---------------------------------------------------------------- calculus & evaluation

    def derivative(self, var: str) -> "Poly":
        if var not in self.vars:
            return _ZERO
        i = self.vars.index(var)
        out = {}
        for expo, coeff in self.terms.items():
            d = expo[i]
            if d:
                key = expo[:i] + (d - 1,) + expo[i + 1 :]
                out[key] = out.get(key, Fraction(0)) + coeff * d
        return Poly(self.vars, out)

    def evaluate(self, values: Mapping[str, object]):
        """Numeric (or exact) evaluation; every variable must get a value."""
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise PolynomialError(f"no value supplied for {missing}")
        vals = [values[v] for v in self.vars]
        total = 0
        for expo, coeff in self.terms.items():
            term = coeff
            for v, e in zip(vals, expo):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def eval_scale(self, values: Mapping[str, float]) -> float:
        """Sum of |coeff| * |value|^e: the magnitude scale for relative residuals."""
        vals = [abs(complex(values[v])) for v in self.vars]
        total = 0.0
        for expo, coeff in self.terms.items():
            term = abs(float(coeff))
            for v, e in zip(vals, expo):
                if e:
                    term *= v**e
            total += term
        return total

    def subs_value(self, var: str, value) -> "Poly":
        """Substitute an exact rational value for one variable (Horner)."""
        value = _as_coeff(value)
        if var not in self.vars:
            return self
        cm = self.coefficient_map(var)
        scalar = Poly.const(value)
        acc = _ZERO
        for d in range(max(cm), -1, -1):
            acc = acc * scalar
            piece = cm.get(d)
            if piece is not None:
                acc = acc + piece
        return acc

    def subs_poly(self, var: str, replacement: "Poly") -> "Poly":
        """Substitute a polynomial for one variable."""
        if var not in self.vars:
            return self
        cm = self.coefficient_map(var)
        top = max(cm)
        acc = _ZERO
        for d in range(top, -1, -1):
            acc = acc * replacement
            piece = cm.get(d)
            if piece is not None:
                acc = acc + piece
        return acc

    def substitute(self, var: str, replacement: "RationalFn") -> "RationalFn":
        """Substitute a rational function, clearing denominators.

        Returns num/den with den = replacement.den^deg and num the cleared
        numerator, reduced.
        """
        if var not in self.vars:
            return RationalFn(self, Poly.const(1))
        cm = self.coefficient_map(var)
        top = max(cm)
        num = _ZERO
        for d in range(top, -1, -1):
            num = num * replacement.num
            piece = cm.get(d)
            if piece is not None:
                num = num + piece * replacement.den ** (top - d)
        return RationalFn(num, replacement.den**top)

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        new_vars = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(new_vars)) != len(new_vars):
            raise PolynomialError("variable rename collides")
        return Poly(new_vars, self.terms)

    # ---------------------------------------------------------------- canonical text

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
        pieces = []
        for expo, coeff in items:
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip(self.vars, expo) if e
            )
            mag = abs(coeff)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    @staticmethod
    def parse(text: str) -> "Poly":
        return _parse_poly(text)


def _raw(vars: tuple, terms: dict) -> Poly:
    """Internal constructor for already-normalized coefficient maps."""
    p = Poly.__new__(Poly)
    if terms:
        used = [i for i in range(len(vars)) if any(e[i] for e in terms)]
        if len(used) != len(vars):
            vars = tuple(vars[i] for i in used)
            terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
    else:
        vars = ()
    p.vars = vars
    p.terms = terms
    p._hash = None
    return p


def _coerce(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    return None


_ZERO = Poly()


# -------------------------------------------------------------------- parsing

def _parse_poly(text: str) -> Poly:
    """Parse the canonical text form (and benign variants of it)."""
    s = text.replace(" ", "")
    if not s:
        raise PolynomialError("empty polynomial text")
    # split into signed terms at top level (no parentheses in the grammar)
    terms = []
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > start and s[i - 1] not in "+-*^/":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    acc: dict[tuple, Fraction] = {}
    names: list[str] = []
    parsed = []
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise PolynomialError(f"dangling sign in {text!r}")
        coeff = Fraction(sign)
        expo: dict[str, int] = {}
        for factor in term.split("*"):
            if not factor:
                raise PolynomialError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            if "^" in factor:
                name, _, power = factor.partition("^")
                e = int(power)
                if e < 0:
                    raise PolynomialError("negative exponents are not supported")
            else:
                name, e = factor, 1
            if not name.isidentifier():
                raise PolynomialError(f"bad variable name {name!r}")
            expo[name] = expo.get(name, 0) + e
            if name not in names:
                names.append(name)
        parsed.append((coeff, expo))
    names.sort(key=var_key)
    for coeff, expo in parsed:
        key = tuple(expo.get(v, 0) for v in names)
        acc[key] = acc.get(key, Fraction(0)) + coeff
    return Poly(names, acc)


# -------------------------------------------------------------------- division

def divexact(a: Poly, b: Poly) -> Poly:
    """Exact division a / b; raises PolynomialError when b does not divide a."""
    if b.is_zero():
        raise PolynomialError("division by the zero polynomial")
    if a.is_zero():
        return a
    if b.is_constant():
        c = b.constant_value()
        return _raw(a.vars, {e: _coeff_div(k, c) for e, k in a.terms.items()})
    var = max(b.vars, key=lambda v: var_key(v))
    db = b.degree(var)
    lb = b.leading_coefficient(var)
    xv = Poly.variable(var)
    quotient = _ZERO
    rem = a
    while not rem.is_zero():
        dr = rem.degree(var)
        if dr < db:
            raise PolynomialError("inexact polynomial division")
        lr = rem.leading_coefficient(var)
        qc = divexact(lr, lb)
        qterm = qc * xv ** (dr - db)
        quotient = quotient + qterm
        rem = rem - qterm * b
        if not rem.is_zero() and rem.degree(var) == dr:
            raise PolynomialError("inexact polynomial division")
    return quotient


def try_divexact(a: Poly, b: Poly):
    try:
        return divexact(a, b)
    except PolynomialError:
        return None


def prem(a: Poly, b: Poly, var: str) -> Poly:
    """Pseudo-remainder: lc(b)^(da-db+1) * a = q*b + prem(a, b)."""
    da, db = a.degree(var), b.degree(var)
    if db < 0:
        raise PolynomialError("pseudo-division by zero")
    if da < db:
        return a
    lb = b.leading_coefficient(var)
    xv = Poly.variable(var)
    n = da - db + 1
    rem = a
    while not rem.is_zero():
        dr = rem.degree(var)
        if dr < db:
            break
        lr = rem.leading_coefficient(var)
        rem = lb * rem - lr * xv ** (dr - db) * b
        n -= 1
    if n > 0:
        rem = lb**n * rem
    return rem


# -------------------------------------------------------------------- gcd

def _gcd_univariate(a: Poly, b: Poly, var: str) -> Poly:
    """Monic Euclid over Q for single-variable polynomials."""

    def coeffs(p):
        cm = p.coefficient_map(var)
        d = max(cm)
        return [cm.get(i, _ZERO).constant_value() if cm.get(i) else Fraction(0) for i in range(d + 1)]

    fa, fb = coeffs(a), coeffs(b)
    while any(fb):
        while fb and not fb[-1]:
            fb.pop()
        if not fb:
            break
        inv = Fraction(1) / Fraction(fb[-1])
        fb = [c * inv for c in fb]
        da, db = len(fa) - 1, len(fb) - 1
        while da >= db and any(fa):
            lead = fa[-1]
            for i in range(db + 1):
                fa[da - db + i] -= lead * fb[i]
            fa[-1] = Fraction(0)
            while fa and not fa[-1]:
                fa.pop()
            da = len(fa) - 1
        fa, fb = fb, fa
    d = len(fa) - 1
    return Poly((var,), {(i,): c for i, c in enumerate(fa)}).primitive()


def poly_content_in(p: Poly, var: str) -> Poly:
    """Content of p as a univariate polynomial in var: gcd of the coefficients."""
    cm = p.coefficient_map(var)
    acc = _ZERO
    for piece in cm.values():
        acc = gcd(acc, piece)
        if acc.is_constant() and not acc.is_zero():
            return Poly.const(1)
    return acc


def gcd(a: Poly, b: Poly) -> Poly:
    """Polynomial gcd over Q, returned integer-primitive with positive lead.

    Bivariate pairs go through exact evaluation/interpolation (slice gcds
    plus a divisibility check); everything larger runs a subresultant
    pseudo-remainder sequence on a main variable, whose divisor rule keeps
    coefficient growth linear with exact divisions only.  gcd(0, 0) = 0;
    any nonzero constant input gives 1.
    """
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.is_constant() or b.is_constant():
        return Poly.const(1)
    shared = set(a.vars) & set(b.vars)
    if not shared:
        return Poly.const(1)
    if len(a.vars) == 1 and a.vars == b.vars:
        return _gcd_univariate(a, b, a.vars[0])
    allvars = set(a.vars) | set(b.vars)
    if len(allvars) == 2 and len(shared) == 2:
        g = _gcd_bivariate_eval(a, b)
        if g is not None:
            return g
    var = min(shared, key=lambda v: min(a.degree(v), b.degree(v)))
    ca, cb = poly_content_in(a, var), poly_content_in(b, var)
    c = gcd(ca, cb)
    pa, pb = divexact(a, ca), divexact(b, cb)
    if pa.degree(var) < pb.degree(var):
        pa, pb = pb, pa
    g = _subresultant_last(pa, pb, var)
    if g.is_constant():
        return c.primitive() if not c.is_constant() else Poly.const(1)
    g = divexact(g, poly_content_in(g, var))
    return (c * g).primitive()


def _univariate_gcd_lists(fa: list, fb: list) -> list:
    """Monic Euclid on descending Fraction lists; returns a monic list."""

    def strip(lst):
        i = 0
        while i < len(lst) and lst[i] == 0:
            i += 1
        return lst[i:]

    fa = strip([Fraction(c) for c in fa])
    fb = strip([Fraction(c) for c in fb])
    while fb:
        inv = Fraction(1) / fb[0]
        fb = [c * inv for c in fb]
        while len(fa) >= len(fb):
            lead = fa[0]
            if lead:
                for i in range(len(fb)):
                    fa[i] -= lead * fb[i]
            del fa[0]
            while fa and fa[0] == 0:
                del fa[0]
        fa, fb = fb, strip(fa)
    if not fa:
        return []
    inv = Fraction(1) / fa[0]
    return [c * inv for c in fa]


def _gcd_bivariate_eval(a: Poly, b: Poly):
    """Bivariate gcd by slicing one variable and interpolating the other.

    Each slice gcd is univariate and monic; scaling every slice to the
    specialized gcd of the leading coefficients makes the images of one
    polynomial, which Newton interpolation reconstructs.  The candidate is
    accepted only after exact trial division into both inputs, so a None
    return (give up to the pseudo-remainder path) is the only failure mode.
    """
    v1, v2 = sorted(set(a.vars) | set(b.vars), key=var_key)
    if max(a.degree(v1), b.degree(v1)) <= max(a.degree(v2), b.degree(v2)):
        x, y = v1, v2
    else:
        x, y = v2, v1
    ca, cb = poly_content_in(a, x), poly_content_in(b, x)
    c = gcd(ca, cb) if not (ca.is_constant() and cb.is_constant()) else Poly.const(1)
    pa, pb = divexact(a, ca), divexact(b, cb)
    la, lb = pa.leading_coefficient(x), pb.leading_coefficient(x)
    gamma = gcd(la, lb)
    bound = min(pa.degree(y), pb.degree(y)) + max(gamma.degree(y), 0)
    da, db = pa.degree(x), pb.degree(x)
    best_deg = None
    interp = _ZERO
    basis = Poly.const(1)
    nodes: list[Fraction] = []
    yvar = Poly.variable(y)
    attempts = 0
    for node in _interp_nodes():
        if len(nodes) > bound + 1 or attempts > 4 * (bound + 8):
            break
        attempts += 1
        av = Fraction(node)
        fa = pa.subs_value(y, av)
        fb_ = pb.subs_value(y, av)
        if fa.degree(x) != da or fb_.degree(x) != db:
            continue
        ga = _univariate_gcd_lists(_poly_to_list(fa, x), _poly_to_list(fb_, x))
        d = len(ga) - 1
        if d == 0:
            out = c.primitive() if not c.is_constant() else Poly.const(1)
            return out
        if best_deg is None or d < best_deg:
            best_deg = d
            interp = _ZERO
            basis = Poly.const(1)
            nodes = []
        elif d > best_deg:
            continue  # unlucky slice
        scale = gamma.subs_value(y, av).constant_value()
        if scale == 0:
            continue
        value = Poly((x,), {(len(ga) - 1 - i,): co * Fraction(scale) for i, co in enumerate(ga)})
        err = value - interp.subs_value(y, av)
        if not err.is_zero():
            denom = Fraction(1)
            for n in nodes:
                denom *= av - n
            interp = interp + err * basis * Poly.const(Fraction(1) / denom)
        nodes.append(av)
        basis = basis * (yvar - Poly.const(av))
        if len(nodes) >= bound + 1 or (err.is_zero() and len(nodes) >= best_deg + 2):
            candidate = interp.primitive()
            cx = poly_content_in(candidate, x)
            if not cx.is_constant():
                candidate = divexact(candidate, cx).primitive()
            if try_divexact(pa, candidate) is not None and try_divexact(pb, candidate) is not None:
                return (c * candidate).primitive()
            if len(nodes) > bound:
                break
    return None


def _poly_to_list(p: Poly, var: str) -> list:
    cm = p.coefficient_map(var)
    d = max(cm)
    return [Fraction(cm[i].constant_value()) if i in cm else Fraction(0) for i in range(d, -1, -1)]


def _subresultant_last(pa: Poly, pb: Poly, var: str) -> Poly:
    """Last nonzero member of the subresultant PRS (gcd up to content)."""
    g = Poly.const(1)
    h = Poly.const(1)
    while True:
        delta = pa.degree(var) - pb.degree(var)
        r = prem(pa, pb, var)
        if r.is_zero():
            return pb
        if r.degree(var) == 0:
            return Poly.const(1)
        pa, pb = pb, divexact(r, g * h**delta)
        g = pa.leading_coefficient(var)
        if delta == 1:
            h = g
        elif delta > 1:
            h = divexact(g**delta, h ** (delta - 1))


# -------------------------------------------------------------------- squarefree

def gcd_degree_probe(a: Poly, b: Poly, var: str, trials: int = 2) -> int:
    """Degree in var of gcd(a, b) at random rational specializations.

    Specializing the other variables can only enlarge the gcd, so the probe
    is an upper bound that is exact with high probability; 0 certifies
    coprimality-in-var up to an unlucky specialization.  Used to skip
    expensive exact gcd work, never to replace it where exactness matters.
    """
    rng = _probe_rng
    others = (set(a.vars) | set(b.vars)) - {var}
    best = None
    for _ in range(trials + 3):
        vals = {v: Fraction(rng.randint(3, 199), rng.randint(1, 5)) for v in others}
        ua, ub = a, b
        for v, q in vals.items():
            ua = ua.subs_value(v, q)
            ub = ub.subs_value(v, q)
        if ua.degree(var) != a.degree(var) or ub.degree(var) != b.degree(var):
            continue  # leading coefficient vanished; resample
        g = _gcd_univariate(ua, ub, var) if not (ua.is_constant() or ub.is_constant()) else Poly.const(1)
        d = g.degree(var)
        best = d if best is None else min(best, d)
        if best == 0:
            return 0
        trials -= 1
        if trials <= 0:
            break
    return best if best is not None else -1


_probe_rng = None


def _init_probe_rng():
    global _probe_rng
    import random as _random

    _probe_rng = _random.Random(0x5EEDED)


_init_probe_rng()


def squarefree_probe(p: Poly, var: str) -> bool:
    """True when p is (with high probability) squarefree with respect to var."""
    d = p.derivative(var)
    if d.is_zero():
        return False
    return gcd_degree_probe(p, d, var) == 0


def squarefree_primitive(p: Poly, var: str) -> Poly:
    """Primitive squarefree part of p with respect to var.

    Every irreducible factor of p, including factors free of var, appears
    exactly once; the result is integer-primitive with positive lead.
    """
    if p.is_zero():
        raise PolynomialError("squarefree part of the zero polynomial")
    if p.is_constant():
        return Poly.const(1)
    if var not in p.vars:
        # fall back to some variable that is present
        var = p.vars[0]
    cont = poly_content_in(p, var)
    pp = divexact(p, cont)
    g = gcd(pp, pp.derivative(var))
    sf = divexact(pp, g) if not g.is_constant() else pp
    if not cont.is_constant():
        sf = sf * squarefree_primitive(cont, cont.vars[0])
    return sf.primitive()


def squarefree_decomposition(p: Poly, var: str) -> list[tuple[Poly, int]]:
    """Yun decomposition with respect to var: [(factor_i, multiplicity_i)].

    The product of factor_i^multiplicity_i recovers p up to a rational
    constant; content in the remaining variables is attached at multiplicity 1.
    """
    if p.is_zero():
        raise PolynomialError("squarefree decomposition of zero")
    out: list[tuple[Poly, int]] = []
    work = p.primitive()
    if var in p.vars:
        cont = poly_content_in(work, var)
        if not cont.is_constant():
            out.append((cont.primitive(), 1))
            work = divexact(work, cont)
        g = gcd(work, work.derivative(var))
        w = divexact(work, g)
        i = 1
        while w.degree(var) > 0:
            y = gcd(w, g)
            factor = divexact(w, y)
            if factor.degree(var) > 0 or not factor.is_constant():
                if not factor.is_constant():
                    out.append((factor.primitive(), i))
            w, g = y, divexact(g, y)
            i += 1
    elif not work.is_constant():
        out.append((work, 1))
    return out


# -------------------------------------------------------------------- resultants

def sylvester_matrix(p: Poly, q: Poly, var: str) -> list[list[Poly]]:
    dp, dq = p.degree(var), q.degree(var)
    cp = p.coefficient_map(var)
    cq = q.coefficient_map(var)
    n = dp + dq
    rows = []
    for i in range(dq):
        row = [_ZERO] * n
        for d, c in cp.items():
            row[i + dp - d] = c
        rows.append(row)
    for i in range(dp):
        row = [_ZERO] * n
        for d, c in cq.items():
            row[i + dq - d] = c
        rows.append(row)
    return rows


def _det_bareiss(matrix: list[list[Poly]]) -> Poly:
    """Fraction-free determinant; entries are polynomials."""
    m = [row[:] for row in matrix]
    n = len(m)
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if pivot_row is None:
                return _ZERO
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = divexact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = _ZERO
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant_bareiss(p: Poly, q: Poly, var: str) -> Poly:
    return _det_bareiss(sylvester_matrix(p, q, var))


def resultant_prs(p: Poly, q: Poly, var: str) -> Poly:
    """Resultant by pseudo-remainder recursion (same sign convention)."""
    dp, dq = p.degree(var), q.degree(var)
    if dp < 0 or dq < 0:
        return _ZERO
    if dp < dq:
        r = resultant_prs(q, p, var)
        return -r if (dp * dq) % 2 else r
    if dq == 0:
        return q**dp if dp > 0 else Poly.const(1)
    r = prem(p, q, var)
    if r.is_zero():
        return _ZERO
    dr = r.degree(var)
    lb = q.leading_coefficient(var)
    sub = resultant_prs(q, r, var)
    e = (dp - dq + 1) * dq - (dp - dr)
    if e >= 0:
        out = divexact(sub, lb**e)
    else:
        out = sub * lb ** (-e)
    return -out if (dp * dq) % 2 else out


def _interp_nodes():
    yield Fraction(0)
    k = 1
    while True:
        yield Fraction(k)
        yield Fraction(-k)
        k += 1


def _int_coeff_lists(p: Poly, var: str):
    """(integer coefficient list, descending; rational scale factor)."""
    cm = p.coefficient_map(var)
    d = max(cm)
    fracs = []
    den_lcm = 1
    for i in range(d, -1, -1):
        c = cm.get(i)
        val = Fraction(c.constant_value()) if c is not None else Fraction(0)
        fracs.append(val)
        den_lcm = den_lcm * val.denominator // math.gcd(den_lcm, val.denominator)
    ints = [int(f * den_lcm) for f in fracs]
    return ints, Fraction(1, den_lcm)


def _prem_lists(f, g):
    """Pseudo-remainder of dense integer lists (descending); lc(g)^(df-dg+1) f mod g."""
    df, dg = len(f) - 1, len(g) - 1
    lb = g[0]
    r = list(f)
    steps = df - dg + 1
    while len(r) - 1 >= dg and any(r):
        shift = len(r) - 1 - dg
        lead = r[0]
        r = [lb * c for c in r]
        for i, gc in enumerate(g):
            r[i] -= lead * gc
        del r[0]
        while r and r[0] == 0:
            del r[0]
        steps -= 1
        if not r:
            break
    if steps > 0:
        scale = lb**steps
        r = [scale * c for c in r]
    return r


def _resultant_int_lists(f, g):
    """Resultant of dense integer lists, subresultant-style recursion."""
    df, dg = len(f) - 1, len(g) - 1
    if df < 0 or dg < 0:
        return 0
    if df < dg:
        r = _resultant_int_lists(g, f)
        return -r if (df * dg) % 2 else r
    if dg == 0:
        return g[0] ** df if df > 0 else 1
    r = _prem_lists(f, g)
    if not r:
        return 0
    dr = len(r) - 1
    sub = _resultant_int_lists(g, r)
    lb = g[0]
    # Res(f, g) = (-1)^(df dg) lc(g)^(df - dr) Res(g, r) / lc(g)^((df-dg+1) dg)
    e = (df - dg + 1) * dg - (df - dr)
    if e >= 0:
        val, rem = divmod(sub, lb**e)
        assert rem == 0, "inexact subresultant division"
    else:
        val = sub * lb ** (-e)
    return -val if (df * dg) % 2 else val


def _resultant_univariate(p: Poly, q: Poly, var: str) -> Poly:
    """Fast exact resultant of univariate polynomials over Q."""
    fp, sp = _int_coeff_lists(p, var)
    fq, sq = _int_coeff_lists(q, var)
    dp, dq = len(fp) - 1, len(fq) - 1
    val = _resultant_int_lists(fp, fq)
    return Poly.const(Fraction(val) * sp**dq * sq**dp)


def resultant_eval(p: Poly, q: Poly, var: str) -> Poly:
    """Resultant by exact evaluation and interpolation in the parameters.

    One parameter y is specialized at rational nodes that preserve both
    degrees in var (specialization then commutes with the resultant), the
    sub-resultants are computed recursively, and the y-dependence is rebuilt
    by incremental Newton interpolation.  The node count is capped by the
    Sylvester degree bound deg_y(R) <= deg_y(p) deg_var(q) + deg_y(q)
    deg_var(p), so the reconstruction is exact; a stabilization check with
    verification at fresh random nodes usually stops far earlier.
    """
    params = sorted((set(p.vars) | set(q.vars)) - {var}, key=var_key)
    if not params:
        return _resultant_univariate(p, q, var)
    y = params[-1]
    dp, dq = p.degree(var), q.degree(var)
    bound = p.degree(y) * dq + q.degree(y) * dp
    yvar = Poly.variable(y)
    interp = _ZERO
    basis = Poly.const(1)
    nodes: list[Fraction] = []
    quiet = 0
    check_at = max(5, bound // 8)
    rng = _probe_rng
    for a in _interp_nodes():
        if len(nodes) > bound:
            break
        pa = p.subs_value(y, a)
        qa = q.subs_value(y, a)
        if pa.degree(var) != dp or qa.degree(var) != dq:
            continue
        value = resultant_eval(pa, qa, var)
        err = value - interp.subs_value(y, a)
        if err.is_zero():
            quiet += 1
            nodes.append(a)
            basis = basis * (yvar - Poly.const(a))
            if quiet >= check_at:
                if _interp_verified(p, q, var, y, dp, dq, interp, rng):
                    return interp
                quiet = 0
                check_at *= 2
            continue
        quiet = 0
        scale = Fraction(1)
        for n in nodes:
            scale *= a - n
        interp = interp + err * basis * Poly.const(1 / scale)
        nodes.append(a)
        basis = basis * (yvar - Poly.const(a))
    return interp


def _interp_verified(p, q, var, y, dp, dq, candidate, rng, trials=2):
    # moderate off-sequence nodes: collision would need the true resultant and
    # the candidate to agree at fresh random rationals, on top of a long
    # stabilized streak; the full-bound fallback still guards the worst case
    for _ in range(trials):
        a = Fraction(rng.randint(53, 977), rng.randint(2, 9))
        pa = p.subs_value(y, a)
        qa = q.subs_value(y, a)
        if pa.degree(var) != dp or qa.degree(var) != dq:
            continue
        if resultant_eval(pa, qa, var) != candidate.subs_value(y, a):
            return False
    return True


def resultant(p: Poly, q: Poly, var: str) -> Poly:
    """Sylvester resultant eliminating var.

    Dispatch by variable count: Bareiss elimination on the Sylvester matrix
    for univariate inputs (the reference engine), subresultant-style
    pseudo-division recursion for bivariate inputs, and exact evaluation/
    interpolation (whose base case is again the Bareiss determinant) when
    three or more variables are in play.  All paths share one sign
    convention: Res(f, g) = lc(f)^deg(g) prod g(root_i).
    """
    if p.degree(var) <= 0 or q.degree(var) <= 0:
        raise NotEliminableError(f"inputs must have positive degree in {var}: not eliminable")
    nvars = len(set(p.vars) | set(q.vars))
    if nvars <= 1:
        return _resultant_univariate(p, q, var)
    if nvars == 2:
        return resultant_prs(p, q, var)
    return resultant_eval(p, q, var)


# -------------------------------------------------------------------- numeric roots

def _to_mpf(fr: Fraction):
    return mpmath.mpf(fr.numerator) / mpmath.mpf(fr.denominator)


def _univariate_coeffs(p: Poly, var: str) -> list[Fraction]:
    cm = p.coefficient_map(var)
    d = max(cm)
    out = []
    for i in range(d, -1, -1):
        c = cm.get(i)
        out.append(Fraction(c.constant_value()) if c is not None else Fraction(0))
    return out


def _initial_roots(coeffs: list[Fraction]) -> list[complex]:
    scale = max(abs(c) for c in coeffs)
    floats = []
    for c in coeffs:
        try:
            floats.append(float(Fraction(c) / Fraction(scale)))
        except OverflowError:
            floats = None
            break
    if floats is not None and floats[0] != 0.0 and all(math.isfinite(f) for f in floats):
        try:
            return [complex(z) for z in np.roots(floats)]
        except Exception:
            pass
    # spread on a Cauchy-bound circle when the companion route is unusable
    n = len(coeffs) - 1
    lead = abs(coeffs[0])
    radius = 1.0 + float(max(abs(c) for c in coeffs[1:]) / lead) if n else 1.0
    return [
        radius * complex(math.cos(0.7 + 2 * math.pi * k / n), math.sin(0.7 + 2 * math.pi * k / n))
        for k in range(n)
    ]


def _aberth(coeffs: list[Fraction], precision: int, max_iter: int = 200):
    n = len(coeffs) - 1
    with mpmath.workprec(precision + 32):
        cs = [_to_mpf(c) for c in coeffs]
        ds = [cs[i] * (n - i) for i in range(n)]

        def horner(zs, z):
            acc = zs[0]
            for c in zs[1:]:
                acc = acc * z + c
            return acc

        roots = [mpmath.mpc(z) + mpmath.mpc(0, 1e-20) for z in _initial_roots(coeffs)]
        tol = mpmath.mpf(2) ** (-precision)
        for _ in range(max_iter):
            worst = mpmath.mpf(0)
            new = []
            for i, z in enumerate(roots):
                pv = horner(cs, z)
                dv = horner(ds, z)
                if pv == 0:
                    new.append(z)
                    continue
                if dv == 0:
                    z = z * (1 + mpmath.mpf(2) ** (-precision // 2)) + tol
                    dv = horner(ds, z)
                    pv = horner(cs, z)
                newton = pv / dv
                s = mpmath.mpc(0)
                for j, zj in enumerate(roots):
                    if j != i:
                        s += 1 / (z - zj)
                denom = 1 - newton * s
                corr = newton if denom == 0 else newton / denom
                new.append(z - corr)
                rel = abs(corr) / (1 + abs(z))
                if rel > worst:
                    worst = rel
            roots = new
            if worst < tol:
                return roots
        raise RootRefinementError(
            f"Aberth refinement did not converge in {max_iter} iterations", roots
        )


def complex_roots(p: Poly, precision: int = 128):
    """All complex roots of a univariate polynomial, with multiplicities.

    Returns [(root, multiplicity)] summing to deg(p).  Roots are mpmath.mpc
    carrying the requested precision (use complex() to truncate).  The input
    is split into exact squarefree factors first, so clustered starting values
    never stall the refinement.
    """
    if p.is_zero():
        raise PolynomialError("root extraction from the zero polynomial")
    if len(p.vars) != 1:
        raise PolynomialError("complex_roots needs a univariate polynomial of degree >= 1")
    var = p.vars[0]
    if p.degree(var) < 1:
        raise PolynomialError("complex_roots needs degree >= 1")
    out = []
    for factor, mult in squarefree_decomposition(p, var):
        if factor.degree(var) < 1:
            continue
        coeffs = _univariate_coeffs(factor, var)
        if len(coeffs) == 2:
            with mpmath.workprec(precision + 32):
                out.append((-_to_mpf(coeffs[1]) / _to_mpf(coeffs[0]) + mpmath.mpc(0), mult))
            continue
        for root in _aberth(coeffs, precision):
            out.append((root, mult))
    return out


def roots_double(p: Poly, polish: int = 2) -> list[complex]:
    """Fast double-precision roots of a squarefree-ish univariate Poly.

    Companion-matrix eigenvalues with a few Newton polish steps; the cheap
    path used by samplers, where downstream verification tolerates 1e-9.
    """
    var = p.vars[0]
    coeffs = _univariate_coeffs(p, var)
    scale = max(abs(c) for c in coeffs)
    floats = [float(Fraction(c) / Fraction(scale)) for c in coeffs]
    roots = [complex(z) for z in np.roots(floats)]
    dcoeffs = [floats[i] * (len(floats) - 1 - i) for i in range(len(floats) - 1)]

    def horner(cs, z):
        acc = 0j
        for c in cs:
            acc = acc * z + c
        return acc

    for _ in range(polish):
        roots = [
            z - horner(floats, z) / d if (d := horner(dcoeffs, z)) != 0 else z for z in roots
        ]
    return sorted(roots, key=lambda z: (round(z.real, 12), round(z.imag, 12)))


# -------------------------------------------------------------------- rational functions

class RationalFn:
    """Quotient of two Poly values, kept in reduced form.

    The denominator is integer-primitive with positive leading coefficient;
    the reduction divides out gcd(num, den).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly, *, reduce: bool = True):
        if den.is_zero():
            raise PolynomialError("rational function with zero denominator")
        if reduce and not num.is_zero():
            g = gcd(num, den)
            if not g.is_constant():
                num = divexact(num, g)
                den = divexact(den, g)
        c = den.content()
        if den._grlex_leading()[1] < 0:
            c = -c
        if c != 1:
            den = _raw(den.vars, {e: _coeff_div(k, c) for e, k in den.terms.items()})
            num = _raw(num.vars, {e: _coeff_div(k, c) for e, k in num.terms.items()})
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p: Poly) -> "RationalFn":
        return RationalFn(p, Poly.const(1), reduce=False)

    @staticmethod
    def const(value) -> "RationalFn":
        return RationalFn.from_poly(Poly.const(value))

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise PolynomialError("division by the zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __repr__(self):
        if self.is_polynomial():
            return f"RationalFn({self.num.to_text()!r})"
        return f"RationalFn({self.num.to_text()!r} / {self.den.to_text()!r})"

    def evaluate(self, values: Mapping[str, object]):
        den = self.den.evaluate(values)
        if den == 0:
            raise ZeroDivisionError("rational function pole")
        return self.num.evaluate(values) / den

    def substitute(self, var: str, replacement: "RationalFn") -> "RationalFn":
        num = self.num.substitute(var, replacement)
        den = self.den.substitute(var, replacement)
        return num / den

    @property
    def vars(self):
        return tuple(sorted(set(self.num.vars) | set(self.den.vars), key=var_key))


def _coerce_rf(value):
    if isinstance(value, RationalFn):
        return value
    if isinstance(value, Poly):
        return RationalFn.from_poly(value)
    if isinstance(value, (int, Fraction)):
        return RationalFn.const(value)
    return None


# convenience aliases matching the operation names used elsewhere
def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def substitute(p: Poly, var: str, r: RationalFn) -> RationalFn:
    return p.substitute(var, r)
