"""Exact arithmetic in the rational-function field Q(q, Q).

A scalar is a reduced fraction of two-variable Laurent polynomials in q
and Q with Fraction coefficients.  Everything is exact: equality of
scalars is structural equality of the canonical form (numerator and
denominator coprime, denominator a genuine polynomial with lex-leading
coefficient 1).

Gcds are computed by clearing monomial content and then running a
primitive pseudo-remainder sequence in q over Q[Q]; no floating point,
no external CAS.
"""

from __future__ import annotations

import re
from fractions import Fraction


class DivisionByZero(ZeroDivisionError):
    """Division by the zero scalar."""


# ---------------------------------------------------------------------------
# univariate helpers over Q[Q]  (dicts exponent -> Fraction, no zero values)


def _upoly_trim(p):
    return {e: c for e, c in p.items() if c}


def _upoly_add(p, r):
    out = dict(p)
    for e, c in r.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _upoly_mul(p, r):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in r.items():
            e = e1 + e2
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _upoly_scale(p, c):
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def _upoly_deg(p):
    return max(p) if p else -1


def _upoly_divmod(p, d):
    """Polynomial division in Q(Q)[Q]; d must be nonzero."""
    dd = _upoly_deg(d)
    lead = d[dd]
    quo = {}
    rem = dict(p)
    while rem and _upoly_deg(rem) >= dd:
        e = _upoly_deg(rem)
        c = rem[e] / lead
        quo[e - dd] = c
        for de, dc in d.items():
            s = rem.get(e - dd + de, 0) - c * dc
            if s:
                rem[e - dd + de] = s
            else:
                rem.pop(e - dd + de, None)
    return quo, rem


def _upoly_gcd(p, r):
    """Monic gcd in Q[Q]."""
    a, b = dict(p), dict(r)
    while b:
        _, a, b = None, b, _upoly_divmod(a, b)[1]
    if not a:
        return {}
    lead = a[_upoly_deg(a)]
    return {e: c / lead for e, c in a.items()}


# ---------------------------------------------------------------------------
# fraction-free layer: primitive pseudo-remainder sequences over Z[Q][q],
# used only for gcds (monic Euclid over Q(Q) swells catastrophically)

from math import gcd as _igcd


def _iupoly_content(p):
    g = 0
    for c in p.values():
        g = _igcd(g, abs(c))
        if g == 1:
            return 1
    return g or 1


def _iupoly_primitive(p):
    g = _iupoly_content(p)
    if g != 1:
        p = {e: c // g for e, c in p.items()}
    return p


def _iupoly_prem(a, b):
    """Integer pseudo-remainder in Z[Q]."""
    db = max(b)
    lead = b[db]
    rem = dict(a)
    while rem and max(rem) >= db:
        da = max(rem)
        c = rem[da]
        rem = {e: v * lead for e, v in rem.items()}
        for be, bc in b.items():
            e = da - db + be
            s = rem.get(e, 0) - c * bc
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return rem


def _iupoly_gcd(p, r):
    """Primitive gcd in Z[Q] (positive leading coefficient)."""
    a, b = _iupoly_primitive(dict(p)), _iupoly_primitive(dict(r))
    if not a:
        a, b = b, a
    while b:
        a, b = b, _iupoly_primitive(_iupoly_prem(a, b))
    if a and a[max(a)] < 0:
        a = {e: -c for e, c in a.items()}
    return a


def _iupoly_mul(p, r):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in r.items():
            e = e1 + e2
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _irec_content(rec):
    if _iupoly_list_coprime(list(rec.values())):
        return {0: 1}
    g = {}
    for p in rec.values():
        g = _iupoly_gcd(g, p) if g else _iupoly_primitive(dict(p))
        if g == {0: 1}:
            break
    return g or {0: 1}


def _irec_exact_div_upoly(rec, co):
    """Divide every q-coefficient of rec by co in Z[Q]; must be exact."""
    out = {}
    for a, p in rec.items():
        quo = {}
        rem = dict(p)
        dco = max(co)
        lead = co[dco]
        while rem:
            da = max(rem)
            if da < dco or rem[da] % lead:
                raise ArithmeticError("inexact integer content division")
            c = rem[da] // lead
            quo[da - dco] = c
            for e, v in co.items():
                s = rem.get(da - dco + e, 0) - c * v
                if s:
                    rem[da - dco + e] = s
                else:
                    rem.pop(da - dco + e, None)
        out[a] = quo
    return out


def _irec_primitive(rec):
    if not rec:
        return rec
    return _irec_exact_div_upoly(rec, _irec_content(rec))


def _irec_prem(a, b):
    db = max(b)
    lead = b[db]
    rem = {k: dict(p) for k, p in a.items()}
    while rem and max(rem) >= db:
        da = max(rem)
        lc = rem[da]
        rem = {k: _iupoly_mul(p, lead) for k, p in rem.items()}
        for be, bp in b.items():
            e = da - db + be
            cur = rem.get(e, {})
            prod = _iupoly_mul(lc, bp)
            for ee, vv in prod.items():
                s = cur.get(ee, 0) - vv
                if s:
                    cur[ee] = s
                else:
                    cur.pop(ee, None)
            if cur:
                rem[e] = cur
            else:
                rem.pop(e, None)
        rem = {k: p for k, p in rem.items() if p}
        # strip the integer content each round to stem bignum growth
        ig = 0
        for p in rem.values():
            ig = _igcd(ig, _iupoly_content(p))
            if ig == 1:
                break
        if ig > 1:
            rem = {k: {e: c // ig for e, c in p.items()}
                   for k, p in rem.items()}
    return rem


def _irec_gcd(a, b):
    if not a:
        return b
    if not b:
        return a
    ca, cb = _irec_content(a), _irec_content(b)
    x = _irec_exact_div_upoly(a, ca)
    y = _irec_exact_div_upoly(b, cb)
    if max(x) < max(y):
        x, y = y, x
    while y:
        x, y = y, _irec_primitive(_irec_prem(x, y))
    cont = _iupoly_gcd(ca, cb)
    return {k: _iupoly_mul(p, cont) for k, p in x.items()}


def _int_rec_from_terms(terms):
    """Laurent terms (exponent pair -> Fraction) to integer recursive form,
    clearing the rational content (a unit for gcd purposes)."""
    denlcm = 1
    for c in terms.values():
        denlcm = denlcm * c.denominator // _igcd(denlcm, c.denominator)
    rec = {}
    for (a, b), c in terms.items():
        rec.setdefault(a, {})[b] = int(c * denlcm)
    return rec


# single-point coprimality certificates: evaluate at an integer beyond the
# Mignotte bound for any possible common divisor; a unit gcd of the values
# proves coprimality exactly.  Genuine common factors fall back to the
# primitive pseudo-remainder sequence (they are small and structured here).


def _iupoly_eval(p, x):
    return sum(c * x ** e for e, c in p.items())


def _iupoly_maxnorm(p):
    return max(abs(c) for c in p.values()) if p else 0


def _mignotte_point(deg, norm):
    return 2 * (1 << max(deg, 1)) * (deg + 1) * max(norm, 1) + 3


def _iupoly_list_coprime(polys):
    """True only when the Z[Q]-gcd of the list is certainly a constant."""
    polys = [p for p in polys if p]
    if not polys:
        return False
    if any(0 in p and len(p) == 1 for p in polys):
        return True
    deg = max(max(p) for p in polys)
    norm = max(_iupoly_maxnorm(p) for p in polys)
    x0 = _mignotte_point(deg, norm)
    g = 0
    for p in polys:
        g = _igcd(g, abs(_iupoly_eval(p, x0)))
        if g == 1:
            return True
    return False


def _irec_coprime(a, b):
    """True only when the bivariate integer gcd is certainly a monomial."""
    degQ = max(max(p) for p in list(a.values()) + list(b.values()))
    norm = max(_irec_maxnorm(a), _irec_maxnorm(b))
    y0 = _mignotte_point(degQ, norm)
    fa = _irec_eval_Q(a, y0)
    fb = _irec_eval_Q(b, y0)
    if not fa or not fb:
        return False
    # a q-free common divisor divides every q-coefficient of both
    if not _iupoly_list_coprime(list(a.values()) + list(b.values())):
        return False
    degq = max(max(fa), max(fb))
    norm2 = max(_iupoly_maxnorm(fa), _iupoly_maxnorm(fb))
    x0 = _mignotte_point(degq, norm2)
    return _igcd(abs(_iupoly_eval(fa, x0)), abs(_iupoly_eval(fb, x0))) == 1


def _irec_eval_Q(rec, x):
    """Evaluate the inner variable at an integer, landing in Z[q]."""
    return {a: v for a, v in
            ((a, _iupoly_eval(p, x)) for a, p in rec.items()) if v}


def _irec_maxnorm(rec):
    return max((_iupoly_maxnorm(p) for p in rec.values()), default=0)


# ---------------------------------------------------------------------------
# bivariate helpers: recursive form, elements of (Q[Q])[q]
# rec poly = dict q-exponent -> (dict Q-exponent -> Fraction)


def _rec_from_terms(terms):
    rec = {}
    for (a, b), c in terms.items():
        rec.setdefault(a, {})[b] = c
    return rec


def _rec_to_terms(rec):
    return {(a, b): c for a, co in rec.items() for b, c in co.items()}


def _rec_deg(rec):
    return max(rec) if rec else -1


def _rec_scale(rec, co):
    """Multiply by an element of Q[Q]."""
    if not co:
        return {}
    return {a: _upoly_mul(p, co) for a, p in rec.items()}


def _rec_sub(rec, other):
    out = {a: dict(p) for a, p in rec.items()}
    for a, p in other.items():
        s = _upoly_add(out.get(a, {}), _upoly_scale(p, Fraction(-1)))
        if s:
            out[a] = s
        else:
            out.pop(a, None)
    return out


def _rec_shift_mul(rec, k, co):
    """rec * q^k * co  with co in Q[Q]."""
    return {a + k: _upoly_mul(p, co) for a, p in rec.items()} if co else {}


def _rec_content(rec):
    """Gcd in Q[Q] of all q-coefficients."""
    g = {}
    for p in rec.values():
        g = _upoly_gcd(g, p)
        if _upoly_deg(g) == 0:
            break
    return g if g else {}


def _rec_exact_div_content(rec, co):
    out = {}
    for a, p in rec.items():
        quo, rem = _upoly_divmod(p, co)
        if rem:
            raise ArithmeticError("content division not exact")
        out[a] = quo
    return out


def _rec_prem(a, b):
    """Pseudo-remainder of a by b in (Q[Q])[q]."""
    db = _rec_deg(b)
    lead = b[db]
    rem = {k: dict(p) for k, p in a.items()}
    while rem and _rec_deg(rem) >= db:
        da = _rec_deg(rem)
        lc = rem[da]
        rem = _rec_sub(_rec_scale(rem, lead), _rec_shift_mul(b, da - db, lc))
    return rem


def _rec_primitive(rec):
    if not rec:
        return rec
    return _rec_exact_div_content(rec, _rec_content(rec))


def _rec_gcd(a, b):
    """Gcd in (Q[Q])[q] up to a unit, fraction-free primitive PRS."""
    if not a:
        return b
    if not b:
        return a
    ca, cb = _rec_content(a), _rec_content(b)
    x, y = _rec_exact_div_content(a, ca), _rec_exact_div_content(b, cb)
    if _rec_deg(x) < _rec_deg(y):
        x, y = y, x
    while y:
        x, y = y, _rec_primitive(_rec_prem(x, y))
    return _rec_scale(x, _upoly_gcd(ca, cb))


def _rec_exact_div(a, b):
    """Exact division in (Q[Q])[q]; returns None if not exact."""
    if not a:
        return {}
    db = _rec_deg(b)
    lead = b[db]
    quo = {}
    rem = {k: dict(p) for k, p in a.items()}
    while rem:
        da = _rec_deg(rem)
        if da < db:
            return None
        qc, r = _upoly_divmod(rem[da], lead)
        if r:
            return None
        quo[da - db] = qc
        rem = _rec_sub(rem, _rec_shift_mul(b, da - db, qc))
    return quo


# ---------------------------------------------------------------------------


class LaurentPoly:
    """Laurent polynomial in q and Q, terms: (a, b) -> Fraction coefficient."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @staticmethod
    def from_int(n):
        return LaurentPoly({(0, 0): Fraction(n)} if n else {})

    @staticmethod
    def monomial(coeff, a=0, b=0):
        c = Fraction(coeff)
        return LaurentPoly({(a, b): c} if c else {})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0, 0): Fraction(1)}

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.terms or not other.terms:
            return _P_ZERO
        if len(other.terms) == 1:
            (a2, b2), c2 = next(iter(other.terms.items()))
            if c2 == 1:
                return LaurentPoly({(a + a2, b + b2): c
                                    for (a, b), c in self.terms.items()})
            return LaurentPoly({(a + a2, b + b2): c * c2
                                for (a, b), c in self.terms.items()})
        if len(self.terms) == 1:
            return other * self
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                m = (a1 + a2, b1 + b2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return LaurentPoly(out)

    def shift(self, a, b):
        """Multiply by the unit q^a Q^b."""
        return LaurentPoly({(x + a, y + b): c for (x, y), c in self.terms.items()})

    def min_exponents(self):
        ea = min(a for a, _ in self.terms)
        eb = min(b for _, b in self.terms)
        return ea, eb

    def leading(self):
        """(monomial, coefficient) for the lex-largest (q, Q) exponent pair."""
        m = max(self.terms)
        return m, self.terms[m]

    def bar(self):
        """q -> q^-1 and Q -> Q^-1 on every term."""
        return LaurentPoly({(-a, -b): c for (a, b), c in self.terms.items()})

    def invert_Q(self):
        """Q -> Q^-1 with q untouched."""
        return LaurentPoly({(a, -b): c for (a, b), c in self.terms.items()})

    def subs_q_power(self, c):
        """Substitute Q = q^c."""
        out = {}
        for (a, b), co in self.terms.items():
            m = (a + c * b, 0)
            s = out.get(m, 0) + co
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly(out)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"


_P_ZERO = LaurentPoly()
_P_ONE = LaurentPoly.from_int(1)


_GCD_CACHE = {}
_DIV_CACHE = {}


def _poly_gcd(x, y):
    """Gcd of Laurent polynomials up to a unit; inputs nonzero."""
    if len(x.terms) == 1 or len(y.terms) == 1:
        return _P_ONE
    key = (x, y)
    got = _GCD_CACHE.get(key)
    if got is None:
        xa, xb = x.min_exponents()
        ya, yb = y.min_exponents()
        a = _int_rec_from_terms(x.shift(-xa, -xb).terms)
        b = _int_rec_from_terms(y.shift(-ya, -yb).terms)
        if _irec_coprime(a, b):
            got = _P_ONE
        else:
            g = _irec_gcd(a, b)
            got = LaurentPoly({(qa, qb): Fraction(c)
                               for qa, p in g.items() for qb, c in p.items()})
        if len(_GCD_CACHE) > 100000:
            _GCD_CACHE.clear()
        _GCD_CACHE[key] = got
    return got


def _poly_exact_div(x, g):
    """x / g when exact; None otherwise (up to monomial units)."""
    key = (x, g)
    got = _DIV_CACHE.get(key)
    if got is None:
        ga, gb = g.min_exponents()
        g0 = g.shift(-ga, -gb)
        xa, xb = x.min_exponents()
        x0 = x.shift(-xa, -xb)
        quo = _rec_exact_div(_rec_from_terms(x0.terms),
                             _rec_from_terms(g0.terms))
        got = (None, None) if quo is None else \
            (LaurentPoly(_rec_to_terms(quo)), (xa - ga, xb - gb))
        if len(_DIV_CACHE) > 100000:
            _DIV_CACHE.clear()
        _DIV_CACHE[key] = got
    quo, shift = got
    if quo is None:
        return None
    return quo.shift(*shift)


class Scalar:
    """Element of Q(q, Q), stored as a reduced canonical fraction."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den, _reduced=False):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(poly):
        return Scalar(poly, _P_ONE, _reduced=True)

    @staticmethod
    def from_int(n):
        return Scalar(LaurentPoly.from_int(n), _P_ONE, _reduced=True)

    @staticmethod
    def from_fraction(f):
        return Scalar(LaurentPoly.monomial(f), _P_ONE, _reduced=True)

    @staticmethod
    def q_power(a):
        got = _QPOW_CACHE.get(a)
        if got is None:
            got = _QPOW_CACHE[a] = Scalar(LaurentPoly.monomial(1, a, 0),
                                          _P_ONE, _reduced=True)
        return got

    @staticmethod
    def Q_power(b):
        return Scalar(LaurentPoly.monomial(1, 0, b), _P_ONE, _reduced=True)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if self.den is _P_ONE and other.den is _P_ONE:
            return Scalar(self.num + other.num, _P_ONE, _reduced=True)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __neg__(self):
        return Scalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den is _P_ONE and other.den is _P_ONE:
            return Scalar(self.num * other.num, _P_ONE, _reduced=True)
        return Scalar(self.num * other.num, self.den * other.den)

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverting zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise DivisionByZero("dividing by zero")
        return Scalar(self.num * other.den, self.den * other.num)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def bar(self):
        return Scalar(self.num.bar(), self.den.bar())

    def invert_Q(self):
        return Scalar(self.num.invert_Q(), self.den.invert_Q())

    def subs_q_power(self, c):
        """Substitute Q = q^c; raises DivisionByZero if the denominator dies."""
        return Scalar(self.num.subs_q_power(c), self.den.subs_q_power(c))

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _reduce(num, den):
    if num.is_zero():
        return _P_ZERO, _P_ONE
    g = _poly_gcd(num, den)
    if not g.is_one():
        num = _poly_exact_div(num, g)
        den = _poly_exact_div(den, g)
    # clear denominator monomial content, then make it lex-monic
    da, db = den.min_exponents()
    num, den = num.shift(-da, -db), den.shift(-da, -db)
    _, lead = den.leading()
    if lead != 1:
        inv = Fraction(1) / lead
        num = LaurentPoly({m: c * inv for m, c in num.terms.items()})
        den = LaurentPoly({m: c * inv for m, c in den.terms.items()})
    if den.is_one():
        den = _P_ONE
    return num, den


_QPOW_CACHE = {}
ZERO = Scalar.from_int(0)
ONE = Scalar.from_int(1)
Q_SMALL = Scalar.q_power(1)
Q_BIG = Scalar.Q_power(1)


def q_int(a):
    """Quantum integer [a] = (q^a - q^-a)/(q - q^-1) as a Scalar."""
    if a == 0:
        return ZERO
    sign = 1 if a > 0 else -1
    n = abs(a)
    terms = {(n - 1 - 2 * k, 0): Fraction(sign) for k in range(n)}
    return Scalar.of(LaurentPoly(terms))


def q_factorial(k):
    out = ONE
    for i in range(1, k + 1):
        out = out * q_int(i)
    return out


def q_binom(a, k):
    """Quantum binomial [a][a-1]...[a-k+1] / [k]!."""
    if k < 0:
        raise ValueError("k must be a natural number")
    num = ONE
    for i in range(k):
        num = num * q_int(a - i)
    return num / q_factorial(k)


# ---------------------------------------------------------------------------
# string format: integer-coefficient terms `c q^a Q^b` joined by +/-, with
# a single top-level `/` between parenthesised term sums for true fractions.

_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coeff>\d+)?\s*"
    r"(?:q(?:\^(?P<qe>-?\d+))?)?\s*(?:Q(?:\^(?P<Qe>-?\d+))?)?\s*"
)


def format_poly(p):
    if p.is_zero():
        return "0"
    parts = []
    for (a, b) in sorted(p.terms, reverse=True):
        c = p.terms[(a, b)]
        assert c.denominator == 1, "format_poly needs integer coefficients"
        mono = []
        if a:
            mono.append("q" if a == 1 else f"q^{a}")
        if b:
            mono.append("Q" if b == 1 else f"Q^{b}")
        mag = abs(c.numerator)
        if mag != 1 or not mono:
            mono.insert(0, str(mag))
        term = " ".join(mono)
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts)


def format_scalar(s):
    scale = 1
    for c in list(s.num.terms.values()) + list(s.den.terms.values()):
        scale = scale * c.denominator // _gcd_int(scale, c.denominator)
    if scale == 1 and s.den.is_one():
        return format_poly(s.num)
    num = LaurentPoly({m: c * scale for m, c in s.num.terms.items()})
    den = LaurentPoly({m: c * scale for m, c in s.den.terms.items()})
    return f"({format_poly(num)}) / ({format_poly(den)})"


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _parse_terms(text):
    text = text.strip()
    if text == "0":
        return _P_ZERO
    out = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad scalar syntax at {text[pos:]!r}")
        sign, coeff, qe, Qe = m.group("sign", "coeff", "qe", "Qe")
        if sign is None and not first:
            raise ValueError(f"missing +/- before {text[pos:]!r}")
        if coeff is None and "q" not in m.group(0) and "Q" not in m.group(0):
            raise ValueError(f"empty term in {text!r}")
        c = Fraction(int(coeff) if coeff else 1)
        if sign == "-":
            c = -c
        a = int(qe) if qe else (1 if "q" in m.group(0) else 0)
        b = int(Qe) if Qe else (1 if "Q" in m.group(0) else 0)
        mono = (a, b)
        out[mono] = out.get(mono, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(out)


def parse_scalar(text):
    """Parse the README scalar grammar into a Scalar."""
    text = text.strip()
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            if split is not None:
                raise ValueError("more than one top-level fraction")
            split = i
    if split is None:
        return Scalar.of(_parse_terms(_strip_parens(text)))
    num = _parse_terms(_strip_parens(text[:split]))
    den = _parse_terms(_strip_parens(text[split + 1:]))
    return Scalar(num, den)


def _strip_parens(text):
    text = text.strip()
    while text.startswith("(") and text.endswith(")"):
        depth = 0
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0 and i != len(text) - 1:
                    return text
        text = text[1:-1].strip()
    return text
