"""Shift operators in QQ(n)<N> and closed forms built from hypergeometric sequences.

``OreOp([a0, a1, ..., ar])`` is ``a0 + a1 N + ... + ar N^r`` acting by
``(L f)(n) = sum a_i(n) f(n + i)``; multiplication follows ``N a(n) = a(n+1) N``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .exact import QQ, QQn, Poly, RatFunc, integer_roots_qq, poly_gcd, solve_linear


class OreError(ValueError):
    pass


def _npoly(c):
    if isinstance(c, Poly):
        return c if c.var == "n" else c.with_var("n")
    if isinstance(c, RatFunc):
        if c.den.degree() > 0:
            raise OreError("operator coefficients must be polynomials")
        return c.num * (Fraction(1) / c.den.lc())
    return Poly((Fraction(c),), QQ, "n")


class OreOp:
    """Linear recurrence operator with polynomial coefficients in n."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [_npoly(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def shift(cls, power=1):
        return cls([0] * power + [1])

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, OreOp) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return OreOp(out)

    def __neg__(self):
        return OreOp([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def lmul(self, p):
        """Left multiplication by a polynomial in n."""
        p = _npoly(p)
        return OreOp([p * c for c in self.coeffs])

    def __mul__(self, other):
        return ore_mul(self, other)

    def canonical(self):
        """Integer coefficients, content 1 (over QQ[n]), top coefficient with positive lead."""
        if not self.coeffs:
            return self
        g = Poly((), QQ, "n")
        for c in self.coeffs:
            g = poly_gcd(g, c)
        cs = [c.exquo(g) for c in self.coeffs]
        den = 1
        for c in cs:
            for x in c.coeffs:
                den = lcm(den, x.denominator)
        num_g = 0
        for c in cs:
            for x in c.coeffs:
                num_g = gcd(num_g, int(x * den))
        scale = Fraction(den, num_g)
        if cs[-1].lc() < 0:
            scale = -scale
        return OreOp([c * scale for c in cs])

    def __repr__(self):
        return f"OreOp({format_operator(self)!r})"

    def __str__(self):
        return format_operator(self)


def format_operator(op):
    """Canonical text: ``(c_r(n))*N^r + ... + (c_0(n))*N^0``, zero terms omitted."""
    from .exact import format_poly

    if not op.coeffs:
        return "0"
    parts = [f"({format_poly(c)})*N^{i}" for i, c in reversed(list(enumerate(op.coeffs))) if c]
    return " + ".join(parts)


def ore_mul(a, b):
    """Composition a∘b using N·c(n) = c(n+1)·N."""
    if not a.coeffs or not b.coeffs:
        return OreOp([])
    out = [Poly((), QQ, "n")] * (a.order + b.order + 1)
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j, bj in enumerate(b.coeffs):
            if bj:
                out[i + j] = out[i + j] + ai * bj.shift(Fraction(i))
    return OreOp(out)


def equal_up_to_unit(a, b):
    return a.canonical() == b.canonical()


def apply(op, values, n):
    """sum a_i(n) * values[n + i]."""
    total = Fraction(0)
    for i, c in enumerate(op.coeffs):
        try:
            v = values[n + i]
        except (KeyError, IndexError):
            raise OreError(f"missing-values: no value at index {n + i}") from None
        if c:
            total += c(Fraction(n)) * v
    return total


# -- right division in QQ(n)<N> ------------------------------------------------

def _rat_ops(op):
    return [QQn.convert(c) for c in op.coeffs]


def _strip(cs):
    while cs and not cs[-1]:
        cs.pop()
    return cs


def right_divmod(a, b):
    """a = q∘b + r with order(r) < order(b); coefficients in QQ(n)."""
    a = _strip(list(a))
    b = _strip(list(b))
    if not b:
        raise ZeroDivisionError("right division by the zero operator")
    q = [QQn.zero] * max(len(a) - len(b) + 1, 1)
    db = len(b) - 1
    while len(a) - 1 >= db:
        s = len(a) - 1 - db
        u = a[-1] / b[-1].shift(s)
        q[s] = q[s] + u
        for j, bj in enumerate(b):
            if bj:
                a[j + s] = a[j + s] - u * bj.shift(s)
        a = _strip(a)
    return _strip(q), a


def _from_rat(cs):
    den = Poly((Fraction(1),), QQ, "n")
    for c in cs:
        den = den * c.den.exquo(poly_gcd(den, c.den))
    return OreOp([c.num * den.exquo(c.den) for c in cs])


def gcrd(a, b):
    """Greatest common right divisor, returned in canonical (primitive integer) form."""
    if not a or not b:
        raise OreError("gcrd needs nonzero operators")
    x, y = _rat_ops(a), _rat_ops(b)
    while y:
        x, y = y, right_divmod(x, y)[1]
    return _from_rat(x).canonical()


# -- hypergeometric sequences -----------------------------------------------------

@dataclass(frozen=True)
class HyperTermN:
    """Sequence with value(n+1) = quotient(n) * value(n) for n >= start.

    Values below ``start`` come from ``prefix``; indices absent there are undefined.
    """

    start: int
    value: Fraction
    quotient: RatFunc
    prefix: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        q = QQn.convert(self.quotient)
        object.__setattr__(self, "quotient", q)
        if q.den.degree() > 0:
            bad = [r for r in integer_roots_qq(q.den) if r >= self.start]
            if bad:
                raise OreError(f"quotient has poles at {bad} beyond start {self.start}")

    @classmethod
    def constant(cls, c, start=0):
        return cls(start, Fraction(c), QQn.one)

    def eval(self, n):
        if n < self.start:
            for m, v in self.prefix:
                if m == n:
                    return v
            raise OreError(f"undefined value at n={n}")
        v = self.value
        for m in range(self.start, n):
            if not v:
                return v
            v *= self.quotient(Fraction(m))
        return v

    def values(self, lo, hi):
        """Values for lo <= n <= hi as a dict."""
        out = {}
        for n in range(lo, min(hi + 1, self.start)):
            try:
                out[n] = self.eval(n)
            except OreError:
                pass
        if hi >= self.start:
            v = self.value
            for m in range(self.start, hi + 1):
                if m >= lo:
                    out[m] = v
                if m < hi and v:
                    v *= self.quotient(Fraction(m))
        return out

    def is_zero(self):
        return not self.value and all(not v for _, v in self.prefix)

    def __neg__(self):
        return HyperTermN(self.start, -self.value, self.quotient,
                          tuple((m, -v) for m, v in self.prefix))

    def scale(self, c):
        c = Fraction(c)
        return HyperTermN(self.start, c * self.value, self.quotient,
                          tuple((m, c * v) for m, v in self.prefix))

    def restart(self, start, prefix_values=None):
        """Same sequence with a later start; prefix filled from ``prefix_values`` or own values."""
        if start < self.start:
            raise OreError("restart cannot move the start index down")
        vals = self.values(min([self.start] + [m for m, _ in self.prefix]), start)
        if prefix_values is None:
            prefix = tuple(sorted((m, v) for m, v in vals.items() if m < start))
        else:
            prefix = tuple(sorted(prefix_values.items()))
        return HyperTermN(start, vals[start], self.quotient, prefix)

    def times_ratfunc(self, r, start=None):
        """The sequence r(n) * self(n); start pushed past integer zeros/poles of r."""
        r = QQn.convert(r)
        if not r:
            return HyperTermN(self.start if start is None else start, Fraction(0), QQn.one)
        start = self.start if start is None else start
        bad = [x for p in (r.num, r.den) if p.degree() > 0 for x in integer_roots_qq(p)]
        n0 = max([start, self.start] + [x + 1 for x in bad])
        base = self.values(min([start] + [m for m, _ in self.prefix]), n0)
        prefix = []
        for m in range(start, n0):
            if m in base:
                try:
                    prefix.append((m, r(Fraction(m)) * base[m]))
                except ZeroDivisionError:
                    pass
        q = self.quotient * r.shift(1) / r
        return HyperTermN(n0, r(Fraction(n0)) * base[n0], q, tuple(prefix))


@dataclass(frozen=True)
class ClosedForm:
    """Finite sum of hypergeometric sequences; no terms means the zero sequence."""

    terms: tuple = ()

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def constant(cls, c):
        return cls((HyperTermN.constant(c),)) if c else cls(())

    def eval(self, n):
        return sum((t.eval(n) for t in self.terms), Fraction(0))

    def values(self, lo, hi):
        out = {n: Fraction(0) for n in range(lo, hi + 1)}
        for t in self.terms:
            tv = t.values(lo, hi)
            for n in list(out):
                if n in tv:
                    out[n] += tv[n]
                else:
                    del out[n]
        return out

    def __neg__(self):
        return ClosedForm(tuple(-t for t in self.terms))

    def __sub__(self, other):
        return ClosedForm(self.terms + tuple(-t for t in other.terms))

    def __add__(self, other):
        return ClosedForm(self.terms + other.terms)

    def scale(self, c):
        return ClosedForm(tuple(t.scale(c) for t in self.terms))

    def is_zero(self):
        return closed_form_equal(self, ClosedForm.zero())


def homogenize(op, rhs):
    """Annihilator (N∘L − q·L) of every f with L f = rhs, rhs hypergeometric with quotient q."""
    if isinstance(rhs, ClosedForm):
        if len(rhs.terms) != 1:
            raise OreError("homogenize needs a single hypergeometric right-hand side")
        rhs = rhs.terms[0]
    if rhs.is_zero():
        raise OreError("zero-rhs: the recurrence is already homogeneous")
    q = rhs.quotient
    left = ore_mul(OreOp.shift(1), op).lmul(q.den)
    right = op.lmul(q.num)
    return (left - right).canonical()


def _merge_by_quotient(terms, n0):
    groups = {}
    for t in terms:
        v = t.eval(n0)
        groups[t.quotient] = groups.get(t.quotient, Fraction(0)) + v
    return [(q, v) for q, v in groups.items() if v]


def closed_form_equal(a, b):
    """Decide a(n) == b(n) for every index where either is defined.

    Below the common start index the values are compared directly.  From there
    on the difference, a sum of m hypergeometric sequences, satisfies an
    order <= m recurrence found by linear algebra; it vanishes identically iff
    it vanishes on the initial window and after every integer zero of the
    leading coefficient.
    """
    terms = list(a.terms) + [-t for t in b.terms]
    if not terms:
        return True
    n0 = max(t.start for t in terms)
    lo = min([t.start for t in terms] + [m for t in terms for m, _ in t.prefix])
    for m in range(lo, n0):
        va = _try_eval(a, m)
        vb = _try_eval(b, m)
        if va != vb:
            return False
    groups = _merge_by_quotient(terms, n0)
    if not groups:
        return True
    m = len(groups)
    if m == 1:
        return False
    # rows: sequences; columns: shifts j = 0..m
    matrix = []
    for q, _ in groups:
        row, acc = [], QQn.one
        for j in range(m + 1):
            row.append(acc)
            acc = acc * q.shift(j)
        matrix.append(row)
    sol = solve_linear(matrix, [QQn.zero] * m, QQn)
    vec = sol.nullspace[0]
    order = max(j for j, c in enumerate(vec) if c)
    rec = _from_rat(list(vec[: order + 1]))
    lead = rec.coeffs[-1]
    check = set(range(n0, n0 + order))
    if lead.degree() > 0:
        check |= {r + order for r in integer_roots_qq(lead) if r >= n0}
    diff = ClosedForm(tuple(terms))
    return all(diff.eval(i) == 0 for i in sorted(check))


def _try_eval(cf, m):
    try:
        return cf.eval(m)
    except OreError:
        return None


def _fit_quotient(vals, lo, d):
    """Rational function q of degrees <= (d, d) with q(m) = vals[m+1]/vals[m], or None."""
    pts = list(range(lo, lo + 2 * d + 4))
    rows = []
    for m in pts:
        rho = vals[m + 1] / vals[m]
        rows.append([Fraction(m) ** i for i in range(d + 1)] + [-rho * Fraction(m) ** i for i in range(d + 1)])
    sol = solve_linear(rows, [Fraction(0)] * len(rows), QQ)
    for vec in sol.nullspace:
        num = Poly(vec[: d + 1], QQ, "n")
        den = Poly(vec[d + 1:], QQ, "n")
        if den:
            return RatFunc(num, den)
    return None


def simplify_closed_form(cf):
    """An equal ClosedForm with a single term when one exists with modest degrees.

    The quotient is guessed from values and the result is accepted only after
    closed_form_equal confirms it, so the output always equals the input.
    """
    if len(cf.terms) <= 1:
        return cf
    lo = min([t.start for t in cf.terms] + [m for t in cf.terms for m, _ in t.prefix])
    dmax = sum(max(t.quotient.num.degree(), t.quotient.den.degree()) for t in cf.terms)
    hi = lo + 4 * dmax + 12
    try:
        vals = {m: cf.eval(m) for m in range(lo, hi + 1)}
    except OreError:
        return cf
    if not any(vals.values()):
        return ClosedForm.zero() if closed_form_equal(cf, ClosedForm.zero()) else cf
    first = next(m for m in range(lo, hi + 1) if vals[m])
    if any(not vals[m] for m in range(first, hi + 1)):
        return cf
    for d in range(dmax + 1):
        if first + 2 * d + 4 > hi:
            break
        q = _fit_quotient(vals, first, d)
        if q is None:
            continue
        try:
            prefix = tuple((m, vals[m]) for m in range(lo, first))
            cand = ClosedForm((HyperTermN(first, vals[first], q, prefix),))
        except (OreError, ZeroDivisionError):
            continue
        if closed_form_equal(cf, cand):
            return cand
    return cf
