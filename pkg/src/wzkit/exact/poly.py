"""Dense univariate polynomials and reduced rational functions over a field.

The coefficient tower used throughout the package is::

    QQ  ->  QQ(n)  ->  QQ(n)[k]  ->  QQ(n)(k)

``QQ`` holds :class:`fractions.Fraction` scalars.  ``function_field(QQ, "n")``
is the field of :class:`RatFunc` elements in ``n``; a :class:`Poly` whose
field is that function field is a polynomial in ``k`` over ``QQ(n)``, and so
on.  All values are immutable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class RationalField:
    """The field of rational numbers, backed by :class:`fractions.Fraction`."""

    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, x):
        if type(x) is Fraction:
            return x
        if isinstance(x, (int, Fraction, str)):
            return Fraction(x)
        raise TypeError(f"cannot convert {x!r} to a rational")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class FunctionField:
    """Rational functions in ``var`` over ``base``; obtain via :func:`function_field`."""

    def __init__(self, base, var):
        self.base = base
        self.var = var
        self.zero = RatFunc(Poly((), base, var), Poly((base.one,), base, var), _reduced=True)
        self.one = RatFunc(Poly((base.one,), base, var), Poly((base.one,), base, var), _reduced=True)

    def convert(self, x):
        if isinstance(x, RatFunc):
            if x.num.field is self.base and x.num.var == self.var:
                return x
        elif isinstance(x, Poly):
            if x.field is self.base and x.var == self.var:
                return RatFunc(x, Poly((self.base.one,), self.base, self.var), _reduced=True)
        c = self.base.convert(x)
        return RatFunc(Poly((c,), self.base, self.var), Poly((self.base.one,), self.base, self.var),
                       _reduced=True)

    def gen(self):
        return self.convert(Poly((self.base.zero, self.base.one), self.base, self.var))

    def __repr__(self):
        return f"{self.base!r}({self.var})"


@lru_cache(maxsize=None)
def function_field(base, var):
    return FunctionField(base, var)


def _is_zero(c):
    return not c


class Poly:
    """Dense polynomial, coefficients lowest degree first, no trailing zeros."""

    __slots__ = ("coeffs", "field", "var")

    def __init__(self, coeffs=(), field=QQ, var="x", *, _clean=False):
        if not _clean:
            coeffs = [field.convert(c) for c in coeffs]
            while coeffs and _is_zero(coeffs[-1]):
                coeffs.pop()
            coeffs = tuple(coeffs)
        self.coeffs = coeffs
        self.field = field
        self.var = var

    # -- construction -----------------------------------------------------
    def _new(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        return Poly(tuple(coeffs), self.field, self.var, _clean=True)

    @classmethod
    def gen(cls, field=QQ, var="x"):
        return cls((field.zero, field.one), field, var, _clean=True)

    @classmethod
    def const(cls, c, field=QQ, var="x"):
        return cls((c,), field, var)

    def zero(self):
        return Poly((), self.field, self.var, _clean=True)

    def one(self):
        return Poly((self.field.one,), self.field, self.var, _clean=True)

    # -- inspection -------------------------------------------------------
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def tc(self):
        """Trailing coefficient (constant term)."""
        return self.coeffs[0] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.var == other.var and self.coeffs == other.coeffs
        if not self.coeffs:
            return _is_zero(other)
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0]) if self.coeffs else 0
        return hash((self.var, self.coeffs))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly) and other.var == self.var and other.field is self.field:
            return other
        try:
            c = self.field.convert(other)
        except TypeError:
            return NotImplemented
        return Poly((c,), self.field, self.var)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs), self.field, self.var, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if not (isinstance(other, Poly) and other.var == self.var and other.field is self.field):
            try:
                c = self.field.convert(other)
            except TypeError:
                return NotImplemented
            if not c:
                return self.zero()
            return Poly(tuple(x * c for x in self.coeffs), self.field, self.var, _clean=True)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self.zero()
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = self.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c):
        return self * c

    def divmod(self, other):
        """Euclidean division over the coefficient field."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree()
        if len(r) - 1 < db:
            return self.zero(), self
        inv = self.field.one / other.lc()
        q = [self.field.zero] * (len(r) - db)
        bc = other.coeffs
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if not c:
                continue
            c = c * inv
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = r[i - db + j] - c * bc[j]
        return self._new(q), self._new(r[:db])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def exquo(self, other):
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == self.field.one:
            return self
        inv = self.field.one / lc
        return Poly(tuple(c * inv for c in self.coeffs), self.field, self.var, _clean=True)

    def derivative(self):
        return self._new(c * i for i, c in enumerate(self.coeffs) if i)

    # -- evaluation / substitution ---------------------------------------
    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, q):
        """``self(q)`` for a polynomial ``q`` in the same ring."""
        acc = self.zero()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def shift(self, h):
        """``self(var + h)``."""
        if not h or len(self.coeffs) <= 1:
            return self
        # Taylor shift by repeated synthetic division.
        c = list(self.coeffs)
        d = len(c) - 1
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                c[j] = c[j] + h * c[j + 1]
        return self._new(c)

    def map_coeffs(self, fn, field=None, var=None):
        field = self.field if field is None else field
        return Poly([fn(c) for c in self.coeffs], field, self.var if var is None else var)

    def with_var(self, var):
        return Poly(self.coeffs, self.field, var, _clean=True)

    # -- printing ---------------------------------------------------------
    def __repr__(self):
        return f"Poly({str(self)!r}, {self.var})"

    def __str__(self):
        return format_poly(self)


def _coeff_str(c):
    if isinstance(c, Fraction):
        return str(c)
    return f"({c})"


def format_poly(p, mul="*", pow_="^"):
    """Expanded text, highest degree first, e.g. ``8*n^2+28*n+24``."""
    if not p.coeffs:
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (p.var if i == 1 else f"{p.var}{pow_}{i}")
        if isinstance(c, Fraction):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{a}{mul}{mono}"
            else:
                body = str(a)
        else:
            sign = "+"
            body = f"({c}){mul}{mono}" if mono else f"({c})"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


SPECIALIZATION_POINTS = (Fraction(1009, 7), Fraction(-613, 11), Fraction(2029, 3))


def _coprime_by_specialization(a, b):
    """True when a specialization of the coefficient variable proves gcd(a, b) = 1.

    Only for polynomials over QQ(n).  If n0 keeps both leading coefficients
    nonzero, deg gcd(a(n0), b(n0)) >= deg gcd(a, b), so a constant specialized
    gcd settles coprimality.  False means "not proved", never "not coprime".
    """
    if not isinstance(a.field, FunctionField) or a.field.base is not QQ:
        return False
    for n0 in SPECIALIZATION_POINTS:
        try:
            sa = a.map_coeffs(lambda c: c(n0), QQ)
            sb = b.map_coeffs(lambda c: c(n0), QQ)
        except ZeroDivisionError:
            continue
        if sa.degree() != a.degree() or sb.degree() != b.degree():
            continue
        while sb:
            sa, sb = sb, sa.divmod(sb)[1]
        return sa.degree() == 0
    return False


def poly_gcd(a, b):
    """Monic gcd over a field; gcd(0, 0) = 0."""
    if a and b and a.degree() > 0 and b.degree() > 0 and _coprime_by_specialization(a, b):
        return a.one()
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def sum_is_zero(terms):
    """Exact test that a sum of RatFuncs vanishes, by cross-multiplying without reduction.

    Avoids the gcd computations of repeated ``+``, which swell over QQ(n)
    when the sum is not zero.
    """
    num = den = None
    for t in terms:
        if not t.num:
            continue
        if num is None:
            num, den = t.num, t.den
        elif t.den == den:
            num = num + t.num
        else:
            num, den = num * t.den + t.num * den, den * t.den
    return num is None or not num


class RatFunc:
    """Reduced quotient ``num/den`` of polynomials: gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced=False):
        if den is None:
            den = num.one()
        if not _reduced:
            if not den:
                raise ZeroDivisionError("rational function with zero denominator")
            if not num:
                den = den.one()
            elif den.degree() > 0:
                g = poly_gcd(num, den)
                if g.degree() > 0:
                    num = num.exquo(g)
                    den = den.exquo(g)
            lc = den.lc()
            if lc != den.field.one:
                inv = den.field.one / lc
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @property
    def base(self):
        return self.num.field

    @property
    def var(self):
        return self.num.var

    @property
    def parent(self):
        return function_field(self.num.field, self.num.var)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.num.var == self.num.var and other.num.field is self.num.field:
                return other
        try:
            return self.parent.convert(other)
        except TypeError:
            return NotImplemented

    def is_poly(self):
        return self.den.degree() == 0

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.den.degree() == 0 and self.num.degree() <= 0:
            return hash(self.num)
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.degree() == 0 and other.den.degree() == 0:
            return RatFunc(self.num + other.num, self.den, _reduced=True)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if other.den.degree() == 0:
            return RatFunc(self.num + other.num * self.den, self.den, _reduced=True)
        if self.den.degree() == 0:
            return RatFunc(self.num * other.den + other.num, other.den, _reduced=True)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a or not c:
            return self.parent.zero
        if b.degree() == 0 and d.degree() == 0:
            return RatFunc(a * c, b, _reduced=True)
        if d.degree() > 0:
            g = poly_gcd(a, d)
            if g.degree() > 0:
                a, d = a.exquo(g), d.exquo(g)
        if b.degree() > 0:
            g = poly_gcd(c, b)
            if g.degree() > 0:
                c, b = c.exquo(g), b.exquo(g)
        num, den = a * c, b * d
        lc = den.lc()
        if lc != den.field.one:
            inv = den.field.one / lc
            num, den = num * inv, den * inv
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        lc = den.lc()
        inv = den.field.one / lc
        return RatFunc(num * inv, den * inv, _reduced=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        # exact polynomial quotient keeps fraction-free elimination cheap
        if self.den.degree() == 0 and other.den.degree() == 0 and other.num.degree() > 0:
            q, r = self.num.divmod(other.num)
            if not r:
                return RatFunc(q, self.den, _reduced=True)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num ** e, self.den ** e, _reduced=True)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"pole of {self} at {x}")
        return self.num(x) / d

    def shift(self, h):
        """``self(var + h)``; shifting preserves reducedness and monic denominators."""
        if not h:
            return self
        return RatFunc(self.num.shift(h), self.den.shift(h), _reduced=True)

    def derivative(self):
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(),
                       self.den * self.den)

    def map_coeffs(self, fn, field=None):
        return RatFunc(self.num.map_coeffs(fn, field), self.den.map_coeffs(fn, field))

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    def __str__(self):
        if self.den.degree() == 0:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def ratfunc(num, den=None):
    """Convenience constructor accepting polynomials or scalars."""
    if not isinstance(num, Poly):
        if isinstance(den, Poly):
            num = Poly.const(num, den.field, den.var)
        else:
            raise TypeError("ratfunc needs at least one polynomial argument")
    if den is None:
        den = num.one()
    elif not isinstance(den, Poly):
        den = Poly.const(den, num.field, num.var)
    return RatFunc(num, den)


QQn = function_field(QQ, "n")
