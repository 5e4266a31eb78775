"""Proper hypergeometric terms F(n, k) and hyperexponential integrands c(x) f(x)^n.

A :class:`ProperTerm` is a product

    constant * prod base^(a n + b k) * prod C(top, bottom)^(+-m)
             * prod (arg)!^(+-m) * P(n, k)

with integer-linear arguments.  Binomials follow the falling-factorial
convention: C(m, r) = m (m-1) ... (m-r+1) / r! for r >= 0 and 0 for r < 0,
so C(-1, r) = (-1)^r.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exact import QQ, QQn, Poly, RatFunc, integer_roots_qq
from .ore import HyperTermN

KPOLY_ONE = Poly((QQn.one,), QQn, "k")


class TermError(ValueError):
    """Raised for undefined evaluations and malformed terms."""


@dataclass(frozen=True, order=True)
class Lin:
    """Integer-linear form ``n*n + k*k + c``."""

    n: int = 0
    k: int = 0
    c: int = 0

    def __call__(self, n0, k0=0):
        return self.n * n0 + self.k * k0 + self.c

    def __add__(self, other):
        if isinstance(other, int):
            return Lin(self.n, self.k, self.c + other)
        return Lin(self.n + other.n, self.k + other.k, self.c + other.c)

    def __sub__(self, other):
        if isinstance(other, int):
            return Lin(self.n, self.k, self.c - other)
        return Lin(self.n - other.n, self.k - other.k, self.c - other.c)

    def __neg__(self):
        return Lin(-self.n, -self.k, -self.c)

    def scale(self, s):
        return Lin(s * self.n, s * self.k, s * self.c)

    def delta(self, dn, dk):
        return self.n * dn + self.k * dk

    def on_line(self, beta, gamma):
        """Substitute k = beta*n + gamma."""
        return Lin(self.n + self.k * beta, 0, self.c + self.k * gamma)

    def kpoly(self, offset=0):
        """The form plus ``offset`` as a polynomial in k over QQ(n)."""
        c0 = QQn.convert(Poly((self.c + offset, self.n), QQ, "n"))
        return Poly((c0, QQn.convert(self.k)), QQn, "k")

    def __str__(self):
        parts = []
        for coef, name in ((self.n, "n"), (self.k, "k")):
            if coef:
                body = name if abs(coef) == 1 else f"{abs(coef)}*{name}"
                parts.append(("-" if coef < 0 else "+", body))
        if self.c or not parts:
            parts.append(("-" if self.c < 0 else "+", str(abs(self.c))))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += sign + body
        return out


@lru_cache(maxsize=65536)
def binom(m, r):
    """Generalized binomial coefficient for integer m, r."""
    if r < 0:
        return 0
    if m >= 0:
        return comb(m, r) if r <= m else 0
    return (-1) ** r * comb(r - m - 1, r)


def _kpoly_eval(p, n0, k0):
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * k0 + c(n0)
    return acc


def _merge(entries):
    acc = {}
    for key, cnt in entries:
        acc[key] = acc.get(key, 0) + cnt
    return tuple(sorted((key, cnt) for key, cnt in acc.items() if cnt))


@dataclass(frozen=True)
class ProperTerm:
    """Normalized proper hypergeometric term.

    ``binomials`` holds ``((top, bottom), count)`` and ``factorials`` holds
    ``(arg, count)``; a negative count places the factor in the denominator.
    ``poly`` is a polynomial in k over QQ(n) with polynomial coefficients.
    """

    constant: Fraction = Fraction(1)
    powers: tuple = ()
    binomials: tuple = ()
    factorials: tuple = ()
    poly: Poly = field(default=KPOLY_ONE)

    @classmethod
    def build(cls, constant=1, powers=(), binomials=(), factorials=(), poly=None):
        constant = Fraction(constant)
        bases = {}
        for base, exp in powers:
            base = Fraction(base)
            if base == 0:
                raise TermError("power with zero base")
            bases[base] = bases.get(base, Lin()) + exp
        pw = []
        for base, exp in bases.items():
            if base == 1:
                continue
            if exp.c:
                constant *= base ** exp.c
                exp = Lin(exp.n, exp.k, 0)
            if exp.n or exp.k:
                pw.append((base, exp))
        if poly is None:
            poly = KPOLY_ONE
        if poly.degree() == 0 and poly.lc().num.degree() == 0:
            constant *= poly.lc().num.lc()
            poly = KPOLY_ONE
        elif poly.degree() > 0 or poly.lc().num.degree() > 0:
            # keep content in the constant so equal terms compare equal
            lead = poly.lc().num.lc()
            constant *= lead
            poly = poly * (Fraction(1) / lead)
        if not poly:
            constant, poly = Fraction(0), KPOLY_ONE
        return cls(constant, tuple(sorted(pw)), _merge(binomials), _merge(factorials), poly)

    def __mul__(self, other):
        return ProperTerm.build(
            self.constant * other.constant,
            self.powers + other.powers,
            self.binomials + other.binomials,
            self.factorials + other.factorials,
            self.poly * other.poly,
        )

    def linear_forms(self):
        for _, e in self.powers:
            yield e
        for (top, bot), _ in self.binomials:
            yield top
            yield bot
        for arg, _ in self.factorials:
            yield arg

    def on_line(self, beta, gamma):
        """The k-free term n -> F(n, beta*n + gamma)."""
        kn = QQn.convert(Poly((gamma, beta), QQ, "n"))
        pval = self.poly(kn)
        return ProperTerm.build(
            self.constant,
            [(b, e.on_line(beta, gamma)) for b, e in self.powers],
            [((t.on_line(beta, gamma), b.on_line(beta, gamma)), c) for (t, b), c in self.binomials],
            [(a.on_line(beta, gamma), c) for a, c in self.factorials],
            Poly((pval,), QQn, "k"),
        )

    def depends_on_k(self):
        return self.poly.degree() > 0 or any(f.k for f in self.linear_forms())


def eval_term(term, n0, k0=0):
    """Exact value F(n0, k0); raises TermError('undefined') off the domain."""
    val = term.constant
    if not val:
        return Fraction(0)
    for base, e in term.powers:
        val *= base ** e(n0, k0)
    for (top, bot), cnt in term.binomials:
        b = binom(top(n0, k0), bot(n0, k0))
        if cnt < 0 and b == 0:
            raise TermError(f"undefined: zero denominator binomial at n={n0}, k={k0}")
        val *= Fraction(b) ** cnt
    for arg, cnt in term.factorials:
        a = arg(n0, k0)
        if a < 0:
            raise TermError(f"undefined: factorial of {a} at n={n0}, k={k0}")
        val *= Fraction(factorial(a)) ** cnt
    if term.poly.degree() > 0 or term.poly.lc() != 1:
        val *= _kpoly_eval(term.poly, n0, k0)
    return val


def _rising_ratio(form, d, num, den):
    """Append the factors of (form + d)! / form! to num/den lists."""
    if d > 0:
        num.extend(form.kpoly(i) for i in range(1, d + 1))
    elif d < 0:
        den.extend(form.kpoly(-i) for i in range(0, -d))


def shift_ratio(term, dn, dk):
    """Formal quotient F(n+dn, k+dk) / F(n, k) as a rational function in k over QQ(n)."""
    num, den = [], []
    scalar = Fraction(1)
    for base, e in term.powers:
        scalar *= base ** e.delta(dn, dk)
    for (top, bot), cnt in term.binomials:
        dt, db = top.delta(dn, dk), bot.delta(dn, dk)
        n_, d_ = [], []
        _rising_ratio(top, dt, n_, d_)
        _rising_ratio(bot, db, d_, n_)
        _rising_ratio(top - bot, dt - db, d_, n_)
        if cnt < 0:
            n_, d_ = d_, n_
        for _ in range(abs(cnt)):
            num.extend(n_)
            den.extend(d_)
    for arg, cnt in term.factorials:
        n_, d_ = [], []
        _rising_ratio(arg, arg.delta(dn, dk), n_, d_)
        if cnt < 0:
            n_, d_ = d_, n_
        for _ in range(abs(cnt)):
            num.extend(n_)
            den.extend(d_)
    p_num = KPOLY_ONE * QQn.convert(scalar)
    p_den = KPOLY_ONE
    if term.poly.degree() > 0 or term.poly.lc().num.degree() > 0:
        shifted = term.poly.shift(QQn.convert(dk)).map_coeffs(lambda c: c.shift(dn))
        p_num = p_num * shifted
        p_den = p_den * term.poly
    for f in num:
        p_num = p_num * f
    for f in den:
        p_den = p_den * f
    return RatFunc(p_num, p_den)


def shift_quotient(term, var="k"):
    """F(.., var+1) / F(.., var) as a reduced rational function in k over QQ(n)."""
    if var == "k":
        return shift_ratio(term, 0, 1)
    if var == "n":
        return shift_ratio(term, 1, 0)
    raise ValueError(f"unknown variable {var!r}")


def kfree_to_n(r):
    """Collapse a k-free element of QQ(n)(k) to a rational function in n."""
    if r.num.degree() > 0 or r.den.degree() > 0:
        raise TermError("expected a k-free rational function")
    return r.num.lc() / r.den.lc()


def _nonneg_int_roots(p):
    return [r for r in integer_roots_qq(p)] if p.degree() > 0 else []


def hyper_from_kfree(term, start=0, evaluate=None):
    """HyperTermN for a k-free term, with bad points pushed into the prefix."""
    if term.depends_on_k():
        raise TermError("term still depends on k")
    if evaluate is None:
        def evaluate(m):
            return eval_term(term, m, 0)
    if not term.constant:
        return HyperTermN(start, Fraction(0), QQn.one)
    q = kfree_to_n(shift_ratio(term, 1, 0))
    roots = _nonneg_int_roots(q.num) + _nonneg_int_roots(q.den)
    n0 = max([start] + [r + 1 for r in roots] + _sign_changes(term))
    prefix = []
    for m in range(start, n0):
        try:
            prefix.append((m, evaluate(m)))
        except TermError:
            pass
    g = HyperTermN(n0, evaluate(n0), q, tuple(prefix))
    for m, v in g.values(n0, n0 + LINE_CHECK).items():
        if v != evaluate(m):
            raise TermError(f"pole-on-line: formal quotient disagrees with values at n={m}")
    return g


LINE_CHECK = 8


def _sign_changes(term):
    """Indices past every sign change of a factorial-chain argument of a k-free term.

    The formal quotient of C(a, b) = a!/(b!(a-b)!) only matches values once
    a, b and a-b keep a fixed sign.
    """
    forms = [a for a, _ in term.factorials]
    for (top, bot), _ in term.binomials:
        forms += [top, bot, top - bot]
    out = []
    for f in forms:
        if f.n:
            out.append(-(f.c // f.n) if f.n > 0 else f.c // -f.n + 1)
    return out


def specialize_line(term, beta, gamma, start=0):
    """The hypergeometric sequence g(n) = F(n, beta*n + gamma) for n >= start."""
    if beta < 0:
        raise TermError("line slope must be nonnegative")
    line = term.on_line(beta, gamma)
    return hyper_from_kfree(line, start, lambda m: eval_term(term, m, beta * m + gamma))


# -- support analysis --------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """Certified zero set {(m, k): lo(m) < k <= hi(m)} for all m >= 0.

    Lines are ``(beta, gamma)`` meaning ``beta*m + gamma``; ``None`` is unbounded.
    """

    lo: tuple | None
    hi: tuple | None

    def contains(self, m, k):
        if self.lo is not None and not k > self.lo[0] * m + self.lo[1]:
            return False
        if self.hi is not None and not k <= self.hi[0] * m + self.hi[1]:
            return False
        return True


@dataclass(frozen=True)
class VanishInfo:
    lower_natural: bool
    upper_line: tuple | None
    regions: tuple = ()

    def certifies(self, m, k):
        return any(r.contains(m, k) for r in self.regions)


def _dominates(a, b):
    """Line a >= line b for every m >= 0."""
    return a[0] >= b[0] and a[1] >= b[1]


def _half_line(form):
    """Turn ``form(m, k) < 0`` into ('lo', line), ('hi', line), True/False (k-free) or None."""
    if form.k == -1:
        return ("lo", (form.n, form.c))
    if form.k == 1:
        return ("hi", (-form.n, -form.c - 1))
    if form.k == 0:
        return form.n <= 0 and form.c < 0
    return None


def _intersect(conds):
    lo = hi = None
    for cond in conds:
        if cond is None or cond is False:
            return None
        if cond is True:
            continue
        side, line = cond
        if side == "lo":
            if lo is None or _dominates(line, lo):
                lo = line
            elif not _dominates(lo, line):
                return None
        else:
            if hi is None or _dominates(hi, line):
                hi = line
            elif not _dominates(line, hi):
                return None
    if lo is not None and hi is not None and (hi[0] < lo[0]):
        # eventually empty; useless as a certificate
        return None
    return Region(lo, hi)


def _factorials_defined(term, region):
    for arg, _ in term.factorials:
        if arg.k > 0:
            if region.lo is None:
                return False
            lo_n, lo_c = region.lo
            a_n, a_c = arg.n + arg.k * lo_n, arg.c + arg.k * (lo_c + 1)
        elif arg.k < 0:
            if region.hi is None:
                return False
            hi_n, hi_c = region.hi
            a_n, a_c = arg.n + arg.k * hi_n, arg.c + arg.k * hi_c
        else:
            a_n, a_c = arg.n, arg.c
        if a_n < 0 or a_c < 0:
            return False
    return True


def support_analysis(term, max_shift=0):
    """Certify where F vanishes via the binomial rule (bottom < 0, or 0 <= top < bottom).

    Regions are stated in the actual first argument m of F, so they hold for
    every shift m = n .. n + max_shift.  Terms with denominator binomials get
    no certificate.
    """
    if max_shift < 0:
        raise ValueError("max_shift must be nonnegative")
    regions = []
    if not any(cnt < 0 for _, cnt in term.binomials):
        for (top, bot), cnt in term.binomials:
            candidates = [
                [_half_line(bot)],
                [_half_line(-top - 1), _half_line(top - bot)],
            ]
            for conds in candidates:
                region = _intersect(conds)
                if region is not None and _factorials_defined(term, region):
                    regions.append(region)
    regions = tuple(dict.fromkeys(regions))
    lower = any(r.lo is None and r.hi is not None and r.hi[0] >= 0 and r.hi[1] >= -1
                for r in regions)
    upper = None
    for r in regions:
        if r.hi is None and r.lo is not None:
            if upper is None or _dominates(upper, r.lo):
                upper = r.lo
    return VanishInfo(lower, upper, regions)


# -- hyperexponential integrands --------------------------------------------

@dataclass(frozen=True)
class HyperexpTerm:
    """F(n, x) = prefactor(x) * base(x)^n with rational prefactor and polynomial base."""

    prefactor: RatFunc
    base: Poly

    def __post_init__(self):
        if not self.base:
            raise TermError("hyperexponential base must be nonzero")

    def eval(self, n0, x0):
        x0 = Fraction(x0)
        return self.prefactor(x0) * self.base(x0) ** n0

    def log_derivative(self):
        """D_x F / F = c'/c + n f'/f as a rational function in x over QQ(n)."""
        lift = lambda p: p.map_coeffs(QQn.convert, QQn)
        c = self.prefactor
        nn = QQn.gen()
        f = self.base
        part_c = RatFunc(lift(c.num.derivative() * c.den - c.num * c.den.derivative()),
                         lift(c.num * c.den))
        part_f = RatFunc(lift(f.derivative()) * nn, lift(f))
        return part_c + part_f

    def n_quotient(self):
        return self.base
