"""Text input and output: summands, integrands, ranges, operators.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom [('^' | '**') unary]          (right-associative)
    atom   := number | name | call | '(' expr ')'
    call   := ('binomial' | 'factorial') '(' expr {',' expr} ')'

Names are n, k (alias j), x and, in operators, N.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt, lcm

from .exact import QQ, QQn, Poly, RatFunc
from .oracle import SumRange
from .ore import ClosedForm, HyperTermN, OreOp
from .termlib import KPOLY_ONE, HyperexpTerm, Lin, ProperTerm, binom

__all__ = [
    "ReaderError", "parse", "parse_term", "eval_ast", "term_to_text", "parse_operator",
    "parse_pair", "print_operator", "format_closed_form", "parse_range", "parse_bounds",
]

FUNCTIONS = ("binomial", "factorial")
ALIASES = {"j": "k"}


class ReaderError(ValueError):
    def __init__(self, message, pos=None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} at position {pos}")


# -- tokens and syntax tree -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^(),\[\]]))")


@dataclass(frozen=True)
class Tok:
    kind: str  # num, name, op, end
    text: str
    pos: int


def tokenize(text):
    out, i = [], 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m:
            raise ReaderError(f"syntax error: unexpected character {text[i]!r}", i)
        start = m.start(m.lastindex)
        kind = ("num", "name", "op")[m.lastindex - 1]
        out.append(Tok(kind, m.group(m.lastindex), start))
        i = m.end()
    out.append(Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, names):
        self.toks = tokenize(text)
        self.i = 0
        self.names = names

    def peek(self):
        return self.toks[self.i]

    def take(self, text=None):
        tok = self.toks[self.i]
        if text is not None and tok.text != text:
            found = tok.text or "end of input"
            raise ReaderError(f"syntax error: expected {text!r}, found {found!r}", tok.pos)
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ReaderError(f"syntax error: unexpected {tok.text!r}", tok.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take().text
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.peek().text == "-":
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek().text in ("^", "**"):
            self.take()
            node = ("pow", node, self.unary())
        return node

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return ("num", Fraction(int(tok.text)))
        if tok.text == "(":
            node = self.expr()
            self.take(")")
            return node
        if tok.kind == "name":
            if tok.text in FUNCTIONS:
                self.take("(")
                args = [self.expr()]
                while self.peek().text == ",":
                    self.take()
                    args.append(self.expr())
                self.take(")")
                want = 2 if tok.text == "binomial" else 1
                if len(args) != want:
                    raise ReaderError(f"syntax error: {tok.text} takes {want} argument(s)", tok.pos)
                return ("call", tok.text, tuple(args))
            name = ALIASES.get(tok.text, tok.text)
            if name not in self.names:
                raise ReaderError(f"syntax error: unknown name {tok.text!r}", tok.pos)
            return ("var", name)
        found = tok.text or "end of input"
        raise ReaderError(f"syntax error: unexpected {found!r}", tok.pos)


def parse(text, names=("n", "k", "x")):
    """Syntax tree of ``text``; nodes are tuples tagged num/var/add/sub/mul/div/neg/pow/call."""
    return _Parser(text, names).parse()


def eval_ast(node, env):
    """Direct exact evaluation of a syntax tree (independent of term recognition)."""
    tag = node[0]
    if tag == "num":
        return node[1]
    if tag == "var":
        return Fraction(env[node[1]])
    if tag == "neg":
        return -eval_ast(node[1], env)
    if tag == "call":
        args = [eval_ast(a, env) for a in node[2]]
        if any(a.denominator != 1 for a in args):
            raise ReaderError(f"non-integer argument to {node[1]}")
        if node[1] == "binomial":
            return Fraction(binom(int(args[0]), int(args[1])))
        if args[0] < 0:
            raise ReaderError("factorial of a negative integer")
        return Fraction(factorial(int(args[0])))
    a, b = eval_ast(node[1], env), eval_ast(node[2], env)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    if tag == "mul":
        return a * b
    if tag == "div":
        return a / b
    if b.denominator != 1:
        raise ReaderError("non-integer exponent")
    return a ** int(b)


def _names(node):
    tag = node[0]
    if tag == "var":
        return {node[1]}
    if tag == "num":
        return set()
    if tag == "call":
        return set().union(*(_names(a) for a in node[2]))
    return set().union(*(_names(c) for c in node[1:]))


def _has_call(node):
    tag = node[0]
    if tag == "call":
        return True
    if tag in ("num", "var"):
        return False
    return any(_has_call(c) for c in node[1:])


# -- polynomial views -------------------------------------------------------------

class _NotPoly(Exception):
    pass


def _int_exponent(node):
    """Integer value of a constant exponent node, else None."""
    if _names(node) or _has_call(node):
        return None
    v = eval_ast(node, {})
    return int(v) if v.denominator == 1 else None


def _nk_poly(node):
    """Node as a polynomial in k over QQ(n) with polynomial coefficients."""
    tag = node[0]
    if tag == "num":
        return Poly((QQn.convert(node[1]),), QQn, "k")
    if tag == "var":
        if node[1] == "k":
            return Poly.gen(QQn, "k")
        if node[1] == "n":
            return Poly((QQn.gen(),), QQn, "k")
        raise _NotPoly
    if tag == "neg":
        return -_nk_poly(node[1])
    if tag in ("add", "sub", "mul"):
        a, b = _nk_poly(node[1]), _nk_poly(node[2])
        return a + b if tag == "add" else a - b if tag == "sub" else a * b
    if tag == "div":
        if _names(node[2]) or _has_call(node[2]):
            raise _NotPoly
        d = eval_ast(node[2], {})
        if not d:
            raise ReaderError("division by zero")
        return _nk_poly(node[1]) * QQn.convert(1 / d)
    if tag == "pow":
        e = _int_exponent(node[2])
        if e is None or e < 0:
            raise _NotPoly
        return _nk_poly(node[1]) ** e
    raise _NotPoly


def _lin(node):
    try:
        p = _nk_poly(node)
    except _NotPoly:
        raise ReaderError("not-proper: argument is not integer-linear in n and k") from None
    if p.degree() > 1:
        raise ReaderError("not-proper: argument is not integer-linear in n and k")
    c0 = p[0].num if p else Poly((), QQ, "n")
    ck = p[1].num if p.degree() == 1 else Poly((), QQ, "n")
    if c0.degree() > 1 or ck.degree() > 0:
        raise ReaderError("not-proper: argument is not integer-linear in n and k")
    vals = [c0[0], c0[1], ck[0]]
    if any(Fraction(v).denominator != 1 for v in vals):
        raise ReaderError("not-proper: non-integer coefficient in a linear argument")
    return Lin(int(vals[1]), int(vals[2]), int(vals[0]))


# -- proper terms -----------------------------------------------------------------

def _invert(t):
    if t.poly != KPOLY_ONE:
        raise ReaderError("not-proper: division by a polynomial")
    if not t.constant:
        raise ReaderError("division by zero")
    return ProperTerm.build(
        1 / t.constant,
        [(b, -e) for b, e in t.powers],
        [(bt, -c) for bt, c in t.binomials],
        [(a, -c) for a, c in t.factorials],
    )


def _repeat(t, e):
    if e < 0:
        t, e = _invert(t), -e
    out = ProperTerm.build()
    for _ in range(e):
        out = out * t
    return out


def _proper(node):
    tag = node[0]
    if not _has_power(node):
        try:
            return ProperTerm.build(poly=_nk_poly(node))
        except _NotPoly:
            pass
    if tag in ("add", "sub"):
        raise ReaderError("not-proper: sums of non-polynomial factors are not proper terms")
    if tag == "neg":
        t = _proper(node[1])
        return ProperTerm.build(-t.constant, t.powers, t.binomials, t.factorials, t.poly)
    if tag == "mul":
        return _proper(node[1]) * _proper(node[2])
    if tag == "div":
        return _proper(node[1]) * _invert(_proper(node[2]))
    if tag == "call":
        if node[1] == "binomial":
            return ProperTerm.build(binomials=[((_lin(node[2][0]), _lin(node[2][1])), 1)])
        return ProperTerm.build(factorials=[(_lin(node[2][0]), 1)])
    if tag == "pow":
        e = _int_exponent(node[2])
        if e is not None:
            return _repeat(_proper(node[1]), e)
        if _names(node[1]) or _has_call(node[1]):
            raise ReaderError("not-proper: symbolic exponent on a non-constant base")
        base = eval_ast(node[1], {})
        if not base:
            raise ReaderError("not-proper: zero base with symbolic exponent")
        return ProperTerm.build(powers=[(base, _lin(node[2]))])
    raise ReaderError("not-proper: unsupported expression")


def _has_power(node):
    """True if some exponent is symbolic (so the node is not a plain polynomial)."""
    tag = node[0]
    if tag in ("num", "var"):
        return False
    if tag == "call":
        return True
    if tag == "pow" and _int_exponent(node[2]) is None:
        return True
    return any(_has_power(c) for c in node[1:] if isinstance(c, tuple))


# -- hyperexponential integrands --------------------------------------------------

def _xrat(node):
    """n-free node as a rational function of x over QQ."""
    tag = node[0]
    if tag == "num":
        return RatFunc(Poly((node[1],), QQ, "x"))
    if tag == "var":
        if node[1] != "x":
            raise ReaderError("not-hyperexponential: n appears outside an exponent")
        return RatFunc(Poly.gen(QQ, "x"))
    if tag == "neg":
        return -_xrat(node[1])
    if tag == "call":
        raise ReaderError("not-hyperexponential: binomial/factorial in an integrand")
    if tag == "pow":
        e = _int_exponent(node[2])
        if e is None:
            raise ReaderError("not-hyperexponential: symbolic exponent inside a sum")
        return _xrat(node[1]) ** e
    a, b = _xrat(node[1]), _xrat(node[2])
    return {"add": a + b, "sub": a - b, "mul": a * b, "div": a / b}[tag]


def _hyper(node):
    """(c, f) with node == c(x) * f(x)^n, f a rational function to be checked later."""
    tag = node[0]
    one = RatFunc(Poly((Fraction(1),), QQ, "x"))
    if "n" not in _names(node):
        return _xrat(node), one
    if tag == "neg":
        c, f = _hyper(node[1])
        return -c, f
    if tag == "mul":
        (c1, f1), (c2, f2) = _hyper(node[1]), _hyper(node[2])
        return c1 * c2, f1 * f2
    if tag == "div":
        (c1, f1), (c2, f2) = _hyper(node[1]), _hyper(node[2])
        return c1 / c2, f1 / f2
    if tag == "pow":
        e = _int_exponent(node[2])
        if e is not None:
            c, f = _hyper(node[1])
            return c ** e, f ** e
        if "n" in _names(node[1]):
            raise ReaderError("not-hyperexponential: n in the base of a power")
        if node[2][0] == "var" and node[2][1] == "n":
            return one, _xrat(node[1])
        try:
            p = _nk_poly(node[2])
        except _NotPoly:
            raise ReaderError("not-hyperexponential: exponent is not linear in n") from None
        if p.degree() > 0 or p[0].num.degree() > 1 or any(Fraction(c).denominator != 1 for c in p[0].num.coeffs):
            raise ReaderError("not-hyperexponential: exponent is not integer-linear in n")
        a = int(p[0].num[1]) if p[0].num.degree() == 1 else 0
        b = int(p[0].num[0]) if p[0].num else 0
        base = _xrat(node[1])
        return base ** b, base ** a
    raise ReaderError("not-hyperexponential: n outside an exponent")


def parse_term(text):
    """ProperTerm for summands in n, k; HyperexpTerm for integrands c(x) f(x)^n."""
    node = parse(text)
    names = _names(node)
    if "x" in names:
        if "k" in names:
            raise ReaderError("not-hyperexponential: summation variable in an integrand")
        c, f = _hyper(node)
        if f.den.degree() > 0:
            raise ReaderError("not-hyperexponential: base of the n-th power is not a polynomial")
        f = f.num * (1 / f.den.lc())
        if not c:
            raise ReaderError("not-hyperexponential: zero integrand")
        return HyperexpTerm(c, f)
    return _proper(node)


# -- term printing ----------------------------------------------------------------

def _frac(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _nk_text(p):
    """Expanded text of a polynomial in k over QQ(n) with polynomial coefficients."""
    monos = []
    for j in range(p.degree(), -1, -1):
        cn = p[j].num
        for i in range(cn.degree(), -1, -1):
            if cn[i]:
                monos.append((cn[i], i, j))
    parts = []
    for c, i, j in monos:
        vars_ = [v if e == 1 else f"{v}^{e}" for v, e in (("n", i), ("k", j)) if e]
        mag = abs(c)
        body = "*".join(([] if mag == 1 and vars_ else [_frac(mag)]) + vars_)
        parts.append(("-" if c < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, body in parts[1:]:
        out += s + body
    return out


def _xpoly_text(p):
    return str(p).replace(" ", "") if p.degree() > 0 else _frac(p[0])


def term_to_text(term):
    """Text that :func:`parse_term` maps back to an equal term."""
    if isinstance(term, HyperexpTerm):
        c = term.prefactor
        head = f"({_xpoly_text(c.num)})"
        if c.den.degree() > 0 or c.den[0] != 1:
            head += f"/({_xpoly_text(c.den)})"
        return f"{head}*({_xpoly_text(term.base)})^n"
    factors = [f"({_frac(term.constant)})"]
    for b, e in term.powers:
        factors.append(f"({_frac(b)})^({e})")
    for (top, bot), cnt in term.binomials:
        factors.append(f"binomial({top},{bot})" + ("" if cnt == 1 else f"^({cnt})"))
    for arg, cnt in term.factorials:
        factors.append(f"factorial({arg})" + ("" if cnt == 1 else f"^({cnt})"))
    if term.poly != KPOLY_ONE:
        factors.append(f"({_nk_text(term.poly)})")
    return "*".join(factors)


# -- operators --------------------------------------------------------------------

def _op_value(node):
    """Node as {power of N: polynomial in n}, coefficients written left of N."""
    tag = node[0]
    zero = Poly((), QQ, "n")
    if tag == "num":
        return {0: Poly((node[1],), QQ, "n")}
    if tag == "var":
        return {1: Poly((Fraction(1),), QQ, "n")} if node[1] == "N" else {0: Poly.gen(QQ, "n")}
    if tag == "neg":
        return {j: -p for j, p in _op_value(node[1]).items()}
    if tag in ("add", "sub"):
        a, b = _op_value(node[1]), _op_value(node[2])
        out = dict(a)
        for j, p in b.items():
            out[j] = out.get(j, zero) + (p if tag == "add" else -p)
        return out
    if tag == "mul":
        a, b = _op_value(node[1]), _op_value(node[2])
        if any(j > 0 for j, p in a.items() if p) and any(p.degree() > 0 for p in b.values()):
            raise ReaderError("operator coefficients must stand to the left of N")
        return _convolve(a, b)
    if tag == "div":
        if _names(node[2]) or _has_call(node[2]):
            raise ReaderError("operator division only by constants")
        d = eval_ast(node[2], {})
        return {j: p * (1 / d) for j, p in _op_value(node[1]).items()}
    if tag == "pow":
        e = _int_exponent(node[2])
        if e is None or e < 0:
            raise ReaderError("operator exponents must be nonnegative integers")
        base = _op_value(node[1])
        out = {0: Poly((Fraction(1),), QQ, "n")}
        for _ in range(e):
            out = _convolve(out, base)
        return out
    raise ReaderError("unsupported operator expression")


def _convolve(a, b):
    zero = Poly((), QQ, "n")
    out = {}
    for i, p in a.items():
        for j, q in b.items():
            out[i + j] = out.get(i + j, zero) + p * q
    return out


def parse_operator(text):
    """OreOp from canonical or paper-style text (coefficients to the left of N)."""
    text = text.strip()
    if text.startswith("["):
        return parse_pair(text)[0]
    vals = _op_value(parse(text, names=("n", "N")))
    order = max([j for j, p in vals.items() if p], default=0)
    return OreOp([vals.get(j, Poly((), QQ, "n")) for j in range(order + 1)])


def _split_pair(text):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ReaderError("expected a bracketed pair [operator, rhs]")
    body, depth = text[1:-1], 0
    for i, ch in enumerate(body):
        depth += ch in "(["
        depth -= ch in ")]"
        if ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise ReaderError("expected a bracketed pair [operator, rhs]")


def parse_pair(text):
    """(OreOp, rhs text) from ``[operator, rhs]``."""
    op_text, rhs_text = _split_pair(text)
    return parse_operator(op_text), rhs_text.strip()


def _divisors(m):
    m = abs(m)
    small = [d for d in range(1, isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


FACTOR_LIMIT = 10 ** 12


def _linear_factors(p):
    """(content, [(a, b), ...]) with p = content * prod (a n + b), or None."""
    if p.degree() <= 0:
        return p[0] if p else Fraction(0), []
    cs = list(p.coeffs)
    factors = []
    while cs[0] == 0:
        factors.append((1, 0))
        cs = cs[1:]
    q = Poly(cs, QQ, "n")
    while q.degree() > 0:
        ints = _integer_coeffs(q)
        a0, b0 = ints[-1], ints[0]
        if max(abs(a0), abs(b0)) > FACTOR_LIMIT:
            return None
        found = None
        for s in _divisors(a0):
            for r in _divisors(b0):
                for sign in (1, -1):
                    root = Fraction(sign * r, s)
                    if not q(root):
                        found = root
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        a, b = found.denominator, -found.numerator
        factors.append((a, b))
        q = q.exquo(Poly((Fraction(b), Fraction(a)), QQ, "n"))
    content = q[0]
    factors.sort(key=lambda ab: Fraction(-ab[1], ab[0]))
    return content, factors


def _integer_coeffs(q):
    den = lcm(*(Fraction(c).denominator for c in q.coeffs))
    return [int(c * den) for c in q.coeffs]


def _lin_text(a, b):
    head = "n" if a == 1 else f"{a}*n"
    if b == 0:
        return head
    return f"({head}{b:+d})"


def _paper_coeff(p):
    """Unsigned text of |p| (sign handled by the caller) and the sign."""
    sign = 1 if p.lc() > 0 else -1
    p = p * sign
    fac = _linear_factors(p)
    if fac is None:
        return sign, f"({format_npoly(p)})"
    content, lins = fac
    parts = [] if content == 1 and lins else [_frac(content)]
    parts += [_lin_text(a, b) for a, b in lins]
    return sign, "*".join(parts)


def format_npoly(p):
    return str(p).replace(" ", "") if p.degree() > 0 else _frac(p[0] if p else 0)


def _paper_operator(op):
    parts = []
    for j, c in enumerate(op.coeffs):
        if not c:
            continue
        sign, body = _paper_coeff(c)
        if j:
            power = "N" if j == 1 else f"N^{j}"
            body = power if body == "1" else f"{body}*{power}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += (" - " if sign < 0 else " + ") + body
    return out


def _factored_quotient(q):
    """c*(a1 n+b1)*.../(d*(...)) text for a quotient whose parts split into linear factors."""
    fn, fd = _linear_factors(q.num), _linear_factors(q.den)
    if fn is None or fd is None:
        return f"({format_npoly(q.num)})/({format_npoly(q.den)})"
    c = Fraction(fn[0]) / Fraction(fd[0])
    num = [str(c.numerator)] if c.numerator != 1 or not fn[1] else []
    num += [_lin_text(a, b) for a, b in fn[1]]
    den = [str(c.denominator)] if c.denominator != 1 else []
    den += [_lin_text(a, b) for a, b in fd[1]]
    text = "*".join(num) if num else "1"
    if den:
        text += "/" + (den[0] if len(den) == 1 else "(" + "*".join(den) + ")")
    return text


def _hyper_text(t, factored):
    q = t.quotient
    if factored:
        qt = _factored_quotient(q)
    else:
        qt = f"({format_npoly(q.num)})/({format_npoly(q.den)})"
    out = f"hyper(start={t.start}, value={_frac(t.value)}, quotient={qt}"
    if t.prefix:
        out += ", prefix={" + ", ".join(f"{m}: {_frac(v)}" for m, v in t.prefix) + "}"
    return out + ")"


def _constant_value(rhs):
    """The constant c if rhs(n) == c everywhere it is defined from its first index."""
    from .ore import closed_form_equal

    if not rhs.terms:
        return Fraction(0)
    lo = min([t.start for t in rhs.terms] + [m for t in rhs.terms for m, _ in t.prefix])
    try:
        c = rhs.eval(lo)
    except Exception:
        return None
    starts_ok = all(t.start == lo or any(m == lo for m, _ in t.prefix) for t in rhs.terms)
    if starts_ok and closed_form_equal(rhs, ClosedForm((HyperTermN(lo, c, QQn.one),))):
        return c
    return None


def format_closed_form(rhs, factored=False):
    c = _constant_value(rhs)
    if c is not None:
        return _frac(c)
    return " + ".join(_hyper_text(t, factored) for t in rhs.terms)


def print_operator(op, rhs=None, style="canonical"):
    """Operator text; with ``rhs`` the bracketed pair ``[operator, rhs]``.

    The paper style multiplies the pair by -1 when needed so that the N^0
    coefficient (or the lowest nonzero one) has positive leading coefficient,
    and factors coefficients into linear factors when possible.
    """
    if style == "canonical":
        text = str(op.canonical())
        if rhs is None:
            return text
        return f"[{text}, {format_closed_form(rhs)}]"
    if style != "paper":
        raise ValueError(f"unknown style {style!r}")
    low = next(c for c in op.coeffs if c)
    if low.lc() < 0:
        op = -op
        rhs = -rhs if rhs is not None else None
    text = _paper_operator(op)
    if rhs is None:
        return text
    return f"[{text}, {format_closed_form(rhs, factored=True)}]"


# -- ranges -----------------------------------------------------------------------

_UPPER = re.compile(r"^\s*(?:([+-]?\s*\d*)\s*\*?\s*n)?\s*([+-]?\s*\d+)?\s*$")


def parse_range(text, start=0):
    """SumRange from ``LO..UP`` with UP of the form n, 2n, 3*n-1 or an integer."""
    if ".." not in text:
        raise ReaderError("range must look like LO..UP")
    lo_text, up_text = text.split("..", 1)
    try:
        lower = int(lo_text)
    except ValueError:
        raise ReaderError(f"lower bound {lo_text.strip()!r} is not an integer") from None
    m = _UPPER.match(up_text)
    bad = ReaderError(f"upper bound {up_text.strip()!r} is not of the form beta*n+gamma")
    if not m or not up_text.strip():
        raise bad
    coef, const = m.group(1), m.group(2)
    if coef is None:
        beta = 0
    else:
        coef = coef.replace(" ", "")
        beta = {"": 1, "+": 1, "-": -1}.get(coef)
        if beta is None:
            beta = int(coef)
        if const is not None and const.strip()[0] not in "+-":
            raise bad  # "2n5"
    gamma = int(const.replace(" ", "")) if const else 0
    return SumRange(lower, beta, gamma, start)


def parse_bounds(text):
    """(a, b) rationals from ``A..B``."""
    if ".." not in text:
        raise ReaderError("bounds must look like A..B")
    a, b = text.split("..", 1)
    try:
        return Fraction(a.strip()), Fraction(b.strip())
    except ValueError:
        raise ReaderError(f"bounds {text!r} are not rationals") from None
