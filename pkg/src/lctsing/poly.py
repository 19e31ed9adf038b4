"""Sparse multivariate polynomials over exact rationals.

Terms are stored in a dict keyed by exponent tuples; coefficients are
exact rationals and zero coefficients are never kept.  Monomial orders
(global degrevlex, local negative-degree order) are provided as key
functions so that larger keys always mean larger monomials.
"""

from .errors import ParseError
from .rationals import Q, QONE

INF = float("inf")


def exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def exp_divides(a, b):
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def exp_deg(a):
    return sum(a)


class MonomialOrder:
    """A total order on monomials of a fixed number of variables.

    kinds:
      "degrevlex"  global degree reverse lexicographic (a well-order)
      "ds"         local order: lower total degree is larger, ties broken
                   by revlex, so 1 is the largest monomial
    Module extensions (position over term) are handled separately by the
    syzygy machinery.
    """

    __slots__ = ("kind",)

    def __init__(self, kind):
        if kind not in ("degrevlex", "ds"):
            raise ValueError(f"unknown monomial order kind: {kind!r}")
        self.kind = kind

    @property
    def is_local(self):
        return self.kind == "ds"

    def key(self, exp):
        """Sort key; key(a) > key(b) iff a > b in this order."""
        d = sum(exp)
        tie = tuple(-e for e in reversed(exp))
        if self.kind == "degrevlex":
            return (d, tie)
        return (-d, tie)

    def greater(self, a, b):
        return self.key(a) > self.key(b)

    def sorted_desc(self, exps):
        return sorted(exps, key=self.key, reverse=True)

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)


DEGREVLEX = MonomialOrder("degrevlex")
LOCAL_ORDER = MonomialOrder("ds")


class Polynomial:
    """Immutable-by-convention sparse polynomial over Q."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        if terms:
            self.terms = {e: c for e, c in terms.items() if c != 0}
        else:
            self.terms = {}
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, c):
        c = Q(c)
        if c == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {e: QONE})

    @classmethod
    def monomial(cls, nvars, exp, c=1):
        c = Q(c)
        if c == 0:
            return cls(nvars)
        return cls(nvars, {tuple(exp): c})

    # -- queries ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Q(0))

    def total_degree(self):
        """Max total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(exp_deg(e) for e in self.terms)

    def order(self):
        """Minimal total degree of a term; infinity for zero."""
        if not self.terms:
            return INF
        return min(exp_deg(e) for e in self.terms)

    def leading(self, order):
        """(exponent, coefficient) of the largest term in the given order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def sorted_terms(self, order=DEGREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s == 0:
                    del terms[e]
                else:
                    terms[e] = s
        p = Polynomial(self.nvars)
        p.terms = terms
        return p

    def __neg__(self):
        p = Polynomial(self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_add(e1, e2)
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    out[e] = c
                else:
                    s = s + c
                    if s == 0:
                        del out[e]
                    else:
                        out[e] = s
        p = Polynomial(self.nvars)
        p.terms = out
        return p

    __rmul__ = __mul__

    def mul_trunc(self, other, maxdeg):
        """Product with all terms of total degree > maxdeg dropped."""
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            d1 = exp_deg(e1)
            if d1 > maxdeg:
                continue
            for e2, c2 in other.terms.items():
                if d1 + exp_deg(e2) > maxdeg:
                    continue
                e = exp_add(e1, e2)
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    out[e] = c
                else:
                    s = s + c
                    if s == 0:
                        del out[e]
                    else:
                        out[e] = s
        p = Polynomial(self.nvars)
        p.terms = out
        return p

    def scale(self, c):
        c = Q(c)
        p = Polynomial(self.nvars)
        if c != 0:
            p.terms = {e: c * v for e, v in self.terms.items()}
        return p

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def diff(self, i):
        """Formal partial derivative with respect to variable i."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            e2 = e[:i] + (k - 1,) + e[i + 1 :]
            out[e2] = out.get(e2, Q(0)) + c * k
        p = Polynomial(self.nvars)
        p.terms = {e: c for e, c in out.items() if c != 0}
        return p

    def truncate_deg(self, maxdeg):
        """Drop all terms of total degree > maxdeg."""
        p = Polynomial(self.nvars)
        p.terms = {e: c for e, c in self.terms.items() if exp_deg(e) <= maxdeg}
        return p

    def permute_variables(self, perm):
        """Apply x_i -> x_{perm[i]} to exponents."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * self.nvars
            for i, k in enumerate(e):
                e2[perm[i]] = k
            out[tuple(e2)] = c
        p = Polynomial(self.nvars)
        p.terms = out
        return p

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, int):
                return self == Polynomial.const(self.nvars, other)
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Polynomial({poly_str(self, names)})"


# -- operations required by the kernel contract -----------------------


def ring_arithmetic(a, b, op):
    """Exact add / sub / mul on polynomials with matching variable count."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p, i):
    return p.diff(i)


def m_adic_order(p):
    """Minimal total degree of a term of p; infinity for the zero polynomial."""
    return p.order()


# -- printing ----------------------------------------------------------


def _monomial_str(exp, names):
    parts = []
    for i, k in enumerate(exp):
        if k == 0:
            continue
        if k == 1:
            parts.append(names[i])
        else:
            parts.append(f"{names[i]}^{k}")
    return "*".join(parts)


def poly_str(p, names):
    """Canonical text form: terms in descending degrevlex order."""
    if p.is_zero():
        return "0"
    if len(names) != p.nvars:
        raise ValueError("wrong number of variable names")
    chunks = []
    for exp, c in p.sorted_terms(DEGREVLEX):
        mono = _monomial_str(exp, names)
        if not mono:
            body = str(c if c > 0 else -c)
        else:
            ac = c if c > 0 else -c
            body = mono if ac == 1 else f"{ac}*{mono}"
        if not chunks:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(chunks)


# -- parsing -----------------------------------------------------------


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take_int(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", start)
        return int(self.text[start : self.pos])

    def take_name(self):
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]


class _Parser:
    """Recursive descent for +, -, *, ^, parentheses, rational literals."""

    def __init__(self, text, varnames):
        self.tk = _Tokenizer(text)
        self.varnames = list(varnames)
        self.index = {name: i for i, name in enumerate(self.varnames)}
        self.nvars = len(self.varnames)

    def parse(self):
        p = self.expr()
        if self.tk.peek() is not None:
            raise ParseError(
                f"unexpected character {self.tk.peek()!r}", self.tk.pos
            )
        return p

    def expr(self):
        c = self.tk.peek()
        negate = False
        if c in ("+", "-"):
            self.tk.pos += 1
            negate = c == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            c = self.tk.peek()
            if c == "+":
                self.tk.pos += 1
                p = p + self.term()
            elif c == "-":
                self.tk.pos += 1
                p = p - self.term()
            else:
                return p

    def term(self):
        p = self.factor()
        while self.tk.peek() == "*":
            self.tk.pos += 1
            p = p * self.factor()
        return p

    def factor(self):
        p = self.atom()
        if self.tk.peek() == "^":
            self.tk.pos += 1
            pos = self.tk.pos
            c = self.tk.peek()
            if c == "-":
                raise ParseError("negative exponent", pos)
            if c is None or not c.isdigit():
                raise ParseError("expected a nonnegative integer exponent", pos)
            n = self.tk.take_int()
            p = p**n
        return p

    def atom(self):
        c = self.tk.peek()
        pos = self.tk.pos
        if c is None:
            raise ParseError("unexpected end of expression", pos)
        if c == "(":
            self.tk.pos += 1
            p = self.expr()
            if self.tk.peek() != ")":
                raise ParseError("expected ')'", self.tk.pos)
            self.tk.pos += 1
            return p
        if c.isdigit():
            num = self.tk.take_int()
            if self.tk.peek() == "/":
                self.tk.pos += 1
                dpos = self.tk.pos
                d = self.tk.peek()
                if d is None or not d.isdigit():
                    raise ParseError("expected a denominator", dpos)
                den = self.tk.take_int()
                if den == 0:
                    raise ParseError("zero denominator", dpos)
                return Polynomial.const(self.nvars, Q(num, den))
            return Polynomial.const(self.nvars, num)
        if c.isalpha() or c == "_":
            name = self.tk.take_name()
            if name not in self.index:
                raise ParseError(f"unknown variable {name!r}", pos)
            return Polynomial.variable(self.nvars, self.index[name])
        raise ParseError(f"unexpected character {c!r}", pos)


def parse_polynomial(text, varnames):
    """Parse an expression over the named variables into canonical form."""
    return _Parser(text, varnames).parse()
