"""Weighted polynomial rings, monomial orders and the immutable Poly type."""

import re
from functools import cached_property
from operator import add

from ..errors import MalformedInput, ParseError
from .field import FieldSpec, QQ

_ELIM_RE = re.compile(r"^(?:weighted-elimination|elim)\((.*)\)$")


class PolyRing:
    """k[x_1..x_n] with positive integer weights and a global monomial order.

    ``order`` is ``"grevlex"`` (weighted-degree refined grevlex), ``"lex"``, or
    ``"weighted-elimination(v1,v2,...)"`` which eliminates the listed block.
    """

    def __init__(self, variables, weights=None, order="grevlex", field=QQ):
        variables = tuple(str(v) for v in variables)
        if len(set(variables)) != len(variables):
            raise MalformedInput(f"duplicate variable names in {variables}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise MalformedInput(f"bad variable name {v!r}")
        if weights is None:
            weights = (1,) * len(variables)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(variables):
            raise MalformedInput("one weight per variable is required")
        if any(w < 1 for w in weights):
            raise MalformedInput("weights must be positive integers")
        if not isinstance(field, FieldSpec):
            field = FieldSpec(field)
        self.field = field
        self.variables = variables
        self.weights = weights
        self.order = self._normalize_order(order)
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}

    def _normalize_order(self, order):
        order = order.replace(" ", "")
        if order in ("grevlex", "lex"):
            return order
        m = _ELIM_RE.match(order)
        if m:
            block = tuple(b for b in m.group(1).split(",") if b)
            unknown = [b for b in block if b not in self.variables]
            if unknown:
                raise MalformedInput(f"elimination block names unknown variables {unknown}")
            return "weighted-elimination(" + ",".join(block) + ")"
        raise MalformedInput(f"unknown monomial order {order!r}")

    @property
    def elimination_block(self):
        m = _ELIM_RE.match(self.order)
        if not m:
            return ()
        return tuple(self._index[v] for v in m.group(1).split(",") if v)

    def _key(self):
        return (self.field, self.variables, self.weights, self.order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"PolyRing({list(self.variables)}, weights={list(self.weights)}, "
                f"order={self.order!r}, field={self.field!r})")

    def with_order(self, order):
        return PolyRing(self.variables, self.weights, order, self.field)

    # -- monomials ---------------------------------------------------------

    def wdeg(self, exps):
        return sum(w * e for w, e in zip(self.weights, exps))

    @cached_property
    def mono_key(self):
        """Return the sort-key function of the ring order (larger key = larger monomial)."""
        w = self.weights
        n = self.nvars
        rev = range(n - 1, -1, -1)
        if self.order == "lex":
            return lambda e: e
        if self.order == "grevlex":
            def key(e):
                return (sum(a * b for a, b in zip(w, e)),) + tuple(-e[i] for i in rev)
            return key
        block = self.elimination_block
        def key(e):
            return ((sum(w[i] * e[i] for i in block), sum(a * b for a, b in zip(w, e)))
                    + tuple(-e[i] for i in rev))
        return key

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise MalformedInput(f"unknown variable {name!r}") from None

    # -- constructors ------------------------------------------------------

    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def monomial(self, exps, coeff=1):
        c = self.field(coeff)
        return Poly(self, {tuple(exps): c} if c else {})

    def __call__(self, text):
        """Parse a polynomial string (or coerce an int / Poly)."""
        if isinstance(text, Poly):
            if text.ring != self:
                raise MalformedInput("polynomial belongs to another ring")
            return text
        if isinstance(text, int):
            return self.constant(text)
        return parse_poly(self, text)


class Poly:
    """An exact sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- inspection --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def sorted_terms(self):
        key = self.ring.mono_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            return None
        e = max(self.terms, key=self.ring.mono_key)
        return e, self.terms[e]

    def leading_monomial(self):
        lt = self.leading_term()
        return None if lt is None else lt[0]

    def leading_coefficient(self):
        lt = self.leading_term()
        return self.ring.field.zero if lt is None else lt[1]

    def degree(self):
        """Weighted degree (max over terms); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.wdeg(e) for e in self.terms)

    def is_homogeneous(self):
        return len({self.ring.wdeg(e) for e in self.terms}) <= 1

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return sorted(used)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise MalformedInput("ring mismatch in polynomial arithmetic")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.field.characteristic
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Poly(self.ring, {e: (-c) % p for e, c in self.terms.items()})
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.ring.field.characteristic
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(add, e1, e2))
                v = out.get(e, 0) + c1 * c2
                if p:
                    v %= p
                out[e] = v
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        c = self.ring.field(c) if not isinstance(c, type(self.ring.field.one)) else c
        p = self.ring.field.characteristic
        if p:
            return Poly(self.ring, {e: v * c % p for e, v in self.terms.items() if v * c % p})
        if not c:
            return self.ring.zero
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def primitive(self):
        """Canonical scalar normalization.

        Over QQ: integer coefficients with content 1 and positive leading
        coefficient.  Over GF(p): monic.
        """
        if not self.terms:
            return self
        F = self.ring.field
        if F.characteristic:
            return self.monic()
        from math import gcd, lcm
        den = 1
        for c in self.terms.values():
            den = lcm(den, int(c.denominator))
        num = 0
        for c in self.terms.values():
            num = gcd(num, int(c * den))
        s = F(den) / num
        if self.leading_coefficient() < 0:
            s = -s
        return self.scale(s)

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- output --------------------------------------------------------------

    def __str__(self):
        return format_poly(self.ring, self.terms)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def format_monomial(ring, exps):
    parts = []
    for v, a in zip(ring.variables, exps):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_poly(ring, terms):
    """Canonical string: terms in decreasing ring order, '+'/'-' separated."""
    if not terms:
        return "0"
    key = ring.mono_key
    F = ring.field
    out = []
    for e in sorted(terms, key=key, reverse=True):
        s = F.format(terms[e])
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        m = format_monomial(ring, e)
        if m:
            body = m if s == "1" else f"{s}*{m}"
        else:
            body = s
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# -- parsing -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} in polynomial", column=pos + 1)
        num, name, op = m.groups()
        col = m.start(m.lastindex) + 1
        if num is not None:
            tokens.append(("num", int(num), col))
        elif name is not None:
            tokens.append(("name", name, col))
        else:
            tokens.append(("op", "^" if op == "**" else op, col))
        pos = m.end()
    return tokens


class _PolyParser:
    """Recursive descent: expr := term (('+'|'-') term)*; term := factor (('*'|'/')? factor)*."""

    def __init__(self, ring, text):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg):
        tok = self.peek()
        raise ParseError(msg, column=tok[2] if tok else None)

    def parse(self):
        if not self.tokens:
            raise ParseError("empty polynomial")
        value = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "+-":
            self.take()
            rhs = self.term()
            value = value + rhs if tok[1] == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while (tok := self.peek()) is not None:
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                value = value * self.power()
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                den = self.power()
                if not den.is_constant() or den.is_zero():
                    self.error("division only by nonzero constants")
                value = value.scale(self.ring.field.inv(den.leading_coefficient()))
            elif tok[0] in ("num", "name") or (tok[0] == "op" and tok[1] == "("):
                value = value * self.power()  # implicit multiplication, e.g. 2x
            else:
                break
        return value

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok is None or exp_tok[0] != "num":
                self.error("exponent must be a nonnegative integer")
            base = base ** exp_tok[1]
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            raise ParseError("unexpected end of polynomial")
        kind, val, col = tok
        if kind == "num":
            return self.ring.constant(val)
        if kind == "name":
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r}", column=col)
            return self.ring.var(val)
        if val == "(":
            inner = self.expr()
            close = self.take()
            if close is None or close[1] != ")":
                raise ParseError("missing ')'", column=col)
            return inner
        if val == "-":
            return -self.power()
        raise ParseError(f"unexpected token {val!r}", column=col)


def parse_poly(ring, text):
    return _PolyParser(ring, text).parse()
