"""Exact coefficients and multivariate polynomials over F_p or Q.

Monomials are packed into Python integers whose natural order *is* the
monomial order, so comparing, sorting and multiplying monomials are plain
integer operations.  For grevlex the packing is

    key(e) = |e| * B**n + sum_i (B - 1 - e_i) * B**i

and for lex ``key(e) = sum_i e_i * B**(n-1-i)``.  In both cases
``key(a + b) = key(a) + key(b) - key(0)``, which is what makes monomial
multiplication an integer addition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInput

EXP_BASE = 1 << 16
POS_MAX = 1 << 20
ORDERS = ("grevlex", "lex")
DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _monokey(exp: Sequence[int], order: str) -> int:
    B = EXP_BASE
    n = len(exp)
    for e in exp:
        if e < 0 or e >= B:
            raise OverflowError(f"exponent {e} outside [0, {B})")
    if order == "grevlex":
        deg = sum(exp)
        if deg >= B:
            raise OverflowError(f"total degree {deg} outside [0, {B})")
        k = deg * B**n
        for i, e in enumerate(exp):
            k += (B - 1 - e) * B**i
        return k
    k = 0
    for i, e in enumerate(exp):
        k += e * B ** (n - 1 - i)
    return k


def mono_compare(a: Sequence[int], b: Sequence[int], order: str = "grevlex") -> int:
    """Compare two exponent vectors; returns -1, 0 or 1."""
    if len(a) != len(b):
        raise InvalidInput("exponent vectors of different length")
    if order not in ORDERS:
        raise InvalidInput(f"unknown monomial order {order!r}")
    ka, kb = _monokey(a, order), _monokey(b, order)
    return (ka > kb) - (ka < kb)


class _Codec:
    """Packing of monomials (and module terms) into order-preserving ints."""

    def __init__(self, n: int, order: str):
        self.n = n
        self.order = order
        self.span = EXP_BASE ** (n + 1)
        self.one = _monokey((0,) * n, order)
        self._dec: dict[int, tuple[int, ...]] = {}

    def encode(self, exp: Sequence[int]) -> int:
        if len(exp) != self.n:
            raise InvalidInput(f"expected {self.n} exponents, got {len(exp)}")
        return _monokey(exp, self.order)

    def decode(self, k: int) -> tuple[int, ...]:
        e = self._dec.get(k)
        if e is None:
            B, n = EXP_BASE, self.n
            if self.order == "grevlex":
                r = k % B**n
                e = tuple(B - 1 - (r // B**i) % B for i in range(n))
            else:
                e = tuple((k // B ** (n - 1 - i)) % B for i in range(n))
            self._dec[k] = e
        return e

    def degree(self, k: int) -> int:
        if self.order == "grevlex":
            return k // EXP_BASE**self.n
        return sum(self.decode(k))

    # module terms: key = (POS_MAX - pos) * span + monokey
    def pos_offset(self, pos: int) -> int:
        return (POS_MAX - pos) * self.span

    def split(self, key: int) -> tuple[int, int]:
        return POS_MAX - key // self.span, key % self.span


@dataclass(frozen=True)
class RingSpec:
    """F_p[x0..x{n-1}] (or Q[...] when characteristic is 0) with a monomial order."""

    characteristic: int = DEFAULT_PRIME
    num_vars: int = 2
    order: str = "grevlex"
    codec: _Codec = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise InvalidInput(f"characteristic {self.characteristic} is neither 0 nor prime")
        if self.num_vars < 0:
            raise InvalidInput("num_vars must be >= 0")
        if self.order not in ORDERS:
            raise InvalidInput(f"unknown monomial order {self.order!r}")
        object.__setattr__(self, "codec", _Codec(self.num_vars, self.order))

    def coerce(self, c):
        p = self.characteristic
        if p == 0:
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return c.numerator * pow(c.denominator, -1, p) % p
        return int(c) % p

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(c)
        return pow(c, -1, self.characteristic)

    def format_coeff(self, c) -> str:
        p = self.characteristic
        if p and c > p // 2:
            return str(c - p)
        return str(c)

    def __str__(self):
        return format_ring(self)

    def __reduce__(self):
        return (RingSpec, (self.characteristic, self.num_vars, self.order))


def format_ring(ring: RingSpec) -> str:
    if ring.characteristic == 0:
        return f"Q[{ring.num_vars}]"
    return f"Fp[{ring.num_vars}],p={ring.characteristic}"


_RING_RE = re.compile(r"^\s*(?:Fp\[(\d+)\]\s*(?:,\s*p\s*=\s*(\d+))?|Q\[(\d+)\])\s*$")


def parse_ring(text: str, order: str = "grevlex") -> RingSpec:
    """Parse ``Fp[n],p=<prime>`` or ``Q[n]``."""
    m = _RING_RE.match(text)
    if not m:
        raise InvalidInput(f"cannot parse ring {text!r}; expected 'Fp[n],p=<prime>' or 'Q[n]'")
    if m.group(3) is not None:
        return RingSpec(0, int(m.group(3)), order)
    p = int(m.group(2)) if m.group(2) else DEFAULT_PRIME
    return RingSpec(p, int(m.group(1)), order)


def _axpy(ring: RingSpec, acc: dict, c, src: dict, shift: int) -> None:
    """acc -= c * src, with every key of src moved by ``shift``.  In place."""
    p = ring.characteristic
    get = acc.get
    if p:
        for k, v in src.items():
            k += shift
            r = (get(k, 0) - c * v) % p
            if r:
                acc[k] = r
            else:
                acc.pop(k, None)
    else:
        for k, v in src.items():
            k += shift
            r = get(k, 0) - c * v
            if r:
                acc[k] = r
            else:
                acc.pop(k, None)


class Poly:
    """An immutable polynomial; terms live in a dict keyed by packed monomials."""

    __slots__ = ("ring", "_d", "_hash")

    def __init__(self, ring: RingSpec, d: dict | None = None):
        self.ring = ring
        self._d = d if d is not None else {}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def const(cls, ring, c):
        c = ring.coerce(c)
        return cls(ring, {ring.codec.one: c} if c else {})

    @classmethod
    def var(cls, ring, i: int):
        if not 0 <= i < ring.num_vars:
            raise InvalidInput(f"variable index {i} out of range for {ring}")
        e = [0] * ring.num_vars
        e[i] = 1
        return cls(ring, {ring.codec.encode(e): ring.coerce(1)})

    @classmethod
    def monomial(cls, ring, exp, c=1):
        c = ring.coerce(c)
        return cls(ring, {ring.codec.encode(tuple(exp)): c} if c else {})

    @classmethod
    def from_terms(cls, ring, terms: Iterable):
        """Build from (coefficient, exponent vector) pairs; duplicates are summed."""
        d: dict = {}
        enc = ring.codec.encode
        for c, e in terms:
            k = enc(tuple(e))
            d[k] = ring.coerce(d.get(k, 0) + ring.coerce(c))
            if not d[k]:
                del d[k]
        return cls(ring, d)

    @classmethod
    def parse(cls, ring, text: str):
        return _Parser(ring, text).parse()

    def _coerce_other(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise InvalidInput(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.ring, other)
        return NotImplemented

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> tuple:
        dec = self.ring.codec.decode
        return tuple((self._d[k], dec(k)) for k in sorted(self._d, reverse=True))

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    @property
    def lead_exp(self):
        return self.ring.codec.decode(max(self._d)) if self._d else None

    @property
    def lead_coeff(self):
        return self._d[max(self._d)] if self._d else 0

    def total_degree(self) -> int:
        if not self._d:
            return -1
        deg = self.ring.codec.degree
        return max(deg(k) for k in self._d)

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and self.ring.codec.one in self._d)

    def constant_term(self):
        return self._d.get(self.ring.codec.one, 0)

    def is_homogeneous(self) -> bool:
        deg = self.ring.codec.degree
        return len({deg(k) for k in self._d}) <= 1

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        d = dict(self._d)
        _axpy(self.ring, d, -1, other._d, 0)
        return Poly(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        d = {}
        _axpy(self.ring, d, 1, self._d, 0)
        return Poly(self.ring, d)

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        d = dict(self._d)
        _axpy(self.ring, d, 1, other._d, 0)
        return Poly(self.ring, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        if not self._d or not other._d:
            return Poly(self.ring)
        if self.total_degree() + other.total_degree() >= EXP_BASE:
            raise OverflowError("product degree exceeds exponent range")
        ring = self.ring
        one = ring.codec.one
        d: dict = {}
        a, b = (self._d, other._d) if len(self._d) <= len(other._d) else (other._d, self._d)
        for k, c in a.items():
            _axpy(ring, d, -c, b, k - one)
        return Poly(ring, d)

    __rmul__ = __mul__

    def scale(self, c):
        c = self.ring.coerce(c)
        if not c:
            return Poly(self.ring)
        d = {}
        _axpy(self.ring, d, -c, self._d, 0)
        return Poly(self.ring, d)

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidInput("negative exponent")
        result = Poly.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.ring, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    # text ---------------------------------------------------------------
    def __str__(self):
        if not self._d:
            return "0"
        ring = self.ring
        out = []
        for c, e in self.terms:
            mono = "*".join(
                f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k
            )
            cs = ring.format_coeff(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"


@dataclass(frozen=True)
class AlgebraElement:
    """An element x of the acting ring together with its degree |x|.

    Only degree 0 is exercised; the field exists so the data model matches
    the graded setting.
    """

    value: Poly
    degree: int = 0

    @property
    def ring(self):
        return self.value.ring

    def __pow__(self, n: int):
        return AlgebraElement(self.value**n, self.degree * n)

    def __str__(self):
        return str(self.value)


def elements(ring: RingSpec, polys) -> tuple[AlgebraElement, ...]:
    """Coerce strings / Polys / AlgebraElements to a tuple of AlgebraElements."""
    out = []
    for p in polys:
        if isinstance(p, AlgebraElement):
            out.append(p)
        elif isinstance(p, Poly):
            out.append(AlgebraElement(p))
        elif isinstance(p, str):
            out.append(AlgebraElement(Poly.parse(ring, p)))
        else:
            out.append(AlgebraElement(Poly.const(ring, p)))
    return tuple(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|([-+*^/()]))")


class _Parser:
    """Recursive descent for ``x0^2*x1 + 3*x1 - 1``; also accepts parentheses."""

    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise InvalidInput(f"unexpected character at {pos} in {self.text!r}")
            self.toks.append(m.group(1) or m.group(2) or m.group(3))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise InvalidInput(f"unexpected end of input in {self.text!r}")
        self.i += 1
        return t

    def parse(self):
        if not self.toks:
            raise InvalidInput("empty polynomial")
        p = self.expr()
        if self.peek() is not None:
            raise InvalidInput(f"trailing input {self.peek()!r} in {self.text!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise InvalidInput("division only by nonzero constants")
                p = p.scale(self.ring.inv(q.constant_term()))
        return p

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        b = self.atom()
        if self.peek() == "^":
            self.take()
            t = self.take()
            if not t.isdigit():
                raise InvalidInput(f"exponent must be a natural number, got {t!r}")
            b = b ** int(t)
        return b

    def atom(self):
        t = self.take()
        if t.isdigit():
            return Poly.const(self.ring, int(t))
        if t.startswith("x"):
            return Poly.var(self.ring, int(t[1:]))
        if t == "(":
            p = self.expr()
            if self.take() != ")":
                raise InvalidInput(f"unbalanced parenthesis in {self.text!r}")
            return p
        raise InvalidInput(f"unexpected token {t!r} in {self.text!r}")
