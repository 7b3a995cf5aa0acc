"""Exact arithmetic in the supported Euclidean domains.

Elements are plain Python values interpreted by a :class:`Ring` object, in
the style of sympy's polynomial domains:

* ``Z``   -- ``int``
* ``Zi``  -- ``(re, im)`` tuples of ``int`` (Gaussian integers)
* ``F2t`` -- ``int`` bitmask, bit ``k`` is the coefficient of ``t^k``
* ``F2``  -- ``0`` or ``1``

Every value is immutable, so ring objects and elements can be shared freely.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator

from .errors import DivisionByZero, NotDivisible, ParseError, UndefinedGcd, ZeroModulus

Elem = Any


class Ring:
    token: str = ""
    name: str = ""
    is_field = False
    zero: Elem = 0
    one: Elem = 1
    # fixed non-unit used when a cylinder has to be split; None for fields
    nonunit: Elem = None
    symbol: str | None = None

    # -- primitive operations (overridden) ---------------------------------
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, k: int):
        return k

    def divmod(self, a, b):
        raise NotImplementedError

    def norm(self, a) -> int:
        """Size of R/(a) for a != 0, and 0 for a == 0."""
        raise NotImplementedError

    def units(self) -> tuple:
        return (self.one,)

    def unit_inverse(self, u):
        return u

    def sort_key(self, a):
        return a

    def format(self, a) -> str:
        return str(a)

    def _residue_candidates(self, m) -> Iterator[Elem]:
        raise NotImplementedError

    def elements(self, max_norm: int) -> list:
        """All nonzero elements with ``norm <= max_norm`` in a fixed order."""
        raise NotImplementedError

    def sample(self, rng, max_norm: int, nonzero: bool = False):
        raise NotImplementedError

    # -- derived operations ------------------------------------------------
    def __repr__(self) -> str:
        return f"<ring {self.token}>"

    def __reduce__(self):
        return (get_ring, (self.token,))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_unit(self, a) -> bool:
        return a != self.zero and self.norm(a) == 1

    def normalize(self, a):
        """Return ``(b, u)`` with ``a == u * b``, ``u`` a unit and ``b`` canonical."""
        if a == self.zero:
            return self.zero, self.one
        for u in self.units():
            b = self.mul(a, self.unit_inverse(u))
            if self._is_normal(b):
                return b, u
        raise AssertionError("no normal associate")  # pragma: no cover

    def _is_normal(self, a) -> bool:
        return True

    def canonical(self, a):
        return self.normalize(a)[0]

    def modulus(self, m):
        """Unit-normalized form of a modulus; rejects zero."""
        if m == self.zero:
            raise ZeroModulus("modulus must be nonzero")
        return self.normalize(m)[0]

    def mod(self, a, m):
        """Canonical residue of ``a`` modulo ``(m)``."""
        if m == self.zero:
            raise ZeroModulus("modulus must be nonzero")
        return self._mod(a, self.normalize(m)[0])

    def _mod(self, a, m):
        # m is already normalized
        return self.divmod(a, m)[1]

    def divides(self, a, b) -> bool:
        """True iff ``a | b``."""
        if a == self.zero:
            return b == self.zero
        return self.divmod(b, a)[1] == self.zero

    def exact_div(self, a, b):
        if b == self.zero:
            raise DivisionByZero("division by zero")
        q, r = self.divmod(a, b)
        if r != self.zero:
            raise NotDivisible(f"{self.format(b)} does not divide {self.format(a)}")
        return q

    def associates(self, a, b) -> bool:
        return self.canonical(a) == self.canonical(b)

    def xgcd(self, a, b):
        """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` unit-normalized."""
        if a == self.zero and b == self.zero:
            raise UndefinedGcd("gcd(0, 0) is undefined")
        zero, one = self.zero, self.one
        r0, r1 = a, b
        s0, s1 = one, zero
        t0, t1 = zero, one
        while r1 != zero:
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        g, u = self.normalize(r0)
        inv = self.unit_inverse(u)
        return g, self.mul(s0, inv), self.mul(t0, inv)

    def gcd(self, a, b):
        if a == self.zero and b == self.zero:
            raise UndefinedGcd("gcd(0, 0) is undefined")
        zero = self.zero
        while b != zero:
            a, b = b, self.divmod(a, b)[1]
        return self.normalize(a)[0]

    def lcm(self, a, b):
        if a == self.zero or b == self.zero:
            return self.zero
        return self.canonical(self.exact_div(self.mul(a, b), self.gcd(a, b)))

    def pow(self, a, k: int):
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def solve_linear(self, a, b, n):
        """Solve ``a*x == b (mod n)``.

        Returns ``(x0, n0)`` meaning the solution set is the coset ``x0 + (n0)``,
        or ``None`` if there is no solution.
        """
        if n == self.zero:
            raise ZeroModulus("modulus must be nonzero")
        if a == self.zero:
            return (self.zero, self.one) if self.divides(n, b) else None
        g, s, _ = self.xgcd(a, n)
        q, r = self.divmod(b, g)
        if r != self.zero:
            return None
        n0 = self.modulus(self.exact_div(n, g))
        return self._mod(self.mul(s, q), n0), n0

    def residues(self, m) -> list:
        """Canonical residues modulo ``(m)``, sorted; length ``norm(m)``."""
        return list(_residues(self, self.modulus(m)))

    def parse(self, text: str):
        return _Parser(self, text).parse_element()

    def parse_fraction(self, text: str):
        """Parse ``p`` or ``p/q``; returns the raw pair ``(p, q)``."""
        return _Parser(self, text).parse_fraction()


@lru_cache(maxsize=8192)
def _residues(ring: Ring, m) -> tuple:
    reps = {ring._mod(x, m) for x in ring._residue_candidates(m)}
    return tuple(sorted(reps, key=ring.sort_key))


class Integers(Ring):
    token = "Z"
    name = "integers"
    nonunit = 2

    def divmod(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        q = abs(a) // abs(b)
        if (a < 0) != (b < 0):
            q = -q
        return q, a - q * b

    def _mod(self, a, m):
        return a % m

    def mod(self, a, m):
        if m == 0:
            raise ZeroModulus("modulus must be nonzero")
        return a % abs(m)

    def divides(self, a, b):
        if a == 0:
            return b == 0
        return b % a == 0

    def gcd(self, a, b):
        if a == 0 and b == 0:
            raise UndefinedGcd("gcd(0, 0) is undefined")
        return math.gcd(a, b)

    def norm(self, a):
        return abs(a)

    def units(self):
        return (1, -1)

    def normalize(self, a):
        return (-a, -1) if a < 0 else (a, 1)

    def canonical(self, a):
        return abs(a)

    def modulus(self, m):
        if m == 0:
            raise ZeroModulus("modulus must be nonzero")
        return abs(m)

    def _residue_candidates(self, m):
        return range(m)

    def elements(self, max_norm):
        out = []
        for k in range(1, max_norm + 1):
            out += [k, -k]
        return out

    def sample(self, rng, max_norm, nonzero=False):
        while True:
            a = rng.randint(-max_norm, max_norm)
            if a or not nonzero:
                return a


class GaussianIntegers(Ring):
    token = "Zi"
    name = "gaussian-integers"
    zero = (0, 0)
    one = (1, 0)
    nonunit = (1, 1)
    symbol = "i"

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def mul(self, a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def from_int(self, k):
        return (k, 0)

    def norm(self, a):
        return a[0] * a[0] + a[1] * a[1]

    def divmod(self, a, b):
        n = b[0] * b[0] + b[1] * b[1]
        if n == 0:
            raise DivisionByZero("division by zero")
        # a / b = a * conj(b) / n, rounded half-down in each coordinate
        x = a[0] * b[0] + a[1] * b[1]
        y = a[1] * b[0] - a[0] * b[1]
        q = (-((n - 2 * x) // (2 * n)), -((n - 2 * y) // (2 * n)))
        return q, self.sub(a, self.mul(q, b))

    def _mod(self, a, m):
        # reduce against the Hermite basis (N/g, 0), (s, g) of the lattice (m)
        width, s, g = _gauss_hnf(m)
        k = a[1] // g
        return ((a[0] - k * s) % width, a[1] - k * g)

    def units(self):
        return ((1, 0), (0, 1), (-1, 0), (0, -1))

    def unit_inverse(self, u):
        return (u[0], -u[1])

    def _is_normal(self, a):
        return a[0] > 0 and a[1] >= 0

    def sort_key(self, a):
        return a

    def format(self, a):
        x, y = a
        if y == 0:
            return str(x)
        if x == 0:
            return f"{y}i"
        return f"{x}{'+' if y > 0 else '-'}{abs(y)}i"

    def _residue_candidates(self, m):
        g = math.gcd(m[0], m[1])
        n = self.norm(m)
        return ((x, y) for x in range(n // g) for y in range(g))

    def elements(self, max_norm):
        r = int(max_norm ** 0.5) + 1
        pts = [
            (x, y)
            for x in range(-r, r + 1)
            for y in range(-r, r + 1)
            if 0 < x * x + y * y <= max_norm
        ]
        return sorted(pts, key=lambda p: (self.norm(p), p))

    def sample(self, rng, max_norm, nonzero=False):
        r = int(max_norm ** 0.5)
        while True:
            p = (rng.randint(-r, r), rng.randint(-r, r))
            if self.norm(p) <= max_norm and (p != (0, 0) or not nonzero):
                return p


@lru_cache(maxsize=4096)
def _gauss_hnf(m):
    a, b = m
    # p*b + q*a = g, so p*m + q*i*m = (p*a - q*b) + g*i
    g, p, q = _egcd(b, a)
    return (a * a + b * b) // g, p * a - q * b, g


def _egcd(x, y):
    r0, r1, s0, s1, t0, t1 = x, y, 1, 0, 0, 1
    while r1:
        k = r0 // r1
        r0, r1, s0, s1, t0, t1 = r1, r0 - k * r1, s1, s0 - k * s1, t1, t0 - k * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


class PolyF2(Ring):
    token = "F2t"
    name = "poly-f2"
    nonunit = 2  # the polynomial t
    symbol = "t"

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        out = 0
        while b:
            if b & 1:
                out ^= a
            a <<= 1
            b >>= 1
        return out

    def from_int(self, k):
        return k & 1

    def norm(self, a):
        return 0 if a == 0 else 1 << (a.bit_length() - 1)

    def divmod(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        q = 0
        db = b.bit_length()
        while a.bit_length() >= db:
            shift = a.bit_length() - db
            q |= 1 << shift
            a ^= b << shift
        return q, a

    def normalize(self, a):
        return a, 1

    def canonical(self, a):
        return a

    def format(self, a):
        if a == 0:
            return "0"
        terms = []
        for k in range(a.bit_length() - 1, -1, -1):
            if a >> k & 1:
                terms.append("1" if k == 0 else "t" if k == 1 else f"t^{k}")
        return "+".join(terms)

    def _residue_candidates(self, m):
        return range(1 << (m.bit_length() - 1))

    def elements(self, max_norm):
        d = max_norm.bit_length() - 1
        return list(range(1, 1 << (d + 1)))

    def sample(self, rng, max_norm, nonzero=False):
        d = max_norm.bit_length() - 1
        return rng.randint(1 if nonzero else 0, (1 << (d + 1)) - 1)


class FieldF2(Ring):
    token = "F2"
    name = "field-f2"
    is_field = True

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        return a & b

    def from_int(self, k):
        return k & 1

    def norm(self, a):
        return a

    def divmod(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        return a, 0

    def normalize(self, a):
        return a, 1

    def _residue_candidates(self, m):
        return (0,)

    def elements(self, max_norm):
        return [1]

    def sample(self, rng, max_norm, nonzero=False):
        return 1 if nonzero else rng.randint(0, 1)


Z = Integers()
ZI = GaussianIntegers()
F2T = PolyF2()
F2 = FieldF2()

RINGS = {r.token: r for r in (Z, ZI, F2T, F2)}


def get_ring(token: str) -> Ring:
    try:
        return RINGS[token]
    except KeyError:
        raise ValueError(f"unknown ring {token!r} (expected one of {', '.join(RINGS)})") from None


@dataclass(frozen=True)
class QuotientClass:
    """The class ``rep + (modulus)``; always stored canonically."""

    ring: Ring
    rep: Elem
    modulus: Elem

    @classmethod
    def of(cls, ring: Ring, a, m) -> "QuotientClass":
        m = ring.modulus(m)
        return cls(ring, ring._mod(a, m), m)

    def project(self, m) -> "QuotientClass":
        return project(self, m)

    def __str__(self) -> str:
        return f"{self.ring.format(self.rep)} + ({self.ring.format(self.modulus)})"


# -- module-level operations ---------------------------------------------------


def divmod_(ring: Ring, a, b):
    return ring.divmod(a, b)


def gcd(ring: Ring, a, b):
    return ring.gcd(a, b)


def residues(ring: Ring, m) -> list[QuotientClass]:
    m = ring.modulus(m)
    return [QuotientClass(ring, r, m) for r in _residues(ring, m)]


def project(x: QuotientClass, m) -> QuotientClass:
    """Canonical projection R/(m') -> R/(m) for m | m'."""
    ring = x.ring
    if not ring.divides(m, x.modulus):
        raise NotDivisible(
            f"{ring.format(m)} does not divide {ring.format(x.modulus)}"
        )
    return QuotientClass.of(ring, x.rep, m)


# -- literal parsing -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\S))")


class _Parser:
    """Recursive descent over sums, products, powers and parentheses.

    Juxtaposition multiplies, so ``3-1i`` and ``2(1+i)`` parse as expected.
    """

    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text.replace("−", "-").replace("·", "*")
        self.tokens = []
        for mt in _TOKEN.finditer(self.text):
            if mt.group(0).strip() == "":
                continue
            kind = "num" if mt.group(1) else "sym" if mt.group(2) else "op"
            self.tokens.append((kind, mt.group(0).strip(), mt.start(mt.lastindex)))
        self.i = 0

    def _error(self, msg, pos=None):
        if pos is None:
            pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise ParseError(msg, self.text, pos)

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse_element(self):
        if not self.tokens:
            self._error("empty literal", 0)
        v = self._expr()
        if self.i != len(self.tokens):
            self._error(f"unexpected {self._peek()[1]!r}")
        return v

    def parse_fraction(self):
        if not self.tokens:
            self._error("empty literal", 0)
        p = self._expr()
        q = self.ring.one
        if self._peek()[1] == "/":
            self._take()
            pos = self._peek()[2]
            q = self._expr()
            if q == self.ring.zero:
                self._error("zero denominator", pos)
        if self.i != len(self.tokens):
            self._error(f"unexpected {self._peek()[1]!r}")
        return p, q

    def _expr(self):
        r = self.ring
        v = self._term()
        while self._peek()[1] in ("+", "-"):
            op = self._take()[1]
            t = self._term()
            v = r.add(v, t) if op == "+" else r.sub(v, t)
        return v

    def _starts_factor(self):
        kind, text, _ = self._peek()
        return kind in ("num", "sym") or text == "("

    def _term(self):
        r = self.ring
        v = self._factor()
        while True:
            if self._peek()[1] == "*":
                self._take()
                v = r.mul(v, self._factor())
            elif self._starts_factor():
                v = r.mul(v, self._factor())
            else:
                return v

    def _factor(self):
        if self._peek()[1] in ("-", "+"):
            op = self._take()[1]
            v = self._factor()
            return self.ring.neg(v) if op == "-" else v
        return self._power()

    def _power(self):
        v = self._atom()
        if self._peek()[1] == "^":
            self._take()
            kind, text, pos = self._take()
            if kind != "num":
                self._error("exponent must be a nonnegative integer", pos)
            v = self.ring.pow(v, int(text))
        return v

    def _atom(self):
        kind, text, pos = self._take()
        if kind == "num":
            return self.ring.from_int(int(text))
        if kind == "sym":
            if text != self.ring.symbol:
                self._error(f"unknown symbol {text!r} for ring {self.ring.token}", pos)
            return (0, 1) if self.ring is ZI else 2
        if text == "(":
            v = self._expr()
            _, close, cpos = self._take()
            if close != ")":
                self._error("expected ')'", cpos)
            return v
        if kind is None:
            self._error("unexpected end of input", pos)
        self._error(f"unexpected {text!r}", pos)
