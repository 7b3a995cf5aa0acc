"""The field of fractions K and the affine group K x| K^x."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DivisionByZero, ParseError
from .rings import Ring


@dataclass(frozen=True)
class Frac:
    """Reduced fraction with a unit-normalized denominator."""

    ring: Ring
    num: object
    den: object

    @classmethod
    def make(cls, ring: Ring, num, den=None) -> "Frac":
        if den is None:
            den = ring.one
        if den == ring.zero:
            raise DivisionByZero("zero denominator")
        if num == ring.zero:
            return cls(ring, ring.zero, ring.one)
        g = ring.gcd(num, den)
        num, den = ring.exact_div(num, g), ring.exact_div(den, g)
        den, u = ring.normalize(den)
        return cls(ring, ring.mul(num, ring.unit_inverse(u)), den)

    @classmethod
    def coerce(cls, ring: Ring, x) -> "Frac":
        """Accept a Frac, a ring element, or a ``(num, den)`` pair given as a list."""
        if isinstance(x, Frac):
            return x
        if isinstance(x, list):
            return cls.make(ring, x[0], x[1])
        return cls.make(ring, x)

    def is_zero(self) -> bool:
        return self.num == self.ring.zero

    def is_integral(self) -> bool:
        return self.den == self.ring.one

    def __add__(self, other: "Frac") -> "Frac":
        r = self.ring
        return Frac.make(
            r,
            r.add(r.mul(self.num, other.den), r.mul(other.num, self.den)),
            r.mul(self.den, other.den),
        )

    def __neg__(self) -> "Frac":
        return Frac(self.ring, self.ring.neg(self.num), self.den)

    def __sub__(self, other: "Frac") -> "Frac":
        return self + (-other)

    def __mul__(self, other: "Frac") -> "Frac":
        r = self.ring
        return Frac.make(r, r.mul(self.num, other.num), r.mul(self.den, other.den))

    def inverse(self) -> "Frac":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return Frac.make(self.ring, self.den, self.num)

    def __truediv__(self, other: "Frac") -> "Frac":
        return self * other.inverse()

    def __str__(self) -> str:
        fmt = self.ring.format
        if self.is_integral():
            return fmt(self.num)
        return f"{_wrap(fmt(self.num))}/{_wrap(fmt(self.den))}"


def _wrap(s: str) -> str:
    return f"({s})" if ("+" in s or "-" in s[1:]) else s


@dataclass(frozen=True)
class NormalForm:
    """Triple ``(n, m, m')`` denoting ``(n/m', m/m')``."""

    ring: Ring
    n: object
    m: object
    m_prime: object

    def to_group(self) -> "GroupElement":
        r = self.ring
        return GroupElement(r, Frac.make(r, self.n, self.m_prime), Frac.make(r, self.m, self.m_prime))

    def astuple(self):
        return (self.n, self.m, self.m_prime)


@dataclass(frozen=True)
class GroupElement:
    """``(u, w)`` acting on K by ``x -> u + w*x``."""

    ring: Ring
    u: Frac
    w: Frac

    def __post_init__(self):
        if self.w.is_zero():
            raise DivisionByZero("w must be nonzero")

    @classmethod
    def of(cls, ring: Ring, u, w) -> "GroupElement":
        return cls(ring, Frac.coerce(ring, u), Frac.coerce(ring, w))

    @classmethod
    def identity(cls, ring: Ring) -> "GroupElement":
        return cls.of(ring, ring.zero, ring.one)

    def is_identity(self) -> bool:
        return self.u.is_zero() and self.w.num == self.ring.one and self.w.den == self.ring.one

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.ring, self.u + other.u * self.w, self.w * other.w)

    def inverse(self) -> "GroupElement":
        winv = self.w.inverse()
        return GroupElement(self.ring, -(self.u * winv), winv)

    def normal_form(self) -> NormalForm:
        r = self.ring
        du, dw = self.u.den, self.w.den
        mp = r.canonical(r.exact_div(r.mul(du, dw), r.gcd(du, dw)))
        n = r.mul(self.u.num, r.exact_div(mp, du))
        m = r.mul(self.w.num, r.exact_div(mp, dw))
        return NormalForm(r, n, m, mp)

    def __str__(self) -> str:
        return f"({self.u}, {self.w})"


def g_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h


def g_inv(g: GroupElement) -> GroupElement:
    return g.inverse()


def normal_form(g: GroupElement) -> NormalForm:
    return g.normal_form()


def from_triple(ring: Ring, n, m, m_prime) -> GroupElement:
    """The element ``(n/m', m/m')`` for any (possibly unreduced) triple."""
    return NormalForm(ring, n, m, m_prime).to_group()


def parse_group(ring: Ring, text: str) -> GroupElement:
    """Parse ``"(p/q, a/b)"``; unreduced input is accepted."""
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if not s.startswith("("):
        raise ParseError("group element must look like '(p/q, a/b)': missing '('", text, lead)
    if not s.endswith(")"):
        raise ParseError("group element must look like '(p/q, a/b)': missing ')'", text, lead + len(s))
    body = s[1:-1]
    depth = 0
    split = -1
    for k, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            if split >= 0:
                raise ParseError("too many components", text, lead + k + 1)
            split = k
    if split < 0:
        raise ParseError("expected ',' between u and w", text, len(text) - 1)
    try:
        u = Frac.make(ring, *ring.parse_fraction(body[:split]))
    except ParseError as exc:
        raise ParseError(str(exc).split(" at position")[0], text, lead + exc.position + 1) from None
    try:
        w = Frac.make(ring, *ring.parse_fraction(body[split + 1:]))
    except ParseError as exc:
        raise ParseError(str(exc).split(" at position")[0], text, lead + exc.position + split + 2) from None
    if w.is_zero():
        raise ParseError("w must be nonzero", text, lead + split + 2)
    return GroupElement(ring, u, w)
