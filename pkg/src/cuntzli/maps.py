"""Affine partial injections of R: the monomials of the reduced Cuntz-Li algebra.

Every product of the generators ``S_m`` (r -> m*r), their adjoints and
``U^n`` (r -> r + n) acts on the basis of l^2(R) as a partial injection
``r -> (a*r + c)/d`` defined on a congruence set.  These maps are closed
under composition and adjoint, so every monomial identity becomes an exact
equality of finite data.
"""
from __future__ import annotations

from .clopen import ClopenSet, affine_image, affine_preimage
from .errors import NotAProjection, NotInDomain, ZeroMultiplier
from .group import GroupElement
from .rings import Ring


class AffinePartialMap:
    """``r -> (a*r + c)/d`` on ``domain``, kept in canonical form."""

    __slots__ = ("ring", "a", "c", "d", "domain")

    def __init__(self, ring: Ring, a, c, d, domain: ClopenSet | None = None):
        if a == ring.zero or d == ring.zero:
            raise ZeroMultiplier("a and d must be nonzero")
        if domain is None:
            domain = ClopenSet.full(ring)
        if not domain.is_empty():
            g = ring.gcd(ring.gcd(a, c), d)
            if g != ring.one:
                a, c, d = ring.exact_div(a, g), ring.exact_div(c, g), ring.exact_div(d, g)
            d, u = ring.normalize(d)
            if u != ring.one:
                inv = ring.unit_inverse(u)
                a, c = ring.mul(a, inv), ring.mul(c, inv)
            if d != ring.one:
                domain = domain & affine_preimage(ClopenSet.full(ring), a, c, d)
        if domain.is_empty():
            a, c, d = ring.one, ring.zero, ring.one
        self.ring = ring
        self.a, self.c, self.d = a, c, d
        self.domain = domain

    # -- evaluation -----------------------------------------------------------
    def __call__(self, r):
        if r not in self.domain:
            raise NotInDomain(f"{self.ring.format(r)} is not in {self.domain}")
        ring = self.ring
        return ring.exact_div(ring.add(ring.mul(self.a, r), self.c), self.d)

    def is_zero(self) -> bool:
        return self.domain.is_empty()

    def is_projection(self) -> bool:
        r = self.ring
        return self.is_zero() or (self.a == r.one and self.c == r.zero and self.d == r.one)

    @property
    def range(self) -> ClopenSet:
        return affine_image(self.domain, self.a, self.c, self.d)

    @property
    def triple(self):
        return (self.a, self.c, self.d)

    # -- algebra ------------------------------------------------------------------
    def __matmul__(self, f: "AffinePartialMap") -> "AffinePartialMap":
        """``self @ f`` is ``self o f`` (f applied first)."""
        g, r = self, self.ring
        if g.is_zero() or f.is_zero():
            return zero_map(r)
        if g.domain.is_full():
            dom = f.domain
        else:
            dom = f.domain & affine_preimage(g.domain, f.a, f.c, f.d)
        return AffinePartialMap(
            r,
            r.mul(g.a, f.a),
            r.add(r.mul(g.a, f.c), r.mul(g.c, f.d)),
            r.mul(f.d, g.d),
            dom,
        )

    def adjoint(self) -> "AffinePartialMap":
        r = self.ring
        if self.is_zero():
            return self
        return AffinePartialMap(r, self.d, r.neg(self.c), self.a, self.range)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffinePartialMap):
            return NotImplemented
        return (
            self.ring is other.ring
            and self.triple == other.triple
            and self.domain == other.domain
        )

    def __hash__(self) -> int:
        return hash((self.triple, self.domain))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        r = self.ring
        fmt = r.format
        if self.a == r.one:
            lin = "r"
        else:
            lin = f"{_paren(fmt(self.a))}·r"
        if self.c != r.zero:
            c = fmt(self.c)
            lin = f"{lin}{c}" if c.startswith("-") else f"{lin}+{c}"
        if self.d != r.one:
            if lin != "r":
                lin = f"({lin})"
            lin = f"{lin}/{_paren(fmt(self.d))}"
        return f"r ↦ {lin} on {self.domain}"

    __repr__ = __str__


def _paren(s: str) -> str:
    return f"({s})" if ("+" in s or "-" in s[1:]) else s


# -- generators and operations ------------------------------------------------


def identity(ring: Ring) -> AffinePartialMap:
    return AffinePartialMap(ring, ring.one, ring.zero, ring.one)


def zero_map(ring: Ring) -> AffinePartialMap:
    return AffinePartialMap(ring, ring.one, ring.zero, ring.one, ClopenSet.empty(ring))


def projection(domain: ClopenSet) -> AffinePartialMap:
    r = domain.ring
    return AffinePartialMap(r, r.one, r.zero, r.one, domain)


def gen_S(ring: Ring, m) -> AffinePartialMap:
    if m == ring.zero:
        raise ZeroMultiplier("S_m needs m != 0")
    return AffinePartialMap(ring, m, ring.zero, ring.one)


def gen_S_star(ring: Ring, m) -> AffinePartialMap:
    return gen_S(ring, m).adjoint()


def gen_U(ring: Ring, n) -> AffinePartialMap:
    return AffinePartialMap(ring, ring.one, n, ring.one)


def compose(*maps: AffinePartialMap) -> AffinePartialMap:
    """Operator product, rightmost map applied first."""
    if not maps:
        raise TypeError("compose needs at least one map")
    out = maps[-1]
    for g in reversed(maps[:-1]):
        out = g @ out
    return out


def adjoint(f: AffinePartialMap) -> AffinePartialMap:
    return f.adjoint()


def pi_from_triple(ring: Ring, n, m, m_prime) -> AffinePartialMap:
    """``s_{m'}^* u^n s_m`` for an arbitrary triple denoting ``(n/m', m/m')``."""
    return compose(gen_S_star(ring, m_prime), gen_U(ring, n), gen_S(ring, m))


def pi_general(ring: Ring, n, m2, m, m1) -> AffinePartialMap:
    """``s_{m2}^* u^n s_{m1}^* s_{m2} s_m``, the image of ``(n/m2, m/m1)``."""
    return compose(
        gen_S_star(ring, m2), gen_U(ring, n), gen_S_star(ring, m1), gen_S(ring, m2), gen_S(ring, m)
    )


def pi_of(g: GroupElement) -> AffinePartialMap:
    nf = g.normal_form()
    return pi_from_triple(g.ring, nf.n, nf.m, nf.m_prime)


def as_projection(f: AffinePartialMap) -> ClopenSet:
    if not f.is_projection():
        raise NotAProjection(f"{f} moves points of its domain")
    return f.domain
