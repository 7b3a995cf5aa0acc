"""Finite-precision profinite points and the partial action of K x| K^x.

A point of the profinite completion is approximated by a cylinder
``r + (N)``: its components modulo every divisor of N are determined, and
nothing else is.  Every decision made here is either valid for all points
of the cylinder or is reported as undecidable at that precision.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .clopen import ClopenSet, domain_set
from .errors import (
    EmptyTarget,
    FieldDegenerate,
    InsufficientPrecision,
    IsIdentity,
    NoWitnessAtDepth,
    NotDivisorClosed,
    NotInDomain,
    ParseError,
)
from .group import GroupElement
from .rings import QuotientClass, Ring, project


@dataclass(frozen=True)
class ProfiniteApprox:
    """The cylinder ``residue + (precision)``."""

    ring: Ring
    residue: object
    precision: object

    @classmethod
    def make(cls, ring: Ring, residue, precision) -> "ProfiniteApprox":
        N = ring.modulus(precision)
        return cls(ring, ring._mod(residue, N), N)

    def as_clopen(self) -> ClopenSet:
        return ClopenSet.coset(self.ring, self.residue, self.precision)

    def component(self, m) -> QuotientClass:
        """The class modulo ``m`` (``m`` must divide the precision)."""
        return project(QuotientClass(self.ring, self.residue, self.precision), m)

    def refinements(self, precision) -> list["ProfiniteApprox"]:
        """All sub-cylinders at a finer precision, in canonical order."""
        r = self.ring
        P = r.modulus(precision)
        k = r.exact_div(P, self.precision)
        return [
            ProfiniteApprox.make(r, r.add(self.residue, r.mul(j, self.precision)), P)
            for j in r.residues(k)
        ]

    def __contains__(self, x) -> bool:
        return self.ring._mod(x, self.precision) == self.residue

    def __str__(self) -> str:
        fmt = self.ring.format
        return f"{fmt(self.residue)} mod {fmt(self.precision)}"


def parse_cylinder(ring: Ring, text: str) -> ProfiniteApprox:
    """Parse ``"r mod N"``."""
    head, sep, tail = text.partition(" mod ")
    if not sep:
        raise ParseError("cylinder must look like 'r mod N'", text, 0)
    try:
        r = ring.parse(head)
    except ParseError as exc:
        raise ParseError(str(exc).split(" at position")[0], text, exc.position) from None
    try:
        N = ring.parse(tail)
    except ParseError as exc:
        raise ParseError(str(exc).split(" at position")[0], text, exc.position + len(head) + 5) from None
    if N == ring.zero:
        raise ParseError("precision must be nonzero", text, len(head) + 5)
    return ProfiniteApprox.make(ring, r, N)


class Membership3(enum.Enum):
    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


def rho_contains(x: ProfiniteApprox, g: GroupElement) -> Membership3:
    """Is ``g`` in rho of every point of ``x`` (equivalently: is x in the range of theta_g)?"""
    D = domain_set(g)
    C = x.as_clopen()
    if C.issubset(D):
        return Membership3.IN
    if C.isdisjoint(D):
        return Membership3.OUT
    return Membership3.UNKNOWN


def theta_apply(g: GroupElement, x: ProfiniteApprox) -> ProfiniteApprox:
    """Apply ``x -> u + w*x`` to a cylinder inside the domain of theta_g."""
    r = g.ring
    nf = g.normal_form()
    n, m, mp = nf.n, nf.m, nf.m_prime
    mr_n = r.add(r.mul(m, x.residue), n)
    mN = r.mul(m, x.precision)
    # the domain of theta_g is {x : m' | m*x + n}
    if r.divides(mp, mr_n) and r.divides(mp, mN):
        return ProfiniteApprox.make(r, r.exact_div(mr_n, mp), r.exact_div(mN, mp))
    if not r.divides(r.gcd(mN, mp), mr_n):
        raise NotInDomain(f"{x} is outside the domain of theta_{g}")
    raise InsufficientPrecision(f"{x} meets the domain of theta_{g} only partially")


@dataclass(frozen=True)
class DomainClass:
    kind: str  # "Empty", "Full" or "Proper"
    set: ClopenSet

    def __str__(self) -> str:
        if self.kind == "Proper":
            return f"Proper({self.set})"
        return self.kind


def domain_classify(g: GroupElement) -> DomainClass:
    """Classify the range of theta_g by the gcd criteria on its normal form."""
    r = g.ring
    nf = g.normal_form()
    if not r.divides(r.gcd(nf.m_prime, nf.m), nf.n):
        return DomainClass("Empty", ClopenSet.empty(r))
    if r.divides(nf.m, nf.m_prime) and r.divides(nf.m, nf.n):
        return DomainClass("Full", ClopenSet.full(r))
    return DomainClass("Proper", domain_set(g))


def restrict_to_domain(g: GroupElement, cyl: ProfiniteApprox) -> list[ProfiniteApprox]:
    """Sub-cylinders covering ``cyl`` intersected with the domain of theta_g."""
    inter = cyl.as_clopen() & domain_set(g.inverse())
    return [ProfiniteApprox(g.ring, c, inter.modulus) for c in inter.sorted_classes()]


# -- the spectrum at finite level ------------------------------------------------------


def _check_divisor_family(ring: Ring, divisors) -> list:
    ds = []
    for d in divisors:
        c = ring.modulus(d)
        if c not in ds:
            ds.append(c)
    if ring.one not in ds:
        raise NotDivisorClosed("family must contain 1")
    tops = [N for N in ds if all(ring.divides(d, N) for d in ds)]
    if not tops:
        raise NotDivisorClosed("family has no top element divisible by all others")
    N = tops[0]
    present = set(ds)
    for d in ds:
        if ring.canonical(ring.exact_div(N, d)) not in present:
            raise NotDivisorClosed(f"{ring.format(N)}/{ring.format(d)} is missing")
    for a, b in itertools.combinations(ds, 2):
        if ring.gcd(a, b) not in present or ring.lcm(a, b) not in present:
            raise NotDivisorClosed(f"family not closed under gcd/lcm of {ring.format(a)}, {ring.format(b)}")
    return ds


def coherent_family_count(ring: Ring, divisors) -> int:
    """Count choice functions ``(c_d)`` with ``c_d in R/(d)`` compatible under projection.

    Exhaustive backtracking over all choices; a partial choice is abandoned
    as soon as it conflicts with an already chosen smaller divisor.
    """
    ds = sorted(_check_divisor_family(ring, divisors), key=lambda d: (ring.norm(d), ring.sort_key(d)))
    below = []
    for k, d in enumerate(ds):
        lower = [j for j in range(k) if ring.divides(ds[j], d)]
        lower.sort(key=lambda j: -ring.norm(ds[j]))
        below.append(lower)
    choice = [None] * len(ds)
    mod = ring._mod

    def count(k: int) -> int:
        if k == len(ds):
            return 1
        d = ds[k]
        total = 0
        for c in ring.residues(d):
            if all(mod(c, ds[j]) == choice[j] for j in below[k]):
                choice[k] = c
                total += count(k + 1)
        return total

    return count(0)


def rho_distinguisher(x: ProfiniteApprox, y: ProfiniteApprox) -> GroupElement | None:
    """A group element in rho(x) but not in rho(y), for distinct cylinders of equal precision."""
    r = x.ring
    if x.precision != y.precision or x.residue == y.residue:
        return None
    return GroupElement.of(r, x.residue, x.precision)


# -- topological freeness -----------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """``witness`` refines ``cylinder`` and is disjoint from its image under theta_g."""

    g: GroupElement
    cylinder: ProfiniteApprox
    witness: ProfiniteApprox
    image: ProfiniteApprox
    case: str
    level: int
    proof_level: int

    @property
    def deeper(self) -> bool:
        return self.level > self.proof_level

    def to_dict(self) -> dict:
        return {
            "g": str(self.g),
            "cylinder": str(self.cylinder),
            "witness": str(self.witness),
            "image": str(self.image),
            "case": self.case,
            "level": self.level,
            "proof_level": self.proof_level,
        }


def certify_not_fixed(g: GroupElement, cyl: ProfiniteApprox, extra_levels: int = 3) -> Certificate:
    """Find a refinement of ``cyl`` moved off itself by theta_g.

    For a translation (w = 1) the shift u must avoid the ideal of the
    refinement's precision; one level beyond ``lcm(N, u*q)`` always works.
    Otherwise two residues congruent mod N but not mod N*q cannot both be
    fixed at precision ``(m - m')*N*q``, so one of them is a witness.
    Coarser levels are tried first; at most ``extra_levels`` levels beyond
    the guaranteed one are searched.
    """
    r = g.ring
    if r.is_field:
        raise FieldDegenerate("R is a field: the profinite completion is a single point")
    if g.is_identity():
        raise IsIdentity("the identity fixes everything")
    if rho_contains(cyl, g.inverse()) is not Membership3.IN:
        raise NotInDomain(f"{cyl} is not contained in the domain of theta_{g}")
    nf = g.normal_form()
    n, m, mp = nf.n, nf.m, nf.m_prime
    N, q = cyl.precision, r.nonunit
    diff = r.sub(m, mp)

    if diff == r.zero:
        case = "translation"
        shift = r.exact_div(n, mp)
        proof = r.lcm(N, r.mul(shift, q))
        levels = [N, proof] + [r.mul(proof, r.pow(q, k)) for k in range(1, extra_levels + 1)]
    else:
        case = "dilation"
        levels = [r.mul(N, r.pow(q, k)) for k in range(0, extra_levels + 2)]
    proof_level = 1

    for level, L in enumerate(levels):
        L = r.modulus(L)
        if case == "translation":
            if r.divides(L, shift):
                continue
            candidates = [ProfiniteApprox.make(r, cyl.residue, L)]
        else:
            P = r.mul(diff, L)
            candidates = []
            for sub in cyl.refinements(L):
                d = r.add(n, r.mul(diff, sub.residue))
                if not r.divides(P, d):
                    candidates.append(ProfiniteApprox.make(r, sub.residue, P))
        for x in candidates:
            img = theta_apply(g, x)
            if x.as_clopen().isdisjoint(img.as_clopen()):
                return Certificate(g, cyl, x, img, case, level, proof_level)
    raise NoWitnessAtDepth(f"no witness for {g} on {cyl} within {len(levels)} levels")


def verify_certificate(cert: Certificate) -> bool:
    """Re-check a certificate by direct arithmetic on an integer point of the witness."""
    g, x, img = cert.g, cert.witness, cert.image
    r = g.ring
    nf = g.normal_form()
    p = x.residue
    if p not in cert.cylinder:
        return False
    # image of the integer point p under r -> (m*r + n)/m'
    top = r.add(r.mul(nf.m, p), nf.n)
    if not r.divides(nf.m_prime, top):
        return False
    y = r.exact_div(top, nf.m_prime)
    if y not in img or theta_apply(g, x) != img:
        return False
    # cylinders p + (P) and y + (Q) are disjoint iff gcd(P, Q) does not divide y - p
    return not r.divides(r.gcd(x.precision, img.precision), r.sub(y, p))


# -- minimality ------------------------------------------------------------------------


def orbit_translation(x: ProfiniteApprox, target: ClopenSet) -> GroupElement:
    """A translation ``(u' - u_M, 1)`` moving ``x`` into ``target``."""
    r = x.ring
    if target.is_empty():
        raise EmptyTarget("target is empty")
    M = target.modulus
    if not r.divides(M, x.precision):
        raise InsufficientPrecision(
            f"target modulus {r.format(M)} does not divide precision {r.format(x.precision)}"
        )
    own = r._mod(x.residue, M)
    u_target = own if own in target.classes else target.sorted_classes()[0]
    return GroupElement.of(r, r.sub(u_target, own), r.one)
