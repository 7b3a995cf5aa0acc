"""Congruence sets: finite unions of cosets ``c + (N)``.

A :class:`ClopenSet` stores a single modulus and the residues it contains.
Read as a subset of the profinite completion, it is a clopen set; read as a
subset of R, it is the corresponding congruence set.  Equality is semantic:
two sets are compared after refining both to a common modulus.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .group import GroupElement
from .rings import Ring


class ClopenSet:
    __slots__ = ("ring", "modulus", "classes")

    def __init__(self, ring: Ring, modulus, classes):
        m = ring.modulus(modulus)
        cls_ = frozenset(classes)
        if not cls_:
            m = ring.one
        elif len(cls_) == ring.norm(m):
            m, cls_ = ring.one, frozenset((ring.zero,))
        self.ring = ring
        self.modulus = m
        self.classes = cls_

    @classmethod
    def _raw(cls, ring, modulus, classes):
        # trusted constructor: modulus normalized, classes canonical
        obj = object.__new__(cls)
        obj.ring, obj.modulus, obj.classes = ring, modulus, classes
        return obj

    @classmethod
    def empty(cls, ring: Ring) -> "ClopenSet":
        return cls._raw(ring, ring.one, frozenset())

    @classmethod
    def full(cls, ring: Ring) -> "ClopenSet":
        return cls._raw(ring, ring.one, frozenset((ring.zero,)))

    @classmethod
    def coset(cls, ring: Ring, n, m) -> "ClopenSet":
        m = ring.modulus(m)
        return cls(ring, m, (ring._mod(n, m),))

    # -- predicates -----------------------------------------------------------
    def is_empty(self) -> bool:
        return not self.classes

    def is_full(self) -> bool:
        return len(self.classes) == self.ring.norm(self.modulus)

    def __contains__(self, x) -> bool:
        return self.ring._mod(x, self.modulus) in self.classes

    def density(self) -> Fraction:
        return Fraction(len(self.classes), self.ring.norm(self.modulus))

    def __len__(self) -> int:
        return len(self.classes)

    def sorted_classes(self) -> list:
        return sorted(self.classes, key=self.ring.sort_key)

    # -- refinement -------------------------------------------------------------
    def refine(self, modulus) -> frozenset:
        """Residues modulo ``modulus`` (a multiple of ``self.modulus``) in this set."""
        r = self.ring
        modulus = r.modulus(modulus)
        if modulus == self.modulus:
            return self.classes
        k = r.exact_div(modulus, self.modulus)
        lifts = [r.mul(j, self.modulus) for j in r.residues(k)]
        return frozenset(r._mod(r.add(c, t), modulus) for c in self.classes for t in lifts)

    def _single(self, other: "ClopenSet"):
        return len(self.classes) == 1 and len(other.classes) == 1

    def _common(self, other: "ClopenSet"):
        r = self.ring
        if self.modulus == other.modulus:
            return self.modulus, self.classes, other.classes
        m = r.lcm(self.modulus, other.modulus)
        return m, self.refine(m), other.refine(m)

    # -- Boolean algebra --------------------------------------------------------
    def __or__(self, other: "ClopenSet") -> "ClopenSet":
        if self.is_empty() or other.is_full():
            return other
        if other.is_empty() or self.is_full():
            return self
        m, a, b = self._common(other)
        return ClopenSet(self.ring, m, a | b)

    def __and__(self, other: "ClopenSet") -> "ClopenSet":
        if self.is_empty() or other.is_full():
            return self
        if other.is_empty() or self.is_full():
            return other
        if self._single(other):
            (a,), (b,) = self.classes, other.classes
            return coset_intersection(self.ring, a, self.modulus, b, other.modulus)
        m, a, b = self._common(other)
        return ClopenSet(self.ring, m, a & b)

    def __sub__(self, other: "ClopenSet") -> "ClopenSet":
        if self.is_empty() or other.is_empty():
            return self
        m, a, b = self._common(other)
        return ClopenSet(self.ring, m, a - b)

    def complement(self) -> "ClopenSet":
        r = self.ring
        return ClopenSet(r, self.modulus, set(r.residues(self.modulus)) - self.classes)

    def __invert__(self) -> "ClopenSet":
        return self.complement()

    def issubset(self, other: "ClopenSet") -> bool:
        if self.is_empty() or other.is_full():
            return True
        r = self.ring
        if self._single(other):
            (a,), (b,) = self.classes, other.classes
            return r.divides(other.modulus, self.modulus) and r._mod(a, other.modulus) == b
        m, a, b = self._common(other)
        return a <= b

    __le__ = issubset

    def isdisjoint(self, other: "ClopenSet") -> bool:
        if self.is_empty() or other.is_empty():
            return True
        r = self.ring
        if self._single(other):
            (a,), (b,) = self.classes, other.classes
            return not r.divides(r.gcd(self.modulus, other.modulus), r.sub(a, b))
        m, a, b = self._common(other)
        return a.isdisjoint(b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClopenSet):
            return NotImplemented
        if self.ring is not other.ring:
            return False
        if self.modulus == other.modulus:
            return self.classes == other.classes
        if self.density() != other.density():
            return False
        m, a, b = self._common(other)
        return a == b

    def __hash__(self) -> int:
        # density is invariant under refinement, so it is compatible with __eq__
        return hash((self.ring.token, self.density()))

    def __str__(self) -> str:
        if self.is_empty():
            return "∅"
        if self.is_full():
            return "full"
        fmt = self.ring.format
        return "{" + ",".join(fmt(c) for c in self.sorted_classes()) + "} mod " + fmt(self.modulus)

    def __repr__(self) -> str:
        return f"ClopenSet({self})"


# -- module-level operations ---------------------------------------------------


def from_coset(ring: Ring, n, m) -> ClopenSet:
    return ClopenSet.coset(ring, n, m)


def boolean_combine(op: str, a: ClopenSet, b: ClopenSet | None = None) -> ClopenSet:
    if op == "complement":
        if b is not None:
            raise TypeError("complement takes one operand")
        return a.complement()
    if b is None:
        raise TypeError(f"{op} takes two operands")
    if op == "union":
        return a | b
    if op == "intersect":
        return a & b
    raise ValueError(f"unknown Boolean operation {op!r}")


def equals(a: ClopenSet, b: ClopenSet) -> bool:
    return a == b


def affine_image(A: ClopenSet, a, c, d) -> ClopenSet:
    """``{(a*x + c)/d : x in A, d | a*x + c}``."""
    r = A.ring
    if A.is_empty():
        return A
    M = A.modulus
    aM = r.mul(a, M)
    g = r.gcd(aM, d)
    out_mod = r.modulus(r.exact_div(aM, g))
    out = set()
    for rho in A.classes:
        # x = rho + M*k with d | a*x + c
        ax_c = r.add(r.mul(a, rho), c)
        sol = r.solve_linear(aM, r.neg(ax_c), d)
        if sol is None:
            continue
        k0, _ = sol
        x0 = r.add(rho, r.mul(M, k0))
        y0 = r.exact_div(r.add(r.mul(a, x0), c), d)
        out.add(r._mod(y0, out_mod))
    return ClopenSet(r, out_mod, out)


def affine_preimage(A: ClopenSet, a, c, d) -> ClopenSet:
    """``{x : d | a*x + c and (a*x + c)/d in A}``."""
    r = A.ring
    if A.is_empty():
        return A
    dM = r.mul(d, A.modulus)
    out_mod = None
    out = set()
    for y in A.classes:
        sol = r.solve_linear(a, r.sub(r.mul(d, y), c), dM)
        if sol is None:
            continue
        x0, out_mod = sol
        out.add(x0)
    if out_mod is None:
        return ClopenSet.empty(r)
    return ClopenSet(r, out_mod, out)


def coset_intersection(ring: Ring, a, A, b, B) -> ClopenSet:
    """``(a + (A)) & (b + (B))``: empty or a single coset of ``lcm(A, B)``."""
    sol = ring.solve_linear(A, ring.sub(b, a), B)
    if sol is None:
        return ClopenSet.empty(ring)
    k0, K = sol
    return ClopenSet.coset(ring, ring.add(a, ring.mul(A, k0)), ring.mul(A, K))


def congruence_set(ring: Ring, a, b, n) -> ClopenSet:
    """``{x : a*x == b (mod n)}``."""
    sol = ring.solve_linear(a, b, n)
    if sol is None:
        return ClopenSet.empty(ring)
    return ClopenSet.coset(ring, *sol)


def domain_set(g: GroupElement) -> ClopenSet:
    """The set of points x with ``m'*x == n (mod m)``, i.e. the range of theta_g."""
    nf = g.normal_form()
    return congruence_set(g.ring, nf.m_prime, nf.n, nf.m)


def parse_clopen(ring: Ring, text: str) -> ClopenSet:
    """Parse ``"{1,3} mod 6"``, ``"1 mod 2"``, ``"∅"`` or ``"full"``."""
    s = text.strip()
    if s in ("∅", "empty", "{}"):
        return ClopenSet.empty(ring)
    if s == "full":
        return ClopenSet.full(ring)
    head, sep, tail = text.rpartition(" mod ")
    if not sep:
        raise ParseError("clopen set must look like '{a,b} mod N'", text, 0)
    base = len(head) + len(sep)
    try:
        N = ring.parse(tail)
    except ParseError as exc:
        raise ParseError(str(exc).split(" at position")[0], text, base + exc.position) from None
    if N == ring.zero:
        raise ParseError("modulus must be nonzero", text, base)
    body, offset = head.strip(), len(head) - len(head.lstrip())
    if body.startswith("{"):
        if not body.endswith("}"):
            raise ParseError("missing '}'", text, offset + len(body))
        body, offset = body[1:-1], offset + 1
    classes = []
    pos = offset
    for part in body.split(","):
        if part.strip():
            try:
                classes.append(ring.parse(part))
            except ParseError as exc:
                raise ParseError(str(exc).split(" at position")[0], text, pos + exc.position) from None
        pos += len(part) + 1
    return ClopenSet(ring, N, [ring._mod(c, ring.modulus(N)) for c in classes])
