"""Executable checks of the defining relations and their consequences.

Every check compares two :class:`AffinePartialMap` values (monomial
identities) or tests that a family of projections partitions R (the two
sum relations).  A failing check keeps the first counterexample, with the
parameters and one point where the two sides differ.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .clopen import ClopenSet, from_coset
from .errors import ParseError
from .group import GroupElement, from_triple
from .maps import (
    AffinePartialMap,
    adjoint,
    as_projection,
    compose,
    gen_S,
    gen_S_star,
    gen_U,
    identity,
    pi_from_triple,
    pi_general,
    pi_of,
    zero_map,
)
from .rings import Ring

# -- words --------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorWord:
    """Letters ``("S", m)``, ``("S*", m)``, ``("U", n)``; rightmost acts first."""

    ring: Ring
    letters: tuple = ()

    def __str__(self) -> str:
        fmt = self.ring.format
        return " ".join(f"{k}({fmt(v)})" for k, v in self.letters) or "1"


@dataclass(frozen=True)
class GroupWord:
    """Formal product ``[g1][g2]...[gk]`` in the partial group algebra."""

    ring: Ring
    letters: tuple = ()

    def product(self) -> GroupElement:
        out = GroupElement.identity(self.ring)
        for g in self.letters:
            out = out * g
        return out

    def __str__(self) -> str:
        return "".join(f"[{g}]" for g in self.letters) or "[e]"


@dataclass(frozen=True)
class CLMonomial:
    """``s_{m2}^* u^n s_m s_m^* u^{-n1} s_{m1}`` with fields (m'', n, m, n', m')."""

    ring: Ring
    m2: object
    n: object
    m: object
    n1: object
    m1: object

    def word(self) -> GeneratorWord:
        r = self.ring
        return GeneratorWord(
            r,
            (("S*", self.m2), ("U", self.n), ("S", self.m), ("S*", self.m), ("U", r.neg(self.n1)), ("S", self.m1)),
        )

    def psi(self) -> GroupWord:
        """Image in the partial group algebra: two letters."""
        r = self.ring
        return GroupWord(
            r,
            (
                GroupElement.of(r, [self.n, self.m2], [self.m, self.m2]),
                GroupElement.of(r, [r.neg(self.n1), self.m], [self.m1, self.m]),
            ),
        )

    def __str__(self) -> str:
        fmt = self.ring.format
        return ",".join(fmt(v) for v in (self.m2, self.n, self.m, self.n1, self.m1))


def parse_monomial(ring: Ring, text: str) -> CLMonomial:
    parts = text.split(",")
    if len(parts) != 5:
        raise ParseError("monomial needs five comma-separated entries m'',n,m,n',m'", text, 0)
    vals = []
    offset = 0
    for p in parts:
        try:
            vals.append(ring.parse(p))
        except ParseError as exc:
            raise ParseError(str(exc).split(" at position")[0], text, offset + exc.position) from None
        offset += len(p) + 1
    m2, n, m, n1, m1 = vals
    for pos, v in ((0, m2), (2, m), (4, m1)):
        if v == ring.zero:
            raise ParseError("moduli must be nonzero", text, sum(len(q) + 1 for q in parts[:pos]))
    return CLMonomial(ring, m2, n, m, n1, m1)


_LETTER = {"S": gen_S, "S*": gen_S_star, "U": gen_U}


def eval_word(w: GeneratorWord | GroupWord | None) -> AffinePartialMap:
    """Evaluate a word as an operator; ``None`` stands for the zero element."""
    if w is None:
        raise TypeError("use zero_map for the zero element")
    r = w.ring
    if isinstance(w, GroupWord):
        maps = [pi_of(g) for g in w.letters]
    else:
        maps = [_LETTER[k](r, v) for k, v in w.letters]
    if not maps:
        return identity(r)
    return compose(*maps)


def _eval_or_zero(ring: Ring, w):
    return zero_map(ring) if w is None else eval_word(w)


# -- conditional expectations ----------------------------------------------------


def expectation_E(w: GroupWord) -> GroupWord | None:
    """Keep the word iff its group product is the identity; ``None`` means zero."""
    return w if w.product().is_identity() else None


def expectation_Theta(x: CLMonomial) -> CLMonomial | None:
    """The diagonal part of a monomial; ``None`` means zero.

    The Kronecker deltas compare m' with m'' and n with n' as ring elements.
    Comparing moduli only up to units would keep monomials such as
    ``s_{-2}^* e s_2`` that move points (r -> -r) and are not diagonal.
    """
    if x.m1 == x.m2 and x.n == x.n1:
        return CLMonomial(x.ring, x.m1, x.n, x.m, x.n, x.m1)
    return None


# -- reports ---------------------------------------------------------------------


@dataclass
class VerificationReport:
    suite: str
    anchor: str
    ring: str
    params: dict = field(default_factory=dict)
    passed: bool = True
    checked_count: int = 0
    witness: dict | None = None
    elapsed_ms: float = 0.0
    notes: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "suite": self.suite,
            "anchor": self.anchor,
            "ring": self.ring,
            "params": self.params,
            "pass": self.passed,
            "checked_count": self.checked_count,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing else 0,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        if self.notes:
            d["notes"] = self.notes
        return d

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """Combine two runs of the same check (counts add, first witness wins)."""
        return VerificationReport(
            self.suite,
            self.anchor,
            self.ring,
            {**self.params, **other.params},
            self.passed and other.passed,
            self.checked_count + other.checked_count,
            self.witness if self.witness is not None else other.witness,
            self.elapsed_ms + other.elapsed_ms,
            {**self.notes, **other.notes},
        )


class Tally:
    """Counts checks and remembers the first failure."""

    def __init__(self, suite: str, anchor: str, ring: Ring, **params):
        self.report = VerificationReport(suite, anchor, ring.token, {k: str(v) for k, v in params.items()})
        self.ring = ring
        self._t0 = time.perf_counter()

    def check(self, ok: bool, witness=None) -> bool:
        rep = self.report
        rep.checked_count += 1
        if not ok:
            rep.passed = False
            if rep.witness is None:
                rep.witness = witness() if callable(witness) else dict(witness or {})
        return ok

    def maps_equal(self, lhs: AffinePartialMap, rhs: AffinePartialMap, **params) -> bool:
        ok = lhs == rhs
        return self.check(ok, lambda: _map_witness(self.ring, lhs, rhs, params))

    def done(self, **notes) -> VerificationReport:
        self.report.elapsed_ms = (time.perf_counter() - self._t0) * 1000.0
        self.report.notes.update(notes)
        return self.report


def _fmt_params(ring: Ring, params: dict) -> dict:
    out = {}
    for k, v in params.items():
        out[k] = v if isinstance(v, str) else str(v) if not isinstance(v, (int, tuple)) else ring.format(v)
    return out


def differing_point(f: AffinePartialMap, g: AffinePartialMap):
    """A ring element where ``f`` and ``g`` disagree (domain or value), or None."""
    r = f.ring
    sym = (f.domain - g.domain) | (g.domain - f.domain)
    if not sym.is_empty():
        return sym.sorted_classes()[0]
    for x in f.domain.sorted_classes():
        for k in r.residues(r.nonunit) if r.nonunit is not None else (r.zero,):
            p = r.add(x, r.mul(k, f.domain.modulus))
            if f(p) != g(p):
                return p
    return None


def _map_witness(ring: Ring, lhs, rhs, params) -> dict:
    w = _fmt_params(ring, params)
    w["lhs"] = str(lhs)
    w["rhs"] = str(rhs)
    p = differing_point(lhs, rhs)
    if p is not None:
        w["point"] = ring.format(p)
    return w


def is_partition(sets: Sequence[ClopenSet]):
    """Return ``(ok, detail)``: are the sets pairwise disjoint with full union?"""
    if not sets:
        return False, "no sets"
    ring = sets[0].ring
    mod = ring.one
    for s in sets:
        mod = ring.lcm(mod, s.modulus)
    seen: dict = {}
    for idx, s in enumerate(sets):
        for c in s.refine(mod):
            if c in seen:
                return False, f"sets {seen[c]} and {idx} overlap at {ring.format(c)} mod {ring.format(mod)}"
            seen[c] = idx
    if len(seen) != ring.norm(mod):
        missing = next(c for c in ring.residues(mod) if c not in seen)
        return False, f"union misses {ring.format(missing)} mod {ring.format(mod)}"
    return True, ""


# -- relation suites ---------------------------------------------------------------


def coset_projection(ring: Ring, n, m) -> AffinePartialMap:
    """``u^n e_m u^{-n}`` as a composite of generators."""
    return compose(gen_U(ring, n), gen_S(ring, m), gen_S_star(ring, m), gen_U(ring, ring.neg(n)))


def verify_CL(
    ring: Ring,
    which: str,
    *,
    max_norm: int = 64,
    samples: int = 50,
    rng: random.Random | None = None,
    moduli: Iterable | None = None,
) -> VerificationReport:
    """Check one of CL1..CL4 exhaustively over moduli of norm <= ``max_norm``.

    ``samples`` controls how many translation parameters are drawn for CL2,
    CL3 and the CL4 representative-independence check.
    """
    rng = rng or random.Random(0)
    ms = list(moduli) if moduli is not None else ring.elements(max_norm)
    t = Tally("relations", which, ring, max_norm=max_norm, samples=samples, moduli=len(ms))
    if which == "CL1":
        for m in ms:
            sm = gen_S(ring, m)
            # the generators s_m are isometries
            t.maps_equal(sm.adjoint() @ sm, identity(ring), m=m, side="s_m* s_m")
            for m1 in ms:
                t.maps_equal(sm @ gen_S(ring, m1), gen_S(ring, ring.mul(m, m1)), m=m, m1=m1)
    elif which == "CL2":
        for _ in range(samples):
            n, n1 = ring.sample(rng, max_norm), ring.sample(rng, max_norm)
            t.maps_equal(gen_U(ring, n) @ gen_U(ring, n1), gen_U(ring, ring.add(n, n1)), n=n, n1=n1)
            un = gen_U(ring, n)
            t.maps_equal(un.adjoint() @ un, identity(ring), n=n, side="u^-n u^n")
            t.maps_equal(un @ un.adjoint(), identity(ring), n=n, side="u^n u^-n")
        t.maps_equal(gen_U(ring, ring.zero) @ gen_U(ring, ring.zero), identity(ring), n=ring.zero, n1=ring.zero)
    elif which == "CL3":
        for m in ms:
            sm = gen_S(ring, m)
            for _ in range(samples):
                n = ring.sample(rng, max_norm)
                t.maps_equal(sm @ gen_U(ring, n), gen_U(ring, ring.mul(m, n)) @ sm, m=m, n=n)
    elif which == "CL4":
        for m in ms:
            projs = []
            for l in ring.residues(m):
                projs.append(as_projection(coset_projection(ring, l, m)))
            ok, detail = is_partition(projs)
            t.check(ok, lambda: {"m": ring.format(m), "detail": detail})
        # the sum does not depend on the representative l of l + (m)
        for _ in range(samples):
            m = rng.choice(ms)
            l, k = ring.sample(rng, max_norm), ring.sample(rng, max_norm)
            l2 = ring.add(l, ring.mul(k, m))
            t.maps_equal(coset_projection(ring, l, m), coset_projection(ring, l2, m), m=m, l=l, l2=l2)
            t.check(
                from_coset(ring, l2, m) == from_coset(ring, l, m),
                {"m": ring.format(m), "l": ring.format(l), "l2": ring.format(l2)},
            )
    else:
        raise ValueError(f"unknown relation {which!r}")
    return t.done()


def verify_commuting_projections(
    ring: Ring, *, samples: int = 200, max_norm: int = 64, rng: random.Random | None = None
) -> VerificationReport:
    """``u^n e_m u^{-n}`` and ``u^n' e_m' u^{-n'}`` commute."""
    rng = rng or random.Random(0)
    t = Tally("relations", "commuting projections", ring, samples=samples, max_norm=max_norm)
    for _ in range(samples):
        n, n1 = ring.sample(rng, max_norm), ring.sample(rng, max_norm)
        m, m1 = ring.sample(rng, max_norm, nonzero=True), ring.sample(rng, max_norm, nonzero=True)
        p, q = coset_projection(ring, n, m), coset_projection(ring, n1, m1)
        t.maps_equal(p @ q, q @ p, n=n, m=m, n1=n1, m1=m1)
    return t.done()


def random_group_element(ring: Ring, rng: random.Random, max_norm: int = 64) -> GroupElement:
    n = ring.sample(rng, max_norm)
    m = ring.sample(rng, max_norm, nonzero=True)
    mp = ring.sample(rng, max_norm, nonzero=True)
    return from_triple(ring, n, m, mp)


def verify_partial_rep(
    ring: Ring,
    *,
    samples: int = 500,
    max_norm: int = 64,
    nonreduced: int = 100,
    rng: random.Random | None = None,
) -> list[VerificationReport]:
    """PR1-PR3 on random pairs, R1-R3 per modulus, and well-definedness of pi."""
    rng = rng or random.Random(0)
    suite = "partial-rep"
    reports = []
    e = GroupElement.identity(ring)
    ms = ring.elements(max_norm)

    t = Tally(suite, "PR1", ring)
    t.maps_equal(pi_of(e), identity(ring), g=str(e))
    reports.append(t.done())

    pairs = [(random_group_element(ring, rng, max_norm), random_group_element(ring, rng, max_norm)) for _ in range(samples)]
    t2 = Tally(suite, "PR2", ring, samples=samples, max_norm=max_norm)
    t3 = Tally(suite, "PR3", ring, samples=samples, max_norm=max_norm)
    for g, h in pairs:
        pg, ph, phi = pi_of(g), pi_of(h), pi_of(h.inverse())
        t2.maps_equal(pi_of(g.inverse()), adjoint(pg), g=str(g))
        t2.maps_equal(phi, adjoint(ph), g=str(h))
        t3.maps_equal(compose(pg, ph, phi), compose(pi_of(g * h), phi), g=str(g), h=str(h))
    reports += [t2.done(), t3.done()]

    # relations of the partial group algebra, one modulus at a time
    t_r2 = Tally(suite, "R2", ring, max_norm=max_norm)
    t_r3 = Tally(suite, "R3", ring, max_norm=max_norm)
    for m in ms:
        g = GroupElement.of(ring, [ring.zero, ring.one], [ring.one, m])
        t_r2.maps_equal(pi_of(g) @ pi_of(g.inverse()), identity(ring), m=m)
        projs = []
        for n in ring.residues(m):
            h = GroupElement.of(ring, n, m)
            projs.append(as_projection(pi_of(h) @ pi_of(h.inverse())))
        ok, detail = is_partition(projs)
        t_r3.check(ok, lambda: {"m": ring.format(m), "detail": detail})
    reports += [t_r2.done(), t_r3.done()]

    # R1 as a consequence of R3 with m = 1 plus representative independence
    t_r1 = Tally(suite, "R1", ring, samples=samples)
    base = [as_projection(pi_of(GroupElement.of(ring, n, ring.one)) @ pi_of(GroupElement.of(ring, ring.neg(n), ring.one)))
            for n in ring.residues(ring.one)]
    ok, detail = is_partition(base)
    t_r1.check(ok, {"m": "1", "detail": detail})
    for _ in range(samples):
        n = ring.sample(rng, max_norm)
        t_r1.check(from_coset(ring, n, ring.one) == from_coset(ring, ring.zero, ring.one), {"n": ring.format(n)})
        g = GroupElement.of(ring, n, ring.one)
        t_r1.maps_equal(pi_of(g) @ pi_of(g.inverse()), identity(ring), n=n)
    reports.append(t_r1.done(derived_from="R3 with m = 1"))

    # sum in R3 does not depend on the representatives
    t_ind = Tally(suite, "R3 representative independence", ring, samples=samples)
    for _ in range(samples):
        m = ring.sample(rng, max_norm, nonzero=True)
        n, k = ring.sample(rng, max_norm), ring.sample(rng, max_norm)
        n2 = ring.add(n, ring.mul(k, m))
        g, g2 = GroupElement.of(ring, n, m), GroupElement.of(ring, n2, m)
        t_ind.maps_equal(pi_of(g) @ pi_of(g.inverse()), pi_of(g2) @ pi_of(g2.inverse()), n=n, n2=n2, m=m)
    reports.append(t_ind.done())

    # pi is independent of the representation (n/m', m/m')
    t_pi = Tally(suite, "pi well-defined", ring, samples=nonreduced)
    t_gen = Tally(suite, "pi general representation", ring, samples=nonreduced)
    for _ in range(nonreduced):
        n = ring.sample(rng, max_norm)
        m = ring.sample(rng, max_norm, nonzero=True)
        mp = ring.sample(rng, max_norm, nonzero=True)
        k = ring.sample(rng, max_norm, nonzero=True)
        g = from_triple(ring, n, m, mp)
        base_map = pi_from_triple(ring, n, m, mp)
        scaled = pi_from_triple(ring, ring.mul(k, n), ring.mul(k, m), ring.mul(k, mp))
        t_pi.maps_equal(base_map, scaled, n=n, m=m, mp=mp, k=k)
        t_pi.maps_equal(base_map, pi_of(g), n=n, m=m, mp=mp)
        # (n/m2, m/m1) with independent denominators
        m2 = ring.sample(rng, max_norm, nonzero=True)
        m1 = ring.sample(rng, max_norm, nonzero=True)
        g2 = GroupElement.of(ring, [n, m2], [m, m1])
        t_gen.maps_equal(pi_general(ring, n, m2, m, m1), pi_of(g2), n=n, m2=m2, m=m, m1=m1)
    reports += [t_pi.done(), t_gen.done()]
    return reports


def verify_isomorphism(
    ring: Ring, *, samples: int = 200, max_norm: int = 64, rng: random.Random | None = None
) -> VerificationReport:
    """Psi and Phi invert each other on generators."""
    rng = rng or random.Random(0)
    t = Tally("partial-rep", "Psi/Phi generators", ring, samples=samples, max_norm=max_norm)
    for _ in range(samples):
        n = ring.sample(rng, max_norm)
        m = ring.sample(rng, max_norm, nonzero=True)
        mp = ring.sample(rng, max_norm, nonzero=True)
        t.maps_equal(eval_word(GroupWord(ring, (GroupElement.of(ring, n, ring.one),))), gen_U(ring, n), n=n)
        t.maps_equal(eval_word(GroupWord(ring, (GroupElement.of(ring, ring.zero, m),))), gen_S(ring, m), m=m)
        g = from_triple(ring, n, m, mp)
        t.maps_equal(
            eval_word(GroupWord(ring, (g,))),
            eval_word(GeneratorWord(ring, (("S*", mp), ("U", n), ("S", m)))),
            n=n, m=m, mp=mp,
        )
    return t.done()


# -- conditional expectation ------------------------------------------------------


def check_CE_intertwine(x: CLMonomial) -> VerificationReport:
    """Compare E(Psi(x)) with Psi(Theta(x)), as group words and as operators."""
    ring = x.ring
    t = Tally("expectation", "E∘Ψ=Ψ∘Θ", ring, monomial=str(x))
    psi_x = x.psi()
    # Psi(x) evaluates to the same operator as x itself
    t.maps_equal(eval_word(psi_x), eval_word(x.word()), monomial=str(x), side="Psi(x) vs x")
    left = expectation_E(psi_x)
    theta = expectation_Theta(x)
    right = None if theta is None else theta.psi()
    t.check(
        (left is None) == (right is None) and (left is None or left.letters == right.letters),
        lambda: {"monomial": str(x), "E(Psi(x))": str(left or 0), "Psi(Theta(x))": str(right or 0)},
    )
    lmap = _eval_or_zero(ring, left)
    rmap = zero_map(ring) if theta is None else eval_word(theta.word())
    t.maps_equal(lmap, rmap, monomial=str(x), side="operators")
    return t.done(zero=str(theta is None).lower(), delta_reading="literal equality")


def random_monomial(ring: Ring, rng: random.Random, kind: str, max_norm: int = 64) -> CLMonomial:
    """``kind`` is "kept", "n-mismatch", "m-mismatch" or "random"."""
    n = ring.sample(rng, max_norm)
    m = ring.sample(rng, max_norm, nonzero=True)
    m1 = ring.sample(rng, max_norm, nonzero=True)
    if kind == "m-mismatch" and len(ring.elements(max_norm)) < 2:
        kind = "n-mismatch"  # F2 has a single nonzero element
    if kind == "kept":
        return CLMonomial(ring, m1, n, m, n, m1)
    if kind == "n-mismatch":
        n1 = n
        while n1 == n:
            n1 = ring.sample(rng, max_norm)
        return CLMonomial(ring, m1, n, m, n1, m1)
    if kind == "m-mismatch":
        units = [u for u in ring.units() if u != ring.one]
        m2 = m1
        while m2 == m1:
            # half the time an associate of m1, which must still count as a mismatch
            if units and rng.random() < 0.5:
                m2 = ring.mul(rng.choice(units), m1)
            else:
                m2 = ring.sample(rng, max_norm, nonzero=True)
        return CLMonomial(ring, m2, n, m, ring.sample(rng, max_norm) if rng.random() < 0.3 else n, m1)
    return CLMonomial(
        ring,
        ring.sample(rng, max_norm, nonzero=True),
        n,
        m,
        ring.sample(rng, max_norm),
        m1,
    )
