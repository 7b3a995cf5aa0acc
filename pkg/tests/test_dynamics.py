import itertools

import pytest

from cuntzli.clopen import ClopenSet, domain_set, from_coset
from cuntzli.dynamics import (
    Membership3,
    ProfiniteApprox,
    certify_not_fixed,
    coherent_family_count,
    domain_classify,
    orbit_translation,
    parse_cylinder,
    restrict_to_domain,
    rho_contains,
    rho_distinguisher,
    theta_apply,
    verify_certificate,
)
from cuntzli.errors import (
    EmptyTarget,
    FieldDegenerate,
    InsufficientPrecision,
    IsIdentity,
    NotDivisorClosed,
    NotInDomain,
    ParseError,
)
from cuntzli.group import GroupElement, parse_group
from cuntzli.maps import pi_of
from cuntzli.relations import random_group_element
from cuntzli.rings import F2, F2T, ZI, Z
from cuntzli.suites import divisors_by_search

from .conftest import NONFIELD


def X(text, ring=Z):
    return parse_cylinder(ring, text)


def G(text, ring=Z):
    return parse_group(ring, text)


def test_theta_examples():
    assert theta_apply(G("(0, 2)"), X("3 mod 8")) == X("6 mod 16")
    assert theta_apply(G("(0, 1/2)"), X("6 mod 16")) == X("3 mod 8")
    with pytest.raises(NotInDomain):
        theta_apply(G("(0, 1/2)"), X("3 mod 8"))
    assert theta_apply(G("(1/2, 3/2)"), X("5 mod 8")) == X("8 mod 12")
    with pytest.raises(InsufficientPrecision):
        theta_apply(G("(0, 1/4)"), X("0 mod 2"))


def test_rho_examples():
    for r in range(8):
        assert rho_contains(ProfiniteApprox.make(Z, r, 8), GroupElement.identity(Z)) is Membership3.IN
    assert rho_contains(X("3 mod 8"), G("(3, 4)")) is Membership3.IN
    assert rho_contains(X("1 mod 4"), G("(1, 8)")) is Membership3.UNKNOWN
    assert rho_contains(X("2 mod 4"), G("(1, 8)")) is Membership3.OUT
    assert str(Membership3.UNKNOWN) == "unknown"


def test_domain_classify_examples():
    assert domain_classify(G("(0, 1/7)")).kind == "Full"
    assert domain_classify(G("(1/2, 1)")).kind == "Empty"
    dc = domain_classify(G("(1/2, 3/2)"))
    assert dc.kind == "Proper" and dc.set == from_coset(Z, 2, 3)
    assert str(dc) == "Proper({2} mod 3)"


def test_coherent_count_examples():
    assert coherent_family_count(Z, [1]) == 1
    assert coherent_family_count(Z, [1, 2, 3, 4, 6, 12]) == 12
    t = F2T.parse("t")
    assert coherent_family_count(F2T, [1, t, t ^ 1, F2T.mul(t, t ^ 1)]) == 4
    with pytest.raises(NotDivisorClosed):
        coherent_family_count(Z, [1, 2, 3])
    with pytest.raises(NotDivisorClosed):
        coherent_family_count(Z, [2, 4])


def test_certificate_examples():
    with pytest.raises(IsIdentity):
        certify_not_fixed(GroupElement.identity(Z), X("0 mod 2"))
    cert = certify_not_fixed(G("(1, 1)"), X("0 mod 2"))
    assert verify_certificate(cert) and cert.case == "translation"
    cert = certify_not_fixed(G("(0, -1)"), X("2 mod 4"))
    assert cert.witness == X("2 mod 8") and cert.image == X("6 mod 8")
    assert cert.case == "dilation" and verify_certificate(cert)
    with pytest.raises(FieldDegenerate):
        certify_not_fixed(GroupElement.of(F2, 1, 1), ProfiniteApprox.make(F2, 0, 1))
    with pytest.raises(NotInDomain):
        certify_not_fixed(G("(0, 1/2)"), X("1 mod 4"))


def test_orbit_examples():
    x = X("3 mod 8")
    assert orbit_translation(x, from_coset(Z, 3, 4)) == GroupElement.identity(Z)
    g = orbit_translation(x, from_coset(Z, 1, 4))
    assert g == G("(-2, 1)") and theta_apply(g, x) == X("1 mod 8")
    with pytest.raises(EmptyTarget):
        orbit_translation(x, ClopenSet.empty(Z))
    with pytest.raises(InsufficientPrecision):
        orbit_translation(x, from_coset(Z, 1, 3))


def test_parse_cylinder():
    assert X("-1 mod 8") == X("7 mod 8")
    assert str(X("1+i mod 2", ZI)) == "1+1i mod 2"
    for bad in ("3", "3 mod 0", "3 mod x", "y mod 4"):
        with pytest.raises(ParseError):
            X(bad)


# -- oracles ---------------------------------------------------------------------------


def _naive_coherent_count(ring, divisors):
    """Try every choice function; keep the coherent ones."""
    ds = [ring.modulus(d) for d in divisors]
    pairs = [(i, j) for i, a in enumerate(ds) for j, b in enumerate(ds) if i != j and ring.divides(a, b)]
    total = 0
    for choice in itertools.product(*(ring.residues(d) for d in ds)):
        if all(ring._mod(choice[j], ds[i]) == choice[i] for i, j in pairs):
            total += 1
    return total


@pytest.mark.parametrize(
    "ring,N", [(Z, 12), (Z, 30), (Z, 8), (ZI, (2, 2)), (ZI, (3, 0)), (F2T, 12), (F2T, 7)], ids=str
)
def test_coherent_count_against_naive_product(ring, N):
    divs = divisors_by_search(ring, N)
    expected = _naive_coherent_count(ring, divs)
    assert coherent_family_count(ring, divs) == expected == ring.norm(N)


def _cylinder_points(x, m):
    # one representative per class of lcm(N, m) inside the cylinder
    R = x.ring
    return [R.add(x.residue, R.mul(j, x.precision)) for j in R.residues(m)]


@pytest.mark.parametrize("R", NONFIELD, ids=lambda r: r.token)
def test_rho_contains_against_enumeration(R, rng):
    for _ in range(300):
        g = random_group_element(R, rng, 20)
        nf = g.normal_form()
        x = ProfiniteApprox.make(R, R.sample(rng, 100), R.sample(rng, 30, nonzero=True))
        sat = [R.divides(nf.m, R.sub(R.mul(nf.m_prime, p), nf.n)) for p in _cylinder_points(x, nf.m)]
        got = rho_contains(x, g)
        if all(sat):
            assert got is Membership3.IN
        elif not any(sat):
            assert got is Membership3.OUT
        else:
            assert got is Membership3.UNKNOWN


@pytest.mark.parametrize("R", NONFIELD, ids=lambda r: r.token)
def test_theta_agrees_with_operator_on_integer_points(R, rng):
    for _ in range(200):
        g = random_group_element(R, rng, 20)
        x = ProfiniteApprox.make(R, R.sample(rng, 100), R.sample(rng, 30, nonzero=True))
        f = pi_of(g)
        for piece in restrict_to_domain(g, x):
            y = theta_apply(g, piece)
            for p in _cylinder_points(piece, R.nonunit):
                # the operator and the partial action share their domain on R
                assert p in f.domain and f(p) in y


@pytest.mark.parametrize("R", NONFIELD, ids=lambda r: r.token)
def test_certificates_hold_pointwise(R, rng):
    for _ in range(60):
        g = random_group_element(R, rng, 20)
        if g.is_identity():
            continue
        x = ProfiniteApprox.make(R, R.sample(rng, 100), R.sample(rng, 12, nonzero=True))
        for piece in restrict_to_domain(g, x):
            cert = certify_not_fixed(g, piece)
            assert verify_certificate(cert)
            assert cert.witness.residue in piece
            # witness and image share no class modulo the finer precision
            W, I = cert.witness.as_clopen(), cert.image.as_clopen()
            M = R.lcm(W.modulus, I.modulus)
            assert not (W.refine(M) & I.refine(M))


def test_tampered_certificate_is_rejected():
    cert = certify_not_fixed(G("(0, -1)"), X("2 mod 4"))
    bad = type(cert)(cert.g, cert.cylinder, X("2 mod 4"), X("2 mod 4"), cert.case, 0, 1)
    assert not verify_certificate(bad)


@pytest.mark.parametrize("R", NONFIELD, ids=lambda r: r.token)
def test_orbit_translation_lands_in_target(R, rng):
    N = R.mul(R.nonunit, R.from_int(3)) if R is not F2T else 27
    divs = divisors_by_search(R, N)
    for _ in range(100):
        x = ProfiniteApprox.make(R, R.sample(rng, 200), N)
        d = rng.choice(divs)
        target = ClopenSet(R, d, [c for c in R.residues(d) if rng.random() < 0.4] or [R.zero])
        g = orbit_translation(x, target)
        assert g.w.num == R.one and g.w.den == R.one
        assert theta_apply(g, x).as_clopen() <= target


def test_rho_distinguisher():
    x, y = X("3 mod 12"), X("7 mod 12")
    g = rho_distinguisher(x, y)
    assert rho_contains(x, g) is Membership3.IN and rho_contains(y, g) is Membership3.OUT
    assert rho_distinguisher(x, x) is None


def test_domain_set_of_inverse_is_theta_domain():
    g = G("(1/2, 3/2)")
    assert domain_set(g.inverse()) == from_coset(Z, 1, 2)
