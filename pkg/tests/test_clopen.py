import pytest
from hypothesis import given, strategies as st

from cuntzli.clopen import (
    ClopenSet,
    affine_image,
    affine_preimage,
    boolean_combine,
    congruence_set,
    domain_set,
    equals,
    from_coset,
    parse_clopen,
)
from cuntzli.errors import ParseError
from cuntzli.group import parse_group
from cuntzli.rings import F2T, ZI, Z

from .conftest import NONFIELD

WINDOWS = {
    Z: list(range(-120, 121)),
    ZI: [(x, y) for x in range(-12, 13) for y in range(-12, 13)],
    F2T: list(range(512)),
}


def C(text, ring=Z):
    return parse_clopen(ring, text)


def test_from_coset_examples():
    assert from_coset(Z, 0, 1).is_full()
    assert str(from_coset(Z, 1, 3)) == "{1} mod 3"
    assert from_coset(Z, 5, 3) == from_coset(Z, 2, 3)


def test_boolean_examples():
    assert boolean_combine("complement", from_coset(Z, 0, 2)) == from_coset(Z, 1, 2)
    assert boolean_combine("union", from_coset(Z, 1, 2), from_coset(Z, 0, 2)).is_full()
    assert boolean_combine("intersect", from_coset(Z, 1, 2), from_coset(Z, 2, 3)) == from_coset(Z, 5, 6)
    with pytest.raises(TypeError):
        boolean_combine("union", from_coset(Z, 1, 2))


def test_equality_examples():
    assert equals(ClopenSet(Z, 2, []), ClopenSet(Z, 3, []))
    assert equals(ClopenSet.full(Z), ClopenSet(Z, 5, range(5)))
    assert equals(C("{1} mod 2"), C("{1,3,5} mod 6"))
    assert C("{1} mod 2") != C("{1,3} mod 6")


def test_affine_examples():
    assert affine_image(ClopenSet.empty(Z), 3, 1, 2).is_empty()
    assert affine_image(ClopenSet.full(Z), 2, 0, 1) == from_coset(Z, 0, 2)
    assert affine_image(from_coset(Z, 1, 2), 3, 1, 2) == from_coset(Z, 2, 3)
    assert affine_preimage(ClopenSet.full(Z), 7, 0, 1).is_full()
    assert affine_preimage(from_coset(Z, 0, 2), 1, 1, 1) == from_coset(Z, 1, 2)
    assert affine_preimage(from_coset(Z, 1, 4), 2, 0, 1).is_empty()


def test_domain_set_examples():
    assert domain_set(parse_group(Z, "(0, 1/5)")).is_full()
    assert domain_set(parse_group(Z, "(1/2, 1)")).is_empty()
    assert domain_set(parse_group(Z, "(1/2, 3/2)")) == from_coset(Z, 2, 3)


def test_printing_and_parsing():
    assert str(ClopenSet.empty(Z)) == "∅"
    assert str(ClopenSet.full(Z)) == "full"
    assert str(C("{3,1} mod 6")) == "{1,3} mod 6"
    assert C("∅").is_empty() and C("full").is_full()
    assert C("{1+i} mod 2", ZI) == ClopenSet(ZI, (2, 0), [(1, 1)])
    for bad in ("{1,2} mod 0", "{1,2}", "{1,y} mod 4", "{1 mod 4"):
        with pytest.raises(ParseError):
            C(bad)


# -- brute-force membership oracle ---------------------------------------------------


def _random_set(R, rng, max_norm=30):
    m = R.sample(rng, max_norm, nonzero=True)
    res = R.residues(m)
    return ClopenSet(R, m, [c for c in res if rng.random() < 0.5])


def _members(A, window):
    return {x for x in window if x in A}


@pytest.mark.parametrize("R", NONFIELD, ids=lambda r: r.token)
def test_boolean_ops_match_pointwise(R, rng):
    for _ in range(150):
        A, B = _random_set(R, rng), _random_set(R, rng)
        W = R.residues(R.lcm(A.modulus, B.modulus))
        a = {x for x in W if R._mod(x, A.modulus) in A.classes}
        b = {x for x in W if R._mod(x, B.modulus) in B.classes}
        assert _members(A | B, W) == a | b
        assert _members(A & B, W) == a & b
        assert _members(A - B, W) == a - b
        assert _members(~A, W) == set(W) - a
        assert A.isdisjoint(B) == (not (a & b))
        assert A.issubset(B) == (a <= b)
        assert (A == B) == (a == b)


@pytest.mark.parametrize("R", NONFIELD, ids=lambda r: r.token)
def test_single_coset_fast_paths(R, rng):
    for _ in range(300):
        p, q = R.sample(rng, 50), R.sample(rng, 50)
        M, N = R.sample(rng, 20, nonzero=True), R.sample(rng, 20, nonzero=True)
        A, B = from_coset(R, p, M), from_coset(R, q, N)
        # one full period: residues modulo lcm(M, N), membership by divisibility
        W = R.residues(R.lcm(M, N))
        a = {x for x in W if R.divides(M, R.sub(x, p))}
        b = {x for x in W if R.divides(N, R.sub(x, q))}
        assert _members(A & B, W) == a & b
        assert A.isdisjoint(B) == (not (a & b))
        assert A.issubset(B) == (a <= b)


@pytest.mark.parametrize("R", NONFIELD, ids=lambda r: r.token)
def test_congruence_set_matches_brute_force(R, rng):
    W = WINDOWS[R]
    for _ in range(200):
        a, b = R.sample(rng, 30), R.sample(rng, 30)
        n = R.sample(rng, 30, nonzero=True)
        S = congruence_set(R, a, b, n)
        brute = {x for x in W if R.divides(n, R.sub(R.mul(a, x), b))}
        assert _members(S, W) == brute


@pytest.mark.parametrize("R", NONFIELD, ids=lambda r: r.token)
def test_affine_image_and_preimage_pointwise(R, rng):
    W = WINDOWS[R]
    for _ in range(150):
        A = _random_set(R, rng, 16)
        a, d = R.sample(rng, 10, nonzero=True), R.sample(rng, 10, nonzero=True)
        c = R.sample(rng, 20)
        img = affine_image(A, a, c, d)
        pre = affine_preimage(A, a, c, d)
        for x in W:
            top = R.add(R.mul(a, x), c)
            defined = R.divides(d, top)
            y = R.exact_div(top, d) if defined else None
            if x in A and defined:
                assert y in img
            assert (x in pre) == (defined and y in A)
        # every image point has a preimage in A
        for y in W[:200]:
            if y in img:
                num = R.sub(R.mul(d, y), c)
                assert R.divides(a, num) and R.exact_div(num, a) in A


@given(st.integers(-30, 30), st.integers(1, 30), st.integers(1, 6))
def test_refinement_preserves_semantics(n, m, k):
    A = from_coset(Z, n, m)
    refined = ClopenSet(Z, m * k, A.refine(m * k))
    assert refined == A and hash(refined) == hash(A)
    assert A.density() == refined.density()


@given(st.lists(st.integers(0, 11), max_size=12), st.lists(st.integers(0, 17), max_size=18))
def test_boolean_algebra_laws(xs, ys):
    A, B = ClopenSet(Z, 12, xs), ClopenSet(Z, 18, ys)
    assert ~(A | B) == (~A) & (~B)
    assert ~(A & B) == (~A) | (~B)
    assert (A | ~A).is_full() and (A & ~A).is_empty()
    assert A & (A | B) == A
