import pytest

from cuntzli.clopen import ClopenSet, from_coset
from cuntzli.errors import NotAProjection, NotInDomain, ZeroMultiplier
from cuntzli.group import parse_group
from cuntzli.maps import (
    AffinePartialMap,
    adjoint,
    as_projection,
    compose,
    gen_S,
    gen_S_star,
    gen_U,
    identity,
    pi_from_triple,
    pi_of,
    projection,
    zero_map,
)
from cuntzli.rings import F2T, ZI, Z

from .conftest import NONFIELD


def test_generator_examples():
    assert gen_S(Z, 1) == identity(Z)
    assert gen_S(Z, 2)(3) == 6
    assert compose(adjoint(gen_S(Z, 2)), gen_S(Z, 2)) == identity(Z)
    assert gen_U(Z, 0) == identity(Z)
    assert adjoint(gen_U(Z, 7)) == gen_U(Z, -7)
    assert compose(gen_U(Z, 2), gen_U(Z, 3)) == gen_U(Z, 5)
    with pytest.raises(ZeroMultiplier):
        gen_S(Z, 0)


def test_compose_and_adjoint_examples():
    f = compose(gen_U(Z, 3), gen_S_star(Z, 4))
    assert compose(identity(Z), f) == f
    assert adjoint(adjoint(f)) == f
    assert compose(gen_S(Z, 2), gen_S(Z, 3)) == gen_S(Z, 6)
    lhs, rhs = compose(gen_S(Z, 2), gen_U(Z, 3)), compose(gen_U(Z, 6), gen_S(Z, 2))
    assert lhs == rhs and lhs.triple == (2, 6, 1)
    half = adjoint(gen_S(Z, 2))
    assert half.triple == (1, 0, 2) and half.domain == from_coset(Z, 0, 2)
    assert str(half) == "r ↦ r/2 on {0} mod 2"
    e2 = compose(gen_S(Z, 2), adjoint(gen_S(Z, 2)))
    assert e2.is_projection() and as_projection(e2) == from_coset(Z, 0, 2)


def test_pi_examples():
    assert pi_of(parse_group(Z, "(0, 1)")) == identity(Z)
    f = pi_of(parse_group(Z, "(1/2, 3/2)"))
    assert f.triple == (3, 1, 2)
    assert f.domain == from_coset(Z, 1, 2) and f.range == from_coset(Z, 2, 3)
    assert f(1) == 2 and f(3) == 5
    assert str(f) == "r ↦ (3·r+1)/2 on {1} mod 2"
    assert pi_from_triple(Z, 2, 6, 4) == f
    with pytest.raises(NotInDomain):
        f(2)


def test_as_projection_examples():
    assert as_projection(identity(Z)).is_full()
    u = compose(gen_U(Z, 1), gen_S(Z, 3), gen_S_star(Z, 3), gen_U(Z, -1))
    assert as_projection(u) == from_coset(Z, 1, 3)
    with pytest.raises(NotAProjection):
        as_projection(gen_S(Z, 2))


def test_zero_map_is_canonical():
    z = AffinePartialMap(Z, 5, 1, 10)  # 5r+1 is never divisible by 10
    assert z.is_zero() and z == zero_map(Z) and z.triple == (1, 0, 1)
    assert str(z) == "0"
    assert compose(z, gen_S(Z, 3)) == zero_map(Z)


# -- pointwise oracle: evaluate words letter by letter on concrete points ------------------


def _naive(R, letters, r):
    for kind, p in reversed(letters):
        if kind == "S":
            r = R.mul(p, r)
        elif kind == "U":
            r = R.add(r, p)
        else:
            if not R.divides(p, r):
                return None
            r = R.exact_div(r, p)
    return r


def _build(R, letters):
    maps = {"S": gen_S, "S*": gen_S_star, "U": gen_U}
    return compose(*(maps[k](R, p) for k, p in letters))


WINDOW = {
    Z: list(range(-60, 61)),
    ZI: [(x, y) for x in range(-7, 8) for y in range(-7, 8)],
    F2T: list(range(256)),
}


@pytest.mark.parametrize("R", NONFIELD, ids=lambda r: r.token)
def test_words_match_naive_evaluation(R, rng):
    for _ in range(200):
        letters = []
        for _ in range(rng.randint(1, 6)):
            kind = rng.choice(["S", "S*", "U"])
            p = R.sample(rng, 12, nonzero=kind != "U")
            letters.append((kind, p))
        f = _build(R, letters)
        for x in WINDOW[R]:
            y = _naive(R, letters, x)
            if y is None:
                assert x not in f.domain
            else:
                assert x in f.domain and f(x) == y


@pytest.mark.parametrize("R", NONFIELD, ids=lambda r: r.token)
def test_inverse_semigroup_laws(R, rng):
    for _ in range(150):
        f = _build(R, [(rng.choice(["S", "S*", "U"]), R.sample(rng, 12, nonzero=True)) for _ in range(3)])
        g = _build(R, [(rng.choice(["S", "S*", "U"]), R.sample(rng, 12, nonzero=True)) for _ in range(3)])
        fs = f.adjoint()
        assert f @ fs @ f == f
        assert fs @ f @ fs == fs
        assert (f @ g).adjoint() == g.adjoint() @ fs
        assert (fs @ f).is_projection() and as_projection(fs @ f) == f.domain
        assert as_projection(f @ fs) == f.range


def test_projections_commute():
    A, B = ClopenSet(Z, 6, [1, 4, 5]), ClopenSet(Z, 4, [0, 3])
    p, q = projection(A), projection(B)
    assert p @ q == q @ p == projection(A & B)
