import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from epikit.affine import (ADJOINT, SIMPLY_CONNECTED, AffineRoot, BuildingPoint, KacCoords, act,
                           affine_reflection, alcove_stabilizer, barycentre, check_barycentre,
                           delta2_x, delta_x, evaluate, facet_barycentres, format_affine,
                           identity, in_coroot_lattice, kac_to_point, parahoric_orbit, parse_kac,
                           pi_x, point_to_kac, psi_x_band, root, simple_affine_roots, translation,
                           word_element)
from epikit.errors import InvalidInput, NotABarycentre
from epikit.linalg import rank
from epikit.rootsys import root_system, weyl_group
from oracles import FACET_TYPES, SMALL_TYPES, affine_roots_between

G2 = root_system("G2")
F = Fraction


def test_eval_examples():
    x = kac_to_point(G2, (1, 1, 1))
    assert evaluate(root(-3, -2, level=1), x) == F(1, 6)
    y = kac_to_point(G2, parse_kac("10⇛1", G2))
    assert root(0, 1)(y) == 0
    origin = (0, 0)
    for n in (-2, 0, 5):
        assert root(3, 1, level=n)(origin) == n


def test_kac_examples():
    z = kac_to_point(G2, parse_kac("30⇛1", G2))
    assert tuple(z) == (F(1, 6), 0)
    x = kac_to_point(G2, parse_kac("11⇛1", G2))
    assert [psi(x) for psi in simple_affine_roots(G2)] == [F(1, 6)] * 3
    for name in SMALL_TYPES:
        sys = root_system(name)
        assert all(c == 0 for c in kac_to_point(sys, (1,) + (0,) * sys.rank))


def test_kac_diagram_and_bourbaki_orders():
    assert parse_kac("1,0,1", G2).b == (1, 1, 0)
    assert parse_kac("1,0,1", G2, order="bourbaki").b == (1, 0, 1)
    assert parse_kac("10⇛1", G2) == parse_kac("1,0,1", G2)
    b3 = root_system("B3")
    assert parse_kac("1,2,0,1", b3).b == parse_kac("1,2,0,1", b3, order="bourbaki").b
    for bad in ("1,0", "1,x,1", "0,0,0", "1,-1,1"):
        with pytest.raises(InvalidInput):
            parse_kac(bad, G2)
    with pytest.raises(InvalidInput):
        parse_kac("1,0,1", G2, order="sideways")


@given(st.sampled_from(SMALL_TYPES), st.data())
def test_kac_round_trip(name, data):
    sys = root_system(name)
    b = data.draw(st.lists(st.integers(0, 6), min_size=sys.rank + 1, max_size=sys.rank + 1)
                  .filter(any))
    k = KacCoords(tuple(b)).normalized()
    x = kac_to_point(sys, k)
    assert point_to_kac(sys, x) == k
    m = k.normalizer(sys)
    assert [psi(x) for psi in simple_affine_roots(sys)] == [F(v, m) for v in k.b]


def test_delta_examples():
    y = kac_to_point(G2, parse_kac("10⇛1", G2))
    roots, d = delta_x(G2, y)
    assert d == F(1, 4)
    assert set(roots) == {root(-3, -2, level=1), root(-3, -1, level=1), root(1, 0), root(1, 1)}
    b5 = root_system("B5")
    roots, d = delta_x(b5, kac_to_point(b5, (1,) * 6))
    assert d == F(1, 10)


@pytest.mark.parametrize("name", SMALL_TYPES)
def test_alcove_delta_is_simple_affine_roots(name):
    sys = root_system(name)
    roots, d = delta_x(sys, kac_to_point(sys, (1,) * (sys.rank + 1)))
    assert set(roots) == set(simple_affine_roots(sys))
    assert d == F(1, sum(sys.marks))


def test_delta_rejects_non_barycentres():
    with pytest.raises(NotABarycentre):
        delta_x(G2, kac_to_point(G2, (1, 2, 1)))
    with pytest.raises(NotABarycentre):
        delta_x(G2, (F(-1, 6), F(1, 6)))
    with pytest.raises(InvalidInput):
        check_barycentre(G2, (0, 0, 0))


@pytest.mark.parametrize("name", ["G2", "B3", "C3", "A3", "F4"])
def test_band_matches_brute_force(name):
    sys = root_system(name)
    for x in facet_barycentres(sys):
        assert set(psi_x_band(sys, x, 0, 1)) == affine_roots_between(sys, x, 0, 1)
        _, d = delta_x(sys, x)
        assert set(delta2_x(sys, x)) == affine_roots_between(sys, x, 2 * d, 2 * d, False, False)


def test_band_examples():
    x = kac_to_point(G2, (1, 1, 1))
    band = psi_x_band(G2, x, 0, 1)
    # six positive roots with values k/6, k = 1..5, and six 1 - beta with beta positive
    assert len(band) == 12 and set(band) == affine_roots_between(G2, x, 0, 1)
    assert set(psi_x_band(G2, x, F(1, 6), F(1, 6), False, False)) == set(delta_x(G2, x)[0])
    assert psi_x_band(G2, (0, 0), 0, 1) == ()
    with pytest.raises(InvalidInput):
        psi_x_band(G2, x, 1, 0)


@pytest.mark.parametrize("name", SMALL_TYPES)
def test_delta_gradients_span(name):
    sys = root_system(name)
    for x in facet_barycentres(sys):
        roots, _ = delta_x(sys, x)
        assert rank([r.gradient for r in roots]) == sys.rank


@pytest.mark.parametrize("name", FACET_TYPES)
def test_every_small_root_steps_down_through_delta(name):
    sys = root_system(name)
    for x in facet_barycentres(sys):
        delta = set(delta_x(sys, x)[0])
        below = affine_roots_between(sys, x, 0, 1, True, False)
        for psi in below - delta:
            assert any(psi - th in below for th in delta), (x, psi)


@pytest.mark.parametrize("name", FACET_TYPES)
def test_parahoric_orbit_inside_delta(name):
    sys = root_system(name)
    for x in facet_barycentres(sys):
        assert set(pi_x(sys, x)) <= set(parahoric_orbit(sys, x)) <= set(delta_x(sys, x)[0])


def test_act_examples():
    s1 = word_element(G2, [1])
    assert act(s1, root(0, 1)) == root(3, 1)
    e = identity(G2)
    for r in G2.roots:
        assert act(e, AffineRoot(r, 3)) == AffineRoot(r, 3)
    t = translation(G2, G2.simple_coroot(1))
    assert act(t, root(1, 0)) == root(1, 0, level=-2)


def test_affine_reflection_fixes_its_wall():
    psi = root(-3, -2, level=1)
    s0 = affine_reflection(G2, psi)
    assert act(s0, psi) == -psi
    x = kac_to_point(G2, (0, 1, 1))
    assert psi(x) == 0 and act(s0, x) == x


def _random_element(rng, sys, lattice=ADJOINT):
    v = rng.choice(weyl_group(sys))
    mu = [rng.randint(-3, 3) for _ in range(sys.rank)]
    if lattice == SIMPLY_CONNECTED:
        cols = [sys.simple_coroot(j) for j in range(1, sys.rank + 1)]
        mu = [sum(m * c[i] for m, c in zip(mu, cols)) for i in range(sys.rank)]
    return word_element(sys, v.word, mu)


def test_weyl_equivariance_on_random_triples():
    rng = random.Random(2024)
    systems = [root_system(n) for n in ("G2", "B3", "C3", "A3", "B5", "F4", "D4")]
    for _ in range(10_000):
        sys = rng.choice(systems)
        w = _random_element(rng, sys)
        psi = AffineRoot(rng.choice(sys.roots), rng.randint(-4, 4))
        x = tuple(F(rng.randint(-12, 12), rng.randint(1, 12)) for _ in range(sys.rank))
        assert act(w, psi)(act(w, x)) == psi(x)


@given(st.sampled_from(["G2", "B3", "C3", "A2"]), st.randoms(use_true_random=False))
def test_group_law_and_inverse(name, rng):
    sys = root_system(name)
    u, w = _random_element(rng, sys), _random_element(rng, sys)
    psi = AffineRoot(rng.choice(sys.roots), rng.randint(-2, 2))
    assert act(u * w, psi) == act(u, act(w, psi))
    assert (w * w.inverse()).is_identity
    assert act(w.inverse(), act(w, psi)) == psi


def test_alcove_stabilizer_examples():
    b5 = root_system("B5")
    (sigma,) = alcove_stabilizer(b5, ADJOINT)
    assert (sigma * sigma).is_identity
    psis = simple_affine_roots(b5)
    assert act(sigma, psis[0]) == psis[1] and act(sigma, psis[1]) == psis[0]
    assert all(act(sigma, p) == p for p in psis[2:])
    assert sigma.translation == (1, 0, 0, 0, 0)
    assert not sigma.in_lattice(b5, SIMPLY_CONNECTED)
    for name in SMALL_TYPES:
        assert alcove_stabilizer(root_system(name), SIMPLY_CONNECTED) == []
    assert alcove_stabilizer(G2, ADJOINT) == []
    assert alcove_stabilizer(root_system("F4"), ADJOINT) == []
    assert len(alcove_stabilizer(root_system("A3"), ADJOINT)) == 3
    assert len(alcove_stabilizer(root_system("E6"), ADJOINT)) == 2


def test_coroot_lattice_membership():
    b3 = root_system("B3")
    assert in_coroot_lattice(b3, b3.simple_coroot(2))
    assert not in_coroot_lattice(b3, (1, 0, 0))
    assert in_coroot_lattice(G2, (1, 0))


def test_format_affine():
    assert format_affine(G2, root(-3, -1, level=1)) == "1-a0+a2"
    assert format_affine(G2, root(-3, -2, level=1)) == "1-a0"
    assert format_affine(G2, root(2, 1)) == "2a1+a2"
    assert format_affine(G2, root(1, 0, level=-2)) == "-2+a1"


def test_json_round_trip_and_barycentre_helper():
    psi = root(-3, -1, level=1)
    assert AffineRoot.from_json(psi.to_json()) == psi
    with pytest.raises(InvalidInput):
        AffineRoot.from_json({"level": 1})
    assert barycentre(G2, [0, 1]) == kac_to_point(G2, (1, 1, 0))
    assert isinstance(kac_to_point(G2, (1, 1, 1)), BuildingPoint)
