from math import comb

import pytest

from epikit.affine import kac_to_point, root
from epikit.chevalley import (ADMISSIBLE, c_constant, commutator_expansion, m_constant,
                              structure_constant)
from epikit.errors import InvalidInput
from epikit.rootsys import root_system
from oracles import SMALL_TYPES, affine_roots_between, jacobi_failures, scan_string


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3", "B4", "C4", "D4"])
def test_structure_constants_satisfy_jacobi(name):
    assert jacobi_failures(root_system(name), structure_constant) == 0


@pytest.mark.parametrize("name", SMALL_TYPES)
def test_structure_constant_magnitude_is_p_plus_one(name):
    sys = root_system(name)
    for a in sys.all_roots:
        for b in sys.all_roots:
            if a == b or a == tuple(-c for c in b):
                continue
            n = structure_constant(sys, a, b)
            if tuple(x + y for x, y in zip(a, b)) in sys.all_roots:
                p, _ = scan_string(sys, a, b)
                assert abs(n) == p + 1
                assert structure_constant(sys, b, a) == -n
            else:
                assert n == 0


@pytest.mark.parametrize("name", SMALL_TYPES)
def test_commutator_constants_magnitudes(name):
    sys = root_system(name)
    for a in sys.all_roots:
        for b in sys.all_roots:
            if a == b or a == tuple(-c for c in b):
                continue
            for i, j in ADMISSIBLE:
                if tuple(i * x + j * y for x, y in zip(a, b)) not in sys.all_roots:
                    continue
                c = c_constant(sys, a, b, i, j)
                assert abs(c) in (1, 2, 3)
                if (i, j) == (1, 1) and tuple(y - x for x, y in zip(a, b)) not in sys.all_roots:
                    assert abs(c) == 1


@pytest.mark.parametrize("name", ["G2", "B3", "C3", "F4"])
def test_m_constant_magnitude_is_binomial(name):
    sys = root_system(name)
    for a in sys.all_roots:
        for b in sys.all_roots:
            if a == b or a == tuple(-c for c in b):
                continue
            p, q = scan_string(sys, a, b)
            for i in range(1, q + 1):
                assert abs(m_constant(sys, a, b, i)) == comb(p + i, i)


def test_m_constant_examples():
    g2 = root_system("G2")
    assert abs(m_constant(g2, (0, 1), (1, 0), 1)) == 1
    assert abs(m_constant(g2, (1, 0), (1, 1), 2)) == 3
    a2 = root_system("A2")
    assert abs(m_constant(a2, (1, 0), (0, 1), 1)) == 1
    with pytest.raises(InvalidInput):
        m_constant(g2, (1, 0), (0, 1), 4)


def test_c_constant_examples():
    g2 = root_system("G2")
    assert abs(c_constant(g2, (1, 0), (0, 1), 3, 2)) == 1
    b2 = root_system("B2")
    # alpha_2 is short, alpha_1 long, <alpha_1, alpha_2^vee> = -2
    assert abs(c_constant(b2, (0, 1), (1, 0), 2, 1)) == 1
    with pytest.raises(InvalidInput):
        c_constant(g2, (1, 0), (0, 1), 2, 2)
    with pytest.raises(InvalidInput):
        c_constant(b2, (0, 1), (1, 0), 1, 2)


def test_commutator_expansion_g2_alcove():
    g2 = root_system("G2")
    x = kac_to_point(g2, (1, 1, 1))
    terms = commutator_expansion(g2, root(1, 0), root(0, 1), x)
    assert [t.root for t in terms] == [root(1, 1), root(2, 1), root(3, 1), root(3, 2)]
    assert [t.i + t.j for t in terms] == sorted(t.i + t.j for t in terms)


def test_commutator_expansion_b5_alcove():
    b5 = root_system("B5")
    x = kac_to_point(b5, (1,) * 6)
    terms = commutator_expansion(b5, root(0, 0, 0, 1, 0), root(0, 0, 0, 0, 1), x)
    assert [t.root for t in terms] == [root(0, 0, 0, 1, 1), root(0, 0, 0, 1, 2)]


def test_commutator_expansion_empty_when_sum_not_a_root():
    b5 = root_system("B5")
    x = kac_to_point(b5, (1,) * 6)
    assert commutator_expansion(b5, root(1, 0, 0, 0, 0), root(0, 0, 1, 0, 0), x) == []


@pytest.mark.parametrize("name", ["G2", "B3", "C3", "F4"])
def test_commutator_terms_lie_above_both_inputs(name):
    sys = root_system(name)
    x = kac_to_point(sys, (1,) * (sys.rank + 1))
    band = sorted(affine_roots_between(sys, x, 0, 1))
    for psi in band:
        for phi in band:
            if (psi + phi).is_constant or psi.gradient == phi.gradient:
                continue
            for t in commutator_expansion(sys, psi, phi, x):
                v = t.root(x)
                assert 0 < v < 1 and v > max(psi(x), phi(x))
                assert t.root.gradient == tuple(t.i * a + t.j * b
                                                for a, b in zip(psi.gradient, phi.gradient))


def test_commutator_expansion_rejects_bad_inputs():
    g2 = root_system("G2")
    x = kac_to_point(g2, (1, 1, 1))
    with pytest.raises(InvalidInput):
        commutator_expansion(g2, root(1, 0, level=1), root(0, 1), x)
    with pytest.raises(InvalidInput):
        commutator_expansion(g2, root(-3, -2, level=1), root(3, 2), x)
