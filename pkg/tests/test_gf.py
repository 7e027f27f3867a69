"""Field construction, arithmetic, and the index encoding."""

import itertools

import numpy as np
import pytest

from widesort import FieldElem, make_field, prime_power
from widesort.gf import MAX_ORDER


def test_prime_field_modulus_is_x():
    f = make_field(5, 1)
    assert f.q == 5
    assert f.modulus == (0, 1)


def test_gf4_modulus_is_the_unique_irreducible_quadratic():
    f = make_field(2, 2)
    assert f.modulus == (1, 1, 1)  # x^2 + x + 1


def test_gf9_modulus_has_no_root():
    f = make_field(3, 2)
    c0, c1, c2 = f.modulus
    assert c2 == 1
    for x in range(3):
        assert (c0 + c1 * x + c2 * x * x) % 3 != 0


def test_characteristic_two_addition():
    f = make_field(2, 1)
    assert f.add(f.one(), f.one()) == f.zero()


def test_gf4_x_times_x():
    f = make_field(2, 2)
    assert f.mul(f.elem(2), f.elem(2)) == f.elem(3)  # x * x = x + 1


def test_rejects_non_prime_and_oversize():
    with pytest.raises(ValueError):
        make_field(6, 1)
    with pytest.raises(ValueError):
        make_field(2, 17)  # 2^17 > cap
    assert make_field(2, 16).q == MAX_ORDER


def test_inverse_axiom_across_fields():
    for p, m in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)]:
        f = make_field(p, m)
        for a in range(1, f.q):
            assert f.mul(f.elem(a), f.inv(f.elem(a))) == f.one()
        with pytest.raises(ZeroDivisionError):
            f.inv(f.zero())


def test_inverse_on_the_fly_above_table_limit():
    f = make_field(2, 10)  # q = 1024, beyond table precomputation
    assert f.mul_table is None
    rng = np.random.default_rng(0)
    for a in rng.integers(1, f.q, size=25):
        a = int(a)
        assert f.mul_rep(a, f.inv_rep(a)) == 1


def test_phi_examples():
    f = make_field(3, 2)
    assert f.phi(0) == f.zero()
    assert f.coefficients(f.phi(5)) == (2, 1)  # 5 = 1*3 + 2
    for k in range(f.q):
        assert f.phi_inv(f.phi(k)) == k
    with pytest.raises(ValueError):
        f.phi(9)


def test_phi_addition_is_digitwise():
    f = make_field(3, 2)
    for i in range(f.q):
        for j in range(f.q):
            di = f.coefficients(f.phi(i))
            dj = f.coefficients(f.phi(j))
            digit_sum = tuple((a + b) % 3 for a, b in zip(di, dj))
            assert f.coefficients(f.add(f.phi(i), f.phi(j))) == digit_sum


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (2, 5)])
def test_field_axioms_exhaustive_small(p, m):
    f = make_field(p, m)
    q = f.q
    add = f.add_table.astype(np.int64)
    mul = f.mul_table.astype(np.int64)
    i = np.arange(q)
    # commutativity and identities
    assert np.array_equal(add, add.T)
    assert np.array_equal(mul, mul.T)
    assert np.array_equal(add[0], i)
    assert np.array_equal(mul[1], i)
    assert np.all(mul[0] == 0)
    # associativity via table composition over all triples
    assert np.array_equal(add[add[:, :, None], i[None, None, :]], add[:, add])
    assert np.array_equal(mul[mul[:, :, None], i[None, None, :]], mul[:, mul])
    # distributivity over all triples: a*(b+c) == a*b + a*c
    assert np.array_equal(mul[:, add], add[mul[:, :, None], mul[:, None, :]])
    # additive and multiplicative inverses exist
    assert np.all(np.sort(add, axis=1) == i[None, :])
    assert np.all(np.sort(mul[1:, 1:], axis=1) == i[None, 1:])


def test_field_axioms_sampled_large():
    f = make_field(2, 9)  # q = 512 > table limit
    rng = np.random.default_rng(5)
    for _ in range(60):
        a, b, c = (int(x) for x in rng.integers(0, f.q, size=3))
        assert f.mul_rep(a, f.mul_rep(b, c)) == f.mul_rep(f.mul_rep(a, b), c)
        assert f.mul_rep(a, f.add_rep(b, c)) == f.add_rep(f.mul_rep(a, b), f.mul_rep(a, c))
        assert f.add_rep(a, b) == f.add_rep(b, a)


def test_cross_field_tagging_is_rejected():
    f4 = make_field(2, 2)
    f9 = make_field(3, 2)
    with pytest.raises(ValueError):
        f4.mul(f4.elem(1), f9.elem(1))


def test_make_field_caches_instances():
    assert make_field(3, 2) is make_field(3, 2)


def test_elem_range_check():
    f = make_field(2, 2)
    with pytest.raises(ValueError):
        FieldElem(4, f)


def test_prime_power_detection():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(97) == (97, 1)
    assert prime_power(1) is None
    for x in (6, 10, 12, 36, 100):
        assert prime_power(x) is None
