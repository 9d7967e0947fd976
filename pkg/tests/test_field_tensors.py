from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopflab import (MonomialTensorField, NotDescending, deck_weight, descends,
                     exact_relation_lattice, lie_eigenvalue, make_spec, verify_lee_invariance)
from hopflab.eigendata import lee_generator
from hopflab.field_tensors import pullback, sum_descends
from hopflab.sampling import random_descending_field

from conftest import exact_specs

Q = Fraction


def euler(n):
    return MonomialTensorField(tuple([1] + [0] * (n - 1)), (1,), ())


def test_net_exponent():
    t = MonomialTensorField((2, 0), (1,), (2, 2))
    assert t.net_exponent() == (1, 2)


def test_euler_field_descends_and_is_invariant(classical):
    assert descends(euler(2), classical)
    rep = verify_lee_invariance(euler(2), classical)
    assert rep.verdict == "invariant" and rep.mu_lee == 0
    assert rep.max_pullback_residual < 1e-12


def test_non_descending_field_rejected(classical):
    t = MonomialTensorField((1, 0), (), ())
    assert not descends(t, classical)
    assert deck_weight(t, classical).modulus == 2
    with pytest.raises(NotDescending):
        verify_lee_invariance(t, classical)


def test_rotation_needs_fourth_power():
    spec = make_spec([(2, 0), (2, Q(1, 2))])
    assert not descends(MonomialTensorField((0, 0), (2,), (1,)), spec)
    assert descends(MonomialTensorField((0, 0), (2, 2, 2, 2), (1, 1, 1, 1)), spec)


def test_sum_descends_requires_each_term(classical):
    assert sum_descends([euler(2), MonomialTensorField((0, 1), (2,), ())], classical)
    assert not sum_descends([euler(2), MonomialTensorField((1, 1), (2,), ())], classical)


def test_lie_eigenvalue_linear():
    t = MonomialTensorField((1, 2), (1,), (2,))
    assert lie_eigenvalue(t, [1.0, 10.0]) == pytest.approx(0 * 1 + 3 * 10)


def test_pullback_of_one_form():
    comps = np.array([1.0, 0.0])
    lin = np.diag([2.0, 3.0])
    np.testing.assert_allclose(pullback(comps, 1, lin), [2.0, 0.0])


def test_float_spec_numeric_path():
    spec = make_spec([2.0, 2.0])
    rep = verify_lee_invariance(MonomialTensorField((0, 1), (1,), ()), spec)
    assert rep.verdict == "invariant"
    assert not descends(MonomialTensorField((0, 1), (), ()), spec)


def test_field_json_round_trip():
    t = MonomialTensorField((1, 0, 2), (3, 1), (2,))
    assert MonomialTensorField.from_json(t.to_json()) == t


@given(exact_specs(max_n=4), st.integers(0, 2 ** 16))
def test_descending_fields_have_zero_lee_eigenvalue(spec, seed):
    rng = np.random.default_rng(seed)
    t = random_descending_field(spec, rng, exact_relation_lattice(spec), max_slots=4)
    assert descends(t, spec)
    assert abs(lie_eigenvalue(t, lee_generator(spec))) < 1e-12
    rep = verify_lee_invariance(t, spec, seed=seed, n_points=1)
    assert rep.symbolic_zero and rep.max_pullback_residual <= 1e-10
