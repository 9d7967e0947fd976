import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopflab import (NotCertified, NotQuasiRegular, TheoremViolation, detect_quasi_regular,
                     kodaira_dimension, leaf_space_summary, make_spec, pluricanonical_dimension)
from hopflab.kodaira import (enumerate_pluricanonical, growth_degree, weighted_plurigenus,
                             weighted_projective_name)

from conftest import exact_specs

Q = Fraction


def test_closed_form():
    spec = make_spec([2, 3])
    assert pluricanonical_dimension(spec, 0).count == 1
    assert all(pluricanonical_dimension(spec, k, verify_degree=10).count == 0
               for k in range(1, 6))


def test_kodaira_is_minus_infinity():
    kod = kodaira_dimension(make_spec([2, (2, Q(1, 2))]))
    assert kod.value == -math.inf and kod.to_json() == "-inf"
    assert kod.counts == (0,) * 10


def test_enumeration_sees_constants_only_at_k0():
    assert enumerate_pluricanonical(make_spec([2, 2]), 0, 8) == 1
    assert enumerate_pluricanonical(make_spec([2, 2]), 3, 8) == 0


def test_injected_disagreement(monkeypatch):
    import hopflab.kodaira as kd
    monkeypatch.setattr(kd, "enumerate_pluricanonical", lambda spec, k, d: 7)
    with pytest.raises(TheoremViolation):
        kd.pluricanonical_dimension(make_spec([2]), 2, verify_degree=5)


def test_growth_degree():
    assert growth_degree([0] * 10) == -math.inf
    assert growth_degree([1] * 10) == 0
    assert growth_degree([k for k in range(1, 11)]) == 1


@pytest.mark.parametrize("raw, weights", [([2, 4, 8], (1, 2, 3)), ([4], (1,)),
                                          ([2, 2], (1, 1)), ([(2, Q(1, 2)), (4, 1)], (1, 2))])
def test_quasi_regular_examples(raw, weights):
    rep = detect_quasi_regular(make_spec(raw))
    assert rep.is_quasi_regular and rep.weights == weights


@pytest.mark.parametrize("raw", [[2, 3], [2, (2, 1)], [(2, 0), (2, Q(1, 2))]])
def test_not_quasi_regular(raw):
    assert not detect_quasi_regular(make_spec(raw)).is_quasi_regular


def test_quasi_regular_needs_exact():
    with pytest.raises(NotCertified):
        detect_quasi_regular(make_spec([2.0, 4.0]))


def test_leaf_space():
    spec = make_spec([2, 4, 8])
    summary = leaf_space_summary(detect_quasi_regular(spec), spec)
    assert summary["leaf_space"] == "P(1,2,3)"
    assert summary["consistent"] and summary["kodaira_X"] == "-inf"
    assert any("H^0(K_{M'}^k) = H^0(K_X^k)" in line for line in summary["justification"])
    with pytest.raises(NotQuasiRegular):
        leaf_space_summary(detect_quasi_regular(make_spec([2, 3])), make_spec([2, 3]))


def test_weighted_projective_helpers():
    assert weighted_projective_name([1, 1, 1]) == "P^2"
    assert weighted_plurigenus([1, 2, 3], 1) == 0


@given(exact_specs(max_n=3), st.integers(1, 6))
def test_enumeration_agrees_with_closed_form(spec, k):
    assert enumerate_pluricanonical(spec, k, 12) == pluricanonical_dimension(spec, k).count


@given(exact_specs(max_n=4), st.randoms(use_true_random=False))
def test_quasi_regularity_permutation_invariant(spec, r):
    perm = list(range(spec.n))
    r.shuffle(perm)
    a, b = detect_quasi_regular(spec), detect_quasi_regular(spec.permuted(perm))
    assert a.is_quasi_regular == b.is_quasi_regular
    if a.is_quasi_regular:
        assert b.weights == tuple(a.weights[i] for i in perm)


@given(exact_specs(max_n=3), st.integers(2, 3))
def test_quasi_regular_survives_powers(spec, p):
    if detect_quasi_regular(spec).is_quasi_regular:
        assert detect_quasi_regular(spec.power(p)).is_quasi_regular
