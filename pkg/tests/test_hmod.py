import re
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from _oracle import hw_word, sym
from conftest import gaussian
from virmod.hmod import (
    BModuleSpec,
    InducedElement,
    annihilated_by_b,
    bracket_check_h,
    check_exp_shift_identity,
    exp_derivation,
    h_action,
    l_minus_power,
    order,
)
from virmod.scalar import ONE, ZERO, GaussianRational


def basis(k, s=0, dim=1, c=ONE):
    return InducedElement.basis(k, s, dim, c)


def as_dict(x: InducedElement) -> dict:
    return {k: sym(c) for k, _, c in x.items()}


@pytest.mark.parametrize("beta", [GaussianRational(1), GaussianRational(-2), GaussianRational(Fraction(1, 3), 1), ZERO])
def test_h_action_matches_word_rewriting(beta):
    spec = BModuleSpec.highest_weight(beta)
    b = sym(beta)
    for i in range(-1, 6):
        for k in range(6):
            expected = {e: c for e, c in hw_word(b, i, k)}
            assert as_dict(h_action(spec, i, basis(k))) == expected, (i, k)


def test_h_action_examples():
    beta = GaussianRational(5)
    spec = BModuleSpec.highest_weight(beta)
    assert h_action(spec, -1, basis(2)) == basis(3)
    assert h_action(spec, 0, basis(2)) == basis(2, c=beta - 2)
    assert h_action(spec, 1, basis(1)) == basis(0, c=beta * -2)
    assert h_action(spec, 2, basis(1)).is_zero()
    with pytest.raises(ValueError):
        h_action(spec, -2, basis(0))


@pytest.mark.parametrize("i", range(-1, 7))
@pytest.mark.parametrize("j", range(-1, 7))
def test_bracket_on_two_dim_module(two_dim_spec, i, j):
    x = InducedElement({0: (1, 2), 2: (GaussianRational(0, 1), -1), 5: (3, 0)}, 2)
    assert bracket_check_h(two_dim_spec, i, j, x)


@given(gaussian(), st.integers(-1, 6), st.integers(-1, 6), st.lists(gaussian(), min_size=1, max_size=6))
def test_bracket_on_highest_weight(beta, i, j, coeffs):
    spec = BModuleSpec.highest_weight(beta)
    x = InducedElement({k: (c,) for k, c in enumerate(coeffs)})
    assert bracket_check_h(spec, i, j, x)


def test_order_examples(hw1):
    assert order(hw1, basis(0)) == 0
    assert order(hw1, basis(3)) == 3
    with pytest.raises(ValueError):
        order(hw1, InducedElement.zero())


@pytest.mark.parametrize("k", range(7))
def test_order_additivity(two_dim_spec, k):
    # Only the order-1 part (e_1, where L_1 acts) adds to the exponent.
    assert order(two_dim_spec, basis(k, 1, 2)) == k + 1


def test_trivial_vector_has_order_zero():
    spec = BModuleSpec.trivial()
    v = basis(0)
    assert order(spec, v) == 0
    assert annihilated_by_b(spec, v)
    assert not annihilated_by_b(BModuleSpec.highest_weight(1), v)


def test_exp_derivation_examples():
    beta = GaussianRational(3)
    spec = BModuleSpec.highest_weight(beta)
    v = basis(0)
    assert exp_derivation(spec, 0, v) == basis(1)
    for m in range(-3, 4):
        assert exp_derivation(spec, m, v) == basis(1) + basis(0, c=beta * m)
    assert exp_derivation(BModuleSpec.trivial(), 2, v) == basis(1)


def test_exp_derivation_kills_trivial_noninduced_vector():
    spec = BModuleSpec.trivial(induced=False)
    assert exp_derivation(spec, 2, basis(0)).is_zero()


@pytest.mark.parametrize("m", range(-3, 4))
def test_exp_truncation_invariance(two_dim_spec, m):
    x = InducedElement({0: (1, 1), 3: (0, GaussianRational(Fraction(1, 2)))}, 2)
    assert exp_derivation(two_dim_spec, m, x) == exp_derivation(two_dim_spec, m, x, extra_terms=3)


@pytest.mark.parametrize("k", range(-3, 4))
@pytest.mark.parametrize("i", range(5))
def test_exp_shift_identity(two_dim_spec, k, i):
    x = InducedElement({0: (1, -1), 1: (0, 2)}, 2)
    assert check_exp_shift_identity(two_dim_spec, k, i, x)


def test_exp_shift_identity_small_cases(hw1):
    v = basis(0)
    assert check_exp_shift_identity(hw1, 1, 2, v)
    assert check_exp_shift_identity(hw1, 0, 3, v)
    assert l_minus_power(hw1, 3, v) == basis(3)


def test_spec_validation_rejects_bad_brackets():
    one, zero = ONE, ZERO
    with pytest.raises(ValueError, match="bracket"):
        BModuleSpec.from_matrices(2, 1, [[[one, zero], [zero, one]], [[zero, one], [zero, zero]]])
    with pytest.raises(ValueError):
        BModuleSpec.from_matrices(1, 1, [[[one]], [[zero]]])
    with pytest.raises(ValueError):
        BModuleSpec.from_matrices(2, 0, [[[one]]])
    with pytest.raises(ValueError):
        BModuleSpec(1, 0, (((one,),),), induced=False)


def test_config_round_trip(two_dim_spec, hw1):
    for spec in (two_dim_spec, hw1, BModuleSpec.trivial(3), BModuleSpec.trivial(induced=False)):
        assert BModuleSpec.from_config(spec.to_config()) == spec


@pytest.mark.parametrize(
    "obj, field",
    [
        ({"kind": "highest_weight"}, "vb.beta"),
        ({"kind": "highest_weight", "beta": "1//2"}, "vb.beta"),
        ({"kind": "nope"}, "vb.kind"),
        ({"kind": "trivial", "dim": 0}, "vb.dim"),
        ({"kind": "matrices", "dim": 1, "order": 0, "L": [[["x"]]]}, "vb.L[0]"),
    ],
)
def test_config_errors_name_the_field(obj, field):
    with pytest.raises(ValueError, match="^" + re.escape(field)):
        BModuleSpec.from_config(obj)


def test_twist_and_top_matrix(hw1, two_dim_spec):
    assert hw1.twisted(-2).beta == -1
    assert hw1.top_invertible()
    assert not two_dim_spec.top_invertible()
    assert not BModuleSpec.highest_weight(0).top_invertible()


def test_l1_matches_closed_form():
    beta = sp.Rational(7, 2)
    spec = BModuleSpec.highest_weight(GaussianRational(Fraction(7, 2)))
    for k in range(6):
        # L_1 L_-1^k v = (k(k-1) - 2k beta) L_-1^(k-1) v
        got = as_dict(h_action(spec, 1, basis(k)))
        expected = {k - 1: k * (k - 1) - 2 * k * beta} if k else {}
        assert got == {e: c for e, c in expected.items() if c != 0}
