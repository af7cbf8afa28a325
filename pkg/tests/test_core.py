"""Group arithmetic in normal form: construction, products, orders, tables.

Expected values were computed independently (by hand from the defining
relations, or via the brute-force enumerators in this module, which are
themselves checked against hand calculations here) and then frozen.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metasum.core import (
    CayleyTable,
    MetacyclicParams,
    bruteforce_center,
    bruteforce_derived,
    cayley_table,
    commutator,
    commutator_span,
    conjugate,
    conjugate_subgroup,
    cyclic_subgroup,
    default_cap,
    element_log,
    element_order,
    enumerate_elements,
    generate_subgroup,
    identity,
    inverse,
    mul,
    normalizer,
    power,
    trivial_subgroup,
    validate,
)
from metasum.errors import CapExceeded, ConstraintViolation, NotAPower


class TestValidate:
    def test_accepts_symmetric_group_parameters(self, s3):
        assert (s3.m, s3.s, s3.t, s3.r) == (3, 2, 0, 2)
        assert s3.order == 6

    def test_canonicalizes_t_and_r_modulo_m(self):
        # t = 9 ≡ 3 (mod 6) and r = 11 ≡ 5 (mod 6) present the same group.
        assert validate(6, 2, 9, 11) == validate(6, 2, 3, 5)

    def test_r_canonical_range_is_one_to_m(self):
        # r ≡ 0 (mod m) canonicalizes to m, not 0.
        p = validate(5, 4, 0, 1)
        assert p.r == 1
        assert 1 <= validate(2, 1, 0, 1).r <= 2

    def test_rejects_nonpositive_m_or_s(self):
        with pytest.raises(ConstraintViolation):
            validate(0, 2, 0, 1)
        with pytest.raises(ConstraintViolation):
            validate(3, 0, 0, 1)
        with pytest.raises(ConstraintViolation):
            validate(-3, 2, 0, 2)

    def test_rejects_broken_twist_congruence(self):
        # r = 3: 3^2 = 9 ≢ 1 (mod 8).
        with pytest.raises(ConstraintViolation):
            validate(8, 2, 2, 3)

    def test_rejects_broken_power_compatibility(self):
        # m | t(r-1) fails: 8 ∤ 1·(5-1) = 4.
        with pytest.raises(ConstraintViolation):
            validate(8, 2, 1, 5)

    def test_trivial_group(self):
        p = validate(1, 1, 0, 1)
        assert p.order == 1
        assert enumerate_elements(p) == [(0, 0)]


class TestArithmetic:
    def test_symmetric_group_reflection_squares_to_identity(self, s3):
        # (ab)^2 = 1 in S3; fails under the opposite twist convention.
        assert mul(s3, (1, 1), (1, 1)) == (0, 0)

    def test_quaternion_b_squared_is_a_squared(self, q8):
        assert mul(q8, (0, 1), (0, 1)) == (2, 0)

    def test_quaternion_product_ba(self, q8):
        # b·a = a^3 b since moving a across b twists by r^{-1} = 3.
        assert mul(q8, (0, 1), (1, 0)) == (3, 1)

    def test_identity_element(self, s3, q8):
        assert identity(s3) == (0, 0)
        for p in (s3, q8):
            e = identity(p)
            for x in enumerate_elements(p):
                assert mul(p, e, x) == x
                assert mul(p, x, e) == x

    def test_associativity_exhaustive_small(self, s3, q8):
        for p in (s3, q8):
            els = enumerate_elements(p)
            for x in els:
                for y in els:
                    xy = mul(p, x, y)
                    for z in els:
                        assert mul(p, xy, z) == mul(p, x, mul(p, y, z))

    def test_inverse_exhaustive_small(self, q12):
        e = identity(q12)
        for x in enumerate_elements(q12):
            assert mul(q12, x, inverse(q12, x)) == e
            assert mul(q12, inverse(q12, x), x) == e

    def test_inverse_frozen_value(self, q8):
        assert inverse(q8, (1, 1)) == (3, 1)

    def test_power_matches_repeated_multiplication(self, q12):
        for x in enumerate_elements(q12):
            acc = identity(q12)
            for n in range(0, q12.order + 2):
                assert power(q12, x, n) == acc
                acc = mul(q12, acc, x)
            assert power(q12, x, -1) == inverse(q12, x)
            assert power(q12, x, -5) == inverse(q12, power(q12, x, 5))

    def test_element_orders_frozen(self, s3, q8):
        assert {x: element_order(s3, x) for x in enumerate_elements(s3)} == {
            (0, 0): 1,
            (0, 1): 2,
            (1, 0): 3,
            (1, 1): 2,
            (2, 0): 3,
            (2, 1): 2,
        }
        orders = sorted(element_order(q8, x) for x in enumerate_elements(q8))
        assert orders == [1, 2, 4, 4, 4, 4, 4, 4]

    def test_conjugation_twists_rotation(self, s3):
        # a^b = a^r = a^2.
        assert conjugate(s3, (1, 0), (0, 1)) == (2, 0)

    def test_commutator_of_defining_generators(self, s3, q8):
        # [a, b] = a^{r-1}.
        assert commutator(s3, (1, 0), (0, 1)) == ((s3.r - 1) % s3.m, 0)
        assert commutator(q8, (1, 0), (0, 1)) == ((q8.r - 1) % q8.m, 0)

    def test_enumeration_order_and_count(self, s3):
        els = enumerate_elements(s3)
        assert els == [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]
        assert len(set(els)) == s3.order


class TestElementLog:
    def test_power_of_rotation(self, q8):
        assert element_log(q8, (1, 0), (3, 0)) == 3

    def test_identity_is_zeroth_power(self, q8):
        assert element_log(q8, (1, 0), (0, 0)) == 0

    def test_not_a_power_raises(self, q8):
        with pytest.raises(NotAPower):
            element_log(q8, (1, 0), (0, 1))


class TestCaps:
    def test_default_cap_env_override(self, monkeypatch):
        monkeypatch.setenv("METASUM_CAP", "123")
        assert default_cap() == 123

    def test_default_cap_rejects_garbage(self, monkeypatch):
        monkeypatch.setenv("METASUM_CAP", "not-a-number")
        with pytest.raises(ConstraintViolation):
            default_cap()
        monkeypatch.setenv("METASUM_CAP", "0")
        with pytest.raises(ConstraintViolation):
            default_cap()

    def test_enumerate_respects_cap(self, q8):
        with pytest.raises(CapExceeded):
            enumerate_elements(q8, cap=7)

    def test_cayley_table_respects_cap(self, q8):
        with pytest.raises(CapExceeded):
            cayley_table(q8, cap=3)


class TestSubgroups:
    def test_cyclic_subgroup_of_rotation(self, s3):
        sub = cyclic_subgroup(s3, (1, 0))
        assert sorted(sub.elements) == [(0, 0), (1, 0), (2, 0)]
        assert sub.order == 3
        assert sub.generator == (1, 0)
        assert (2, 0) in sub
        assert (0, 1) not in sub

    def test_trivial_subgroup(self, s3):
        assert trivial_subgroup(s3).order == 1
        assert trivial_subgroup(s3).is_trivial

    def test_generate_full_group(self, s3):
        assert generate_subgroup(s3, [(1, 0), (0, 1)]).order == 6

    def test_conjugate_subgroup(self, s3):
        sub_b = cyclic_subgroup(s3, (0, 1))
        moved = conjugate_subgroup(s3, sub_b, (1, 0))
        assert sorted(moved.elements) == [(0, 0), (1, 1)]

    def test_subgroup_ordering_by_inclusion(self, s3):
        small = cyclic_subgroup(s3, (1, 0))
        big = generate_subgroup(s3, [(1, 0), (0, 1)])
        assert small <= big
        assert not (big <= small)


class TestBruteforceStructure:
    def test_center_frozen(self, s3, q8):
        assert sorted(bruteforce_center(s3).elements) == [(0, 0)]
        assert sorted(bruteforce_center(q8).elements) == [(0, 0), (2, 0)]

    def test_derived_frozen(self, s3, q8):
        assert sorted(bruteforce_derived(s3).elements) == [(0, 0), (1, 0), (2, 0)]
        assert sorted(bruteforce_derived(q8).elements) == [(0, 0), (2, 0)]

    def test_normalizer_frozen(self, s3):
        rot = cyclic_subgroup(s3, (1, 0))
        refl = cyclic_subgroup(s3, (0, 1))
        assert normalizer(s3, rot).order == 6  # normal subgroup
        assert sorted(normalizer(s3, refl).elements) == [(0, 0), (0, 1)]

    def test_commutator_span_frozen(self, s3):
        rot = cyclic_subgroup(s3, (1, 0))
        refl = cyclic_subgroup(s3, (0, 1))
        span = commutator_span(s3, rot, refl)
        assert sorted(span.elements) == [(0, 0), (1, 0), (2, 0)]


class TestCayleyTable:
    def test_table_matches_elementwise_product(self, q12):
        tab = cayley_table(q12)
        els = enumerate_elements(q12)
        for i, x in enumerate(els):
            for j, y in enumerate(els):
                assert tab.el(tab.table[i, j]) == mul(q12, x, y)

    def test_orders_column_matches_element_order(self, q12):
        tab = cayley_table(q12)
        for i in range(tab.n):
            assert tab.orders[i] == element_order(q12, tab.el(i))

    def test_center_and_derived_indices(self, q8):
        tab = cayley_table(q8)
        center = {tab.el(i) for i in tab.center_idx}
        derived = {tab.el(i) for i in tab.derived_idx}
        assert center == {(0, 0), (2, 0)}
        assert derived == {(0, 0), (2, 0)}

    def test_conjugation_table(self, s3):
        tab = cayley_table(s3)
        i_a, i_b = tab.idx((1, 0)), tab.idx((0, 1))
        assert tab.el(tab.conj[i_b, i_a]) == conjugate(s3, (1, 0), (0, 1))

    def test_identity_index_is_zero(self, s3):
        tab = cayley_table(s3)
        assert tab.el(0) == (0, 0)


@st.composite
def params_and_elements(draw):
    m = draw(st.integers(min_value=1, max_value=12))
    s = draw(st.integers(min_value=1, max_value=6))
    r = draw(
        st.sampled_from([r for r in range(1, m + 1) if pow(r, s, m) == 1 % m])
    )
    step = m // np.gcd(m, r - 1) if m > 1 else 1
    t = draw(st.sampled_from(range(0, m, step))) if m > 1 else 0
    p = validate(m, s, t, r)
    x = draw(st.tuples(st.integers(0, m - 1), st.integers(0, s - 1)))
    y = draw(st.tuples(st.integers(0, m - 1), st.integers(0, s - 1)))
    return p, x, y


class TestProperties:
    @settings(max_examples=120, deadline=None)
    @given(params_and_elements())
    def test_group_axioms_hold(self, data):
        p, x, y = data
        e = identity(p)
        assert mul(p, x, inverse(p, x)) == e
        assert inverse(p, mul(p, x, y)) == mul(p, inverse(p, y), inverse(p, x))
        assert mul(p, mul(p, x, y), inverse(p, y)) == x

    @settings(max_examples=120, deadline=None)
    @given(params_and_elements(), st.integers(-20, 40))
    def test_power_is_homomorphic_in_exponent(self, data, n):
        p, x, _ = data
        assert mul(p, power(p, x, n), x) == power(p, x, n + 1)

    @settings(max_examples=120, deadline=None)
    @given(params_and_elements())
    def test_element_order_divides_group_order(self, data):
        p, x, _ = data
        assert p.order % element_order(p, x) == 0

    @settings(max_examples=80, deadline=None)
    @given(params_and_elements())
    def test_conjugation_is_an_automorphism(self, data):
        p, x, y = data
        h = (1 % p.m, p.s - 1)
        lhs = conjugate(p, mul(p, x, y), h)
        rhs = mul(p, conjugate(p, x, h), conjugate(p, y, h))
        assert lhs == rhs
