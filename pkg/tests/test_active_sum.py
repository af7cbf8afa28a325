"""Active-sum presentations: relators, enumeration, abelianization, verdicts.

One presentation generator per indexed family member; relators are the
member's cyclic order plus, for every ordered pair, the conjugation action
of one member's generator on the other's.  Dump strings and orders below
were frozen after hand-checking the small cases and cross-checking the
interesting order (32) with sympy's independent enumerator.
"""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metasum.active_sum import (
    DEFAULT_COSET_FACTOR,
    abelianized_order,
    build_active_sum_presentation,
    discrete_log,
    todd_coxeter,
    verdict,
)
from metasum.core import validate
from metasum.errors import NotAPower
from metasum.families import (
    build_generator_family,
    is_independent,
    transversal,
)
from metasum.hall import build_hall_family


class TestDiscreteLog:
    def test_power_of_rotation(self, q8):
        assert discrete_log(q8, (3, 0), (1, 0)) == 3

    def test_identity(self, q8):
        assert discrete_log(q8, (0, 0), (1, 0)) == 0

    def test_outside_cyclic_span(self, q8):
        with pytest.raises(NotAPower):
            discrete_log(q8, (0, 1), (1, 0))


class TestPresentationShape:
    def test_single_member_dump(self):
        p = validate(5, 1, 0, 1)
        pres = build_active_sum_presentation(p, build_generator_family(p))
        assert pres.dump() == "gen x0 order 5\nx0 x0 x0 x0 x0"

    def test_quaternion_dump_frozen(self, q8):
        pres = build_active_sum_presentation(q8, build_generator_family(q8))
        assert pres.dump() == (
            "gen x0 order 4\n"
            "gen x1 order 4\n"
            "x0 x0 x0 x0\n"
            "x1 x1 x1 x1\n"
            "X0 x1 x0 X1 X1 X1\n"
            "X1 x0 x1 X0 X0 X0"
        )

    def test_symmetric_group_relator_count(self, s3):
        pres = build_active_sum_presentation(s3, build_generator_family(s3))
        # 4 members: 4 power relators + 4*3 ordered conjugation pairs
        assert pres.ngens == 4
        assert len(pres.relators) == 16

    def test_symmetric_group_generator_metadata(self, s3):
        pres = build_active_sum_presentation(s3, build_generator_family(s3))
        assert [(g.symbol, g.order, g.element) for g in pres.generators] == [
            ("x0", 2, (0, 1)),
            ("x1", 3, (1, 0)),
            ("x2", 2, (1, 1)),
            ("x3", 2, (2, 1)),
        ]

    def test_conjugation_relator_example(self, s3):
        # conjugating the rotation generator by the reflection inverts it:
        # X0 x1 x0 = x1^2, recorded as (-1, 2, 1, -2, -2).
        pres = build_active_sum_presentation(s3, build_generator_family(s3))
        assert (-1, 2, 1, -2, -2) in pres.relators

    def test_exhaustive_mode_adds_relators_same_group(self, s3):
        fam = build_generator_family(s3)
        lean = build_active_sum_presentation(s3, fam)
        full = build_active_sum_presentation(s3, fam, exhaustive=True)
        assert len(full.relators) > len(lean.relators)
        assert todd_coxeter(lean, max_cosets=100) == todd_coxeter(full, max_cosets=100) == 6

    def test_exhaustive_mode_matches_on_small_groups(self, pool_48):
        for p in pool_48[::31]:
            if p.order > 24:
                continue
            fam = build_generator_family(p)
            lean = build_active_sum_presentation(p, fam)
            full = build_active_sum_presentation(p, fam, exhaustive=True)
            limit = DEFAULT_COSET_FACTOR * p.order * 4
            assert todd_coxeter(lean, max_cosets=limit) == todd_coxeter(full, max_cosets=limit)


class TestEnumeratedOrders:
    def test_classical_groups(self, s3, q8, q12):
        for p, expected in ((s3, 6), (q8, 8)):
            pres = build_active_sum_presentation(p, build_generator_family(p))
            assert todd_coxeter(pres, max_cosets=10 * p.order) == expected
        hall = build_hall_family(q12)
        pres = build_active_sum_presentation(q12, hall.family)
        assert todd_coxeter(pres, max_cosets=120) == 12

    def test_negative_control_doubles(self, negative_control):
        pres = build_active_sum_presentation(
            negative_control, build_generator_family(negative_control)
        )
        assert todd_coxeter(pres, max_cosets=1000) == 32

    def test_negative_control_against_sympy(self, negative_control):
        from sympy.combinatorics.fp_groups import FpGroup
        from sympy.combinatorics.free_groups import free_group

        pres = build_active_sum_presentation(
            negative_control, build_generator_family(negative_control)
        )
        built = free_group(" ".join(g.symbol for g in pres.generators))
        fg, gens = built[0], built[1:]
        words = []
        for rel in pres.relators:
            w = fg.identity
            for signed in rel:
                g = gens[abs(signed) - 1]
                w = w * (g if signed > 0 else g**-1)
            words.append(w)
        assert FpGroup(fg, words).order() == 32

    def test_collision_gives_direct_square(self):
        p = validate(5, 1, 2, 1)
        pres = build_active_sum_presentation(p, build_generator_family(p))
        assert todd_coxeter(pres, max_cosets=500) == 25


class TestAbelianization:
    def test_quaternion(self, q8):
        pres = build_active_sum_presentation(q8, build_generator_family(q8))
        structure = abelianized_order(pres)
        assert structure.invariant_factors == (2, 2)
        assert structure.order == 4

    def test_negative_control(self, negative_control):
        pres = build_active_sum_presentation(
            negative_control, build_generator_family(negative_control)
        )
        assert abelianized_order(pres).invariant_factors == (4, 4)

    def test_matches_local_order_product_for_independent_families(self, pool_48):
        for p in pool_48[::21]:
            fam = build_generator_family(p)
            rep = is_independent(p, fam)
            if not rep.independent:
                continue
            pres = build_active_sum_presentation(p, fam)
            assert abelianized_order(pres).order == math.prod(rep.local_orders)

    def test_empty_presentation_is_trivial(self):
        p = validate(1, 1, 0, 1)
        pres = build_active_sum_presentation(p, build_generator_family(p))
        assert pres.ngens == 0
        assert abelianized_order(pres).order == 1


class TestVerdict:
    def test_symmetric_group_all_green(self, s3):
        v = verdict(s3, build_generator_family(s3))
        assert v.generating and v.regular and v.independent and v.ganea_surjective
        assert v.group_order == 6
        assert v.active_sum_order == 6
        assert v.abelianized_order_s == 2 == v.abelianized_order_g
        assert v.isomorphic

    def test_negative_control_fails_cleanly(self, negative_control):
        v = verdict(negative_control, build_generator_family(negative_control))
        assert v.regular and not v.independent
        assert v.ganea_surjective
        assert v.group_order == 16
        assert v.active_sum_order == 32
        assert v.abelianized_order_s == 16
        assert v.abelianized_order_g == 8
        assert not v.isomorphic

    def test_negative_control_hall_family_rescues(self, negative_control):
        built = build_hall_family(negative_control)
        v = verdict(negative_control, built.family)
        assert v.independent and v.isomorphic
        assert v.active_sum_order == 16

    def test_collision_verdict(self):
        p = validate(5, 1, 2, 1)
        v = verdict(p, build_generator_family(p))
        assert not v.independent
        assert v.active_sum_order == 25
        assert v.abelianized_order_s == 25
        assert not v.isomorphic

    def test_partial_verdict_under_tiny_limit(self, negative_control):
        v = verdict(negative_control, build_generator_family(negative_control), max_cosets=5)
        assert v.active_sum_order is None
        assert v.abelianized_order_s is not None  # abelianization needs no enumeration
        assert not v.isomorphic

    def test_default_coset_budget_is_ten_times_group_order(self):
        assert DEFAULT_COSET_FACTOR == 10

    @settings(max_examples=30, deadline=None)
    @given(data=st.data())
    def test_full_criteria_imply_isomorphic_sampled(self, data, pool_48):
        p = data.draw(st.sampled_from(pool_48))
        v = verdict(p, build_generator_family(p))
        if v.generating and v.regular and v.independent and v.ganea_surjective:
            assert v.isomorphic
            assert v.active_sum_order == p.order
