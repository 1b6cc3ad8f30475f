from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from domains import (eventually_constant, finite_element, flagged_lower_real, interval_descriptor,
                     iota_real, iota_seq, lower_rational, lower_sqrt, periodic, real_dyadic,
                     real_rational, real_sqrt)
from errors import (DescriptorMismatch, MissingDeltaBot, MissingRefineDecision,
                    OracleFailure, PreconditionViolated)
from finite_oracle import catalog, strongly_maximal
from ideal import principal
from models import ApartCert, HausdorffCert, Verdict
from order_core import AbstractBasis, BasisDescriptor
from separation import (LawsonSubbasic, apart_from_bottom, apart_from_hausdorff, cotransit,
                        hausdorff_separated, intrinsic_apart, lawson_intersection_member,
                        lawson_neighbourhood_member, not_not_below, replay, replay_apart,
                        sharp_from_strongmax, sharp_probe, smyth_maximal_probe, symmetric,
                        tight_consequence)

F = Fraction


def seq(*word):
    return iota_seq(periodic(word))


class TestIntrinsicApart:
    def test_sqrt2_and_three_halves(self, sqrt2):
        three_halves = iota_real(real_rational(F(3, 2)))
        cert = intrinsic_apart(sqrt2, three_halves, 64)
        assert isinstance(cert, ApartCert)
        assert replay(cert)
        assert cert.to_dict()['kind'] == 'apart'

    def test_same_element(self, sqrt2):
        assert intrinsic_apart(sqrt2, sqrt2, 30) is None

    def test_same_real_through_different_chains(self):
        thirds = iota_real(real_rational(F(1, 3)))
        dyadic = iota_real(real_dyadic(F(1, 3)))
        assert intrinsic_apart(thirds, dyadic, 25) is None

    def test_close_reals_are_separated(self, zero):
        tiny = iota_real(real_rational(F(1, 10 ** 6)))
        cert = intrinsic_apart(zero, tiny, 64)
        assert cert is not None and replay(cert)

    def test_cantor_witness(self):
        x = iota_seq(eventually_constant((0, 0, 1), 0))
        y = seq(0)
        cert = intrinsic_apart(x, y, 10)
        assert cert is not None and replay(cert)
        assert len(cert.inner.code) >= 3

    def test_fuel_matches_first_difference(self):
        x, y = seq(0), iota_seq(eventually_constant((0, 0, 0), 1))
        assert intrinsic_apart(x, y, 4) is None
        cert = intrinsic_apart(x, y, 5)
        assert cert is not None and cert.inner.replay_fuel == 5

    @given(st.lists(st.integers(0, 1), min_size=1, max_size=5),
           st.lists(st.integers(0, 1), min_size=1, max_size=5))
    def test_witness_code_tells_sequences_apart(self, p, q):
        x, y = seq(*p), seq(*q)
        cert = intrinsic_apart(x, y, 40)
        if cert is None:
            assert all(x.chain(n) == y.chain(n) for n in range(40))
            return
        code = cert.inner.refutation.code
        assert cert.inner.left.contains(code) and not cert.inner.right.contains(code)
        assert x.chain(len(code)) != y.chain(len(code))

    @given(st.fractions(max_denominator=64), st.fractions(max_denominator=64))
    def test_witness_code_tells_rationals_apart(self, r, s):
        x, y = iota_real(real_rational(r)), iota_real(real_rational(s))
        cert = intrinsic_apart(x, y, 40)
        if r == s:
            assert cert is None
            return
        assert cert is not None
        code = cert.inner.refutation.code
        assert cert.inner.left.member(code, 60).is_yes
        assert not cert.inner.right.member(code, 60).is_yes

    def test_symmetric_replays(self, zero, one):
        cert = intrinsic_apart(zero, one, 20)
        flipped = symmetric(cert)
        assert flipped.left is one and flipped.right is zero
        assert replay_apart(flipped)

    def test_mismatched_bases(self, zero, alternating):
        with pytest.raises(DescriptorMismatch):
            intrinsic_apart(zero, alternating, 3)

    def test_not_not_below_is_one_sided(self):
        bottom = principal(interval_descriptor(), (F(-10), F(10)))
        zero = iota_real(real_rational(F(0)))
        assert not_not_below(zero, bottom, 10) is not None
        assert not_not_below(bottom, zero, 10) is None


class TestApartFromBottom:
    def test_cantor(self):
        cert = apart_from_bottom(seq(1), 3)
        assert cert is not None and replay(cert)
        assert cert.inner.code == (1,)

    def test_powerset_singleton(self):
        from domains import finite_element
        from finite_oracle import powerset_poset
        cert = apart_from_bottom(finite_element(powerset_poset(1), "{0}"), 3)
        assert cert is not None and cert.inner.code == "{0}"

    def test_bottom_itself(self):
        from domains import cantor_descriptor
        bottom = principal(cantor_descriptor(), ())
        assert apart_from_bottom(bottom, 20, bottom=bottom) is None

    def test_lower_reals_have_no_least_code(self):
        with pytest.raises(MissingDeltaBot):
            apart_from_bottom(lower_rational(F(0)), 1)
        with pytest.raises(MissingDeltaBot):
            apart_from_bottom(lower_sqrt(2), 0)


class TestCotransit:
    def test_reals(self, zero, one):
        half = iota_real(real_rational(F(1, 2)))
        cert = intrinsic_apart(zero, one, 20)
        outcome = cotransit(cert, half, 20)
        assert outcome.branch in ('x', 'y')
        assert half in (outcome.cert.left, outcome.cert.right)
        assert replay(outcome.cert)

    @pytest.mark.parametrize("flip", [False, True])
    def test_third_point_equal_to_one_side(self, zero, one, flip):
        cert = intrinsic_apart(zero, one, 20)
        if flip:
            cert = symmetric(cert)
        outcome = cotransit(cert, cert.left, 20)
        assert outcome.branch == 'y'
        assert replay(outcome.cert)

    def test_cantor(self):
        x, y, z = seq(0), seq(1), iota_seq(eventually_constant((0, 1), 0))
        outcome = cotransit(intrinsic_apart(x, y, 5), z, 10)
        assert replay(outcome.cert)
        assert len(outcome.cert.inner.code) <= 2

    def test_needs_sharp_element(self, zero, one):
        cert = intrinsic_apart(zero, one, 20)
        opaque = principal(interval_descriptor(), (F(-1), F(1)))
        with pytest.raises(PreconditionViolated):
            cotransit(cert, opaque, 5)


class TestTightness:
    def test_same_real_two_chains(self):
        x = iota_real(real_rational(F(1)))
        y = iota_real(real_dyadic(F(1)))
        report = tight_consequence(x, y, 12, expect_equal=True)
        assert report.passed, report.failures

    def test_sqrt2_in_two_bases(self):
        x = iota_real(real_sqrt(2, base=3))
        report = tight_consequence(x, iota_real(real_sqrt(2)), 10, expect_equal=True)
        assert report.passed, report.failures

    def test_distinct_reals_produce_certificates(self, zero, one):
        report = tight_consequence(zero, one, 10)
        assert report.passed
        assert report.details['certificates']


class TestHausdorff:
    def test_cantor_prefixes_incomparable(self):
        cert = hausdorff_separated(seq(0), iota_seq(eventually_constant((0, 1), 1)), 5)
        assert isinstance(cert, HausdorffCert)
        assert replay(cert)

    def test_reals(self, zero, one):
        cert = hausdorff_separated(zero, one, 10)
        assert cert is not None and replay(cert)
        assert replay(apart_from_hausdorff(cert))

    def test_same_element(self, sqrt2):
        assert hausdorff_separated(sqrt2, sqrt2, 10) is None

    def test_lower_reals_always_refinable(self):
        assert hausdorff_separated(lower_rational(F(0)), lower_rational(F(5)), 10) is None

    def test_needs_refinement_decision(self):
        basis = AbstractBasis(name="naturals", prec=lambda a, b: a <= b,
                              is_code=lambda c: isinstance(c, int), reflexive=True)
        d = BasisDescriptor(basis=basis, enumerate=lambda n: n, serialize=str)
        with pytest.raises(MissingRefineDecision):
            hausdorff_separated(principal(d, 1), principal(d, 2), 3)


class TestSharp:
    def test_prefix_oracle_left(self, alternating):
        answer = alternating.sharp_oracle(alternating, (0,), (0, 1))
        assert answer.side == 'left' and replay(answer)

    def test_prefix_oracle_right(self, alternating):
        answer = alternating.sharp_oracle(alternating, (1,), (1, 1))
        assert answer.side == 'right' and replay(answer)
        assert answer.refutation.kind == 'disjoint'

    def test_real_oracle(self):
        half = iota_real(real_rational(F(1, 2)))
        answer = half.sharp_oracle(half, (F(0), F(1)), (F(1, 4), F(3, 4)))
        assert answer.side == 'left' and replay(answer)

    def test_query_must_be_related(self, alternating):
        with pytest.raises(PreconditionViolated):
            alternating.sharp_oracle(alternating, (0,), (1,))

    def test_lower_real_left_and_right(self):
        half = lower_rational(F(1, 2))
        assert half.sharp_oracle(half, F(0), F(1)).side == 'left'
        right = half.sharp_oracle(half, F(1, 2), F(1))
        assert right.side == 'right' and right.refutation.code == F(1, 2)

    def test_fuel_bounded_sharpness_on_non_located_real(self):
        flagged = flagged_lower_real()
        assert sharp_probe(flagged, F(-1), F(-1, 2), 10).is_yes
        assert sharp_probe(flagged, F(1, 2), F(2), 10).is_no
        assert sharp_probe(flagged, F(0), F(1, 2), 30).verdict is Verdict.UNKNOWN


class TestStrongMaximality:
    def test_smyth_below(self, alternating):
        witness = smyth_maximal_probe(alternating, (0,), (0, 1), 10)
        assert witness.branch == 'below'
        assert witness.approximant.code == (0, 1)
        assert replay(witness)

    def test_smyth_separated(self, alternating):
        witness = smyth_maximal_probe(alternating, (1,), (1, 1), 10)
        assert witness.branch == 'separated'
        assert replay(witness)

    def test_sharp_from_strongmax(self, alternating):
        oracle = sharp_from_strongmax(alternating.strongmax_oracle)
        assert oracle(alternating, (0,), (0, 1)).side == 'left'
        answer = oracle(alternating, (1,), (1, 1))
        assert answer.side == 'right' and answer.refutation.kind == 'disjoint'
        assert replay(answer)

    def test_strongmax_answer_on_real(self):
        half = iota_real(real_rational(F(1, 2)))
        answer = half.strongmax_oracle(half, (F(0), F(1)), (F(1, 4), F(3, 4)))
        assert answer.side == 'left' and replay(answer)
        witness = smyth_maximal_probe(half, (F(0), F(1)), (F(1, 4), F(3, 4)), 20)
        assert replay(witness)

    def test_strongmax_separation_on_real(self, one):
        answer = one.strongmax_oracle(one, (F(2), F(4)), (F(5, 2), F(3)))
        assert answer.side == 'right' and replay(answer)

    def test_no_oracle(self):
        with pytest.raises(OracleFailure):
            smyth_maximal_probe(principal(interval_descriptor(), (F(0), F(1))),
                                (F(-1), F(2)), (F(-1, 2), F(3, 2)), 5)


class TestSharpFromStrongMax:
    @given(st.lists(st.integers(0, 1), min_size=1, max_size=4),
           st.lists(st.integers(0, 1), max_size=100), st.integers(0, 100))
    def test_sequences(self, word, v, cut):
        x = iota_seq(periodic(tuple(word)))
        v = tuple(v)
        u = v[:cut]
        answer = sharp_from_strongmax(x.strongmax_oracle)(x, u, v)
        assert replay(answer)
        assert (answer.side == 'left') == x.contains(u)

    @given(st.integers(-64, 64), st.integers(-64, 64), st.integers(1, 32), st.integers(1, 100))
    def test_rationals(self, num, low, width, depth):
        r = F(num, 16)
        a = (F(low, 16), F(low, 16) + F(width, 8))
        shrink = (a[1] - a[0]) / (2 + depth)
        b = (a[0] + shrink, a[1] - shrink)
        x = iota_real(real_rational(r))
        answer = sharp_from_strongmax(x.strongmax_oracle)(x, a, b)
        assert replay(answer)
        if answer.side == 'left':
            assert a[0] < r < a[1]
        else:
            assert not b[0] <= r <= b[1]

    @pytest.mark.parametrize("name", sorted(catalog()))
    def test_finite_maximal_points(self, name):
        poset = catalog()[name]
        for label in sorted(strongly_maximal(poset)):
            x = finite_element(poset, label)
            oracle = sharp_from_strongmax(x.strongmax_oracle)
            for u in poset.labels:
                for v in poset.labels:
                    if poset.le(u, v):
                        answer = oracle(x, u, v)
                        assert replay(answer)
                        assert (answer.side == 'left') == poset.le(u, label)


class TestLawson:
    def test_scott_subbasic(self, alternating):
        assert lawson_neighbourhood_member(alternating, LawsonSubbasic.scott((0,)), 5).is_yes

    def test_co_subbasic(self, alternating):
        answer = lawson_neighbourhood_member(alternating, LawsonSubbasic.co(seq(1)), 5)
        assert answer.is_yes and replay(answer.witness)

    def test_depth_two(self, alternating):
        subs = [LawsonSubbasic.scott((0, 1)), LawsonSubbasic.co(seq(1))]
        assert lawson_intersection_member(alternating, subs, 5).is_yes
        subs = [LawsonSubbasic.scott((1,)), LawsonSubbasic.co(seq(1))]
        assert lawson_intersection_member(alternating, subs, 5).is_no
