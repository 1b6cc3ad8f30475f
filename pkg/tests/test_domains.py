from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from domains import (Location, baire_descriptor, cantor_descriptor, decidable_locator,
                     eventually_constant, finite_element, flagged_lower_real,
                     format_interval, iota_real, iota_seq, locate, located_from_sharp,
                     lower_rational, lower_real_sharp_oracle, lower_sqrt, parse_interval,
                     periodic, powerset_descriptor, powerset_orientation_report,
                     real_dyadic, real_sqrt, replay_location, rounded_check,
                     RealPoint, seq_apart_native, sharp_from_located, sierpinski_and_powerset,
                     sierpinski_descriptor, three_point_descriptor, upper_from_lower)
from errors import (ExpressionError, InvalidCode, NotDecidable, PreconditionViolated,
                    ScheduleViolation, SizeTooLarge)
from expressions import descriptor_for, parse_code, parse_element
from finite_oracle import powerset_poset, scott_opens, sierpinski_poset, three_point_poset
from ideal import chain_monotone_check, way_below
from separation import intrinsic_apart, replay
from models import Verdict

F = Fraction


class TestSequences:
    def test_native_apartness(self):
        zeros = periodic((0,))
        assert seq_apart_native(zeros, eventually_constant((0, 0), 1), 3) == 3
        assert seq_apart_native(zeros, zeros, 50) is None

    def test_native_apartness_needs_enough_fuel(self):
        alternating, zeros = periodic((0, 1)), periodic((0,))
        assert seq_apart_native(alternating, zeros, 1) is None
        assert seq_apart_native(alternating, zeros, 2) == 2

    def test_strongmax_left(self, alternating):
        answer = alternating.strongmax_oracle(alternating, (0,), (0, 1))
        assert answer.side == 'left' and replay(answer)

    def test_strongmax_separation(self, alternating):
        answer = alternating.strongmax_oracle(alternating, (1,), (1, 1))
        assert answer.side == 'right' and replay(answer)
        assert answer.separation.low.code == (1,)

    def test_baire_words(self):
        d = baire_descriptor()
        assert d.serialize((3, 0, 12)) == "3.0.12"
        assert d.parse("3.0.12") == (3, 0, 12)
        assert len({d.enumerate(n) for n in range(200)}) == 200

    def test_baire_element(self):
        x = iota_seq(periodic((7, 2)), baire_descriptor())
        assert way_below(x, (7, 2, 7), 5).is_yes
        assert way_below(x, (7, 3), 5).is_no

    def test_cantor_rejects_letters(self):
        with pytest.raises(InvalidCode):
            cantor_descriptor().parse("012")

    @given(st.lists(st.integers(0, 1), min_size=1, max_size=4),
           st.lists(st.integers(0, 1), max_size=6))
    def test_sharp_answers_replay(self, word, query):
        x = iota_seq(periodic(tuple(word)))
        a = tuple(query)
        answer = x.sharp_oracle(x, a, a + (0,))
        assert replay(answer)
        assert (answer.side == 'left') == (x.chain(len(a)) == a)

    @given(st.lists(st.integers(0, 1), max_size=20), st.integers(0, 1),
           st.integers(0, 1), st.integers(0, 1))
    def test_native_index_is_a_separating_basic_open(self, head, b, tail_p, tail_q):
        head = tuple(head)
        p = eventually_constant(head + (b,), tail_p)
        q = eventually_constant(head + (1 - b,), tail_q)
        n = seq_apart_native(p, q, 64)
        assert n == len(head) + 1
        x, y = iota_seq(p), iota_seq(q)
        assert x.contains(p.prefix(n)) and not y.contains(p.prefix(n))
        assert y.contains(p.prefix(n - 1))
        cert = intrinsic_apart(x, y, n + 1)
        witness = cert.inner.refutation.code
        assert len(witness) == n
        assert x.contains(witness) != y.contains(witness)


class TestReals:
    def test_interval_text(self):
        code = (F(1, 2), F(3, 2))
        assert format_interval(code) == "(1/2,3/2)"
        assert parse_interval("(1/2,3/2)") == code

    @pytest.mark.parametrize("text", ["(1,1)", "1/2,3/2", "(2,1)", "(a,b)"])
    def test_interval_text_rejects(self, text):
        with pytest.raises(InvalidCode):
            parse_interval(text)

    def test_sqrt2_member(self, sqrt2):
        assert way_below(sqrt2, (F(7, 5), F(3, 2)), 10).is_yes

    def test_sqrt2_refutes_far_interval(self, sqrt2):
        answer = way_below(sqrt2, (F(2), F(3)), 10)
        assert answer.is_no and replay(answer.witness)

    def test_sqrt_bases_agree(self):
        for base in (2, 3):
            x = iota_real(real_sqrt(2, base=base))
            assert chain_monotone_check(x, 12).passed

    def test_dyadic_brackets(self):
        x = iota_real(real_dyadic(F(1, 3)))
        assert way_below(x, (F(0), F(1, 2)), 10).is_yes

    def test_schedule_violation(self):
        wide = RealPoint(lambda n: (F(0), F(1)), "wide")
        assert wide.checked_bracket(0) == (F(0), F(1))
        with pytest.raises(ScheduleViolation):
            wide.checked_bracket(1)

    def test_negative_sqrt(self):
        with pytest.raises(PreconditionViolated):
            real_sqrt(-1)


class TestLowerReals:
    def test_rational_membership(self):
        half = lower_rational(F(1, 2))
        assert half.member(F(0), 1).is_yes
        assert half.member(F(1, 2), 50).is_unknown

    def test_sqrt_sharp_query(self):
        root = lower_sqrt(2)
        answer = root.sharp_oracle(root, F(7, 5), F(3, 2))
        assert answer.side == 'left'

    def test_flagged_is_not_located(self):
        flagged = flagged_lower_real()
        assert flagged.sharp_oracle is None
        with pytest.raises(NotDecidable):
            lower_real_sharp_oracle(flagged)
        with pytest.raises(NotDecidable):
            locate(flagged, F(0), F(1))
        assert upper_from_lower(flagged, F(1, 2), 40).verdict is Verdict.UNKNOWN
        assert upper_from_lower(flagged, F(3), 40).is_yes

    def test_flag_that_fires(self):
        flagged = flagged_lower_real(flag=lambda stage: stage == 3)
        assert flagged.member(F(1, 2), 10).is_yes

    def test_rounded(self):
        assert rounded_check(lower_sqrt(2), 20).passed

    def test_locate_both_sides(self):
        half = lower_rational(F(1, 2))
        low = locate(half, F(0), F(1))
        assert low.side == 'lower' and replay_location(low)
        high = locate(half, F(1, 2), F(1))
        assert high.side == 'upper' and replay_location(high)
        assert high.to_dict()['witness'] == "1/2"

    def test_locate_needs_ordered_query(self):
        with pytest.raises(PreconditionViolated):
            locate(lower_rational(F(0)), F(1), F(0))

    def test_sharp_and_located_round_trip(self):
        root = lower_sqrt(2)
        oracle = sharp_from_located(located_from_sharp(root))
        assert oracle(root, F(7, 5), F(3, 2)).side == 'left'
        assert oracle(root, F(3, 2), F(2)).side == 'right'
        decided = sharp_from_located(decidable_locator(root))
        answer = decided(root, F(3, 2), F(2))
        assert answer.side == 'right' and replay(answer)

    def test_location_to_dict(self):
        location = Location(lower_rational(F(0)), F(-1), F(1), 'lower')
        assert location.to_dict()['query'] == ["-1/1", "1/1"]


class TestFiniteDomains:
    def test_descriptors_are_shared(self):
        assert three_point_descriptor() is three_point_descriptor()
        assert powerset_descriptor(2) is descriptor_for('powerset2')

    def test_size_cap(self):
        with pytest.raises(SizeTooLarge):
            sierpinski_and_powerset(6)

    def test_sierpinski_and_powerset_pairs(self):
        (s, s_desc), (p, p_desc) = sierpinski_and_powerset(2)
        assert s == sierpinski_poset() and len(scott_opens(s)) == 3
        assert s_desc is sierpinski_descriptor()
        assert p.n == 4 and p_desc is powerset_descriptor(2)
        assert p_desc.delta_below("{0}", "{0,1}") and p_desc.delta_bot("{}")
        assert p_desc.size == p.n

    def test_maximal_elements_carry_strongmax_oracle(self):
        poset = three_point_poset()
        assert finite_element(poset, "0").strongmax_oracle is not None
        assert finite_element(poset, "bot").strongmax_oracle is None

    def test_finite_strongmax_answers_replay(self):
        x = finite_element(three_point_poset(), "0")
        assert replay(x.strongmax_oracle(x, "bot", "0"))
        answer = x.strongmax_oracle(x, "1", "1")
        assert answer.side == 'right' and replay(answer)

    def test_powerset_orientation(self):
        report = powerset_orientation_report(3)
        assert report.passed, report.failures
        assert report.details == {'a_minus_b': True, 'b_minus_a': False}

    def test_finite_element_labels(self):
        x = finite_element(powerset_poset(2), "{0,1}")
        assert x.label == "{0,1}"
        assert x.member("{0}", 1).is_yes


class TestExpressions:
    @pytest.mark.parametrize("text, domain", [
        ("rat:3/2", "reals"), ("sqrt:2", "reals"), ("sqrt3:5", "reals"), ("dyadic:1/3", "reals"),
        ("seq:periodic:01", "cantor"), ("seq:evconst:001;0", "cantor"),
        ("seq:periodic:3.1", "baire"), ("lower:rat:1/2", "lower"), ("lower:sqrt:2", "lower"),
        ("lower:flagged", "lower"), ("bot", "P"), ("{0,1}", "powerset2"),
    ])
    def test_valid(self, text, domain):
        assert parse_element(text, domain).label == text

    @pytest.mark.parametrize("text, domain", [
        ("sqrt:4", "reals"), ("rat:1/0", "reals"), ("seq:periodic:", "cantor"),
        ("seq:periodic:02", "cantor"), ("seq:evconst:00;", "cantor"), ("lower:sqrt:x", "lower"),
        ("Rat:1/2", "reals"), ("top", "P"), ("rat:1/2", "hyperreals"),
    ])
    def test_invalid(self, text, domain):
        with pytest.raises(ExpressionError):
            parse_element(text, domain)

    def test_codes(self):
        assert parse_code("(1/2,3/2)", "reals") == (F(1, 2), F(3, 2))
        assert parse_code("0110", "cantor") == (0, 1, 1, 0)
        assert parse_code("-1/3", "lower") == F(-1, 3)
        with pytest.raises(ExpressionError):
            parse_code("(1,0)", "reals")
