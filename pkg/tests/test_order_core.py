from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from domains import (baire_descriptor, cantor_descriptor, interval_descriptor, powerset_descriptor,
                     sierpinski_descriptor)
from errors import InvalidCode, MissingBoundednessData, PreconditionViolated
from models import Fuel, as_budget
from order_core import (AbstractBasis, BasisDescriptor, cantor_pair, cantor_unpair,
                        diagonal, format_fraction, interpolate, parse_fraction,
                        prec_transitive_probe, rational_at, rational_descriptor)


def _toy_descriptor(prec) -> BasisDescriptor:
    basis = AbstractBasis(name="toy", prec=prec, is_code=lambda c: isinstance(c, int))
    return BasisDescriptor(basis=basis, enumerate=lambda n: n, serialize=str)


class TestInterpolate:
    def test_rationals_use_midpoint(self):
        assert interpolate(rational_descriptor(), Fraction(0), Fraction(1)) == Fraction(1, 2)

    def test_intervals_halve_each_gap(self):
        c = interpolate(interval_descriptor(), (Fraction(0), Fraction(1)),
                        (Fraction(1, 4), Fraction(3, 4)))
        assert c == (Fraction(1, 8), Fraction(7, 8))

    def test_reflexive_basis_may_return_upper_code(self):
        assert interpolate(cantor_descriptor(), (0,), (0, 1)) == (0, 1)

    def test_rejects_unrelated_codes(self):
        with pytest.raises(PreconditionViolated):
            interpolate(rational_descriptor(), Fraction(1), Fraction(0))

    def test_rejects_foreign_codes(self):
        with pytest.raises(InvalidCode):
            interpolate(rational_descriptor(), 0.5, Fraction(1))

    @given(st.fractions(), st.fractions())
    def test_witness_sits_strictly_between(self, a, b):
        if a == b:
            return
        a, b = min(a, b), max(a, b)
        c = interpolate(rational_descriptor(), a, b)
        assert a < c < b


class TestTransitivityLaws:
    def test_sierpinski_has_no_violation(self):
        report = prec_transitive_probe(sierpinski_descriptor(), 2)
        assert report.passed
        assert report.checked == 8

    def test_interval_basis_has_no_violation(self):
        assert prec_transitive_probe(interval_descriptor(), 20).passed

    def test_cantor_basis_has_no_violation(self):
        assert prec_transitive_probe(cantor_descriptor(), 15).passed

    def test_corrupted_relation_is_reported(self):
        report = prec_transitive_probe(_toy_descriptor(lambda a, b: abs(a - b) == 1), 4)
        assert not report.passed
        assert any(f.startswith("transitivity") for f in report.failures)


class TestEnumerations:
    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_cantor_unpair_inverts_pair(self, z):
        assert cantor_pair(*cantor_unpair(z)) == z

    def test_rationals_start_with_small_values(self):
        expected = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2),
                    Fraction(2), Fraction(-2)]
        assert [rational_at(n) for n in range(7)] == expected

    def test_cantor_words_are_length_lexicographic(self):
        words = [cantor_descriptor().enumerate(n) for n in range(7)]
        assert words == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]

    def test_codes_are_distinct(self):
        codes = sierpinski_descriptor().codes(10)
        assert codes == ["bot", "top"]

    def test_diagonal_order(self):
        assert list(diagonal(2)) == [(2, 0), (2, 1), (2, 2), (0, 2), (1, 2)]

    @given(st.integers(min_value=0, max_value=30))
    def test_diagonals_cover_every_pair_once(self, n):
        pairs = [p for s in range(n + 1) for p in diagonal(s)]
        assert len(pairs) == len(set(pairs)) == (n + 1) ** 2


class TestDescriptor:
    def test_validate_rejects_non_codes(self):
        with pytest.raises(InvalidCode):
            interval_descriptor().validate((Fraction(1), Fraction(0)))

    def test_invalid_code_is_a_value_error(self):
        assert issubclass(InvalidCode, ValueError)

    def test_bounded_pair_needs_data(self):
        with pytest.raises(MissingBoundednessData):
            _toy_descriptor(lambda a, b: a < b).bounded_pair(0, 1)

    def test_all_codes_of_infinite_basis(self):
        with pytest.raises(PreconditionViolated):
            rational_descriptor().all_codes()

    @pytest.mark.parametrize("text, value", [
        ("1/2", Fraction(1, 2)), ("-3/6", Fraction(-1, 2)), ("4", Fraction(4)),
    ])
    def test_parse_fraction(self, text, value):
        assert parse_fraction(text) == value

    @pytest.mark.parametrize("text", ["1/0", "a/2", "1.5", ""])
    def test_parse_fraction_rejects(self, text):
        with pytest.raises(InvalidCode):
            parse_fraction(text)

    def test_format_fraction_is_canonical(self):
        assert format_fraction(Fraction(-2, 4)) == "-1/2"


SHIPPED = {
    "baire": baire_descriptor,
    "rationals": rational_descriptor,
    "powerset2": lambda: powerset_descriptor(2),
    "sierpinski": sierpinski_descriptor,
    "reals": interval_descriptor,
    "cantor": cantor_descriptor,
}
indices = st.integers(min_value=0, max_value=199)


class TestDeltaConsistency:
    @pytest.mark.parametrize("name", sorted(SHIPPED))
    def test_way_below_implies_below_up_to_index_200(self, name):
        d = SHIPPED[name]()
        codes = [d.enumerate(i) for i in range(200)]
        for a in codes:
            for b in codes:
                if d.delta_waybelow(a, b):
                    assert d.delta_below(a, b), (d.serialize(a), d.serialize(b))

    @pytest.mark.parametrize("name", sorted(SHIPPED))
    @given(i=indices, j=indices, k=indices)
    def test_mixed_transitivity(self, name, i, j, k):
        d = SHIPPED[name]()
        a, b, c = d.enumerate(i), d.enumerate(j), d.enumerate(k)
        if d.delta_below(a, b) and d.delta_waybelow(b, c):
            assert d.delta_waybelow(a, c)
        if d.delta_waybelow(a, b) and d.delta_below(b, c):
            assert d.delta_waybelow(a, c)
        if d.prec(a, b) and d.prec(b, c):
            assert d.prec(a, c)

    @pytest.mark.parametrize("name", sorted(SHIPPED))
    @given(i=indices)
    def test_delta_below_is_reflexive(self, name, i):
        d = SHIPPED[name]()
        assert d.delta_below(d.enumerate(i), d.enumerate(i))


class TestFuel:
    def test_budgets(self):
        assert as_budget(Fuel(3)) == 3
        assert as_budget(7) == 7
        assert as_budget(0) == 0

    @pytest.mark.parametrize("value", [-1, -5])
    def test_negative_budget(self, value):
        with pytest.raises(PreconditionViolated):
            as_budget(value)
        with pytest.raises(PreconditionViolated):
            Fuel(value)
