import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from domains import cantor_descriptor, sierpinski_descriptor
from errors import InvalidPoset, SizeTooLarge
from finite_oracle import (FinitePoset, _Tables, _check_apart_strictly_below, _check_basis_dense,
                           _check_maximal_subspace, antichain_poset, apart_oracle, catalog, chain_poset,
                           diamond_poset, function_space, interior, interior_by_upsets,
                           is_scott_closed, lawson_maximal, monotone_maps, nearly_open_sets,
                           not_not_below_oracle, open_masks, poset_from_descriptor, powerset_poset,
                           random_poset, scott_opens, sierpinski_poset, smyth_maximal,
                           strongly_maximal, theorem_suite, three_point_poset,
                           way_below_oracle)
from poset_files import PosetFile, builtin_posets, load_poset, save_poset


class TestFinitePoset:
    def test_closure_of_pairs(self):
        p = FinitePoset.from_pairs(["a", "b", "c"], [("a", "b"), ("b", "c")])
        assert p.le("a", "c")
        assert p.leq.flags.writeable is False

    def test_rejects_cycles(self):
        with pytest.raises(InvalidPoset):
            FinitePoset.from_pairs(["a", "b"], [("a", "b"), ("b", "a")])

    def test_rejects_non_reflexive_matrix(self):
        with pytest.raises(InvalidPoset):
            FinitePoset(["a"], np.zeros((1, 1), dtype=bool))

    def test_powerset_is_inclusion(self):
        p = powerset_poset(2)
        assert p.n == 4
        assert p.le("{0}", "{0,1}") and not p.le("{0}", "{1}")

    def test_equality_ignores_identity(self):
        assert three_point_poset() == three_point_poset()
        assert hash(three_point_poset()) == hash(three_point_poset())

    def test_catalog(self):
        names = set(catalog())
        assert {"sierpinski", "P", "diamond", "powerset2", "lifted_antichain2"} <= names

    def test_function_space_counts_monotone_maps(self):
        s = sierpinski_poset()
        assert function_space(s, s).n == len(monotone_maps(s, s)) == 3

    def test_from_descriptor(self):
        p = poset_from_descriptor(sierpinski_descriptor())
        assert p == sierpinski_poset()
        with pytest.raises(SizeTooLarge):
            poset_from_descriptor(cantor_descriptor())


class TestScottTopology:
    def test_sierpinski_opens(self):
        assert set(scott_opens(sierpinski_poset())) == {
            frozenset(), frozenset({"top"}), frozenset({"bot", "top"})}

    @pytest.mark.parametrize("poset, count", [
        (antichain_poset(2), 4), (chain_poset(3), 4), (powerset_poset(2), 6), (three_point_poset(), 5),
    ])
    def test_open_counts(self, poset, count):
        assert len(scott_opens(poset)) == count

    def test_interior_two_ways(self):
        p = diamond_poset()
        for mask in range(1 << p.n):
            assert interior(p, mask) == interior_by_upsets(p, mask)

    @pytest.mark.parametrize("poset", [sierpinski_poset(), diamond_poset(), three_point_poset()])
    def test_nearly_open_sets_are_the_opens(self, poset):
        assert nearly_open_sets(poset) == set(open_masks(poset))

    def test_closed_sets_are_complements(self):
        p = diamond_poset()
        opens = {p.labels_of(m) for m in range(1 << p.n) if p.is_upper(m)}
        for mask in range(1 << p.n):
            complement = frozenset(p.labels) - p.labels_of(mask)
            assert is_scott_closed(p, mask) == (complement in opens)


class TestOracles:
    def test_way_below(self):
        assert way_below_oracle(sierpinski_poset(), "top", "top")
        assert way_below_oracle(diamond_poset(), "bot", "top")
        assert not way_below_oracle(diamond_poset(), "a", "b")

    def test_apart(self):
        assert apart_oracle(sierpinski_poset(), "bot", "top") == (True, frozenset({"top"}))
        assert apart_oracle(antichain_poset(2), "0", "1")[0]
        assert apart_oracle(diamond_poset(), "a", "a") == (False, None)

    def test_not_not_below_orientation(self):
        p = powerset_poset(3)
        assert not_not_below_oracle(p, "{0}", "{}") is not None
        assert not_not_below_oracle(p, "{}", "{0}") is None

    def test_maximality_notions(self):
        p = three_point_poset()
        assert strongly_maximal(p) == frozenset({"0", "1"})
        assert smyth_maximal(p) == frozenset({"0", "1"})
        assert lawson_maximal(p) == frozenset({"0", "1"})
        assert strongly_maximal(sierpinski_poset()) == frozenset({"top"})


class TestTheoremSuite:
    @pytest.mark.parametrize("name", sorted(catalog()))
    def test_catalog_passes(self, name):
        report = theorem_suite(catalog()[name])
        assert report.passed, [c.to_dict() for c in report.checks if not c.passed]

    def test_summary(self):
        report = theorem_suite(three_point_poset())
        assert report.summary['maximal'] == ['0', '1']
        assert report.summary['strongly_maximal'] == ['0', '1']
        assert report.summary['scott_opens'] == 5
        assert len(report.checks) == 12

    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=2 ** 16))
    def test_random_posets_pass(self, n, seed):
        report = theorem_suite(random_poset(n, np.random.default_rng(seed)))
        assert report.passed

    def test_check_details(self):
        report = theorem_suite(sierpinski_poset())
        checks = {c.name: c for c in report.checks}
        assert checks['apart_strictly_below'].details['apart_below_pairs'] == 1
        assert checks['basis_dense'].details['basis'] == 2
        assert checks['basis_dense'].checked == len(scott_opens(sierpinski_poset())) + 2

    def test_checks_catch_broken_tables(self):
        p = sierpinski_poset()
        t = _Tables(p)
        t.apart[0][0] = True
        assert not _check_apart_strictly_below(p, t).passed
        t = _Tables(p)
        t.nnb[0][1], t.nnb[1][0] = True, False
        assert not _check_apart_strictly_below(p, t).passed
        t = _Tables(p)
        t.way[0][0] = t.way[1][1] = False
        assert not _check_basis_dense(p, t).passed

    def test_distinct_strongly_maximal_points_must_be_apart(self):
        p = three_point_poset()
        t = _Tables(p)
        assert _check_maximal_subspace(p, t).passed
        one, two = p.index["0"], p.index["1"]
        t.apart[one][two] = t.apart[two][one] = False
        assert not _check_maximal_subspace(p, t).passed

    def test_size_cap(self, monkeypatch):
        monkeypatch.setenv("APARTDOMAIN_MAX_POSET_SIZE", "3")
        with pytest.raises(SizeTooLarge):
            theorem_suite(powerset_poset(2))
        assert theorem_suite(powerset_poset(2), max_size=4).passed


class TestPosetFiles:
    def test_builtin(self):
        p = load_poset("pP")
        assert p == three_point_poset()
        assert "pP" in builtin_posets()

    def test_basename_fallback(self):
        assert load_poset("somewhere/else/pP.json") == three_point_poset()

    def test_round_trip(self, tmp_path):
        path = tmp_path / "diamond.json"
        save_poset(diamond_poset(), str(path))
        assert load_poset(str(path)) == diamond_poset()

    @pytest.mark.parametrize("content", [
        '{"elements": ["a", "a"]}',
        '{"elements": ["a"], "leq": [["a", "b"]]}',
        '{"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}',
        '{"elements": []}',
        'not json',
    ])
    def test_invalid_files(self, tmp_path, content):
        path = tmp_path / "bad.json"
        path.write_text(content, encoding="utf-8")
        with pytest.raises(InvalidPoset):
            load_poset(str(path))

    def test_missing_file(self):
        with pytest.raises(InvalidPoset):
            load_poset("no-such-poset")

    def test_model_defaults(self):
        spec = PosetFile.model_validate(json.loads('{"elements": ["x"]}'))
        assert spec.leq == [] and spec.to_poset("single").name == "single"
