"""Rewriting systems, generator maps, and the two shipped presentations."""

import pytest
from hypothesis import given, strategies as st

from hopf_forge.errors import StructureError
from hopf_forge.definition import PresentationDefinition
from hopf_forge.presentations import (DiagonalAction, GenMap, Presentation,
                                      ScalarTarget, build_presented)
from hopf_forge.presets import pairing_uqsu2_suq2, suq2, uq_su2
from hopf_forge.scalars import SC_ONE, SC_ZERO, parse_scalar


def sc(text):
    return parse_scalar(text)


def q_plane():
    """Two generators with y.x -> s^2 x.y, the quantum plane."""
    return PresentationDefinition(
        name="qplane", description="", generators=["x", "y"],
        rules=[(("y", "x"), [(sc("s^2"), ("x", "y"))])],
        coproduct={"x": [(SC_ONE, ("x",), ())],
                   "y": [(SC_ONE, (), ("y",))]},
        counit={"x": SC_ONE, "y": SC_ONE},
        antipode={"x": [(SC_ONE, ("x",))], "y": [(SC_ONE, ("y",))]})


class TestWordOrder:
    def test_length_then_generator_index(self):
        pres = Presentation(q_plane())
        assert pres.word_key(()) < pres.word_key(("x",))
        assert pres.word_key(("x",)) < pres.word_key(("y",))
        assert pres.word_key(("y",)) < pres.word_key(("x", "x"))
        assert pres.word_key(("x", "y")) < pres.word_key(("y", "x"))

    def test_rules_must_decrease(self):
        defn = q_plane()
        defn.rules = [(("x",), [(SC_ONE, ("x", "x"))])]
        with pytest.raises(StructureError, match="decrease"):
            Presentation(defn)

    def test_empty_left_side_rejected(self):
        defn = q_plane()
        defn.rules = [((), [(SC_ONE, ())])]
        with pytest.raises(StructureError, match="empty"):
            Presentation(defn)


class TestNormalForm:
    def test_q_commutation(self):
        pres = Presentation(q_plane())
        assert pres.normal_form_word(("y", "x")) == \
            ((("x", "y"), sc("s^2")),)
        assert pres.normal_form_word(("y", "y", "x")) == \
            ((("x", "y", "y"), sc("s^4")),)

    def test_inverse_pair_cancels(self):
        pres = Presentation(uq_su2())
        assert pres.normal_form_word(("K", "Kinv")) == (((), SC_ONE),)
        assert pres.normal_form_word(("Kinv", "K")) == (((), SC_ONE),)

    @given(st.lists(st.sampled_from(["K", "Kinv", "E", "F"]),
                    max_size=6).map(tuple))
    def test_normal_form_is_idempotent(self, word):
        pres = Presentation(uq_su2())
        nf = pres.normal_form_word(word)
        assert pres.normal_form(nf) == nf

    @given(st.lists(st.sampled_from(["b", "bs", "a", "as"]),
                    max_size=5).map(tuple),
           st.lists(st.sampled_from(["b", "bs", "a", "as"]),
                    max_size=5).map(tuple))
    def test_normal_form_is_multiplicative_up_to_rewriting(self, u, v):
        # nf(uv) equals nf applied to the product of the normal forms
        pres = Presentation(suq2())
        direct = pres.normal_form_word(u + v)
        nu = pres.normal_form_word(u)
        nv = pres.normal_form_word(v)
        recombined = pres.normal_form(
            tuple((wu + wv, cu * cv) for wu, cu in nu for wv, cv in nv))
        assert direct == recombined

    def test_irreducible_word_counts(self):
        for defn in (uq_su2(), suq2()):
            pres = Presentation(defn)
            counts = [len(pres.normal_words(d)) for d in range(5)]
            assert counts == [1, 5, 14, 30, 55], defn.name

    def test_normal_words_are_irreducible_and_sorted(self):
        pres = Presentation(suq2())
        words = pres.normal_words(3)
        keys = [pres.word_key(w) for w in words]
        assert keys == sorted(keys)
        for w in words:
            assert pres.normal_form_word(w) == ((w, SC_ONE),)


class TestConfluence:
    def test_both_presentations_confluent_to_degree_four(self):
        for defn in (uq_su2(), suq2()):
            pres = Presentation(defn)
            items = pres.check_confluence(4)
            assert [it.name for it in items] == \
                ["critical-pairs", "exhaustive-confluence"]
            assert all(it.ok for it in items), defn.name

    def test_non_confluent_system_is_caught(self):
        # y.x -> x.y and y.x -> 2 x.y cannot both hold
        defn = q_plane()
        defn.rules = [(("y", "x"), [(SC_ONE, ("x", "y"))]),
                      (("y", "x"), [(sc("2"), ("x", "y"))])]
        pres = Presentation(defn)
        items = pres.check_confluence(2)
        assert not items[1].ok


class TestGenMaps:
    def test_counit_violating_a_rule_is_reported(self):
        pres = Presentation(q_plane())
        eps = GenMap("counit", pres, {"x": SC_ONE, "y": SC_ONE},
                     ScalarTarget())
        item = eps.check_rules()
        assert item.name == "map-respects-rules counit"
        assert not item.ok
        assert "y.x" in item.detail

    def test_missing_image_raises(self):
        pres = Presentation(q_plane())
        with pytest.raises(StructureError, match="lacks images"):
            GenMap("counit", pres, {"x": SC_ONE}, ScalarTarget())

    def test_build_rejects_rule_breaking_counit(self):
        defn = q_plane()
        with pytest.raises(StructureError, match="map-respects-rules"):
            build_presented(defn)

    def test_antipode_squared_frozen_values(self):
        expect = {
            "uq-su2": {"K": "K", "Kinv": "Kinv",
                       "E": "(s^4) E", "F": "(1/s^4) F"},
            "suq2": {"b": "(1/s^4) b", "bs": "(s^4) bs",
                     "a": "a", "as": "as"},
        }
        for defn in (uq_su2(), suq2()):
            pq = build_presented(defn)
            for g, text in expect[defn.name].items():
                out = pq.antipode_squared((((g,), SC_ONE),))
                assert pq.pres.format_terms(out) == text, (defn.name, g)


class TestDiagonalActions:
    def test_weight_inhomogeneous_action_is_reported(self):
        # y.x -> 1 relates words with different letters, so any weights
        # with w(x) w(y) != 1 are inhomogeneous
        defn = q_plane()
        defn.rules = [(("y", "x"), [(SC_ONE, ())])]
        pres = Presentation(defn)
        act = DiagonalAction("bad", pres, {"x": sc("2"), "y": SC_ONE})
        item = act.check_rules()
        assert item.name == "action-respects-rules bad"
        assert not item.ok

    @given(st.lists(st.sampled_from(["K", "Kinv", "E", "F"]),
                    max_size=6).map(tuple))
    def test_action_commutes_with_rewriting(self, word):
        pq = build_presented(uq_su2())
        act = pq.actions["modular"]
        via_word = pq.pres.normal_form(act.apply_terms(((word, SC_ONE),)))
        via_nf = act.apply_terms(pq.pres.normal_form_word(word))
        assert via_word == tuple((w, c) for w, c in via_nf
                                 if not c.is_zero)


class TestPresetShapes:
    def test_pairing_definition_is_consistent(self):
        p = pairing_uqsu2_suq2()
        assert p.rows.name == "uq-su2"
        assert p.cols.name == "suq2"
        for (rg, cg) in p.table:
            assert rg in p.rows.generators
            assert cg in p.cols.generators
        for action_name, word in p.action_functionals:
            assert action_name in p.cols.diagonal_actions
            for g in word:
                assert g in p.rows.generators

    def test_letter_order_of_the_matrix_presentation(self):
        assert suq2().generators == ["b", "bs", "a", "as"]
