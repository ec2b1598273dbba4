"""Coproducts, canonical maps, counit/antipode derivation, sub-objects."""

import pytest

from hopf_forge.assemble import build_qg
from hopf_forge.errors import CheckFailure, StructureError
from hopf_forge.fixtures import build_fixture
from hopf_forge.mhopf import (TMAP_FORMULAS, attach_coproduct,
                              check_grouplike_projection, check_star_compat,
                              check_sub_mha, check_tmaps,
                              derive_counit_antipode, tensor_vec)
from hopf_forge.finalg import LinMap, basis_vector, build_algebra
from hopf_forge.scalars import SC_ONE, SC_ZERO, Scalar


def hopf_qg(name):
    qg = build_qg(build_fixture(name))
    return derive_counit_antipode(qg)


class TestAttachCoproduct:
    def test_rejects_non_multiplicative(self):
        defn = build_fixture("c_z2")
        qg = build_qg(defn)
        n = qg.dim
        broken = [row[:] for row in qg.coproduct.matrix]
        broken[0][0] = broken[0][0] + SC_ONE
        with pytest.raises(StructureError):
            attach_coproduct(qg.algebra, LinMap(broken))

    def test_rejects_non_coassociative(self):
        # On two orthogonal idempotents, e_k |-> e_k (x) e_{swap(k)} is an
        # algebra map, but iterating it puts the swapped index in different
        # tensor legs, so coassociativity fails.
        alg = build_algebra(
            ["e0", "e1"], {(0, 0): {0: SC_ONE}, (1, 1): {1: SC_ONE}})
        cols = [tensor_vec(alg.basis(0), alg.basis(1)),
                tensor_vec(alg.basis(1), alg.basis(0))]
        m = [[cols[j][i] for j in range(2)] for i in range(4)]
        with pytest.raises(StructureError):
            attach_coproduct(alg, LinMap(m))


class TestCanonicalMaps:
    def test_full_rank_on_group_fixture(self):
        qg = build_qg(build_fixture("c_z2"))
        report = check_tmaps(qg)
        assert [v.formula for v in report.maps] == list(TMAP_FORMULAS)
        assert all(v.rank == 4 and v.size == 4 for v in report.maps)
        assert report.all_bijective
        assert report.coproduct_unital

    def test_semilattice_fails_at_rank_2_of_4(self):
        qg = build_qg(build_fixture("semilattice2"))
        report = check_tmaps(qg)
        assert not report.all_bijective
        first = report.maps[0]
        assert (first.formula, first.rank, first.size) == \
            (TMAP_FORMULAS[0], 2, 4)
        assert not report.coproduct_unital


class TestCounitAntipode:
    def test_solution_is_unique_and_verified(self):
        qg = hopf_qg("c_z4")
        n = qg.dim
        # counit of a function algebra evaluates at the identity point
        assert qg.counit == [SC_ONE, SC_ZERO, SC_ZERO, SC_ZERO]
        # antipode inverts the group coordinate
        assert qg.antipode.apply(qg.algebra.basis(1)) == \
            qg.algebra.basis(3)

    def test_declared_mismatch_raises(self):
        defn = build_fixture("c_z2")
        qg = build_qg(defn)
        wrong = [SC_ONE, SC_ONE]
        with pytest.raises(CheckFailure, match="declared-counit"):
            derive_counit_antipode(qg, declared_counit=wrong)

    def test_antipode_is_anti_multiplicative(self):
        qg = hopf_qg("group_s3")
        alg = qg.algebra
        s = qg.antipode
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = s.apply(alg.multiply(alg.basis(i), alg.basis(j)))
                rhs = alg.multiply(s.apply(alg.basis(j)),
                                   s.apply(alg.basis(i)))
                assert lhs == rhs


class TestStarCompat:
    def test_hopf_fixtures_pass(self):
        for name in ("c_z2", "c_s3", "group_s3", "sweedler_h4"):
            report = check_star_compat(hopf_qg(name))
            assert report.all_ok, name

    def test_requires_star(self):
        defn = build_fixture("c_z2")
        defn.star = None
        qg = derive_counit_antipode(build_qg(defn))
        with pytest.raises(StructureError):
            check_star_compat(qg)


class TestGrouplikeProjection:
    def test_identity_element_passes(self):
        qg = hopf_qg("group_s3")
        report = check_grouplike_projection(qg, qg.algebra.unit)
        assert report.all_ok

    def test_identity_point_mass_passes(self):
        qg = hopf_qg("c_z4")
        report = check_grouplike_projection(qg, qg.algebra.basis(0))
        assert report.all_ok

    def test_non_projection_fails_idempotency(self):
        qg = hopf_qg("group_s3")
        report = check_grouplike_projection(qg, qg.algebra.basis(1))
        assert not report.all_ok
        by_name = {it.name: it.ok for it in report.items}
        assert not by_name["idempotent"]

    def test_shifted_point_mass_fails_coproduct_condition(self):
        # e2 is a projection but D(e2)(1(x)e2) = e0(x)e2, not e2(x)e2
        qg = hopf_qg("c_z4")
        report = check_grouplike_projection(qg, qg.algebra.basis(2))
        by_name = {it.name: it.ok for it in report.items}
        assert by_name["idempotent"] and by_name["self-adjoint"]
        assert not by_name["coproduct-condition"]


class TestSubMHA:
    def test_even_subgroup_functions_pass(self):
        defn = build_fixture("c_z4")
        qg = hopf_qg("c_z4")
        rows = defn.sub_bases["c_h"]
        result = check_sub_mha(qg, rows)
        assert result.all_ok
        assert all(item.ok for item in result.memberships)
        assert all(item.ok for item in result.compat)
        assert result.induced is not None
        assert result.induced.dim == 2
        assert result.induced_tmaps.all_bijective

    def test_unit_span_passes(self):
        qg = hopf_qg("c_z4")
        rows = [[SC_ONE, SC_ONE, SC_ONE, SC_ONE]]
        result = check_sub_mha(qg, rows)
        assert result.all_ok
        assert result.induced.dim == 1

    def test_single_point_function_fails_membership(self):
        # span{e1} in the four-point function algebra is a subalgebra and
        # star-closed, but D(e1)(1(x)e1) = e0(x)e1 escapes its tensor square
        qg = hopf_qg("c_z4")
        rows = [basis_vector(4, 1)]
        with pytest.raises(StructureError, match="membership"):
            check_sub_mha(qg, rows)

    def test_induced_structure_is_the_small_group(self):
        defn = build_fixture("c_z4")
        qg = hopf_qg("c_z4")
        result = check_sub_mha(qg, defn.sub_bases["c_h"])
        sub = result.induced
        # the induced object is the function algebra on two points
        prod = sub.algebra.multiply(sub.algebra.basis(0),
                                    sub.algebra.basis(0))
        assert prod == sub.algebra.basis(0)
        assert sub.algebra.multiply(sub.algebra.basis(0),
                                    sub.algebra.basis(1)) == \
            [SC_ZERO, SC_ZERO]
