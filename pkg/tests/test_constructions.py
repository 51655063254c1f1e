"""Witness constructions: example gallery, merging, gluing, verification."""

import random
from fractions import Fraction

import pytest

from deligne_simpson.constructions import (
    EquivalentBlocksError,
    MatrixTuple,
    UnavoidableError,
    almost_special_types,
    build_almost_special,
    build_nice,
    expected_example_types,
    make_example,
    make_merged,
    prepare_construction,
    verify_tuple,
)
from deligne_simpson.exactmat import (
    centralizer_dim,
    charpoly,
    jordan_type_nilpotent,
    rank,
)
from deligne_simpson.jnf import (
    JnfTuple,
    JordanForm,
    PreconditionViolation,
    omega0,
)

F = Fraction


class TestExamples:
    def test_ex2_basic(self):
        t = make_example("ex2")
        assert t.zero_sum
        for m in t.mats:
            assert rank(m) == 2
            assert jordan_type_nilpotent(m) == (3,)

    def test_ex3_n6_types(self):
        t = make_example("ex3", 6)
        types = [jordan_type_nilpotent(m) for m in t.mats]
        assert types == [(6,), (3, 3), (2, 2, 2)]

    def test_ex0_shape(self):
        t = make_example("ex0")
        assert t.mats[0] == -t.mats[1]
        assert t.mats[2] == -t.mats[3]
        assert t.zero_sum

    def test_gallery_types_and_irreducibility(self):
        cases = [("ex0", 2), ("ex1", 4), ("ex1", 6), ("ex2", 3),
                 ("ex3", 6), ("ex3", 8), ("ex4", 9), ("ex5", 10),
                 ("ex7", 5), ("ex7", 7)]
        for ex, n in cases:
            t = make_example(ex, n)
            assert t.zero_sum, ex
            rep = verify_tuple(t)
            assert rep.irreducible, (ex, n, rep.algebra_dim)
            expect = expected_example_types(ex, n)
            assert list(rep.jordan_types) == [tuple(x) for x in expect], (ex, n)

    def test_unsupported_sizes(self):
        for ex, n in [("ex0", 3), ("ex1", 3), ("ex2", 4), ("ex3", 7),
                      ("ex3", 4), ("ex7", 6), ("ex4", 10)]:
            with pytest.raises(Exception):
                make_example(ex, n)

    def test_first_method_charpoly_shape(self):
        rng = random.Random(61)
        for n in (4, 6):
            t = make_example("ex1", n)
            for _ in range(5):
                alphas = [F(rng.randint(1, 40)) for _ in range(3)]
                while len(set(alphas)) < 3:
                    alphas = [F(rng.randint(1, 40)) for _ in range(3)]
                b = MatrixTuple(t.mats, tuple(alphas)).weighted_sum()
                cp = charpoly(b)
                assert cp[0] != 0
                assert all(cp[k] == 0 for k in range(1, n))

    def test_second_method_charpoly_shape(self):
        # the shape allows only the leading and the linear coefficient; for
        # these sign patterns the two cycle terms cancel, so the weighted
        # sum is in fact nilpotent for every weight choice
        rng = random.Random(67)
        for ex, n in [("ex3", 6), ("ex7", 5), ("ex4", 9)]:
            t = make_example(ex, n)
            for _ in range(5):
                alphas = [F(rng.randint(1, 50)) for _ in range(3)]
                b = MatrixTuple(t.mats, tuple(alphas)).weighted_sum()
                cp = charpoly(b)
                assert cp[0] == 0
                assert all(cp[k] == 0 for k in range(2, n))
                assert cp[1] == 0

    def test_ranks_of_ex1(self):
        t = make_example("ex1", 6)
        assert [rank(m) for m in t.mats] == [5, 5, 2]


class TestMerging:
    def test_example_n5(self):
        a, ap, am = make_merged(5, 2, 1)
        assert jordan_type_nilpotent(a) == omega0(5, 2)
        assert jordan_type_nilpotent(am) == (4, 1)
        assert rank(am) == 3
        assert am == a + ap

    def test_single_block_result(self):
        _, _, am = make_merged(4, 2, 1)
        assert jordan_type_nilpotent(am) == (4,)

    def test_r2_zero(self):
        a, ap, am = make_merged(6, 3, 0)
        assert ap.is_zero() and am == a

    def test_exhaustive_small(self):
        for n in range(2, 9):
            for r1 in range(n):
                for r2 in range(r1 + 1):
                    if r1 + r2 > n - 1:
                        continue
                    a, ap, am = make_merged(n, r1, r2)
                    assert jordan_type_nilpotent(a) == omega0(n, r1)
                    assert jordan_type_nilpotent(ap) == omega0(n, r2)
                    assert rank(am) == r1 + r2
                    assert am == a + ap

    def test_precondition(self):
        with pytest.raises(PreconditionViolation):
            make_merged(4, 2, 2)
        with pytest.raises(PreconditionViolation):
            make_merged(4, 1, 2)


class TestBuildNice:
    def blocks(self):
        b1 = make_example("ex2")
        b2 = MatrixTuple(tuple(m.scale(2) for m in b1.mats), b1.alphas)
        return [b1, b2]

    def test_six_by_six_glue(self):
        out = build_nice(self.blocks(), m0=1)
        assert out.n == 6 and out.has_extra
        assert out.zero_sum
        rep = verify_tuple(out)
        assert rep.centralizer_trivial
        assert rep.apparent_condition is not None
        # the extra matrix squares to zero with rank m0
        extra = out.mats[-1]
        assert rank(extra) == 1 and (extra @ extra).is_zero()
        assert jordan_type_nilpotent(extra) == (2, 1, 1, 1, 1)

    def test_b_spectrum_distinct_nonzero(self):
        out = build_nice(self.blocks(), m0=1)
        rep = verify_tuple(out)
        assert rep.zero_root_multiplicity == 0
        assert rep.simple_nonzero_count == 6

    def test_equivalent_blocks_rejected(self):
        b1 = make_example("ex2")
        with pytest.raises(EquivalentBlocksError):
            build_nice([b1, b1], m0=1)

    def test_m0_zero_rejected(self):
        with pytest.raises(PreconditionViolation):
            build_nice(self.blocks(), m0=0)

    def test_quadruple_blocks_chi_two(self):
        base = make_example("ex0")
        blocks = [MatrixTuple(tuple(m.scale(c) for m in base.mats), base.alphas)
                  for c in (1, 2, 3)]
        out = build_nice(blocks, m0=2)
        assert out.n == 6 and out.zero_sum
        rep = verify_tuple(out)
        assert rep.centralizer_trivial
        assert jordan_type_nilpotent(out.mats[-1]) == (2, 2, 1, 1)

    def test_chi_six_blocks(self):
        b1 = make_example("ex3", 6)
        b2 = MatrixTuple(tuple(m.scale(2) for m in b1.mats), b1.alphas)
        for m0 in (1, 3):
            out = build_nice([b1, b2], m0=m0)
            rep = verify_tuple(out)
            assert out.zero_sum and rep.centralizer_trivial, m0
            assert jordan_type_nilpotent(out.mats[-1]) == \
                tuple([2] * m0 + [1] * (12 - 2 * m0))

    def test_three_blocks_m0_2(self):
        b1 = make_example("ex2")
        b2 = MatrixTuple(tuple(m.scale(2) for m in b1.mats), b1.alphas)
        b3 = MatrixTuple(tuple(m.scale(3) for m in b1.mats), b1.alphas)
        out = build_nice([b1, b2, b3], m0=2)
        assert out.n == 9
        assert out.zero_sum
        rep = verify_tuple(out)
        assert rep.centralizer_trivial
        assert rep.apparent_condition is not None
        assert jordan_type_nilpotent(out.mats[-1]) == (2, 2, 1, 1, 1, 1, 1)


class TestAlmostSpecial:
    def test_b1_g2(self):
        out = build_almost_special("b1", 2)
        assert out.n == 6 and out.zero_sum
        types = [jordan_type_nilpotent(m) for m in out.mats]
        assert types == [(4, 2), (3, 3), (3, 3)]
        assert centralizer_dim(list(out.mats)) == 1
        rep = verify_tuple(out)
        assert rep.simple_nonzero_count == 6 and rep.zero_root_multiplicity == 0

    def test_b1_g3(self):
        out = build_almost_special("b1", 3)
        assert out.n == 9 and out.zero_sum
        types = [jordan_type_nilpotent(m) for m in out.mats]
        assert types == [(4, 3, 2), (3, 3, 3), (3, 3, 3)]
        assert centralizer_dim(list(out.mats)) == 1

    def test_all_cases_g2(self):
        for case in ("a1", "b1", "c1", "c2", "d1", "d2", "d3"):
            out = build_almost_special(case, 2)
            assert out.zero_sum, case
            types = [jordan_type_nilpotent(m) for m in out.mats]
            assert types == [tuple(x) for x in almost_special_types(case, 2)], case
            assert centralizer_dim(list(out.mats)) == 1, case

    def test_c1_g3(self):
        out = build_almost_special("c1", 3)
        assert out.n == 12 and out.zero_sum
        types = [jordan_type_nilpotent(m) for m in out.mats]
        assert types == [tuple(x) for x in almost_special_types("c1", 3)]
        assert types[2] == (3, 2, 2, 2, 2, 1)
        assert centralizer_dim(list(out.mats)) == 1

    def test_g1_rejected(self):
        with pytest.raises(PreconditionViolation):
            build_almost_special("b1", 1)


class TestPreparation:
    def test_identity_plan_for_case_f(self):
        t = JnfTuple([JordanForm.nilpotent(p) for p in
                      [(3, 2, 2, 2, 2, 2, 2), (3, 3, 3, 3, 3), (5, 5, 5)]])
        plan = prepare_construction(t)
        assert plan.merges == ()
        assert plan.target_ranks == plan.original_ranks
        assert plan.case.name == "case-(F)"

    def test_lowering_and_merge(self):
        # five classes, ranks oversum 2n: plan lowers and merges to a triple
        n = 8
        t = JnfTuple([JordanForm.nilpotent(omega0(n, r))
                      for r in (5, 5, 4, 4, 3)])
        plan = prepare_construction(t)
        assert sum(plan.target_ranks) == 2 * n
        assert len(plan.final_ranks) in (3, 4)
        assert plan.case.name.startswith("case-(") or plan.case.name == "other"
        # re-run classification on the planned profile
        t2 = JnfTuple([JordanForm.nilpotent(p) for p in plan.profiles])
        from deligne_simpson.jnf import classify_family
        assert classify_family(t2) == plan.case

    def test_merge_avoids_special_profile(self):
        # ranks (6,6,3,3) at n=9: the only triple merge lands in the
        # all-equal-blocks profile, so the plan keeps the quadruple
        n = 9
        t = JnfTuple([JordanForm.nilpotent(omega0(n, r)) for r in (6, 6, 3, 3)])
        plan = prepare_construction(t)
        assert not plan.case.name.startswith("special")
        assert not plan.case.name.startswith("almost")
        assert len(plan.final_ranks) == 4

    def test_forced_special_a(self):
        t = JnfTuple([JordanForm.nilpotent([2, 2])] * 4)
        with pytest.raises(UnavoidableError) as exc:
            prepare_construction(t)
        assert exc.value.label.name == "special-a"

    def test_below_2n_rejected(self):
        t = JnfTuple([JordanForm.nilpotent([2, 1, 1])] * 3)
        with pytest.raises(PreconditionViolation):
            prepare_construction(t)


class TestVerify:
    def test_shuffled_sum_reported(self):
        t = make_example("ex2")
        bad = MatrixTuple((t.mats[0], t.mats[1], t.mats[1]), t.alphas)
        rep = verify_tuple(bad)
        assert not rep.zero_sum
        assert not rep.passed

    def test_expected_types_checked(self):
        t = make_example("ex3", 6)
        good = JnfTuple([JordanForm.nilpotent(p)
                         for p in [(6,), (3, 3), (2, 2, 2)]])
        wrong = JnfTuple([JordanForm.nilpotent(p)
                          for p in [(6,), (3, 3), (3, 2, 1)]])
        assert verify_tuple(t, good).types_match
        assert not verify_tuple(t, wrong).types_match

    def test_ex1_n4_b_has_four_simple_roots(self):
        t = make_example("ex1", 4)
        rep = verify_tuple(t)
        assert rep.simple_nonzero_count == 4
        assert rep.zero_root_multiplicity == 0

    def test_ex0_b_two_distinct_nonzero(self):
        rep = verify_tuple(make_example("ex0"))
        assert rep.simple_nonzero_count == 2

    def test_report_roundtrip_deterministic(self):
        t = make_example("ex2")
        r1 = verify_tuple(t).to_dict()
        r2 = verify_tuple(t).to_dict()
        assert r1 == r2

    def test_full_algebra_implies_trivial_centralizer(self):
        # joint Burnside check across the whole gallery
        for ex, n in [("ex0", 2), ("ex1", 4), ("ex1", 6), ("ex2", 3),
                      ("ex3", 6), ("ex4", 9), ("ex7", 5)]:
            rep = verify_tuple(make_example(ex, n))
            assert rep.irreducible
            assert rep.centralizer_trivial

    def test_solver_determinism(self):
        t = make_example("ex2")
        pairs = list(zip(t.mats, [m.scale(2) for m in t.mats]))
        from deligne_simpson.exactmat import Mat, solve_coboundary_sum
        target = Mat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        one = solve_coboundary_sum(pairs, target)
        two = solve_coboundary_sum(pairs, target)
        assert one == two
