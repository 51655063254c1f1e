"""Acceptance gate: one test per criterion, all exact, printed pass lines.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the one-line
verdict per criterion.
"""

import random
from fractions import Fraction
from itertools import combinations_with_replacement

from conftest import random_jnf_tuple, random_jordan_form
from deligne_simpson.catalog import base_list, enumerate_rigid
from deligne_simpson.constructions import (
    MatrixTuple,
    build_almost_special,
    build_nice,
    expected_example_types,
    make_example,
    make_merged,
    verify_tuple,
)
from deligne_simpson.exactmat import charpoly, jordan_type_nilpotent, rank
from deligne_simpson.jnf import (
    CaseLabel,
    JnfTuple,
    JordanForm,
    classify_family,
    corresponding_diagonal,
    corresponding_single,
    d_of,
    dominates,
    omega0,
    op_successors,
    r_of,
)
from deligne_simpson.reduction import (
    SpectraSummary,
    condition_report,
    is_good,
    reduce_chain,
    verdict,
)
from deligne_simpson.spectra import (
    ExponentAssignment,
    find_relation,
    genericize,
    spectra_invariants,
)

F = Fraction


def passed(k, text):
    print("ACCEPTANCE %2d: PASS  %s" % (k, text))


def all_partitions(n):
    def gen(left, maxpart):
        if left == 0:
            yield ()
            return
        for first in range(min(left, maxpart), 0, -1):
            for rest in gen(left - first, first):
                yield (first,) + rest

    return list(gen(n, n))


def test_01_intro_example_decision():
    t = JnfTuple([JordanForm.nilpotent([2], label="s")] * 3)
    rep = condition_report(t)
    chain = reduce_chain(t)
    assert is_good(t)
    assert chain.final[0].n == 1
    assert rep.kappa == 0

    # eigenvalue product -1: generic, solvable with irreducible tuples
    minus = ExponentAssignment.from_tuple(
        t, [{"s": F(0)}, {"s": F(0)}, {"s": F(1, 2)}])
    inv = spectra_invariants(t, minus)
    v = verdict(t, SpectraSummary(
        generic=find_relation(minus) is None, q=inv.q, d=inv.d,
        m0=inv.m0, xi_primitive=inv.xi_primitive))
    assert v.status == "SolvableIrreducible"

    # eigenvalue product +1: the scan detects the violated relation
    plus = ExponentAssignment.from_tuple(
        t, [{"s": F(0)}, {"s": F(1, 2)}, {"s": F(1, 2)}])
    rel = find_relation(plus)
    assert rel is not None and rel.defect is not None
    passed(1, "single-2-block triple: good, n_s=1, kappa=0; verdicts match")


def test_02_chain_invariant():
    rng = random.Random(101)
    found = 0
    while found < 200:
        n = rng.randint(2, 12)
        p = rng.randint(2, 4)
        t = random_jnf_tuple(rng, n, p)
        if not is_good(t):
            continue
        found += 1
        chain = reduce_chain(t)
        kappa = chain.stages[0][1].kappa
        for _, rep in chain.stages:
            assert rep.sum_d == 2 * rep.n * rep.n - 2 + kappa
        assert (chain.final[0].n == 1) == chain.stages[0][1].alpha_equality
    passed(2, "200 random good tuples: dimension sum = 2n^2-2+kappa at "
              "every stage; n_s=1 iff alpha equality")


def test_03_correspondence():
    rng = random.Random(103)
    for _ in range(200):
        j = random_jordan_form(rng, rng.randint(1, 12))
        for image in (corresponding_diagonal(j), corresponding_single(j)):
            assert r_of(image) == r_of(j)
            assert d_of(image) == d_of(j)
    checked = 0
    while checked < 200:
        t = random_jnf_tuple(rng, rng.randint(2, 10), rng.randint(2, 3))
        td = JnfTuple([corresponding_diagonal(f) for f in t.forms])
        c1, c2 = reduce_chain(t), reduce_chain(td)
        assert c1.sizes == c2.sizes
        for (t1, _), (t2, _) in zip(c1.stages, c2.stages):
            for f1, f2 in zip(t1.forms, t2.forms):
                assert corresponding_diagonal(f1).canonical() == \
                    corresponding_diagonal(f2).canonical()
        checked += 1
    passed(3, "200 random forms keep r and d under both correspondences; "
              "chains of corresponding tuples agree stagewise")


def test_04_dominance_equals_reachability():
    total = 0
    for n in range(1, 9):
        parts = all_partitions(n)
        reach = {p: {p} for p in parts}
        for p in parts:
            frontier = [p]
            while frontier:
                q = frontier.pop()
                for nxt in op_successors(q):
                    if nxt not in reach[p]:
                        reach[p].add(nxt)
                        frontier.append(nxt)
        for p in parts:
            for q in parts:
                dom = dominates(JordanForm.nilpotent(p), JordanForm.nilpotent(q))
                assert dom == (p in reach[q])
                total += 1
    passed(4, "dominance = surgery reachability on all %d pairs, n <= 8" % total)


def test_05_examples_gallery():
    rng = random.Random(105)
    gallery = [("ex0", 2), ("ex1", 4), ("ex1", 6), ("ex1", 8), ("ex2", 3),
               ("ex3", 6), ("ex3", 8), ("ex4", 9), ("ex5", 10), ("ex6", 12),
               ("ex7", 5), ("ex7", 7)]
    first_method = {"ex0", "ex1", "ex2"}
    b_zero = []
    for ex, n in gallery:
        t = make_example(ex, n)
        assert t.zero_sum
        rep = verify_tuple(t)
        expect = [tuple(x) for x in expected_example_types(ex, n)]
        assert list(rep.jordan_types) == expect, (ex, n)
        for m, tp in zip(t.mats, expect):
            assert rank(m) == n - len(tp), (ex, n)
        assert rep.irreducible and rep.algebra_dim == n * n, (ex, n)
        for _ in range(5):
            alphas = []
            while len(set(alphas)) != len(t.mats):
                alphas = [F(rng.randint(1, 60)) for _ in t.mats]
            b = MatrixTuple(t.mats, tuple(alphas)).weighted_sum()
            cp = charpoly(b)
            if ex in first_method:
                assert cp[0] != 0, (ex, n, alphas)
                assert all(cp[k] == 0 for k in range(1, n))
            else:
                assert cp[0] == 0, (ex, n, alphas)
                assert all(cp[k] == 0 for k in range(2, n))
                if cp[1] == 0:
                    b_zero.append((ex, n, tuple(int(a) for a in alphas)))
    if b_zero:
        print("ACCEPTANCE  5: FAIL  second-method weighted sums are nilpotent: "
              "the linear coefficient vanishes identically (t2 = -t1 and the "
              "first and last superdiagonal entries coincide, so the two "
              "cycle terms cancel for every weight choice); "
              "see the decisions ledger")
    assert not b_zero, (
        "criterion demands a nonzero linear coefficient, but it is zero "
        "for all weights on: %r" % b_zero[:3])
    passed(5, "gallery reproduces documented Jordan types, full generated "
              "algebra, and both characteristic polynomial shapes")


def test_06_gluing_constructions():
    b1 = make_example("ex2")
    b2 = MatrixTuple(tuple(m.scale(2) for m in b1.mats), b1.alphas)
    nice = build_nice([b1, b2], m0=1)
    assert nice.zero_sum
    rep = verify_tuple(nice)
    assert rep.centralizer_trivial
    assert jordan_type_nilpotent(nice.mats[-1]) == (2, 1, 1, 1, 1)
    assert rep.simple_nonzero_count == 6 and rep.zero_root_multiplicity == 0

    for g, types in [(2, [(4, 2), (3, 3), (3, 3)]),
                     (3, [(4, 3, 2), (3, 3, 3), (3, 3, 3)])]:
        out = build_almost_special("b1", g)
        assert out.zero_sum
        rep = verify_tuple(out)
        assert rep.centralizer_trivial
        assert list(rep.jordan_types) == types
        assert rep.simple_nonzero_count == out.n
        assert rep.zero_root_multiplicity == 0
    passed(6, "glued tuples: zero sum, trivial centralizer, documented "
              "types, weighted-sum spectrum simple and nonzero")


def test_07_merging_exhaustive():
    checked = 0
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
                checked += 1
    passed(7, "merging: rank additivity and minimal-orbit types on all "
              "%d admissible (n, r1, r2), n <= 8" % checked)


def test_08_catalog():
    l0 = base_list(0)
    assert [m.mvs for m in l0] == [
        ((1, 1), (1, 1), (1, 1), (1, 1)),
        ((1, 1, 1), (1, 1, 1), (1, 1, 1)),
        ((1, 1, 1, 1), (1, 1, 1, 1), (2, 2)),
        ((1, 1, 1, 1, 1, 1), (2, 2, 2), (3, 3)),
    ]
    for p in (2, 3):
        ours = sorted(m.mvs for m in enumerate_rigid(6, p))
        brute = []
        for n in range(1, 7):
            for mvs in combinations_with_replacement(all_partitions(n), p + 1):
                t = JnfTuple([JordanForm.diagonal(mv) for mv in mvs])
                if is_good(t) and reduce_chain(t).final[0].n == 1:
                    brute.append(tuple(sorted(mvs, reverse=True)))
        assert ours == sorted(set(brute))
        for m in enumerate_rigid(6, p):
            assert m.report().kappa == 0
    passed(8, "base list matches the four documented tuples; rigid "
              "enumeration equals brute force for n <= 6, p <= 3")


def test_09_spectra():
    t = JnfTuple([JordanForm.diagonal([2, 2])] * 4)
    values = [
        {"e1": F(0), "e2": F(1, 8)},
        {"e1": F(0), "e2": F(1, 8)},
        {"e1": F(0), "e2": F(15, 16)},
        {"e1": F(1, 4), "e2": F(1, 16)},
    ]
    a = ExponentAssignment.from_tuple(t, values)
    inv = spectra_invariants(t, a)
    assert inv.q == 2 and inv.d == 2
    assert inv.m0 == 1  # xi = exp(2 pi i / 2) = -1
    rel = find_relation(a)
    assert rel is not None and rel.defect is not None

    # independent oracle for the generic lift: raw slot enumeration
    from itertools import combinations, product as iproduct

    def oracle_min_defect(asg):
        best = None
        slot_lists = [asg.slots(j) for j in range(asg.n_forms)]
        for kappa in range(1, asg.n):
            choice_sets = [list(combinations(range(len(s)), kappa))
                           for s in slot_lists]
            for combo in iproduct(*choice_sets):
                value = sum((slot_lists[j][i][1]
                             for j, idx in enumerate(combo) for i in idx), F(0))
                if value.denominator == 1:
                    m = abs(int(value))
                    best = m if best is None else min(best, m)
        return best

    rng = random.Random(109)
    done = 0
    while done < 20:
        n = rng.randint(2, 6)
        style = rng.random()
        if style < 0.4:
            mv = [1] * n
        elif style < 0.7 and n >= 4:
            mv = [2] * (n // 2) + [1] * (n % 2)
        else:
            mv = [n - 1, 1] if n > 1 else [1]
        mv = [m for m in mv if m > 0]
        tt = JnfTuple([JordanForm.diagonal(mv)] * 3)
        vals = []
        for f in tt.forms:
            vals.append({lab: F(rng.randint(0, 16), 17) for lab in f.labels})
        lab = tt.forms[-1].labels[-1]
        m_last = tt.forms[-1].multiplicity(lab)
        partial = sum((f.multiplicity(l) * vals[j][l]
                       for j, f in enumerate(tt.forms) for l in f.labels
                       if not (j == 2 and l == lab)), F(0))
        vals[-1][lab] = (int(partial) + 1 - partial) / m_last
        try:
            asg = ExponentAssignment.from_tuple(tt, vals)
            inv2 = spectra_invariants(tt, asg)
        except Exception:
            continue
        if inv2.q > 1 and not inv2.xi_primitive:
            continue
        out = genericize(vals, tt, h=5, mode="A")
        got = oracle_min_defect(out)
        assert got is None or got >= 5
        done += 1
    passed(9, "second worked example gives q=d=2 with xi=-1 and a detected "
              "relation; 20 generic lifts verified by the slot-level oracle")


def test_10_taxonomy():
    def nt(*parts_lists):
        return JnfTuple([JordanForm.nilpotent(p) for p in parts_lists])

    cases = [
        # special profiles, two scales each where sizes allow
        (nt([2, 2], [2, 2], [2, 2], [2, 2]), CaseLabel("special-a", 2)),
        (nt([2] * 3, [2] * 3, [2] * 3, [2] * 3), CaseLabel("special-a", 3)),
        (nt([3, 3], [3, 3], [3, 3]), CaseLabel("special-b", 2)),
        (nt([3] * 3, [3] * 3, [3] * 3), CaseLabel("special-b", 3)),
        (nt([4, 4], [4, 4], [2, 2, 2, 2]), CaseLabel("special-c", 2)),
        (nt([4] * 3, [4] * 3, [2] * 6), CaseLabel("special-c", 3)),
        (nt([6, 6], [3, 3, 3, 3], [2] * 6), CaseLabel("special-d", 2)),
        (nt([6] * 3, [3] * 6, [2] * 9), CaseLabel("special-d", 3)),
        # the seven almost-special profiles at g = 2
        (nt([3, 1], [2, 2], [2, 2], [2, 2]), CaseLabel("almost-a1", 2)),
        (nt([4, 2], [3, 3], [3, 3]), CaseLabel("almost-b1", 2)),
        (nt([4, 4], [4, 4], [3, 1, 2, 2]), CaseLabel("almost-c1", 2)),
        (nt([5, 3], [4, 4], [2, 2, 2, 2]), CaseLabel("almost-c2", 2)),
        (nt([6, 6], [3, 3, 3, 3], [3, 1, 2, 2, 2, 2]), CaseLabel("almost-d1", 2)),
        (nt([6, 6], [4, 2, 3, 3], [2] * 6), CaseLabel("almost-d2", 2)),
        (nt([7, 5], [3, 3, 3, 3], [2] * 6), CaseLabel("almost-d3", 2)),
        # larger scale almost-special
        (nt([4, 2, 3], [3, 3, 3], [3, 3, 3]), CaseLabel("almost-b1", 3)),
        (nt([5, 3, 4], [4, 4, 4], [2] * 6), CaseLabel("almost-c2", 3)),
        # the case list on minimal-orbit triples
        (nt([2, 2, 1], [5], [5]), CaseLabel("case-(A)")),
        (nt([3, 2, 2], [3, 2, 2], [7]), CaseLabel("case-(B)")),
        (nt([3, 3, 3, 2, 2, 2], [3] * 5, [4, 4, 4, 3]), CaseLabel("case-(C)")),
        (nt([3, 3, 2, 2, 2], [3, 3, 3, 3], [4, 4, 4]), CaseLabel("case-(D)")),
        (nt([3, 2, 2, 2], [3, 3, 3], [5, 4]), CaseLabel("case-(E)")),
        (nt([3, 2, 2, 2, 2, 2, 2], [3] * 5, [5, 5, 5]), CaseLabel("case-(F)")),
        (nt([3] + [2] * 9, [3] * 7, [6, 5, 5, 5]), CaseLabel("case-(G)")),
        (nt([3, 3, 2, 2, 2, 2, 2], [4, 3, 3, 3, 3], [4, 4, 4, 4]),
         CaseLabel("case-(H)")),
        (nt([3, 2, 2, 2, 2, 2], [4, 3, 3, 3], [5, 4, 4]), CaseLabel("case-(I)")),
        (nt([2] * 5, [4, 3, 3], [5, 5]), CaseLabel("case-(J)")),
        (nt([2] * 8, [4, 3, 3, 3, 3], [6, 5, 5]), CaseLabel("case-(K)")),
        # neighbours and the residual label
        (nt([4, 2], [4, 2], [3, 3]), CaseLabel("neighbouring-of-b1", 2)),
        (nt([4], [2, 2], [2, 2], [2, 1, 1]), CaseLabel("other")),
    ]
    assert len(cases) == 30
    for t, want in cases:
        assert classify_family(t) == want, (t, want)
    passed(10, "30 hand-built profiles labeled correctly across the "
               "special, almost-special, neighbouring and case lists")
