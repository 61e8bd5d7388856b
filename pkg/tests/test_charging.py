import math
import random
from fractions import Fraction

import pytest

from conftest import RandomFair, random_tree_sequence
from palette import engine, harness
from palette.adversaries import (
    RevealSequence,
    nf_tree_worstcase,
    path_edges,
    rp_strategy_mod3,
    rp_strategy_oddeven,
)
from palette.charging import (
    ChargingError,
    build_ledger,
    case1_polynomial,
    compute_l,
    critical_edges,
    edge_classes,
    fair_ratio,
    fair_tree_charge,
    ff_tree_charge,
    rp_competitive_ratio,
    rp_path_charge,
)
from palette.exact import PHI_OVER_SQRT5
from palette.graph import build_graph
from palette.oracle import OptWitness, opt_tree


def ff_trace(edges, k):
    return engine.run("ff", RevealSequence(edges=edges, k=k))


# ---------------------------------------------------------------------------
# the plain ledger


def test_ledger_all_colored():
    trace = ff_trace([(0, 1), (1, 2)], 2)
    witness = opt_tree(trace.graph, 2)
    C = Fraction(2, 3)
    ledger = build_ledger(trace, witness, C)
    assert not ledger.minus
    assert sum(ledger.surplus[e] for e in ledger.plus) == 2 * (1 - C)


def test_ledger_rejected_opt_edge_starts_at_zero():
    trace = ff_trace([(0, 1), (1, 2), (3, 4), (2, 3)], 2)
    witness = opt_tree(trace.graph, 2)
    ledger = build_ledger(trace, witness, Fraction(2, 3))
    assert ledger.initial[3] == 0
    assert 3 in ledger.minus


def test_ledger_c_zero_everything_satisfied():
    trace = ff_trace([(0, 1), (1, 2), (3, 4), (2, 3)], 2)
    witness = opt_tree(trace.graph, 2)
    ledger = build_ledger(trace, witness, Fraction(0))
    assert not ledger.minus


def test_ledger_rejects_bad_ratio():
    trace = ff_trace([(0, 1)], 2)
    with pytest.raises(ValueError):
        build_ledger(trace, opt_tree(trace.graph, 2), Fraction(3, 2))


def test_edge_class_tallies():
    trace = ff_trace([(0, 1), (1, 2), (3, 4), (2, 3)], 2)
    witness = opt_tree(trace.graph, 2)
    klass, tallies = edge_classes(trace, witness)
    assert klass[3] == "opt-only"
    for v, t in enumerate(tallies):
        assert t["d_c"] == t["d_d"] + t["d_s"]


# ---------------------------------------------------------------------------
# first-fit on trees


def test_ff_charge_hand_instance():
    trace = ff_trace([(0, 1), (1, 2), (3, 4), (2, 3)], 2)
    witness = opt_tree(trace.graph, 2)
    report = ff_tree_charge(trace, witness)
    assert report.passed
    row = next(r for r in report.rows if r.edge == 3)
    assert row.klass == "opt-only"
    assert row.v_f == Fraction(1, 2) and row.margin == 0


def test_ff_charge_vacuous_without_rejections():
    trace = ff_trace([(0, 1), (1, 2)], 2)
    report = ff_tree_charge(trace, opt_tree(trace.graph, 2))
    assert report.passed and report.min_margin == 0  # doubles sit exactly at C


def test_ff_charge_refuses_foreign_traces():
    seq = RevealSequence(edges=[(0, 1), (1, 2), (2, 3)], k=2)
    trace = engine.run("nf", seq)  # next-fit colors 1,2,1; first-fit would too
    # craft a trace first-fit cannot produce: reject a colorable edge
    trace = engine.run(RandomFair(), seq, seed=11)
    while [s.color for s in trace.steps] == [1, 2, 1]:
        trace = engine.run(RandomFair(), seq, seed=random.random())
    with pytest.raises(ValueError):
        ff_tree_charge(trace, opt_tree(trace.graph, 2))


def test_ff_charge_random_suite():
    rng = random.Random(55)
    done = 0
    for t in range(500):
        seq = random_tree_sequence(rng.randrange(10**9), 14, rng.choice([2, 3, 4]))
        trace = engine.run("ff", seq)
        witness = opt_tree(trace.graph, seq.k)
        report = ff_tree_charge(trace, witness)
        assert report.passed, (seq.edges, seq.k)
        done += 1
    assert done == 500


def test_ff_charge_every_root():
    rng = random.Random(56)
    for t in range(40):
        seq = random_tree_sequence(rng.randrange(10**9), 10, rng.choice([2, 3]))
        trace = engine.run("ff", seq)
        witness = opt_tree(trace.graph, seq.k)
        for root in range(trace.graph.num_vertices):
            assert ff_tree_charge(trace, witness, root=root).passed


def test_ff_strict_ratio_on_trees():
    rng = random.Random(57)
    for t in range(200):
        k = rng.choice([2, 3, 4])
        seq = random_tree_sequence(rng.randrange(10**9), 14, k)
        trace = engine.run("ff", seq)
        opt = opt_tree(trace.graph, k).count
        assert Fraction(trace.colored_count, opt) >= Fraction(k - 1, k)


def test_ff_charge_alternative_witnesses():
    """The certificate must hold against any maximum witness, not just the
    oracle's favourite; sweep all of them on small instances."""
    from itertools import combinations

    from palette.oracle import _colorable

    rng = random.Random(58)
    swept = 0
    for t in range(60):
        k = rng.choice([2, 3])
        seq = random_tree_sequence(rng.randrange(10**9), 7, k)
        trace = engine.run("ff", seq)
        g = trace.graph
        best = opt_tree(g, k).count
        if g.num_edges > 10:
            continue
        for subset in combinations(range(g.num_edges), best):
            coloring = _colorable(g, k, subset)
            if coloring is None:
                continue
            witness = OptWitness(frozenset(subset), coloring, best)
            assert ff_tree_charge(trace, witness).passed
            swept += 1
    assert swept > 50


# ---------------------------------------------------------------------------
# fair algorithms on trees


def test_fair_ratio_values():
    assert fair_ratio(4) == Fraction(2, 3)
    assert fair_ratio(9) == Fraction(4, 5)
    assert abs(fair_ratio(5) - (2 * math.sqrt(5) - 2) / (2 * math.sqrt(5) - 1)) < 1e-12


def test_fair_charge_tight_on_nf_worstcase():
    trace = engine.run("nf", nf_tree_worstcase(4, 6))
    report = fair_tree_charge(trace, opt_tree(trace.graph, 4))
    assert report.passed
    assert report.min_margin == 0


def test_fair_charge_margin_shrinks_with_size():
    mins = []
    for N in (2, 5):
        trace = engine.run("nf", nf_tree_worstcase(4, N))
        report = fair_tree_charge(trace, opt_tree(trace.graph, 4))
        assert report.passed
        mins.append(min(r.margin for r in report.rows if r.margin is not None))
    assert all(mg == 0 for mg in mins)  # the construction is tight at every size


def test_fair_charge_random_suite():
    rng = random.Random(60)
    for t in range(120):
        k = rng.choice([4, 9])
        seq = random_tree_sequence(rng.randrange(10**9), 12, k)
        alg = rng.choice(["nf", "ff", None])
        trace = engine.run(alg or RandomFair(), seq, seed=t)
        report = fair_tree_charge(trace, opt_tree(trace.graph, k))
        assert report.passed


def test_fair_strict_ratio_on_trees():
    rng = random.Random(61)
    for t in range(100):
        k = rng.choice([4, 9])
        seq = random_tree_sequence(rng.randrange(10**9), 12, k)
        trace = engine.run(RandomFair(), seq, seed=t)
        opt = opt_tree(trace.graph, k).count
        assert Fraction(trace.colored_count, opt) >= fair_ratio(k)


def test_fair_charge_refuses_unfair_trace():
    from conftest import RejectAll

    seq = RevealSequence(edges=[(0, 1), (1, 2)], k=2)
    trace = engine.run(RejectAll(), seq)
    with pytest.raises(ValueError):
        fair_tree_charge(trace, opt_tree(trace.graph, 2))


def test_fair_path_floor():
    # on two-colorable paths every fair run keeps at least half of optimum
    rng = random.Random(62)
    for t in range(60):
        m = rng.randrange(1, 14)
        edges = harness.random_reveal(rng, path_edges(m))
        trace = engine.run(RandomFair(), RevealSequence(edges=edges, k=2), seed=t)
        assert 2 * trace.colored_count >= m


def test_case1_polynomial_floor():
    for k in (4, 9, 16, 25):
        C = fair_ratio(k)
        s = math.isqrt(k)
        for z in range(k + 1):
            assert case1_polynomial(k, z, C) >= C * k
        assert case1_polynomial(k, k - s, C) == C * k


# ---------------------------------------------------------------------------
# the pair strategy on paths


def test_rp_ratio_formula():
    assert rp_competitive_ratio(Fraction(1)) == Fraction(2, 3)
    assert rp_competitive_ratio(Fraction(1, 2)) == Fraction(3, 4)
    assert rp_competitive_ratio(PHI_OVER_SQRT5) == Fraction(4, 5)


def test_rp_charge_worked_example():
    order = RevealSequence(edges=[(0, 1), (2, 3), (1, 2)], k=2)
    report = rp_path_charge(order, PHI_OVER_SQRT5)
    assert report.passed
    crit = next(r for r in report.rows if r.klass == "critical")
    assert crit.case == "2"
    assert crit.v_i == Fraction(3, 5)
    assert crit.v_f == Fraction(4, 5) and crit.margin == 0


paths_and_expected = [
    (rp_strategy_mod3(13), "1"),
    (rp_strategy_oddeven(13), "2"),
]


@pytest.mark.parametrize("order,case", paths_and_expected)
def test_rp_charge_case_structure(order, case):
    report = rp_path_charge(order, Fraction(7, 10))
    assert report.passed
    cases = {r.case for r in report.rows if r.klass == "critical"}
    assert cases == {case}


def test_rp_charge_p_one_always_passes():
    report = rp_path_charge(rp_strategy_oddeven(21), Fraction(1))
    assert report.passed
    # deterministic limit: same-parity criticals keep value one
    for r in report.rows:
        if r.klass == "critical":
            assert r.v_i == 1


def test_rp_charge_rejects_non_path():
    star = RevealSequence(edges=[(0, 1), (0, 2), (0, 3)], k=2)
    with pytest.raises(Exception):
        rp_path_charge(star, Fraction(7, 10))


def test_rp_charge_random_orders_at_optimum():
    rng = random.Random(63)
    for t in range(150):
        m = rng.randrange(1, 60)
        edges = harness.random_reveal(rng, path_edges(m))
        report = rp_path_charge(RevealSequence(edges=edges, k=2), PHI_OVER_SQRT5)
        assert report.passed


def test_rp_charge_monte_carlo_initial_values():
    """Simulated per-edge colored frequencies agree with the analytic ledger."""
    order = rp_strategy_mod3(16)
    p = 0.7236068
    trials = 10_000
    freq = harness.estimate_initial_values(engine.RandomParity(p), order, trials, seed=3)
    report = rp_path_charge(order, p)
    for row in report.rows:
        expect = float(row.v_i)
        sigma = math.sqrt(max(expect * (1 - expect), 1e-9) / trials)
        assert abs(freq[row.edge] - expect) <= 3 * sigma + 0.01


def test_compute_l_examples():
    order = RevealSequence(edges=[(0, 1), (1, 2), (2, 3), (3, 4)], k=2)
    assert [compute_l(order, i) for i in range(4)] == [1, 2, 3, 4]
    mixed = RevealSequence(edges=[(0, 1), (2, 3), (1, 2)], k=2)
    assert compute_l(mixed, 0) == 1
    with pytest.raises(ValueError):
        compute_l(mixed, 2)


def test_critical_edges_detection():
    order = RevealSequence(edges=[(0, 1), (2, 3), (1, 2)], k=2)
    assert critical_edges(order) == {2}
    chain = RevealSequence(edges=path_edges(5), k=2)
    assert critical_edges(chain) == set()


def test_rp_charge_bisection_matches_formula():
    tight = [rp_strategy_mod3(28), rp_strategy_oddeven(31)]
    for p in (Fraction(1, 2), Fraction(3, 5), Fraction(9, 10)):
        lo, hi = Fraction(0), Fraction(1)
        for _ in range(30):
            mid = (lo + hi) / 2
            if all(rp_path_charge(o, p, C=mid).passed for o in tight):
                lo = mid
            else:
                hi = mid
        assert abs(lo - rp_competitive_ratio(p)) < Fraction(1, 10**6)
