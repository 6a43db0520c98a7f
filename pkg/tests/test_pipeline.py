from atsplab import (
    Distribution,
    InstanceSpec,
    Verdict,
    apply_cycle,
    cycle_decomposition,
    gen_instance,
    ghost_pairing,
    held_karp,
    project_tour,
    run_pipeline,
)
from conftest import uniform_instance


def test_pipeline_on_e1(e1):
    res = run_pipeline(e1, k_best=3)
    assert res.final_tour == (0, 1, 2)
    assert res.final_cost == 3
    assert res.verdict is Verdict.OPTIMAL
    assert res.gap == 0


def test_pipeline_uniform_fallback(uniform4):
    res = run_pipeline(uniform4, k_best=3)
    assert res.found_cycle is None  # no cycle beats the already optimal bound
    assert res.final_cost == 4
    assert res.final_tour == res.upper_bound_tour
    assert res.verdict is Verdict.OPTIMAL


def test_pipeline_sandwich_and_verdicts():
    for seed in range(1, 41):
        n = 4 + seed % 5
        m = uniform_instance(n, seed)
        for ub in ("best", "worst"):
            res = run_pipeline(m, k_best=3, upper_bound=ub)
            assert res.oracle_cost <= res.final_cost <= res.upper_bound_cost
            expected = Verdict.OPTIMAL if res.gap == 0 else Verdict.SUBOPTIMAL
            assert res.verdict is expected


def test_emitted_cycles_are_valid():
    fired = 0
    for seed in range(1, 61):
        n = 4 + seed % 3
        m = uniform_instance(n, seed)
        res = run_pipeline(m, k_best=3, upper_bound="worst")
        if res.found_cycle is None:
            assert res.final_tour == res.upper_bound_tour
            continue
        fired += 1
        cyc = res.found_cycle
        assert len(cyc.vertices) == n
        assert len(set(cyc.vertices)) == n
        assert cyc.value >= n
        assert cyc.value < res.normalized_upper_bound_cost
        # splicing the cycle into the pairing must give one 2n-cycle that
        # projects to a tour of exactly the cycle's value
        succ = apply_cycle(ghost_pairing(n), cyc.vertices)
        cycles = cycle_decomposition(succ)
        assert len(cycles) == 1 and len(cycles[0]) == 2 * n
        assert project_tour(cycles[0], n) == res.final_tour
        assert res.normalized_final_cost == cyc.value
    assert fired > 0  # the loose bound must make the search engage somewhere


def test_final_cost_monotone_in_k():
    ks = [1, 2, 3, 5, None]
    for seed in range(1, 31):
        m = uniform_instance(6, seed)
        finals = [run_pipeline(m, k_best=k, verify=False).final_cost for k in ks]
        assert all(b <= a for a, b in zip(finals, finals[1:]))


def test_unbounded_k_is_exact_at_referee_scale():
    for seed in range(1, 31):
        n = 4 + seed % 3
        m = uniform_instance(n, seed)
        res = run_pipeline(m, k_best=None)
        assert res.verdict is Verdict.OPTIMAL


def test_verification_toggles():
    m = uniform_instance(8, 3)
    res = run_pipeline(m, verify=False)
    assert res.verdict is Verdict.UNVERIFIED
    assert res.oracle_cost is None and res.gap is None
    res2 = run_pipeline(m, verify=True, oracle_limit=6)
    assert res2.verdict is Verdict.UNVERIFIED  # instance above the oracle gate


def test_negative_entries_are_handled_in_original_units():
    spec = InstanceSpec(Distribution.NEGATIVE_SHIFTED, n=6, seed=9, lo=-40, hi=40)
    m = gen_instance(spec)
    res = run_pipeline(m, k_best=3)
    assert res.shift > 0
    assert res.oracle_cost == held_karp(m).optimal_cost
    assert res.final_cost >= res.oracle_cost
    assert res.normalized_final_cost == res.final_cost + 6 * res.shift


def test_pipeline_is_deterministic():
    m = uniform_instance(7, 21)
    assert run_pipeline(m, k_best=3) == run_pipeline(m, k_best=3)
