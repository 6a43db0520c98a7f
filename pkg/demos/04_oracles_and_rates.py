"""
Measuring the claim
===================

The search is supposed to find an optimal tour whenever one cheaper than
the bound exists.  This demo measures how often that actually happens as
the retention width K grows, against exact oracles.  Unbounded retention
is provably exhaustive (and exponential); the question the harness asks is
whether any polynomial K suffices.
"""

from atsplab import (
    Distribution,
    InstanceSpec,
    Verdict,
    brute_force_atsp,
    gen_instance,
    held_karp,
    run_pipeline,
)

# the two oracles agree; everything downstream is judged against them
m = gen_instance(InstanceSpec(Distribution.UNIFORM, n=8, seed=1))
print("oracle cross-check:",
      brute_force_atsp(m).optimal_cost, "==", held_karp(m).optimal_cost)

seeds = range(1, 101)
print(f"\noptimality rate over {len(seeds)} uniform instances:")
print(f"{'n':>3} {'K':>5} {'cycles fired':>13} {'optimal':>10}")
for n in (5, 6, 8):
    for k in (1, 3, 6, None):
        if k is None and n > 6:
            continue  # unbounded retention is exponential; keep it at toy size
        fired = optimal = 0
        for seed in seeds:
            matrix = gen_instance(InstanceSpec(Distribution.UNIFORM, n=n, seed=seed))
            r = run_pipeline(matrix, k_best=k)
            fired += r.found_cycle is not None
            optimal += r.verdict is Verdict.OPTIMAL
        label = "inf" if k is None else k
        print(f"{n:>3} {label:>5} {fired:>13} {optimal:>6}/100")

print("""
Reading the table: with small K the cheap-paths-only retention starves the
table of the long paths a full tour needs, so the search rarely improves on
the greedy bound; with unbounded K it is exact but no longer polynomial.
""")
