"""
Tours, ghosts, and the pairing involution
=========================================

Shows how an asymmetric tour interleaves with its ghosts into a symmetric
tour of identical cost, and why the projection back is unambiguous.
"""

from atsplab import (
    Distribution,
    InstanceSpec,
    Xoshiro256StarStar,
    build_symmetric,
    gen_instance,
    ghost_pairing,
    lift_tour,
    normalize,
    project_tour,
    random_tour,
    successor_cost,
    tour_cost,
)

n = 5
matrix = gen_instance(InstanceSpec(Distribution.UNIFORM, n=n, seed=11, lo=1, hi=40))
norm = normalize(matrix)
sym = build_symmetric(norm)

sigma = ghost_pairing(n)
print("pairing involution:", sigma)
print("its cost as a successor structure over the symmetric instance:",
      successor_cost(sym.entries, sigma), "(every pair rides a free arc)")

rng = Xoshiro256StarStar(2)
for trial in range(3):
    tour = random_tour(n, rng)
    lifted = lift_tour(tour, sym)
    print(f"\ntour {tour}  cost {tour_cost(norm.matrix.entries, tour)}")
    print(f"  lifts to {lifted.order}  cost {lifted.cost}")
    print(f"  projects back to {project_tour(lifted.order, n)}")
    reversed_presentation = tuple(reversed(lifted.order))
    print(f"  reversed presentation projects to {project_tour(reversed_presentation, n)} "
          "(orientation is normalized)")
