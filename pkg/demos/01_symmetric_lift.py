"""
Building the symmetric lift
===========================

Walks one small asymmetric instance through normalization, the 2n x 2n
symmetric construction, and the column permutation that exposes the
zero-diagonal search space.
"""

from atsplab import (
    INF,
    AsymCostMatrix,
    SymmetricVariant,
    build_symmetric,
    ghost_pairing,
    normalize,
    permuted_matrix,
)


def show(grid, label):
    print(f"\n{label}:")
    for row in grid:
        print("  " + " ".join(f"{'inf' if v == INF else v:>4}" for v in row))


# an instance with a negative arc, so normalization has something to do
matrix = AsymCostMatrix.from_rows(
    [
        [INF, -2, 4, 6],
        [3, INF, 1, 5],
        [7, 2, INF, -1],
        [4, 8, 2, INF],
    ]
)
show(matrix.entries, "original costs (diagonal blocked)")

norm = normalize(matrix)
print(f"\nsmallest arc {norm.original_min}, shift applied {norm.shift} "
      f"(every tour moved by n * shift = {matrix.n * norm.shift})")
show(norm.matrix.entries, "normalized costs, all arcs >= 1")

# cities 0..3 pair with ghosts 4..7; cross blocks carry the costs,
# same-kind blocks are blocked
sym = build_symmetric(norm, SymmetricVariant.ZERO_DIAG)
show(sym.entries, "symmetric instance, pairing arcs cost 0")

# permuting columns by the pairing swaps the blocks: the diagonal becomes
# all zero and the finite support is the instance and its transpose
p = permuted_matrix(sym, ghost_pairing(matrix.n))
show(p.entries, "pairing-permuted matrix (the cycle-search space)")

n = matrix.n
city_block = tuple(row[:n] for row in p.entries[:n])
ghost_block = tuple(row[n:] for row in p.entries[n:])
source = tuple(
    tuple(0 if i == j else norm.matrix.entries[i][j] for j in range(n))
    for i in range(n)
)
transpose = tuple(tuple(source[j][i] for j in range(n)) for i in range(n))
print("\ncity block equals the zero-diagonal source:", city_block == source)
print("ghost block equals its transpose:", ghost_block == transpose)
