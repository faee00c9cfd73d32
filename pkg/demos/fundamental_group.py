"""Generators, relators and first homology of the fundamental group."""
from grbott import (VectorMatrix, alpha_words, group_properties, h1,
                    higher_homotopy, relators)
from grbott.fungroup import h1_closed, h1_snf

A = VectorMatrix.unipotent((2, 1, 1), {(0, 1): [1], (0, 2): [1], (1, 2): [1]})
print("alphas:", alpha_words(A))
for r in relators(A):
    print("  relator", r)
print("H1:", h1(A), " closed:", h1_closed(A), " snf:", h1_snf(A))
print(group_properties(A))
print("pi_3:", higher_homotopy(A.dims, 3))

klein = VectorMatrix.unipotent((1, 1), {(0, 1): [1]})
print("klein bottle H1:", h1(klein))
