"""The fan of the small cover and the labelled digraph of a matrix."""
from grbott import (VectorMatrix, build_digraph, build_fan, is_flag, is_smooth,
                    orientable_via_digraph, to_dot)
from grbott.fan import minimal_non_faces

A = VectorMatrix.unipotent((2, 1), {(0, 1): [1]})
f = build_fan(A)
print("rays:", f.rays)
print("smooth:", is_smooth(f), " flag:", is_flag(f))
print("minimal non-faces:", [bin(m) for m in minimal_non_faces(f)])

g = build_digraph(A)
print("orientable via digraph:", orientable_via_digraph(g))
print(to_dot(g))
