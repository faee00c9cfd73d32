"""Cohomology ring and Stiefel-Whitney classes for small examples."""
from grbott import (VectorMatrix, build_ring, is_orientable, is_spin,
                    poincare_polynomial, total_sw, total_sw_recursive)

for dims, upper in [((2, 1), {(0, 1): [1]}),
                    ((2, 2), {(0, 1): [1, 0]}),
                    ((1, 1, 1), {(0, 1): [1], (0, 2): [1], (1, 2): [0]})]:
    A = VectorMatrix.unipotent(dims, upper)
    ring = build_ring(A)
    sw = total_sw(A, ring)
    print(dims, upper)
    print("  poincare:", poincare_polynomial(ring, method="basis"))
    print("  w1 =", sw.w1, "  w2 =", sw.w2)
    print("  recursive agrees:", sw.total == total_sw_recursive(A, ring).total)
    orient = is_orientable(A)
    print("  orientable:", orient, " spin:", is_spin(A) if orient else None)
