"""Build a few vector matrices, check them, and put a scrambled one back in order."""
from grbott import InvalidMatrix, VectorMatrix, normalize, validate

# dims (2,1): the second block twists the first
A = VectorMatrix.unipotent((2, 1), {(0, 1): [1]})
print(A.dumps())
print("minors:", validate(A), " vertices:", validate(A, method="vertices"))

# a zero block on the diagonal can't give a manifold
bad = VectorMatrix.from_json({"dims": [1, 1], "rows": [[1, 1], [1, 1]]})
print("bad matrix valid?", validate(bad))

# relabel the blocks and recover an upper unipotent form
B = VectorMatrix.unipotent((1, 2, 1), {(0, 1): [1, 0], (0, 2): [1], (1, 2): [0]})
C = B.conjugate([2, 0, 1])
print("scrambled upper unipotent?", C.is_upper_unipotent())
perm, D = normalize(C)
print("perm", perm, "->", D.dumps(), D.is_upper_unipotent())

try:
    VectorMatrix.from_json({"dims": [2, 1], "rows": [[1, 1], [0, 1]]})
except InvalidMatrix as e:
    print("rejected:", e)
