"""Count orientable and spin manifolds over a few dimension vectors."""
import time

from grbott import classify

for dims in [(1,), (3,), (2, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1), (3, 1, 1)]:
    t = time.perf_counter()
    raw = classify(dims)
    orbits = classify(dims, dedupe=True)
    print(f"{str(dims):14} raw {raw['total']:5d} orient {raw['orientable']:4d} "
          f"spin {raw['spin']:4d} | orbits {orbits['total']:4d} "
          f"({time.perf_counter() - t:.2f}s)")
