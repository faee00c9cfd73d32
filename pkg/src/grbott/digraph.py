"""Labeled multidigraph of a vector matrix and its DOT export."""

from __future__ import annotations

from dataclasses import dataclass

from .model import VectorMatrix


@dataclass(frozen=True)
class LabeledDigraph:
    """Vertices ``0..k-1``; edges ``(source, target, column, label)``.

    For ``i != j`` there is one edge ``i -> j`` per column ``l`` of block ``j``
    with label ``a(i, j, l)``; vertex ``i`` carries ``n_i`` loops labeled 1.
    """

    k: int
    edges: tuple[tuple[int, int, int, int], ...]

    def out_degree(self, v: int) -> int:
        return sum(1 for s, _, _, lab in self.edges if s == v and lab == 1)


def build_digraph(A: VectorMatrix) -> LabeledDigraph:
    edges = []
    for i in range(A.k):
        for j in range(A.k):
            for l in range(A.dims[j]):
                edges.append((i, j, l, 1 if i == j else A.a(i, j, l)))
    return LabeledDigraph(A.k, tuple(edges))


def orientable_via_digraph(g: LabeledDigraph) -> bool:
    """Every vertex has an odd number of outgoing label-1 edges."""
    return all(g.out_degree(v) % 2 == 1 for v in range(g.k))


def to_dot(g: LabeledDigraph, name: str = "D") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(g.k):
        lines.append(f"  w{v + 1};")
    for s, t, l, lab in sorted(g.edges):
        attrs = f'label="{lab}", column={l + 1}'
        if lab == 0:
            attrs += ", style=dotted"
        lines.append(f"  w{s + 1} -> w{t + 1} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
