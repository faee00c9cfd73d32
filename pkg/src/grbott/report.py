"""Aggregate invariant record and its JSON form.

The JSON keys are a fixed contract (see ``REPORT_KEYS``); ``digraph_dot`` and
``higher_homotopy`` appear only when requested.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from typing import Optional

from .charclasses import is_orientable, is_spin, total_sw, w1_closed
from .cohomology import build_ring
from .digraph import build_digraph, to_dot
from .fan import build_fan, is_flag, is_smooth
from .fungroup import h1, presentation
from .model import VectorMatrix, normalize, remark_l_order, validate

REPORT_KEYS = (
    "valid", "dims", "permutation", "normalized_dims", "normalized_rows",
    "remark_l_ordering", "orientable", "spin", "w1", "w2", "total_sw", "betti",
    "pi1", "h1", "flags", "fan",
)
OPTIONAL_KEYS = ("digraph_dot", "higher_homotopy")


class InvalidCharacteristic(ValueError):
    """The matrix fails the principal-minor condition."""


@dataclass
class Report:
    valid: bool
    dims: list
    permutation: list
    normalized_dims: list
    normalized_rows: list
    remark_l_ordering: bool
    orientable: bool
    spin: Optional[bool]
    w1: list
    w2: list
    total_sw: list
    betti: list
    pi1: dict
    h1: dict
    flags: dict
    fan: dict
    digraph_dot: Optional[str] = None
    higher_homotopy: Optional[dict] = None

    def to_json(self) -> dict:
        out = asdict(self)
        for key in OPTIONAL_KEYS:
            if out[key] is None:
                del out[key]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "Report":
        if isinstance(data, str):
            data = json.loads(data)
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown report keys {sorted(unknown)}")
        return cls(**data)


def build_report(A: VectorMatrix, dot: bool = False, homotopy: Optional[int] = None) -> Report:
    if not validate(A):
        raise InvalidCharacteristic("matrix does not define a small cover")
    perm, N = normalize(A)
    ring = build_ring(N)
    sw = total_sw(N, ring)
    assert sw.w1 == w1_closed(N, ring)
    orientable = is_orientable(N)
    spin = is_spin(N) if orientable else None
    if spin is not None:
        assert spin == (not sw.w2)
    pres = presentation(N)
    f = build_fan(N)
    hh = None
    if homotopy is not None:
        from .fungroup import higher_homotopy
        hh = {"j": homotopy, "group": higher_homotopy(N.dims, homotopy)}
    return Report(
        valid=True,
        dims=list(A.dims),
        permutation=list(perm),
        normalized_dims=list(N.dims),
        normalized_rows=[list(r) for r in N.rows],
        remark_l_ordering=remark_l_order(N) is not None,
        orientable=orientable,
        spin=spin,
        w1=sw.w1.to_json(),
        w2=sw.w2.to_json(),
        total_sw=sw.to_json(),
        betti=ring.betti(),
        pi1=pres.to_json(),
        h1=h1(N).to_json(),
        flags=dict(pres.flags),
        fan={"rays": [list(r) for r in f.rays], "flag": is_flag(f), "smooth": is_smooth(f)},
        digraph_dot=to_dot(build_digraph(N)) if dot else None,
        higher_homotopy=hh,
    )


def format_report(r: Report) -> str:
    """Human-readable summary."""

    def poly(monos):
        if not monos:
            return "0"
        terms = []
        for m in monos:
            t = "*".join(f"z{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            terms.append(t or "1")
        return " + ".join(terms)

    total = " + ".join(poly(c) for c in r.total_sw if c) or "0"
    h1_parts = ([f"Z^{r.h1['free_rank']}"] if r.h1["free_rank"] else []) + [f"Z{t}" for t in r.h1["torsion"]]
    lines = [
        f"dims:              {r.dims}",
        f"normalized dims:   {r.normalized_dims} (block order {r.permutation})",
        "normalized rows:   " + "; ".join(" ".join(map(str, row)) for row in r.normalized_rows),
        f"orientable:        {r.orientable}",
        f"spin:              {'n/a' if r.spin is None else r.spin}",
        f"w1:                {poly(r.w1)}",
        f"w2:                {poly(r.w2)}",
        f"total SW class:    {total}",
        f"betti (mod 2):     {r.betti}",
        f"pi1 generators:    {r.pi1['generators']}",
        "pi1 relators:      " + ", ".join(_word(w) for w in r.pi1["relators"]),
        f"H1:                {' + '.join(h1_parts) or '0'}",
        "flags:             " + ", ".join(f"{k}={v}" for k, v in sorted(r.flags.items())),
        f"fan:               smooth={r.fan['smooth']}, flag={r.fan['flag']}",
        f"remark-l ordering: {r.remark_l_ordering}",
    ]
    if r.higher_homotopy is not None:
        lines.append(f"pi_{r.higher_homotopy['j']}:              {r.higher_homotopy['group']}")
    out = "\n".join(lines) + "\n"
    if r.digraph_dot is not None:
        out += "\n" + r.digraph_dot
    return out


def _word(w) -> str:
    return "".join(f"a{abs(g)}" + ("^-1" if g < 0 else "") for g in w)
