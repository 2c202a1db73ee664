"""Recompute the reference tables and compare with the embedded expected values.

Each table is a list of rows; a row records what was expected, what was
computed and a status.  Distances that are too expensive to compute exactly on
a desktop are checked as upper bounds: a codeword of at most the expected weight
must be found, and a partial low-weight search reports how far the exclusion got.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .codes import IdealSpec, code_from_ideal, count_group_codes, dihedral_dual_ideal
from .distance import BudgetExceeded, estimate_distance, min_distance
from .galg import build_iso, left_ideal_from_element
from .groups import Dihedral
from .parse import parse_element, parse_group
from .quantum import css_build, css_check
from .wa import decompose_group

__all__ = ["TABLES", "ReproRow", "ReproReport", "run_repro"]

TABLES = ("counts", "d4c4", "dncr-table", "dndm-table", "css16", "css20")

# (group, expected number of group codes over F_3)
_COUNTS = [
    ("C5", 4),
    ("D4", 96),
    ("D4xC5", 131072),
    ("D4xD4", 23335966605312),
]

_FLAGSHIP = (
    "x+z-z^2+x^2+xy-xz+xz^2-x^3+yz^2-x^2y+z^3-x^2z^2-xyz^2+xz^3+x^3z"
    "-x^2yz^2+xyz^3+x^3yz-x^3z^3"
)

# (group, generator, n, k, d, distance mode); mode "exact" enumerates the dual
# code, "upper" only looks for a witness.
_DNCT = [
    ("D4xC4", _FLAGSHIP, 32, 18, 8, "exact"),
    (
        "D5xC4",
        "y+z-x-yz+yz^2+x^4y+z^3+xz-yz^3-x^3y-x^2z-x^3-x^3yz+x^2y+x^2z^3-xy+x^3z^3+x^4z-x^4z^3-xyz^3",
        40, 21, 10, "exact",
    ),
    (
        "D4xC5",
        "1-y-x+x^2-yz^2+x^2y-x^2z^2+xy-yz^4+xz^4-x^2z^4+x^3yz^4-yz-xz-x^3z^4-x^2z-x^3yz-xyz^4-yz^3"
        "-xz^3+x^3z-x^2z^3-x^3yz^3+xyz+x^3z^3+xyz^3",
        40, 25, 8, "exact",
    ),
    (
        "D5xC5",
        "1+z^2-yz^2-x^4y+z^4-xz^2-yz^4-x^3y+z-xz^4+x^3-yz+x^3yz^2+z^3-xz-x^3z^2+x^4-yz^3+x^3yz^4"
        "-x^2z-x^3z^4+x^4yz^3+xyz^2+x^3yz^3+x^2yz+xyz^4-x^3z^3+xyz-x^4z^3",
        50, 29, 10, "exact",
    ),
]

_DNDM = [
    (
        "D7xD2",
        "-x^4cd + x^4ycd + x^5cd - x^3yc + x^5c - x^3yd - x^2ycd - x^5ycd - x^6cd + x^3c - x^5yc + x^3d"
        " - x^2yd + x^6d + x^2cd + x^6ycd - xyc + x^2d - x^6yd - ycd + xc + yc + yd + cd - y - c - d - 1",
        56, 31, 11, "upper",
    ),
    (
        # x^6yd enters once; with a doubled term the ideal has dimension 51
        "D8xD2",
        "-1+x+d-x^2-xd-x^3-x^5+x^4y+cd-x^2c+x^4d-x^6-xyc+xyd+x^7y-x^5y+xcd+x^3c-x^5c+x^3d-x^6yc"
        "-x^4yc+x^6yd+x^4cd-x^6c+xycd-x^7yc-x^5yc-x^7yd+x^5yd-x^3y-x^5cd-x^7d-x^6ycd-x^7ycd"
        "-x^3yd+x^7cd+x^3ycd+x^2yd",
        64, 35, 12, "upper",
    ),
    (
        "D4xD4",
        "-x^2yc^2d + x^2yc^3 + x^3c^2 + x^2ycd + x^3cd -x^2c^2d -xyc^2d -x^3yc^2d + x^2c^3 + xyc^3"
        " + x^3yc^3 + x^3c + xyc^2 + x^3yc^2 - x^2cd - xycd + x^3d - x^2c^3d + yc^2d + yc^3 + x^2y"
        " + x^3 + x^2c + xyc -x^3yc + xc^2 - xcd + xyd - yc^3d - x^3y - xc - c^2 - y - 1",
        64, 44, 8, "exact",
    ),
    (
        "D4xD4",
        "x^2yc^2d - x^3c^2d - x^2yc^3 - x^3c^3 - x^2yc^2 - x^3cd + x^2yc^3d - x^3c^3d + x^3yc^2d"
        " - x^3yc^3 - x^3c + x^2c^2 - xyc^2 + x^3yc^2 - xycd + x^3ycd + x^2c^3d - xyc^3d - yc^2d"
        " + xc^3 - x^3 + x^2c + x^3yc - xc^2 - yc^2 + xcd + ycd + x^2d - xyd + x^3yd - yc^3d + c^3"
        " - x^2 + xy - x^3y + yc - c^2 + cd - xd - c^3d + y - c - d",
        64, 45, 8, "exact",
    ),
]

# enough for the dual enumeration of every "exact" row above (largest is 3^21)
_EXACT_BUDGET = 3**21


@dataclass
class ReproRow:
    label: str
    expected: dict
    got: dict
    status: str  # "match", "mismatch", "upper-bound" or "error"
    seconds: float = 0.0
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("match", "upper-bound")

    def to_json(self) -> dict:
        out = {"label": self.label, "expected": self.expected, "got": self.got, "status": self.status,
               "seconds": round(self.seconds, 3)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ReproReport:
    table: str
    rows: list[ReproRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def to_json(self) -> dict:
        return {"table": self.table, "ok": self.ok, "rows": [r.to_json() for r in self.rows]}

    def __str__(self):
        lines = [f"{self.table}: {'all rows match' if self.ok else 'MISMATCH'}"]
        for r in self.rows:
            lines.append(f"  [{r.status:>11}] {r.label}: expected {r.expected}, got {r.got} ({r.seconds:.2f}s)")
            if r.note:
                lines.append(f"                {r.note}")
        return "\n".join(lines)


def _counts(**_) -> list[ReproRow]:
    rows = []
    for g, want in _COUNTS:
        t = time.perf_counter()
        got = count_group_codes(decompose_group(3, parse_group(g)))
        row = ReproRow(f"F_3[{g}]", {"count": want}, {"count": got}, "match" if got == want else "mismatch",
                       time.perf_counter() - t)
        if g == "D4xC5" and got != want:
            row.note = "2^4 * 2^4 * 6 * 84 = 129024; the expected value does not equal this product"
        rows.append(row)
    return rows


def _code_row(group, elem, n, k, d, mode, threads, budget) -> ReproRow:
    t = time.perf_counter()
    spec = parse_group(group)
    code = left_ideal_from_element(parse_element(elem, spec, 3))
    label = f"{group} [{n}, {k}, {d}]"
    expected = {"n": n, "k": k, "d": d}
    got = {"n": code.n, "k": code.k}
    if (code.n, code.k) != (n, k):
        return ReproRow(label, expected, got, "mismatch", time.perf_counter() - t)
    if mode == "exact":
        r = min_distance(code, "exhaustive", budget=budget or _EXACT_BUDGET, threads=threads)
        got["d"] = {"value": r.value, "status": r.status}
        return ReproRow(label, expected, got, "match" if r.value == d else "mismatch", time.perf_counter() - t)
    est = estimate_distance(code, trials=2000)
    lower = 1
    try:  # how far a low-weight exclusion gets within the budget
        min_distance(code, "lowweight", budget=budget or 2**26, threads=threads)
    except BudgetExceeded as exc:
        lower = exc.args[1]
    got["d"] = {"value": est.value, "status": "upper_bound", "lower": lower}
    note = f"witness of weight {est.value}; no codeword below weight {lower}"
    status = "upper-bound" if lower <= d and est.value <= d else "mismatch"
    return ReproRow(label, expected, got, status, time.perf_counter() - t, note)


def _d4c4(threads=1, budget=None) -> list[ReproRow]:
    return [_code_row(*_DNCT[0], threads, budget)]


def _dncr(threads=1, budget=None) -> list[ReproRow]:
    return [_code_row(*row, threads, budget) for row in _DNCT[1:]]


def _dndm(threads=1, budget=None) -> list[ReproRow]:
    return [_code_row(*row, threads, budget) for row in _DNDM]


def css_example_ideals(n: int) -> tuple[IdealSpec, IdealSpec]:
    """The pair ``(C, D)`` of dihedral ideals over F_3 used for ``n = 16`` or ``n = 20``."""
    iso = build_iso(3, Dihedral(n))
    dec, S = iso.decomposition, iso.summands
    I2 = np.eye(2, dtype=int)
    E11, E12 = [[1, 0]], [[0, 1]]
    lin_c = [[[1]], [[1]], [[0]], [[1]]]
    lin_d = [[[1]], [[1]], [[1]], [[0]]]
    if n == 16:
        F81 = S[6].field
        beta = F81.primitive_element()
        C = IdealSpec(dec, lin_c + [I2, E11, [[1, F81.neg(beta)]]])
        D = IdealSpec(dec, lin_d + [I2, I2, [[1, beta]]])
    elif n == 20:
        F9 = S[5].field
        a4, a5 = S[5].label[2], S[6].label[2]  # alpha + 1/alpha on the two quartic blocks
        lam4 = F9.neg(F9.mul(2, F9.inv(a4)))
        lam5 = F9.neg(F9.mul(a5, F9.inv(2)))
        C = IdealSpec(dec, lin_c + [I2, [[1, lam4]], [[1, lam5]], E11])
        D = IdealSpec(dec, lin_d + [E12, I2, E12, I2])
    else:
        raise ValueError("only n = 16 and n = 20 are defined")
    return C, D


def _css(n, expected, threads=1, budget=None) -> list[ReproRow]:
    t = time.perf_counter()
    iso = build_iso(3, Dihedral(n))
    C, D = css_example_ideals(n)
    cc, dc = code_from_ideal(iso, C), code_from_ideal(iso, D)
    dual = dihedral_dual_ideal(3, n, C)
    if not css_check(dc, cc):
        return [ReproRow(f"CSS over D{n}", expected, {"error": "dual not contained"}, "error")]
    p = css_build(dc, cc, budget=budget, threads=threads)
    got = {"n": p.n, "k": p.k, "d": p.d, "d_status": p.d_status, "dim_C": cc.k, "dim_D": dc.k}
    ok = (p.n, p.k, p.d, p.d_status) == (expected["n"], expected["k"], expected["d"], "exact")
    note = f"dual ideal ranks {dual.ranks()}"
    return [ReproRow(f"CSS over D{n}", expected, got, "match" if ok else "mismatch", time.perf_counter() - t, note)]


def run_repro(table: str, threads: int = 1, budget: int | None = None) -> ReproReport:
    """Recompute one of :data:`TABLES`."""
    runners = {
        "counts": _counts,
        "d4c4": _d4c4,
        "dncr-table": _dncr,
        "dndm-table": _dndm,
        "css16": lambda **kw: _css(16, {"n": 32, "k": 10, "d": 4}, **kw),
        "css20": lambda **kw: _css(20, {"n": 40, "k": 16, "d": 4}, **kw),
    }
    if table not in runners:
        raise ValueError(f"unknown table {table!r}; choose from {', '.join(TABLES)}")
    return ReproReport(table, runners[table](threads=threads, budget=budget))
