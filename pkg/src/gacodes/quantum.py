"""CSS quantum codes from pairs of classical codes with ``C2^perp`` inside ``C1``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels, linalg
from .codes import LinearCode, dual_code, encode_entry
from .distance import EXHAUSTIVE_BUDGET, LOWWEIGHT_BUDGET

__all__ = ["CSSParams", "css_check", "css_build"]


@dataclass
class CSSParams:
    """``[[n, k, d]]_q`` of a CSS code.

    ``d_status`` is ``exact``, ``lower_bound`` (search stopped at the budget)
    or ``undefined`` when both set differences are empty.
    """

    n: int
    k: int
    d: int | None
    d_status: str
    q: int
    witness: np.ndarray | None = None
    witness_side: int | None = None  # 1: word of C1 outside C2^perp, 2: the symmetric case
    ops: int = 0

    def __str__(self):
        d = "?" if self.d is None else (str(self.d) if self.d_status == "exact" else f">={self.d}")
        return f"[[{self.n}, {self.k}, {d}]]_{self.q}"

    def to_json(self) -> dict:
        out = {"n": self.n, "k": self.k, "d": {"value": self.d, "status": self.d_status}, "q": self.q, "ops": self.ops}
        if self.witness is not None:
            out["witness"] = {"side": self.witness_side, "word": [int(a) for a in self.witness]}
        return out


def _check_pair(c1: LinearCode, c2: LinearCode):
    if c1.field is not c2.field:
        raise ValueError("codes over different fields")
    if c1.n != c2.n:
        raise ValueError("codes of different lengths")


def css_check(c1: LinearCode, c2: LinearCode) -> bool:
    """True when ``C2^perp`` is contained in ``C1``."""
    _check_pair(c1, c2)
    return c1.contains_code(dual_code(c2))


def _walk(c: LinearCode, exclude: np.ndarray, budget: int):
    """Lightest word of ``c`` with ``exclude . e != 0`` by enumerating the whole code."""
    F = c.field
    k, n = c.generator.shape
    total = F.order**k
    if total > budget:
        return None
    best, best_w = None, n + 1
    block = 1 << 14
    for s in range(0, total, block):
        idx = np.arange(s, min(total, s + block), dtype=np.int64)
        msgs = F.zeros((len(idx), k))
        for j in range(k):
            msgs[:, j] = idx % F.order
            idx = idx // F.order
        W = linalg.matmul(F, msgs, c.generator)
        keep = np.any(linalg.matmul(F, W, exclude.T) != 0, axis=1) if exclude.shape[0] else np.zeros(len(W), bool)
        if not keep.any():
            continue
        wts = np.count_nonzero(W[keep] != 0, axis=1)
        i = int(np.argmin(wts))
        if wts[i] < best_w:
            best_w, best = int(wts[i]), W[keep][i]
    return best


def css_build(
    c1: LinearCode,
    c2: LinearCode,
    strategy: str = "lowweight",
    budget: int | None = None,
    threads: int = 1,
) -> CSSParams:
    """Parameters of ``CSS(C1, C2)``.

    ``d`` is the least weight in ``(C1 \\ C2^perp) u (C2 \\ C1^perp)``.  The
    ``lowweight`` strategy tries weights 1, 2, ... on both sides and stops at
    the first hit, which certifies the value; when its budget runs out, the
    ``walk`` through all codewords is used if small enough.
    """
    _check_pair(c1, c2)
    if not css_check(c1, c2):
        raise ValueError("C2^perp is not contained in C1")
    F, n = c1.field, c1.n
    k = c1.k + c2.k - n
    sides = [(c1, c2), (c2, c1)]
    if c1.k + c2.k == n:  # C1 = C2^perp and C2 = C1^perp
        return CSSParams(n, k, None, "undefined", F.order)
    if strategy == "walk":
        return _css_walk(c1, c2, k, EXHAUSTIVE_BUDGET if budget is None else budget)
    if strategy != "lowweight":
        raise ValueError(f"unknown strategy {strategy!r}")
    budget = LOWWEIGHT_BUDGET if budget is None else budget
    checks = [(dual_code(a).generator, b.generator) for a, b in sides]
    spent = 0
    for w in range(1, n + 1):
        cost = 2 * kernels.search_prefix_count(n, w, F.order)
        if spent + cost > budget:
            walked = _css_walk(c1, c2, k, EXHAUSTIVE_BUDGET)
            if walked.d_status == "exact":
                walked.ops += spent
                return walked
            return CSSParams(n, k, w, "lower_bound", F.order, ops=spent)
        for side, (H, T) in enumerate(checks, start=1):
            word, o = kernels.find_word(F, H, w, secondary=T, threads=threads)
            spent += o
            if word is not None:
                return CSSParams(n, k, w, "exact", F.order, word, side, spent)
    raise AssertionError("nonempty difference without a word")  # pragma: no cover


def _css_walk(c1: LinearCode, c2: LinearCode, k: int, budget: int) -> CSSParams:
    F, n = c1.field, c1.n
    best = None
    for side, (a, b) in enumerate([(c1, c2), (c2, c1)], start=1):
        word = _walk(a, b.generator, budget)
        if word is None and F.order**a.k > budget:
            return CSSParams(n, k, None, "lower_bound", F.order)
        if word is not None:
            w = int(np.count_nonzero(word))
            if best is None or w < best[0]:
                best = (w, word, side)
    return CSSParams(n, k, best[0], "exact", F.order, best[1], best[2])


def css_params_json(p: CSSParams, F) -> dict:
    out = p.to_json()
    if p.witness is not None:
        out["witness"]["word"] = [encode_entry(F, a) for a in p.witness]
    return out
