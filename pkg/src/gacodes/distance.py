"""Minimum distance of linear codes: exhaustive enumeration, low-weight search and estimates."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import kernels, linalg
from .codes import CodeParams, LinearCode, dual_code, encode_entry

__all__ = [
    "EXHAUSTIVE_BUDGET",
    "LOWWEIGHT_BUDGET",
    "BudgetExceeded",
    "DistanceResult",
    "Certificate",
    "krawtchouk",
    "macwilliams",
    "weight_distribution",
    "min_distance",
    "verify_distance",
    "estimate_distance",
    "code_params",
]

log = logging.getLogger(__name__)

EXHAUSTIVE_BUDGET = 2**28
LOWWEIGHT_BUDGET = 2**30


class BudgetExceeded(RuntimeError):
    """The requested computation needs more work than the budget allows."""


@dataclass
class DistanceResult:
    """Minimum distance (or an upper bound) with the method that produced it.

    ``lower`` records the largest weight below which no codeword exists, as far
    as the search went.
    """

    value: int
    status: str  # "exact" | "upper_bound"
    method: str
    witness: np.ndarray | None = None
    lower: int = 1
    ops: int = 0

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def to_json(self, F=None) -> dict:
        out = {"value": self.value, "status": self.status, "method": self.method, "lower": self.lower, "ops": self.ops}
        if self.witness is not None:
            out["witness"] = [int(a) if F is None else encode_entry(F, a) for a in self.witness]
        return out


@dataclass
class Certificate:
    """Result of checking a claimed minimum distance ``d``.

    ``no_lighter`` says that no nonzero codeword has weight below ``d``;
    ``witness`` is a codeword of weight ``d``, or a lighter one when the claim
    is wrong.
    """

    d: int
    no_lighter: bool
    witness: np.ndarray | None
    ops: int = 0
    weights_checked: list[int] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.no_lighter and self.witness is not None and int(np.count_nonzero(self.witness)) == self.d

    def to_json(self, F=None) -> dict:
        w = None if self.witness is None else [int(a) if F is None else encode_entry(F, a) for a in self.witness]
        return {"no_lighter": self.no_lighter, "witness": w, "ops": self.ops}


# ---------------------------------------------------------------------------
# weight distributions


def krawtchouk(j: int, i: int, n: int, q: int) -> int:
    """``K_j(i) = sum_s (-1)^s (q-1)^(j-s) C(i, s) C(n-i, j-s)``."""
    return sum((-1) ** s * (q - 1) ** (j - s) * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))


def macwilliams(dual_hist: list[int], n: int, q: int) -> list[int]:
    """Weight distribution of a code from that of its dual."""
    size = sum(dual_hist)
    out = []
    for j in range(n + 1):
        tot = sum(b * krawtchouk(j, i, n, q) for i, b in enumerate(dual_hist) if b)
        if tot % size:
            raise ArithmeticError("MacWilliams transform is not integral")
        out.append(tot // size)
    return out


def _check_budget(cost: int, budget: int, what: str):
    if cost > budget:
        raise BudgetExceeded(f"{what} needs about {cost} operations, budget is {budget}")


def weight_distribution(c: LinearCode, budget: int | None = None, threads: int = 1) -> list[int]:
    """Full weight distribution by enumerating ``C`` or, when smaller, its dual."""
    budget = EXHAUSTIVE_BUDGET if budget is None else budget
    q, n, k = c.q, c.n, c.k
    if k <= n - k:
        _check_budget(q**k, budget, "enumerating the code")
        return kernels.weight_histogram(c.field, c.generator, threads=threads)
    _check_budget(q ** (n - k), budget, "enumerating the dual code")
    d = dual_code(c)
    return macwilliams(kernels.weight_histogram(c.field, d.generator, threads=threads), n, q)


# ---------------------------------------------------------------------------
# searches


def _parity(c: LinearCode) -> np.ndarray:
    return dual_code(c).generator


def verify_distance(c: LinearCode, d: int, budget: int | None = None, threads: int = 1) -> Certificate:
    """Certify ``d(C) = d`` by excluding all weights below ``d`` and finding a weight-``d`` word."""
    if c.k == 0:
        raise ValueError("the zero code has no minimum distance")
    if d < 1:
        raise ValueError("claimed distance must be positive")
    budget = LOWWEIGHT_BUDGET if budget is None else budget
    n, q = c.n, c.q
    cost = sum(kernels.search_prefix_count(n, w, q) for w in range(1, min(d, n) + 1))
    _check_budget(cost, budget, f"certifying d = {d}")
    H = _parity(c)
    ops = 0
    checked = []
    for w in range(1, min(d, n + 1)):
        word, o = kernels.find_word(c.field, H, w, threads=threads)
        ops += o
        checked.append(w)
        if word is not None:
            return Certificate(d, False, word, ops, checked)
    word, o = kernels.find_word(c.field, H, d, threads=threads) if d <= n else (None, 0)
    return Certificate(d, True, word, ops + o, checked)


def _lowweight(c: LinearCode, budget: int, threads: int) -> DistanceResult:
    n, q = c.n, c.q
    H = _parity(c)
    spent = 0
    for w in range(1, n + 1):
        cost = kernels.search_prefix_count(n, w, q)
        if spent + cost > budget:
            raise BudgetExceeded(f"low-weight search stopped before weight {w} (all lighter weights excluded)", w)
        word, o = kernels.find_word(c.field, H, w, threads=threads)
        spent += o
        if word is not None:
            return DistanceResult(w, "exact", "lowweight", word, lower=w, ops=spent)
    raise AssertionError("a nonzero code has a nonzero codeword")  # pragma: no cover


def estimate_distance(c: LinearCode, trials: int = 200, rng=None) -> DistanceResult:
    """Upper bound from random information sets (rows of systematic generators and pairs of them)."""
    if c.k == 0:
        raise ValueError("the zero code has no minimum distance")
    F = c.field
    rng = rng if rng is not None else np.random.default_rng(0)
    n = c.n
    best, best_word = n + 1, None
    scalars = np.arange(1, F.order, dtype=np.int64) if F.order <= 256 else np.array([1])
    for _ in range(trials):
        perm = rng.permutation(n)
        R = linalg.rref(F, c.generator[:, perm])
        cand = [R]
        if R.shape[0] > 1:
            a, b = np.triu_indices(R.shape[0], 1)
            for s in scalars:
                cand.append(F.add(R[a], F.mul(int(s), R[b])))
        W = np.concatenate(cand)
        wts = np.count_nonzero(W != 0, axis=1)
        wts[wts == 0] = n + 1
        i = int(np.argmin(wts))
        if wts[i] < best:
            best = int(wts[i])
            word = F.zeros(n)
            word[perm] = W[i]
            best_word = word
    return DistanceResult(best, "upper_bound", "estimate", best_word, ops=trials)


def min_distance(
    c: LinearCode,
    strategy: str = "auto",
    budget: int | None = None,
    threads: int = 1,
    trials: int = 200,
    rng=None,
) -> DistanceResult:
    """Minimum distance of ``c``.

    ``strategy`` is ``exhaustive`` (all codewords of ``C`` or ``C^perp``),
    ``lowweight`` (increasing-weight search with syndromes), ``estimate``
    (information sets, upper bound only) or ``auto``, which tries the exact
    methods within their budgets and falls back to an estimate.
    """
    if c.k == 0:
        raise ValueError("the zero code has no minimum distance")
    q, n, k = c.q, c.n, c.k
    if strategy == "exhaustive":
        hist = weight_distribution(c, budget, threads)
        d = next(i for i in range(1, n + 1) if hist[i])
        return DistanceResult(d, "exact", "exhaustive", lower=d, ops=q ** min(k, n - k))
    if strategy == "lowweight":
        return _lowweight(c, LOWWEIGHT_BUDGET if budget is None else budget, threads)
    if strategy == "estimate":
        return estimate_distance(c, trials, rng)
    if strategy != "auto":
        raise ValueError(f"unknown strategy {strategy!r}")
    ex_budget = EXHAUSTIVE_BUDGET if budget is None else budget
    if q ** min(k, n - k) <= ex_budget:
        return min_distance(c, "exhaustive", ex_budget, threads)
    try:
        return _lowweight(c, LOWWEIGHT_BUDGET if budget is None else budget, threads)
    except BudgetExceeded as exc:
        lower = exc.args[1] if len(exc.args) > 1 else 1
        log.info("exact search over budget; estimating (d >= %d)", lower)
        est = estimate_distance(c, trials, rng)
        est.lower = lower
        if est.value == lower:  # the bound meets the exclusion
            est.status = "exact"
        return est


def code_params(c: LinearCode, strategy: str | None = "auto", **kw) -> CodeParams:
    if strategy is None or c.k == 0:
        return CodeParams(c.n, c.k)
    r = min_distance(c, strategy, **kw)
    return CodeParams(c.n, c.k, r.value, r.status, r.method)
