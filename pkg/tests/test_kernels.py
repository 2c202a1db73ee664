import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gacodes import kernels
from gacodes.codes import LinearCode, dual_code
from gacodes.gf import make_field

BACKENDS = ["numpy"] + (["cython"] if kernels.native_available else [])


def _random_code(F, n, k, seed):
    rng = np.random.default_rng(seed)
    return LinearCode(F, rng.integers(0, F.order, size=(k, n)), length=n)


def _hist_brute(F, G):
    k, n = G.shape
    hist = [0] * (n + 1)
    for msg in itertools.product(range(F.order), repeat=k):
        w = np.zeros(n, dtype=np.int64)
        for c, row in zip(msg, G):
            w = F.add(w, F.mul(c, row))
        hist[int(np.count_nonzero(w))] += 1
    return hist


def _lightest_brute(F, H, T, w):
    """All weight-w words with He = 0 (and Te != 0 if given)."""
    n = H.shape[1]
    out = []
    for pos in itertools.combinations(range(n), w):
        for vals in itertools.product(range(1, F.order), repeat=w):
            e = np.zeros(n, dtype=np.int64)
            e[list(pos)] = vals
            if np.any(_mv(F, H, e)):
                continue
            if T is not None and not np.any(_mv(F, T, e)):
                continue
            out.append(e)
    return out


def _mv(F, A, e):
    from gacodes.linalg import matmul

    return matmul(F, A, e[:, None])[:, 0] if A.shape[0] else np.zeros(0, dtype=np.int64)


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "numpy")
    with kernels.use_backend("numpy"):
        assert kernels.BACKEND == "numpy"


def test_pack_bits():
    F3 = make_field(3)
    P, M = kernels.pack_bits(F3, [[1, 2, 0, 1], [0, 0, 2, 0]])
    assert P.tolist() == [0b1001, 0] and M.tolist() == [0b0010, 0b0100]
    P2, M2 = kernels.pack_bits(make_field(2), [1, 1, 0, 1])
    assert P2.tolist() == [0b1011] and M2.tolist() == [0]
    with pytest.raises(ValueError):
        kernels.pack_bits(F3, np.zeros((1, 65), dtype=int))


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("q,n,k", [(2, 10, 4), (3, 9, 4), (4, 7, 3), (5, 6, 3), (9, 5, 2), (3, 64, 5), (2, 70, 6)])
def test_histogram_matches_brute_force(backend, q, n, k):
    F = make_field(*{4: (2, 2), 9: (3, 2)}.get(q, (q, 1)))
    c = _random_code(F, n, k, q * n + k)
    with kernels.use_backend(backend):
        assert kernels.weight_histogram(F, c.generator) == _hist_brute(F, c.generator)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("q,n,k", [(2, 12, 5), (3, 10, 5), (4, 8, 4), (5, 7, 3)])
def test_find_word_returns_a_valid_word_at_the_least_weight(backend, q, n, k):
    F = make_field(*{4: (2, 2)}.get(q, (q, 1)))
    c = _random_code(F, n, k, 3 * n + q)
    H = dual_code(c).generator
    with kernels.use_backend(backend):
        for w in range(1, 5):
            word, _ = kernels.find_word(F, H, w)
            brute = _lightest_brute(F, H, None, w)
            assert (word is None) == (not brute)
            if word is not None:
                assert np.count_nonzero(word) == w and c.contains(word)
                assert word[np.flatnonzero(word)[0]] == 1


@pytest.mark.parametrize("q", [2, 3, 5])
def test_find_word_with_secondary_condition(q):
    F = make_field(q)
    c = _random_code(F, 8, 5, q)
    sub = LinearCode(F, c.generator[:2], length=8)
    H = dual_code(c).generator
    T = dual_code(sub).generator  # word must lie outside sub
    for w in range(1, 5):
        word, _ = kernels.find_word(F, H, w, secondary=T)
        brute = _lightest_brute(F, H, T, w)
        assert (word is None) == (not brute)
        if word is not None:
            assert c.contains(word) and not sub.contains(word)


@given(st.sampled_from([2, 3]), st.integers(6, 14), st.integers(0, 10**6))
def test_backends_agree(q, n, seed):
    if len(BACKENDS) < 2:
        return
    F = make_field(q)
    c = _random_code(F, n, n // 2, seed)
    H = dual_code(c).generator
    res = {}
    for b in BACKENDS:
        with kernels.use_backend(b):
            words = [kernels.find_word(F, H, w) for w in range(1, 5)]
            res[b] = (kernels.weight_histogram(F, c.generator), [(None if x is None else x.tolist(), o) for x, o in words])
    assert res["numpy"] == res["cython"]


@pytest.mark.parametrize("threads", [2, 3, 4])
def test_threads_give_the_same_answer(threads):
    F = make_field(3)
    c = _random_code(F, 24, 12, 5)
    H = dual_code(c).generator
    base_hist = kernels.weight_histogram(F, c.generator)
    assert kernels.weight_histogram(F, c.generator, threads=threads) == base_hist
    for w in (3, 4, 5):
        a, _ = kernels.find_word(F, H, w)
        b, _ = kernels.find_word(F, H, w, threads=threads)
        assert (a is None and b is None) or np.array_equal(a, b)


def test_search_prefix_count():
    assert kernels.search_prefix_count(10, 1, 3) == 1
    assert kernels.search_prefix_count(10, 3, 3) == 45 * 2
