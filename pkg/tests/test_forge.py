import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from galois_forge.errors import DegreeInvalid, DegreeMismatch, KMaxExceeded, NotMonic
from galois_forge.ffpoly import ddf, reduce
from galois_forge.forge import (
    REFERENCE_K,
    combine,
    forge,
    make_f2,
    make_f3,
    make_f5,
    minimal_k,
    odd_split,
    paper_example,
    paper_lifts,
    real_root_count,
)
from galois_forge.galois import check_vdw, symmetric_closure_oracle
from galois_forge.intpoly import IntPoly, sturm_real_root_count


def brute_force_k(f2, f3, f5, limit=10_000):
    """Linear search oracle; only usable when the answer is small."""
    for k in range(limit + 1):
        if real_root_count(combine(f2, f3, f5, k)) == 0:
            return k
    raise RuntimeError("limit reached")


def monic_lifts(draw_coeffs):
    return st.lists(st.integers(0, 4), min_size=draw_coeffs, max_size=draw_coeffs).map(
        lambda c: IntPoly(c + [1])
    )


# ---------------------------------------------------------------- combine


def test_combine_reproduces_reference_example():
    assert combine(*paper_lifts(), REFERENCE_K) == paper_example()


def test_combine_rejects_bad_inputs():
    f2, f3, f5 = paper_lifts()
    with pytest.raises(DegreeMismatch):
        combine(f2, f3, IntPoly((1, 1)), 0)
    with pytest.raises(NotMonic):
        combine(f2 * 2, f3, f5, 0)


@pytest.mark.parametrize("d", [4, 6, 8])
def test_combine_preserves_residues(d):
    rng = random.Random(d)
    for _ in range(1000):
        lifts = [IntPoly([rng.randrange(-9, 10) for _ in range(d)] + [1]) for _ in range(3)]
        k = rng.randrange(-50, 50)
        f = combine(*lifts, k)
        for p, g in zip((2, 3, 5), lifts):
            assert reduce(f, p) == reduce(g, p)


@given(monic_lifts(6), monic_lifts(6), monic_lifts(6), st.integers(-100, 100))
def test_k_shift_changes_only_constant_term(f2, f3, f5, k):
    a, b = combine(f2, f3, f5, k), combine(f2, f3, f5, k + 1)
    assert (b - a) == IntPoly((30,))


# ---------------------------------------------------------------- factor builders


@pytest.mark.parametrize("d, split", [(6, (1, 3)), (8, (3, 3)), (10, (1, 7)), (12, (5, 5)), (14, (1, 11))])
def test_odd_split(d, split):
    assert odd_split(d) == split
    assert sum(split) == d - 2 and all(s % 2 for s in split)


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("d", [6, 8, 10, 12])
def test_builders_have_prescribed_shapes(d, seed):
    rng = random.Random(seed)
    f2, f3, f5 = make_f2(d, rng), make_f3(d, rng), make_f5(d, rng)
    assert ddf(reduce(f2, 2)).partition() == (d,)
    assert ddf(reduce(f3, 3)).partition() == (d - 1, 1)
    s5 = ddf(reduce(f5, 5))
    assert s5.squarefree
    assert sorted(s5.partition()) == sorted((2,) + odd_split(d))


def test_builders_reject_small_degrees():
    with pytest.raises(DegreeInvalid):
        make_f3(3, random.Random(0))
    with pytest.raises(DegreeInvalid):
        make_f5(4, random.Random(0))


# ---------------------------------------------------------------- minimal k


def test_minimal_k_reference():
    assert minimal_k(*paper_lifts()) == REFERENCE_K


def test_minimal_k_toy_triple():
    # -15 + 10 + 6 = 1, so the combination is x^2 - 31 + 30k
    f = IntPoly((-31, 0, 1))
    assert minimal_k(f, f, f) == 2
    assert brute_force_k(f, f, f) == 2


def test_minimal_k_zero_when_already_root_free():
    f = IntPoly((1, 0, 1))
    assert minimal_k(f, f, f) == 0


def test_minimal_k_respects_k_max():
    with pytest.raises(KMaxExceeded):
        minimal_k(*paper_lifts(), k_max=0)
    with pytest.raises(KMaxExceeded):
        minimal_k(*paper_lifts(), k_max=3)
    assert minimal_k(*paper_lifts(), k_max=4) == 4


def test_minimal_k_matches_linear_search():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        d = rng.choice([2, 4, 6])
        lifts = [IntPoly([rng.randrange(-3, 4) for _ in range(d)] + [1]) for _ in range(3)]
        try:
            expected = brute_force_k(*lifts, limit=2000)
        except RuntimeError:
            continue
        assert minimal_k(*lifts) == expected
        checked += 1


@given(st.integers(-10**6, 10**6), st.integers(-10**4, 10**4))
def test_minimal_k_planted_minimum(a, b):
    # base = (x - a)^2 * (x^2 + 1) + b has global minimum b at x = a
    g = IntPoly.from_roots([a, a]) * IntPoly((1, 0, 1)) + b
    k = minimal_k(g, g, g, k_max=None)
    expected = 0 if b > 0 else (-b) // 30 + 1
    assert k == expected


@pytest.mark.parametrize("seed", range(5))
def test_root_freeness_is_monotone_past_minimal_k(seed):
    res = forge(8, seed)
    if res.k:
        assert sturm_real_root_count(combine(res.f2, res.f3, res.f5, res.k - 1)) > 0
    for j in range(6):
        assert real_root_count(combine(res.f2, res.f3, res.f5, res.k + j)) == 0


# ---------------------------------------------------------------- forge


def test_forge_is_deterministic():
    a, b = forge(8, 42), forge(8, 42)
    assert a == b
    assert forge(8, 43).f != a.f


def test_forge_rejects_invalid_degrees():
    for d in (7, 4, 5, 0):
        with pytest.raises(DegreeInvalid):
            forge(d, 0)


@pytest.mark.parametrize("d", [6, 8, 10, 12, 16, 20])
def test_forged_polynomial_is_scenic(d):
    res = forge(d, 1)
    cert = check_vdw(res.f)
    assert res.certificate.scenic and cert.pass_
    assert res.f.degree == d and res.f.is_monic()
    assert real_root_count(res.f) == 0
    z = np.roots([float(c) for c in reversed(res.f.coeffs)])
    assert len(z) == d


@pytest.mark.parametrize("seed", range(10))
def test_forged_degree_8_reaches_full_symmetric_group(seed):
    res = forge(8, seed)
    assert symmetric_closure_oracle(8, res.certificate.vdw.odd_split()) == (True, math.factorial(8))


@settings(max_examples=25)
@given(st.integers(0, 2**40))
def test_forge_any_seed(seed):
    res = forge(10, seed)
    assert res.certificate.scenic
    assert res.k == minimal_k(res.f2, res.f3, res.f5, k_max=None)
