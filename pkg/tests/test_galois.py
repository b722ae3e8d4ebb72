import math
import random

import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from galois_forge.errors import DegreeTooLarge, DegreeTooSmall, NotMonic
from galois_forge.ffpoly import FactorShape, primes_up_to
from galois_forge.forge import forge
from galois_forge.galois import (
    CycleHistogram,
    _cond3,
    _scan_primes,
    check_vdw,
    closure_order,
    frobenius_scan,
    oracle_generators,
    scenic_check,
    symmetric_closure_oracle,
)
from galois_forge.intpoly import IntPoly, discriminant

from conftest import REFERENCE_COEFFS

REF = IntPoly(REFERENCE_COEFFS)


def test_check_vdw_reference():
    cert = check_vdw(REF)
    assert cert.shape2 == FactorShape(((8, 1),), True)
    assert cert.shape3 == FactorShape(((1, 1), (7, 1)), True)
    assert cert.shape5 == FactorShape(((2, 1), (3, 2)), True)
    assert cert.cond1 and cert.cond2 and cert.cond3 and cert.pass_
    assert cert.odd_split() == (3, 3)


def test_check_vdw_bumped_constant_breaks_cond1():
    cert = check_vdw(REF + 1)
    assert not cert.cond1
    assert not cert.pass_


def test_check_vdw_mod2_lift_only():
    cert = check_vdw(IntPoly((1, 1, 0, 1, 1, 0, 0, 0, 1)))
    assert cert.cond1
    assert not cert.cond2


def test_check_vdw_preconditions():
    with pytest.raises(NotMonic):
        check_vdw(REF * 2)
    with pytest.raises(DegreeTooSmall):
        check_vdw(IntPoly((1, 1, 1, 1)))


@pytest.mark.parametrize(
    "pairs, squarefree, d, expected",
    [
        (((2, 1), (3, 2)), True, 8, True),
        (((1, 1), (2, 1), (7, 1)), True, 10, True),
        (((2, 1), (3, 1)), True, 5, True),  # single odd factor
        (((2, 1), (3, 2)), False, 8, False),  # repeated cubic
        (((2, 2), (3, 1)), True, 7, False),  # two quadratics
        (((1, 3), (2, 1)), True, 5, False),  # three odd factors
        (((2, 1), (4, 1)), True, 6, False),  # even remaining factor
        (((1, 1), (3, 1), (4, 1)), True, 8, False),  # no quadratic
    ],
)
def test_cond3_rules(pairs, squarefree, d, expected):
    assert _cond3(FactorShape(pairs, squarefree), d) is expected


@given(
    st.lists(st.integers(-5, 5), min_size=1, max_size=8),
)
def test_certificate_depends_only_on_residues_mod_30(g):
    shifted = REF + IntPoly(g) * 30
    assert check_vdw(shifted) == check_vdw(REF)


# ---------------------------------------------------------------- closure oracle


def test_oracle_small_and_reference_cases():
    assert symmetric_closure_oracle(4, (1, 1)) == (True, 24)
    assert symmetric_closure_oracle(8, (3, 3)) == (True, 40320)
    assert symmetric_closure_oracle(3, only_full_cycle=True) == (False, 3)


def test_oracle_rejects_large_and_bad_input():
    with pytest.raises(DegreeTooLarge):
        symmetric_closure_oracle(10, (1, 7))
    with pytest.raises(ValueError):
        symmetric_closure_oracle(8, (2, 4))


@pytest.mark.parametrize("d, split", [(4, (1, 1)), (6, (1, 3)), (6, (3, 1)), (8, (1, 5)), (8, (3, 3))])
def test_closure_matches_sympy(d, split):
    gens = oracle_generators(d, split)
    ours = closure_order(gens)
    theirs = PermutationGroup([Permutation(list(g)) for g in gens]).order()
    assert ours == theirs == math.factorial(d)


def test_closure_of_smaller_groups():
    # the d-cycle alone is cyclic; d-cycle with a reflection is dihedral
    d = 6
    rot = tuple((i + 1) % d for i in range(d))
    refl = tuple((-i) % d for i in range(d))
    assert closure_order([rot]) == 6
    assert closure_order([rot, refl]) == 12


@pytest.mark.parametrize("seed", range(5))
def test_oracle_for_forged_polynomials(seed):
    for d in (6, 8):
        res = forge(d, seed)
        assert symmetric_closure_oracle(d, res.certificate.vdw.odd_split()) == (True, math.factorial(d))


# ---------------------------------------------------------------- scenic


def test_scenic_reference():
    cert = scenic_check(REF)
    assert cert.scenic
    assert cert.real_root_count == 0 and cert.squarefree and cert.monic and cert.even_degree


def test_scenic_failures_are_recorded():
    cert = scenic_check(IntPoly((1, 0, 1)))
    assert not cert.scenic
    assert any("degree >= 4" in f for f in cert.failures)
    cert = scenic_check(REF * 2)
    assert not cert.scenic and not cert.monic
    assert not scenic_check(IntPoly((0,))).scenic


def test_scenic_detects_real_roots():
    f = IntPoly.from_roots([1, 2]) * IntPoly((1, 0, 1)) * IntPoly((2, 0, 1)) * IntPoly((3, 0, 1))
    cert = scenic_check(f)
    assert cert.real_root_count == 2 and not cert.scenic


# ---------------------------------------------------------------- Frobenius scan


def test_scan_partition_keys_sum_to_degree():
    hist = frobenius_scan(REF, 2000)
    assert all(sum(k) == 8 for k in hist.buckets)
    assert sum(hist.buckets.values()) == hist.primes_used


def test_scan_reducible_quadratic():
    hist = frobenius_scan(IntPoly((-1, 0, 1)), 100)
    assert hist.ramified == [2]
    assert hist.buckets == {(1, 1): 24}
    assert hist.primes_used == len(primes_up_to(100)) - 1


def test_scan_small_bound_counts_unramified_primes():
    hist = frobenius_scan(REF, 10)
    disc = discriminant(REF)
    assert hist.primes_used == sum(1 for p in (2, 3, 5, 7) if disc % p)
    # shapes at 2, 3, 5 are exactly the certificate's
    assert {(8,), (7, 1), (3, 3, 2)} <= set(hist.buckets)


def test_scan_merge_is_order_independent():
    f = IntPoly((3, 1, 0, 0, 1, 1, 1))
    disc = discriminant(f)
    primes = primes_up_to(3000)
    whole = _scan_primes(f.coeffs, disc, primes, 3000)
    rng = random.Random(1)
    shuffled = primes[:]
    rng.shuffle(shuffled)
    pieces = [_scan_primes(f.coeffs, disc, shuffled[i::3], 3000) for i in range(3)]
    merged = CycleHistogram(6, 3000)
    for piece in reversed(pieces):
        merged = merged.merge(piece)
    assert merged.to_json() == whole.to_json()


def test_scan_worker_count_does_not_change_result():
    assert frobenius_scan(REF, 5000, workers=3).to_json() == frobenius_scan(REF, 5000).to_json()
