import random

import pytest

from deltamatroids import catalog
from deltamatroids.exchange import is_delta_matroid, is_even, is_normal
from deltamatroids.gf2 import (
    SymmetricBinaryMatrix,
    det_gf2,
    is_basic_binary,
    is_binary,
    reconstruct_basic_matrix,
)
from deltamatroids.setsystem import SetSystem, popcount

from _reference import det_permanent_ref


def matrix(labels, *rows):
    return SymmetricBinaryMatrix.from_entries(tuple(labels), [[int(c) for c in r] for r in rows])


def all_symmetric(n):
    pairs = [(i, j) for i in range(n) for j in range(i + 1)]
    for bits in range(1 << len(pairs)):
        rows = [0] * n
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                rows[i] |= 1 << j
                if i != j:
                    rows[j] |= 1 << i
        yield SymmetricBinaryMatrix(tuple(str(i + 1) for i in range(n)), tuple(rows))


def random_symmetric(rng, n):
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1):
            if rng.getrandbits(1):
                rows[i] |= 1 << j
                if i != j:
                    rows[j] |= 1 << i
    return SymmetricBinaryMatrix(tuple(str(i + 1) for i in range(n)), tuple(rows))


def test_symmetry_enforced():
    with pytest.raises(ValueError):
        SymmetricBinaryMatrix(("1", "2"), (0b10, 0b00))


def test_det_matches_permutation_expansion():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(0, 4)
        entries = [[rng.getrandbits(1) for _ in range(n)] for _ in range(n)]
        rows = tuple(sum(v << j for j, v in enumerate(row)) for row in entries)
        assert det_gf2(rows, n) == det_permanent_ref(entries)


def test_principal_nonsingular_examples():
    swap = matrix("12", "01", "10")
    assert swap.principal_nonsingular(["1", "2"])
    assert swap.principal_nonsingular(0)
    assert not swap.principal_nonsingular(["1"])
    with pytest.raises(ValueError):
        swap.principal_nonsingular(1 << 5)


def test_zero_diagonal_odd_subsets_singular():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(1, 6)
        m = random_symmetric(rng, n)
        zero_diag = SymmetricBinaryMatrix(
            m.labels, tuple(row & ~(1 << i) for i, row in enumerate(m.rows))
        )
        for x in range(1 << n):
            if popcount(x) % 2 == 1:
                assert not zero_diag.principal_nonsingular(x)


def test_ppt_examples():
    ident = matrix("12", "10", "01")
    assert ident.ppt(["1"]) == ident
    assert matrix("12", "11", "10").ppt(["1"]) == matrix("12", "11", "11")
    swap = matrix("12", "01", "10")
    assert swap.ppt(["1", "2"]) == swap
    with pytest.raises(ValueError):
        swap.ppt(["1"])  # singular pivot block


def test_delta_matroid_of_matrix_examples():
    assert matrix("1", "1").delta_matroid() == SetSystem(("1",), (0, 1))
    assert matrix("12", "01", "10").delta_matroid() == SetSystem(("1", "2"), (0, 3))
    assert matrix("12", "11", "11").delta_matroid() == SetSystem(("1", "2"), (0, 1, 2))


def test_matrix_delta_matroids_satisfy_exchange_and_are_normal():
    rng = random.Random(3)
    for _ in range(60):
        d = random_symmetric(rng, rng.randint(0, 5)).delta_matroid()
        assert is_normal(d)
        assert is_delta_matroid(d)


def test_pivot_nonsingularity_shift_exhaustive_n3():
    for m in all_symmetric(3):
        ind = set(m.feasible_masks())
        for x in ind:
            pivoted = m.ppt(x)
            ind2 = set(pivoted.feasible_masks())
            for y in range(8):
                assert (y in ind2) == ((x ^ y) in ind)
            assert pivoted.ppt(x) == m


def test_twist_representation_correspondence():
    rng = random.Random(4)
    for _ in range(40):
        m = random_symmetric(rng, rng.randint(1, 6))
        d = m.delta_matroid()
        x = rng.choice(d.feasible)
        assert m.ppt(x).delta_matroid() == d.twist(x)


def test_reconstruction_examples():
    assert reconstruct_basic_matrix(catalog.get("D3")) == matrix("abc", "100", "010", "001")
    assert reconstruct_basic_matrix(SetSystem(("a",), (0,))) == matrix("a", "0")
    with pytest.raises(ValueError):
        reconstruct_basic_matrix(SetSystem(("a",), (1,)))  # not normal


def test_reconstruction_round_trip_exhaustive_small():
    for n in range(0, 4):
        for m in all_symmetric(n):
            assert reconstruct_basic_matrix(m.delta_matroid()) == m


def test_reconstruction_round_trip_random_n5():
    rng = random.Random(5)
    for _ in range(100):
        m = random_symmetric(rng, 5)
        assert reconstruct_basic_matrix(m.delta_matroid()) == m


def test_basic_binary_and_binary_examples():
    assert not is_binary(catalog.get("B1"))
    assert not is_binary(catalog.get("D3"))
    assert not is_basic_binary(catalog.get("D3"))
    rng = random.Random(6)
    for _ in range(30):
        m = random_symmetric(rng, rng.randint(1, 5))
        d = m.delta_matroid()
        assert is_basic_binary(d)
        a = rng.randrange(d.full_mask + 1)
        assert is_binary(d.twist(a))


def test_basic_binary_even_iff_no_singletons():
    rng = random.Random(7)
    for _ in range(40):
        d = random_symmetric(rng, rng.randint(1, 5)).delta_matroid()
        no_singletons = not any(popcount(f) == 1 for f in d.feasible)
        assert is_even(d) == no_singletons


def test_binary_closed_under_twisted_duals_and_minors():
    rng = random.Random(8)
    for _ in range(20):
        m = random_symmetric(rng, rng.randint(2, 4))
        d = m.delta_matroid()
        e = rng.choice(d.labels)
        b = d.element_bit(e)
        for t in (d.twist(b), d.loop_complement(b), d.delete(e), d.contract(e),
                  d.penrose_contract(e)):
            if t.is_proper:
                assert is_binary(t)


def test_non_delta_matroid_is_not_binary():
    assert not is_binary(catalog.get("S3"))
