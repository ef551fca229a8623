"""Tests for the Mobius sieve and its table file."""

import math

import numpy as np
import pytest

from equidist.errors import ArgumentError, CapacityExceeded, ParseError
from equidist.mobius import sieve
from equidist.mobius import (
    TABLE_MAGIC,
    MobiusTable,
    divisor_sum_identity_holds,
    mobius_by_factorization,
    mobius_sequence,
    mobius_sieve,
    squarefree_density,
)


@pytest.fixture(scope="module")
def table():
    return mobius_sieve(100_000)


class TestSieve:
    """Tests for the linear sieve."""

    def test_first_values(self, table):
        assert [table[k] for k in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]

    def test_matches_factorization(self, table):
        for k in range(1, 10_001):
            assert table[k] == mobius_by_factorization(k), k

    def test_smallest_prime_factor_matches_trial_division(self, table):
        spf = table.smallest_prime_factor
        for k in range(2, 10_001):
            assert spf[k] == next((p for p in range(2, math.isqrt(k) + 1) if k % p == 0), k), k

    def test_table_dtypes(self, table):
        assert table.mu.dtype == np.int8
        assert table.smallest_prime_factor.dtype == np.int32
        assert len(table.mu) == table.n + 1

    def test_chunk_size_does_not_change_table(self, table, monkeypatch):
        monkeypatch.setattr(sieve, "SIEVE_CHUNK", 7)
        small = mobius_sieve(5000)
        assert np.array_equal(small.mu, table.mu[:5001])
        assert np.array_equal(small.smallest_prime_factor, table.smallest_prime_factor[:5001])

    def test_smallest_prime_factor(self, table):
        spf = table.smallest_prime_factor
        assert spf[1] == 1
        assert spf[97] == 97
        assert spf[91] == 7
        assert spf[100_000] == 2

    def test_divisor_sum_identity(self, table):
        assert divisor_sum_identity_holds(table, 10_000)

    def test_identity_detects_corruption(self, table):
        mu = table.mu.copy()
        mu[30] = 0
        broken = MobiusTable(table.n, mu, table.smallest_prime_factor)
        assert not divisor_sum_identity_holds(broken, 100)

    def test_squarefree_density(self, table):
        assert squarefree_density(table) == pytest.approx(6 / np.pi**2, abs=1e-3)
        assert squarefree_density(table, 10) == 0.7

    def test_index_out_of_range(self, table):
        with pytest.raises(IndexError):
            table[0]

    def test_rejects_empty(self):
        with pytest.raises(ArgumentError):
            mobius_sieve(0)

    def test_capacity(self, settings):
        with pytest.raises(CapacityExceeded):
            mobius_sieve(1000, settings.model_copy(update={"mobius_max_n": 100}))


class TestMobiusSequence:
    def test_complex_terms(self, table):
        c = mobius_sequence(table, 6)
        assert c.terms.tolist() == [1, -1, -1, 0, -1, 1]
        assert c.bound == 1.0

    def test_outside_sieved_range(self, table):
        with pytest.raises(ArgumentError):
            mobius_sequence(table, table.n + 1)


class TestTableFile:
    """Tests for the versioned binary dump."""

    def test_dump_and_load(self, tmp_path):
        table = mobius_sieve(1000)
        path = table.dump(tmp_path / "mu.bin")
        loaded = MobiusTable.load(path)
        assert loaded.n == 1000
        assert np.array_equal(loaded.mu, table.mu)
        assert np.array_equal(loaded.smallest_prime_factor, table.smallest_prime_factor)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "mu.bin"
        mobius_sieve(10).dump(path)
        data = bytearray(path.read_bytes())
        data[: len(TABLE_MAGIC)] = b"XXXX"
        path.write_bytes(bytes(data))
        with pytest.raises(ParseError):
            MobiusTable.load(path)

    def test_truncated(self, tmp_path):
        path = tmp_path / "mu.bin"
        mobius_sieve(10).dump(path)
        path.write_bytes(path.read_bytes()[:-3])
        with pytest.raises(ParseError):
            MobiusTable.load(path)
