import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from primseq import sieve_omega, sieve_primes


@pytest.fixture(scope="session")
def table_1e4():
    return sieve_primes(10_000)


@pytest.fixture(scope="session")
def table_1e6():
    return sieve_primes(1_000_000)


@pytest.fixture(scope="session")
def omega_1e5():
    return sieve_omega(100_000)
