import pytest

from repgap import analytic, arith, obstruction

# Pairs from the published survivor table whose candidate-prime membership
# checks out (16 of the 17 printed entries).
PAPER_VALID_PAIRS = frozenset(
    {
        (-43, 7), (-127, 7), (-547, 7), (-683, 11), (-1093, 7), (-2047, 11),
        (-2731, 13), (-3277, 7), (-5461, 7), (-13021, 7), (-19531, 7),
        (-39991, 7), (-43691, 17), (-44287, 11), (-55987, 7), (-88573, 11),
    }
)
# The printed entry whose p divides neither |a| nor |a|-1.
ANOMALOUS_PAIR = (-8191, 11)
# Its corrected reading: 13 | 8190 and the polynomial has the integer root 2.
CORRECTED_PAIR = (-8191, 13)


@pytest.fixture(scope="session")
def sieve_1e6():
    return arith.primes_up_to(10**6)


@pytest.fixture(scope="session")
def sieve_1e5():
    return arith.primes_up_to(10**5)


@pytest.fixture(scope="session")
def scan_qbound_100():
    return obstruction.reproduce_S0(100_000, 100)


@pytest.fixture(scope="session")
def scan_qbound_stable():
    return obstruction.reproduce_S0(100_000, obstruction.STABLE_Q_BOUND)


@pytest.fixture(scope="session")
def prop_pom_1e6(sieve_1e6):
    return analytic.check_prop_pom(10**6, 101, constant=10.0, sieve=sieve_1e6)


@pytest.fixture(scope="session")
def rootless_flags_eisenstein():
    """(q, rootless) flags at 1e5 for the three Eisenstein showcase pairs."""
    return {
        (p, p): obstruction.rootless_flags(p, p, 10**5) for p in (7, 11, 13)
    }
