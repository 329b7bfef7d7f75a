import cmath

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quopitsim import (ExactScalar, FieldElement, OddPrime, exact_mul,
                       exact_to_complex, field_inverse, inverse_mod, legendre,
                       parse_exact_scalar)

PRIMES = [3, 5, 7, 11, 13]


def test_odd_prime_accepts_primes():
    for p in PRIMES + [17, 101]:
        assert int(OddPrime(p)) == p


@pytest.mark.parametrize("bad", [1, 2, 4, 9, 15, 21, 0, -3])
def test_odd_prime_rejects(bad):
    with pytest.raises(ValueError):
        OddPrime(bad)


def test_inverse_mod_examples():
    assert inverse_mod(2, 5) == 3
    assert inverse_mod(2, 7) == 4
    assert inverse_mod(4, 13) == 10


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        inverse_mod(0, 7)
    with pytest.raises(ZeroDivisionError):
        field_inverse(FieldElement(14, 7))


@given(st.sampled_from(PRIMES), st.integers(min_value=-100, max_value=100))
def test_inverse_mod_property(p, x):
    if x % p == 0:
        return
    assert (x * inverse_mod(x, p)) % p == 1


def test_field_element_arithmetic():
    a = FieldElement(4, 7)
    b = FieldElement(5, 7)
    assert a + b == 2
    assert a - b == 6
    assert a * b == 6
    assert -a == 3
    assert a ** 3 == (4 ** 3) % 7
    assert a ** -1 == inverse_mod(4, 7)
    assert int(field_inverse(b)) == 3
    assert a + 10 == 0
    assert 10 + a == 0


def test_field_element_modulus_mismatch():
    with pytest.raises(ValueError):
        FieldElement(1, 5) + FieldElement(1, 7)


def test_legendre_examples():
    assert legendre(0, 7) == 0
    assert legendre(1, 5) == 1
    assert legendre(2, 3) == -1
    assert legendre(FieldElement(2, 3)) == -1


@given(st.sampled_from(PRIMES), st.integers(min_value=1, max_value=100))
def test_legendre_squares(p, x):
    if x % p == 0:
        return
    assert legendre(x * x, p) == 1


def test_legendre_counts():
    # (p-1)/2 nonzero squares and as many nonsquares
    for p in PRIMES:
        vals = [legendre(x, p) for x in range(1, p)]
        assert vals.count(1) == (p - 1) // 2
        assert vals.count(-1) == (p - 1) // 2


def test_exact_scalar_mul_examples():
    s = ExactScalar(3, sqrtp_exponent=-1)
    ss = exact_mul(s, s)
    assert ss.sqrtp_exponent == -2
    assert ss.quarter_turns == 0
    assert int(ss.p_phase) == 0

    t = ExactScalar(5, sqrtp_exponent=0, quarter_turns=1, p_phase=1)
    tt = t * t
    assert (tt.sqrtp_exponent, tt.quarter_turns, int(tt.p_phase)) == (0, 2, 2)


def test_exact_scalar_zero():
    z = ExactScalar.zero(5)
    assert z.is_zero
    assert z.to_complex() == 0
    assert abs(z) == 0.0
    assert (z * ExactScalar.one(5)).is_zero
    assert z == ExactScalar(5, is_zero=True)
    # zero is canonical: exponents are forced to (0, 0, 0)
    assert (z.sqrtp_exponent, z.quarter_turns, int(z.p_phase)) == (0, 0, 0)


def test_exact_scalar_to_complex():
    s = ExactScalar(5, sqrtp_exponent=1, quarter_turns=3, p_phase=2)
    want = (5 ** 0.5) * (-1j) * cmath.exp(4j * cmath.pi / 5)
    assert abs(exact_to_complex(s) - want) < 1e-12
    assert abs(abs(s) - 5 ** 0.5) < 1e-12


def test_exact_scalar_quarter_turn_wraps():
    s = ExactScalar(3, quarter_turns=7)
    assert s.quarter_turns == 3


def test_render_golden():
    assert ExactScalar(3, -1, 0, 0).render() == "3^(-1/2) * i^0 * chi(0)"
    assert ExactScalar.zero(3).render() == "0"
    assert ExactScalar(7, 2, 3, 6).render() == "7^(2/2) * i^3 * chi(6)"


@given(st.sampled_from(PRIMES), st.integers(-9, 9), st.integers(0, 3),
       st.integers(0, 12))
def test_render_parse_round_trip(p, k, q, c):
    s = ExactScalar(p, k, q, c)
    assert parse_exact_scalar(s.render()) == s
    assert parse_exact_scalar("0", modulus=p) == ExactScalar.zero(p)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_exact_scalar("banana")
    with pytest.raises(ValueError):
        parse_exact_scalar("0")  # modulus needed for the zero form
    with pytest.raises(ValueError):
        parse_exact_scalar("3^(-1/2) * i^0 * chi(0)", modulus=5)


def test_mul_modulus_mismatch():
    with pytest.raises(ValueError):
        ExactScalar.one(3) * ExactScalar.one(5)
