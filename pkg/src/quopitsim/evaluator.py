"""Closed-form circuit evaluation.

The amplitude of a standard-form circuit is a quadratic exponential sum,
which factors through the congruence diagonalization of Theta into a product
of one-variable Weil sums. With lambda the diagonal, mu = L^T eta, and the
index sets X = {lambda_i != 0}, Y = {lambda_i = 0, mu_i = 0},
Z = {lambda_i = 0, mu_i != 0}:

    <b|U|a> = p^(-(n + r - alpha)/2) * [Z empty] * i^(r*eps)
              * (prod of lambda over X / p) * chi(zeta - 4^(-1) * sum over X
                of lambda_i^(-1) * mu_i^2)

where r = |X| is the rank of Theta, eps = 0 for p = 1 mod 4 and 1 otherwise,
and (./p) is the Legendre symbol. Everything here is exact integer
arithmetic; floats only appear when a caller asks for complex values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .circuit import Circuit, normalize_to_standard_form
from .fields import ExactScalar, inverse_mod, legendre
from .oracle import CapExceeded
from .pathsum import phase_polynomial_direct
from .quadform import diagonalize

TABLE_CAP = 100_000


def phase_unit_exponent(p: int) -> int:
    """eps(p): 0 when p = 1 mod 4, else 1 (the i-power attached to each
    nondegenerate one-variable sum)."""
    return 0 if p % 4 == 1 else 1


def weil_sum(lam: int, mu: int, p: int) -> ExactScalar:
    """The one-variable quadratic sum over F_p,
    sum over x of chi(lam*x^2 + mu*x), in exact form.

    lam = mu = 0 gives p; lam = 0 with mu != 0 gives 0; for lam != 0 the
    value is i^eps(p) * (lam/p) * sqrt(p) * chi(-4^(-1)*lam^(-1)*mu^2).
    """
    lam %= p
    mu %= p
    if lam == 0:
        if mu == 0:
            return ExactScalar(p, sqrtp_exponent=2)
        return ExactScalar.zero(p)
    q = phase_unit_exponent(p) + (2 if legendre(lam, p) == -1 else 0)
    c = -inverse_mod(4, p) * inverse_mod(lam, p) * mu * mu
    return ExactScalar(p, sqrtp_exponent=1, quarter_turns=q, p_phase=c)


@dataclass(frozen=True)
class AmplitudeReport:
    """One evaluated transition: the exact amplitude, its probability as an
    exact rational, and the invariants behind them. weight is the magnitude
    p^(-(n + r - alpha)/2) shared by every nonzero outcome of the circuit."""

    amplitude: ExactScalar
    probability: Fraction
    rank: int
    alpha: int
    z_size: int
    weight: float


def _assemble(p: int, n: int, alpha: int, lam: np.ndarray, mu: np.ndarray,
              zeta: int) -> AmplitudeReport:
    nz = lam != 0
    r = int(np.count_nonzero(nz))
    z_size = int(np.count_nonzero(mu[~nz] % p))
    weight = float(p) ** (0.5 * (alpha - n - r))
    if z_size:
        return AmplitudeReport(ExactScalar.zero(p), Fraction(0), r, alpha,
                               z_size, weight)
    prod = 1
    s = 0
    inv4 = inverse_mod(4, p)
    for lv, mv in zip(lam[nz], mu[nz]):
        lv = int(lv)
        mv = int(mv)
        prod = (prod * lv) % p
        s += inverse_mod(lv, p) * mv * mv
    q = r * phase_unit_exponent(p) + (2 if r and legendre(prod, p) == -1 else 0)
    amp = ExactScalar(p, sqrtp_exponent=alpha - n - r, quarter_turns=q,
                      p_phase=zeta - inv4 * s)
    e = n + r - alpha
    prob = Fraction(1, p ** e) if e >= 0 else Fraction(p ** -e)
    return AmplitudeReport(amp, prob, r, alpha, z_size, weight)


def amplitude(c: Circuit, a, b) -> AmplitudeReport:
    """Exact transition amplitude <b|U|a>. The circuit is brought to standard
    form first, so any circuit is accepted."""
    cn = normalize_to_standard_form(c)
    p = int(cn.modulus)
    q = phase_polynomial_direct(cn, a, b)
    res = diagonalize(q.theta, p, eta=q.eta, assume_canonical=True)
    return _assemble(p, cn.n, len(q.eta), res.diagonal, res.mu, q.zeta)


def probability(c: Circuit, a, b) -> Fraction:
    """Exact outcome probability |<b|U|a>|^2 as a Fraction."""
    return amplitude(c, a, b).probability


def balance_weight(c: Circuit) -> AmplitudeReport:
    """Evaluate at a = b = 0 just to expose the circuit-level invariants:
    rank, alpha, and the shared magnitude of all nonzero outcomes. Theta does
    not depend on (a, b), so these hold for every transition."""
    zeros = (0,) * c.n
    return amplitude(c, zeros, zeros)


def _table_core(cn: Circuit, a):
    """Shared machinery for whole-outcome-row evaluation: one extraction per
    basis outcome recovers how (eta, zeta) depend on b, one diagonalization
    then covers all p^n outcomes."""
    p = int(cn.modulus)
    n = cn.n
    q0 = phase_polynomial_direct(cn, a, (0,) * n)
    alpha = len(q0.eta)
    E = np.zeros((alpha, n), dtype=np.int64)
    w = np.zeros(n, dtype=np.int64)
    for i in range(n):
        probe = [0] * n
        probe[i] = 1
        qi = phase_polynomial_direct(cn, a, probe)
        E[:, i] = (qi.eta - q0.eta) % p
        w[i] = (qi.zeta - q0.zeta) % p
    res = diagonalize(q0.theta, p, want_l=True, assume_canonical=True)
    lam = res.diagonal
    mu0 = (res.L.T @ q0.eta) % p
    MuE = (res.L.T @ E) % p

    B = np.indices((p,) * n).reshape(n, -1).T if n else np.zeros((1, 0),
                                                                 dtype=np.int64)
    Mu = (mu0[None, :] + B @ MuE.T) % p
    zv = (q0.zeta + B @ w) % p

    nz = lam != 0
    r = int(np.count_nonzero(nz))
    z_counts = np.count_nonzero(Mu[:, ~nz], axis=1)
    lam_inv = np.array([inverse_mod(int(v), p) for v in lam[nz]],
                       dtype=np.int64)
    inv4 = inverse_mod(4, p)
    phase = (zv - inv4 * (Mu[:, nz] ** 2 @ lam_inv)) % p
    prod = 1
    for v in lam[nz]:
        prod = (prod * int(v)) % p
    q = r * phase_unit_exponent(p) + (2 if r and legendre(prod, p) == -1 else 0)
    return p, n, alpha, r, q, z_counts, phase


def amplitude_table(c: Circuit, a, cap: int = TABLE_CAP) -> list[AmplitudeReport]:
    """AmplitudeReport for every outcome b, in lexicographic order of the
    outcome tuples. Refuses tables larger than `cap` rows."""
    cn = normalize_to_standard_form(c)
    p = int(cn.modulus)
    if p ** cn.n > cap:
        raise CapExceeded(
            f"table has {p}^{cn.n} = {p ** cn.n} rows, cap is {cap}")
    p, n, alpha, r, q, z_counts, phase = _table_core(cn, a)
    k = alpha - n - r
    weight = float(p) ** (0.5 * k)
    e = n + r - alpha
    prob = Fraction(1, p ** e) if e >= 0 else Fraction(p ** -e)
    zero = ExactScalar.zero(p)
    reports = []
    for count, ph in zip(z_counts, phase):
        if count:
            reports.append(AmplitudeReport(zero, Fraction(0), r, alpha,
                                           int(count), weight))
        else:
            reports.append(AmplitudeReport(
                ExactScalar(p, sqrtp_exponent=k, quarter_turns=q,
                            p_phase=int(ph)),
                prob, r, alpha, 0, weight))
    return reports


def _amplitude_row(c: Circuit, a, cap: int = TABLE_CAP) -> np.ndarray:
    """All p^n amplitudes for input a as a complex vector, same outcome order
    as amplitude_table. Used where per-report objects would be too slow."""
    cn = normalize_to_standard_form(c)
    p = int(cn.modulus)
    if p ** cn.n > cap:
        raise CapExceeded(
            f"row has {p}^{cn.n} = {p ** cn.n} entries, cap is {cap}")
    p, n, alpha, r, q, z_counts, phase = _table_core(cn, a)
    mag = float(p) ** (0.5 * (alpha - n - r))
    vals = mag * (1j ** q) * np.exp(2j * np.pi * phase / p)
    return np.where(z_counts > 0, 0, vals)
