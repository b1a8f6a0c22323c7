"""p-adic integrality certificates for mirror maps and instanton expansions.

Three checks, one prime at a time, all decided by exact arithmetic on the
first `order` coefficients.

Dwork: with u = q/t (a unit), form v = u(t^p)/u(t)^p - 1.  The unit u lies
in Z_p[[t]]* exactly when every coefficient of v has v_p >= 1; the witness
h = (1/p) log(1 + v) then has p-integral coefficients and satisfies
exp(p h) u(t)^p = u(t^p), which is re-verified term by term.

KSV (Kontsevich-Schwarz-Vologodsky): let b_m be the q^m coefficient of
Y(q) - Y(q^p).  The criterion requires v_p(b_m) >= 3 v_p(m) for all m,
which happens exactly when all instanton numbers n_d (d in the checked
range) are p-adic integers; the witness is psi = sum b_m q^m / m^3, a
p-integral solution of delta^3 psi = Y(q) - Y(q^p).

Gauge: the same congruences seen as p-integrality of a Frobenius gauge
transformation.  The entries

    m23 = sum b_m q^m / m,   m13 = -sum b_m q^m / m^2,   m14 = -2 sum b_m q^m / m^3

satisfy delta(m23) = Y - Y(q^p), m23 = -delta(m13), delta(m14) = 2 m13 and
Y(q^p) - Y(q) = (1/2) delta^3(m14), so psi = -(1/2) m14.  All three series
must be p-integral.

A report aggregates the certificates over every admissible prime (p larger
than the rank, p not dividing the observed denominator support) up to a
bound, and states the verdict together with its truncation caveats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .padic import INF, _check_prime, _vp, frobenius_substitute, primes_up_to
from .picard_fuchs import MirrorMap
from .series import RationalSeries, log_series, exp_series
from .yukawa import InstantonSeries


@dataclass(frozen=True)
class FailureLocus:
    """First offending coefficient index and its p-adic valuation."""

    index: int
    valuation: int


@dataclass(frozen=True)
class DworkCertificate:
    prime: int
    order: int
    witness: RationalSeries
    verdict: bool
    failure: Optional[FailureLocus]
    witness_verified: bool

    kind = "dwork"


@dataclass(frozen=True)
class KSVCertificate:
    prime: int
    order: int
    witness: RationalSeries
    verdict: bool
    failure: Optional[FailureLocus]
    witness_verified: bool

    kind = "ksv"


@dataclass(frozen=True)
class SeriesVerdict:
    name: str
    passed: bool
    failure: Optional[FailureLocus]


@dataclass(frozen=True)
class GaugeCertificate:
    prime: int
    order: int
    m13: RationalSeries
    m23: RationalSeries
    m14: RationalSeries
    checks: tuple[SeriesVerdict, ...]
    verdict: bool
    failure: Optional[FailureLocus]
    relations_verified: bool

    kind = "gauge"


class OrderMismatch(ValueError):
    """Certificate inputs were computed at incompatible truncation orders."""


def _first_violation(f: RationalSeries, p: int, threshold,
                     start: int = 1) -> Optional[FailureLocus]:
    """First index m >= start with v_p(coefficient) < threshold(m)."""
    for m in range(start, f.order):
        c = f.coeff(m)
        if not c:
            continue
        v = _vp(c, p)
        if v < threshold(m):
            return FailureLocus(index=m, valuation=v)
    return None


def dwork_certify(mm: MirrorMap, p: int, order: int) -> DworkCertificate:
    """Check u = q/t against the Dwork congruence u(t^p) = u(t)^p mod p."""
    _check_prime(p)
    u = mm.unit_part.truncate(order)
    if u.order < order:
        raise OrderMismatch(
            f"mirror map order {u.order} below requested order {order}")
    u_frob = frobenius_substitute(u, p, max_order=order)
    u_pow = u.pow_int(p)
    v = u_frob * u_pow.invert() - 1
    failure = _first_violation(v, p, lambda m: 1)
    witness = log_series(1 + v) * Fraction(1, p)
    verified = (exp_series(witness * p) * u_pow).agrees_with(u_frob)
    return DworkCertificate(prime=p, order=v.order, witness=witness,
                            verdict=failure is None, failure=failure,
                            witness_verified=verified)


def _frobenius_difference(y_q: RationalSeries, p: int, order: int) -> RationalSeries:
    if y_q.order < order:
        raise OrderMismatch(
            f"coupling order {y_q.order} below requested order {order}")
    y = y_q.truncate(order)
    return y - frobenius_substitute(y, p, max_order=order)


def _vp_or_zero(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def ksv_certify(y_q: RationalSeries, p: int, order: int) -> KSVCertificate:
    """Check v_p(b_m) >= 3 v_p(m) for b = Y(q) - Y(q^p)."""
    _check_prime(p)
    b = _frobenius_difference(y_q, p, order)
    failure = None
    for m in range(1, b.order):
        c = b.coeff(m)
        if not c:
            continue
        if _vp(c, p) < 3 * _vp_or_zero(m, p):
            psi_val = _vp(Fraction(c, m ** 3), p)
            failure = FailureLocus(index=m, valuation=psi_val)
            break
    psi = b.delta_antiderivative().delta_antiderivative().delta_antiderivative()
    verified = psi.delta().delta().delta().agrees_with(b)
    return KSVCertificate(prime=p, order=b.order, witness=psi,
                          verdict=failure is None, failure=failure,
                          witness_verified=verified)


def gauge_certify(y_q: RationalSeries, p: int, order: int) -> GaugeCertificate:
    """Check p-integrality of the Frobenius gauge entries m13, m23, m14."""
    _check_prime(p)
    b = _frobenius_difference(y_q, p, order)
    m23 = b.delta_antiderivative()
    m13 = -m23.delta_antiderivative()
    m14 = 2 * m13.delta_antiderivative()
    checks = []
    first = None
    for name, s in (("m13", m13), ("m23", m23), ("m14", m14)):
        loc = _first_violation(s, p, lambda m: 0)
        checks.append(SeriesVerdict(name=name, passed=loc is None, failure=loc))
        if loc is not None and first is None:
            first = loc
    relations_ok = (
        m23.delta().agrees_with(b)
        and m23.agrees_with(-m13.delta())
        and m14.delta().agrees_with(2 * m13)
        and (m14.delta().delta().delta() * Fraction(1, 2)).agrees_with(-b)
    )
    return GaugeCertificate(prime=p, order=b.order, m13=m13, m23=m23, m14=m14,
                            checks=tuple(checks),
                            verdict=all(c.passed for c in checks),
                            failure=first, relations_verified=relations_ok)


def denominator_support(values) -> tuple[int, ...]:
    """Sorted primes dividing any denominator among the given rationals.

    Denominators arising from series recursions factor over small primes;
    plain trial division is exact and fast for them.
    """
    seen: set[int] = set()
    for x in values:
        den = Fraction(x).denominator
        d = 2
        while d * d <= den:
            if den % d == 0:
                seen.add(d)
                while den % d == 0:
                    den //= d
            d += 1 if d == 2 else 2
        if den > 1:
            seen.add(den)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class PrimeCertificates:
    prime: int
    dwork: DworkCertificate
    ksv: KSVCertificate
    gauge: GaugeCertificate

    @property
    def all_pass(self) -> bool:
        return self.dwork.verdict and self.ksv.verdict and self.gauge.verdict


@dataclass(frozen=True)
class IntegralityReport:
    """Aggregated certificate verdicts with the observed denominator data.

    consistent means every admissible tested prime passed all three
    certificates; the guarantee is for the truncated range only, which the
    notes spell out.
    """

    operator_name: str
    rank: int
    order: int
    max_degree: int
    instantons: InstantonSeries
    q_support: tuple[int, ...]
    instanton_support: tuple[int, ...]
    n_observed: int
    prime_bound: Optional[int]
    primes_tested: tuple[int, ...]
    primes_skipped: tuple[tuple[int, str], ...]
    certificates: tuple[PrimeCertificates, ...]
    consistent: bool
    notes: tuple[str, ...] = field(default_factory=tuple)


_REPORT_NOTES = (
    "certified range: statements cover coefficients below the working order "
    "and instanton numbers up to the tabulated degree only",
    "unit normalization: roots of unity of order p-1 rescale the coordinate "
    "without affecting integrality; the q'(0) = 1 gauge fixes the choice",
    "admissibility: certificates run only for primes exceeding the rank and "
    "prime to the observed denominator support",
)


def n_integrality_report(*, operator_name: str, rank: int, order: int,
                         mm: MirrorMap, y_q: RationalSeries,
                         instantons: InstantonSeries,
                         prime_bound: Optional[int] = None,
                         primes: Optional[list[int]] = None) -> IntegralityReport:
    """Run dwork/ksv/gauge for every admissible prime and aggregate.

    Admissible: p > rank and p not in the denominator support observed in
    the mirror map coefficients and the tabulated instanton numbers.  The
    candidate set is primes_up_to(prime_bound) unless an explicit list is
    given.
    """
    if prime_bound is None and primes is None:
        raise ValueError("need a prime bound or an explicit prime list")
    q_support = denominator_support(mm.q_of_t.coeffs)
    nd_support = denominator_support(instantons.numbers)
    support = sorted(set(q_support) | set(nd_support))
    n_observed = 1
    for p in support:
        n_observed *= p
    if primes is None:
        candidates = primes_up_to(prime_bound)
    else:
        candidates = sorted(set(primes))
    tested: list[int] = []
    skipped: list[tuple[int, str]] = []
    certs: list[PrimeCertificates] = []
    for p in candidates:
        _check_prime(p)
        if p <= rank:
            skipped.append((p, f"prime {p} does not exceed the rank {rank}"))
            continue
        if p in support:
            skipped.append((p, f"prime {p} divides the denominator support"))
            continue
        tested.append(p)
        certs.append(PrimeCertificates(
            prime=p,
            dwork=dwork_certify(mm, p, order),
            ksv=ksv_certify(y_q, p, order),
            gauge=gauge_certify(y_q, p, order),
        ))
    return IntegralityReport(
        operator_name=operator_name,
        rank=rank,
        order=order,
        max_degree=instantons.max_degree,
        instantons=instantons,
        q_support=tuple(q_support),
        instanton_support=tuple(nd_support),
        n_observed=n_observed,
        prime_bound=prime_bound,
        primes_tested=tuple(tested),
        primes_skipped=tuple(skipped),
        certificates=tuple(certs),
        consistent=all(c.all_pass for c in certs),
        notes=_REPORT_NOTES,
    )
