"""Frobenius bases and mirror maps for operators with a MUM point at t = 0.

An operator is given in delta form, L = sum_{i=0}^{r} a_i(t) delta^i with
delta = t d/dt and integer polynomial coefficients, normalized so that the
indicial polynomial at t = 0 is x^r: a_i(0) = 0 for i < r and a_r(0) = 1.
Such a point is MUM (maximally unipotent monodromy): the local solutions
are

    y_k = sum_{j=0}^{k} g_{k-j}(t) (log t)^j / j!,   k = 0..r-1,

with g_0(0) = 1 and g_k(0) = 0 for k >= 1.  The g_k come from a single
recursion over jets in the auxiliary exponent rho: writing the candidate
solution t^rho sum_m A_m(rho) t^m, applying L and matching powers of t gives

    A_m(rho) (m+rho)^r = - sum_{s>=1} A_{m-s}(rho) P_s(m-s+rho),

where P_s(x) = sum_i a_{i,s} x^i collects the t^s parts of the a_i.  All
arithmetic happens in Q[rho]/rho^r, and g_k is the rho^k component.

The canonical coordinate in the q'(0) = 1 gauge is q = t exp(g_1/g_0);
its compositional inverse t(q) feeds the Yukawa coupling in q.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .series import LogSeries, RationalSeries, exp_series

_ZERO = Fraction(0)
_ONE = Fraction(1)


class MalformedSpec(ValueError):
    """Operator description is structurally invalid."""


class NotMUM(ValueError):
    """Indicial polynomial at t = 0 is not x^rank."""


class RankCheckFailed(ValueError):
    """Log-monodromy does not have the expected nilpotent shape."""


def _parse_int(x, where: str) -> int:
    if isinstance(x, bool):
        raise MalformedSpec(f"{where}: expected integer, got boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            raise MalformedSpec(f"{where}: not an integer string: {x!r}") from None
    raise MalformedSpec(f"{where}: expected integer, got {type(x).__name__}")


@dataclass(frozen=True)
class PFOperator:
    """Operator sum a_i(t) delta^i; coeffs[i] lists a_i as (a_{i,0}, a_{i,1}, ...)."""

    name: str
    rank: int
    coeffs: tuple[tuple[int, ...], ...]
    n0: int | None = None
    declared_n: int | None = None

    def __post_init__(self):
        if self.rank < 2:
            raise MalformedSpec(f"rank must be >= 2, got {self.rank}")
        if len(self.coeffs) != self.rank + 1:
            raise MalformedSpec(
                f"need {self.rank + 1} coefficient polynomials, got {len(self.coeffs)}")
        for i, poly in enumerate(self.coeffs):
            if not poly:
                raise MalformedSpec(f"a_{i} has no coefficients")
        const = [poly[0] for poly in self.coeffs]
        if const[self.rank] != 1:
            raise NotMUM(f"a_{self.rank}(0) = {const[self.rank]}, need 1")
        bad = [i for i in range(self.rank) if const[i] != 0]
        if bad:
            raise NotMUM(
                "indicial polynomial is not x^rank: "
                + ", ".join(f"a_{i}(0) = {const[i]}" for i in bad))

    @property
    def t_degree(self) -> int:
        return max(len(poly) - 1 for poly in self.coeffs)

    def coeff_series(self, i: int, order: int) -> RationalSeries:
        """a_i(t) as an exact polynomial viewed at the given order."""
        return RationalSeries.from_polynomial(self.coeffs[i], order)


def load_operator(doc: dict) -> PFOperator:
    """Build and validate an operator from its JSON-style description.

    Expected fields: name (string), rank (int), delta_coefficients (list of
    rank+1 integer lists, a_0 first; entries may be strings for magnitudes
    beyond double precision), optional n0 and N.
    """
    if not isinstance(doc, dict):
        raise MalformedSpec(f"operator spec must be an object, got {type(doc).__name__}")
    for key in ("name", "rank", "delta_coefficients"):
        if key not in doc:
            raise MalformedSpec(f"missing field {key!r}")
    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise MalformedSpec("name must be a nonempty string")
    rank = _parse_int(doc["rank"], "rank")
    raw = doc["delta_coefficients"]
    if not isinstance(raw, list):
        raise MalformedSpec("delta_coefficients must be a list")
    coeffs = []
    for i, poly in enumerate(raw):
        if not isinstance(poly, list) or not poly:
            raise MalformedSpec(f"a_{i} must be a nonempty list")
        coeffs.append(tuple(_parse_int(c, f"a_{i}[{j}]") for j, c in enumerate(poly)))
    n0 = _parse_int(doc["n0"], "n0") if "n0" in doc else None
    declared_n = _parse_int(doc["N"], "N") if "N" in doc else None
    return PFOperator(name=name, rank=rank, coeffs=tuple(coeffs),
                      n0=n0, declared_n=declared_n)


def load_operator_json(text: str) -> PFOperator:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedSpec(f"invalid JSON: {e}") from None
    return load_operator(doc)


# ---------------------------------------------------------------------------
# jets in Q[rho]/rho^r
# ---------------------------------------------------------------------------

def _jet_mul(a: list[Fraction], b: list[Fraction], r: int) -> list[Fraction]:
    out = [_ZERO] * r
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(r - i):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def _jet_mul_linear(a: list[Fraction], c: Fraction, r: int) -> list[Fraction]:
    # a * (c + rho)
    out = [a[k] * c for k in range(r)]
    for k in range(1, r):
        out[k] += a[k - 1]
    return out


def _jet_inv(a: list[Fraction], r: int) -> list[Fraction]:
    inv0 = _ONE / a[0]
    out = [_ZERO] * r
    out[0] = inv0
    for k in range(1, r):
        acc = _ZERO
        for i in range(1, k + 1):
            if a[i]:
                acc += a[i] * out[k - i]
        out[k] = -inv0 * acc
    return out


def _indicial_power_jet(m: int, r: int) -> list[Fraction]:
    # (m + rho)^r truncated at rho^r
    return [Fraction(math.comb(r, j) * m ** (r - j)) for j in range(r)]


def _eval_poly_jet(poly: tuple[int, ...], x0: int, r: int) -> list[Fraction]:
    # P(x0 + rho) by Horner, P given by coefficients of x^0..x^deg
    acc = [_ZERO] * r
    for c in reversed(poly):
        acc = _jet_mul_linear(acc, Fraction(x0), r)
        acc[0] += c
    return acc


@dataclass(frozen=True)
class SolutionBasis:
    """Frobenius basis at a MUM point, held as the series g_0..g_{r-1}."""

    operator: PFOperator
    order: int
    gs: tuple[RationalSeries, ...]

    @property
    def rank(self) -> int:
        return self.operator.rank

    @property
    def holomorphic(self) -> RationalSeries:
        return self.gs[0]

    def solution(self, k: int) -> LogSeries:
        """y_k = sum_{j<=k} g_{k-j} (log t)^j / j!."""
        parts = [self.gs[k - j] * Fraction(1, math.factorial(j)) for j in range(k + 1)]
        return LogSeries(parts)

    @property
    def solutions(self) -> tuple[LogSeries, ...]:
        return tuple(self.solution(k) for k in range(self.rank))


def frobenius_solutions(op: PFOperator, order: int) -> SolutionBasis:
    """Run the jet recursion up to (but not including) t^order."""
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    r = op.rank
    sdeg = op.t_degree
    # per-shift polynomials P_s(x) = sum_i a_{i,s} x^i, s = 1..sdeg
    shift_polys: list[tuple[int, ...] | None] = []
    for s in range(1, sdeg + 1):
        poly = tuple(op.coeffs[i][s] if s < len(op.coeffs[i]) else 0
                     for i in range(r + 1))
        shift_polys.append(poly if any(poly) else None)

    jets: list[list[Fraction]] = [[_ONE] + [_ZERO] * (r - 1)]
    for m in range(1, order):
        rhs = [_ZERO] * r
        for s in range(1, min(m, sdeg) + 1):
            poly = shift_polys[s - 1]
            if poly is None:
                continue
            term = _jet_mul(jets[m - s], _eval_poly_jet(poly, m - s, r), r)
            for k in range(r):
                rhs[k] += term[k]
        inv = _jet_inv(_indicial_power_jet(m, r), r)
        jets.append([-c for c in _jet_mul(rhs, inv, r)])

    gs = tuple(
        RationalSeries.from_coeffs([jets[m][k] for m in range(order)], order=order)
        for k in range(r))
    return SolutionBasis(operator=op, order=order, gs=gs)


def residual(op: PFOperator, y: LogSeries) -> LogSeries:
    """L applied to y; vanishes up to the truncation order for true solutions."""
    pad = op.t_degree + 1
    acc = None
    dy = y
    for i in range(op.rank + 1):
        ai = op.coeff_series(i, y.order + pad)
        term = dy.scale_series(ai)
        acc = term if acc is None else acc + term
        if i < op.rank:
            dy = dy.delta()
    return acc


@dataclass(frozen=True)
class MonodromyMatrix:
    """Matrix of d/d(log t) on the Frobenius basis, with nilpotency data.

    entries[k][j] is the coefficient of y_j in the image of y_k, so for a
    MUM point this is the lower shift matrix.
    """

    size: int
    entries: tuple[tuple[Fraction, ...], ...]

    def power(self, e: int) -> tuple[tuple[Fraction, ...], ...]:
        n = self.size
        out = tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))
        for _ in range(e):
            out = _mat_mul(out, self.entries)
        return out

    def rank_of_power(self, e: int) -> int:
        return _mat_rank(self.power(e))


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), _ZERO)
                       for j in range(n)) for i in range(n))


def _mat_rank(m) -> int:
    rows = [list(row) for row in m]
    n = len(rows)
    rank = 0
    col = 0
    width = len(rows[0]) if rows else 0
    while rank < n and col < width:
        pivot = next((i for i in range(rank, n) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for i in range(rank + 1, n):
            f = rows[i][col] / pv
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def _expand_in_basis(h: LogSeries, basis: SolutionBasis) -> list[Fraction]:
    """Coordinates of h in the y-basis; the expansion must terminate exactly."""
    r = basis.rank
    g0_inv = basis.gs[0].invert()
    coords = [_ZERO] * r
    rem = h
    for j in range(r - 1, -1, -1):
        cj = rem.part(j) * g0_inv * Fraction(math.factorial(j))
        c = cj.coeff(0) if cj.order > 0 else _ZERO
        coords[j] = c
        if c:
            rem = rem - basis.solution(j).scale(c)
    if not rem.is_zero():
        raise RankCheckFailed("series does not lie in the solution span")
    return coords


def monodromy_matrix(basis: SolutionBasis) -> MonodromyMatrix:
    """Compute d/d(log t) on the basis and verify the MUM nilpotency profile:
    N^r = 0, rank(N^(r-1)) = 1, rank(N^(r-2)) = 2."""
    r = basis.rank
    rows = []
    for k in range(r):
        image = basis.solution(k).dlog_partial()
        rows.append(tuple(_expand_in_basis(image, basis)))
    mat = MonodromyMatrix(size=r, entries=tuple(rows))
    if any(any(c for c in row) for row in mat.power(r)):
        raise RankCheckFailed(f"N^{r} != 0")
    if mat.rank_of_power(r - 1) != 1:
        raise RankCheckFailed(f"rank(N^{r - 1}) = {mat.rank_of_power(r - 1)}, need 1")
    if r >= 2 and mat.rank_of_power(r - 2) != 2:
        raise RankCheckFailed(f"rank(N^{r - 2}) = {mat.rank_of_power(r - 2)}, need 2")
    return mat


@dataclass(frozen=True)
class MirrorMap:
    """Canonical coordinate q(t) = t exp(g_1/g_0) and its inverse t(q).

    monodromy_index is the exponent k in q = t^k (unit); at a MUM point in
    the q'(0) = 1 gauge it is 1.  dlog_q is delta(log q) as a series in t,
    the coefficient of dt/t in the logarithmic differential of q.
    """

    q_of_t: RationalSeries
    t_of_q: RationalSeries
    monodromy_index: int
    dlog_q: RationalSeries

    @property
    def unit_part(self) -> RationalSeries:
        """q/t, a unit with constant term 1."""
        return self.q_of_t.shift(-1)

    @classmethod
    def from_q(cls, q: RationalSeries) -> "MirrorMap":
        """Mirror map determined by a given q(t) in the q'(0) = 1 gauge."""
        from .series import log_series
        u = q.shift(-1)
        if u.constant_term() != 1:
            raise ValueError("q/t must have constant term 1")
        return cls(q_of_t=q, t_of_q=q.reversion(), monodromy_index=1,
                   dlog_q=log_series(u).delta() + 1)


def mirror_map(basis: SolutionBasis) -> MirrorMap:
    """q(t) in the gauge q'(0) = 1, from the first two Frobenius solutions."""
    g0, g1 = basis.gs[0], basis.gs[1]
    ratio = g1 * g0.invert()
    if ratio.val < 1 and not ratio.is_zero():
        raise RankCheckFailed("g_1/g_0 has a constant term; basis is not normalized")
    q = exp_series(ratio).shift(1)
    return MirrorMap(
        q_of_t=q,
        t_of_q=q.reversion(),
        monodromy_index=1,
        dlog_q=ratio.delta() + 1,
    )
