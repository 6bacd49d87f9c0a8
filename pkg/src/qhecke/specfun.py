"""Builders for the named q-series the verification suite compares.

Every builder returns an exact :class:`~qhecke.qseries.QSeries`. Sums with
poles at z = 0 or divergent z = +-1 limits are never evaluated naively;
the pole-cleared or windowed form is documented on each builder. The
``z_value`` argument folds an evaluation at z = 1 or z = -1 into the
coefficients, which keeps large pure-q runs cheap.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable

from .errors import UnknownSeriesId
from .qseries import (
    INFINITY,
    Monomial,
    QSeries,
    div_factor,
    geometric_z_sum,
    mul_factor,
    pochhammer,
    qs_add,
    qs_invert,
    qs_monomial,
    qs_mul,
    qs_mul_monomial,
    qs_one,
    qs_scale_poly,
    qs_truncate_z,
    qs_zero,
)


def _check_z(z_value: int | None) -> None:
    if z_value not in (None, 1, -1):
        raise ValueError("z_value must be None, 1 or -1")


def _fold(c: int, z_exp: int, z_value: int | None) -> tuple[int, int]:
    """Fold an evaluation at z = +-1 into the coefficient."""
    if z_value is None:
        return c, z_exp
    if z_value == -1 and z_exp % 2:
        return -c, 0
    return c, 0


def _mulf(f: QSeries, c: int, z_exp: int, q_exp: int, zv: int | None) -> QSeries:
    cc, ze = _fold(c, z_exp, zv)
    return mul_factor(f, cc, ze, q_exp)


def _divf(f: QSeries, c: int, z_exp: int, q_exp: int, zv: int | None) -> QSeries:
    cc, ze = _fold(c, z_exp, zv)
    return div_factor(f, cc, ze, q_exp)


def build_R(N: int, z_value: int | None = None) -> QSeries:
    """Rank generating sum 1 + sum_{n>=1} q^{n^2} / ((zq;q)_n (z^{-1}q;q)_n)."""
    _check_z(z_value)
    term = qs_one(N)
    acc = qs_one(N)
    n = 1
    while n * n <= N:
        term = qs_mul_monomial(term, 1, 0, 2 * n - 1)
        term = _divf(term, -1, 1, n, z_value)
        term = _divf(term, -1, -1, n, z_value)
        acc = qs_add(acc, term)
        n += 1
    return acc


def build_H(N: int, z_value: int | None = None) -> QSeries:
    """Overline-rank generating sum.

    sum_{n>=0} (-1;q)_n q^{n(n+1)/2} / ((zq;q)_n (z^{-1}q;q)_n), which also
    collects overpartitions by rank and weight.
    """
    _check_z(z_value)
    term = qs_one(N)
    acc = qs_one(N)
    n = 1
    while n * (n + 1) // 2 <= N:
        term = mul_factor(term, 1, 0, n - 1)
        term = qs_mul_monomial(term, 1, 0, n)
        term = _divf(term, -1, 1, n, z_value)
        term = _divf(term, -1, -1, n, z_value)
        acc = qs_add(acc, term)
        n += 1
    return acc


def build_K(N: int, z_value: int | None = None) -> QSeries:
    """Alternating base q^2 sum
    sum_{n>=0} (-1)^n (q;q^2)_n q^{n^2} / ((zq^2;q^2)_n (z^{-1}q^2;q^2)_n)."""
    _check_z(z_value)
    term = qs_one(N)
    acc = qs_one(N)
    n = 1
    while n * n <= N:
        term = qs_mul_monomial(term, -1, 0, 2 * n - 1)
        term = mul_factor(term, -1, 0, 2 * n - 1)
        term = _divf(term, -1, 1, 2 * n, z_value)
        term = _divf(term, -1, -1, 2 * n, z_value)
        acc = qs_add(acc, term)
        n += 1
    return acc


def build_N2_rank(N: int, z_value: int | None = None) -> QSeries:
    """M2-rank generating sum
    sum_{n>=0} (-q;q^2)_n q^{n^2} / ((zq^2;q^2)_n (z^{-1}q^2;q^2)_n).

    Equals the alternating base q^2 sum with q replaced by -q.
    """
    _check_z(z_value)
    term = qs_one(N)
    acc = qs_one(N)
    n = 1
    while n * n <= N:
        term = qs_mul_monomial(term, 1, 0, 2 * n - 1)
        term = mul_factor(term, 1, 0, 2 * n - 1)
        term = _divf(term, -1, 1, 2 * n, z_value)
        term = _divf(term, -1, -1, 2 * n, z_value)
        acc = qs_add(acc, term)
        n += 1
    return acc


def build_g_cleared(N: int, z_value: int | None = None) -> QSeries:
    """Pole-cleared universal sum (1 - x)(x g(x, q) + 1).

    Built termwise as sum_{n>=0} q^{n^2} / ((xq;q)_n (x^{-1}q;q)_n) where
    every denominator is expanded as a finite Pochhammer product and then
    inverted, deliberately avoiding the incremental factor recurrence so
    the rank-sum comparison exercises two independent code paths.
    """
    _check_z(z_value)
    acc = qs_zero(N)
    n = 0
    while n * n <= N:
        if z_value is None:
            den = qs_mul(
                pochhammer(Monomial(1, 1, 1), n, N),
                pochhammer(Monomial(1, -1, 1), n, N),
            )
        else:
            single = pochhammer(Monomial(z_value, 0, 1), n, N)
            den = qs_mul(single, single)
        acc = qs_add(acc, qs_mul_monomial(qs_invert(den), 1, 0, n * n))
        n += 1
    return acc


def build_f_mock3(N: int) -> QSeries:
    """Third order mock theta function f(q) = sum q^{n^2} / (-q;q)_n^2."""
    term = qs_one(N)
    acc = qs_one(N)
    n = 1
    while n * n <= N:
        term = qs_mul_monomial(term, 1, 0, 2 * n - 1)
        term = div_factor(term, 1, 0, n)
        term = div_factor(term, 1, 0, n)
        acc = qs_add(acc, term)
        n += 1
    return acc


def build_mu_mock2(N: int) -> QSeries:
    """Second order mock theta function
    mu(q) = sum (-1)^n (q;q^2)_n q^{n^2} / (-q^2;q^2)_n^2."""
    term = qs_one(N)
    acc = qs_one(N)
    n = 1
    while n * n <= N:
        term = qs_mul_monomial(term, -1, 0, 2 * n - 1)
        term = mul_factor(term, -1, 0, 2 * n - 1)
        term = div_factor(term, 1, 0, 2 * n)
        term = div_factor(term, 1, 0, 2 * n)
        acc = qs_add(acc, term)
        n += 1
    return acc


def build_S_def(N: int, z_value: int | None = None) -> QSeries:
    """Smallest-parts weighted sum
    sum_{n>=1} q^n (q^{n+1};q)_oo / ((zq^n;q)_oo (z^{-1}q^n;q)_oo).

    At z = 1 the coefficient of q^n counts parts-below-repeats weighted
    partitions, the spt numbers.
    """
    _check_z(z_value)
    tail = pochhammer(Monomial(1, 0, 2), INFINITY, N)
    for k in range(1, N + 1):
        tail = _divf(tail, -1, 1, k, z_value)
        tail = _divf(tail, -1, -1, k, z_value)
    acc = qs_mul_monomial(tail, 1, 0, 1)
    for n in range(2, N + 1):
        tail = _mulf(tail, -1, 1, n - 1, z_value)
        tail = _mulf(tail, -1, -1, n - 1, z_value)
        tail = div_factor(tail, -1, 0, n)
        acc = qs_add(acc, qs_mul_monomial(tail, 1, 0, n))
    return acc


def build_S_formula(N: int, z_value: int | None = None) -> QSeries:
    """Closed alternating single sum for the smallest-parts weighted sum:

        (1/(zq;q)_oo) sum_{n>=1} (-1)^{n-1} q^{n(n+1)/2}
            (1 + z + ... + z^{n-1}) / ((q;q)_n (1 - z^{-1}q^n))

    The geometric factor is the pole-free form of (z^n - 1)/(z - 1).
    """
    _check_z(z_value)
    acc = qs_zero(N)
    base = qs_one(N)
    n = 1
    while n * (n + 1) // 2 <= N:
        base = qs_mul_monomial(base, 1, 0, n)
        base = div_factor(base, -1, 0, n)
        term = base if n % 2 == 1 else qs_mul_monomial(base, -1)
        term = _divf(term, -1, -1, n, z_value)
        if z_value is None:
            term = qs_scale_poly(term, geometric_z_sum(n))
        else:
            w = n if z_value == 1 else n % 2
            if w != 1:
                term = qs_mul_monomial(term, w)
        acc = qs_add(acc, term)
        n += 1
    for k in range(1, N + 1):
        acc = _divf(acc, -1, 1, k, z_value)
    return acc


def build_SBar_def(N: int, z_value: int | None = None) -> QSeries:
    """Overpartition smallest-parts weighted sum
    sum_{n>=1} q^n (q^{2n+2};q^2)_oo / ((zq^n;q)_oo (z^{-1}q^n;q)_oo)."""
    _check_z(z_value)
    tail = pochhammer(Monomial(1, 0, 4), INFINITY, N, step=2)
    for k in range(1, N + 1):
        tail = _divf(tail, -1, 1, k, z_value)
        tail = _divf(tail, -1, -1, k, z_value)
    acc = qs_mul_monomial(tail, 1, 0, 1)
    for n in range(2, N + 1):
        tail = _mulf(tail, -1, 1, n - 1, z_value)
        tail = _mulf(tail, -1, -1, n - 1, z_value)
        tail = div_factor(tail, -1, 0, 2 * n)
        acc = qs_add(acc, qs_mul_monomial(tail, 1, 0, n))
    return acc


def build_S2_def(N: int, z_value: int | None = None) -> QSeries:
    """Even-smallest-part weighted sum over n >= 1 of
    q^{2n} (q^{2n+2};q^2)_oo (-q^{2n+1};q^2)_oo
        / ((zq^{2n};q^2)_oo (z^{-1}q^{2n};q^2)_oo)."""
    _check_z(z_value)
    tail = pochhammer(Monomial(1, 0, 4), INFINITY, N, step=2)
    e = 3
    while e <= N:
        tail = mul_factor(tail, 1, 0, e)
        e += 2
    e = 2
    while e <= N:
        tail = _divf(tail, -1, 1, e, z_value)
        tail = _divf(tail, -1, -1, e, z_value)
        e += 2
    acc = qs_mul_monomial(tail, 1, 0, 2)
    n = 2
    while 2 * n <= N:
        tail = _mulf(tail, -1, 1, 2 * n - 2, z_value)
        tail = _mulf(tail, -1, -1, 2 * n - 2, z_value)
        tail = div_factor(tail, -1, 0, 2 * n)
        tail = div_factor(tail, 1, 0, 2 * n - 1)
        acc = qs_add(acc, qs_mul_monomial(tail, 1, 0, 2 * n))
        n += 1
    return acc


def build_crank_style(
    num_base: int, N: int, z_value: int | None = None, overline: bool = False
) -> QSeries:
    """Crank-style infinite product in base q^{num_base}.

    With num_base = 1 and no overline factor this is
    (q;q)_oo / ((zq;q)_oo (z^{-1}q;q)_oo). The overline flag multiplies in
    (-q;q^{num_base})_oo, giving the overpartition crank product for base 1
    and the even-parts crank product for base 2.
    """
    if num_base not in (1, 2):
        raise ValueError("num_base must be 1 or 2")
    _check_z(z_value)
    b = num_base
    f = pochhammer(Monomial(1, 0, b), INFINITY, N, step=b)
    if overline:
        e = 1
        while e <= N:
            f = mul_factor(f, 1, 0, e)
            e += b
    e = b
    while e <= N:
        f = _divf(f, -1, 1, e, z_value)
        f = _divf(f, -1, -1, e, z_value)
        e += b
    return f


def build_partial_theta(N: int, z_value: int | None = None) -> QSeries:
    """Partial theta sum sum_{n>=0} (-1)^n z^n q^{n(n+1)/2}."""
    _check_z(z_value)
    acc = qs_zero(N)
    n = 0
    while n * (n + 1) // 2 <= N:
        c, ze = _fold(-1 if n % 2 else 1, n, z_value)
        acc = qs_add(acc, qs_monomial(c, ze, n * (n + 1) // 2, N))
        n += 1
    return acc


# ---------------------------------------------------------------------------
# False theta identities, one builder per side.
# ---------------------------------------------------------------------------


def _square_theta_rhs(N: int, z_step: int) -> QSeries:
    """1 + 2 sum_{n>=1} (-1)^n z^{z_step*n} q^{n^2}."""
    acc = qs_one(N)
    n = 1
    while n * n <= N:
        acc = qs_add(acc, qs_monomial(2 * (-1 if n % 2 else 1), z_step * n, n * n, N))
        n += 1
    return acc


def _false_t1a_lhs(N: int) -> QSeries:
    # sum_n (-z;q)_{n+1} (-z)^n / (zq;q)_n. The nth summand has z-valuation
    # exactly n, so the window [0, N] is already stable after N + 1 terms.
    term = qs_add(qs_one(N), qs_monomial(1, 1, 0, N))
    acc = term
    for n in range(1, N + 1):
        term = mul_factor(term, 1, 1, n)
        term = qs_mul_monomial(term, -1, 1, 0)
        term = div_factor(term, -1, 1, n)
        acc = qs_add(acc, term)
    return qs_truncate_z(acc, 0, N)


def _false_t2_lhs(N: int) -> QSeries:
    # sum_n (z;q^2)_{n+1} (q;q^2)_n z^n / (-zq;q)_{2n+1}, again windowed to
    # z-exponents [0, N] because the nth summand starts at z^n.
    term = mul_factor(qs_one(N), -1, 1, 0)
    term = div_factor(term, 1, 1, 1)
    acc = term
    for n in range(1, N + 1):
        term = mul_factor(term, -1, 1, 2 * n)
        term = mul_factor(term, -1, 0, 2 * n - 1)
        term = qs_mul_monomial(term, 1, 1, 0)
        term = div_factor(term, 1, 1, 2 * n)
        term = div_factor(term, 1, 1, 2 * n + 1)
        acc = qs_add(acc, term)
    return qs_truncate_z(acc, 0, N)


def _lerch_sum_lhs(N: int) -> QSeries:
    # (q;q)_oo (zq;q^2)_oo sum_n (z;q^2)_n q^n / ((zq;q)_n (q;q)_n)
    term = qs_one(N)
    acc = term
    for n in range(1, N + 1):
        term = mul_factor(term, -1, 1, 2 * n - 2)
        term = qs_mul_monomial(term, 1, 0, 1)
        term = div_factor(term, -1, 1, n)
        term = div_factor(term, -1, 0, n)
        acc = qs_add(acc, term)
    for k in range(1, N + 1):
        acc = mul_factor(acc, -1, 0, k)
    e = 1
    while e <= N:
        acc = mul_factor(acc, -1, 1, e)
        e += 2
    return acc


def _alt_pair_lhs(N: int) -> QSeries:
    # ((zq;q)_oo / (-q;q)_oo) sum_n (-zq;q)_{2n} q^n
    #     / ((z^2 q^2;q^2)_n (q^2;q^2)_n)
    # The weight is q^n, not (-zq)^n: this is the Heine transform of the
    # odd/even ratio sum with argument q, and only the q^n weight matches
    # the partial theta expansion 1 - zq + ... (checked by hand to q^2).
    term = qs_one(N)
    acc = term
    for n in range(1, N + 1):
        term = mul_factor(term, 1, 1, 2 * n - 1)
        term = mul_factor(term, 1, 1, 2 * n)
        term = qs_mul_monomial(term, 1, 0, 1)
        term = div_factor(term, -1, 2, 2 * n)
        term = div_factor(term, -1, 0, 2 * n)
        acc = qs_add(acc, term)
    for k in range(1, N + 1):
        acc = mul_factor(acc, -1, 1, k)
        acc = div_factor(acc, 1, 0, k)
    return acc


def _odd_even_ratio_lhs(N: int) -> QSeries:
    # sum_n (-zq;q^2)_n (-zq)^n / (-zq^2;q^2)_n
    term = qs_one(N)
    acc = term
    for n in range(1, N + 1):
        term = mul_factor(term, 1, 1, 2 * n - 1)
        term = qs_mul_monomial(term, -1, 1, 1)
        term = div_factor(term, 1, 1, 2 * n)
        acc = qs_add(acc, term)
    return acc


_FALSE_SIDES: dict[str, Callable[[int], QSeries]] = {
    "falseT1a.lhs": _false_t1a_lhs,
    "falseT1a.rhs": lambda N: _square_theta_rhs(N, 2),
    "falseT2.lhs": _false_t2_lhs,
    "falseT2.rhs": lambda N: _square_theta_rhs(N, 1),
    "falseT2a.lhs": _false_t2_lhs,
    "falseT2a.rhs": _lerch_sum_lhs,
    "RAML1.lhs": _lerch_sum_lhs,
    "RAML1.rhs": lambda N: _square_theta_rhs(N, 1),
    "RAML1A.lhs": _alt_pair_lhs,
    "RAML1A.rhs": build_partial_theta,
    "RAML1B.lhs": _alt_pair_lhs,
    "RAML1B.rhs": _odd_even_ratio_lhs,
    "Entry931.lhs": _odd_even_ratio_lhs,
    "Entry931.rhs": build_partial_theta,
}


def build_false_theta_sides(id: str, N: int) -> QSeries:
    """One side of a false theta identity, picked by a dotted id such as
    'falseT2.lhs'.

    Sides whose partial sums only stabilize inside a z-window are returned
    already truncated to z-exponents [0, N]; their records compare both
    sides inside that window. Unknown ids raise UnknownSeriesId.
    """
    try:
        fn = _FALSE_SIDES[id]
    except KeyError:
        raise UnknownSeriesId(f"unknown series id: {id!r}") from None
    return fn(N)


class SeriesName(str, Enum):
    """Names accepted by :func:`build_series` and the coeff subcommand."""

    R = "R"
    H = "H"
    K = "K"
    G_CLEARED = "G_CLEARED"
    F_MOCK3 = "F_MOCK3"
    MU_MOCK2 = "MU_MOCK2"
    S_DEF = "S_DEF"
    S_FORMULA = "S_FORMULA"
    SBAR_DEF = "SBAR_DEF"
    S2_DEF = "S2_DEF"
    CRANK_STYLE = "CRANK_STYLE"
    NBAR_RANK = "NBAR_RANK"
    MBAR_CRANK = "MBAR_CRANK"
    N2_RANK = "N2_RANK"
    M2_CRANK = "M2_CRANK"
    PARTIAL_THETA = "PARTIAL_THETA"


_Z_FREE = {SeriesName.F_MOCK3, SeriesName.MU_MOCK2}

_BUILDERS: dict[SeriesName, Callable[..., QSeries]] = {
    SeriesName.R: build_R,
    SeriesName.H: build_H,
    SeriesName.K: build_K,
    SeriesName.G_CLEARED: build_g_cleared,
    SeriesName.F_MOCK3: lambda N: build_f_mock3(N),
    SeriesName.MU_MOCK2: lambda N: build_mu_mock2(N),
    SeriesName.S_DEF: build_S_def,
    SeriesName.S_FORMULA: build_S_formula,
    SeriesName.SBAR_DEF: build_SBar_def,
    SeriesName.S2_DEF: build_S2_def,
    SeriesName.CRANK_STYLE: lambda N, z_value=None: build_crank_style(1, N, z_value),
    SeriesName.NBAR_RANK: build_H,
    SeriesName.MBAR_CRANK: lambda N, z_value=None: build_crank_style(
        1, N, z_value, overline=True
    ),
    SeriesName.N2_RANK: build_N2_rank,
    SeriesName.M2_CRANK: lambda N, z_value=None: build_crank_style(
        2, N, z_value, overline=True
    ),
    SeriesName.PARTIAL_THETA: build_partial_theta,
}


def build_series(name: SeriesName | str, N: int, z_value: int | None = None) -> QSeries:
    """Build a named series at order N.

    Accepts a SeriesName, its value as a string (case-insensitive), or a
    dotted false-theta side id. Raises UnknownSeriesId for anything else,
    and ValueError when z_value is passed for a series with no z variable.
    """
    if isinstance(name, str) and not isinstance(name, SeriesName):
        if "." in name:
            if z_value is not None:
                raise ValueError("false theta sides take no z_value")
            return build_false_theta_sides(name, N)
        try:
            name = SeriesName(name.upper())
        except ValueError:
            raise UnknownSeriesId(f"unknown series id: {name!r}") from None
    if name in _Z_FREE:
        if z_value is not None:
            raise ValueError(f"{name.value} has no z variable")
        return _BUILDERS[name](N)
    return _BUILDERS[name](N, z_value)
