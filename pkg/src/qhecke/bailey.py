"""Bailey pair machinery over an exact series ring.

The auxiliary parameter a is carried in the Laurent slot of QSeries, so
alpha_n and beta_n are series in q whose coefficients are integer Laurent
polynomials in a. Everything here either returns a small report dict on
success or raises VerificationFailed pointing at the first bad
coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable

from .errors import VerificationFailed
from .qseries import (
    QSeries,
    div_factor,
    mul_factor,
    qs_add,
    qs_first_mismatch,
    qs_monomial,
    qs_mul,
    qs_mul_monomial,
    qs_one,
    qs_sub,
    qs_zero,
    zf_add_into,
    zf_div_factor,
    zf_mul,
    zf_one,
    zf_zero,
)


@dataclass(frozen=True)
class BaileyPair:
    """Families alpha_n(a, q), beta_n(a, q) tied by the triangular relation

        beta_n = sum_{r=0}^{n} alpha_r / ((q;q)_{n-r} (aq;q)_{n+r}).

    Both callables take (n, order) and return a QSeries.
    """

    alpha: Callable[[int, int], QSeries]
    beta: Callable[[int, int], QSeries]


def _inv_poch_q(n: int, N: int) -> QSeries:
    """1 / (q;q)_n."""
    f = qs_one(N)
    for k in range(1, n + 1):
        f = div_factor(f, -1, 0, k)
    return f


def _inv_poch_aq(n: int, N: int) -> QSeries:
    """1 / (aq;q)_n with a in the Laurent slot."""
    f = qs_one(N)
    for k in range(1, n + 1):
        f = div_factor(f, -1, 1, k)
    return f


def pair1() -> BaileyPair:
    """The unit-beta seed pair:

    alpha_0 = 1 and alpha_n = a^n q^{n^2+n} - a^{n-1} q^{n^2-n} for n >= 1,
    with beta_n = q^n / ((q;q)_n (aq;q)_n).
    """

    def alpha(n: int, N: int) -> QSeries:
        if n == 0:
            return qs_one(N)
        return qs_sub(
            qs_monomial(1, n, n * n + n, N),
            qs_monomial(1, n - 1, n * n - n, N),
        )

    def beta(n: int, N: int) -> QSeries:
        f = qs_mul(_inv_poch_q(n, N), _inv_poch_aq(n, N))
        return qs_mul_monomial(f, 1, 0, n)

    return BaileyPair(alpha=alpha, beta=beta)


def verify_pair(p: BaileyPair, n_max: int, N: int) -> dict:
    """Check the defining triangular relation for every n <= n_max."""
    inv_q = [qs_one(N)]
    for k in range(1, n_max + 1):
        inv_q.append(div_factor(inv_q[-1], -1, 0, k))
    inv_aq = [qs_one(N)]
    for k in range(1, 2 * n_max + 1):
        inv_aq.append(div_factor(inv_aq[-1], -1, 1, k))
    alphas = [p.alpha(r, N) for r in range(n_max + 1)]
    for n in range(n_max + 1):
        rhs = qs_zero(N)
        for r in range(n + 1):
            rhs = qs_add(rhs, qs_mul(alphas[r], qs_mul(inv_q[n - r], inv_aq[n + r])))
        bad = qs_first_mismatch(p.beta(n, N), rhs)
        if bad is not None:
            k, e, lv, rv = bad
            raise VerificationFailed(
                f"pair relation fails at n={n}",
                n=n, q_exp=k, a_exp=e, beta=lv, triangular_sum=rv,
            )
    return {"ok": True, "pairs_checked": n_max + 1, "order": N}


def limit_transform(p: BaileyPair) -> BaileyPair:
    """One iteration step: alpha_n picks up a^n q^{n^2} and beta_n becomes
    sum_{j<=n} a^j q^{j^2} beta_j / (q;q)_{n-j}. The output satisfies the
    same triangular relation whenever the input does."""

    def alpha(n: int, N: int) -> QSeries:
        return qs_mul_monomial(p.alpha(n, N), 1, n, n * n)

    def beta(n: int, N: int) -> QSeries:
        acc = qs_zero(N)
        for j in range(n + 1):
            t = qs_mul(p.beta(j, N), _inv_poch_q(n - j, N))
            acc = qs_add(acc, qs_mul_monomial(t, 1, j, j * j))
        return acc

    return BaileyPair(alpha=alpha, beta=beta)


def verify_limit_sum(p: BaileyPair, N: int) -> dict:
    """Check the order-infinity form of the triangular relation,

        sum_j a^j q^{j^2} beta_j = (1/(aq;q)_oo) sum_r a^r q^{r^2} alpha_r,

    to order N. Only j, r <= floor(sqrt(N)) can contribute."""
    lhs = qs_zero(N)
    rhs_sum = qs_zero(N)
    for j in range(isqrt(N) + 1):
        lhs = qs_add(lhs, qs_mul_monomial(p.beta(j, N), 1, j, j * j))
        rhs_sum = qs_add(rhs_sum, qs_mul_monomial(p.alpha(j, N), 1, j, j * j))
    rhs = rhs_sum
    for k in range(1, N + 1):
        rhs = div_factor(rhs, -1, 1, k)
    bad = qs_first_mismatch(lhs, rhs)
    if bad is not None:
        k, e, lv, rv = bad
        raise VerificationFailed(
            "limiting sum fails", q_exp=k, a_exp=e, lhs=lv, rhs=rv
        )
    return {"ok": True, "order": N}


def a1_lhs(n: int, N: int) -> QSeries:
    """sum_{j=0}^{n} a^j q^{j^2+j} / ((q)_{n-j} (q)_j (aq)_j)."""
    acc = qs_zero(N)
    for j in range(n + 1):
        t = qs_mul(_inv_poch_q(n - j, N), qs_mul(_inv_poch_q(j, N), _inv_poch_aq(j, N)))
        acc = qs_add(acc, qs_mul_monomial(t, 1, j, j * j + j))
    return acc


def a1_rhs(n: int, N: int) -> QSeries:
    """sum_{j=0}^{n} (-1)^j a^j q^{j(j+1)/2} / ((q)_{n-j} (aq)_n)."""
    inner = qs_zero(N)
    for j in range(n + 1):
        sign = -1 if j % 2 else 1
        inner = qs_add(
            inner,
            qs_mul_monomial(_inv_poch_q(n - j, N), sign, j, j * (j + 1) // 2),
        )
    return qs_mul(inner, _inv_poch_aq(n, N))


def verify_A1(n_max: int, N: int) -> dict:
    """Check a1_lhs(n) = a1_rhs(n), a finite-sum transform in a and q,
    for every n <= n_max."""
    for n in range(n_max + 1):
        bad = qs_first_mismatch(a1_lhs(n, N), a1_rhs(n, N))
        if bad is not None:
            k, e, lv, rv = bad
            raise VerificationFailed(
                f"finite sum transform fails at n={n}",
                n=n, q_exp=k, a_exp=e, lhs=lv, rhs=rv,
            )
    return {"ok": True, "n_max": n_max, "order": N}


def slater_lhs(n: int, N: int) -> QSeries:
    """Pole-cleared unit-pair sum
    sum_{r=0}^{n} (1 - a q^{2r}) q^{r^2-r} a^r / ((aq)_{n+r} (q)_{n-r}).

    This is the defining sum with one factor (1 - a) cleared from every
    (a;q)_{n+r+1}, keeping all constant terms invertible.
    """
    acc = qs_zero(N)
    for r in range(n + 1):
        t = qs_mul(_inv_poch_aq(n + r, N), _inv_poch_q(n - r, N))
        t = qs_mul_monomial(t, 1, r, r * r - r)
        t = mul_factor(t, -1, 1, 2 * r)
        acc = qs_add(acc, t)
    return acc


def slater_rhs(n: int, N: int) -> QSeries:
    """The matching cleared right side: (1 - a) for n = 0, and
    1 / ((q)_n (aq)_{n-1}) for n >= 1."""
    if n == 0:
        return qs_sub(qs_one(N), qs_monomial(1, 1, 0, N))
    return qs_mul(_inv_poch_q(n, N), _inv_poch_aq(n - 1, N))


def verify_slater_cleared(n_max: int, N: int) -> dict:
    """Check slater_lhs(n) = slater_rhs(n) for every n <= n_max."""
    for n in range(n_max + 1):
        bad = qs_first_mismatch(slater_lhs(n, N), slater_rhs(n, N))
        if bad is not None:
            k, e, lv, rv = bad
            raise VerificationFailed(
                f"cleared unit-pair identity fails at n={n}",
                n=n, q_exp=k, a_exp=e, lhs=lv, rhs=rv,
            )
    return {"ok": True, "n_max": n_max, "order": N}


def niceid_lhs(k: int, N: int) -> list[int]:
    """Left side at a = q^k: the double sum

        sum_{j>=0} q^{j^2+jk} / (q)_{j+k} *
            sum_{n=0}^{j} (-1)^n q^{n(n+1)/2 + nk} / (q)_{j-n}

    as a dense coefficient list."""
    inv_q: list[list[int]] = [zf_one(N)]
    j_max = isqrt(N) + 1
    for i in range(1, j_max + k + 1):
        nxt = list(inv_q[-1])
        zf_div_factor(nxt, -1, i)
        inv_q.append(nxt)
    acc = zf_zero(N)
    for j in range(j_max + 1):
        if j * j + j * k > N:
            break
        inner = zf_zero(N)
        for n in range(j + 1):
            shift = n * (n + 1) // 2 + n * k
            if shift > N:
                break
            zf_add_into(inner, inv_q[j - n], -1 if n % 2 else 1, shift)
        zf_add_into(acc, zf_mul(inner, inv_q[j + k]), 1, j * j + j * k)
    return acc


def niceid_rhs(k: int, N: int) -> list[int]:
    """Right side at a = q^k: a theta-style difference over 1/(q;q)_oo,

        (sum_{r>=0} q^{3r^2+3rk+r} - sum_{r>=1} q^{3r^2+3rk-r-k}) / (q)_oo.
    """
    acc = zf_zero(N)
    r = 0
    while 3 * r * r + 3 * r * k + r <= N:
        acc[3 * r * r + 3 * r * k + r] += 1
        r += 1
    r = 1
    while 3 * r * r + 3 * r * k - r - k <= N:
        acc[3 * r * r + 3 * r * k - r - k] -= 1
        r += 1
    for e in range(1, N + 1):
        zf_div_factor(acc, -1, e)
    return acc


def verify_niceid(k_max: int, N: int) -> dict:
    """Check the a = q^k specialization family for every k <= k_max."""
    for k in range(k_max + 1):
        lhs = niceid_lhs(k, N)
        rhs = niceid_rhs(k, N)
        if lhs != rhs:
            i = next(i for i in range(N + 1) if lhs[i] != rhs[i])
            raise VerificationFailed(
                f"specialized identity fails at k={k}",
                k=k, q_exp=i, lhs=lhs[i], rhs=rhs[i],
            )
    return {"ok": True, "k_max": k_max, "order": N}
