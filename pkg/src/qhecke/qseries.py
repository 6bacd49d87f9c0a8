"""Truncated power series in q with Laurent-polynomial coefficients.

A QSeries of order N stores the exact coefficients of q^0 .. q^N. All
arithmetic is exact over the integers; division exists only as
multiplication by the inverse of a series whose constant term is a unit
monomial +-z^k. Identities whose natural statement divides by (1-z) or
(1-a) are handled upstream in cleared form.

Builders that sum infinitely many terms rely on every discarded term
having q-valuation above the truncation order; each builder documents its
term bound. Infinite products terminate because factor q-exponents
strictly increase.

The module also provides a plain int-list kernel (zf_* functions) for
z-free series, used by the high-order sequence computations where dict
coefficients would be wasteful.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InexactDivision, NonUnitConstantTerm, SupportOverflow
from .polyring import (
    LP_ONE,
    LP_ZERO,
    LaurentPoly,
    lp_add,
    lp_monomial,
    lp_mul,
    lp_neg,
    lp_scale,
)

INFINITY = float("inf")

#: Exponent-span cap for the coefficients of a series of order N.
#: Every series built in this repository satisfies z-degree <= q-degree
#: plus a small constant, so 4N + 16 is generous; breaching it signals a
#: construction bug.


def span_cap(order: int) -> int:
    return 4 * order + 16


@dataclass(frozen=True)
class Monomial:
    """A signed monomial +-z^{z_exp} q^{q_exp}, the argument of a
    Pochhammer symbol. q_exp must be nonnegative."""

    sign: int
    z_exp: int
    q_exp: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("Monomial sign must be +1 or -1")
        if self.q_exp < 0:
            raise ValueError("Monomial q_exp must be nonnegative")


class QSeries:
    """Exact truncated power series in q over LaurentPoly coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: list[LaurentPoly]) -> None:
        if order < 0:
            raise ValueError("order must be nonnegative")
        if len(coeffs) != order + 1:
            raise ValueError("coeffs must have exactly order+1 entries")
        self.order = order
        self.coeffs = coeffs

    def coeff(self, k: int) -> LaurentPoly:
        """Coefficient of q^k (zero beyond the truncation order)."""
        if k < 0 or k > self.order:
            return LP_ZERO
        return self.coeffs[k]

    def max_span(self) -> int:
        return max((c.span() for c in self.coeffs), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and all(
            a.terms == b.terms for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        head = ", ".join(repr(c.terms) for c in self.coeffs[:4])
        tail = ", ..." if self.order > 3 else ""
        return f"QSeries(order={self.order}, [{head}{tail}])"


def qs_zero(order: int) -> QSeries:
    return QSeries(order, [LP_ZERO] * (order + 1))


def qs_one(order: int) -> QSeries:
    return QSeries(order, [LP_ONE] + [LP_ZERO] * order)


def qs_monomial(c: int, z_exp: int, q_exp: int, order: int) -> QSeries:
    """The series c * z^{z_exp} * q^{q_exp} at the given order."""
    coeffs = [LP_ZERO] * (order + 1)
    if c and 0 <= q_exp <= order:
        coeffs[q_exp] = lp_monomial(c, z_exp)
    return QSeries(order, coeffs)


def qs_add(f: QSeries, g: QSeries) -> QSeries:
    n = min(f.order, g.order)
    return QSeries(n, [lp_add(f.coeffs[k], g.coeffs[k]) for k in range(n + 1)])


def qs_neg(f: QSeries) -> QSeries:
    return QSeries(f.order, [lp_neg(c) for c in f.coeffs])


def qs_sub(f: QSeries, g: QSeries) -> QSeries:
    n = min(f.order, g.order)
    return QSeries(
        n, [lp_add(f.coeffs[k], lp_neg(g.coeffs[k])) for k in range(n + 1)]
    )


def _merged(dst: dict[int, int], src: dict[int, int], c: int, shift: int) -> dict[int, int]:
    """dst + c * z^shift * src as a fresh dict (inputs untouched)."""
    out = dict(dst)
    for e, v in src.items():
        key = e + shift
        s = out.get(key, 0) + c * v
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def qs_mul(f: QSeries, g: QSeries) -> QSeries:
    """Exact truncated product; enforces the exponent-span cap."""
    n = min(f.order, g.order)
    cap = span_cap(n)
    fc = f.coeffs
    gc = g.coeffs
    out: list[dict[int, int]] = [{} for _ in range(n + 1)]
    for i in range(n + 1):
        fi = fc[i].terms
        if not fi:
            continue
        for j in range(n + 1 - i):
            gj = gc[j].terms
            if not gj:
                continue
            acc = out[i + j]
            for ef, vf in fi.items():
                for eg, vg in gj.items():
                    e = ef + eg
                    s = acc.get(e, 0) + vf * vg
                    if s:
                        acc[e] = s
                    else:
                        del acc[e]
    coeffs: list[LaurentPoly] = []
    for acc in out:
        if acc and max(acc) - min(acc) > cap:
            raise SupportOverflow(
                f"series product span {max(acc) - min(acc)} exceeds cap {cap}"
            )
        coeffs.append(LaurentPoly._raw(acc))
    return QSeries(n, coeffs)


def qs_mul_monomial(f: QSeries, c: int, z_exp: int = 0, q_exp: int = 0) -> QSeries:
    """f times c * z^{z_exp} * q^{q_exp} (cheap, no convolution)."""
    n = f.order
    coeffs = [LP_ZERO] * (n + 1)
    if c:
        for k in range(q_exp, n + 1):
            src = f.coeffs[k - q_exp]
            if src.terms:
                coeffs[k] = lp_scale(src, c, z_exp)
    return QSeries(n, coeffs)


def qs_scale_poly(f: QSeries, p: LaurentPoly) -> QSeries:
    """f times a fixed Laurent polynomial in z (applied coefficient-wise)."""
    cap = span_cap(f.order)
    coeffs = [
        lp_mul(c, p, span_cap=cap) if c.terms else LP_ZERO for c in f.coeffs
    ]
    return QSeries(f.order, coeffs)


def mul_factor(f: QSeries, c: int, z_exp: int, q_exp: int) -> QSeries:
    """f times (1 + c * z^{z_exp} * q^{q_exp}).

    Linear in the support of f; this and div_factor are the hot path for
    every Pochhammer-style product in the package.
    """
    n = f.order
    fc = f.coeffs
    if c == 0 or q_exp > n:
        return QSeries(n, list(fc))
    coeffs: list[LaurentPoly] = []
    for k in range(n + 1):
        if k < q_exp:
            coeffs.append(fc[k])
        else:
            src = fc[k - q_exp].terms
            if src:
                coeffs.append(LaurentPoly._raw(_merged(fc[k].terms, src, c, z_exp)))
            else:
                coeffs.append(fc[k])
    return QSeries(n, coeffs)


def div_factor(f: QSeries, c: int, z_exp: int, q_exp: int) -> QSeries:
    """f divided by (1 + c * z^{z_exp} * q^{q_exp}), requiring q_exp >= 1.

    Uses the recurrence g[k] = f[k] - c * z^{z_exp} * g[k - q_exp]; a
    factor with q_exp = 0 has a non-monomial constant term and is refused.
    """
    if q_exp < 1:
        raise NonUnitConstantTerm(
            "factor division requires a positive q-exponent in the factor"
        )
    n = f.order
    if c == 0 or q_exp > n:
        return QSeries(n, list(f.coeffs))
    coeffs: list[LaurentPoly] = list(f.coeffs)
    for k in range(q_exp, n + 1):
        src = coeffs[k - q_exp].terms
        if src:
            coeffs[k] = LaurentPoly._raw(_merged(coeffs[k].terms, src, -c, z_exp))
    return QSeries(n, coeffs)


def qs_invert(f: QSeries) -> QSeries:
    """Multiplicative inverse to the truncation order.

    The constant term must be a unit monomial +-z^k; otherwise
    NonUnitConstantTerm is raised (for example (z;q)_oo with constant
    term 1 - z is not invertible here).
    """
    head = f.coeffs[0].terms
    if len(head) != 1:
        raise NonUnitConstantTerm("constant term is not a single monomial")
    (k0, c0), = head.items()
    if c0 not in (1, -1):
        raise NonUnitConstantTerm("constant coefficient is not +1 or -1")
    n = f.order
    inv0 = lp_monomial(c0, -k0)
    out: list[LaurentPoly] = [inv0] + [LP_ZERO] * n
    for m in range(1, n + 1):
        acc: dict[int, int] = {}
        for j in range(1, m + 1):
            fj = f.coeffs[j].terms
            gj = out[m - j].terms
            if not fj or not gj:
                continue
            for ef, vf in fj.items():
                for eg, vg in gj.items():
                    e = ef + eg
                    s = acc.get(e, 0) + vf * vg
                    if s:
                        acc[e] = s
                    else:
                        del acc[e]
        # g[m] = -(1/f0) * sum, and 1/f0 = c0 * z^{-k0}
        out[m] = lp_scale(LaurentPoly._raw(acc), -c0, -k0)
    return QSeries(n, out)


def pochhammer(a: Monomial, n, N: int, step: int = 1) -> QSeries:
    """The q-Pochhammer product (a; q^step)_n truncated at order N.

    Multiplies the factors (1 - a * q^{step*k}) for k < n, or for
    INFINITY until the factor's q-power exceeds N. Factors congruent to 1
    modulo q^{N+1} are skipped.
    """
    if step < 1:
        raise ValueError("step must be a positive integer")
    out = qs_one(N)
    c = -a.sign
    k = 0
    while True:
        if n is not INFINITY and k >= n:
            break
        q_e = a.q_exp + step * k
        if q_e > N:
            break
        out = mul_factor(out, c, a.z_exp, q_e)
        k += 1
    return out


def pochhammer_step2(a: Monomial, n, N: int) -> QSeries:
    """The base q^2 product (a; q^2)_n truncated at order N."""
    return pochhammer(a, n, N, step=2)


def gauss_binomial(n: int, k: int, step: int = 1, order: int | None = None) -> QSeries:
    """The Gaussian binomial [n choose k] in base q^step as a QSeries.

    Computed from the product formula by exact integer polynomial
    division; the quotient is a polynomial by theory, so a nonzero
    remainder raises InexactDivision. Without an explicit order the
    series is exactly the polynomial, of degree step*k*(n-k).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return qs_zero(order if order is not None else 0)
    # Work in the variable Q = q^step over a dense int list.
    num = [1]
    for i in range(n - k + 1, n + 1):
        num = _poly_mul_one_minus(num, i)
    for i in range(1, k + 1):
        num = _poly_div_one_minus(num, i)
    deg = k * (n - k)
    assert len(num) == deg + 1
    target = order if order is not None else step * deg
    coeffs = [LP_ZERO] * (target + 1)
    for j, v in enumerate(num):
        e = step * j
        if v and e <= target:
            coeffs[e] = lp_monomial(v, 0)
    return QSeries(target, coeffs)


def _poly_mul_one_minus(f: list[int], i: int) -> list[int]:
    """f(Q) * (1 - Q^i) over dense int lists."""
    out = f + [0] * i
    for j, v in enumerate(f):
        out[j + i] -= v
    return out


def _poly_div_one_minus(f: list[int], i: int) -> list[int]:
    """f(Q) / (1 - Q^i), raising InexactDivision on a nonzero remainder."""
    g = [0] * len(f)
    for j, v in enumerate(f):
        g[j] = v + (g[j - i] if j >= i else 0)
    for j in range(len(f) - i, len(f)):
        if j >= 0 and g[j]:
            raise InexactDivision("gaussian binomial division left a remainder")
    new_len = len(f) - i
    return g[:new_len] if new_len > 0 else [0]


def qs_first_mismatch(
    f: QSeries, g: QSeries
) -> tuple[int, int, int, int] | None:
    """First (q_exp, z_exp, f_val, g_val) where the series differ.

    Scans q-orders ascending, z-exponents ascending, up to the smaller of
    the two orders; returns None when they agree on that range.
    """
    for k in range(min(f.order, g.order) + 1):
        a, b = f.coeffs[k].terms, g.coeffs[k].terms
        if a != b:
            for e in sorted(set(a) | set(b)):
                va, vb = a.get(e, 0), b.get(e, 0)
                if va != vb:
                    return k, e, va, vb
    return None


def qs_substitute_neg_q(f: QSeries) -> QSeries:
    """Substitute q -> -q (negate odd-order coefficients)."""
    coeffs = [
        c if k % 2 == 0 else lp_neg(c) for k, c in enumerate(f.coeffs)
    ]
    return QSeries(f.order, coeffs)


def geometric_z_sum(n: int) -> LaurentPoly:
    """1 + z + ... + z^{n-1}, the pole-free form of (z^n - 1)/(z - 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return LaurentPoly._raw({e: 1 for e in range(n)})


def qs_truncate_z(f: QSeries, lo: int, hi: int) -> QSeries:
    """Drop every z-exponent outside [lo, hi] from every coefficient.

    Used by identities that only stabilize inside a z-window; the window
    semantics are documented at the registry records that need it.
    """
    coeffs = []
    for c in f.coeffs:
        kept = {e: v for e, v in c.terms.items() if lo <= e <= hi}
        coeffs.append(LaurentPoly._raw(kept) if len(kept) != len(c.terms) else c)
    return QSeries(f.order, coeffs)


def qs_collapse_z(f: QSeries, z0: int) -> QSeries:
    """Evaluate every coefficient at z0 in {1, -1}, giving a z-free series."""
    if z0 not in (1, -1):
        raise ValueError("collapse point must be +1 or -1")
    coeffs = []
    for c in f.coeffs:
        if z0 == 1:
            v = sum(c.terms.values())
        else:
            v = sum(x if e % 2 == 0 else -x for e, x in c.terms.items())
        coeffs.append(lp_monomial(v, 0))
    return QSeries(f.order, coeffs)


# ---------------------------------------------------------------------------
# z-free fast kernel: dense int lists indexed by q-exponent.
# ---------------------------------------------------------------------------


def zf_one(N: int) -> list[int]:
    out = [0] * (N + 1)
    out[0] = 1
    return out


def zf_zero(N: int) -> list[int]:
    return [0] * (N + 1)


def zf_mul_factor(f: list[int], c: int, e: int) -> None:
    """In place: f *= (1 + c*q^e), with e >= 1."""
    if e < 1:
        raise ValueError("zf_mul_factor needs a positive q-exponent")
    for k in range(len(f) - 1, e - 1, -1):
        v = f[k - e]
        if v:
            f[k] += c * v


def zf_div_factor(f: list[int], c: int, e: int) -> None:
    """In place: f /= (1 + c*q^e), with e >= 1."""
    if e < 1:
        raise ValueError("zf_div_factor needs a positive q-exponent")
    for k in range(e, len(f)):
        v = f[k - e]
        if v:
            f[k] -= c * v


def zf_shift(f: list[int], e: int) -> list[int]:
    """f * q^e at the same truncation length."""
    if e == 0:
        return list(f)
    return [0] * min(e, len(f)) + f[: max(len(f) - e, 0)]


def zf_add_into(dst: list[int], src: list[int], scale: int = 1, shift: int = 0) -> None:
    for k in range(shift, len(dst)):
        v = src[k - shift] if 0 <= k - shift < len(src) else 0
        if v:
            dst[k] += scale * v


def zf_mul(f: list[int], g: list[int]) -> list[int]:
    """Truncated product of two int lists of equal length."""
    n = min(len(f), len(g))
    out = [0] * n
    for i, vf in enumerate(f[:n]):
        if vf:
            lim = n - i
            for j, vg in enumerate(g[:lim]):
                if vg:
                    out[i + j] += vf * vg
    return out


def zf_pochhammer_inf(e0: int, step: int, sign: int, f: list[int]) -> None:
    """In place: f *= prod_{j>=0} (1 - sign*q^{e0 + j*step})."""
    N = len(f) - 1
    e = e0
    while e <= N:
        if e >= 1:
            zf_mul_factor(f, -sign, e)
        e += step


def zf_to_qseries(f: list[int]) -> QSeries:
    return QSeries(len(f) - 1, [lp_monomial(v, 0) for v in f])
