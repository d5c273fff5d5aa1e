"""Numerical evaluation of q-shifted factorials and basic hypergeometric series.

All functions work with plain ``complex`` scalars by default and propagate
mpmath types unchanged, so an extended-precision evaluation is obtained by
passing ``mpmath.mpc`` arguments (see :func:`to_mp`).

Conventions follow Gasper and Rahman, *Basic Hypergeometric Series*:

.. math::

    (a;q)_k = \\prod_{i=0}^{k-1}(1 - a q^i), \\qquad
    (a;q)_\\infty = \\prod_{i=0}^{\\infty}(1 - a q^i), \\quad 0 < q < 1,

with ``(a;q)_n = 1/(aq^n;q)_{-n}`` for negative ``n``.  The series
``phi_rs`` is the standard :math:`{}_r\\phi_s`, and ``w87`` the
very-well-poised :math:`{}_8W_7`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import DegenerateParameter, NonConvergent

INFINITY = math.inf

# modulus below which a denominator factor counts as an exact zero
_ZERO_FACTOR = 1e3 * 2.2204460492503131e-16

# tolerance for recognizing a parameter of the form q^(-n)
_TERMINATION_TOL = 1e-10


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation control for infinite sums and products.

    ``rel_tol``    relative size below which increments count as negligible
    ``max_terms``  hard cap on the number of terms before giving up
    ``tail_run``   number of consecutive negligible increments required
                   to accept truncation (a single small term is unreliable
                   for q close to 1)
    """

    rel_tol: float = 1e-12
    max_terms: int = 10000
    tail_run: int = 3

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.max_terms >= 1 and self.tail_run >= 1):
            raise ValueError("invalid SeriesConfig")


_DEFAULT_CFG = SeriesConfig()


def _is_mp(*vals) -> bool:
    return any(isinstance(v, (mpmath.mpf, mpmath.mpc)) for v in vals)


def to_mp(x, dps: int):
    """Convert a scalar to an mpmath complex at ``dps`` decimal digits."""
    with mpmath.workdps(dps):
        return mpmath.mpc(x)


def _check_q(q):
    qf = float(abs(q))
    if not (0.0 < qf < 1.0) or (hasattr(q, "imag") and abs(complex(q).imag) > 0):
        raise ValueError(f"q must be real in (0,1), got {q}")


def _terminating_index(a, q, limit: int) -> int | None:
    """Smallest n >= 0 with a = q^(-n), or None."""
    mag = abs(a)
    if mag < 1.0 - 1e-9:
        return None
    # |q^-n| = q^-n grows monotonically, so only one candidate n
    n = int(round(-math.log(float(mag)) / math.log(float(q))))
    for cand in (n - 1, n, n + 1):
        if 0 <= cand <= limit and abs(a * q**cand - 1) < _TERMINATION_TOL:
            return cand
    return None


def q_pochhammer(a, q, k=INFINITY, cfg: SeriesConfig | None = None):
    """q-shifted factorial (a;q)_k for integer, negative or infinite k."""
    cfg = cfg or _DEFAULT_CFG
    _check_q(q)
    one = a * 0 + 1
    if k is INFINITY or k == INFINITY:
        prod = one
        run = 0
        i = 0
        factor = a * one
        while i < cfg.max_terms:
            prod = prod * (1 - factor)
            if abs(factor) < cfg.rel_tol:
                run += 1
                if run >= cfg.tail_run:
                    return prod
            else:
                run = 0
            factor = factor * q
            i += 1
        raise NonConvergent("infinite q-Pochhammer did not settle")
    k = int(k)
    if k >= 0:
        prod = one
        for i in range(k):
            prod = prod * (1 - a * q**i)
        return prod
    # (a;q)_{-m} = 1 / (a q^{-m}; q)_m
    m = -k
    den = one
    for i in range(m):
        factor = 1 - a * q ** (k + i)
        if abs(factor) < _ZERO_FACTOR:
            raise DegenerateParameter(
                "zero factor in negative-index q-Pochhammer denominator"
            )
        den = den * factor
    return 1 / den


def qp_inf(values, q, cfg: SeriesConfig | None = None):
    """Product of (x;q)_infinity over an iterable of arguments."""
    prod = 1
    for x in values:
        prod = prod * q_pochhammer(x, q, INFINITY, cfg)
    return prod


def phi_rs(num, den, q, z, cfg: SeriesConfig | None = None):
    """Basic hypergeometric series r_phi_s(num; den; q, z).

    Terminates exactly when a numerator parameter equals q^(-n).  A
    denominator parameter of the form q^(-m) raises DegenerateParameter
    unless the series terminates at or before the vanishing factor.
    """
    cfg = cfg or _DEFAULT_CFG
    _check_q(q)
    num = list(num)
    den = list(den)
    extra_pow = 1 + len(den) - len(num)

    n_cut = None
    for a in num:
        n = _terminating_index(a, q, cfg.max_terms)
        if n is not None:
            n_cut = n if n_cut is None else min(n_cut, n)

    if n_cut is None and abs(z) >= 1 and extra_pow <= 0:
        raise NonConvergent("non-terminating series with |z| >= 1")

    total = 0
    term = z * 0 + 1
    run = 0
    k = 0
    while k <= cfg.max_terms:
        total = total + term
        if n_cut is not None and k == n_cut:
            return total
        if n_cut is None and abs(term) < cfg.rel_tol * max(1.0, abs(total)):
            run += 1
            if run >= cfg.tail_run:
                return total
        else:
            run = 0
        # update term k -> k+1
        qk = q**k
        for a in num:
            term = term * (1 - a * qk)
        dfac = 1 - q ** (k + 1)
        for b in den:
            f = 1 - b * qk
            if abs(f) < _ZERO_FACTOR:
                raise DegenerateParameter(
                    f"denominator parameter {b} hit a zero factor at k={k}"
                )
            dfac = dfac * f
        term = term / dfac * z
        if extra_pow:
            term = term * ((-1) ** extra_pow) * (qk**extra_pow)
        k += 1
    raise NonConvergent("phi_rs reached max_terms without tail criterion")


def w87(a, a1, a2, a3, a4, a5, q, z, cfg: SeriesConfig | None = None):
    """Very-well-poised 8W7(a; a1..a5; q, z).

    The pair of parameters q*sqrt(a), -q*sqrt(a) contributes the factor
    (1 - a q^{2k})/(1 - a) to the k-th term; that closed form is used
    directly, which is branch-free and equal to the principal-branch
    evaluation of the underlying 8phi7.
    """
    cfg = cfg or _DEFAULT_CFG
    _check_q(q)
    if abs(1 - a) < _ZERO_FACTOR:
        raise DegenerateParameter("8W7 head parameter equals 1")
    params = [a1, a2, a3, a4, a5]
    lower = []
    for p in params:
        lp = q * a / p
        m = _terminating_index(lp, q, cfg.max_terms)
        if m is not None and m > 0:
            # potential zero denominator at k = m; only safe if the series
            # terminates strictly before that (checked below)
            pass
        lower.append(lp)

    n_cut = None
    for p in [a] + params:
        n = _terminating_index(p, q, cfg.max_terms)
        if n is not None:
            n_cut = n if n_cut is None else min(n_cut, n)

    if n_cut is None and abs(z) >= 1:
        raise NonConvergent("non-terminating 8W7 with |z| >= 1")

    total = 0
    base = z * 0 + 1
    run = 0
    k = 0
    while k <= cfg.max_terms:
        term = base * (1 - a * q ** (2 * k)) / (1 - a)
        total = total + term
        if n_cut is not None and k == n_cut:
            return total
        if n_cut is None and abs(term) < cfg.rel_tol * max(1.0, abs(total)):
            run += 1
            if run >= cfg.tail_run:
                return total
        else:
            run = 0
        qk = q**k
        base = base * (1 - a * qk)
        for p in params:
            base = base * (1 - p * qk)
        dfac = 1 - q ** (k + 1)
        for lp in lower:
            f = 1 - lp * qk
            if abs(f) < _ZERO_FACTOR:
                raise DegenerateParameter(
                    "8W7 denominator parameter of the form q^(-m)"
                )
            dfac = dfac * f
        base = base / dfac * z
        k += 1
    raise NonConvergent("w87 reached max_terms without tail criterion")


# ---------------------------------------------------------------------------
# classical transformation formulas, used as test oracles
# ---------------------------------------------------------------------------

WATSON_III18 = "WATSON_III18"
SEARS_III15 = "SEARS_III15"
VWP_III24 = "VWP_III24"


def _rel_residual(lhs, rhs) -> float:
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0))


def _r_prefactor(a, b, c, d, q, gamma, z, cfg):
    t = q**gamma
    numv = [a * b * t, a * c * t, a * d * t, b * c * d * t / z]
    denv = [b * c * t, b * d * t, c * d * t, a * z * t]
    return qp_inf(numv, q, cfg) / qp_inf(denv, q, cfg) * (a / z) ** gamma


def check_transformation(ident, params, q, z=None, cfg: SeriesConfig | None = None):
    """Relative residual of a classical two-sided identity.

    ``ident`` selects the formula; ``params`` carries the free quantities of
    the substitution in which the identity is exercised:

    * ``VWP_III24``: Bailey's transformation between two very-well-poised
      8W7 series.  ``params`` has keys a, b, c, d, gamma and optionally
      ``variant`` ("r", the default, or "s" for the companion substitution);
      ``z`` is the spectral variable.
    * ``WATSON_III18``: Watson's 8W7 -> terminating 4phi3 reduction, in the
      bound-state substitution a = d q^alpha, z = d q^k.  ``params`` has
      keys b, c, d, alpha, k, gamma.
    * ``SEARS_III15``: Sears' transformation between the two terminating
      balanced 4phi3 forms of the same bound-state value, under d^2 = q^l.
      ``params`` has keys b, c, l, alpha, k, gamma and optionally ``sign``.

    Both sides are evaluated independently with :func:`w87` / :func:`phi_rs`;
    the return value is |LHS - RHS| / max(|LHS|, |RHS|, 1).
    """
    cfg = cfg or _DEFAULT_CFG
    if ident == VWP_III24:
        a, b, c, d = params["a"], params["b"], params["c"], params["d"]
        gamma = params["gamma"]
        variant = params.get("variant", "r")
        if z is None:
            raise ValueError("VWP_III24 requires z")
        t = q**gamma
        abcd = a * b * c * d
        if variant == "r":
            lhs = w87(b * c * d / (q * z), b / z, c / z, d / z,
                      abcd * t / q, 1 / t, q, q * z / a, cfg)
            pref_num = [b * c * d / z, abcd * t / q, q * b / a, q * c / a,
                        q * d / a, z * q / (a * t)]
            pref_den = [b * c, b * d, c * d, b * c * d * t / z,
                        q**2 / (a * a * t), q * z / a]
            rhs_w = w87(q / (a * a * t), q / (a * b * t), q / (a * c * t),
                        q / (a * d * t), q * z / a, q / (a * z),
                        q, abcd * t / q, cfg)
        elif variant == "s":
            lhs = w87(b * c * d * z * t * t, b * c * t, b * d * t, c * d * t,
                      q * t, z * q / a, q, a * z, cfg)
            pref_num = [b * c * d * z * t * t * q, q * t, a * b * c * z * t,
                        a * b * d * z * t, a * c * d * z * t, q * z * z]
            pref_den = [b * z * t * q, c * z * t * q, d * z * t * q,
                        abcd * t * t, abcd * z * z * t, a * z]
            rhs_w = w87(abcd * z * z * t / q, a * z, b * z, c * z, d * z,
                        abcd * t / q, q, q * t, cfg)
        else:
            raise ValueError(f"unknown variant {variant!r}")
        rhs = qp_inf(pref_num, q, cfg) / qp_inf(pref_den, q, cfg) * rhs_w
        return _rel_residual(lhs, rhs)

    if ident == WATSON_III18:
        b, c, d = params["b"], params["c"], params["d"]
        alpha, k, gamma = params["alpha"], params["k"], params["gamma"]
        a = d * q**alpha
        zk = d * q**k
        t = q**gamma
        abcd = a * b * c * d
        lhs = _r_prefactor(a, b, c, d, q, gamma, zk, cfg) * w87(
            b * c * d / (q * zk), b / zk, c / zk, d / zk,
            abcd * t / q, 1 / t, q, q * zk / a, cfg)
        d2 = d * d
        pref = (
            q ** ((alpha - k) * gamma)
            * q_pochhammer(d2 * t * q**alpha, q, k, cfg)
            * q_pochhammer(b * c * q**-k, q, k, cfg)
            / (q_pochhammer(b * d * t, q, alpha, cfg)
               * q_pochhammer(c * d * t, q, alpha, cfg))
            * q_pochhammer(q ** (1 - alpha - k) / d2, q, k, cfg)
            / q_pochhammer(q ** (1 - alpha - k) / (d2 * t), q, k, cfg)
        )
        rhs = pref * phi_rs(
            [d2 * q**k, b * c * d2 * t * q ** (alpha - 1), 1 / t, q**-k],
            [c * d, b * d, d2 * q**alpha], q, q, cfg)
        return _rel_residual(lhs, rhs)

    if ident == SEARS_III15:
        b, c = params["b"], params["c"]
        l, alpha, k, gamma = params["l"], params["alpha"], params["k"], params["gamma"]
        sign = params.get("sign", 1)
        d = sign * q ** (l / 2.0)
        d2 = q ** float(l)
        t = q**gamma
        d2g = d2**gamma  # d^(2 gamma), branch-free since d^2 > 0
        common = (
            q ** ((alpha + k) * gamma) * d2g
            * qp_inf([d2 * t * q**alpha, b * c * d2 * t * q ** (alpha - 1)], q, cfg)
            / qp_inf([q * t, b * c * t], q, cfg)
        )
        side_a = (
            common
            * q_pochhammer(d2 * q**k, q, alpha - k - 1, cfg)
            / (q_pochhammer(b * d * t, q, k + 1, cfg)
               * q_pochhammer(c * d * t, q, k + 1, cfg))
            * phi_rs(
                [q ** (k + 1), b * c * t, q * t, q ** (-alpha + k + 1)],
                [c * d * t * q ** (k + 1), b * d * t * q ** (k + 1),
                 q ** (2 - alpha) / d2],
                q, q, cfg)
        )
        fg = (
            q ** (gamma * alpha) / (q_pochhammer(b * d * t, q, alpha, cfg)
                                    * q_pochhammer(c * d * t, q, alpha, cfg))
            * q ** (gamma * (alpha - 1)) * d2g
            * qp_inf([d2 * t * q**alpha, b * c * d2 * t * q ** (alpha - 1)], q, cfg)
            / qp_inf([q * t, b * c * t], q, cfg)
        )
        side_b = (
            (b * c) ** (alpha - k - 1)
            * q_pochhammer(d2 * q**k, q, alpha - k - 1, cfg)
            * q_pochhammer(d * q ** (k + 1) / b, q, alpha - k - 1, cfg)
            * q_pochhammer(d * q ** (k + 1) / c, q, alpha - k - 1, cfg)
            * fg
            * phi_rs(
                [q ** (k - alpha + 1), b * c * t, q ** (1 - alpha) / (d2 * t),
                 q ** (1 - alpha - k) / d2],
                [q ** (2 - alpha) / d2, b * q ** (1 - alpha) / d,
                 c * q ** (1 - alpha) / d],
                q, q, cfg)
        )
        return _rel_residual(side_a, side_b)

    raise ValueError(f"unknown transformation id {ident!r}")
