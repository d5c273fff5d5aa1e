"""Difference operators sum_j h_j(t) E^j with Laurent-rational coefficients.

Multiplication obeys the q-shift commutation rule E h(t) = h(qt) E.  The same
class serves the gamma side (E shifts gamma by one, t = q^gamma) and the
spectral side (shifts z -> q^j z, coefficients rational in z); only the
application helpers differ.
"""

from __future__ import annotations

import numpy as np

from ..errors import NoSolution, NotDivisible
from .laurent import EQ_TOL, LaurentRational


class OreOperator:
    __slots__ = ("q", "coeffs")

    def __init__(self, q: float, coeffs: dict[int, LaurentRational] | None = None):
        self.q = float(q)
        self.coeffs = {}
        if coeffs:
            for j, r in coeffs.items():
                if not r.is_zero(0.0):
                    self.coeffs[int(j)] = r

    # ------------------------------------------------------------ builders
    @staticmethod
    def identity(q: float) -> "OreOperator":
        return OreOperator(q, {0: LaurentRational.one(q)})

    @staticmethod
    def shift(q: float, j: int = 1) -> "OreOperator":
        return OreOperator(q, {j: LaurentRational.one(q)})

    @staticmethod
    def diagonal(r: LaurentRational) -> "OreOperator":
        return OreOperator(r.q, {0: r})

    # ------------------------------------------------------------- queries
    def coeff(self, j: int) -> LaurentRational:
        return self.coeffs.get(j, LaurentRational.zero(self.q))

    @property
    def support(self) -> tuple[int, int]:
        if not self.coeffs:
            return (0, 0)
        return (min(self.coeffs), max(self.coeffs))

    def is_zero(self, tol: float = EQ_TOL) -> bool:
        return all(r.is_zero(tol) for r in self.coeffs.values())

    def order(self) -> int:
        lo, hi = self.support
        return hi - lo if self.coeffs else 0

    # ------------------------------------------------------------- algebra
    def __add__(self, other: "OreOperator") -> "OreOperator":
        out = dict(self.coeffs)
        for j, r in other.coeffs.items():
            out[j] = out[j] + r if j in out else r
        return OreOperator(self.q, out)

    def __neg__(self) -> "OreOperator":
        return OreOperator(self.q, {j: -r for j, r in self.coeffs.items()})

    def __sub__(self, other: "OreOperator") -> "OreOperator":
        return self + (-other)

    def __mul__(self, other: "OreOperator") -> "OreOperator":
        out: dict[int, LaurentRational] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                term = a * b.qshift(i)
                k = i + j
                out[k] = out[k] + term if k in out else term
        return OreOperator(self.q, out)

    def scale(self, v) -> "OreOperator":
        if not isinstance(v, LaurentRational):
            v = LaurentRational.const(v, self.q)
        return OreOperator(self.q, {j: v * r for j, r in self.coeffs.items()})

    def rscale(self, v: LaurentRational) -> "OreOperator":
        """Right multiplication by the function v."""
        return OreOperator(self.q, {j: r * v.qshift(j) for j, r in self.coeffs.items()})

    def __pow__(self, k: int) -> "OreOperator":
        out = OreOperator.identity(self.q)
        for _ in range(k):
            out = out * self
        return out

    def drop_edges(self, js, tol: float = 1e-7) -> "OreOperator":
        """Remove the listed shifts after asserting their coefficients vanish."""
        out = dict(self.coeffs)
        for j in js:
            r = out.pop(j, None)
            if r is not None and not r.is_zero(tol):
                raise AssertionError(f"coefficient at shift {j} does not vanish")
        return OreOperator(self.q, out)

    def eq(self, other: "OreOperator", tol: float = EQ_TOL) -> bool:
        js = set(self.coeffs) | set(other.coeffs)
        return all(self.coeff(j).eq(other.coeff(j), tol) for j in js)

    # --------------------------------------------------------- application
    def apply_gamma(self, f, gamma):
        """(T f)(gamma) = sum_j h_j(q^gamma) f(gamma + j)."""
        val = 0
        for j, r in self.coeffs.items():
            val = val + r.eval_gamma(gamma) * f(gamma + j)
        return val

    def apply_z(self, f, z):
        """(T f)(z) = sum_j h_j(z) f(q^j z), for spectral-side operators."""
        val = 0
        for j, r in self.coeffs.items():
            val = val + r.eval_sq(z) * f(self.q**j * z)
        return val

    # -------------------------------------------------------------- output
    def to_json_dict(self) -> dict:
        lo, hi = self.support
        return {
            "support": [lo, hi],
            "coeffs": {str(j): r.to_json_dict() for j, r in sorted(self.coeffs.items())},
        }

    def __repr__(self) -> str:
        parts = [f"E^{j}: {r!r}" for j, r in sorted(self.coeffs.items())]
        return "OreOperator{" + "; ".join(parts) + "}"


def solve_conjugate(Q: OreOperator, L0: OreOperator, tol: float = EQ_TOL) -> OreOperator:
    """The unique tridiagonal Lhat with Lhat Q = Q L0, solved band by band.

    Raises NoSolution when the remaining bands fail to match, which signals
    that ker Q is not invariant under L0.
    """
    R = Q * L0
    qlo, qhi = Q.support
    top = Q.coeff(qhi)
    bot = Q.coeff(qlo)
    if top.is_zero() or bot.is_zero():
        raise NoSolution("extreme coefficients of Q vanish")
    A = R.coeff(qhi + 1) / top.qshift(1)
    C = R.coeff(qlo - 1) / bot.qshift(-1)
    B = (R.coeff(qhi) - A * Q.coeff(qhi - 1).qshift(1)) / top
    Lhat = OreOperator(Q.q, {1: A, 0: B, -1: C})
    if not (Lhat * Q).eq(R, tol):
        raise NoSolution("kernel of Q is not invariant under L0")
    return Lhat


def factor_left(Lpoly: OreOperator, Q: OreOperator, tol: float = EQ_TOL) -> OreOperator:
    """P with Lpoly = P Q, by a triangular band solve from the top shift."""
    llo, lhi = Lpoly.support
    qlo, qhi = Q.support
    phi, plo = lhi - qhi, llo - qlo
    if phi < plo:
        raise NotDivisible("support of Q exceeds support of the product")
    top = Q.coeff(qhi)
    p: dict[int, LaurentRational] = {}
    for j in range(phi, plo - 1, -1):
        acc = Lpoly.coeff(j + qhi)
        for j2 in range(j + 1, phi + 1):
            acc = acc - p[j2] * Q.coeff(j + qhi - j2).qshift(j2)
        p[j] = acc / top.qshift(j)
    P = OreOperator(Q.q, p)
    if not (P * Q).eq(Lpoly, tol):
        raise NotDivisible("left factorization residual is nonzero")
    return P
