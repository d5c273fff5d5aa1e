"""Exact rational functions of t = q^gamma with complex coefficients.

The coefficient field used by all difference operators.  Exponents live in
(1/2)Z, stored in units of s = q^(gamma/2) (so t = s^2 and integer powers of
t are even s-exponents).  A parity flag carries an optional (-1)^gamma
character factor as a Z/2 grading: a value with parity 1 represents
(-1)^gamma times the stored rational function.

Arithmetic is exact on coefficients up to floating round-off; q is a fixed
numeric value, never symbolic.  Equality is tested by cross-multiplication
with a relative coefficient tolerance.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import MissingExtensionData, PoleAtSamplePoint

EQ_TOL = 1e-10
_TRIM_REL = 1e-12


def _trim_edges(off: int, c: np.ndarray):
    mx = np.max(np.abs(c)) if len(c) else 0.0
    if mx == 0.0:
        return 0, np.zeros(1, dtype=complex)
    keep = np.abs(c) > _TRIM_REL * mx
    idx = np.nonzero(keep)[0]
    lo, hi = idx[0], idx[-1]
    return off + lo, np.array(c[lo : hi + 1], dtype=complex)


class LaurentPoly:
    """Laurent polynomial in s with dense coefficients and an offset."""

    __slots__ = ("off", "c")

    def __init__(self, off: int, c, trim: bool = True):
        c = np.atleast_1d(np.asarray(c, dtype=complex))
        if trim:
            off, c = _trim_edges(off, c)
        self.off = int(off)
        self.c = c

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly(0, [0.0], trim=False)

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly(0, [1.0], trim=False)

    @staticmethod
    def from_dict(d: dict[int, complex]) -> "LaurentPoly":
        if not d:
            return LaurentPoly.zero()
        lo = min(d)
        hi = max(d)
        c = np.zeros(hi - lo + 1, dtype=complex)
        for e, v in d.items():
            c[e - lo] += v
        return LaurentPoly(lo, c)

    @property
    def emin(self) -> int:
        return self.off

    @property
    def emax(self) -> int:
        return self.off + len(self.c) - 1

    def is_zero(self) -> bool:
        return len(self.c) == 1 and self.c[0] == 0

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.c)))

    def even_only(self) -> bool:
        if self.is_zero():
            return True
        idx = np.nonzero(np.abs(self.c) > _TRIM_REL * self.max_abs())[0]
        return all((self.off + int(i)) % 2 == 0 for i in idx)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.off, other.off)
        hi = max(self.emax, other.emax)
        c = np.zeros(hi - lo + 1, dtype=complex)
        c[self.off - lo : self.off - lo + len(self.c)] += self.c
        c[other.off - lo : other.off - lo + len(other.c)] += other.c
        return LaurentPoly(lo, c)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.off, -self.c, trim=False)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero()
        return LaurentPoly(self.off + other.off, np.convolve(self.c, other.c))

    def scale(self, v) -> "LaurentPoly":
        return LaurentPoly(self.off, self.c * v)

    def shift_exponents(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.off + k, self.c, trim=False)

    def qshift(self, n: int, q: float) -> "LaurentPoly":
        """Coefficient image under gamma -> gamma + n, i.e. s -> q^(n/2) s."""
        e = self.off + np.arange(len(self.c))
        return LaurentPoly(self.off, self.c * np.power(float(q), 0.5 * n * e))

    def invol(self, q: float, abcd: complex) -> "LaurentPoly":
        """Image under s -> K/s with K^2 = q/(a b c d)."""
        kt = q / abcd
        odd = not self.even_only()
        if odd:
            if not (abs(complex(abcd).imag) < 1e-12 * abs(abcd) and complex(abcd).real > 0):
                raise MissingExtensionData(
                    "half-integer exponents with non-positive abcd: extended "
                    "involution branch is ambiguous"
                )
            kh = math.sqrt(q / complex(abcd).real)
        else:
            kh = None
        out = {}
        for i, v in enumerate(self.c):
            if v == 0:
                continue
            e = self.off + i
            if e % 2 == 0:
                w = kt ** (e // 2)
            else:
                w = kh * kt ** ((e - 1) // 2)
            out[-e] = out.get(-e, 0) + v * w
        return LaurentPoly.from_dict(out)

    def eval_sq(self, x):
        """Evaluate with s^2 = x; sqrt(x) is taken only if odd powers occur."""
        even = 0
        oddv = 0
        has_odd = False
        for i, v in enumerate(self.c):
            if v == 0:
                continue
            e = self.off + i
            if e % 2 == 0:
                even = even + v * _ipow(x, e // 2)
            else:
                has_odd = True
                oddv = oddv + v * _ipow(x, (e - 1) // 2)
        if not has_odd:
            return even
        s = x**0.5 if not hasattr(x, "sqrt") else x.sqrt()
        return even + s * oddv

    def eval_s(self, s):
        val = 0
        for i, v in enumerate(self.c):
            if v != 0:
                val = val + v * _ipow(s, self.off + i)
        return val

    def t_coeff_array(self):
        """Coefficients as a plain polynomial in t (even exponents only)."""
        if not self.even_only():
            raise ValueError("half-integer exponents present")
        d = {}
        for i, v in enumerate(self.c):
            e = self.off + i
            if abs(v) != 0 and e % 2 == 0:
                d[e // 2] = v
        if not d:
            return 0, np.zeros(1, dtype=complex)
        lo = min(d)
        hi = max(d)
        c = np.zeros(hi - lo + 1, dtype=complex)
        for e, v in d.items():
            c[e - lo] = v
        return lo, c

    def roots_t(self) -> np.ndarray:
        """Roots in the variable t, ignoring monomial content."""
        _, c = self.t_coeff_array()
        if len(c) <= 1:
            return np.zeros(0, dtype=complex)
        return np.roots(c[::-1])

    def __repr__(self) -> str:
        terms = [f"{v:.6g}*s^{self.off + i}" for i, v in enumerate(self.c) if v != 0]
        return " + ".join(terms) if terms else "0"


def _ipow(x, k: int):
    if k >= 0:
        return x**k
    return 1 / (x ** (-k))


# t-polynomial coefficients live at even s-exponents
def _t_poly(lo_t: int, c_t) -> LaurentPoly:
    c_t = np.atleast_1d(np.asarray(c_t, dtype=complex))
    c = np.zeros(2 * len(c_t) - 1, dtype=complex)
    c[::2] = c_t
    return LaurentPoly(2 * lo_t, c)


def _from_plain_t(c_t) -> LaurentPoly:
    return _t_poly(0, c_t)


class LaurentRational:
    """Ratio of Laurent polynomials in s = q^(gamma/2), with parity grading."""

    __slots__ = ("num", "den", "parity", "q")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, q: float, parity: int = 0):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num = LaurentPoly.zero()
            den = LaurentPoly.one()
            parity = 0
        else:
            # move denominator offset into numerator, make denominator's
            # top coefficient 1
            k = den.off
            if k:
                num = num.shift_exponents(-k)
                den = den.shift_exponents(-k)
            lead = den.c[-1]
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        self.num = num
        self.den = den
        self.parity = int(parity) % 2
        self.q = float(q)

    # ------------------------------------------------------------ builders
    @staticmethod
    def const(v, q: float) -> "LaurentRational":
        return LaurentRational(LaurentPoly(0, [v]), LaurentPoly.one(), q)

    @staticmethod
    def zero(q: float) -> "LaurentRational":
        return LaurentRational(LaurentPoly.zero(), LaurentPoly.one(), q)

    @staticmethod
    def one(q: float) -> "LaurentRational":
        return LaurentRational.const(1.0, q)

    @staticmethod
    def t_var(q: float) -> "LaurentRational":
        return LaurentRational(_t_poly(1, [1.0]), LaurentPoly.one(), q)

    @staticmethod
    def from_t_terms(d: dict[int, complex], q: float, parity: int = 0) -> "LaurentRational":
        return LaurentRational(
            LaurentPoly.from_dict({2 * e: v for e, v in d.items()}),
            LaurentPoly.one(), q, parity)

    @staticmethod
    def from_s_terms(d: dict[int, complex], q: float, parity: int = 0) -> "LaurentRational":
        return LaurentRational(LaurentPoly.from_dict(d), LaurentPoly.one(), q, parity)

    @staticmethod
    def from_t_fraction(num_t, den_t, q: float, parity: int = 0) -> "LaurentRational":
        """Build from plain ascending t-coefficient arrays."""
        return LaurentRational(_from_plain_t(num_t), _from_plain_t(den_t), q, parity)

    # ------------------------------------------------------------ helpers
    def _coerce(self, other) -> "LaurentRational":
        if isinstance(other, LaurentRational):
            return other
        return LaurentRational.const(other, self.q)

    def is_zero(self, tol: float = EQ_TOL) -> bool:
        return self.num.max_abs() <= tol * max(1.0, self.den.max_abs())

    # ------------------------------------------------------------ algebra
    def __add__(self, other) -> "LaurentRational":
        other = self._coerce(other)
        if self.is_zero(0.0):
            return other
        if other.is_zero(0.0):
            return self
        if self.parity != other.parity:
            raise ValueError("cannot add values of different parity")
        if (self.den.off == other.den.off
                and len(self.den.c) == len(other.den.c)
                and np.array_equal(self.den.c, other.den.c)):
            return LaurentRational(self.num + other.num, self.den, self.q, self.parity)
        num = self.num * other.den + other.num * self.den
        return LaurentRational(num, self.den * other.den, self.q, self.parity)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "LaurentRational":
        return LaurentRational(-self.num, self.den, self.q, self.parity)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "LaurentRational":
        other = self._coerce(other)
        return LaurentRational(self.num * other.num, self.den * other.den,
                               self.q, self.parity ^ other.parity)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other) -> "LaurentRational":
        other = self._coerce(other)
        return LaurentRational(self.num * other.den, self.den * other.num,
                               self.q, self.parity ^ other.parity)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "LaurentRational":
        if k < 0:
            return (1 / self) ** (-k)
        out = LaurentRational.one(self.q)
        for _ in range(k):
            out = out * self
        return out

    def qshift(self, n: int) -> "LaurentRational":
        """Coefficient image under gamma -> gamma + n."""
        num = self.num.qshift(n, self.q)
        if self.parity and n % 2:
            num = -num
        return LaurentRational(num, self.den.qshift(n, self.q), self.q, self.parity)

    def invol(self, abcd) -> "LaurentRational":
        """Involution q^gamma -> q^(1-gamma)/(a b c d); the parity character
        is fixed by convention."""
        return LaurentRational(self.num.invol(self.q, abcd),
                               self.den.invol(self.q, abcd), self.q, self.parity)

    # --------------------------------------------------------- evaluation
    def eval_gamma(self, gamma):
        """Value at a numeric gamma (mpmath-aware through the power calls)."""
        s = _mp_pow(self.q, 0.5 * gamma) if _is_mp(gamma) else self.q ** (0.5 * gamma)
        val = self.num.eval_s(s) / self.den.eval_s(s)
        if self.parity:
            val = val * _char(gamma)
        return val

    def eval_sq(self, x):
        """Value with s^2 = x (the z-side evaluation); parity must be 0."""
        if self.parity:
            raise ValueError("parity flag set; value depends on gamma")
        den = self.den.eval_sq(x)
        if abs(den) < 1e-13 * max(1.0, self.den.max_abs()):
            raise PoleAtSamplePoint(f"coefficient pole at {x}")
        return self.num.eval_sq(x) / den

    # --------------------------------------------------------- comparison
    def eq(self, other, tol: float = EQ_TOL) -> bool:
        other = self._coerce(other)
        if self.is_zero(tol) and other.is_zero(tol):
            return True
        if self.parity != other.parity and not (self.is_zero(tol) or other.is_zero(tol)):
            return False
        a = self.num * other.den
        b = other.num * self.den
        diff = a - b
        scale = max(a.max_abs(), b.max_abs(), 1.0)
        return diff.max_abs() <= tol * scale

    # --------------------------------------------------------- reduction
    def reduced(self, tol: float = 1e-8) -> "LaurentRational":
        """Cancel matching numerator/denominator roots (t-integer exponents
        only).  Falls back to self if the reconstruction check fails."""
        if self.is_zero(0.0):
            return self
        if not (self.num.even_only() and self.den.even_only()):
            return self
        nlo, nc = self.num.t_coeff_array()
        dlo, dc = self.den.t_coeff_array()
        if len(nc) <= 1 or len(dc) <= 1:
            return self
        nroots = list(np.roots(nc[::-1]))
        droots = list(np.roots(dc[::-1]))
        kept_d = []
        cancelled = 0
        for r in droots:
            hit = None
            for i, rn in enumerate(nroots):
                if abs(rn - r) <= tol * (1.0 + abs(r)):
                    hit = i
                    break
            if hit is None:
                kept_d.append(r)
            else:
                nroots.pop(hit)
                cancelled += 1
        if cancelled == 0:
            return self
        new_num = _t_poly(nlo, np.poly(nroots)[::-1] * nc[-1]) if nroots else _t_poly(nlo, [nc[-1]])
        new_den = _t_poly(dlo, np.poly(kept_d)[::-1] * dc[-1]) if kept_d else _t_poly(dlo, [dc[-1]])
        cand = LaurentRational(new_num, new_den, self.q, self.parity)
        # reconstruction sanity check at a few sample points
        for x in (0.37 + 0.11j, 1.71 - 0.23j, 0.93 + 0.78j):
            try:
                a = self.eval_sq(x)
                b = cand.eval_sq(x)
            except PoleAtSamplePoint:
                continue
            if abs(a - b) > 1e-7 * max(1.0, abs(a), abs(b)):
                return self
        return cand

    def degree_span(self) -> int:
        return max(len(self.num.c), len(self.den.c))

    # ------------------------------------------------------------- output
    def to_json_dict(self) -> dict:
        def side(p: LaurentPoly):
            return {
                str((p.off + i) / 2 if (p.off + i) % 2 else (p.off + i) // 2):
                    [float(v.real), float(v.imag)]
                for i, v in enumerate(p.c) if v != 0
            }
        d = {"num": side(self.num), "den": side(self.den)}
        if self.parity:
            d["parity"] = 1
        return d

    def __repr__(self) -> str:
        p = "(-1)^g*" if self.parity else ""
        return f"{p}({self.num!r})/({self.den!r})"


def _is_mp(x) -> bool:
    return type(x).__module__.startswith("mpmath")


def _mp_pow(base, expo):
    import mpmath

    return mpmath.power(base, expo)


def _char(gamma):
    """(-1)^gamma via the principal character exp(i pi gamma)."""
    g = complex(gamma) if not _is_mp(gamma) else gamma
    if _is_mp(gamma):
        import mpmath

        return mpmath.exp(1j * mpmath.pi * gamma)
    if float(g.real).is_integer() and g.imag == 0:
        return (-1.0) ** int(g.real)
    return cmath.exp(1j * cmath.pi * g)
