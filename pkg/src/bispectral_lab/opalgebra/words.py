"""Formal linear combinations of words in the two operator generators.

Words are tuples over the alphabet {GEN_L, GEN_LAMBDA}.  Evaluation into
concrete operators substitutes the generators and multiplies out; the
spectral-side evaluation reverses every word first (the correspondence
between the two generator pairs is an anti-isomorphism).
"""

from __future__ import annotations

from .laurent import LaurentRational
from .ore import OreOperator

GEN_L = "L"
GEN_LAMBDA = "Y"

_CLEAN_REL = 1e-13


class AlgebraWord:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple, complex] | None = None):
        self.terms = dict(terms) if terms else {}

    @staticmethod
    def zero() -> "AlgebraWord":
        return AlgebraWord()

    @staticmethod
    def one() -> "AlgebraWord":
        return AlgebraWord({(): 1.0})

    @staticmethod
    def gen(name: str, power: int = 1) -> "AlgebraWord":
        return AlgebraWord({(name,) * power: 1.0})

    def __add__(self, other: "AlgebraWord") -> "AlgebraWord":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return AlgebraWord(out)

    def __sub__(self, other: "AlgebraWord") -> "AlgebraWord":
        return self + other.scale(-1)

    def scale(self, v) -> "AlgebraWord":
        return AlgebraWord({w: c * v for w, c in self.terms.items()})

    def __mul__(self, other: "AlgebraWord") -> "AlgebraWord":
        out: dict[tuple, complex] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return AlgebraWord(out)

    def lmul_lambda_poly(self, coeffs) -> "AlgebraWord":
        """Left multiplication by a polynomial in the diagonal generator."""
        out = AlgebraWord.zero()
        for k, c in enumerate(coeffs):
            if c != 0:
                out = out + AlgebraWord.gen(GEN_LAMBDA, k).scale(c) * self
        return out

    def rmul_lambda_poly(self, coeffs) -> "AlgebraWord":
        out = AlgebraWord.zero()
        for k, c in enumerate(coeffs):
            if c != 0:
                out = out + self * AlgebraWord.gen(GEN_LAMBDA, k).scale(c)
        return out

    def cleanup(self) -> "AlgebraWord":
        mx = max((abs(c) for c in self.terms.values()), default=0.0)
        if mx == 0.0:
            return AlgebraWord.zero()
        return AlgebraWord({w: c for w, c in self.terms.items()
                            if abs(c) > _CLEAN_REL * mx})

    def delta(self, m: int, sign: int, q: float, abcd) -> "AlgebraWord":
        """One application of the eigenvalue-ladder map that multiplies the
        top coefficient of an E^m component by q^(+gamma) or q^(-gamma)."""
        if m == 0 or abs(q ** (2 * m) - 1) < 1e-14:
            raise ZeroDivisionError("ladder map undefined for q^(2m) = 1")
        lam = AlgebraWord.gen(GEN_LAMBDA)
        if sign > 0:
            c_pair = q / (abcd * (1 - q ** (2 * m)))
            qm = q**m
            c_id = (1 + q / abcd) / (1 + qm)
        else:
            c_pair = 1.0 / (1 - q ** (-2 * m))
            qm = q ** (-m)
            c_id = (abcd / q + 1) / (1 + qm)
        return ((lam * self) - (self * lam).scale(qm)).scale(c_pair) + self.scale(c_id)

    def max_lambda(self) -> int:
        return max((w.count(GEN_LAMBDA) for w in self.terms), default=0)

    def eval(self, L: OreOperator, lam: LaurentRational) -> OreOperator:
        """Substitute concrete operators for the generators, in word order."""
        subs = {GEN_L: L, GEN_LAMBDA: OreOperator.diagonal(lam)}
        return self._eval_with(subs, L.q, reverse=False)

    def b_eval(self, B: OreOperator, u: LaurentRational) -> OreOperator:
        """Anti-isomorphic image: words reversed, GEN_L -> multiplication by
        u(z) and GEN_LAMBDA -> the spectral-side operator B."""
        subs = {GEN_L: OreOperator.diagonal(u), GEN_LAMBDA: B}
        return self._eval_with(subs, B.q, reverse=True)

    def _eval_with(self, subs, q: float, reverse: bool) -> OreOperator:
        memo: dict[tuple, OreOperator] = {(): OreOperator.identity(q)}

        def prod(word: tuple) -> OreOperator:
            if word in memo:
                return memo[word]
            head = prod(word[:-1]) * subs[word[-1]]
            memo[word] = head
            return head

        total = OreOperator(q, {})
        for w, c in self.cleanup().terms.items():
            if reverse:
                w = w[::-1]
            total = total + prod(w).scale(c)
        return total

    def __repr__(self) -> str:
        def wname(w):
            return "*".join(w) if w else "1"
        return " + ".join(f"{c:.4g}*{wname(w)}" for w, c in sorted(self.terms.items()))
