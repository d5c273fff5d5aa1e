"""The bispectral involution and the rewrite of invariant operators.

The involution acts by q^gamma -> q^(1-gamma)/(a b c d) and E -> E^(-1).
Operators fixed by it admit presentations Theta(Lam)^(-1) V and U Gam(Lam)^(-1)
with V, U words in the two generators and Theta, Gam polynomials in the
diagonal eigenvalue function Lam.  The construction works down the support
one shift at a time, matching top coefficients with eigenvalue-ladder maps.
"""

from __future__ import annotations

import numpy as np

from ..errors import NotInvariant, NotLaurentPolynomial
from .laurent import EQ_TOL, LaurentPoly, LaurentRational
from .ore import OreOperator
from .words import GEN_L, GEN_LAMBDA, AlgebraWord

LEFT = "LEFT"
RIGHT = "RIGHT"


def lambda_rational(q: float, abcd) -> LaurentRational:
    """The diagonal eigenvalue q^-g (1 - q^g)(1 - abcd q^(g-1)) as a rational
    function of t = q^g."""
    b = abcd / q
    return LaurentRational.from_t_terms({-1: 1.0, 0: -1.0 - b, 1: b}, q)


def lambda_value(q: float, abcd, gamma):
    t = q**gamma
    return (1 / t) * (1 - t) * (1 - abcd * t / q)


def involution_op(T: OreOperator, abcd) -> OreOperator:
    return OreOperator(T.q, {-j: r.invol(abcd) for j, r in T.coeffs.items()})


def is_invariant(T: OreOperator, abcd, tol: float = EQ_TOL) -> bool:
    return involution_op(T, abcd).eq(T, tol)


def poly_at_rational(coeffs, r: LaurentRational) -> LaurentRational:
    """Evaluate a polynomial (ascending complex coefficients) at a rational
    function, by Horner."""
    out = LaurentRational.const(coeffs[-1], r.q)
    for c in reversed(coeffs[:-1]):
        out = out * r + c
    return out


def lambda_rewrite(p: LaurentRational, abcd) -> np.ndarray:
    """Coefficients c_0..c_n with p(q^g) = sum c_k Lam^k.

    Requires p to be an involution-invariant Laurent polynomial with integer
    exponents.  Uses the Chebyshev-style ladder
    w_k = w_1 w_(k-1) - (q/abcd) w_(k-2) for w_k = q^(kg) + q^(k(1-g))/(abcd)^k.
    """
    q = p.q
    if p.parity:
        raise NotLaurentPolynomial("parity character present")
    if len(p.den.c) != 1 or p.den.off != 0:
        raise NotLaurentPolynomial("nontrivial denominator")
    if not p.num.even_only():
        raise NotLaurentPolynomial("half-integer exponents present")
    if not p.invol(abcd).eq(p):
        raise NotInvariant("input is not fixed by the involution")
    lo, c_t = p.num.t_coeff_array()
    n = p.num.emax // 2
    coeff = {lo + i: v for i, v in enumerate(c_t)}
    # ladder polynomials in Lam
    b = q / abcd
    w = [np.array([2.0], dtype=complex), np.array([1.0 + b, b], dtype=complex)]
    while len(w) <= max(n, 1):
        nxt = np.polynomial.polynomial.polymul(w[1], w[-1])
        nxt[: len(w[-2])] -= b * w[-2]
        w.append(nxt)
    out = np.zeros(max(n, 0) + 1, dtype=complex)
    out[0] = coeff.get(0, 0.0)  # c_0 w_0 with c_0 = p_0/2 and w_0 = 2
    for k in range(1, n + 1):
        ck = coeff.get(k, 0.0)
        if ck != 0:
            out[: len(w[k])] += ck * w[k]
    lam = lambda_rational(q, abcd)
    if not poly_at_rational(out, lam).eq(p, 1e-8):
        raise NotInvariant("rewrite verification failed")
    return out


def _paired_content(ratio: LaurentRational, abcd, tol: float = 1e-8) -> LaurentRational:
    """Largest involution-invariant rational factor of ``ratio`` built from
    root pairs (r, K/r) with K = q/abcd, detected numerically."""
    q = ratio.q
    K = q / abcd

    def pair_factor(roots):
        pool = list(roots)
        out = LaurentRational.one(q)
        i = 0
        while i < len(pool):
            r = pool[i]
            hit = None
            for j in range(i + 1, len(pool)):
                if abs(r * pool[j] - K) <= tol * (abs(K) + abs(r * pool[j])):
                    hit = j
                    break
            if hit is None:
                i += 1
                continue
            pool.pop(hit)
            pool.pop(i)
            out = out * LaurentRational.from_t_terms(
                {-1: K, 0: -(r + K / r), 1: 1.0}, q)
        return out

    red = ratio.reduced()
    if not (red.num.even_only() and red.den.even_only()):
        return LaurentRational.one(q)
    vn = pair_factor(red.num.roots_t())
    vd = pair_factor(red.den.roots_t())
    return vn / vd


def decompose_invariant(T: OreOperator, L: OreOperator, abcd,
                        side: str = LEFT, tol: float = EQ_TOL):
    """Present an invariant operator as Theta(Lam)^(-1) V (LEFT) or
    U Gam(Lam)^(-1) (RIGHT).

    Returns (theta_coeffs, word) with Theta(Lam) T = eval(word) as an exact
    operator identity for LEFT, and T Gam(Lam) = eval(word) for RIGHT.
    """
    q = T.q
    if not is_invariant(T, abcd, max(tol, 1e-8)):
        raise NotInvariant("operator is not fixed by the involution")
    lo, hi = T.support
    m = max(hi, -lo, 0)
    lam = lambda_rational(q, abcd)
    Lpows = {0: OreOperator.identity(q)}

    def Lpow(k: int) -> OreOperator:
        if k not in Lpows:
            Lpows[k] = Lpow(k - 1) * L
        return Lpows[k]

    def base_case(T0: OreOperator):
        h = T0.coeff(0).reduced()
        if h.is_zero():
            return np.array([1.0 + 0j]), AlgebraWord.zero()
        den_inv = h.den.invol(q, abcd)
        D = LaurentRational(h.den * den_inv, LaurentPoly.one(), q)
        N = LaurentRational(h.num * den_inv, LaurentPoly.one(), q)
        theta = lambda_rewrite(D, abcd)
        vcoef = lambda_rewrite(N, abcd)
        word = AlgebraWord.one().lmul_lambda_poly(vcoef)
        return theta, word

    def step(Tm: OreOperator, m: int):
        if m == 0:
            return base_case(Tm)
        h = Tm.coeff(m)
        if h.is_zero():
            return step(Tm, m - 1)
        g = Lpow(m).coeff(m)
        if side == RIGHT:
            h = h.qshift(-m)
            g = g.qshift(-m)
        ratio = (h / g).reduced()
        n0, d0 = ratio.num, ratio.den
        d0_inv = d0.invol(q, abcd)
        theta_m = lambda_rewrite(
            LaurentRational(d0 * d0_inv, LaurentPoly.one(), q), abcd)
        p = n0 * d0_inv
        plo, pc = LaurentRational(p, LaurentPoly.one(), q).num.t_coeff_array()
        base = AlgebraWord.gen(GEN_L, m)
        Vm = AlgebraWord.zero()
        up = base
        for e in range(0, plo + len(pc)):
            if e >= plo and pc[e - plo] != 0:
                c = pc[e - plo]
                if side == RIGHT:
                    c = c * q ** (-m * e)
                Vm = Vm + up.scale(c)
            if e + 1 < plo + len(pc):
                up = up.delta(m, +1, q, abcd)
        down = base
        for e in range(-1, plo - 1, -1):
            down = down.delta(m, -1, q, abcd)
            if e >= plo and pc[e - plo] != 0:
                c = pc[e - plo]
                if side == RIGHT:
                    c = c * q ** (-m * e)
                Vm = Vm + down.scale(c)
        theta_rat = poly_at_rational(theta_m, lam)
        if side == LEFT:
            Tnext = OreOperator.diagonal(theta_rat) * Tm - Vm.eval(L, lam)
        else:
            Tnext = Tm * OreOperator.diagonal(theta_rat) - Vm.eval(L, lam)
        Tnext = Tnext.drop_edges([m, -m], tol=1e-6)
        theta_rest, V_rest = step(Tnext, m - 1)
        theta_total = np.polynomial.polynomial.polymul(theta_rest, theta_m)
        if side == LEFT:
            V_total = Vm.lmul_lambda_poly(theta_rest) + V_rest
        else:
            V_total = Vm.rmul_lambda_poly(theta_rest) + V_rest
        return theta_total, V_total.cleanup()

    return step(T, m)


def b_map(W: AlgebraWord, B: OreOperator) -> OreOperator:
    """Spectral-side image of a word combination: reverse each word, send
    GEN_L to multiplication by z + 1/z and GEN_LAMBDA to B."""
    u = LaurentRational.from_t_terms({1: 1.0, -1: 1.0}, B.q)
    return W.b_eval(B, u)
