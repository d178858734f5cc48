#!/usr/bin/env python3
"""Derive the Stieltjes constants gamma_0..gamma_8 used by the zeta Laurent path.

gamma_n = lim_{N->inf} [ sum_{k<N} (log k)^n / k + (log N)^n/(2N) - (log N)^{n+1}/(n+1)
                         - sum_j B_{2j}/(2j)! f^{(2j-1)}(N) ]
with f(x) = (log x)^n / x, i.e. Euler-Maclaurin applied to the defining limit.
The result is cross-checked against mpmath.stieltjes and printed as C++ literals.
"""
import mpmath as mp

mp.mp.dps = 60
N = 200
J = 30


def stieltjes_em(n):
    f = lambda x: mp.log(x) ** n / x
    s = mp.fsum(mp.log(k) ** n / k for k in range(1, N))
    s += f(N) / 2 - mp.log(N) ** (n + 1) / (n + 1)
    for j in range(1, J + 1):
        s -= mp.bernoulli(2 * j) / mp.factorial(2 * j) * mp.diff(f, N, 2 * j - 1)
    return s


if __name__ == "__main__":
    for n in range(9):
        g = stieltjes_em(n)
        ref = mp.stieltjes(n)
        assert abs(g - ref) < mp.mpf(10) ** -30, (n, g, ref)
        print(f"    {mp.nstr(g, 22, min_fixed=-30, max_fixed=30)},  // gamma_{n}")
