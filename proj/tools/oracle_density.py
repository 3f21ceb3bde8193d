#!/usr/bin/env python3
"""Independent brute-force evaluation of W, P1, P2 and the conductor term for
small X; the printed values are frozen into tests/test_density.cpp."""
import math
import sys

from sympy import factorint, primerange


def bump(t):
    return math.exp(-1.0 / (t * (1.0 - t))) if 0.0 < t < 1.0 else 0.0


def phihat(y, nu):
    return max(0.0, 1.0 - abs(y) / nu)


def legendre(n, p):
    n %= p
    if n == 0:
        return 0
    return 1 if pow(n, (p - 1) // 2, p) == 1 else -1


def lam(a, b, p):
    return -sum(legendre(x * x * x + a * x + b, p) for x in range(p))


def conductor_logs(a, b):
    # Minimal short model, then f_p from valuations for p >= 5, capped heuristic at 2 and 3.
    u = 1
    for p, e in factorint(math.gcd(abs(a), abs(b)) or 1).items():
        k = e
        while k > 0 and (a % p ** (4 * k) or b % p ** (6 * k)):
            k -= 1
        u *= p ** k
    a //= u ** 4
    b //= u ** 6
    disc = -16 * (4 * a ** 3 + 27 * b ** 2)
    logn = loglo = 0.0
    for p, e in factorint(abs(disc)).items():
        if p == 2:
            logn += min(e, 8) * math.log(2)
        elif p == 3:
            logn += min(e, 5) * math.log(3)
        else:
            f = 1 if a % p else 2  # p | c4 = -48a means additive
            logn += f * math.log(p)
            loglo += f * math.log(p)
    return logn, loglo


def main(X, nu=0.7):
    A, B = X ** (1 / 3), X ** 0.5
    L = math.log(X)
    pts = [(a, b, bump((a / A - 0.5) / 0.5) * bump((b / B - 0.5) / 0.5))
           for a in range(1, int(A) + 2) for b in range(1, int(B) + 2)]
    pts = [t for t in pts if t[2] > 0]
    W = sum(w for _, _, w in pts)
    P1 = 0.0
    for p in primerange(5, int(X ** nu) + 2):
        lp = math.log(p)
        g = phihat(lp / L, nu)
        if g > 0:
            P1 += g * 2 * lp / (p * L) * sum(w * lam(a, b, p) for a, b, w in pts)
    P2 = 0.0
    for p in primerange(5, int(X ** (nu / 2)) + 2):
        lp = math.log(p)
        g = phihat(2 * lp / L, nu)
        if g > 0:
            P2 += g * 2 * lp / (p * p * L) * sum(w * (lam(a, b, p) ** 2 - p) for a, b, w in pts)
    C = Clo = 0.0
    for a, b, w in pts:
        ln, llo = conductor_logs(a, b)
        C += w * ln
        Clo += w * llo
    C /= W * L
    Clo /= W * L
    print(f"X={X:g} curves={len(pts)} W={W:.17g} P1={P1:.17g} P2={P2:.17g} C={C:.17g} C_lo={Clo:.17g}")


if __name__ == "__main__":
    for arg in sys.argv[1:] or ["1000"]:
        main(float(arg))
