#!/usr/bin/env python3
"""Imaginary parts of the zeros of L(s, 37a) on the critical line Re s = 1, up to height T.

Uses the smoothed approximate functional equation for
Lambda(s) = (sqrt(N)/2pi)^s Gamma(s) L(s) = w Lambda(2 - s), N = 37, w = -1.
"""
import argparse
import sys

import mpmath as mp

N = 37
ROOT_NUMBER = -1


def point_count_ap(p):
    # Minimal model y^2 + y = x^3 - x.
    affine = sum(1 for x in range(p) for y in range(p) if (y * y + y - x ** 3 + x) % p == 0)
    return p - affine


def coefficients(nmax):
    primes = [p for p in range(2, nmax + 1) if all(p % q for q in range(2, int(p ** 0.5) + 1))]
    a = [0] * (nmax + 1)
    a[1] = 1
    ap = {p: point_count_ap(p) for p in primes}
    # Prime powers first, then multiplicativity.
    pp = {}
    for p in primes:
        vals = [1, ap[p]]
        q = p
        while q * p <= nmax:
            q *= p
            nxt = ap[p] * vals[-1] - (0 if N % p == 0 else p) * vals[-2]
            vals.append(nxt)
        pp[p] = vals
    for n in range(2, nmax + 1):
        m, val = n, 1
        for p in primes:
            if p * p > m:
                break
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e:
                val *= pp[p][e]
        if m > 1:
            val *= ap[m]
        a[n] = val
    return a


def make_lambda(nmax):
    a = coefficients(nmax)
    q = mp.sqrt(N) / (2 * mp.pi)

    def Lam(s):
        total = mp.mpc(0)
        for n in range(1, nmax + 1):
            if a[n] == 0:
                continue
            x = 2 * mp.pi * n / mp.sqrt(N)
            total += a[n] * (q ** s * mp.power(n, -s) * mp.gammainc(s, x)
                             + ROOT_NUMBER * q ** (2 - s) * mp.power(n, s - 2) * mp.gammainc(2 - s, x))
        return total

    return Lam


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--T", type=float, default=30.0)
    ap.add_argument("--step", type=float, default=0.1)
    ap.add_argument("--dps", type=int, default=40)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    mp.mp.dps = args.dps
    nmax = int(args.T * mp.sqrt(N) / (2 * mp.pi) + 60)
    Lam = make_lambda(nmax)

    # L'(1) = Lambda'(1) / (sqrt(N) / 2pi) since L(1) = 0.
    dL = mp.diff(Lam, 1) / (mp.sqrt(N) / (2 * mp.pi))
    if abs(dL.real - mp.mpf("0.30599977383405230182")) > 1e-12:
        sys.exit(f"L'(1) check failed: {dL}")

    # Lambda(1 + it) is purely imaginary when w = -1.
    Z = lambda t: (Lam(1 + 1j * t) * mp.exp(mp.pi * t / 2)).imag
    zeros = [mp.mpf(0)]
    t_prev, z_prev = mp.mpf(args.step), Z(args.step)
    t = t_prev
    while t < args.T:
        t = min(t + args.step, mp.mpf(args.T))
        z = Z(t)
        if z_prev * z < 0:
            zeros.append(mp.findroot(Z, (t_prev, t), solver="anderson"))
        t_prev, z_prev = t, z

    out = sys.stdout if args.out == "-" else open(args.out, "w")
    print(f"# curve=37a T={args.T:g}", file=out)
    for g in zeros:
        print(mp.nstr(g, 15, strip_zeros=False) if g else "0", file=out)
    print(f"L'(1) = {mp.nstr(dL.real, 15)}; {len(zeros)} zeros", file=sys.stderr)


if __name__ == "__main__":
    main()
