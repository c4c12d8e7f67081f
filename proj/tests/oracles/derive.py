"""Independent reference values for the unit tests.

Uses gmpy2 integer roots, sympy factorisation and mpmath at 60 digits; none
of it shares code with the C++ library. Run: python3 derive.py
"""
from fractions import Fraction as F
import math

import gmpy2
import mpmath
import sympy

mpmath.mp.dps = 60


def floor_pow(n, num, den):
    r, _ = gmpy2.iroot(gmpy2.mpz(n) ** num, den)
    return int(r)


def e(t):
    t = t - mpmath.floor(t)
    return mpmath.expj(2 * mpmath.pi * t)


def section(name):
    print(f"\n# {name}")


section("floor_pow")
for n, num, den in [(97, 6, 5), (10, 3, 2), (2, 10521, 10000), (99991, 47, 16),
                    (123456789012345678901234567890, 10521, 10000), (10**18 + 9, 3, 2),
                    (3**10, 7, 5), (2**64 - 59, 5, 2)]:
    print(n, f"{num}/{den}", floor_pow(n, num, den))

section("frac h p^c / d")
for n, num, den, h, d in [(2, 3, 2, 1, 1), (10007, 11, 5, 3, 7), (999983, 10521, 10000, 5, 11), (16, 5, 4, 1, 3)]:
    t = h * mpmath.power(n, mpmath.mpf(num) / den) / d
    print(n, f"{num}/{den}", h, d, mpmath.nstr(t - mpmath.floor(t), 25))

section("frac z^c N^delta")
for z, num, den, N, dn, dd in [(7, 5, 2, 100, 3, 10), (1234, 11, 5, 10**6, 1, 1), (50, 3, 2, 1000, 1, 3)]:
    t = mpmath.power(z, mpmath.mpf(num) / den) * mpmath.power(N, mpmath.mpf(dn) / dd)
    print(z, f"{num}/{den}", N, f"{dn}/{dd}", mpmath.nstr(t - mpmath.floor(t), 25))

section("psi and pi")
print("pi(10^6)", sympy.primepi(10**6), "pi(10^7)", sympy.primepi(10**7))
psi = sum(mpmath.log(p) * int(math.floor(math.log(100) / math.log(p) + 1e-12)) for p in sympy.primerange(2, 101))
print("psi(100)", mpmath.nstr(psi, 20))

section("factor")
for n in [2**64 + 1, 2**67 - 1, (2**61 - 1) ** 2, 2**127 - 2, 600851475143, 1000000016000000063,
          18446744073709551557 * 3, 170141183460469231731687303715884105727 - 2]:
    f = sympy.factorint(n)
    print(n, sum(f.values()), all(k == 1 for k in f.values()), sympy.isprime(n))


def sample(x, num, den):
    ps = list(sympy.primerange(2, x + 1))
    return ps, [floor_pow(p, num, den) for p in ps]


section("experiments x=10^4")
for num, den in [(7, 5), (3, 2), (10521, 10000)]:
    ps, ms = sample(10**4, num, den)
    om = [sum(sympy.factorint(m).values()) for m in ms]
    sq = sum(1 for m in ms if all(v == 1 for v in sympy.factorint(m).values()))
    pr = sum(1 for m in ms if sympy.isprime(m))
    cens = {R: sum(1 for o in om if o <= R) for R in (1, 2, 3, 8)}
    hist7 = [sum(1 for m in ms if m % 7 == s) for s in range(7)]
    print(f"c={num}/{den}", "pi", len(ps), "squarefree", sq, "pi_c", pr, "census", cens, "mod7", hist7)

# E(D) = sum_{d<=D} max_{gcd(s,d)=1} |count - N/d| with f = 1, and with f = d/phi(d)
ps, ms = sample(10**4, 10521, 10000)
N = len(ps)
for model in ("one", "coprime"):
    E = F(0)
    for d in range(1, 21):
        f = F(1) if model == "one" else F(d, sympy.totient(d))
        best = F(0)
        for s in range(d):
            if math.gcd(s, d) != 1:
                continue
            cnt = sum(1 for m in ms if m % d == s)
            best = max(best, abs(cnt - f * N / d))
        E += best
    print("level_error x=1e4 c=10521/10000 D=20", model, float(E))

section("star discrepancy {p^(3/2)}, p <= 1000")
pts = sorted(float(mpmath.frac(mpmath.power(p, mpmath.mpf(3) / 2))) for p in sympy.primerange(2, 1001))
n = len(pts)
print(n, max(max((i + 1) / n - x, x - i / n) for i, x in enumerate(pts)))

section("exponential sums")
s = sum(e(mpmath.power(z, 2.5) * mpmath.power(100, mpmath.mpf(3) / 10)) for z in range(101, 201))
print("weyl 5/2 1 3/10 100", mpmath.nstr(s.real, 20), mpmath.nstr(s.imag, 20))
s = sum(e(mpmath.power(z, mpmath.mpf(11) / 5) * mpmath.power(10**4, mpmath.mpf(1))) for z in range(101, 201))
print("weyl 11/5 1/2 1 10^4", mpmath.nstr(s.real, 20), mpmath.nstr(s.imag, 20))
s = sum(e(mpmath.power(p, 1.5)) for p in sympy.primerange(2, 11))
print("prime x=10 3/2 h=1 d=1", mpmath.nstr(s.real, 20), mpmath.nstr(s.imag, 20))
s = sum(e(-mpmath.mpf(2) * mpmath.power(p, mpmath.mpf(7) / 3) / 5) for p in sympy.primerange(2, 1001))
print("prime x=1000 7/3 h=-2 d=5", mpmath.nstr(s.real, 20), mpmath.nstr(s.imag, 20))
s = sum(e(mpmath.mpf(1) * mpmath.power(l * m, mpmath.mpf(3) / 2) / d)
        for d in range(4, 7) for m in range(6, 11) for l in range(5, 9))
print("trilinear D=3 M=5 L=4 h=1 3/2 unit", mpmath.nstr(s.real, 20), mpmath.nstr(s.imag, 20))
s = sum(e(mpmath.mpf(2) * mpmath.power(l * m, mpmath.mpf(3) / 2) / d)
        for d in range(4, 7) for m in range(6, 11) for l in range(5, 9) if l <= math.ceil(3 * 4 / 2))
print("trilinear D=3 M=5 L=4 h=2 3/2 interval", mpmath.nstr(s.real, 20), mpmath.nstr(s.imag, 20))


def mangoldt(n):
    f = sympy.factorint(n)
    return mpmath.log(next(iter(f))) if len(f) == 1 else 0


tot = 0
for h in range(1, 3):
    for d in range(3, 5):
        tot += abs(sum(mangoldt(n) * e(h * mpmath.power(n, 1.5) / d) for n in range(101, 201)))
print("triple x=100 D=2 H=2 3/2", mpmath.nstr(tot, 20))
print("trilinear_bound D=L=M=1 X=1", mpmath.nstr(2 * mpmath.log(2), 15))

section("constants")


def regime(c):
    coeff = 179 if c < 3 else 88
    s = 1 / (16 * c * c + coeff * c - F(115, 100) / c)
    return coeff, s, (47 if coeff == 179 else 20) * s


for c in (F(11, 5), F(3), F(5, 2)):
    coeff, s, b = regime(c)
    print("c", c, "sigma", s, float(s), "beta", b, float(b), "real_bound", 16 * c**3 + coeff * c**2)


def c1(c):
    _, s, b = regime(c)
    cc = c + s
    t = F(1, 2) - b
    return (cc * t**3 - t**4) / ((cc + t) * (cc + 1 - 2 * b) * (2 * cc + t)) - s


def c2a(c):
    _, s, b = regime(c)
    cc = c - 1 + 3 * s
    return (F(8, 27) * cc - F(16, 81)) / ((cc + F(4, 3)) * (cc + 2) * (2 * cc + 2)) - 2 * s


def c2b(c):
    _, s, b = regime(c)
    cc = c - 1 + 3 * s
    u = 1 - 2 * b
    return (cc * u**3 - u**4) / ((cc + 2 - 4 * b) * (cc + 3 - 6 * b) * (2 * cc + 3 - 6 * b)) - 2 * s


def bisect(fn, lo, hi, tol=F(1, 10**9)):
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if fn(mid) > F(1, 10**12):
            hi = mid
        else:
            lo = mid
    return float(hi)


print("threshold c1", bisect(c1, F(11, 10), F(3, 2)))
print("threshold c2a", bisect(c2a, F(2), F(12, 5)))
print("threshold c2b", bisect(c2b, F(2), F(12, 5)))

# max c by a theta grid scan of the eleven inequalities (kappa = 1e-9).
def ok(c, th, kappa=F(1, 10**9)):
    a = max(F(1, 20), th + kappa)
    L = [2*th+2*a < c, c+5*th+2*a < 2, F(365, 3)+32*c+147*th < 174, F(8, 3)+c+2*th < 4, 2+c+4*th < 4,
         1+th-2*a < 1, 1+th/2-a < 1, F(2, 3)+th < 1, 1-c/2+F(3, 2)*th < 1, 2*th+(1+a)/2 < c, 2*c+6*th+a < 3]
    return all(L)


def maxc(R, greaves):
    delta = F(124820, 10**6)
    def feas(c):
        lo, hi = (c / (R - delta), F(1)) if greaves else (F(0), F(1, R))
        return any(ok(c, lo + (hi - lo) * F(i, 4000)) for i in range(1, 4000))
    lo, hi = F(1), F(2)
    while hi - lo > F(1, 10**5):
        mid = (lo + hi) / 2
        if feas(mid):
            lo = mid
        else:
            hi = mid
    return float(lo)


for R in (8, 19):
    print("maxc R", R, "plain", maxc(R, False), "greaves", maxc(R, True))
