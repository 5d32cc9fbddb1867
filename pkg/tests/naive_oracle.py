"""Census statistics recomputed per prime without CensusSeries or the sieve."""

import math
from fractions import Fraction

import sympy


def _frob_class(fam, p):
    from artin_bound.field_models import Cyclotomic, Quadratic
    if isinstance(fam, Quadratic):
        d = fam.d
        coeffs = (1, -1, (1 - d) // 4) if d % 4 == 1 else (1, 0, -d)
        roots = sum(1 for x in range(p) if (coeffs[0] * x * x + coeffs[1] * x + coeffs[2]) % p == 0)
        return 1 if roots == 2 else -1
    if isinstance(fam, Cyclotomic):
        return p % fam.m
    return 1


def _ramified_weight(fam, cls, p, k):
    from artin_bound.field_models import Cyclotomic
    if isinstance(fam, Cyclotomic):
        rest, pv = fam.m, 1
        while rest % p == 0:
            rest //= p
            pv *= p
        hit = rest == 1 or cls % rest == pow(p, k, rest)
        return Fraction(1, int(sympy.totient(pv))) if hit else Fraction(0)
    return Fraction(1, 2)


def naive_stats(spec, x):
    fam, cls = spec.family, spec.class_elem
    ram = set(fam.invariants().ramified_primes())
    out = {k: [] for k in ("psi_C", "theta_C", "psi_smooth", "theta_smooth", "psi1_smooth",
                           "theta1_C", "theta1_smooth")}
    pi_c, pi_theta = 0, Fraction(0)
    for p in sympy.primerange(2, int(x) + 1):
        lp = math.log(p)
        k, q = 1, p
        while q <= x:
            if p in ram:
                w, unram = _ramified_weight(fam, cls, p, k), False
            else:
                frob = _frob_class(fam, p)
                w = Fraction(int(fam.power(frob, k) == cls))
                unram = True
            if w:
                v = float(w) * lp
                out["psi_smooth"].append(v)
                out["psi1_smooth"].append(v * (x - q))
                if k == 1:
                    pi_theta += w
                    out["theta_smooth"].append(v)
                    out["theta1_smooth"].append(v * (x - q))
                if unram:
                    out["psi_C"].append(v)
                    if k == 1:
                        pi_c += 1
                        out["theta_C"].append(v)
                        out["theta1_C"].append(v * (x - q))
            k += 1
            q *= p
    res = {k: math.fsum(v) for k, v in out.items()}
    res["pi_C"] = pi_c
    res["pi_theta"] = pi_theta
    return res
