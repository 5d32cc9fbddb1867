"""Splitting of rational primes, Frobenius classes and inertia-averaged weights."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

import gmpy2
import numpy as np

from artin_bound.field_models import (
    Cyclotomic,
    FieldFamily,
    GaloisClassSpec,
    Quadratic,
    euler_phi,
    is_squarefree,
    multiplicative_order,
)


def is_fundamental_discriminant(D: int) -> bool:
    if D % 4 == 1:
        return D != 1 and is_squarefree(D)
    if D % 4 == 0:
        q = D // 4
        return q % 4 in (2, 3) and is_squarefree(q)
    return False


def kronecker_symbol(D: int, p: int) -> int:
    """Kronecker symbol (D|p) for a fundamental discriminant D.

    Returns 0 when p | D, +1 when p splits in Q(sqrt D) and -1 when p is inert.
    """
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    if p < 1:
        raise ValueError(f"p={p} must be positive")
    return int(gmpy2.kronecker(D, p))


def kronecker_table(D: int) -> list[int]:
    """Values of n -> (D|n) on 0 <= n < |D|; the symbol is periodic mod |D|."""
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    return [int(gmpy2.kronecker(D, n)) if n else 0 for n in range(abs(D))]


@dataclass(frozen=True)
class SplittingDatum:
    """How the rational prime p decomposes in L.

    ``frobenius`` is the Frobenius element for unramified p; for ramified p it
    is a representative of the Frobenius coset modulo ``inertia``.
    """

    p: int
    ramified: bool
    f: int
    g: int
    e: int
    frobenius: int
    inertia: tuple[int, ...]


def _crt_lift(p: int, pv: int, rest: int) -> int:
    """Unit mod pv*rest congruent to 1 mod pv and to p mod rest."""
    if rest == 1:
        return 1
    # x = 1 + pv*t with pv*t = p - 1 (mod rest)
    t = (p - 1) * pow(pv, -1, rest) % rest
    return 1 + pv * t


@lru_cache(maxsize=65536)
def splitting_datum(family: FieldFamily, p: int) -> SplittingDatum:
    if p < 2 or not gmpy2.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if isinstance(family, Quadratic):
        k = kronecker_symbol(family.discriminant, p)
        if k == 0:
            return SplittingDatum(p, True, 1, 1, 2, 1, (1, -1))
        if k == 1:
            return SplittingDatum(p, False, 1, 2, 1, 1, (1,))
        return SplittingDatum(p, False, 2, 1, 1, -1, (1,))
    if isinstance(family, Cyclotomic):
        m = family.m
        if m % p:
            f = multiplicative_order(p, m)
            return SplittingDatum(p, False, f, euler_phi(m) // f, 1, p % m, (1,))
        v = 0
        rest = m
        while rest % p == 0:
            rest //= p
            v += 1
        pv = p**v
        e = euler_phi(pv)
        f = multiplicative_order(p, rest) if rest > 1 else 1
        inertia = tuple(a for a in family.elements() if a % rest == 1 % rest)
        return SplittingDatum(p, True, f, euler_phi(rest) // f, e, _crt_lift(p, pv, rest), inertia)
    return SplittingDatum(p, False, 1, 1, 1, 1, (1,))


def theta_weight(spec: GaloisClassSpec, p: int, m: int) -> Fraction:
    """Average of the class indicator over Frob^m * I, I the inertia group at p."""
    if m < 1:
        raise ValueError(f"m={m} must be >= 1")
    fam = spec.family
    sd = splitting_datum(fam, p)
    tau_m = fam.power(sd.frobenius, m)
    hits = sum(1 for a in sd.inertia if fam.mul(tau_m, a) == spec.class_elem)
    return Fraction(hits, len(sd.inertia))


def prime_ideal_norms(family: FieldFamily, limit: int) -> list[int]:
    """Sorted norms (with multiplicity) of all prime ideals of L of norm <= limit."""
    out: list[int] = []
    p = 2
    while p <= limit:
        sd = splitting_datum(family, p)
        q = p**sd.f
        if q <= limit:
            out.extend([q] * sd.g)
        p = int(gmpy2.next_prime(p))
    return sorted(out)


def frobenius_residues(family: FieldFamily, primes: np.ndarray) -> np.ndarray:
    """Vectorised Frobenius of each prime (meaningful at unramified primes only)."""
    primes = np.asarray(primes, dtype=np.int64)
    if isinstance(family, Quadratic):
        D = family.discriminant
        table = np.array(kronecker_table(D), dtype=np.int64)
        return table[primes % abs(D)]
    if isinstance(family, Cyclotomic):
        return primes % family.m
    return np.ones_like(primes)


def class_sum_is_one(specs: list[GaloisClassSpec], p: int, m: int) -> bool:
    return sum((theta_weight(s, p, m) for s in specs), Fraction(0)) == 1
