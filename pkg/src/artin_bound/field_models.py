"""Concrete abelian fields over Q and the invariants the bounds consume.

Three families are supported: Q itself, quadratic fields Q(sqrt d) and
cyclotomic fields Q(zeta_m).  Each family also knows its Galois group, written
multiplicatively: {1} for Q, {+1, -1} for quadratic fields (the sign is the
action on sqrt d) and (Z/mZ)^* for cyclotomic fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union


class FieldError(ValueError):
    """Invalid field parameters or class element."""


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorize(abs(n)).values())


def euler_phi(m: int) -> int:
    result = m
    for p in factorize(m):
        result -= result // p
    return result


def multiplicative_order(a: int, m: int) -> int:
    """Order of a in (Z/mZ)^*."""
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    a %= m
    k, x = 1, a
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


@dataclass(frozen=True)
class FieldInvariants:
    degree: int
    r1: int
    r2: int
    log_abs_disc: float
    disc_prime_factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.degree != self.r1 + 2 * self.r2:
            raise FieldError(
                f"signature ({self.r1}, {self.r2}) inconsistent with degree {self.degree}"
            )

    @property
    def abs_disc(self) -> int:
        return math.prod(p**e for p, e in self.disc_prime_factors)

    def ramified_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.disc_prime_factors)


def _invariants(degree: int, r1: int, r2: int, factors: dict[int, int]) -> FieldInvariants:
    pf = tuple(sorted(factors.items()))
    log_disc = math.fsum(e * math.log(p) for p, e in pf)
    return FieldInvariants(degree, r1, r2, log_disc, pf)


def quadratic_discriminant(d: int) -> int:
    """Field discriminant of Q(sqrt d) for squarefree d."""
    return d if d % 4 == 1 else 4 * d


def quadratic_invariants(d: int) -> FieldInvariants:
    if d in (0, 1) or not is_squarefree(d):
        raise FieldError(f"d={d} must be a squarefree integer other than 0 and 1")
    disc = quadratic_discriminant(d)
    r1, r2 = (2, 0) if d > 0 else (0, 1)
    return _invariants(2, r1, r2, factorize(abs(disc)))


def cyclotomic_invariants(m: int) -> FieldInvariants:
    # conductor-discriminant formula: v_p(|D|) = phi(m) * (v - 1/(p-1)) for p^v || m
    if m < 3 or m % 4 == 2:
        raise FieldError(f"m={m} must satisfy m >= 3 and m != 2 mod 4")
    phi = euler_phi(m)
    factors = {p: phi * v - phi // (p - 1) for p, v in factorize(m).items()}
    return _invariants(phi, 0, phi // 2, factors)


def root_discriminant(inv: FieldInvariants) -> float:
    return math.exp(inv.log_abs_disc / inv.degree)


@dataclass(frozen=True)
class Rational:
    """Q itself; the Galois group is trivial."""

    @property
    def label(self) -> str:
        return "Q"

    @property
    def group_order(self) -> int:
        return 1

    @property
    def identity(self) -> int:
        return 1

    def elements(self) -> tuple[int, ...]:
        return (1,)

    def mul(self, a: int, b: int) -> int:
        return 1

    def power(self, a: int, k: int) -> int:
        return 1

    def is_element(self, a) -> bool:
        return a == 1

    def invariants(self) -> FieldInvariants:
        return _invariants(1, 1, 0, {})

    def class_label(self, a: int) -> str:
        return "1"


@dataclass(frozen=True)
class Quadratic:
    d: int

    def __post_init__(self) -> None:
        if self.d in (0, 1) or not is_squarefree(self.d):
            raise FieldError(f"d={self.d} must be a squarefree integer other than 0 and 1")

    @property
    def label(self) -> str:
        return f"Q(sqrt({self.d}))"

    @property
    def discriminant(self) -> int:
        return quadratic_discriminant(self.d)

    @property
    def group_order(self) -> int:
        return 2

    @property
    def identity(self) -> int:
        return 1

    def elements(self) -> tuple[int, ...]:
        return (1, -1)

    def mul(self, a: int, b: int) -> int:
        return a * b

    def power(self, a: int, k: int) -> int:
        return a**k

    def is_element(self, a) -> bool:
        return a in (1, -1)

    def invariants(self) -> FieldInvariants:
        return quadratic_invariants(self.d)

    def class_label(self, a: int) -> str:
        return "+1" if a == 1 else "-1"


@dataclass(frozen=True)
class Cyclotomic:
    m: int

    def __post_init__(self) -> None:
        if self.m < 3 or self.m % 4 == 2:
            raise FieldError(f"m={self.m} must satisfy m >= 3 and m != 2 mod 4")

    @property
    def label(self) -> str:
        return f"Q(zeta_{self.m})"

    @property
    def group_order(self) -> int:
        return euler_phi(self.m)

    @property
    def identity(self) -> int:
        return 1

    def elements(self) -> tuple[int, ...]:
        return tuple(a for a in range(1, self.m) if math.gcd(a, self.m) == 1)

    def mul(self, a: int, b: int) -> int:
        return a * b % self.m

    def power(self, a: int, k: int) -> int:
        return pow(a, k, self.m)

    def is_element(self, a) -> bool:
        return isinstance(a, int) and 0 < a < self.m and math.gcd(a, self.m) == 1

    def invariants(self) -> FieldInvariants:
        return cyclotomic_invariants(self.m)

    def class_label(self, a: int) -> str:
        return str(a)


FieldFamily = Union[Rational, Quadratic, Cyclotomic]


@dataclass(frozen=True)
class GaloisClassSpec:
    """A field together with one (singleton) conjugacy class of its group.

    ``s_g`` is the signature integer governing the archimedean term: r1+r2 for
    the identity, r2(L) - 2 r2(E) for an involution g with fixed field E, and 0
    for elements of higher order.
    """

    family: FieldFamily
    class_elem: int
    g_c: int
    delta_C: int
    order_g: int
    s_g: int
    fixed_field_r2: int

    @property
    def invariants(self) -> FieldInvariants:
        return self.family.invariants()

    @property
    def label(self) -> str:
        return f"{self.family.label}[{self.family.class_label(self.class_elem)}]"


def element_order(family: FieldFamily, a: int) -> int:
    k, x = 1, a
    while x != family.identity:
        x = family.mul(x, a)
        k += 1
    return k


def class_context(family: FieldFamily, class_elem: int) -> GaloisClassSpec:
    if not family.is_element(class_elem):
        raise FieldError(f"{class_elem!r} is not an element of Gal({family.label}/Q)")
    inv = family.invariants()
    order = element_order(family, class_elem)
    fixed_r2 = 0
    if order == 1:
        s_g = inv.r1 + inv.r2
    elif order == 2:
        if isinstance(family, Cyclotomic):
            # E = L^<a> is totally real iff complex conjugation (-1) lies in <a>
            fixed_r2 = 0 if class_elem == family.m - 1 else family.group_order // 4
        s_g = inv.r2 - 2 * fixed_r2
    else:
        s_g = 0
    return GaloisClassSpec(
        family=family,
        class_elem=class_elem,
        g_c=family.group_order,
        delta_C=int(order == 1),
        order_g=order,
        s_g=s_g,
        fixed_field_r2=fixed_r2,
    )


def all_classes(family: FieldFamily) -> list[GaloisClassSpec]:
    return [class_context(family, a) for a in family.elements()]


def parse_family(kind: str, value: int | None = None) -> FieldFamily:
    if kind == "rational":
        return Rational()
    if kind == "quadratic":
        return Quadratic(int(value))
    if kind == "cyclotomic":
        return Cyclotomic(int(value))
    raise FieldError(f"unknown family {kind!r}")


def parse_class(family: FieldFamily, text: str | None) -> int:
    """Class element from its command-line spelling.

    Quadratic fields accept ``+1``/``-1`` or ``trivial``/``nontrivial``;
    cyclotomic fields accept a residue mod m; Q only has ``1``.
    """
    if text is None or text in ("trivial", "identity"):
        return family.identity
    if isinstance(family, Quadratic):
        if text == "nontrivial":
            return -1
        if text in ("+1", "1", "-1"):
            return int(text)
    elif isinstance(family, Cyclotomic):
        try:
            a = int(text) % family.m
        except ValueError:
            raise FieldError(f"bad class {text!r} for {family.label}") from None
        if family.is_element(a):
            return a
    elif text == "1":
        return 1
    raise FieldError(f"bad class {text!r} for {family.label}")
