"""Closed-form bounds for counting prime ideals in a Chebotarev class under GRH.

All formulas take log|D_L| (natural log), the degree n_L and the class data
(g_c = |G|/|C|, delta_C, S_g) as plain numbers, so they apply to any Galois
extension even though the census only covers abelian fields over Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from artin_bound.field_models import GaloisClassSpec

# name -> (value, role)
CONSTANTS: dict[str, tuple[float, str]] = {
    "main_log_disc": (1.075, "coefficient of log D_L in the sqrt-norm bound (twice zero_sum_log_disc)"),
    "main_const": (15.0, "additive constant in the sqrt-norm bound"),
    "zero_sum_log_disc": (0.5375, "log D_L coefficient in the bound for sum 1/|rho(rho+1)|"),
    "zero_sum_degree": (1.0355, "n_L coefficient in the zero-sum bound"),
    "zero_sum_const": (5.3879, "constant in the zero-sum bound"),
    "zero_sum_real": (0.2635, "r1 coefficient in the zero-sum bound"),
    "s0_degree": (1.571, "n_L coefficient in the bound for the s=0 constant term"),
    "s0_const": (13.276, "constant in the bound for the s=0 constant term"),
    "prime_power_gap": (1.43, "sup (psi(t)-theta(t))/sqrt(t) over t>0"),
    "x32_const": (5.4, "x^{3/2} coefficient after absorbing the zero-sum constant"),
    "x32_degree_slack": (0.082, "residual n_L x^{3/2} coefficient after the prime-power gap"),
    "linear_log_shift": (2.4, "shift in n_L x (log x - 2.4) after simplification"),
    "linear_const": (8.0, "coefficient of x absorbing 13.276 x - int_1^{x+1} log u du"),
    "sqrt_const": (10.8, "constant in the sufficient condition (2 * 5.4)"),
    "sqrt_inv_const": (16.0, "1/sqrt(x) coefficient in the sufficient condition (2 * 8)"),
    "sqrt_log_disc_inv": (2.15, "1/sqrt(x) log D_L coefficient (2 * 1.075)"),
    "peak_excess_threshold_z": (5.3193, "z beyond which the peak-excess profile is below -log 2"),
    "x_min": (400.0, "smallest x for which the simplified chain is valid"),
}


def C(name: str) -> float:
    return CONSTANTS[name][0]


@dataclass(frozen=True)
class BoundInputs:
    log_disc: float
    n_L: int
    r1: int = 0
    g_c: int = 1
    k: int = 0
    s_g: int = 0
    delta_C: int = 0

    def __post_init__(self) -> None:
        if self.log_disc < 0 or self.n_L < 1 or not 0 <= self.r1 <= self.n_L:
            raise ValueError(f"inconsistent field invariants {self}")
        if self.g_c < 1 or self.k < 0 or self.delta_C not in (0, 1):
            raise ValueError(f"inconsistent class data {self}")

    @classmethod
    def from_spec(cls, spec: GaloisClassSpec, k: int = 0) -> "BoundInputs":
        inv = spec.invariants
        return cls(inv.log_abs_disc, inv.degree, inv.r1, spec.g_c, k, spec.s_g, spec.delta_C)


@dataclass(frozen=True)
class BoundBreakdown:
    terms: tuple[tuple[str, float], ...]
    total: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "total", math.fsum(v for _, v in self.terms))

    @property
    def square(self) -> float:
        return self.total**2

    def as_dict(self) -> dict[str, float]:
        return dict(self.terms)


def xlogx(y: float) -> float:
    """y log y with the convention 0 at y = 0."""
    return 0.0 if y == 0 else y * math.log(y)


def sqrt_norm_bound(inputs: BoundInputs) -> BoundBreakdown:
    """sqrt of the norm bound for the (k+1)-st unramified prime ideal in C.

    ``total`` is the square-root threshold, ``square`` the norm bound itself.
    """
    gk = inputs.g_c * inputs.k
    return BoundBreakdown((
        ("log_disc", C("main_log_disc") * inputs.log_disc),
        ("k_term", math.sqrt(2 * xlogx(gk))),
        ("density", 2.0 * inputs.g_c),
        ("constant", C("main_const")),
    ))


def psi_error_bound(x: float, log_disc: float, n_L: int) -> float:
    """Upper bound for |g_c psi_C(x) - x|."""
    if x < 1:
        raise ValueError(f"x={x} must be >= 1")
    lx = math.log(x)
    return math.sqrt(x) * (
        (lx / (2 * math.pi) + 2) * log_disc + (lx * lx / (8 * math.pi) + 2) * n_L
    )


def zero_sum_bound(log_disc: float, n_L: int, r1: int) -> float:
    """Upper bound for the sum over nontrivial zeros of 1/|rho(rho+1)|."""
    return (C("zero_sum_log_disc") * log_disc - C("zero_sum_degree") * n_L
            + C("zero_sum_const") - C("zero_sum_real") * r1)


def s0_constant_bound(log_disc: float, n_L: int) -> float:
    """Upper bound for the class-averaged constant term of L'/L at s = 0."""
    return C("main_log_disc") * log_disc - C("s0_degree") * n_L + C("s0_const")


def s_minus1_constant_bound(log_disc: float) -> float:
    """Upper bound for minus the class-averaged constant term at s = -1."""
    return log_disc


def log_integral(a: float, b: float) -> float:
    """Integral of log u over [a, b], a >= 0."""
    return xlogx(b) - b - (xlogx(a) - a)


def archimedean_term_bound(n_L: int, x: float) -> float:
    """Upper bound (n_L - 1) * int_1^{x+1} log u du for minus the class archimedean term."""
    if x <= 1:
        raise ValueError(f"x={x} must be > 1")
    return (n_L - 1) * log_integral(1.0, x + 1.0)


_SERIES_TOL = 1e-14
_CLOSED_FORM_BELOW = 1.5


def _geometric_series(first: float, ratio_sq: float, term) -> float:
    """Sum term(r), r = 1, 2, ..., stopping on a certified geometric tail."""
    total = 0.0
    r = 1
    t = first
    while True:
        total += t
        r += 1
        t = term(r)
        # each later term is at most ratio_sq times the previous one
        if t / (1.0 - ratio_sq) <= _SERIES_TOL * abs(total):
            return total + t


def gamma_half_series(x: float) -> float:
    """Sum_{r>=1} x^{1-2r} / (2r(2r-1)), the trivial-zero tail weighted by a_chi."""
    if x < 1:
        raise ValueError(f"x={x} must be >= 1")
    u = 1.0 / x
    if x < _CLOSED_FORM_BELOW:
        # (x/2) [(1-u) log(1-u) + (1+u) log(1+u)]; the first product -> 0 at u = 1
        left = 0.0 if u == 1.0 else (1 - u) * math.log1p(-u)
        return 0.5 * x * (left + (1 + u) * math.log1p(u))
    u2 = u * u
    return _geometric_series(u / 2, u2, lambda r: u ** (2 * r - 1) / (2 * r * (2 * r - 1)))


def gamma_shifted_series(x: float) -> float:
    """Sum_{r>=2} x^{2-2r} / ((2r-1)(2r-2)), the trivial-zero tail weighted by b_chi."""
    if x < 1:
        raise ValueError(f"x={x} must be >= 1")
    u = 1.0 / x
    if x < _CLOSED_FORM_BELOW:
        left = 0.0 if u == 1.0 else (1 - u) * math.log1p(-u)
        return 0.5 * x * (left - (1 + u) * math.log1p(u) + 2 * u)
    u2 = u * u
    return _geometric_series(u2 / 6, u2, lambda r: u ** (2 * r) / ((2 * r + 1) * (2 * r)))


def character_archimedean_term(x: float, a: int, b: int, delta: int) -> float:
    """Explicit trivial-zero contribution for one character with gamma factors (a, b)."""
    if x <= 1:
        raise ValueError(f"x={x} must be > 1")
    lx = math.log(x)
    return (-(a - delta) * (x * lx - x) + b * (lx + 1)
            - a * gamma_half_series(x) - b * gamma_shifted_series(x))


def class_archimedean_term(x: float, s_g: int, delta_C: int, n_L: int) -> float:
    """Class average of the character archimedean terms, in closed form."""
    if x <= 1:
        raise ValueError(f"x={x} must be > 1")
    out = log_integral(0.0, x) - s_g * log_integral(1.0, x + 1.0)
    if delta_C:
        out += 0.5 * n_L * (math.log(x * x - 1) + x * math.log((x + 1) / (x - 1)))
    return out


def aggregated_archimedean_term(x: float, s_g: int, delta_C: int, n_L: int) -> float:
    """The same class average assembled term by term from character data.

    Uses sum conj(chi(g)) a_chi = S_g, sum conj(chi(g)) b_chi = delta_C n_L - S_g
    and sum conj(chi(g)) delta_chi = 1.
    """
    b = delta_C * n_L - s_g
    lx = math.log(x)
    return (-(s_g - 1) * (x * lx - x) + b * (lx + 1)
            - s_g * gamma_half_series(x) - b * gamma_shifted_series(x))


def peak_excess(z: float) -> float:
    """log(1 + (log z - 1)/z) + 1/z - 1.

    At z = 1 + log y0, where y0 maximises (x - y) log y, this equals
    max_y (x - y) log y / x - log x + log log x.
    """
    if z <= 0:
        raise ValueError(f"z={z} must be > 0")
    return math.log1p((math.log(z) - 1) / z) + 1 / z - 1


def log_product_margin(x: float, y: float) -> float:
    """x (log x - log(2 log x)) - (x - y) log y."""
    if y <= 0 or x <= 1:
        raise ValueError(f"need x > 1 and y > 0, got x={x}, y={y}")
    return x * (math.log(x) - math.log(2 * math.log(x))) - (x - y) * math.log(y)


def log_product_inequality_holds(x: float, y: float) -> bool:
    """(x - y) log y <= x (log x - log(2 log x)); guaranteed for x >= 400."""
    if x < C("x_min"):
        raise ValueError(f"x={x} is below {C('x_min')}")
    return log_product_margin(x, y) >= 0


def _require_chain_range(x: float) -> None:
    if x < C("x_min"):
        raise ValueError(f"x={x} < {C('x_min')}: the simplified constants are not valid there")


def theta_integral_smooth_bound(x: float, log_disc: float, n_L: int) -> float:
    """Upper bound for x^2/2 - g_c * (integral of the inertia-weighted theta)."""
    _require_chain_range(x)
    x32 = x**1.5
    return ((C("zero_sum_log_disc") * x32 + C("main_log_disc") * x + 1) * log_disc
            + 2 * n_L * x + C("x32_const") * x32 + C("linear_const") * x)


def theta_integral_unramified_bound(x: float, log_disc: float, g_c: int, n_L: int) -> float:
    """Upper bound for x^2/2 - g_c * (integral of the unramified class theta)."""
    _require_chain_range(x)
    x32 = x**1.5
    return ((C("zero_sum_log_disc") * x32 + g_c * x + C("main_log_disc") * x) * log_disc
            + 2 * n_L * x + C("x32_const") * x32 + C("linear_const") * x)


def sufficient_condition_margin(x: float, log_disc: float, g_c: int, n_L: int, k: int) -> float:
    """sqrt(x) minus the right side of the condition guaranteeing pi_C(x) > k."""
    if x <= 1:
        raise ValueError(f"x={x} must be > 1")
    s = math.sqrt(x)
    lx = math.log(x)
    rhs = ((C("main_log_disc") + (2 * g_c + C("sqrt_log_disc_inv")) / s) * log_disc
           + 4 * n_L / s + C("sqrt_const") + C("sqrt_inv_const") / s
           + 2 * k * g_c * (lx - math.log(2 * lx)) / s)
    return s - rhs


def sufficient_condition_holds(x: float, log_disc: float, g_c: int, n_L: int, k: int) -> bool:
    return sufficient_condition_margin(x, log_disc, g_c, n_L, k) > 0


def k_term_lhs(y: float) -> float:
    """sqrt(log y)/sqrt(2y) + 1/(2y) for y = g_c k >= 1."""
    if y < 1:
        raise ValueError(f"y={y} must be >= 1")
    return math.sqrt(math.log(y) / (2 * y)) + 1 / (2 * y)


def k_term_rhs(x: float) -> float:
    """(log x - log(2 log x)) / sqrt(x)."""
    if x <= 1:
        raise ValueError(f"x={x} must be > 1")
    lx = math.log(x)
    return (lx - math.log(2 * lx)) / math.sqrt(x)


def k_term_margin(x: float, y: float) -> float:
    return k_term_lhs(y) - k_term_rhs(x)
