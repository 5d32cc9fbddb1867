"""Exact prime-power censuses for a (field, class) pair over K = Q.

A census is the sorted list of weighted prime-power events p^m <= X.  Every
Chebyshev-type statistic of the class is a weighted sum over events with
norm <= x, and its integral from 0 to x is the same sum against (x - norm),
since the statistics are right-continuous step functions.
"""

from __future__ import annotations

import csv
import math
import os
import struct
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, NamedTuple, TextIO

import numpy as np

from artin_bound.artin_splitting import frobenius_residues, splitting_datum, theta_weight
from artin_bound.field_models import Cyclotomic, GaloisClassSpec, Quadratic

DEFAULT_MEMORY_BUDGET = 1 << 30  # bytes
SEGMENT = 1 << 22

CACHE_MAGIC = b"ABPT"
CACHE_VERSION = 1
CACHE_ENV = "ARTIN_BOUND_CACHE"


class ResourceError(RuntimeError):
    """A configured memory or size budget would be exceeded."""


class InsufficientCensus(LookupError):
    """The census limit is too small to answer the query."""


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)

    def upto(self, x: int) -> np.ndarray:
        return self.primes[: np.searchsorted(self.primes, x, side="right")]


def _small_sieve(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    mark = np.ones(n + 1, dtype=bool)
    mark[:2] = False
    mark[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if mark[p]:
            mark[p * p :: 2 * p] = False
    return np.flatnonzero(mark).astype(np.int64)


def sieve_primes(limit: int, memory_budget: int = DEFAULT_MEMORY_BUDGET,
                 segment: int = SEGMENT) -> PrimeTable:
    """All primes <= limit by a segmented odd-only sieve of Eratosthenes.

    ``segment`` is the number of odd candidates marked per block.
    """
    limit = int(limit)
    # output array dominates: ~8 bytes per prime, pi(X) < 1.26 X / log X
    est = 8 * (1.26 * limit / math.log(limit) if limit > 2 else 1) + segment
    if est > memory_budget:
        raise ResourceError(
            f"sieving to {limit} needs ~{est / 2**20:.0f} MiB, budget is {memory_budget / 2**20:.0f} MiB"
        )
    if limit < 2:
        return PrimeTable(limit, np.zeros(0, dtype=np.int64))
    if limit <= 4 * segment:
        return PrimeTable(limit, _small_sieve(limit))
    root = math.isqrt(limit)
    base = _small_sieve(root)
    chunks = [base]
    odd_base = base[1:]
    low = root + 1
    while low <= limit:
        high = min(low + 2 * segment, limit + 1)
        if low % 2 == 0:
            low += 1
        if low >= high:
            break
        # index i <-> low + 2i
        mark = np.ones((high - low + 1) // 2, dtype=bool)
        for p in odd_base:
            start = max(p * p, -(-low // p) * p)
            if start % 2 == 0:
                start += p
            if start >= high:
                continue
            mark[(start - low) // 2 :: p] = False
        chunks.append(low + 2 * np.flatnonzero(mark).astype(np.int64))
        low = high
    return PrimeTable(limit, np.concatenate(chunks))


def save_prime_table(table: PrimeTable, path: str | os.PathLike) -> None:
    """Binary cache: magic, version, limit, count, then uint32 gaps."""
    gaps = np.diff(table.primes, prepend=0).astype("<u4")
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<IQQ", CACHE_VERSION, table.limit, len(table)))
        fh.write(gaps.tobytes())


def load_prime_table(path: str | os.PathLike) -> PrimeTable:
    with open(path, "rb") as fh:
        if fh.read(4) != CACHE_MAGIC:
            raise ValueError(f"{path}: not a prime-table cache")
        version, limit, count = struct.unpack("<IQQ", fh.read(20))
        if version != CACHE_VERSION:
            raise ValueError(f"{path}: unsupported cache version {version}")
        gaps = np.frombuffer(fh.read(), dtype="<u4")
    if len(gaps) != count:
        raise ValueError(f"{path}: header says {count} primes, found {len(gaps)}")
    primes = np.cumsum(gaps, dtype=np.int64)
    if count and (primes[-1] > limit or np.any(np.diff(primes) <= 0)):
        raise ValueError(f"{path}: corrupt prime table")
    return PrimeTable(int(limit), primes)


def cached_prime_table(limit: int, cache_dir: str | os.PathLike | None = None) -> PrimeTable:
    """Sieve, reusing ``primes-<limit>.bin`` under cache_dir (or $ARTIN_BOUND_CACHE)."""
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    if not cache_dir:
        return sieve_primes(limit)
    path = Path(cache_dir) / f"primes-{limit}.bin"
    if path.exists():
        return load_prime_table(path)
    table = sieve_primes(limit)
    path.parent.mkdir(parents=True, exist_ok=True)
    save_prime_table(table, path)
    return table


class CensusEvent(NamedTuple):
    norm: int
    prime: int
    exponent: int
    ramified: bool
    weight: Fraction
    lam: float
    multiplicity: int


@dataclass(frozen=True)
class CensusSeries:
    """Sorted prime-power events with nonzero weight for one class.

    Arrays are parallel and sorted by norm.  Unramified events carry weight 1
    (the class indicator of Frob^m); ramified ones carry the inertia average
    ``weight_num / weight_den``.  ``ideals_L``/``degree_L`` describe the primes
    of L above p and are only used for the L-side ideal convention.
    """

    spec: GaloisClassSpec
    limit: int
    norm: np.ndarray
    prime: np.ndarray
    exponent: np.ndarray
    ramified: np.ndarray
    weight_num: np.ndarray
    weight_den: np.ndarray
    ideals_L: np.ndarray
    degree_L: np.ndarray

    @property
    def weight(self) -> np.ndarray:
        return self.weight_num / self.weight_den

    @property
    def lam(self) -> np.ndarray:
        return np.log(self.prime.astype(np.float64))

    def __len__(self) -> int:
        return len(self.norm)

    @property
    def events(self) -> list[CensusEvent]:
        return [
            CensusEvent(
                int(n), int(p), int(m), bool(r), Fraction(int(a), int(b)), math.log(int(p)), 1
            )
            for n, p, m, r, a, b in zip(
                self.norm, self.prime, self.exponent, self.ramified, self.weight_num, self.weight_den
            )
        ]


def build_census(spec: GaloisClassSpec, limit: int, table: PrimeTable) -> CensusSeries:
    limit = int(limit)
    if table.limit < limit:
        raise InsufficientCensus(f"prime table covers {table.limit} < {limit}")
    fam = spec.family
    primes = table.upto(limit)
    ram_set = set(fam.invariants().ramified_primes())
    is_ram = np.isin(primes, np.fromiter(ram_set, dtype=np.int64, count=len(ram_set)))
    unram = primes[~is_ram]
    frob = frobenius_residues(fam, unram)
    if isinstance(fam, Cyclotomic):
        f_deg = _orders_mod(unram, fam.m)
    elif isinstance(fam, Quadratic):
        f_deg = np.where(frob == 1, 1, 2)
    else:
        f_deg = np.ones_like(unram)
    g_num = fam.group_order // f_deg

    cols: list[tuple] = []
    # unramified: weight 1 iff Frob^m == class element
    pw = unram.copy()
    fm = frob.copy()
    m = 1
    alive = np.ones(len(unram), dtype=bool)
    while True:
        alive &= pw <= limit
        if not alive.any():
            break
        hit = alive & (fm == spec.class_elem)
        k = int(hit.sum())
        if k:
            cols.append(
                (pw[hit], unram[hit], np.full(k, m), np.zeros(k, bool), np.ones(k, np.int64),
                 np.ones(k, np.int64), g_num[hit], f_deg[hit])
            )
        m += 1
        # guard against int64 overflow once p^m has passed the limit
        pw = np.where(alive, pw * unram, limit + 1)
        fm = _class_mul(fam, fm, frob)

    rn, rp, rm, rw, rd, rg, rf = [], [], [], [], [], [], []
    for p in (int(q) for q in primes[is_ram]):
        sd = splitting_datum(fam, p)
        q, m = p, 1
        while q <= limit:
            w = theta_weight(spec, p, m)
            if w:
                rn.append(q), rp.append(p), rm.append(m)
                rw.append(w.numerator), rd.append(w.denominator)
                rg.append(sd.g), rf.append(sd.f)
            q *= p
            m += 1
    if rn:
        k = len(rn)
        cols.append(
            (np.array(rn), np.array(rp), np.array(rm), np.ones(k, bool), np.array(rw),
             np.array(rd), np.array(rg), np.array(rf))
        )
    if cols:
        stacked = [np.concatenate([c[i] for c in cols]) for i in range(8)]
    else:
        stacked = [np.zeros(0, dt) for dt in (np.int64,) * 3 + (bool,) + (np.int64,) * 4]
    order = np.lexsort((stacked[1], stacked[0]))
    n, p, mm, r, wn, wd, gl, fl = (a[order] for a in stacked)
    return CensusSeries(
        spec, limit, n.astype(np.int64), p.astype(np.int64), mm.astype(np.int64), r.astype(bool),
        wn.astype(np.int64), wd.astype(np.int64), gl.astype(np.int64), fl.astype(np.int64),
    )


def _class_mul(fam, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if isinstance(fam, Cyclotomic):
        return a * b % fam.m
    return a * b


def _orders_mod(residues: np.ndarray, m: int) -> np.ndarray:
    """Multiplicative order of each unit residue mod m."""
    r = residues % m
    order = np.zeros(len(r), dtype=np.int64)
    x = r.copy()
    k = 1
    while (order == 0).any():
        done = (x == 1) & (order == 0)
        order[done] = k
        x = x * r % m
        k += 1
    return order


@dataclass(frozen=True)
class CountSnapshot:
    """All class statistics at one point x.

    ``*_C`` use only unramified events; ``*_smooth`` include the inertia-
    weighted ramified events.  ``pi_theta`` is the exact weighted prime count.
    """

    x: float
    pi_C: int
    psi_C: float
    theta_C: float
    psi_smooth: float
    theta_smooth: float
    psi1_smooth: float
    theta1_C: float
    theta1_smooth: float
    pi_theta: Fraction


def snapshot(census: CensusSeries, x: float) -> CountSnapshot:
    """Exact-as-possible statistics at x by one pass over the events."""
    if x > census.limit:
        raise InsufficientCensus(f"x={x} exceeds census limit {census.limit}")
    pi_c = 0
    pi_theta = Fraction(0)
    psi_c, theta_c, psi_s, theta_s, psi1_s, theta1_c, theta1_s = ([] for _ in range(7))
    for ev in census.events:
        if ev.norm > x:
            break
        wl = float(ev.weight) * ev.lam
        wl1 = wl * (x - ev.norm)
        psi_s.append(wl)
        psi1_s.append(wl1)
        if ev.exponent == 1:
            pi_theta += ev.weight
            theta_s.append(wl)
            theta1_s.append(wl1)
        if not ev.ramified:
            psi_c.append(wl)
            if ev.exponent == 1:
                pi_c += 1
                theta_c.append(wl)
                theta1_c.append(wl1)
    f = math.fsum
    return CountSnapshot(
        x, pi_c, f(psi_c), f(theta_c), f(psi_s), f(theta_s), f(psi1_s), f(theta1_c), f(theta1_s),
        pi_theta,
    )


STATS = ("pi_C", "psi_C", "theta_C", "psi_smooth", "theta_smooth", "psi1_smooth",
         "theta1_C", "theta1_smooth", "psi1_gap", "theta_ram_gap", "theta1_ram_gap")


def sweep(census: CensusSeries, xs: np.ndarray, side: str = "right") -> dict[str, np.ndarray]:
    """Vectorised statistics at many points.

    ``side="left"`` gives the left limits (events with norm < x excluded).
    Also returns the gap series ``psi1_gap`` (proper prime powers only),
    ``theta_ram_gap`` and ``theta1_ram_gap`` (ramified primes only) computed
    directly so they are never the difference of two large sums.
    """
    xs = np.asarray(xs, dtype=np.float64)
    if len(xs) and xs.max() > census.limit:
        raise InsufficientCensus(f"x={xs.max()} exceeds census limit {census.limit}")
    wl = census.weight * census.lam
    norm = census.norm.astype(np.float64)
    prime_ev = census.exponent == 1
    unram = ~census.ramified

    def stat(mask: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        n = norm[mask]
        cw = np.concatenate(([0.0], np.cumsum(values[mask])))
        cwn = np.concatenate(([0.0], np.cumsum(values[mask] * n)))
        idx = np.searchsorted(n, xs, side=side)
        s = cw[idx]
        # sum w*lam*(x - n) = x * S - sum w*lam*n
        return s, xs * s - cwn[idx]

    out: dict[str, np.ndarray] = {}
    pi_n = norm[prime_ev & unram]
    out["pi_C"] = np.searchsorted(pi_n, xs, side=side).astype(np.int64)
    out["psi_C"], _ = stat(unram, wl)
    out["theta_C"], out["theta1_C"] = stat(prime_ev & unram, wl)
    out["psi_smooth"], out["psi1_smooth"] = stat(np.ones_like(prime_ev), wl)
    out["theta_smooth"], out["theta1_smooth"] = stat(prime_ev, wl)
    _, out["psi1_gap"] = stat(~prime_ev, wl)
    out["theta_ram_gap"], out["theta1_ram_gap"] = stat(prime_ev & census.ramified, wl)
    return out


def class_event_points(census: CensusSeries, lo: float = 0.0, hi: float | None = None) -> np.ndarray:
    hi = census.limit if hi is None else hi
    pts = np.unique(census.norm)
    return pts[(pts >= lo) & (pts <= hi)].astype(np.float64)


def kth_prime_norm(census: CensusSeries, k: int, ideals_of: str = "K") -> int:
    """Norm of the (k+1)-st unramified prime ideal in the class.

    With ``ideals_of="K"`` each rational prime p with Frob_p = C counts once
    at norm p.  With ``"L"`` the g primes of L above such p are counted, each
    at norm p^f.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    sel = (census.exponent == 1) & ~census.ramified
    if ideals_of == "K":
        norms = census.norm[sel]
        if len(norms) <= k:
            raise InsufficientCensus(
                f"only {len(norms)} prime ideals in class up to {census.limit}; need {k + 1}"
            )
        return int(norms[k])
    if ideals_of != "L":
        raise ValueError(f"ideals_of must be 'K' or 'L', not {ideals_of!r}")
    qn = census.prime[sel] ** census.degree_L[sel]
    mult = census.ideals_L[sel]
    keep = qn <= census.limit
    qn, mult = qn[keep], mult[keep]
    order = np.argsort(qn, kind="stable")
    qn, mult = qn[order], mult[order]
    cum = np.cumsum(mult)
    idx = int(np.searchsorted(cum, k + 1))
    if idx >= len(qn):
        raise InsufficientCensus(f"fewer than {k + 1} prime ideals of L up to {census.limit}")
    return int(qn[idx])


CSV_FIELDS = ("norm", "prime", "exponent", "kind", "weight", "lambda", "multiplicity")


def write_census_csv(census: CensusSeries, fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for ev in census.events:
        w.writerow((ev.norm, ev.prime, ev.exponent,
                    "ramified-weighted" if ev.ramified else "unramified-counted",
                    str(ev.weight), f"{ev.lam:.15g}", ev.multiplicity))


def census_for_classes(specs: Iterable[GaloisClassSpec], limit: int, table: PrimeTable) -> list[CensusSeries]:
    return [build_census(s, limit, table) for s in specs]
