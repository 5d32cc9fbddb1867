import io
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from artin_bound.census import (
    InsufficientCensus,
    ResourceError,
    build_census,
    cached_prime_table,
    kth_prime_norm,
    load_prime_table,
    save_prime_table,
    sieve_primes,
    snapshot,
    sweep,
    write_census_csv,
)
from artin_bound.field_models import Cyclotomic, Quadratic, Rational, all_classes, class_context

from naive_oracle import naive_stats

REALS = ("psi_C", "theta_C", "psi_smooth", "theta_smooth", "psi1_smooth", "theta1_C", "theta1_smooth")


@pytest.mark.parametrize("limit", [4001, 4002, 10_007, 10_008, 54_321])
def test_segment_edges(limit):
    got = sieve_primes(limit, segment=1000).primes
    assert list(got) == list(sympy.primerange(2, limit + 1))


def test_sieve_examples():
    assert list(sieve_primes(10).primes) == [2, 3, 5, 7]
    assert len(sieve_primes(1).primes) == 0
    assert len(sieve_primes(10**6).primes) == 78498


def test_segmented_sieve_matches_simple():
    # a tiny memory budget forces many segments
    a = sieve_primes(3 * 10**5, segment=1000).primes
    b = np.array(list(sympy.primerange(2, 3 * 10**5 + 1)))
    assert np.array_equal(a, b)


@pytest.mark.parametrize("limit", [2, 3, 4, 97, 100, 101, 1000])
def test_sieve_boundaries(limit):
    assert list(sieve_primes(limit).primes) == list(sympy.primerange(2, limit + 1))


def test_sieve_memory_budget_exceeded():
    with pytest.raises(ResourceError):
        sieve_primes(10**9, memory_budget=10)


def test_prime_table_cache_roundtrip(tmp_path):
    t = sieve_primes(50_000)
    path = tmp_path / "t.bin"
    save_prime_table(t, path)
    u = load_prime_table(path)
    assert u.limit == t.limit and np.array_equal(u.primes, t.primes)
    data = bytearray(path.read_bytes())
    data[-1] ^= 0xFF
    path.write_bytes(bytes(data))
    with pytest.raises(ValueError):
        load_prime_table(path)
    (tmp_path / "bad.bin").write_bytes(b"nope")
    with pytest.raises(ValueError):
        load_prime_table(tmp_path / "bad.bin")


def test_cached_prime_table_reuses_file(tmp_path):
    a = cached_prime_table(20_000, tmp_path)
    assert any(tmp_path.iterdir())
    b = cached_prime_table(10_000, tmp_path)
    assert list(b.upto(10_000)) == list(sympy.primerange(2, 10_001))
    assert len(a.primes) == 2262


def test_rational_events(small_table):
    c = build_census(class_context(Rational(), 1), 10, small_table)
    assert list(c.norm) == [2, 3, 4, 5, 7, 8, 9]
    assert np.allclose(c.lam, np.log([2, 3, 2, 5, 7, 2, 3]))


def test_quadratic_events(small_table):
    c = build_census(class_context(Quadratic(5), -1), 20, small_table)
    deg1 = c.norm[(c.exponent == 1) & ~c.ramified]
    assert list(deg1) == [2, 3, 7, 13, 17]
    c = build_census(class_context(Quadratic(-1), 1), 10, small_table)
    assert list(c.norm[(c.exponent == 1) & ~c.ramified]) == [5]


def test_snapshot_examples(small_table):
    q = build_census(class_context(Rational(), 1), 100, small_table)
    s = snapshot(q, 1.5)
    assert s.pi_C == 0 and s.psi_C == 0 and s.psi1_smooth == 0 and s.pi_theta == 0
    assert snapshot(q, 10).pi_C == 4
    c = build_census(class_context(Quadratic(5), -1), 100, small_table)
    assert snapshot(c, 20).pi_C == 5


def test_snapshot_beyond_limit(small_table):
    c = build_census(class_context(Rational(), 1), 100, small_table)
    with pytest.raises(InsufficientCensus):
        snapshot(c, 101)


@pytest.mark.parametrize("fam", [Rational(), Quadratic(-1), Quadratic(5), Quadratic(-6), Cyclotomic(8),
                                 Cyclotomic(9), Cyclotomic(15)])
def test_snapshot_matches_naive_oracle(fam, small_table):
    for spec in all_classes(fam):
        c = build_census(spec, 3000, small_table)
        for x in (1.0, 2.0, 97.5, 1000.0, 3000.0):
            s = snapshot(c, x)
            ref = naive_stats(spec, x)
            assert s.pi_C == ref["pi_C"] and s.pi_theta == ref["pi_theta"]
            for k in REALS:
                assert math.isclose(getattr(s, k), ref[k], rel_tol=1e-12, abs_tol=1e-9), (spec.label, x, k)


@settings(max_examples=40, deadline=None)
@given(fam=st.sampled_from([Rational(), Quadratic(-3), Quadratic(10), Cyclotomic(12)]),
       xs=st.lists(st.floats(0, 5000), min_size=1, max_size=30))
def test_sweep_agrees_with_snapshot(fam, xs, small_table):
    spec = all_classes(fam)[-1]
    c = build_census(spec, 5000, small_table)
    xs = np.sort(np.array(xs))
    out = sweep(c, xs)
    for i, x in enumerate(xs):
        s = snapshot(c, x)
        assert out["pi_C"][i] == s.pi_C
        for k in REALS:
            assert math.isclose(out[k][i], getattr(s, k), rel_tol=1e-9, abs_tol=1e-6)


@settings(max_examples=30, deadline=None)
@given(x=st.floats(2, 4000), dx=st.floats(0, 1000))
def test_statistics_monotone_and_ordered(x, dx, small_table):
    c = build_census(class_context(Quadratic(-7), -1), 5000, small_table)
    a, b = snapshot(c, x), snapshot(c, min(x + dx, 5000))
    for k in ("pi_C",) + REALS:
        assert getattr(a, k) <= getattr(b, k) + 1e-9
    assert a.theta_C <= a.psi_C + 1e-12 and a.theta_smooth <= a.psi_smooth + 1e-12


def test_left_limits_exclude_events(small_table):
    c = build_census(class_context(Rational(), 1), 100, small_table)
    xs = np.array([2.0, 3.0, 4.0])
    assert list(sweep(c, xs, side="left")["pi_C"]) == [0, 1, 2]
    assert list(sweep(c, xs, side="right")["pi_C"]) == [1, 2, 2]


def test_kth_prime_norm_examples(small_table):
    q = build_census(class_context(Rational(), 1), 100, small_table)
    assert kth_prime_norm(q, 0) == 2
    c = build_census(class_context(Quadratic(5), 1), 100, small_table)
    assert kth_prime_norm(c, 0) == 11
    # K-convention counts the rational prime 11 once; L-convention counts both ideals above it
    assert kth_prime_norm(c, 1) == 19
    assert kth_prime_norm(c, 1, ideals_of="L") == 11
    with pytest.raises(InsufficientCensus):
        kth_prime_norm(c, 100)


def test_kth_L_convention_counts_inert_squares(small_table):
    c = build_census(class_context(Quadratic(-1), -1), 100, small_table)
    # inert primes 3, 7 give single ideals of norm 9, 49
    assert kth_prime_norm(c, 0, "L") == 9 and kth_prime_norm(c, 1, "L") == 49


def test_weights_and_sorting(small_table):
    c = build_census(class_context(Cyclotomic(12), 5), 10_000, small_table)
    assert np.all(np.diff(c.norm) >= 0)
    assert np.all(c.weight > 0) and np.all(c.weight <= 1)
    assert np.all(c.weight[~c.ramified] == 1)


def test_census_csv(small_table):
    c = build_census(class_context(Quadratic(-1), 1), 30, small_table)
    buf = io.StringIO()
    write_census_csv(c, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "norm,prime,exponent,kind,weight,lambda,multiplicity"
    assert lines[1].startswith("2,2,1,ramified-weighted,1/2,")
    assert len(lines) == 1 + len(c)


def test_build_census_needs_table():
    with pytest.raises(InsufficientCensus):
        build_census(class_context(Rational(), 1), 1000, sieve_primes(100))
