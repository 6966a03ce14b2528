from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction as Fr

import numpy as np
import pytest
from scipy.special import zeta

from src.config.settings import EnumerationSettings, FittingSettings
from src.countlab import (
    CountSeries,
    FitError,
    LineBundleChar,
    XiStatus,
    count_flags_sl3,
    count_horocycle_lifts,
    count_projective,
    counting_exponents,
    dyadic_grid,
    fit_growth,
    fit_points,
    horocycle_series,
    linear_grid,
    lifts_asymptote,
    max_type_not_in,
    partial_exponents,
    projective_series,
    tensor_height_check,
    xi_tail_check,
)
from src.countlab.fitting import snap_exponent, top_dyadic_window
from src.countlab.flags import gauss_reduce, orthogonal_basis, random_flags
from src.countlab.horocycles import horocycle_distance
from src.countlab.lattice import lattice_ball_count, primitive_vectors_3d
from src.countlab.xi import XiShell, _decays, late_ratios, ratio_cap
from src.rootsys import split_datum
from src.utils.errors import EnumerationLimitError

CATALAN = 0.915965594177219

# ---------
# Exponents
# ---------


def test_anticanonical_exponents(a2):
    exps = counting_exponents(a2, LineBundleChar(a2.parabolic(), {1: 2, 2: 2}))
    assert exps.a == 1
    assert exps.F_chi == a2.delta
    assert exps.b == 2


def test_unbalanced_exponents(a2):
    exps = counting_exponents(a2, LineBundleChar(a2.parabolic(), {1: 1, 2: 2}))
    assert exps.a == 2
    assert exps.F_chi == a2.parabolic([1])
    assert exps.b == 1
    assert exps.to_dict()["a"] == "2"


def test_partial_flag_exponents(a2):
    exps = counting_exponents(a2, LineBundleChar(a2.parabolic([2]), {1: 1}))
    assert exps.m == {1: 3}
    assert (exps.a, exps.b) == (3, 1)


def test_exponent_invariants(a3):
    rng = random.Random(5)
    for E in a3.all_parabolics():
        if E == a3.delta:
            continue
        for _ in range(5):
            c = {alpha: rng.randint(1, 4) for alpha in a3.complement(E)}
            exps = counting_exponents(a3, LineBundleChar(E, c))
            assert exps.b >= 1
            for alpha in a3.complement(E):
                assert exps.a * c[alpha] >= exps.m[alpha]
                assert (exps.a * c[alpha] == exps.m[alpha]) == (alpha in exps.F_chi)


def test_partial_exponents_and_max_type(a2):
    bundle = LineBundleChar(a2.parabolic(), {1: 1, 2: 2})
    assert partial_exponents(a2, bundle, a2.parabolic([2])) == (Fr(1), 1)
    assert partial_exponents(a2, bundle, a2.delta) == (Fr(2), 1)
    assert max_type_not_in(a2, bundle, a2.parabolic([2]))
    assert not max_type_not_in(a2, bundle, a2.delta)
    with pytest.raises(ValueError):
        partial_exponents(a2, bundle, a2.parabolic())


def test_bundle_from_list(a3):
    bundle = LineBundleChar.from_list(a3, a3.parabolic([2]), [1, 3])
    assert bundle.c == {1: 1, 3: 3}
    with pytest.raises(ValueError):
        LineBundleChar.from_list(a3, a3.parabolic([2]), [1])


@pytest.mark.parametrize(
    "E, c",
    [((), {1: 1}), ((), {1: 0, 2: 1}), ((1, 2), {}), ((2,), {1: 1, 2: 1})],
)
def test_bundle_validation(a2, E, c):
    with pytest.raises(ValueError):
        counting_exponents(a2, LineBundleChar(a2.parabolic(E), c))


# ------------------
# Projective heights
# ------------------


@pytest.mark.parametrize("n, T, expected", [(2, 1, 2), (2, 1.5, 4), (3, 1, 3), (2, 0.5, 0)])
def test_projective_small_counts(n, T, expected):
    assert count_projective(n, T) == expected
    assert count_projective(n, T, strategy="exhaustive") == expected


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("T", [2.0, 7.3, 25.0])
def test_projective_strategies_agree(n, T):
    assert count_projective(n, T, "sieve") == count_projective(n, T, "exhaustive")


def test_projective_partitioning_is_exact():
    single = count_projective(3, 40.0, "exhaustive")
    assert count_projective(3, 40.0, "exhaustive", jobs=3) == single


def test_projective_exhaustive_budget():
    with pytest.raises(EnumerationLimitError):
        count_projective(4, 200.0, "exhaustive")
    with pytest.raises(ValueError):
        count_projective(1, 10.0)


def test_lattice_ball_count_small():
    assert lattice_ball_count(2, 1) == 5
    assert lattice_ball_count(3, 2) == 19


def test_p1_growth():
    series = projective_series(2, dyadic_grid(2**6, 2**12))
    assert series.is_monotone()
    fitted = fit_growth(series, "power")
    assert fitted.fit.exponents["a"] == pytest.approx(2.0, abs=0.05)
    ys, xs = series.ys, series.xs
    last, prev = ys[-1] / xs[-1] ** 2, ys[-2] / xs[-2] ** 2
    assert abs(last - prev) / last < 0.02


def test_p2_growth():
    series = projective_series(3, dyadic_grid(2**3, 2**9))
    fitted = fit_growth(series, "power")
    assert fitted.fit.exponents["a"] == pytest.approx(3.0, abs=0.1)


# -----
# Flags
# -----


def _brute_force_flags(c1: int, c2: int, T: float) -> int:
    X = math.floor(T * T + 1e-9)
    r = math.isqrt(X)
    box = [
        v
        for v in itertools.product(range(-r, r + 1), repeat=3)
        if math.gcd(*v) == 1 and next(x for x in v if x != 0) > 0
    ]
    count = 0
    for v in box:
        nv = sum(x * x for x in v)
        for w in box:
            nw = sum(x * x for x in w)
            if sum(x * y for x, y in zip(v, w)) == 0 and nv**c1 * nw**c2 <= X:
                count += 1
    return count


def test_coordinate_flags():
    assert count_flags_sl3(1, 1, 1.0) == 6


@pytest.mark.parametrize("c", [(1, 1), (1, 2), (2, 1), (2, 2)])
@pytest.mark.parametrize("T", [1.5, 3.0])
def test_flags_against_brute_force(c, T):
    assert count_flags_sl3(*c, T) == _brute_force_flags(*c, T)


def test_flags_small_value():
    assert count_flags_sl3(1, 1, 1.5) == 18


@pytest.mark.parametrize("c", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
@pytest.mark.parametrize("T", [5.0, 20.0])
def test_flag_strategies_agree(c, T):
    counts = {s: count_flags_sl3(*c, T, strategy=s) for s in ("v_outer", "w_outer", "balanced")}
    assert len(set(counts.values())) == 1, counts


def test_flags_partitioning_is_exact():
    single = count_flags_sl3(2, 2, 200.0)
    assert count_flags_sl3(2, 2, 200.0, jobs=2) == single


def test_flags_budget():
    small = EnumerationSettings(max_candidates=100)
    with pytest.raises(EnumerationLimitError):
        count_flags_sl3(1, 1, 50.0, strategy="v_outer", enumeration=small)


def test_orthogonal_basis_spans_complement():
    vectors, _ = primitive_vectors_3d(30)
    for v in vectors:
        b1, b2 = gauss_reduce(*orthogonal_basis(tuple(int(x) for x in v)))
        cross = (
            b1[1] * b2[2] - b1[2] * b2[1],
            b1[2] * b2[0] - b1[0] * b2[2],
            b1[0] * b2[1] - b1[1] * b2[0],
        )
        assert cross in (tuple(int(x) for x in v), tuple(-int(x) for x in v))


@pytest.mark.parametrize("c", [(1, 1), (2, 1), (2, 2)])
def test_tensor_height_factorizes(c):
    for v, w in random_flags(100, 6, seed=sum(c)):
        assert sum(x * y for x, y in zip(v, w)) == 0
        assert tensor_height_check(v, w, *c).matches


@pytest.mark.slow
def test_anticanonical_flag_growth():
    Ts = [10**k for k in (2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0)]
    series = fit_growth(CountSeries.from_pairs([(T, count_flags_sl3(2, 2, T)) for T in Ts]), "power_log")
    assert series.is_monotone()
    assert series.fit.snapped_a == 1
    assert series.fit.exponents["b"] == pytest.approx(2.0, abs=0.3)


@pytest.mark.slow
def test_unbalanced_flag_growth(a2):
    exps = counting_exponents(a2, LineBundleChar(a2.parabolic(), {1: 1, 2: 2}))
    Ts = dyadic_grid(2**4, 2**9)
    series = fit_growth(CountSeries.from_pairs([(T, count_flags_sl3(1, 2, T)) for T in Ts]), "power_log")
    assert series.fit.exponents["a"] == pytest.approx(float(exps.a), abs=0.1)
    assert series.fit.exponents["b"] == pytest.approx(exps.b, abs=0.3)


# ----------
# Horocycles
# ----------


def test_horocycles_at_zero():
    assert count_horocycle_lifts(0.0) == 2


@pytest.mark.parametrize("p, q", [(0, 1), (1, 1), (1, 2), (-2, 3), (5, 7)])
def test_horocycle_distance_matches_geometry(p, q):
    # Horocycle tangent at p/q with Euclidean diameter 1/q², sampled densely.
    phi = np.linspace(0.0, 2 * np.pi, 400_001)
    r = 0.5 / q**2
    x = p / q + r * np.cos(phi)
    y = r + r * np.sin(phi)
    keep = y > 1e-12
    d = np.arccosh(1 + (x[keep] ** 2 + (y[keep] - 1) ** 2) / (2 * y[keep]))
    assert horocycle_distance(p, q) == pytest.approx(float(d.min()), abs=1e-6)
    assert horocycle_distance(7, 0) == 0.0


def test_horocycle_strategies_agree():
    for R in [0.0, 0.7, 1.5, 3.0, 6.2, 9.0]:
        assert count_horocycle_lifts(R, "sieve") == count_horocycle_lifts(R, "enumerate")


def test_horocycles_monotone():
    counts = [count_horocycle_lifts(0.25 * k) for k in range(40)]
    assert all(a <= b for a, b in zip(counts, counts[1:]))


def test_horocycle_growth():
    Rs = [8.0 + 0.5 * k for k in range(13)]
    series = horocycle_series(Rs)
    fitted = fit_growth(series, "exponential")
    assert fitted.fit.exponents["c"] == pytest.approx(1.0, abs=0.05)
    normalized = dict(zip(Rs, series.extra["normalized"]))
    assert abs(normalized[14.0] - normalized[12.0]) / normalized[14.0] < 0.1
    assert normalized[14.0] == pytest.approx(3 / math.pi, rel=0.02)


def test_lifts_asymptote_profile(a2):
    plane = split_datum("A1", metric_scale=Fr(1, 2))
    assert plane.rho_norm() == pytest.approx(1.0)
    assert lifts_asymptote(plane, 3.0) == pytest.approx(math.exp(3.0))
    assert count_horocycle_lifts(14.0) / lifts_asymptote(plane, 14.0) == pytest.approx(
        3 / math.pi, rel=0.02
    )
    rate = a2.rho_norm()
    assert lifts_asymptote(a2, 5.0) == pytest.approx(
        (2 * math.pi * 5.0 / rate) ** 0.5 * math.exp(rate * 5.0)
    )
    with pytest.raises(ValueError):
        lifts_asymptote(plane, 0.0)


def test_horocycles_reject_negative_radius():
    with pytest.raises(ValueError):
        count_horocycle_lifts(-1.0)


# -------
# Fitting
# -------


def _series(fn, Ts):
    return CountSeries.from_pairs([(T, fn(T)) for T in Ts])


def test_fit_pure_power():
    fit = fit_growth(_series(lambda T: 7 * T**3, dyadic_grid(2, 2**10)), "power").fit
    assert fit.exponents["a"] == pytest.approx(3.0, abs=0.01)
    assert fit.exponents["log_C"] == pytest.approx(math.log(7), abs=1e-6)


def test_fit_power_log():
    fit = fit_growth(_series(lambda T: T * math.log(T), dyadic_grid(4, 2**20)), "power_log").fit
    assert fit.snapped_a == 1
    assert fit.exponents["b"] == pytest.approx(2.0, abs=1e-6)


def test_fit_power_log_with_known_exponent():
    xs = dyadic_grid(4, 2**16)
    fit = fit_points(xs, [T**2 * math.log(T) ** 2 for T in xs], "power_log", a=Fr(2))
    assert fit.exponents["b"] == pytest.approx(3.0, abs=1e-6)
    assert fit.snapped_a == 2


def test_top_dyadic_window():
    xs = [3.0 * 2**j for j in range(12)]
    mask = top_dyadic_window(xs)
    assert np.asarray(xs)[mask][0] == 3.0 * 2**6
    assert mask.sum() == 6
    # widened until three points fit
    sparse = top_dyadic_window([2.0, 3.0, 4.0, 5.0, 1e6])
    assert list(np.asarray([2.0, 3.0, 4.0, 5.0, 1e6])[sparse]) == [4.0, 5.0, 1e6]


def test_power_log_window_is_reported():
    xs = dyadic_grid(2, 2**12)
    fit = fit_points(xs, [T**2 * math.log(T) for T in xs], "power_log")
    assert fit.window == (2.0**7, 2.0**12)
    assert fit.snapped_a == 2


def test_linear_grid():
    assert linear_grid(0.5, 2.0, 0.5) == [0.5, 1.0, 1.5, 2.0]
    assert len(linear_grid(0.5, 14.0, 0.5)) == 28
    assert linear_grid(1.0, 1.0, 3.0) == [1.0]
    for bad in ((0.0, 1.0, 0.0), (2.0, 1.0, 0.5), (-1.0, 1.0, 0.5)):
        with pytest.raises(ValueError):
            linear_grid(*bad)


def test_fit_exponential():
    Rs = [1.0 + k for k in range(8)]
    fit = fit_points(Rs, [3 * math.exp(0.5 * R) for R in Rs], "exponential")
    assert fit.exponents["c"] == pytest.approx(0.5)


@pytest.mark.parametrize(
    "xs, ys",
    [
        ([2, 4, 8, 16], [1, 2, 3, 4]),
        ([2, 4, 8, 16, 32], [1, 2, 0, 4, 5]),
        ([2, 4, 4, 16, 32], [1, 2, 3, 4, 5]),
    ],
)
def test_fit_errors(xs, ys):
    with pytest.raises(FitError):
        fit_points(xs, ys, "power")


def test_snap_exponent():
    settings = FittingSettings()
    assert snap_exponent(1.93, settings) == 2
    assert snap_exponent(1.49, settings) == Fr(3, 2)
    assert snap_exponent(0.33, FittingSettings(snap_tolerance=0.01)) == Fr(1, 3)
    assert snap_exponent(0.417, FittingSettings(snap_tolerance=0.001)) is None


def test_series_round_trip_dict():
    series = fit_growth(_series(lambda T: T**2, dyadic_grid(2, 64)), "power")
    data = series.to_dict()
    assert data["points"][0] == [2.0, 4.0]
    assert data["fit"]["model"] == "power"


# --------------
# Xi shell check
# --------------


def test_xi_converges_for_s2():
    report = xi_tail_check(2.0, 2**22)
    assert report.status is XiStatus.CONVERGES
    assert report.tail_after(20) < 1e-3
    expected = 2 * zeta(2) * CATALAN / zeta(4)
    assert report.total == pytest.approx(expected, abs=1e-4)
    late = [sh for sh in report.shells if sh.complete][-6:]
    for a, b in zip(late, late[1:]):
        assert b.mass / a.mass == pytest.approx(0.5, abs=0.05)


def test_xi_shells_decay_geometrically():
    report = xi_tail_check(2.0, 2**20)
    assert report.status is XiStatus.CONVERGES
    assert ratio_cap(2.0) == 0.75
    assert report.max_ratio <= ratio_cap(2.0)
    assert report.max_ratio == pytest.approx(2 ** (1 - 2.0), abs=0.05)


def test_slow_decay_is_not_geometric():
    shells = [XiShell(n, 1, 1 / (n + 1), 1.0, 0.0, True) for n in range(16)]
    assert all(b.mass < a.mass for a, b in zip(shells, shells[1:]))
    assert not _decays(shells, 2.0)
    geometric = [XiShell(n, 1, 0.5**n, 1.0, 0.0, True) for n in range(16)]
    assert _decays(geometric, 2.0)


def test_xi_doubling_cutoff():
    a = xi_tail_check(2.0, 2**20)
    b = xi_tail_check(2.0, 2**21)
    assert abs(a.total - b.total) < 1e-3


def test_xi_divergence_expected_for_s1():
    report = xi_tail_check(1.0, 2**18)
    assert report.status is XiStatus.DIVERGENCE_EXPECTED
    late = [sh for sh in report.shells if sh.complete][-5:]
    for sh in late:
        assert sh.mass == pytest.approx(3 / math.pi * math.log(2), rel=0.05)


def test_xi_first_shell():
    shell = xi_tail_check(2.0, 16).shells[0]
    assert (shell.n, shell.count) == (0, 2)
    assert shell.mass == pytest.approx(2.0)
