import random

import mpmath as mp
import pytest

from gammacheb.chebcore import (
    ArgMap,
    ChebSeries,
    PrecisionContext,
    add,
    clenshaw_eval,
    differentiate,
    differentiate_inverse_arg,
    fit,
    make_series,
    multiply,
    nodes,
    scale,
    tail_sum,
    to_power_basis,
    truncate,
)
from gammacheb.errors import DomainError, FitError

CTX30 = PrecisionContext(work_digits=30, target_digits=20, node_count_m=64)


def horner(power_coeffs, x):
    acc = mp.mpf(0)
    for c in reversed(power_coeffs):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# nodes


def test_nodes_m1_endpoints():
    assert nodes(1, CTX30) == [1, 0]


def test_nodes_m2_midpoint_exact():
    xs = nodes(2, CTX30)
    assert xs == [1, mp.mpf(1) / 2, 0]


def test_nodes_m4_third_node():
    # cos^2(pi/8) = (2 + sqrt 2)/4, computed directly as the oracle
    with mp.workdps(30):
        expected = (2 + mp.sqrt(2)) / 4
        xs = nodes(4, CTX30)
        assert abs(xs[1] - expected) < mp.mpf(10) ** -28
        assert abs(xs[1] - mp.mpf("0.8535533906")) < 1e-10


def test_nodes_strictly_decreasing_within_unit_interval():
    xs = nodes(17, CTX30)
    assert len(xs) == 18
    assert all(xs[i] > xs[i + 1] for i in range(17))
    assert all(0 <= x <= 1 for x in xs)


def test_nodes_rejects_zero_m():
    with pytest.raises(ValueError):
        nodes(0, CTX30)


# ---------------------------------------------------------------------------
# fit


def test_fit_constant_one_gives_a0_two():
    s = fit(lambda x: mp.mpf(1), 8, 5, CTX30)
    assert abs(s.coeffs[0] - 2) < mp.mpf(10) ** -27
    for c in s.coeffs[1:]:
        assert abs(c) < mp.mpf(10) ** -27


def test_fit_recovers_basis_function():
    s = fit(lambda x: 2 * x - 1, 8, 5, CTX30)  # T*_1
    assert abs(s.coeffs[1] - 1) < mp.mpf(10) ** -27
    for i in (0, 2, 3, 4):
        assert abs(s.coeffs[i]) < mp.mpf(10) ** -27


def test_fit_identity_function():
    # x = T*_0/2 + T*_1/2, so a0 = 1 and a1 = 1/2 under the half-a0 convention
    s = fit(lambda x: x, 8, 4, CTX30)
    assert abs(s.coeffs[0] - 1) < mp.mpf(10) ** -27
    assert abs(s.coeffs[1] - mp.mpf(1) / 2) < mp.mpf(10) ** -27


def test_fit_rejects_more_coeffs_than_nodes():
    with pytest.raises(ValueError):
        fit(lambda x: x, 4, 5, CTX30)


def test_fit_names_offending_node_on_nonfinite_sample():
    def bad(x):
        return mp.inf if x == 0 else mp.mpf(1)

    with pytest.raises(FitError, match="node j=8"):
        fit(bad, 8, 3, CTX30)


def test_fit_round_trip_recovers_coefficients():
    # fitting an evaluated series returns its coefficients to work precision
    rng = random.Random(7)
    for deg in (0, 1, 3, 7, 12):
        coeffs = [rng.uniform(-2, 2) * 0.5 ** r for r in range(deg + 1)]
        s = make_series(coeffs, ArgMap.DIRECT, 30)
        ctx = PrecisionContext(30, 20, 2 * deg + 2)
        refit = fit(lambda x: clenshaw_eval(s, x), 2 * deg + 2, deg + 1, ctx)
        for a, b in zip(s.coeffs, refit.coeffs):
            assert abs(a - b) < mp.mpf(10) ** -26


# ---------------------------------------------------------------------------
# clenshaw evaluation


def test_clenshaw_constant_series():
    s = make_series([2], ArgMap.DIRECT, 30)
    for x in (0, 0.25, 1):
        assert clenshaw_eval(s, x) == 1


def test_clenshaw_t1_at_0p3():
    s = make_series([0, 1], ArgMap.DIRECT, 30)
    assert abs(clenshaw_eval(s, mp.mpf("0.3")) - mp.mpf("-0.4")) < mp.mpf(10) ** -29


def test_clenshaw_rejects_outside_unit_interval():
    s = make_series([1, 1], ArgMap.DIRECT, 30)
    for x in (-0.01, 1.01):
        with pytest.raises(DomainError):
            clenshaw_eval(s, x)


def test_clenshaw_matches_horner_oracle():
    # power-basis Horner at high precision is the independent route
    rng = random.Random(123)
    for trial in range(10):
        deg = rng.randint(1, 20)
        s = make_series([rng.uniform(-1, 1) for _ in range(deg + 1)],
                        ArgMap.DIRECT, 16)
        power = to_power_basis(s)
        with mp.workdps(60):
            for _ in range(100):
                x = mp.mpf(rng.random())
                ref = horner(power, x)
                got = clenshaw_eval(s, x)
                assert abs(got - ref) <= mp.mpf("1e-13") * (1 + abs(ref))


def test_basis_bound_unit_series():
    # |T*_r(x)| <= 1 on [0,1] for every r <= 50
    with mp.workdps(16):
        xs = [mp.mpf(k) / 999 for k in range(1000)]
    for r in range(51):
        s = make_series([0] * r + [1], ArgMap.DIRECT, 16)
        for x in xs:
            assert abs(clenshaw_eval(s, x)) <= 1 + mp.mpf("1e-12")


# ---------------------------------------------------------------------------
# differentiation


def test_differentiate_t1():
    s = make_series([0, 1], ArgMap.DIRECT, 30)
    d = differentiate(s)
    assert d.coeffs == (mp.mpf(4),)  # value 2 under the half-a0 convention


def test_differentiate_t2():
    s = make_series([0, 0, 1], ArgMap.DIRECT, 30)
    d = differentiate(s)
    assert d.coeffs == (mp.mpf(0), mp.mpf(8))  # 16x - 8


def test_differentiate_constant_is_zero_series():
    d = differentiate(make_series([5], ArgMap.DIRECT, 30))
    assert d.coeffs == (mp.mpf(0),)


def test_differentiate_rejects_inverse_arg():
    s = make_series([1, 1], ArgMap.INVERSE_Z, 30)
    with pytest.raises(ValueError):
        differentiate(s)


def test_differentiate_matches_finite_differences():
    rng = random.Random(5)
    s = make_series([rng.uniform(-1, 1) * 0.7 ** r for r in range(11)],
                    ArgMap.DIRECT, 30)
    d = differentiate(s)
    with mp.workdps(35):
        h = mp.mpf("1e-10")
        for _ in range(50):
            x = mp.mpf(rng.uniform(0.02, 0.98))
            fd = (clenshaw_eval(s, x + h) - clenshaw_eval(s, x - h)) / (2 * h)
            exact = clenshaw_eval(d, x)
            assert abs(fd - exact) <= mp.mpf("1e-6") * max(1, abs(exact))


def test_differentiate_is_linear_in_exact_arithmetic():
    s1 = make_series([3, -2, 5, 7], ArgMap.DIRECT, 30)
    s2 = make_series([1, 4, -6, 2], ArgMap.DIRECT, 30)
    combo = add(scale(s1, 3), scale(s2, -2))
    lhs = differentiate(combo)
    rhs = add(scale(differentiate(s1), 3), scale(differentiate(s2), -2))
    assert lhs.coeffs == rhs.coeffs


def test_differentiate_inverse_arg_of_one_over_z():
    # f = 1/z is the series x = T*_0/2 + T*_1/2; d/dz gives -1/z^2,
    # whose expansion is -(3/8 T*_0 + 1/2 T*_1 + 1/8 T*_2)
    s = make_series([1, mp.mpf(1) / 2], ArgMap.INVERSE_Z, 30)
    d = differentiate_inverse_arg(s)
    assert d.coeffs[:3] == (mp.mpf("-0.75"), mp.mpf("-0.5"), mp.mpf("-0.125"))
    assert all(c == 0 for c in d.coeffs[3:])


def test_differentiate_inverse_arg_constant_is_zero():
    s = make_series([6, 0], ArgMap.INVERSE_Z, 30)
    d = differentiate_inverse_arg(s)
    assert all(c == 0 for c in d.coeffs)


def test_differentiate_inverse_arg_rejects_direct():
    with pytest.raises(ValueError):
        differentiate_inverse_arg(make_series([1, 1], ArgMap.DIRECT, 30))


# ---------------------------------------------------------------------------
# multiplication


def test_multiply_t1_squared():
    t1 = make_series([0, 1], ArgMap.DIRECT, 30)
    p = multiply(t1, t1)
    assert p.coeffs == (mp.mpf(1), mp.mpf(0), mp.mpf(1) / 2)


def test_multiply_by_constant_one_is_identity():
    s = make_series([0.5, -1.25, 2, 0.75], ArgMap.DIRECT, 30)
    one = make_series([2], ArgMap.DIRECT, 30)
    p = multiply(s, one)
    assert p.coeffs == s.coeffs


def test_multiply_rejects_mismatched_arg_maps():
    a = make_series([1], ArgMap.DIRECT, 30)
    b = make_series([1], ArgMap.INVERSE_Z, 30)
    with pytest.raises(ValueError):
        multiply(a, b)


def test_multiply_is_commutative():
    rng = random.Random(9)
    a = make_series([rng.uniform(-1, 1) for _ in range(5)], ArgMap.DIRECT, 30)
    b = make_series([rng.uniform(-1, 1) for _ in range(7)], ArgMap.DIRECT, 30)
    # accumulation order differs, so agreement is to rounding, not bitwise
    for x, y in zip(multiply(a, b).coeffs, multiply(b, a).coeffs):
        assert abs(x - y) < mp.mpf(10) ** -28


def test_multiply_evaluation_homomorphism():
    rng = random.Random(11)
    a = make_series([rng.uniform(-1, 1) for _ in range(7)], ArgMap.DIRECT, 30)
    b = make_series([rng.uniform(-1, 1) for _ in range(7)], ArgMap.DIRECT, 30)
    p = multiply(a, b)
    assert len(p.coeffs) == len(a.coeffs) + len(b.coeffs) - 1
    for _ in range(50):
        x = mp.mpf(rng.random())
        pointwise = clenshaw_eval(a, x) * clenshaw_eval(b, x)
        together = clenshaw_eval(p, x)
        assert abs(together - pointwise) <= mp.mpf("1e-13") * (1 + abs(pointwise))


# ---------------------------------------------------------------------------
# power basis


def test_power_basis_t2():
    s = make_series([0, 0, 1], ArgMap.DIRECT, 30)
    assert to_power_basis(s) == [1, -8, 8]


def test_power_basis_t3():
    s = make_series([0, 0, 0, 1], ArgMap.DIRECT, 30)
    assert to_power_basis(s) == [-1, 18, -48, 32]


def test_power_basis_inverts_fit():
    # evaluate the power form of a fitted polynomial against the original
    def f(x):
        return 1 + x * (2 + x * (-3 + 4 * x))

    s = fit(f, 16, 6, CTX30)
    power = to_power_basis(s)
    with mp.workdps(30):
        for x in (mp.mpf("0.1"), mp.mpf("0.55"), mp.mpf(1)):
            assert abs(horner(power, x) - f(x)) < mp.mpf(10) ** -25


# ---------------------------------------------------------------------------
# truncation


def test_truncate_drops_negligible_tail():
    s = make_series([2, 1, "1e-20"], ArgMap.DIRECT, 30)
    t = truncate(s, mp.mpf("1e-15"))
    assert t.coeffs == s.coeffs[:2]


def test_truncate_keeps_everything_when_tail_is_large():
    s = make_series([2, 1, 0.5], ArgMap.DIRECT, 30)
    assert truncate(s, mp.mpf("1e-15")) is s


def test_truncate_tie_keeps_coefficient():
    tol = mp.mpf("1e-15")
    s = make_series([1, tol], ArgMap.DIRECT, 30)
    assert truncate(s, tol) is s


def test_truncate_guarantees_sup_norm_change():
    rng = random.Random(3)
    s = make_series([rng.uniform(-1, 1) * mp.mpf(10) ** -(2 * r)
                     for r in range(10)], ArgMap.DIRECT, 30)
    tol = mp.mpf("1e-8")
    t = truncate(s, tol)
    assert tail_sum(s, len(t.coeffs)) < tol
    for _ in range(25):
        x = mp.mpf(rng.random())
        assert abs(clenshaw_eval(s, x) - clenshaw_eval(t, x)) <= tol


def test_truncate_never_empties_series():
    s = make_series(["1e-40"], ArgMap.DIRECT, 30)
    assert truncate(s, mp.mpf("1e-10")).coeffs == s.coeffs


def test_truncate_rejects_nonpositive_tol():
    s = make_series([1], ArgMap.DIRECT, 30)
    with pytest.raises(ValueError):
        truncate(s, 0)


# ---------------------------------------------------------------------------
# types


def test_series_requires_finite_nonempty_coeffs():
    with pytest.raises(ValueError):
        ChebSeries((), ArgMap.DIRECT, 30)
    with pytest.raises(ValueError):
        make_series([mp.inf], ArgMap.DIRECT, 30)


def test_precision_context_guard_digits():
    with pytest.raises(ValueError):
        PrecisionContext(work_digits=20, target_digits=15, node_count_m=8)
    with pytest.raises(ValueError):
        PrecisionContext(work_digits=30, target_digits=20, node_count_m=0)


def test_truncation_error_bounded_by_tail_sum():
    # dropping coefficients beyond index k changes values by at most the
    # dropped |a_r| sum, since |T*_r| <= 1
    rng = random.Random(17)
    s = make_series([rng.uniform(-1, 1) * 0.3 ** r for r in range(12)],
                    ArgMap.DIRECT, 30)
    k = 6
    short = ChebSeries(s.coeffs[:k], s.arg_map, s.precision_digits)
    bound = tail_sum(s, k)
    for _ in range(40):
        x = mp.mpf(rng.random())
        assert abs(clenshaw_eval(s, x) - clenshaw_eval(short, x)) <= bound
