import random

import pytest

from hlcluster.heights import (
    HeightFunction,
    all_height_functions,
    build_from_hlr,
    bullet,
    d_flag,
    derived,
    diamond,
    hat,
    omega,
    p_step,
    q_step,
    step,
    t_profile,
    validate_staircase,
)
from hlcluster.ymon import ONE, lift_r, yvar

XI6 = HeightFunction((-3, -2, -3, -4, -5, -4))


def test_height_function_validation():
    with pytest.raises(ValueError):
        HeightFunction((0, 2))
    with pytest.raises(ValueError):
        HeightFunction(())
    HeightFunction((5,))


def test_extension():
    assert XI6(0) == XI6(2) == -2
    assert XI6(7) == XI6(5) == -5
    with pytest.raises(ValueError):
        XI6(8)


def test_parse_and_json():
    assert HeightFunction.parse("-3,-2,-3,-4,-5,-4") == XI6
    assert HeightFunction.from_json(XI6.to_json()) == XI6


def test_derived_examples():
    assert derived(XI6, 1) == (1, 0, 1)
    assert derived(XI6, 2) == (4, 1, 0)
    assert derived(XI6, 6)[0] == 6 and derived(XI6, 6)[2] == 1
    # conventions at the right edge
    assert diamond(XI6, 5) == 5
    # witnesses of this xi: x = 1 and x = 4
    assert [diamond(XI6, j) for j in range(1, 7)] == [1, 4, 4, 4, 5, 6]
    assert [bullet(XI6, j) for j in range(1, 7)] == [0, 1, 1, 1, 4, 5]


def test_derived_consistency():
    for xi in all_height_functions(6):
        for j in range(1, 7):
            dj, jb, d = derived(xi, j)
            assert d == (1 if dj == j else 0) == d_flag(xi, j)
            assert derived(xi, j) == derived(xi, j)
            if jb:
                assert diamond(xi, jb) == jb


def test_hat():
    # first special case: bullet(j) = j-1 = i1
    xi = HeightFunction((-1, 0, -1, 0))  # witnesses at 1 and 2
    assert bullet(xi, 2) == 1
    assert hat(xi, 2, 1) == 1
    # max-scan case; the inner witness below j = 5 sits at x = 2
    assert hat(XI6, 5, 1) == 2
    # second special case: bullet(j) = bullet(i1)
    xi2 = HeightFunction((0, 1, 2, 3, 2))
    assert bullet(xi2, 3) == bullet(xi2, 2) == 0
    assert hat(xi2, 3, 2) == 2
    # no special case and no extremum in [i1, j-1]
    assert bullet(xi2, 4) == 3 and bullet(xi2, 2) == 0
    with pytest.raises(ValueError):
        hat(xi2, 4, 2)


def test_omega_examples():
    got = omega(XI6, 1, 3)
    assert got == yvar(1, -4) * yvar(2, -1) * yvar(3, -4)
    # strictly monotone interior: only the two endpoints appear
    xi = HeightFunction((0, 1, 2, 3, 2))
    assert omega(xi, 1, 3) == yvar(1, -1) * yvar(3, 3)
    with pytest.raises(ValueError):
        omega(XI6, 3, 3)


def hl_conditions_hold(m):
    fs = sorted(m.exponents.items())
    if any(c != 1 for _, c in fs):
        return False
    idx = [i for (i, _), _ in fs]
    as_ = [s for (_, s), _ in fs]
    if idx != sorted(set(idx)):
        return False
    try:
        validate_staircase(idx, as_)
    except ValueError:
        return False
    return True


def test_omega_always_staircase():
    for n in range(2, 8):
        for xi in all_height_functions(n):
            for i in range(1, n):
                for j in range(i + 1, n + 1):
                    assert hl_conditions_hold(omega(xi, i, j)), (xi, i, j)


def test_omega_factorization_lemmas():
    # first form: diamond(i) < j-1 and j-1 not a witness-node
    for n in range(2, 8):
        for xi in all_height_functions(n):
            for i in range(1, n):
                for j in range(i + 1, n + 1):
                    if diamond(xi, i) < j - 1 and diamond(xi, j - 1) != j - 1:
                        jb = bullet(xi, j)
                        assert omega(xi, i, j) == omega(xi, i, jb + 1) * yvar(j, xi(j + 1)), (
                            xi,
                            i,
                            j,
                        )
                    if diamond(xi, i) < j - 1 and diamond(xi, j - 1) == j - 1:
                        jb1 = bullet(xi, j - 1)
                        a = xi(j) + 1 if xi(j - 1) + 1 == xi(j) else xi(j) - 1
                        assert omega(xi, i, j) == omega(xi, i, jb1 + 1) * yvar(j, a), (xi, i, j)


def test_t_profile():
    prof = t_profile((1, 3), (2, 1))
    assert [prof(p) for p in (1, 2, 3)] == [2, 3, 3]
    prof = t_profile((2, 4, 6), (0, 0, 0))
    assert all(prof(p) == 0 for p in range(2, 7))
    prof = t_profile((1, 2), (0, -1))
    assert prof(1) == 0 and prof(2) == -1
    with pytest.raises(ValueError):
        t_profile((3, 1), (0, 0))
    with pytest.raises(KeyError):
        t_profile((2, 4), (0, 0))(1)


def test_step_functions():
    assert p_step(0, 3) == 1
    assert q_step(0, 3) == 0
    assert p_step(2, 2) == 1
    assert q_step(2, 2) == 1
    assert step("p", 1, 0) == 0
    assert step("q", 1, 0) == 1
    with pytest.raises(ValueError):
        step("r", 0, 0)


def test_build_from_hlr_k1():
    xi, n = build_from_hlr((1,), (-4,))
    assert n == 3
    assert xi.values == (-3, -2, -3)


def test_build_from_hlr_k2():
    xi, n = build_from_hlr((1, 3), (-4, 0))
    assert n == 5
    assert xi.values[0] < xi.values[1] < xi.values[2] > xi.values[3] < xi.values[4]
    assert xi.values == (-3, -2, -1, -2, -1)


def random_staircase(rng, kmax=4, amax=8):
    k = rng.randint(1, kmax)
    idx = sorted(rng.sample(range(1, 9), k))
    a0 = rng.randint(-amax, amax)
    as_ = [a0]
    sign = rng.choice([1, -1])
    for m in range(1, k):
        as_.append(as_[-1] + sign * (idx[m] - idx[m - 1] + 2))
        sign = -sign
    return tuple(idx), tuple(as_)


def test_build_from_hlr_realizes_omega():
    # omega over the constructed height function reproduces the staircase
    rng = random.Random(11)
    for _ in range(200):
        idx, as_ = random_staircase(rng)
        xi, n = build_from_hlr(idx, as_)
        assert n == idx[-1] + 2
        target = ONE
        for i, a in zip(idx, as_):
            target = target * yvar(i, a)
        if len(idx) == 1:
            i = idx[0]
            assert diamond(xi, i) == i
            a = xi(i) + 1 if xi(i) == xi(i + 1) + 1 else xi(i) - 1
            assert yvar(i, a) == target
        else:
            assert omega(xi, idx[0], idx[-1]) == target
            assert diamond(xi, idx[0]) == idx[-1] - 1 or len(idx) > 2
            assert diamond(xi, idx[-1]) == idx[-1]
        # lift round-trip at r = 2
        assert lift_r(target, 2) == lift_r(target, 2)


def test_validate_staircase_rejects():
    with pytest.raises(ValueError):
        validate_staircase((1, 2, 3), (-7, -4, -1))  # differences fail to alternate
    with pytest.raises(ValueError):
        validate_staircase((1, 3), (0, 1))  # gap mismatch
    with pytest.raises(ValueError):
        validate_staircase((2, 1), (0, 3))
