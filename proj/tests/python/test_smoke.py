import cmath
import math
import sys
import tempfile

import lowzero as lz


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b)


def test_arithmetic():
    assert lz.sieve(100, 1) == [5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97]
    assert lz.legendre(2, 7) == 1 and lz.legendre(3, 7) == -1
    close(lz.li(1e6), 78626.5039956821, 1e-6)  # offset integral from 2


def test_L_values():
    close(lz.central_value(5), 0.2317509475040157558833837, 1e-12)
    # L(1, (./5)) = 2 log(golden ratio) / sqrt 5
    close(abs(lz.L(5, 1.0) - 2 * math.log((1 + math.sqrt(5)) / 2) / math.sqrt(5)), 0, 1e-12)
    z = lz.zeros(5, 8.0)
    assert z.certified and len(z.gammas) == 1
    close(z.gammas[0], 6.6484533447277, 1e-9)
    close(lz.hardy_Z(5, z.gammas[0]), 0, 1e-9)


def test_kernel_and_test_functions():
    close(lz.kernel("gauss", 0.5).real, 1.0, 1e-15)
    close(lz.kernel("gauss", 0.5 + 2j).real, math.exp(-4), 1e-15)
    close(lz.rhat("fejer", 0.5, 0.25), 1.0, 1e-15)
    close(lz.limit_density("fejer", 1.0), 0.5, 1e-8)


def test_ratios_and_errors():
    close(lz.ratios_main_terms(0.1, 0.2, 1000, 1).real, 81.091264686557826346, 1e-8)
    close(lz.log_deriv_prediction(0.1, 1000, 1, exploratory=True), -10.810918266740186596, 1e-8)
    try:
        lz.log_deriv_prediction(0.1, 1000, 1)
    except lz.DomainError:
        pass
    else:
        raise AssertionError("r below 1/log X must raise unless exploratory")
    try:
        lz.ratios_main_terms(0.2, 0.2, 1000, 1)
    except lz.PoleError:
        pass
    else:
        raise AssertionError("alpha == beta must raise")
    try:
        lz.sieve(100, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("v = 2 must raise")


def test_family_roundtrip():
    with tempfile.TemporaryDirectory() as d:
        try:
            lz.ZeroFamily.from_cache(d, 300, 1)
        except FileNotFoundError:
            pass
        else:
            raise AssertionError("empty cache must raise")
        hits, computed, failed = lz.populate_cache(d, 300, 1)
        assert hits == 0 and computed == len(lz.sieve(300, 1)) and failed == []
        fam = lz.ZeroFamily.from_cache(d, 300, 1)
        assert fam.x_star == computed and all(0 < g <= 8 for g in fam.gammas)
        assert lz.populate_cache(d, 300, 1)[:2] == (computed, 0)
        F0 = lz.form_factor(fam, 0.0)
        assert math.isfinite(F0) and F0 > 0
        assert math.isfinite(lz.density_empirical(fam, "fejer", 0.9))


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print("ok -", name)
