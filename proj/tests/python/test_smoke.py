import cmath
import math

import pytest

import siegel_toeplitz as st


def test_group_law_and_inverse():
    w, t = st.hn_mul([1 + 2j], 0.5, [-0.5j], 1.0)
    # 2 Im((1+2i) * conj(-0.5i)) = 2 Im(-1 + 0.5i) = 1
    assert w[0] == pytest.approx(1 + 1.5j)
    assert t == pytest.approx(2.5)
    wi, ti = st.hn_inv([1 + 2j], 0.5)
    w2, t2 = st.hn_mul([1 + 2j], 0.5, wi, ti)
    assert abs(w2[0]) < 1e-15 and abs(t2) < 1e-15


def test_action_preserves_height():
    z = st.SiegelPoint([0.3 - 0.2j], 0.1 + 2.0j)
    hz = st.act([0.7 + 0.4j], -1.2, z)
    assert st.height(hz) == pytest.approx(st.height(z), rel=1e-14)


def test_moment_map_examples():
    w, t = st.moment_map(st.SiegelPoint([0j], 1j), "center")
    assert t == pytest.approx(-0.5)
    w, t = st.moment_map(st.SiegelPoint([1 + 0j], 2j))
    assert w[0] == pytest.approx(-2j)
    assert t == pytest.approx(-0.5)
    z = st.SiegelPoint([0.4 + 0.1j, -0.3j], 0.2 + 1.5j)
    for sub in ("full", "center", "hr", "hir", "hlr:1", "hlir:1"):
        a = st.moment_map(z, sub)
        b = st.moment_map_projected(z, sub)
        assert max(abs(x - y) for x, y in zip(a[0], b[0])) < 1e-14
        assert abs(a[1] - b[1]) < 1e-14


def test_exterior_point_rejected():
    with pytest.raises(st.DomainError):
        st.SiegelPoint([0j], -1j)


def test_coordinates_round_trip():
    w, t, r = st.tau(st.SiegelPoint([0j], 2 + 3j))
    assert (w[0], t, r) == (0, 2.0, pytest.approx(1 / 3))
    z = st.SiegelPoint([0.5 - 0.25j], -0.7 + 1.9j)
    back = st.kappa(*st.tau(z))
    assert abs(back.z_last - z.z_last) < 1e-14
    assert abs(back.z_prime[0] - z.z_prime[0]) < 1e-14


def test_gamma_examples():
    v, err, mode = st.gamma("exp:2", 0.0, 1.0)
    assert v == pytest.approx(0.5, abs=1e-15)
    v, _, _ = st.gamma("ind:0,1", 0.0, 1.0)
    assert v.real == pytest.approx(1 - math.exp(-2), abs=1e-12)
    for lam in (-0.5, 0.0, 2.0):
        for x in st.log_grid(1e-3, 1e3, 50):
            v, _, _ = st.gamma("const:1", lam, x, mode="quadrature")
            assert abs(v - 1) < 1e-10


def test_gamma_quadrature_matches_osclog():
    lam, omega, xi = 0.7, 5.0, 0.3
    v, _, mode = st.gamma(f"osclog:{omega}", lam, xi, mode="quadrature")
    assert mode == "quadrature"
    # (2 xi)^{-i omega} Gamma(lam+1+i omega) / Gamma(lam+1)
    mpmath = pytest.importorskip("mpmath")
    ref = complex((2 * xi) ** (-1j * omega) * mpmath.gamma(lam + 1 + 1j * omega) / mpmath.gamma(lam + 1))
    assert abs(v - ref) < 1e-9 * abs(ref)


def test_gamma_hat_agrees_in_two_dimensions():
    g = st.gamma("exp:2", 0.0, 1.0)[0]
    assert abs(st.gamma_hat("exp:2", 0.0, 1.0, [1.5, -2.0]) - g) < 1e-8
    assert abs(st.gamma_hat("exp:2", 0.0, 1.0, [0.0]) - g) < 1e-8


def test_bad_symbol_is_value_error():
    with pytest.raises(ValueError):
        st.gamma("bogus", 0.0, 1.0)


def test_light_verify_suite_passes():
    results = st.verify(n=1, lam=0.0, skip=["heavy", "fock"])
    assert results
    failed = [r for r in results if not r["pass"]]
    assert not failed, failed


def test_toeplitz_multiplier_small():
    pts = [st.SiegelPoint([0j], 1j), st.SiegelPoint([0j], 0.7 + 2j)]
    rep = st.toeplitz_multiplier("exp:2", 0.0, 1.0, pts, {"t_nodes": 1024, "r_nodes": 24, "wprime_nodes": 24})
    assert rep["max_rel_deviation"] < 1e-3
    assert rep["spread"] < 1e-3
