"""Shared fixtures: expensive immutable objects built once per session."""

from __future__ import annotations

import pytest

from zeropack import (
    RngStream,
    SphereQuadrature,
    make_context,
    make_disk_quadrature,
    make_triangular_profile,
)


@pytest.fixture(scope="session")
def profile():
    """Normalized equilateral-lattice profile (weight scale 1)."""
    return make_triangular_profile()


@pytest.fixture(scope="session")
def square_ctx():
    """Square-lattice evaluation context with half-period 0.8."""
    return make_context(0.8, 0.8j)


@pytest.fixture(scope="session")
def sphere_quad():
    """Default anchored-frame sphere quadrature (256 x 512)."""
    return SphereQuadrature()


@pytest.fixture(scope="session")
def world_quad():
    """Small world-frame quadrature for finite-difference gradient checks."""
    return SphereQuadrature(n_polar=128, n_azimuthal=128, frame="world")


@pytest.fixture(scope="session")
def disk_quad_half():
    return make_disk_quadrature(0.5)


@pytest.fixture(scope="session")
def disk_quad_09():
    return make_disk_quadrature(0.9)


def random_complex_coeffs(seed: int, count: int, scale: float = 1.0) -> tuple:
    """Deterministic complex coefficients for candidate polynomials."""
    g = RngStream(seed=seed).generator()
    parts = g.normal(scale=scale, size=(2, count))
    return tuple(complex(a, b) for a, b in zip(parts[0], parts[1]))


@pytest.fixture
def coeff_factory():
    return random_complex_coeffs


@pytest.fixture(autouse=True)
def _no_thread_env(monkeypatch):
    """Keep ZEROPACK_THREADS out of tests unless one sets it explicitly."""
    monkeypatch.delenv("ZEROPACK_THREADS", raising=False)


def assert_close(actual: float, expected: float, tol: float, label: str = ""):
    """Absolute-tolerance comparison with a diagnostic message."""
    err = abs(actual - expected)
    assert err <= tol, (
        f"{label or 'value'}: got {actual!r}, expected {expected!r} "
        f"(|diff| = {err:.3e} > {tol:.1e})"
    )


@pytest.fixture
def close():
    return assert_close
