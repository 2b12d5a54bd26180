"""Energy, gradient, Hessian, and the symmetric equilibrium."""

import math

import numpy as np
import pytest

from equivibe import (
    Configuration,
    DomainError,
    PotentialParams,
    find_equilibrium,
    gradient,
    hessian,
    potential_energy,
)
from equivibe.model import phi, phi_prime, symmetric_configuration


def random_config(n, rng, spread=0.3):
    base = symmetric_configuration(1.5, n).u
    return Configuration(base + spread * (rng.standard_normal(n) + 1j * rng.standard_normal(n)))


def fd_gradient(u, p, h=1e-6):
    x = u.real_view()
    out = np.empty_like(x)
    for i in range(x.size):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        out[i] = (
            potential_energy(Configuration.from_real(xp), p)
            - potential_energy(Configuration.from_real(xm), p)
        ) / (2 * h)
    return out


def fd_hessian(u, p, h=1e-6):
    x = u.real_view()
    out = np.empty((x.size, x.size))
    for i in range(x.size):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        out[i] = (
            gradient(Configuration.from_real(xp), p)
            - gradient(Configuration.from_real(xm), p)
        ) / (2 * h)
    return 0.5 * (out + out.T)


def test_params_validation():
    with pytest.raises(DomainError):
        PotentialParams(n=2)
    with pytest.raises(DomainError):
        PotentialParams(n=6, B=-1.0)


def test_coincident_points_rejected():
    p = PotentialParams(n=3, A=0.1, B=1.0, sigma=0.1)
    u = Configuration([1.0, 1.0 + 1e-15j, -1.0])
    with pytest.raises(DomainError):
        potential_energy(u, p)


def test_gradient_matches_finite_differences(rng):
    for n in (3, 4, 6, 7):
        p = PotentialParams(n=n, A=0.2, B=50.0, sigma=0.1)
        u = random_config(n, rng)
        g = gradient(u, p)
        ref = fd_gradient(u, p)
        assert np.linalg.norm(g - ref) <= 1e-6 * max(1.0, np.linalg.norm(ref))


def test_hessian_matches_finite_differences(rng):
    for n in (3, 5, 6):
        p = PotentialParams(n=n, A=0.2, B=50.0, sigma=0.1)
        u = random_config(n, rng)
        H = hessian(u, p)
        ref = fd_hessian(u, p)
        assert np.allclose(H, H.T)
        assert np.linalg.norm(H - ref) <= 1e-5 * max(1.0, np.linalg.norm(ref))


def test_phi_matches_energy_on_symmetric_ring():
    p = PotentialParams(n=6, A=0.2, B=350.0, sigma=0.25)
    for r in (1.2, 1.8, 2.5):
        u = symmetric_configuration(r, 6)
        assert phi(r, p) == pytest.approx(potential_energy(u, p), rel=1e-12)


def test_phi_prime_matches_finite_differences():
    p = PotentialParams(n=6, A=0.2, B=350.0, sigma=0.25)
    h = 1e-7
    for r in (1.3, 1.9, 2.4):
        fd = (phi(r + h, p) - phi(r - h, p)) / (2 * h)
        assert phi_prime(r, p) == pytest.approx(fd, rel=1e-6)


def test_equilibrium_is_critical_and_minimal(params6, eq6):
    assert abs(phi_prime(eq6.r0, params6)) <= 1e-10
    g = gradient(eq6.u0, params6)
    assert np.linalg.norm(g) <= 1e-9
    for d in (1e-3, 1e-2):
        assert phi(eq6.r0 + d, params6) > eq6.phi_min
        assert phi(eq6.r0 - d, params6) > eq6.phi_min


def test_equilibrium_without_pair_interaction_is_closed_form():
    for n in (3, 4, 6, 9):
        p = PotentialParams(n=n)
        eq = find_equilibrium(p)
        assert eq.r0 == pytest.approx(1.0 / (2.0 * math.sin(math.pi / n)), rel=1e-14)
    # n=6: unit bond length means unit radius
    assert find_equilibrium(PotentialParams(n=6)).r0 == pytest.approx(1.0)


def test_equilibrium_scales_with_repulsion():
    weak = find_equilibrium(PotentialParams(n=6, A=0.0, B=10.0, sigma=0.0))
    strong = find_equilibrium(PotentialParams(n=6, A=0.0, B=1000.0, sigma=0.0))
    assert strong.r0 > weak.r0 > 1.0


def test_energy_translation_and_rotation_invariance(rng):
    p = PotentialParams(n=5, A=0.2, B=50.0, sigma=0.1)
    u = random_config(5, rng)
    e0 = potential_energy(u, p)
    shifted = Configuration(u.u + (0.7 - 0.3j))
    rotated = Configuration(np.exp(0.4j) * u.u)
    assert potential_energy(shifted, p) == pytest.approx(e0, rel=1e-12)
    assert potential_energy(rotated, p) == pytest.approx(e0, rel=1e-12)
