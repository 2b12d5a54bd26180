"""Symplectic integration, periodic-orbit shooting, and symmetry deviation."""

import math

import numpy as np
import pytest

from equivibe import (
    DomainError,
    PotentialParams,
    critical_set,
    find_periodic_orbit,
    integrate,
    symmetry_deviation,
)
from equivibe.dynamics import _as_real, _mode_seed
from equivibe.symmetry.classes import class_at


def pick(cs, j, l, sign=""):
    return next(c for c in cs if (c.j, c.l, c.sign) == (j, l, sign))


def test_input_validation(eq6, params6):
    x0 = _as_real(eq6.u0, params6.n)
    v0 = np.zeros_like(x0)
    with pytest.raises(DomainError):
        integrate(x0, v0, -1.0, 1.0, 1e-3, params6)
    with pytest.raises(DomainError):
        integrate(x0, v0, 1.0, 1.0, -1e-3, params6)
    with pytest.raises(DomainError):
        integrate(x0[:-2], v0, 1.0, 1.0, 1e-3, params6)


def test_complex_state_accepted(eq6, params6):
    t1 = integrate(eq6.u0.u, np.zeros(6, dtype=complex), 1.0, 0.1, 1e-3, params6)
    t2 = integrate(eq6.u0, np.zeros(12), 1.0, 0.1, 1e-3, params6)
    assert np.allclose(t1.positions, t2.positions)


def test_equilibrium_is_stationary(eq6, params6):
    x0 = _as_real(eq6.u0, params6.n)
    traj = integrate(x0, np.zeros_like(x0), 0.3, 2.0, 1e-3, params6)
    assert np.max(np.abs(traj.positions - x0)) <= 1e-10
    assert np.max(np.abs(traj.velocities)) <= 1e-10


def test_energy_conservation(eq6, params6, rng):
    x0 = _as_real(eq6.u0, params6.n)
    x0 = x0 + 0.02 * eq6.r0 * rng.standard_normal(x0.size)
    traj = integrate(x0, np.zeros_like(x0), 0.3, 20 * math.pi, 1e-3, params6,
                     record_every=10)
    assert traj.energy_drift() <= 1e-7


def test_time_reversal(eq6, params6, rng):
    x0 = _as_real(eq6.u0, params6.n) + 0.02 * rng.standard_normal(12)
    fwd = integrate(x0, np.zeros(12), 0.3, 1.0, 1e-3, params6)
    back = integrate(fwd.positions[-1], -fwd.velocities[-1], 0.3, 1.0, 1e-3, params6)
    assert np.linalg.norm(back.positions[-1] - x0) <= 1e-9


def test_linearized_frequency(eq6, params6, report6):
    # a tiny perturbation along a slice eigenvector at lambda = 1/sqrt(mu)
    # returns to its start after one 2 pi period
    cs = critical_set(report6, 1)
    c = pick(cs, 1, 1)
    seed = _mode_seed(eq6, report6, c)
    x_eq = _as_real(eq6.u0, params6.n)
    eps = 1e-4
    x0 = x_eq + eps * seed
    traj = integrate(x0, np.zeros_like(x0), c.lam, 2 * math.pi, 2 * math.pi / 4000,
                     params6)
    assert np.linalg.norm(traj.positions[-1] - x0) <= 1e-6


def test_record_every_strides(eq6, params6):
    x0 = _as_real(eq6.u0, params6.n)
    traj = integrate(x0, np.zeros_like(x0), 0.3, 1.0, 1e-3, params6, record_every=10)
    assert traj.n_samples == 101
    assert traj.times[1] == pytest.approx(1e-2)


def test_shooting_converges_on_stiffest_mode(eq6, params6, report6):
    cs = critical_set(report6, 1)
    c = pick(cs, 1, 1)
    orbit = find_periodic_orbit(c, 0.05, params6, eq=eq6, report=report6)
    assert orbit.converged
    assert orbit.residual <= 1e-8
    # lambda moves only slightly off the linear prediction at this amplitude
    assert orbit.lam == pytest.approx(c.lam, rel=0.02)
    assert orbit.trajectory.energy_drift() <= 1e-8


def test_shooting_lambda_tends_to_crossing(eq6, params6, report6):
    cs = critical_set(report6, 1)
    c = pick(cs, 1, 1)
    small = find_periodic_orbit(c, 1e-3, params6, eq=eq6, report=report6)
    assert small.converged
    assert small.lam == pytest.approx(c.lam, rel=1e-2)


def test_shooting_input_validation(eq6, params6, report6):
    cs = critical_set(report6, 1)
    with pytest.raises(DomainError):
        find_periodic_orbit(pick(cs, 1, 1), -0.1, params6, eq=eq6, report=report6)


def test_symmetry_deviation_of_alternating_mode(eq6, params6, report6):
    # the (3,1) vibration alternates neighbouring particles in antiphase;
    # its predicted symmetry class is family 69 at temporal mode 1
    cs = critical_set(report6, 1)
    c = pick(cs, 3, 1, "+")
    orbit = find_periodic_orbit(c, 0.05, params6, eq=eq6, report=report6)
    assert orbit.converged
    cls = class_at(6, 69, 1)
    assert symmetry_deviation(orbit.trajectory, cls) <= 1e-5


def test_symmetry_deviation_detects_mismatch(eq6, params6, report6):
    # the (1,1) orbit does not have the alternating symmetry
    cs = critical_set(report6, 1)
    c = pick(cs, 1, 1)
    orbit = find_periodic_orbit(c, 0.05, params6, eq=eq6, report=report6)
    cls = class_at(6, 69, 1)
    assert symmetry_deviation(orbit.trajectory, cls) > 1e-3
