"""Time integration, periodic-orbit shooting, and spatio-temporal symmetry checks.

The normalized system u'' = -lambda^2 grad V(u) is integrated with velocity
Verlet (symplectic, second order).  Small-amplitude periodic orbits near a
critical frequency are found by Gauss-Newton shooting on the 2 pi return map
with lambda free, an amplitude constraint, and zero initial velocity as the
phase condition.  A solution's spatio-temporal symmetry class is checked by
comparing the trajectory with its transforms under the class representative,
where the dihedral factor acts on space and the O(2) factor on the time circle.
"""

from __future__ import annotations

import csv
import dataclasses
import math

import numpy as np

from ._kernels import HAS_NUMBA, _energy_numpy, integrate_kernel
from .errors import DomainError, SolverError
from .model import Configuration, Equilibrium, PotentialParams, find_equilibrium
from .spectrum import CriticalValue, SpectralReport, isotypical_blocks
from .symmetry.classes import SubgroupClass
from .symmetry.group import DihedralElement, GroupElement
from .symmetry.isotypic import isotypical_basis

_COLLISION_FACTOR = 1e-6


@dataclasses.dataclass(frozen=True)
class Trajectory:
    """Sampled solution of the normalized system."""

    times: np.ndarray
    positions: np.ndarray  # (m, 2n) interleaved reals
    velocities: np.ndarray  # (m, 2n)
    energies: np.ndarray  # (m,)
    lam: float
    params: PotentialParams
    collided: bool = False
    metadata: dict = dataclasses.field(default_factory=dict)

    @property
    def n_samples(self) -> int:
        return len(self.times)

    def energy_drift(self) -> float:
        e0 = self.energies[0]
        return float(np.max(np.abs(self.energies - e0)) / max(abs(e0), 1e-300))

    def position_at(self, t) -> np.ndarray:
        """Linear interpolation, treating the time grid as one period."""
        period = self.times[-1] - self.times[0]
        tau = (np.asarray(t) - self.times[0]) % period
        step = self.times[1] - self.times[0]
        i = np.minimum((tau // step).astype(int), len(self.times) - 2)
        w = (tau - i * step) / step
        return (1.0 - w)[..., None] * self.positions[i] + w[..., None] * self.positions[i + 1]

    def to_csv(self, path):
        n = self.params.n
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            header = ["t"]
            for k in range(n):
                header += [f"x_{k}", f"y_{k}"]
            header.append("E")
            writer.writerow(header)
            for i, t in enumerate(self.times):
                writer.writerow(
                    [f"{t:.12g}"]
                    + [f"{v:.12g}" for v in self.positions[i]]
                    + [f"{self.energies[i]:.12g}"]
                )


def integrate(
    u0,
    v0,
    lam: float,
    T: float,
    dt: float,
    p: PotentialParams,
    record_every: int = 1,
) -> Trajectory:
    """Velocity-Verlet integration of u'' = -lambda^2 grad V(u) on [0, T]."""
    if dt <= 0 or T <= 0:
        raise DomainError("need positive dt and T")
    if lam <= 0:
        raise DomainError("need a positive frequency parameter")
    x0 = _as_real(u0, p.n)
    v0 = _as_real(v0, p.n)
    steps = int(round(T / dt))
    u = x0[0::2] + 1j * x0[1::2]
    scale = float(np.mean(np.abs(u - np.mean(u))))
    min_dist = _COLLISION_FACTOR * max(scale, 1e-12)
    xs, vs, collided = integrate_kernel(
        x0.copy(),
        v0.copy(),
        float(lam),
        float(dt),
        steps,
        record_every,
        p.n,
        float(p.A),
        float(p.B),
        float(p.sigma),
        min_dist,
    )
    m = xs.shape[0]
    times = np.arange(m) * dt * record_every
    energies = np.array(
        [
            _energy_numpy(xs[i], vs[i], lam, p.n, p.A, p.B, p.sigma)
            for i in range(m)
        ]
    )
    return Trajectory(
        times=times,
        positions=xs,
        velocities=vs,
        energies=energies,
        lam=float(lam),
        params=p,
        collided=collided,
    )


def _as_real(u, n) -> np.ndarray:
    if isinstance(u, Configuration):
        arr = np.empty(2 * n)
        arr[0::2] = u.u.real
        arr[1::2] = u.u.imag
        return arr
    raw = np.asarray(u)
    if np.iscomplexobj(raw) and raw.shape == (n,):
        arr = np.empty(2 * n)
        arr[0::2] = raw.real
        arr[1::2] = raw.imag
        return arr
    arr = np.asarray(raw, dtype=float)
    if arr.shape != (2 * n,):
        raise DomainError(f"state must have {2 * n} interleaved reals")
    return arr.copy()


# ---------------------------------------------------------------------------
# periodic-orbit shooting

@dataclasses.dataclass(frozen=True)
class OrbitResult:
    trajectory: Trajectory
    lam: float
    residual: float
    converged: bool
    iterations: tuple  # (residual per Gauss-Newton step)


def _mode_seed(eq: Equilibrium, report: SpectralReport, crossing: CriticalValue):
    """Unit vector in the isotypical component of the crossing eigenvalue."""
    comps = isotypical_basis(report.n)
    for comp, blk in zip(comps, report.oracle_blocks):
        if comp.index != crossing.j:
            continue
        vals, vecs = np.linalg.eigh(blk)
        # pick the eigenvector whose eigenvalue matches the crossing
        i = int(np.argmin(np.abs(vals - crossing.mu)))
        return vecs[:, i] @ comp.basis
    raise DomainError(f"no isotypical component with index {crossing.j}")


def find_periodic_orbit(
    crossing: CriticalValue,
    eps: float,
    p: PotentialParams,
    eq: Equilibrium = None,
    report: SpectralReport = None,
    dt: float = None,
    max_iter: int = 40,
    tol: float = 1e-8,
) -> OrbitResult:
    """Gauss-Newton single shooting for a 2 pi periodic orbit near a crossing.

    Unknowns are the initial positions and lambda; initial velocity is held
    at zero (phase condition) and the amplitude is pinned at eps times the
    ring radius.  Returns the best orbit found with its periodicity residual.
    """
    if eps <= 0:
        raise DomainError("need a positive seed amplitude")
    if eq is None:
        eq = find_equilibrium(p)
    if report is None or not report.oracle_blocks:
        report = isotypical_blocks(eq, p)
    n = p.n
    x_eq = _as_real(eq.u0, n)
    seed = _mode_seed(eq, report, crossing)
    amp = eps * eq.r0
    if dt is None:
        dt = 2.0 * math.pi / 2000.0
    steps = int(round(2.0 * math.pi / dt))

    def residual_vector(x0, lam):
        xs, vs, collided = integrate_kernel(
            x0.copy(),
            np.zeros_like(x0),
            float(lam),
            float(dt),
            steps,
            steps,
            n,
            float(p.A),
            float(p.B),
            float(p.sigma),
            _COLLISION_FACTOR * eq.r0,
        )
        if collided:
            raise SolverError("collision during shooting", diagnostics={"lam": lam})
        F = np.concatenate([xs[-1] - x0, vs[-1]])
        # amplitude constraint keeps Newton off the trivial solution
        F = np.append(F, float(np.linalg.norm(x0 - x_eq)) - amp)
        return F

    x0 = x_eq + amp * seed
    lam = crossing.lam
    trace = []
    best = None
    for _ in range(max_iter):
        F = residual_vector(x0, lam)
        res = float(np.linalg.norm(F[:-1]))
        trace.append(res)
        if best is None or res < best[0]:
            best = (res, x0.copy(), lam)
        if res <= tol and abs(F[-1]) <= tol:
            break
        # finite-difference Jacobian in (x0, lam); small singular values
        # (conserved-quantity directions of the return map) are truncated
        h = 1e-6 * max(1.0, eq.r0)
        J = np.empty((F.size, x0.size + 1))
        for i in range(x0.size):
            xp = x0.copy()
            xp[i] += h
            J[:, i] = (residual_vector(xp, lam) - F) / h
        hl = 1e-6 * max(1.0, lam)
        J[:, -1] = (residual_vector(x0, lam + hl) - F) / hl
        step, *_ = np.linalg.lstsq(J, -F, rcond=1e-4)
        if not np.all(np.isfinite(step)):
            break
        choice = None
        for a in (1.0, 0.5, 0.25, 0.1):
            lam_t = float(lam + a * step[-1])
            if lam_t <= 0:
                continue
            Ft = residual_vector(x0 + a * step[:-1], lam_t)
            rt = float(np.linalg.norm(Ft[:-1])) + abs(float(Ft[-1]))
            if choice is None or rt < choice[0]:
                choice = (rt, a)
        if choice is None:
            break
        a = choice[1]
        x0 = x0 + a * step[:-1]
        lam = float(lam + a * step[-1])
    res, x0, lam = best
    converged = res <= tol
    fine_dt = dt / 4.0
    traj = integrate(x0, np.zeros_like(x0), lam, 2.0 * math.pi, fine_dt, p,
                     record_every=4)
    traj = dataclasses.replace(
        traj,
        metadata={
            "j": crossing.j,
            "l": crossing.l,
            "sign": crossing.sign,
            "eps": eps,
            "residual": res,
            "converged": converged,
        },
    )
    if not converged and res > 1e-3:
        raise SolverError(
            "shooting did not converge",
            diagnostics={"residuals": trace, "lambda": lam},
        )
    return OrbitResult(
        trajectory=traj,
        lam=lam,
        residual=res,
        converged=converged,
        iterations=tuple(trace),
    )


# ---------------------------------------------------------------------------
# spatio-temporal symmetry deviation

def _spatial_matrix(n: int, d: DihedralElement) -> np.ndarray:
    """Real 2n x 2n matrix: permute particle labels and rotate the plane."""
    M = np.zeros((2 * n, 2 * n))
    perm = d.permutation()
    angle = 2.0 * math.pi * float(d.plane_matrix_angle())
    c, s = math.cos(angle), math.sin(angle)
    R = np.array([[c, -s], [s, c]])
    if d.s:
        R = R @ np.array([[1.0, 0.0], [0.0, -1.0]])
    for k in range(n):
        M[2 * k : 2 * k + 2, 2 * perm[k] : 2 * perm[k] + 2] = R
    return M


def _element_deviation(traj: Trajectory, g, phase_shift: float) -> float:
    d, x = g.dihedral, g.planar
    n = traj.params.n
    M = _spatial_matrix(n, d)
    period = traj.times[-1] - traj.times[0]
    theta = (float(x.q) + phase_shift * x.s) * period
    taus = theta - traj.times if x.s else traj.times + theta
    targets = traj.position_at(taus)
    dev = np.linalg.norm(targets @ M.T - traj.positions, axis=1)
    return float(dev.max())


def symmetry_deviation(traj: Trajectory, cls: SubgroupClass, phase_grid: int = 64) -> float:
    """How far the trajectory is from having the given spatio-temporal symmetry.

    Minimized over conjugates of the class representative (dihedral
    conjugation and time-phase alignment), maximized over group elements."""
    S = cls.representative
    if not S.is_finite:
        elements = _finite_elements_of_infinite(S, traj.params.n)
    else:
        elements = sorted(S.elements)
    n = traj.params.n
    dn = [DihedralElement(n, r, s) for s in (0, 1) for r in range(n)]
    best = math.inf
    rotations = [g for g in elements if g.planar.s == 0]
    reflections = [g for g in elements if g.planar.s == 1]
    for a in dn:
        conj = [
            GroupElement(a * g.dihedral * a.inverse(), g.planar)
            for g in rotations + reflections
        ]
        rot_part = [g for g in conj if g.planar.s == 0]
        ref_part = [g for g in conj if g.planar.s == 1]
        base = max((_element_deviation(traj, g, 0.0) for g in rot_part), default=0.0)
        if not ref_part:
            best = min(best, base)
            continue
        for k in range(phase_grid):
            shift = k / phase_grid
            worst = base
            for g in ref_part:
                worst = max(worst, _element_deviation(traj, g, shift))
                if worst >= best:
                    break
            best = min(best, worst)
    return best


def _finite_elements_of_infinite(S, n):
    """Sample the finite 'time grid' part of an infinite symmetry group."""
    from fractions import Fraction

    from .symmetry.group import GroupElement, O2Element
    from .symmetry.subgroups import PROD_O2, TWISTED

    out = []
    for d in sorted(S.dihedral_part):
        ss = (0, 1) if S.kind in (PROD_O2, TWISTED) else (0,)
        for s in ss:
            for k in range(4):
                g = GroupElement(d, O2Element(Fraction(k, 4), s))
                if S.contains_element(g):
                    out.append(g)
    return out
