"""Automorphic potentials built from the unit-sphere shell.

For a point ``z`` the shell time ``t(z)`` is the unique real solution of
``sum |alpha_i|^(-2t) |z_i|^2 = 1``: flowing ``z`` by ``diag(|alpha_i|^(-t))``
lands on the unit sphere. The potential is ``phi(z) = exp(lambda * t(z))``, so
``phi == 1`` on the sphere and ``phi(diag(|alpha_i|^s) z) = e^(lambda s) phi(z)``.

Differential-geometric quantities are computed by central finite differences
in the real coordinates ``(x_1..x_n, y_1..y_n)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from .eigendata import ContractionSpec, lee_generator
from .exceptions import NonConvergence, StepTooLarge, ValidationError, ZeroPoint

MAX_ITER = 200
HERMITIAN_DEFECT_LIMIT = 1e-6


@dataclass(frozen=True)
class ShellPotential:
    spec: ContractionSpec
    lam: float
    root_tolerance: float = 1e-13
    hessian_step: float = 1e-4

    def __post_init__(self):
        if not self.lam > 0:
            raise ValidationError("lambda must be positive")
        if not (self.root_tolerance > 0 and self.hessian_step > 0):
            raise ValidationError("tolerances must be positive")

    @property
    def log_moduli(self) -> np.ndarray:
        return lee_generator(self.spec)


def _as_point(z, n: int) -> np.ndarray:
    z = np.asarray(z, dtype=complex).reshape(-1)
    if z.shape[0] != n:
        raise ValidationError(f"point has {z.shape[0]} coordinates, expected {n}")
    if not np.all(np.isfinite(z)):
        raise ValidationError("point has non-finite coordinates")
    if not np.any(z):
        raise ZeroPoint("the origin has no shell time")
    return z


def shell_time(z, log_moduli: np.ndarray, tol: float = 1e-13, max_iter: int = MAX_ITER) -> float:
    """Solve ``log sum exp(log|z_i|^2 - 2 t log r_i) = 0`` for ``t``.

    The left side is strictly decreasing and convex in ``t``. The root is
    bracketed in closed form by ``log|z|^2 / (2 log r)`` for the extreme moduli
    ``r``; Newton steps that leave the bracket fall back to bisection.
    """
    z = np.asarray(z, dtype=complex)
    mask = z != 0
    if not mask.any():
        raise ZeroPoint("the origin has no shell time")
    a = np.log(np.abs(z[mask]) ** 2)
    b = 2.0 * np.asarray(log_moduli, dtype=float)[mask]
    total = logsumexp(a)
    lo, hi = sorted((total / b.min(), total / b.max()))

    def g(t):
        return logsumexp(a - b * t)

    def dg(t):
        w = a - b * t
        p = np.exp(w - logsumexp(w))
        return -float(np.dot(p, b))

    glo, ghi = g(lo), g(hi)
    if abs(glo) <= tol:
        return float(lo)
    if abs(ghi) <= tol:
        return float(hi)
    t = 0.5 * (lo + hi)
    for _ in range(max_iter):
        gt = g(t)
        if abs(gt) <= tol:
            return float(t)
        if gt > 0:
            lo = t
        else:
            hi = t
        step = t - gt / dg(t)
        t = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4 * np.finfo(float).eps * max(1.0, abs(t)):
            if abs(g(t)) <= max(tol, 1e-15):
                return float(t)
            break
    gt = g(t)
    if abs(gt) <= tol:
        return float(t)
    raise NonConvergence(f"shell time did not converge (residual {gt:.3g})")


def time_to_shell(z, spec: ContractionSpec, root_tolerance: float = 1e-13) -> float:
    z = _as_point(z, spec.n)
    return shell_time(z, lee_generator(spec), root_tolerance)


def potential(z, p: ShellPotential) -> float:
    z = _as_point(z, p.spec.n)
    return math.exp(p.lam * shell_time(z, p.log_moduli, p.root_tolerance))


def log_potential(z, p: ShellPotential) -> float:
    z = _as_point(z, p.spec.n)
    return p.lam * shell_time(z, p.log_moduli, p.root_tolerance)


def automorphy_factor(p: ShellPotential) -> float:
    """Factor by which the deck generator multiplies the potential: ``e^lambda``."""
    return math.exp(p.lam)


def flow(z, spec: ContractionSpec, s: float) -> np.ndarray:
    """Expanding flow ``z -> diag(|alpha_i|^s) z``."""
    return np.asarray(z, dtype=complex) * np.exp(s * lee_generator(spec))


# --- finite differences in real coordinates -------------------------------

def _real(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z.real, z.imag])


def _complex(x: np.ndarray) -> np.ndarray:
    n = x.shape[0] // 2
    return x[:n] + 1j * x[n:]


def real_gradient(f: Callable[[np.ndarray], float], z: np.ndarray, h: float) -> np.ndarray:
    x0 = _real(z)
    grad = np.empty_like(x0)
    for a in range(x0.shape[0]):
        e = np.zeros_like(x0)
        e[a] = h
        grad[a] = (f(_complex(x0 + e)) - f(_complex(x0 - e))) / (2 * h)
    return grad


def real_hessian(f: Callable[[np.ndarray], float], z: np.ndarray, h: float) -> np.ndarray:
    """Full (unsymmetrized) central-difference Hessian in real coordinates."""
    x0 = _real(z)
    dim = x0.shape[0]
    f0 = f(z)
    hess = np.empty((dim, dim))
    for a in range(dim):
        ea = np.zeros(dim)
        ea[a] = h
        for b in range(dim):
            if a == b:
                hess[a, a] = (f(_complex(x0 + ea)) - 2 * f0 + f(_complex(x0 - ea))) / h ** 2
                continue
            eb = np.zeros(dim)
            eb[b] = h
            hess[a, b] = (f(_complex(x0 + ea + eb)) - f(_complex(x0 + ea - eb))
                          - f(_complex(x0 - ea + eb)) + f(_complex(x0 - ea - eb))) / (4 * h ** 2)
    return hess


def levi_matrix(real_hess: np.ndarray) -> np.ndarray:
    """``[d^2 f / dz_i dzbar_j]`` from the real Hessian (not symmetrized)."""
    n = real_hess.shape[0] // 2
    xx, xy = real_hess[:n, :n], real_hess[:n, n:]
    yx, yy = real_hess[n:, :n], real_hess[n:, n:]
    return 0.25 * ((xx + yy) + 1j * (xy - yx))


def _hermitian(mat: np.ndarray) -> np.ndarray:
    defect = float(np.max(np.abs(mat - mat.conj().T)))
    if defect > HERMITIAN_DEFECT_LIMIT:
        raise StepTooLarge(f"Hermitian defect {defect:.3g} exceeds {HERMITIAN_DEFECT_LIMIT}")
    return 0.5 * (mat + mat.conj().T)


def complex_hessian(z, p: ShellPotential) -> np.ndarray:
    """Finite-difference ``[d^2 phi / dz_i dzbar_j](z)``, Hermitian-symmetrized."""
    z = _as_point(z, p.spec.n)
    h = p.hessian_step * max(1.0, float(np.linalg.norm(z)))
    return _hermitian(levi_matrix(real_hessian(lambda w: potential(w, p), z, h)))


@dataclass
class VaismanSample:
    """Finite-difference data of the Vaisman structure at one point.

    ``theta`` holds the real components of ``-d log phi`` in
    ``(dx_1..dx_n, dy_1..dy_n)``. ``omega0`` is the Hermitian matrix of
    ``d^c theta``, normalized like ``hessian`` (the Levi matrix of ``phi``).
    """

    z: np.ndarray
    phi: float
    theta: np.ndarray
    omega0: np.ndarray
    hessian: np.ndarray
    lee_vector: np.ndarray
    omega0_eigenvalues: np.ndarray = field(default=None)
    hessian_eigenvalues: np.ndarray = field(default=None)
    kernel_residual_lee: float = 0.0
    kernel_residual_anti_lee: float = 0.0
    identity_residual: float = 0.0
    omega0_rank: int = 0
    rank_threshold: float = 1e-6

    @property
    def semipositive(self) -> bool:
        return float(self.omega0_eigenvalues.min()) >= -1e-6

    def to_json(self) -> dict:
        return {"z": [[w.real, w.imag] for w in self.z], "phi": self.phi,
                "omega0_eigenvalues": self.omega0_eigenvalues.tolist(),
                "hessian_eigenvalues": self.hessian_eigenvalues.tolist(),
                "kernel_residual_lee": self.kernel_residual_lee,
                "kernel_residual_anti_lee": self.kernel_residual_anti_lee,
                "identity_residual": self.identity_residual,
                "omega0_rank": self.omega0_rank}


def vaisman_sample(z, p: ShellPotential, rank_threshold: float = 1e-6) -> VaismanSample:
    """Sample ``theta = -d log phi``, ``omega0 = d^c theta`` and ``dd^c phi`` at ``z``.

    ``omega0`` comes from differencing the numerically differentiated
    ``theta`` once more. Recorded checks: its spectrum (semi-positivity and
    numeric rank), how well it annihilates the Lee vector
    ``xi = (log|alpha_i| z_i)`` and ``i xi``, and the residual of
    ``omega0 = omega - theta ^ I theta`` with ``omega = dd^c phi / phi``, read in
    Levi-matrix form as ``L(log phi) = L(phi)/phi - (d phi)(d phi)^* / phi^2``.
    """
    z = _as_point(z, p.spec.n)
    n = p.spec.n
    h = p.hessian_step * max(1.0, float(np.linalg.norm(z)))
    phi = potential(z, p)

    def neg_log_phi(w):
        return -log_potential(w, p)

    theta = real_gradient(neg_log_phi, z, h)
    # Jacobian of theta: column a is d theta / d x_a; Hess(log phi) = -Jacobian.
    x0 = _real(z)
    jac = np.empty((2 * n, 2 * n))
    for a in range(2 * n):
        e = np.zeros(2 * n)
        e[a] = h
        jac[:, a] = (real_gradient(neg_log_phi, _complex(x0 + e), h)
                     - real_gradient(neg_log_phi, _complex(x0 - e), h)) / (2 * h)
    omega0 = _hermitian(levi_matrix(-jac))
    hess = complex_hessian(z, p)

    dphi = phi * 0.5 * (-theta[:n] + 1j * theta[n:])  # d phi / d z_i = phi * d(log phi)/dz_i
    omega = hess / phi
    identity_res = float(np.max(np.abs(omega0 - (omega - np.outer(dphi, dphi.conj()) / phi ** 2))))

    xi = p.log_moduli * z
    ev0 = np.linalg.eigvalsh(omega0)
    sample = VaismanSample(
        z=z, phi=phi, theta=theta, omega0=omega0, hessian=hess, lee_vector=xi,
        omega0_eigenvalues=ev0, hessian_eigenvalues=np.linalg.eigvalsh(hess),
        kernel_residual_lee=float(np.max(np.abs(xi @ omega0))),
        kernel_residual_anti_lee=float(np.max(np.abs((1j * xi) @ omega0))),
        identity_residual=identity_res,
        omega0_rank=int(np.sum(ev0 > rank_threshold)),
        rank_threshold=rank_threshold,
    )
    return sample


def hessian_is_psd(p: ShellPotential, points: Sequence, tol: float = 1e-6) -> bool:
    return all(float(np.linalg.eigvalsh(complex_hessian(z, p)).min()) >= -tol for z in points)


def empirical_psd_threshold(spec: ContractionSpec, points: Sequence, lam_lo: float = 1e-2,
                            lam_hi: float = 64.0, iterations: int = 20, tol: float = 1e-6,
                            **kwargs) -> float:
    """Smallest tested lambda whose sampled complex Hessians are all PSD.

    Bisection on ``[lam_lo, lam_hi]`` assuming the property is monotone in
    lambda. This is an empirical number for the given points, nothing more.
    """
    def ok(lam):
        return hessian_is_psd(ShellPotential(spec, lam, **kwargs), points, tol)

    if ok(lam_lo):
        return lam_lo
    if not ok(lam_hi):
        raise NonConvergence(f"sampled Hessians not PSD even at lambda = {lam_hi}")
    for _ in range(iterations):
        mid = math.sqrt(lam_lo * lam_hi)
        if ok(mid):
            lam_hi = mid
        else:
            lam_lo = mid
    return lam_hi


def random_points(n: int, count: int, rng: np.random.Generator, radius: Optional[float] = None,
                  r_min: float = 0.5, r_max: float = 4.0) -> np.ndarray:
    """Random nonzero points; on the sphere of ``radius`` if given, else in an annulus."""
    v = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    if radius is None:
        radii = rng.uniform(r_min, r_max, size=(count, 1))
    else:
        radii = np.full((count, 1), float(radius))
    return v * radii
