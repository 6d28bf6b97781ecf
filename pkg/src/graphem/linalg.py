"""Dense symmetric positive-definite helpers: Cholesky solves, log-determinants
and the shared diagonal-jitter policy for near-singular matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import NumericalError, ValidationError


@dataclass(frozen=True)
class JitterPolicy:
    """Diagonal loading applied when a Cholesky factorization fails.

    Starting value is base_scale * trace / p; the value is doubled up to
    `doublings` times before giving up.
    """

    base_scale: float = 1e-8
    doublings: int = 3


def symmetrize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.T)


def check_symmetric(a: np.ndarray, rtol: float = 1e-10, what: str = "matrix") -> None:
    scale = max(np.abs(a).max(), 1.0) if a.size else 1.0
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{what} must be square, got shape {a.shape}")
    if np.abs(a - a.T).max(initial=0.0) > rtol * scale:
        raise ValidationError(f"{what} is not symmetric to within {rtol} relative tolerance")


def cholesky_lower(a: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor, raising NumericalError on failure."""
    try:
        return sla.cholesky(a, lower=True)
    except sla.LinAlgError as exc:
        raise NumericalError(f"Cholesky factorization failed: {exc}") from exc


def jittered_cholesky(
    a: np.ndarray, policy: JitterPolicy = JitterPolicy()
) -> tuple[np.ndarray, float]:
    """Cholesky of `a`, adding diagonal jitter per `policy` if needed.

    Returns (lower factor, jitter actually applied). The factor is of
    a + jitter*I, not of `a`, whenever jitter > 0.
    """
    try:
        return sla.cholesky(a, lower=True), 0.0
    except sla.LinAlgError:
        pass
    p = a.shape[0]
    lam = policy.base_scale * np.trace(a) / max(p, 1)
    for _ in range(policy.doublings + 1):
        try:
            return sla.cholesky(a + lam * np.eye(p), lower=True), lam
        except sla.LinAlgError:
            lam *= 2.0
    raise NumericalError(
        f"matrix not positive definite even after jitter {lam / 2.0:.3e}"
    )


def spd_solve(chol_lower: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve A x = b given the lower Cholesky factor of A."""
    return sla.cho_solve((chol_lower, True), b)


def spd_logdet(chol_lower: np.ndarray) -> float:
    """log det A from its lower Cholesky factor."""
    return 2.0 * float(np.sum(np.log(np.diag(chol_lower))))


def spd_inverse(a: np.ndarray) -> np.ndarray:
    """Symmetric inverse of an SPD matrix via Cholesky."""
    low = cholesky_lower(a)
    inv = spd_solve(low, np.eye(a.shape[0]))
    return symmetrize(inv)


def is_psd(a: np.ndarray, floor_scale: float = 1e-10) -> bool:
    """Eigenvalue check with floor -floor_scale * trace / p (for near-PSD output)."""
    p = a.shape[0]
    if p == 0:
        return True
    floor = -floor_scale * max(np.trace(a), 0.0) / p
    return bool(np.linalg.eigvalsh(symmetrize(a)).min() >= floor)
