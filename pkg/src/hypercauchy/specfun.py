"""The specfun module

Hankel functions H_n^(p)(t), n in {0, 1, 2}, p in {1, 2}, of complex argument,
evaluated from their ascending series. H_2 is obtained from the recurrence
t*H_2 = 2*H_1 - t*H_0, never from a series of its own.

The series are reliable in double precision for |t| <= SERIES_RADIUS. Beyond
that the alternating terms cancel badly, and for complex t the decaying
combination J +/- iY loses roughly exp(2|Im t|) in relative accuracy.
"""

import logging
from dataclasses import dataclass

import numpy as np

from hypercauchy.exceptions import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

EULER_C = 0.57721566490153286061
SERIES_RADIUS = 8.0

# scale floor for the relative truncation test near zeros of the partial sum
_TINY = 1e-300


@dataclass(frozen=True)
class SeriesCfg:
    """Truncation policy for the Hankel series

    :param tol: Exit once every last added term is below tol times the partial
        sum it was added to.
    :param max_terms: Upper bound on the number of terms.
    """

    tol: float = 1e-15
    max_terms: int = 200

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be at least 1, got {self.max_terms}")


DEFAULT_SERIES = SeriesCfg()


def _check_branch(p: int) -> int:
    if p not in (1, 2):
        raise DomainError(f"branch index must be 1 or 2, got {p!r}")
    return p


def _prepare(t) -> np.ndarray:
    t = np.asarray(t, dtype=np.complex128)
    if np.any(t == 0):
        raise DomainError("Hankel functions are singular at t = 0")
    if np.any(np.abs(t) > SERIES_RADIUS):
        logger.warning(
            "Hankel series evaluated at |t| = %.3g beyond the reliable radius %.1f",
            float(np.max(np.abs(t))),
            SERIES_RADIUS,
        )
    return t


def _series(t: np.ndarray, order: int, cfg: SeriesCfg) -> tuple:
    """Sum the Bessel series and its harmonic-weighted companion

    For order 0 the terms are j_k = (-1)^k (t/2)^(2k) / (k!)^2 and the
    companion weights are H_k. For order 1 the terms are
    m_k = (-1)^k (t/2)^(2k+1) / (k! (k+1)!) with weights H_k + H_(k+1),
    where H_k is the k-th harmonic number and the companion starts at k = 1.

    :returns: (bessel_sum, companion_sum) arrays shaped like t.
    """
    half = t / 2
    quarter_sq = -(half * half)
    term = np.ones_like(t) if order == 0 else half.copy()
    bessel = term.copy()
    companion = np.zeros_like(t)
    harmonic = 0.0
    for k in range(1, cfg.max_terms + 1):
        term = term * quarter_sq / (k * (k + order))
        harmonic += 1.0 / k
        weight = harmonic if order == 0 else 2 * harmonic + 1.0 / (k + 1)
        bessel = bessel + term
        weighted = term * weight
        companion = companion + weighted
        small = np.abs(term) <= cfg.tol * np.maximum(np.abs(bessel), _TINY)
        small &= np.abs(weighted) <= cfg.tol * np.maximum(np.abs(companion), _TINY)
        if np.all(small):
            return bessel, companion
    raise ConvergenceError(
        f"Hankel series did not converge in {cfg.max_terms} terms "
        f"(max |t| = {float(np.max(np.abs(t))):.3g})"
    )


def hankel0(p: int, t, cfg: SeriesCfg = DEFAULT_SERIES):
    """Hankel function of order zero

    :param p: Branch index, 1 for H^(1) and 2 for H^(2).
    :param t: Complex argument, scalar or array; must be nonzero.
    :param cfg: Series truncation policy.
    :returns: H_0^(p)(t) with the same shape as t.
    :notes: Principal branch of log(t/2).
    """
    sign = (-1) ** _check_branch(p)
    t = _prepare(t)
    j0, companion = _series(t, 0, cfg)
    log_term = np.log(t / 2) + EULER_C
    out = (1 - sign * (2j / np.pi) * log_term) * j0 + sign * (2j / np.pi) * companion
    return out[()] if out.ndim == 0 else out


def hankel1(p: int, t, cfg: SeriesCfg = DEFAULT_SERIES):
    """Hankel function of order one

    :param p: Branch index, 1 for H^(1) and 2 for H^(2).
    :param t: Complex argument, scalar or array; must be nonzero.
    :param cfg: Series truncation policy.
    :returns: H_1^(p)(t) with the same shape as t.
    """
    sign = (-1) ** _check_branch(p)
    t = _prepare(t)
    j1, companion = _series(t, 1, cfg)
    log_term = np.log(t / 2) + EULER_C
    # k = 0 term of the harmonic part is folded into it/(2 pi)
    singular = sign * (2j / (np.pi * t) + 1j * t / (2 * np.pi))
    out = (
        (1 - sign * (2j / np.pi) * log_term) * j1
        + singular
        + sign * (1j / np.pi) * companion
    )
    return out[()] if out.ndim == 0 else out


def hankel2(p: int, t, cfg: SeriesCfg = DEFAULT_SERIES):
    """Hankel function of order two from the three-term recurrence

    :param p: Branch index.
    :param t: Complex argument; must be nonzero.
    :param cfg: Series truncation policy.
    :returns: (2*H_1^(p)(t) - t*H_0^(p)(t)) / t
    """
    t_arr = _prepare(t)
    out = (2 * hankel1(p, t_arr, cfg) - t_arr * hankel0(p, t_arr, cfg)) / t_arr
    return out[()] if np.ndim(out) == 0 else out
