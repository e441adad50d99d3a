"""The kernel module

Fundamental solution theta_alpha of the Helmholtz operator Delta + alpha^2 in
the plane and the Cauchy kernel K_alpha = -d_{-alpha}[theta_alpha] built from
it. Plane points are embedded as z = x*i1 + y*i2.

All evaluators are vectorised: they accept arrays of points of shape (..., 2)
and return complex arrays of shape (...) for theta and (..., 4) for kernels.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from hypercauchy.exceptions import DomainError
from hypercauchy.specfun import DEFAULT_SERIES, SeriesCfg, hankel0, hankel1


def select_branch(alpha: complex) -> int:
    """Choose the Hankel branch for a wave parameter

    :param alpha: Nonzero complex wave parameter.
    :returns: 1 if Im(alpha) > 0 or alpha is real and positive; 2 if
        Im(alpha) < 0 or alpha is real and negative.
    :raises DomainError: For alpha = 0, which needs no branch.
    """
    alpha = complex(alpha)
    if alpha == 0:
        raise DomainError("alpha = 0 uses the logarithmic kernel and has no branch")
    if alpha.imag > 0 or (alpha.imag == 0 and alpha.real > 0):
        return 1
    return 2


@dataclass(frozen=True)
class KernelCtx:
    """Wave parameter and evaluation policy for all kernel evaluations

    :param alpha: Complex wave parameter; lambda = alpha^2 is the Helmholtz
        wave number.
    :param series: Truncation policy for the Hankel series.
    """

    alpha: complex
    series: SeriesCfg = DEFAULT_SERIES
    p: Optional[int] = field(init=False, default=None)

    def __post_init__(self):
        # -0.0 imaginary parts would put real negative alpha on the lower
        # side of the log branch cut
        alpha = complex(self.alpha)
        alpha = complex(alpha.real + 0.0, alpha.imag + 0.0)
        object.__setattr__(self, "alpha", alpha)
        if alpha != 0:
            object.__setattr__(self, "p", select_branch(alpha))

    @property
    def lam(self) -> complex:
        """The Helmholtz wave number lambda = alpha^2"""
        return self.alpha * self.alpha

    @property
    def is_degenerate(self) -> bool:
        """True for alpha = 0, where the kernels are in closed form"""
        return self.alpha == 0

    def negated(self) -> "KernelCtx":
        """Context for -alpha with the same series policy"""
        return KernelCtx(-self.alpha, self.series)


def _radius(z) -> tuple:
    z = np.asarray(z, dtype=np.float64)
    if z.shape[-1:] != (2,):
        raise ValueError(f"expected points of shape (..., 2), got {z.shape}")
    r = np.hypot(z[..., 0], z[..., 1])
    if np.any(r == 0):
        raise DomainError("kernels are singular at the origin")
    return z, r


def theta(ctx: KernelCtx, z) -> np.ndarray:
    """Fundamental solution of the Helmholtz operator

    :param ctx: Kernel context.
    :param z: Point(s) of shape (..., 2), away from the origin.
    :returns: log|z| / (2 pi) for alpha = 0, otherwise
        (-1)^p (i/4) H_0^(p)(alpha |z|).
    """
    _, r = _radius(z)
    if ctx.is_degenerate:
        return np.log(r) / (2 * np.pi) + 0j
    return (-1) ** ctx.p * 0.25j * hankel0(ctx.p, ctx.alpha * r, ctx.series)


def laplace_kernel(z) -> np.ndarray:
    """The alpha = 0 Cauchy kernel -z / (2 pi |z|^2)

    It is also the leading singular part of every K_alpha.
    """
    z, r = _radius(z)
    out = np.zeros(z.shape[:-1] + (4,), dtype=np.complex128)
    scale = -1.0 / (2 * np.pi * r * r)
    out[..., 1] = scale * z[..., 0]
    out[..., 2] = scale * z[..., 1]
    return out


def cauchy_kernel(ctx: KernelCtx, z) -> np.ndarray:
    """The alpha-hyperholomorphic Cauchy kernel K_alpha

    :param ctx: Kernel context.
    :param z: Point(s) of shape (..., 2), away from the origin.
    :returns: Quaternion array of shape (..., 4). For alpha != 0 this is
        (-1)^p (i alpha / 4) (H_1^(p)(alpha|z|) z/|z| + H_0^(p)(alpha|z|));
        for alpha = 0 it is -z / (2 pi |z|^2).
    """
    if ctx.is_degenerate:
        return laplace_kernel(z)
    z, r = _radius(z)
    t = ctx.alpha * r
    prefactor = (-1) ** ctx.p * 0.25j * ctx.alpha
    h0 = hankel0(ctx.p, t, ctx.series)
    h1 = hankel1(ctx.p, t, ctx.series)
    out = np.zeros(z.shape[:-1] + (4,), dtype=np.complex128)
    out[..., 0] = prefactor * h0
    out[..., 1] = prefactor * h1 * z[..., 0] / r
    out[..., 2] = prefactor * h1 * z[..., 1] / r
    return out


def kernel_pair(ctx: KernelCtx, z) -> tuple:
    """Scalar and vector parts (K_{alpha,0}, K_alpha) of the Cauchy kernel

    :returns: Tuple of arrays of shapes (...) and (..., 3).
    """
    kernel = cauchy_kernel(ctx, z)
    return kernel[..., 0], kernel[..., 1:]


def regular_part(ctx: KernelCtx, z) -> np.ndarray:
    """K_alpha minus its Laplace part; at most logarithmically singular"""
    if ctx.is_degenerate:
        z, _ = _radius(z)
        return np.zeros(z.shape[:-1] + (4,), dtype=np.complex128)
    return cauchy_kernel(ctx, z) - laplace_kernel(z)


def kernel_split(ctx: KernelCtx, z) -> tuple:
    """Split K_alpha into its explicit singular part and a continuous remainder

    S_alpha(z) = -(z/|z|^2 - alpha log|z|) / (2 pi). The scalar part of K_alpha
    behaves like +alpha log|z| / (2 pi) near the origin, so this sign leaves
    phi_alpha = K_alpha - S_alpha continuous there.

    :param ctx: Kernel context with alpha != 0.
    :param z: Point(s) of shape (..., 2), away from the origin.
    :returns: (S_alpha(z), phi_alpha(z)) as quaternion arrays.
    """
    if ctx.is_degenerate:
        raise DomainError("the kernel split is defined for alpha != 0")
    z, r = _radius(z)
    singular = laplace_kernel(z)
    singular[..., 0] = ctx.alpha * np.log(r) / (2 * np.pi)
    return singular, cauchy_kernel(ctx, z) - singular
