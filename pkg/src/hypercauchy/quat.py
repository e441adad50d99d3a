"""The quat module

Complex quaternions a = a0 + a1*i1 + a2*i2 + a3*i3 with complex coefficients,
and the scalar-vector pair view (f0, f) of the same values.

Two layers are provided. `CQuat` and `PairField` are small value types for
single quaternions. The array functions (`qmul`, `qconj`, `qnorm`, ...)
operate on numpy arrays whose last axis has length 4 and are what the
integral operators use internally.
"""

from dataclasses import dataclass
from math import fsum, sqrt
from typing import Iterable, Sequence

import numpy as np

from hypercauchy.exceptions import DomainError


# Array layer


def as_quat_array(values) -> np.ndarray:
    """Coerce to a complex array with a trailing axis of length 4

    :param values: Array-like of shape (..., 4).
    :returns: Complex128 array of the same shape.
    """
    arr = np.asarray(values, dtype=np.complex128)
    if arr.shape[-1:] != (4,):
        raise ValueError(f"expected trailing axis of length 4, got {arr.shape}")
    return arr


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Quaternionic product a*b, broadcasting over leading axes

    :param a: Complex array of shape (..., 4).
    :param b: Complex array of shape (..., 4).
    :returns: Complex array holding the component-wise product with
        i1*i2 = i3, i2*i3 = i1, i3*i1 = i2 and i_k*i_k = -1.
    """
    a0, a1, a2, a3 = (a[..., k] for k in range(4))
    b0, b1, b2, b3 = (b[..., k] for k in range(4))
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def qconj(a: np.ndarray) -> np.ndarray:
    """Quaternionic conjugate; negates the vector part only"""
    out = np.array(a, dtype=np.complex128, copy=True)
    out[..., 1:] = -out[..., 1:]
    return out


def qnorm(a: np.ndarray) -> np.ndarray:
    """Euclidean norm in R^8 of each quaternion in an array"""
    a = np.asarray(a, dtype=np.complex128)
    return np.sqrt(np.sum(a.real**2 + a.imag**2, axis=-1))


def qscalar(values) -> np.ndarray:
    """Embed complex scalars as quaternions with zero vector part"""
    values = np.asarray(values, dtype=np.complex128)
    out = np.zeros(values.shape + (4,), dtype=np.complex128)
    out[..., 0] = values
    return out


def qembed_point(points) -> np.ndarray:
    """Embed plane points (x, y) as z = x*i1 + y*i2

    :param points: Real array of shape (..., 2).
    :returns: Complex array of shape (..., 4).
    """
    points = np.asarray(points, dtype=np.float64)
    out = np.zeros(points.shape[:-1] + (4,), dtype=np.complex128)
    out[..., 1] = points[..., 0]
    out[..., 2] = points[..., 1]
    return out


def dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Complex bilinear scalar product <a, b> of 3-vectors (no conjugation)"""
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2]


def cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Complex bilinear vector product [a, b] of 3-vectors"""
    return np.stack(
        [
            a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1],
            a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2],
            a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0],
        ],
        axis=-1,
    )


def pair_product(a0, avec, b0, bvec) -> tuple:
    """Product of pairs in scalar-vector form

    (a0, a)(b0, b) = (a0*b0 - <a, b>, [a, b] + a0*b + b0*a)

    :param a0: Complex scalar part(s) of the left factor, shape (...).
    :param avec: Complex vector part(s) of the left factor, shape (..., 3).
    :param b0: Complex scalar part(s) of the right factor.
    :param bvec: Complex vector part(s) of the right factor.
    :returns: Tuple (scalar, vector) of the product.
    """
    a0 = np.asarray(a0, dtype=np.complex128)
    b0 = np.asarray(b0, dtype=np.complex128)
    scalar = a0 * b0 - dot(avec, bvec)
    vector = cross(avec, bvec) + a0[..., None] * bvec + b0[..., None] * avec
    return scalar, vector


def fsum_quat(terms: np.ndarray, axis: int = 0) -> np.ndarray:
    """Compensated sum of quaternion terms along an axis

    Every real and imaginary component is accumulated with `math.fsum`, so the
    result does not depend on summand order or on how work was partitioned.

    :param terms: Complex array of shape (..., 4).
    :param axis: Axis to reduce.
    :returns: Complex array with `axis` removed.
    """
    terms = np.moveaxis(np.asarray(terms, dtype=np.complex128), axis, -1)
    flat = terms.reshape(-1, terms.shape[-1])
    out = np.empty(flat.shape[0], dtype=np.complex128)
    for row, values in enumerate(flat):
        out[row] = complex(fsum(values.real), fsum(values.imag))
    return out.reshape(terms.shape[:-1])


# Value layer


@dataclass(frozen=True)
class CQuat:
    """A complex quaternion a0 + a1*i1 + a2*i2 + a3*i3"""

    a0: complex = 0j
    a1: complex = 0j
    a2: complex = 0j
    a3: complex = 0j

    def __post_init__(self):
        for name in ("a0", "a1", "a2", "a3"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def from_array(cls, values) -> "CQuat":
        """Build from an array-like of four complex components"""
        values = as_quat_array(values)
        if values.shape != (4,):
            raise ValueError(f"expected shape (4,), got {values.shape}")
        return cls(*values.tolist())

    @classmethod
    def scalar_of(cls, value: complex) -> "CQuat":
        """Embed a complex scalar"""
        return cls(value)

    def to_array(self) -> np.ndarray:
        """Components as a complex array of shape (4,)"""
        return np.array([self.a0, self.a1, self.a2, self.a3], dtype=np.complex128)

    @property
    def components(self) -> tuple:
        """The four complex components in basis order"""
        return (self.a0, self.a1, self.a2, self.a3)

    @property
    def scalar(self) -> complex:
        """The scalar part a0"""
        return self.a0

    @property
    def vector(self) -> tuple:
        """The vector part (a1, a2, a3)"""
        return (self.a1, self.a2, self.a3)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return CQuat(*(x + y for x, y in zip(self.components, other.components)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return CQuat(*(x - y for x, y in zip(self.components, other.components)))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return CQuat(*(-x for x in self.components))

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return quat_mul(self, other)

    def __rmul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return quat_mul(other, self)

    def conj(self) -> "CQuat":
        """Quaternionic conjugate a0 - a1*i1 - a2*i2 - a3*i3"""
        return CQuat(self.a0, -self.a1, -self.a2, -self.a3)

    def norm(self) -> float:
        """Euclidean norm in R^8"""
        return norm(self)

    def is_real(self) -> bool:
        """True when every component has zero imaginary part"""
        return all(x.imag == 0.0 for x in self.components)

    def is_scalar(self) -> bool:
        """True when the vector part vanishes"""
        return self.a1 == 0 and self.a2 == 0 and self.a3 == 0

    def inverse(self) -> "CQuat":
        """Two-sided inverse conj(a) / (a0^2 + a1^2 + a2^2 + a3^2)

        :raises DomainError: When a0^2 + ... + a3^2 = 0; such quaternions are
            zero divisors in H(C) and have no inverse.
        """
        quadratic = sum(x * x for x in self.components)
        if quadratic == 0:
            raise DomainError(f"{self} is a zero divisor and has no inverse")
        conj = self.conj()
        return CQuat(*(x / quadratic for x in conj.components))

    def isclose(self, other: "CQuat", tol: float = 1e-12) -> bool:
        """Norm of the difference is at most tol"""
        return norm(self - _coerce(other)) <= tol


def _coerce(value):
    if isinstance(value, CQuat):
        return value
    if isinstance(value, (int, float, complex, np.number)):
        return CQuat(complex(value))
    return NotImplemented


ONE = CQuat(1)
I1 = CQuat(0, 1)
I2 = CQuat(0, 0, 1)
I3 = CQuat(0, 0, 0, 1)
BASIS = (ONE, I1, I2, I3)


def quat_mul(a: CQuat, b: CQuat) -> CQuat:
    """Quaternionic product of two complex quaternions

    :param a: Left factor.
    :param b: Right factor.
    :returns: The product a*b; the order of factors matters.
    """
    return CQuat.from_array(qmul(a.to_array(), b.to_array()))


def norm(a: CQuat) -> float:
    """Euclidean norm |a| of a complex quaternion as a vector of R^8

    :param a: The quaternion.
    :returns: sqrt of the compensated sum of squared real and imaginary parts.
    """
    squares = [x.real**2 for x in a.components] + [x.imag**2 for x in a.components]
    return sqrt(fsum(squares))


def product_norm_ratio(a: CQuat, b: CQuat) -> float:
    """The ratio |ab| / (|a| |b|), bounded by sqrt(2) on H(C)"""
    denominator = norm(a) * norm(b)
    if denominator == 0:
        return 0.0
    return norm(quat_mul(a, b)) / denominator


@dataclass(frozen=True)
class PairField:
    """Scalar-vector view (f0, f) of a complex quaternion

    The view holds its quaternion and derives the pair components from it, so
    the two forms can never disagree.
    """

    quat: CQuat

    @classmethod
    def from_parts(cls, f0: complex, fvec: Sequence[complex]) -> "PairField":
        """Build from a scalar part and a 3-vector"""
        fvec = tuple(fvec)
        if len(fvec) != 3:
            raise ValueError(f"vector part needs 3 components, got {len(fvec)}")
        return cls(CQuat(f0, *fvec))

    @property
    def f0(self) -> complex:
        """Scalar part"""
        return self.quat.a0

    @property
    def fvec(self) -> np.ndarray:
        """Vector part as a complex array of shape (3,)"""
        return np.array(self.quat.vector, dtype=np.complex128)

    def to_quat(self) -> CQuat:
        """The underlying quaternion"""
        return self.quat

    def norm(self) -> float:
        """sqrt(|f0|^2 + ||f||^2), equal to the quaternion norm"""
        return norm(self.quat)

    def is_vectorial(self, tol: float = 0.0) -> bool:
        """True when |f0| <= tol"""
        return abs(self.f0) <= tol


def pair_mul(a: PairField, b: PairField) -> PairField:
    """Product of pairs by the vectorial multiplication rule

    :param a: Left factor.
    :param b: Right factor.
    :returns: (a0*b0 - <a, b>, [a, b] + a0*b + b0*a)
    """
    scalar, vector = pair_product(a.f0, a.fvec, b.f0, b.fvec)
    return PairField.from_parts(complex(scalar), vector.tolist())


def random_cquats(rng: np.random.Generator, count: int, real: bool = False) -> Iterable[CQuat]:
    """Draw quaternions with standard normal real and imaginary parts

    :param rng: Seeded numpy generator.
    :param count: Number of quaternions.
    :param real: Draw real quaternions only.
    :returns: List of `CQuat`.
    """
    values = rng.standard_normal((count, 4)).astype(np.complex128)
    if not real:
        values = values + 1j * rng.standard_normal((count, 4))
    return [CQuat.from_array(row) for row in values]
