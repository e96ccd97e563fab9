"""Complex special functions and branch-cut-correct roots.

Every multivalued function in this module has its branch pinned explicitly:

* ``p_plus(E, m)``: sqrt(2*m*E) with the cut along the negative imaginary
  E axis, so the root is continuous across the positive real axis and is
  *positive imaginary* for real E < 0 (evanescent momenta).
* ``q_of_p(p, p0)``: sqrt(p**2 - p0**2) with the two branch points +-p0
  joined by the shortest cut, displaced infinitesimally *below* the real
  axis.  Real p inside (-p0, p0) therefore always takes the +i branch.
* ``faddeeva_w(z)``: w(z) = exp(-z**2) * erfc(-i*z), valid in all quadrants.

Values exactly on a cut are rejected (BranchCutError) rather than silently
resolved; off-cut values are taken on the closure from the counterclockwise
side.
"""

from __future__ import annotations

import numpy as np
from scipy.special import wofz as _wofz, erfc as _scipy_erfc

from .errors import BranchCutError, DomainError

__all__ = ["faddeeva_w", "erfc_complex", "p_plus", "q_of_p"]


def _as_complex_array(z, name):
    z = np.asarray(z, dtype=np.complex128)
    if not (np.all(np.isfinite(z.real)) and np.all(np.isfinite(z.imag))):
        raise DomainError(f"non-finite value passed to {name}")
    return z


def _scalar_like(result, z):
    # mirror numpy ufunc behaviour: scalar in -> scalar out
    if np.ndim(z) == 0:
        return complex(result[()] if isinstance(result, np.ndarray) else result)
    return result


def faddeeva_w(z):
    """Faddeeva function w(z) = exp(-z^2) erfc(-iz).

    Accurate to ~1e-13 relative in the upper half-plane and on the real
    axis; the lower half-plane is reached through the reflection identity
    w(-z) = 2 exp(-z^2) - w(z), which the backend applies internally.

    Parameters
    ----------
    z : complex scalar or array.

    Returns
    -------
    complex scalar or array, same shape as ``z``.
    """
    arr = _as_complex_array(z, "faddeeva_w")
    return _scalar_like(_wofz(arr), z)


def erfc_complex(z):
    """Complementary error function for complex argument.

    Thin wrapper with the same input validation as the rest of the module.
    Stable for |arg z| <= pi/4 where |exp(-z^2)| <= 1 (the regime used by
    the time-domain reconstruction kernel).
    """
    arr = _as_complex_array(z, "erfc_complex")
    return _scalar_like(_scipy_erfc(arr), z)


def p_plus(E, m: float = 1.0):
    """Momentum root (2 m E)^(1/2) on the branch cut along the negative
    imaginary E axis.

    The root is continuous across the positive real E axis; for real E < 0
    it is positive imaginary, p = +i (2 m |E|)^(1/2).  Energies exactly on
    the open negative imaginary axis raise BranchCutError.

    Parameters
    ----------
    E : complex energy, scalar or array.
    m : particle mass.

    Returns
    -------
    complex momentum on the p+ branch, same shape as ``E``.
    """
    if not (m > 0 and np.isfinite(m)):
        raise DomainError(f"mass must be positive and finite, got {m}")
    arr = _as_complex_array(E, "p_plus")
    on_cut = (arr.real == 0.0) & (arr.imag < 0.0)
    if np.any(on_cut):
        raise BranchCutError(
            "p_plus evaluated on the negative imaginary E axis (branch cut)"
        )
    # arg E in (-pi/2, 3*pi/2]: rotate the principal range so the cut sits
    # on the negative imaginary axis.
    theta = np.arctan2(arr.imag, arr.real)
    theta = np.where(theta < -0.5 * np.pi, theta + 2.0 * np.pi, theta)
    # real negative E with imag == -0.0 lands at theta = -pi -> +pi
    theta = np.where(np.isclose(theta, -np.pi), np.pi, theta)
    root = np.sqrt(2.0 * m * np.abs(arr)) * np.exp(0.5j * theta)
    return _scalar_like(root, E)


def q_of_p(p, p0: float):
    """Momentum relative to the upper potential level,
    q = (p^2 - p0^2)^(1/2), with the finite cut [-p0, p0] displaced just
    below the real axis.

    Piecewise on the real axis:

    ==============  =======================
    p < -p0         q = -(p^2 - p0^2)^(1/2)
    -p0 < p < p0    q = +i (p0^2 - p^2)^(1/2)
    p > p0          q = +(p^2 - p0^2)^(1/2)
    ==============  =======================

    and q = +i (gamma^2 + p0^2)^(1/2) on the positive imaginary axis
    p = i*gamma.  Because the cut is displaced *below* the axis, real p in
    (-p0, p0) is not on the cut and takes the +i branch; no representable
    floating-point value lies exactly on the displaced cut.

    Parameters
    ----------
    p : complex momentum, scalar or array.
    p0 : real threshold momentum (>= 0), p0 = (2 m V0)^(1/2).
    """
    if not (p0 >= 0.0 and np.isfinite(p0)):
        raise DomainError(f"p0 must be non-negative and finite, got {p0}")
    arr = _as_complex_array(p, "q_of_p")
    # principal-branch product sqrt(p - p0) * sqrt(p + p0) has exactly the
    # finite cut [-p0, p0]; numpy's convention sqrt(-x + 0j) = +i sqrt(x)
    # realises the i*0+ (cut-below) prescription on the real segment, but
    # an explicit negative zero in the imaginary part would flip it, so
    # exactly-real input is canonicalised first.
    real_in = arr.imag == 0.0
    arr = np.where(real_in, arr.real + 0.0j, arr)
    q = np.sqrt(arr - p0) * np.sqrt(arr + p0)
    return _scalar_like(q, p)
