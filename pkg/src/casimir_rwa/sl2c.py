"""Exact 2x2 machinery for the defining representation of su(1,1).

Matrices are plain ``(2, 2)`` complex numpy arrays.  The central object is
the time-independent generator ``A = [[c, i d], [i d, -c]]`` whose square is
``(c**2 - d**2) * I``, so ``exp(-i t A)`` has a closed form.
"""

from typing import NamedTuple

import numpy as np

from .errors import DegenerateDecomposition

DEGENERACY_THRESHOLD = 1e-12

# series branch of the cos/sinc kernels below this |delta| * t**2
_SERIES_CUTOFF = 1e-4

K_PLUS = np.array([[0, 1], [0, 0]])
K_MINUS = np.array([[0, 0], [-1, 0]])
K_3 = np.array([[0.5, 0.0], [0.0, -0.5]])


class AlphaBeta(NamedTuple):
    alpha: complex
    beta: float
    t: float
    c: float
    d: float


class GaussFactors(NamedTuple):
    upper: complex
    diag: complex
    lower: complex

    def matrices(self):
        """The three factors as matrices: unipotent upper, diagonal, unipotent lower."""
        up = np.array([[1.0, self.upper], [0.0, 1.0]], dtype=complex)
        dg = np.array([[1.0 / self.diag, 0.0], [0.0, self.diag]], dtype=complex)
        lo = np.array([[1.0, 0.0], [self.lower, 1.0]], dtype=complex)
        return up, dg, lo

    def recompose(self):
        up, dg, lo = self.matrices()
        return up @ dg @ lo


def det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def commutator(x, y):
    return x @ y - y @ x


def cos_sinc(delta, t):
    """Return ``(cos(t*sqrt(delta)), sin(t*sqrt(delta))/sqrt(delta))``.

    Continued analytically to ``(cosh, sinh/sqrt(-delta))`` for negative
    ``delta`` and to ``(1, t)`` at zero, using the Taylor series near the
    crossover so both sides join smoothly.
    """
    x = delta * t * t
    if abs(x) < _SERIES_CUTOFF:
        cos_part = 1.0 - x / 2.0 + x * x / 24.0 - x**3 / 720.0
        sinc_part = t * (1.0 - x / 6.0 + x * x / 120.0 - x**3 / 5040.0)
    elif delta > 0.0:
        w = np.sqrt(delta)
        cos_part = np.cos(w * t)
        sinc_part = np.sin(w * t) / w
    else:
        w = np.sqrt(-delta)
        cos_part = np.cosh(w * t)
        sinc_part = np.sinh(w * t) / w
    return float(cos_part), float(sinc_part)


def alpha_beta(c, d, t):
    """alpha and beta entries of ``exp(-i t A)``; valid for any sign of c**2 - d**2."""
    cos_part, sinc_part = cos_sinc(c * c - d * d, t)
    return AlphaBeta(complex(cos_part, c * sinc_part), d * sinc_part, t, c, d)


def log_alpha(c, d, t):
    """log(alpha(t)) on the branch continuous in t with log(alpha(0)) = 0.

    For c**2 > d**2, alpha = cos(theta) + i*(c/w)*sin(theta) with
    theta = w*t and |c/w| >= 1.  It stays in the same quadrant as
    exp(i*sign(c)*theta), so the unwrapped argument is the principal one
    shifted by the nearest multiple of 2*pi to sign(c)*theta.  Otherwise
    Re(alpha) >= 1 and the principal branch is already continuous.
    """
    ab = alpha_beta(c, d, t)
    alpha = ab.alpha
    phase = np.angle(alpha)
    delta = c * c - d * d
    if delta > 0.0 and abs(delta * t * t) >= _SERIES_CUTOFF:
        target = np.copysign(np.sqrt(delta) * t, c)
        phase += 2.0 * np.pi * np.round((target - phase) / (2.0 * np.pi))
    return complex(np.log(abs(alpha)), phase)


def generator(c, d):
    return np.array([[c, 1j * d], [1j * d, -c]], dtype=complex)


def exp_neg_itA(c, d, t):
    ab = alpha_beta(c, d, t)
    return np.array(
        [[ab.alpha.conjugate(), ab.beta], [ab.beta, ab.alpha]], dtype=complex
    )


def frame(eta, t):
    """Diagonal rotation ``diag(exp(-i eta t/2), exp(i eta t/2))``."""
    ph = np.exp(-0.5j * eta * t)
    return np.array([[ph, 0.0], [0.0, ph.conjugate()]], dtype=complex)


def h_tilde(c, d, eta, t):
    """The rotating-frame 2x2 generator; not hermitian."""
    omega0 = c + 0.5 * eta
    return np.array(
        [
            [omega0, 1j * d * np.exp(-1j * eta * t)],
            [1j * d * np.exp(1j * eta * t), -omega0],
        ],
        dtype=complex,
    )


def propagator_small(c, d, eta, t):
    """Solution of ``i dM/dt = h_tilde(t) M`` with ``M(0) = I``."""
    return frame(eta, t) @ exp_neg_itA(c, d, t)


def gauss_decompose(m, threshold=DEGENERACY_THRESHOLD):
    """Factor an SL(2, C) matrix as upper-unipotent * diagonal * lower-unipotent.

    Raises
    ------
    DegenerateDecomposition
        If ``|m[1, 1]| <= threshold``; the chart does not cover ``m``.
    ValueError
        If ``det(m)`` is not 1 within 1e-10.
    """
    m = np.asarray(m, dtype=complex)
    if abs(det2(m) - 1.0) > 1e-10:
        raise ValueError(f"matrix is not in SL(2, C): det = {det2(m)!r}")
    m22 = m[1, 1]
    if abs(m22) <= threshold:
        raise DegenerateDecomposition(f"|m22| = {abs(m22):.3g} <= {threshold:g}")
    return GaussFactors(upper=m[0, 1] / m22, diag=m22, lower=m[1, 0] / m22)
