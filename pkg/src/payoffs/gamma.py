"""Principal-branch complex log-Gamma."""
import numpy as np
from scipy.special import loggamma

from src.exceptions import PoleError


def log_gamma(z):
    """log Gamma(z) on the principal branch, reflection handled by scipy.

    Args:
        z: Complex scalar or array

    Raises:
        PoleError: If any entry is a non-positive integer
    """
    z = np.asarray(z, dtype=complex)
    at_pole = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if np.any(at_pole):
        raise PoleError(f"log_gamma has a pole at {z[at_pole].ravel()[0].real:g}")
    result = loggamma(z)
    return result if result.ndim else complex(result)
