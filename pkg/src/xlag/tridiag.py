"""Symmetric tridiagonal eigenproblem by the implicit-shift QL iteration."""

import math

import numpy as np

from .errors import EngineError

_EPS = 2.0 ** -52


def tridiagonal_eigh(diag, offdiag, max_iter=30):
    """Eigenvalues and first eigenvector components of a symmetric tridiagonal matrix.

    ``offdiag[i]`` couples rows i and i+1.  Returns ``(values, first)`` sorted
    ascending, where ``first[j]`` is the first component of the normalised
    eigenvector for ``values[j]`` (sign not normalised).  Only the first row
    of the accumulated rotations is tracked, which is all Golub-Welsch needs.

    Raises EngineError if an eigenvalue needs more than ``max_iter`` sweeps.
    """
    d = [float(v) for v in diag]
    n = len(d)
    if len(offdiag) != max(n - 1, 0):
        raise ValueError("offdiag must have length len(diag) - 1")
    e = [float(v) for v in offdiag] + [0.0]
    z = [0.0] * n
    if n:
        z[0] = 1.0

    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= _EPS * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise EngineError(f"QL iteration did not converge for eigenvalue {l}")
            it += 1
            # Wilkinson-type shift from the leading 2x2 block
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # deflation inside the sweep
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
                i -= 1
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0

    order = np.argsort(d, kind="stable")
    return np.asarray(d)[order], np.asarray(z)[order]
