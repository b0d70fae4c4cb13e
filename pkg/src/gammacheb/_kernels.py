"""float64 batch-evaluation kernels.

The jitted variants are compiled when numba is importable and the
GAMMACHEB_NO_NUMBA environment variable is unset; otherwise the vectorized
numpy implementations serve every call.  ``clenshaw_batch`` and
``eval_kind_batch`` always point at the selected path; the per-backend
functions stay exposed for benchmarking.

Kind codes: 0 gamma, 1 invgamma, 2 lngamma, 3 psi0, 4 polygamma (order m).
Arguments z <= 0 yield NaN on this path; the precise evaluator raises.
"""

import math
import os

import numpy as np

LN_SQRT_2PI = 0.9189385332046727

GAMMA_CODE = 0
INVGAMMA_CODE = 1
LNGAMMA_CODE = 2
PSI0_CODE = 3
POLYGAMMA_CODE = 4


def _flag_disabled():
    return os.environ.get("GAMMACHEB_NO_NUMBA", "").strip().lower() in (
        "1", "true", "yes", "on")


def clenshaw_batch_numpy(coeffs, x):
    """Clenshaw recurrence over an array of points in [0, 1]."""
    t = 4.0 * x - 2.0
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for r in range(len(coeffs) - 1, 0, -1):
        b1, b2 = t * b1 - b2 + coeffs[r], b1
    b0 = t * b1 - b2 + coeffs[0]
    return 0.5 * (b0 - b2)


def eval_kind_batch_numpy(code, order, coeffs, z):
    out = np.full(z.shape, np.nan)
    ok = z > 0.0
    if not ok.any():
        return out
    zv = z[ok]
    shift = zv < 1.0
    w = np.where(shift, zv + 1.0, zv)
    s = clenshaw_batch_numpy(coeffs, 1.0 / w)
    if code == GAMMA_CODE:
        v = np.exp(LN_SQRT_2PI + (w - 0.5) * np.log(w) - w) * s
        v = np.where(shift, v / zv, v)
    elif code == INVGAMMA_CODE:
        v = np.exp(-(LN_SQRT_2PI + (w - 0.5) * np.log(w) - w)) * s
        v = np.where(shift, v * zv, v)
    elif code == LNGAMMA_CODE:
        v = LN_SQRT_2PI + (w - 0.5) * np.log(w) - w + s
        v = np.where(shift, v - np.log(zv), v)
    elif code == PSI0_CODE:
        v = np.log(w) + s
        v = np.where(shift, v - 1.0 / zv, v)
    else:
        fact = math.gamma(order + 1.0)
        sign = -1.0 if order % 2 == 0 else 1.0
        v = np.where(shift, s + sign * fact / zv ** (order + 1), s)
    out[ok] = v
    return out


HAVE_NUMBA = False
if not _flag_disabled():
    try:
        from numba import njit
        HAVE_NUMBA = True
    except ImportError:
        pass

if HAVE_NUMBA:

    @njit(cache=True)
    def clenshaw_batch_numba(coeffs, x):
        out = np.empty_like(x)
        n = coeffs.shape[0]
        for i in range(x.shape[0]):
            t = 4.0 * x[i] - 2.0
            b1 = 0.0
            b2 = 0.0
            for r in range(n - 1, 0, -1):
                b0 = t * b1 - b2 + coeffs[r]
                b2 = b1
                b1 = b0
            b0 = t * b1 - b2 + coeffs[0]
            out[i] = 0.5 * (b0 - b2)
        return out

    @njit(cache=True)
    def eval_kind_batch_numba(code, order, coeffs, z):
        n = coeffs.shape[0]
        fact = math.gamma(order + 1.0)
        sign = -1.0 if order % 2 == 0 else 1.0
        out = np.empty_like(z)
        for i in range(z.shape[0]):
            zi = z[i]
            if not zi > 0.0:
                out[i] = np.nan
                continue
            shifted = zi < 1.0
            w = zi + 1.0 if shifted else zi
            t = 4.0 / w - 2.0
            b1 = 0.0
            b2 = 0.0
            for r in range(n - 1, 0, -1):
                b0 = t * b1 - b2 + coeffs[r]
                b2 = b1
                b1 = b0
            s = 0.5 * ((t * b1 - b2 + coeffs[0]) - b2)
            if code == 0:
                v = math.exp(LN_SQRT_2PI + (w - 0.5) * math.log(w) - w) * s
                if shifted:
                    v /= zi
            elif code == 1:
                v = math.exp(-(LN_SQRT_2PI + (w - 0.5) * math.log(w) - w)) * s
                if shifted:
                    v *= zi
            elif code == 2:
                v = LN_SQRT_2PI + (w - 0.5) * math.log(w) - w + s
                if shifted:
                    v -= math.log(zi)
            elif code == 3:
                v = math.log(w) + s
                if shifted:
                    v -= 1.0 / zi
            else:
                v = s
                if shifted:
                    v += sign * fact / zi ** (order + 1)
            out[i] = v
        return out

    clenshaw_batch = clenshaw_batch_numba
    eval_kind_batch = eval_kind_batch_numba
else:
    clenshaw_batch = clenshaw_batch_numpy
    eval_kind_batch = eval_kind_batch_numpy
