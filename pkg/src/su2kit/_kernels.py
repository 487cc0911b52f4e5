"""Compiled inner loops for group convolution.

Falls back to vectorized numpy when numba is unavailable; the numba path
is the default and is required for full-grid convolutions at desk scale.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except Exception:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True, fastmath=True)
def conv_central(qv, cv, table, qout, out):
    """out[o] = sum_v cv[v] * table(dot(qv[v], qout[o])).

    ``table`` samples the central right factor B as a function of
    w = Re(v^-1 u) = <v, u> on a uniform grid over [-1, 1]; linear
    interpolation in w.  ``cv`` carries weight * A(v).
    """
    n_tab = table.shape[0]
    scale = 0.5 * (n_tab - 1)
    for o in range(qout.shape[0]):
        uw = qout[o, 0]
        ux = qout[o, 1]
        uy = qout[o, 2]
        uz = qout[o, 3]
        acc = complex(0.0, 0.0)
        for v in range(qv.shape[0]):
            w = qv[v, 0] * uw + qv[v, 1] * ux + qv[v, 2] * uy + qv[v, 3] * uz
            t = (w + 1.0) * scale
            if t <= 0.0:
                acc += cv[v] * table[0]
            elif t >= n_tab - 1:
                acc += cv[v] * table[n_tab - 1]
            else:
                i = int(t)
                fr = t - i
                acc += cv[v] * ((1.0 - fr) * table[i] + fr * table[i + 1])
        out[o] = acc


@njit(cache=True, fastmath=True)
def conv_general(qv, cv, table, qout, out):
    """out[o] = sum_v cv[v] * B(v^-1 u_o) with B trilinearly interpolated.

    ``table`` has shape (nk, nc, nf): uniform in k over [0, 2*pi], in
    cos(theta) over [-1, 1], and periodic uniform in phi over [0, 2*pi).
    """
    nk, nc, nf = table.shape
    two_pi = 2.0 * math.pi
    sk = (nk - 1) / two_pi
    sc = 0.5 * (nc - 1)
    sf = nf / two_pi
    for o in range(qout.shape[0]):
        uw = qout[o, 0]
        ux = qout[o, 1]
        uy = qout[o, 2]
        uz = qout[o, 3]
        acc = complex(0.0, 0.0)
        for v in range(qv.shape[0]):
            a = qv[v, 0]
            b = -qv[v, 1]
            c = -qv[v, 2]
            d = -qv[v, 3]
            # Hamilton product (conj v) * u
            w = a * uw - b * ux - c * uy - d * uz
            x = a * ux + b * uw + c * uz - d * uy
            y = a * uy - b * uz + c * uw + d * ux
            z = a * uz + b * uy - c * ux + d * uw
            if w > 1.0:
                w = 1.0
            elif w < -1.0:
                w = -1.0
            k = 2.0 * math.acos(w)
            s = math.sqrt(x * x + y * y + z * z)
            if s < 1e-14:
                ct = 1.0
                phi = 0.0
            else:
                ct = z / s
                if ct > 1.0:
                    ct = 1.0
                elif ct < -1.0:
                    ct = -1.0
                phi = math.atan2(y, x)
                if phi < 0.0:
                    phi += two_pi
            tk = k * sk
            ik = int(tk)
            if ik >= nk - 1:
                ik = nk - 2
            fk = tk - ik
            tc = (ct + 1.0) * sc
            ic = int(tc)
            if ic >= nc - 1:
                ic = nc - 2
            fc = tc - ic
            tf = phi * sf
            jf = int(tf)
            ff = tf - jf
            jf0 = jf % nf
            jf1 = (jf + 1) % nf
            b00 = (1.0 - ff) * table[ik, ic, jf0] + ff * table[ik, ic, jf1]
            b01 = (1.0 - ff) * table[ik, ic + 1, jf0] + ff * table[ik, ic + 1, jf1]
            b10 = (1.0 - ff) * table[ik + 1, ic, jf0] + ff * table[ik + 1, ic, jf1]
            b11 = (
                (1.0 - ff) * table[ik + 1, ic + 1, jf0]
                + ff * table[ik + 1, ic + 1, jf1]
            )
            bval = (1.0 - fk) * ((1.0 - fc) * b00 + fc * b01) + fk * (
                (1.0 - fc) * b10 + fc * b11
            )
            acc += cv[v] * bval
        out[o] = acc


def conv_central_numpy(qv, cv, table, qout, out):  # pragma: no cover
    n_tab = table.shape[0]
    wgrid = np.linspace(-1.0, 1.0, n_tab)
    for o in range(qout.shape[0]):
        w = np.clip(qv @ qout[o], -1.0, 1.0)
        vals = np.interp(w, wgrid, table.real) + 1j * np.interp(
            w, wgrid, table.imag
        )
        out[o] = np.dot(cv, vals)


if not _HAVE_NUMBA:  # pragma: no cover
    conv_central = conv_central_numpy
