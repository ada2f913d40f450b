"""Unitary commutator-free Magnus propagation kernel (numba).

Each step applies two matrix exponentials of weighted Hamiltonian averages
evaluated at the 2-point Gauss-Legendre nodes (the 4th-order CF4 scheme of
Blanes & Moan).  Both factors are exponentials of anti-Hermitian matrices,
applied to the state with a Taylor series run to machine precision, so
every accepted step is unitary up to roundoff; norm drift stays at the
1e-13 level no matter how loose the accuracy tolerances are.  Step size is
controlled by doubling: one full CF4 step against two half steps, scaled
RMS error against atol + rtol * |c|.

The Hamiltonian structure is hardcoded for speed: real diagonal
[delta + om43 + chirp*u, delta + om43 + om21 + chirp*u, 0, om43] with a
uniform ground-excited coupling rabi(t)/2 (levels 1,2 to levels 3,4), and
the 3-level variant [delta + chirp*u, delta + om21 + chirp*u, 0] with the
same coupling to the single excited level.  The propagator equation is
i dc/dt = 2*pi * M(t) * c (entries of M in GHz, t in ns).
"""

import math

import numba
import numpy as np

TWO_PI = 2.0 * math.pi

STATUS_OK = 0
STATUS_STEP_UNDERFLOW = 1
STATUS_NORM_DRIFT = 2

# Gauss-Legendre nodes (offsets from step start, in units of h) and the
# CF4 exponential weights 1/4 +/- sqrt(3)/6.
_SQRT3 = math.sqrt(3.0)
_NODE1 = 0.5 - _SQRT3 / 6.0
_NODE2 = 0.5 + _SQRT3 / 6.0
_WPLUS = 0.25 + _SQRT3 / 6.0
_WMINUS = 0.25 - _SQRT3 / 6.0

# Taylor cutoff: terms are added until they stop changing the sum, with a
# hard iteration cap; the per-exponential angle is kept small by the step
# caps so ~15 terms reach 1e-16 relative truncation.
_TAYLOR_MAX = 24
_THETA_CAP = 0.35


@numba.njit(inline="always", cache=True)
def _diag_at(u, n, om21, om43, delta, chirp):
    """Diagonal entries (GHz) at u = t - t_peak; level 3 is the zero."""
    ramp = delta + chirp * u
    if n == 4:
        return ramp + om43, ramp + om43 + om21, 0.0, om43
    return ramp, ramp + om21, 0.0, 0.0


@numba.njit(inline="always", cache=True)
def _apply_exp(n, d1, d2, d4, g, scale, c, work, term):
    """c <- exp(-1j * scale * B) @ c for B = diag + uniform coupling.

    B has diagonal (d1, d2, 0[, d4]) and coupling g between each ground
    level (1, 2) and each excited level (3[, 4]).  scale carries the
    2*pi*h factor.  Taylor series on the vector; returns the term count.
    """
    for i in range(n):
        work[i] = c[i]
        term[i] = c[i]
    z = -1j * scale
    for k in range(1, _TAYLOR_MAX + 1):
        zk = z / k
        if n == 4:
            e0 = term[2] + term[3]
            e1 = term[2] + term[3]
            g0 = term[0] + term[1]
            t0 = zk * (d1 * term[0] + g * e0)
            t1 = zk * (d2 * term[1] + g * e1)
            t2 = zk * (g * g0)
            t3 = zk * (g * g0 + d4 * term[3])
            term[0] = t0
            term[1] = t1
            term[2] = t2
            term[3] = t3
        else:
            t0 = zk * (d1 * term[0] + g * term[2])
            t1 = zk * (d2 * term[1] + g * term[2])
            t2 = zk * (g * (term[0] + term[1]))
            term[0] = t0
            term[1] = t1
            term[2] = t2
        grow = 0.0
        base = 0.0
        for i in range(n):
            work[i] = work[i] + term[i]
            grow += abs(term[i].real) + abs(term[i].imag)
            base += abs(work[i].real) + abs(work[i].imag)
        if grow <= 1e-17 * base:
            break
    for i in range(n):
        c[i] = work[i]
    return 0


@numba.njit(inline="always", cache=True)
def _cf4_step(
    n, om21, om43, delta, chirp, t_peak, tau0, rabi_peak, t, h, c, work, term
):
    """One CF4 step of size h starting at t, applied in place to c."""
    u1 = t + _NODE1 * h - t_peak
    u2 = t + _NODE2 * h - t_peak
    a1, b1, z1, d41 = _diag_at(u1, n, om21, om43, delta, chirp)
    a2, b2, z2, d42 = _diag_at(u2, n, om21, om43, delta, chirp)
    g1 = 0.5 * rabi_peak * math.exp(-(u1 / tau0) ** 2)
    g2 = 0.5 * rabi_peak * math.exp(-(u2 / tau0) ** 2)
    scale = TWO_PI * h
    # first factor: heavier weight on the earlier node
    _apply_exp(
        n,
        _WPLUS * a1 + _WMINUS * a2,
        _WPLUS * b1 + _WMINUS * b2,
        _WPLUS * d41 + _WMINUS * d42,
        _WPLUS * g1 + _WMINUS * g2,
        scale,
        c,
        work,
        term,
    )
    # second factor: heavier weight on the later node
    _apply_exp(
        n,
        _WMINUS * a1 + _WPLUS * a2,
        _WMINUS * b1 + _WPLUS * b2,
        _WMINUS * d41 + _WPLUS * d42,
        _WMINUS * g1 + _WPLUS * g2,
        scale,
        c,
        work,
        term,
    )


@numba.njit(cache=True, nogil=True)
def propagate_cf4(
    n,
    om21,
    om43,
    delta,
    chirp,
    t_peak,
    tau0,
    rabi_peak,
    t0,
    t1,
    c0,
    t_eval,
    rtol,
    atol,
    max_step,
    norm_tol,
):
    """Propagate c0 from t0 to t1, landing exactly on every t_eval point.

    Returns (samples, c_final, max_drift, status, t_fail, n_steps) where
    samples[k] is the state at t_eval[k].  t_eval must be increasing with
    t_eval[0] == t0 and t_eval[-1] == t1.
    """
    n_out = t_eval.shape[0]
    samples = np.zeros((n_out, n), dtype=np.complex128)
    c = c0.astype(np.complex128).copy()
    ctry = np.zeros(n, dtype=np.complex128)
    chalf = np.zeros(n, dtype=np.complex128)
    work = np.zeros(n, dtype=np.complex128)
    term = np.zeros(n, dtype=np.complex128)
    for i in range(n):
        samples[0, i] = c[i]

    # keep each exponential's rotation angle small enough for the Taylor
    # series: bound the spectral radius by the largest |diagonal| + coupling
    span = abs(t1 - t0)
    edge = max(abs(t0 - t_peak), abs(t1 - t_peak))
    fmax = abs(delta) + om21 + om43 + abs(chirp) * edge + rabi_peak
    h_theta = _THETA_CAP / (TWO_PI * fmax) if fmax > 0.0 else span
    h_cap = min(max_step, h_theta)
    h_min = max(span, abs(t0), abs(t1)) * 1e-14

    max_drift = 0.0
    status = STATUS_OK
    t_fail = t0
    n_steps = 0
    h = h_cap

    for k in range(n_out - 1):
        t = t_eval[k]
        t_end = t_eval[k + 1]
        while t < t_end:
            rem = t_end - t
            if rem <= h_min:
                # within roundoff of the boundary; nothing left to integrate
                t = t_end
                break
            last = False
            if h >= rem:
                h = rem
                last = True
            if h < h_min:
                status = STATUS_STEP_UNDERFLOW
                t_fail = t
                break
            # full step against two half steps
            for i in range(n):
                ctry[i] = c[i]
                chalf[i] = c[i]
            _cf4_step(
                n, om21, om43, delta, chirp, t_peak, tau0, rabi_peak, t, h, ctry, work, term
            )
            hh = 0.5 * h
            _cf4_step(
                n, om21, om43, delta, chirp, t_peak, tau0, rabi_peak, t, hh, chalf, work, term
            )
            _cf4_step(
                n, om21, om43, delta, chirp, t_peak, tau0, rabi_peak, t + hh, hh, chalf, work, term
            )
            err = 0.0
            for i in range(n):
                mag = abs(chalf[i])
                if abs(ctry[i]) > mag:
                    mag = abs(ctry[i])
                scale = atol + rtol * mag
                diff = abs(ctry[i] - chalf[i])
                err += (diff / scale) ** 2
            err = math.sqrt(err / n)
            if err <= 1.0:
                t = t_end if last else t + h
                for i in range(n):
                    c[i] = chalf[i]
                n_steps += 1
                nrm = 0.0
                for i in range(n):
                    nrm += c[i].real ** 2 + c[i].imag ** 2
                drift = abs(nrm - 1.0)
                if drift > max_drift:
                    max_drift = drift
                if drift > norm_tol:
                    status = STATUS_NORM_DRIFT
                    t_fail = t
                    break
                if err > 0.0:
                    factor = 0.9 * err ** -0.2
                    if factor > 5.0:
                        factor = 5.0
                else:
                    factor = 5.0
                h *= factor
                if h > h_cap:
                    h = h_cap
            else:
                factor = 0.9 * err ** -0.2
                if factor < 0.2:
                    factor = 0.2
                h *= factor
        if status != STATUS_OK:
            break
        for i in range(n):
            samples[k + 1, i] = c[i]

    if status == STATUS_OK:
        for i in range(n):
            samples[n_out - 1, i] = c[i]
    return samples, c, max_drift, status, t_fail, n_steps
