"""High-precision reference implementations for validating the production kernel.

Everything here is computed from scratch at elevated working precision:
ascending power series for the Bessel family (Abramowitz & Stegun 9.1.10,
9.1.11, 9.6.10, 9.6.11) and tanh-sinh quadrature of the Clausen-type integral
representations for the polylogarithms on the unit circle.  mpmath is used
only as an arbitrary-precision float type; none of its special functions are
called, so agreement with the production code is a genuine two-route check.

The logarithmic series suffer heavy cancellation (the partial sums are as
large as e^x while K_m(x) itself is as small as e^-x), so every value is
recomputed at doubled working precision until two successive evaluations
agree to 25 digits.  That makes the oracle self-validating rather than
dependent on a cancellation estimate.
"""

import mpmath as mp

_MAX_TERMS = 20000
_AGREE_DIGITS = 25


def _converged(fn, start_dps):
    prev = fn(start_dps)
    dps = start_dps * 2
    for _ in range(8):
        cur = fn(dps)
        tol = mp.mpf(10) ** (-_AGREE_DIGITS)
        if prev == cur or abs(prev - cur) <= abs(cur) * tol:
            return cur
        prev, dps = cur, dps * 2
    raise ArithmeticError("series oracle failed to stabilize")


def _digamma_int(n):
    # psi(n) for integer n >= 1: -euler + H_{n-1}
    acc = -mp.euler
    for j in range(1, n):
        acc += mp.mpf(1) / j
    return acc


def oracle_j(m, x):
    """J_m(x) by the ascending power series, as an mpf."""
    m = int(m)
    sign = 1
    if m < 0:
        m = -m
        sign = -1 if m % 2 else 1

    def compute(dps):
        with mp.workdps(dps):
            xm = mp.mpf(x)
            if xm == 0:
                return mp.mpf(1 if m == 0 else 0)
            q = xm * xm / 4
            term = (xm / 2) ** m / mp.factorial(m)
            total = term
            largest = abs(term)
            for k in range(1, _MAX_TERMS):
                term = -term * q / (k * (m + k))
                total += term
                largest = max(largest, abs(term))
                if abs(term) < largest * mp.eps and k > float(x) / 2:
                    break
            return +(sign * total)

    return _converged(compute, 40 + int(0.5 * float(x)))


def oracle_y(m, x):
    """Y_m(x) for x > 0 by the logarithmic series (A&S 9.1.11)."""
    m = int(m)
    sign = 1
    if m < 0:
        m = -m
        sign = -1 if m % 2 else 1
    if x <= 0:
        raise ValueError("series oracle for Y_m needs x > 0")

    def compute(dps):
        with mp.workdps(dps):
            xm = mp.mpf(x)
            half = xm / 2
            q = xm * xm / 4
            # J_m(x) re-summed at this precision: the log term must cancel
            # against the psi tail far below the final Y_m magnitude
            jterm = half ** m / mp.factorial(m)
            jval = jterm
            jlarge = abs(jterm)
            for k in range(1, _MAX_TERMS):
                jterm = -jterm * q / (k * (m + k))
                jval += jterm
                jlarge = max(jlarge, abs(jterm))
                if abs(jterm) < jlarge * mp.eps and k > float(x) / 2:
                    break
            total = 2 / mp.pi * mp.log(half) * jval
            fin = mp.mpf(0)
            for k in range(m):
                fin += mp.factorial(m - k - 1) / mp.factorial(k) * q ** k
            total -= fin / (mp.pi * half ** m)
            base = mp.mpf(1) / mp.factorial(m)  # (-q)^k / (k! (m+k)!) at k = 0
            psi_a = _digamma_int(1)
            psi_b = _digamma_int(m + 1)
            tail = base * (psi_a + psi_b)
            largest = abs(tail)
            for k in range(1, _MAX_TERMS):
                base = -base * q / (k * (m + k))
                psi_a += mp.mpf(1) / k
                psi_b += mp.mpf(1) / (m + k)
                term = base * (psi_a + psi_b)
                tail += term
                largest = max(largest, abs(term))
                if abs(term) < largest * mp.eps and k > float(x) / 2:
                    break
            total -= half ** m / mp.pi * tail
            return +(sign * total)

    return _converged(compute, 40 + int(0.6 * float(x)) + m)


def oracle_i(m, x):
    """I_m(x) by the (all-positive) ascending series."""
    m = abs(int(m))

    def compute(dps):
        with mp.workdps(dps):
            xm = mp.mpf(x)
            if xm == 0:
                return mp.mpf(1 if m == 0 else 0)
            q = xm * xm / 4
            term = (xm / 2) ** m / mp.factorial(m)
            total = term
            for k in range(1, _MAX_TERMS):
                term = term * q / (k * (m + k))
                total += term
                if term < total * mp.eps:
                    break
            return +total

    return _converged(compute, 40)


def oracle_k(m, x):
    """K_m(x) for x > 0 by the logarithmic series (A&S 9.6.11)."""
    m = abs(int(m))
    if x <= 0:
        raise ValueError("series oracle for K_m needs x > 0")

    def compute(dps):
        with mp.workdps(dps):
            xm = mp.mpf(x)
            half = xm / 2
            q = xm * xm / 4
            fin = mp.mpf(0)
            for k in range(m):
                fin += mp.factorial(m - k - 1) / mp.factorial(k) * (-q) ** k
            total = fin / (2 * half ** m)
            # I_m(x) re-summed at this precision: for large x the log term is
            # ~e^x while K_m itself is ~e^-x, so a separately converged I with
            # only ~25 certified digits would poison every evaluation alike
            iterm = half ** m / mp.factorial(m)
            ival = iterm
            for k in range(1, _MAX_TERMS):
                iterm = iterm * q / (k * (m + k))
                ival += iterm
                if iterm < ival * mp.eps:
                    break
            total += (-1) ** (m + 1) * mp.log(half) * ival
            base = mp.mpf(1) / mp.factorial(m)
            psi_a = _digamma_int(1)
            psi_b = _digamma_int(m + 1)
            tail = base * (psi_a + psi_b)
            for k in range(1, _MAX_TERMS):
                base = base * q / (k * (m + k))
                psi_a += mp.mpf(1) / k
                psi_b += mp.mpf(1) / (m + k)
                term = base * (psi_a + psi_b)
                tail += term
                if abs(term) < abs(tail) * mp.eps and k > float(x):
                    break
            total += (-1) ** m * half ** m / 2 * tail
            return +total

    return _converged(compute, 50 + int(float(x)) + 2 * m)


def _reduce_phase(theta):
    twopi = 2 * mp.pi
    t = mp.mpf(theta) % twopi
    if t < 0:
        t += twopi
    return t


def oracle_li2_circle(theta):
    """Li_2(e^{i theta}) as an mpc.

    Real part is the Bernoulli closed form pi^2/6 - pi t/2 + t^2/4 on [0, 2pi];
    imaginary part is the Clausen integral -int_0^t ln(2 sin(u/2)) du.
    """
    with mp.workdps(60):
        t = _reduce_phase(theta)
        re = mp.pi ** 2 / 6 - mp.pi * t / 2 + t * t / 4
        if t == 0:
            return mp.mpc(re, 0)
        f = lambda u: mp.log(2 * mp.sin(u / 2))
        im = -mp.quad(f, [0, t / 2, t])
        return mp.mpc(re, im)


def oracle_li3_circle(theta):
    """Li_3(e^{i theta}) as an mpc.

    Imaginary part is the closed form t^3/12 - pi t^2/4 + pi^2 t/6; the real
    part integrates the Clausen kernel once more:
    Re Li_3 = zeta(3) + int_0^t (t - u) ln(2 sin(u/2)) du.
    """
    with mp.workdps(60):
        t = _reduce_phase(theta)
        im = t ** 3 / 12 - mp.pi * t * t / 4 + mp.pi ** 2 * t / 6
        if t == 0:
            return mp.mpc(mp.zeta(3), 0)
        f = lambda u: (t - u) * mp.log(2 * mp.sin(u / 2))
        re = mp.zeta(3) + mp.quad(f, [0, t / 2, t])
        return mp.mpc(re, im)


def bisect_root(f, lo, hi, iters=120):
    """Sign-change bisection at working precision; f maps mpf -> mpf."""
    with mp.workdps(40):
        a, b = mp.mpf(lo), mp.mpf(hi)
        fa = f(a)
        if fa == 0:
            return a
        for _ in range(iters):
            mid = (a + b) / 2
            fm = f(mid)
            if fm == 0:
                return mid
            if (fa < 0) == (fm < 0):
                a, fa = mid, fm
            else:
                b = mid
        return (a + b) / 2
