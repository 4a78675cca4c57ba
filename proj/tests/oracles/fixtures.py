"""Independent reference values frozen into the C++ tests.

Closed forms are evaluated directly, cubic roots come from a dense sign-change
scan followed by bisection, and the cooling steady state comes from SciPy's
continuous Lyapunov solver.  Run with `python3 fixtures.py`.
"""
import numpy as np
import scipy.linalg as sl

HBAR = 1.0545718e-34
C_LIGHT = 299792458.0

L, M, LAM = 1e-3, 1e-11, 794.98e-9
OMEGA_L = 2 * np.pi * C_LIGHT / LAM


def chi(wm):
    return (OMEGA_L / (wm * L)) * np.sqrt(HBAR / (M * wm))


def eps(ka, p):
    return np.sqrt(2 * ka * p / (HBAR * OMEGA_L))


def response(ka, da, j, gat, n, kc, gam, dc, dat):
    a1 = gat**2 * n + kc * gam - dc * dat
    a2 = dc * gam + kc * dat
    den = a1**2 + a2**2
    return a1, a2, ka + j**2 * (gam * a1 + dat * a2) / den, da + j**2 * (dat * a1 - gam * a2) / den


def scan_roots(f, lo, hi, step):
    xs = np.arange(lo, hi + step, step)
    v = f(xs)
    out = []
    for i in np.nonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)[0]:
        a, b = xs[i], xs[i + 1]
        for _ in range(200):
            mid = 0.5 * (a + b)
            if np.sign(f(a)) * np.sign(f(mid)) <= 0:
                b = mid
            else:
                a = mid
        out.append(0.5 * (a + b))
    return out


def cooling_system(flip, j, G):
    d, dc, dat = flip * 1.0, flip * 1.0, flip * 100.0
    ka, kc, ga, gm, g_, nth = 100.0, 1.0, 1000.0, 1e-5, 0.1, 1e4
    U = np.zeros((4, 4), complex)
    V = np.zeros((4, 4), complex)
    U[0, 0] = -(ka + 1j * d); U[0, 1] = 1j * G; U[0, 2] = -1j * j; V[0, 1] = 1j * G
    U[1, 1] = -(gm / 2 + 1j); U[1, 0] = 1j * G; V[1, 0] = 1j * G
    U[2, 2] = -(kc + 1j * dc); U[2, 0] = -1j * j; U[2, 3] = -1j * g_
    U[3, 3] = -(ga + 1j * dat); U[3, 2] = -1j * g_
    Mx = np.block([[U, V], [V.conj(), U.conj()]])
    Dx = np.diag([2 * ka, gm * (nth + 1), 2 * kc, 2 * ga, 0, gm * nth, 0, 0]).astype(complex)
    return Mx, Dx


def main():
    print("== param-model (angular convention, omega_m = 1e7 rad/s)")
    wm = 1e7
    print("omega_L", repr(OMEGA_L))
    print("chi", repr(chi(wm)))
    print("chi ordinary", repr(chi(2 * np.pi * 1e7)))
    print("eps(7uW)", repr(eps(0.1 * wm, 7e-6)))
    gam = 2 * np.pi * 2.875e6
    gat = 2 * np.pi * 1e3
    a1, a2, kn, dn = response(0.1 * wm, wm, wm, gat, 1e8, 0.1 * wm, gam, wm, 0.0)
    print("feedback set dat=0: A1", repr(a1), "A2", repr(a2), "k_new", repr(kn), "delta_new", repr(dn))
    z = 0.1 * wm + 1j * wm + gat**2 * 1e8 / (gam + 0j)
    cs = -1j * wm * 1.0 / z
    sig = -1j * gat * cs * 1e8 / (gam + 0j)
    print("feedback set c_S", repr(cs), "|c_S|", repr(abs(cs)), "sigma12", repr(sig), "|sigma|", repr(abs(sig)))

    print("== dimensionless cubic: x(0.01 + (1-x)^2) = 0.05")
    f = lambda x: x * (0.01 + (1 - x) ** 2) - 0.05
    print("roots", [repr(r) for r in scan_roots(f, 0.0, 3.0, 1e-5)])
    nm = (2 - np.sqrt(0.97)) / 3
    npl = (2 + np.sqrt(0.97)) / 3
    g = lambda x: x * (0.01 + (1 - x) ** 2)
    print("n_minus", repr(nm), "drive_sq_high", repr(g(nm)))
    print("n_plus", repr(npl), "drive_sq_low", repr(g(npl)))
    # root-count scan across drive levels brackets the window edges
    ys = np.linspace(0.0, 0.2, 20001)
    xs = np.arange(0.0, 3.0, 1e-4)
    gx = g(xs)
    counts = [np.count_nonzero(np.diff(np.sign(gx - y)) != 0) for y in ys]
    three = [y for y, c in zip(ys, counts) if c == 3]
    print("three-root drive range by scan", repr(min(three)), repr(max(three)))

    print("== threshold power, bare cavity set")
    for conv, w in (("angular", 1e7), ("ordinary", 2 * np.pi * 1e7)):
        s = w * chi(w) ** 2
        ka, da = 0.1 * w, w
        nth = (2 * da - np.sqrt(da**2 - 3 * ka**2)) / (3 * s)
        pth = HBAR * OMEGA_L / (2 * ka) * nth * (ka**2 + (da - s * nth) ** 2)
        print(conv, "n_th", repr(nth), "P_th", repr(pth))

    print("== cooling, hybrid set with detunings read as omega_L - omega")
    for flip in (1.0, -1.0):
        Mx, Dx = cooling_system(flip, 200.0, 50.0)
        ev = np.linalg.eigvals(Mx)
        print("flip", flip, "abscissa", repr(ev.real.max()))
        if ev.real.max() < 0:
            S = sl.solve_continuous_lyapunov(Mx, -Dx)
            print("   n_b", repr(S[5, 5].real), "n_a", repr(S[4, 4].real), "n_c", repr(S[6, 6].real), "n_d", repr(S[7, 7].real))

    # exact transient: C(t) = e^{Mt} (C0 - C_inf) e^{M^H t} + C_inf
    Mx, Dx = cooling_system(-1.0, 200.0, 50.0)
    S = sl.solve_continuous_lyapunov(Mx, -Dx)
    C0 = np.diag([1, 1 + 1e4, 1, 1, 0, 1e4, 0, 0]).astype(complex)
    for t in (100.0, 1000.0, 5000.0):
        E = sl.expm(Mx * t)
        Ct = E @ (C0 - S) @ E.conj().T + S
        print("transient t", t, "n_b", repr(Ct[5, 5].real))

    print("== detached feedback cavity, J = 0")
    for G in (0.1, 50.0):
        Mx, Dx = cooling_system(-1.0, 0.0, G)
        ev = np.linalg.eigvals(Mx)
        print("G", G, "abscissa", repr(ev.real.max()))
        if ev.real.max() < 0:
            S = sl.solve_continuous_lyapunov(Mx, -Dx)
            print("   n_b", repr(S[5, 5].real), "gamma_eff", repr(2 * abs(ev.real.max())))

if __name__ == "__main__":
    main()
