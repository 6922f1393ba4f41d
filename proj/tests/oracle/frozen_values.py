"""Independent oracle for the frozen expected values used by the C++ tests.

Builds density matrices explicitly with numpy, applies measurements as
matrix products and minimizes over the Bloch sphere by dense grid search
followed by scipy Nelder-Mead. Shares no code with the library.
"""
import numpy as np
from scipy.optimize import minimize

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def entropy(rho):
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-15]
    return float(-(w * np.log2(w)).sum())


def bell(c):
    return 0.25 * (np.kron(I2, I2) + c[0] * np.kron(SX, SX) + c[1] * np.kron(SY, SY) + c[2] * np.kron(SZ, SZ))


def werner(z):
    psi = np.array([0, 1, -1, 0]) / np.sqrt(2)
    return z * np.outer(psi, psi) + (1 - z) / 4 * np.eye(4)


def pair(n, x):
    ns = n[0] * SX + n[1] * SY + n[2] * SZ
    p0, p1 = (I2 + ns) / 2, (I2 - ns) / 2
    if x is None:
        return p0, p1
    t = np.tanh(x)
    a, b = np.sqrt((1 - t) / 2), np.sqrt((1 + t) / 2)
    return a * p0 + b * p1, b * p0 + a * p1


def ptrace_b(r):
    return np.einsum("ijkj->ik", r.reshape(2, 2, 2, 2))


def ptrace_a(r):
    return np.einsum("ijil->jl", r.reshape(2, 2, 2, 2))


def objective(kind, rho, n, x):
    ops = pair(n, x)
    if kind in ("discord", "super"):
        tot = 0.0
        for P in ops:
            K = np.kron(I2, P)
            s = K @ rho @ K.conj().T
            p = np.trace(s).real
            if p > 1e-14:
                tot += p * entropy(ptrace_b(s) / p)
        return tot + entropy(ptrace_a(rho)) - entropy(rho)
    out = sum(np.kron(I2, P) @ rho @ np.kron(I2, P).conj().T for P in ops)
    return entropy(out) - entropy(rho)


def nvec(th, ph):
    return np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])


def minimize_measure(kind, rho, x):
    best = None
    for th in np.linspace(0, np.pi / 2, 25):
        for ph in np.linspace(0, 2 * np.pi, 48, endpoint=False):
            v = objective(kind, rho, nvec(th, ph), x)
            if best is None or v < best[0]:
                best = (v, th, ph)
    r = minimize(lambda q: objective(kind, rho, nvec(*q), x), [best[1], best[2]],
                 method="Nelder-Mead", options=dict(xatol=1e-10, fatol=1e-14, maxiter=4000))
    return min(r.fun, best[0])


def H(q):
    return -sum(v * np.log2(v) for v in (q, 1 - q) if v > 0)


if __name__ == "__main__":
    c = [0.3, -0.4, 0.56]
    print("eig bell c        ", sorted(np.linalg.eigvalsh(bell(c)), reverse=True))
    print("S(bell c)         ", repr(entropy(bell(c))))
    print("S_w cond e3 x=2.5 ", repr(objective("super", bell(c), nvec(0, 0), 2.5) - 1 + entropy(bell(c))))
    print("D werner z=1      ", repr(minimize_measure("discord", werner(1.0), None)))
    print("D werner z=0.5    ", repr(minimize_measure("discord", werner(0.5), None)))
    print("Dw werner z=1 x=2 ", repr(minimize_measure("super", werner(1.0), 2.0)))
    print("WD werner z=1 x=2 ", repr(minimize_measure("deficit", werner(1.0), 2.0)))
    print("D bell c          ", repr(minimize_measure("discord", bell(c), None)))
    print("Dw bell c x=2.5   ", repr(minimize_measure("super", bell(c), 2.5)))
    print("Def bell c        ", repr(minimize_measure("deficit", bell(c), None)))
    print("WD bell c x=1     ", repr(minimize_measure("deficit", bell(c), 1.0)))
    # Werner under phase flip, z=0.5, p=0.3: evolved Bell coefficients.
    q = (1 - 0.3) ** 2
    ev = bell([-q * 0.5, -q * 0.5, -0.5])
    print("ND werner .5 p.3  ", repr(minimize_measure("discord", ev, None)))
    print("NDw werner .5 p.3 x=2 ", repr(minimize_measure("super", ev, 2.0)))
    print("NWD werner .5 p.3 x=2 ", repr(minimize_measure("deficit", ev, 2.0)))
    print("weak-deficit z=1 p=1 x=2 ", repr(minimize_measure("deficit", bell([0, 0, -1.0]), 2.0)))
    t = np.tanh(2.0)
    print("Dw residual p=1 c3=.56 x=2.5 ", repr(H((1 + 0.56 * np.tanh(2.5)) / 2) - H((1 + 0.56) / 2)))
