"""Reference values for the unit tests.

Generic dense numerics only: no X-state closed forms.
Usage: python3 generate.py > ../unit/oracle_values.hpp
"""
import numpy as np
from scipy import linalg, optimize

np.set_printoptions(precision=17)

SX = np.array([[0, 1], [1, 0]], complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)


def H2(p):
    return 0.0 if p <= 0 or p >= 1 else float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def S(rho):
    ev = np.linalg.eigvalsh(rho)
    ev = ev[ev > 1e-300]
    return float(-(ev * np.log2(ev)).sum())


def ptrace(rho, keep):
    r = rho.reshape(2, 2, 2, 2)
    return np.einsum("ijkj->ik", r) if keep == 0 else np.einsum("ijil->jl", r)


def concurrence(rho):
    yy = np.kron(SY, SY)
    sr = linalg.sqrtm(rho)
    m = sr @ yy @ rho.conj() @ yy @ sr
    lam = np.sqrt(np.clip(np.sort(np.linalg.eigvals(m).real)[::-1], 0, None))
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def eof(c):
    return H2((1 + np.sqrt(1 - c * c)) / 2) if c > 0 else 0.0


def proj(n):
    p = (I2 + n[0] * SX + n[1] * SY + n[2] * SZ) / 2
    return [p, I2 - p]


def mid(rho):
    ops = []
    for keep in (0, 1):
        w, v = np.linalg.eigh(ptrace(rho, keep))
        ops.append([np.outer(v[:, k], v[:, k].conj()) for k in range(2)])
    out = np.zeros_like(rho)
    for P in ops[0]:
        for Q in ops[1]:
            K = np.kron(P, Q)
            out += K @ rho @ K
    mi = S(ptrace(rho, 0)) + S(ptrace(rho, 1)) - S(rho)
    mc = S(ptrace(out, 0)) + S(ptrace(out, 1)) - S(out)
    return mi - mc


def cond_entropy(rho, th, ph):
    n = [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)]
    tot = 0.0
    for P in proj(n):
        K = np.kron(P, I2)
        r = K @ rho @ K
        p = np.trace(r).real
        if p > 1e-15:
            tot += p * S(ptrace(r / p, 1))
    return tot


def qd(rho):
    best = (1e9, 0, 0)
    for th in np.linspace(0, np.pi, 61):
        for ph in np.linspace(0, 2 * np.pi, 121):
            v = cond_entropy(rho, th, ph)
            if v < best[0]:
                best = (v, th, ph)
    res = optimize.minimize(lambda x: cond_entropy(rho, x[0], x[1]), best[1:], method="Nelder-Mead",
                            options=dict(xatol=1e-12, fatol=1e-15, maxiter=20000))
    c = min(best[0], res.fun)
    return S(ptrace(rho, 0)) - S(rho) + c


def gmqd(rho):
    pa = [SX, SY, SZ]
    x = np.array([np.trace(rho @ np.kron(s, I2)).real for s in pa])
    R = np.array([[np.trace(rho @ np.kron(s, t)).real for t in pa] for s in pa])
    K = np.outer(x, x) + R @ R.T
    return 0.25 * (x @ x + np.sum(R * R) - np.linalg.eigvalsh(K)[-1])


def rates(r):
    x = 2 * np.pi * r
    g = 1.5 * (np.sin(x) / x + np.cos(x) / x**2 - np.sin(x) / x**3)
    o = 0.75 * (np.sin(x) / x**2 + np.cos(x) / x**3 - np.cos(x) / x)
    return g, o


def lindblad_state(a2, r, gt):
    """Dense matrix exponential of the vectorised generator."""
    g12, o12 = rates(r)
    lo = np.array([[0, 0], [1, 0]], complex)
    L = [np.kron(lo, I2), np.kron(I2, lo)]
    Hm = o12 * (L[0].conj().T @ L[1] + L[1].conj().T @ L[0])
    G = [[1.0, g12], [g12, 1.0]]
    I4 = np.eye(4)
    sup = -1j * (np.kron(Hm, I4) - np.kron(I4, Hm.T))
    for i in range(2):
        for j in range(2):
            A = L[i].conj().T @ L[j]
            sup += G[i][j] * (np.kron(L[j], L[i].conj()) - 0.5 * np.kron(A, I4) - 0.5 * np.kron(I4, A.T))
    psi = np.zeros(4, complex)
    psi[0] = np.sqrt(a2)
    psi[3] = np.sqrt(1 - a2)
    rho0 = np.outer(psi, psi.conj())
    return (linalg.expm(sup * gt) @ rho0.reshape(16)).reshape(4, 4)


def werner(a2, p):
    psi = np.zeros(4, complex)
    psi[0] = np.sqrt(a2)
    psi[3] = np.sqrt(1 - a2)
    return p * np.outer(psi, psi.conj()) + (1 - p) * np.eye(4) / 4


def witness(rho):
    yy = np.kron(SY, SY)
    sr = linalg.sqrtm(rho)
    lam = np.sqrt(np.clip(np.sort(np.linalg.eigvals(sr @ yy @ rho.conj() @ yy @ sr).real)[::-1], 0, None))
    return lam[0] - lam[1] - lam[2] - lam[3]


def emit(name, rho):
    c = concurrence(rho)
    vals = dict(concurrence=c, eof=eof(c), mid=mid(rho), qd=qd(rho), gmqd=gmqd(rho))
    print(f"// {name}")
    print(f"inline constexpr Expected k{name}{{" + ", ".join(f"{v:.16g}" for v in vals.values()) + "};")


def matrix_literal(name, m):
    m = (m + m.conj().T) / 2
    m = np.where(abs(m.real) < 1e-16, 0, m.real) + 1j * np.where(abs(m.imag) < 1e-16, 0, m.imag)
    print(f"inline const std::array<cplx, 16> k{name}Entries{{")
    for i in range(4):
        print("    " + ", ".join(f"cplx({m[i, j].real:.17g}, {m[i, j].imag:.17g})" for j in range(4)) + ",")
    print("};")


if __name__ == "__main__":
    print("// Generated by tests/oracle/generate.py; do not edit.")
    print("#pragma once\n\n#include <array>\n\n#include \"qcorr/linalg.hpp\"\n")
    print("namespace oracle {\n\nusing qcorr::cplx;\n")
    print("struct Expected {\n  double concurrence, eof, mid, qd, gmqd;\n};\n")
    print(f"inline constexpr double kH09 = {H2(0.9):.17g};")
    print(f"inline constexpr double kEofHalf = {eof(0.5):.17g};")
    for r in (0.3, 0.6737, 1.5):
        g, o = rates(r)
        print(f"// r = {r}: gamma12, Omega12\ninline constexpr double kRates_{str(r).replace('.', '_')}[2]{{{g:.17g}, {o:.17g}}};")

    rho = lindblad_state(0.9, 0.6737, 0.35)
    matrix_literal("Trajectory035", rho)
    emit("Trajectory035", rho)
    emit("Werner", werner(0.5, 0.65))

    rng = np.random.default_rng(7)
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    gen = A @ A.conj().T
    gen /= np.trace(gen).real
    matrix_literal("Generic", gen)
    emit("Generic", gen)

    # Entanglement boundaries on the 0.9 trajectory.
    w = lambda t: witness(lindblad_state(0.9, 0.6737, t))
    esd = optimize.brentq(w, 0.3, 0.6, xtol=1e-13)
    revival = optimize.brentq(w, 4.0, 5.5, xtol=1e-13)
    print(f"inline constexpr double kEsdTime = {esd:.15g};\ninline constexpr double kRevivalStart = {revival:.15g};")

    # Branch switches: sign of Re rho23 and the k_max ordering.
    re23 = lambda t: lindblad_state(0.9, 0.6737, t)[1, 2].real
    print(f"inline constexpr double kPhiFlip = {optimize.brentq(re23, 1.0, 2.5, xtol=1e-13):.15g};")

    def k_gap(t):
        m = lindblad_state(0.9, 0.6737, t)
        k1 = 4 * (abs(m[0, 3]) + abs(m[1, 2])) ** 2
        x3 = np.trace(m @ np.kron(SZ, I2)).real
        t33 = np.trace(m @ np.kron(SZ, SZ)).real
        return k1 - (x3**2 + t33**2)

    print(f"inline constexpr double kGmqdSwitch1 = {optimize.brentq(k_gap, 0.05, 0.5, xtol=1e-13):.15g};")
    print(f"inline constexpr double kGmqdSwitch2 = {optimize.brentq(k_gap, 0.5, 1.5, xtol=1e-13):.15g};")
    print("\n}  // namespace oracle")
