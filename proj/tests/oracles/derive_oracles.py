"""Independent reference values for the C++ tests.

Everything here is computed from first principles with sympy/mpmath/scipy,
without touching the C++ code. Run it to regenerate ../oracle_values.hpp.
"""
import sys
import mpmath as mp
import sympy as sp
from scipy import stats

mp.mp.dps = 40
s = sp.symbols("s")
LF, LR = sp.Rational(135, 100), sp.Rational(145, 100)
L = LF + LR


def plant(v0, psi0_deg):
    """C (sI - A)^-1 B at (v0, psi0, steer 0); outputs (Y, X), inputs (steer, accel)."""
    psi = sp.rad(psi0_deg)
    k = LR / L
    A = sp.zeros(4, 4)
    A[0, 2], A[0, 3] = sp.cos(psi), -v0 * sp.sin(psi)
    A[1, 2], A[1, 3] = sp.sin(psi), v0 * sp.cos(psi)
    B = sp.zeros(4, 2)
    B[0, 0], B[1, 0] = -v0 * sp.sin(psi) * k, v0 * sp.cos(psi) * k
    B[3, 0], B[2, 1] = v0 / L, 1
    C = sp.Matrix([[0, 1, 0, 0], [1, 0, 0, 0]])
    return sp.simplify(C * (s * sp.eye(4) - A).inv() * B)


def target(w, tau, n):
    return (3 * w**2 * s + w**3) / ((s + w) ** 3 * (tau * s + 1) ** n)


def observer(v0, psi0, w1, w2, tau, n1, n2):
    """Y S^-1 with U_R = I collapses to diag(T_i / (1 - T_i)) G^-1."""
    G = plant(v0, psi0)
    Ginv = sp.simplify(G.inv())
    T = [target(w1, tau, n1), target(w2, tau, n2)]
    out = sp.zeros(2, 2)
    for i in range(2):
        loop = sp.cancel(T[i] / (1 - T[i]))
        for j in range(2):
            out[i, j] = sp.cancel(sp.together(loop * Ginv[i, j]))
    return out


def zpk(expr):
    num, den = sp.fraction(sp.cancel(expr))
    if num == 0:
        return None
    pn, pd = sp.Poly(num, s), sp.Poly(den, s)
    gain = pn.LC() / pd.LC()
    zeros = [complex(r) for r in sp.Poly(pn).nroots(n=30, maxsteps=200)] if pn.degree() > 0 else []
    poles = [complex(r) for r in sp.Poly(pd).nroots(n=30, maxsteps=200)] if pd.degree() > 0 else []
    return float(gain), zeros, poles


def crossover(t_expr):
    f = sp.lambdify(s, t_expr, "mpmath")
    g = lambda w: abs(f(1j * w)) - abs(1 - f(1j * w))
    return float(mp.findroot(g, (mp.mpf(1), mp.mpf(3000)), solver="anderson"))


def cxx_list(zs):
    return "{" + ", ".join(f"{{{z.real:.15g}, {z.imag:.15g}}}" for z in zs) + "}"


def main():
    o = []
    emit = lambda line: o.append(line)
    emit("#pragma once")
    emit("// Generated by tests/oracles/derive_oracles.py; do not edit by hand.")
    emit("#include <array>\n#include <complex>\n#include <vector>\n")
    emit("namespace oracle {\n")

    beta20 = mp.atan(mp.mpf(145) / 280 * mp.tan(mp.radians(20)))
    emit(f"inline constexpr double kSlip20Deg = {float(mp.degrees(beta20))!r};")
    b10 = mp.atan(mp.mpf(145) / 280 * mp.tan(mp.radians(10)))
    emit(f"inline constexpr double kYawRate10 = {float(10 * mp.cos(b10) * mp.tan(mp.radians(10)) / mp.mpf('2.8'))!r};")
    b5 = mp.atan(mp.mpf(145) / 280 * mp.tan(mp.radians(5)))
    emit(f"inline constexpr double kHeading5After1s = {float(10 * mp.cos(b5) * mp.tan(mp.radians(5)) / mp.mpf('2.8'))!r};")
    emit(f"inline constexpr double kTustinPole = {float(mp.mpf('0.995') / mp.mpf('1.005'))!r};")

    q = sp.Poly(s**2 + 2441 * s + 2105000, s).nroots(n=30)
    emit(f"inline const std::vector<std::complex<double>> kQuadRoots = {cxx_list([complex(r) for r in q])};")

    w = stats.ttest_ind([1, 2, 3, 4, 5], [2, 3, 4, 5, 6], equal_var=False)
    # second route: integrate the t density directly
    nu, t = mp.mpf(8), mp.mpf(-1)  # (3 - 4) / sqrt(2.5/5 + 2.5/5)
    dens = lambda x: mp.gamma((nu + 1) / 2) / (mp.sqrt(nu * mp.pi) * mp.gamma(nu / 2)) * (1 + x * x / nu) ** (-(nu + 1) / 2)
    p2 = 2 * mp.quad(dens, [abs(t), mp.inf])
    assert abs(float(p2) - w.pvalue) < 1e-12
    emit(f"inline constexpr double kWelchT = {float(w.statistic)!r};")
    emit(f"inline constexpr double kWelchP = {float(p2)!r};")

    G120 = plant(10, 120)
    emit("// plant at (10 m/s, 120 deg): numerator coefficients, descending, over s^2")
    for i in range(2):
        for j in range(2):
            num = sp.Poly(sp.cancel(G120[i, j] * s**2), s).all_coeffs()
            emit(f"inline const std::vector<double> kPlant120_{i}{j} = {{{', '.join(repr(float(c)) for c in num)}}};")

    designs = [("0", 0, 500, 30, 1, 1), ("120", 120, 350, 25, 1, 3), ("240", 240, 350, 25, 1, 3)]
    emit("\nstruct Entry {\n  bool zero;\n  double gain;\n  std::vector<std::complex<double>> zeros, poles;\n};\n")
    for tag, psi, w1, w2, n1, n2 in designs:
        gc = observer(10, psi, w1, w2, sp.Rational(1, 1000), n1, n2)
        emit(f"inline const std::array<Entry, 4> kObserver{tag} = {{{{")
        for i in range(2):
            for j in range(2):
                r = zpk(gc[i, j])
                if r is None:
                    emit("    {true, 0.0, {}, {}},")
                else:
                    emit(f"    {{false, {r[0]!r}, {cxx_list(r[1])}, {cxx_list(r[2])}}},")
        emit("}};")

    for tag, w, n in [("1", 500, 1), ("2", 30, 1)]:
        emit(f"inline constexpr double kCrossover0_{tag} = {crossover(target(w, sp.Rational(1, 1000), n))!r};")
    for tag, w, n in [("1", 350, 1), ("2", 25, 3)]:
        emit(f"inline constexpr double kCrossover120_{tag} = {crossover(target(w, sp.Rational(1, 1000), n))!r};")
    # the designed loop is G diag(T) G^-1; at 120 deg its diagonal mixes both targets
    G = plant(10, 120)
    Ty = sp.simplify(G * sp.diag(target(350, sp.Rational(1, 1000), 1), target(25, sp.Rational(1, 1000), 3)) * G.inv())
    for i in range(2):
        tii = sp.cancel(sp.together(Ty[i, i]))
        wc = crossover(tii)
        emit(f"inline constexpr double kCoupled120_{i + 1} = {wc!r};")
        f = sp.lambdify(s, tii, "mpmath")
        db = 20 * mp.log10(abs(f(10j * wc)) / abs(f(0)))
        emit(f"inline constexpr double kCoupled120DecadeDb_{i + 1} = {float(db)!r};")
    emit("\n}  // namespace oracle")
    sys.stdout.write("\n".join(o) + "\n")


if __name__ == "__main__":
    main()
