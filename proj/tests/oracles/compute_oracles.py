"""Independent reference values for the unit tests, computed with mpmath quadrature.

Run once; the output is frozen in tests/unit/oracle_values.hpp and never regenerated by the build.

    python3 tests/oracles/compute_oracles.py > tests/unit/oracle_values.hpp
"""

from mpmath import mp, mpf, quad, exp, log, pi, inf, factorial

mp.dps = 30


def radial(f):
    """Integral over the plane of a radial integrand f(u), u = |z|^2 (dA = pi du)."""
    return pi * quad(f, [0, 1, 10, 100, inf])


def fock_gram_diag(a, k):
    return radial(lambda u: u**k * exp(-a * u))


def p1_gram_diag(l, k):
    # |z^k|^2 e^{-phi} with phi = l log(1+|z|^2) on the chart
    return radial(lambda u: u**k / (1 + u) ** l)


def hormander_m1_sq():
    # sup_v |<z̄ phi_zz̄, v>|^2 / ||d^phi v||^2 over frequency -1 functions, phi = 4 log(1+|z|^2)
    W = lambda s: log(1 + s) + 1 / (1 + s) - 1
    return 16 * pi * quad(lambda s: W(s) ** 2 / (s**2 * (1 + s) ** 4), [0, 1, 10, inf])


def hormander_f1_sq():
    return radial(lambda u: u * 4 / (1 + u) ** 6)


def second_form_fock(t_abs_sq):
    # ||pi_perp(conj(t)|z|^2)||^2 for e^{-a|z|^2}, a = 1+|t|^2
    a = 1 + t_abs_sq
    mean = radial(lambda u: u * exp(-a * u)) / radial(lambda u: exp(-a * u))
    return t_abs_sq * radial(lambda u: (u - mean) ** 2 * exp(-a * u))


def emit(name, value):
    print(f"inline constexpr double {name} = {mp.nstr(value, 20)};")


print("// Generated by tests/oracles/compute_oracles.py (mpmath, 30 digits). Frozen.")
print("#pragma once")
print()
print("namespace oracle {")
print()
emit("kGaussianPlaneIntegral", radial(lambda u: exp(-u)))
emit("kDiskSecondMoment", pi * quad(lambda u: u, [0, 1]))
emit("kFsArea", radial(lambda u: 1 / (1 + u) ** 2))
emit("kP1MomentU1D4", radial(lambda u: u / (1 + u) ** 4))
print()
print("// Fock Gram diagonal at a = 1.25 (t = 0.5), k = 0..16")
print("inline constexpr double kFockGramA125[17] = {")
for k in range(17):
    print(f"    {mp.nstr(fock_gram_diag(mpf('1.25'), k), 20)},")
print("};")
print()
print("// l = 4 sections on the chart, k = 0..2")
print("inline constexpr double kP1GramL4[3] = {")
for k in range(3):
    print(f"    {mp.nstr(p1_gram_diag(4, k), 20)},")
print("};")
print()
emit("kHormanderM1Sq", hormander_m1_sq())
emit("kHormanderF1Sq", hormander_f1_sq())
emit("kHormanderGapPerEps2", hormander_f1_sq() - hormander_m1_sq())
print()
emit("kSecondFormFockT05", second_form_fock(mpf('0.25')))
emit("kFockKernelT1", 2 / pi)
print()
print("}  // namespace oracle")
