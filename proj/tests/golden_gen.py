#!/usr/bin/env python3
"""Regenerates tests/golden_values.hpp.

High-precision reference values computed with mpmath/sympy (30 significant
digits internally, frozen as C++ double literals). Run from the repo root:

    python3 tests/golden_gen.py > tests/golden_values.hpp
"""
import sys
import time

from mpmath import mp, mpf, mpc
import sympy

mp.dps = 30


def emit(name, value, comment=""):
    if isinstance(value, (int,)):
        print(f"inline constexpr long long {name} = {value};{comment and '  // ' + comment}")
        return
    v = mp.mpf(value)
    print(f"inline constexpr double {name} = {mp.nstr(v, 17)};{comment and '  // ' + comment}")


def emit_complex(name, value, comment=""):
    re = mp.nstr(value.real, 17)
    im = mp.nstr(value.imag, 17)
    print(f"inline const std::complex<double> {name}{{{re}, {im}}};{comment and '  // ' + comment}")


def main():
    t0 = time.time()
    print("// Generated by tests/golden_gen.py (mpmath, 30-digit working precision).")
    print("// Do not edit by hand.")
    print("#pragma once")
    print("#include <array>")
    print("#include <complex>")
    print()
    print("namespace golden {")
    print()

    # ---- zeros of zeta: first 100 ordinates -------------------------------
    zs = []
    for n in range(1, 101):
        zs.append(mp.zetazero(n).imag)
        if n % 20 == 0:
            print(f"// zetazero progress {n}/100 t={time.time()-t0:.0f}s", file=sys.stderr)
    print("inline constexpr std::array<double, 100> kZeroOrdinates = {")
    for z in zs:
        print(f"    {mp.nstr(z, 17)},")
    print("};")
    print()

    emit("kZeroCount100", int(mp.nzeros(100)), "N(100)")
    emit("kZeroCount5000", int(mp.nzeros(5000)), "N(5000)")
    emit("kZeroCount10000", int(mp.nzeros(10000)), "N(10000)")
    print()

    # ---- theta -------------------------------------------------------------
    emit("kTheta100", mp.siegeltheta(100), "Riemann-Siegel theta(100)")
    emit("kTheta1000", mp.siegeltheta(1000))
    emit("kTheta14", mp.siegeltheta(14), "below the asymptotic-series domain")
    print()

    # ---- zeta values -------------------------------------------------------
    z = mp.zeta(mpc(0.5, 10000))
    emit_complex("kZetaHalf1e4", z, "zeta(1/2 + 1e4 i)")
    emit("kLogAbsZetaHalf1e4", mp.log(abs(z)))
    sig = mpf(1) / 2 + 1 / mp.log(mpf(10) ** 6)
    emit("kSigmaOffLine", sig, "1/2 + 1/log(1e6)")
    emit_complex("kZetaOffLine1e4", mp.zeta(mpc(sig, 10000)))
    emit_complex("kZeta3p777i", mp.zeta(mpc(3, 777)))
    emit_complex("kZeta075p3333i", mp.zeta(mpc(0.75, 3333)))
    emit("kZetaHalfReal", mp.zeta(mpf(1) / 2), "zeta(1/2)")
    emit("kZeta2", mp.zeta(2))
    print()

    # ---- Hardy Z -----------------------------------------------------------
    for t in ["100.25", "500.125", "1000.5", "5000.25", "10000.125", "20000.0625"]:
        name = "kHardyZ_" + t.replace(".", "_")
        emit(name, mp.siegelz(mpf(t)), f"Z({t})")
    emit("kGamma1", mp.zetazero(1).imag, "first zero ordinate, high precision")
    print()

    # ---- prime sums --------------------------------------------------------
    L = mp.log(mpf(10) ** 6)
    s = mp.mpf(0)
    for p in sympy.primerange(2, 1001):
        s += (1 - mp.log(p) / L) ** 2 / p
    emit("kFejerPrimeSum1e3_X1e6", s, "sum_{p<=1000} V(log p)^2/p, Fejer X=1e6")

    s = mp.mpf(0)
    for p in sympy.primerange(2, 11):
        s += mp.mpf(1) / p
    emit("kPrimeRecipSum10", s, "1/2+1/3+1/5+1/7")
    print()

    emit("kEulerGamma", mp.euler)
    emit("kMertens", mp.mertens)
    emit("kPrimePowerConstant", mp.euler - mp.mertens, "sum_{m>=2} sum_p 1/(m p^m)")
    s2 = mp.nsum(lambda m: mp.primezeta(m) / m ** 2, [2, mp.inf])
    emit("kPrimePowerSquareConstant", s2, "sum_p sum_{m>=2} 1/(m^2 p^m)")
    c00 = mp.log(mp.log(2)) + mp.euler + (mp.euler - mp.mertens) + s2
    emit("kC00", c00, "c(0,0)")

    # c(y1,y2) at delta = 0.3 via complex prime zeta
    d = mpf("0.3")
    s2d = mp.nsum(lambda m: (mp.primezeta(m * mpc(1, -d)) / m ** 2).real, [2, mp.inf])
    cd = mp.cos(d * mp.log(2)) * (mp.log(mp.log(2)) + mp.euler + (mp.euler - mp.mertens)) + s2d
    emit("kCdelta03", cd, "c(y1,y2) at y1-y2 = 0.3")
    print()

    # ---- logderiv polynomial oracle ----------------------------------------
    X = 10 ** 5
    LX = mp.log(X)
    tval = mpf(1000)
    acc = mpc(0)
    for p in sympy.primerange(2, X + 1):
        lp = mp.log(p)
        n = p
        while n <= X:
            ln = mp.log(n)
            acc += lp * mp.power(n, mpc(-0.5, -tval)) * (1 - ln / LX)
            n *= p
    emit_complex("kLogderiv_t1000_X1e5", acc, "sum_{n<=1e5} Lambda(n) n^{-1/2-1000i} (1-log n/log X)")
    print(f"// logderiv oracle done t={time.time()-t0:.0f}s", file=sys.stderr)
    print()

    # ---- Goldston h kernel inner integral -----------------------------------
    def ginner(v):
        return mp.quad(lambda u: u / ((u * u + v * v) * mp.sinh(u)), [0, 1, 5, 20, 60, mp.inf])

    emit("kHInner1", ginner(mpf(1)), "int_0^inf u/((u^2+1) sinh u) du")
    emit("kHInner05", ginner(mpf("0.5")))
    emit("kHInner5", ginner(mpf(5)))
    emit("kHInner20", ginner(mpf(20)))
    print()

    # ---- Fejer Fourier inversion difference --------------------------------
    def vhat(y):
        if y == 0:
            return L
        return (mp.sin(y * L / 2) ** 2) / ((y / 2) ** 2 * L)

    val = mp.quad(lambda y: mp.cos(y * mp.log(2)) * vhat(y), [-1, 0, 1]) / (2 * mp.pi)
    emit("kFejerInversionP2B1", val - (1 - mp.log(2) / L),
         "(1/2pi) int_{-1}^{1} cos(y log 2) Vhat(y) dy - V(log 2), X=1e6")
    print()

    # ---- Si / Ci ------------------------------------------------------------
    for x in ["1", "2.76", "4", "10", "100", "10000"]:
        emit("kSi_" + x.replace(".", "_"), mp.si(mpf(x)), f"Si({x})")
    for x in ["0.208", "1", "2.76", "10", "100"]:
        emit("kCi_" + x.replace(".", "_"), mp.ci(mpf(x)), f"Ci({x})")
    print()

    print("}  // namespace golden")
    print(f"// total {time.time()-t0:.0f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
