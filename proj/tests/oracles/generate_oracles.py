#!/usr/bin/env python3
"""Independent reference values for the C++ tests.

Plain numpy Nystrom with closed real forms of the kernels, a different loop
(ellipse with h = 0.2) and the closed-form alpha. Prints a C++ header.
"""
import numpy as np

A, B, C, F = -1.0, 1.0, 1.0, 0.5


def gl(n):
    t, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (B - A) * t + 0.5 * (B + A), 0.5 * (B - A) * w


def det_gsk(x, n):
    t, w = gl(n)
    d = t[:, None] - t[None, :]
    k = F * x / (2 * np.pi) * np.sinc(x * d / (2 * np.pi))
    return np.linalg.det(np.eye(n) + k * w[None, :])


def det_shift(x, n):
    t, w = gl(n)
    d = t[:, None] - t[None, :]
    th = x * d / 2
    sin_over_d = x / 2 * np.sinc(th / np.pi)
    k = C * F / (2 * np.pi) * (2 * np.cos(th) + 2 * C * sin_over_d) / (d * d + C * C)
    return np.linalg.det(np.eye(n) + k * w[None, :])


def det_nonintegrable(x, n, gamma=(0.7, 0.4), v=(1, 0), c=(-1.0, 1.0)):
    t, w = gl(n)
    e = np.exp(0.5j * x * t)
    el = np.stack([-F / (2j * np.pi) / e, F / (2j * np.pi) * e], axis=1)
    er = np.stack([e, 1 / e], axis=1)
    d = t[:, None] - t[None, :]
    k = F * x / (2 * np.pi) * np.sinc(x * d / (2 * np.pi)) + 0j
    for a in range(2):
        k -= gamma[a] * el[:, a][:, None] * er[:, v[a]][None, :] / (d + 1j * c[a])
    return np.linalg.det(np.eye(n) + k * w[None, :])


def alpha(z):
    nu = np.log(1 + F) / (2j * np.pi)
    return np.exp(nu * np.log((z - A) / (z - B)))


def limit(m=300, h=0.2):
    half, mid = 0.5 * (B - A), 0.5 * (A + B)
    rho = np.arcsinh(h / half)
    s = 2 * np.pi * np.arange(m) / m
    z = mid + half * np.cosh(rho) * np.cos(s) + 1j * half * np.sinh(rho) * np.sin(s)
    dz = (-half * np.cosh(rho) * np.sin(s) + 1j * half * np.sinh(rho) * np.cos(s)) * 2 * np.pi / m
    lam, mu = z[:, None], z[None, :]
    up = alpha(mu - 1j * C) / alpha(lam) / (2j * np.pi * (lam - mu + 1j * C))
    um = alpha(lam) / alpha(mu + 1j * C) / (2j * np.pi * (lam - mu - 1j * C))
    dp = np.linalg.det(np.eye(m) + up * dz[None, :])
    dm = np.linalg.det(np.eye(m) + um * dz[None, :])
    return dp, dm


def nodes_for(x):
    return max(64, int(np.ceil(8 * x * (B - A) / (2 * np.pi) - 1e-9)))


def cxx(name, z):
    z = complex(z)
    return f"inline const cplx {name}{{{z.real:.17g}, {z.imag:.17g}}};"


if __name__ == "__main__":
    out = ["#pragma once", "", "// Generated by tests/oracles/generate_oracles.py", "",
           '#include "shiftdet/types.h"', "", "namespace oracle {", "", "using shiftdet::cplx;", ""]
    out.append(cxx("kDetGsk50", det_gsk(50.0, 200)))
    out.append(cxx("kDetShift50", det_shift(50.0, 200)))
    out.append(cxx("kDetNonintegrable50", det_nonintegrable(50.0, 200)))
    dp, dm = limit()
    out.append(cxx("kDetUplus", dp))
    out.append(cxx("kDetUminus", dm))
    out.append(cxx("kLimit", dp * dm))
    out.append(cxx("kDetGsk20", det_gsk(20.0, 120)))
    xs = [25.0, 50.0, 100.0, 200.0, 400.0]
    errs = []
    for x in xs:
        n = nodes_for(x) + 40
        errs.append(abs(det_shift(x, n) / det_gsk(x, n) / (dp * dm) - 1))
    out.append("inline constexpr double kSweepX[] = {" + ", ".join(f"{x:.17g}" for x in xs) + "};")
    out.append("inline constexpr double kSweepErr[] = {" + ", ".join(f"{e:.17g}" for e in errs) + "};")
    out += ["", "}  // namespace oracle", ""]
    print("\n".join(out))
