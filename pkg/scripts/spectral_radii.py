#!/usr/bin/env python3
"""Spectral radii of the divergence counterexamples in the gallery.

Prints rho(M^{-1} N) for each (matrix, method, m, omega) case, showing that
GJ/GGS can diverge for SPD and L-matrices and GSOR can diverge for omega
inside (0, 1) as well as above 1.
"""

import warnings

from gsolve import RelaxationWarning, build_step, extract_splitting, iteration_matrix, spectral_radius
from gsolve import gallery

CASES = [
    ("spd 3x3", gallery.spd_3x3(), "gj", 1, None),
    ("spd 3x3", gallery.spd_3x3(), "ggs", 1, None),
    ("spd 3x3", gallery.spd_3x3(), "gsor", 1, 0.6),
    ("L 3x3", gallery.l_3x3(), "gj", 1, None),
    ("L 3x3", gallery.l_3x3(), "ggs", 1, None),
    ("L 3x3", gallery.l_3x3(), "gsor", 1, 0.9),
    ("L 3x3", gallery.l_3x3(), "gsor", 1, 0.4),
    ("spd 4x4", gallery.spd_4x4(), "gsor", 2, 1.8),
]

if __name__ == "__main__":
    print(f"{'matrix':<8} {'method':<6} {'m':>2} {'omega':>6} {'rho':>10}  verdict")
    for name, A, method, m, omega in CASES:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RelaxationWarning)
            op = build_step(extract_splitting(A, m), method, omega)
        rho = spectral_radius(iteration_matrix(op))
        omega_str = "-" if omega is None else f"{omega:.2f}"
        verdict = "converges" if rho < 1 else "diverges"
        print(f"{name:<8} {method:<6} {m:>2} {omega_str:>6} {rho:>10.4f}  {verdict}")
