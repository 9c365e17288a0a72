"""Regenerate the embedded Chernoff quantile table.

The density of Z = argmax_t {W(t) - t^2} is f(z) = g(z) g(-z) / 2 where g
has Fourier transform 2^(1/3) / Ai(i 2^(-1/3) lambda).  We invert the
transform by quadrature, integrate the density and read off quantiles.

    python tools/chernoff_table.py > table.txt
"""

import numpy as np
from scipy import integrate, interpolate, special


def g(t, lam_max=40.0, nodes=40001):
    lam = np.linspace(0.0, lam_max, nodes)
    ai = special.airy(1j * 2.0 ** (-1.0 / 3.0) * lam)[0]
    vals = np.real(np.exp(-1j * np.outer(t, lam)) * (2.0 ** (1.0 / 3.0) / ai))
    return integrate.simpson(vals, x=lam, axis=1) / np.pi


def density(z):
    z = np.asarray(z, dtype=float)
    return 0.5 * g(z) * g(-z)


def main():
    z = np.linspace(0.0, 3.0, 3001)
    f = density(z)
    cdf = 0.5 + integrate.cumulative_simpson(f, x=z, initial=0.0)
    var = 2.0 * integrate.simpson(z**2 * f, x=z)
    print(f"# mass={2 * integrate.simpson(f, x=z):.10f} variance={var:.10f}")
    inv = interpolate.PchipInterpolator(cdf, z)
    probs = np.concatenate([np.arange(0.5, 0.95, 0.01), np.arange(0.95, 0.999, 0.001), [0.999, 0.9995, 0.9999]])
    for p in probs:
        print(f"({p:.4f}, {float(inv(p)):.6f}),")


if __name__ == "__main__":
    main()
