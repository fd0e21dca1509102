"""Independent high-precision heat-kernel values for freezing into unit tests.

p^{(n,m)}_{1,k1,k2}(R,|t|) = (2 pi)^{-m} (4 pi)^{-n} * integral over R^m of
    (|l|/sinh|l|)^n exp(-R |l| coth|l|) exp(i <l,t>),
differentiated k1 times in R and k2 times in |t|. The angular integral is
done in closed form with Bessel J, the radial one by mpmath quadrature.
"""
import argparse
import json

import mpmath as mp


def kernel(n, m, k1, k2, R, t, dps=30):
    mp.mp.dps = dps
    R, t = mp.mpf(R), mp.mpf(t)
    nu = mp.mpf(m - 2) / 2

    def sphere(rho):
        # integral over S^{m-1} of exp(i rho t s_1), differentiated k2 times in t
        area_factor = (2 * mp.pi) ** (m / mp.mpf(2))

        def radial(tt):
            zz = rho * tt
            if zz == 0:
                return area_factor / (2 ** nu * mp.gamma(nu + 1))
            return area_factor * mp.besselj(nu, zz) / zz ** nu

        if k2 == 0:
            return radial(t)
        return mp.diff(radial, t, k2)

    def integrand(rho):
        x = rho
        ratio = x / mp.sinh(x) if x != 0 else mp.mpf(1)
        xcoth = x * mp.coth(x) if x != 0 else mp.mpf(1)
        return (-xcoth) ** k1 * ratio ** n * mp.exp(-R * xcoth) * sphere(x) * x ** (m - 1)

    val = mp.quad(integrand, [0, 1, 4, 10, 30, mp.inf])
    return val / ((2 * mp.pi) ** m * (4 * mp.pi) ** n)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", required=True,
                    help="JSON list of [n, m, k1, k2, R, t]")
    args = ap.parse_args()
    out = []
    for n, m, k1, k2, R, t in json.loads(args.points):
        v = kernel(n, m, k1, k2, R, t)
        out.append({"n": n, "m": m, "k1": k1, "k2": k2, "R": R, "t": t, "value": mp.nstr(v, 20)})
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
