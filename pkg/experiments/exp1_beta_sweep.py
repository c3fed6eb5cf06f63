import argparse

import numpy as np

from dyadic_measure.fractal_scale import fractal_ratio_scan
from filter_bank.filter_families import beta_family
from spectral_analysis.spectral_exceptions import DominanceAbsent


def sweep(points:int, base_word:str, n_max:int):
    """
    Fractal scale and ratio limit of the base word for equally spaced beta in [-pi, pi)

    Betas where a_0 does not strictly dominate spec(F_0) are reported with s = none.
    """
    for beta in np.linspace(-np.pi, np.pi, points, endpoint=False):
        try:
            scan = fractal_ratio_scan(beta_family(beta), base_word, n_max=n_max)
        except DominanceAbsent:
            yield beta, None, None, None
            continue
        yield beta, scan.extras["fractal_scale"], scan.estimate, scan.predicted_limit


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Fractal scale s(beta) and ratio limits over a beta grid")
    parser.add_argument("--points", type=int, default=64)
    parser.add_argument("--word", type=str, default="0")
    parser.add_argument("--n-max", dest="n_max", type=int, default=200)
    args = parser.parse_args()

    print("---- RESULTS ----")
    for beta, s, estimate, predicted in sweep(args.points, args.word, args.n_max):
        if s is None:
            print(f"beta = {beta:.6f} s = none")
            continue
        print(f"beta = {beta:.6f} s = {s:.6f} estimate = {estimate:.9f} predicted = {predicted:.9f} "
              f"gap = {abs(estimate - predicted):.3e}")
