import argparse

import numpy as np
from numpy import mean
from scipy import stats

from spectral_analysis.dominant_eigen import decay_fit, dominant_eigendata


def planted_matrix(rng: np.random.Generator, dimension:int, a:complex=1.0):
    """
    Random matrix with the simple eigenvalue a and every other eigenvalue inside |s| < 0.9 |a|

    :return: (matrix, unit left eigenvector w for a)
    """
    others = 0.9 * abs(a) * np.sqrt(rng.uniform(0.05, 1.0, dimension - 1)) \
        * np.exp(2j * np.pi * rng.uniform(size=dimension - 1))
    V = rng.normal(size=(dimension, dimension)) + 1j * rng.normal(size=(dimension, dimension))
    V_inv = np.linalg.inv(V)
    matrix = V @ np.diag(np.concatenate(([a], others))) @ V_inv
    w = V_inv[0].conj()
    return matrix, w / np.linalg.norm(w)


def slope_errors(trials:int, seed:int, n_max:int, tail:int):
    """
    |empirical log-slope - ln rho| for each planted matrix
    """
    rng = np.random.default_rng(seed)
    errors = []
    for _ in range(trials):
        dimension = int(rng.integers(2, 6))
        matrix, w = planted_matrix(rng, dimension)
        data = dominant_eigendata(matrix, 1.0, w)
        x = rng.normal(size=dimension) + 1j * rng.normal(size=dimension)
        fit = decay_fit(matrix, 1.0, w, data.right_vector, x, n_max=n_max, tail=tail)
        if np.isfinite(fit.slope):
            errors.append(abs(fit.slope - fit.log_rho))
    return errors


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Mean and 95% confidence interval of decay-slope errors")
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n-max", dest="n_max", type=int, default=80)
    parser.add_argument("--tail", type=int, default=20)
    args = parser.parse_args()

    samples = slope_errors(args.trials, args.seed, args.n_max, args.tail)
    if len(samples) < 2:
        print(f"Error: only {len(samples)} usable trials")
    else:
        sample_mean = mean(samples)
        sample_error = stats.sem(samples) * stats.t.ppf((1 + 0.95) / 2., len(samples) - 1)
        print(f"slope_error = {sample_mean} +- {sample_error} over {len(samples)} trials")
