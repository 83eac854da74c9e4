"""Symbol-wise (coded modulation) information rates across the families.

Sweeps mutual information against SNR for uniform, power-law and log
amplitude sets, prints how close each family gets to capacity at a few
target rates, and shows the Monte Carlo estimator agreeing with the
deterministic quadrature reference.  Sample counts are reduced so the
whole script runs in about a minute; pass --full for the 10^7-sample
settings used by the acceptance suite.

Run:  python demos/cm_mutual_information.py [--full] [--plot]
"""

import argparse

import numpy as np

from aenshape import (
    capacity,
    db_to_linear,
    gap_to_capacity_db,
    gen_log,
    gen_martinez,
    gen_uniform,
    mi_cm_mc,
    mi_cm_quadrature,
    sweep,
)

SEED = 2026


def show_estimator_agreement(n_samples):
    print("--- Monte Carlo vs quadrature, 8-point log set ---")
    cons = gen_log(8)
    for snr_db in (3.0, 9.0, 15.0):
        gamma = db_to_linear(snr_db)
        mc = mi_cm_mc(cons, gamma, n_samples, SEED)
        ref = mi_cm_quadrature(cons, gamma)
        print(f"  {snr_db:5.1f} dB: mc {mc.value:.5f} ± {mc.std_error:.5f}, "
              f"quadrature {ref.value:.5f}, "
              f"z = {(mc.value - ref.value) / max(mc.std_error, 1e-12):+.2f}")
    print()


def run_sweeps(n_samples):
    grid = list(np.arange(0.0, 21.0, 1.0))
    curves = {}
    for name, cons in (("uniform-16", gen_uniform(16)),
                       ("martinez-16", gen_martinez(16, 1.618)),
                       ("log-16", gen_log(16))):
        result = sweep("cm", cons, None, grid, n_samples=n_samples, seed=SEED)
        curves[name] = [est.value for _, est in result.rows]
    print("--- 16-point information rates (bits/use) ---")
    print("snr_db  capacity " + "".join(f"{n:>13}" for n in curves))
    for i, snr_db in enumerate(grid):
        cap = capacity(db_to_linear(snr_db))
        print(f"{snr_db:6.1f} {cap:9.4f} "
              + "".join(f"{curves[n][i]:13.4f}" for n in curves))
    print()
    return grid, curves


def show_gaps(n_samples):
    print("--- dB to capacity at fixed target rates ---")
    for target in (1.0, 2.0, 3.0):
        row = []
        for name, cons in (("uniform-64", gen_uniform(64)),
                           ("martinez-64", gen_martinez(64, 1.618)),
                           ("log-64", gen_log(64))):
            report = gap_to_capacity_db("cm", cons, target=target,
                                        n_samples=n_samples, seed=SEED)
            row.append(f"{name} {report.gap_db:.3f}")
        print(f"  target {target:.0f} bits: " + ",  ".join(row))
    print("\nThe log family closes most of the shaping gap; pushing M higher"
          "\n(256 and beyond) brings coded modulation within ~0.1-0.2 dB of"
          "\ncapacity, which is what the full-scale acceptance suite checks.")


def plot_curves(grid, curves):
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 5))
    snr = np.array(grid)
    ax.plot(snr, capacity(db_to_linear(snr)), "k-", label="capacity")
    for name, values in curves.items():
        ax.plot(snr, values, label=name)
    ax.set_xlabel("SNR [dB]")
    ax.set_ylabel("mutual information [bits/use]")
    ax.legend()
    ax.grid(True)
    fig.tight_layout()
    fig.savefig("cm_rates.png", dpi=120)
    print("wrote cm_rates.png")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true",
                        help="use 10^7 samples per point")
    parser.add_argument("--plot", action="store_true")
    args = parser.parse_args()
    n_samples = 10_000_000 if args.full else 300_000

    show_estimator_agreement(n_samples)
    grid, curves = run_sweeps(n_samples)
    show_gaps(n_samples)
    if args.plot:
        plot_curves(grid, curves)


if __name__ == "__main__":
    main()
