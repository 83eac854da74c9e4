"""Walk through the three constellation families.

Shows how the shaped families concentrate amplitudes near zero the way
the channel's capacity-achieving input does, how the closed-form log
amplitudes relate to the equal-mass slices of the shaping density, and
what the Gray labels look like.  Pass --plot to also draw the amplitude
layouts with matplotlib.

Run:  python demos/constellations.py [--plot]
"""

import argparse
import math

import numpy as np

from aenshape import (
    alpha_breakpoints,
    gen_log,
    gen_martinez,
    gen_uniform,
    gray_labels,
    optimal_input,
)


def show_family_table(m_symbols=8):
    families = {
        "uniform": gen_uniform(m_symbols),
        "martinez (lam=1.618)": gen_martinez(m_symbols, 1.618),
        "log": gen_log(m_symbols),
    }
    print(f"--- {m_symbols}-point amplitude sets, all with unit mean ---")
    header = "index " + "".join(f"{name:>22}" for name in families)
    print(header)
    for i in range(m_symbols):
        row = f"{i:5d} " + "".join(f"{cons.symbols[i]:22.6f}"
                                   for cons in families.values())
        print(row)
    for name, cons in families.items():
        mean = math.fsum(cons.symbols.tolist()) / m_symbols
        print(f"mean of {name}: {mean:.15f}")
    print()
    return families


def show_shaping_connection(m_symbols=4):
    # the log family is the set of equal-mass slice centroids of a
    # two-sided exponential density; the slices are the same for every SNR
    print(f"--- equal-mass breakpoints for M = {m_symbols} ---")
    alphas = alpha_breakpoints(m_symbols)
    print("breakpoints:", np.array2string(alphas, precision=4))
    print("slice mass:  1/(2M-1) =", 1 / (2 * m_symbols - 1))
    print("kept centroids (normalized):", gen_log(m_symbols).symbols)
    dist = optimal_input(10.0)
    print("capacity-achieving input at 10 dB-ish SNR: point mass",
          f"{dist.point_mass_at_zero:.4f} at zero plus an exponential tail")
    print()


def show_gray_labels(m_symbols=8):
    print(f"--- Gray labels for M = {m_symbols} ---")
    labeling = gray_labels(m_symbols)
    symbols = gen_log(m_symbols).symbols
    for i, bits in enumerate(labeling.bitstrings()):
        print(f"  {bits}  ->  {symbols[i]:.4f}")
    hamming = (labeling.bits[1:] != labeling.bits[:-1]).sum(axis=1)
    print("adjacent Hamming distances:", hamming.tolist())
    print()


def plot_families(families):
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(len(families), 1, figsize=(8, 4), sharex=True)
    for ax, (name, cons) in zip(axes, families.items()):
        ax.eventplot(cons.symbols, orientation="horizontal", colors="C0")
        ax.set_ylabel(name, rotation=0, ha="right", va="center")
        ax.set_yticks([])
    axes[-1].set_xlabel("amplitude")
    fig.suptitle("Amplitude layouts (unit mean)")
    fig.tight_layout()
    out = "constellations.png"
    fig.savefig(out, dpi=120)
    print(f"wrote {out}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--plot", action="store_true")
    args = parser.parse_args()

    families = show_family_table()
    show_shaping_connection()
    show_gray_labels()
    if args.plot:
        plot_families(families)


if __name__ == "__main__":
    main()
