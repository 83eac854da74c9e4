"""Reduced-scale invariant and oracle-equivalence checks.

The checks mirror the package's test suite at a scale that completes in
well under a minute: constellation construction against quadrature
centroids, breakpoint masses, Gray labeling structure, channel laws
against their normalizations, Monte Carlo estimators against the
quadrature references, and search/determinism sanity.

Hooks exist so a harness can inject faults and confirm the checks catch
them: ``gray_override`` substitutes the labeling generator and
``log_symbol_perturbation`` nudges the closed-form log amplitudes before
they are compared with the centroid oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, stats

from . import analysis, channel, constellation, mi

__all__ = ["CheckResult", "run_selftest"]

SELFTEST_SEED = 20260810


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        suffix = "" if self.passed else f"  ({self.detail})"
        return f"[{status}] {self.module}: {self.name}{suffix}"


def _centroid_oracle_symbols(m_symbols: int) -> np.ndarray:
    """Log-family amplitudes from direct quadrature of the slice centroids."""
    alphas = constellation.alpha_breakpoints(m_symbols)
    density = lambda t: 0.5 * np.exp(-abs(t))
    raw = []
    for k in range(m_symbols - 1, 2 * m_symbols - 1):
        lo, hi = alphas[k], alphas[k + 1]
        mass, _ = integrate.quad(lambda t: t * density(t), lo, hi)
        raw.append((2 * m_symbols - 1) * mass)
    raw = np.asarray(raw)
    return raw / (math.fsum(raw.tolist()) / m_symbols)


def _check_constellations(results, log_symbol_perturbation):
    for family, make in (("uniform", constellation.gen_uniform),
                         ("martinez", lambda m: constellation.gen_martinez(m, 1.618)),
                         ("log", constellation.gen_log)):
        bad = []
        for m_symbols in (2, 3, 4, 16, 64, 256):
            cons = make(m_symbols)
            mean = math.fsum(cons.symbols.tolist()) / m_symbols
            if abs(mean - 1.0) > constellation.MEAN_TOL:
                bad.append(f"M={m_symbols} mean={mean!r}")
            if not np.all(np.diff(cons.symbols) > 0) or cons.symbols[0] != 0:
                bad.append(f"M={m_symbols} not increasing from 0")
        results.append(CheckResult(
            "constellation", f"{family} unit mean and monotonicity",
            not bad, "; ".join(bad) or "ok"))

    bad = []
    for m_symbols in (2, 4, 8, 16, 32):
        closed = constellation.gen_log(m_symbols).symbols.copy()
        if log_symbol_perturbation:
            closed[-1] *= 1.0 + log_symbol_perturbation
        oracle = _centroid_oracle_symbols(m_symbols)
        err = np.max(np.abs(closed - oracle) / np.maximum(np.abs(oracle), 1.0))
        if err > 1e-9:
            bad.append(f"M={m_symbols} rel err {err:.3e} > 1e-9")
    results.append(CheckResult(
        "constellation", "log closed form matches centroid quadrature",
        not bad, "; ".join(bad) or "ok"))

    bad = []
    for m_symbols in (2, 3, 5, 16, 64):
        i = np.arange(2, m_symbols + 2)
        a = constellation.tail_moment(m_symbols, i)
        b = constellation.tail_moment_full(m_symbols, i + m_symbols - 1)
        err = float(np.max(np.abs(a - b)))
        if err > 1e-12:
            bad.append(f"M={m_symbols} err {err:.3e}")
    results.append(CheckResult(
        "constellation", "tail-moment reindex identity", not bad,
        "; ".join(bad) or "ok"))

    bad = []
    for m_symbols in (2, 3, 8, 33):
        alphas = constellation.alpha_breakpoints(m_symbols)
        masses = [integrate.quad(lambda t: 0.5 * np.exp(-abs(t)), alphas[k], alphas[k + 1])[0]
                  for k in range(2 * m_symbols - 1)]
        err = max(abs(v - 1.0 / (2 * m_symbols - 1)) for v in masses)
        if err > 1e-9:
            bad.append(f"M={m_symbols} mass err {err:.3e}")
        # ends are -inf/+inf by construction; interior must be antisymmetric
        sym = alphas[1:-1] + alphas[1:-1][::-1]
        if np.max(np.abs(sym)) > 1e-12:
            bad.append(f"M={m_symbols} breakpoints not antisymmetric")
    results.append(CheckResult(
        "constellation", "equal-mass symmetric breakpoints", not bad,
        "; ".join(bad) or "ok"))


def _check_gray(results, gray_override):
    produce = gray_override or (lambda m: constellation.gray_labels(m).bits)
    bad = []
    for m_symbols in (2, 4, 8, 16, 64):
        bits = np.asarray(produce(m_symbols))
        m = int(math.log2(m_symbols))
        weights = 1 << np.arange(m - 1, -1, -1)
        codes = (bits.astype(np.int64) * weights).sum(axis=1)
        if sorted(codes.tolist()) != list(range(m_symbols)):
            bad.append(f"M={m_symbols} labels are not a bijection")
            continue
        ham = (bits[1:] != bits[:-1]).sum(axis=1)
        if np.any(ham != 1):
            where = int(np.argmax(ham != 1))
            bad.append(f"M={m_symbols} adjacent labels {where},{where + 1} "
                       f"differ in {int(ham[where])} bits, expected 1")
    results.append(CheckResult(
        "constellation", "gray labeling bijection and adjacency", not bad,
        "; ".join(bad) or "ok"))


def _check_channel(results):
    rates = np.linspace(0.01, 12.0, 25)
    err = float(np.max(np.abs(channel.capacity(channel.capacity_snr(rates)) - rates)))
    results.append(CheckResult(
        "channel", "capacity / capacity_snr round trip", err <= 1e-12,
        f"max err {err:.3e}, expected <= 1e-12"))

    rng = np.random.default_rng(SELFTEST_SEED)
    draws = channel.sample_noise(rng, 0.5, 200_000)
    stat = stats.kstest(draws, stats.expon(scale=0.5).cdf).statistic
    crit = 1.9495 / math.sqrt(draws.size)
    results.append(CheckResult(
        "channel", "noise sampler matches exponential law", stat < crit,
        f"KS {stat:.5f}, critical {crit:.5f}"))

    bad = []
    for x, gamma in ((0.0, 1.0), (1.5, 10.0), (0.3, 200.0)):
        total, _ = integrate.quad(
            lambda y: math.exp(channel.transition_log_density(y, x, gamma)),
            x, x + 60.0 / gamma)
        if abs(total - 1.0) > 1e-9:
            bad.append(f"x={x} gamma={gamma} integral {total!r}")
    results.append(CheckResult(
        "channel", "transition density normalization", not bad,
        "; ".join(bad) or "ok"))


def _check_estimators(results):
    bad = []
    try:
        mi.log_sum_exp([-np.inf, -np.inf])
        bad.append("all -inf accepted")
    except ValueError:
        pass
    if abs(mi.log_sum_exp([0.0, -np.inf])) > 0:
        bad.append("-inf terms must contribute zero")
    if abs(mi.log_sum_exp([2.5] * 8) - (2.5 + math.log(8))) > 1e-12:
        bad.append("repeated-term identity broken")
    results.append(CheckResult("mi_estimator", "log_sum_exp edge cases",
                               not bad, "; ".join(bad) or "ok"))

    bad = []
    for m_symbols in (2, 4, 8):
        cons = constellation.gen_log(m_symbols)
        labeling = constellation.gray_labels(m_symbols)
        for gamma in (1.0, 10.0):
            # 1e-6 floor: saturated cells leave sub-resolution rare-event
            # mass that no feasible sample count resolves
            ref = mi.mi_cm_quadrature(cons, gamma, 256)
            est = mi.mi_cm_mc(cons, gamma, 100_000, SELFTEST_SEED)
            if abs(est.value - ref.value) > 3.0 * est.std_error + 1e-6:
                bad.append(f"cm M={m_symbols} gamma={gamma} "
                           f"|{est.value:.5f}-{ref.value:.5f}| > 3se={3 * est.std_error:.2e}")
            ref = mi.mi_bicm_quadrature(cons, labeling, gamma, 256)
            est = mi.mi_bicm_mc(cons, labeling, gamma, 100_000, SELFTEST_SEED)
            if abs(est.value - ref.value) > 3.0 * est.std_error + 1e-6:
                bad.append(f"bicm M={m_symbols} gamma={gamma} "
                           f"|{est.value:.5f}-{ref.value:.5f}| > 3se={3 * est.std_error:.2e}")
    results.append(CheckResult(
        "mi_estimator", "monte carlo agrees with quadrature", not bad,
        "; ".join(bad) or "ok"))

    cons = constellation.gen_martinez(4, 1.618)
    a = mi.mi_cm_mc(cons, 5.0, 50_000, SELFTEST_SEED, n_shards=4)
    b = mi.mi_cm_mc(cons, 5.0, 50_000, SELFTEST_SEED, n_shards=4, n_workers=2)
    results.append(CheckResult(
        "mi_estimator", "bit-identical deterministic reduction",
        a == b, f"{a.value!r} vs {b.value!r}"))


def _check_analysis(results):
    gap = analysis.gap_to_capacity_db("cm", None, target=2.0, tol_db=0.01)
    results.append(CheckResult(
        "analysis", "capacity curve has zero gap to itself",
        abs(gap.gap_db) <= 0.01, f"gap {gap.gap_db:.5f} dB, expected |.| <= 0.01"))

    cons = constellation.gen_log(4)
    lo = analysis.snr_at_target_mi("cm", cons, target=1.0, method="quadrature", n_nodes=64)
    hi = analysis.snr_at_target_mi("cm", cons, target=1.5, method="quadrature", n_nodes=64)
    again = analysis.snr_at_target_mi("cm", cons, target=1.0, method="quadrature", n_nodes=64)
    ok = hi > lo and again == lo
    results.append(CheckResult(
        "analysis", "threshold search monotone and reproducible", ok,
        f"snr(1.0)={lo!r}, snr(1.5)={hi!r}, repeat={again!r}"))


def run_selftest(*, gray_override=None, log_symbol_perturbation: float = 0.0) -> list[CheckResult]:
    """Run every check; returns the individual results in a fixed order."""
    results: list[CheckResult] = []
    _check_constellations(results, log_symbol_perturbation)
    _check_gray(results, gray_override)
    _check_channel(results)
    _check_estimators(results)
    _check_analysis(results)
    return results
