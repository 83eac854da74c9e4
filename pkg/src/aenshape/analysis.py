"""SNR sweeps, rate thresholds and gap-to-capacity reports.

Everything here reads mutual information curves horizontally: given a
target rate, find the SNR a constellation needs to reach it, and report
the dB distance to the SNR at which capacity equals that rate.  All
Monte Carlo probes of one search (and of one comparison across
constellations) share a single :class:`~aenshape.mi.SampleBank`, so the
curve seen by the bisection is a fixed monotone function and dB
differences between configurations are nearly free of sampling noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import channel, constellation
from .mi import (
    DEFAULT_NODES,
    DEFAULT_SHARDS,
    MiEstimate,
    SampleBank,
    mi_bicm_mc,
    mi_bicm_quadrature,
    mi_cm_mc,
    mi_cm_quadrature,
)

__all__ = [
    "SweepResult",
    "GapReport",
    "FamilyComparison",
    "UnattainableRateError",
    "BracketSearchError",
    "sweep",
    "snr_at_target_mi",
    "gap_to_capacity_db",
    "best_in_family",
    "compare_families",
    "make_constellation",
    "DEFAULT_SAMPLES",
    "DEFAULT_TOL_DB",
    "DEFAULT_SHAPE_EXPONENT",
]

DEFAULT_SAMPLES = 10_000_000
DEFAULT_TOL_DB = 0.01

#: near-optimal power-law exponent for the martinez family at high SNR
DEFAULT_SHAPE_EXPONENT = 1.618

#: widest SNR span (dB above the capacity SNR) explored when bracketing
MAX_BRACKET_SPAN_DB = 60.0


class UnattainableRateError(ValueError):
    """The target rate is at or above what the alphabet can carry."""


class BracketSearchError(RuntimeError):
    """No SNR bracket containing the target rate could be established."""


@dataclass(frozen=True)
class SweepResult:
    scheme: str
    label: str
    rows: tuple  # of (snr_db, MiEstimate)


@dataclass(frozen=True)
class GapReport:
    scheme: str
    label: str
    target_rate: float
    snr_at_rate_db: float
    capacity_snr_db: float
    gap_db: float


@dataclass(frozen=True)
class FamilyComparison:
    target_rate: float
    log_m: int
    log_snr_db: float
    martinez_m: int
    martinez_snr_db: float
    delta_db: float  # martinez minus log; positive favors the log family


def make_constellation(family: str, m_symbols: int, lam: float | None = None):
    """Build a constellation by family name; ``capacity`` maps to None."""
    if family == "capacity":
        return None
    if family == "uniform":
        return constellation.gen_uniform(m_symbols)
    if family == "martinez":
        return constellation.gen_martinez(
            m_symbols, DEFAULT_SHAPE_EXPONENT if lam is None else lam)
    if family == "log":
        return constellation.gen_log(m_symbols)
    raise ValueError(f"unknown family {family!r}")


def _make_probe(scheme, cons, labeling, *, n_samples, seed, n_shards, bank,
                method, n_nodes, n_workers):
    """Return f(snr_db) -> MiEstimate for the requested configuration."""
    if cons is None:
        # exact capacity reference curve; nothing is estimated
        def probe(snr_db: float) -> MiEstimate:
            value = channel.capacity(channel.db_to_linear(snr_db))
            return MiEstimate(value=value, std_error=0.0, n_samples=0,
                              seed=int(seed), scheme=scheme, method="quadrature")
        return probe

    if scheme == "bicm" and labeling is None:
        raise ValueError("bicm scheme requires a bit labeling")
    if scheme == "cm" and labeling is not None:
        raise ValueError("labeling is only meaningful for the bicm scheme")
    if scheme not in ("cm", "bicm"):
        raise ValueError(f"unknown scheme {scheme!r}")

    if method == "quadrature":
        if scheme == "cm":
            return lambda snr_db: mi_cm_quadrature(
                cons, channel.db_to_linear(snr_db), n_nodes)
        return lambda snr_db: mi_bicm_quadrature(
            cons, labeling, channel.db_to_linear(snr_db), n_nodes)
    if method != "monte_carlo":
        raise ValueError(f"unknown method {method!r}")

    if scheme == "cm":
        return lambda snr_db: mi_cm_mc(
            cons, channel.db_to_linear(snr_db), n_samples, seed,
            n_shards=n_shards, bank=bank, n_workers=n_workers)
    return lambda snr_db: mi_bicm_mc(
        cons, labeling, channel.db_to_linear(snr_db), n_samples, seed,
        n_shards=n_shards, bank=bank, n_workers=n_workers)


def sweep(scheme, cons, labeling=None, snr_db_grid=(), *,
          n_samples: int = DEFAULT_SAMPLES, seed: int = 0,
          n_shards: int = DEFAULT_SHARDS, bank: SampleBank | None = None,
          method: str = "monte_carlo", n_nodes: int = DEFAULT_NODES,
          n_workers: int = 1) -> SweepResult:
    """Estimate mutual information over an increasing grid of SNR values.

    All grid points share one sample bank (common random numbers), so the
    resulting curve is monotone up to quadrature/rounding effects rather
    than independently noisy per point.
    """
    grid = [float(v) for v in snr_db_grid]
    if not grid:
        raise ValueError("snr_db_grid must not be empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("snr_db_grid must be strictly increasing")
    if cons is not None and method == "monte_carlo":
        bank = bank if bank is not None else SampleBank(seed, n_samples, n_shards)
    probe = _make_probe(scheme, cons, labeling, n_samples=n_samples, seed=seed,
                        n_shards=n_shards, bank=bank, method=method,
                        n_nodes=n_nodes, n_workers=n_workers)
    label = "capacity" if cons is None else cons.describe()
    rows = tuple((snr_db, probe(snr_db)) for snr_db in grid)
    return SweepResult(scheme=scheme, label=label, rows=rows)


def snr_at_target_mi(scheme, cons, labeling=None, *, target: float,
                     tol_db: float = DEFAULT_TOL_DB,
                     n_samples: int = DEFAULT_SAMPLES, seed: int = 0,
                     n_shards: int = DEFAULT_SHARDS,
                     bank: SampleBank | None = None,
                     method: str = "monte_carlo", n_nodes: int = DEFAULT_NODES,
                     n_workers: int = 1) -> float:
    """SNR (dB) at which the scheme's mutual information reaches ``target``.

    Brackets the crossing by doubling an initial 1 dB step above the
    capacity SNR and bisects until the bracket is narrower than
    ``tol_db``, returning the bracket midpoint.  Every probe reuses the
    same sample bank, so the searched function is deterministic and
    monotone for a fixed seed.
    """
    if not tol_db > 0:
        raise ValueError("tol_db must be positive")
    if not target > 0:
        raise ValueError("target rate must be positive")
    if cons is not None:
        peak_rate = math.log2(cons.symbols.size)
        if target >= peak_rate:
            raise UnattainableRateError(
                f"target {target} is not below the {peak_rate}-bit alphabet limit")
    if cons is not None and method == "monte_carlo":
        bank = bank if bank is not None else SampleBank(seed, n_samples, n_shards)
    probe = _make_probe(scheme, cons, labeling, n_samples=n_samples, seed=seed,
                        n_shards=n_shards, bank=bank, method=method,
                        n_nodes=n_nodes, n_workers=n_workers)

    lo = channel.capacity_snr_db(target) - tol_db
    span = 1.0
    est = probe(lo + span)
    while est.value < target:
        span *= 2.0
        if span > MAX_BRACKET_SPAN_DB:
            margin = max(3.0 * est.std_error, 1e-9)
            if cons is not None and target >= math.log2(cons.symbols.size) - margin:
                raise UnattainableRateError(
                    f"target {target} saturates the alphabet "
                    f"(reached {est.value:.6f} bits at +{span / 2:.0f} dB)")
            raise BracketSearchError(
                f"no SNR within {MAX_BRACKET_SPAN_DB} dB of the capacity SNR "
                f"reaches rate {target}")
        est = probe(lo + span)
    hi = lo + span
    while hi - lo > tol_db:
        mid = 0.5 * (lo + hi)
        if probe(mid).value < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gap_to_capacity_db(scheme, cons, labeling=None, *, target: float,
                       tol_db: float = DEFAULT_TOL_DB,
                       n_samples: int = DEFAULT_SAMPLES, seed: int = 0,
                       n_shards: int = DEFAULT_SHARDS,
                       bank: SampleBank | None = None,
                       method: str = "monte_carlo",
                       n_nodes: int = DEFAULT_NODES,
                       n_workers: int = 1) -> GapReport:
    """dB distance between the SNR needed for ``target`` and the capacity SNR."""
    snr_db = snr_at_target_mi(scheme, cons, labeling, target=target,
                              tol_db=tol_db, n_samples=n_samples, seed=seed,
                              n_shards=n_shards, bank=bank, method=method,
                              n_nodes=n_nodes, n_workers=n_workers)
    cap_db = channel.capacity_snr_db(target)
    return GapReport(scheme=scheme,
                     label="capacity" if cons is None else cons.describe(),
                     target_rate=float(target), snr_at_rate_db=snr_db,
                     capacity_snr_db=cap_db, gap_db=snr_db - cap_db)


def _family_members(family, m_values, lam, scheme):
    members = []
    for m_symbols in m_values:
        cons = make_constellation(family, m_symbols, lam)
        labeling = constellation.gray_labels(m_symbols) if scheme == "bicm" else None
        members.append((int(m_symbols), cons, labeling))
    return members


def best_in_family(family, m_values, scheme, target, *, lam: float | None = None,
                   tol_db: float = DEFAULT_TOL_DB,
                   n_samples: int = DEFAULT_SAMPLES, seed: int = 0,
                   n_shards: int = DEFAULT_SHARDS,
                   bank: SampleBank | None = None,
                   method: str = "monte_carlo", n_nodes: int = DEFAULT_NODES,
                   n_workers: int = 1) -> tuple[int, float]:
    """Smallest required SNR over the family members; returns (m, snr_db).

    Members whose alphabet cannot carry the target are skipped; if every
    member is skipped the rate is unattainable for the family.  Ties go
    to the smaller alphabet.
    """
    if not m_values:
        raise ValueError("m_values must not be empty")
    if bank is None and method == "monte_carlo":
        bank = SampleBank(seed, n_samples, n_shards)
    best: tuple[int, float] | None = None
    for m_symbols, cons, labeling in _family_members(family, m_values, lam, scheme):
        try:
            snr_db = snr_at_target_mi(scheme, cons, labeling, target=target,
                                      tol_db=tol_db, n_samples=n_samples,
                                      seed=seed, n_shards=n_shards, bank=bank,
                                      method=method, n_nodes=n_nodes,
                                      n_workers=n_workers)
        except UnattainableRateError:
            continue
        if best is None or snr_db < best[1]:
            best = (m_symbols, snr_db)
    if best is None:
        raise UnattainableRateError(
            f"rate {target} is unattainable for every supplied {family} size")
    return best


def compare_families(targets, scheme, m_values, *, lam: float | None = None,
                     tol_db: float = DEFAULT_TOL_DB,
                     n_samples: int = DEFAULT_SAMPLES, seed: int = 0,
                     n_shards: int = DEFAULT_SHARDS,
                     bank: SampleBank | None = None,
                     method: str = "monte_carlo", n_nodes: int = DEFAULT_NODES,
                     n_workers: int = 1) -> list[FamilyComparison]:
    """Best log-family versus best martinez-family SNR at each target rate.

    ``delta_db`` is the martinez SNR minus the log SNR, so positive values
    mean the log family needs less power.  All searches of all members
    share one sample bank.
    """
    targets = [float(t) for t in targets]
    if not targets:
        raise ValueError("targets must not be empty")
    if bank is None and method == "monte_carlo":
        bank = SampleBank(seed, n_samples, n_shards)
    shared = dict(tol_db=tol_db, n_samples=n_samples, seed=seed,
                  n_shards=n_shards, bank=bank, method=method,
                  n_nodes=n_nodes, n_workers=n_workers)
    rows = []
    for target in targets:
        log_m, log_snr = best_in_family("log", m_values, scheme, target, **shared)
        mart_m, mart_snr = best_in_family("martinez", m_values, scheme, target,
                                          lam=lam, **shared)
        rows.append(FamilyComparison(target_rate=target, log_m=log_m,
                                     log_snr_db=log_snr, martinez_m=mart_m,
                                     martinez_snr_db=mart_snr,
                                     delta_db=mart_snr - log_snr))
    return rows
