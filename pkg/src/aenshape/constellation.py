"""One-dimensional amplitude constellations for energy-modulated channels.

Three families of non-negative, equiprobable amplitude sets are provided,
all normalized to unit mean amplitude:

* ``uniform``  -- equally spaced points starting at zero,
* ``martinez`` -- power-law spacing ``(i-1)**lam`` with a free exponent,
* ``log``      -- centroids of equal-probability slices of a two-sided
  exponential shaping density, which approximate the capacity-achieving
  input of the additive exponential noise channel as the set grows.

Gray bit labelings for power-of-two sizes and lossless CSV/JSON
serialization round out the module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Constellation",
    "BitLabeling",
    "gen_uniform",
    "gen_martinez",
    "gen_log",
    "gray_labels",
    "alpha_breakpoints",
    "tail_moment",
    "tail_moment_full",
    "to_csv",
    "from_csv",
    "to_json",
    "from_json",
]

FAMILIES = ("uniform", "martinez", "log")

MIN_SIZE = 2
MAX_SIZE = 4096

#: Absolute tolerance on the unit-mean normalization.
MEAN_TOL = 1e-12


@dataclass(frozen=True)
class Constellation:
    """An ordered set of ``M`` non-negative amplitudes with unit mean.

    Attributes:
        family: one of ``uniform``, ``martinez``, ``log``.
        symbols: strictly increasing float array, ``symbols[0] == 0``.
        beta: normalization scale that was applied to the raw family
            shape to reach unit mean.
        lam: shape exponent; only present for the ``martinez`` family.
    """

    family: str
    symbols: np.ndarray
    beta: float
    lam: float | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        symbols = np.asarray(self.symbols, dtype=np.float64)
        symbols.setflags(write=False)
        object.__setattr__(self, "symbols", symbols)
        m = symbols.size
        if m < MIN_SIZE:
            raise ValueError(f"constellation needs at least {MIN_SIZE} symbols, got {m}")
        if m > MAX_SIZE:
            raise ValueError(f"constellation size {m} exceeds supported maximum {MAX_SIZE}")
        if symbols[0] != 0.0:
            raise ValueError("smallest symbol must be exactly 0")
        if not np.all(np.diff(symbols) > 0):
            raise ValueError("symbols must be strictly increasing")
        mean = math.fsum(symbols.tolist()) / m
        if abs(mean - 1.0) > MEAN_TOL:
            raise ValueError(f"symbols must have unit mean, got {mean!r}")
        if (self.lam is not None) != (self.family == "martinez"):
            raise ValueError("lam is set if and only if family is 'martinez'")

    @property
    def size(self) -> int:
        return int(self.symbols.size)

    def describe(self) -> str:
        if self.family == "martinez":
            return f"martinez(M={self.size}, lam={self.lam})"
        return f"{self.family}(M={self.size})"


@dataclass(frozen=True)
class BitLabeling:
    """Gray bit labels attached to the symbols of a 2**m point set.

    ``bits[i]`` is the m-bit label (most significant bit first) of the
    i-th symbol in ascending amplitude order.  Adjacent labels differ in
    exactly one bit and the labels enumerate all of {0,1}^m.
    """

    bits: np.ndarray = field(repr=False)

    def __post_init__(self):
        bits = np.ascontiguousarray(np.asarray(self.bits, dtype=np.uint8))
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)
        m_syms, m = bits.shape
        if m_syms != 2**m:
            raise ValueError("label matrix must be 2**m by m")
        if not np.isin(bits, (0, 1)).all():
            raise ValueError("labels must be binary")
        codes = self.codewords()
        if len(set(codes.tolist())) != m_syms:
            raise ValueError("labels must be a permutation of all m-bit patterns")
        if np.any((bits[1:] != bits[:-1]).sum(axis=1) != 1):
            raise ValueError("adjacent labels must differ in exactly one bit")

    @property
    def m(self) -> int:
        return int(self.bits.shape[1])

    @property
    def size(self) -> int:
        return int(self.bits.shape[0])

    def codewords(self) -> np.ndarray:
        """Labels packed as integers, most significant bit first."""
        weights = 1 << np.arange(self.m - 1, -1, -1)
        return (self.bits.astype(np.int64) * weights).sum(axis=1)

    def bitstrings(self) -> list[str]:
        return ["".join(str(b) for b in row) for row in self.bits]


def _normalize(family: str, raw: np.ndarray, lam: float | None = None) -> Constellation:
    # fsum keeps the unit-mean invariant inside MEAN_TOL even at M = 4096
    mean = math.fsum(raw.tolist()) / raw.size
    beta = 1.0 / mean
    return Constellation(family=family, symbols=raw / mean, beta=beta, lam=lam)


def _check_size(m_symbols: int) -> int:
    m_symbols = int(m_symbols)
    if m_symbols < MIN_SIZE:
        raise ValueError(f"need at least {MIN_SIZE} symbols, got {m_symbols}")
    if m_symbols > MAX_SIZE:
        raise ValueError(f"size {m_symbols} exceeds supported maximum {MAX_SIZE}")
    return m_symbols


def gen_uniform(m_symbols: int) -> Constellation:
    """Equally spaced amplitudes 0, b, 2b, ... with unit mean (b = 2/(M-1))."""
    m_symbols = _check_size(m_symbols)
    raw = np.arange(m_symbols, dtype=np.float64)
    return _normalize("uniform", raw)


def gen_martinez(m_symbols: int, lam: float) -> Constellation:
    """Power-law amplitudes ``beta * (i-1)**lam``, unit mean.

    ``lam`` is a free shape exponent; 1.618 is the near-optimal choice
    for the additive exponential noise channel at high SNR, and
    ``lam = 1`` recovers the uniform family.
    """
    m_symbols = _check_size(m_symbols)
    lam = float(lam)
    if not lam > 0:
        raise ValueError(f"shape exponent must be positive, got {lam}")
    raw = np.arange(m_symbols, dtype=np.float64) ** lam
    return _normalize("martinez", raw, lam=lam)


def tail_moment_full(m_symbols: int, k) -> np.ndarray | float:
    """First moment of the unit-scale shaping density above breakpoint k.

    For the two-sided density exp(-|x|)/2 sliced into 2M-1 equal-mass
    intervals, this equals (2M-1) * integral of x*exp(-x)/2 from the k-th
    breakpoint to infinity, valid on the positive half axis
    (k in {M+1, ..., 2M}).  Consecutive differences give the unnormalized
    upper-half centroids.  The limit value 0 is used at k = 2M.
    """
    k = np.asarray(k, dtype=np.float64)
    t = 2.0 * m_symbols - k
    c = (2.0 * m_symbols - 1.0) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(t > 0, t * (1.0 + np.log(c / np.where(t > 0, t, 1.0))), 0.0)
    return out if out.ndim else float(out)


def tail_moment(m_symbols: int, i) -> np.ndarray | float:
    """Same as :func:`tail_moment_full` after reindexing to i = k - M + 1.

    Defined for i in {2, ..., M+1}; consecutive differences give the
    unnormalized log-constellation amplitudes.
    """
    i = np.asarray(i, dtype=np.float64)
    t = m_symbols + 1.0 - i
    c = (2.0 * m_symbols - 1.0) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(t > 0, t * (1.0 + np.log(c / np.where(t > 0, t, 1.0))), 0.0)
    return out if out.ndim else float(out)


def gen_log(m_symbols: int) -> Constellation:
    """Centroid-of-equal-mass-slice amplitudes in closed form, unit mean.

    The raw amplitudes are consecutive differences of :func:`tail_moment`;
    the difference is evaluated in a cancellation-free rearrangement so the
    symbols stay accurate to full double precision at large M.
    """
    m_symbols = _check_size(m_symbols)
    i = np.arange(2, m_symbols + 1, dtype=np.float64)
    t = m_symbols + 1.0 - i  # runs M-1 down to 1
    c = (2.0 * m_symbols - 1.0) / 2.0
    # tail_moment(i) - tail_moment(i+1) == 1 + log(c/t) - (t-1)*log(t/(t-1))
    tm1 = t - 1.0
    correction = np.zeros_like(t)
    mask = tm1 > 0
    correction[mask] = tm1[mask] * (np.log(t[mask]) - np.log(tm1[mask]))
    raw = np.concatenate(([0.0], 1.0 + np.log(c / t) - correction))
    return _normalize("log", raw)


def alpha_breakpoints(m_symbols: int) -> np.ndarray:
    """Equal-mass breakpoints of the unit-scale shaping density.

    Returns 2M values from -inf to +inf splitting exp(-|x|)/2 into 2M-1
    intervals of probability 1/(2M-1) each.  The symmetric SNR-dependent
    prefactor of the density cancels in the later normalization, so the
    breakpoints are produced at unit scale.
    """
    m_symbols = _check_size(m_symbols)
    denom = 2.0 * m_symbols - 1.0
    alphas = np.empty(2 * m_symbols, dtype=np.float64)
    alphas[0] = -np.inf
    alphas[-1] = np.inf
    k = np.arange(2, m_symbols + 1, dtype=np.float64)
    alphas[1:m_symbols] = np.log(2.0 * (k - 1.0) / denom)
    k = np.arange(m_symbols + 1, 2 * m_symbols, dtype=np.float64)
    alphas[m_symbols:-1] = -np.log(2.0 * (2.0 * m_symbols - k) / denom)
    return alphas


def gray_labels(m_symbols: int) -> BitLabeling:
    """Binary-reflected Gray labeling in ascending symbol order."""
    m_symbols = int(m_symbols)
    if m_symbols < 2 or m_symbols & (m_symbols - 1):
        raise ValueError(f"bit labeling needs a power-of-two size, got {m_symbols}")
    m = m_symbols.bit_length() - 1
    idx = np.arange(m_symbols)
    codes = idx ^ (idx >> 1)
    bits = (codes[:, None] >> np.arange(m - 1, -1, -1)[None, :]) & 1
    return BitLabeling(bits=bits.astype(np.uint8))


# ---------------------------------------------------------------------------
# serialization
#
# Floats are rendered with repr(), the shortest digit string that parses back
# to the identical double, so round-trips are lossless.

def to_csv(cons: Constellation, labeling: BitLabeling | None = None) -> str:
    """Render one symbol per row as ``index,amplitude[,label]``."""
    if labeling is not None and labeling.size != cons.size:
        raise ValueError("labeling size does not match constellation size")
    lines = []
    if labeling is None:
        lines.append("index,amplitude")
        for i, x in enumerate(cons.symbols.tolist()):
            lines.append(f"{i},{x!r}")
    else:
        lines.append("index,amplitude,label")
        strings = labeling.bitstrings()
        for i, x in enumerate(cons.symbols.tolist()):
            lines.append(f"{i},{x!r},{strings[i]}")
    return "\n".join(lines) + "\n"


def from_csv(text: str) -> tuple[np.ndarray, BitLabeling | None]:
    """Parse :func:`to_csv` output back into symbols and optional labels."""
    lines = [ln for ln in text.strip().splitlines() if ln]
    header = lines[0].split(",")
    if header[:2] != ["index", "amplitude"]:
        raise ValueError("unrecognized csv header")
    with_labels = len(header) == 3
    symbols, rows = [], []
    for ln in lines[1:]:
        parts = ln.split(",")
        symbols.append(float(parts[1]))
        if with_labels:
            rows.append([int(ch) for ch in parts[2]])
    labeling = BitLabeling(bits=np.array(rows, dtype=np.uint8)) if with_labels else None
    return np.array(symbols, dtype=np.float64), labeling


def to_json(cons: Constellation, labeling: BitLabeling | None = None) -> str:
    if labeling is not None and labeling.size != cons.size:
        raise ValueError("labeling size does not match constellation size")
    doc = {
        "family": cons.family,
        "m": cons.size,
        "lambda": cons.lam,
        "beta": cons.beta,
        "symbols": [float(x) for x in cons.symbols],
        "labels": labeling.bitstrings() if labeling is not None else None,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_json(text: str) -> tuple[Constellation, BitLabeling | None]:
    doc = json.loads(text)
    cons = Constellation(
        family=doc["family"],
        symbols=np.array(doc["symbols"], dtype=np.float64),
        beta=doc["beta"],
        lam=doc["lambda"],
    )
    labeling = None
    if doc.get("labels") is not None:
        bits = np.array([[int(ch) for ch in s] for s in doc["labels"]], dtype=np.uint8)
        labeling = BitLabeling(bits=bits)
    return cons, labeling
