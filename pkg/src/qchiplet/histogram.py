"""Measurement histograms: exact probabilities and seeded sampling."""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

PROB_SUM_TOL = 1e-9
RNG_ALGORITHM = "pcg64"


@dataclass(frozen=True)
class HistogramRecord:
    labels: tuple        # fixed-width bitstrings, ascending basis index
    probabilities: tuple
    shots: int = 0
    seed: int = 0
    counts: tuple = None  # present only when shots > 0
    rng_algorithm: str = RNG_ALGORITHM

    def __post_init__(self):
        probs = tuple(float(x) for x in self.probabilities)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "probabilities", probs)
        if abs(sum(probs) - 1.0) > PROB_SUM_TOL:
            raise ConfigError(f"histogram probabilities sum to {sum(probs)}, not 1")
        if self.counts is not None:
            counts = tuple(int(c) for c in self.counts)
            object.__setattr__(self, "counts", counts)
            if sum(counts) != self.shots:
                raise ConfigError("histogram counts do not sum to shots")


def bit_labels(n_bits: int):
    return tuple(format(i, f"0{n_bits}b") for i in range(1 << n_bits))


def exact_histogram(probabilities, n_bits: int) -> HistogramRecord:
    return HistogramRecord(bit_labels(n_bits), tuple(probabilities))


def sample_histogram(probabilities, n_bits: int, shots: int, seed: int) -> HistogramRecord:
    """Multinomial draw with a seeded PCG64 generator; reproducible per seed."""
    if shots <= 0:
        raise ConfigError("shots must be positive for sampling")
    probs = np.asarray(probabilities, dtype=float)
    probs = probs / probs.sum()  # guard tiny drift before the draw
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    return HistogramRecord(
        bit_labels(n_bits), tuple(probs), shots=shots, seed=seed, counts=tuple(int(c) for c in counts)
    )


def total_variation(p, q) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return 0.5 * float(np.abs(p - q).sum())


def state_probabilities(state) -> np.ndarray:
    amps = np.asarray(state, dtype=np.complex128)
    return np.abs(amps) ** 2
