"""
Detection rules mapping the state of a particle at the detector to an
outcome (+1 up, -1 down) along the local axis.

Axes are planar: an angle in the x-z plane measured from +z, the axis the
spins were prepared along. Wing-local models see only their own wing.
"""
from dataclasses import dataclass

import numpy as np

from lab_helpers import streams
from lab_helpers.exceptions import ConfigError
from spin.operators import quantum_joint_probs, up_probabilities
from spin.states import Axis
from .config import (
    ANALYTIC_QUANTUM_ORACLE, INDEPENDENT_BORN, SHARED_STREAM_THRESHOLD)

_ANGLE_RESOLUTION = 1e6


@dataclass
class DetectionInput:
    """Per-pair data at detection time, arrays aligned on pair_ids."""
    master_seed: int
    pair_ids: np.ndarray
    mu: np.ndarray
    nu: np.ndarray
    spins1: np.ndarray = None
    spins2: np.ndarray = None
    shared1: np.ndarray = None
    shared2: np.ndarray = None


def relative_angles(angles):
    """Polar angle in [0, pi] of each planar axis."""
    return np.arccos(np.clip(np.cos(angles), -1.0, 1.0))


def angle_codes(angles):
    degrees = np.round(np.degrees(np.asarray(angles, dtype=float)) *
                       _ANGLE_RESOLUTION).astype(np.int64)
    return degrees.astype(np.uint64)


def split_shared(shared):
    """Shared uniform in (0, 1] to (sign in {+1, -1}, uniform in (0, 1])."""
    doubled = 2.0 * np.asarray(shared, dtype=float)
    upper = doubled > 1.0
    return (np.where(upper, -1, 1).astype(np.int8),
            np.where(upper, doubled - 1.0, doubled))


class MeasurementModel:
    name = None
    wing_local = True
    needs_dynamics = True

    def detect(self, data):
        out1 = self.detect_wing(1, data.master_seed, data.pair_ids,
                                data.spins1, data.mu, data.shared1)
        out2 = self.detect_wing(2, data.master_seed, data.pair_ids,
                                data.spins2, data.nu, data.shared2)
        return out1, out2

    def detect_wing(self, wing, master_seed, pair_ids, spins, angles,
                    shared):
        raise NotImplementedError


class IndependentBorn(MeasurementModel):
    """
    Outcome drawn with the one-particle probabilities of the final spin,
    from detector-local randomness keyed by (wing, pair, local angle).
    """
    name = INDEPENDENT_BORN

    def detect_wing(self, wing, master_seed, pair_ids, spins, angles,
                    shared):
        p_up = up_probabilities(spins, relative_angles(angles))
        key = streams.domain_key(streams.as_key(master_seed),
                                 streams.SALT_WING_DETECTOR, wing)
        pair_keys = streams.counter_hash(
            key, np.asarray(pair_ids, dtype=np.uint64))
        draws = streams.uniform(pair_keys, angle_codes(angles))
        return np.where(draws <= p_up, 1, -1).astype(np.int8)


class SharedStreamThreshold(MeasurementModel):
    """
    Deterministic in (final spin, local angle, shared uniform w). The top
    half of w picks a shared sign r, the rescaled remainder w' a threshold
    draw: the outcome is r * spin when w' < cos^2(theta/2) and -r * spin
    otherwise. Both wings read the same w at equal axes, so their outcomes
    stay opposite while each marginal is a fair coin whatever the spin.
    """
    name = SHARED_STREAM_THRESHOLD

    def detect_wing(self, wing, master_seed, pair_ids, spins, angles,
                    shared):
        sign, draw = split_shared(shared)
        threshold = np.cos(0.5 * relative_angles(angles)) ** 2
        spins = sign * np.asarray(spins, dtype=np.int8)
        return np.where(draw < threshold, spins, -spins).astype(np.int8)


class AnalyticQuantumOracle(MeasurementModel):
    """Joint sampling from the singlet probabilities; not wing-local."""
    name = ANALYTIC_QUANTUM_ORACLE
    wing_local = False
    needs_dynamics = False

    def detect(self, data):
        key = streams.domain_key(streams.as_key(data.master_seed),
                                 streams.SALT_ORACLE)
        draws = streams.uniform(key,
                                np.asarray(data.pair_ids, dtype=np.uint64))
        out1 = np.empty(len(draws), dtype=np.int8)
        out2 = np.empty(len(draws), dtype=np.int8)
        settings = np.stack([data.mu, data.nu], axis=1)
        unique, inverse = np.unique(settings, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        for k, (mu, nu) in enumerate(unique):
            members = inverse == k
            table = quantum_joint_probs(Axis.planar(mu), Axis.planar(nu))
            edges = np.cumsum(table)
            edges[-1] = 1.0
            cells = np.searchsorted(edges, draws[members], side='left')
            out1[members] = np.where(cells < 2, 1, -1)
            out2[members] = np.where(cells % 2 == 0, 1, -1)
        return out1, out2


MEASUREMENT_MODELS = {
    model.name: model
    for model in (IndependentBorn, SharedStreamThreshold,
                  AnalyticQuantumOracle)
}


def get_measurement_model(name):
    try:
        return MEASUREMENT_MODELS[name]()
    except KeyError:
        raise ConfigError('unknown measurement model %r' % (name,))
