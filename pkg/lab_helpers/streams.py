"""
Counter-based pseudo-random streams.

Every draw is a pure function of a 64-bit key and a 64-bit counter
(SplitMix64 finalizer), so any value of any stream can be produced in any
order and from any thread without shared generator state.
"""
import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_2 = np.uint64(0x94D049BB133111EB)
_ONE = np.uint64(1)
_MASK64 = 2 ** 64 - 1
_TO_UNIT = 2.0 ** -53

# domain salts
SALT_PAIR = 0x5041495253
SALT_WING_DETECTOR = 0x4445544543544F52
SALT_ORACLE = 0x4F5241434C45
SALT_DISTURBANCE = 0x44495354555242
SALT_PAIRING = 0x50414952494E47
SALT_INITIAL = 0x494E4954


def as_key(value):
    """Map a python integer (any sign, any size) onto a uint64 key."""
    return np.uint64(int(value) & _MASK64)


def mix64(z):
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over='ignore'):
        z = (z ^ (z >> np.uint64(30))) * _MIX_1
        z = (z ^ (z >> np.uint64(27))) * _MIX_2
    return z ^ (z >> np.uint64(31))


def counter_hash(key, counter):
    key = np.asarray(key, dtype=np.uint64)
    counter = np.asarray(counter, dtype=np.uint64)
    with np.errstate(over='ignore'):
        state = key + GOLDEN * (counter + _ONE)
    return mix64(state)


def domain_key(key, *labels):
    """Derive an independent key for a sub-stream named by integer labels."""
    key = np.asarray(key, dtype=np.uint64)
    for label in labels:
        key = counter_hash(key, as_key(label))
    return key


def split_keys(master_seed, count):
    """Keys for `count` independent child streams of `master_seed`."""
    return counter_hash(as_key(master_seed),
                        np.arange(count, dtype=np.uint64))


def uniform(key, counter):
    """Uniform doubles in (0, 1]; 53 random bits per draw."""
    bits = counter_hash(key, counter) >> np.uint64(11)
    return (bits.astype(np.float64) + 1.0) * _TO_UNIT


def standard_normal(key, counter):
    """
    Standard normal draws by Box-Muller; each value consumes the two
    consecutive counters `counter` and `counter + 1`.
    """
    counter = np.asarray(counter, dtype=np.uint64)
    u1 = uniform(key, counter)
    u2 = uniform(key, counter + _ONE)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
