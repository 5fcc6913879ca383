"""Counter-based random streams: one xoshiro256** generator per trial.

The state of trial i under master seed s is derived as

    seed_i = mix64(s XOR (i * GOLDEN_GAMMA mod 2^64))
    state  = four successive splitmix64 outputs started from seed_i

so any trial can be regenerated independently of the others.  Two
implementations share this derivation: a pure-Python scalar generator
(the reference) and a numpy lane bank that advances many trials at once.
Both expose the same drawing methods, and their outputs agree exactly.

Uniforms lie in (0, 1] and are ((r >> 11) + 1) * 2^-53.  Normals come
from Box-Muller; both outputs of every pair are used, the second one
being held for the next request.
"""
import math

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MUL1 = 0xBF58476D1CE4E5B9
MIX_MUL2 = 0x94D049BB133111EB
TWO_POW_M53 = 2.0 ** -53


def mix64(z):
    """splitmix64 output finalizer on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_MUL1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_MUL2) & MASK64
    return z ^ (z >> 31)


def _check_seed(master_seed):
    if int(master_seed) != master_seed or not 0 <= master_seed <= MASK64:
        raise ValueError(f"seed must be an integer in [0, 2^64), got {master_seed!r}")
    return int(master_seed)


def stream_state(master_seed, trial_index):
    """The four xoshiro256** state words of one trial, as Python ints."""
    master_seed = _check_seed(master_seed)
    if int(trial_index) != trial_index or trial_index < 0:
        raise ValueError(f"trial index must be a nonnegative integer, got {trial_index!r}")
    sm = mix64(master_seed ^ ((int(trial_index) * GOLDEN_GAMMA) & MASK64))
    words = []
    for _ in range(4):
        sm = (sm + GOLDEN_GAMMA) & MASK64
        words.append(mix64(sm))
    return words


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class _Draws:
    """Drawing methods shared by both generators; each returns one row per lane."""

    def __init__(self):
        self._spare = None

    def uniforms(self, count):
        """(lanes, count) array of uniforms in (0, 1]."""
        out = np.empty((self.lanes, count))
        for j in range(count):
            out[:, j] = ((self.next_u64() >> np.uint64(11)).astype(np.float64) + 1.0) * TWO_POW_M53
        return out

    def signs(self, count):
        """(lanes, count) array of +-1 taken from the top bit."""
        out = np.empty((self.lanes, count))
        for j in range(count):
            out[:, j] = np.where(self.next_u64() >> np.uint64(63), 1.0, -1.0)
        return out

    def normals(self, count):
        """(lanes, count) array of standard normals."""
        out = np.empty((self.lanes, count))
        j = 0
        if count and self._spare is not None:
            out[:, 0] = self._spare
            self._spare = None
            j = 1
        while j < count:
            u = self.uniforms(2)
            r = np.sqrt(-2.0 * np.log(u[:, 0]))
            angle = 2.0 * math.pi * u[:, 1]
            out[:, j] = r * np.cos(angle)
            second = r * np.sin(angle)
            if j + 1 < count:
                out[:, j + 1] = second
            else:
                self._spare = second
            j += 2
        return out


class Xoshiro256:
    """Scalar reference generator for one trial (pure Python integer arithmetic)."""

    def __init__(self, master_seed, trial_index):
        self.s = stream_state(master_seed, trial_index)

    def next_int(self):
        s0, s1, s2, s3 = self.s
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s = [s0, s1, s2, s3]
        return result

    def next_uniform(self):
        return ((self.next_int() >> 11) + 1) * TWO_POW_M53


class ScalarStream(_Draws):
    """One trial's stream with the lane-bank interface (lanes = 1)."""

    lanes = 1

    def __init__(self, master_seed, trial_index):
        super().__init__()
        self.gen = Xoshiro256(master_seed, trial_index)

    def next_u64(self):
        return np.array([self.gen.next_int()], dtype=np.uint64)


class LaneBank(_Draws):
    """Vectorized xoshiro256**: lane j is the stream of trial trial_indices[j]."""

    def __init__(self, master_seed, trial_indices):
        super().__init__()
        states = [stream_state(master_seed, int(i)) for i in trial_indices]
        arr = np.array(states, dtype=np.uint64).reshape(len(states), 4)
        self.s0, self.s1, self.s2, self.s3 = (arr[:, k].copy() for k in range(4))
        self.lanes = len(states)

    def next_u64(self):
        # uint64 arithmetic in numpy wraps modulo 2^64, which is what the generator needs
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        a = s1 * np.uint64(5)
        result = ((a << np.uint64(7)) | (a >> np.uint64(57))) * np.uint64(9)
        t = s1 << np.uint64(17)
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        self.s3 = (s3 << np.uint64(45)) | (s3 >> np.uint64(19))
        return result


def prng_stream(master_seed, trial_index):
    """The stream of one trial, usable wherever a lane bank is accepted."""
    return ScalarStream(master_seed, trial_index)
