"""Pure numpy implementation of the Monte Carlo kernels.

Bit-for-bit twin of ``_ckernels.pyx``. Random words come from a counter-based
SplitMix64: word ``i`` of a stream is ``mix(key + (i + 1) * GAMMA)``, so any
contiguous slice of samples can be produced independently of the others.
"""
import numpy as np

GAMMA = 0x9E3779B97F4A7C15
STREAM_GAMMA = 0xD1B54A32D192ED03
MASK64 = (1 << 64) - 1
DETECTION_STRIDE = 5

_CHUNK = 1 << 18
_U64 = np.uint64
_INV_2_53 = 1.0 / (1 << 53)


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, stream: int) -> int:
    return mix64(mix64(seed) ^ ((stream * STREAM_GAMMA) & MASK64))


def _mix_array(z):
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    return z ^ (z >> _U64(31))


def words(key: int, start: int, count: int):
    """Words ``start .. start+count-1`` of the stream as a uint64 array."""
    idx = np.arange(start + 1, start + 1 + count, dtype=_U64)
    with np.errstate(over="ignore"):
        return _mix_array(_U64(key) + idx * _U64(GAMMA))


def state_counts(key: int, start: int, stop: int):
    """Occupancy of the four source states over samples [start, stop).

    Sample ``i`` reads word ``i``; its top bit is n and the next bit m.
    """
    counts = np.zeros(4, dtype=np.int64)
    for lo in range(start, stop, _CHUNK):
        w = words(key, lo, min(_CHUNK, stop - lo))
        counts += np.bincount((w >> _U64(62)).astype(np.intp), minlength=4)
    return counts


def coincidence_counts(key: int, start: int, stop: int, probs):
    """Trials and fourfold coincidences per source state over trials [start, stop).

    Trial ``i`` reads words ``5i .. 5i+4``: the first picks the state, the
    others give one uniform per detector (53-bit, in [0, 1)). Detector j
    fires when its uniform is below ``probs[state, j]``.
    """
    probs = np.ascontiguousarray(probs, dtype=np.float64).reshape(4, 4)
    trials = np.zeros(4, dtype=np.int64)
    hits = np.zeros(4, dtype=np.int64)
    step = _CHUNK // DETECTION_STRIDE
    for lo in range(start, stop, step):
        n = min(step, stop - lo)
        w = words(key, DETECTION_STRIDE * lo, DETECTION_STRIDE * n).reshape(n, DETECTION_STRIDE)
        state = (w[:, 0] >> _U64(62)).astype(np.intp)
        u = (w[:, 1:] >> _U64(11)).astype(np.float64) * _INV_2_53
        fired = np.all(u < probs[state], axis=1)
        trials += np.bincount(state, minlength=4)
        hits += np.bincount(state[fired], minlength=4)
    return trials, hits
