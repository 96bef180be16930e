"""State-update kernels: apply a small gate directly to a dense state.

Two interchangeable backends compute the same thing:

* ``numba`` - an @njit inner loop (default when numba imports cleanly);
* ``numpy`` - vectorized gather/matmul/scatter, used as fallback.

Set QCHIPLET_NO_NUMBA=1 to force the numpy path for the whole process;
individual calls can also pick a backend explicitly (the benchmark does).
Both backends mutate the state in place and return it.
"""

import os

import numpy as np

from .errors import ConfigError, ShapeError

_DISABLED = os.environ.get("QCHIPLET_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")

if not _DISABLED:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

DEFAULT_BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _offsets_and_mask(tpos: np.ndarray):
    k = tpos.shape[0]
    dk = 1 << k
    offsets = np.zeros(dk, dtype=np.int64)
    for t in range(dk):
        off = 0
        for b in range(k):
            if (t >> (k - 1 - b)) & 1:
                off |= 1 << int(tpos[b])
        offsets[t] = off
    tmask = 0
    for b in range(k):
        tmask |= 1 << int(tpos[b])
    return offsets, tmask


def _apply_numpy(state, gate, offsets, tmask, cmask, cval):
    idx = np.arange(state.shape[0], dtype=np.int64)
    bases = idx[((idx & tmask) == 0) & ((idx & cmask) == cval)]
    gather = bases[:, None] + offsets[None, :]
    state[gather] = state[gather] @ gate.T
    return state


if HAVE_NUMBA:

    @njit(cache=True)
    def _apply_numba(state, gate, offsets, tmask, cmask, cval):  # pragma: no cover
        dk = offsets.shape[0]
        buf = np.empty(dk, dtype=np.complex128)
        for base in range(state.shape[0]):
            if base & tmask:
                continue
            if (base & cmask) != cval:
                continue
            for t in range(dk):
                buf[t] = state[base + offsets[t]]
            for t in range(dk):
                acc = 0.0 + 0.0j
                for u in range(dk):
                    acc += gate[t, u] * buf[u]
                state[base + offsets[t]] = acc
        return state


def apply_gate_inplace(state, gate, tpos, cmask=0, cval=0, backend=None):
    """Apply `gate` (2**k square) at target bit positions `tpos`.

    `cmask`/`cval` restrict the action to basis states i with
    i & cmask == cval; every other amplitude is left untouched.
    """
    state = np.ascontiguousarray(state, dtype=np.complex128)
    gate = np.ascontiguousarray(gate, dtype=np.complex128)
    tpos = np.asarray(tpos, dtype=np.int64)
    dk = 1 << tpos.shape[0]
    if gate.shape != (dk, dk):
        raise ShapeError(f"gate shape {gate.shape} does not match {tpos.shape[0]} targets")
    offsets, tmask = _offsets_and_mask(tpos)
    if backend is None:
        backend = DEFAULT_BACKEND
    if backend == "numba":
        if not HAVE_NUMBA:
            raise ConfigError("numba backend requested but numba is unavailable or disabled")
        return _apply_numba(state, gate, offsets, tmask, np.int64(cmask), np.int64(cval))
    if backend == "numpy":
        return _apply_numpy(state, gate, offsets, tmask, int(cmask), int(cval))
    raise ConfigError(f"unknown kernel backend {backend!r}")
