"""Orbit labelling for coordinatewise actions on finite product spaces.

A state is a tuple of digits ``(d_0, ..., d_{n-1})`` with ``0 <= d_i < radices[i]``,
encoded as a mixed-radix integer with coordinate 0 most significant, so integer
order is lexicographic order on tuples.  A *move* permutes some coordinates
independently; orbits are the connected components of the move graph.

The compiled kernel is used when it was built; set ``SHAGRAPH_PURE=1`` to force
the numpy fallback.
"""

import os

import numpy as np

from .errors import StateBoundExceeded

DEFAULT_MAX_STATES = 10**7

if os.environ.get("SHAGRAPH_PURE"):
    from . import _orbits_py as _backend
    BACKEND = "python"
else:
    try:
        from . import _orbits as _backend
        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _orbits_py as _backend
        BACKEND = "python"


def state_count(radices):
    total = 1
    for r in radices:
        total *= int(r)
    return total


def places_for(radices):
    places = [1] * len(radices)
    for i in range(len(radices) - 2, -1, -1):
        places[i] = places[i + 1] * int(radices[i + 1])
    return np.asarray(places, dtype=np.int64)


def encode(digits, radices):
    x = 0
    for d, r in zip(digits, radices):
        x = x * int(r) + int(d)
    return x


def decode(x, radices):
    out = []
    for r in reversed(radices):
        x, d = divmod(int(x), int(r))
        out.append(d)
    return tuple(reversed(out))


def decode_many(states, radices):
    """Digit matrix (N x n) for an array of encoded states."""
    states = np.asarray(states, dtype=np.int64)
    places = places_for(radices)
    out = np.empty((len(states), len(radices)), dtype=np.int64)
    for i, r in enumerate(radices):
        out[:, i] = (states // places[i]) % r
    return out


def encode_many(digits, radices):
    digits = np.asarray(digits, dtype=np.int64)
    if digits.ndim == 1:
        digits = digits.reshape(1, -1)
    return digits @ places_for(radices) if len(radices) else np.zeros(len(digits), dtype=np.int64)


def check_bound(total, max_states, what="states"):
    if total > max_states:
        raise StateBoundExceeded(
            f"{total} {what} exceed the bound {max_states}", witness=total
        )


def label_orbits(radices, moves, max_states=DEFAULT_MAX_STATES, backend=None):
    """Label every state by the index of its orbit.

    ``moves`` is a list of ``{coordinate: permutation}`` dicts.  Orbits are
    numbered in order of their lexicographically least member, which is
    returned as ``reps[i]`` (encoded).  Returns ``(labels, reps)``.
    """
    radices = [int(r) for r in radices]
    total = state_count(radices)
    check_bound(total, max_states)
    move_ptr = [0]
    move_edge, perm_ptr, perms = [], [], []
    for move in moves:
        for e in sorted(move):
            perm = np.asarray(move[e], dtype=np.int64)
            if len(perm) != radices[e]:
                raise ValueError(f"permutation on coordinate {e} has wrong length")
            if np.array_equal(perm, np.arange(radices[e])):
                continue
            move_edge.append(e)
            perm_ptr.append(len(perms))
            perms.extend(perm.tolist())
        if len(move_edge) > move_ptr[-1]:
            move_ptr.append(len(move_edge))
    impl = _backend if backend is None else _pick(backend)
    arr = lambda xs: np.ascontiguousarray(xs, dtype=np.int64)
    return impl.label_orbits(
        arr(radices), places_for(radices), arr(move_ptr), arr(move_edge),
        arr(perm_ptr), arr(perms), total,
    )


def _pick(name):
    if name == "python":
        from . import _orbits_py
        return _orbits_py
    if name == "cython":
        from . import _orbits
        return _orbits
    raise ValueError(f"unknown backend {name!r}")
