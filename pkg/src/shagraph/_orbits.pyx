# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled orbit labelling over a mixed-radix product space."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def label_orbits(const cnp.int64_t[::1] radices,
                 const cnp.int64_t[::1] places,
                 const cnp.int64_t[::1] move_ptr,
                 const cnp.int64_t[::1] move_edge,
                 const cnp.int64_t[::1] perm_ptr,
                 const cnp.int64_t[::1] perms,
                 cnp.int64_t total):
    cdef Py_ssize_t n_moves = move_ptr.shape[0] - 1
    labels = np.full(total, -1, dtype=np.int32)
    stack = np.empty(max(total, 1), dtype=np.int64)
    cdef cnp.int32_t[::1] lab = labels
    cdef cnp.int64_t[::1] st = stack
    cdef cnp.int64_t s, x, y, d, nd, e, top
    cdef Py_ssize_t m, k
    cdef cnp.int32_t cls = 0
    reps = []
    for s in range(total):
        if lab[s] >= 0:
            continue
        reps.append(s)
        lab[s] = cls
        top = 0
        st[top] = s
        top += 1
        while top > 0:
            top -= 1
            x = st[top]
            for m in range(n_moves):
                y = x
                for k in range(move_ptr[m], move_ptr[m + 1]):
                    e = move_edge[k]
                    d = (x // places[e]) % radices[e]
                    nd = perms[perm_ptr[k] + d]
                    y += (nd - d) * places[e]
                if lab[y] < 0:
                    lab[y] = cls
                    st[top] = y
                    top += 1
        cls += 1
    return labels, np.asarray(reps, dtype=np.int64)
