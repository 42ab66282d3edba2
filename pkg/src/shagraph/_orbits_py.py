"""Pure-Python (numpy/scipy) orbit labelling; same contract as ``_orbits``."""

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def label_orbits(radices, places, move_ptr, move_edge, perm_ptr, perms, total):
    states = np.arange(total, dtype=np.int64)
    if total == 0:
        return np.empty(0, dtype=np.int32), np.empty(0, dtype=np.int64)
    digits = {}
    src, dst = [], []
    for m in range(len(move_ptr) - 1):
        image = states.copy()
        for k in range(move_ptr[m], move_ptr[m + 1]):
            e = move_edge[k]
            if e not in digits:
                digits[e] = (states // places[e]) % radices[e]
            d = digits[e]
            perm = perms[perm_ptr[k]:perm_ptr[k] + radices[e]]
            image += (perm[d] - d) * places[e]
        moved = image != states
        src.append(states[moved])
        dst.append(image[moved])
    if src:
        rows = np.concatenate(src)
        cols = np.concatenate(dst)
    else:
        rows = cols = np.empty(0, dtype=np.int64)
    adj = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(total, total))
    _, comp = connected_components(adj, directed=True, connection="weak")
    # relabel components by their least member, ascending
    first = np.full(comp.max() + 1, total, dtype=np.int64)
    np.minimum.at(first, comp, states)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    return rank[comp].astype(np.int32), first[order]
