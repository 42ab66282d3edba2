"""Independent brute-force checks for the arithmetic routines.

None of these call into :mod:`shagraph.arith`; they exist to be compared
against it.
"""

import math

import numpy as np


def _strip_even_power(n, p):
    while n % (p * p) == 0:
        n //= p * p
    return n


def hilbert_by_search(a, b, place):
    """Local solubility of ``z^2 = a x^2 + b y^2`` by search plus Hensel lifting.

    After removing even powers of p, ``v_p(a), v_p(b) <= 1``, so every
    primitive solution mod p^3 (mod 2^5 for p = 2) has a partial derivative of
    valuation <= 1 (<= 2 for p = 2) and lifts to Z_p; conversely any p-adic
    solution reduces to one.  A primitive triple can be scaled so that one of
    its unit coordinates is 1, giving three searches over two free coordinates.
    """
    if place == "inf":
        # a > 0 or b > 0 gives a real point with x or y = 1; otherwise z = 0 forces x = y = 0
        return 1 if a > 0 or b > 0 else -1
    p = int(place)
    a, b = _strip_even_power(a, p), _strip_even_power(b, p)
    k = 5 if p == 2 else 3
    q = p**k
    t = np.arange(q, dtype=np.int64)
    sq = t * t % q
    is_sq = np.zeros(q, dtype=bool)
    is_sq[sq] = True
    # z = 1: a x^2 + b y^2 = 1
    by2 = np.zeros(q, dtype=bool)
    by2[(b * sq) % q] = True
    if by2[(1 - a * sq) % q].any():
        return 1
    # x = 1: a + b y^2 = z^2
    if is_sq[(a + b * sq) % q].any():
        return 1
    # y = 1: a x^2 + b = z^2
    if is_sq[(a * sq + b) % q].any():
        return 1
    return -1


def _primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(n + 1) if sieve[i]]


def _local_square_squarefree(d, p):
    if p == "inf":
        return d > 0
    if d % p == 0:
        return False
    m = 8 if p == 2 else p
    return any((x * x - d) % m == 0 for x in range(m) if x % p)


def d_kappa_over_Q(a, b, prime_bound=None):
    """Places of Q nonsplit in all of Q(sqrt a), Q(sqrt b), Q(sqrt ab).

    ``a`` and ``b`` are squarefree.  Every prime up to ``prime_bound`` is
    scanned (default: well past every ramified prime), so unramified places are
    tested rather than assumed away.
    """
    ab = (a * b) // math.gcd(a, b) ** 2
    bound = prime_bound or max(abs(a), abs(b), 3) * 4
    count = 0
    for v in ["inf"] + _primes_upto(bound):
        if not any(_local_square_squarefree(d, v) for d in (a, b, ab)):
            count += 1
    return count


def _encode(rows, orders):
    out = np.zeros(len(rows), dtype=np.int64)
    for i, n in enumerate(orders):
        out = out * n + rows[:, i]
    return out


def _subgroup(gens, orders):
    """All elements of the subgroup of prod Z/n_i generated by ``gens`` (rows)."""
    n = np.asarray(orders, dtype=np.int64)
    elems = {tuple([0] * len(orders))}
    for g in gens:
        g = tuple(int(x) for x in g)
        if g in elems:
            continue
        frontier = list(elems)
        while frontier:
            nxt = []
            for x in frontier:
                y = tuple(int(v) for v in (np.asarray(x) + g) % n)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
            frontier = nxt
    return np.asarray(sorted(elems), dtype=np.int64).reshape(-1, len(orders))


def tate_by_enumeration(orders, action):
    """Invariant factors of ker(N)/I M by listing every element of M.

    ``action`` is one integer matrix per group element.
    """
    orders = [int(n) for n in orders]
    if not orders:
        return []
    n = np.asarray(orders, dtype=np.int64)
    grids = np.meshgrid(*[np.arange(k) for k in orders], indexing="ij")
    elems = np.stack([g.ravel() for g in grids], axis=1)
    mats = [np.asarray(m, dtype=np.int64) for m in action]
    norm = sum((elems @ m.T) % n for m in mats) % n
    kernel = elems[np.all(norm == 0, axis=1)]
    diffs = np.concatenate([((elems @ m.T) - elems) % n for m in mats])
    diffs = np.unique(diffs, axis=0)
    aug = _subgroup(diffs, orders)
    aug_codes = set(_encode(aug, orders).tolist())
    size_i = len(aug)
    quot = len(kernel) // size_i
    if quot == 1:
        return []
    exponent = int(np.lcm.reduce(orders))
    # |Q[d]| = #{x in ker N : d x in I} / |I|
    def torsion(d):
        dx = (kernel * d) % n
        return sum(1 for c in _encode(dx, orders).tolist() if c in aug_codes) // size_i
    factors = {}
    for p in _primes_upto(exponent):
        if quot % p:
            continue
        sizes = [1]
        j = 1
        while sizes[-1] < _p_part(quot, p):
            sizes.append(_p_part(torsion(p**j), p))
            j += 1
        # number of cyclic factors of order >= p^j
        at_least = [round(math.log(sizes[j] // sizes[j - 1], p)) for j in range(1, len(sizes))]
        exps = []
        for j in range(len(at_least)):
            nxt = at_least[j + 1] if j + 1 < len(at_least) else 0
            exps.extend([j + 1] * (at_least[j] - nxt))
        factors[p] = sorted(exps, reverse=True)
    width = max(len(v) for v in factors.values())
    out = []
    for i in range(width):
        f = 1
        for p, exps in factors.items():
            if i < len(exps):
                f *= p ** exps[i]
        out.append(f)
    return sorted(out)


def _p_part(n, p):
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out
