"""Square classes, local squares and Hilbert symbols over Q, place counts in
multiquadratic extensions, and Tate H^-1 of finite modules.

Places are odd or even primes given as ints, or ``INF`` for the real place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import intlinalg
from .errors import DegenerateExtension, InvariantViolation, StateBoundExceeded
from .groups import FiniteGroup, validate_group

INF = "inf"


def parse_place(s):
    if isinstance(s, int):
        return s
    t = str(s).strip().lower()
    if t in ("inf", "oo", "infinity", "real"):
        return INF
    return int(t)


def prime_factors(n):
    n = abs(n)
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def valuation(n, p):
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def squarefree_part(n):
    """The squarefree integer in the square class of ``n``, sign kept."""
    if n == 0:
        raise ValueError("0 has no square class")
    s = -1 if n < 0 else 1
    m = abs(n)
    out = 1
    for p in prime_factors(m):
        if valuation(m, p) % 2:
            out *= p
    return s * out


def class_mul(a, b):
    """Product in Q^x / Q^x2 of squarefree representatives."""
    g = math.gcd(a, b)
    return (a // g) * (b // g)


@dataclass(frozen=True)
class SquareClass:
    value: int

    def __post_init__(self):
        if self.value == 0 or squarefree_part(self.value) != self.value:
            raise InvariantViolation(f"{self.value} is not a nonzero squarefree integer", witness=self.value)

    def __mul__(self, other):
        return SquareClass(class_mul(self.value, other.value))


def _legendre(u, p):
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def is_square_local(d, place) -> bool:
    """Whether the nonzero integer ``d`` is a square in Q_place."""
    d = int(getattr(d, "value", d))
    if d == 0:
        raise ValueError("0 is not a unit")
    if place == INF:
        return d > 0
    p = int(place)
    v = valuation(d, p)
    if v % 2:
        return False
    u = d // p**v
    if p == 2:
        return u % 8 == 1
    return _legendre(u, p) == 1


def hilbert_symbol(a, b, place) -> int:
    """``(a, b)_place``: +1 iff ``z^2 = a x^2 + b y^2`` has a nonzero solution locally."""
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if place == INF:
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    alpha, beta = valuation(a, p), valuation(b, p)
    u, v = a // p**alpha, b // p**beta
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * _legendre(u, p) ** beta * _legendre(v, p) ** alpha


def relevant_places(*nums):
    """Places where a Hilbert symbol of these arguments can be -1."""
    primes = {2}
    for n in nums:
        primes.update(prime_factors(n))
    return [INF] + sorted(primes)


def quaternion_is_split_Q(a, b) -> bool:
    return all(hilbert_symbol(a, b, v) == 1 for v in relevant_places(a, b))


# --- multiquadratic fields -----------------------------------------------------


def class_subgroup(gens):
    """Subgroup of Q^x/Q^x2 generated by ``gens``, as sorted squarefree values."""
    span = {1}
    for g in gens:
        g = squarefree_part(int(getattr(g, "value", g)))
        span |= {class_mul(x, g) for x in span}
    return sorted(span, key=lambda x: (abs(x), x))


class MultiquadraticContext:
    """The square classes generated by ``generators``, i.e. the character group
    of Gal(M/Q) for M = Q(sqrt g : g in generators)."""

    def __init__(self, generators):
        self.generators = [squarefree_part(int(getattr(g, "value", g))) for g in generators]
        self.class_group = class_subgroup(self.generators)

    def __len__(self):
        return len(self.class_group)

    @cached_property
    def rank(self):
        return len(self.class_group).bit_length() - 1

    def mul(self, a, b):
        return class_mul(a, b)

    def candidate_places(self):
        return relevant_places(*self.generators)


def decomposition_char_group(ctx: MultiquadraticContext, place):
    """Classes that are local squares at ``place``: the characters killing D_place."""
    return [d for d in ctx.class_group if is_square_local(d, place)]


@dataclass(frozen=True)
class DKappaResult:
    d: int
    places: tuple  # (place, number of places of kappa over it with one place of L)

    @property
    def torus_group(self):
        return torus_r_group(self.d)


def d_kappa_detail(kappa_gens, a, b) -> DKappaResult:
    """Count places of kappa = Q(sqrt kappa_gens) with a unique place of L = kappa(sqrt a, sqrt b).

    Inside Gal(M/Q), M = L, with H = Gal(L/kappa) of order 4, the places of kappa
    over p number [G : D_p H], and each has a single place of L above it iff
    H <= D_p; then there are [G : D_p] of them.  Dually, H <= D_p iff every
    class that is a local square at p already lies in kappa's subgroup.
    Only p = 2, infinity and primes dividing a generator can qualify: elsewhere
    M/Q is unramified at p, so D_p is cyclic (order <= 2) and cannot contain H.
    """
    kappa = class_subgroup(kappa_gens)
    a, b = squarefree_part(int(getattr(a, "value", a))), squarefree_part(int(getattr(b, "value", b)))
    ksub = set(kappa)
    for x in (a, b, class_mul(a, b)):
        if x in ksub:
            raise DegenerateExtension(f"[L:kappa] < 4: the class {x} is already in kappa", witness=x)
    ctx = MultiquadraticContext(list(kappa_gens) + [a, b])
    out = []
    for place in ctx.candidate_places():
        perp = decomposition_char_group(ctx, place)
        if set(perp) <= ksub:
            decomposition_order = len(ctx) // len(perp)
            out.append((place, len(ctx) // decomposition_order))
    return DKappaResult(sum(n for _, n in out), tuple(out))


def d_kappa(kappa_gens, a, b) -> int:
    return d_kappa_detail(kappa_gens, a, b).d


def torus_r_group(d: int):
    """Invariant factors of (Z/2)^(d-1)."""
    if d < 1:
        raise ValueError("d must be positive")
    return [2] * (d - 1)


# --- Tate H^-1 --------------------------------------------------------------


class GModule:
    """``M = prod Z/n_i`` with ``group`` acting by integer matrices on coordinates."""

    def __init__(self, orders, group: FiniteGroup, action):
        self.orders = [int(n) for n in orders]
        if any(n < 1 for n in self.orders):
            raise InvariantViolation("cyclic orders must be positive", witness=self.orders)
        self.group = group
        r = len(self.orders)
        self.action = [np.asarray(a, dtype=np.int64).reshape(r, r) % np.asarray(self.orders)[:, None]
                       for a in action]
        if len(self.action) != group.order:
            raise InvariantViolation("need one matrix per group element", witness=len(self.action))

    @property
    def size(self):
        return math.prod(self.orders)

    def reduce(self, mat):
        return np.asarray(mat, dtype=np.int64) % np.asarray(self.orders)[:, None]

    def validate(self):
        validate_group(self.group)
        n = np.asarray(self.orders)
        r = len(n)
        for s, a in enumerate(self.action):
            # column i must lie in the n_i-torsion: n_i * a[j, i] = 0 mod n_j
            bad = np.argwhere((a * n[None, :]) % n[:, None] != 0)
            if len(bad):
                raise InvariantViolation(f"matrix of element {s} is not well defined mod the orders",
                                         witness=(s, tuple(int(x) for x in bad[0])))
        if not np.array_equal(self.action[self.group.identity], self.reduce(np.eye(r, dtype=np.int64))):
            raise InvariantViolation("identity does not act trivially", witness=self.group.identity)
        for x in self.group.elements:
            for y in self.group.elements:
                lhs = self.action[self.group.mul(x, y)]
                if not np.array_equal(lhs, self.reduce(self.action[x] @ self.action[y])):
                    raise InvariantViolation("action is not a homomorphism", witness=(x, y))
        return True

    @classmethod
    def cyclic(cls, orders, matrix, sigma_order=None):
        """Z/n acting through powers of ``matrix``; n defaults to its order mod the orders."""
        r = len(orders)
        n_arr = np.asarray(orders, dtype=np.int64)[:, None]
        ident = np.eye(r, dtype=np.int64) % n_arr
        m = np.asarray(matrix, dtype=np.int64).reshape(r, r) % n_arr
        powers = [ident]
        seen = {ident.tobytes()}
        while True:
            nxt = (powers[-1] @ m) % n_arr
            if np.array_equal(nxt, ident):
                break
            if nxt.tobytes() in seen:
                # powers cycle without returning to 1
                raise InvariantViolation("matrix is not invertible mod the orders", witness=m.tolist())
            seen.add(nxt.tobytes())
            powers.append(nxt)
        k = len(powers)
        if sigma_order is None:
            sigma_order = k
        if sigma_order % k:
            raise InvariantViolation(f"matrix has order {k}, which does not divide {sigma_order}",
                                     witness=sigma_order)
        from .groups import cyclic
        return cls(orders, cyclic(sigma_order), [powers[i % k] for i in range(sigma_order)])

    @classmethod
    def trivial(cls, orders, group):
        r = len(orders)
        return cls(orders, group, [np.eye(r, dtype=np.int64)] * group.order)


def norm_matrix(mod: GModule):
    return mod.reduce(sum(mod.action))


def tate_h_minus_1(mod: GModule, max_states=10**7):
    """Invariant factors of ker(N) / I M, computed on lattices over Z^r.

    ker N is the preimage lattice ``{x : N x in D Z^r}`` and I M + D Z^r is
    spanned by the columns of ``sigma - 1`` and of ``D = diag(orders)``.
    """
    if mod.size > max_states:
        raise StateBoundExceeded(f"module of order {mod.size} exceeds the bound {max_states}", witness=mod.size)
    mod.validate()
    orders = mod.orders
    r = len(orders)
    if r == 0:
        return []
    norm = norm_matrix(mod).tolist()
    # [N | D] (x, y) = 0  <=>  N x = -D y
    stacked = [norm[i] + [orders[i] if j == i else 0 for j in range(r)] for i in range(r)]
    kern = intlinalg.integer_kernel(stacked, 2 * r)
    gens = [v[:r] for v in kern] + [[orders[i] if j == i else 0 for j in range(r)] for i in range(r)]
    basis = intlinalg.lattice_basis(gens, r)
    rel = [[orders[i] if j == i else 0 for j in range(r)] for i in range(r)]
    for a in mod.action:
        d = (a - np.eye(r, dtype=np.int64)).tolist()
        rel.extend([[d[j][i] for j in range(r)] for i in range(r)])
    coords = [intlinalg.solve_echelon(basis, v) for v in rel]
    mat = [[c[i] for c in coords] for i in range(len(basis))]
    inv = intlinalg.smith_invariants(mat, len(basis), len(coords))
    return [x for x in inv if x != 1]
