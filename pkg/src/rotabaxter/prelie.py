"""Pre-Lie algebras, the graded Lie algebra of hooked maps on V, and the map
from the deformation complex of (g, rho) into it.

A hooked map of arity k is an element of Hom(wedge^k V (x) V, V): alternating
in its first k slots, unconstrained in the final slot.  The compose operation
below makes the hooked maps a graded Lie algebra (degrees are the arities)
whose square-zero 1-ary elements are precisely the pre-Lie products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import parity_sign, sign, unshuffles
from .deformation import DEFAULT_ARITY_MAX, AltMap
from .errors import NotMaurerCartanError, ShapeMismatchError, TruncationExceededError
from .linalg import Vector, ZERO, fr, vec_add, vec_is_zero, vec_scale, vec_sub
from .reports import Report, named_residual

# Global normalization of the compose operation.  The sign is fixed by
# requiring that f |-> (u_1..u_k, w) |-> rho(f(u_1..u_k)) w intertwine the
# deformation bracket with the bracket built from this compose; the opposite
# choice fails that homomorphism law by a global -1.  Pinned by
# test_prelie.py::test_compose_normalization_pinned.
COMPOSE_NORMALIZATION = -1


@dataclass(frozen=True)
class PreLieProduct:
    """Bilinear product on a named space, stored as structure constants.

    ``mu[i][j][k]`` is the coefficient of e_k in e_i * e_j.  Constructors do
    not validate left-symmetry; run :func:`check_prelie` explicitly.
    """

    basis: tuple[str, ...]
    mu: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def product_basis(self, i: int, j: int) -> Vector:
        return self.mu[i][j]

    def product(self, x: Vector, y: Vector) -> Vector:
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                coef = xi * yj
                row = self.mu[i][j]
                for k in range(self.dim):
                    if row[k]:
                        out[k] += coef * row[k]
        return tuple(out)


def prelie_product(basis, products) -> PreLieProduct:
    """Build a PreLieProduct from sparse data ``{(i, j): {k: coeff}}``."""
    basis = tuple(basis)
    n = len(basis)
    mu = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for (i, j), val in products.items():
        for k, coeff in val.items():
            mu[i][j][k] = fr(coeff)
    return PreLieProduct(basis, tuple(tuple(tuple(r) for r in p) for p in mu))


def check_prelie(p: PreLieProduct) -> Report:
    """Verify left-symmetry (x*y)*z - x*(y*z) = (y*x)*z - y*(x*z) on basis triples."""
    n = p.dim
    if len(p.mu) != n or any(len(pl) != n or any(len(r) != n for r in pl) for pl in p.mu):
        raise ShapeMismatchError("product constants do not match the basis")
    witness = None
    from .linalg import basis_vector

    for i in range(n):
        ei = basis_vector(n, i)
        for j in range(n):
            ej = basis_vector(n, j)
            for k in range(n):
                ek = basis_vector(n, k)
                res = vec_sub(
                    vec_sub(p.product(p.product(ei, ej), ek), p.product(ei, p.product(ej, ek))),
                    vec_sub(p.product(p.product(ej, ei), ek), p.product(ej, p.product(ei, ek))),
                )
                if not vec_is_zero(res):
                    witness = {
                        "at": [i + 1, j + 1, k + 1],
                        "residual": named_residual(res, p.basis),
                    }
                    break
            if witness:
                break
        if witness:
            break
    return Report("check-prelie", witness is None, witness=witness)


def commutator_algebra(p: PreLieProduct):
    """The sub-adjacent Lie bracket [x, y] = x*y - y*x of a pre-Lie product."""
    from .lie import LieAlgebra

    n = p.dim
    c = tuple(
        tuple(
            tuple(p.mu[i][j][k] - p.mu[j][i][k] for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )
    return LieAlgebra(p.basis, c)


class HookedMap:
    """Element of Hom(wedge^k V (x) V, V): alternating in the first k slots,
    with a free final slot.  Keys are (increasing k-tuple, final index)."""

    __slots__ = ("arity", "dim", "entries")

    def __init__(self, arity, dim, entries=None):
        self.arity = int(arity)
        self.dim = int(dim)
        clean = {}
        for (key, last), val in (entries or {}).items():
            key = tuple(key)
            if len(key) != self.arity:
                raise ShapeMismatchError(f"key {key} does not have arity {self.arity}")
            if any(a >= b for a, b in zip(key, key[1:])):
                raise ShapeMismatchError(f"key {key} is not strictly increasing")
            if any(not 0 <= i < self.dim for i in key) or not 0 <= last < self.dim:
                raise ShapeMismatchError("index out of range")
            val = tuple(fr(x) for x in val)
            if len(val) != self.dim:
                raise ShapeMismatchError("value length does not match the space dimension")
            if any(val):
                clean[(key, last)] = val
        self.entries = clean

    @classmethod
    def zero(cls, arity, dim):
        return cls(arity, dim, {})

    def eval(self, args, last) -> Vector:
        if len(args) != self.arity:
            raise ShapeMismatchError(f"expected {self.arity} alternating arguments")
        if len(set(args)) != len(args):
            return (ZERO,) * self.dim
        order = sorted(range(len(args)), key=lambda t: args[t])
        word = tuple(args[t] for t in order)
        val = self.entries.get((word, last))
        if val is None:
            return (ZERO,) * self.dim
        return vec_scale(sign(tuple(order)), val)

    def eval_insert(self, first: Vector, rest, last) -> Vector:
        out = [ZERO] * self.dim
        for j, coeff in enumerate(first):
            if not coeff:
                continue
            term = self.eval((j,) + tuple(rest), last)
            for k in range(self.dim):
                if term[k]:
                    out[k] += coeff * term[k]
        return tuple(out)

    def eval_last_insert(self, args, last_vec: Vector) -> Vector:
        out = [ZERO] * self.dim
        for j, coeff in enumerate(last_vec):
            if not coeff:
                continue
            term = self.eval(tuple(args), j)
            for k in range(self.dim):
                if term[k]:
                    out[k] += coeff * term[k]
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.entries

    def scale(self, c) -> "HookedMap":
        c = fr(c)
        return HookedMap(self.arity, self.dim,
                         {k: vec_scale(c, v) for k, v in self.entries.items()})

    def _binary(self, other, op) -> "HookedMap":
        if (self.arity, self.dim) != (other.arity, other.dim):
            raise ShapeMismatchError("hooked maps live on different spaces")
        keys = set(self.entries) | set(other.entries)
        zero = (ZERO,) * self.dim
        return HookedMap(
            self.arity, self.dim,
            {k: op(self.entries.get(k, zero), other.entries.get(k, zero)) for k in keys},
        )

    def __add__(self, other):
        return self._binary(other, vec_add)

    def __sub__(self, other):
        return self._binary(other, vec_sub)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return (
            isinstance(other, HookedMap)
            and (self.arity, self.dim) == (other.arity, other.dim)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"HookedMap(arity={self.arity}, entries={len(self.entries)})"


def hook_of_product(p: PreLieProduct) -> HookedMap:
    """A bilinear product viewed as a 1-ary hooked map."""
    entries = {}
    for i in range(p.dim):
        for j in range(p.dim):
            val = p.mu[i][j]
            if any(val):
                entries[((i,), j)] = val
    return HookedMap(1, p.dim, entries)


def product_of_hook(h: HookedMap, basis) -> PreLieProduct:
    if h.arity != 1:
        raise ShapeMismatchError("only 1-ary hooked maps are bilinear products")
    n = h.dim
    mu = tuple(
        tuple(h.eval((i,), j) for j in range(n))
        for i in range(n)
    )
    return PreLieProduct(tuple(basis), mu)


def circ(alpha: HookedMap, beta: HookedMap, arity_max: int = DEFAULT_ARITY_MAX) -> HookedMap:
    """Compose of hooked maps; arities add.

    For alpha of arity n and beta of arity m, the two summands insert beta
    either into an alternating slot of alpha (over (m,1,n-1)-unshuffles, beta
    absorbing the singleton into its free slot) or into the free slot of
    alpha (over (n,m)-unshuffles, with the factor (-1)^(mn)); the final
    argument never permutes.  See COMPOSE_NORMALIZATION for the global sign.
    """
    if alpha.dim != beta.dim:
        raise ShapeMismatchError("hooked maps live on different spaces")
    a, b = alpha.arity, beta.arity
    total = a + b
    if total > arity_max:
        raise TruncationExceededError(
            f"compose of arities {a} and {b} exceeds the arity cap {arity_max}"
        )
    ab = parity_sign(a * b)
    dim = alpha.dim
    entries = {}
    for word in itertools.combinations(range(dim), total):
        for w in range(dim):
            val = [ZERO] * dim
            if a >= 1:
                for s in unshuffles((b, 1, a - 1)):
                    sg = sign(s)
                    inner = beta.eval(tuple(word[s[t]] for t in range(b)), word[s[b]])
                    if vec_is_zero(inner):
                        continue
                    term = alpha.eval_insert(
                        inner, tuple(word[s[t]] for t in range(b + 1, total)), w
                    )
                    for k in range(dim):
                        val[k] += sg * term[k]
            for s in unshuffles((a, b)):
                sg = ab * sign(s)
                inner = beta.eval(tuple(word[s[t]] for t in range(a, total)), w)
                if vec_is_zero(inner):
                    continue
                term = alpha.eval_last_insert(tuple(word[s[t]] for t in range(a)), inner)
                for k in range(dim):
                    val[k] += sg * term[k]
            if any(val):
                entries[(word, w)] = vec_scale(COMPOSE_NORMALIZATION, tuple(val))
    return HookedMap(total, dim, entries)


def mn_bracket(alpha: HookedMap, beta: HookedMap,
               arity_max: int = DEFAULT_ARITY_MAX) -> HookedMap:
    """Graded Lie bracket alpha o beta - (-1)^(nm) beta o alpha on hooked maps.

    A 1-ary alpha defines a pre-Lie product exactly when [alpha, alpha] = 0.
    """
    ab = parity_sign(alpha.arity * beta.arity)
    return circ(alpha, beta, arity_max) - circ(beta, alpha, arity_max).scale(ab)


def phi(f: AltMap, rep) -> HookedMap:
    """Hooked map (u_1..u_k, w) |-> rho(f(u_1..u_k)) w attached to f."""
    if f.dim_dom != rep.space_dim:
        raise ShapeMismatchError("map and representation live on different modules")
    entries = {}
    for key, gval in f.entries.items():
        mat = rep.rho(gval)
        for j in range(rep.space_dim):
            col = tuple(mat[r][j] for r in range(rep.space_dim))
            if any(col):
                entries[(key, j)] = col
    return HookedMap(f.arity, rep.space_dim, entries)


def check_phi_homomorphism(f: AltMap, g: AltMap, alg, rep,
                           arity_max: int = DEFAULT_ARITY_MAX) -> bool:
    """Exact equality of phi([[f, g]]) and [phi(f), phi(g)]."""
    from .deformation import courant_bracket

    lhs = phi(courant_bracket(f, g, alg, rep, arity_max), rep)
    rhs = mn_bracket(phi(f, rep), phi(g, rep), arity_max)
    return lhs == rhs


def induce_prelie(t, alg, rep, force: bool = False) -> PreLieProduct:
    """Pre-Lie product u * v = rho(Tu) v induced by an O-operator T."""
    from .lie import oop_defect

    if not force and not oop_defect(alg, rep, t).is_zero():
        raise NotMaurerCartanError(
            "operator is not an O-operator; pass force=True to build the product anyway"
        )
    n = rep.space_dim
    mu = tuple(
        tuple(rep.act_basis(t.column(i), j) for j in range(n))
        for i in range(n)
    )
    return PreLieProduct(rep.basis, mu)


def fiber_classes(ops, alg, rep) -> list[list]:
    """Group verified O-operators by exact equality of their induced products.

    Equality is structural on the product constants in the given basis, so
    the partition is basis-dependent.
    """
    from .lie import oop_defect

    classes: dict = {}
    order: list = []
    for op in ops:
        if not oop_defect(alg, rep, op).is_zero():
            raise NotMaurerCartanError("fiber classification requires verified O-operators")
        key = induce_prelie(op, alg, rep, force=True).mu
        if key not in classes:
            classes[key] = []
            order.append(key)
        classes[key].append(op)
    return [classes[k] for k in order]


def random_hooked(rng, arity, dim, pool=None, density=0.7) -> HookedMap:
    """Random hooked map for property tests; deterministic given rng."""
    if pool is None:
        pool = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)]
    entries = {}
    for word in itertools.combinations(range(dim), arity):
        for w in range(dim):
            vec = tuple(
                rng.choice(pool) if rng.random() < density else ZERO
                for _ in range(dim)
            )
            if any(vec):
                entries[(word, w)] = vec
    return HookedMap(arity, dim, entries)
