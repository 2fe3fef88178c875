"""The deformation complex of a Lie algebra representation.

C(V, g) is the space of alternating multilinear maps from powers of V into
g.  It carries a graded Lie bracket whose square-zero condition on 1-ary
maps is exactly the relative Rota-Baxter identity, so Maurer-Cartan elements
are the O-operators and the bracket controls their deformations.

Grading convention: a map of arity k is a degree-(k-1) cochain, and the
Maurer-Cartan theory lives on the suspension, where the operative degree is
the arity itself.  Only the arity is stored; the sign laws are stated with
arities: graded skew-symmetry reads [[f, g]] = -(-1)^(nm) [[g, f]] with
n, m the arities of f and g, and the graded Jacobi identity uses the same
exponents.  Both laws are pinned by exhaustive tests.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .combinatorics import parity_sign, sign, unshuffles
from .errors import NotMaurerCartanError, ShapeMismatchError, TruncationExceededError
from .linalg import Vector, ZERO, fr, vec_add, vec_is_zero, vec_scale, vec_sub

DEFAULT_ARITY_MAX = 6


class AltMap:
    """Alternating map from V^arity to g, stored on increasing index tuples.

    Evaluation on an arbitrary tuple is the signed antisymmetric extension of
    the stored values; tuples with a repeated index evaluate to zero.  Arity
    0 means a single element of g (evaluated on the empty tuple).
    """

    __slots__ = ("arity", "dim_dom", "dim_cod", "entries")

    def __init__(self, arity, dim_dom, dim_cod, entries=None):
        self.arity = int(arity)
        self.dim_dom = int(dim_dom)
        self.dim_cod = int(dim_cod)
        clean = {}
        for key, val in (entries or {}).items():
            key = tuple(key)
            if len(key) != self.arity:
                raise ShapeMismatchError(f"key {key} does not have arity {self.arity}")
            if any(not 0 <= i < self.dim_dom for i in key):
                raise ShapeMismatchError(f"key {key} out of range")
            if any(a >= b for a, b in zip(key, key[1:])):
                raise ShapeMismatchError(f"key {key} is not strictly increasing")
            val = tuple(fr(x) for x in val)
            if len(val) != self.dim_cod:
                raise ShapeMismatchError("value length does not match the target dimension")
            if any(val):
                clean[key] = val
        self.entries = clean

    @classmethod
    def zero(cls, arity, dim_dom, dim_cod):
        return cls(arity, dim_dom, dim_cod, {})

    @classmethod
    def from_operator(cls, op, dim_cod=None):
        """View a linear operator V -> g as a 1-ary element of the complex."""
        cod = len(op.matrix) if dim_cod is None else dim_cod
        cols = len(op.matrix[0]) if op.matrix else 0
        return cls(1, cols, cod, {(j,): op.column(j) for j in range(cols)})

    def eval(self, args) -> Vector:
        if len(args) != self.arity:
            raise ShapeMismatchError(f"expected {self.arity} arguments, got {len(args)}")
        if len(set(args)) != len(args):
            return (ZERO,) * self.dim_cod
        order = sorted(range(len(args)), key=lambda t: args[t])
        word = tuple(args[t] for t in order)
        val = self.entries.get(word)
        if val is None:
            return (ZERO,) * self.dim_cod
        return vec_scale(sign(tuple(order)), val)

    def eval_insert(self, first: Vector, rest) -> Vector:
        """Evaluate with a vector of V in the first slot, expanded linearly."""
        out = [ZERO] * self.dim_cod
        for j, coeff in enumerate(first):
            if not coeff:
                continue
            term = self.eval((j,) + tuple(rest))
            for k in range(self.dim_cod):
                if term[k]:
                    out[k] += coeff * term[k]
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.entries

    def scale(self, c) -> "AltMap":
        c = fr(c)
        return AltMap(
            self.arity, self.dim_dom, self.dim_cod,
            {k: vec_scale(c, v) for k, v in self.entries.items()},
        )

    def __neg__(self) -> "AltMap":
        return self.scale(-1)

    def _binary(self, other, op) -> "AltMap":
        if (self.arity, self.dim_dom, self.dim_cod) != (other.arity, other.dim_dom, other.dim_cod):
            raise ShapeMismatchError("maps live on different spaces")
        keys = set(self.entries) | set(other.entries)
        zero = (ZERO,) * self.dim_cod
        return AltMap(
            self.arity, self.dim_dom, self.dim_cod,
            {k: op(self.entries.get(k, zero), other.entries.get(k, zero)) for k in keys},
        )

    def __add__(self, other):
        return self._binary(other, vec_add)

    def __sub__(self, other):
        return self._binary(other, vec_sub)

    def __eq__(self, other):
        return (
            isinstance(other, AltMap)
            and (self.arity, self.dim_dom, self.dim_cod)
            == (other.arity, other.dim_dom, other.dim_cod)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"AltMap(arity={self.arity}, entries={len(self.entries)})"

    def to_operator(self):
        from .lie import LinearOperator

        if self.arity != 1:
            raise ShapeMismatchError("only 1-ary maps correspond to operators")
        rows = tuple(
            tuple(self.eval((j,))[k] for j in range(self.dim_dom))
            for k in range(self.dim_cod)
        )
        return LinearOperator(rows, "V", "g")


def _check_spaces(f: AltMap, g: AltMap, alg, rep):
    if f.dim_dom != g.dim_dom or f.dim_cod != g.dim_cod:
        raise ShapeMismatchError("maps live on different spaces")
    if f.dim_dom != rep.space_dim or f.dim_cod != alg.dim:
        raise ShapeMismatchError("maps do not match the algebra and module dimensions")


def courant_bracket(f: AltMap, g: AltMap, alg, rep, arity_max: int = DEFAULT_ARITY_MAX) -> AltMap:
    """Graded Lie bracket on C(V, g) attached to (g, [.,.], rho).

    For f of arity n and g of arity m the value on (u_1, ..., u_{m+n}) is

        - sum over (m,1,n-1)-unshuffles of (-1)^s f(rho(g(u_s1..u_sm)) u_s(m+1), u_s(m+2), ...)
        + (-1)^(mn) sum over (n,1,m-1)-unshuffles of (-1)^s g(rho(f(...)) u_s(n+1), ...)
        - (-1)^(mn) sum over (n,m)-unshuffles of (-1)^s [f(...), g(...)]

    Unshuffle shapes with a negative part contribute an empty sum.
    """
    _check_spaces(f, g, alg, rep)
    n, m = f.arity, g.arity
    total_arity = n + m
    if total_arity > arity_max:
        raise TruncationExceededError(
            f"bracket of arities {n} and {m} exceeds the arity cap {arity_max}"
        )
    mn = parity_sign(m * n)
    entries = {}
    for word in itertools.combinations(range(f.dim_dom), total_arity):
        val = [ZERO] * f.dim_cod
        if n >= 1:
            for s in unshuffles((m, 1, n - 1)):
                sg = sign(s)
                gval = g.eval(tuple(word[s[t]] for t in range(m)))
                if vec_is_zero(gval):
                    continue
                inserted = rep.act_basis(gval, word[s[m]])
                if vec_is_zero(inserted):
                    continue
                term = f.eval_insert(inserted, tuple(word[s[t]] for t in range(m + 1, total_arity)))
                for k in range(f.dim_cod):
                    val[k] -= sg * term[k]
        if m >= 1:
            for s in unshuffles((n, 1, m - 1)):
                sg = mn * sign(s)
                fval = f.eval(tuple(word[s[t]] for t in range(n)))
                if vec_is_zero(fval):
                    continue
                inserted = rep.act_basis(fval, word[s[n]])
                if vec_is_zero(inserted):
                    continue
                term = g.eval_insert(inserted, tuple(word[s[t]] for t in range(n + 1, total_arity)))
                for k in range(f.dim_cod):
                    val[k] += sg * term[k]
        for s in unshuffles((n, m)):
            sg = mn * sign(s)
            x = f.eval(tuple(word[s[t]] for t in range(n)))
            if vec_is_zero(x):
                continue
            y = g.eval(tuple(word[s[t]] for t in range(n, total_arity)))
            if vec_is_zero(y):
                continue
            br = alg.bracket(x, y)
            for k in range(f.dim_cod):
                val[k] -= sg * br[k]
        if any(val):
            entries[word] = tuple(val)
    return AltMap(total_arity, f.dim_dom, f.dim_cod, entries)


def mc_residual(t: AltMap, alg, rep, arity_max: int = DEFAULT_ARITY_MAX) -> AltMap:
    """Half the self-bracket of a 1-ary map; zero exactly for O-operators."""
    if t.arity != 1:
        raise ShapeMismatchError("Maurer-Cartan candidates are 1-ary maps")
    return courant_bracket(t, t, alg, rep, arity_max).scale(Fraction(1, 2))


def d_T(t: AltMap, f: AltMap, alg, rep, force: bool = False,
        arity_max: int = DEFAULT_ARITY_MAX) -> AltMap:
    """Differential [[t, .]] induced by an O-operator t.

    Squares to zero when t is an O-operator; pass ``force=True`` to evaluate
    the bracket for exploratory t without that guarantee.
    """
    if not force and not mc_residual(t, alg, rep, arity_max).is_zero():
        raise NotMaurerCartanError(
            "base map is not an O-operator; pass force=True to differentiate anyway"
        )
    return courant_bracket(t, f, alg, rep, arity_max)


def deformation_check(t: AltMap, tp: AltMap, alg, rep,
                      arity_max: int = DEFAULT_ARITY_MAX) -> bool:
    """Whether t + tp is again an O-operator, tested via the Maurer-Cartan
    equation d_t(tp) + 1/2 [[tp, tp]] = 0 of the twisted complex."""
    if t.arity != 1 or tp.arity != 1:
        raise ShapeMismatchError("deformations are 1-ary maps")
    lin = courant_bracket(t, tp, alg, rep, arity_max)
    quad = courant_bracket(tp, tp, alg, rep, arity_max).scale(Fraction(1, 2))
    return (lin + quad).is_zero()


def random_altmap(rng, arity, dim_dom, dim_cod, pool=None, density=0.8) -> AltMap:
    """Random alternating map for property tests; deterministic given rng."""
    if pool is None:
        pool = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2),
                Fraction(1, 2), Fraction(-1, 3)]
    entries = {}
    for word in itertools.combinations(range(dim_dom), arity):
        vec = tuple(
            rng.choice(pool) if rng.random() < density else ZERO
            for _ in range(dim_cod)
        )
        if any(vec):
            entries[word] = vec
    return AltMap(arity, dim_dom, dim_cod, entries)
