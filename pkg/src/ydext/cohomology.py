"""Ext groups as cocycles modulo coboundaries, and the induced Gerstenhaber structure.

Cochains are compared through their flattened normalized values, so every
subspace below lives in the coordinate space of ``Cochain.flat``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

from .algebra import Report
from .bar import Cochain, CochainError, cochain_from_flat, coboundary_space, delta, solve_coboundary, solve_cocycles
from .config import DEFAULT, EngineConfig, ResourceError
from .linalg import Echelon, Matrix, Subspace, solve, vaxpy
from .operad import OperadContext, bracket, cup, sign
from .yd import CommutingPair


@dataclass(frozen=True)
class ExtDegree:
    degree: int
    cocycles: Subspace
    coboundaries: Subspace
    reps: tuple  # Cochains, echelon-selected complement of the coboundaries

    @property
    def dim(self) -> int:
        return len(self.reps)


@dataclass(frozen=True, eq=False)
class ExtClass:
    groups: "ExtGroups"
    degree: int
    coords: tuple  # coefficients on groups.reps(degree)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        return isinstance(other, ExtClass) and self.degree == other.degree and self.coords == other.coords

    __hash__ = None

    def representative(self) -> Cochain:
        g = self.groups.degree(self.degree)
        ctx = self.groups.ctx
        acc: dict = {}
        for c, r in zip(self.coords, g.reps):
            if c:
                vaxpy(acc, r.flat(), c)
        return cochain_from_flat(ctx.bar, self.degree, ctx.Z, acc)


class ExtGroups:
    """Ext^n_U(X, Z) for n = 0..n_max, computed lazily degree by degree."""

    def __init__(self, ctx: OperadContext, n_max: int):
        if n_max > ctx.config.max_degree:
            raise ResourceError("degree %d exceeds the cap %d" % (n_max, ctx.config.max_degree))
        self.ctx = ctx
        self.n_max = n_max
        self._deg: dict = {}

    def degree(self, n: int) -> ExtDegree:
        if n not in self._deg:
            self._deg[n] = self._compute(n)
        return self._deg[n]

    def _compute(self, n: int) -> ExtDegree:
        ctx = self.ctx
        size = ctx.Z.dim * ctx.bar.norm_dim(n)
        cocycles = [c.flat() for c in solve_cocycles(ctx.bar, n, ctx.Z)]
        zspace = Subspace.span(size, cocycles)
        bspace = coboundary_space(ctx.bar, n, ctx.Z)
        ech = Echelon()
        for row in bspace.basis:
            ech.add(row)
        reps = []
        for v in zspace.basis:
            if ech.add(v):
                reps.append(cochain_from_flat(ctx.bar, n, ctx.Z, v))
        return ExtDegree(n, zspace, bspace, tuple(reps))

    def dims(self) -> tuple:
        return tuple(self.degree(n).dim for n in range(self.n_max + 1))

    def basis(self, n: int) -> list:
        d = self.degree(n).dim
        return [ExtClass(self, n, tuple(1 if i == k else 0 for i in range(d))) for k in range(d)]

    def class_of(self, c: Cochain) -> ExtClass:
        """The class of a cocycle; raises CochainError otherwise."""
        if c.bar is not self.ctx.bar or c.target is not self.ctx.Z:
            raise CochainError("cochain does not belong to this complex")
        if c.degree < 0:
            raise CochainError("negative degree")
        if not delta(c).is_zero():
            raise CochainError("not a cocycle", delta(c).witness())
        g = self.degree(c.degree)
        cols = [r.flat() for r in g.reps] + list(g.coboundaries.basis)
        m = Matrix(self.ctx.Z.dim * self.ctx.bar.norm_dim(c.degree), len(cols), tuple(cols))
        x = solve(m, c.flat())
        if x is None:
            raise CochainError("cocycle outside the computed span", c.witness())
        zero = self.ctx.field.zero
        return ExtClass(self, c.degree, tuple(x.get(i, zero) for i in range(g.dim)))

    def zero(self, n: int) -> ExtClass:
        return ExtClass(self, n, tuple(0 for _ in range(self.degree(n).dim)))


def ext(source: Union[OperadContext, CommutingPair], n_max: int, config: EngineConfig = DEFAULT) -> ExtGroups:
    ctx = source if isinstance(source, OperadContext) else OperadContext(source, config)
    return ExtGroups(ctx, n_max)


def _rep(a) -> Cochain:
    return a.representative() if isinstance(a, ExtClass) else a


def class_cup(groups: ExtGroups, a, b) -> ExtClass:
    return groups.class_of(cup(groups.ctx, _rep(a), _rep(b)))


def class_bracket(groups: ExtGroups, a, b) -> Optional[ExtClass]:
    """The bracket class; None when both degrees are 0 (the result would sit in degree -1)."""
    x, y = _rep(a), _rep(b)
    if x.degree + y.degree == 0:
        return None
    return groups.class_of(bracket(groups.ctx, x, y))


# Gerstenhaber identities up to coboundary ----------------------------------------------

def _up_to_coboundary(rep: Report, name: str, diff: Cochain, where) -> None:
    if diff.is_zero():
        rep.check(name, True)
        return
    h = solve_coboundary(diff)
    if h is None:
        rep.fail(name, {"classes": where, "entry": diff.witness()})
        return
    # the exhibited primitive is re-checked independently of the solver
    ok = delta(h) == diff
    rep.check(name, ok, None if ok else {"classes": where, "primitive mismatch": True})
    rep.notes.append((name, where, "coboundary of a degree %d cochain" % h.degree))


def _sgn(c: Cochain, e: int) -> Cochain:
    return c if sign(e) > 0 else -c


def verify_gerstenhaber(groups: ExtGroups, degree_cap: int) -> Report:
    """Graded commutativity of cup, antisymmetry and Jacobi of the bracket, and Leibniz.

    Every identity is tested on all tuples of basis classes for which each
    input and the result have degree <= degree_cap.
    """
    ctx = groups.ctx
    rep = Report("gerstenhaber")
    names = ("cup commutativity", "bracket antisymmetry", "jacobi", "leibniz")
    for n in names:
        rep.check(n, True)
    reps = {n: list(groups.degree(n).reps) for n in range(degree_cap + 1)}
    labelled = [(n, k, r) for n in reps for k, r in enumerate(reps[n])]

    for (p, i, a), (q, j, b) in itertools.product(labelled, repeat=2):
        where = ((p, i), (q, j))
        if p + q <= degree_cap:
            diff = cup(ctx, a, b) - _sgn(cup(ctx, b, a), p * q)
            _up_to_coboundary(rep, names[0], diff, where)
        if p + q >= 1 and p + q - 1 <= degree_cap:
            diff = bracket(ctx, a, b) + _sgn(bracket(ctx, b, a), (p - 1) * (q - 1))
            _up_to_coboundary(rep, names[1], diff, where)

    for (p, i, a), (q, j, b), (r, k, c) in itertools.product(labelled, repeat=3):
        where = ((p, i), (q, j), (r, k))
        if p + q + r - 2 <= degree_cap and min(p + q, q + r, r + p) >= 1 and p + q + r >= 2:
            total = _sgn(bracket(ctx, a, bracket(ctx, b, c)), (p - 1) * (r - 1))
            total = total + _sgn(bracket(ctx, b, bracket(ctx, c, a)), (q - 1) * (p - 1))
            total = total + _sgn(bracket(ctx, c, bracket(ctx, a, b)), (r - 1) * (q - 1))
            _up_to_coboundary(rep, names[2], total, where)
        if p + q + r - 1 <= degree_cap and p + q + r >= 1 and p + q >= 1 and p + r >= 1:
            lhs = bracket(ctx, a, cup(ctx, b, c))
            rhs = cup(ctx, bracket(ctx, a, b), c) + _sgn(cup(ctx, b, bracket(ctx, a, c)), (p - 1) * q)
            _up_to_coboundary(rep, names[3], lhs - rhs, where)
    return rep
