"""Left bialgebroids (U, A, s, t, Delta, eps) and their axiom checker.

Conventions for the four A-actions on U, for a, b, c, d in A::

    a |> u   = u t(a)     b >- u = s(b) u
    u <| c   = t(c) u     u -< d = u s(d)

so that a |> b >- u <| c -< d = t(c) s(b) u s(d) t(a).  The coproduct lands
in U_<| (x)_A >-U, the quotient by t(a) u (x) v = u (x) s(a) v.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .algebra import BalancedTensor, FiniteAlgebra, Report, check_algebra, make_algebra
from .linalg import Matrix, vaxpy, vclean


@dataclass(frozen=True, eq=False)
class LeftBialgebroid:
    total: FiniteAlgebra
    base: FiniteAlgebra
    source: Matrix  # dim U x dim A
    target: Matrix
    delta: tuple  # per basis of U: coordinates in the quotient uu
    counit: Matrix  # dim A x dim U
    name: str = ""

    @property
    def field(self):
        return self.total.field

    @property
    def dim(self) -> int:
        return self.total.dim

    # elementary operations ------------------------------------------------

    def mul(self, u: dict, v: dict) -> dict:
        return self.total.mul(u, v)

    def s(self, a: dict) -> dict:
        return self.source.apply(a)

    def t(self, a: dict) -> dict:
        return self.target.apply(a)

    def eps(self, u: dict) -> dict:
        return self.counit.apply(u)

    def one(self) -> dict:
        return dict(self.total.unit)

    @cached_property
    def uu(self) -> BalancedTensor:
        """U_<| (x)_A >-U."""
        return BalancedTensor((self.dim, self.dim), [(self.t_left_mats, self.s_left_mats)], self.field)

    @cached_property
    def uuu(self) -> BalancedTensor:
        link = (self.t_left_mats, self.s_left_mats)
        return BalancedTensor((self.dim,) * 3, [link, link], self.field)

    @cached_property
    def s_left_mats(self) -> tuple:
        return tuple(self.left_mult_matrix(self.s({a: self.field.one})) for a in range(self.base.dim))

    @cached_property
    def t_left_mats(self) -> tuple:
        return tuple(self.left_mult_matrix(self.t({a: self.field.one})) for a in range(self.base.dim))

    @cached_property
    def s_right_mats(self) -> tuple:
        return tuple(self.right_mult_matrix(self.s({a: self.field.one})) for a in range(self.base.dim))

    @cached_property
    def t_right_mats(self) -> tuple:
        return tuple(self.right_mult_matrix(self.t({a: self.field.one})) for a in range(self.base.dim))

    def left_mult_matrix(self, u: dict) -> Matrix:
        return Matrix(self.dim, self.dim, tuple(self.mul(u, {j: self.field.one}) for j in range(self.dim)))

    def right_mult_matrix(self, u: dict) -> Matrix:
        return Matrix(self.dim, self.dim, tuple(self.mul({j: self.field.one}, u) for j in range(self.dim)))

    @cached_property
    def legs(self) -> tuple:
        """Sweedler legs of each basis element: tuple of (coef, i, j) with Delta(e) = sum coef e_i (x) e_j."""
        out = []
        for d in self.delta:
            out.append(tuple((x, ij[0], ij[1]) for x, ij in self.uu.legs(d)))
        return tuple(out)

    def cop(self, u: dict) -> list:
        """Legs of Delta(u) for a vector u, as (coef, i, j)."""
        out = []
        for k, x in u.items():
            for c, i, j in self.legs[k]:
                out.append((x * c, i, j))
        return out

    def cop_coords(self, u: dict) -> dict:
        out: dict = {}
        for k, x in u.items():
            vaxpy(out, self.delta[k], x)
        return out

    # the four actions, as matrices indexed by base basis --------------------

    def actions(self) -> dict:
        return {
            "blact": self.t_right_mats,   # a |> u = u t(a)
            "lact": self.s_left_mats,     # b >- u = s(b) u
            "tri": self.t_left_mats,      # u <| c = t(c) u
            "bract": self.s_right_mats,   # u -< d = u s(d)
        }

    def four_actions(self, a: dict, b: dict, u: dict, c: dict, d: dict) -> dict:
        """a |> b >- u <| c -< d."""
        return self.mul(self.mul(self.t(c), self.s(b)), self.mul(u, self.mul(self.s(d), self.t(a))))


def _basis(n, field):
    return [{i: field.one} for i in range(n)]


def check_bialgebroid(u: LeftBialgebroid) -> Report:
    """Check every bialgebroid axiom on basis tuples, with witnesses."""
    rep = Report("bialgebroid " + u.name)
    F = u.field
    A, U = u.base, u.total
    rep.merge(check_algebra(U), "U ")
    rep.merge(check_algebra(A), "A ")
    eA = _basis(A.dim, F)
    eU = _basis(U.dim, F)
    names = ["source morphism", "target anti-morphism", "source-target commute", "four actions commute",
             "coproduct bilinearity", "takeuchi", "coassociativity", "counit", "counit bilinearity",
             "coproduct multiplicative", "coproduct unit", "counit unit", "counit multiplicativity"]
    for n in names:
        rep.check(n, True)

    if u.s(A.unit) != U.unit:
        rep.fail("source morphism", "unit")
    if u.t(A.unit) != U.unit:
        rep.fail("target anti-morphism", "unit")
    for i, j in itertools.product(range(A.dim), repeat=2):
        ab = A.mul(eA[i], eA[j])
        if u.s(ab) != u.mul(u.s(eA[i]), u.s(eA[j])):
            rep.fail("source morphism", (i, j))
        if u.t(ab) != u.mul(u.t(eA[j]), u.t(eA[i])):
            rep.fail("target anti-morphism", (i, j))
        if u.mul(u.s(eA[i]), u.t(eA[j])) != u.mul(u.t(eA[j]), u.s(eA[i])):
            rep.fail("source-target commute", (i, j))

    acts = u.actions()
    for (n1, m1), (n2, m2) in itertools.combinations(sorted(acts.items()), 2):
        for i, j in itertools.product(range(A.dim), repeat=2):
            if m1[i] @ m2[j] != m2[j] @ m1[i]:
                rep.fail("four actions commute", (n1, n2, i, j))

    uu = u.uu
    uuu = u.uuu
    one = U.unit

    def pair(x: dict, y: dict) -> dict:
        return uu.project_pure([x, y])

    for k in range(U.dim):
        e = eU[k]
        legs = u.legs[k]
        dk = u.delta[k]
        for a, b in itertools.product(range(A.dim), repeat=2):
            moved = u.mul(u.mul(u.s(eA[a]), u.t(eA[b])), e)
            lhs = u.cop_coords(moved)
            rhs: dict = {}
            for c, i, j in legs:
                vaxpy(rhs, pair(u.mul(u.s(eA[a]), eU[i]), u.mul(u.t(eA[b]), eU[j])), c)
            if lhs != rhs:
                rep.fail("coproduct bilinearity", (k, a, b))
        for a in range(A.dim):
            mism: dict = {}
            for c, i, j in legs:
                vaxpy(mism, pair(u.mul(eU[i], u.t(eA[a])), eU[j]), c)
                vaxpy(mism, pair(eU[i], u.mul(eU[j], u.s(eA[a]))), -c)
            if mism:
                rep.fail("takeuchi", (k, a))
        left: dict = {}
        right: dict = {}
        for c, i, j in legs:
            for c2, i2, j2 in u.legs[i]:
                vaxpy(left, uuu.project_tuple((i2, j2, j)), c * c2)
            for c2, i2, j2 in u.legs[j]:
                vaxpy(right, uuu.project_tuple((i, i2, j2)), c * c2)
        if left != right:
            rep.fail("coassociativity", k)
        c1: dict = {}
        c2: dict = {}
        for c, i, j in legs:
            vaxpy(c1, u.mul(u.s(u.eps(eU[i])), eU[j]), c)
            vaxpy(c2, u.mul(u.t(u.eps(eU[j])), eU[i]), c)
        if c1 != e:
            rep.fail("counit", ("left", k))
        if c2 != e:
            rep.fail("counit", ("right", k))
        for a, b in itertools.product(range(A.dim), repeat=2):
            lhs = u.eps(u.mul(u.mul(u.s(eA[a]), u.t(eA[b])), e))
            rhs = A.mul(A.mul(eA[a], u.eps(e)), eA[b])
            if lhs != rhs:
                rep.fail("counit bilinearity", (k, a, b))
        for l in range(U.dim):
            prod = u.mul(e, eU[l])
            lhs = u.cop_coords(prod)
            rhs = {}
            for c, i, j in legs:
                for c2, i2, j2 in u.legs[l]:
                    vaxpy(rhs, pair(u.mul(eU[i], eU[i2]), u.mul(eU[j], eU[j2])), c * c2)
            if lhs != rhs:
                rep.fail("coproduct multiplicative", (k, l))
            e1 = u.eps(prod)
            e2 = u.eps(u.mul(e, u.s(u.eps(eU[l]))))
            e3 = u.eps(u.mul(e, u.t(u.eps(eU[l]))))
            if not (e1 == e2 == e3):
                rep.fail("counit multiplicativity", (k, l))
        _ = dk
    if u.cop_coords(one) != pair(one, one):
        rep.fail("coproduct unit", "Delta(1)")
    if u.eps(one) != A.unit:
        rep.fail("counit unit", "eps(1)")
    return rep


def ground_algebra(field) -> FiniteAlgebra:
    return make_algebra(1, [[[1]]], [1], field, "k")


def enveloping(a: FiniteAlgebra) -> LeftBialgebroid:
    """A^e = A (x) A^op with Delta(a(x)b) = (a(x)1) (x)_A (1(x)b), eps(a(x)b) = ab."""
    F = a.field
    n = a.dim
    U = a.tensor(a.opposite())
    U = FiniteAlgebra(F, U.dim, U.table, U.unit, "(%s)^e" % a.name)
    s_cols = []
    t_cols = []
    for i in range(n):
        s_cols.append(vclean({i * n + k: x for k, x in a.unit.items()}))
        t_cols.append(vclean({k * n + i: x for k, x in a.unit.items()}))
    s = Matrix(U.dim, n, tuple(s_cols))
    t = Matrix(U.dim, n, tuple(t_cols))
    eps_cols = [a.table[i][j] for i in range(n) for j in range(n)]
    eps = Matrix(n, U.dim, tuple(eps_cols))
    tmp = LeftBialgebroid(U, a, s, t, (), eps, U.name)
    uu = tmp.uu
    delta = []
    for i in range(n):
        for j in range(n):
            delta.append(uu.project_pure([s.columns[i], t.columns[j]]))
    return LeftBialgebroid(U, a, s, t, tuple(delta), eps, U.name)


def from_bialgebra(h: FiniteAlgebra, coproduct, counit, check: bool = True) -> LeftBialgebroid:
    """Bialgebra (h, Delta_H, eps_H) as a bialgebroid over the ground field.

    ``coproduct[i]`` is a sparse vector on h (x) h with index a*dim + b;
    ``counit[i]`` a scalar.
    """
    F = h.field
    k = ground_algebra(F)
    s = Matrix(h.dim, 1, (dict(h.unit),))
    eps = Matrix(1, h.dim, tuple(vclean({0: F(c)}) for c in counit))
    tmp = LeftBialgebroid(h, k, s, s, (), eps, h.name)
    uu = tmp.uu
    delta = []
    for i in range(h.dim):
        v: dict = {}
        for ab, x in coproduct[i].items():
            vaxpy(v, uu.project_tuple((ab // h.dim, ab % h.dim)), F(x))
        delta.append(v)
    u = LeftBialgebroid(h, k, s, s, tuple(delta), eps, h.name)
    if check:
        rep = check_bialgebroid(u)
        if not rep.passed:
            raise ValueError("bialgebra axiom failure: %s" % rep.summary())
    return u


def with_counit(u: LeftBialgebroid, counit: Matrix) -> LeftBialgebroid:
    """Copy of ``u`` with a replaced counit (used to build corrupted instances)."""
    return LeftBialgebroid(u.total, u.base, u.source, u.target, u.delta, counit, u.name + "[eps']")
