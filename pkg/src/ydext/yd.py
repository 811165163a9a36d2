"""U-modules, comodules, Yetter-Drinfeld modules, braidings and (co)monoids.

Left-left YD modules Z carry a coaction z -> z(-1) (x)_A z(0) into U_<| (x)_A Z;
left-right YD modules X carry x -> x[0] (x)_A x[1] into X (x)_A >-U.  Every
module has the A-bimodule structure a >- m <| b = s(a) t(b) m, which is used
for all tensor products over A.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Optional

from .algebra import BalancedTensor, Report, equivariance_witness
from .bialgebroid import LeftBialgebroid
from .linalg import Matrix, vaxpy, vclean


@dataclass(frozen=True, eq=False)
class UModule:
    bialgebroid: LeftBialgebroid
    dim: int
    act: tuple  # Matrix per basis element of U
    name: str = ""

    @property
    def field(self):
        return self.bialgebroid.field

    def e(self, i: int) -> dict:
        return {i: self.field.one}

    def act_vec(self, u: dict, m: dict) -> dict:
        out: dict = {}
        for k, x in u.items():
            vaxpy(out, self.act[k].apply(m), x)
        return out

    def act_basis(self, k: int, i: int) -> dict:
        return self.act[k].columns[i]

    def action_matrix(self, u: dict) -> Matrix:
        cols = [self.act_vec(u, self.e(i)) for i in range(self.dim)]
        return Matrix(self.dim, self.dim, tuple(cols))

    @cached_property
    def s_mats(self) -> tuple:
        """m -> s(a) m, indexed by base basis."""
        U = self.bialgebroid
        return tuple(self.action_matrix(U.s(U.base.basis(a))) for a in range(U.base.dim))

    @cached_property
    def t_mats(self) -> tuple:
        """m -> t(a) m, indexed by base basis."""
        U = self.bialgebroid
        return tuple(self.action_matrix(U.t(U.base.basis(a))) for a in range(U.base.dim))

    def s_act(self, a: dict, m: dict) -> dict:
        return self.act_vec(self.bialgebroid.s(a), m)

    def t_act(self, a: dict, m: dict) -> dict:
        return self.act_vec(self.bialgebroid.t(a), m)


def check_module(m: UModule) -> Report:
    rep = Report("module " + m.name)
    U = m.bialgebroid
    rep.check("unital", True)
    rep.check("associative", True)
    if m.action_matrix(U.one()) != Matrix.identity(m.dim, U.field):
        rep.fail("unital", "1 acts nontrivially")
    for k, l in itertools.product(range(U.dim), repeat=2):
        if m.act[k] @ m.act[l] != m.action_matrix(U.total.table[k][l]):
            rep.fail("associative", (k, l))
    return rep


@dataclass(frozen=True, eq=False)
class TensorModule(UModule):
    """M (x)_A N with the diagonal action u(m (x) n) = u(1) m (x) u(2) n."""

    left: Optional[UModule] = None
    right: Optional[UModule] = None
    tensor: Optional[BalancedTensor] = None

    def pair(self, m: dict, n: dict) -> dict:
        return self.tensor.project_pure([m, n])

    def legs(self, v: dict) -> list:
        """(coef, i, j) pure-tensor expansion via representatives."""
        return [(x, ij[0], ij[1]) for x, ij in self.tensor.legs(v)]


def a_balanced(m: UModule, n: UModule) -> BalancedTensor:
    """m <| a (x) n = m (x) a >- n, i.e. t(a) m (x) n = m (x) s(a) n."""
    return BalancedTensor((m.dim, n.dim), [(m.t_mats, n.s_mats)], m.field)


def monoidal_product(m: UModule, n: UModule) -> TensorModule:
    U = m.bialgebroid
    t = a_balanced(m, n)
    acts = []
    for k in range(U.dim):
        cols = []
        for q in range(t.dim):
            i, j = t.rep(q)
            v: dict = {}
            for c, a, b in U.legs[k]:
                vaxpy(v, t.project_pure([m.act_basis(a, i), n.act_basis(b, j)]), c)
            cols.append(v)
        acts.append(Matrix(t.dim, t.dim, tuple(cols)))
    return TensorModule(U, t.dim, tuple(acts), "(%s)(x)(%s)" % (m.name, n.name), m, n, t)


def check_tensor_action(tm: TensorModule) -> Report:
    """The diagonal action must be well defined: it has to kill the balancing relations."""
    rep = Report("diagonal action " + tm.name)
    rep.check("well-defined", True)
    U = tm.bialgebroid
    t = tm.tensor
    m, n = tm.left, tm.right
    for rel in t.space.relations.basis:
        for k in range(U.dim):
            out: dict = {}
            for flat, x in rel.items():
                i, j = t.unflat(flat)
                for c, a, b in U.legs[k]:
                    vaxpy(out, t.project_pure([m.act_basis(a, i), n.act_basis(b, j)]), x * c)
            if out:
                rep.fail("well-defined", (k, min(rel)))
                return rep
    return rep


def map_tensor(tm_src: TensorModule, tm_tgt: TensorModule, f: Matrix, g: Matrix) -> Matrix:
    """f (x)_A g between monoidal products, computed on representatives."""
    cols = []
    for q in range(tm_src.dim):
        i, j = tm_src.tensor.rep(q)
        cols.append(tm_tgt.pair(f.columns[i], g.columns[j]))
    return Matrix(tm_tgt.dim, tm_src.dim, tuple(cols))


# comodules -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LeftCoaction:
    """z -> z(-1) (x)_A z(0) in U_<| (x)_A Z, as quotient coordinates per basis vector."""

    space: BalancedTensor
    coords: tuple

    @cached_property
    def legs(self) -> tuple:
        return tuple(tuple((x, ij[0], ij[1]) for x, ij in self.space.legs(c)) for c in self.coords)

    def of(self, z: dict) -> list:
        out = []
        for k, x in z.items():
            for c, a, b in self.legs[k]:
                out.append((x * c, a, b))
        return out


@dataclass(frozen=True, eq=False)
class RightCoaction:
    """x -> x[0] (x)_A x[1] in X (x)_A >-U; legs are (coef, x index, u index)."""

    space: BalancedTensor
    coords: tuple

    @cached_property
    def legs(self) -> tuple:
        return tuple(tuple((x, ij[0], ij[1]) for x, ij in self.space.legs(c)) for c in self.coords)

    def of(self, x: dict) -> list:
        out = []
        for k, y in x.items():
            for c, a, b in self.legs[k]:
                out.append((y * c, a, b))
        return out


def left_coaction_space(U: LeftBialgebroid, z: UModule) -> BalancedTensor:
    return BalancedTensor((U.dim, z.dim), [(U.t_left_mats, z.s_mats)], U.field)


def right_coaction_space(U: LeftBialgebroid, x: UModule) -> BalancedTensor:
    return BalancedTensor((x.dim, U.dim), [(x.t_mats, U.s_left_mats)], U.field)


@dataclass(frozen=True, eq=False)
class YDLeftLeft:
    module: UModule
    coaction: LeftCoaction
    mu: Optional[Matrix] = None  # on the ambient Z (x)_k Z, index i*dim + j
    unit: Optional[dict] = None
    name: str = "Z"

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def bialgebroid(self) -> LeftBialgebroid:
        return self.module.bialgebroid

    def mult(self, z: dict, w: dict) -> dict:
        out: dict = {}
        d = self.dim
        for i, x in z.items():
            for j, y in w.items():
                vaxpy(out, self.mu.columns[i * d + j], x * y)
        return out

    @cached_property
    def zz(self) -> TensorModule:
        return monoidal_product(self.module, self.module)

    @cached_property
    def mu_quotient(self) -> Matrix:
        """mu as a map on Z (x)_A Z."""
        cols = []
        for q in range(self.zz.dim):
            i, j = self.zz.tensor.rep(q)
            cols.append(self.mu.columns[i * self.dim + j])
        return Matrix(self.dim, self.zz.dim, tuple(cols))


@dataclass(frozen=True, eq=False)
class YDLeftRight:
    module: UModule
    coaction: RightCoaction
    delta: Optional[tuple] = None  # per basis: coordinates in X (x)_A X
    counit: Optional[Matrix] = None  # X -> A
    name: str = "X"

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def bialgebroid(self) -> LeftBialgebroid:
        return self.module.bialgebroid

    @cached_property
    def xx(self) -> TensorModule:
        return monoidal_product(self.module, self.module)

    @cached_property
    def delta_matrix(self) -> Matrix:
        return Matrix(self.xx.dim, self.dim, tuple(self.delta))

    @cached_property
    def delta_legs(self) -> tuple:
        return tuple(tuple(self.xx.legs(c)) for c in self.delta)

    def cop(self, x: dict) -> list:
        out = []
        for k, y in x.items():
            for c, a, b in self.delta_legs[k]:
                out.append((y * c, a, b))
        return out


# checkers ---------------------------------------------------------------------

def _coef_pairs(space: BalancedTensor, terms) -> dict:
    """Sum of coef * (v (x) w) projected, for terms (coef, v, w) of sparse vectors."""
    out: dict = {}
    for c, v, w in terms:
        if c:
            vaxpy(out, space.project_pure([v, w]), c)
    return out


def check_yd_left_left(z: YDLeftLeft) -> Report:
    U = z.bialgebroid
    F = U.field
    M = z.module
    rep = Report("left-left YD " + z.name)
    rep.merge(check_module(M))
    names = ["comodule counit", "comodule coassociativity", "same bimodule", "coaction bilinearity",
             "takeuchi", "yd"]
    for n in names:
        rep.check(n, True)
    sp = z.coaction.space
    lam = z.coaction
    uuz = BalancedTensor((U.dim, U.dim, M.dim),
                         [(U.t_left_mats, U.s_left_mats), (U.t_left_mats, M.s_mats)], F)
    eA = [U.base.basis(a) for a in range(U.base.dim)]
    eU = [U.total.basis(k) for k in range(U.dim)]
    for i in range(M.dim):
        zi = M.e(i)
        legs = lam.legs[i]
        back: dict = {}
        for c, a, b in legs:
            vaxpy(back, M.s_act(U.eps(eU[a]), M.e(b)), c)
        if back != zi:
            rep.fail("comodule counit", i)
        l1: dict = {}
        l2: dict = {}
        for c, a, b in legs:
            for c2, a2, b2 in U.legs[a]:
                vaxpy(l1, uuz.project_tuple((a2, b2, b)), c * c2)
            for c2, a2, b2 in lam.legs[b]:
                vaxpy(l2, uuz.project_tuple((a, a2, b2)), c * c2)
        if l1 != l2:
            rep.fail("comodule coassociativity", i)
        for a in range(U.base.dim):
            lhs = M.t_act(eA[a], zi)
            rhs: dict = {}
            for c, ua, zb in legs:
                vaxpy(rhs, M.s_act(U.eps(U.mul(eU[ua], U.s(eA[a]))), M.e(zb)), c)
            if lhs != rhs:
                rep.fail("same bimodule", (i, a))
            mism = _coef_pairs(sp, [(c, U.mul(eU[ua], U.t(eA[a])), M.e(zb)) for c, ua, zb in legs])
            vaxpy(mism, _coef_pairs(sp, [(c, eU[ua], M.t_act(eA[a], M.e(zb))) for c, ua, zb in legs]), -1)
            if mism:
                rep.fail("takeuchi", (i, a))
            for b in range(U.base.dim):
                moved = M.act_vec(U.mul(U.s(eA[a]), U.t(eA[b])), zi)
                lhs = _coef_pairs(sp, [(c, eU[ua], M.e(zb)) for c, ua, zb in lam.of(moved)])
                rhs = _coef_pairs(sp, [(c, U.mul(U.mul(U.s(eA[a]), eU[ua]), U.s(eA[b])), M.e(zb))
                                       for c, ua, zb in legs])
                if lhs != rhs:
                    rep.fail("coaction bilinearity", (i, a, b))
        for k in range(U.dim):
            lhs = _coef_pairs(sp, [(c * c2, U.mul(eU[u1], eU[ua]), M.act_basis(u2, zb))
                                   for c, u1, u2 in U.legs[k] for c2, ua, zb in legs])
            rhs: dict = {}
            for c, u1, u2 in U.legs[k]:
                w = M.act_basis(u1, i)
                for c2, ua, zb in lam.of(w):
                    vaxpy(rhs, sp.project_pure([U.mul(eU[ua], eU[u2]), M.e(zb)]), c * c2)
            if lhs != rhs:
                rep.fail("yd", (k, i))
    return rep


def check_yd_left_right(x: YDLeftRight) -> Report:
    U = x.bialgebroid
    F = U.field
    M = x.module
    rep = Report("left-right YD " + x.name)
    rep.merge(check_module(M))
    names = ["comodule counit", "comodule coassociativity", "same bimodule", "coaction bilinearity",
             "takeuchi", "yd2"]
    for n in names:
        rep.check(n, True)
    sp = x.coaction.space
    rho = x.coaction
    xuu = BalancedTensor((M.dim, U.dim, U.dim),
                         [(M.t_mats, U.s_left_mats), (U.t_left_mats, U.s_left_mats)], F)
    eA = [U.base.basis(a) for a in range(U.base.dim)]
    eU = [U.total.basis(k) for k in range(U.dim)]
    for i in range(M.dim):
        xi = M.e(i)
        legs = rho.legs[i]
        back: dict = {}
        for c, xa, ub in legs:
            vaxpy(back, M.t_act(U.eps(eU[ub]), M.e(xa)), c)
        if back != xi:
            rep.fail("comodule counit", i)
        l1: dict = {}
        l2: dict = {}
        for c, xa, ub in legs:
            for c2, xa2, ub2 in rho.legs[xa]:
                vaxpy(l1, xuu.project_tuple((xa2, ub2, ub)), c * c2)
            for c2, u1, u2 in U.legs[ub]:
                vaxpy(l2, xuu.project_tuple((xa, u1, u2)), c * c2)
        if l1 != l2:
            rep.fail("comodule coassociativity", i)
        for a in range(U.base.dim):
            lhs = M.s_act(eA[a], xi)
            rhs: dict = {}
            for c, xa, ub in legs:
                vaxpy(rhs, M.t_act(U.eps(U.mul(eU[ub], U.t(eA[a]))), M.e(xa)), c)
            if lhs != rhs:
                rep.fail("same bimodule", (i, a))
            mism = _coef_pairs(sp, [(c, M.s_act(eA[a], M.e(xa)), eU[ub]) for c, xa, ub in legs])
            vaxpy(mism, _coef_pairs(sp, [(c, M.e(xa), U.mul(eU[ub], U.s(eA[a]))) for c, xa, ub in legs]), -1)
            if mism:
                rep.fail("takeuchi", (i, a))
            for b in range(U.base.dim):
                moved = M.act_vec(U.mul(U.s(eA[a]), U.t(eA[b])), xi)
                lhs = _coef_pairs(sp, [(c, M.e(xa), eU[ub]) for c, xa, ub in rho.of(moved)])
                rhs = _coef_pairs(sp, [(c, M.e(xa), U.mul(U.mul(U.t(eA[b]), eU[ub]), U.t(eA[a])))
                                       for c, xa, ub in legs])
                if lhs != rhs:
                    rep.fail("coaction bilinearity", (i, a, b))
        for k in range(U.dim):
            lhs = _coef_pairs(sp, [(c * c2, M.act_basis(u1, xa), U.mul(eU[u2], eU[ub]))
                                   for c, u1, u2 in U.legs[k] for c2, xa, ub in legs])
            rhs: dict = {}
            for c, u1, u2 in U.legs[k]:
                w = M.act_basis(u2, i)
                for c2, xa, ub in rho.of(w):
                    vaxpy(rhs, sp.project_pure([M.e(xa), U.mul(eU[ub], eU[u1])]), c * c2)
            if lhs != rhs:
                rep.fail("yd2", (k, i))
    return rep


def check_braided_monoid(z: YDLeftLeft) -> Report:
    U = z.bialgebroid
    M = z.module
    rep = Report("braided commutative monoid " + z.name)
    names = ["A-ring", "associativity", "unit", "module-algebra", "module-algebra unit",
             "comodule-algebra", "comodule-algebra unit", "braided commutativity", "yd consistency"]
    for n in names:
        rep.check(n, True)
    if z.mu is None or z.unit is None:
        rep.fail("A-ring", "no multiplication given")
        return rep
    d = M.dim
    eA = [U.base.basis(a) for a in range(U.base.dim)]
    eU = [U.total.basis(k) for k in range(U.dim)]
    E = [M.e(i) for i in range(d)]
    lam = z.coaction
    sp = lam.space
    one = z.unit
    for i, j in itertools.product(range(d), repeat=2):
        for a in range(U.base.dim):
            if z.mult(M.t_act(eA[a], E[i]), E[j]) != z.mult(E[i], M.s_act(eA[a], E[j])):
                rep.fail("A-ring", ("balanced", i, j, a))
            if z.mult(M.s_act(eA[a], E[i]), E[j]) != M.s_act(eA[a], z.mult(E[i], E[j])):
                rep.fail("A-ring", ("left linear", i, j, a))
            if z.mult(E[i], M.t_act(eA[a], E[j])) != M.t_act(eA[a], z.mult(E[i], E[j])):
                rep.fail("A-ring", ("right linear", i, j, a))
        for k in range(d):
            if z.mult(z.mult(E[i], E[j]), E[k]) != z.mult(E[i], z.mult(E[j], E[k])):
                rep.fail("associativity", (i, j, k))
    for i in range(d):
        if z.mult(one, E[i]) != E[i] or z.mult(E[i], one) != E[i]:
            rep.fail("unit", i)
    for k in range(U.dim):
        if M.act_vec(eU[k], one) != M.s_act(U.eps(eU[k]), one):
            rep.fail("module-algebra unit", k)
    for i, j in itertools.product(range(d), repeat=2):
        zz = z.mult(E[i], E[j])
        for k in range(U.dim):
            lhs = M.act_vec(eU[k], zz)
            rhs: dict = {}
            for c, u1, u2 in U.legs[k]:
                vaxpy(rhs, z.mult(M.act_basis(u1, i), M.act_basis(u2, j)), c)
            if lhs != rhs:
                rep.fail("module-algebra", (k, i, j))
            alt: dict = {}
            for c, u1, u2 in U.legs[k]:
                for c2, ua, zb in lam.legs[i]:
                    vaxpy(alt, z.mult(M.act_vec(U.mul(eU[u1], eU[ua]), E[j]), M.act_basis(u2, zb)), c * c2)
            if lhs != alt:
                rep.fail("yd consistency", (k, i, j))
        lhs = _coef_pairs(sp, [(c, eU[ua], M.e(zb)) for c, ua, zb in lam.of(zz)])
        rhs = _coef_pairs(sp, [(c * c2, U.mul(eU[ua], eU[ua2]), z.mult(M.e(zb), M.e(zb2)))
                               for c, ua, zb in lam.legs[i] for c2, ua2, zb2 in lam.legs[j]])
        if lhs != rhs:
            rep.fail("comodule-algebra", (i, j))
        bc: dict = {}
        for c, ua, zb in lam.legs[i]:
            vaxpy(bc, z.mult(M.act_basis(ua, j), M.e(zb)), c)
        if bc != zz:
            rep.fail("braided commutativity", (i, j))
    lhs = _coef_pairs(sp, [(c, eU[ua], M.e(zb)) for c, ua, zb in lam.of(one)])
    if lhs != sp.project_pure([U.one(), one]):
        rep.fail("comodule-algebra unit", "lambda(1)")
    return rep


def check_braided_comonoid(x: YDLeftRight) -> Report:
    U = x.bialgebroid
    M = x.module
    F = U.field
    rep = Report("braided cocommutative comonoid " + x.name)
    names = ["A-coring", "coassociativity", "counit", "module-coalgebra", "module-coalgebra counit",
             "comodule-coalgebra", "comodule-coalgebra counit", "braided cocommutativity"]
    for n in names:
        rep.check(n, True)
    if x.delta is None or x.counit is None:
        rep.fail("A-coring", "no comultiplication given")
        return rep
    d = M.dim
    xx = x.xx
    eA = [U.base.basis(a) for a in range(U.base.dim)]
    eU = [U.total.basis(k) for k in range(U.dim)]
    E = [M.e(i) for i in range(d)]
    rho = x.coaction
    epsx = x.counit
    xxx = BalancedTensor((d, d, d), [(M.t_mats, M.s_mats), (M.t_mats, M.s_mats)], F)
    xxu = BalancedTensor((d, d, U.dim), [(M.t_mats, M.s_mats), (M.t_mats, U.s_left_mats)], F)
    for i in range(d):
        legs = x.delta_legs[i]
        l1: dict = {}
        l2: dict = {}
        for c, a, b in legs:
            for c2, a2, b2 in x.delta_legs[a]:
                vaxpy(l1, xxx.project_tuple((a2, b2, b)), c * c2)
            for c2, a2, b2 in x.delta_legs[b]:
                vaxpy(l2, xxx.project_tuple((a, a2, b2)), c * c2)
        if l1 != l2:
            rep.fail("coassociativity", i)
        c1: dict = {}
        c2_: dict = {}
        for c, a, b in legs:
            vaxpy(c1, M.s_act(epsx.columns[a], E[b]), c)
            vaxpy(c2_, M.t_act(epsx.columns[b], E[a]), c)
        if c1 != E[i] or c2_ != E[i]:
            rep.fail("counit", i)
        for a, b in itertools.product(range(U.base.dim), repeat=2):
            moved = M.act_vec(U.mul(U.s(eA[a]), U.t(eA[b])), E[i])
            lhs: dict = {}
            for k, y in moved.items():
                vaxpy(lhs, x.delta[k], y)
            rhs = _coef_pairs(xx.tensor, [(c, M.s_act(eA[a], E[p]), M.t_act(eA[b], E[q])) for c, p, q in legs])
            if lhs != rhs:
                rep.fail("A-coring", ("coproduct", i, a, b))
            if epsx.apply(moved) != U.base.mul(U.base.mul(eA[a], epsx.columns[i]), eA[b]):
                rep.fail("A-coring", ("counit", i, a, b))
        for k in range(U.dim):
            ux = M.act_basis(k, i)
            lhs = {}
            for kk, y in ux.items():
                vaxpy(lhs, x.delta[kk], y)
            rhs = _coef_pairs(xx.tensor, [(c * c2, M.act_basis(u1, p), M.act_basis(u2, q))
                                          for c, u1, u2 in U.legs[k] for c2, p, q in legs])
            if lhs != rhs:
                rep.fail("module-coalgebra", (k, i))
            if epsx.apply(ux) != U.eps(U.mul(eU[k], U.s(epsx.columns[i]))):
                rep.fail("module-coalgebra counit", (k, i))
        l1 = {}
        for c, xa, ub in rho.legs[i]:
            for c2, p, q in x.delta_legs[xa]:
                vaxpy(l1, xxu.project_tuple((p, q, ub)), c * c2)
        l2 = {}
        for c, p, q in legs:
            for c2, p0, p1 in rho.legs[p]:
                for c3, q0, q1 in rho.legs[q]:
                    vaxpy(l2, xxu.project_pure([E[p0], E[q0], U.mul(eU[q1], eU[p1])]), c * c2 * c3)
        if l1 != l2:
            rep.fail("comodule-coalgebra", i)
        lhs = U.t(epsx.columns[i])
        rhs = {}
        for c, xa, ub in rho.legs[i]:
            vaxpy(rhs, U.mul(U.s(epsx.columns[xa]), eU[ub]), c)
        if lhs != rhs:
            rep.fail("comodule-coalgebra counit", i)
        bc: dict = {}
        for c, p, q in legs:
            for c2, q0, q1 in rho.legs[q]:
                vaxpy(bc, xx.pair(E[q0], M.act_basis(q1, p)), c * c2)
        if bc != x.delta[i]:
            rep.fail("braided cocommutativity", i)
    return rep


# braidings ---------------------------------------------------------------------

def braiding_sigma(z: YDLeftLeft, m: UModule, zm: TensorModule = None, mz: TensorModule = None) -> Matrix:
    """sigma: Z (x)_A M -> M (x)_A Z, z (x) m -> z(-1) m (x) z(0)."""
    zm = zm or monoidal_product(z.module, m)
    mz = mz or monoidal_product(m, z.module)
    cols = []
    for q in range(zm.dim):
        i, j = zm.tensor.rep(q)
        v: dict = {}
        for c, ua, zb in z.coaction.legs[i]:
            vaxpy(v, mz.pair(m.act_basis(ua, j), z.module.e(zb)), c)
        cols.append(v)
    return Matrix(mz.dim, zm.dim, tuple(cols))


def braiding_tau(m: UModule, x: YDLeftRight, mx: TensorModule = None, xm: TensorModule = None) -> Matrix:
    """tau: M (x)_A X -> X (x)_A M, m (x) x -> x[0] (x) x[1] m."""
    mx = mx or monoidal_product(m, x.module)
    xm = xm or monoidal_product(x.module, m)
    cols = []
    for q in range(mx.dim):
        i, j = mx.tensor.rep(q)
        v: dict = {}
        for c, xa, ub in x.coaction.legs[j]:
            vaxpy(v, xm.pair(x.module.e(xa), m.act_basis(ub, i)), c)
        cols.append(v)
    return Matrix(xm.dim, mx.dim, tuple(cols))


def is_module_map(f: Matrix, src: UModule, tgt: UModule):
    """Witness (generator, basis vector) of non-equivariance, or None."""
    return equivariance_witness(f, src.act, tgt.act)


@dataclass
class CommutingPair:
    x: YDLeftRight
    z: YDLeftLeft
    certificate: dict = dc_field(default_factory=dict)


class CommutingPairError(ValueError):
    def __init__(self, witness):
        super().__init__("not a commuting pair: x[0] (x) x[1] z != z(-1) x (x) z(0) at basis pair %s" % (witness,))
        self.witness = witness


def commuting_pair_witness(x: YDLeftRight, z: YDLeftLeft):
    xz = monoidal_product(x.module, z.module)
    for i in range(x.dim):
        for j in range(z.dim):
            lhs: dict = {}
            for c, xa, ub in x.coaction.legs[i]:
                vaxpy(lhs, xz.pair(x.module.e(xa), z.module.act_basis(ub, j)), c)
            rhs: dict = {}
            for c, ua, zb in z.coaction.legs[j]:
                vaxpy(rhs, xz.pair(x.module.act_basis(ua, i), z.module.e(zb)), c)
            if lhs != rhs:
                return (i, j)
    return None


def check_commuting_pair(x: YDLeftRight, z: YDLeftLeft) -> CommutingPair:
    w = commuting_pair_witness(x, z)
    if w is not None:
        raise CommutingPairError(w)
    return CommutingPair(x, z, {"pairs_checked": x.dim * z.dim})


def hexagon_sigma_witness(z: YDLeftLeft, m: UModule, n: UModule):
    """sigma_{Z, M(x)N} = (M (x) sigma_{Z,N}) (sigma_{Z,M} (x) N), compared in flat M (x)_A N (x)_A Z."""
    U = z.bialgebroid
    F = U.field
    Z = z.module
    flat = BalancedTensor((m.dim, n.dim, Z.dim), [(m.t_mats, n.s_mats), (n.t_mats, Z.s_mats)], F)
    for i, j, k in itertools.product(range(Z.dim), range(m.dim), range(n.dim)):
        lhs: dict = {}
        for c, ua, zb in z.coaction.legs[i]:
            for c2, u1, u2 in U.legs[ua]:
                vaxpy(lhs, flat.project_pure([m.act_basis(u1, j), n.act_basis(u2, k), Z.e(zb)]), c * c2)
        rhs: dict = {}
        for c, ua, zb in z.coaction.legs[i]:
            for c2, ua2, zb2 in z.coaction.legs[zb]:
                vaxpy(rhs, flat.project_pure([m.act_basis(ua, j), n.act_basis(ua2, k), Z.e(zb2)]), c * c2)
        if lhs != rhs:
            return (i, j, k)
    return None


def hexagon_tau_witness(m: UModule, n: UModule, x: YDLeftRight):
    """tau_{M(x)N, X} = (tau_{M,X} (x) N)(M (x) tau_{N,X}), compared in flat X (x)_A M (x)_A N."""
    U = x.bialgebroid
    F = U.field
    X = x.module
    flat = BalancedTensor((X.dim, m.dim, n.dim), [(X.t_mats, m.s_mats), (m.t_mats, n.s_mats)], F)
    for j, k, i in itertools.product(range(m.dim), range(n.dim), range(X.dim)):
        lhs: dict = {}
        for c, xa, ub in x.coaction.legs[i]:
            for c2, u1, u2 in U.legs[ub]:
                vaxpy(lhs, flat.project_pure([X.e(xa), m.act_basis(u1, j), n.act_basis(u2, k)]), c * c2)
        rhs: dict = {}
        for c, xa, ub in x.coaction.legs[i]:
            for c2, xa2, ub2 in x.coaction.legs[xa]:
                vaxpy(rhs, flat.project_pure([X.e(xa2), m.act_basis(ub2, j), n.act_basis(ub, k)]), c * c2)
        if lhs != rhs:
            return (i, j, k)
    return None


# unit coefficients ---------------------------------------------------------------

def base_module(U: LeftBialgebroid) -> UModule:
    """A as a U-module via u . a = eps(u s(a))."""
    A = U.base
    acts = []
    for k in range(U.dim):
        cols = [U.eps(U.mul(U.total.basis(k), U.s(A.basis(a)))) for a in range(A.dim)]
        acts.append(Matrix(A.dim, A.dim, tuple(cols)))
    return UModule(U, A.dim, tuple(acts), "A")


def unit_left_coaction(U: LeftBialgebroid, amod: UModule) -> LeftCoaction:
    """a -> s(a) (x)_A 1."""
    sp = left_coaction_space(U, amod)
    A = U.base
    return LeftCoaction(sp, tuple(sp.project_pure([U.s(A.basis(a)), dict(A.unit)]) for a in range(A.dim)))


def unit_right_coaction(U: LeftBialgebroid, amod: UModule, leg: str = "target") -> RightCoaction:
    """a -> 1 (x)_A t(a) (leg="target") or 1 (x)_A s(a) (leg="source")."""
    sp = right_coaction_space(U, amod)
    A = U.base
    emb = U.t if leg == "target" else U.s
    return RightCoaction(sp, tuple(sp.project_pure([dict(A.unit), emb(A.basis(a))]) for a in range(A.dim)))


def unit_left_yd(U: LeftBialgebroid) -> YDLeftLeft:
    amod = base_module(U)
    A = U.base
    mu = Matrix(A.dim, A.dim * A.dim, tuple(A.table[i][j] for i in range(A.dim) for j in range(A.dim)))
    return YDLeftLeft(amod, unit_left_coaction(U, amod), mu, dict(A.unit), "A")


def unit_right_yd(U: LeftBialgebroid, leg: str = "target") -> YDLeftRight:
    amod = base_module(U)
    A = U.base
    probe = YDLeftRight(amod, unit_right_coaction(U, amod, leg), None, None, "A")
    xx = probe.xx
    delta = tuple(xx.pair(dict(A.unit), A.basis(a)) for a in range(A.dim))
    counit = Matrix.identity(A.dim, U.field)
    return YDLeftRight(amod, probe.coaction, delta, counit, "A")


class CoefficientError(ValueError):
    pass


def unit_coefficients(U: LeftBialgebroid) -> CommutingPair:
    """(X, Z) = (A, A) with all structure checked; raises CoefficientError on any failure."""
    z = unit_left_yd(U)
    x = unit_right_yd(U)
    reports = [check_yd_left_left(z), check_yd_left_right(x), check_braided_monoid(z), check_braided_comonoid(x)]
    for r in reports:
        if not r.passed:
            raise CoefficientError("unit coefficients rejected: " + r.summary())
    pair = check_commuting_pair(x, z)
    pair.certificate["reports"] = [r.summary() for r in reports]
    return pair


def trivial_module(U: LeftBialgebroid, dim: int = 1, name: str = "k") -> UModule:
    """U over the ground field acting through its counit (dim copies of k)."""
    acts = []
    for k in range(U.dim):
        e = U.eps(U.total.basis(k))
        c = e.get(0, U.field.zero)
        acts.append(Matrix(dim, dim, tuple(vclean({i: c}) for i in range(dim))))
    return UModule(U, dim, tuple(acts), name)
