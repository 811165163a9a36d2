"""Composition operations on cochains Bar_n(U, X) -> M.

External operations produce cochains on Bar(U, X (x)_A X); the internal ones
are cochains on Bar(U, X) with values in the braided commutative monoid Z.
Every formula is evaluated on the normalized representatives (first argument
u^0 = 1) and extended U-linearly; the ``*_value`` functions evaluate the
same formulas at an arbitrary first argument so that U-linearity of the
formula itself can be tested.

Sweedler legs of U come from the stored quotient representatives of
Delta(e_k); coaction legs likewise.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Optional, Sequence

from .algebra import BalancedTensor, Report
from .bar import BarResolution, Cochain, CochainError, coface, cochain_from_normalized, delta, random_cochain, zero_cochain
from .config import DEFAULT, EngineConfig
from .linalg import Matrix, vaxpy
from .yd import (CommutingPair, TensorModule, UModule, YDLeftLeft, YDLeftRight, braiding_sigma, braiding_tau,
                 monoidal_product)


def sign(n: int) -> int:
    return -1 if n % 2 else 1


class OperadContext:
    """Bialgebroid, commuting pair (X, Z) and the two bar resolutions the formulas need."""

    def __init__(self, pair: CommutingPair, config: EngineConfig = DEFAULT):
        self.pair = pair
        self.x: YDLeftRight = pair.x
        self.z: YDLeftLeft = pair.z
        self.U = self.x.bialgebroid
        self.field = self.U.field
        self.X: UModule = self.x.module
        self.Z: UModule = self.z.module
        self.config = config
        self.bar = BarResolution(self.X, config, "X")
        self.XX: TensorModule = self.x.xx
        self.bar2 = BarResolution(self.XX, config, "X(x)X")
        self._tensors = {(id(self.X), id(self.X)): self.XX}
        if self.z.mu is not None:
            self._tensors[(id(self.Z), id(self.Z))] = self.z.zz
        self._sigmas: dict = {}
        self._one = self.U.one()
        self._ebasis = [self.U.total.basis(k) for k in range(self.U.dim)]

    # structure maps ------------------------------------------------------------

    def tensor(self, m: UModule, n: UModule) -> TensorModule:
        key = (id(m), id(n))
        if key not in self._tensors:
            self._tensors[key] = monoidal_product(m, n)
        return self._tensors[key]

    def sigma(self, m: UModule) -> Matrix:
        """sigma_{Z,M}: Z (x) M -> M (x) Z."""
        key = id(m)
        if key not in self._sigmas:
            self._sigmas[key] = (m, braiding_sigma(self.z, m, self.tensor(self.Z, m), self.tensor(m, self.Z)))
        return self._sigmas[key][1]

    def tau(self, m: UModule) -> Matrix:
        """tau_{M,X}: M (x) X -> X (x) M."""
        return braiding_tau(m, self.x, self.tensor(m, self.X), self.tensor(self.X, m))

    @property
    def tau_xx(self) -> Matrix:
        if not hasattr(self, "_tau_xx"):
            self._tau_xx = self.tau(self.X)
        return self._tau_xx

    @property
    def delta_x(self) -> Matrix:
        """Delta_X: X -> X (x)_A X."""
        return self.x.delta_matrix

    @property
    def mu_z(self) -> Matrix:
        """Multiplication Z (x)_A Z -> Z."""
        return self.z.mu_quotient

    def base_to_z(self, a: dict) -> dict:
        """a -> s(a) 1_Z."""
        return self.Z.act_vec(self.U.s(a), self.z.unit)

    # Sweedler helpers --------------------------------------------------------

    def legs(self, us: Sequence[dict]):
        """Yield (coef, firsts, seconds) over all choices of coproduct legs of the us."""
        per = [self.U.cop(u) for u in us]
        for combo in itertools.product(*per):
            c = 1
            for t in combo:
                c = c * t[0]
            if c:
                yield c, [t[1] for t in combo], [t[2] for t in combo]

    def prod(self, idx: Sequence[int], tail: Optional[dict] = None) -> dict:
        """e_{idx[0]} ... e_{idx[-1]} (times tail), as a vector of U."""
        out = dict(tail) if tail is not None else dict(self._one)
        for k in reversed(idx):
            out = self.U.mul(self._ebasis[k], out)
        return out

    def e(self, k: int) -> dict:
        return self._ebasis[k]

    def split(self, w: int, source: str):
        """(coef, m, m') pairs: the rep of an X (x) X basis vector, or the legs of Delta_X."""
        one = self.field.one
        if source == "xx":
            i, j = self.XX.tensor.rep(w)
            return [(one, i, j)]
        return [(c, i, j) for c, i, j in self.x.cop({w: one})]


# raw formulas -------------------------------------------------------------------

def _cup_terms(ctx: OperadContext, phi: Cochain, psi: Cochain, u0: dict, us: Sequence[dict], m: int, mp: int):
    """Terms (coef, phi value, psi value) of the 1-product at (u0, us, m (x) m')."""
    j, i = phi.degree, psi.degree
    X = ctx.X
    for c, a, b in ctx.legs([u0] + list(us)):
        y = X.act_vec(ctx.prod(b[j + 1:j + i + 1]), X.e(mp))
        for c2, y0, y1 in ctx.x.coaction.of(y):
            pv = phi.evaluate(ctx.e(a[0]), [ctx.e(k) for k in a[1:j + 1]], X.e(y0))
            if not pv:
                continue
            w0 = ctx.prod(b[:j + 1], ctx.e(y1))
            qv = psi.evaluate(w0, [ctx.e(k) for k in a[j + 1:]], X.e(m))
            if qv:
                yield c * c2, pv, qv


def _insert_terms(ctx: OperadContext, phi: Cochain, psi: Cochain, i: int, u0: dict, us: Sequence[dict],
                  m: int, mp: int):
    """Terms (coef, phi value, z value) of the partial 2-product at position i."""
    j, q = phi.degree, psi.degree
    n = j + q - 1
    X, Z = ctx.X, ctx.Z
    one = ctx._one
    for c, a, b in ctx.legs([u0] + list(us)):
        y = X.act_vec(ctx.prod(b[i + q:n + 1]), X.e(mp))
        for c2, y0, y1 in ctx.x.coaction.of(y):
            v = psi.evaluate(one, [ctx.e(k) for k in a[i:i + q]], X.e(y0))
            for c3, v1, v0 in ctx.z.coaction.of(v):
                arg = ctx.U.mul(ctx.e(v1), ctx.prod(b[i:i + q], ctx.e(y1)))
                args = [ctx.e(k) for k in a[1:i]] + [arg] + [ctx.e(k) for k in a[i + q:n + 1]]
                pv = phi.evaluate(ctx.e(a[0]), args, X.e(m))
                if not pv:
                    continue
                zv = Z.act_vec(ctx.prod(b[:i]), Z.e(v0))
                yield c * c2 * c3, pv, zv


def external_cup_value(ctx, phi, psi, target: TensorModule, u0: dict, us, w: int) -> dict:
    out: dict = {}
    for c0, m, mp in ctx.split(w, "xx"):
        for c, pv, qv in _cup_terms(ctx, phi, psi, u0, us, m, mp):
            vaxpy(out, target.pair(pv, qv), c * c0)
    return out


def external_insert_value(ctx, phi, psi, i, target: TensorModule, u0: dict, us, w: int) -> dict:
    out: dict = {}
    for c0, m, mp in ctx.split(w, "xx"):
        for c, pv, zv in _insert_terms(ctx, phi, psi, i, u0, us, m, mp):
            vaxpy(out, target.pair(pv, zv), c * c0)
    return out


def insert_value(ctx, phi, psi, i, u0: dict, us, w: int) -> dict:
    out: dict = {}
    for c0, m, mp in ctx.split(w, "x"):
        for c, pv, zv in _insert_terms(ctx, phi, psi, i, u0, us, m, mp):
            vaxpy(out, ctx.z.mult(pv, zv), c * c0)
    return out


def cup_value(ctx, phi, psi, u0: dict, us, w: int) -> dict:
    out: dict = {}
    for c0, m, mp in ctx.split(w, "x"):
        for c, pv, qv in _cup_terms(ctx, phi, psi, u0, us, m, mp):
            vaxpy(out, ctx.z.mult(pv, qv), c * c0)
    return out


def _normalized(bar: BarResolution, degree: int, target: UModule, fn: Callable) -> Cochain:
    """Cochain whose value at (1, us, e_w) is fn(1, us, w)."""
    one = bar.U.one()
    return cochain_from_normalized(bar, degree, target, lambda us, w: fn(one, us, min(w)))


def _require(phi: Cochain, bar: BarResolution, what: str):
    if phi.bar is not bar:
        raise CochainError("%s must be a cochain on Bar(U, %s)" % (what, bar.name))
    if phi.degree < 0:
        raise CochainError("%s must have degree >= 0" % what)


# external operations ---------------------------------------------------------------

def external_cup(ctx: OperadContext, phi: Cochain, psi: Cochain) -> Cochain:
    """The 1-product phi_j (x)-cup psi_i on Bar(U, X (x) X) with values in E_j (x)_A F_i."""
    _require(phi, ctx.bar, "phi")
    _require(psi, ctx.bar, "psi")
    target = ctx.tensor(phi.target, psi.target)
    n = phi.degree + psi.degree
    return _normalized(ctx.bar2, n, target, lambda u0, us, w: external_cup_value(ctx, phi, psi, target, u0, us, w))


def external_insert(ctx: OperadContext, phi: Cochain, psi: Cochain, i: int) -> Cochain:
    """Partial external composition phi_j o_i psi_q, values in E_j (x)_A Z."""
    _require(phi, ctx.bar, "phi")
    _require(psi, ctx.bar, "psi")
    if psi.target is not ctx.Z:
        raise CochainError("the inserted cochain must take values in Z")
    if not 1 <= i <= phi.degree:
        raise ValueError("position %d out of range 1..%d" % (i, phi.degree))
    target = ctx.tensor(phi.target, ctx.Z)
    n = phi.degree + psi.degree - 1
    return _normalized(ctx.bar2, n, target,
                       lambda u0, us, w: external_insert_value(ctx, phi, psi, i, target, u0, us, w))


def external_product(ctx: OperadContext, phi: Cochain, psi: Cochain) -> Cochain:
    """Full external composition: sum_i (-1)^{(i-1)(q-1)} phi o_i psi; zero for deg phi = 0."""
    j, q = phi.degree, psi.degree
    target = ctx.tensor(phi.target, ctx.Z)
    out = zero_cochain(ctx.bar2, j + q - 1, target) if j + q - 1 >= 0 else None
    if j == 0:
        if out is None:
            raise CochainError("both degrees zero: the product has degree -1")
        return out
    for i in range(1, j + 1):
        term = external_insert(ctx, phi, psi, i)
        out = out + (term if sign((i - 1) * (q - 1)) > 0 else -term)
    return out


def external_commutator(ctx: OperadContext, psi: Cochain, phi: Cochain) -> Cochain:
    """[psi_q, phi_p] = psi o phi - (-1)^{(p-1)(q-1)} phi o psi, values in Z (x)_A Z.

    Both arguments must take values in Z.
    """
    p, q = phi.degree, psi.degree
    a = external_product(ctx, psi, phi)
    b = external_product(ctx, phi, psi)
    return a - b if sign((p - 1) * (q - 1)) > 0 else a + b


def tau_bar(ctx: OperadContext, c: Cochain) -> Cochain:
    """c o tau_k, where tau_k = Bar(id (x) tau_{X,X})."""
    return c.pre(ctx.bar2, ctx.tau_xx)


def braided_cup_commutator(ctx: OperadContext, phi: Cochain, psi: Cochain) -> Cochain:
    """(phi_j cup psi_q) o tau - (-1)^{jq} sigma o (psi_q cup phi_j), values in E_j (x)_A Z."""
    if psi.target is not ctx.Z:
        raise CochainError("the second argument must take values in Z")
    j, q = phi.degree, psi.degree
    a = tau_bar(ctx, external_cup(ctx, phi, psi))
    target = ctx.tensor(phi.target, ctx.Z)
    b = external_cup(ctx, psi, phi).post(ctx.sigma(phi.target), target)
    return a - b if sign(j * q) > 0 else a + b


# internal operations --------------------------------------------------------------------

def _internal(phi: Cochain, ctx: OperadContext, what: str):
    _require(phi, ctx.bar, what)
    if phi.target is not ctx.Z:
        raise CochainError("%s must take values in Z" % what)


def insert(ctx: OperadContext, phi: Cochain, psi: Cochain, i: int) -> Cochain:
    """Partial composition phi_p o_i psi_q, evaluated by its explicit formula."""
    _internal(phi, ctx, "phi")
    _internal(psi, ctx, "psi")
    p, q = phi.degree, psi.degree
    if not 1 <= i <= p:
        raise ValueError("position %d out of range 1..%d" % (i, p))
    return _normalized(ctx.bar, p + q - 1, ctx.Z, lambda u0, us, w: insert_value(ctx, phi, psi, i, u0, us, w))


def insert_via_external(ctx: OperadContext, phi: Cochain, psi: Cochain, i: int) -> Cochain:
    """mu o (phi o_i^(x) psi) o Bar(Delta_X); a second route to ``insert``."""
    ext = external_insert(ctx, phi, psi, i)
    return ext.pre(ctx.bar, ctx.delta_x).post(ctx.mu_z, ctx.Z)


def gerstenhaber_product(ctx: OperadContext, phi: Cochain, psi: Cochain) -> Cochain:
    """sum_i (-1)^{(i-1)(q-1)} phi o_i psi; zero when deg phi = 0."""
    p, q = phi.degree, psi.degree
    if p + q - 1 < 0:
        raise CochainError("both degrees zero: the product has degree -1")
    out = zero_cochain(ctx.bar, p + q - 1, ctx.Z)
    for i in range(1, p + 1):
        term = insert(ctx, phi, psi, i)
        out = out + (term if sign((i - 1) * (q - 1)) > 0 else -term)
    return out


def bracket(ctx: OperadContext, phi: Cochain, psi: Cochain) -> Cochain:
    """{phi, psi} = phi o psi - (-1)^{(p-1)(q-1)} psi o phi."""
    p, q = phi.degree, psi.degree
    a = gerstenhaber_product(ctx, phi, psi)
    b = gerstenhaber_product(ctx, psi, phi)
    return a - b if sign((p - 1) * (q - 1)) > 0 else a + b


def cup(ctx: OperadContext, phi: Cochain, psi: Cochain) -> Cochain:
    """phi cup psi = (mu o_2 psi) o_1 phi."""
    return insert(ctx, insert(ctx, mu(ctx), psi, 2), phi, 1)


def cup_explicit(ctx: OperadContext, phi: Cochain, psi: Cochain) -> Cochain:
    """The expanded cup formula, evaluated directly."""
    _internal(phi, ctx, "phi")
    _internal(psi, ctx, "psi")
    return _normalized(ctx.bar, phi.degree + psi.degree, ctx.Z,
                       lambda u0, us, w: cup_value(ctx, phi, psi, u0, us, w))


def _counit_element(ctx: OperadContext, degree: int) -> Cochain:
    """(u^0, ..., u^n, m) -> eps_X(u^0 ... u^n m), sent into Z by a -> s(a) 1_Z."""
    key = "_dist%d" % degree
    if not hasattr(ctx, key):
        X = ctx.X
        eps = ctx.x.counit

        def fn(us, w):
            y = w
            for u in reversed(us):
                y = X.act_vec(u, y)
            return ctx.base_to_z(eps.apply(y))

        setattr(ctx, key, cochain_from_normalized(ctx.bar, degree, ctx.Z, fn))
    return getattr(ctx, key)


def mu(ctx: OperadContext) -> Cochain:
    return _counit_element(ctx, 2)


def unit_element(ctx: OperadContext) -> Cochain:
    """The operad identity in degree 1."""
    return _counit_element(ctx, 1)


def e_element(ctx: OperadContext) -> Cochain:
    return _counit_element(ctx, 0)


def differential_via_bracket(ctx: OperadContext, phi: Cochain) -> Cochain:
    """(-1)^{|phi|+1} {mu, phi}."""
    b = bracket(ctx, mu(ctx), phi)
    return b if sign(phi.degree + 1) > 0 else -b


# identities -----------------------------------------------------------------------

def leibniz_residual(ctx: OperadContext, phi: Cochain, psi: Cochain) -> Cochain:
    """delta(phi cup psi) - delta phi cup psi - (-1)^j phi cup delta psi for the 1-product."""
    j = phi.degree
    lhs = delta(external_cup(ctx, phi, psi))
    r1 = external_cup(ctx, delta(phi), psi)
    r2 = external_cup(ctx, phi, delta(psi))
    return lhs - r1 - (r2 if sign(j) > 0 else -r2)


def homotopy_residual(ctx: OperadContext, phi: Cochain, psi: Cochain) -> Cochain:
    """(-1)^{qj}[phi,psi] - ((-1)^q phi o delta psi - (-1)^q delta(phi o psi) - delta phi o psi).

    Degree j = 0 uses the convention that the product of a 0-cochain vanishes.
    """
    j, q = phi.degree, psi.degree
    lhs = braided_cup_commutator(ctx, phi, psi)
    if sign(q * j) < 0:
        lhs = -lhs
    t1 = external_product(ctx, phi, delta(psi))
    t2 = delta(external_product(ctx, phi, psi)) if j >= 1 else None
    t3 = external_product(ctx, delta(phi), psi)
    rhs = t1 if sign(q) > 0 else -t1
    if t2 is not None:
        rhs = rhs - t2 if sign(q) > 0 else rhs + t2
    rhs = rhs - t3
    return lhs - rhs


def degree_zero_residual(ctx: OperadContext, phi0: Cochain, psi: Cochain) -> Cochain:
    """[phi_0, psi_q] + delta phi_0 o_1 psi_q."""
    if phi0.degree != 0:
        raise ValueError("phi must have degree 0")
    return braided_cup_commutator(ctx, phi0, psi) + external_insert(ctx, delta(phi0), psi, 1)


def tau_face_residual(ctx: OperadContext, phi: Cochain, psi: Cochain) -> Cochain:
    """(phi_j cup psi_q) o tau - (delta_{j+1} phi) o_{j+1} psi."""
    j = phi.degree
    lhs = tau_bar(ctx, external_cup(ctx, phi, psi))
    return lhs - external_insert(ctx, coface(phi, j + 1), psi, j + 1)


def sigma_face_residual(ctx: OperadContext, phi: Cochain, psi: Cochain) -> Cochain:
    """sigma o (psi_q cup phi_j) - (delta_0 phi) o_1 psi."""
    target = ctx.tensor(phi.target, ctx.Z)
    lhs = external_cup(ctx, psi, phi).post(ctx.sigma(phi.target), target)
    return lhs - external_insert(ctx, coface(phi, 0), psi, 1)


def coaction_rewrite_witness(ctx: OperadContext):
    """Check the reassociation of coaction legs

        (u(2) m)[0] (x) (u(2) m)[1] (x) (u(2) m)[2] u(1)
            = (u(1) m[0])[0] (x) (u(1) m[0])[1] (x) u(2) m[1]

    in X (x)_A U (x)_A U for all basis u, m.  Returns None or (u, m)."""
    U, X = ctx.U, ctx.X
    rho = ctx.x.coaction
    flat = BalancedTensor((X.dim, U.dim, U.dim), [(X.t_mats, U.s_left_mats), (U.t_left_mats, U.s_left_mats)],
                          ctx.field)
    for k in range(U.dim):
        for m in range(X.dim):
            lhs: dict = {}
            rhs: dict = {}
            for c, u1, u2 in U.legs[k]:
                y = X.act_basis(u2, m)
                for c2, y0, y1 in rho.of(y):
                    for c3, y00, y01 in rho.legs[y0]:
                        vaxpy(lhs, flat.project_pure([X.e(y00), ctx.e(y01), U.mul(ctx.e(y1), ctx.e(u1))]),
                              c * c2 * c3)
                for c2, m0, m1 in rho.legs[m]:
                    y = X.act_basis(u1, m0)
                    for c3, y0, y1 in rho.of(y):
                        vaxpy(rhs, flat.project_pure([X.e(y0), ctx.e(y1), U.mul(ctx.e(u2), ctx.e(m1))]),
                              c * c2 * c3)
            if lhs != rhs:
                return (k, m)
    return None


def operad_branch_residual(ctx: OperadContext, phi: Cochain, psi: Cochain, chi: Cochain, i: int, j: int):
    """Residual of the associativity relation for (phi o_i psi) o_j chi, or None if undefined."""
    p, q, r = phi.degree, psi.degree, chi.degree
    if not (1 <= i <= p and 1 <= j <= p + q - 1):
        return None
    lhs = insert(ctx, insert(ctx, phi, psi, i), chi, j)
    if j < i:
        rhs = insert(ctx, insert(ctx, phi, chi, j), psi, i + r - 1)
        branch = "j<i"
    elif j < q + i:
        rhs = insert(ctx, phi, insert(ctx, psi, chi, j - i + 1), i)
        branch = "i<=j<q+i"
    else:
        rhs = insert(ctx, insert(ctx, phi, chi, j - q + 1), psi, i)
        branch = "j>=q+i"
    return branch, lhs - rhs


def verify_operad(ctx: OperadContext, degree_cap: int = 3, trials: int = 100, seed: int = 0) -> Report:
    """Associativity branches, unitality and the multiplication identities on random cochains."""
    rep = Report("operad")
    rng = random.Random(seed)
    m, one, e = mu(ctx), unit_element(ctx), e_element(ctx)
    rep.check("mu o_1 mu = mu o_2 mu", insert(ctx, m, m, 1) == insert(ctx, m, m, 2),
              (insert(ctx, m, m, 1) - insert(ctx, m, m, 2)).witness())
    rep.check("mu o_1 e = 1", insert(ctx, m, e, 1) == one, (insert(ctx, m, e, 1) - one).witness())
    rep.check("mu o_2 e = 1", insert(ctx, m, e, 2) == one, (insert(ctx, m, e, 2) - one).witness())
    for name in ("j<i", "i<=j<q+i", "j>=q+i", "left unit", "right unit"):
        rep.check(name, True)
    counts = {"j<i": 0, "i<=j<q+i": 0, "j>=q+i": 0}
    t = 0
    while t < trials:
        p = rng.randint(1, degree_cap)
        q = rng.randint(0, degree_cap)
        r = rng.randint(0, degree_cap)
        i = rng.randint(1, p)
        # pick a branch uniformly among those available; resample if none is
        ranges = [("j<i", range(1, i)), ("i<=j<q+i", range(i, q + i)), ("j>=q+i", range(q + i, p + q))]
        ranges = [(b, rg) for b, rg in ranges if len(rg)]
        if not ranges:
            continue
        b, rg = ranges[rng.randrange(len(ranges))]
        j = rng.choice(list(rg))
        phi = random_cochain(ctx.bar, p, ctx.Z, rng)
        psi = random_cochain(ctx.bar, q, ctx.Z, rng)
        chi = random_cochain(ctx.bar, r, ctx.Z, rng)
        branch, diff = operad_branch_residual(ctx, phi, psi, chi, i, j)
        counts[branch] += 1
        if not diff.is_zero():
            rep.fail(branch, {"trial": t, "degrees": (p, q, r), "i": i, "j": j, "entry": diff.witness()})
        k = rng.randint(1, p)
        if insert(ctx, phi, one, k) != phi:
            rep.fail("right unit", {"trial": t, "degree": p, "i": k})
        if insert(ctx, one, phi, 1) != phi:
            rep.fail("left unit", {"trial": t, "degree": p})
        t += 1
    rep.notes.append(("branch counts", counts))
    return rep


def classical_cochain(ctx: OperadContext, phi: Cochain, args: Sequence[int]) -> dict:
    """f(a^1, ..., a^n) = phi(1, s(a^1), ..., s(a^n), 1_X) for the enveloping bialgebroid."""
    U = ctx.U
    A = U.base
    return phi.at([U.s(A.basis(a)) for a in args], dict(A.unit))
