"""Extensions, splicing, the truncated totalisation and the transfer maps Phi and Psi.

An extension of length p is stored as modules indexed by absolute degree
-1..p (X at -1, Z at p) together with differentials d_k: deg k -> deg k-1,
so d_0 = p_E and d_p = i_E.  A length-0 "extension" is a morphism X -> Z and
stores that single map instead.

Graded maps out of Bar(U, W) are dictionaries of cochains indexed by the
source degree; ``shift`` says into which degree of the target extension
component k lands (0 for chain maps, 1 for homotopies).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Report
from .bar import BarResolution, Cochain, CochainError, delta, hom_basis, solve_coboundary, \
    solve_cocycles, zero_cochain
from .linalg import Matrix, block_diag, hstack, kernel, quotient_by, rank, solve, vadd, vclean
from .operad import (OperadContext, braided_cup_commutator, bracket, cup, external_commutator, external_cup,
                     external_product, sign)
from .yd import UModule, is_module_map, map_tensor


class ExtensionError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else "%s (witness %s)" % (message, witness))
        self.witness = witness


# modules built from others -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DirectSum(UModule):
    parts: tuple = ()
    offsets: tuple = ()

    def inj(self, k: int) -> Matrix:
        one = self.field.one
        off = self.offsets[k]
        return Matrix(self.dim, self.parts[k].dim, tuple({off + i: one} for i in range(self.parts[k].dim)))

    def proj(self, k: int) -> Matrix:
        one = self.field.one
        off, n = self.offsets[k], self.parts[k].dim
        return Matrix(n, self.dim, tuple({j - off: one} if off <= j < off + n else {} for j in range(self.dim)))


def direct_sum(mods, name: str = "") -> DirectSum:
    U = mods[0].bialgebroid
    offs, o = [], 0
    for m in mods:
        offs.append(o)
        o += m.dim
    acts = tuple(block_diag([m.act[k] for m in mods]) for k in range(U.dim))
    return DirectSum(U, o, acts, name or "+".join(m.name for m in mods), tuple(mods), tuple(offs))


@dataclass(frozen=True, eq=False)
class SubModule(UModule):
    ambient: Optional[UModule] = None
    incl: Optional[Matrix] = None
    pivots: tuple = ()

    def coords(self, v: dict) -> dict:
        """Coordinates of an ambient vector lying in the submodule."""
        out = {k: v[p] for k, p in enumerate(self.pivots) if v.get(p)}
        if vclean(vadd(self.incl.apply(out), v, -1)):
            raise ExtensionError("vector outside the submodule " + self.name, min(v))
        return out

    def coords_matrix(self, m: Matrix) -> Matrix:
        return Matrix(self.dim, m.cols, tuple(self.coords(c) for c in m.columns))


def submodule(M: UModule, space, name: str = "") -> SubModule:
    """The U-stable subspace ``space`` of M, with its reduced echelon basis."""
    basis = space.basis
    incl = Matrix(M.dim, len(basis), tuple(dict(r) for r in basis))
    sub = SubModule(M.bialgebroid, len(basis), (), name, M, incl, tuple(min(r) for r in basis))
    acts = []
    for k in range(M.bialgebroid.dim):
        acts.append(sub.coords_matrix(M.act[k] @ incl))
    object.__setattr__(sub, "act", tuple(acts))
    return sub


@dataclass(frozen=True, eq=False)
class QuotientModule(UModule):
    ambient: Optional[UModule] = None
    space: object = None

    @property
    def proj(self) -> Matrix:
        return self.space.projection

    @property
    def lift(self) -> Matrix:
        one = self.field.one
        return Matrix(self.ambient.dim, self.dim, tuple({c: one} for c in self.space.basis_cols))


def quotient_module(M: UModule, relations, name: str = "") -> QuotientModule:
    q = quotient_by(M.dim, relations, M.field)
    for r in q.relations.basis:
        for k in range(M.bialgebroid.dim):
            if q.project(M.act[k].apply(r)):
                raise ExtensionError("relations are not U-stable", (k, min(r)))
    acts = tuple(Matrix(q.dim, q.dim, tuple(q.project(M.act[k].columns[c]) for c in q.basis_cols))
                 for k in range(M.bialgebroid.dim))
    return QuotientModule(M.bialgebroid, q.dim, acts, name, M, q)


def bar_module(bar: BarResolution, j: int) -> UModule:
    """Bar_j as a U-module on the basis of N_{j+1}; Bar_{-1} = W."""
    if j < 0:
        return bar.W
    key = ("module", j)
    if key not in bar._cache:
        lev = bar.level(j + 1)
        bar._cache[key] = UModule(bar.U, lev.dim, lev.act, "Bar_%d(%s)" % (j, bar.name))
    return bar._cache[key]


def _identity(M: UModule) -> Matrix:
    return Matrix.identity(M.dim, M.field)


# extensions --------------------------------------------------------------------------

@dataclass(eq=False)
class Extension:
    modules: tuple  # absolute degrees -1..p
    maps: tuple  # maps[k] = d_k: deg k -> deg k-1; for p = 0 the morphism X -> Z
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.maps) != len(self.modules) - 1 or len(self.modules) < 2:
            raise ExtensionError("an extension of length p needs p + 2 modules and p + 1 maps")
        if self.length == 0:
            shapes = [(self.modules[1].dim, self.modules[0].dim)]
        else:
            shapes = [(self.modules[k].dim, self.modules[k + 1].dim) for k in range(len(self.maps))]
        for k, (m, s) in enumerate(zip(self.maps, shapes)):
            if (m.rows, m.cols) != s:
                raise ExtensionError("map %d has shape %dx%d, expected %dx%d" % (k, m.rows, m.cols, s[0], s[1]))

    @property
    def length(self) -> int:
        return len(self.modules) - 2

    @property
    def is_morphism(self) -> bool:
        return self.length == 0

    def obj(self, k: int) -> UModule:
        if not -1 <= k <= self.length:
            raise IndexError("degree %d outside -1..%d" % (k, self.length))
        return self.modules[k + 1]

    def d(self, k: int) -> Matrix:
        """d_k: deg k -> deg k-1, zero outside 0..p."""
        if self.is_morphism:
            raise ExtensionError("a morphism has no differential")
        if 0 <= k <= self.length:
            return self.maps[k]
        rows = self.obj(k - 1).dim if -1 <= k - 1 <= self.length else 0
        cols = self.obj(k).dim if -1 <= k <= self.length else 0
        return Matrix.zero(rows, cols)

    @property
    def x(self) -> UModule:
        return self.modules[0]

    @property
    def z(self) -> UModule:
        return self.modules[-1]

    @property
    def i(self) -> Matrix:
        return self.maps[-1]

    @property
    def pr(self) -> Matrix:
        return self.maps[0]

    def dims(self) -> tuple:
        return tuple(m.dim for m in self.modules)


def morphism(src: UModule, tgt: UModule, f: Matrix, name: str = "") -> Extension:
    return Extension((src, tgt), (f,), name)


def check_extension(E: Extension) -> Report:
    rep = Report("extension " + E.name)
    rep.check("equivariance", True)
    if E.is_morphism:
        w = is_module_map(E.maps[0], E.x, E.z)
        rep.check("equivariance", w is None, w)
        return rep
    p = E.length
    for k in range(p + 1):
        w = is_module_map(E.d(k), E.obj(k), E.obj(k - 1))
        if w is not None:
            rep.fail("equivariance", {"degree": k, "witness": w})
    rep.check("complex", True)
    for k in range(p):
        w = (E.d(k) @ E.d(k + 1)).nonzero_witness()
        if w is not None:
            rep.fail("complex", {"degree": k, "entry": w})
    ranks = [rank(E.d(k)) for k in range(p + 1)] + [0]
    homology = [E.x.dim - ranks[0]] + [E.obj(k).dim - ranks[k] - ranks[k + 1] for k in range(p + 1)]
    bad = [k - 1 for k, h in enumerate(homology) if h]
    rep.check("exactness", not bad, {"degrees": bad, "homology": homology} if bad else None)
    return rep


def require_exact(E: Extension) -> None:
    rep = check_extension(E)
    if not rep.passed:
        raise ExtensionError("%s is not an exact extension: %s" % (E.name, rep.failed_names()), rep.failures[0][1])


def tensor_right(ctx: OperadContext, E: Extension, M: UModule) -> Extension:
    """E (x) M, degreewise, with differentials d (x) id."""
    mods = tuple(ctx.tensor(m, M) for m in E.modules)
    idm = _identity(M)
    if E.is_morphism:
        return morphism(mods[0], mods[1], map_tensor(mods[0], mods[1], E.maps[0], idm), "%s(x)%s" % (E.name, M.name))
    maps = tuple(map_tensor(mods[k + 1], mods[k], E.maps[k], idm) for k in range(len(E.maps)))
    return Extension(mods, maps, "(%s)(x)%s" % (E.name, M.name))


def tensor_left(ctx: OperadContext, M: UModule, E: Extension) -> Extension:
    """M (x) E, degreewise, with differentials id (x) d (no sign)."""
    mods = tuple(ctx.tensor(M, m) for m in E.modules)
    idm = _identity(M)
    if E.is_morphism:
        return morphism(mods[0], mods[1], map_tensor(mods[0], mods[1], idm, E.maps[0]), "%s(x)%s" % (M.name, E.name))
    maps = tuple(map_tensor(mods[k + 1], mods[k], idm, E.maps[k]) for k in range(len(E.maps)))
    return Extension(mods, maps, "%s(x)(%s)" % (M.name, E.name))


def splice(e: Extension, f: Extension, name: str = "") -> Extension:
    """e # f, where f ends in the object e starts from.

    Both morphisms: composition.  A morphism f: X' -> X below an extension e:
    pullback E_0 x_X X'.  A morphism g: Z -> Z' above f: pushout
    (Z' + F_{q-1}) / {(g y, i_F y)} with the new i given by z -> [(-z, 0)].
    """
    if f.z is not e.x:
        raise ExtensionError("object mismatch: %s ends in %s but %s starts at %s"
                             % (f.name, f.z.name, e.name, e.x.name))
    p, q = e.length, f.length
    name = name or "%s#%s" % (e.name, f.name)
    if p == 0 and q == 0:
        return morphism(f.x, e.z, e.maps[0] @ f.maps[0], name)
    if q == 0:
        # pullback of p_E along the morphism
        S = direct_sum([e.obj(0), f.x])
        diff = hstack([e.d(0), -f.maps[0]])
        P = submodule(S, kernel(diff, S.field), "(%s)x(%s)" % (e.obj(0).name, f.x.name))
        d0 = S.proj(1) @ P.incl
        d1 = P.coords_matrix(S.inj(0) @ e.d(1))
        out = Extension((f.x, P) + e.modules[2:], (d0, d1) + e.maps[2:], name, dict(e.meta))
        out.meta["pullback"] = (0, P, S)
        return out
    if p == 0:
        g = e.maps[0]
        S = direct_sum([e.z, f.obj(q - 1)])
        a, b = S.inj(0) @ g, S.inj(1) @ f.i
        rels = [vadd(a.columns[y], b.columns[y]) for y in range(f.z.dim)]
        Q = quotient_module(S, rels, "(%s)u(%s)" % (e.z.name, f.obj(q - 1).name))
        down = f.d(q - 1) @ S.proj(1) @ Q.lift
        up = -(Q.proj @ S.inj(0))
        out = Extension(f.modules[:-2] + (Q, e.z), f.maps[:q - 1] + (down, up), name, dict(f.meta))
        out.meta["pushout"] = (q - 1, Q, S)
        return out
    maps = f.maps[:-1] + (f.i @ e.pr,) + e.maps[1:]
    return Extension(f.modules[:-1] + e.modules[1:], maps, name, dict(f.meta))


# the truncated totalisation ---------------------------------------------------------------

@dataclass(eq=False)
class TruncatedTotal(Extension):
    left: Optional[Extension] = None
    right: Optional[Extension] = None
    parts: dict = field(default_factory=dict)  # degree -> tuple of (i, j)

    def _index(self, k: int, ij) -> int:
        return self.parts[k].index(tuple(ij))

    def inj(self, k: int, ij) -> Matrix:
        M = self.obj(k)
        return M.inj(self._index(k, ij)) if isinstance(M, DirectSum) else _identity(M)

    def proj(self, k: int, ij) -> Matrix:
        M = self.obj(k)
        return M.proj(self._index(k, ij)) if isinstance(M, DirectSum) else _identity(M)

    def piece(self, k: int, ij) -> UModule:
        M = self.obj(k)
        return M.parts[self._index(k, ij)] if isinstance(M, DirectSum) else M


def truncated_total(ctx: OperadContext, E: Extension, F: Extension) -> TruncatedTotal:
    """Totalisation of E (x) F truncated to an extension of X (x) X by Z (x) Z."""
    p, q = E.length, F.length
    if p < 1 or q < 1:
        raise ExtensionError("the totalisation needs p, q >= 1")
    parts = {}
    mods = [ctx.tensor(E.x, F.x)]
    for k in range(p + q + 1):
        parts[k] = tuple((i, k - i) for i in range(max(0, k - q), min(p, k) + 1))
        pieces = [ctx.tensor(E.obj(i), F.obj(j)) for i, j in parts[k]]
        mods.append(pieces[0] if len(pieces) == 1 else direct_sum(pieces, "Tot_%d" % k))
    # placeholder differentials; the real ones need the summand bookkeeping of M itself
    blank = tuple(Matrix.zero(mods[k].dim, mods[k + 1].dim) for k in range(p + q + 1))
    M = TruncatedTotal(tuple(mods), blank, "Tot(%s,%s)" % (E.name, F.name), {}, E, F, parts)
    maps = [map_tensor(M.piece(0, (0, 0)), mods[0], E.d(0), F.d(0))]
    for k in range(1, p + q + 1):
        acc = Matrix.zero(mods[k].dim, mods[k + 1].dim)
        for i, j in parts[k]:
            src = M.piece(k, (i, j))
            if i >= 1:
                tgt = M.piece(k - 1, (i - 1, j))
                piece = map_tensor(src, tgt, E.d(i), _identity(F.obj(j)))
                acc = acc + M.inj(k - 1, (i - 1, j)) @ piece @ M.proj(k, (i, j))
            if j >= 1:
                tgt = M.piece(k - 1, (i, j - 1))
                piece = map_tensor(src, tgt, _identity(E.obj(i)), F.d(j))
                term = M.inj(k - 1, (i, j - 1)) @ piece @ M.proj(k, (i, j))
                acc = acc + (term if sign(i) > 0 else -term)
        maps.append(acc)
    M.maps = tuple(maps)
    return M


# maps between extensions ----------------------------------------------------------------

@dataclass(eq=False)
class ExtMap:
    """Degreewise module maps source_k -> target_k, k = -1..p."""

    source: Extension
    target: Extension
    comps: dict
    name: str = ""

    def comp(self, k: int) -> Matrix:
        if k in self.comps:
            return self.comps[k]
        return Matrix.zero(self.target.obj(k).dim, self.source.obj(k).dim)

    def residuals(self) -> dict:
        """Nonzero entries of d g_k - g_{k-1} d per square, keyed by the upper degree k."""
        out = {}
        for k in range(self.source.length + 1):
            diff = self.target.d(k) @ self.comp(k) - self.comp(k - 1) @ self.source.d(k)
            w = diff.nonzero_witness()
            if w is not None:
                out[k] = w
        return out


def _cached(ctx: OperadContext, key: tuple, objs: tuple, build):
    store = ctx.__dict__.setdefault("_ext_cache", {})
    hit = store.get(key)
    if hit is not None and all(a is b for a, b in zip(hit[0], objs)):
        return hit[1]
    val = build()
    store[key] = (objs, val)
    return val


def truncated_total_cached(ctx, E, F) -> TruncatedTotal:
    return _cached(ctx, ("tot", id(E), id(F)), (E, F), lambda: truncated_total(ctx, E, F))


def lambda_target(ctx, E, F) -> Extension:
    """(E (x) Z) # (X (x) F)."""
    return _cached(ctx, ("H", id(E), id(F)), (E, F),
                   lambda: splice(tensor_right(ctx, E, F.z), tensor_left(ctx, E.x, F)))


def rho_target(ctx, E, F) -> Extension:
    """(Z (x) F) # (E (x) X)."""
    return _cached(ctx, ("R", id(E), id(F)), (E, F),
                   lambda: splice(tensor_left(ctx, E.z, F), tensor_right(ctx, E, F.x)))


def lambda_edge(ctx: OperadContext, E: Extension, F: Extension) -> ExtMap:
    M, H = truncated_total_cached(ctx, E, F), lambda_target(ctx, E, F)
    p, q = E.length, F.length
    comps = {-1: _identity(M.x)}
    for k in range(q):
        src = M.piece(k, (0, k))
        comps[k] = map_tensor(src, H.obj(k), E.d(0), _identity(F.obj(k))) @ M.proj(k, (0, k))
    for k in range(q, p + q + 1):
        comps[k] = M.proj(k, (k - q, q))
    return ExtMap(M, H, comps, "lambda")


def rho_edge(ctx: OperadContext, E: Extension, F: Extension) -> ExtMap:
    M, R = truncated_total_cached(ctx, E, F), rho_target(ctx, E, F)
    p, q = E.length, F.length
    comps = {-1: _identity(M.x)}
    for k in range(p):
        src = M.piece(k, (k, 0))
        comps[k] = map_tensor(src, R.obj(k), _identity(E.obj(k)), F.d(0)) @ M.proj(k, (k, 0))
    for k in range(p, p + q + 1):
        pr = M.proj(k, (p, k - p))
        comps[k] = pr if sign(p * k - p) > 0 else -pr
    return ExtMap(M, R, comps, "rho")


def sigma_tau_map(ctx: OperadContext, E: Extension, F: Extension) -> ExtMap:
    """(Z (x) E) # (F (x) X) -> (E (x) Z) # (X (x) F) built from tau_{F_k,X} and sigma_{Z,E_i}."""
    S, H = rho_target(ctx, F, E), lambda_target(ctx, E, F)
    p, q = E.length, F.length
    comps = {-1: ctx.tau_xx}
    for k in range(q):
        comps[k] = ctx.tau(F.obj(k))
    for k in range(q, p + q + 1):
        comps[k] = ctx.sigma(E.obj(k - q))
    return ExtMap(S, H, comps, "sigma|tau")


# graded maps out of a bar resolution -------------------------------------------------------

@dataclass(eq=False)
class GradedMap:
    bar: BarResolution
    target: Extension
    shift: int
    comps: dict

    @property
    def degrees(self) -> range:
        return range(-1, self.target.length - self.shift + 1)

    def comp(self, k: int) -> Cochain:
        c = self.comps.get(k)
        if c is None:
            return zero_cochain(self.bar, k, self.target.obj(k + self.shift))
        return c

    def _zip(self, other: "GradedMap", op) -> "GradedMap":
        if other.shift != self.shift or other.target.length != self.target.length:
            raise ExtensionError("graded maps of different shapes")
        return GradedMap(self.bar, self.target, self.shift, {k: op(self.comp(k), other.comp(k)) for k in self.degrees})

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return GradedMap(self.bar, self.target, self.shift, {k: -self.comp(k) for k in self.degrees})

    def post(self, g: ExtMap) -> "GradedMap":
        s = self.shift
        return GradedMap(self.bar, g.target, s,
                         {k: self.comp(k).post(g.comp(k + s), g.target.obj(k + s)) for k in self.degrees})

    def pre(self, src: BarResolution, f: Matrix) -> "GradedMap":
        return GradedMap(src, self.target, self.shift, {k: self.comp(k).pre(src, f) for k in self.degrees})

    def differences(self, other: "GradedMap") -> dict:
        """Degree -> first differing entry."""
        out = {}
        for k in self.degrees:
            diff = self.comp(k).values - other.comp(k).values
            w = diff.nonzero_witness()
            if w is not None:
                out[k] = w
        return out

    def __eq__(self, other):
        return isinstance(other, GradedMap) and not self.differences(other)

    __hash__ = None


def chain_residual(phi: GradedMap) -> dict:
    """Degree k -> witness where d phi_k != phi_{k-1} d, for k = 0..p+1."""
    if phi.shift != 0:
        raise ExtensionError("chain maps have shift 0")
    T = phi.target
    out = {}
    r = T.length
    for k in range(r + 2):
        rhs = delta(phi.comp(k - 1))
        diff = rhs if k > r else phi.comp(k).post(T.d(k), T.obj(k - 1)) - rhs
        w = diff.witness()
        if w is not None:
            out[k] = w
    return out


def commutator_d(s: GradedMap) -> GradedMap:
    """[d, s]_k = d s_k + s_{k-1} d for a homotopy s of shift 1."""
    if s.shift != 1:
        raise ExtensionError("homotopies have shift 1")
    T = s.target
    r = T.length
    comps = {}
    for k in range(-1, r + 1):
        acc = delta(s.comp(k - 1)) if k >= 0 else None
        if k <= r - 1:
            term = s.comp(k).post(T.d(k + 1), T.obj(k))
            acc = term if acc is None else acc + term
        comps[k] = acc
    return GradedMap(s.bar, T, 0, comps)


def lift_chain_map(bar: BarResolution, E: Extension, twist: Optional[Matrix] = None) -> GradedMap:
    """A twist-twisted chain map Bar(U, X) -> E, solved degree by degree."""
    if E.x.dim != bar.W.dim:
        raise ExtensionError("extension does not start at the resolved module")
    f = twist if twist is not None else _identity(E.x)
    comps = {-1: Cochain(bar, -1, E.x, f)}
    if E.is_morphism:
        comps[0] = delta(comps[-1]).post(E.maps[0], E.z)
        return GradedMap(bar, E, 0, comps)
    for k in range(E.length + 1):
        target = delta(comps[k - 1])
        basis = hom_basis(bar, k, E.obj(k))
        dk = E.d(k)
        cols = [h.post(dk, E.obj(k - 1)).flat() for h in basis]
        m = Matrix(E.obj(k - 1).dim * bar.norm_dim(k), len(cols), tuple(cols))
        x = solve(m, target.flat())
        if x is None:
            raise ExtensionError("no lift in degree %d; the extension is not exact" % k, target.witness())
        acc = zero_cochain(bar, k, E.obj(k))
        for j, y in x.items():
            acc = acc + basis[j].scale(y)
        comps[k] = acc
    return GradedMap(bar, E, 0, comps)


# the extension factory --------------------------------------------------------------------

def truncated_bar(bar: BarResolution, p: int) -> Extension:
    """0 -> ker d_{p-1} -> Bar_{p-1} -> ... -> Bar_0 -> W -> 0."""
    if p < 1:
        raise ValueError("length must be at least 1")
    mods = [bar.W] + [bar_module(bar, j) for j in range(p)]
    top = mods[-1]
    K = submodule(top, kernel(bar.d(p - 1), bar.field), "ker d_%d" % (p - 1))
    maps = [bar.d(j) for j in range(p)] + [K.incl]
    return Extension(tuple(mods) + (K,), tuple(maps), "Bar<%d" % p)


def factory_extension(cocycle: Cochain, name: str = "") -> Extension:
    """The length-p extension of W by M classified by a p-cocycle Bar(U, W) -> M: the truncated
    bar resolution pushed out along the map ker d_{p-1} -> M that the cocycle induces."""
    p = cocycle.degree
    if p < 1:
        raise ValueError("the factory builds extensions of length >= 1")
    if not delta(cocycle).is_zero():
        raise CochainError("not a cocycle", delta(cocycle).witness())
    bar = cocycle.bar
    T = truncated_bar(bar, p)
    K = T.z
    onto = K.coords_matrix(bar.d(p))  # Bar_p -> K, surjective by exactness
    F = cocycle.full()
    # g with g o onto = F, solved row by row
    gt_rows = []
    for row in F.sparse_rows():
        x = solve(onto.transpose(), row)
        if x is None:
            raise ExtensionError("cocycle does not factor through the boundaries")
        gt_rows.append(x)
    g = Matrix.from_sparse_rows(gt_rows, K.dim)
    E = splice(morphism(K, cocycle.target, g), T, name or "E[%d]" % p)
    require_exact(E)
    return E


def random_cocycle(bar: BarResolution, degree: int, target: UModule, rng: random.Random) -> Cochain:
    basis = solve_cocycles(bar, degree, target)
    acc = zero_cochain(bar, degree, target)
    for b in basis:
        acc = acc + b.scale(rng.randint(-3, 3))
    return acc


# Phi and Psi ------------------------------------------------------------------------------

def transfer_target(ctx: OperadContext, H: Extension) -> Extension:
    """mu # H # Delta_X."""
    def build():
        low = splice(H, morphism(ctx.X, ctx.XX, ctx.delta_x, "Delta"))
        return splice(morphism(H.z, ctx.Z, ctx.mu_z, "mu"), low, "mu#%s#Delta" % H.name)
    return _cached(ctx, ("G", id(H)), (H,), build)


class _Gluing:
    def __init__(self, ctx: OperadContext, H: Extension, G: Extension):
        self.ctx, self.H, self.G = ctx, H, G
        self.r = H.length
        self.pull = G.meta.get("pullback")
        self.push = G.meta.get("pushout")

    def into_pullback(self, hv: Matrix, xv: Optional[Matrix]) -> Matrix:
        _, P, S = self.pull
        amb = S.inj(0) @ hv
        if xv is not None:
            amb = amb + S.inj(1) @ xv
        return P.coords_matrix(amb)

    def into_pushout(self, inner: Matrix) -> Matrix:
        _, Q, S = self.push
        return Q.proj @ S.inj(1) @ inner


def _delta_pull(ctx, c: Cochain) -> Cochain:
    return c.pre(ctx.bar, ctx.delta_x)


def phi_transfer(ctx: OperadContext, xi: GradedMap, constant: bool = False) -> GradedMap:
    """Phi(xi): graded maps Bar(X (x) X) -> H into graded maps Bar(X) -> mu#H#Delta_X.

    With ``constant`` the pieces (0, ..., (L, 0), id_X) are added, which turns
    a Delta-compatible twisted cocycle into a cocycle representative.
    """
    H = xi.target
    if xi.shift != 0 or xi.bar is not ctx.bar2:
        raise ExtensionError("Phi takes shift-0 maps out of Bar(U, X (x) X)")
    G = transfer_target(ctx, H)
    gl = _Gluing(ctx, H, G)
    r = H.length
    bar = ctx.bar
    comps = {-1: Cochain(bar, -1, ctx.X, _identity(ctx.X) if constant else Matrix.zero(ctx.X.dim, ctx.X.dim))}
    top = _delta_pull(ctx, xi.comp(r)).post(ctx.mu_z, ctx.Z)
    if r == 0:
        comps[0] = top
        return GradedMap(bar, G, 0, comps)
    v0 = _delta_pull(ctx, xi.comp(0)).values
    lv = _identity(ctx.X) if constant else None
    if r == 1:
        comps[0] = Cochain(bar, 0, G.obj(0), gl.into_pushout(gl.into_pullback(v0, lv)))
    else:
        comps[0] = Cochain(bar, 0, G.obj(0), gl.into_pullback(v0, lv))
        for k in range(1, r - 1):
            comps[k] = _delta_pull(ctx, xi.comp(k))
        comps[r - 1] = Cochain(bar, r - 1, G.obj(r - 1), gl.into_pushout(_delta_pull(ctx, xi.comp(r - 1)).values))
    comps[r] = top
    return GradedMap(bar, G, 0, comps)


def psi_transfer(ctx: OperadContext, nu: GradedMap) -> GradedMap:
    """Psi(nu) for homotopies nu: Bar_k(X (x) X) -> H_{k+1}."""
    H = nu.target
    if nu.shift != 1 or nu.bar is not ctx.bar2:
        raise ExtensionError("Psi takes shift-1 maps out of Bar(U, X (x) X)")
    r = H.length
    if r < 1:
        raise ExtensionError("Psi needs a target of length >= 1")
    G = transfer_target(ctx, H)
    gl = _Gluing(ctx, H, G)
    bar = ctx.bar
    comps = {}
    low = _delta_pull(ctx, nu.comp(-1)).values
    if r == 1:
        comps[-1] = Cochain(bar, -1, G.obj(0), gl.into_pushout(gl.into_pullback(low, None)))
    else:
        comps[-1] = Cochain(bar, -1, G.obj(0), gl.into_pullback(low, None))
        for k in range(0, r - 2):
            comps[k] = _delta_pull(ctx, nu.comp(k))
        comps[r - 2] = Cochain(bar, r - 2, G.obj(r - 1), gl.into_pushout(_delta_pull(ctx, nu.comp(r - 2)).values))
    comps[r - 1] = _delta_pull(ctx, nu.comp(r - 1)).post(ctx.mu_z, ctx.Z)
    return GradedMap(bar, G, 1, comps)


# the epsilon / xi / s / eta quadruple ---------------------------------------------------------

def graded_external_cup(ctx: OperadContext, phi: GradedMap, psi: GradedMap) -> GradedMap:
    """phi cup psi into Tot(E, F); tau_{X,X} in degree -1."""
    E, F = phi.target, psi.target
    M = truncated_total_cached(ctx, E, F)
    p, q = E.length, F.length
    comps = {-1: Cochain(ctx.bar2, -1, M.x, ctx.tau_xx)}
    for k in range(p + q + 1):
        acc = zero_cochain(ctx.bar2, k, M.obj(k))
        for i, j in M.parts[k]:
            c = external_cup(ctx, phi.comp(i), psi.comp(j))
            acc = acc + c.post(M.inj(k, (i, j)), M.obj(k))
        comps[k] = acc
    return GradedMap(ctx.bar2, M, 0, comps)


def _check_pair(ctx: OperadContext, phi: GradedMap, psi: GradedMap):
    E, F = phi.target, psi.target
    for T in (E, F):
        if T.x is not ctx.X or T.z is not ctx.Z:
            raise ExtensionError("extensions must run from X to Z")
        if T.length < 1:
            raise ExtensionError("extensions must have length >= 1")
    return E, F, E.length, F.length


def epsilon_correction(ctx: OperadContext, phi: GradedMap, psi: GradedMap) -> GradedMap:
    """The correction term into Tot(F, E) making psi cup phi + eps comparable with phi cup psi."""
    E, F, p, q = _check_pair(ctx, phi, psi)
    M = truncated_total_cached(ctx, F, E)
    php = phi.comp(p)
    comps = {}
    for k in range(p, p + q + 1):
        acc = zero_cochain(ctx.bar2, k, M.obj(k))
        b = braided_cup_commutator(ctx, psi.comp(k - p), php)
        acc = acc - b.post(M.inj(k, (k - p, p)), M.obj(k))
        if k < p + q:
            j = k - p + 1
            prod = external_product(ctx, psi.comp(j), php)
            piece = map_tensor(prod.target, M.piece(k, (j, p - 1)), _identity(F.obj(j)), E.i)
            term = prod.post(M.inj(k, (j, p - 1)) @ piece, M.obj(k))
            acc = acc + (term if sign(p * k + k + 1) > 0 else -term)
        comps[k] = acc
    return GradedMap(ctx.bar2, M, 0, comps)


def xi_and_s(ctx: OperadContext, phi: GradedMap, psi: GradedMap):
    """(xi, s) into (E (x) Z) # (X (x) F) with xi = [d, s].

    Signs: s_k = -(-1)^{q(k+1)} phi_{k-q+1} o psi_q in the middle band,
    s_{p+q-1} = (-1)^{p+1} [psi_q, phi_p], and the i_E term of xi_{p+q-1}
    carries (-1)^{p+1}.  These are forced by the homotopy formula for the
    braided cup commutator; for odd q they agree with (-1)^{p+q}.
    """
    E, F, p, q = _check_pair(ctx, phi, psi)
    H = lambda_target(ctx, E, F)
    psq = psi.comp(q)
    xi, s = {}, {}
    for k in range(q, p + q - 1):
        xi[k] = braided_cup_commutator(ctx, phi.comp(k - q), psq)
        c = external_product(ctx, phi.comp(k - q + 1), psq)
        s[k] = -c if sign(q * (k + 1)) > 0 else c
    k = p + q - 1
    prod = external_product(ctx, psq, phi.comp(p))
    lift = map_tensor(prod.target, H.obj(k), E.i, _identity(ctx.Z))
    term = prod.post(lift, H.obj(k))
    xi[k] = braided_cup_commutator(ctx, phi.comp(p - 1), psq) + (term if sign(p + 1) > 0 else -term)
    com = external_commutator(ctx, psq, phi.comp(p))
    s[k] = com if sign(p + 1) > 0 else -com
    return GradedMap(ctx.bar2, H, 0, xi), GradedMap(ctx.bar2, H, 1, s)


def eta(ctx: OperadContext, phi: GradedMap, psi: GradedMap, eps: Optional[GradedMap] = None) -> GradedMap:
    """lambda((phi cup psi) o tau) - (sigma|tau) rho(psi cup phi + eps)."""
    E, F, p, q = _check_pair(ctx, phi, psi)
    if eps is None:
        eps = epsilon_correction(ctx, phi, psi)
    a = graded_external_cup(ctx, phi, psi).pre(ctx.bar2, ctx.tau_xx).post(lambda_edge(ctx, E, F))
    b = (graded_external_cup(ctx, psi, phi) + eps).post(rho_edge(ctx, F, E)).post(sigma_tau_map(ctx, E, F))
    return a - b


def eta_closed_form(ctx: OperadContext, phi: GradedMap, psi: GradedMap) -> GradedMap:
    """Piecewise formula for eta; the sigma (Z (x) i_E) term in degree p+q-1 carries (-1)^{p+1}."""
    E, F, p, q = _check_pair(ctx, phi, psi)
    H = lambda_target(ctx, E, F)
    psq, php = psi.comp(q), phi.comp(p)
    comps = {}
    for k in range(q, p + q - 1):
        comps[k] = braided_cup_commutator(ctx, phi.comp(k - q), psq)
    k = p + q - 1
    prod = external_product(ctx, psq, php)
    zi = ctx.tensor(ctx.Z, E.obj(p - 1))
    twist = ctx.sigma(E.obj(p - 1)) @ map_tensor(prod.target, zi, _identity(ctx.Z), E.i)
    term = prod.post(twist, H.obj(k))
    comps[k] = braided_cup_commutator(ctx, phi.comp(p - 1), psq) + (term if sign(p + 1) > 0 else -term)
    top = braided_cup_commutator(ctx, psq, php).post(ctx.sigma(ctx.Z), H.z)
    comps[p + q] = braided_cup_commutator(ctx, php, psq) + (top if sign(p * q) > 0 else -top)
    return GradedMap(ctx.bar2, H, 0, comps)


def cup_representative(ctx: OperadContext, phi: GradedMap, psi: GradedMap) -> GradedMap:
    """Cocycle representative of the Yoneda-type cup of the two extensions."""
    E, F, p, q = _check_pair(ctx, phi, psi)
    xi = graded_external_cup(ctx, phi, psi).pre(ctx.bar2, ctx.tau_xx).post(lambda_edge(ctx, E, F))
    return phi_transfer(ctx, xi, constant=True)


def bracket_from_homotopy(ctx: OperadContext, phi: GradedMap, psi: GradedMap) -> Cochain:
    """(-1)^{pq+q+1} Psi_{p+q-1}(s(phi, psi)), equal to the operad bracket of the top components."""
    p, q = phi.target.length, psi.target.length
    _, s = xi_and_s(ctx, phi, psi)
    c = psi_transfer(ctx, s).comp(p + q - 1)
    return c if sign(p * q + q + 1) > 0 else -c


# the full loop --------------------------------------------------------------------------------

def verify_extension_loop(ctx: OperadContext, p: int, q: int, seed: int = 0) -> Report:
    """Build factory extensions of lengths p and q from random cocycles and run every identity."""
    rng = random.Random(seed)
    rep = Report("extension loop p=%d q=%d" % (p, q))
    f, g = random_cocycle(ctx.bar, p, ctx.Z, rng), random_cocycle(ctx.bar, q, ctx.Z, rng)
    E = factory_extension(f, "E")
    F = factory_extension(g, "F")
    phi, psi = lift_chain_map(ctx.bar, E), lift_chain_map(ctx.bar, F)

    def residual(name, res):
        rep.check(name, not res, res or None)

    residual("lift phi", chain_residual(phi))
    residual("lift psi", chain_residual(psi))
    rep.check("lift class phi", solve_coboundary(phi.comp(p) - f) is not None)
    rep.check("lift class psi", solve_coboundary(psi.comp(q) - g) is not None)
    for name, T in (("Tot(E,F)", truncated_total_cached(ctx, E, F)), ("Tot(F,E)", truncated_total_cached(ctx, F, E)),
                    ("H", lambda_target(ctx, E, F)), ("G", transfer_target(ctx, lambda_target(ctx, E, F)))):
        r = check_extension(T)
        rep.check("exact " + name, r.passed, r.failures[:1] or None)
    residual("lambda chain map", lambda_edge(ctx, E, F).residuals())
    residual("rho chain map", rho_edge(ctx, F, E).residuals())
    residual("sigma|tau chain map", sigma_tau_map(ctx, E, F).residuals())
    residual("external cup twisted cocycle", chain_residual(graded_external_cup(ctx, phi, psi)))
    eps = epsilon_correction(ctx, phi, psi)
    residual("epsilon chain map", chain_residual(eps))
    xi, s = xi_and_s(ctx, phi, psi)
    residual("xi = [d,s]", xi.differences(commutator_d(s)))
    et = eta(ctx, phi, psi, eps)
    residual("eta closed form", et.differences(eta_closed_form(ctx, phi, psi)))
    phi_eta = phi_transfer(ctx, et)
    residual("Phi(eta) = Phi(xi)", phi_eta.differences(phi_transfer(ctx, xi)))
    residual("Phi(eta) = [d,Psi(s)]", phi_eta.differences(commutator_d(psi_transfer(ctx, s))))
    rep_cup = cup_representative(ctx, phi, psi)
    residual("cup representative chain map", chain_residual(rep_cup))
    top = rep_cup.comp(p + q) - cup(ctx, phi.comp(p), psi.comp(q))
    rep.check("cup representative top", top.is_zero(), top.witness())
    br = bracket_from_homotopy(ctx, phi, psi) - bracket(ctx, phi.comp(p), psi.comp(q))
    rep.check("bracket from homotopy", br.is_zero(), br.witness())
    return rep


def negative_control(p: int = 1, q: int = 1, seed: int = 0, config=None) -> Report:
    """Run the sigma|tau comparison on a pair that is not commuting.

    Uses U = k[C_2], Z graded by the group and X the sign representation
    (see ``catalog.graded_group_coefficients``).  The pair check must fail with
    a witness, and of all squares of the sigma|tau map only the middle one
    (degree q, where sigma_{Z,X} meets tau_{Z,X}) may fail.
    """
    from .catalog import graded_group_coefficients
    from .config import WIDE
    from .yd import CommutingPair, CommutingPairError, check_commuting_pair

    rep = Report("negative control p=%d q=%d" % (p, q))
    x, z = graded_group_coefficients(True)
    try:
        check_commuting_pair(x, z)
        rep.fail("pair check fails", "the pair was accepted")
    except CommutingPairError as exc:
        rep.check("pair check fails", exc.witness is not None)
        rep.notes.append(("pair witness", exc.witness))
    ctx = OperadContext(CommutingPair(x, z), config or WIDE)
    rng = random.Random(seed)
    E = factory_extension(random_cocycle(ctx.bar, p, ctx.Z, rng), "E")
    F = factory_extension(random_cocycle(ctx.bar, q, ctx.Z, rng), "F")
    res = sigma_tau_map(ctx, E, F).residuals()
    rep.notes.append(("sigma|tau failing squares", sorted(res)))
    rep.check("middle square fails", q in res, None)
    rep.check("only the middle square fails", set(res) <= {q}, {k: w for k, w in res.items() if k != q} or None)
    rep.check("lambda still a chain map", not lambda_edge(ctx, E, F).residuals())
    rep.check("rho still a chain map", not rho_edge(ctx, F, E).residuals())
    return rep
