"""The bar resolution Bar_n(U, W) = U (x)_B ... (x)_B U (x)_B W and its cochains.

Here B = t(A) acts on the right of U by multiplication and on the left of the
next factor, so u t(a) (x) v = u (x) t(a) v.  Levels are built recursively:

    N_0 = W,    N_n = U (x)_B N_{n-1},    Bar_n = N_{n+1}.

Each N_n is a quotient of U (x)_k N_{n-1} with pivot-complement
representatives.  A U-linear map Bar_n -> M is determined by its values on
1 (x) N_n, so a cochain of degree n stores a B-linear matrix N_n -> M (its
normalized values) and recovers the full matrix on Bar_n from the action of M.
Degree -1 cochains are plain module maps W -> M.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .config import DEFAULT, EngineConfig, ResourceError
from .linalg import Matrix, Subspace, kernel, quotient_by, solve, vaxpy
from .yd import UModule


class CochainError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else "%s (witness %s)" % (message, witness))
        self.witness = witness


@dataclass(frozen=True, eq=False)
class _Level:
    dim: int
    proj: Optional[Matrix]  # ambient U (x)_k N_{n-1} -> N_n
    reps: tuple  # per basis vector: (u index, previous-level index)
    act: tuple  # Matrix per U basis element, acting on N_n


class BarResolution:
    """Bar_n(U, W) for a U-module W, built lazily level by level."""

    def __init__(self, module: UModule, config: EngineConfig = DEFAULT, name: str = ""):
        self.U = module.bialgebroid
        self.W = module
        self.config = config
        self.name = name or module.name
        self.field = self.U.field
        config.check_u_dim(self.U.dim)
        self._levels = [_Level(module.dim, None, tuple((None, i) for i in range(module.dim)), module.act)]
        self._d: dict = {}
        self._faces: dict = {}
        self._cache: dict = {}
        one = self.U.one()
        self._one = one

    # levels ---------------------------------------------------------------

    def level(self, n: int) -> _Level:
        if n < 0:
            raise ValueError("negative level %d" % n)
        while len(self._levels) <= n:
            self._levels.append(self._build(len(self._levels)))
        return self._levels[n]

    def _build(self, n: int) -> _Level:
        if n > self.config.max_degree + 1:
            raise ResourceError("bar degree %d exceeds the cap %d" % (n - 1, self.config.max_degree))
        U = self.U
        prev = self._levels[n - 1]
        pd = prev.dim
        ambient = U.dim * pd
        if ambient > self.config.max_ambient:
            raise ResourceError("ambient dimension %d at bar degree %d exceeds the cap %d"
                                % (ambient, n - 1, self.config.max_ambient))
        one = self.field.one
        t_prev = [self._t_matrix(prev, a) for a in range(U.base.dim)]
        rels = []
        for a in range(U.base.dim):
            rmul = U.t_right_mats[a]
            ta = t_prev[a]
            for u in range(U.dim):
                ut = rmul.columns[u]
                for r in range(pd):
                    rel: dict = {}
                    for w, x in ut.items():
                        vaxpy(rel, {w * pd + r: one}, x)
                    for s, x in ta.columns[r].items():
                        vaxpy(rel, {u * pd + s: one}, -x)
                    if rel:
                        rels.append(rel)
        q = quotient_by(ambient, rels, self.field)
        reps = tuple(divmod(c, pd) for c in q.basis_cols)
        proj = q.projection
        acts = []
        for k in range(U.dim):
            cols = []
            for v, r in reps:
                uv = U.mul({k: one}, {v: one})
                col: dict = {}
                for w, x in uv.items():
                    vaxpy(col, proj.columns[w * pd + r], x)
                cols.append(col)
            acts.append(Matrix(q.dim, q.dim, tuple(cols)))
        return _Level(q.dim, proj, reps, tuple(acts))

    def _t_matrix(self, lev: _Level, a: int) -> Matrix:
        return self._combine(lev, self.U.t(self.U.base.basis(a)))

    def _combine(self, lev: _Level, u: dict) -> Matrix:
        out = Matrix.zero(lev.dim, lev.dim)
        for k, x in u.items():
            out = out + lev.act[k].scale(x)
        return out

    def norm_dim(self, n: int) -> int:
        """dim N_n (n >= 0); the normalized domain of degree n cochains."""
        return self.level(n).dim

    def bar_dim(self, n: int) -> int:
        """dim Bar_n = dim N_{n+1}; Bar_{-1} = W."""
        return self.level(n + 1).dim

    def action(self, n: int, u: dict) -> Matrix:
        """Action of u on N_n."""
        return self._combine(self.level(n), u)

    def act_vec(self, n: int, u: dict, v: dict) -> dict:
        lev = self.level(n)
        out: dict = {}
        for k, x in u.items():
            vaxpy(out, lev.act[k].apply(v), x)
        return out

    def t_mats(self, n: int) -> tuple:
        key = ("t", n)
        if key not in self._cache:
            lev = self.level(n)
            self._cache[key] = tuple(self._t_matrix(lev, a) for a in range(self.U.base.dim))
        return self._cache[key]

    def prefix(self, n: int, u: dict, v: dict) -> dict:
        """[u (x) v] in N_n for v in N_{n-1}."""
        lev = self.level(n)
        pd = self.level(n - 1).dim
        out: dict = {}
        cols = lev.proj.columns
        for w, x in u.items():
            for r, y in v.items():
                vaxpy(out, cols[w * pd + r], x * y)
        return out

    def prefix_matrix(self, n: int, u: dict) -> Matrix:
        pd = self.level(n - 1).dim
        return Matrix(self.level(n).dim, pd, tuple(self.prefix(n, u, {r: self.field.one}) for r in range(pd)))

    def embed(self, n: int) -> Matrix:
        """N_n -> N_{n+1}, r -> 1 (x) r."""
        key = ("emb", n)
        if key not in self._cache:
            self._cache[key] = self.prefix_matrix(n + 1, self._one)
        return self._cache[key]

    def coords(self, us: Sequence[dict], w: dict) -> dict:
        """Coordinates in N_len(us) of the pure tensor us[0] (x) ... (x) us[-1] (x) w."""
        v = w
        for n, u in enumerate(reversed(us), start=1):
            v = self.prefix(n, u, v)
            if not v:
                return {}
        return v

    def rep(self, n: int, k: int) -> tuple:
        """Pure representative (tuple of U indices, W index) of basis vector k of N_n."""
        us = []
        for m in range(n, 0, -1):
            u, k = self.level(m).reps[k]
            us.append(u)
        return tuple(us), k

    # differentials ----------------------------------------------------------

    def d(self, m: int) -> Matrix:
        """Differential Bar_m -> Bar_{m-1} as a matrix N_{m+1} -> N_m; d(0) is the augmentation L."""
        if m not in self._d:
            lev = self.level(m + 1)
            one = self.field.one
            cols = []
            prev_d = self.d(m - 1) if m >= 1 else None
            for u, r in lev.reps:
                col = dict(self.level(m).act[u].columns[r])
                if prev_d is not None:
                    vaxpy(col, self.prefix(m, {u: one}, prev_d.columns[r]), -1)
                cols.append(col)
            self._d[m] = Matrix(self.level(m).dim, lev.dim, tuple(cols))
        return self._d[m]

    def augmentation(self) -> Matrix:
        return self.d(0)

    def face(self, m: int, i: int) -> Matrix:
        """Face d_i: Bar_m -> Bar_{m-1}, 0 <= i <= m; d_i multiplies slots i, i+1 and d_m acts on W."""
        if not 0 <= i <= m:
            raise ValueError("face index %d out of range for degree %d" % (i, m))
        key = (m, i)
        if key not in self._faces:
            lev = self.level(m + 1)
            one = self.field.one
            cols = []
            for u, r in lev.reps:
                if i == 0:
                    cols.append(self.level(m).act[u].columns[r])
                else:
                    inner = self.face(m - 1, i - 1).columns[r]
                    cols.append(self.prefix(m, {u: one}, inner))
            self._faces[key] = Matrix(self.level(m).dim, lev.dim, tuple(cols))
        return self._faces[key]

    def exactness_defect(self, n_max: int) -> list:
        """Homology dimensions of ... -> Bar_1 -> Bar_0 -> W -> 0 in degrees -1..n_max-1."""
        from .linalg import rank

        out = []
        ranks = {m: rank(self.d(m)) for m in range(n_max + 1)}
        # degree -1: W / im L
        out.append(self.W.dim - ranks[0])
        for m in range(n_max):
            out.append(self.bar_dim(m) - ranks[m] - ranks[m + 1])
        return out

    # morphisms between bar resolutions ------------------------------------------

    def induced(self, other: "BarResolution", f: Matrix, n: int) -> Matrix:
        """N_n(f): N_n(self) -> N_n(other) for a module map f: W -> W'."""
        key = ("ind", id(other), id(f), n)
        hit = self._cache.get(key)
        if hit is not None and hit[0] is f:
            return hit[1]
        if n == 0:
            m = f
        else:
            inner = self.induced(other, f, n - 1)
            one = self.field.one
            cols = [other.prefix(n, {u: one}, inner.columns[r]) for u, r in self.level(n).reps]
            m = Matrix(other.norm_dim(n), self.norm_dim(n), tuple(cols))
        self._cache[key] = (f, m)
        return m


# cochains ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Cochain:
    """A U-linear map Bar_n(U, W) -> M stored by its normalized values N_n -> M."""

    bar: BarResolution
    degree: int
    target: UModule
    values: Matrix

    def __post_init__(self):
        n = self.bar.W.dim if self.degree < 0 else self.bar.norm_dim(self.degree)
        if (self.values.rows, self.values.cols) != (self.target.dim, n):
            raise CochainError("value matrix has shape %dx%d, expected %dx%d"
                               % (self.values.rows, self.values.cols, self.target.dim, n))

    # vector-space structure
    def _like(self, values: Matrix) -> "Cochain":
        return Cochain(self.bar, self.degree, self.target, values)

    def _check(self, other: "Cochain"):
        if other.bar is not self.bar or other.degree != self.degree or other.target.dim != self.target.dim:
            raise CochainError("incompatible cochains: degree %d vs %d" % (self.degree, other.degree))

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return self._like(self.values + other.values)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return self._like(self.values - other.values)

    def __neg__(self) -> "Cochain":
        return self._like(-self.values)

    def scale(self, c) -> "Cochain":
        return self._like(self.values.scale(self.bar.field(c)))

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.bar is other.bar and self.degree == other.degree
                and self.target.dim == other.target.dim and self.values == other.values)

    __hash__ = None

    def is_zero(self) -> bool:
        return self.values.is_zero()

    def witness(self):
        """First nonzero normalized entry (target index, basis index, value) or None."""
        return self.values.nonzero_witness()

    # evaluation
    def at(self, us: Sequence[dict], w: dict) -> dict:
        """Value at (1, us..., w)."""
        if self.degree < 0:
            return self.values.apply(w)
        return self.values.apply(self.bar.coords(us, w))

    def evaluate(self, u0: dict, us: Sequence[dict], w: dict) -> dict:
        """Value at (u0, us..., w)."""
        if len(us) != self.degree:
            raise CochainError("expected %d middle arguments, got %d" % (self.degree, len(us)))
        return self.target.act_vec(u0, self.at(us, w))

    def full(self) -> Matrix:
        """Matrix Bar_n -> M on the quotient basis N_{n+1} (for degree -1: W -> M)."""
        if self.degree < 0:
            return self.values
        m = self.__dict__.get("_full")
        if m is None:
            lev = self.bar.level(self.degree + 1)
            cols = tuple(self.target.act[u].apply(self.values.columns[r]) for u, r in lev.reps)
            m = Matrix(self.target.dim, lev.dim, cols)
            object.__setattr__(self, "_full", m)
        return m

    def post(self, g: Matrix, target: UModule) -> "Cochain":
        """g o self for a module map g: M -> target."""
        return Cochain(self.bar, self.degree, target, g @ self.values)

    def pre(self, src: BarResolution, f: Matrix) -> "Cochain":
        """self o Bar(f) for a module map f: src.W -> self.bar.W."""
        if self.degree < 0:
            return Cochain(src, -1, self.target, self.values @ f)
        return Cochain(src, self.degree, self.target, self.values @ src.induced(self.bar, f, self.degree))

    def linearity_witness(self):
        """None if U-linear (B-linear on normalized values), else the offending (generator, basis index)."""
        bar = self.bar
        F = self.values
        if self.degree < 0:
            for k in range(bar.U.dim):
                diff = F @ bar.W.act[k] - self.target.act[k] @ F
                w = diff.nonzero_witness()
                if w is not None:
                    return (k, w[1])
            return None
        tm = bar.t_mats(self.degree)
        for a in range(bar.U.base.dim):
            diff = F @ tm[a] - self.target.t_mats[a] @ F
            w = diff.nonzero_witness()
            if w is not None:
                return (a, w[1])
        return None

    def flat(self) -> dict:
        """Coordinates in the space of normalized matrices, index col * dim M + row."""
        d = self.target.dim
        out = {}
        for j, col in enumerate(self.values.columns):
            for i, x in col.items():
                out[j * d + i] = x
        return out


def cochain_from_flat(bar: BarResolution, degree: int, target: UModule, v: dict) -> Cochain:
    d = target.dim
    n = bar.W.dim if degree < 0 else bar.norm_dim(degree)
    cols = [dict() for _ in range(n)]
    for k, x in v.items():
        if x:
            cols[k // d][k % d] = x
    return Cochain(bar, degree, target, Matrix(d, n, tuple(cols)))


def zero_cochain(bar: BarResolution, degree: int, target: UModule) -> Cochain:
    n = bar.W.dim if degree < 0 else bar.norm_dim(degree)
    return Cochain(bar, degree, target, Matrix.zero(target.dim, n))


def cochain_from_normalized(bar: BarResolution, degree: int, target: UModule, values) -> Cochain:
    """The unique U-linear extension of values on 1 (x) N_n.

    ``values`` is a Matrix N_n -> M or a callable ``(us, w) -> vector`` evaluated
    on the pure representatives of N_n.  Raises CochainError with a witness
    if the values are not compatible with the quotient relations.
    """
    if not isinstance(values, Matrix):
        fn = values
        n = bar.norm_dim(degree)
        cols = []
        one = bar.field.one
        for k in range(n):
            us, w = bar.rep(degree, k)
            cols.append(fn([{u: one} for u in us], {w: one}))
        values = Matrix(target.dim, n, tuple(cols))
    c = Cochain(bar, degree, target, values)
    w = c.linearity_witness()
    if w is not None:
        raise CochainError("values are not balanced over the target base", w)
    return c


def restrict(c: Cochain) -> Matrix:
    """Normalized values; inverse of cochain_from_normalized."""
    return c.values


# differential and cofaces --------------------------------------------------------

def delta(c: Cochain) -> Cochain:
    """(delta c) = c o d on Bar_{n+1}."""
    n = c.degree
    bar = c.bar
    m = c.full() @ bar.d(n + 1) @ bar.embed(n + 1)
    return Cochain(bar, n + 1, c.target, m)


def coface(c: Cochain, k: int) -> Cochain:
    """c o d_k on Bar_{n+1}."""
    n = c.degree
    bar = c.bar
    m = c.full() @ bar.face(n + 1, k) @ bar.embed(n + 1)
    return Cochain(bar, n + 1, c.target, m)


# linear algebra over cochain spaces --------------------------------------------------

def hom_basis(bar: BarResolution, degree: int, target: UModule) -> list:
    """Basis of the normalized cochain space (B-linear maps N_n -> M; U-linear for degree -1)."""
    key = ("hom", degree, id(target))
    hit = bar._cache.get(key)
    if hit is not None and hit[0] is target:
        return hit[1]
    d = target.dim
    if degree < 0:
        n = bar.W.dim
        src_mats = bar.W.act
        tgt_mats = target.act
    else:
        n = bar.norm_dim(degree)
        src_mats = bar.t_mats(degree)
        tgt_mats = target.t_mats
    rows = []
    # (F S - T F)[i, k] = sum_l F[i,l] S[l,k] - sum_j T[i,j] F[j,k]; unknown F[i,l] at l*d + i
    for S, T in zip(src_mats, tgt_mats):
        trows = T.sparse_rows()
        for k in range(n):
            col = S.columns[k]
            for i in range(d):
                row: dict = {}
                for l, x in col.items():
                    vaxpy(row, {l * d + i: 1}, x)
                for j, x in trows[i].items():
                    vaxpy(row, {k * d + j: 1}, -x)
                if row:
                    rows.append(row)
    sys = Matrix.from_sparse_rows(rows, n * d) if rows else Matrix.zero(0, n * d)
    ker = kernel(sys, bar.field)
    basis = [cochain_from_flat(bar, degree, target, v) for v in ker.basis]
    bar._cache[key] = (target, basis)
    return basis


def random_cochain(bar: BarResolution, degree: int, target: UModule, rng, spread: int = 3) -> Cochain:
    """Random integer combination of the normalized cochain basis.

    ``rng`` is a random.Random or an integer seed.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    acc: dict = {}
    for h in hom_basis(bar, degree, target):
        c = rng.randint(-spread, spread)
        if c:
            vaxpy(acc, h.flat(), bar.field(c))
    return cochain_from_flat(bar, degree, target, acc)


def _delta_images(bar: BarResolution, degree: int, target: UModule) -> list:
    key = ("dimg", degree, id(target))
    hit = bar._cache.get(key)
    if hit is not None and hit[0] is target:
        return hit[1]
    imgs = [delta(h).flat() for h in hom_basis(bar, degree, target)]
    bar._cache[key] = (target, imgs)
    return imgs


def solve_cocycles(bar: BarResolution, degree: int, target: UModule) -> list:
    """Basis of the cocycles of the given degree, as cochains."""
    basis = hom_basis(bar, degree, target)
    imgs = _delta_images(bar, degree, target)
    rows_dim = target.dim * bar.norm_dim(degree + 1)
    m = Matrix(rows_dim, len(basis), tuple(imgs))
    ker = kernel(m, bar.field)
    out = []
    for v in ker.basis:
        acc: dict = {}
        for j, x in v.items():
            vaxpy(acc, basis[j].flat(), x)
        out.append(cochain_from_flat(bar, degree, target, acc))
    return out


def coboundary_space(bar: BarResolution, degree: int, target: UModule) -> Subspace:
    """delta of all cochains of degree - 1, as a subspace of flattened degree-n cochains."""
    n = target.dim * bar.norm_dim(degree)
    if degree <= 0:
        return Subspace(n, ())
    return Subspace.span(n, _delta_images(bar, degree - 1, target))


def solve_coboundary(c: Cochain) -> Optional[Cochain]:
    """Some h with delta(h) = c, or None."""
    bar, n, target = c.bar, c.degree, c.target
    if n <= 0:
        # nothing below degree 0 in the cochain complex
        return zero_cochain(bar, n - 1, target) if c.is_zero() else None
    basis = hom_basis(bar, n - 1, target)
    imgs = _delta_images(bar, n - 1, target)
    m = Matrix(target.dim * bar.norm_dim(n), len(basis), tuple(imgs))
    x = solve(m, c.flat())
    if x is None:
        return None
    acc: dict = {}
    for j, y in x.items():
        vaxpy(acc, basis[j].flat(), y)
    return cochain_from_flat(bar, n - 1, target, acc)


def combine(terms: Sequence, like: Cochain) -> Cochain:
    """Sum of c * cochain over (c, cochain) pairs; ``like`` fixes the shape."""
    acc = zero_cochain(like.bar, like.degree, like.target).values
    for c, h in terms:
        acc = acc + h.values.scale(like.bar.field(c))
    return Cochain(like.bar, like.degree, like.target, acc)
