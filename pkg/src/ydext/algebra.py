"""Finite-dimensional algebras, bimodules and balanced tensor products."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .linalg import QQ, Field, Matrix, QuotientSpace, quotient_by, vaxpy, vclean, vscale


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """Unital associative algebra with basis e_0..e_{dim-1}.

    ``table[i][j]`` is the sparse vector e_i e_j.
    """

    field: Field
    dim: int
    table: tuple
    unit: dict
    name: str = ""

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, x in u.items():
            row = self.table[i]
            for j, y in v.items():
                vaxpy(out, row[j], x * y)
        return out

    def basis(self, i: int) -> dict:
        return {i: self.field.one}

    def left_mult(self, i: int) -> Matrix:
        return Matrix(self.dim, self.dim, tuple(self.table[i][j] for j in range(self.dim)))

    def right_mult(self, j: int) -> Matrix:
        return Matrix(self.dim, self.dim, tuple(self.table[i][j] for i in range(self.dim)))

    def opposite(self) -> "FiniteAlgebra":
        t = tuple(tuple(self.table[j][i] for j in range(self.dim)) for i in range(self.dim))
        return FiniteAlgebra(self.field, self.dim, t, self.unit, self.name + "^op")

    def tensor(self, other: "FiniteAlgebra") -> "FiniteAlgebra":
        """Factorwise product on the k-tensor product; basis index i*other.dim + j."""
        n, m = self.dim, other.dim
        table = []
        for i, j in itertools.product(range(n), range(m)):
            row = []
            for k, l in itertools.product(range(n), range(m)):
                out = {}
                for a, x in self.table[i][k].items():
                    for b, y in other.table[j][l].items():
                        out[a * m + b] = x * y
                row.append(vclean(out))
            table.append(tuple(row))
        unit = {a * m + b: x * y for a, x in self.unit.items() for b, y in other.unit.items()}
        return FiniteAlgebra(self.field, n * m, tuple(table), vclean(unit),
                             "(%s)(x)(%s)" % (self.name, other.name))

    def structure_constants(self) -> list:
        z = self.field.zero
        return [[[self.table[i][j].get(k, z) for k in range(self.dim)]
                 for j in range(self.dim)] for i in range(self.dim)]


def make_algebra(dim: int, structure_constants, unit, field: Field = QQ, name: str = "") -> FiniteAlgebra:
    """Build an algebra from c[i][j][k] (e_i e_j = sum_k c[i][j][k] e_k) and a unit vector."""
    c = structure_constants
    if len(c) != dim or any(len(r) != dim for r in c) or any(len(s) != dim for r in c for s in r):
        raise ValueError("structure constants must have shape %d x %d x %d" % (dim, dim, dim))
    if len(unit) != dim:
        raise ValueError("unit must have length %d" % dim)
    table = tuple(tuple(vclean({k: field(c[i][j][k]) for k in range(dim)}) for j in range(dim))
                  for i in range(dim))
    u = vclean({k: field(x) for k, x in enumerate(unit)})
    return FiniteAlgebra(field, dim, table, u, name)


@dataclass
class Report:
    """Named checks with failure witnesses."""

    title: str
    failures: list = dc_field(default_factory=list)
    checked: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    def check(self, name: str, ok: bool, witness=None) -> bool:
        if name not in self.checked:
            self.checked.append(name)
        if not ok:
            self.failures.append((name, witness))
        return ok

    def fail(self, name: str, witness) -> None:
        self.check(name, False, witness)

    @property
    def passed(self) -> bool:
        return not self.failures

    def failed_names(self) -> list:
        seen = []
        for n, _ in self.failures:
            if n not in seen:
                seen.append(n)
        return seen

    def merge(self, other: "Report", prefix: str = "") -> None:
        for n in other.checked:
            self.checked.append(prefix + n)
        for n, w in other.failures:
            self.failures.append((prefix + n, w))
        self.notes.extend(other.notes)

    def summary(self) -> str:
        if self.passed:
            return "%s: PASS (%d checks)" % (self.title, len(self.checked))
        n, w = self.failures[0]
        return "%s: FAIL %s witness=%s" % (self.title, n, w)


def check_algebra(a: FiniteAlgebra) -> Report:
    rep = Report("algebra " + a.name)
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        lhs = a.mul(a.table[i][j], a.basis(k))
        rhs = a.mul(a.basis(i), a.table[j][k])
        if lhs != rhs:
            rep.fail("associativity", (i, j, k))
    for i in range(a.dim):
        e = a.basis(i)
        if a.mul(a.unit, e) != e or a.mul(e, a.unit) != e:
            rep.fail("unit", i)
    rep.check("associativity", True)
    rep.check("unit", True)
    return rep


def action_of(mats: Sequence[Matrix], a: dict, dim: int) -> Matrix:
    """Sum_i a_i mats[i]."""
    cols = [dict() for _ in range(dim)]
    for i, x in a.items():
        for j, c in enumerate(mats[i].columns):
            vaxpy(cols[j], c, x)
    return Matrix(mats[0].rows if mats else dim, dim, tuple(cols))


@dataclass(frozen=True, eq=False)
class Bimodule:
    """A (base_left, base_right)-bimodule.

    ``left_act[a]`` is m -> e_a m, ``right_act[b]`` is m -> m e_b.
    """

    base_left: FiniteAlgebra
    base_right: FiniteAlgebra
    dim: int
    left_act: tuple
    right_act: tuple

    def left(self, a: dict, m: dict) -> dict:
        out: dict = {}
        for i, x in a.items():
            vaxpy(out, self.left_act[i].apply(m), x)
        return out

    def right(self, m: dict, b: dict) -> dict:
        out: dict = {}
        for i, x in b.items():
            vaxpy(out, self.right_act[i].apply(m), x)
        return out


def check_bimodule(m: Bimodule) -> Report:
    rep = Report("bimodule")
    A, B = m.base_left, m.base_right
    for x in range(m.dim):
        v = {x: A.field.one}
        if m.left(A.unit, v) != v:
            rep.fail("left unit", x)
        if m.right(v, B.unit) != v:
            rep.fail("right unit", x)
        for i, j in itertools.product(range(A.dim), repeat=2):
            if m.left_act[i].apply(m.left_act[j].apply(v)) != m.left(A.table[i][j], v):
                rep.fail("left associativity", (i, j, x))
        for i, j in itertools.product(range(B.dim), repeat=2):
            if m.right_act[j].apply(m.right_act[i].apply(v)) != m.right(v, B.table[i][j]):
                rep.fail("right associativity", (i, j, x))
        for i, j in itertools.product(range(A.dim), range(B.dim)):
            if m.left_act[i].apply(m.right_act[j].apply(v)) != m.right_act[j].apply(m.left_act[i].apply(v)):
                rep.fail("commuting actions", (i, j, x))
    for n in ("left unit", "right unit", "left associativity", "right associativity", "commuting actions"):
        rep.check(n, True)
    return rep


def regular_bimodule(a: FiniteAlgebra) -> Bimodule:
    return Bimodule(a, a, a.dim, tuple(a.left_mult(i) for i in range(a.dim)),
                    tuple(a.right_mult(i) for i in range(a.dim)))


class BalancedTensor:
    """Iterated tensor product F_0 (x) F_1 (x) ... balanced over a base between neighbours.

    ``links[k] = (right_mats, left_mats)``: for every base basis element a,
    the relation (f_k . a) (x) f_{k+1} = f_k (x) (a . f_{k+1}) is imposed.
    Ambient basis is row-major in factor order.
    """

    def __init__(self, dims: Sequence[int], links: Sequence, field: Field = QQ):
        self.dims = tuple(dims)
        self.field = field
        strides = []
        s = 1
        for d in reversed(self.dims):
            strides.append(s)
            s *= d
        self.strides = tuple(reversed(strides))
        self.ambient_dim = s
        rels = []
        for k, (rmats, lmats) in enumerate(links):
            for a in range(len(rmats)):
                for idx in itertools.product(*(range(d) for d in self.dims)):
                    rel: dict = {}
                    for y, x in rmats[a].columns[idx[k]].items():
                        vaxpy(rel, {self.flat(idx[:k] + (y,) + idx[k + 1:]): 1}, x)
                    for y, x in lmats[a].columns[idx[k + 1]].items():
                        vaxpy(rel, {self.flat(idx[:k + 1] + (y,) + idx[k + 2:]): 1}, -x)
                    if rel:
                        rels.append(rel)
        self.space: QuotientSpace = quotient_by(self.ambient_dim, rels, field)
        self.dim = self.space.dim

    def flat(self, idx) -> int:
        return sum(i * s for i, s in zip(idx, self.strides))

    def unflat(self, n: int) -> tuple:
        out = []
        for s in self.strides:
            out.append(n // s)
            n %= s
        return tuple(out)

    def rep(self, k: int) -> tuple:
        """Basis-index tuple representing quotient basis vector k."""
        return self.unflat(self.space.basis_cols[k])

    def project_tuple(self, idx) -> dict:
        return self.space.project_index(self.flat(idx))

    def project_pure(self, vecs: Sequence[dict]) -> dict:
        """Quotient coordinates of v_0 (x) v_1 (x) ... for sparse vectors v_k."""
        out: dict = {}
        for combo in itertools.product(*(v.items() for v in vecs)):
            c = 1
            idx = []
            for i, x in combo:
                idx.append(i)
                c = c * x
            vaxpy(out, self.project_tuple(idx), c)
        return out

    def legs(self, v: dict) -> list:
        """Expand quotient coordinates into (coef, index tuple) pure tensors via representatives."""
        return [(x, self.rep(k)) for k, x in v.items()]

    def induced(self, maps: Sequence[Matrix]) -> Matrix:
        """The map f_0 (x) f_1 (x) ... on quotients, computed on representatives."""
        cols = []
        for k in range(self.dim):
            idx = self.rep(k)
            cols.append(self.project_pure([maps[i].columns[j] for i, j in enumerate(idx)]))
        return Matrix(self.dim, self.dim, tuple(cols))


@dataclass(frozen=True, eq=False)
class TensorOverBase:
    """M (x)_base N as a quotient, with its induced bimodule structure."""

    left_factor: Bimodule
    right_factor: Bimodule
    tensor: BalancedTensor
    bimodule: Bimodule

    @property
    def space(self) -> QuotientSpace:
        return self.tensor.space

    @property
    def dim(self) -> int:
        return self.tensor.dim


def tensor_over(m: Bimodule, n: Bimodule, base: FiniteAlgebra) -> TensorOverBase:
    if m.base_right is not base or n.base_left is not base:
        raise ValueError("base mismatch: M must be a right and N a left module over the given base")
    t = BalancedTensor((m.dim, n.dim), [(m.right_act, n.left_act)], base.field)
    ident_n = Matrix.identity(n.dim, base.field)
    ident_m = Matrix.identity(m.dim, base.field)
    left = tuple(t.induced([m.left_act[a], ident_n]) for a in range(m.base_left.dim))
    right = tuple(t.induced([ident_m, n.right_act[b]]) for b in range(n.base_right.dim))
    bim = Bimodule(m.base_left, n.base_right, t.dim, left, right)
    return TensorOverBase(m, n, t, bim)


@dataclass(frozen=True)
class Morphism:
    """A linear map tagged with the actions it was verified to respect."""

    matrix: Matrix
    respects: tuple


def equivariance_witness(f: Matrix, src: Sequence[Matrix], tgt: Sequence[Matrix]):
    """First (generator, basis vector) where f . src[g] != tgt[g] . f, or None."""
    for g, (s, t) in enumerate(zip(src, tgt)):
        for j in range(f.cols):
            lhs = f.apply(s.columns[j])
            rhs = t.apply(f.columns[j])
            if lhs != rhs:
                return (g, j)
    return None


def apply_bimodule_map(f: Matrix, actions: dict) -> Morphism:
    """Check ``f`` against named (source_mats, target_mats) action pairs.

    Raises ValueError naming the offending action, generator and basis vector.
    """
    for name in sorted(actions):
        src, tgt = actions[name]
        w = equivariance_witness(f, src, tgt)
        if w is not None:
            raise ValueError("map is not equivariant for %s at generator %d, basis vector %d" % (name, w[0], w[1]))
    return Morphism(f, tuple(sorted(actions)))


def scalar_vector(field: Field, values) -> dict:
    return vclean({k: field(x) for k, x in enumerate(values)})


def mul_scalar(v: dict, c) -> dict:
    return vscale(v, c)
