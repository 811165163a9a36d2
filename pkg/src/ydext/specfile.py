"""Loader for the line-oriented ``.spec`` input format.

A file is a sequence of named blocks ``<kind> <name> ... end`` plus top-level
``field`` and ``task`` lines.  Inside a block every line is ``key values...``;
a line that starts with a number continues the values of the previous key.
Numbers are integers or rationals written ``a/b``; ``#`` starts a comment.

Block kinds and keys (all vectors are dense, in basis order):

``algebra``
    ``dim n``, ``unit`` (n entries), ``constants`` (n^3 entries c[i][j][k]
    with e_i e_j = sum_k c[i][j][k] e_k, k varying fastest).
``bialgebroid``
    either ``enveloping A``; or ``bialgebra H`` with ``coproduct`` (n * n^2
    entries, Delta(e_i) on H (x) H, index a*n + b) and ``counit`` (n); or
    ``explicit`` with ``total``, ``base``, ``source`` and ``target`` (per basis
    of A its image in U), ``coproduct`` (per basis of U a vector on the ambient
    U (x)_k U) and ``counit`` (per basis of U a vector in A).
``left_yd``
    ``over U``, ``dim n``, ``action`` (per basis u of U and basis vector e_j the
    vector u e_j), ``coaction`` (per basis vector a vector on U (x)_k Z, index
    u*n + z), ``mult`` (per pair (i, j) the vector e_i e_j), ``unit``.
``right_yd``
    ``over U``, ``dim n``, ``action``, ``coaction`` (on X (x)_k U, index
    x*dim U + u), ``comult`` (on X (x)_k X, index i*n + j), ``counit`` (per
    basis vector a vector in A).
``coefficients``
    ``unit U`` (X = Z = A) or ``pair X Z``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Optional

from .algebra import FiniteAlgebra, make_algebra
from .bialgebroid import LeftBialgebroid, enveloping, from_bialgebra
from .linalg import Field, Matrix, vaxpy, vclean
from .yd import (CommutingPair, LeftCoaction, RightCoaction, UModule, YDLeftLeft, YDLeftRight, check_commuting_pair,
                 left_coaction_space, right_coaction_space, unit_coefficients)

BUNDLED = os.path.join(os.path.dirname(__file__), "data", "dual_numbers.spec")

KINDS = ("algebra", "bialgebroid", "left_yd", "right_yd", "coefficients")
_NUMBER = re.compile(r"^[+-]?\d+(/\d+)?$")


class SpecError(ValueError):
    """Parse, reference or shape error; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int = 0, column: int = 0, block: str = ""):
        where = "line %d, column %d" % (line, column) if line else "input"
        if block:
            where += " (block %s)" % block
        super().__init__("%s: %s" % (where, message))
        self.line, self.column, self.block = line, column, block


@dataclass
class Entry:
    values: list  # (token, line, column)
    line: int
    column: int


@dataclass
class Block:
    kind: str
    name: str
    line: int
    entries: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return "%s %s" % (self.kind, self.name)

    def has(self, key: str) -> bool:
        return key in self.entries

    def entry(self, key: str) -> Entry:
        if key not in self.entries:
            raise SpecError("missing key %r" % key, self.line, 1, self.label)
        return self.entries[key]

    def word(self, key: str) -> str:
        e = self.entry(key)
        if len(e.values) != 1:
            raise SpecError("%s expects one value" % key, e.line, e.column, self.label)
        return e.values[0][0]

    def integer(self, key: str) -> int:
        tok, line, col = self.entry(key).values[0]
        if not re.match(r"^\d+$", tok):
            raise SpecError("%s expects a non-negative integer, got %r" % (key, tok), line, col, self.label)
        return int(tok)

    def numbers(self, key: str, count: int, F: Field) -> list:
        e = self.entry(key)
        if len(e.values) != count:
            raise SpecError("%s has %d entries, expected %d" % (key, len(e.values), count), e.line, e.column,
                            self.label)
        out = []
        for tok, line, col in e.values:
            if not _NUMBER.match(tok):
                raise SpecError("%r is not an integer or rational a/b" % tok, line, col, self.label)
            try:
                out.append(F(tok))
            except ZeroDivisionError:
                raise SpecError("zero denominator in %r" % tok, line, col, self.label) from None
        return out

    def vectors(self, key: str, count: int, length: int, F: Field) -> list:
        flat = self.numbers(key, count * length, F)
        return [vclean({i: flat[k * length + i] for i in range(length)}) for k in range(count)]


def _tokens(text: str, lineno: int):
    body = text.split("#", 1)[0]
    return [(m.group(0), lineno, m.start() + 1) for m in re.finditer(r"\S+", body)]


@dataclass
class SpecFile:
    field: Field
    blocks: dict  # name -> Block
    order: list  # block names in file order
    tasks: list  # (argv list, line)
    path: str = ""
    _built: dict = field(default_factory=dict, repr=False)

    # lookup ------------------------------------------------------------------

    def names(self, kind: str) -> list:
        return [n for n in self.order if self.blocks[n].kind == kind]

    def block(self, name: str, kind: str) -> Block:
        b = self.blocks.get(name)
        if b is None or b.kind != kind:
            raise SpecError("no %s named %r" % (kind, name))
        return b

    def default(self, kind: str) -> str:
        names = self.names(kind)
        if not names:
            raise SpecError("the file defines no %s block" % kind)
        return names[-1]

    # construction ------------------------------------------------------------

    def _memo(self, name, build):
        if name not in self._built:
            self._built[name] = build()
        return self._built[name]

    def algebra(self, name: str) -> FiniteAlgebra:
        b = self.block(name, "algebra")

        def build():
            F = self.field
            n = b.integer("dim")
            c = self.block_numbers(b, "constants", n ** 3)
            cube = [[[c[(i * n + j) * n + k] for k in range(n)] for j in range(n)] for i in range(n)]
            return make_algebra(n, cube, self.block_numbers(b, "unit", n), F, name)
        return self._memo(name, build)

    def block_numbers(self, b: Block, key: str, count: int) -> list:
        return b.numbers(key, count, self.field)

    def bialgebroid(self, name: str) -> LeftBialgebroid:
        b = self.block(name, "bialgebroid")

        def build():
            F = self.field
            if b.has("enveloping"):
                return enveloping(self.algebra(b.word("enveloping")))
            if b.has("bialgebra"):
                h = self.algebra(b.word("bialgebra"))
                n = h.dim
                cop = b.vectors("coproduct", n, n * n, F)
                return from_bialgebra(h, cop, self.block_numbers(b, "counit", n), check=False)
            if b.has("explicit"):
                U = self.algebra(b.word("total"))
                A = self.algebra(b.word("base"))
                s = Matrix(U.dim, A.dim, tuple(b.vectors("source", A.dim, U.dim, F)))
                t = Matrix(U.dim, A.dim, tuple(b.vectors("target", A.dim, U.dim, F)))
                eps = Matrix(A.dim, U.dim, tuple(b.vectors("counit", U.dim, A.dim, F)))
                tmp = LeftBialgebroid(U, A, s, t, (), eps, name)
                amb = b.vectors("coproduct", U.dim, U.dim * U.dim, F)
                delta = tuple(_project(tmp.uu, v, U.dim) for v in amb)
                return LeftBialgebroid(U, A, s, t, delta, eps, name)
            raise SpecError("expected one of enveloping, bialgebra, explicit", b.line, 1, b.label)
        return self._memo(name, build)

    def _module(self, b: Block) -> UModule:
        U = self.bialgebroid(b.word("over"))
        n = b.integer("dim")
        cols = b.vectors("action", U.dim * n, n, self.field)
        acts = tuple(Matrix(n, n, tuple(cols[k * n:(k + 1) * n])) for k in range(U.dim))
        return UModule(U, n, acts, b.name)

    def left_yd(self, name: str) -> YDLeftLeft:
        b = self.block(name, "left_yd")

        def build():
            F = self.field
            M = self._module(b)
            U, n = M.bialgebroid, M.dim
            sp = left_coaction_space(U, M)
            coords = tuple(_project(sp, v, n) for v in b.vectors("coaction", n, U.dim * n, F))
            mu = unit = None
            if b.has("mult"):
                mu = Matrix(n, n * n, tuple(b.vectors("mult", n * n, n, F)))
                unit = b.vectors("unit", 1, n, F)[0]
            return YDLeftLeft(M, LeftCoaction(sp, coords), mu, unit, name)
        return self._memo(name, build)

    def right_yd(self, name: str) -> YDLeftRight:
        b = self.block(name, "right_yd")

        def build():
            F = self.field
            M = self._module(b)
            U, n = M.bialgebroid, M.dim
            sp = right_coaction_space(U, M)
            coords = tuple(_project(sp, v, U.dim) for v in b.vectors("coaction", n, n * U.dim, F))
            probe = YDLeftRight(M, RightCoaction(sp, coords), None, None, name)
            if not b.has("comult"):
                return probe
            delta = tuple(_project(probe.xx.tensor, v, n) for v in b.vectors("comult", n, n * n, F))
            A = U.base
            counit = Matrix(A.dim, n, tuple(b.vectors("counit", n, A.dim, F)))
            return YDLeftRight(M, probe.coaction, delta, counit, name)
        return self._memo(name, build)

    def coefficients(self, name: Optional[str] = None) -> CommutingPair:
        """The commuting pair of a coefficients block; raises on failed checks."""
        name = name or self.default("coefficients")
        b = self.block(name, "coefficients")

        def build():
            if b.has("unit"):
                return unit_coefficients(self.bialgebroid(b.word("unit")))
            x_name, z_name = self.pair_names(b)
            return check_commuting_pair(self.right_yd(x_name), self.left_yd(z_name))
        return self._memo(name, build)

    def pair_names(self, b: Block):
        e = b.entry("pair")
        if len(e.values) != 2:
            raise SpecError("pair expects X and Z names", e.line, e.column, b.label)
        return e.values[0][0], e.values[1][0]


def _project(space, v: dict, inner: int) -> dict:
    """Ambient vector (index a*inner + b) to quotient coordinates of a balanced tensor."""
    out: dict = {}
    for ab, x in v.items():
        vaxpy(out, space.project_tuple((ab // inner, ab % inner)), x)
    return out


# references that must resolve, per block kind: key -> referenced kind
_REFS = {
    "bialgebroid": {"enveloping": "algebra", "bialgebra": "algebra", "total": "algebra", "base": "algebra"},
    "left_yd": {"over": "bialgebroid"},
    "right_yd": {"over": "bialgebroid"},
    "coefficients": {"unit": "bialgebroid"},
}


def parse(text: str, path: str = "", default_field: Optional[str] = None) -> SpecFile:
    field_name = default_field or os.environ.get("YDEXT_FIELD", "QQ")
    field_at = (0, 0)
    blocks: dict = {}
    order: list = []
    tasks: list = []
    cur: Optional[Block] = None
    last: Optional[Entry] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw, lineno)
        if not toks:
            continue
        head, _, col = toks[0]
        if cur is None:
            if head == "field":
                if len(toks) != 2:
                    raise SpecError("field expects one value", lineno, col)
                field_name, field_at = toks[1][0], (lineno, toks[1][2])
            elif head == "task":
                if len(toks) < 2:
                    raise SpecError("task expects a command", lineno, col)
                tasks.append(([t[0] for t in toks[1:]], lineno))
            elif head in KINDS:
                if len(toks) != 2:
                    raise SpecError("%s expects a single name" % head, lineno, col)
                name = toks[1][0]
                if name in blocks:
                    raise SpecError("duplicate block name %r" % name, lineno, toks[1][2])
                cur = Block(head, name, lineno)
                last = None
            else:
                raise SpecError("unexpected %r outside a block" % head, lineno, col)
            continue
        if head == "end":
            blocks[cur.name] = cur
            order.append(cur.name)
            cur = None
            continue
        if _NUMBER.match(head):
            if last is None:
                raise SpecError("values without a key", lineno, col, cur.label)
            last.values.extend(toks)
            continue
        if head in cur.entries:
            raise SpecError("duplicate key %r" % head, lineno, col, cur.label)
        last = Entry(list(toks[1:]), lineno, col)
        cur.entries[head] = last
    if cur is not None:
        raise SpecError("block not closed with end", cur.line, 1, cur.label)
    try:
        F = Field.parse(field_name)
    except ValueError as exc:
        raise SpecError(str(exc), *field_at) from None
    spec = SpecFile(F, blocks, order, tasks, path)
    _resolve(spec)
    _shape_check(spec)
    return spec


def _resolve(spec: SpecFile) -> None:
    for name in spec.order:
        b = spec.blocks[name]
        refs = dict(_REFS.get(b.kind, {}))
        if b.kind == "coefficients" and b.has("pair"):
            x, z = spec.pair_names(b)
            for ref, kind, tok in ((x, "right_yd", 0), (z, "left_yd", 1)):
                _need(spec, b, "pair", ref, kind, tok)
        for key, kind in refs.items():
            if b.has(key):
                _need(spec, b, key, b.word(key), kind, 0)


def _need(spec, b, key, ref, kind, tok):
    target = spec.blocks.get(ref)
    if target is None or target.kind != kind or spec.order.index(ref) > spec.order.index(b.name):
        _, line, col = b.entry(key).values[tok]
        raise SpecError("unresolved reference %r (expected an earlier %s block)" % (ref, kind), line, col, b.label)


def _shape_check(spec: SpecFile) -> None:
    """Build every block once so that shape errors surface at load time."""
    builders = {"algebra": spec.algebra, "bialgebroid": spec.bialgebroid, "left_yd": spec.left_yd,
                "right_yd": spec.right_yd}
    for name in spec.order:
        kind = spec.blocks[name].kind
        if kind in builders:
            try:
                builders[kind](name)
            except ValueError as exc:
                if isinstance(exc, SpecError):
                    raise
                b = spec.blocks[name]
                raise SpecError(str(exc), b.line, 1, b.label) from None


def load(path: str, default_field: Optional[str] = None) -> SpecFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), path, default_field)
