"""Command line interface: ``ydext [options] COMMAND``.

Every command produces a report that is printed as text or, with ``--json``,
as a sorted JSON document.  Reports contain no timing unless ``--timing`` is
given, so a fixed spec file and seed reproduce the output byte for byte.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage,
input or resource error.
"""

from __future__ import annotations

import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

import click
import gmpy2

from .algebra import Report, check_algebra
from .bar import Cochain
from .bialgebroid import check_bialgebroid, enveloping
from .cohomology import ExtGroups, class_bracket, class_cup, verify_gerstenhaber
from .config import EngineConfig, ResourceError
from .extensions import verify_extension_loop
from .linalg import ModP
from .operad import OperadContext, verify_operad
from .specfile import BUNDLED, SpecError, SpecFile, load
from .yd import (check_braided_comonoid, check_braided_monoid, check_module, check_yd_left_left, check_yd_left_right,
                 commuting_pair_witness, unit_coefficients, unit_left_yd, unit_right_yd)


# plain data for output ------------------------------------------------------------

def jsonable(x):
    """Deterministic plain-data form of scalars, vectors, tuples and reports."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, type(gmpy2.mpq())):
        return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
    if isinstance(x, ModP):
        return x.v
    if isinstance(x, float):
        return round(x, 3)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, Report):
        return report_data(x)
    if isinstance(x, Cochain):
        return cochain_data(x)
    return str(x)


def report_data(rep: Report) -> dict:
    failed = set(rep.failed_names())
    return {
        "title": rep.title,
        "passed": rep.passed,
        "checks": [{"name": n, "ok": n not in failed} for n in rep.checked],
        "failures": [{"name": n, "witness": jsonable(w)} for n, w in rep.failures],
        "notes": jsonable(rep.notes),
    }


def cochain_data(c: Cochain) -> dict:
    """Normalized values as sparse entries [target index, normalized basis index, value]."""
    entries = [[i, j, jsonable(x)] for j, col in enumerate(c.values.columns) for i, x in sorted(col.items())]
    return {"degree": c.degree, "entries": entries}


def compact(x) -> str:
    return json.dumps(jsonable(x), sort_keys=True, separators=(",", ":"))


@dataclass
class Outcome:
    command: str
    data: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    reports: list = field(default_factory=list)

    def add(self, rep: Report) -> None:
        self.reports.append(rep)
        self.lines.append(rep.summary())
        for n, w in rep.failures[1:]:
            self.lines.append("  also failed: %s witness=%s" % (n, compact(w)))

    @property
    def status(self) -> int:
        return 0 if all(r.passed for r in self.reports) and not self.data.get("failed") else 1

    def as_data(self) -> dict:
        out = {"command": self.command, "passed": self.status == 0, "reports": [report_data(r) for r in self.reports]}
        out.update(jsonable(self.data))
        return out


# shared state ---------------------------------------------------------------------

@dataclass
class Session:
    spec_path: str
    coefficients: Optional[str]
    as_json: bool
    seed: int
    timing: bool
    field_override: Optional[str]
    overrides: dict
    _spec: Optional[SpecFile] = None

    @property
    def spec(self) -> SpecFile:
        if self._spec is None:
            self._spec = load(self.spec_path, self.field_override)
        return self._spec

    @property
    def config(self) -> EngineConfig:
        return EngineConfig.from_env(field=self.spec.field.name, **self.overrides)

    def context(self) -> OperadContext:
        return OperadContext(self.spec.coefficients(self.coefficients), self.config)

    def header(self) -> dict:
        return {"spec": os.path.basename(self.spec_path), "field": self.spec.field.name, "seed": self.seed}


def emit(session: Session, outcomes: list, elapsed: float) -> None:
    if session.as_json:
        doc = dict(session.header())
        doc["results"] = [o.as_data() for o in outcomes]
        doc["passed"] = all(o.status == 0 for o in outcomes)
        if session.timing:
            doc["seconds"] = round(elapsed, 3)
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
        return
    h = session.header()
    click.echo("spec: %s  field: %s  seed: %d" % (h["spec"], h["field"], h["seed"]))
    for o in outcomes:
        click.echo("== %s" % o.command)
        for line in o.lines:
            click.echo(line)
        click.echo("result: %s" % ("PASS" if o.status == 0 else "FAIL"))
    if session.timing:
        click.echo("time: %.3f s" % elapsed)


def finish(session: Session, outcomes: list, started: float) -> None:
    emit(session, outcomes, time.perf_counter() - started)
    sys.exit(max(o.status for o in outcomes) if outcomes else 0)


def fail(session: Optional[Session], kind: str, exc: Exception, code: int) -> None:
    msg = "%s: %s" % (type(exc).__name__, exc)
    if session is not None and session.as_json:
        click.echo(json.dumps({"error": kind, "message": msg, "passed": False}, indent=2, sort_keys=True))
    else:
        click.echo("error (%s): %s" % (kind, msg), err=True)
    sys.exit(code)


def guarded(session: Session, fn, *args) -> list:
    try:
        return fn(session, *args)
    except SpecError as exc:
        fail(session, "input", exc, 2)
    except ResourceError as exc:
        fail(session, "resource cap", exc, 2)
    except OSError as exc:
        fail(session, "input", exc, 2)
    except ValueError as exc:
        fail(session, "check", exc, 1)


# commands -------------------------------------------------------------------------

def do_check_axioms(s: Session) -> list:
    spec = s.spec
    o = Outcome("check-axioms")
    for name in spec.names("algebra"):
        o.add(check_algebra(spec.algebra(name)))
    for name in spec.names("bialgebroid"):
        o.add(check_bialgebroid(spec.bialgebroid(name)))
    for name in spec.names("left_yd"):
        z = spec.left_yd(name)
        o.add(check_module(z.module))
        o.add(check_yd_left_left(z))
        if z.mu is not None:
            o.add(check_braided_monoid(z))
    for name in spec.names("right_yd"):
        x = spec.right_yd(name)
        o.add(check_module(x.module))
        o.add(check_yd_left_right(x))
        if x.delta is not None:
            o.add(check_braided_comonoid(x))
    for name in spec.names("coefficients"):
        b = spec.block(name, "coefficients")
        if b.has("unit"):
            U = spec.bialgebroid(b.word("unit"))
            x, z = unit_right_yd(U), unit_left_yd(U)
            for rep in (check_yd_left_left(z), check_yd_left_right(x), check_braided_monoid(z),
                        check_braided_comonoid(x)):
                o.add(rep)
        else:
            xn, zn = spec.pair_names(b)
            x, z = spec.right_yd(xn), spec.left_yd(zn)
        rep = Report("commuting pair %s" % name)
        w = commuting_pair_witness(x, z)
        rep.check("sigma = tau", w is None, None if w is None else {"x": w[0], "z": w[1]})
        o.add(rep)
    return [o]


def _ext_outcome(groups: ExtGroups, command: str) -> Outcome:
    o = Outcome(command)
    dims = groups.dims()
    o.data["dims"] = list(dims)
    o.lines.append("dims: %s" % " ".join(str(d) for d in dims))
    reps = {}
    for n in range(groups.n_max + 1):
        reps[str(n)] = [cochain_data(r) for r in groups.degree(n).reps]
        for k, r in enumerate(groups.degree(n).reps):
            o.lines.append("  degree %d basis %d: %s" % (n, k, compact(cochain_data(r)["entries"])))
    o.data["representatives"] = reps
    return o


def do_ext(s: Session, max_degree: int) -> list:
    return [_ext_outcome(ExtGroups(s.context(), max_degree), "ext --max-degree %d" % max_degree)]


def do_hochschild(s: Session, algebra: Optional[str], max_degree: int) -> list:
    spec = s.spec
    name = algebra or spec.default("algebra")
    U = enveloping(spec.algebra(name))
    ctx = OperadContext(unit_coefficients(U), s.config)
    return [_ext_outcome(ExtGroups(ctx, max_degree), "hochschild %s --max-degree %d" % (name, max_degree))]


def _products(s: Session, max_degree: int, which: str) -> list:
    groups = ExtGroups(s.context(), max_degree)
    o = Outcome("%s --max-degree %d" % (which, max_degree))
    table = []
    basis = [(n, k) for n in range(max_degree + 1) for k in range(groups.degree(n).dim)]
    for (p, i), (q, j) in ((a, b) for a in basis for b in basis):
        a, b = groups.basis(p)[i], groups.basis(q)[j]
        if which == "cup":
            if p + q > max_degree:
                continue
            c = class_cup(groups, a, b)
        else:
            if p + q - 1 > max_degree or p + q == 0:
                continue
            c = class_bracket(groups, a, b)
        table.append({"left": [p, i], "right": [q, j], "degree": c.degree, "coords": jsonable(list(c.coords))})
        o.lines.append("[%d.%d] %s [%d.%d] = %s in degree %d"
                       % (p, i, "cup" if which == "cup" else "bracket", q, j, compact(list(c.coords)), c.degree))
    o.data["dims"] = list(groups.dims())
    o.data["table"] = table
    return [o]


def do_verify_operad(s: Session, trials: int, cap: int) -> list:
    o = Outcome("verify-operad --trials %d --cap %d" % (trials, cap))
    o.add(verify_operad(s.context(), cap, trials, s.seed))
    return [o]


def do_verify_gerstenhaber(s: Session, cap: int) -> list:
    o = Outcome("verify-gerstenhaber --cap %d" % cap)
    groups = ExtGroups(s.context(), cap)
    o.data["dims"] = list(groups.dims())
    o.add(verify_gerstenhaber(groups, cap))
    return [o]


def do_verify_extension_loop(s: Session, p: int, q: int) -> list:
    o = Outcome("verify-extension-loop --p %d --q %d" % (p, q))
    o.add(verify_extension_loop(s.context(), p, q, s.seed))
    return [o]


# click wiring ---------------------------------------------------------------------

def _run(ctx: click.Context, fn, *args) -> None:
    session: Session = ctx.obj
    started = time.perf_counter()
    finish(session, guarded(session, fn, *args), started)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--spec", "spec_path", type=click.Path(dir_okay=False), default=BUNDLED, show_default="bundled dual numbers",
              help="Input .spec file.")
@click.option("--coefficients", default=None, help="Coefficients block to use (default: the last one).")
@click.option("--json", "as_json", is_flag=True, help="Print a structured JSON report.")
@click.option("--seed", default=0, show_default=True, help="RNG seed for randomized checks.")
@click.option("--timing", is_flag=True, help="Include wall-clock time (breaks byte reproducibility).")
@click.option("--field", "field_override", default=None, help="Field used when the file has no field line.")
@click.option("--max-bar-degree", type=int, default=None, help="Override the bar degree cap.")
@click.option("--max-ambient", type=int, default=None, help="Override the ambient tensor dimension cap.")
@click.option("--max-u-dim", type=int, default=None, help="Override the cap on dim U.")
@click.pass_context
def main(ctx, spec_path, coefficients, as_json, seed, timing, field_override, max_bar_degree, max_ambient, max_u_dim):
    """Exact Ext computations over finite-dimensional left bialgebroids."""
    overrides = {"max_degree": max_bar_degree, "max_ambient": max_ambient, "max_u_dim": max_u_dim}
    ctx.obj = Session(spec_path, coefficients, as_json, seed, timing, field_override, overrides)


@main.command("check-axioms")
@click.pass_context
def check_axioms_cmd(ctx):
    """Check every algebra, bialgebroid and coefficient block of the file."""
    _run(ctx, do_check_axioms)


@main.command("ext")
@click.option("--max-degree", default=3, show_default=True)
@click.pass_context
def ext_cmd(ctx, max_degree):
    """Dimensions and representative cocycles of Ext^n(X, Z)."""
    _run(ctx, do_ext, max_degree)


@main.command("hochschild")
@click.option("--algebra", default=None, help="Algebra block (default: the last one).")
@click.option("--max-degree", default=3, show_default=True)
@click.pass_context
def hochschild_cmd(ctx, algebra, max_degree):
    """Hochschild cohomology: Ext over the enveloping bialgebroid with unit coefficients."""
    _run(ctx, do_hochschild, algebra, max_degree)


@main.command("cup")
@click.option("--max-degree", default=2, show_default=True)
@click.pass_context
def cup_cmd(ctx, max_degree):
    """Cup products of basis classes, in class coordinates."""
    _run(ctx, _products, max_degree, "cup")


@main.command("bracket")
@click.option("--max-degree", default=2, show_default=True)
@click.pass_context
def bracket_cmd(ctx, max_degree):
    """Gerstenhaber brackets of basis classes, in class coordinates."""
    _run(ctx, _products, max_degree, "bracket")


@main.command("verify-operad")
@click.option("--trials", default=100, show_default=True)
@click.option("--cap", default=2, show_default=True, help="Largest cochain degree.")
@click.pass_context
def verify_operad_cmd(ctx, trials, cap):
    """Associativity, unitality and multiplication identities on random cochains."""
    _run(ctx, do_verify_operad, trials, cap)


@main.command("verify-gerstenhaber")
@click.option("--cap", default=2, show_default=True, help="Largest class degree.")
@click.pass_context
def verify_gerstenhaber_cmd(ctx, cap):
    """Gerstenhaber algebra identities on Ext, up to exhibited coboundaries."""
    _run(ctx, do_verify_gerstenhaber, cap)


@main.command("verify-extension-loop")
@click.option("--p", "p", default=1, show_default=True)
@click.option("--q", "q", default=1, show_default=True)
@click.pass_context
def verify_extension_loop_cmd(ctx, p, q):
    """Build extensions of degrees p and q and check the transfer pipeline."""
    _run(ctx, do_verify_extension_loop, p, q)


@main.command("run")
@click.pass_context
def run_cmd(ctx):
    """Run the task lines of the spec file in order."""
    session: Session = ctx.obj
    started = time.perf_counter()

    def tasks(s: Session) -> list:
        out = []
        for argv, line in s.spec.tasks:
            cmd = main.get_command(ctx, argv[0])
            if cmd is None or argv[0] == "run":
                raise SpecError("unknown task command %r" % argv[0], line, 6)
            try:
                sub = cmd.make_context(argv[0], list(argv[1:]), parent=ctx)
            except click.UsageError as exc:
                raise SpecError("task %s: %s" % (argv[0], exc.format_message()), line, 6) from None
            params = sub.params
            fn, args = _TASKS[argv[0]]
            out.extend(fn(s, *[params[a] for a in args]))
        return out
    finish(session, guarded(session, tasks), started)


_TASKS = {
    "check-axioms": (do_check_axioms, ()),
    "ext": (do_ext, ("max_degree",)),
    "hochschild": (do_hochschild, ("algebra", "max_degree")),
    "cup": (lambda s, d: _products(s, d, "cup"), ("max_degree",)),
    "bracket": (lambda s, d: _products(s, d, "bracket"), ("max_degree",)),
    "verify-operad": (do_verify_operad, ("trials", "cap")),
    "verify-gerstenhaber": (do_verify_gerstenhaber, ("cap",)),
    "verify-extension-loop": (do_verify_extension_loop, ("p", "q")),
}


if __name__ == "__main__":
    main()
