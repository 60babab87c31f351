"""Command line entry point ``tf``.

    tf run <example|all>          canonical battery on a corpus example
    tf audit <tag> <file|example> audit one statement
    tf eval <file>                run the ``check`` statements of an input file
    tf list                       corpus names and audit tags

Exit codes: 0 consistent or complete, 2 hypothesis not met, 3 not
checkable, 1 error or inconsistent audit.
"""

from __future__ import annotations

import os
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from . import groebner
from .audit import AUDIT_TAGS, UnknownTheorem, audit_theorem
from .battery import CHECKS, DEFAULT_STRETCH_WORK, Workspace, run_battery, run_check
from .corpus import CORPUS_NAMES, UnknownExample, example_source
from .report import OperationLog, dump_json, render_audit, render_text
from .session import InputError, Options, parse_input
from .store import DiskStore

EXIT_OK, EXIT_ERROR, EXIT_HYPOTHESIS, EXIT_NOT_CHECKABLE = 0, 1, 2, 3


def _common(fn):
    opts = [
        click.option("--char", "characteristic", type=int, default=None,
                     help="Override the characteristic (0 for the rationals)."),
        click.option("--order", default=None, help="Monomial order: degrevlex, lex, wdegrevlex."),
        click.option("--max-degree", type=int, default=64, show_default=True, help="Degree cap."),
        click.option("--timeout", type=float, default=600.0, show_default=True,
                     help="Seconds per operation; exceeding it gives not-checkable."),
        click.option("--json", "as_json", is_flag=True, help="Emit a JSON report."),
        click.option("--no-cache", is_flag=True, help="Disable the in-memory and on-disk basis caches."),
        click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
                     help="Directory of the on-disk basis cache."),
        click.option("--stretch-work", type=int, default=DEFAULT_STRETCH_WORK, show_default=True,
                     help="S-pair budget for the optional Cohen-Macaulay tests of S and R."),
        click.option("--wall-time", is_flag=True, help="Add wall-clock seconds to timings (not reproducible)."),
    ]
    for o in reversed(opts):
        fn = o(fn)
    return fn


class _Ctx:
    def __init__(self, characteristic, order, max_degree, timeout, as_json, no_cache, cache_dir,
                 stretch_work, wall_time):
        self.options = Options(characteristic, order, max_degree, timeout if timeout > 0 else None,
                               not no_cache, as_json)
        self.stretch_work = stretch_work if stretch_work > 0 else None
        self.wall_time = wall_time
        groebner.cache_enabled = not no_cache
        groebner.set_store(None if no_cache else DiskStore(cache_dir))

    def log(self) -> OperationLog:
        return OperationLog(self.options.timeout, self.wall_time)

    def emit(self, payload: dict):
        text = dump_json(payload) if self.options.as_json else render_text(payload)
        click.echo(text, nl=False)


def _load(target: str, options: Options):
    """Parse a file path or a corpus example name."""
    if os.path.isfile(target):
        with open(target, encoding="utf-8") as fh:
            return parse_input(fh.read(), options, source=target)
    return parse_input(example_source(target), options, source=target)


def _fail(message: str) -> int:
    click.echo(f"error: {message}", err=True)
    return EXIT_ERROR


def _battery_payload(name: str, ctx: _Ctx) -> tuple[dict, int]:
    session = parse_input(example_source(name), ctx.options, source=name)
    log = ctx.log()
    run_battery(log, Workspace(session.ideal(), name), ctx.stretch_work)
    payload = {"session": session.to_json(), "operations": log.operations}
    return payload, EXIT_NOT_CHECKABLE if log.failed_required else EXIT_OK


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Tangent and Rees algebras of Kaehler differentials."""


@main.command()
@click.argument("example")
@click.option("--jobs", type=int, default=1, show_default=True, help="Examples run concurrently for 'all'.")
@_common
def run(example, jobs, **kw):
    """Run the canonical battery on EXAMPLE (or 'all' for the whole corpus)."""
    ctx = _Ctx(**kw)
    names = list(CORPUS_NAMES) if example == "all" else [example]
    try:
        if len(names) == 1:
            payload, code = _battery_payload(names[0], ctx)
            ctx.emit(payload)
            sys.exit(code)
        with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
            results = list(pool.map(lambda n: _battery_payload(n, ctx), names))
    except UnknownExample as exc:
        sys.exit(_fail(f"unknown example {exc.args[0]!r}; try 'tf list'"))
    except InputError as exc:
        sys.exit(_fail(str(exc)))
    if ctx.options.as_json:
        click.echo(dump_json({"reports": [p for p, _ in results]}), nl=False)
    else:
        for p, _ in results:
            click.echo(render_text(p))
    sys.exit(max(code for _, code in results))


@main.command()
@click.argument("tag")
@click.argument("target")
@_common
def audit(tag, target, **kw):
    """Audit statement TAG on TARGET (an input file or a corpus example)."""
    ctx = _Ctx(**kw)
    if tag not in AUDIT_TAGS:
        sys.exit(_fail(f"unknown theorem tag {tag!r}; known: {', '.join(sorted(AUDIT_TAGS))}"))
    try:
        session = _load(target, ctx.options)
        ideal = session.ideal()
    except UnknownExample as exc:
        sys.exit(_fail(f"{exc.args[0]!r} is neither a file nor a corpus example"))
    except (InputError, KeyError, OSError, UnicodeDecodeError) as exc:
        sys.exit(_fail(str(exc)))
    log = ctx.log()
    report = audit_theorem(tag, Workspace(ideal, target), log, ctx.stretch_work)
    for w in report.warnings:
        click.echo(f"warning: {w}", err=True)
    payload = {"session": session.to_json(), "operations": log.operations, "audit": report.to_json(),
               "warnings": report.warnings}
    ctx.emit(payload)
    sys.exit(report.exit_code)


@main.command("eval")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_common
def eval_file(path, **kw):
    """Run the check statements of the input file PATH (the battery if there are none)."""
    ctx = _Ctx(**kw)
    try:
        with open(path, encoding="utf-8") as fh:
            session = parse_input(fh.read(), ctx.options, source=path)
    except (InputError, OSError, UnicodeDecodeError) as exc:
        sys.exit(_fail(str(exc)))
    log = ctx.log()
    workspaces: dict[str, Workspace] = {}
    audits = []
    code = EXIT_OK
    try:
        checks = session.checks or [("battery", [])]
        for name, args in checks:
            target = None
            if args and args[-1] in session.ideals:
                target, args = args[-1], args[:-1]
            ideal = session.ideal(target)
            key = target or "default"
            ws = workspaces.setdefault(key, Workspace(ideal, target or path))
            if name == "battery":
                run_battery(log, ws, ctx.stretch_work)
            elif name == "audit":
                if len(args) != 1:
                    raise ValueError("check audit takes one theorem tag")
                rep = audit_theorem(args[0], ws, log, ctx.stretch_work)
                audits.append(rep)
                for w in rep.warnings:
                    click.echo(f"warning: {w}", err=True)
            else:
                run_check(log, ws, name, args)
    except (KeyError, ValueError, UnknownTheorem) as exc:
        sys.exit(_fail(exc.args[0] if exc.args else str(exc)))
    payload = {"session": session.to_json(), "operations": log.operations}
    if audits:
        payload["audits"] = [a.to_json() for a in audits]
        payload["warnings"] = [w for a in audits for w in a.warnings]
    if ctx.options.as_json:
        ctx.emit(payload)
    else:
        click.echo(render_text(payload), nl=False)
        for a in audits:
            click.echo("\n".join(render_audit(a.to_json())))
    codes = [a.exit_code for a in audits]
    if log.failed_required:
        codes.append(EXIT_NOT_CHECKABLE)
    for c in (EXIT_ERROR, EXIT_HYPOTHESIS, EXIT_NOT_CHECKABLE):
        if c in codes:
            code = c
            break
    sys.exit(code)


@main.command("list")
def list_cmd():
    """List corpus examples, audit tags and check operations."""
    click.echo("examples: " + ", ".join(CORPUS_NAMES) + " (also catalecticant-<r>, fermat-<d>-<n>)")
    click.echo("audit tags: " + ", ".join(sorted(AUDIT_TAGS)))
    click.echo("checks: battery, audit <tag>, " + ", ".join(sorted(CHECKS)))


if __name__ == "__main__":
    main()
