"""Command-line interface.

Exit codes: 0 success or agreement, 1 validation failure, 2 I/O or parse
failure, 3 resource or bound failure, 4 cross-check disagreement.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import corpus
from .ato_core import ResourceBounds, parse_machine, validate_machine
from .comp_dag import build_dag, dag_stats, export_edges
from .computation import (check_well_behaved, enumerate_computations, extract_output,
                          is_accepting_computation, valid_outputs)
from .errors import BoundViolation, MachineValidationError, ParseError, SpanTLError
from .nfta import (count_by_size, determinize, enumerate_accepted,
                   parse_nfta, serialize_nfta)
from .reduction import build_nfta, size_bound
from .trees import canonical_code, serialize_tree

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_BOUND, EXIT_MISMATCH = 0, 1, 2, 3, 4


@dataclass
class RunReport:
    command: list
    counts: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    info: list = field(default_factory=list)
    listing: list = field(default_factory=list)
    status: int = EXIT_OK

    def render(self, fmt="text"):
        if fmt == "json":
            return json.dumps(asdict(self), indent=2, sort_keys=True)
        lines = ["command: " + " ".join(self.command)]
        lines += [f"{k}: {v}" for k, v in self.counts.items()]
        lines += [f"violation: {v}" for v in self.violations]
        lines += [f"INFO: {v}" for v in self.info]
        lines += self.listing
        lines += [f"time.{k}: {v:.4f}s" for k, v in self.timings.items()]
        lines.append(f"status: {self.status}")
        return "\n".join(lines)


class _Timer:
    def __init__(self, report, name):
        self.report, self.name = report, name

    def __enter__(self):
        self.start = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timings[self.name] = time.perf_counter() - self.start


def _fail(report, status, message):
    report.status = status
    report.violations.append(message)
    return report


def _guard(fn):
    """Turn the package's exceptions into report statuses."""
    def wrapper(*args, **kwargs):
        echo = [fn.__name__.removeprefix("cmd_")] + [str(a) for a in args]
        echo += [f"--{k}={v}" for k, v in kwargs.items() if v not in (None, False)]
        report = RunReport(echo)
        try:
            return fn(report, *args, **kwargs)
        except MachineValidationError as exc:
            report.violations.extend(exc.violations)
            report.status = EXIT_INVALID
        except (OSError, ParseError) as exc:
            return _fail(report, EXIT_IO, str(exc))
        except BoundViolation as exc:
            return _fail(report, EXIT_BOUND, str(exc))
        except SpanTLError as exc:
            return _fail(report, EXIT_INVALID, str(exc))
        return report
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def load_machine(path, bounds=None, validate=True):
    """Read a machine file; ``corpus:<name>`` loads a bundled machine."""
    path = str(path)
    if path.startswith("corpus:"):
        text = corpus.source(path.partition(":")[2])
    else:
        text = Path(path).read_text(encoding="utf-8")
    m = parse_machine(text, validate=validate, name=Path(path).stem)
    if bounds:
        try:
            m = m.with_bounds(ResourceBounds.parse(bounds, base=m.bounds))
        except ValueError as exc:
            raise ParseError(f"--bounds: {exc}") from None
    return m


@_guard
def cmd_validate(report, machine_file, bounds=None):
    """Validate a machine file; exit 1 when invariants are violated."""
    m = load_machine(machine_file, bounds, validate=False)
    report.violations = validate_machine(m)
    report.counts["violations"] = len(report.violations)
    report.status = EXIT_INVALID if report.violations else EXIT_OK
    return report


@_guard
def cmd_run(report, machine_file, w, bounds=None, limit=20):
    """Enumerate computations, printing acceptance and output for each."""
    m = load_machine(machine_file, bounds)
    total = accepting = 0
    with _Timer(report, "enumerate"):
        for t in enumerate_computations(m, w, m.bounds):
            total += 1
            ok = is_accepting_computation(t)
            accepting += ok
            for v in check_well_behaved(t, m.bounds):
                report.violations.append(f"computation {total}: {v}")
            if total <= limit:
                verdict = "accept" if ok else "reject"
                report.listing.append(
                    f"#{total} {verdict} nodes={t.size} output={serialize_tree(extract_output(t, 'ordered'))}")
    report.counts.update(computations=total, accepting=accepting)
    return report


@_guard
def cmd_span(report, machine_file, w, mode="unordered", bounds=None, list_outputs=False):
    """Exact number of distinct valid outputs."""
    m = load_machine(machine_file, bounds)
    with _Timer(report, "span"):
        outputs = valid_outputs(m, w, m.bounds, mode)
    report.counts["span"] = len(outputs)
    report.counts["mode"] = mode
    if list_outputs:
        report.listing = [serialize_tree(t) for _, t in sorted(outputs.items())]
    return report


@_guard
def cmd_reduce(report, machine_file, w, out=None, bounds=None):
    """Compile machine and input into an NFTA; write it to ``out`` (or list it)."""
    m = load_machine(machine_file, bounds)
    with _Timer(report, "reduce"):
        a = build_nfta(m, w, m.bounds)
    text = serialize_nfta(a)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        report.listing = text.splitlines()
    report.counts.update(size_bound=size_bound(m), states=len(a.states),
                         labels=len(a.alphabet), transitions=len(a.transitions))
    return report


@_guard
def cmd_count(report, nfta_file, size, cumulative=False, method="dp", list_trees=False):
    """Count accepted trees of size ``size`` (or up to it, with ``cumulative``)."""
    a = parse_nfta(Path(nfta_file).read_text(encoding="utf-8"))
    with _Timer(report, method):
        if method == "dp":
            per_size = count_by_size(determinize(a), size)
        elif method == "enum":
            per_size = [0] * (size + 1)
            for t in enumerate_accepted(a, size):
                per_size[sum(1 for _ in t.nodes())] += 1
        else:
            raise SpanTLError(f"unknown method {method!r}")
    report.counts["count"] = sum(per_size) if cumulative else per_size[size]
    report.counts["cumulative"] = cumulative
    report.counts["per_size"] = per_size[1:]
    if list_trees:
        report.listing = [serialize_tree(t) for t in enumerate_accepted(a, size)]
    return report


@_guard
def cmd_check(report, machine_file, w, bounds=None):
    """Cross-check: ordered span must equal the NFTA's cumulative count."""
    m = load_machine(machine_file, bounds)
    n = size_bound(m)
    with _Timer(report, "span"):
        ordered = len(valid_outputs(m, w, m.bounds, "ordered"))
        unordered = len(valid_outputs(m, w, m.bounds, "unordered"))
    with _Timer(report, "reduce"):
        a = build_nfta(m, w, m.bounds)
    with _Timer(report, "count"):
        count = sum(count_by_size(determinize(a), n))
    with _Timer(report, "enumerate"):
        codes = {canonical_code(t, "unordered") for t in enumerate_accepted(a, n)}
    report.counts.update(span_ordered=ordered, span_unordered=unordered, nfta_count=count,
                         nfta_unordered_trees=len(codes), size_bound=n)
    if ordered != count:
        return _fail(report, EXIT_MISMATCH, f"ordered span {ordered} != NFTA count {count}")
    if unordered != ordered:
        report.info.append(f"unordered span {unordered} differs from ordered span {ordered}")
    if len(codes) != unordered:
        report.info.append(f"NFTA trees up to sibling order: {len(codes)} vs unordered span {unordered}")
    report.info.append(f"{ordered} = {count}")
    return report


@_guard
def cmd_dag(report, machine_file, w, bounds=None, export=None):
    """Computation DAG statistics, optionally exporting the edge list."""
    m = load_machine(machine_file, bounds)
    with _Timer(report, "build"):
        g = build_dag(m, w, m.bounds)
    stats = dag_stats(g)
    classes = stats.pop("classes")
    report.counts.update(stats)
    report.counts.update({f"class.{k}": v for k, v in classes.items()})
    if export:
        Path(export).write_text(export_edges(g), encoding="utf-8")
    return report


def build_parser():
    p = argparse.ArgumentParser(prog="spantl", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "machine-readable"), default="text")
    bounded = argparse.ArgumentParser(add_help=False)
    bounded.add_argument("--bounds", help="override, e.g. max_nodes=100,tape_cap=8,k=2")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common, bounded], help="check a machine file")
    s.add_argument("machine")

    for name, helptext in (("run", "enumerate computations"), ("span", "count distinct valid outputs"),
                           ("reduce", "compile to an NFTA"), ("check", "span vs NFTA cross-check"),
                           ("dag", "computation DAG statistics")):
        s = sub.add_parser(name, parents=[common, bounded], help=helptext)
        s.add_argument("machine")
        s.add_argument("input", nargs="?", default="")
        if name == "run":
            s.add_argument("--limit", type=int, default=20)
        if name == "span":
            s.add_argument("--mode", choices=("ordered", "unordered"), default="unordered")
            s.add_argument("--list", action="store_true")
        if name == "reduce":
            s.add_argument("--out")
        if name == "dag":
            s.add_argument("--export")

    s = sub.add_parser("count", parents=[common], help="count trees accepted by an NFTA")
    s.add_argument("nfta")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--cumulative", action="store_true")
    s.add_argument("--method", choices=("dp", "enum"), default="dp")
    s.add_argument("--list", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    c = args.command
    if c == "validate":
        report = cmd_validate(args.machine, bounds=args.bounds)
    elif c == "run":
        report = cmd_run(args.machine, args.input, bounds=args.bounds, limit=args.limit)
    elif c == "span":
        report = cmd_span(args.machine, args.input, mode=args.mode, bounds=args.bounds,
                          list_outputs=args.list)
    elif c == "reduce":
        report = cmd_reduce(args.machine, args.input, out=args.out, bounds=args.bounds)
    elif c == "count":
        report = cmd_count(args.nfta, args.size, cumulative=args.cumulative, method=args.method,
                           list_trees=args.list)
        if report.status == EXIT_BOUND:
            report.info.append("determinization cap hit; retry with --method enum")
    elif c == "check":
        report = cmd_check(args.machine, args.input, bounds=args.bounds)
    else:
        report = cmd_dag(args.machine, args.input, bounds=args.bounds, export=args.export)
    fmt = "json" if args.format in ("json", "machine-readable") else "text"
    print(report.render(fmt))
    return report.status


if __name__ == "__main__":
    sys.exit(main())
