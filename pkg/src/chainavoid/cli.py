"""Command-line interface.

Subcommands: ``count``, ``table``, ``csigma``, ``compcount``, ``conjecture`` and
``bfile``.  Exit codes: 0 success, 1 usage or parse error, 2 verification
mismatch, 3 brute-force bound exceeded, 4 network unavailable.
"""

import argparse
import csv
import io
import json
import os
import sys
import time
import warnings
from dataclasses import dataclass, field

from . import __version__
from .chains import (
    P312_321,
    ChainSpec,
    conjecture_54321_132,
    conjecture_cube_2143,
    count_chain_bruteforce,
    fast_path,
)
from .compcount import count_avoiders, count_avoiders_bruteforce
from .compositions import CompositionSet
from .errors import BOUNDS, BoundExceededError, NetworkUnavailableError, NotInOmegaError, ParseError
from .oeis import compare, fetch_bfile
from .omega import c_of_sigma, omega_decompose
from .perm import PatternSet, Permutation
from .sequences import FORMULAS, TABLE1_SIGMAS, TABLE2_SIGMAS

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_BOUND, EXIT_NETWORK = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    query: dict
    rows: list = field(default_factory=list)
    timing_ms: int = 0
    format: str = "text"
    mismatch: bool = False

    def to_json(self):
        doc = {"query": self.query, "rows": self.rows,
               "timing_ms": self.timing_ms, "version": __version__}
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def columns(self):
        cols = []
        for row in self.rows:
            cols.extend(k for k in row if k not in cols)
        return cols

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        cols = self.columns()
        writer.writerow(cols)
        for row in self.rows:
            writer.writerow([_cell(row.get(c, "")) for c in cols])
        return buf.getvalue()

    def to_text(self):
        lines = [f"# {k}: {_cell(v)}" for k, v in self.query.items()]
        cols = self.columns()
        if cols:
            table = [cols] + [[_cell(row.get(c, "")) for c in cols] for row in self.rows]
            widths = [max(len(r[i]) for r in table) for i in range(len(cols))]
            for r in table:
                lines.append("  ".join(x.rjust(w) for x, w in zip(r, widths)).rstrip())
        return "\n".join(lines) + "\n"

    def to_bfile(self):
        missing = [r for r in self.rows if "n" not in r or "value" not in r]
        if missing:
            raise UsageError("bfile output needs single-valued rows; use --format csv or json")
        return "".join(f"{r['n']} {r['value']}\n" for r in self.rows)

    def render(self):
        return {"json": self.to_json, "csv": self.to_csv,
                "bfile": self.to_bfile, "text": self.to_text}[self.format]()


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    return str(v)


# -- argument helpers -----------------------------------------------------------

def _n_values(args):
    if args.n is not None and args.n_range is not None:
        raise UsageError("give either --n or --n-range, not both")
    if args.n is not None:
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        return [args.n]
    if args.n_range is None:
        raise UsageError("one of --n or --n-range is required")
    try:
        a, b = (int(x) for x in args.n_range.split(".."))
    except ValueError:
        raise UsageError(f"bad --n-range {args.n_range!r}; expected a..b") from None
    if a < 0 or b < a:
        raise UsageError(f"bad --n-range {args.n_range!r}")
    return list(range(a, b + 1))


def _pattern_level(text):
    if text.strip() in ("-", "", "∅"):
        return None
    return PatternSet.parse(text)


def _chain_from_args(args):
    levels = [_pattern_level(args.avoid) if args.avoid is not None else None]
    levels.extend(_pattern_level(t) for t in (args.power_avoid or []))
    try:
        return ChainSpec(tuple(levels))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _count_with(method, spec, n, workers):
    if method == "recurrence":
        fp = fast_path(spec)
        if fp is None:
            raise UsageError(f"no recurrence fast path for {spec}")
        return fp(n)
    if method == "comp-brute":
        if spec.level1 != P312_321:
            raise UsageError("comp-brute needs level 1 to be exactly 312;321")
        return count_chain_bruteforce(n, spec, restrict_to_level1=True, workers=workers)
    if method == "perm-brute":
        return count_chain_bruteforce(n, spec, restrict_to_level1=True, workers=workers)
    if method == "perm-brute-full":
        return count_chain_bruteforce(n, spec, restrict_to_level1=False, workers=workers)
    raise UsageError(f"unknown method {method!r}")


def _auto_method(spec):
    if fast_path(spec) is not None:
        return "recurrence"
    if spec.level1 == P312_321:
        return "comp-brute"
    return "perm-brute"


def _oracle_for(method, spec):
    """The next-slower independent method."""
    if method == "recurrence":
        return "comp-brute" if spec.level1 == P312_321 else "perm-brute"
    if method == "comp-brute":
        return "perm-brute-full" if spec.level1 == P312_321 else None
    if method == "perm-brute" and spec.level1 is not None:
        return "perm-brute-full"
    return None


def _verify_cell(row, oracle, value):
    row["oracle"] = str(oracle.count)
    row["oracle_method"] = oracle.method
    row["match"] = oracle.count == value
    return row["match"]


# -- commands ---------------------------------------------------------------------

def cmd_count(args):
    spec = _chain_from_args(args)
    ns = _n_values(args)
    method = _auto_method(spec) if args.method == "auto" else args.method
    oracle = _oracle_for(method, spec) if args.verify else None
    if args.verify and oracle is None:
        raise UsageError(f"no slower oracle available to verify method {method}")
    report = RunReport({"command": "count", "chain": str(spec), "method": method,
                        "n": [str(n) for n in ns], "verify": bool(args.verify)})
    for n in ns:
        res = _count_with(method, spec, n, args.threads)
        row = {"n": str(n), "value": str(res.count), "method": res.method}
        if oracle:
            ok = _verify_cell(row, _count_with(oracle, spec, n, args.threads), res.count)
            report.mismatch |= not ok
        report.rows.append(row)
    return report


def _table_spec(preset, sigma):
    level1 = "312;321" if preset == "table1" else "312;4321"
    return ChainSpec((PatternSet.parse(level1), PatternSet([Permutation(sigma)])))


def _oeis_column(ident, values, offline):
    f = FORMULAS[ident]
    if f.oeis_id is None:
        return {}
    bfile = fetch_bfile(f.oeis_id, offline=offline)
    valid = {n: v for n, v in values.items() if n >= f.start}
    if not valid:
        return {}
    try:
        cmp = compare(valid, bfile, f.oeis_shift, f.oeis_adjust)
    except ValueError:
        return {}
    return {n: (exp, ok) for n, _, exp, ok in cmp.rows}


def cmd_table(args):
    preset = args.preset
    sigmas = TABLE1_SIGMAS if preset == "table1" else TABLE2_SIGMAS
    start = 2 if preset == "table1" else 1
    ns = list(range(start, args.n_max + 1))
    report = RunReport({"command": "table", "preset": preset, "n_max": str(args.n_max),
                        "verify": bool(args.verify), "oeis": bool(args.oeis)})
    columns = {}
    for sigma in sigmas:
        spec = _table_spec(preset, sigma)
        fp = fast_path(spec)
        columns[sigma] = {n: fp(n).count for n in ns}
    oracles = {}
    if args.verify:
        method = "comp-brute" if preset == "table1" else "perm-brute"
        bound = BOUNDS.compositions if preset == "table1" else BOUNDS.restricted
        for sigma in sigmas:
            spec = _table_spec(preset, sigma)
            oracles[sigma] = {n: _count_with(method, spec, n, args.threads).count
                              for n in ns if n <= bound}
    oeis_cols = {}
    if args.oeis:
        for sigma in sigmas:
            oeis_cols[sigma] = _oeis_column(f"{'Table1' if preset == 'table1' else 'Table2'}-{sigma}",
                                            columns[sigma], args.offline)
    for n in ns:
        row = {"n": str(n)}
        for sigma in sigmas:
            row[sigma] = str(columns[sigma][n])
            if args.verify:
                if n in oracles[sigma]:
                    ok = oracles[sigma][n] == columns[sigma][n]
                    row[f"{sigma}_oracle"] = str(oracles[sigma][n])
                    row[f"{sigma}_match"] = ok
                    report.mismatch |= not ok
                else:
                    row[f"{sigma}_oracle"] = ""
                    row[f"{sigma}_match"] = ""
            if args.oeis:
                exp, ok = oeis_cols[sigma].get(n, ("", ""))
                row[f"{sigma}_oeis"] = str(exp)
                row[f"{sigma}_oeis_match"] = ok
                if ok is False:
                    report.mismatch = True
        report.rows.append(row)
    return report


def cmd_csigma(args):
    sigma = Permutation.parse(args.sigma)
    decomposition = omega_decompose(sigma, strict=True)
    comps = c_of_sigma(sigma)
    report = RunReport({"command": "csigma", "sigma": sigma.compact(),
                        "blocks": " + ".join(f"{b.permutation().compact()}[{b.kind.name}]"
                                             for b in decomposition.blocks),
                        "base": "(" + str(decomposition.base_composition()) + ")",
                        "size": str(len(comps))})
    for i, c in enumerate(comps, 1):
        report.rows.append({"index": str(i), "composition": "(" + str(c) + ")"})
    return report


def cmd_compcount(args):
    try:
        comps = CompositionSet.parse(args.avoid_comps)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if not comps:
        raise UsageError("--avoid-comps needs at least one composition")
    ns = _n_values(args)
    report = RunReport({"command": "compcount", "avoid": str(comps), "method": args.method,
                        "n": [str(n) for n in ns], "verify": bool(args.verify)})
    for n in ns:
        if args.method == "recurrence":
            res = count_avoiders(n, comps)
        else:
            res = count_avoiders_bruteforce(n, comps)
        row = {"n": str(n), "value": str(res.count), "method": res.method}
        if args.verify:
            oracle = count_avoiders_bruteforce(n, comps) if args.method == "recurrence" \
                else count_avoiders(n, comps)
            report.mismatch |= not _verify_cell(row, oracle, res.count)
        report.rows.append(row)
    return report


CONJECTURES = ("cube-2143", "chain-54321-132")


def cmd_conjecture(args):
    if args.id not in CONJECTURES:
        raise UsageError(f"unknown conjecture id {args.id!r}; valid ids: {', '.join(CONJECTURES)}")
    report = RunReport({"command": "conjecture", "id": args.id, "n_max": str(args.n_max)})
    if args.id == "cube-2143":
        for n in range(1, args.n_max + 1):
            r = conjecture_cube_2143(n, workers=args.threads)
            row = {"n": str(n), "left": str(r.left), "right": str(r.right), "match": r.match}
            row["left_full"] = "" if r.left_full is None else str(r.left_full)
            row["left_consistent"] = "" if r.left_full is None else r.left_full == r.left
            report.rows.append(row)
    else:
        for r in conjecture_54321_132(args.n_max, workers=args.threads):
            report.rows.append({
                "n": str(r.n), "value": str(r.value),
                "predicted": "" if r.predicted is None else str(r.predicted),
                "match": "" if r.match is None else r.match})
    return report


def cmd_bfile(args):
    args.format = "bfile"
    if args.preset_row:
        ident = _preset_ident(args.preset_row)
        table, sigma = ident.split("-")
        spec = _table_spec("table1" if table == "Table1" else "table2", sigma)
    else:
        spec = _chain_from_args(args)
    method = _auto_method(spec)
    report = RunReport({"command": "bfile", "chain": str(spec), "offset": str(args.offset)})
    for n in range(args.offset, args.n_max + 1):
        report.rows.append({"n": str(n), "value": str(_count_with(method, spec, n, args.threads).count)})
    return report


def _preset_ident(text):
    table, _, sigma = text.partition("-")
    ident = f"{table[:1].upper()}{table[1:].lower()}-{sigma}"
    if ident not in FORMULAS:
        raise UsageError(f"unknown preset row {text!r}; e.g. table1-231 or table2-312")
    return ident


# -- parser -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_options(parser, defaults):
    sup = None if defaults else argparse.SUPPRESS
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1 if defaults else sup,
                        help="worker processes for brute-force counting")
    parser.add_argument("--format", choices=["text", "csv", "json", "bfile"],
                        default="text" if defaults else sup)
    parser.add_argument("--offline", action="store_true", default=False if defaults else sup,
                        help="never touch the network; use cache and bundled fixtures")
    parser.add_argument("--max-brute", type=int, default=None if defaults else sup,
                        help="override every brute-force size bound")


def build_parser():
    parser = _Parser(prog="chainavoid", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    _global_options(parser, True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _global_options(p, False)
        return p

    def add_n(p):
        p.add_argument("--n", type=int)
        p.add_argument("--n-range", metavar="A..B")

    p = add("count", "count chain avoiders")
    p.add_argument("--avoid", metavar="PATTERNS", help="level-1 patterns, e.g. '312;321'")
    p.add_argument("--power-avoid", action="append", metavar="PATTERNS",
                   help="patterns for the next power; repeat per level, '-' for none")
    add_n(p)
    p.add_argument("--method", default="auto",
                   choices=["auto", "recurrence", "comp-brute", "perm-brute"])
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_count)

    p = add("table", "reproduce a table of counts")
    p.add_argument("--preset", required=True, choices=["table1", "table2"])
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--oeis", action="store_true")
    p.set_defaults(func=cmd_table)

    p = add("csigma", "show the composition set C(sigma)")
    p.add_argument("--sigma", required=True)
    p.set_defaults(func=cmd_csigma)

    p = add("compcount", "count compositions avoiding a set of compositions")
    p.add_argument("--avoid-comps", required=True, metavar="SET", help="e.g. '3,2;6'")
    add_n(p)
    p.add_argument("--method", default="recurrence", choices=["recurrence", "brute"])
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_compcount)

    p = add("conjecture", "compare a conjecture against brute force")
    p.add_argument("--id", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_conjecture)

    p = add("bfile", "emit counts in OEIS b-file format")
    p.add_argument("--avoid", metavar="PATTERNS")
    p.add_argument("--power-avoid", action="append", metavar="PATTERNS")
    p.add_argument("--preset-row", metavar="ROW", help="e.g. table1-231")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--offset", type=int, default=0)
    p.set_defaults(func=cmd_bfile)
    return parser


def run(argv=None):
    """Parse ``argv``, run the command and return ``(exit_code, report_or_None)``."""
    args = build_parser().parse_args(argv)
    saved = (BOUNDS.full, BOUNDS.restricted, BOUNDS.compositions)
    if args.max_brute is not None:
        BOUNDS.full = BOUNDS.restricted = BOUNDS.compositions = args.max_brute
    start = time.perf_counter()
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            report = args.func(args)
        report.timing_ms = int((time.perf_counter() - start) * 1000)
        report.format = args.format
        sys.stdout.write(report.render())
    except (UsageError, ParseError, NotInOmegaError) as exc:
        print(f"chainavoid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    except BoundExceededError as exc:
        print(f"chainavoid: bound exceeded: {exc} (raise it with --max-brute)", file=sys.stderr)
        return EXIT_BOUND, None
    except NetworkUnavailableError as exc:
        print(f"chainavoid: network unavailable: {exc}", file=sys.stderr)
        return EXIT_NETWORK, None
    finally:
        BOUNDS.full, BOUNDS.restricted, BOUNDS.compositions = saved
    if report.mismatch and args.command != "conjecture":
        print("chainavoid: verification mismatch", file=sys.stderr)
        return EXIT_MISMATCH, report
    return EXIT_OK, report


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
