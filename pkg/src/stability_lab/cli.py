"""Command-line front end.

Subcommands: parse, wind, certify, sweep, crystal, induce.  Exit codes:
0 success, 1 usage error, 2 mathematical failure (singular curve,
non-convergence, table inconsistency), 3 partial sweep failure.

Matrix sources are either a registered zoo family (``--family p2 --n 10``)
or a presentation file plus one ``cmatrix`` dump per generator.  Sweep
configuration can come from flags or from a key = value file (bracketed
section headers are tolerated and ignored); flags win.

The dimension cap (default 4096) is overridden with the environment
variable ``STABILITY_LAB_MAX_DIM``.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import _fmt
from .crystal import builtin_table, classify_all, rank_conditions
from .errors import (
    ConvergenceError,
    CurveResolutionError,
    NormalityError,
    SingularCurveError,
    SingularMatrixError,
    StabilityLabError,
    TableConsistencyError,
    WindingConsistencyError,
)
from .induce import induce_defect, load_action, load_rep
from .linalg import UnitaryTuple, load_matrix_file
from .relators import (
    Generator,
    exponent_sum,
    is_homogeneous,
    load_presentation,
    parse_word,
    relator_length,
    word_to_string,
)
from .winding import certify_obstruction, relator_defect, winding_sampled, winding_spectral
from .zoo import FAMILIES, bs23_commutator_gap, build_family

_MATH_ERRORS = (
    SingularCurveError,
    CurveResolutionError,
    WindingConsistencyError,
    ConvergenceError,
    SingularMatrixError,
    NormalityError,
    TableConsistencyError,
)

SWEEP_SCHEMA = "stability-lab v1"
_SWEEP_COLUMNS = (
    "family",
    "n",
    "dim",
    "defect",
    "wind_spectral",
    "wind_sampled",
    "verdict",
    "gap",
    "error",
)


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for
    mathematical failures and use 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=sorted(FAMILIES), help="zoo family name")
    p.add_argument("--n", type=int, help="family parameter n (l for nilpotent)")
    p.add_argument("--m", type=int, help="bs_mm twist exponent m")
    p.add_argument("--g", type=int, help="surface genus g")
    p.add_argument("--M", type=int, help="nilpotent commutator exponent M")


def _word_source_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--presentation", help="presentation file (gens:/rel: lines)")
    p.add_argument("--relator", type=int, default=0, help="relator index in the file")
    p.add_argument("--matrices", nargs="+", help="one cmatrix dump file per generator")
    p.add_argument(
        "--unitarity-tol", type=float, default=1e-8,
        help="unitarity tolerance for file-sourced matrices",
    )


def _resolve_word_and_tuple(args, parser: argparse.ArgumentParser):
    if args.family:
        con = build_family(args.family, n=args.n, m=args.m, g=args.g, M=args.M)
        if not con.test_relators:
            parser.error(f"family {args.family!r} has no designated homogeneous relator")
        return con.test_relators[0], con.unitaries
    if not args.presentation or not args.matrices:
        parser.error("need either --family or --presentation plus --matrices")
    pres = load_presentation(args.presentation)
    if not 0 <= args.relator < len(pres.relators):
        parser.error(
            f"relator index {args.relator} out of range; file has {len(pres.relators)}"
        )
    if len(args.matrices) != len(pres.generators):
        parser.error(
            f"need {len(pres.generators)} matrix files (one per generator), "
            f"got {len(args.matrices)}"
        )
    mats = tuple(load_matrix_file(path) for path in args.matrices)
    tup = UnitaryTuple(mats, pres.generator_names, args.unitarity_tol)
    return pres.relators[args.relator], tup


def _cmd_parse(args, parser) -> int:
    pres = load_presentation(args.file)
    relators = []
    for w in pres.relators:
        sums = {
            g.name: exponent_sum(w, i) for i, g in enumerate(pres.generators)
        }
        relators.append({
            "text": word_to_string(w, pres.generators),
            "letters": len(w.letters),
            "length": relator_length(w) if w.letters else None,
            "homogeneous": is_homogeneous(w),
            "exponent_sums": sums,
        })
    print(_fmt.dumps({
        "generators": [g.name for g in pres.generators],
        "relators": relators,
    }))
    return 0


def _cmd_wind(args, parser) -> int:
    word, tup = _resolve_word_and_tuple(args, parser)
    if args.method == "sampled":
        res = winding_sampled(word, tup)
    else:
        res = winding_spectral(word, tup)
    print(_fmt.dumps({
        "wind": res.wind,
        "method": res.method,
        "min_log_magnitude": res.min_log_magnitude,
        "samples": res.sample_count,
        "n": tup.dim,
    }))
    return 0


def _cmd_certify(args, parser) -> int:
    word, tup = _resolve_word_and_tuple(args, parser)
    report = certify_obstruction(word, tup, cross_check=args.cross_check)
    print(_fmt.dumps(report.to_json_dict()))
    return 0


def _cmd_crystal(args, parser) -> int:
    rows = classify_all()
    if args.format == "json":
        payload = []
        for rec, verdict in rows:
            payload.append({
                "name": rec.name,
                "ranks": {
                    "k0_a2": rec.k0_a2.rank,
                    "k0_a1": rec.k0_a1.rank,
                    "k1_a2": rec.k1_a2.rank,
                    "k1_a1": rec.k1_a1.rank,
                },
                "torsion": {
                    "k0_a2": list(rec.k0_a2.torsion),
                    "k0_a1": list(rec.k0_a1.torsion),
                    "k1_a2": list(rec.k1_a2.torsion),
                    "k1_a1": list(rec.k1_a1.torsion),
                },
                "s": rec.sheets,
                "cond_i": verdict.cond_i,
                "cond_ii": verdict.cond_ii,
                "verdict": verdict.status,
                "shaded": rec.shaded,
            })
        print(_fmt.dumps(payload))
        return 0
    header = (
        f"{'name':<6} {'K0(A2)':<8} {'K0(A1)':<8} {'K1(A2)':<8} {'K1(A1)':<8} "
        f"{'s':<2} {'i':<5} {'ii':<5} {'verdict':<17} shaded"
    )
    print(header)
    print("-" * len(header))
    for rec, verdict in rows:
        print(
            f"{rec.name:<6} {str(rec.k0_a2):<8} {str(rec.k0_a1):<8} "
            f"{str(rec.k1_a2):<8} {str(rec.k1_a1):<8} {rec.sheets:<2} "
            f"{str(verdict.cond_i).lower():<5} {str(verdict.cond_ii).lower():<5} "
            f"{verdict.status:<17} {str(rec.shaded).lower()}"
        )
    return 0


def _cmd_induce(args, parser) -> int:
    rep = load_rep(args.rep, args.unitarity_tol)
    h_gens = tuple(Generator(name) for name in rep.labels)
    action = load_action(args.action, h_gens)
    g_word = parse_word(args.g, action.g_generators)
    gp_word = parse_word(args.gp, action.g_generators)
    defect = induce_defect(rep, action, g_word, gp_word)
    print(_fmt.dumps({
        "index": action.index,
        "dim": action.index * rep.dim,
        "defect": defect,
    }))
    return 0


def _sweep_row(family: str, n: int, args) -> dict:
    row = {key: None for key in _SWEEP_COLUMNS}
    row["family"] = family
    row["n"] = n
    started = time.perf_counter()
    try:
        con = build_family(family, n=n, m=args.m, g=args.g, M=args.M)
        row["dim"] = con.unitaries.dim
        if con.defect_relator is not None:
            row["defect"] = relator_defect(con.defect_relator, con.unitaries)
        if family == "bs23":
            row["gap"] = bs23_commutator_gap(n)
        if con.test_relators:
            word = con.test_relators[0]
            if "spectral" in args.methods_set:
                row["wind_spectral"] = winding_spectral(word, con.unitaries).wind
            if "sampled" in args.methods_set:
                row["wind_sampled"] = winding_sampled(word, con.unitaries).wind
            row["verdict"] = certify_obstruction(word, con.unitaries).verdict
    except StabilityLabError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    if args.timing:
        row["wall_ms"] = round((time.perf_counter() - started) * 1e3, 3)
    return row


def _read_config(path) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line or (line.startswith("[") and line.endswith("]")):
                continue
            if "=" not in line:
                raise StabilityLabError(f"{path}: line {lineno}: expected key = value")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip().strip('"')
    return values


_SWEEP_DEFAULTS = {
    "n_step": 1,
    "methods": "spectral,sampled",
    "format": "csv",
    "parallelism": 1,
}


def _apply_config(args, parser) -> None:
    """Merge config-file values under flags, then fill remaining defaults."""
    if args.config:
        conf = _read_config(args.config)
        ints = {"n_start", "n_end", "n_step", "m", "g", "M", "parallelism"}
        for key, value in conf.items():
            if not hasattr(args, key):
                parser.error(f"unknown config key {key!r}")
            if getattr(args, key) in (None, False):
                if key in ints:
                    value = int(value)
                elif key == "timing":
                    value = value.lower() in ("1", "true", "yes")
                setattr(args, key, value)
    for key, default in _SWEEP_DEFAULTS.items():
        if getattr(args, key) is None:
            setattr(args, key, default)


def _cmd_sweep(args, parser) -> int:
    _apply_config(args, parser)
    if not args.family:
        parser.error("sweep needs --family (flag or config)")
    if args.n_start is None or args.n_end is None:
        parser.error("sweep needs --n-start and --n-end (flags or config)")
    if args.n_step < 1 or args.n_end < args.n_start:
        parser.error("empty sweep range")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if not methods or any(m not in ("spectral", "sampled") for m in methods):
        parser.error("--methods must be a subset of spectral,sampled")
    args.methods_set = frozenset(methods)
    values = list(range(args.n_start, args.n_end + 1, args.n_step))
    if args.parallelism < 1:
        parser.error("--parallelism must be >= 1")
    if args.parallelism == 1:
        rows = [_sweep_row(args.family, n, args) for n in values]
    else:
        with ThreadPoolExecutor(max_workers=args.parallelism) as pool:
            rows = list(pool.map(lambda n: _sweep_row(args.family, n, args), values))
    columns = _SWEEP_COLUMNS + (("wall_ms",) if args.timing else ())
    if args.format == "json":
        text = _fmt.dumps({
            "schema": SWEEP_SCHEMA,
            "rows": [{c: row.get(c) for c in columns} for row in rows],
        })
    else:
        lines = [f"# {SWEEP_SCHEMA}", ",".join(columns)]
        for row in rows:
            lines.append(",".join(_fmt.csv_cell(row.get(c)) for c in columns))
        text = "\n".join(lines)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 3 if any(row["error"] is not None for row in rows) else 0


def build_parser() -> _Parser:
    parser = _Parser(prog="stability-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse a presentation file and report its relators")
    p.add_argument("file")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("wind", help="winding number of a homogeneous relator")
    _family_args(p)
    _word_source_args(p)
    p.add_argument("--method", choices=("spectral", "sampled"), default="spectral")
    p.set_defaults(func=_cmd_wind)

    p = sub.add_parser("certify", help="emit an obstruction certificate")
    _family_args(p)
    _word_source_args(p)
    p.add_argument("--cross-check", action="store_true",
                   help="also run the sampled algorithm and compare")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("sweep", help="sweep a family parameter, emit CSV/JSON")
    _family_args(p)
    p.add_argument("--n-start", type=int)
    p.add_argument("--n-end", type=int)
    p.add_argument("--n-step", type=int)
    p.add_argument("--methods", help="comma subset of spectral,sampled (default both)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--output", help="write to this path instead of stdout")
    p.add_argument("--parallelism", type=int)
    p.add_argument("--timing", action="store_true",
                   help="append a wall_ms column (breaks run-to-run byte identity)")
    p.add_argument("--config", help="key = value config file; flags win")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("crystal", help="print the wallpaper K-rank table with verdicts")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_crystal)

    p = sub.add_parser("induce", help="induced-representation defect from files")
    p.add_argument("--rep", required=True, help="subgroup rep file")
    p.add_argument("--action", required=True, help="coset action file")
    p.add_argument("--g", required=True, help="first word over the G-generators")
    p.add_argument("--gp", required=True, help="second word over the G-generators")
    p.add_argument("--unitarity-tol", type=float, default=1e-8)
    p.set_defaults(func=_cmd_induce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except _MATH_ERRORS as exc:
        print(f"stability-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (StabilityLabError, OSError) as exc:
        print(f"stability-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
