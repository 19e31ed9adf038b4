"""Command-line interface: single expressions, batch files, JSON reports,
and a deterministic result cache keyed by canonical input."""

import argparse
import hashlib
import json
import os
import sys
import tempfile

from . import __version__
from .errors import (
    LctError,
    NonIsolatedError,
    ParseError,
    TruncationError,
    IrrationalExponentError,
)
from .poly import parse_polynomial
from .rationals import qstr
from .verdict import analyze, spectrum_selfcheck

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_RESOURCE = 2


def _build_parser():
    p = argparse.ArgumentParser(
        prog="lctsing",
        description=(
            "Exact analyzer for isolated hypersurface singularities: Milnor "
            "number, singularity spectrum, monodromy, logarithmic vector "
            "fields, and the logarithmic comparison theorem verdict."
        ),
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--expr", help="polynomial expression, e.g. 'x^3+y^3'")
    src.add_argument("--file", help="file with a vars: line and one expression")
    src.add_argument("--batch", help="file with a vars: line and one expression per line")
    p.add_argument("--vars", help="comma-separated variable names (overrides file header)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="one JSON report")
    fmt.add_argument("--json-lines", action="store_true",
                     help="one compact JSON report per input line")
    fmt.add_argument("--text", action="store_true", help="plain text (default)")
    p.add_argument("--truncation", type=int, default=None, metavar="K",
                   help="model depth override")
    p.add_argument("--x-degree", type=int, default=None, metavar="DX",
                   help="uniform x-degree cap override for the t-matrix")
    p.add_argument("--degree-bound", type=int, default=None, metavar="D",
                   help="syzygy degree bound for --logder")
    p.add_argument("--cache", metavar="DIR", default=None,
                   help="directory for the byte-identical result cache")
    p.add_argument("--selfcheck", action="store_true",
                   help="run the spectrum oracle/property suite")
    p.add_argument("--logder", action="store_true",
                   help="include logarithmic vector field diagnostics")
    p.add_argument("--version", action="version", version=f"lctsing {__version__}")
    return p


def _read_input_file(path):
    """Returns (varnames_or_None, list of expression lines)."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read().splitlines()
    varnames = None
    exprs = []
    for line in raw:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if varnames is None and line.lower().startswith("vars:"):
            varnames = [v.strip() for v in line[5:].split(",") if v.strip()]
            continue
        exprs.append(line)
    return varnames, exprs


def _canonical_key(expr, varnames, args):
    f = parse_polynomial(expr, varnames)
    terms = sorted((list(e), qstr(c)) for e, c in f.terms.items())
    doc = {
        "version": __version__,
        "vars": list(varnames),
        "terms": terms,
        "K": args.truncation,
        "Dx": args.x_degree,
        "degree_bound": args.degree_bound,
        "logder": bool(args.logder),
    }
    blob = json.dumps(doc, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def _cache_read(cache_dir, key):
    path = os.path.join(cache_dir, key + ".json")
    if os.path.exists(path):
        with open(path, "rb") as fh:
            return fh.read().decode("utf-8")
    return None


def _cache_write(cache_dir, key, payload):
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, key + ".json")
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload.encode("utf-8"))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _run_one(expr, varnames, args, compact):
    """Returns (output_text, exit_code)."""
    as_json = args.json or args.json_lines
    use_cache = bool(args.cache) and as_json
    cache_key = None
    if use_cache:
        cache_key = _canonical_key(expr, varnames, args)
        hit = _cache_read(args.cache, cache_key)
        if hit is not None:
            return hit, EXIT_OK
    rep = analyze(
        expr,
        varnames,
        K=args.truncation,
        Dx=args.x_degree,
        logder=args.logder,
        degree_bound=args.degree_bound,
    )
    out = rep.to_json(compact=compact) if as_json else rep.to_text()
    if use_cache:
        _cache_write(args.cache, cache_key, out)
    return out, EXIT_OK


def main(argv=None):
    args = _build_parser().parse_args(argv)
    varnames = None
    if args.vars:
        varnames = [v.strip() for v in args.vars.split(",") if v.strip()]
    try:
        if args.expr is not None:
            exprs = [args.expr]
            if varnames is None:
                print("error: --expr requires --vars", file=sys.stderr)
                return EXIT_INPUT
        else:
            path = args.file if args.file is not None else args.batch
            file_vars, exprs = _read_input_file(path)
            if varnames is None:
                varnames = file_vars
            if varnames is None:
                print("error: no variable declaration (vars: x,y,z)", file=sys.stderr)
                return EXIT_INPUT
            if not exprs:
                print("error: no expressions in input file", file=sys.stderr)
                return EXIT_INPUT
            if args.file is not None and len(exprs) > 1:
                print("error: --file expects a single expression; use --batch",
                      file=sys.stderr)
                return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    compact = bool(args.json_lines)
    code = EXIT_OK
    for expr in exprs:
        try:
            out, rc = _run_one(expr, varnames, args, compact)
            print(out)
            code = max(code, rc)
            if args.selfcheck:
                check = spectrum_selfcheck(expr, varnames, K=args.truncation)
                print(check.to_text(), file=sys.stderr)
                if not check.passed:
                    code = max(code, EXIT_RESOURCE)
        except (ParseError, NonIsolatedError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = max(code, EXIT_INPUT)
        except (TruncationError, IrrationalExponentError) as exc:
            print(f"resource error: {exc} "
                  f"(retry with a larger --truncation)", file=sys.stderr)
            code = max(code, EXIT_RESOURCE)
        except LctError as exc:
            print(f"internal error: {exc}", file=sys.stderr)
            code = max(code, EXIT_RESOURCE)
    return code


if __name__ == "__main__":
    sys.exit(main())
