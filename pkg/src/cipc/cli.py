"""Command-line front end.

Only the register and its hash configuration are ever written to disk or
printed; record contents never leave the process.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import experiments
from .errors import ConfigMismatch, InvalidL, Saturated, StateFormatError
from .estimators import estimate, recommend_register_size
from .hashing import HashConfig, hash_to_domain
from .oracle import ExactCounter
from .sketch import Sketch, deserialize, merge, serialize

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG_MISMATCH = 3
EXIT_SATURATED = 4
EXIT_IO = 5


class CLIError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def iter_records(stream):
    """Yield each line of a binary stream without its terminator."""
    for line in stream:
        if line.endswith(b"\n"):
            line = line[:-1]
            if line.endswith(b"\r"):
                line = line[:-1]
        yield line


def _open_input(path):
    if path is None or path == "-":
        return sys.stdin.buffer
    try:
        return open(path, "rb")
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from exc


def load_state(path) -> Sketch:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CLIError(f"cannot read state {path}: {exc.strerror}", EXIT_IO) from exc
    try:
        return deserialize(data)
    except (StateFormatError, InvalidL) as exc:
        raise CLIError(f"{path}: corrupt state file ({exc})", EXIT_IO) from exc


def write_state(path, sk: Sketch) -> None:
    """Write via a temporary file in the same directory, then rename over ``path``."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    try:
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(serialize(sk))
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise CLIError(f"cannot write state {path}: {exc.strerror}", EXIT_IO) from exc


def _emit(text, output):
    if output is None or output == "-":
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text)
    except OSError as exc:
        raise CLIError(f"cannot write {output}: {exc.strerror}", EXIT_IO) from exc


# --- subcommands --------------------------------------------------------------


def cmd_init(args):
    L = args.register_bits
    if L is None:
        if args.expected_count < 1:
            raise CLIError("--expected-count must be at least 1", EXIT_USAGE)
        L = recommend_register_size(args.expected_count)
    try:
        cfg = HashConfig(L)
    except InvalidL as exc:
        raise CLIError(str(exc), EXIT_USAGE) from exc
    write_state(args.out, Sketch(cfg))
    print(f"initialised {args.out} with L={L}", file=sys.stderr)


def cmd_add(args):
    sk = load_state(args.state)
    stream = _open_input(args.input)
    try:
        n = 0
        for record in iter_records(stream):
            sk.add(record)
            n += 1
    finally:
        if stream is not sys.stdin.buffer:
            stream.close()
    write_state(args.state, sk)
    print(f"added {n} records", file=sys.stderr)


def cmd_estimate(args):
    report = estimate(load_state(args.state))
    wants_cipc = args.estimator in ("cipc", "both")
    if args.format == "json":
        out = {"L": report.L, "k": report.k, "raw_indicator": report.raw_indicator,
               "saturated": report.saturated, "empty": report.empty}
        if args.estimator in ("pc", "both"):
            out["pc"] = report.pc_estimate
        if wants_cipc:
            out["cipc"] = report.cipc_floor
            out["cipc_unfloored"] = report.cipc_estimate
        print(json.dumps(out))
    else:
        print(f"L={report.L} k={report.k} 2^k={report.raw_indicator:.0f}")
        if args.estimator in ("pc", "both"):
            print(f"pc={round(report.pc_estimate)}")
        if wants_cipc and not report.saturated:
            print(f"cipc={report.cipc_floor}")
    if wants_cipc and report.saturated:
        raise CLIError(
            f"register saturated (all {report.L} bits set): the collision-included "
            "estimate is undefined; re-initialise with a larger --register-bits "
            "or --expected-count",
            EXIT_SATURATED,
        )


def cmd_merge(args):
    if len(args.states) < 2:
        raise CLIError("merge needs at least two state files", EXIT_USAGE)
    sketches = [load_state(p) for p in args.states]
    result = sketches[0]
    try:
        for other in sketches[1:]:
            result = merge(result, other)
    except ConfigMismatch as exc:
        raise CLIError(str(exc), EXIT_CONFIG_MISMATCH) from exc
    write_state(args.out, result)


def cmd_exact(args):
    stream = _open_input(args.input)
    counter = ExactCounter()
    try:
        counter.update(iter_records(stream))
    finally:
        if stream is not sys.stdin.buffer:
            stream.close()
    if args.register_bits is None:
        print(counter.count)
        return
    try:
        cfg = HashConfig(args.register_bits)
    except InvalidL as exc:
        raise CLIError(str(exc), EXIT_USAGE) from exc
    occupied = {hash_to_domain(r, cfg) for r in counter.seen}
    print(json.dumps({"distinct": counter.count, "L": cfg.register_bits,
                      "collisions": counter.count - len(occupied)}))


def _experiment_config(args):
    try:
        return experiments.ExperimentConfig(
            m_values=args.m_values,
            trials=args.trials,
            universe_max=args.universe_max,
            l_offset=args.l_offset,
            master_seed=args.seed,
        )
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from exc


def cmd_experiment(args):
    rows = experiments.run_table(_experiment_config(args))
    fmt = experiments.rows_to_json if args.format == "json" else experiments.rows_to_csv
    _emit(fmt(rows), args.output)
    if args.plot:
        from .plotting import plot_table

        plot_table(rows, args.plot)


def cmd_sweep(args):
    points = experiments.sweep_indicator(_experiment_config(args))
    fmt = experiments.sweep_to_json if args.format == "json" else experiments.sweep_to_csv
    _emit(fmt(points), args.output)
    if args.plot:
        from .plotting import plot_sweep

        plot_sweep(points, args.plot)


# --- parser -------------------------------------------------------------------


def _int_list(text):
    try:
        return [int(float(t)) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _experiment_flags(p):
    p.add_argument("--m-values", type=_int_list, default=list(experiments.DEFAULT_M_VALUES),
                   help="comma-separated true cardinalities")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--universe-max", type=int, default=200_000)
    p.add_argument("--l-offset", type=int, choices=(0, 1, 2), default=2,
                   help="register width is floor(log2 M) + offset")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", help="write data here instead of stdout")
    p.add_argument("--plot", metavar="PATH", help="also render a figure to PATH")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cipc",
        description="Count distinct records with a probabilistic counting register.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", help="create an empty state file")
    size = p.add_mutually_exclusive_group(required=True)
    size.add_argument("--register-bits", type=int, metavar="L")
    size.add_argument("--expected-count", type=int, metavar="M",
                      help="derive L = floor(log2 M) + 2")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("add", help="add newline-delimited records to a state")
    p.add_argument("--state", required=True)
    p.add_argument("--input", help="record file (default: stdin)")
    p.set_defaults(func=cmd_add)

    p = sub.add_parser("estimate", help="print the cardinality estimate")
    p.add_argument("--state", required=True)
    p.add_argument("--estimator", choices=("pc", "cipc", "both"), default="both")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("merge", help="OR together states with identical configuration")
    p.add_argument("--out", required=True)
    p.add_argument("states", nargs="+", metavar="STATE")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("exact", help="exact distinct count (keeps every record in memory)")
    p.add_argument("--input", help="record file (default: stdin)")
    p.add_argument("--register-bits", type=int, metavar="L",
                   help="also report hash collisions at this width")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("experiment", help="accuracy table over a grid of M")
    _experiment_flags(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("sweep", help="mean raw indicator 2^k over a grid of M")
    _experiment_flags(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CLIError as exc:
        print(f"cipc: error: {exc}", file=sys.stderr)
        return exc.code
    except Saturated as exc:
        print(f"cipc: error: {exc}", file=sys.stderr)
        return EXIT_SATURATED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
