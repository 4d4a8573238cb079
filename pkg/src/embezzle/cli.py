"""Command-line harness.

Every subcommand prints a deterministic report (sorted JSON keys, no
timestamps) and exits 0 on success, 1 when an invariant fails and 2 on
usage errors, including unreadable or malformed input files.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import games, io
from .construction import exact_construction
from .exact_scalar import scalar_to_json
from .kernel import local_from_resource
from .linalg import DenseState, schmidt_decompose
from .protocol import (
    Bounds, Protocol, explicit_protocol, identity_protocol, initial_state, isometry_witness,
    naive_swap_protocol, run_protocol, target_state, verify,
)
from .sparse_state import EXACT, FLOAT
from .vdh import CSV_HEADER, doubling, is_nondecreasing, vdh_sweep

OK, FAIL, USAGE = 0, 1, 2

PROTOCOLS = {
    "explicit": lambda mode: explicit_protocol(mode),
    "identity": lambda mode: identity_protocol(),
    "naive-swap": lambda mode: naive_swap_protocol(),
}


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield f"{prefix} = {json.dumps(obj)}"


def _text(obj) -> str:
    return "\n".join(_flatten(obj)) + "\n"


def _render(obj, fmt: str, csv_rows: Optional[List[str]] = None) -> str:
    if fmt == "json":
        return _dump(obj)
    if fmt == "text":
        return _text(obj)
    if csv_rows is None:
        raise UsageError("csv output is not available for this subcommand")
    return "\n".join(csv_rows) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _mode(args, default: str = EXACT, allowed=(EXACT, FLOAT)) -> str:
    mode = args.mode or default
    if mode not in allowed:
        raise UsageError(f"{args.command} does not support --mode {mode}")
    return mode


def _bounds(args) -> Bounds:
    if args.max_r < 0 or args.max_bits < 0:
        raise UsageError("label bounds must be nonnegative")
    return Bounds(args.max_r, args.max_bits)


# subcommands ---------------------------------------------------------------

def cmd_embezzle(args) -> int:
    mode = _mode(args)
    p = explicit_protocol(mode)
    if args.inject_fault:
        # test hook: Bob skips his swap, so the register never picks up the Bell half
        K = exact_construction()
        bob = local_from_resource(K.LB)
        p = Protocol(p.alice, bob, p.catalyst, 2, "explicit-faulty", p.sampler)
    start = initial_state(p)
    out = run_protocol(p)
    want = target_state(p)
    ok = out.equal(want)
    report = {
        "protocol": p.name,
        "mode": mode,
        "embezzled": ok,
        "output_terms": len(out),
        "output": [{"label": io.label_to_json(lab), "amp": scalar_to_json(v)} for lab, v in out],
    }
    if not ok:
        report["diff"] = [{"label": io.label_to_json(lab), "amp": scalar_to_json(v)}
                          for lab, v in (out - want)]
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        io.write_state(start, os.path.join(args.out, "input.jsonl"))
        io.write_state(out, os.path.join(args.out, "output.jsonl"))
    sys.stdout.write(_render(report, args.format))
    return OK if ok else FAIL


def cmd_verify(args) -> int:
    mode = _mode(args)
    p = PROTOCOLS[args.protocol](mode)
    if args.samples < 1 or args.N < 1:
        raise UsageError("--samples and --N must be positive")
    report = verify(p, args.seed, args.samples, args.N, _bounds(args))
    report["mode"] = p.mode
    _emit(_render(report, args.format), args.out)
    return OK if report["passed"] else FAIL


def cmd_vdh(args) -> int:
    _mode(args, FLOAT, (FLOAT,))
    if args.n_min < 1 or args.n_max < args.n_min:
        raise UsageError("need 1 <= --n-min <= --n-max")
    rows = vdh_sweep(doubling(args.n_min, args.n_max))
    monotone = is_nondecreasing(r.fidelity for r in rows)
    obj = {
        "rows": [{"n": r.n, "fidelity": r.fidelity,
                  "deviations": {"s00": r.deviations[0], "s10": r.deviations[1],
                                 "s01": r.deviations[2], "s11": r.deviations[3]}} for r in rows],
        "fidelity_nondecreasing": monotone,
    }
    fmt = args.format or "csv"
    _emit(_render(obj, fmt, [CSV_HEADER] + [r.csv() for r in rows]), args.out)
    if args.check_monotone and not monotone:
        return FAIL
    return OK


def cmd_game(args) -> int:
    if args.strategy == "perfect":
        _mode(args, EXACT, (EXACT,))
        st = games.perfect_strategy()
    else:
        _mode(args, FLOAT, (FLOAT,))
        if args.n < 1:
            raise UsageError("--n must be positive")
        st = games.vdh_strategy(args.n)
    cs = [args.input_c] if args.input_c is not None else [0, 1]
    results = [games.play(st, c) for c in cs]
    obj = {"strategy": st.name, "results": [r.to_json() for r in results]}
    rows = ["strategy,c,win_probability"] + [f"{st.name},{r.c},{float(complex(r.win_probability).real)!r}"
                                              for r in results]
    _emit(_render(obj, args.format or "json", rows), args.out)
    if args.strategy == "perfect" and any(r.win_probability != 1 for r in results):
        return FAIL
    return OK


def cmd_schmidt(args) -> int:
    _mode(args, FLOAT, (FLOAT,))
    if not args.state:
        raise UsageError("schmidt needs --state FILE")
    amps, dims = io.read_dense(args.state)
    cut = _parse_cut(args.cut, len(dims))
    try:
        sch = schmidt_decompose(DenseState(dims, amps), cut)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    coeffs = [float(v) for v in sch.coefficients]
    obj = {"dims": list(dims), "cut": cut, "coefficients": coeffs}
    _emit(_render(obj, args.format or "json", [",".join(repr(v) for v in coeffs)]), args.out)
    return OK


def _parse_cut(text: Optional[str], nregs: int) -> List[int]:
    if text is None:
        return list(range(max(1, nregs // 2)))
    try:
        cut = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"malformed --cut {text!r}") from None
    if not cut or any(i < 0 or i >= nregs for i in cut) or len(set(cut)) != len(cut):
        raise UsageError(f"invalid cut {cut} for {nregs} registers")
    return cut


def cmd_witness(args) -> int:
    mode = _mode(args)
    if args.N < 1:
        raise UsageError("--N must be positive")
    p = PROTOCOLS[args.protocol](mode)
    rep = isometry_witness(p, args.N)
    obj = rep.to_json()
    obj["protocol"] = p.name
    rows = [",".join(repr(float(complex(v).real)) for v in row) for row in rep.gram]
    _emit(_render(obj, args.format or "json", rows), args.out)
    return OK if rep.passed else FAIL


COMMANDS = {
    "embezzle": cmd_embezzle,
    "verify": cmd_verify,
    "vdh": cmd_vdh,
    "game": cmd_game,
    "schmidt": cmd_schmidt,
    "witness": cmd_witness,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=(EXACT, FLOAT), default=None,
                        help="scalar mode (default: exact where supported, else float)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--max-r", type=int, default=8, help="largest |r| in sampled labels")
    common.add_argument("--max-bits", type=int, default=8,
                        help="digits on each side of the point in sampled labels")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--out", default=None, help="output file (a directory for embezzle)")

    parser = argparse.ArgumentParser(prog="embezzle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embezzle", parents=[common], help="run the explicit protocol once")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("verify", parents=[common], help="commutation, unitarity, functional, witness")
    p.add_argument("--protocol", choices=sorted(PROTOCOLS), default="explicit")
    p.add_argument("--N", type=int, default=8)

    p = sub.add_parser("vdh", parents=[common], help="finite catalyst fidelity sweep over n = 2^k")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=4096)
    p.add_argument("--check-monotone", action="store_true",
                   help="exit 1 unless fidelity is nondecreasing")

    p = sub.add_parser("game", parents=[common], help="coherent embezzlement game")
    p.add_argument("--strategy", choices=("perfect", "vdh"), default="perfect")
    p.add_argument("--n", type=int, default=16, help="catalyst size for --strategy vdh")
    p.add_argument("--input-c", type=int, choices=(0, 1), default=None)

    p = sub.add_parser("schmidt", parents=[common], help="Schmidt coefficients of a dense state file")
    p.add_argument("--state", default=None)
    p.add_argument("--cut", default=None, help="comma-separated register indices on the left")

    p = sub.add_parser("witness", parents=[common], help="Gram matrix of the U00* orbit")
    p.add_argument("--protocol", choices=sorted(PROTOCOLS), default="explicit")
    p.add_argument("--N", type=int, default=8)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.format == "csv":
        parser.error("verify reports are json or text")
    if args.command in ("embezzle", "verify") and args.format is None:
        args.format = "json"
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"embezzle {args.command}: {exc}", file=sys.stderr)
        return USAGE
    except (io.StateFileError, OSError) as exc:
        print(f"embezzle {args.command}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
