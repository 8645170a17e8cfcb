"""``lnqec`` command-line front end.

Subcommands: import, table, verify, decode, simulate, compare. Matrix files
use the plain-text or alist formats of :mod:`lnqec.io`; a quaternary file
gives a trace parity-check construction, a binary file gives a binary pair
(with ``--pair`` naming the second code, or the same code twice).
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import json
import sys
from pathlib import Path

import numpy as np

from . import codes, gf, io
from .channel import NoiseModel, asymmetric_compare, monte_carlo
from .decoders import SumProductConfig, make_decoder, sp_decode
from .exceptions import LNQECError
from .verify import verify_construction

DEFAULT_SEED = 20240607
CSV_COLUMNS = (
    "construction", "n", "k", "aux", "physical", "t",
    "p_aux_z", "p_x", "p_z", "p_y", "trials", "failures", "rate", "ci_low", "ci_high", "seed",
)  # fmt: skip


class UsageError(LNQECError):
    pass


def _load(path: str, field: int | None, d: int | None = None) -> codes.LinearCode:
    H, file_field = io.read_matrix(path)
    field = field or file_field
    if field == 2:
        if H.max(initial=0) > 1:
            raise UsageError(f"{path} has GF(4) entries but --field 2 was given")
        return codes.import_binary(H, d)
    return codes.import_quaternary(H, d)


def _construction(args, path: str | None = None, pair: str | None = None):
    path = path or args.path
    pair = pair if pair is not None else getattr(args, "pair", None)
    code = _load(path, args.field)
    if code.field == 4:
        if pair:
            raise UsageError("--pair only applies to binary codes")
        return codes.build_trace_pcm(code), Path(path).stem
    other = _load(pair, 2) if pair else code
    name = Path(path).stem if not pair else f"{Path(path).stem}+{Path(pair).stem}"
    return codes.build_binary_pair(code, other), name


AUTO_DISTANCE_LIMIT = 1 << 16


def _distance(code: codes.LinearCode, d: int | None = None, force: bool = False) -> codes.LinearCode:
    """Attach ``d`` if given, else enumerate codewords when that is cheap (or forced)."""
    if code.d is not None:
        return code
    if d is not None:
        return code.with_distance(d)
    if code.k > 0 and (force or code.field**code.k <= AUTO_DISTANCE_LIMIT):
        return code.with_distance(codes.min_distance(code))
    return code


def _with_distance(construction, d: int | None = None, force: bool = False):
    if isinstance(construction, codes.TracePcm):
        code = _distance(construction.code, d, force)
        return construction if code is construction.code else codes.build_trace_pcm(code)
    c0 = _distance(construction.code0, d, force)
    c1 = _distance(construction.code1, d, force)
    if c0 is construction.code0 and c1 is construction.code1:
        return construction
    return codes.build_binary_pair(c0, c1)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------


def cmd_import(args) -> int:
    code = _load(args.path, args.field, args.d)
    if args.distance:
        code = _distance(code, force=True)
    rank = code.H.shape[0]
    info = {
        "n": code.n,
        "k": code.k,
        "field": code.field,
        "rank": rank,
        "redundant_rows": code.redundancy,
        "permutation": [int(p) for p in code.perm],
        "d": code.d,
    }
    if code.field == 4:
        pcm = codes.build_trace_pcm(code)
        info.update(aux=pcm.aux, physical=pcm.physical)
    if args.format == "json":
        _emit(json.dumps(info, indent=2) + "\n", args.out)
        return 0
    head = f"n={code.n} k={code.k}"
    if code.field == 4:
        head += f" aux={info['aux']} physical={info['physical']}"
    lines = [head, f"rank={rank} redundant_rows={code.redundancy} perm={','.join(map(str, info['permutation']))}"]
    if code.d is not None:
        lines.append(f"d={code.d}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_table(args) -> int:
    rows = []
    for path in args.paths:
        construction, name = _construction(args, path)
        construction = _with_distance(construction)
        s = codes.parameter_summary(construction)
        rows.append({"construction": name, "physical": s.physical_qubits, "logical": s.logical_qubits, "aux": s.aux_qubits, "t": _fmt_t(s.t)})
    if args.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n", args.out)
    elif args.format == "csv":
        _emit(_csv(rows, ("construction", "physical", "logical", "aux", "t")), args.out)
    else:
        lines = [f"{r['construction']}: physical={r['physical']} logical={r['logical']} aux={r['aux']} t={r['t']}" for r in rows]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args, construction=None) -> int:
    """Exit 0 exactly when every check passes. ``construction`` overrides the file (for tests)."""
    if construction is None:
        construction = _with_distance(_construction(args)[0])
    report = verify_construction(construction, trials=args.trials, seed=args.seed, cap=args.cap)
    if args.format == "json":
        _emit(json.dumps(report.as_dict(), indent=2) + "\n", args.out)
    else:
        lines = [report.construction] + [f"{c.status:7s} {c.name} ({c.count}) {c.detail}".rstrip() for c in report.checks]
        lines.append("PASS" if report.passed else "FAIL: " + ", ".join(report.failed))
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.passed else 1


def _file_syndrome(code: codes.LinearCode, word: np.ndarray) -> np.ndarray:
    """Syndrome of a file-order word against every row of the imported matrix."""
    H = code.unpermuted()
    if code.field == 2:
        return gf.gf2_matmul(H, word)
    prod = gf.gf4_matmul(H, word[:, None])[:, 0]
    return np.concatenate([gf.trace(prod), gf.trace(gf.gf4_mul(gf.OMEGA, prod))])


def cmd_decode(args) -> int:
    """Decode a syndrome given over the rows of the file.

    Binary: one bit per row. Quaternary: ``Tr(h_i e)`` for every row ``h_i``,
    then ``Tr(w h_i e)`` for every row. The decoded word must reproduce the
    whole syndrome, redundant rows included, or the result is a decode failure.
    """
    code = _load(args.path, args.field, args.d)
    syndrome = np.array([int(c) for c in args.syndrome.replace(",", "")], dtype=np.uint8)
    m = code.H.shape[0] + code.redundancy
    if syndrome.size != (m if code.field == 2 else 2 * m):
        raise UsageError(f"syndrome must have {m if code.field == 2 else 2 * m} bits")
    if args.method == "bp":
        if code.field != 2:
            raise UsageError("sum-product decoding needs a binary code")
        cfg = SumProductConfig(max_iterations=args.iterations, prior=args.prior)
        word, _ = sp_decode(code.unpermuted(), syndrome, cfg)
    else:
        if args.t is None:
            code = _distance(code, force=True)
        construction = codes.build_trace_pcm(code) if code.field == 4 else code
        kept = code.row_order[: code.H.shape[0]]
        rows = kept if code.field == 2 else np.concatenate([kept, m + kept])
        est, ok = make_decoder(construction, t=args.t).decode_batch(syndrome[rows][None, :])
        word = est[0][gf.permutation_inverse(code.perm)] if ok[0] else None
    if word is not None and not np.array_equal(_file_syndrome(code, word), syndrome):
        word = None
    result = {"syndrome": syndrome.tolist(), "ok": word is not None, "error": None if word is None else [gf.gf4_symbol(a) for a in word]}
    if args.format == "json":
        _emit(json.dumps(result) + "\n", args.out)
    else:
        _emit(("decode_failure" if word is None else " ".join(result["error"])) + "\n", args.out)
    return 0 if word is not None else 1


def _noise_models(args) -> list[tuple[float, NoiseModel]]:
    if args.sweep:
        return [(p, NoiseModel.depolarizing(p)) for p in (float(v) for v in args.sweep.split(","))]
    return [(None, NoiseModel(args.p_aux_z, args.p_x, args.p_z, args.p_y))]


def _fmt_t(t) -> str:
    if isinstance(t, tuple):
        return "/".join("" if v is None else str(v) for v in t)
    return "" if t is None else str(t)


def _row(name: str, construction, model: NoiseModel, report) -> dict:
    if isinstance(construction, codes.TracePcm):
        n, t = str(construction.n), _fmt_t(construction.code.t)
    else:
        n = f"{construction.code0.n}/{construction.code1.n}"
        t = _fmt_t((construction.code0.t, construction.code1.t))
    return {
        "construction": name, "n": n, "k": construction.k, "aux": construction.aux,
        "physical": construction.physical, "t": t,
        "p_aux_z": repr(model.aux_pz), "p_x": repr(model.data_px), "p_z": repr(model.data_pz), "p_y": repr(model.data_py),
        "trials": report.trials, "failures": report.failures, "rate": repr(report.rate),
        "ci_low": repr(report.ci_low), "ci_high": repr(report.ci_high), "seed": report.seed,
    }  # fmt: skip


def _csv(rows: list[dict], columns) -> str:
    buf = _stdio.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _write_reports(rows: list[dict], extra: list[dict], args) -> None:
    if args.format == "json":
        doc = [dict(r, **e) for r, e in zip(rows, extra)]
        _emit(json.dumps(doc if len(doc) != 1 else doc[0], indent=2) + "\n", args.out)
    else:
        _emit(_csv(rows, CSV_COLUMNS), args.out)
    summary = sys.stdout if args.out else sys.stderr
    for r in rows:
        print(
            f"{r['construction']}: trials={r['trials']} failures={r['failures']} rate={float(r['rate']):.3e} "
            f"ci=[{float(r['ci_low']):.3e}, {float(r['ci_high']):.3e}] seed={r['seed']}",
            file=summary,
        )


def cmd_simulate(args) -> int:
    construction, name = _construction(args)
    if args.t is None:
        construction = _with_distance(construction, args.d, force=True)
    decoder = make_decoder(construction, method=args.method, t=args.t)
    rows, extra = [], []
    for _, model in _noise_models(args):
        report = monte_carlo(construction, decoder, model, args.trials, args.seed, workers=args.workers)
        rows.append(_row(name, construction, model, report))
        extra.append({"miscorrections": report.miscorrections, "decode_failures": report.decode_failures, "wall_clock": report.wall_clock})
    _write_reports(rows, extra, args)
    return 0


def cmd_compare(args) -> int:
    biased, bname = _construction(args, args.biased0, args.biased1)
    symmetric, sname = _construction(args, args.symmetric0, args.symmetric1)
    if not all(isinstance(c, codes.BinaryPairCode) for c in (biased, symmetric)):
        raise UsageError("compare needs binary codes")
    biased, symmetric = _with_distance(biased, force=True), _with_distance(symmetric, force=True)
    rows, extra = [], []
    for _, model in _noise_models(args):
        cmp = asymmetric_compare(biased, symmetric, model, args.trials, args.seed, workers=args.workers)
        for name, construction, report in ((bname, biased, cmp.biased), (sname, symmetric, cmp.symmetric)):
            rows.append(_row(name, construction, model, report))
            extra.append({"miscorrections": report.miscorrections, "decode_failures": report.decode_failures})
    _write_reports(rows, extra, args)
    return 0


# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, choices=(2, 4), help="treat the matrix as binary or quaternary")
    common.add_argument("--format", choices=("text", "json", "csv"), default=None)
    common.add_argument("--out", help="write the report here instead of stdout")

    noise = argparse.ArgumentParser(add_help=False)
    noise.add_argument("--trials", type=int, default=100_000)
    noise.add_argument("--seed", type=int, default=DEFAULT_SEED)
    noise.add_argument("--workers", type=int, default=1)
    noise.add_argument("--p-aux-z", type=float, default=0.0)
    noise.add_argument("--p-x", type=float, default=0.0)
    noise.add_argument("--p-z", type=float, default=0.0)
    noise.add_argument("--p-y", type=float, default=0.0)
    noise.add_argument("--sweep", help="comma-separated p values; each runs aux_pz=p and data depolarizing p")

    p = argparse.ArgumentParser(prog="lnqec", description="Less-noisy-qubit error correction toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("import", parents=[common], help="import a parity-check matrix and summarise it")
    s.add_argument("path")
    s.add_argument("--d", type=int, help="known minimum distance")
    s.add_argument("--distance", action="store_true", help="compute the minimum distance by enumeration")
    s.set_defaults(func=cmd_import, fmt="text")

    s = sub.add_parser("table", parents=[common], help="qubit counts for codes or code pairs")
    s.add_argument("paths", nargs="+")
    s.add_argument("--pair", help="second binary code (default: each code paired with itself)")
    s.set_defaults(func=cmd_table, fmt="text")

    s = sub.add_parser("verify", parents=[common], help="state-vector and algebraic checks")
    s.add_argument("path")
    s.add_argument("--pair")
    s.add_argument("--trials", type=int, default=5, help="random input states per error")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--cap", type=int, help="maximum qubits to simulate (default 14, or LNQEC_CAP)")
    s.set_defaults(func=cmd_verify, fmt="text")

    s = sub.add_parser("decode", parents=[common], help="decode one syndrome")
    s.add_argument("path")
    s.add_argument("--syndrome", required=True, help="bit string, e.g. 1010")
    s.add_argument("--t", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--method", choices=("table", "bp"), default="table")
    s.add_argument("--iterations", type=int, default=50)
    s.add_argument("--prior", type=float, default=0.05)
    s.set_defaults(func=cmd_decode, fmt="text")

    s = sub.add_parser("simulate", parents=[common, noise], help="Monte Carlo logical error rate")
    s.add_argument("path")
    s.add_argument("--pair")
    s.add_argument("--t", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--method", choices=("table", "bp"), default="table")
    s.set_defaults(func=cmd_simulate, fmt="csv")

    s = sub.add_parser("compare", parents=[common, noise], help="biased against symmetric binary pair")
    s.add_argument("biased0")
    s.add_argument("biased1")
    s.add_argument("symmetric0")
    s.add_argument("symmetric1")
    s.set_defaults(func=cmd_compare, fmt="csv", d=None)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.format is None:
        args.format = args.fmt
    try:
        return args.func(args)
    except LNQECError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
