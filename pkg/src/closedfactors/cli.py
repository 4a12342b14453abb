"""Command-line front end: ``closedfactors {count,enumerate,oc,verify,bench}``.

Input is read as raw bytes from a file or standard input. Exit codes: 0 ok,
1 input error, 2 usage error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from dataclasses import dataclass
from typing import BinaryIO

import numpy as np

from . import oracle
from .counter import CountReport, OnlineCounter, count_offline, count_online
from .enumerator import enumerate_distinct, enumerate_occurrences, oc_array
from .text import EmptyInputError

EXIT_OK, EXIT_INPUT, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3
VERIFY_MAXLEN = 16
TSV_TEXT_LIMIT = 64
CHUNK = 1 << 16


@dataclass
class RunConfig:
    command: str
    mode: str = "offline"
    input: str = "-"
    output_format: str = "plain"
    trace: bool = False
    alphabet: int = 2
    maxlen: int | None = None
    seed: int = 0
    occurrences: bool = False
    sizes: tuple[int, ...] = ()

    def validate(self) -> str | None:
        if self.mode == "online" and self.command != "count":
            return "--mode online is only valid for count"
        if self.command == "verify":
            if self.maxlen is None or not 1 <= self.maxlen <= VERIFY_MAXLEN:
                return f"verify needs 1 <= --maxlen <= {VERIFY_MAXLEN}"
            if not 1 <= self.alphabet <= 26:
                return "verify needs 1 <= --alphabet <= 26"
        if self.command == "bench" and not 1 <= self.alphabet <= 256:
            return "bench needs 1 <= --alphabet <= 256"
        return None


# ---------------------------------------------------------------------- input

def _open(path: str) -> BinaryIO:
    return sys.stdin.buffer if path == "-" else open(path, "rb")


def _read_all(path: str) -> bytes:
    with _open(path) as fh:
        data = fh.read()
    if not data:
        raise EmptyInputError("input is empty")
    return data


def _escape(data: bytes) -> str:
    out = []
    for b in data:
        if b == 0x5C:
            out.append("\\\\")
        elif 0x20 <= b < 0x7F:
            out.append(chr(b))
        elif b == 0x09:
            out.append("\\t")
        elif b == 0x0A:
            out.append("\\n")
        else:
            out.append(f"\\x{b:02x}")
    return "".join(out)


def _clip(data: bytes) -> str:
    if len(data) > TSV_TEXT_LIMIT:
        return _escape(data[:TSV_TEXT_LIMIT]) + "..."
    return _escape(data)


# ------------------------------------------------------------------- commands

def _emit_count(cfg: RunConfig, report: CountReport, out) -> None:
    if cfg.output_format == "json":
        obj = {
            "total": report.total,
            "n": report.n,
            "j_set_size": report.j_set_size,
            "sum_lrs": report.sum_lrs,
            "sum_lrs2": report.sum_lrs2,
            "mode": cfg.mode,
        }
        if cfg.trace:
            obj["per_step"] = [[s.j, s.t_len, s.z_len, s.d] for s in report.per_step]
        print(json.dumps(obj), file=out)
        return
    if cfg.trace:
        print("j\tt_len\tz_len\td", file=out)
        for s in report.per_step:
            print(f"{s.j}\t{s.t_len}\t{s.z_len}\t{s.d}", file=out)
    if cfg.output_format == "tsv":
        print(f"{report.n}\t{report.total}", file=out)
    else:
        print(report.total, file=out)


def cmd_count(cfg: RunConfig, out) -> int:
    if cfg.mode == "online":
        counter = OnlineCounter(per_step=cfg.trace)
        with _open(cfg.input) as fh:
            while chunk := fh.read1(CHUNK):
                counter.feed(chunk)
        report = counter.report()
    else:
        report = count_offline(_read_all(cfg.input), per_step=cfg.trace)
    _emit_count(cfg, report, out)
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig, out) -> int:
    data = _read_all(cfg.input)
    if cfg.occurrences:
        items = ((p, q, None) for p, q in enumerate_occurrences(data))
    else:
        items = ((f.start, f.end, f.border_len) for f in enumerate_distinct(data))
    count = 0
    for p, q, b in items:
        count += 1
        if cfg.output_format == "tsv":
            fields = [str(p), str(q)] + ([] if b is None else [str(b)]) + [_clip(data[p - 1 : q])]
            out.write("\t".join(fields) + "\n")
        elif cfg.output_format == "json":
            obj = {"start": p, "end": q}
            if b is not None:
                obj["border_len"] = b
            obj["factor"] = data[p - 1 : q].decode("latin-1")
            out.write(json.dumps(obj) + "\n")
    if cfg.output_format == "plain":
        print(count, file=out)
    return EXIT_OK


def cmd_oc(cfg: RunConfig, out) -> int:
    bits = oc_array(_read_all(cfg.input))
    if cfg.output_format == "json":
        print(json.dumps({"oc": bits.tolist()}), file=out)
    elif cfg.output_format == "tsv":
        for i, b in enumerate(bits.tolist(), start=1):
            print(f"{i}\t{b}", file=out)
    else:
        print(str(bits), file=out)
    return EXIT_OK


def _check_one(w: bytes) -> list[str]:
    """Names of the routines that disagree with the brute-force oracle on ``w``."""
    expected = oracle.distinct_closed_factors(w)
    bad = []
    if count_online(w).total != len(expected):
        bad.append("count_online")
    if count_offline(w).total != len(expected):
        bad.append("count_offline")
    found = [w[f.start - 1 : f.end] for f in enumerate_distinct(w)]
    if len(found) != len(expected) or set(found) != expected:
        bad.append("enumerate_distinct")
    if sorted(enumerate_occurrences(w)) != sorted(oracle.closed_occurrences(w)):
        bad.append("enumerate_occurrences")
    if oc_array(w).tolist() != [int(oracle.is_closed(w[i:])) for i in range(len(w))]:
        bad.append("oc_array")
    return bad


def cmd_verify(cfg: RunConfig, out) -> int:
    letters = bytes(range(ord("a"), ord("a") + cfg.alphabet))
    words = (
        bytes(w)
        for n in range(1, cfg.maxlen + 1)
        for w in itertools.product(letters, repeat=n)
    )
    checked = failures = 0
    for w in words:
        bad = _check_one(w)
        checked += 1
        if bad:
            failures += 1
            print(f"MISMATCH {w.decode()} {','.join(bad)}", file=out)
    # a few longer random strings on top of the exhaustive sweep
    rng = random.Random(cfg.seed)
    for _ in range(32):
        n = rng.randint(cfg.maxlen, 2 * cfg.maxlen)
        w = bytes(rng.choice(letters) for _ in range(n))
        bad = _check_one(w)
        checked += 1
        if bad:
            failures += 1
            print(f"MISMATCH {w.decode()} {','.join(bad)}", file=out)
    print(f"checked {checked} strings, {failures} mismatches", file=out)
    return EXIT_MISMATCH if failures else EXIT_OK


def cmd_bench(cfg: RunConfig, out) -> int:
    rng = np.random.default_rng(cfg.seed)
    sigma = cfg.alphabet
    run = count_online if cfg.mode == "online" else count_offline
    run(b"abaababaab")  # load compiled kernels before timing
    rows = []
    for n in cfg.sizes:
        data = rng.integers(0, sigma, n, dtype=np.uint16).astype(np.uint8).tobytes()
        t0 = time.perf_counter()
        report = run(data)
        dt = time.perf_counter() - t0
        rows.append((n, dt, 1e9 * dt / n, report.total))
    if cfg.output_format == "json":
        for n, dt, ns, total in rows:
            print(json.dumps({"n": n, "seconds": dt, "ns_per_symbol": ns, "total": total}), file=out)
    else:
        sep = "\t" if cfg.output_format == "tsv" else "  "
        print(sep.join(["n", "seconds", "ns/symbol"]), file=out)
        for n, dt, ns, _ in rows:
            print(sep.join([str(n), f"{dt:.3f}", f"{ns:.0f}"]), file=out)
    return EXIT_OK


COMMANDS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "oc": cmd_oc,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


# --------------------------------------------------------------------- parser

def _positive_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(float(s)) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}")
    if any(s < 1 for s in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive")
    return sizes


def build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="closedfactors",
        description="Count and enumerate the distinct closed factors of a byte string.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=["plain", "tsv", "json"], default=None)
    common.add_argument("--mode", choices=["online", "offline"], default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("count", parents=[common], help="print the number of distinct closed factors")
    pc.add_argument("input", nargs="?", default="-", help="input file (default: stdin)")
    pc.add_argument("--trace", action="store_true", help="also print j, t_len, z_len, d_j per step")

    pe = sub.add_parser("enumerate", parents=[common], help="list closed factors")
    pe.add_argument("input", nargs="?", default="-")
    pe.add_argument("--occurrences", action="store_true", help="every occurrence instead of one per distinct factor")

    po = sub.add_parser("oc", parents=[common], help="print which suffixes are closed")
    po.add_argument("input", nargs="?", default="-")

    pv = sub.add_parser("verify", parents=[common], help="exhaustive cross-check against brute force")
    pv.add_argument("--alphabet", type=int, default=2)
    pv.add_argument("--maxlen", type=int, default=10)
    pv.add_argument("--seed", type=int, default=0)

    pb = sub.add_parser("bench", parents=[common], help="time counting on random input")
    pb.add_argument("--sizes", type=_positive_sizes, default=(10**4, 10**5, 10**6, 10**7))
    pb.add_argument("--alphabet", type=int, default=256)
    pb.add_argument("--seed", type=int, default=0)
    return ap


def parse_config(argv: list[str] | None) -> tuple[argparse.ArgumentParser, RunConfig]:
    ap = build_argparser()
    ns = ap.parse_args(argv)
    default_format = "tsv" if ns.command == "enumerate" else "plain"
    cfg = RunConfig(
        command=ns.command,
        mode=ns.mode or "offline",
        input=getattr(ns, "input", "-"),
        output_format=ns.output_format or default_format,
        trace=getattr(ns, "trace", False),
        alphabet=getattr(ns, "alphabet", 2),
        maxlen=getattr(ns, "maxlen", None),
        seed=getattr(ns, "seed", 0),
        occurrences=getattr(ns, "occurrences", False),
        sizes=getattr(ns, "sizes", ()),
    )
    problem = cfg.validate()
    if problem:
        ap.error(problem)
    return ap, cfg


def main(argv: list[str] | None = None) -> int:
    try:
        _, cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    out = sys.stdout
    try:
        return COMMANDS[cfg.command](cfg, out)
    except EmptyInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
