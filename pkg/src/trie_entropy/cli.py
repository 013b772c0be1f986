"""``trie-entropy`` command line.

Exit codes: 0 success, 2 usage error, 3 input format error, 4 internal
invariant violation.  ``--machine`` switches every subcommand to
``key=value`` lines.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from pathlib import Path

from . import coder, xbwt
from .combinatorics import (DEFAULT_CAP, EnumerationCapError, canonical_rotation, count_tries,
                            distributions, enumerate_tries, matrix_to_trie, random_matrix, rotate,
                            trie_to_matrix)
from .entropy import entropy_report, nh0_bounds
from .textio import (InputFormatError, decode_strings, looks_like_edges, read_dictionary, read_edges,
                     split_lines, write_edges)
from .trie import Alphabet, SymbolDistribution, TrieError, symbol_distribution

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INVARIANT = 0, 2, 3, 4


class UsageError(Exception):
    pass


class Output:
    """Collects ``(key, value)`` pairs and prints them human or machine style."""

    def __init__(self, machine: bool, stream=None):
        self.machine = machine
        self.stream = stream or sys.stdout

    @staticmethod
    def fmt(value) -> str:
        if isinstance(value, bool):
            return "pass" if value else "FAIL"
        if isinstance(value, float):
            return f"{value:.12g}"
        return str(value)

    def put(self, key: str, value) -> None:
        sep = "=" if self.machine else ": "
        print(f"{key}{sep}{self.fmt(value)}", file=self.stream)

    def text(self, line: str) -> None:
        print(line, file=self.stream)


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, data: bytes | str) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _load_trie(args):
    data = _read_bytes(args.input)
    fmt = args.format
    if fmt == "auto":
        fmt = "edges" if looks_like_edges(data) else "dict"
    if fmt == "edges":
        return read_edges(data), "tokens"
    mode = args.alphabet or "bytes"
    return read_dictionary(data, mode), mode


def _check_k(k: int) -> int:
    if k < 0:
        raise UsageError("--k must be non-negative")
    return k


def cmd_stats(args, out: Output) -> int:
    k_max = _check_k(args.k)
    t, _ = _load_trie(args)
    dist = symbol_distribution(t)
    out.put("n", t.n)
    out.put("sigma", t.sigma)
    for sym, x in dist.as_dict().items():
        out.put(f"n_c.{sym}", x)
    reports = entropy_report(t, k_max)
    out.put("h_wc", reports[0].h_wc)
    lo, hi = nh0_bounds(t)
    out.put("nh0_bound.lower", lo)
    out.put("nh0_bound.upper", hi)
    for rep in reports:
        out.put(f"nh_k.{rep.k}", rep.nh_k)
    for rep in reports:
        out.put(f"label_k.{rep.k}", rep.nh_label_k)
    out.put("r", reports[0].runs_r)
    idx = xbwt.build_index(t, args.block_size)
    space = xbwt.space_report(idx, t, k_max)
    out.put("block_size", idx.block_size)
    out.put("payload_bits", space.payload_bits)
    out.put("overhead_bits", sum(space.overhead_bits.values()))
    for key, bits in space.overhead_bits.items():
        out.put(f"overhead_bits.{key}", bits)
    ok = True
    for rep in reports:
        for name, passed in rep.checks().items():
            if name.startswith("emp_wc") and rep.k:
                continue
            label = name if name.startswith("emp_wc") else f"{name}.k{rep.k}"
            out.put(f"check.{label}", passed)
            ok &= passed
    for a, b in zip(reports, reports[1:]):
        passed = a.nh_k + 1e-9 * max(1.0, a.nh_k) >= b.nh_k
        out.put(f"check.monotone.k{b.k}", passed)
        ok &= passed
    for name, passed in space.checks().items():
        out.put(f"check.space.{name}", passed)
        ok &= passed
    if not ok:
        raise AssertionError("an inequality check failed")
    return EXIT_OK


def cmd_compress(args, out: Output) -> int:
    k = _check_k(args.k)
    t, _ = _load_trie(args)
    code = coder.compress(t, k)
    _write(args.output, coder.dumps(code))
    nhk = code.interval_bits
    info = Output(args.machine, sys.stderr if args.output in (None, "-") else sys.stdout)
    info.put("n", t.n)
    info.put("k", k)
    info.put("d", code.d)
    info.put("nh_k", nhk)
    info.put("d_bound", math.ceil(nhk - 1e-9) + 2)
    info.put("model_bits", coder.model_size_bits(code.model, t.sigma, k, t.n))
    if code.d > math.ceil(nhk - 1e-9) + 2:
        raise AssertionError("code length exceeds ceil(nH_k) + 2")
    return EXIT_OK


def cmd_decompress(args, out: Output) -> int:
    code = coder.loads(_read_bytes(args.input))
    try:
        t = coder.decompress(code)
    except ValueError as exc:
        raise InputFormatError(f"corrupt container: {exc}") from None
    _write(args.output, write_edges(t))
    return EXIT_OK


def cmd_index(args, out: Output) -> int:
    t, mode = _load_trie(args)
    idx = xbwt.build_index(t, args.block_size, mode=mode)
    _write(args.output, xbwt.dumps(idx))
    info = Output(args.machine, sys.stderr if args.output in (None, "-") else sys.stdout)
    info.put("n", idx.n)
    info.put("sigma", idx.sigma)
    info.put("block_size", idx.block_size)
    info.put("payload_bits", idx.payload_bits)
    info.put("overhead_bits", sum(idx.overhead_bits().values()))
    return EXIT_OK


def _load_index(args) -> xbwt.XbwtIndex:
    idx = xbwt.loads(_read_bytes(args.index))
    if args.alphabet and args.alphabet != idx.mode:
        raise InputFormatError(f"index was built in {idx.mode} mode, not {args.alphabet}")
    return idx


def _pattern(idx: xbwt.XbwtIndex, raw: bytes) -> tuple:
    if idx.mode == "tokens":
        return tuple(raw.decode("utf-8").split())
    return decode_strings(raw + b"\n", idx.mode)[0]


def cmd_query(args, out: Output) -> int:
    idx = _load_index(args)
    if args.batch is not None:
        for raw in split_lines(_read_bytes(args.batch)):
            res = idx.count(_pattern(idx, raw))
            out.text(f"{raw.decode('utf-8', 'replace')}\t{res.count}\t{res.i}\t{res.j}")
        return EXIT_OK
    if args.pattern is None:
        raise UsageError("give a pattern or --batch FILE")
    res = idx.count(_pattern(idx, args.pattern.encode("utf-8")))
    out.put("count", res.count)
    out.put("i", res.i)
    out.put("j", res.j)
    return EXIT_OK


def cmd_prefix(args, out: Output) -> int:
    idx = _load_index(args)
    rank = idx.prefix_query(_pattern(idx, args.string.encode("utf-8")))
    if args.machine:
        out.put("rank", rank)
    else:
        out.text(str(rank) if rank > 0 else "absent")
    return EXIT_OK


def _parse_dist(n: int, items: list[str]) -> SymbolDistribution:
    counts = {}
    for item in items:
        sym, sep, x = item.partition(":")
        if not sep or not sym or not x.isdigit():
            raise UsageError(f"distribution entries look like a:2, got {item!r}")
        if sym in counts:
            raise UsageError(f"symbol {sym!r} given twice")
        counts[sym] = int(x)
    try:
        return SymbolDistribution.from_mapping(counts, n, Alphabet(counts))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_enumerate(args, out: Output) -> int:
    if args.n < 1:
        raise UsageError("n must be positive")
    if args.dist:
        dists = [_parse_dist(args.n, args.dist)]
    elif args.sigma:
        dists = list(distributions(args.n, args.sigma))
    else:
        raise UsageError("give a distribution (a:2 b:1 ...) or --sigma")
    total = sum(count_tries(d) for d in dists)
    out.put("count", total)
    if args.list:
        try:
            for d in dists:
                for t in enumerate_tries(d, args.cap):
                    out.text(write_edges(t).rstrip("\n"))
                    out.text("")
        except EnumerationCapError as exc:
            raise UsageError(f"{exc}; drop --list to get the count only") from None
    return EXIT_OK


def cmd_bijection(args, out: Output) -> int:
    if args.input is not None:
        t, _ = _load_trie(args)
        m = trie_to_matrix(t)
    else:
        if args.n is None or not args.dist:
            raise UsageError("give an input trie, or --n with a distribution for a random matrix")
        rng = random.Random(args.seed)
        m0 = random_matrix(_parse_dist(args.n, args.dist), rng)
        r = canonical_rotation(m0)
        out.put("random_matrix", " ".join("".join(map(str, row)) for row in m0.rows))
        out.put("rotation", r)
        m = rotate(m0, r)
        t = matrix_to_trie(m)
    out.put("matrix", " ".join("".join(map(str, row)) for row in m.rows))
    out.put("path", " ".join(map(str, m.path)))
    back = matrix_to_trie(m)
    if back != t or trie_to_matrix(back) != m:
        raise AssertionError("matrix round trip changed the trie")
    out.put("round_trip", True)
    out.put("edges", "; ".join(f"{p} {v} {s}" for p, v, s in t.edges()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trie-entropy", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", help="key=value output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--alphabet", choices=("bytes", "utf8"), default=None,
                        help="how dictionary lines become symbols (default bytes)")
    trie_in = argparse.ArgumentParser(add_help=False)
    trie_in.add_argument("--format", choices=("auto", "dict", "edges"), default="auto")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common, trie_in], help="entropies, runs and space")
    p.add_argument("input")
    p.add_argument("--k", type=int, default=2, help="largest context order")
    p.add_argument("--block-size", type=int, default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("compress", parents=[common, trie_in], help="arithmetic-code a trie")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", parents=[common], help="container back to an edge list")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("index", parents=[common, trie_in], help="build an XBWT index")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--block-size", type=int, default=None)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("query", parents=[common], help="count nodes reached by a pattern")
    p.add_argument("index")
    p.add_argument("pattern", nargs="?")
    p.add_argument("--batch", default=None, help="file with one pattern per line")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("prefix", parents=[common], help="rank of the node spelling a string")
    p.add_argument("index")
    p.add_argument("string")
    p.set_defaults(func=cmd_prefix)

    p = sub.add_parser("enumerate", parents=[common], help="count (and list) tries")
    p.add_argument("n", type=int)
    p.add_argument("dist", nargs="*", help="symbol counts such as a:2 b:1")
    p.add_argument("--sigma", type=int, default=None, help="sum over all distributions")
    p.add_argument("--list", action="store_true", help="print every trie as an edge list")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("bijection", parents=[common, trie_in], help="trie/matrix round trip")
    p.add_argument("input", nargs="?")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--dist", nargs="*", default=None, help="symbol counts for a random matrix")
    p.set_defaults(func=cmd_bijection)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.machine)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"trie-entropy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"trie-entropy: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputFormatError, TrieError, coder.ContainerError, xbwt.IndexFormatError,
            ValueError, KeyError) as exc:
        print(f"trie-entropy: bad input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
