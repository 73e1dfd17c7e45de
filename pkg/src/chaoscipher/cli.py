"""Command-line interface: encrypt, decrypt, analyze, bench, keygen.

Exit codes: 0 success, 1 usage error, 2 I/O or file-format error,
3 contract violation. Diagnostics go to stderr, data to stdout or --out.
"""

import argparse
import secrets
import sys
from pathlib import Path

from . import _backend, bench
from .cipher import CipherParams, decrypt, encrypt
from .confusion import PROPOSED, VARIANTS
from .errors import ContractViolation, PgmFormatError
from .grid import PixelGrid, histogram
from .keyschedule import SeedKey
from .metrics import DIRECTIONS, AnalysisReport, chi_square_uniformity, correlation, npcr, uaci
from .pgm import read_pgm, write_pgm
from .synth import gradient, uniform_random, value_noise, white

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CONTRACT = 3


def _key_arg(text: str) -> SeedKey:
    try:
        return SeedKey.from_hex(text)
    except ContractViolation as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rounds_arg(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected m,n (e.g. 2,2), got {text!r}")
    try:
        m, n = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"round counts must be integers, got {text!r}") from None
    if m < 1 or n < 1:
        raise argparse.ArgumentTypeError("round counts must be >= 1")
    return m, n


def _n_list_arg(text: str) -> list[int]:
    try:
        values = [int(p) for p in text.split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("confusion round counts must be >= 1")
    return values


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaoscipher",
        description="Chaotic standard-map image cipher and analysis harness (binary PGM I/O).",
    )
    parser.add_argument(
        "--backend",
        choices=("auto",) + _backend.available_backends(),
        default="auto",
        help="kernel backend to use (default: compiled when available)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("encrypt", "encrypt a PGM image"), ("decrypt", "decrypt a PGM image")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--in", dest="infile", required=True, help="input PGM path")
        p.add_argument("--out", dest="outfile", required=True, help="output PGM path")
        p.add_argument("--key", type=_key_arg, required=True, help="32 hex digits")
        p.add_argument("--rounds", type=_rounds_arg, default=(2, 2), metavar="M,N",
                       help="overall,confusion rounds (default 2,2)")
        p.add_argument("--variant", choices=VARIANTS, default=PROPOSED)
        p.set_defaults(func=_cmd_crypt, mode=name)

    p = sub.add_parser("analyze", help="NPCR/UACI of a pair and correlation/chi-square of one image")
    p.add_argument("--a", dest="file_a", required=True, help="image to analyze")
    p.add_argument("--b", dest="file_b", help="second image for pairwise NPCR/UACI")
    p.add_argument("--csv", dest="csv_path", help="also append a CSV row to this file")
    p.add_argument("--sample", type=int, help="sample this many adjacent pairs instead of all")
    p.add_argument("--sample-seed", type=int, default=0, help="seed for pair sampling")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("bench", help="stage timings, round sweeps, synthetic images")
    p.add_argument("--size", type=int, default=512, help="grid side length (default 512)")
    p.add_argument("--rounds", type=_rounds_arg, default=(2, 2), metavar="M,N")
    p.add_argument("--trials", type=int, default=5, help="timed trials per stage (>= 3)")
    p.add_argument("--variant", choices=VARIANTS, default=PROPOSED)
    p.add_argument("--key", type=_key_arg, help="key for timed runs (random if omitted)")
    p.add_argument("--seed", type=int, default=0, help="seed for synthetic inputs")
    p.add_argument("--parallel", action="store_true", help="run independent trials in parallel")
    p.add_argument("--sweep", action="store_true",
                   help="emit CSV of time/NPCR/UACI over the (m, n) grid "
                        "m = 1..--max-m x --sweep-n")
    p.add_argument("--max-m", type=int, default=4, help="largest overall round count for --sweep")
    p.add_argument("--sweep-n", type=_n_list_arg, metavar="N1,N2,...",
                   help="confusion round counts for --sweep (default: the n of --rounds)")
    p.add_argument("--synth", metavar="DIR",
                   help="write white/gradient/random/noise test images to DIR and exit")
    p.add_argument("--compare-backends", action="store_true",
                   help="time the sequential kernels on every available backend")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("keygen", help="print a fresh random 32-hex-digit key")
    p.set_defaults(func=_cmd_keygen)
    return parser


def _load_grid(path: str) -> PixelGrid:
    return read_pgm(Path(path).read_bytes())


def _cmd_crypt(args) -> int:
    grid = _load_grid(args.infile)
    m, n = args.rounds
    params = CipherParams(m, n, args.variant)
    result = encrypt(grid, args.key, params) if args.mode == "encrypt" else decrypt(grid, args.key, params)
    Path(args.outfile).write_bytes(write_pgm(result))
    return EXIT_OK


def _cmd_analyze(args) -> int:
    grid_a = _load_grid(args.file_a)
    report_npcr = report_uaci = None
    if args.file_b:
        grid_b = _load_grid(args.file_b)
        report_npcr = npcr(grid_a, grid_b)
        report_uaci = uaci(grid_a, grid_b)
    correlations = {
        d: correlation(grid_a, d, sample_count=args.sample, seed=args.sample_seed)
        for d in DIRECTIONS
    }
    report = AnalysisReport(
        npcr=report_npcr,
        uaci=report_uaci,
        correlations=correlations,
        chi_square=chi_square_uniformity(histogram(grid_a)),
    )
    for line in report.kv_lines():
        print(line)
    if args.csv_path:
        path = Path(args.csv_path)
        lines = [] if path.exists() else [AnalysisReport.csv_header()]
        lines.append(report.csv_row())
        with path.open("a") as fh:
            fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.synth:
        out_dir = Path(args.synth)
        out_dir.mkdir(parents=True, exist_ok=True)
        images = {
            "white": white(args.size),
            "gradient": gradient(args.size),
            "random": uniform_random(args.size, 8, args.seed),
            "noise": value_noise(args.size, 8, args.seed),
        }
        for name, grid in images.items():
            (out_dir / f"{name}.pgm").write_bytes(write_pgm(grid))
            print(f"wrote {out_dir / f'{name}.pgm'}", file=sys.stderr)
        return EXIT_OK

    key = args.key if args.key is not None else SeedKey(secrets.token_bytes(16))
    if args.key is None:
        print(f"using random key {key.hex()}", file=sys.stderr)
    m, n = args.rounds

    if args.compare_backends:
        results = bench.compare_backends(args.size, args.trials, key, args.seed)
        for line in bench.compare_lines(results):
            print(line)
        return EXIT_OK

    if args.sweep:
        n_values = args.sweep_n if args.sweep_n else [n]
        rows = bench.sweep(args.size, n_values, args.max_m, args.trials, key, args.seed)
        for line in bench.sweep_csv_lines(rows):
            print(line)
        return EXIT_OK

    result = bench.time_stages(
        args.size, m, n, args.variant, args.trials, key, args.seed, parallel=args.parallel
    )
    for line in result.lines():
        print(line)
    return EXIT_OK


def _cmd_keygen(args) -> int:
    raw = secrets.token_bytes(16)
    while raw == b"\x00" * 16:
        raw = secrets.token_bytes(16)
    print(raw.hex())
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 for --help
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.backend != "auto":
        _backend.set_backend(args.backend)
    try:
        return args.func(args)
    except PgmFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ContractViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
