"""
Command-line front end: `cfmatch <command> ...`.

Sequences are read one per line as whitespace-separated signed 64-bit integers; blank lines and lines starting with '#' are skipped. Results go to stdout, logs to stderr. Exit codes: 0 on success, 1 for internal errors and failed self-checks, 2 for usage errors and out-of-range parameters, 3 for malformed input.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .bench import entropy_experiment, run_experiment, summarize, uniform_experiment, write_csv
from .combinatorics import (
    asymptotic_estimate,
    cf_to_parens,
    cf_to_schroder,
    count_forests,
    display_parens,
    forest_series,
    forest_words,
    parens_to_cf,
    parse_schroder,
    schroder_to_cf,
    schroder_to_text,
)
from .forests import CartesianForest, build_forest_online, canonical_sequence
from .matching import DiffKind, approx_match, brute_force_match, exact_match
from .randgen import GenSpec, derive_seed, generate, uniform_sequence
from .representations import (
    Representation,
    parent_distance,
    parent_distance_rtl,
    referent_table,
    skipped_number,
)
from .signatures import filtered_match, signature, tau_filter
from .utils import (
    BudgetError,
    CartesianForestError,
    GeneratorSpecError,
    InvalidForestError,
    InvalidSequenceError,
    ParameterError,
    WindowError,
    format_sequence,
    load_settings,
    parse_sequence_line,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MALFORMED = 3

FOREST_FORMATS = ("forest", "parens", "schroder", "sequence")

UNIFORM_M_VALUES = (4, 8, 16, 32, 64)
ENTROPY_H2_VALUES = (0.05, 0.1, 0.3, 1.0, 2.0)

EXAMPLE_PATTERN = (2, 3, 1, 4, 1, 5)
EXAMPLE_TEXT = (5, 7, 3, 6, 3, 7, 2, 8, 2, 4, 3, 3)


def parse_sequences(lines: Iterable[str]) -> list[tuple[int, ...]]:
    """
    Parses sequences from lines of text, one per line.

    Args:
        lines (Iterable[str]): the input lines.

    Returns:
        list[tuple[int, ...]]: the sequences. Raises InvalidSequenceError naming the offending line.
    """
    sequences = []
    for number, text in enumerate(lines, start=1):
        stripped = text.strip()
        if not stripped or stripped.startswith("#"):
            continue
        sequences.append(parse_sequence_line(stripped, number))
    return sequences


def parse_sequence_file(path) -> list[tuple[int, ...]]:
    """
    Reads a sequence file; "-" reads standard input. Lines are decoded as UTF-8 one at a time, so a bad byte is reported with its line number.

    Args:
        path (str | Path): the file to read.

    Returns:
        list[tuple[int, ...]]: the sequences, in file order.
    """
    if str(path) == "-":
        return parse_sequences(_decoded_lines(sys.stdin.buffer))
    with open(Path(path), "rb") as handle:
        return parse_sequences(_decoded_lines(handle))


def _decoded_lines(handle) -> Iterator[str]:
    for number, raw in enumerate(handle, start=1):
        try:
            yield raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidSequenceError(f"invalid UTF-8 at byte {exc.start}", number) from exc


def _single_sequence(inline: Optional[list[str]], path: Optional[str], what: str) -> tuple[int, ...]:
    if inline:
        return parse_sequence_line(" ".join(inline))
    if path:
        sequences = parse_sequence_file(path)
        if not sequences:
            raise InvalidSequenceError(f"no {what} found in {path}")
        return sequences[0]
    raise ParameterError(f"a {what} is required")


def _filter_width(value: str) -> Optional[int]:
    if value == "off":
        return None
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a filter width or 'off', got {value!r}")


def _alphabet(value: str) -> Optional[int]:
    if value == "m":
        return None
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an alphabet size or 'm', got {value!r}")


def cmd_match(args: argparse.Namespace) -> int:
    p = _single_sequence(args.pattern, args.pattern_file, "pattern")
    t = _single_sequence(args.text, args.text_file, "text")
    kind = DiffKind(args.kind)

    if args.filter is not None:
        if kind is not DiffKind.EXACT:
            raise ParameterError("filters only apply to exact matching")
        result = filtered_match(p, t, args.filter, Representation(args.repr))
    elif kind is DiffKind.EXACT:
        result = exact_match(p, t, Representation(args.repr))
    else:
        result = approx_match(p, t, kind)

    for position in result.positions:
        print(position)
    print(f"# occ={result.occurrences}")
    logger.info("%d windows examined, %d fully compared, %d comparisons", result.counters.windows_examined, result.counters.windows_full_checked, result.counters.comparisons)
    return EXIT_OK


def cmd_repr(args: argparse.Namespace) -> int:
    if args.sequence:
        sequences = [parse_sequence_line(" ".join(args.sequence))]
    elif args.file:
        sequences = parse_sequence_file(args.file)
    else:
        raise ParameterError("a sequence or --file is required")

    for x in sequences:
        if args.signature:
            print(signature(x))
            continue
        print("pd:", format_sequence(parent_distance(x)))
        print("ref:", format_sequence(referent_table(x)))
        print("sn:", format_sequence(skipped_number(x)))
        if args.rtl:
            print("rtl:", format_sequence(parent_distance_rtl(x)))
        if args.tau is not None:
            print("filter:", tau_filter(skipped_number(x), args.tau).bitstring())
    return EXIT_OK


def _read_forest(text: str, source: str) -> CartesianForest:
    if source == "sequence":
        return build_forest_online(parse_sequence_line(text))
    if source == "schroder":
        return schroder_to_cf(parse_schroder(text))
    return parens_to_cf(text)


def _render_forest(F: CartesianForest, target: str) -> str:
    if target == "sequence":
        return format_sequence(canonical_sequence(F))
    if target == "schroder":
        return schroder_to_text(cf_to_schroder(F))
    if target == "parens":
        return cf_to_parens(F, display=True)
    return cf_to_parens(F)


def cmd_convert(args: argparse.Namespace) -> int:
    if args.items:
        items = list(args.items)
    else:
        items = [line.strip() for line in sys.stdin if line.strip() and not line.lstrip().startswith("#")]

    for item in items:
        print(_render_forest(_read_forest(item, args.source), args.target))
    return EXIT_OK


def cmd_count(args: argparse.Namespace) -> int:
    if args.n < 0:
        raise ParameterError(f"n must be non-negative, got {args.n}")
    if args.series:
        for k, value in enumerate(forest_series(args.n)):
            print(k, value)
        return EXIT_OK

    print(count_forests(args.n).value)
    if args.asymptotic:
        print(f"# asymptotic={asymptotic_estimate(args.n)}")
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    for word in forest_words(args.n):
        print(display_parens(word) if args.display else word)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    for i in range(args.count):
        seed = args.seed if args.count == 1 else derive_seed(args.seed, i)
        print(format_sequence(generate(GenSpec(args.n, args.k, seed, args.h2))))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    settings = load_settings()
    trials = args.trials if args.trials is not None else settings.trials
    seed = args.seed if args.seed is not None else settings.seed
    tau = args.tau if args.tau is not None else settings.tau
    workers = args.workers if args.workers is not None else settings.workers

    if args.experiment == "entropy":
        k_values = args.k or [4]
        if len(k_values) != 1 or k_values[0] is None:
            raise ParameterError("the entropy experiment takes a single numeric alphabet size")
        m = args.m[0] if args.m else 100
        configs = entropy_experiment(args.h2 or ENTROPY_H2_VALUES, k=k_values[0], n=args.n, m=m, trials=trials, seed=seed, tau=tau, fixed_counts=not args.iid)
    else:
        if args.h2:
            raise ParameterError("--h2 only applies to the entropy experiment")
        configs = uniform_experiment(args.m or UNIFORM_M_VALUES, args.k or (2, 4, None), n=args.n, trials=trials, seed=seed, tau=tau)

    records = run_experiment(configs, workers)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            write_csv(records, handle)
    else:
        write_csv(records, sys.stdout)

    if args.summary:
        for (method, n, m, k, h2), stats in summarize(records).items():
            print(f"# {method} n={n} m={m} k={k} h2={'' if h2 is None else h2} comparisons={stats['comparisons']:.1f} windows_full_checked={stats['windows_full_checked']:.1f}")
    return EXIT_OK


def _selftest_checks(seed: int) -> list[tuple[str, bool]]:
    checks = []

    example = []
    for kind in Representation:
        example.append(exact_match(EXAMPLE_PATTERN, EXAMPLE_TEXT, kind).positions)
        for tau in (4, 64):
            example.append(filtered_match(EXAMPLE_PATTERN, EXAMPLE_TEXT, tau, kind).positions)
    checks.append(("example occurrences", all(positions == (1, 5) for positions in example)))

    counts = [count_forests(n).value for n in range(13)]
    checks.append(("forest counts", counts[:4] == [1, 1, 3, 11] and counts == forest_series(12)))

    words = [display_parens(w) for n in (1, 2, 3) for w in forest_words(n)]
    checks.append(("small parentheses words", len(words) == 15 and "(..)(..)" in words))

    agree = True
    for trial in range(25):
        trial_seed = derive_seed(seed, trial)
        p = uniform_sequence(GenSpec(4, 3, derive_seed(trial_seed, 0)))
        t = uniform_sequence(GenSpec(24, 3, derive_seed(trial_seed, 1)))
        for kind in DiffKind:
            if approx_match(p, t, kind).positions != brute_force_match(p, t, kind):
                agree = False
    checks.append(("approximate matching against brute force", agree))
    return checks


def cmd_selftest(args: argparse.Namespace) -> int:
    failed = 0
    for name, passed in _selftest_checks(args.seed):
        print(f"{'ok' if passed else 'FAIL'} {name}")
        failed += not passed
    return EXIT_OK if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfmatch", description="Cartesian Forest matching on sequences with ties.")
    parser.add_argument("--log-level", default=None, help="logging level (default: CFM_LOG_LEVEL or WARNING)")
    commands = parser.add_subparsers(dest="command", required=True)

    match = commands.add_parser("match", help="find the windows of a text matching a pattern")
    match.add_argument("--pattern", nargs="+", help="pattern elements")
    match.add_argument("--pattern-file", help="file holding the pattern (first sequence)")
    match.add_argument("--text", nargs="+", help="text elements")
    match.add_argument("--text-file", help="file holding the text (first sequence)")
    match.add_argument("--kind", choices=[k.value for k in DiffKind], default=DiffKind.EXACT.value)
    match.add_argument("--repr", choices=[r.value for r in Representation], default=Representation.SN.value)
    match.add_argument("--filter", type=_filter_width, default=None, metavar="TAU|off", help="filter width for exact matching")
    match.set_defaults(handler=cmd_match)

    rep = commands.add_parser("repr", help="print linear representations of sequences")
    rep.add_argument("sequence", nargs="*", help="sequence elements")
    rep.add_argument("--file", help="sequence file, one sequence per line")
    rep.add_argument("--signature", action="store_true", help="print the signature as <bit_length>:<hex>")
    rep.add_argument("--rtl", action="store_true", help="also print the right-to-left Parent-Distance")
    rep.add_argument("--tau", type=int, default=None, help="also print the tau-filter of the Skipped-Number representation")
    rep.set_defaults(handler=cmd_repr)

    convert = commands.add_parser("convert", help="convert between forest encodings")
    convert.add_argument("items", nargs="*", help="inputs (read from stdin when omitted)")
    convert.add_argument("--from", dest="source", choices=FOREST_FORMATS, default="forest")
    convert.add_argument("--to", dest="target", choices=FOREST_FORMATS, default="schroder")
    convert.set_defaults(handler=cmd_convert)

    count = commands.add_parser("count", help="number of Cartesian Forests with n nodes")
    count.add_argument("n", type=int)
    count.add_argument("--series", action="store_true", help="print f_0..f_n")
    count.add_argument("--asymptotic", action="store_true", help="also print the asymptotic estimate")
    count.set_defaults(handler=cmd_count)

    enum = commands.add_parser("enumerate", help="list all Cartesian Forests with n nodes")
    enum.add_argument("n", type=int)
    enum.add_argument("--display", action="store_true", help="drop the outermost parentheses")
    enum.set_defaults(handler=cmd_enumerate)

    gen = commands.add_parser("gen", help="generate random sequences")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--h2", type=float, default=None, help="collision entropy in bits")
    gen.add_argument("--count", type=int, default=1, help="number of sequences")
    gen.set_defaults(handler=cmd_gen)

    bench = commands.add_parser("bench", help="compare the pd, sn and sn_filter matchers")
    bench.add_argument("--experiment", choices=("uniform", "entropy"), default="uniform")
    bench.add_argument("--n", type=int, default=1000)
    bench.add_argument("--m", type=int, nargs="+", default=None)
    bench.add_argument("--k", type=_alphabet, nargs="+", default=None, help="alphabet sizes; 'm' means as large as the pattern")
    bench.add_argument("--h2", type=float, nargs="+", default=None)
    bench.add_argument("--iid", action="store_true", help="draw entropy-experiment symbols independently instead of with fixed letter counts")
    bench.add_argument("--trials", type=int, default=None)
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--tau", type=int, default=None)
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--out", default=None, help="CSV file (default: stdout)")
    bench.add_argument("--summary", action="store_true", help="append mean counters per method")
    bench.set_defaults(handler=cmd_bench)

    selftest = commands.add_parser("selftest", help="run the built-in checks")
    selftest.add_argument("--seed", type=int, default=0)
    selftest.set_defaults(handler=cmd_selftest)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    level = (args.log_level or load_settings().log_level).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)

    try:
        return args.handler(args)
    except (InvalidSequenceError, InvalidForestError) as exc:
        print(f"cfmatch: error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (WindowError, ParameterError, GeneratorSpecError, BudgetError) as exc:
        print(f"cfmatch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cfmatch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CartesianForestError as exc:
        print(f"cfmatch: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
