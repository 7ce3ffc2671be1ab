#!/usr/bin/env python3

"""
Command line front end for bounds, constructions, distances and decoding.

Tables are emitted as CSV, codebooks as JSON documents, everything else as
'key: value' lines.
Exit status is 0 on success, 1 when a decode or verification fails,
2 on a usage error, which includes a request past the enumeration cap.
"""

__author__ = "Michael Teresi, Scott Teresi"

import argparse
import json
import logging
import sys
from configparser import ConfigParser
from dataclasses import dataclass, field

import coloredlogs
import pandas as pd

from multiperm import DEFAULT_BALL_SUMMATION_N, DEFAULT_ENUMERATION_CAP
from multiperm import DEFAULT_EXHAUSTIVE_CLASSES, DEFAULT_MATERIALIZE_CAP
from multiperm import MultipermError, ParamInvalid, SizeLimit
from multiperm import raise_if_no_file, raise_with
from multiperm.bounds import bounds_table, table1
from multiperm.channel import ErrorModel, simulate
from multiperm.codebook import read_codebook
from multiperm.constructions import GroupingParams, design_code, grouping_code
from multiperm.constructions import greedy_mpc_hamming, interleaved_code
from multiperm.constructions import interleaved_greedy_spec, layered_hamming_code
from multiperm.constructions import semilatin_code
from multiperm.decoders import DECODER_NAMES, make_decoder
from multiperm.designs import khare_rbibd, make_semi_latin
from multiperm.metrics import Metric, code_min_distance, hamming_r, ulam, ulam_r
from multiperm.metrics import ulam_r_oracle
from multiperm.permutation import OrderedSetPartition, Permutation

COMMANDS = ("bounds", "table1", "construct", "distance", "verify", "decode", "simulate")
CONSTRUCTIONS = (
    "grouping",
    "semilatin",
    "design",
    "interleaved",
    "layered",
    "greedy-hamming",
)
CSV_COMMANDS = ("bounds", "table1", "simulate")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class RunConfig:
    """Enumeration caps and simulation defaults."""

    cap: int = DEFAULT_ENUMERATION_CAP
    materialize_cap: int = DEFAULT_MATERIALIZE_CAP
    exhaustive_classes: int = DEFAULT_EXHAUSTIVE_CLASSES
    ball_summation_n: int = DEFAULT_BALL_SUMMATION_N
    trials: int = 1000
    seed: int = 0


def parse_run_config(config_path):
    """Return the run configuration stored in an .ini file."""

    raise_if_no_file(config_path)
    parser = ConfigParser()
    parser.read(config_path)
    defaults = RunConfig()
    return RunConfig(
        cap=parser.getint("enumeration", "cap", fallback=defaults.cap),
        materialize_cap=parser.getint(
            "enumeration", "materialize_cap", fallback=defaults.materialize_cap
        ),
        exhaustive_classes=parser.getint(
            "enumeration", "exhaustive_classes", fallback=defaults.exhaustive_classes
        ),
        ball_summation_n=parser.getint(
            "enumeration", "ball_summation_n", fallback=defaults.ball_summation_n
        ),
        trials=parser.getint("simulation", "trials", fallback=defaults.trials),
        seed=parser.getint("simulation", "seed", fallback=defaults.seed),
    )


@dataclass(frozen=True)
class CommandSpec:
    """One command line invocation.

    Args:
        command(str): one of COMMANDS
        params(dict): parsed flags, with config values filled in
        output_format(str): 'csv' or 'text'
    """

    command: str
    params: dict = field(default_factory=dict)
    output_format: str = "text"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise_with(ParamInvalid, "command '%s' not in %s" % (self.command, COMMANDS))
        if self.output_format not in ("csv", "text"):
            msg = "output format '%s' not csv|text" % self.output_format
            raise_with(ParamInvalid, msg)


def _metric(text):
    try:
        return Metric(text)
    except ValueError:
        choices = ", ".join(m.value for m in Metric)
        raise argparse.ArgumentTypeError("metric '%s' not in %s" % (text, choices))


def build_parser():
    """Argument parser with one subcommand per operation."""

    parser = argparse.ArgumentParser(description="multipermutation codes")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="set debugging level to DEBUG"
    )
    parser.add_argument(
        "--config_file", "-c", type=str, default=None, help="path of the run config"
    )
    parser.add_argument(
        "--cap", type=int, default=None, help="override the enumeration cap"
    )
    parser.add_argument(
        "--workers",
        "--num_threads",
        type=int,
        default=None,
        help="processes for pair sweeps and trials, defaults to in process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bounds = sub.add_parser("bounds", help="every bound at (n, r), one row per d")
    bounds.add_argument("--n", type=int, required=True)
    bounds.add_argument("--r", type=int, required=True)
    bounds.add_argument("--d", type=int, nargs="*", default=None, help="distances")

    grid = sub.add_parser("table1", help="upper bounds on A_H(n, r, d) for every d")
    grid.add_argument("--n", type=int, default=9)
    grid.add_argument("--r", type=int, default=3)

    construct = sub.add_parser("construct", help="build and write a codebook")
    construct.add_argument("kind", choices=CONSTRUCTIONS)
    construct.add_argument("--n", type=int, default=None)
    construct.add_argument("--r", type=int, default=None)
    construct.add_argument("--t", type=int, default=None)
    construct.add_argument("--d", type=int, default=None)
    construct.add_argument("--k", type=int, default=None)
    construct.add_argument("--out", "-o", type=str, default=None, help="output file")

    distance = sub.add_parser("distance", help="distance between two words")
    distance.add_argument("--metric", type=_metric, required=True)
    distance.add_argument("--r", type=int, default=None)
    distance.add_argument("--oracle", action="store_true", help="enumerate classes")
    distance.add_argument("a", type=str, help="e.g. 3,2,4,1 or 2,3|1,4")
    distance.add_argument("b", type=str)

    verify = sub.add_parser("verify", help="minimum distance of a codebook file")
    verify.add_argument("--codebook", type=str, required=True)
    verify.add_argument("--metric", type=_metric, default=None)
    verify.add_argument("--oracle", action="store_true", help="enumerate classes")

    decode = sub.add_parser("decode", help="decode one received permutation")
    decode.add_argument("--codebook", type=str, required=True)
    decode.add_argument("--decoder", choices=DECODER_NAMES, required=True)
    decode.add_argument("--t", type=int, required=True)
    decode.add_argument("--metric", type=_metric, default=None)
    decode.add_argument("received", type=str, help="e.g. 3,2,4,1")

    sim = sub.add_parser("simulate", help="Monte Carlo decoding campaign")
    sim.add_argument("--codebook", type=str, required=True)
    sim.add_argument("--decoder", choices=DECODER_NAMES, required=True)
    sim.add_argument(
        "--errors", choices=[m.value for m in ErrorModel], default="translocation"
    )
    sim.add_argument("--t", type=int, required=True)
    sim.add_argument("--trials", type=int, default=None)
    sim.add_argument("--seed", type=int, default=None, help="defaults to the config")
    sim.add_argument("--metric", type=_metric, default=None)
    sim.add_argument("--progress", action="store_true", help="show a progress bar")
    return parser


def spec_from_args(args, config=None):
    """CommandSpec from parsed arguments, filling defaults from the config."""

    config = config or RunConfig()
    params = {k: v for k, v in vars(args).items() if k not in ("command", "verbose")}
    params["cap"] = config.cap if args.cap is None else args.cap
    if getattr(args, "seed", None) is None:
        params["seed"] = config.seed
    params["materialize_cap"] = config.materialize_cap
    params["exhaustive_classes"] = config.exhaustive_classes
    params["ball_summation_n"] = config.ball_summation_n
    if args.command == "simulate" and args.trials is None:
        params["trials"] = config.trials
    output_format = "csv" if args.command in CSV_COMMANDS else "text"
    return CommandSpec(args.command, params, output_format)


def _require(params, names, what):
    missing = [name for name in names if params.get(name) is None]
    if missing:
        flags = ", ".join("--%s" % name for name in missing)
        raise_with(ParamInvalid, "%s needs %s" % (what, flags))


def _parse_word(text):
    if "|" in text:
        return OrderedSetPartition.parse(text)
    return Permutation.parse(text)


def _write_lines(stream, pairs):
    for key, value in pairs:
        stream.write("%s: %s\n" % (key, value))


def _run_bounds(params, stream):
    frame = bounds_table(
        params["n"],
        params["r"],
        params.get("d") or None,
        ball_max_n=params.get("ball_summation_n", DEFAULT_BALL_SUMMATION_N),
        exhaustive_classes=params.get("exhaustive_classes"),
    )
    frame.to_csv(stream, index=False)
    return EXIT_OK


def _run_table1(params, stream):
    table1(params["n"], params["r"]).to_csv(stream, index_label="bound")
    return EXIT_OK


def _build_codebook(params):
    kind, cap = params["kind"], params["cap"]
    if kind == "grouping":
        _require(params, ("n", "r", "t"), kind)
        grouping = GroupingParams.consecutive(params["n"], params["r"], params["t"])
        return grouping_code(grouping, cap)
    if kind == "semilatin":
        _require(params, ("n", "r"), kind)
        return semilatin_code(make_semi_latin(params["n"], params["r"]))
    if kind == "design":
        _require(params, ("r", "d"), kind)
        design = khare_rbibd(params["r"])
        cap = params["materialize_cap"]
        return design_code(design, 2, params["d"], materialize_cap=cap)
    if kind == "interleaved":
        _require(params, ("n", "r", "d"), kind)
        spec = interleaved_greedy_spec(params["n"], params["r"], params["d"], cap)
        return interleaved_code(spec, cap)
    if kind == "layered":
        _require(params, ("n", "r", "d", "k"), kind)
        n, r, d, k = (params[name] for name in ("n", "r", "d", "k"))
        return layered_hamming_code(n, r, d, k, cap=cap)
    _require(params, ("n", "r", "d"), kind)
    return greedy_mpc_hamming(params["n"], params["r"], params["d"], cap)


def _run_construct(params, stream):
    codebook = _build_codebook(params)
    if params.get("out"):
        codebook.write(params["out"])
        _write_lines(
            stream,
            [
                ("construction", params["kind"]),
                ("size", codebook.size),
                ("claimed_distance", codebook.claimed_distance),
                ("file", params["out"]),
            ],
        )
    else:
        json.dump(codebook.to_dict(), stream, indent=1)
        stream.write("\n")
    return EXIT_OK


def _run_distance(params, stream, logger):
    metric, r = params["metric"], params.get("r")
    a, b = _parse_word(params["a"]), _parse_word(params["b"])
    if metric is Metric.ULAM:
        if not (isinstance(a, Permutation) and isinstance(b, Permutation)):
            raise_with(ParamInvalid, "plain ulam distance takes two permutations", logger)
        value = ulam(a, b)
    elif metric is Metric.HAMMING_R:
        value = hamming_r(a, b, r)
    elif params.get("oracle"):
        witness = ulam_r_oracle(a, b, r, cap=params["cap"])
        logger.debug("witness alpha=%s beta=%s" % (witness.alpha, witness.beta))
        value = witness.value
    else:
        value = ulam_r(a, b, r)
    stream.write("%i\n" % value)
    return EXIT_OK


def _run_verify(params, stream, logger):
    codebook = read_codebook(params["codebook"], logger=logger)
    metric = params.get("metric") or codebook.metric
    found = code_min_distance(
        codebook,
        metric,
        use_oracle=params.get("oracle", False),
        cap=params["cap"],
        n_workers=params.get("workers"),
    )
    verified = found >= codebook.claimed_distance
    _write_lines(
        stream,
        [
            ("size", codebook.size),
            ("metric", Metric(metric).value),
            ("claimed_distance", codebook.claimed_distance),
            ("min_distance", found),
            ("verified", str(verified).lower()),
        ],
    )
    return EXIT_OK if verified else EXIT_FAILURE


def _run_decode(params, stream, logger):
    codebook = read_codebook(params["codebook"], logger=logger)
    decoder = make_decoder(
        params["decoder"], codebook, params["t"], params.get("metric"), logger
    )
    result = decoder(Permutation.parse(params["received"]))
    lines = [("outcome", result.outcome.value)]
    if result.decoded:
        lines.append(("word", result.word))
    else:
        lines.append(("reason", result.reason))
    lines.append(("diagnostics", ",".join(str(v) for v in result.diagnostics)))
    _write_lines(stream, lines)
    return EXIT_OK if result.decoded else EXIT_FAILURE


def _run_simulate(params, stream, logger):
    codebook = read_codebook(params["codebook"], logger=logger)
    decoder = make_decoder(
        params["decoder"], codebook, params["t"], params.get("metric"), logger
    )
    stats = simulate(
        codebook,
        decoder,
        params["errors"],
        params["t"],
        params["trials"],
        seed=params["seed"],
        n_workers=params.get("workers"),
        progress=params.get("progress", False),
        logger=logger,
    )
    pd.DataFrame([stats.to_row()]).to_csv(stream, index=False)
    return EXIT_OK


def run(spec, stream=None, logger=None):
    """Dispatch a command, writing its document to `stream`.

    Returns:
        int: exit status, 0 success, 1 detected failure, 2 usage error
    """

    logger = logger or logging.getLogger(__name__)
    stream = stream or sys.stdout
    params = spec.params
    try:
        if spec.command == "bounds":
            return _run_bounds(params, stream)
        if spec.command == "table1":
            return _run_table1(params, stream)
        if spec.command == "construct":
            return _run_construct(params, stream)
        if spec.command == "distance":
            return _run_distance(params, stream, logger)
        if spec.command == "verify":
            return _run_verify(params, stream, logger)
        if spec.command == "decode":
            return _run_decode(params, stream, logger)
        return _run_simulate(params, stream, logger)
    except SizeLimit as err:
        logger.error("%s: %s, raise --cap or the config cap" % (spec.command, err))
        return EXIT_USAGE
    except (MultipermError, FileNotFoundError) as err:
        logger.error("%s: %s" % (spec.command, err))
        return EXIT_USAGE


def main(argv=None, stream=None):
    """Parse the command line, configure logging, and run the command."""

    parser = build_parser()
    args = parser.parse_args(argv)
    log_level = logging.DEBUG if args.verbose else logging.INFO
    logger = logging.getLogger(__name__)
    coloredlogs.install(level=log_level)
    for argname, argval in vars(args).items():
        logger.debug("%-18s: %s" % (argname, argval))
    try:
        config = parse_run_config(args.config_file) if args.config_file else RunConfig()
    except FileNotFoundError as err:
        logger.error("config: %s" % err)
        return EXIT_USAGE
    return run(spec_from_args(args, config), stream=stream, logger=logger)
