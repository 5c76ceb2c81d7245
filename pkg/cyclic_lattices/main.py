import argparse
import json
import logging
import sys
import time
from typing import List

from .api.inputs import digest, load_lattice
from .api.lattices import cmd_classify, cmd_cohomology, cmd_decompose, cmd_resolve
from .api.theorems import cmd_dedekind, cmd_example_4_3
from .core.config import settings
from .core.exceptions import LatticeError, ParseError, UnsupportedPrime
from .schemas.schemas import Report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_UNSUPPORTED = 4

LATTICE_COMMANDS = {
    "cohomology": "Tate groups in degrees -1, 0 and 1",
    "classify": "flabby and coflabby verdicts",
    "resolve": "flabby resolution 0 -> M -> P -> E -> 0",
    "decompose": "decomposition along the factors Phi_d",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclic_lattices",
        description="Lattices over cyclic group rings: cohomology, flabby resolutions and decompositions",
    )
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, help_text in LATTICE_COMMANDS.items():
        command = commands.add_parser(name, help=help_text)
        command.add_argument("file", nargs="?", help="lattice document (JSON)")
        command.add_argument("--builtin", help="builtin lattice, e.g. regular:4 or permutation:6:1,3")
        command.add_argument("--seed", type=int, help="seed for random:N:RANK")
        if name == "cohomology":
            scope = command.add_mutually_exclusive_group()
            scope.add_argument("--subgroup", type=int, help="order of the subgroup")
            scope.add_argument("--all", action="store_true", help="every subgroup")

    dedekind = commands.add_parser("dedekind", help="p-maximality of Z[X]/(Phi_n) at every p | n")
    dedekind.add_argument("--n", type=int, required=True)

    example = commands.add_parser("example-4-3", help="non-invertible flabby lattice over Z[zeta_p] C_p")
    variant = example.add_mutually_exclusive_group(required=True)
    variant.add_argument("--p", type=int)
    variant.add_argument("--gaussian", action="store_true")
    return parser


def run(args: argparse.Namespace) -> Report:
    start = time.perf_counter()
    if args.command in LATTICE_COMMANDS:
        lattice, input_digest = load_lattice(args.file, args.builtin, args.seed)
        if args.command == "cohomology":
            results = cmd_cohomology(lattice, args.subgroup, args.all)
        elif args.command == "classify":
            results = cmd_classify(lattice)
        elif args.command == "resolve":
            results = cmd_resolve(lattice)
        else:
            results = cmd_decompose(lattice)
    elif args.command == "dedekind":
        if args.n < 1:
            raise ParseError(f"--n must be positive, got {args.n}")
        input_digest = digest(f"dedekind:{args.n}")
        results = cmd_dedekind(args.n)
    else:
        input_digest = digest("example-4-3:gaussian" if args.gaussian else f"example-4-3:{args.p}")
        results = cmd_example_4_3(args.p, gaussian=args.gaussian)
    return Report(
        command=args.command,
        input_digest=input_digest,
        results=results,
        wall_clock_seconds=time.perf_counter() - start,
    )


def render(report: Report, output_format: str) -> str:
    structured = json.dumps(report.results, sort_keys=True, indent=2)
    if output_format == "structured":
        return report.json(sort_keys=True)
    return "\n".join([
        f"command: {report.command}",
        f"input: {report.input_digest}",
        f"time: {report.wall_clock_seconds:.3f}s",
        "results:",
        structured,
    ])


def main(argv: List[str] = None) -> int:
    logging.basicConfig(
        level=settings.LOG_LEVEL,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except ParseError as e:
        logger.error(f"Parse error: {e}")
        return EXIT_PARSE
    except UnsupportedPrime as e:
        logger.error(f"Unsupported prime: {e}")
        return EXIT_UNSUPPORTED
    except LatticeError as e:
        logger.error(f"Invariant violation: {e}")
        return EXIT_INVARIANT
    print(render(report, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
