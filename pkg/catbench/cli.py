# catbench/cli.py

"""Command-line entry point: `python -m catbench <command> ...`.

Inputs are workspace documents given by path; a name from the built-in
catalog (`arr`, `idem`, `z2disc`, ...) may stand in for a category or a
monoidal structure. Reports go to stdout, logs to stderr. Exit status is 0 on
success, 1 for a "none" answer under --expect-some and 2 on any error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__, commands
from .catalog import catalog
from .config import settings
from .errors import CatbenchError, UnresolvedReference
from .profunctors import monoidal_catalog
from .serialization import Parsed, parse_file

logger = logging.getLogger(__name__)

INPUT_ROLES = (
    "category",
    "functor",
    "functor2",
    "presheaf",
    "diagram",
    "along",
    "profunctor",
    "profunctor2",
    "monoidal",
)
OPTION_NAMES = ("hom", "hom_functor2", "hom_presheaf", "object", "idempotent", "variance", "seed", "count")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None, help="size cap for enumerations")
    common.add_argument(
        "--expect-some", action="store_true", help="exit 1 when the answer is 'none'"
    )
    common.add_argument("--format", choices=("text", "json"), default="text")
    for role in INPUT_ROLES:
        common.add_argument(f"--{role}", default=None, metavar="PATH", help=f"{role} document")
    common.add_argument("--hom", default=None, metavar="X", help="use hom(X,-) (or hom(-,X)) as the functor")
    common.add_argument("--hom-functor2", dest="hom_functor2", default=None, metavar="X")
    common.add_argument("--hom-presheaf", dest="hom_presheaf", default=None, metavar="X")
    common.add_argument("--object", default=None)
    common.add_argument("--idempotent", default=None, metavar="E")
    common.add_argument("--variance", choices=("covariant", "contravariant"), default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--count", type=int, default=None)

    parser = argparse.ArgumentParser(prog="catbench", description="Finite category theory workbench.")
    parser.add_argument("--version", action="version", version=f"catbench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, help_text in commands.describe().items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "validate":
            p.add_argument("document", metavar="PATH")
        elif name in ("end", "coend"):
            p.add_argument("bifunctor", nargs="?", default="hom", help="'hom' or a profunctor document")
    return parser


def load(ref: str, role: str = "") -> Parsed:
    """A document from a path, or a built-in catalog entry by name."""
    path = Path(ref)
    if path.exists():
        return parse_file(path)
    if role == "monoidal":
        structures = monoidal_catalog()
        if ref in structures:
            return structures[ref]
    builtin = catalog()
    if ref in builtin:
        return builtin[ref]
    raise UnresolvedReference(ref, "workspace")


def make_request(args: argparse.Namespace) -> commands.Request:
    inputs = {}
    for role in INPUT_ROLES:
        ref = getattr(args, role)
        if ref is not None:
            inputs[role] = load(ref, role)
    options = {name: getattr(args, name) for name in OPTION_NAMES if getattr(args, name) is not None}
    if args.command == "validate":
        inputs["document"] = load(args.document)
    elif args.command in ("end", "coend"):
        options["bifunctor"] = args.bifunctor
        if args.bifunctor != "hom":
            inputs["bifunctor"] = load(args.bifunctor)
    return commands.Request(inputs, options, args.cap)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=settings.log_level, stream=sys.stderr)
    try:
        report = commands.run(args.command, make_request(args))
    except CatbenchError as e:
        logger.error(e.render())
        print(f"error: {e.render()}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(commands.render_report(args.command, report, args.format))
    if args.expect_some and not report.found:
        return 1
    return 0
