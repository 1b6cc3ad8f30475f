"""Command-line front end for certificate queries and the finite theorem suite.

Exit codes: 0 when an answer or certificate was produced, 2 when the query is
still unknown at the given fuel, 1 on usage or contract errors.

Examples::

    python main.py apart --domain reals sqrt:2 rat:3/2 --fuel 64
    python main.py waybelow --domain reals rat:1/1 "(1/2,3/2)"
    python main.py finite-check --poset pP
"""
import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from constructions import exp_basis_enumerate
from domains import Location, locate, replay_location
from errors import DomainError, ExpressionError, InvalidCode, OracleFailure
from expressions import DOMAINS, descriptor_for, parse_code, parse_element
from finite_oracle import catalog, theorem_suite
from ideal import way_below
from models import Answer
from order_core import parse_fraction
from poset_files import load_poset
from separation import (hausdorff_separated, intrinsic_apart, replay,
                        sharp_probe, smyth_maximal_probe)
from settings import configure_logging, get_logger, get_settings

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with 1, leaving 2 for Unknown."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _build_parser(default_fuel: int) -> CommandParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=_positive_int, default=default_fuel,
                        help=f"search budget (default {default_fuel}, APARTDOMAIN_DEFAULT_FUEL)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--replay", action="store_true",
                        help="re-verify the emitted certificate before printing it")
    common.add_argument("--log-level", default=None, help="logging level for stderr diagnostics")

    with_domain = argparse.ArgumentParser(add_help=False, parents=[common])
    with_domain.add_argument("--domain", choices=DOMAINS, default="reals")

    parser = CommandParser(prog="apartdomain",
                           description="Certificates for apartness, sharpness and strong maximality.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CommandParser)

    apart = commands.add_parser("apart", parents=[with_domain], help="search for x # y")
    apart.add_argument("x")
    apart.add_argument("y")

    waybelow = commands.add_parser("waybelow", parents=[with_domain], help="semi-decide ↓b ≪ y")
    waybelow.add_argument("y")
    waybelow.add_argument("code")

    hausdorff = commands.add_parser("hausdorff", parents=[with_domain],
                                    help="search for disjoint Scott neighbourhoods")
    hausdorff.add_argument("x")
    hausdorff.add_argument("y")

    sharp = commands.add_parser("sharp-query", parents=[with_domain], help="ask a ≪ x or ↓b ⋢ x")
    sharp.add_argument("x")
    sharp.add_argument("a")
    sharp.add_argument("b")

    strongmax = commands.add_parser("strongmax-query", parents=[with_domain],
                                    help="ask u ≪ x or ↓v, x Hausdorff separated")
    strongmax.add_argument("x")
    strongmax.add_argument("u")
    strongmax.add_argument("v")
    strongmax.add_argument("--smyth", action="store_true", help="answer in Smyth form")

    located = commands.add_parser("located", parents=[common], help="decide p ∈ L or q ∈ U")
    located.add_argument("x", help="a lower-real expression")
    located.add_argument("p")
    located.add_argument("q")

    exp_basis = commands.add_parser("exp-basis", parents=[common],
                                    help="enumerate step-function basis classes")
    exp_basis.add_argument("--source", choices=DOMAINS, required=True)
    exp_basis.add_argument("--target", choices=DOMAINS, required=True)
    exp_basis.add_argument("--size", type=_positive_int, required=True)

    finite = commands.add_parser("finite-check", parents=[common], help="run the finite theorem suite")
    source = finite.add_mutually_exclusive_group(required=True)
    source.add_argument("--poset", action="append", help="poset JSON file or built-in name")
    source.add_argument("--catalog", action="store_true", help="every poset of the built-in catalog")
    finite.add_argument("--max-size", type=_positive_int, default=None)
    return parser


# Commands

def _result(args: argparse.Namespace, answer: str, certificate: Any = None,
            **extra: Any) -> Dict[str, Any]:
    data: Dict[str, Any] = {'command': args.command}
    if hasattr(args, 'domain'):
        data['domain'] = args.domain
    data['fuel'] = args.fuel
    data['answer'] = answer
    data.update(extra)
    if certificate is not None:
        data['certificate'] = certificate.to_dict()
        if args.replay:
            data['replayed'] = _replay(certificate)
    return data


def _replay(certificate: Any) -> bool:
    if isinstance(certificate, Location):
        return replay_location(certificate)
    return replay(certificate)


def _from_answer(args: argparse.Namespace, answer: Answer) -> Dict[str, Any]:
    witness = answer.witness if hasattr(answer.witness, 'to_dict') else None
    data = _result(args, answer.verdict.value, witness)
    if answer.witness is not None and witness is None:
        data['witness'] = str(answer.witness)
    return data


def _cmd_apart(args: argparse.Namespace) -> Dict[str, Any]:
    x = parse_element(args.x, args.domain)
    y = parse_element(args.y, args.domain)
    cert = intrinsic_apart(x, y, args.fuel)
    return _result(args, 'yes' if cert else 'unknown', cert)


def _cmd_waybelow(args: argparse.Namespace) -> Dict[str, Any]:
    y = parse_element(args.y, args.domain)
    return _from_answer(args, way_below(y, parse_code(args.code, args.domain), args.fuel))


def _cmd_hausdorff(args: argparse.Namespace) -> Dict[str, Any]:
    x = parse_element(args.x, args.domain)
    y = parse_element(args.y, args.domain)
    cert = hausdorff_separated(x, y, args.fuel)
    return _result(args, 'yes' if cert else 'unknown', cert)


def _cmd_sharp(args: argparse.Namespace) -> Dict[str, Any]:
    x = parse_element(args.x, args.domain)
    a = parse_code(args.a, args.domain)
    b = parse_code(args.b, args.domain)
    if x.sharp_oracle is None:
        answer = sharp_probe(x, a, b, args.fuel)
        return _result(args, answer.verdict.value, answer.witness, oracle=None)
    result = x.sharp_oracle(x, a, b)
    return _result(args, 'yes' if result.side == 'left' else 'no', result,
                   oracle=x.sharp_oracle.name)


def _cmd_strongmax(args: argparse.Namespace) -> Dict[str, Any]:
    x = parse_element(args.x, args.domain)
    u = parse_code(args.u, args.domain)
    v = parse_code(args.v, args.domain)
    if args.smyth:
        witness = smyth_maximal_probe(x, u, v, args.fuel)
        return _result(args, 'yes' if witness.branch == 'below' else 'no', witness)
    if x.strongmax_oracle is None:
        raise OracleFailure(f"{x.label} carries no strong-maximality oracle")
    result = x.strongmax_oracle(x, u, v)
    return _result(args, 'yes' if result.side == 'left' else 'no', result)


def _rational(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except InvalidCode as e:
        raise ExpressionError(str(e)) from e


def _cmd_located(args: argparse.Namespace) -> Dict[str, Any]:
    x = parse_element(args.x, 'lower')
    p, q = _rational(args.p), _rational(args.q)
    if x.sharp_oracle is not None:
        location = locate(x, p, q)
        return _result(args, 'yes' if location.side == 'lower' else 'no', location)
    # Without an oracle only the semi-decidable halves can be searched.
    answer = sharp_probe(x, p, (p + q) / 2, args.fuel)
    return _result(args, answer.verdict.value, answer.witness)


def _cmd_exp_basis(args: argparse.Namespace) -> Dict[str, Any]:
    domain = descriptor_for(args.source)
    codomain = descriptor_for(args.target)
    classes = exp_basis_enumerate(domain, codomain, args.size)
    return {
        'command': args.command,
        'source': args.source,
        'target': args.target,
        'size': args.size,
        'answer': 'yes',
        'count': len(classes),
        'functions': [f.serialize() for f in classes],
    }


def _cmd_finite_check(args: argparse.Namespace) -> Dict[str, Any]:
    if args.catalog:
        posets = list(catalog().values())
    else:
        posets = [load_poset(path) for path in args.poset]
    reports = [theorem_suite(p, max_size=args.max_size) for p in posets]
    passed = all(r.passed for r in reports)
    return {
        'command': args.command,
        'answer': 'yes' if passed else 'no',
        'passed': passed,
        'reports': [r.to_dict() for r in reports],
    }


COMMANDS: Dict[str, Callable[[argparse.Namespace], Dict[str, Any]]] = {
    'apart': _cmd_apart,
    'waybelow': _cmd_waybelow,
    'hausdorff': _cmd_hausdorff,
    'sharp-query': _cmd_sharp,
    'strongmax-query': _cmd_strongmax,
    'located': _cmd_located,
    'exp-basis': _cmd_exp_basis,
    'finite-check': _cmd_finite_check,
}


# Output

def _render_text(data: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(data, dict):
        for key, value in data.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{data}")
    return lines


def _emit(data: Dict[str, Any], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print("\n".join(_render_text(data)))


def _exit_code(data: Dict[str, Any]) -> int:
    if data.get('replayed') is False:
        logger.warning("%s: emitted certificate failed replay", data['command'])
        return EXIT_ERROR
    if data['command'] == 'finite-check' and not data['passed']:
        return EXIT_ERROR
    return EXIT_UNKNOWN if data['answer'] == 'unknown' else EXIT_OK


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run one command and print its result.

    Returns:
        int: 0 for an answer, 2 for Unknown at the given fuel, 1 for errors
    """
    try:
        settings = get_settings()
    except DomainError as e:
        print(f"apartdomain: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    parser = _build_parser(settings.default_fuel)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR
    try:
        configure_logging(args.log_level.upper() if args.log_level else settings.log_level)
    except ValueError as e:
        print(f"apartdomain: error: {e}", file=sys.stderr)
        return EXIT_ERROR

    try:
        data = COMMANDS[args.command](args)
    except DomainError as e:
        logger.debug("%s failed: %r", args.command, e)
        print(f"apartdomain: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    _emit(data, args.format)
    return _exit_code(data)


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
