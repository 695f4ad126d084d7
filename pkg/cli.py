"""
Command-line front end.

    python cli.py classify --builtin model
    python cli.py invariants --manifold my_graph.json --format text
    python cli.py verify-model
    python cli.py structure-eqs --builtin model --stage 4

Exit codes: 0 success, 2 negative verdict (not class III_2, failed model
check), 1 error. JSON goes to stdout with sorted keys, so identical input
gives byte-identical output; logging goes to stderr.
"""

import sys
import os
import argparse
import hashlib
import json
import logging

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from crgeom import classify_frame, cr_generator, derived_frame, fundamentals, torsion_table
from errors import CartanError
from model import builtin_manifold, load_manifold, verify_model, BUILTIN_MANIFOLDS
from reducer import reduce_manifold
from symexpr import Point

log = logging.getLogger(__name__)

VERSION = '0.3.0'
TOOL = 'cartan-cr'

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERDICT = 2

COMMANDS = ('classify', 'fundamentals', 'invariants', 'verify-model', 'structure-eqs')


def build_parser():
    parser = argparse.ArgumentParser(
        prog=TOOL,
        description="Cartan equivalence for five-dimensional class III_2 CR manifolds.")
    parser.add_argument('--version', action='version', version='%(prog)s ' + VERSION)
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    for name in COMMANDS:
        sub = commands.add_parser(name)
        sub.add_argument('--format', choices=('json', 'text'), default='json')
        sub.add_argument('--verbose', action='store_true', help="debug logging on stderr")
        sub.add_argument('--timings', action='store_true', help="include step timings")
        if name == 'verify-model':
            continue
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument('--manifold', metavar='FILE', help="manifold JSON file")
        source.add_argument('--builtin', choices=BUILTIN_MANIFOLDS)
        sub.add_argument('--point', metavar='r,r,r,r,r',
                         help="point for pointwise ranks")
        if name == 'structure-eqs':
            sub.add_argument('--stage', type=int, choices=(0, 4), default=0)
    return parser


def input_digest(manifold):
    """sha256 of the canonical text of a manifold."""
    canonical = {
        'name': manifold.name,
        'phi': [str(p) for p in manifold.phi],
        'base_point': manifold.base_point.as_strings() if manifold.base_point else None,
    }
    payload = json.dumps(canonical, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()


def _table_dict(table):
    """Nonzero slots of a StructureTable as {'dk': {'j^l': text}}."""
    result = {}
    for k, (j, l), value in table.nonzero_slots():
        result.setdefault('d' + k, {})['%s^%s' % (j, l)] = str(value)
    return result


def _model_dict(checks):
    mc = checks['maurer_cartan']
    spectrum = checks['ad_alpha_spectrum']
    return {
        'jacobi': checks['jacobi'].to_dict(),
        'conjugation': checks['conjugation'].to_dict(),
        'maurer_cartan': {
            'display': mc['display'].to_dict(),
            'd_squared': mc['d_squared'].to_dict(),
            'passed': mc['passed'],
        },
        'axioms': checks['axioms'].to_dict(),
        'template': checks['template'].to_dict(),
        'template_axioms': checks['template_axioms'].to_dict(),
        'ad_alpha_spectrum': [str(v) for v in spectrum] if spectrum is not None else None,
        'passed': checks['passed'],
    }


# Commands

def run_classify(manifold, args):
    frame = derived_frame(cr_generator(manifold))
    report = classify_frame(frame, manifold.name, args.point or manifold.base_point)
    return {'classification': report.to_dict()}, report.member


def _fundamentals_stage(manifold, args):
    """Classification body, plus fundamentals and torsion for members."""
    frame = derived_frame(cr_generator(manifold))
    report = classify_frame(frame, manifold.name, args.point or manifold.base_point)
    body = {'classification': report.to_dict()}
    if not report.member:
        return body, None
    fun = fundamentals(frame)
    torsion = torsion_table(frame, fun)
    body['fundamentals'] = dict((k, str(v)) for k, v in fun.as_dict().items())
    body['torsion'] = dict((k, str(v)) for k, v in torsion.named.items())
    return body, torsion


def run_fundamentals(manifold, args):
    body, torsion = _fundamentals_stage(manifold, args)
    return body, torsion is not None


def run_invariants(manifold, args):
    result = reduce_manifold(manifold, args.point)
    return result.to_dict(timings=args.timings), result.member


def run_structure_eqs(manifold, args):
    if args.stage == 0:
        body, torsion = _fundamentals_stage(manifold, args)
        if torsion is None:
            return body, False
        table = torsion.table
    else:
        result = reduce_manifold(manifold, args.point)
        body = {'classification': result.class_report.to_dict()}
        if not result.member:
            return body, False
        table = result.table
    body['stage'] = args.stage
    body['structure'] = _table_dict(table)
    return body, True


HANDLERS = {
    'classify': run_classify,
    'fundamentals': run_fundamentals,
    'invariants': run_invariants,
    'structure-eqs': run_structure_eqs,
}


# Output

def _text_lines(value, indent=''):
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)):
                yield '%s%s:' % (indent, key)
                for line in _text_lines(item, indent + '  '):
                    yield line
            else:
                yield '%s%s: %s' % (indent, key, _scalar_text(item))
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                yield '%s-' % indent
                for line in _text_lines(item, indent + '  '):
                    yield line
            else:
                yield '%s- %s' % (indent, _scalar_text(item))


def _scalar_text(value):
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    return str(value)


def render(report, fmt):
    if fmt == 'json':
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True)
    return '\n'.join(_text_lines(report))


def _error_report(command, error):
    report = {
        'tool': TOOL,
        'version': VERSION,
        'command': command,
        'error': {'type': type(error).__name__, 'message': str(error)},
    }
    residual = getattr(error, 'residual', None)
    if residual is not None:
        report['error']['residual'] = str(residual)
    return report


def main(argv=None):
    """
    Run one command.

    Args:
        argv: argument list (defaults to sys.argv[1:])

    Returns:
        int exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        if args.command == 'verify-model':
            body = _model_dict(verify_model())
            report = {'tool': TOOL, 'version': VERSION, 'command': args.command}
            report.update(body)
            print(render(report, args.format))
            return EXIT_OK if body['passed'] else EXIT_VERDICT

        args.point = Point.parse(args.point) if args.point else None
        if args.manifold:
            manifold = load_manifold(args.manifold)
        else:
            manifold = builtin_manifold(args.builtin)

        body, success = HANDLERS[args.command](manifold, args)
    except (CartanError, ValueError) as error:
        log.error("%s failed: %s", args.command, error)
        print(render(_error_report(args.command, error), args.format))
        return EXIT_ERROR

    report = {
        'tool': TOOL,
        'version': VERSION,
        'command': args.command,
        'manifold': manifold.name,
        'input_digest': input_digest(manifold),
    }
    report.update(body)
    print(render(report, args.format))
    return EXIT_OK if success else EXIT_VERDICT


if __name__ == '__main__':
    sys.exit(main())
