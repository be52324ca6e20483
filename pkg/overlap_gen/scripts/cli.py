'''
Command-line interface: `overlap-gen {validate,transform,falsify,
grid-export,catalog}`.

Exit codes: 0 ok, 1 invalid pair or violated precondition, 2 unreadable
input, 3 contradiction found by the collision search.
'''

from collections import OrderedDict
import json
import logging
import os.path
import sys
import time

import click

from ..config import PARAMETERS, VERSION, default
from ..lib.axioms import BlackBoxOverlap, EQUAL, check_axioms, equivalent
from ..lib.catalog import describe_catalog, fn_from_descriptor
from ..lib.errors import OverlapGenError, SpecError
from ..lib.genfn import InverseFn, Interval, PASS, compose
from ..lib.helper import \
    file_digest, load_spec_from_file, pair_from_spec, save_grid_to_csv, \
    save_report, save_spec_to_file, spec_from_pair, to_json
from ..lib.pair import ProbeConfig, VALID, overlap_grid, validate_pair
from ..lib.transform import \
    CONTRADICTION, TRANSFORMS, apply_transform, collision_falsifier, \
    jensen_affinity_test
from ..lib.xreal import finite


EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_CONTRADICTION = 3

REPORT_SCHEMA = 1


def _help(name):
    return PARAMETERS[name]['description']


def cli_options(f):
    '''
    Options shared by all commands that read a pair spec.
    '''
    options = [
        click.option('--grid-n', type=click.IntRange(16), show_default=True,
                     default=default('grid_n'), help=_help('grid_n')),
        click.option('--tol', type=float, show_default=True,
                     default=default('tol'), help=_help('tol')),
        click.option('--seed', type=int, show_default=True,
                     default=default('seed'), help=_help('seed')),
        click.option('--report', 'report_path', default=None,
                     type=click.Path(dir_okay=False, writable=True),
                     help='write the run report (JSON) to this file'),
        click.option('--quiet', is_flag=True,
                     help='do not print the summary line'),
        click.option('-L', '--log-level', default='INFO',
                     type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR',
                                        'CRITICAL']),
                     help='verbosity of logging output (standard log levels)'),
        click.option('-Q', '--processes', type=click.IntRange(1),
                     show_default=True, default=default('processes'),
                     help=_help('processes')),
    ]
    for option in reversed(options):
        f = option(f)
    return f


class Run:
    '''
    Collects the report of one command: input digest, configuration,
    per-stage results, error and timing.
    '''

    def __init__(self, command, spec_path, options):
        logging.basicConfig(level=logging.getLevelName(options['log_level']))
        self.quiet = options['quiet']
        self.report_path = options['report_path']
        self.start = time.perf_counter()
        self.report = OrderedDict([
            ('schema', REPORT_SCHEMA),
            ('tool', 'overlap-gen'),
            ('version', VERSION),
            ('command', command),
            ('input', OrderedDict([
                ('path', spec_path),
                ('digest', file_digest(spec_path)),
            ])),
            ('cfg', OrderedDict(
                (k, v) for k, v in sorted(options.items())
                if k not in ('report_path', 'quiet', 'log_level'))),
            ('stages', OrderedDict()),
            ('error', None),
            ('exit_code', None),
            ('timing', None),
        ])

    def stage(self, name, result):
        self.report['stages'][name] = to_json(result)

    def fail(self, e):
        logging.error('[{}] {}'.format(e.code, e))
        self.report['error'] = OrderedDict([
            ('code', e.code), ('message', str(e))])
        if getattr(e, 'witness', None) is not None:
            self.report['error']['witness'] = to_json(e.witness)

    def finish(self, exit_code, summary):
        self.report['exit_code'] = exit_code
        self.report['timing'] = OrderedDict([
            ('seconds', round(time.perf_counter() - self.start, 6))])
        if self.report_path is not None:
            save_report(self.report, self.report_path)
        if not self.quiet:
            click.echo(summary)
        sys.exit(exit_code)

    def load_pair(self):
        '''The pair of the input spec, or None after recording the error.'''
        try:
            return pair_from_spec(
                load_spec_from_file(self.report['input']['path']))
        except SpecError as e:
            self.fail(e)
            self.finish(EXIT_PARSE, 'error: {}'.format(e))
        except OverlapGenError as e:
            self.fail(e)
            self.finish(EXIT_INVALID, 'error: [{}] {}'.format(e.code, e))


@click.group()
@click.version_option(VERSION, prog_name='overlap-gen')
def cli():
    '''
    Overlap functions from additive generator pairs
    O(x,y) = vartheta(theta(x) + theta(y)).
    '''


spec_argument = click.argument(
    'spec_path', type=click.Path(exists=True, dir_okay=False))


@cli.command()
@spec_argument
@cli_options
def validate(spec_path, **options):
    '''
    Check a pair against the generator conditions T1..T5 and, on the
    generated function, the overlap axioms O1..O5.
    '''
    run = Run('validate', spec_path, options)
    p = run.load_pair()
    try:
        validation = validate_pair(p, ProbeConfig(grid_n=options['grid_n']))
        run.stage('characterization', validation)
        axioms = check_axioms(
            BlackBoxOverlap.from_pair(p, processes=options['processes']),
            n=options['grid_n'], tol=options['tol'])
        run.stage('axioms', axioms)
    except OverlapGenError as e:
        run.fail(e)
        run.finish(EXIT_INVALID, 'error: [{}] {}'.format(e.code, e))
    ok = validation.overall == VALID and axioms.overall == PASS
    failed = [k for k, r in validation.conditions.items() if r.verdict != PASS] \
             + [k for k, a in axioms.axioms.items() if a.verdict != PASS]
    run.finish(EXIT_OK if ok else EXIT_INVALID,
               'characterization: {}, axioms: {}{}'.format(
                   validation.overall, axioms.overall,
                   ' ({})'.format(', '.join(failed)) if failed else ''))


def parse_params(ctx, param, value):
    '''Parse "k=2,b=3" into {"k": 2.0, "b": 3.0}.'''
    result = OrderedDict()
    if not value:
        return result
    for item in value.split(','):
        key, sep, number = item.partition('=')
        try:
            if not sep:
                raise ValueError()
            result[key.strip()] = float(number)
        except ValueError:
            raise click.BadParameter(
                'expected NAME=NUMBER pairs, got "{}"'.format(item))
    return result


@cli.command()
@spec_argument
@click.option('--op', required=True, type=click.Choice(list(TRANSFORMS)),
              help='transform to apply')
@click.option('--params', callback=parse_params, default='',
              help='transform parameters, e.g. "k=2,b=3"')
@click.option('--out', type=click.Path(dir_okay=False, writable=True),
              default=None, help='write the transformed pair spec here')
@click.option('--equiv-n', type=click.IntRange(2), show_default=True,
              default=default('equiv_n'), help=_help('equiv_n'))
@cli_options
def transform(spec_path, op, params, out, equiv_n, **options):
    '''
    Transform a pair and check that the new pair generates the same
    overlap function.
    '''
    run = Run('transform', spec_path, options)
    run.report['cfg'].update([('op', op), ('params', params),
                              ('equiv_n', equiv_n)])
    p = run.load_pair()
    try:
        q = apply_transform(p, op, params,
                            cfg=ProbeConfig(grid_n=options['grid_n']))
        run.stage('characterization', q.report)
        result = equivalent(
            BlackBoxOverlap.from_pair(p, processes=options['processes']),
            BlackBoxOverlap.from_pair(q, processes=options['processes']),
            n=equiv_n, tol=options['tol'])
        run.stage('equivalence', result)
    except OverlapGenError as e:
        run.fail(e)
        run.finish(EXIT_INVALID, 'error: [{}] {}'.format(e.code, e))
    spec = spec_from_pair(q)
    run.stage('output', OrderedDict([
        ('anchor', q.anchor_a), ('orientation', q.orientation),
        ('path', out), ('spec', spec)]))
    if out is not None:
        save_spec_to_file(to_json(spec), out)
    ok = result.outcome == EQUAL and q.report.overall == VALID
    run.finish(EXIT_OK if ok else EXIT_INVALID,
               '{}: {} (max deviation {:.3g}), anchor {}'.format(
                   op, result.outcome, result.max_dev, q.anchor_a))


def load_descriptor(value):
    '''
    A function descriptor given on the command line: a JSON file, JSON
    text, or a catalog name.
    '''
    if os.path.isfile(value):
        with open(value, encoding='utf-8') as fp:
            try:
                return json.load(fp)
            except ValueError as e:
                raise SpecError('{} -- not a JSON document: {}'\
                                .format(value, e))
    if value.lstrip().startswith('{'):
        try:
            return json.loads(value)
        except ValueError as e:
            raise SpecError('not a JSON descriptor: {}'.format(e))
    return value


def parse_anchor(ctx, param, values):
    result = []
    for value in values:
        try:
            x, y = (float(v) for v in value.split(','))
        except ValueError:
            raise click.BadParameter('expected X,Y, got "{}"'.format(value))
        result.append((x, y))
    return result


@cli.command()
@spec_argument
@click.option('--theta-new', required=True,
              help='modified theta: catalog name, JSON descriptor or file')
@click.option('--probes', type=click.IntRange(2), show_default=True,
              default=default('probes'), help=_help('probes'))
@click.option('--tol-match', type=float, show_default=True,
              default=default('tol_match'), help=_help('tol_match'))
@click.option('--tol-sep', type=float, show_default=True,
              default=default('tol_sep'), help=_help('tol_sep'))
@click.option('--anchor', multiple=True, callback=parse_anchor,
              help='argument pair X,Y to try first (repeatable)')
@cli_options
def falsify(spec_path, theta_new, probes, tol_match, tol_sep, anchor,
            **options):
    '''
    Search for a collision proving that no correction of vartheta lets
    the modified theta generate the same overlap function.
    '''
    run = Run('falsify', spec_path, options)
    run.report['cfg'].update([
        ('theta_new', theta_new), ('probes', probes),
        ('tol_match', tol_match), ('tol_sep', tol_sep),
        ('anchors', [list(a) for a in anchor])])
    p = run.load_pair()
    try:
        new = fn_from_descriptor(load_descriptor(theta_new))
    except SpecError as e:
        run.fail(e)
        run.finish(EXIT_PARSE, 'error: {}'.format(e))
    verdict = collision_falsifier(p.theta, new, probes, tol_match, tol_sep,
                                  anchors=anchor)
    run.stage('collision', verdict)
    # the map u -> theta_new(theta^-1(u)) is affine iff a correction exists
    try:
        window = Interval(*sorted([p.theta_one,
                                   p.theta(finite(1.0 / probes))]))
        f = compose(new, InverseFn(p.theta)).restrict(window)
        run.stage('affinity', jensen_affinity_test(
            f, window, tol=options['tol'], seed=options['seed']))
    except OverlapGenError as e:
        logging.warning('affinity test skipped: [{}] {}'.format(e.code, e))
        run.stage('affinity', OrderedDict([('skipped', e.code)]))
    if verdict.outcome == CONTRADICTION:
        w = verdict.witness
        run.finish(EXIT_CONTRADICTION,
                   'contradiction: ({:.17g},{:.17g}) and ({:.17g},{:.17g}) '
                   'collide at {:.17g} but need {:.17g} vs {:.17g}'.format(
                       w.x1, w.y1, w.x2, w.y2, w.lhs_sum, w.rhs_sum_1,
                       w.rhs_sum_2))
    run.finish(EXIT_OK, 'consistent ({} probes)'.format(probes))


@cli.command('grid-export')
@spec_argument
@click.option('--n', 'n', type=click.IntRange(2), show_default=True,
              default=default('export_n'), help=_help('export_n'))
@click.option('--out', required=True, type=click.File('w'),
              help='CSV output file ("-" for stdout)')
@cli_options
def grid_export(spec_path, n, out, **options):
    '''
    Write the n x n grid of O(x,y) as CSV rows x,y,value.
    '''
    run = Run('grid-export', spec_path, options)
    run.report['cfg']['n'] = n
    p = run.load_pair()
    try:
        grid = overlap_grid(p, n, options['processes'])
    except OverlapGenError as e:
        run.fail(e)
        run.finish(EXIT_INVALID, 'error: [{}] {}'.format(e.code, e))
    save_grid_to_csv(grid, out)
    run.stage('grid', OrderedDict([('n', n), ('rows', n * n)]))
    run.finish(EXIT_OK, 'wrote {} rows'.format(n * n))


@cli.command()
@click.option('--json', 'as_json', is_flag=True,
              help='print the listing as JSON')
def catalog(as_json):
    '''
    List the builtin generator functions and pair fixtures.
    '''
    listing = describe_catalog()
    if as_json:
        click.echo(json.dumps(listing, indent=2))
        return
    for f in listing['functions']:
        click.echo('{:<22} {:<10} {:<16} {}'.format(
            f['name'] + ('({})'.format(','.join(f['params'])) \
                         if f['params'] else ''),
            f['role'], '[{}, {}]'.format(*f['domain']), f['formula']))
    click.echo('')
    for pair in listing['pairs']:
        click.echo('{:<22} {:<20} {}'.format(
            pair['name'], pair['orientation'], pair['description']))
