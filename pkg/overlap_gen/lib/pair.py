'''
Generator pairs (theta, vartheta), the overlap functions
O(x,y) = vartheta(theta(x) + theta(y)) they generate, and the validators
for the five conditions under which O is an overlap function:

  T1  theta continuous and monotone (non-increasing, or non-decreasing in
      the extended orientation),
  T2  vartheta continuous and monotone on the relevant interval
      [a, +inf] (or [-inf, a]) with the anchor a = 2*theta(1),
  T3  theta(x) is infinite iff x = 0,
  T4  vartheta(x) = 0 on the relevant interval iff x is the infinite end,
  T5  theta(x) is strictly separated from theta(1) for x < 1 and
      vartheta(x) = 1 on the relevant interval iff x = a.
'''

from collections import OrderedDict, namedtuple
import logging
import multiprocessing as mp

import numpy as np

from .catalog import EXTENDED_ORIENTATION, ORIENTATIONS, STANDARD
from .errors import InvalidPair, OverlapGenError, RangeError
from .genfn import \
    AffineWrap, CLUSTER_DEPTH, ENDPOINT_GEOMETRIC, FAIL, INCONCLUSIVE, \
    Interval, NON_DECREASING, NON_INCREASING, PASS, TOL_STRICT, \
    Witness, X_MAX, continuity_probe, evaluate, merge_reports, \
    monotonicity_probe, probe_report, sample_grid
from .xreal import \
    GT, INF, LT, NINF, ONE, ZERO, XReal, affine_map, finite, xadd, xcmp


# overlap values may leave [0,1] by this much through rounding
RANGE_TOL = 1e-12

# vartheta(anchor) must be 1 within this
ANCHOR_TOL = 1e-12

# extra samples of the separation probe on [1-delta, 1)
SEPARATION_REFINEMENT = 16

T1 = 'T1_theta_monotone_continuous'
T2 = 'T2_vartheta_monotone_continuous'
T3 = 'T3_theta_infinity_iff_zero'
T4 = 'T4_vartheta_zero_iff_infinity'
T5 = 'T5_boundary_one_iff_anchor'
CONDITIONS = (T1, T2, T3, T4, T5)

VALID = 'valid'
INVALID = 'invalid'


ProbeConfig = namedtuple(
    'ProbeConfig',
    ['grid_n', 'scheme', 'continuity_tol', 'tol_strict', 'delta', 'x_max',
     'cluster_depth'])
ProbeConfig.__new__.__defaults__ = \
    (257, ENDPOINT_GEOMETRIC, 1e-3, TOL_STRICT, 1e-3, X_MAX, CLUSTER_DEPTH)
ProbeConfig.__doc__ = '''Resolution and tolerances of the validators.'''

ValidationReport = namedtuple(
    'ValidationReport', ['conditions', 'overall', 'caveats'])

OverlapGrid = namedtuple('OverlapGrid', ['n', 'xs', 'values'])


class GeneratorPair:
    '''
    A pair of generator functions with the cached anchor
    a = theta(1) + theta(1). Construction checks the structural
    invariants only (domains, finite anchor); whether the pair actually
    generates an overlap function is the business of validate_pair().
    '''

    def __init__(self, theta, vartheta, orientation=STANDARD, report=None):
        if orientation not in ORIENTATIONS:
            raise InvalidPair('unknown orientation: {}'.format(orientation))
        if theta.domain.lo != ZERO or theta.domain.hi != ONE:
            raise InvalidPair('theta must be defined on [0, 1], not {}'\
                              .format(theta.domain))
        self.theta = theta
        self.vartheta = vartheta
        self.orientation = orientation
        self.report = report
        try:
            theta_one = evaluate(theta, ONE)
            self.anchor_a = xadd(theta_one, theta_one)
        except OverlapGenError as e:
            raise InvalidPair('theta(1) cannot be evaluated: {}'.format(e))
        if not self.anchor_a.is_finite:
            raise InvalidPair('the anchor 2*theta(1) = {} is not finite'\
                              .format(self.anchor_a))
        if not vartheta.domain.covers(self.relevant_interval):
            raise InvalidPair('vartheta is defined on {}, which does not '
                              'cover {}'.format(vartheta.domain,
                                                self.relevant_interval))

    @property
    def sign(self):
        '''+1 for decreasing generators, -1 for increasing ones.'''
        return 1 if self.orientation == STANDARD else -1

    @property
    def relevant_interval(self):
        '''The part of vartheta's domain that sums of theta values reach.'''
        if self.orientation == STANDARD:
            return Interval(self.anchor_a, INF)
        return Interval(NINF, self.anchor_a)

    @property
    def theta_one(self):
        return evaluate(self.theta, ONE)

    def __call__(self, x, y):
        return eval_overlap(self, x, y)

    def describe(self):
        return OrderedDict([
            ('theta', self.theta.describe()),
            ('vartheta', self.vartheta.describe()),
            ('orientation', self.orientation),
        ])

    def __repr__(self):
        return 'GeneratorPair({})'.format(dict(self.describe()))


def _checked_value(v, x, y):
    if not v.is_finite or v.value < -RANGE_TOL or v.value > 1 + RANGE_TOL:
        raise RangeError('O({}, {}) = {} is outside of [0, 1]'\
                         .format(x, y, v))
    return min(max(v.value, 0.0), 1.0)


def _overlap_from_theta(p, tx, ty, x, y, checked=True):
    v = evaluate(p.vartheta, xadd(tx, ty))
    return _checked_value(v, x, y) if checked else v.to_float()


def eval_overlap(p, x, y):
    '''
    O(x,y) = vartheta(theta(x) + theta(y)) as a float in [0,1].
    '''
    x, y = XReal.of(x), XReal.of(y)
    return _overlap_from_theta(
        p, evaluate(p.theta, x), evaluate(p.theta, y), x, y)


def overlap_value(p, x, y):
    '''
    vartheta(theta(x) + theta(y)) as a float, without the range check
    of `eval_overlap`.
    '''
    x, y = XReal.of(x), XReal.of(y)
    return _overlap_from_theta(
        p, evaluate(p.theta, x), evaluate(p.theta, y), x, y, checked=False)


# globals (for painless cow-semantic shared memory fork-based multiprocessing)
PAIR = None
THETAS = None
CHECKED = True


def _init_worker(pair, thetas, checked=True):
    global PAIR, THETAS, CHECKED
    PAIR, THETAS, CHECKED = pair, thetas, checked


# needs to be global for multiprocessing
def _row(i, xs, start):
    return [_overlap_from_theta(PAIR, THETAS[i], THETAS[j], xs[i], xs[j],
                                CHECKED) \
            for j in range(start, len(xs))]


def overlap_grid(p, n, processes=1, symmetric=True, checked=True):
    '''
    Evaluate O on the n x n grid linspace(0, 1, n). Theta is evaluated
    once per coordinate. With `symmetric`, only the upper triangle is
    evaluated and mirrored, so the result is symmetric bit by bit;
    otherwise every cell is evaluated. Without `checked`, values are
    returned as they are instead of raising RangeError outside [0,1].
    '''
    if n < 2:
        raise ValueError('grid needs n >= 2')
    xs = [finite(v) for v in np.linspace(0.0, 1.0, n)]
    thetas = [evaluate(p.theta, x) for x in xs]
    logging.debug('filling a {0}x{0} overlap grid with {1} process(es)'\
                  .format(n, processes))
    tasks = [(i, xs, i if symmetric else 0) for i in range(n)]
    if processes > 1:
        with mp.Pool(processes=processes, initializer=_init_worker,
                     initargs=(p, thetas, checked)) as pool:
            result = pool.starmap_async(_row, tasks,
                                        error_callback=logging.error)
            result.wait()
            # re-raises the first exception of a worker
            rows = result.get()
    else:
        _init_worker(p, thetas, checked)
        try:
            rows = [_row(*task) for task in tasks]
        finally:
            _init_worker(None, None)
    values = np.empty((n, n))
    for i, row in enumerate(rows):
        if symmetric:
            values[i, i:] = row
            values[i:, i] = row
        else:
            values[i, :] = row
    return OverlapGrid(n, np.array([x.value for x in xs]), values)


def _guarded(name, probe):
    # evaluation errors while probing are failures of the probed condition
    try:
        return probe()
    except OverlapGenError as e:
        logging.debug('{} probe raised {}: {}'.format(name, e.code, e))
        points = list(e.witness.points) \
                 if getattr(e, 'witness', None) is not None else []
        return probe_report(FAIL, [Witness(points, e.code)])


def _theta_infinity_iff_zero(p, cfg):
    expected = INF if p.orientation == STANDARD else NINF
    witnesses = []
    t0 = evaluate(p.theta, ZERO)
    if t0 != expected:
        witnesses.append(Witness([(ZERO, t0)], 'not_infinite_at_zero'))
    for x, v in sample_grid(p.theta, cfg.grid_n, cfg.scheme,
                            x_max=cfg.x_max, cluster_depth=cfg.cluster_depth):
        if xcmp(x, ZERO) == GT and not v.is_finite:
            witnesses.append(Witness([(x, v)], 'infinite_inside'))
            break
    return probe_report(FAIL if witnesses else PASS, witnesses,
                        grid_n=cfg.grid_n)


def _separated(v, t1, sign, tol_strict):
    # sign * (v - t1) > tol_strict, exactly for infinite values
    if not (v.is_finite and t1.is_finite):
        return xcmp(v, t1) == (GT if sign > 0 else LT)
    return sign * (v.value - t1.value) > tol_strict


def _theta_separation(p, cfg):
    t1 = p.theta_one
    witnesses = []
    samples = [(x, v) for x, v in sample_grid(
                   p.theta, cfg.grid_n, cfg.scheme, x_max=cfg.x_max,
                   cluster_depth=cfg.cluster_depth)
               if x.value <= 1.0 - cfg.delta]
    # the only place a plateau can hide from the grid is next to 1
    for j in range(SEPARATION_REFINEMENT, 0, -1):
        x = finite(1.0 - cfg.delta * j / SEPARATION_REFINEMENT)
        samples.append((x, evaluate(p.theta, x)))
    for x, v in samples:
        if not _separated(v, t1, p.sign, cfg.tol_strict):
            witnesses.append(Witness([(x, v), (ONE, t1)],
                                     'not_separated_from_theta_one'))
            if len(witnesses) >= 3:
                break
    return probe_report(FAIL if witnesses else PASS, witnesses,
                        grid_n=cfg.grid_n,
                        caveats=['separated_at_resolution'])


def validate_theta(p, cfg=ProbeConfig()):
    '''
    Sub-reports for theta: continuity, monotonicity (direction by
    orientation), infinity_iff_zero and separation.
    '''
    direction = NON_INCREASING if p.orientation == STANDARD \
                else NON_DECREASING
    return OrderedDict([
        ('continuity', _guarded('continuity', lambda: continuity_probe(
            p.theta, cfg.grid_n, cfg.continuity_tol, cfg.scheme,
            x_max=cfg.x_max, cluster_depth=cfg.cluster_depth))),
        ('monotonicity', _guarded('monotonicity', lambda: monotonicity_probe(
            p.theta, cfg.grid_n, direction, tol_strict=cfg.tol_strict,
            scheme=cfg.scheme, x_max=cfg.x_max,
            cluster_depth=cfg.cluster_depth))),
        ('infinity_iff_zero', _guarded('infinity_iff_zero',
            lambda: _theta_infinity_iff_zero(p, cfg))),
        ('separation', _guarded('separation',
            lambda: _theta_separation(p, cfg))),
    ])


def _vartheta_zero_iff_infinity(p, cfg):
    R = p.relevant_interval
    far = INF if p.orientation == STANDARD else NINF
    witnesses = []
    v_far = evaluate(p.vartheta, far)
    if v_far != ZERO:
        witnesses.append(Witness([(far, v_far)], 'not_zero_at_infinity'))
    for x, v in sample_grid(p.vartheta, cfg.grid_n, cfg.scheme, interval=R,
                            x_max=cfg.x_max, cluster_depth=cfg.cluster_depth):
        if x.is_finite and xcmp(v, ZERO) != GT:
            witnesses.append(Witness([(x, v)], 'zero_at_finite_argument'))
            break
    return probe_report(FAIL if witnesses else PASS, witnesses,
                        grid_n=cfg.grid_n)


def _vartheta_one_iff_anchor(p, cfg):
    a = p.anchor_a
    R = p.relevant_interval
    witnesses = []
    v_a = evaluate(p.vartheta, a)
    if not v_a.is_finite or abs(v_a.value - 1.0) > ANCHOR_TOL:
        witnesses.append(Witness([(a, v_a)], 'not_one_at_anchor'))
    for x, v in sample_grid(p.vartheta, cfg.grid_n, cfg.scheme, interval=R,
                            x_max=cfg.x_max, cluster_depth=cfg.cluster_depth):
        if x != a and xcmp(v, ONE) != LT:
            witnesses.append(Witness([(x, v)], 'one_beyond_anchor'))
            break
    return probe_report(FAIL if witnesses else PASS, witnesses,
                        grid_n=cfg.grid_n)


def validate_vartheta(p, cfg=ProbeConfig()):
    '''
    Sub-reports for vartheta on the relevant interval only: continuity,
    monotonicity, zero_iff_infinity and one_iff_anchor. Values below
    the anchor (above it, in the extended orientation) never reach the
    overlap function and are not looked at.
    '''
    R = p.relevant_interval
    direction = NON_INCREASING if p.orientation == STANDARD \
                else NON_DECREASING
    return OrderedDict([
        ('continuity', _guarded('continuity', lambda: continuity_probe(
            p.vartheta, cfg.grid_n, cfg.continuity_tol, cfg.scheme,
            interval=R, x_max=cfg.x_max, cluster_depth=cfg.cluster_depth))),
        ('monotonicity', _guarded('monotonicity', lambda: monotonicity_probe(
            p.vartheta, cfg.grid_n, direction, tol_strict=cfg.tol_strict,
            scheme=cfg.scheme, interval=R, x_max=cfg.x_max,
            cluster_depth=cfg.cluster_depth))),
        ('zero_iff_infinity', _guarded('zero_iff_infinity',
            lambda: _vartheta_zero_iff_infinity(p, cfg))),
        ('one_iff_anchor', _guarded('one_iff_anchor',
            lambda: _vartheta_one_iff_anchor(p, cfg))),
    ])


def overall_verdict(reports):
    verdicts = [r.verdict for r in reports]
    if FAIL in verdicts:
        return INVALID
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    return VALID


def validate_pair(p, cfg=ProbeConfig()):
    '''
    Check the five generator conditions T1..T5 with the directions given
    by the orientation of the pair.
    '''
    th = validate_theta(p, cfg)
    vt = validate_vartheta(p, cfg)
    conditions = OrderedDict([
        (T1, merge_reports([th['continuity'], th['monotonicity']])),
        (T2, merge_reports([vt['continuity'], vt['monotonicity']])),
        (T3, th['infinity_iff_zero']),
        (T4, vt['zero_iff_infinity']),
        (T5, merge_reports([th['separation'], vt['one_iff_anchor']])),
    ])
    overall = overall_verdict(conditions.values())
    failed = [name for name, r in conditions.items() if r.verdict == FAIL]
    logging.info('pair validation at n={}: {}{}'.format(
        cfg.grid_n, overall,
        ' ({})'.format(', '.join(failed)) if failed else ''))
    if overall == INCONCLUSIVE:
        logging.warning('pair validation is inconclusive at n={}'\
                        .format(cfg.grid_n))
    caveats = ['verdicts_at_resolution']
    if p.orientation == EXTENDED_ORIENTATION:
        caveats.append('extended_orientation')
    return ValidationReport(conditions, overall, caveats)


def affine_pair(p, k, b):
    '''
    The pair (k*theta + b, vartheta((. - 2b)/k)), which generates the same
    overlap function as `p`. The orientation flips for k < 0.
    '''
    m = affine_map(k, b)
    theta = AffineWrap(m, p.theta, 'outer')
    vartheta = AffineWrap(affine_map(1.0 / k, -2.0 * b / k), p.vartheta,
                          'inner')
    orientation = p.orientation
    if k < 0:
        orientation = EXTENDED_ORIENTATION if orientation == STANDARD \
                      else STANDARD
    return GeneratorPair(theta, vartheta, orientation)


def normalize(p):
    '''
    Shift theta by b = -theta(1), so that theta(1) = 0 and the anchor is
    0; the overlap function does not change.
    '''
    t1 = p.theta_one
    if t1.value == 0:
        return p
    return affine_pair(p, 1.0, -t1.value)
