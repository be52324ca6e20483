'''
Transformations of generator pairs which keep the generated overlap
function, and the numerical tools showing that other transformations
cannot:

- affine outer transforms (k*theta + b, vartheta((. - 2b)/k)) and their
  vartheta-conjugated variant built from numerical inverses,
- inner compositions theta o h = c*theta + m and their conjugated variant,
- a Jensen midpoint test recognizing affine functions,
- a collision search proving that no correction g exists for a
  non-affine modification of theta.
'''

from collections import OrderedDict, namedtuple
import logging
import math

import numpy as np

from .catalog import STANDARD
from .errors import \
    InvalidParams, NotInvertible, OverlapGenError, SpecError
from .genfn import \
    AffineWrap, InverseFn, Interval, NON_DECREASING, NON_INCREASING, PASS, \
    Witness, compose, evaluate, inverse_monotone, monotonicity_probe
from .pair import \
    GeneratorPair, ProbeConfig, VALID, affine_pair, normalize, validate_pair
from .xreal import INF, NINF, ONE, affine_map, finite, xadd


AFFINE = 'affine'
VIOLATION = 'violation'

CONSISTENT = 'consistent'
CONTRADICTION = 'contradiction'

# number of sorted-table neighbours refined by the collision search
REFINED_CANDIDATES = 16


AffinityVerdict = namedtuple(
    'AffinityVerdict',
    ['outcome', 'c', 'a', 'witness', 'max_residual', 'max_gap', 'seed'])

Collision = namedtuple(
    'Collision',
    ['x1', 'y1', 'x2', 'y2', 'lhs_sum', 'rhs_sum_1', 'rhs_sum_2'])
Collision.__doc__ = '''
Two argument pairs whose modified-generator sums agree (lhs_sum) while
the original sums (rhs_sum_1, rhs_sum_2) differ. A correction function g
would have to take both values at lhs_sum.'''

CollisionVerdict = namedtuple(
    'CollisionVerdict', ['outcome', 'witness', 'collisions'])


def _require_strict(fn, interval, direction, cfg, what):
    report = monotonicity_probe(
        fn, cfg.grid_n, direction, strict=True, tol_strict=cfg.tol_strict,
        scheme=cfg.scheme, interval=interval, x_max=cfg.x_max,
        cluster_depth=cfg.cluster_depth)
    if report.verdict != PASS:
        x1, x2 = (w[0] for w in report.witnesses[0].points)
        raise NotInvertible('{} is not strictly monotone between {} and {} '
                            '(at resolution {})'\
                            .format(what, x1, x2, cfg.grid_n))
    logging.debug('{} is strictly monotone at resolution {}'\
                  .format(what, cfg.grid_n))


def _direction(p):
    return NON_INCREASING if p.orientation == STANDARD else NON_DECREASING


def _finish(p, q, validate, cfg, caveats=()):
    # validate the transformed pair and attach the report
    caveats = list(caveats)
    if not validate:
        return q
    report = validate_pair(q, cfg)
    if report.overall != VALID:
        source = p.report if p.report is not None else validate_pair(p, cfg)
        if source.overall == VALID:
            logging.error('transform of a valid pair is {}'\
                          .format(report.overall))
            caveats.append('transform_defect')
    q.report = report._replace(caveats=list(report.caveats) + caveats)
    return q


def affine_outer(p, k, b, validate=True, cfg=ProbeConfig()):
    '''
    The pair (k*theta + b, vartheta o g) with g(x) = (x - 2b)/k. It
    generates the same overlap function; for k < 0 the orientation flips.
    '''
    if k == 0:
        raise InvalidParams('affine outer transform needs k != 0')
    q = affine_pair(p, k, b)
    return _finish(p, q, validate, cfg,
                   ['orientation_flipped'] if k < 0 else [])


def shift(p, b, validate=True, cfg=ProbeConfig()):
    '''(theta + b, vartheta(. - 2b)); the anchor moves by 2b.'''
    return affine_outer(p, 1.0, b, validate, cfg)


def _conjugated_pair(p, k, b, tol):
    # (k*theta + b, g o vartheta) with g = vartheta o (h+b)^-1 o vartheta^-1
    # and (h+b)(x) = k*x + 2b
    theta = AffineWrap(affine_map(k, b), p.theta, 'outer')
    theta_one = evaluate(theta, ONE)
    anchor = xadd(theta_one, theta_one)
    R = Interval(anchor, INF) if p.orientation == STANDARD \
        else Interval(NINF, anchor)
    if not p.vartheta.domain.covers(R):
        raise InvalidParams('vartheta is not defined on the new relevant '
                            'interval {}'.format(R))
    base = p.vartheta.restrict(R)
    g = compose(
        AffineWrap(affine_map(1.0 / k, -2.0 * b / k), p.vartheta, 'inner'),
        InverseFn(base, tol))
    return GeneratorPair(theta, compose(g, base), p.orientation)


def conjugated_outer(p, k, b, tol=1e-12, validate=True, cfg=ProbeConfig()):
    '''
    The pair (k*theta + b, g o vartheta) with
    g = vartheta o (h+b)^-1 o vartheta^-1 evaluated through bisection at
    tolerance `tol`. Needs k > 0, b >= 0 and vartheta strictly monotone
    on the relevant interval.
    '''
    if not (k > 0 and b >= 0):
        raise InvalidParams('conjugated outer transform needs k > 0 and '
                            'b >= 0, got k={}, b={}'.format(k, b))
    _require_strict(p.vartheta, p.relevant_interval, _direction(p),
                    cfg, 'vartheta')
    return _finish(p, _conjugated_pair(p, k, b, tol), validate, cfg)


def _check_inner_params(p, c, m, cfg):
    if not (c > 0 and m >= 0):
        raise InvalidParams('inner composition needs c > 0 and m >= 0, '
                            'got c={}, m={}'.format(c, m))
    t1 = p.theta_one.value
    # c*theta + m has to stay inside the range of theta for h to exist
    if p.sign * (c * t1 + m - t1) < 0:
        raise InvalidParams('c*theta(1) + m = {} leaves the range of theta'\
                            .format(c * t1 + m))
    _require_strict(p.theta, p.theta.domain, _direction(p), cfg,
                    'theta')


def inner_map(p, c, m, tol=1e-12):
    '''h = theta^-1 o (c*theta + m) on [0,1], for inspection.'''
    return compose(InverseFn(p.theta, tol),
                   AffineWrap(affine_map(c, m), p.theta, 'outer'))


def inner_composition(p, c, m, tol=1e-12, validate=True, cfg=ProbeConfig()):
    '''
    The pair (theta o h, vartheta o g) with theta o h = c*theta + m
    realized directly and g(x) = (x - 2m)/c.
    '''
    _check_inner_params(p, c, m, cfg)
    return _finish(p, affine_pair(p, c, m), validate, cfg)


def inner_composition_conjugate(p, c, m, tol=1e-12, validate=True,
                                cfg=ProbeConfig()):
    '''
    The pair (theta o h, g o vartheta) with g = vartheta o f^-1 o
    vartheta^-1 and f(x) = c*x + 2m, built from numerical inverses.
    '''
    _check_inner_params(p, c, m, cfg)
    _require_strict(p.vartheta, p.relevant_interval, _direction(p),
                    cfg, 'vartheta')
    return _finish(p, _conjugated_pair(p, c, m, tol), validate, cfg)


TRANSFORMS = OrderedDict([
    ('affine_outer', (affine_outer, ('k', 'b'), ())),
    ('shift', (shift, ('b',), ())),
    ('normalize', (None, (), ())),
    ('conjugated_outer', (conjugated_outer, ('k', 'b'), ('tol',))),
    ('inner_composition', (inner_composition, ('c', 'm'), ('tol',))),
    ('inner_composition_conjugate',
     (inner_composition_conjugate, ('c', 'm'), ('tol',))),
])


def apply_transform(p, op, params, validate=True, cfg=ProbeConfig()):
    '''
    Apply the transform named `op` with the parameter dict `params`.
    '''
    if op not in TRANSFORMS:
        raise SpecError('unknown transform: {}'.format(op))
    fn, required, optional = TRANSFORMS[op]
    missing = [k for k in required if k not in params]
    unknown = [k for k in params if k not in required + optional]
    if missing or unknown:
        raise InvalidParams('{} takes the parameters {}{}, got {}'.format(
            op, list(required),
            ' (optional: {})'.format(list(optional)) if optional else '',
            sorted(params)))
    kwargs = {k: float(v) for k, v in params.items()}
    logging.info('applying {} with {}'.format(op, kwargs))
    if op == 'normalize':
        return _finish(p, normalize(p), validate, cfg)
    return fn(p, validate=validate, cfg=cfg, **kwargs)


def jensen_affinity_test(f, window, n=65, tol=1e-9, batch=256, seed=42):
    '''
    Decide whether `f` is affine on the finite `window`: a least-squares
    fit c*x + a must reproduce all n samples, and the midpoint identity
    f((x+y)/2) = (f(x)+f(y))/2 must hold for a seeded random batch of
    pairs (plus the pair of window ends) within tol*max(1, max|f|).
    '''
    if not window.is_finite:
        raise ValueError('Jensen test needs a finite window')
    if n < 8:
        raise ValueError('Jensen test needs n >= 8')
    lo, hi = window.lo.value, window.hi.value

    def _f(x):
        return evaluate(f, finite(x)).to_float()

    xs = np.linspace(lo, hi, n)
    ys = np.array([_f(x) for x in xs])
    if not np.all(np.isfinite(ys)):
        i = int(np.argmin(np.isfinite(ys)))
        return AffinityVerdict(
            VIOLATION, None, None,
            Witness([(finite(xs[i]), evaluate(f, finite(xs[i])))],
                    'infinite_value'),
            math.inf, math.inf, seed)
    A = np.column_stack([xs, np.ones(n)])
    (c, a), _, _, _ = np.linalg.lstsq(A, ys, rcond=None)
    max_residual = float(np.max(np.abs(A.dot([c, a]) - ys)))

    rng = np.random.default_rng(seed)
    pairs = np.vstack([[lo, hi], rng.uniform(lo, hi, size=(batch, 2))])
    gaps = []
    for x, y in pairs:
        fx, fy, fm = _f(x), _f(y), _f(0.5 * (x + y))
        gaps.append((abs(fm - 0.5 * (fx + fy)), x, y, fx, fy, fm))
    worst = max(gaps, key=lambda g: g[0])
    scale = max(1.0, float(np.max(np.abs(ys))))
    logging.debug('Jensen test: residual {}, midpoint gap {}'\
                  .format(max_residual, worst[0]))
    if max_residual <= tol * scale and worst[0] <= tol * scale:
        return AffinityVerdict(AFFINE, float(c), float(a), None,
                               max_residual, worst[0], seed)
    gap, x, y, fx, fy, fm = worst
    witness = Witness(
        [(finite(x), finite(fx)), (finite(y), finite(fy)),
         (finite(0.5 * (x + y)), finite(fm))], 'midpoint_gap')
    return AffinityVerdict(VIOLATION, float(c), float(a), witness,
                           max_residual, gap, seed)


def _sum(fn, x, y):
    return xadd(evaluate(fn, finite(x)), evaluate(fn, finite(y)))


def _solve_partner(theta_new, target):
    # x with theta_new(x) = target, or None
    try:
        return inverse_monotone(theta_new, finite(target), tol=0.0).value
    except OverlapGenError as e:
        logging.debug('no partner for {}: [{}] {}'.format(target, e.code, e))
        return None


def _collision(theta_orig, theta_new, x1, y1, x2, y2, tol_match, tol_sep):
    # a Collision if (x1,y1) and (x2,y2) collide under theta_new only
    try:
        lhs, lhs2 = _sum(theta_new, x1, y1), _sum(theta_new, x2, y2)
        rhs1, rhs2 = _sum(theta_orig, x1, y1), _sum(theta_orig, x2, y2)
    except OverlapGenError:
        return None
    if not all(v.is_finite for v in (lhs, lhs2, rhs1, rhs2)):
        return None
    if abs(lhs.value - lhs2.value) > tol_match * max(1.0, abs(lhs.value)):
        return None
    if abs(rhs1.value - rhs2.value) <= tol_sep:
        return None
    return Collision(x1, y1, x2, y2, lhs.value, rhs1.value, rhs2.value)


def _anchor_collisions(theta_orig, theta_new, x1, y1, tol_match, tol_sep):
    try:
        lhs = _sum(theta_new, x1, y1)
        new_one = evaluate(theta_new, ONE)
    except OverlapGenError:
        return []
    if not (lhs.is_finite and new_one.is_finite):
        return []
    result = []
    # a partner on the diagonal x2 = y2 and one on the edge y2 = 1
    t = _solve_partner(theta_new, 0.5 * lhs.value)
    if t is not None and not (t == x1 and t == y1):
        result.append(_collision(theta_orig, theta_new, x1, y1, t, t,
                                 tol_match, tol_sep))
    t = _solve_partner(theta_new, lhs.value - new_one.value)
    if t is not None and not (t == x1 and y1 == 1.0):
        result.append(_collision(theta_orig, theta_new, x1, y1, t, 1.0,
                                 tol_match, tol_sep))
    return [c for c in result if c is not None]


def _table_collisions(theta_orig, theta_new, probes, tol_match, tol_sep):
    xs = [i / probes for i in range(1, probes + 1)]
    new_vals = [evaluate(theta_new, finite(x)) for x in xs]
    orig_vals = [evaluate(theta_orig, finite(x)) for x in xs]
    entries = []
    for i in range(probes):
        for j in range(i, probes):
            s_new = xadd(new_vals[i], new_vals[j])
            s_orig = xadd(orig_vals[i], orig_vals[j])
            if s_new.is_finite and s_orig.is_finite:
                entries.append((s_new.value, s_orig.value, i, j))
    if len(entries) < 2:
        return []
    table = np.array([e[:2] for e in entries])
    order = np.argsort(table[:, 0], kind='stable')
    # neighbours in the sorted table: nearly equal new sums; the ones
    # with the most different original sums are refined first
    sep = np.abs(np.diff(table[order, 1]))
    candidates = np.argsort(-sep, kind='stable')[:REFINED_CANDIDATES]
    result = []
    for c in candidates:
        _, _, i1, j1 = entries[order[c]]
        _, _, i2, j2 = entries[order[c + 1]]
        x1, y1, x2, y2 = xs[i1], xs[j1], xs[i2], xs[j2]
        target = _sum(theta_new, x1, y1).value
        # refine one coordinate of the second pair so that the sums match
        for fixed, swap in ((y2, False), (x2, True)):
            t = _solve_partner(
                theta_new, target - evaluate(theta_new, finite(fixed)).value)
            if t is None:
                continue
            pair2 = (fixed, t) if swap else (t, fixed)
            found = _collision(theta_orig, theta_new, x1, y1, pair2[0],
                               pair2[1], tol_match, tol_sep)
            if found is not None:
                result.append(found)
                break
    return result


def collision_falsifier(theta_orig, theta_new, probes=64, tol_match=1e-12,
                        tol_sep=1e-6, anchors=()):
    '''
    Search for argument pairs (x1,y1), (x2,y2) with
    theta_new(x1) + theta_new(y1) = theta_new(x2) + theta_new(y2) (within
    tol_match) but theta_orig sums differing by more than tol_sep. Such a
    collision shows that no g makes (theta_new, vartheta o g) generate the
    overlap function of (theta_orig, vartheta).

    Anchors (x, y) are tried first, with partners solved on the diagonal
    and on the edge y = 1; then pairs from a sorted sum table over the
    grid i/probes are refined by bisection on one coordinate.
    '''
    collisions = []
    for x1, y1 in anchors:
        collisions.extend(_anchor_collisions(
            theta_orig, theta_new, float(x1), float(y1), tol_match, tol_sep))
    anchored = len(collisions)
    table = _table_collisions(theta_orig, theta_new, probes, tol_match,
                              tol_sep)
    table.sort(key=lambda c: -abs(c.rhs_sum_1 - c.rhs_sum_2))
    collisions.extend(table)
    if not collisions:
        logging.info('collision search ({} probes): consistent'\
                     .format(probes))
        return CollisionVerdict(CONSISTENT, None, [])
    witness = collisions[0]
    logging.info('collision search ({} probes): {} contradiction(s), {} from '
                 'anchors'.format(probes, len(collisions), anchored))
    return CollisionVerdict(CONTRADICTION, witness, collisions)
