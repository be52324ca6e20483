'''
Unary generator functions on extended-real intervals: representation,
evaluation, composition, sampling, numerical inversion, and sampled
monotonicity/continuity probes.

A function is one of the forms below (catalog builtins live in
`catalog`). Every form has a `domain` and evaluates XReal -> XReal.
Sampling can never prove continuity or strictness; every probe report
therefore carries its grid size and caveats.
'''

from collections import namedtuple
import logging
import math

import numpy as np

from .errors import \
    ConvergenceError, DomainError, DomainMismatch, MonotonicityViolation, \
    NotBracketed
from .expr import Expression
from .xreal import \
    EQ, GT, LT, FINITE, INF, NINF, XReal, affine_apply, affine_inverse, \
    finite, xcmp


# unbounded domains are sampled on a finite window of this width
X_MAX = 64.0

# relative distance within which an argument is snapped onto a finite
# domain endpoint (rounding of affine pre-images)
DOMAIN_SLACK = 1e-12

# margin for "strictly decreasing/increasing" probes
TOL_STRICT = 1e-12

# number of geometric sample points approaching an asymptote
CLUSTER_DEPTH = 30

# bisection budget of inverse_monotone()
MAX_BISECTIONS = 200

# continuity probe: levels and breadth of the refinement of steep cells
ZOOM_DEPTH = 40
ZOOM_WIDTH = 8

MAX_WITNESSES = 3

PASS = 'pass'
FAIL = 'fail'
INCONCLUSIVE = 'inconclusive'

UNIFORM = 'uniform'
ENDPOINT_GEOMETRIC = 'endpoint_geometric'

NON_INCREASING = 'non_increasing'
NON_DECREASING = 'non_decreasing'


Witness = namedtuple('Witness', ['points', 'description'])
Witness.__doc__ = '''
Concrete evidence for a failed condition: a list of (input, output)
points and a short description code.'''

ProbeReport = namedtuple(
    'ProbeReport',
    ['verdict', 'witnesses', 'grid_n', 'refinement_ratio', 'caveats',
     'stats'])
ProbeReport.__new__.__defaults__ = (None, (), None)


def probe_report(verdict, witnesses=(), grid_n=0, refinement_ratio=None,
                 caveats=(), stats=None):
    witnesses = tuple(witnesses)
    if verdict == FAIL and not witnesses:
        raise ValueError('a failed probe needs a witness')
    return ProbeReport(verdict, witnesses, grid_n, refinement_ratio,
                       tuple(caveats), dict(stats or {}))


def worst_verdict(verdicts):
    verdicts = list(verdicts)
    if FAIL in verdicts:
        return FAIL
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    return PASS


def merge_reports(reports):
    '''
    Combine several probe reports into one: the worst verdict, all
    witnesses and caveats, the largest grid and refinement ratio.
    '''
    reports = list(reports)
    caveats = []
    for r in reports:
        caveats.extend(c for c in r.caveats if c not in caveats)
    ratios = [r.refinement_ratio for r in reports \
              if r.refinement_ratio is not None]
    stats = {}
    for r in reports:
        stats.update(r.stats)
    return probe_report(
        worst_verdict(r.verdict for r in reports),
        witnesses=[w for r in reports for w in r.witnesses],
        grid_n=max([r.grid_n for r in reports] or [0]),
        refinement_ratio=max(ratios) if ratios else None,
        caveats=caveats,
        stats=stats)


class Interval(namedtuple('Interval', ['lo', 'hi', 'lo_closed', 'hi_closed'])):
    '''
    An interval of extended reals. Infinite endpoints may be closed, as
    in [0,+inf].
    '''

    __slots__ = ()

    def __new__(cls, lo, hi, lo_closed=True, hi_closed=True):
        lo, hi = XReal.of(lo), XReal.of(hi)
        if xcmp(lo, hi) == GT:
            raise ValueError('empty interval [{}, {}]'.format(lo, hi))
        return super(Interval, cls).__new__(
            cls, lo, hi, bool(lo_closed), bool(hi_closed))

    def contains(self, x):
        c_lo, c_hi = xcmp(x, self.lo), xcmp(x, self.hi)
        if c_lo == LT or c_hi == GT:
            return False
        if c_lo == EQ and not self.lo_closed:
            return False
        if c_hi == EQ and not self.hi_closed:
            return False
        return True

    def snap(self, x):
        '''
        Return x if it lies in the interval, the nearest closed finite
        endpoint if x misses it by rounding only; raise DomainError
        otherwise.
        '''
        if self.contains(x):
            return x
        if x.is_finite:
            for end, closed in ((self.lo, self.lo_closed),
                                (self.hi, self.hi_closed)):
                if closed and end.is_finite and abs(x.value - end.value) \
                        <= DOMAIN_SLACK * max(1.0, abs(end.value)):
                    return end
        raise DomainError('{} is outside of {}'.format(x, self))

    def covers(self, other):
        '''True if `other` is a sub-interval (up to endpoint slack).'''
        for end, closed in ((other.lo, other.lo_closed),
                            (other.hi, other.hi_closed)):
            if closed:
                try:
                    self.snap(end)
                except DomainError:
                    return False
            elif xcmp(end, self.lo) == LT or xcmp(end, self.hi) == GT:
                return False
        return True

    @property
    def is_finite(self):
        return self.lo.is_finite and self.hi.is_finite

    def finite_window(self, x_max=X_MAX):
        '''
        The finite part sampled by grids: infinite endpoints are replaced
        by a window of width `x_max` next to the finite one.
        '''
        if self.lo.is_finite and self.hi.is_finite:
            return self.lo.value, self.hi.value
        if self.lo.is_finite:
            return self.lo.value, self.lo.value + x_max
        if self.hi.is_finite:
            return self.hi.value - x_max, self.hi.value
        return -x_max, x_max

    def to_json(self):
        return [self.lo.to_json(), self.hi.to_json()]

    def __str__(self):
        return '{}{}, {}{}'.format(
            '[' if self.lo_closed else '(', self.lo, self.hi,
            ']' if self.hi_closed else ')')


UNIT = Interval(0, 1)
NON_NEGATIVE = Interval(0, 'inf')
NON_POSITIVE = Interval('-inf', 0)
EXTENDED = Interval('-inf', 'inf')


def interval_from_json(data):
    lo, hi = data
    return Interval(lo, hi)


class UnaryFn:
    '''
    Base class of generator function descriptors. Subclasses implement
    `_eval(x)` for x already inside `self.domain`, and `describe()`.
    '''

    domain = EXTENDED

    def __call__(self, x):
        return evaluate(self, x)

    def _eval(self, x):
        raise NotImplementedError()

    def describe(self):
        raise NotImplementedError()

    def restrict(self, domain):
        return Restricted(self, domain)

    def __repr__(self):
        return '{}({})'.format(type(self).__name__, self.describe())


class AffineWrap(UnaryFn):
    '''
    An affine map applied after (side "outer": k*f(x)+b) or before
    (side "inner": f(k*x+b)) another function.
    '''

    def __init__(self, affine, inner, side='outer'):
        if side not in ('outer', 'inner'):
            raise ValueError('side must be "outer" or "inner"')
        self.affine = affine
        self.inner = inner
        self.side = side
        if side == 'outer':
            self.domain = inner.domain
        else:
            self.domain = _preimage(affine, inner.domain)

    def _eval(self, x):
        if self.side == 'outer':
            return affine_apply(self.affine, evaluate(self.inner, x))
        return evaluate(self.inner, affine_apply(self.affine, x))

    def describe(self):
        return {'kind': 'affine', 'k': self.affine.k, 'b': self.affine.b,
                'side': self.side, 'of': self.inner.describe()}


def _preimage(m, domain):
    if m.k == 0:
        if not domain.contains(finite(m.b)):
            raise DomainMismatch('constant {} is outside of {}'\
                                 .format(m.b, domain))
        return EXTENDED
    inv = affine_inverse(m)
    lo, hi = affine_apply(inv, domain.lo), affine_apply(inv, domain.hi)
    if m.k > 0:
        return Interval(lo, hi, domain.lo_closed, domain.hi_closed)
    return Interval(hi, lo, domain.hi_closed, domain.lo_closed)


class Composition(UnaryFn):
    '''x -> outer(inner(x)); built through compose().'''

    def __init__(self, outer, inner):
        self.outer = outer
        self.inner = inner
        self.domain = inner.domain

    def _eval(self, x):
        return evaluate(self.outer, evaluate(self.inner, x))

    def describe(self):
        return {'kind': 'compose', 'outer': self.outer.describe(),
                'inner': self.inner.describe()}


class Piecewise(UnaryFn):
    '''
    A table of (breakpoint, closed-form expression) segments. Segment i
    applies on [breakpoint_i, breakpoint_{i+1}); the last one up to and
    including the upper domain end.
    '''

    def __init__(self, segments, domain):
        if not segments:
            raise ValueError('piecewise function needs a segment')
        self.domain = domain
        self.segments = []
        for bp, ex in segments:
            bp = XReal.of(bp)
            if not isinstance(ex, Expression):
                ex = Expression(str(ex))
            if not domain.contains(bp) and xcmp(bp, domain.lo) != EQ:
                raise ValueError('breakpoint {} outside of {}'\
                                 .format(bp, domain))
            if self.segments and xcmp(bp, self.segments[-1][0]) != GT:
                raise ValueError('breakpoints must be strictly increasing')
            self.segments.append((bp, ex))

    def _eval(self, x):
        ex = self.segments[0][1]
        for bp, seg_ex in self.segments[1:]:
            if xcmp(x, bp) == LT:
                break
            ex = seg_ex
        return XReal.of(ex(x.to_float()))

    def describe(self):
        if len(self.segments) == 1 and self.segments[0][0] == self.domain.lo:
            return {'kind': 'expression', 'expr': self.segments[0][1].source,
                    'domain': self.domain.to_json()}
        return {'kind': 'piecewise', 'domain': self.domain.to_json(),
                'segments': [[bp.to_json(), ex.source] \
                             for bp, ex in self.segments]}


def expression_fn(source, domain=UNIT):
    '''A single closed-form expression on `domain`.'''
    return Piecewise([(domain.lo, source)], domain)


def step_fn(at, low, high, domain=UNIT):
    '''Constant `low` below `at`, constant `high` from `at` on.'''
    return Piecewise([(domain.lo, repr(float(low))),
                      (at, repr(float(high)))], domain)


def plateau_fn(source, start, level, domain=UNIT):
    '''`source` below `start`, the constant `level` from `start` on.'''
    return Piecewise([(domain.lo, source), (start, repr(float(level)))],
                     domain)


class InverseFn(UnaryFn):
    '''
    The numerical inverse of a continuous strictly monotone function,
    evaluated by bisection at tolerance `tol`.
    '''

    def __init__(self, fn, tol=1e-12):
        self.fn = fn
        self.tol = tol
        a = _endpoint_value(fn, fn.domain.lo, fn.domain.lo_closed, +1)
        b = _endpoint_value(fn, fn.domain.hi, fn.domain.hi_closed, -1)
        if xcmp(a, b) == GT:
            a, b = b, a
        self.domain = Interval(a, b)

    def _eval(self, y):
        return inverse_monotone(self.fn, y, self.tol)

    def describe(self):
        return {'kind': 'inverse', 'of': self.fn.describe(), 'tol': self.tol}


class Restricted(UnaryFn):
    '''A function restricted to a sub-interval of its domain.'''

    def __init__(self, fn, domain):
        if not fn.domain.covers(domain):
            raise DomainError('{} is not inside {}'.format(domain, fn.domain))
        self.fn = fn
        self.domain = domain

    def _eval(self, x):
        return evaluate(self.fn, x)

    def describe(self):
        return {'kind': 'restrict', 'of': self.fn.describe(),
                'domain': self.domain.to_json()}


def evaluate(f, x):
    '''
    Evaluate `f` at `x` (number or XReal). Raises DomainError if `x` is
    outside of the domain of `f`.
    '''
    x = f.domain.snap(XReal.of(x))
    return f._eval(x)


def _endpoint_value(f, end, closed, inward):
    if closed:
        return evaluate(f, end)
    if not end.is_finite:
        raise DomainError('open infinite endpoint has no value')
    return evaluate(f, finite(math.nextafter(end.value, inward * math.inf)))


def compose(outer, inner, n=65, x_max=X_MAX):
    '''
    Compose two functions after checking, on a sampled grid including
    the endpoints, that the range of `inner` stays inside the domain of
    `outer`. Raises DomainMismatch with the offending point otherwise.
    '''
    for x, v in sample_grid(inner, n, ENDPOINT_GEOMETRIC, x_max=x_max):
        try:
            outer.domain.snap(v)
        except DomainError:
            raise DomainMismatch(
                'inner value {} at x={} leaves the domain {} of the outer '
                'function'.format(v, x, outer.domain),
                witness=Witness([(x, v)], 'range_outside_domain'))
    return Composition(outer, inner)


def inverse_monotone(f, y, tol=1e-12, max_iter=MAX_BISECTIONS):
    '''
    Find x with f(x) = y for a continuous strictly monotone `f` by
    bisection, until the bracket is narrower than tol*max(1,|x|) and its
    end values differ by at most tol (tol=0 means down to float
    resolution). Endpoint values, including infinite ones, are answered
    exactly.
    '''
    y = XReal.of(y)
    dom = f.domain
    f_lo = _endpoint_value(f, dom.lo, dom.lo_closed, +1)
    f_hi = _endpoint_value(f, dom.hi, dom.hi_closed, -1)
    if f_lo == y and dom.lo_closed:
        return dom.lo
    if f_hi == y and dom.hi_closed:
        return dom.hi
    order = xcmp(f_lo, f_hi)
    if order == EQ:
        raise NotBracketed('{} is constant at the ends of {}'\
                           .format(y, dom))
    increasing = order == LT

    def _side(v):
        # <0: the root lies to the right of the sample, >0: to the left
        c = xcmp(v, y)
        return c if increasing else -c

    if _side(f_lo) > 0 or _side(f_hi) < 0:
        raise NotBracketed('{} is outside of the range [{}, {}]'\
                           .format(y, *sorted([f_lo, f_hi])))
    if not y.is_finite:
        raise NotBracketed('{} is not attained'.format(y))

    a, b = dom.finite_window(1.0)
    if not dom.lo.is_finite:
        a, f_a = _expand(f, a, -1, _side, max_iter)
    else:
        f_a = f_lo if dom.lo_closed else evaluate(f, finite(a))
    if not dom.hi.is_finite:
        b, f_b = _expand(f, max(b, a + 1.0), +1, _side, max_iter)
    else:
        f_b = f_hi if dom.hi_closed else evaluate(f, finite(b))
    if _side(f_a) == 0:
        return finite(a)
    if _side(f_b) == 0:
        return finite(b)

    for i in range(max_iter):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b or \
                ((b - a) <= tol * max(1.0, abs(mid))
                 and _gap(f_a, f_b) <= tol):
            logging.debug('bisection for {} converged after {} steps'\
                          .format(y, i))
            return finite(_closest(f, a, f_a, b, f_b, y))
        f_m = evaluate(f, finite(mid))
        if not _between(f_a, f_m, f_b):
            raise MonotonicityViolation(
                'samples at {}, {}, {} are not monotone'.format(a, mid, b),
                witness=Witness([(finite(a), f_a), (finite(mid), f_m),
                                 (finite(b), f_b)], 'not_monotone'))
        s = _side(f_m)
        if s == 0:
            return finite(mid)
        if s < 0:
            a, f_a = mid, f_m
        else:
            b, f_b = mid, f_m
    raise ConvergenceError('bisection for {} did not converge within {} '
                           'steps'.format(y, max_iter))


def _expand(f, start, sign, side, max_iter):
    # move a finite bracket end outwards until it passes the root
    x = start
    step = max(1.0, abs(start))
    for _ in range(max_iter):
        v = evaluate(f, finite(x))
        if side(v) * sign >= 0:
            return x, v
        x = x + sign * step
        step *= 2.0
        if abs(x) > 1e300:
            break
    raise NotBracketed('no finite bracket found for an unbounded domain')


def _gap(f_a, f_b):
    if f_a.is_finite and f_b.is_finite:
        return abs(f_b.value - f_a.value)
    return math.inf


def _between(f_a, f_m, f_b):
    lo, hi = (f_a, f_b) if xcmp(f_a, f_b) != GT else (f_b, f_a)
    if xcmp(f_m, lo) != LT and xcmp(f_m, hi) != GT:
        return True
    if f_m.is_finite and lo.is_finite and hi.is_finite:
        slack = TOL_STRICT * max(1.0, abs(f_m.value))
        return lo.value - slack <= f_m.value <= hi.value + slack
    return False


def _closest(f, a, f_a, b, f_b, y):
    if not (f_a.is_finite and f_b.is_finite):
        return b if f_b.is_finite else a
    return a if abs(f_a.value - y.value) <= abs(f_b.value - y.value) else b


def sample_grid(f, n, scheme=UNIFORM, interval=None, x_max=X_MAX,
                cluster_depth=CLUSTER_DEPTH):
    '''
    Sample `f` on `n` equally spaced points of the finite window of its
    domain (or of `interval`), plus the infinite endpoints as exact tag
    samples. The `endpoint_geometric` scheme adds geometric clusters
    approaching every finite endpoint where `f` is infinite.
    Returns a list of (x, f(x)) pairs sorted by x.
    '''
    if n < 3:
        raise ValueError('grid needs at least 3 points')
    dom = interval or f.domain
    lo, hi = dom.finite_window(x_max)
    xs = [finite(v) for v in np.linspace(lo, hi, n)]
    for end, closed in ((dom.lo, dom.lo_closed), (dom.hi, dom.hi_closed)):
        if closed and not end.is_finite:
            xs.append(end)
    samples = {}
    for x in xs:
        if dom.contains(x):
            samples[x] = evaluate(f, x)
    if scheme == ENDPOINT_GEOMETRIC:
        width = hi - lo
        for end, sign in ((dom.lo, +1), (dom.hi, -1)):
            if not end.is_finite or end not in samples \
                    or samples[end].is_finite:
                continue
            for k in range(1, cluster_depth + 1):
                x = finite(end.value + sign * width * 2.0 ** -k)
                if dom.contains(x) and x not in samples:
                    samples[x] = evaluate(f, x)
    elif scheme != UNIFORM:
        raise ValueError('unknown sampling scheme: {}'.format(scheme))
    return sorted(samples.items(), key=lambda p: _SortKey(p[0]))


class _SortKey:
    __slots__ = ('x',)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return xcmp(self.x, other.x) == LT


def _increase(f1, f2, strict, tol_strict):
    # True if going from f1 to f2 violates "non-increasing"
    # (or "decreasing" when strict)
    if not (f1.is_finite and f2.is_finite):
        return xcmp(f2, f1) != LT if strict else xcmp(f2, f1) == GT
    if strict:
        diff = f1.value - f2.value
        return not (diff > 0 and
                    diff > tol_strict * max(abs(f1.value), abs(f2.value)))
    return f2.value - f1.value > \
        tol_strict * max(1.0, abs(f1.value), abs(f2.value))


def monotonicity_probe(f, n, direction=NON_INCREASING, strict=False,
                       tol_strict=TOL_STRICT, scheme=ENDPOINT_GEOMETRIC,
                       interval=None, x_max=X_MAX,
                       cluster_depth=CLUSTER_DEPTH):
    '''
    Check the sampled values of `f` for the given direction; with
    `strict`, plateaus (within tol_strict) also count as violations.
    '''
    if direction not in (NON_INCREASING, NON_DECREASING):
        raise ValueError('unknown direction: {}'.format(direction))
    samples = sample_grid(f, n, scheme, interval, x_max, cluster_depth)
    witnesses = []
    for (x1, f1), (x2, f2) in zip(samples, samples[1:]):
        bad = _increase(f1, f2, strict, tol_strict) \
              if direction == NON_INCREASING \
              else _increase(-f1, -f2, strict, tol_strict)
        if bad:
            witnesses.append(Witness(
                [(x1, f1), (x2, f2)],
                'plateau' if f1 == f2 else 'wrong_direction'))
            if len(witnesses) >= MAX_WITNESSES:
                break
    caveats = ['strict_at_resolution'] if strict else []
    verdict = FAIL if witnesses else PASS
    logging.debug('monotonicity probe ({}, strict={}): {}'\
                  .format(direction, strict, verdict))
    return probe_report(verdict, witnesses, grid_n=n, caveats=caveats,
                        stats={'samples': len(samples)})


def _persistent_step(fine_fn, cells, tol, depth=ZOOM_DEPTH,
                     width=ZOOM_WIDTH):
    # cells: (xa, va, xb, vb) with |vb - va| > tol; each level splits them
    # in four and keeps the `width` largest steps still above tol.
    # Returns the first cell that cannot be split any further, None once
    # all steps fell to tol, False if `depth` levels did not settle it.
    for _ in range(depth):
        if not cells:
            return None
        refined = []
        for xa, va, xb, vb in cells:
            pts = [xa + (xb - xa) * j / 4.0 for j in (1, 2, 3)]
            if not xa < pts[0] < pts[1] < pts[2] < xb:
                return (xa, va), (xb, vb)
            xs = [xa] + pts + [xb]
            vals = [va] + [fine_fn(p) for p in pts] + [vb]
            refined.extend(
                (xs[k], vals[k], xs[k+1], vals[k+1]) for k in range(4)
                if abs(vals[k+1] - vals[k]) > tol)
        refined.sort(key=lambda c: abs(c[3] - c[1]), reverse=True)
        cells = refined[:width]
    return False if cells else None


def refinement_verdict(xs, coarse, fine_fn, tol):
    '''
    Two-resolution oscillation test on a line. `xs`/`coarse` are float
    abscissae and values of the coarse grid; `fine_fn(x)` evaluates at
    the three extra points inserted into each cell. A cell whose step at
    the fine resolution is still above `tol` is refined further: a step
    above `tol` that survives down to float resolution is a jump, one
    that falls to `tol` is a steep but continuous stretch.
    Returns (verdict, worst_cell, M(n), M(4n)) where worst_cell is
    (ratio, step, (xa, va), (xb, vb)) or None.
    '''
    m_coarse, m_fine = 0.0, 0.0
    flagged = {FAIL: [], INCONCLUSIVE: []}
    for i in range(len(xs) - 1):
        x0, x1 = xs[i], xs[i+1]
        v0, v1 = coarse[i], coarse[i+1]
        d = abs(v1 - v0)
        pts = [x0] + [x0 + (x1 - x0) * j / 4.0 for j in (1, 2, 3)] + [x1]
        vals = [v0] + [fine_fn(p) for p in pts[1:4]] + [v1]
        steps = [abs(b - a) for a, b in zip(vals, vals[1:])]
        j = int(np.argmax(steps))
        e = steps[j]
        m_coarse = max(m_coarse, d)
        m_fine = max(m_fine, e)
        if e <= tol:
            continue
        ratio = e / d if d > 0 else math.inf
        jump = _persistent_step(
            fine_fn, [(pts[k], vals[k], pts[k+1], vals[k+1])
                      for k in range(4) if steps[k] > tol], tol)
        if jump is None:
            continue
        if jump is False:
            flagged[INCONCLUSIVE].append(
                (ratio, e, (pts[j], vals[j]), (pts[j+1], vals[j+1])))
        else:
            (xa, va), (xb, vb) = jump
            flagged[FAIL].append((ratio, abs(vb - va), (xa, va), (xb, vb)))
    for verdict in (FAIL, INCONCLUSIVE):
        if flagged[verdict]:
            worst = max(flagged[verdict], key=lambda c: c[1])
            return verdict, worst, m_coarse, m_fine
    return PASS, None, m_coarse, m_fine


def continuity_probe(f, n, tol=1e-3, scheme=ENDPOINT_GEOMETRIC,
                     interval=None, x_max=X_MAX,
                     cluster_depth=CLUSTER_DEPTH):
    '''
    Compare the adjacent oscillation of `f` on its sampled finite window
    at resolution n and 4n, cell by cell; cells still steeper than `tol`
    are refined until their step vanishes or reaches float resolution
    (see `refinement_verdict`). Cells next to an infinite value are
    skipped (asymptotes are checked by tag).
    '''
    if n < 8:
        raise ValueError('continuity probe needs n >= 8')
    samples = sample_grid(f, n, scheme, interval, x_max, cluster_depth)
    runs, run = [], []
    for x, v in samples:
        if x.is_finite and v.is_finite:
            run.append((x.value, v.value))
        else:
            if len(run) > 1:
                runs.append(run)
            run = []
    if len(run) > 1:
        runs.append(run)

    def _fine(x):
        return evaluate(f, finite(x)).to_float()

    verdicts, witnesses = [], []
    m_coarse, m_fine = 0.0, 0.0
    for run in runs:
        xs = [p[0] for p in run]
        vs = [p[1] for p in run]
        verdict, worst, mc, mf = refinement_verdict(xs, vs, _fine, tol)
        verdicts.append(verdict)
        m_coarse, m_fine = max(m_coarse, mc), max(m_fine, mf)
        if verdict == FAIL:
            (xa, va), (xb, vb) = worst[2], worst[3]
            witnesses.append(Witness(
                [(finite(xa), XReal.of(va)), (finite(xb), XReal.of(vb))],
                'jump'))
    verdict = worst_verdict(verdicts)
    ratio = m_fine / m_coarse if m_coarse > 0 else 0.0
    if verdict == INCONCLUSIVE:
        logging.warning('continuity probe inconclusive at n={} (M(n)={}, '
                        'M(4n)={})'.format(n, m_coarse, m_fine))
    return probe_report(
        verdict, witnesses[:MAX_WITNESSES], grid_n=n,
        refinement_ratio=ratio, caveats=['continuous_at_resolution'],
        stats={'M_n': m_coarse, 'M_4n': m_fine})
