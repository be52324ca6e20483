'''
A direct numerical check of the overlap function axioms

  O1  O(x,y) = O(y,x),
  O2  O(x,y) = 0 iff x*y = 0,
  O3  O(x,y) = 1 iff x*y = 1,
  O4  O is non-decreasing in each argument,
  O5  O is continuous,

on a grid over [0,1]^2. The checker only ever calls O; it never looks at
generators, so its verdicts are independent evidence for the
characterization implemented in `pair`.
'''

from collections import OrderedDict, namedtuple
import logging

import numpy as np

from .expr import Expression
from .genfn import FAIL, INCONCLUSIVE, PASS, refinement_verdict, worst_verdict
from .pair import overlap_grid, overlap_value


# interior margin of the positivity and separation checks
DELTA = 1e-3

# number of rows and columns of the continuity test (plus the diagonal)
CONTINUITY_LINES = 9

O1, O2, O3, O4, O5 = 'O1', 'O2', 'O3', 'O4', 'O5'
AXIOMS = (O1, O2, O3, O4, O5)

EQUAL = 'equal'
DIFFER = 'differ'


AxiomWitness = namedtuple('AxiomWitness', ['points', 'description'])
AxiomWitness.__doc__ = '''
Evidence for a failed axiom: a list of (x, y, O(x,y)) triples and a
description code.'''

AxiomCheck = namedtuple('AxiomCheck', ['verdict', 'witnesses'])

AxiomReport = namedtuple('AxiomReport', ['axioms', 'grid_n', 'tol', 'overall'])

Equivalence = namedtuple('Equivalence', ['outcome', 'max_dev', 'witness'])
Equivalence.__doc__ = '''
Result of equivalent(): the witness is (x, y, Oa(x,y), Ob(x,y)) at the
largest deviation, or None if the functions are equal.'''


class BlackBoxOverlap:
    '''
    Anything that can be evaluated on [0,1]^2, with a name for reports.
    `grid_fn(n)` optionally provides a faster way to fill the n x n grid
    on linspace(0, 1, n).
    '''

    def __init__(self, fn, name='O', grid_fn=None):
        self.fn = fn
        self.name = name
        self._grid_fn = grid_fn

    def __call__(self, x, y):
        return float(self.fn(x, y))

    @staticmethod
    def from_pair(p, name='pair', processes=1):
        '''
        The function generated by a pair. Every cell is evaluated on its
        own and values outside [0,1] are passed through to the checks.
        '''
        return BlackBoxOverlap(
            lambda x, y: overlap_value(p, x, y), name,
            grid_fn=lambda n: overlap_grid(
                p, n, processes, symmetric=False, checked=False).values)

    @staticmethod
    def from_expression(source):
        '''A closed-form expression in x and y, e.g. "x*y" or "min(x,y)".'''
        return BlackBoxOverlap(Expression(source, ('x', 'y')), source)

    def grid(self, n):
        xs = np.linspace(0.0, 1.0, n)
        if self._grid_fn is not None:
            return xs, self._grid_fn(n)
        values = np.array([[self(x, y) for y in xs] for x in xs])
        return xs, values


def _point(xs, i, j, values):
    return (float(xs[i]), float(xs[j]), float(values[i, j]))


def _check_symmetry(xs, V, tol):
    D = np.abs(V - V.T)
    i, j = np.unravel_index(np.argmax(D), D.shape)
    if D[i, j] > tol:
        return AxiomCheck(FAIL, [AxiomWitness(
            [_point(xs, i, j, V), _point(xs, j, i, V)], 'asymmetric')])
    return AxiomCheck(PASS, [])


def _check_zero(O, xs, V, tol, delta):
    witnesses = []
    i, j = np.unravel_index(np.argmin(V), V.shape)
    if V[i, j] < -tol:
        witnesses.append(AxiomWitness([_point(xs, i, j, V)], 'below_zero'))
    # the edge x = 0 first, then y = 0
    for edge, label in ((V[0, :], 'x'), (V[:, 0], 'y')):
        k = int(np.argmax(np.abs(edge)))
        if abs(edge[k]) > tol:
            i, j = (0, k) if label == 'x' else (k, 0)
            witnesses.append(AxiomWitness([_point(xs, i, j, V)],
                                          'nonzero_on_boundary'))
            break
    tol_pos = O(delta, delta)
    if not tol_pos > tol:
        witnesses.append(AxiomWitness([(delta, delta, tol_pos)],
                                      'zero_in_interior'))
    else:
        inner = xs >= delta
        sub = V[np.ix_(inner, inner)]
        i, j = np.unravel_index(np.argmin(sub), sub.shape)
        if not sub[i, j] > tol:
            offset = int(np.argmax(inner))
            witnesses.append(AxiomWitness(
                [_point(xs, i + offset, j + offset, V)], 'zero_in_interior'))
    return AxiomCheck(FAIL if witnesses else PASS, witnesses)


def _check_one(O, xs, V, tol, delta, tol_sep):
    witnesses = []
    i, j = np.unravel_index(np.argmax(V), V.shape)
    if V[i, j] > 1.0 + tol:
        witnesses.append(AxiomWitness([_point(xs, i, j, V)], 'above_one'))
    top = O(1.0, 1.0)
    if top < 1.0 - tol:
        witnesses.append(AxiomWitness([(1.0, 1.0, top)], 'not_one_at_corner'))
    off = xs <= 1.0 - delta
    mask = off[:, None] | off[None, :]
    masked = np.where(mask, V, -np.inf)
    i, j = np.unravel_index(np.argmax(masked), masked.shape)
    if masked[i, j] > 1.0 - tol_sep:
        witnesses.append(AxiomWitness([_point(xs, i, j, V)],
                                      'one_inside'))
    return AxiomCheck(FAIL if witnesses else PASS, witnesses)


def _check_monotone(xs, V, tol):
    witnesses = []
    for axis in (1, 0):
        D = np.diff(V, axis=axis)
        i, j = np.unravel_index(np.argmin(D), D.shape)
        if D[i, j] < -tol:
            i2, j2 = (i, j + 1) if axis == 1 else (i + 1, j)
            witnesses.append(AxiomWitness(
                [_point(xs, i, j, V), _point(xs, i2, j2, V)], 'decreasing'))
    return AxiomCheck(FAIL if witnesses else PASS, witnesses)


def _check_continuity(O, xs, V, tol):
    n = len(xs)
    lines = sorted(set(
        int(round(v)) for v in np.linspace(1, n - 1, CONTINUITY_LINES)))
    # cells touching the edges x = 0 and y = 0 are left to O2
    ts = [float(t) for t in xs[1:]]
    checks = []
    for i in lines:
        x = float(xs[i])
        checks.append((
            lambda t, x=x: O(x, t), V[i, 1:],
            lambda t, s, x=x: (x, t, s)))
        checks.append((
            lambda t, x=x: O(t, x), V[1:, i],
            lambda t, s, x=x: (t, x, s)))
    checks.append((lambda t: O(t, t), np.diag(V)[1:],
                   lambda t, s: (t, t, s)))
    verdicts, witnesses = [], []
    for fine, coarse, point in checks:
        verdict, worst, _, _ = refinement_verdict(
            ts, [float(v) for v in coarse], fine, tol)
        verdicts.append(verdict)
        if verdict == FAIL and len(witnesses) < 3:
            (ta, va), (tb, vb) = worst[2], worst[3]
            witnesses.append(AxiomWitness([point(ta, va), point(tb, vb)],
                                          'jump'))
    return AxiomCheck(worst_verdict(verdicts), witnesses)


def check_axioms(O, n=257, tol=1e-9, delta=DELTA, tol_sep=1e-9,
                 continuity_tol=1e-3):
    '''
    Check O1..O5 on the n x n grid linspace(0, 1, n). Equalities are
    checked within `tol`, positivity and separation from 1 at the interior
    margin `delta`, and continuity by comparing the oscillation at
    resolution n and 4n along rows, columns and the diagonal.
    '''
    if n < 16:
        raise ValueError('axiom check needs n >= 16')
    xs, V = O.grid(n)
    axioms = OrderedDict([
        (O1, _check_symmetry(xs, V, tol)),
        (O2, _check_zero(O, xs, V, tol, delta)),
        (O3, _check_one(O, xs, V, tol, delta, tol_sep)),
        (O4, _check_monotone(xs, V, tol)),
        (O5, _check_continuity(O, xs, V, continuity_tol)),
    ])
    overall = worst_verdict(a.verdict for a in axioms.values())
    failed = [name for name, a in axioms.items() if a.verdict == FAIL]
    logging.info('axiom check of {} at n={}: {}{}'.format(
        O.name, n, overall, ' ({})'.format(', '.join(failed)) \
                            if failed else ''))
    if overall == INCONCLUSIVE:
        logging.warning('axiom check of {} is inconclusive'.format(O.name))
    return AxiomReport(axioms, n, tol, overall)


def equivalent(Oa, Ob, n=101, tol=1e-9):
    '''
    Compare two overlap functions on the n x n grid: equal iff the
    largest deviation is at most `tol`.
    '''
    if n < 2:
        raise ValueError('comparison needs n >= 2')
    xs, A = Oa.grid(n)
    _, B = Ob.grid(n)
    D = np.abs(A - B)
    i, j = np.unravel_index(np.argmax(D), D.shape)
    max_dev = float(D[i, j])
    if max_dev <= tol:
        return Equivalence(EQUAL, max_dev, None)
    return Equivalence(DIFFER, max_dev,
                       (float(xs[i]), float(xs[j]),
                        float(A[i, j]), float(B[i, j])))
