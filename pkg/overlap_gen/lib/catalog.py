'''
Builtin generator functions, function descriptors and the builtin pair
fixtures.

A function descriptor is either the name of a catalog entry or a JSON
object whose `kind` is a catalog name (with its parameters as further
keys) or one of the composite forms `affine`, `compose`, `piecewise`,
`expression`, `inverse` and `restrict`.
'''

from collections import OrderedDict, namedtuple
import math

from .errors import InvalidParams, OverlapGenError, SpecError
from .genfn import \
    AffineWrap, EXTENDED, InverseFn, NON_NEGATIVE, NON_POSITIVE, \
    UNIT, UnaryFn, compose, expression_fn, interval_from_json, Piecewise
from .xreal import INF, NINF, ZERO, XReal, affine_map, finite


CatalogEntry = namedtuple(
    'CatalogEntry', ['name', 'domain', 'params', 'formula', 'role', 'fn'])


def _neg_log(x, p=1.0):
    if x.value == 0:
        return INF
    return finite(-p * math.log(x.value))


def _reciprocal_residual(x):
    if x.value == 0:
        return INF
    return finite((1.0 - x.value) / x.value)


def _log_pos(x):
    if x.value == 0:
        return NINF
    return finite(math.log(x.value))


def _exp_neg(x):
    if x.is_pos_inf:
        return ZERO
    return finite(math.exp(-x.value))


def _cauchy(x):
    if x.is_pos_inf:
        return ZERO
    return finite(1.0 / (1.0 + x.value))


def _exp_pos(x):
    if x.is_neg_inf:
        return ZERO
    return finite(math.exp(x.value))


def _quadratic(x):
    if not x.is_finite:
        return INF
    return XReal.of(x.value * x.value)


def _bernstein(x):
    return finite((x.value * x.value + x.value) / 2.0)


def _identity(x):
    return x


CATALOG = OrderedDict((e.name, e) for e in [
    CatalogEntry('neg_log', UNIT, (), '-ln(x), +inf at 0', 'theta',
                 _neg_log),
    CatalogEntry('power_neg_log', UNIT, ('p',), '-p*ln(x), p > 0', 'theta',
                 _neg_log),
    CatalogEntry('reciprocal_residual', UNIT, (), '(1-x)/x, +inf at 0',
                 'theta', _reciprocal_residual),
    CatalogEntry('log_pos', UNIT, (), 'ln(x), -inf at 0', 'theta',
                 _log_pos),
    CatalogEntry('exp_neg', NON_NEGATIVE, (), 'exp(-x), 0 at +inf',
                 'vartheta', _exp_neg),
    CatalogEntry('cauchy', NON_NEGATIVE, (), '1/(1+x), 0 at +inf',
                 'vartheta', _cauchy),
    CatalogEntry('exp_pos', NON_POSITIVE, (), 'exp(x), 0 at -inf',
                 'vartheta', _exp_pos),
    CatalogEntry('quadratic_h', NON_NEGATIVE, (), 'x**2', 'h', _quadratic),
    CatalogEntry('bernstein_h', UNIT, (), '(x**2+x)/2', 'h', _bernstein),
    CatalogEntry('identity', EXTENDED, (), 'x', 'h', _identity),
])


class CatalogFn(UnaryFn):
    '''A catalog builtin with its parameters.'''

    def __init__(self, name, **params):
        if name not in CATALOG:
            raise SpecError('unknown catalog function: {}'.format(name))
        entry = CATALOG[name]
        if set(params) != set(entry.params):
            raise SpecError('{} takes the parameters {}, got {}'\
                            .format(name, list(entry.params), sorted(params)))
        self.params = {k: float(v) for k, v in params.items()}
        if name == 'power_neg_log' and not self.params['p'] > 0:
            raise InvalidParams('power_neg_log needs p > 0')
        self.name = name
        self.domain = entry.domain
        self._fn = entry.fn

    def _eval(self, x):
        return self._fn(x, **self.params)

    def describe(self):
        result = {'kind': self.name}
        result.update(self.params)
        return result


def catalog_fn(name, **params):
    return CatalogFn(name, **params)


def fn_from_descriptor(desc):
    '''
    Resolve a function descriptor (see the module docstring) into a
    UnaryFn. Raises SpecError on anything unresolvable.
    '''
    if isinstance(desc, str):
        desc = {'kind': desc}
    if not isinstance(desc, dict) or 'kind' not in desc:
        raise SpecError('function descriptor needs a "kind": {!r}'\
                        .format(desc))
    kind = desc['kind']
    try:
        if kind in CATALOG:
            params = {k: v for k, v in desc.items() if k != 'kind'}
            return CatalogFn(kind, **params)
        if kind == 'affine':
            return AffineWrap(affine_map(desc['k'], desc['b']),
                              fn_from_descriptor(desc['of']),
                              desc.get('side', 'outer'))
        if kind == 'compose':
            return compose(fn_from_descriptor(desc['outer']),
                           fn_from_descriptor(desc['inner']))
        if kind == 'piecewise':
            return Piecewise([tuple(s) for s in desc['segments']],
                             interval_from_json(desc['domain']))
        if kind == 'expression':
            domain = desc.get('domain', [0, 1])
            return expression_fn(desc['expr'], interval_from_json(domain))
        if kind == 'inverse':
            return InverseFn(fn_from_descriptor(desc['of']),
                             float(desc.get('tol', 1e-12)))
        if kind == 'restrict':
            return fn_from_descriptor(desc['of'])\
                   .restrict(interval_from_json(desc['domain']))
    except OverlapGenError as e:
        if isinstance(e, SpecError):
            raise
        raise SpecError('cannot build {} function: [{}] {}'\
                        .format(kind, e.code, e))
    except (KeyError, TypeError, ValueError) as e:
        raise SpecError('malformed {} descriptor: {}'.format(kind, e))
    raise SpecError('unknown function kind: {}'.format(kind))


STANDARD = 'standard_decreasing'
EXTENDED_ORIENTATION = 'extended_increasing'

ORIENTATIONS = (STANDARD, EXTENDED_ORIENTATION)


# builtin pair specs; `target` names the overlap axiom and the generator
# condition a fixture is built to violate
PAIR_FIXTURES = OrderedDict([
    ('product', {
        'theta': 'neg_log', 'vartheta': 'exp_neg',
        'orientation': STANDARD, 'target': None,
        'description': 'O(x,y) = x*y'}),
    ('reciprocal_cauchy', {
        'theta': 'reciprocal_residual', 'vartheta': 'cauchy',
        'orientation': STANDARD, 'target': None,
        'description': 'O(x,y) = x*y/(x+y-x*y)'}),
    ('neg_log_cauchy', {
        'theta': 'neg_log', 'vartheta': 'cauchy',
        'orientation': STANDARD, 'target': None,
        'description': 'O(x,y) = 1/(1-ln(x*y))'}),
    ('extended_product', {
        'theta': 'log_pos', 'vartheta': 'exp_pos',
        'orientation': EXTENDED_ORIENTATION, 'target': None,
        'description': 'O(x,y) = x*y from increasing generators'}),
    ('shifted_product', {
        'theta': {'kind': 'expression', 'expr': '1-ln(x)',
                  'domain': [0, 1]},
        'vartheta': {'kind': 'expression', 'expr': 'exp(-(x-2))',
                     'domain': [2, 'inf']},
        'orientation': STANDARD, 'target': None,
        'description': 'the product pair with anchor 2'}),
    ('finite_zero', {
        'theta': {'kind': 'expression', 'expr': '1-x', 'domain': [0, 1]},
        'vartheta': 'exp_neg',
        'orientation': STANDARD,
        'target': ['O2', 'T3_theta_infinity_iff_zero'],
        'description': 'theta(0) is finite'}),
    ('anchor_plateau', {
        'theta': {'kind': 'piecewise', 'domain': [0, 1],
                  'segments': [[0, '-ln(2*x)'], [0.5, '0']]},
        'vartheta': 'exp_neg',
        'orientation': STANDARD,
        'target': ['O3', 'T5_boundary_one_iff_anchor'],
        'description': 'theta = theta(1) on [0.5, 1]'}),
    ('vartheta_jump', {
        'theta': 'neg_log',
        'vartheta': {'kind': 'piecewise', 'domain': [0, 'inf'],
                     'segments': [[0, 'exp(-x)'], [1.1, '0.5*exp(-x)']]},
        'orientation': STANDARD,
        'target': ['O5', 'T2_vartheta_monotone_continuous'],
        'description': 'vartheta jumps at 1.1'}),
    ('vartheta_small_jump', {
        'theta': 'neg_log',
        'vartheta': {'kind': 'piecewise', 'domain': [0, 'inf'],
                     'segments': [[0, 'exp(-x)'], [1.1, '0.97*exp(-x)']]},
        'orientation': STANDARD,
        'target': ['O5', 'T2_vartheta_monotone_continuous'],
        'description': 'vartheta drops by 0.00999 at 1.1'}),
    ('vartheta_hits_zero', {
        'theta': 'neg_log',
        'vartheta': {'kind': 'piecewise', 'domain': [0, 'inf'],
                     'segments': [[0, '1-x'], [1, '0']]},
        'orientation': STANDARD,
        'target': ['O2', 'T4_vartheta_zero_iff_infinity'],
        'description': 'vartheta = max(0, 1-x)'}),
    ('anchor_off', {
        'theta': {'kind': 'expression', 'expr': '1-ln(x)',
                  'domain': [0, 1]},
        'vartheta': 'exp_neg',
        'orientation': STANDARD,
        'target': ['O3', 'T5_boundary_one_iff_anchor'],
        'description': 'vartheta(anchor) = exp(-2)'}),
])


def fixture_spec(name):
    '''A builtin pair fixture as a pair-spec object.'''
    try:
        fixture = PAIR_FIXTURES[name]
    except KeyError:
        raise SpecError('unknown pair fixture: {}'.format(name))
    return {k: fixture[k] for k in ('theta', 'vartheta', 'orientation')}


def describe_catalog():
    '''JSON-compatible listing of catalog functions and pair fixtures.'''
    return {
        'functions': [
            {'name': e.name, 'domain': e.domain.to_json(),
             'params': list(e.params), 'formula': e.formula, 'role': e.role}
            for e in CATALOG.values()],
        'pairs': [
            {'name': name, 'orientation': f['orientation'],
             'target': f['target'], 'description': f['description']}
            for name, f in PAIR_FIXTURES.items()],
    }
