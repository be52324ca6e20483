'''
Extended real numbers R ∪ {-inf, +inf} with the affine conventions used
for additive generators.

The infinities are tags, not floating-point infinities, so that a check
like "theta(x) = +inf iff x = 0" is an exact comparison which cannot be
triggered by an overflow.
'''

from collections import namedtuple
import functools
import math

from .errors import IndeterminateSum


FINITE = 'finite'
POS_INF = 'pos_inf'
NEG_INF = 'neg_inf'

# orderings returned by xcmp()
LT, EQ, GT = -1, 0, 1


@functools.total_ordering
class XReal:
    '''
    An immutable extended real number: a tag and (for finite numbers) a
    double-precision value.
    '''

    __slots__ = ('tag', 'value')

    def __init__(self, tag, value=0.0):
        if tag == FINITE:
            value = float(value)
            if math.isnan(value) or math.isinf(value):
                raise ValueError(
                    'finite XReal needs a finite value, got {}'.format(value))
        elif tag in (POS_INF, NEG_INF):
            value = 0.0
        else:
            raise ValueError('unknown XReal tag: {}'.format(tag))
        object.__setattr__(self, 'tag', tag)
        object.__setattr__(self, 'value', value)

    def __setattr__(self, name, value):
        raise AttributeError('XReal is immutable')

    def __reduce__(self):
        return (XReal, (self.tag, self.value))

    @staticmethod
    def of(x):
        '''
        Convert a number, one of the strings "inf"/"-inf", or an XReal
        into an XReal. Float infinities are accepted at this boundary
        and turned into tags.
        '''
        if isinstance(x, XReal):
            return x
        if isinstance(x, str):
            s = x.strip().lower()
            if s in ('inf', '+inf', 'infinity', '+infinity'):
                return INF
            if s in ('-inf', '-infinity'):
                return NINF
            return XReal(FINITE, float(s))
        x = float(x)
        if math.isnan(x):
            raise ValueError('NaN is not an extended real')
        if math.isinf(x):
            return INF if x > 0 else NINF
        return XReal(FINITE, x)

    @property
    def is_finite(self):
        return self.tag == FINITE

    @property
    def is_pos_inf(self):
        return self.tag == POS_INF

    @property
    def is_neg_inf(self):
        return self.tag == NEG_INF

    def to_float(self):
        '''Float view (with float infinities) for plotting and numpy.'''
        if self.tag == POS_INF:
            return math.inf
        if self.tag == NEG_INF:
            return -math.inf
        return self.value

    def to_json(self):
        '''Serialized form: a number, "inf" or "-inf".'''
        if self.tag == POS_INF:
            return 'inf'
        if self.tag == NEG_INF:
            return '-inf'
        return self.value

    def __neg__(self):
        if self.tag == POS_INF:
            return NINF
        if self.tag == NEG_INF:
            return INF
        return XReal(FINITE, -self.value)

    def __eq__(self, other):
        if not isinstance(other, XReal):
            return NotImplemented
        return xcmp(self, other) == EQ

    def __lt__(self, other):
        if not isinstance(other, XReal):
            return NotImplemented
        return xcmp(self, other) == LT

    def __hash__(self):
        return hash((self.tag, self.value))

    def __repr__(self):
        if self.tag == FINITE:
            return 'XReal({!r})'.format(self.value)
        return 'XReal({!r})'.format(self.to_json())

    def __str__(self):
        return str(self.to_json())


INF = XReal(POS_INF)
NINF = XReal(NEG_INF)
ZERO = XReal(FINITE, 0.0)
ONE = XReal(FINITE, 1.0)


def finite(value):
    return XReal(FINITE, value)


def _rank(a):
    return {NEG_INF: 0, FINITE: 1, POS_INF: 2}[a.tag]


def xcmp(a, b):
    '''Total order: -inf < every finite number < +inf.'''
    ra, rb = _rank(a), _rank(b)
    if ra != rb:
        return LT if ra < rb else GT
    if a.tag != FINITE or a.value == b.value:
        return EQ
    return LT if a.value < b.value else GT


def xadd(a, b):
    '''
    Sum of two extended reals. An infinity absorbs finite numbers and
    infinities of the same sign; (+inf) + (-inf) raises IndeterminateSum.
    '''
    if a.tag == FINITE and b.tag == FINITE:
        return XReal(FINITE, a.value + b.value)
    if a.tag == FINITE:
        return b
    if b.tag == FINITE or a.tag == b.tag:
        return a
    raise IndeterminateSum('(+inf) + (-inf) is undefined')


def xmax(a, b):
    return a if xcmp(a, b) != LT else b


def xmin(a, b):
    return a if xcmp(a, b) != GT else b


AffineMap = namedtuple('AffineMap', ['k', 'b'])
AffineMap.__doc__ = '''The affine map f(x) = k*x + b with real k and b.'''


def affine_map(k, b):
    k, b = float(k), float(b)
    if not (math.isfinite(k) and math.isfinite(b)):
        raise ValueError('affine map needs finite k and b')
    return AffineMap(k, b)


def affine_inverse(m):
    '''The inverse map (1/k, -b/k); requires k != 0.'''
    if m.k == 0:
        raise ZeroDivisionError('constant affine map has no inverse')
    return AffineMap(1.0 / m.k, -m.b / m.k)


def affine_apply(m, x):
    '''
    Apply f(x) = k*x + b on the extended reals:
    k*(+inf)+b = +inf if k>0 and -inf if k<0, symmetrically for -inf,
    and f(x) = b everywhere if k = 0.
    '''
    if m.k == 0:
        return XReal(FINITE, m.b)
    if x.tag == FINITE:
        return XReal(FINITE, m.k * x.value + m.b)
    if (x.tag == POS_INF) == (m.k > 0):
        return INF
    return NINF
