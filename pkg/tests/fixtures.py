import json
import os.path

from overlap_gen.lib.axioms import BlackBoxOverlap
from overlap_gen.lib.catalog import PAIR_FIXTURES, catalog_fn, fixture_spec
from overlap_gen.lib.genfn import NON_NEGATIVE, Piecewise, expression_fn
from overlap_gen.lib.helper import pair_from_spec
from overlap_gen.lib.pair import GeneratorPair


VALID_FIXTURES = [name for name, f in PAIR_FIXTURES.items() \
                  if f['target'] is None]
INVALID_FIXTURES = [name for name, f in PAIR_FIXTURES.items() \
                    if f['target'] is not None]


def fixture_pair(name):
    return pair_from_spec(fixture_spec(name))


def fixture_overlap(name):
    return BlackBoxOverlap.from_pair(fixture_pair(name), name)


def product_pair():
    return GeneratorPair(catalog_fn('neg_log'), catalog_fn('exp_neg'))


def reciprocal_cauchy_pair():
    return GeneratorPair(catalog_fn('reciprocal_residual'),
                         catalog_fn('cauchy'))


def overshooting_pair():
    # vartheta(anchor) = 2
    return GeneratorPair(catalog_fn('neg_log'),
                         expression_fn('2*exp(-x)', NON_NEGATIVE))


def plateau_vartheta_pair():
    # vartheta is constant on [1, 2]
    vartheta = Piecewise([(0, 'exp(-x)'), (1, 'exp(-1)'),
                          (2, 'exp(-(x-1))')], NON_NEGATIVE)
    return GeneratorPair(catalog_fn('neg_log'), vartheta)


SQUARED_NEG_LOG = {'kind': 'compose', 'outer': 'quadratic_h',
                   'inner': 'neg_log'}
AFFINE_NEG_LOG = {'kind': 'affine', 'k': 2, 'b': 1, 'of': 'neg_log'}
BERNSTEIN_NEG_LOG = {'kind': 'compose', 'outer': 'neg_log',
                     'inner': 'bernstein_h'}


def write_spec(directory, name, spec):
    path = os.path.join(directory, name)
    with open(path, 'w', encoding='utf-8') as fp:
        if isinstance(spec, str):
            fp.write(spec)
        else:
            json.dump(spec, fp)
    return path
