from collections import OrderedDict
import hashlib
import json
import logging
import math

from jsonschema import Draft202012Validator
import numpy as np

from ..config import PAIR_SPEC_SCHEMA
from .catalog import STANDARD, fn_from_descriptor
from .errors import SpecError
from .genfn import Interval
from .pair import GeneratorPair
from .transform import apply_transform
from .xreal import XReal


SPEC_VALIDATOR = Draft202012Validator(PAIR_SPEC_SCHEMA)


def validate_spec(spec):
    '''
    Check a pair-spec object against the pair-spec schema. Raises
    SpecError listing every violation.
    '''
    errs = sorted(SPEC_VALIDATOR.iter_errors(spec), key=lambda e: list(e.path))
    if errs:
        raise SpecError('invalid pair spec: ' + '; '.join(
            '{}: {}'.format('/'.join(map(str, e.path)) or '<root>', e.message)
            for e in errs))
    return spec


def load_spec_from_file(filename):
    '''
    Load and schema-check a pair-spec file (JSON).
    '''
    try:
        with open(filename, encoding='utf-8') as fp:
            spec = json.load(fp)
    except ValueError as e:
        raise SpecError('{} -- not a JSON document: {}'.format(filename, e))
    except OSError as e:
        raise SpecError('{} -- cannot be read: {}'.format(filename, e))
    return validate_spec(spec)


def save_spec_to_file(spec, filename):
    with open(filename, 'w+', encoding='utf-8') as fp:
        json.dump(spec, fp, indent=2)
        fp.write('\n')


def pair_from_spec(spec, validate_steps=False):
    '''
    Resolve a pair-spec object into a GeneratorPair, applying its
    transform chain in order.
    '''
    validate_spec(spec)
    p = GeneratorPair(fn_from_descriptor(spec['theta']),
                      fn_from_descriptor(spec['vartheta']),
                      spec.get('orientation', STANDARD))
    for i, step in enumerate(spec.get('transforms', []), 1):
        logging.debug('transform chain step {}: {}'.format(i, step['op']))
        p = apply_transform(p, step['op'], step.get('params', {}),
                            validate=validate_steps)
    return p


def spec_from_pair(p, description=None):
    spec = OrderedDict(p.describe())
    if description is not None:
        spec['description'] = description
    return spec


def file_digest(filename):
    '''SHA-256 of a file, as "sha256:<hex>".'''
    h = hashlib.sha256()
    with open(filename, 'rb') as fp:
        for chunk in iter(lambda: fp.read(65536), b''):
            h.update(chunk)
    return 'sha256:' + h.hexdigest()


def to_json(obj):
    '''
    Convert reports, verdicts and witnesses into JSON-compatible objects
    with stable key order. Extended reals and float infinities become
    numbers or the strings "inf"/"-inf".
    '''
    if isinstance(obj, (XReal, Interval)):
        return obj.to_json()
    if hasattr(obj, '_asdict'):
        return OrderedDict((k, to_json(v)) for k, v in obj._asdict().items())
    if isinstance(obj, dict):
        return OrderedDict((str(k), to_json(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_json(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return None
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return value
    return obj


def save_report(report, filename):
    '''
    Write a report object (see `to_json`) as an indented JSON document.
    '''
    with open(filename, 'w+', encoding='utf-8') as fp:
        json.dump(to_json(report), fp, indent=2)
        fp.write('\n')


def save_grid_to_csv(grid, fp):
    '''
    Write an OverlapGrid as rows x,y,value (x major, then y) with 17
    significant digits to the open text file `fp`.
    '''
    fp.write('x,y,value\n')
    for i, x in enumerate(grid.xs):
        for j, y in enumerate(grid.xs):
            fp.write('{:.17g},{:.17g},{:.17g}\n'\
                     .format(x, y, grid.values[i, j]))
