import json
from importlib import resources


def _load_json(name):
    return json.loads(resources.files(__package__).joinpath(name)\
                      .read_text(encoding='utf-8'))


OVERLAP_GEN_TOOL = _load_json('overlap-gen-tool.json')
PAIR_SPEC_SCHEMA = _load_json('pair-spec.schema.json')

VERSION = OVERLAP_GEN_TOOL['version']
PARAMETERS = OVERLAP_GEN_TOOL['tools']['overlap-gen']['parameters']


def default(name):
    '''The default value of a command-line parameter.'''
    return PARAMETERS[name]['default']
