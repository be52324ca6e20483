'''
Closed-form expressions for file-loaded generator functions.

The grammar is deliberately small: numbers, the constant `inf`, the
variables of the expression (`x`, or `x` and `y`), the operators
+ - * / **, and the functions ln, exp, pow, min and max. Source strings
are parsed with the `ast` module and every node is checked against this
whitelist before it is turned into a chain of closures, so no general
interpreter is involved.

Evaluation is in floats; limits at infinite arguments follow IEEE
arithmetic (e.g. exp(-inf) = 0) and ln(0) = -inf. Results that would be
NaN raise DomainError.
'''

import ast
import math
import operator

from .errors import DomainError, SpecError


def _ln(v):
    if v < 0:
        raise DomainError('ln of negative number {}'.format(v))
    if v == 0:
        return -math.inf
    return math.log(v)


def _exp(v):
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


def _pow(a, b):
    try:
        return math.pow(a, b)
    except OverflowError:
        return math.inf
    except ValueError:
        if a == 0 and b < 0:
            return math.inf
        raise DomainError('{}**{} is undefined'.format(a, b))


def _div(a, b):
    if b == 0:
        if a == 0:
            raise DomainError('0/0 is undefined')
        return math.copysign(math.inf, a) * math.copysign(1.0, b)
    return a / b


FUNCTIONS = {
    'ln': (_ln, 1),
    'log': (_ln, 1),
    'exp': (_exp, 1),
    'pow': (_pow, 2),
    'min': (min, 2),
    'max': (max, 2),
}

CONSTANTS = {
    'inf': math.inf,
}

BINARY_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: _div,
    ast.Pow: _pow,
}

UNARY_OPS = {
    ast.USub: operator.neg,
    ast.UAdd: operator.pos,
}


def _checked(value, source):
    if math.isnan(value):
        raise DomainError('expression "{}" is undefined here'.format(source))
    return value


class Expression:
    '''
    A compiled closed-form expression. Instances pickle by their source
    string and recompile on load.
    '''

    def __init__(self, source, variables=('x',)):
        self.source = source
        self.variables = tuple(variables)
        try:
            tree = ast.parse(source.strip(), mode='eval')
        except SyntaxError as err:
            raise SpecError('cannot parse expression "{}": {}'\
                            .format(source, err.msg))
        self._fn = self._compile(tree.body)

    def __reduce__(self):
        return (Expression, (self.source, self.variables))

    def __call__(self, *args):
        if len(args) != len(self.variables):
            raise TypeError('expression takes {} argument(s)'\
                            .format(len(self.variables)))
        env = dict(zip(self.variables, map(float, args)))
        return _checked(self._fn(env), self.source)

    def __repr__(self):
        return 'Expression({!r})'.format(self.source)

    def _compile(self, node):
        if isinstance(node, ast.Constant) \
                and isinstance(node.value, (int, float)) \
                and not isinstance(node.value, bool):
            value = float(node.value)
            return lambda env: value
        if isinstance(node, ast.Name):
            if node.id in self.variables:
                name = node.id
                return lambda env: env[name]
            if node.id in CONSTANTS:
                value = CONSTANTS[node.id]
                return lambda env: value
            raise SpecError('unknown name "{}" in "{}"'\
                            .format(node.id, self.source))
        if isinstance(node, ast.BinOp) and type(node.op) in BINARY_OPS:
            op = BINARY_OPS[type(node.op)]
            left = self._compile(node.left)
            right = self._compile(node.right)
            return lambda env: op(left(env), right(env))
        if isinstance(node, ast.UnaryOp) and type(node.op) in UNARY_OPS:
            op = UNARY_OPS[type(node.op)]
            operand = self._compile(node.operand)
            return lambda env: op(operand(env))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
                and node.func.id in FUNCTIONS and not node.keywords:
            fn, arity = FUNCTIONS[node.func.id]
            if len(node.args) != arity:
                raise SpecError('{}() takes {} argument(s) in "{}"'\
                                .format(node.func.id, arity, self.source))
            args = [self._compile(a) for a in node.args]
            if arity == 1:
                arg = args[0]
                return lambda env: fn(arg(env))
            first, second = args
            return lambda env: fn(first(env), second(env))
        raise SpecError('unsupported construct "{}" in "{}"'\
                        .format(ast.dump(node), self.source))
