"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This module contains the expression front-end: tokenizer, precedence climbing parser, canonical printer
and the truncated Taylor (jet) arithmetic used to evaluate expressions with exact derivatives.

Grammar (EBNF)::

    expression = sum ;
    sum        = product , { ( "+" | "-" ) , product } ;
    product    = unary , { ( "*" | "/" ) , unary } ;
    unary      = "-" , unary | power ;
    power      = atom , [ "^" , unary ] ;               (* right associative *)
    atom       = number | constant | variable | function , "(" , expression , ")" | "(" , expression , ")" ;
    number     = digit , { digit } , [ "." , { digit } ] | "." , digit , { digit } ;
    constant   = "pi" | "e" ;
    function   = "sin" | "cos" | "tan" | "exp" | "log" | "sqrt" | "sinh" | "cosh" | "atan" ;

Unary minus binds looser than "^", so "-s^2" is -(s^2).
"""
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from darboux_helix.core.errors import ExprLexError, ExprSyntaxError, ExprDomainError


FUNCTIONS = ('sin', 'cos', 'tan', 'exp', 'log', 'sqrt', 'sinh', 'cosh', 'atan')
CONSTANTS = {'pi': np.pi, 'e': np.e}

# binding power and associativity of the binary operators
BINARY_OPERATORS = {'+': (1, 'left'), '-': (1, 'left'), '*': (2, 'left'), '/': (2, 'left'), '^': (4, 'right')}
UNARY_PRECEDENCE = 3


@dataclass(frozen=True)
class Token:
    """Lexical token with its character offset in the source text."""
    kind: str
    text: str
    position: int


@dataclass(frozen=True)
class Const:
    value: float
    name: str | None = None


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


class Jet3(NamedTuple):
    """Value and first three derivatives of a scalar function."""
    v0: object
    v1: object
    v2: object
    v3: object


def tokenize(text):
    """Split an expression into tokens.

    Parameters
    ----------
    text: str
        Expression source.

    Returns
    -------
    list[Token]
        Tokens in order of increasing position.

    Raises
    ------
    ExprLexError
        For empty input, malformed numbers and characters outside the grammar.
    """
    if text is None or text.strip() == '':
        raise ExprLexError("empty expression", 0)

    tokens = []
    i = 0
    n = len(text)
    while i < n:
        char = text[i]

        if char.isspace():
            i += 1
            continue

        # decimal literal with at most one point
        if char.isdigit() or (char == '.' and i + 1 < n and text[i + 1].isdigit()):
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == '.':
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            if i < n and text[i] == '.':
                raise ExprLexError("malformed number literal", i)
            tokens.append(Token('number', text[start:i], start))
            continue

        if 'a' <= char <= 'z':
            start = i
            while i < n and 'a' <= text[i] <= 'z':
                i += 1
            tokens.append(Token('identifier', text[start:i], start))
            continue

        if char in BINARY_OPERATORS:
            tokens.append(Token('operator', char, i))
        elif char in '()':
            tokens.append(Token('paren', char, i))
        elif char == ',':
            tokens.append(Token('comma', char, i))
        else:
            raise ExprLexError(f"unexpected character '{char}'", i)
        i += 1

    return tokens


class _Parser:
    """Precedence climbing parser over a token list."""

    def __init__(self, tokens, variables):
        self.tokens = list(tokens)
        self.index = 0
        self.variables = tuple(variables)

        if len(self.tokens) > 0:
            last = self.tokens[-1]
            self.end = last.position + len(last.text)
        else:
            self.end = 0

        return

    def peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index]

        return None

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1

        return token

    def position(self):
        token = self.peek()
        return self.end if token is None else token.position

    def expect_close(self):
        token = self.peek()
        if token is None or token.text != ')':
            raise ExprSyntaxError("unbalanced parenthesis, expected ')'", self.position())
        self.advance()

        return None

    def parse_expression(self, min_prec):
        left = self.parse_unary()

        while True:
            token = self.peek()
            if token is None or token.kind != 'operator':
                break

            prec, assoc = BINARY_OPERATORS[token.text]
            if prec < min_prec:
                break

            self.advance()
            next_min = prec + 1 if assoc == 'left' else prec
            right = self.parse_expression(next_min)
            left = BinOp(token.text, left, right)

        return left

    def parse_unary(self):
        token = self.peek()
        if token is not None and token.text == '-':
            self.advance()
            return Neg(self.parse_expression(UNARY_PRECEDENCE))

        return self.parse_atom()

    def parse_atom(self):
        token = self.peek()
        if token is None:
            raise ExprSyntaxError("missing operand", self.end)

        if token.kind == 'number':
            self.advance()
            return Const(float(token.text))

        if token.kind == 'identifier':
            self.advance()
            name = token.text
            if name in FUNCTIONS:
                following = self.peek()
                if following is None or following.text != '(':
                    raise ExprSyntaxError(f"function '{name}' needs a parenthesised argument", self.position())
                self.advance()
                arg = self.parse_expression(0)
                following = self.peek()
                if following is not None and following.kind == 'comma':
                    raise ExprSyntaxError(f"function '{name}' takes exactly one argument", following.position)
                self.expect_close()
                return Call(name, arg)

            if name in CONSTANTS:
                return Const(CONSTANTS[name], name)

            if name in self.variables:
                return Var(name)

            raise ExprSyntaxError(f"unknown identifier '{name}'", token.position)

        if token.text == '(':
            self.advance()
            inner = self.parse_expression(0)
            self.expect_close()
            return inner

        raise ExprSyntaxError("missing operand", token.position)


def parse(tokens, variables=('s',)):
    """Build an expression tree from a token stream.

    Parameters
    ----------
    tokens: list[Token]
        Output of `tokenize`.
    variables: tuple[str], optional
        Identifiers accepted as free variables.

    Returns
    -------
    Const | Var | Neg | BinOp | Call
        Root node of the expression tree.

    Raises
    ------
    ExprSyntaxError
        For unbalanced parentheses, missing operands, unknown identifiers and wrong arity.
    """
    parser = _Parser(tokens, variables)
    tree = parser.parse_expression(0)

    token = parser.peek()
    if token is not None:
        if token.text == ')':
            raise ExprSyntaxError("unbalanced parenthesis, unexpected ')'", token.position)
        raise ExprSyntaxError(f"unexpected token '{token.text}'", token.position)

    return tree


def from_text(text, variables=('s',)):
    """Tokenize and parse in one go."""
    return parse(tokenize(text), variables=variables)


def to_text(node):
    """Canonical, fully parenthesised printout that parses back to the same tree.

    Parameters
    ----------
    node: Const | Var | Neg | BinOp | Call
        Expression tree.

    Returns
    -------
    str
        Printed expression.
    """
    if isinstance(node, Const):
        if node.name is not None:
            return node.name
        text = np.format_float_positional(node.value, unique=True, trim='-')
        return f"({text})" if node.value < 0 else text

    if isinstance(node, Var):
        return node.name

    if isinstance(node, Neg):
        return f"(-{to_text(node.operand)})"

    if isinstance(node, BinOp):
        return f"({to_text(node.left)} {node.op} {to_text(node.right)})"

    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"

    raise TypeError(f"not an expression node: {node!r}")


def free_variables(node):
    """Names of the variables occurring in an expression."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Neg):
        return free_variables(node.operand)
    if isinstance(node, BinOp):
        return free_variables(node.left) | free_variables(node.right)
    if isinstance(node, Call):
        return free_variables(node.arg)

    return set()


def _base_value(x):
    """Innermost numeric value of a (possibly nested) jet."""
    while isinstance(x, Jet):
        x = x.c[0]

    return np.asarray(x, dtype=float)


def _check_divisor(x):
    if np.any(_base_value(x) == 0):
        raise ExprDomainError("division by zero")

    return None


_NUMPY_FUNCTIONS = {'sin': np.sin, 'cos': np.cos, 'tan': np.tan, 'exp': np.exp, 'log': np.log, 'sqrt': np.sqrt,
                    'sinh': np.sinh, 'cosh': np.cosh, 'atan': np.arctan}


def apply_function(name, x):
    """Apply one of the supported functions to a number, array or jet.

    Parameters
    ----------
    name: str
        Function name, one of FUNCTIONS.
    x: float | numpy.ndarray | Jet
        Argument.

    Returns
    -------
    float | numpy.ndarray | Jet
        Function value, a jet when the argument is a jet.

    Raises
    ------
    ExprDomainError
        Logarithm of a non-positive value or square root of a negative value.
    """
    if isinstance(x, Jet):
        return getattr(x, name)()

    if name == 'log' and np.any(np.asarray(x) <= 0):
        raise ExprDomainError("log of a non-positive value")
    if name == 'sqrt' and np.any(np.asarray(x) < 0):
        raise ExprDomainError("sqrt of a negative value")

    return _NUMPY_FUNCTIONS[name](x)


def divide(a, b):
    """Quotient with a domain check on the divisor."""
    if isinstance(b, Jet):
        return a / b

    _check_divisor(b)

    return a / b


def integer_power(base, p):
    """Integer power by repeated multiplication, exact at base 0 for p >= 0."""
    if p < 0:
        return divide(1., integer_power(base, -p))

    result = 1.
    for _ in range(p):
        result = base * result

    return result


class Jet:
    """Truncated Taylor expansion of a function of one variable.

    Coefficients are normalised, c[k] = f^(k) / k!. A coefficient is a float, a numpy array
    (one jet per sample) or a Jet itself, in which case the expansion is nested.

    Parameters
    ----------
    coefficients: list
        Taylor coefficients c[0], ..., c[order].
    """
    __array_ufunc__ = None
    __slots__ = ('c',)

    def __init__(self, coefficients):
        self.c = list(coefficients)

        return

    def __repr__(self):
        return f"Jet({self.c!r})"

    @property
    def order(self):
        return len(self.c) - 1

    @classmethod
    def variable(cls, value, order):
        """Jet of the identity function at `value`."""
        value = np.asarray(value, dtype=float) if not isinstance(value, Jet) else value
        if order == 0:
            return cls([value])

        return cls([value, 1.] + [0.] * (order - 1))

    @classmethod
    def constant(cls, value, order):
        return cls([value] + [0.] * order)

    @classmethod
    def lift(cls, value, order):
        if isinstance(value, Jet):
            return value

        return cls.constant(value, order)

    @classmethod
    def antiderivative(cls, values, integrand):
        """Jet of an antiderivative whose values come from quadrature.

        The derivative coefficients are taken from the integrand, so F' = f holds exactly.

        Parameters
        ----------
        values: numpy.ndarray[Any, dtype[float]]
            Antiderivative sampled on the grid.
        integrand: Jet
            Jet of the integrand on the same grid.

        Returns
        -------
        Jet
            Jet of one order higher than the integrand.
        """
        coefficients = [np.asarray(values, dtype=float)]
        for k, ck in enumerate(integrand.c):
            coefficients.append(ck / (k + 1))

        return cls(coefficients)

    def derivative(self, k):
        """k-th derivative (not the normalised coefficient)."""
        if k > self.order:
            return 0. * _base_value(self)

        return self.c[k] * math.factorial(k)

    @property
    def v0(self):
        return self.derivative(0)

    @property
    def v1(self):
        return self.derivative(1)

    @property
    def v2(self):
        return self.derivative(2)

    @property
    def v3(self):
        return self.derivative(3)

    def jet3(self):
        return Jet3(self.v0, self.v1, self.v2, self.v3)

    def differentiate(self):
        """Jet of the derivative, one order lower."""
        if self.order == 0:
            return Jet([0. * self.c[0]])

        return Jet([(k + 1) * self.c[k + 1] for k in range(self.order)])

    # arithmetic
    def __neg__(self):
        return Jet([-ck for ck in self.c])

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Jet):
            n = min(self.order, other.order)
            return Jet([self.c[k] + other.c[k] for k in range(n + 1)])

        return Jet([self.c[0] + other] + self.c[1:])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            n = min(self.order, other.order)
            a, b = self.c, other.c
            return Jet([sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(n + 1)])

        return Jet([ck * other for ck in self.c])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            _check_divisor(other)
            return Jet([ck / other for ck in self.c])

        _check_divisor(other.c[0])
        n = min(self.order, other.order)
        a, b = self.c, other.c
        q = []
        for k in range(n + 1):
            acc = a[k]
            for j in range(k):
                acc = acc - q[j] * b[k - j]
            q.append(acc / b[0])

        return Jet(q)

    def __rtruediv__(self, other):
        return Jet.constant(other, self.order) / self

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) or (isinstance(p, float) and p.is_integer()):
            return integer_power(self, int(p))

        return (p * self.log()).exp()

    def __rpow__(self, base):
        return (self * apply_function('log', base)).exp()

    # elementary functions
    def exp(self):
        a = self.c
        e = [apply_function('exp', a[0])]
        for k in range(1, self.order + 1):
            e.append(sum(j * a[j] * e[k - j] for j in range(1, k + 1)) / k)

        return Jet(e)

    def log(self):
        a = self.c
        if np.any(_base_value(a[0]) <= 0):
            raise ExprDomainError("log of a non-positive value")

        l = [apply_function('log', a[0])]
        for k in range(1, self.order + 1):
            acc = a[k]
            if k > 1:
                acc = acc - sum(j * l[j] * a[k - j] for j in range(1, k)) / k
            l.append(acc / a[0])

        return Jet(l)

    def sqrt(self):
        a = self.c
        if np.any(_base_value(a[0]) <= 0):
            raise ExprDomainError("sqrt of a non-positive value (derivatives unbounded at 0)")

        r = [apply_function('sqrt', a[0])]
        for k in range(1, self.order + 1):
            acc = a[k]
            if k > 1:
                acc = acc - sum(r[j] * r[k - j] for j in range(1, k))
            r.append(acc / (2 * r[0]))

        return Jet(r)

    def _sin_cos(self, hyperbolic):
        a = self.c
        if hyperbolic:
            s = [apply_function('sinh', a[0])]
            c = [apply_function('cosh', a[0])]
        else:
            s = [apply_function('sin', a[0])]
            c = [apply_function('cos', a[0])]

        sign = 1 if hyperbolic else -1
        for k in range(1, self.order + 1):
            s.append(sum(j * a[j] * c[k - j] for j in range(1, k + 1)) / k)
            c.append(sign * sum(j * a[j] * s[k - j] for j in range(1, k + 1)) / k)

        return Jet(s), Jet(c)

    def sin(self):
        return self._sin_cos(False)[0]

    def cos(self):
        return self._sin_cos(False)[1]

    def sinh(self):
        return self._sin_cos(True)[0]

    def cosh(self):
        return self._sin_cos(True)[1]

    def tan(self):
        a = self.c
        t = [apply_function('tan', a[0])]
        w = [1. + t[0] * t[0]]
        for k in range(1, self.order + 1):
            t.append(sum(j * a[j] * w[k - j] for j in range(1, k + 1)) / k)
            w.append(sum(t[j] * t[k - j] for j in range(k + 1)))

        return Jet(t)

    def atan(self):
        a = self.c
        d = (1. + self * self).c
        t = [apply_function('atan', a[0])]
        for k in range(1, self.order + 1):
            acc = k * a[k]
            if k > 1:
                acc = acc - sum(j * t[j] * d[k - j] for j in range(1, k))
            t.append(acc / (k * d[0]))

        return Jet(t)


def _constant_value(node):
    """Value of a subtree without free variables, None otherwise."""
    if len(free_variables(node)) > 0:
        return None

    return float(_evaluate_node(node, {}))


def _evaluate_node(node, env):
    if isinstance(node, Const):
        return node.value

    if isinstance(node, Var):
        if node.name not in env:
            raise ExprDomainError(f"no value given for variable '{node.name}'")
        return env[node.name]

    if isinstance(node, Neg):
        return -_evaluate_node(node.operand, env)

    if isinstance(node, BinOp):
        left = _evaluate_node(node.left, env)

        if node.op == '^':
            p = _constant_value(node.right)
            if p is not None and p.is_integer():
                return integer_power(left, int(p))
            # general real exponent through exp and log
            right = _evaluate_node(node.right, env)
            return apply_function('exp', right * apply_function('log', left))

        right = _evaluate_node(node.right, env)
        if node.op == '+':
            return left + right
        if node.op == '-':
            return left - right
        if node.op == '*':
            return left * right

        return divide(left, right)

    if isinstance(node, Call):
        return apply_function(node.func, _evaluate_node(node.arg, env))

    raise TypeError(f"not an expression node: {node!r}")


def evaluate(expr, **values):
    """Evaluate an expression for given variable values.

    Parameters
    ----------
    expr: Const | Var | Neg | BinOp | Call
        Expression tree.
    values: float | numpy.ndarray | Jet
        Value of each free variable by name.

    Returns
    -------
    float | numpy.ndarray | Jet
        The expression value.
    """
    return _evaluate_node(expr, values)


def eval_jet(expr, s, order=3, variable='s'):
    """Evaluate an expression together with its derivatives.

    Parameters
    ----------
    expr: Const | Var | Neg | BinOp | Call
        Expression tree in one variable.
    s: float | numpy.ndarray[Any, dtype[float]]
        Evaluation point(s).
    order: int, optional
        Highest derivative carried.
    variable: str, optional
        Name of the free variable.

    Returns
    -------
    Jet
        Jet with coefficients broadcast to the shape of `s`.

    Raises
    ------
    ExprDomainError
        When `s` lies outside the real domain of the expression.
    """
    s = np.asarray(s, dtype=float)
    result = _evaluate_node(expr, {variable: Jet.variable(s, order)})
    result = Jet.lift(result, order)

    coefficients = [np.asarray(ck, dtype=float) + np.zeros(s.shape) for ck in result.c]

    return Jet(coefficients)
