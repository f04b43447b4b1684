"""Polynomial energy densities in ``kappa`` and ``tau``.

Accepted grammar: numbers, the names ``kappa`` and ``tau``, ``+ - *``,
parentheses and powers with a non-negative integer literal exponent (written
``^`` or ``**``).
"""
from __future__ import annotations

import ast
import operator

import numpy as np

from .errors import FramingError

VARIABLES = ("kappa", "tau")
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}


class ExpressionError(FramingError):
    pass


def _compile(node):
    if isinstance(node, ast.Expression):
        return _compile(node.body)
    if isinstance(node, ast.Constant) and type(node.value) in (int, float):
        value = float(node.value)
        return lambda k, t: value
    if isinstance(node, ast.Name) and node.id in VARIABLES:
        if node.id == "kappa":
            return lambda k, t: k
        return lambda k, t: t
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        op, arg = _UNARY[type(node.op)], _compile(node.operand)
        return lambda k, t: op(arg(k, t))
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
        exp = node.right
        if not (isinstance(exp, ast.Constant) and type(exp.value) is int and exp.value >= 0):
            raise ExpressionError("exponents must be non-negative integer literals")
        base, p = _compile(node.left), exp.value
        return lambda k, t: base(k, t) ** p
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        op, lhs, rhs = _BINOPS[type(node.op)], _compile(node.left), _compile(node.right)
        return lambda k, t: op(lhs(k, t), rhs(k, t))
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse_polynomial(text: str):
    """Compile ``text`` into ``f(kappa, tau)`` operating elementwise on arrays.

    >>> f = parse_polynomial("kappa^2 + 0.5*tau^2")
    >>> float(f(2.0, 2.0))
    6.0
    """
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
    fn = _compile(tree)
    return lambda kappa, tau: np.asarray(fn(np.asarray(kappa, float), np.asarray(tau, float)), float)
