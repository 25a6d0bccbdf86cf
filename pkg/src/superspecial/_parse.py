"""Tiny recursive-descent evaluator for the textual element/polynomial format.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Atoms are resolved through a callback, and the arithmetic is delegated to the
Python operators of whatever objects the callback returns, so the same parser
serves field elements and polynomials.
"""

import re

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def evaluate(text, resolve, one):
    """Evaluate ``text``; ``resolve(name)`` maps identifiers to values and
    ``one`` is the multiplicative identity used to lift bare integers."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty expression")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind} in {text!r}")
        pos += 1
        return tok

    def atom():
        kind, val = peek()
        if kind == "int":
            take()
            return one * val
        if kind == "name":
            take()
            return resolve(val)
        if kind == "op" and val == "(":
            take()
            v = expr()
            take("op", ")")
            return v
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    def factor():
        base = atom()
        if peek() == ("op", "^"):
            take()
            sign = 1
            if peek() == ("op", "-"):
                take()
                sign = -1
            _, e = take("int")
            return base ** (sign * e)
        return base

    def term():
        v = factor()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            rhs = factor()
            v = v * rhs if op == "*" else v / rhs
        return v

    def expr():
        sign = None
        if peek() in (("op", "+"), ("op", "-")):
            sign = take()[1]
        v = term()
        if sign == "-":
            v = -v
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            v = v + rhs if op == "+" else v - rhs
        return v

    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return result
