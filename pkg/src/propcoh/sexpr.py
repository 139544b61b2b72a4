"""Minimal s-expression reader and writer with source positions."""

from __future__ import annotations

from .errors import ParseError

_DELIMS = set("();")


class Atom(str):
    line = 0
    col = 0

    def __new__(cls, text, line=0, col=0):
        self = super().__new__(cls, text)
        self.line, self.col = line, col
        return self


class SList(list):
    def __init__(self, items=(), line=0, col=0):
        super().__init__(items)
        self.line, self.col = line, col


def read_all(text):
    """Parse every top-level form in ``text``.

    ``;`` starts a comment running to the end of the line.
    """
    forms = []
    stack = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "(":
            stack.append(SList(line=line, col=col))
            i += 1
            col += 1
            continue
        if c == ")":
            if not stack:
                raise ParseError(line, col, "an atom or '(' (unbalanced ')')")
            done = stack.pop()
            (stack[-1] if stack else forms).append(done)
            i += 1
            col += 1
            continue
        start, scol = i, col
        while i < n and not text[i].isspace() and text[i] not in _DELIMS:
            i += 1
            col += 1
        atom = Atom(text[start:i], line, scol)
        (stack[-1] if stack else forms).append(atom)
    if stack:
        raise ParseError(line, col, f"')' to close the list opened at "
                                    f"{stack[-1].line}:{stack[-1].col}")
    return forms


def dumps(expr):
    if isinstance(expr, (list, tuple)):
        return "(" + " ".join(dumps(e) for e in expr) + ")"
    return str(expr)


def to_tuple(expr):
    """Drop position information: lists become tuples, atoms plain strings."""
    if isinstance(expr, list):
        return tuple(to_tuple(e) for e in expr)
    return str(expr)
