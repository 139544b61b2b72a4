"""Model files: declarations of a base category, presheaves, maps,
propositions and types, followed by assertions to check.

Grammar (one top-level form per declaration)::

    (base <name> | (category (objects o ...) (morphisms (m src tgt) ...)
                             (compose ((g f) h) ...)))
    (context <id> terminal | omega | (yoneda <obj>)
                  | (carriers (<obj> <label> ...) ...) (restrict (<mor> (<x> <y>) ...) ...))
    (map <id> <src> <tgt> (<obj> (<x> <y>) ...) ...)
    (prop <id> [<ctx>] <prop-expr>)
    (type <id> <type-expr>)
    (assert <judgement>)

    prop-expr ::= <id> | top | bot | (sub (<obj> (<label> ...)) ...)
                | (and e e) | (or e e) | (implies e e) | (not e) | (name <type-expr>)
    type-expr ::= <id> | (el <prop-expr>) | (universe <ctx>) | (pair t t)
                | (diagram <ctx> <V> <E> <p> <f>)
    judgement ::= (eq x y) | (eq-q x y) | (leq x y) | (holds x) | (propext x y)
                | (subsingleton t) | (not <judgement>)

A ``prop`` without an explicit context takes the context of its operands,
or else the most recently declared context.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (AmbientMismatch, DuplicateIdentifier, EvaluationError,
                     InvalidDeclaration, ParseError, PropCohError,
                     SizeLimitExceeded, UnboundIdentifier)
from .fincat import builtin_base, mk_category
from .natmodel import has_term, is_subsingleton, mk_type, pair_type
from .presheaf import mk_nat, mk_presheaf, mk_subpresheaf, terminal, yoneda
from .propquot import (canon, code_of_subobject, el, name, prop_universe,
                       propext_check, propext_hypothesis, support_subobject,
                       types_equal_q)
from .report import Report
from .sexpr import Atom, SList, dumps, read_all, to_tuple
from .show import show_canon, show_sub, show_type
from .topos import (bottom, implies, join, meet, negate, omega, sub_eq,
                    sub_leq, top)

MAX_CARRIER = 5
MAX_V = 4

PROP_HEADS = {"sub", "and", "or", "implies", "not", "name"}
TYPE_HEADS = {"el", "universe", "pair", "diagram"}
JUDGEMENTS = {"eq": 2, "eq-q": 2, "leq": 2, "holds": 1, "propext": 2,
              "subsingleton": 1, "not": 1}


@dataclass
class Decl:
    kind: str
    ident: str
    args: tuple
    loc: str = field(default="", compare=False)


@dataclass
class Assertion:
    judgement: object
    loc: str = field(default="", compare=False)
    form: object = field(default=None, compare=False, repr=False)


@dataclass
class ModelFile:
    base: object
    decls: tuple
    assertions: tuple
    env: "Env" = field(default=None, compare=False, repr=False)


def _pos(form):
    return getattr(form, "line", 0), getattr(form, "col", 0)


def _loc(form):
    line, col = _pos(form)
    return f"{line}:{col}"


def _expect(cond, form, expected):
    if not cond:
        raise ParseError(*_pos(form), expected)


def _is_atom(x):
    return isinstance(x, str)


class Env:
    """Declared values by identifier, with their kinds."""

    def __init__(self, cat):
        self.cat = cat
        self.values = {}
        self.last_ctx = None

    def define(self, ident, kind, value):
        if ident in self.values or ident in ("top", "bot"):
            raise DuplicateIdentifier(str(ident), *_pos(ident))
        self.values[ident] = (kind, value)
        if kind == "context":
            self.last_ctx = str(ident)

    def lookup(self, ident, kind=None):
        if ident not in self.values:
            raise UnboundIdentifier(str(ident), *_pos(ident))
        k, v = self.values[ident]
        if kind is not None and k != kind:
            raise ParseError(*_pos(ident), f"a {kind} identifier, found {k} {ident!r}")
        return v

    def kind(self, ident):
        if ident in ("top", "bot"):
            return "prop"
        if ident not in self.values:
            raise UnboundIdentifier(str(ident), *_pos(ident))
        return self.values[ident][0]

    # -- expressions ---------------------------------------------------------

    def expr_kind(self, e):
        if _is_atom(e):
            return self.kind(e)
        _expect(len(e) > 0 and _is_atom(e[0]), e, "an operator")
        if e[0] in PROP_HEADS:
            return "prop"
        if e[0] in TYPE_HEADS:
            return "type"
        raise ParseError(*_pos(e), f"a prop or type operator, found {e[0]!r}")

    def prop_ctx(self, e):
        """Context a prop expression lives over, if it can be read off."""
        if _is_atom(e):
            if e in ("top", "bot"):
                return None
            return self.lookup(e, "prop").of
        head = e[0]
        if head in ("and", "or", "implies"):
            return self.prop_ctx(e[1]) or self.prop_ctx(e[2])
        if head == "not":
            return self.prop_ctx(e[1])
        if head == "name":
            return self.type_ctx(e[1])
        return None

    def prop(self, e, ctx=None):
        if _is_atom(e):
            if e == "top" or e == "bot":
                _expect(ctx is not None, e, "an operand that fixes the context of top/bot")
                return top(ctx) if e == "top" else bottom(ctx)
            P = self.lookup(e, "prop")
            if ctx is not None and P.of != ctx:
                raise AmbientMismatch(f"proposition {e!r} lives over another context")
            return P
        head = e[0]
        if head == "sub":
            _expect(ctx is not None, e, "a context for (sub ...)")
            subsets = {}
            for entry in e[1:]:
                _expect(isinstance(entry, list) and len(entry) == 2 and _is_atom(entry[0])
                        and isinstance(entry[1], list), entry, "(<obj> (<label> ...))")
                _expect(entry[0] in self.cat.objects, entry[0], "a declared object")
                subsets[str(entry[0])] = [str(x) for x in entry[1]]
            return mk_subpresheaf(ctx, subsets)
        if head in ("and", "or", "implies"):
            _expect(len(e) == 3, e, f"({head} <prop> <prop>)")
            ctx = ctx or self.prop_ctx(e[1]) or self.prop_ctx(e[2])
            op = {"and": meet, "or": join, "implies": implies}[head]
            return op(self.prop(e[1], ctx), self.prop(e[2], ctx))
        if head == "not":
            _expect(len(e) == 2, e, "(not <prop>)")
            ctx = ctx or self.prop_ctx(e[1])
            return negate(self.prop(e[1], ctx))
        if head == "name":
            _expect(len(e) == 2, e, "(name <type>)")
            P = name(self.type_of(e[1], ctx)).subobject
            if ctx is not None and P.of != ctx:
                raise AmbientMismatch("named type lives over another context")
            return P
        raise ParseError(*_pos(e), f"a prop expression, found {head!r}")

    def type_ctx(self, e):
        """Context of a type expression, or None when only top/bot fix it."""
        if _is_atom(e):
            return self.lookup(e, "type").ctx
        head = e[0]
        if head == "el":
            return self.prop_ctx(e[1])
        if head == "universe":
            return self.lookup(e[1], "context")
        if head == "pair":
            return self.type_ctx(e[1]) or self.type_ctx(e[2])
        return self.type_of(e).ctx

    def type_of(self, e, ctx=None):
        if _is_atom(e):
            return self.lookup(e, "type")
        head = e[0]
        if head == "el":
            _expect(len(e) == 2, e, "(el <prop>)")
            ctx = self.prop_ctx(e[1]) or ctx
            _expect(ctx is not None, e, "a prop whose context can be inferred")
            return el(code_of_subobject(self.prop(e[1], ctx)))
        if head == "universe":
            _expect(len(e) == 2 and _is_atom(e[1]), e, "(universe <ctx>)")
            return prop_universe(self.lookup(e[1], "context"))
        if head == "pair":
            _expect(len(e) == 3, e, "(pair <type> <type>)")
            ctx = ctx or self.type_ctx(e)
            return pair_type(self.type_of(e[1], ctx), self.type_of(e[2], ctx))
        if head == "diagram":
            _expect(len(e) == 6 and all(_is_atom(x) for x in e[1:]), e,
                    "(diagram <ctx> <V> <E> <p> <f>)")
            G, V, E = (self.lookup(x, "context") for x in e[1:4])
            p, f = (self.lookup(x, "map") for x in e[4:6])
            if V.max_carrier() > MAX_V:
                raise SizeLimitExceeded(f"V has more than {MAX_V} elements at some object")
            return mk_type(G, V, E, p, f)
        raise ParseError(*_pos(e), f"a type expression, found {head!r}")

    def as_type(self, e):
        if self.expr_kind(e) == "type":
            ctx = self.type_ctx(e)
            _expect(ctx is not None, e, "a type whose context can be inferred")
            return self.type_of(e, ctx)
        ctx = self.prop_ctx(e)
        _expect(ctx is not None, e, "a prop whose context can be inferred")
        return el(code_of_subobject(self.prop(e, ctx)))

    def as_prop(self, e, ctx=None):
        if self.expr_kind(e) == "prop":
            return self.prop(e, ctx or self.prop_ctx(e))
        return support_subobject(self.type_of(e, ctx))

    # -- judgements ----------------------------------------------------------

    def judge(self, j):
        """Evaluate a judgement; returns ``(holds, detail)``."""
        _expect(isinstance(j, list) and j and _is_atom(j[0]) and j[0] in JUDGEMENTS, j,
                "a judgement: " + ", ".join(sorted(JUDGEMENTS)))
        head = j[0]
        _expect(len(j) == JUDGEMENTS[head] + 1, j,
                f"{JUDGEMENTS[head]} argument(s) for {head}")
        if head == "not":
            ok, detail = self.judge(j[1])
            return (not ok), f"negated judgement was {'true' if ok else 'false'}"
        if head == "eq":
            k1, k2 = self.expr_kind(j[1]), self.expr_kind(j[2])
            _expect(k1 == k2, j, "two types or two props")
            if k1 == "type":
                A, B = self._type_pair(j[1], j[2])
                return A == B, f"left:\n{_indent(show_type(A))}\nright:\n{_indent(show_type(B))}"
            ctx = self.prop_ctx(j[1]) or self.prop_ctx(j[2])
            P, Q = self.prop(j[1], ctx), self.prop(j[2], ctx)
            return sub_eq(P, Q), f"left:  {show_sub(P)}\nright: {show_sub(Q)}"
        if head == "eq-q":
            A, B = self._type_pair(j[1], j[2])
            return types_equal_q(A, B), (f"left:  {show_canon(canon(A))}\n"
                                         f"right: {show_canon(canon(B))}")
        if head == "leq":
            ctx = self._pair_ctx(j[1], j[2])
            P, Q = self.as_prop(j[1], ctx), self.as_prop(j[2], ctx)
            return sub_leq(P, Q), f"left:  {show_sub(P)}\nright: {show_sub(Q)}"
        if head == "holds":
            A = self.as_type(j[1])
            return has_term(A), f"type:\n{_indent(show_type(A))}"
        if head == "propext":
            A, B = self._type_pair(j[1], j[2])
            hyp = propext_hypothesis(A, B)
            ok = propext_check(A, B)
            note = "hypothesis holds" if hyp else "hypothesis fails; no claim"
            return ok, (f"{note}\nleft:  {show_canon(canon(A))}\n"
                        f"right: {show_canon(canon(B))}")
        if head == "subsingleton":
            A = self.as_type(j[1])
            return is_subsingleton(A), f"type:\n{_indent(show_type(A))}"
        raise AssertionError(head)

    def _pair_ctx(self, x, y):
        def ctx_of(e):
            if self.expr_kind(e) == "type":
                return self.type_ctx(e)
            return self.prop_ctx(e)
        return ctx_of(x) or ctx_of(y)

    def _type_pair(self, x, y):
        ctx = self._pair_ctx(x, y)

        def as_t(e):
            if self.expr_kind(e) == "type":
                return self.type_of(e, ctx)
            return el(code_of_subobject(self.prop(e, ctx)))
        return as_t(x), as_t(y)


def _indent(text):
    return "\n".join("  " + line for line in text.splitlines())


# -- declarations -------------------------------------------------------------

def _category(form):
    if _is_atom(form):
        return builtin_base(str(form))
    _expect(len(form) >= 3 and form[0] == "category", form,
            "(category (objects ...) (morphisms ...) [(compose ...)])")
    sections = {}
    for sec in form[1:]:
        _expect(isinstance(sec, list) and sec and sec[0] in ("objects", "morphisms", "compose"),
                sec, "(objects ...), (morphisms ...) or (compose ...)")
        sections[str(sec[0])] = sec[1:]
    objects = [str(o) for o in sections.get("objects", [])]
    morphisms = []
    for m in sections.get("morphisms", []):
        _expect(isinstance(m, list) and len(m) == 3 and all(_is_atom(x) for x in m), m,
                "(<mor> <src> <tgt>)")
        morphisms.append(tuple(str(x) for x in m))
    table = {}
    for entry in sections.get("compose", []):
        _expect(isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], list)
                and len(entry[0]) == 2 and _is_atom(entry[1]), entry, "((<g> <f>) <g.f>)")
        table[(str(entry[0][0]), str(entry[0][1]))] = str(entry[1])
    return mk_category(objects, morphisms, table)


def _context(env, form_args, where):
    cat = env.cat
    _expect(len(form_args) >= 1, where, "a context body")
    first = form_args[0]
    if _is_atom(first):
        _expect(first in ("terminal", "omega") and len(form_args) == 1, first,
                "terminal, omega, (yoneda <obj>) or (carriers ...)")
        return terminal(cat) if first == "terminal" else omega(cat)
    if first and first[0] == "yoneda":
        _expect(len(first) == 2 and len(form_args) == 1, first, "(yoneda <obj>)")
        return yoneda(cat, str(first[1]))
    _expect(first and first[0] == "carriers", first, "(carriers (<obj> <label> ...) ...)")
    carrier = {}
    for entry in first[1:]:
        _expect(isinstance(entry, list) and entry and all(_is_atom(x) for x in entry), entry,
                "(<obj> <label> ...)")
        _expect(entry[0] in cat.objects, entry[0], "a declared object")
        carrier[str(entry[0])] = [str(x) for x in entry[1:]]
        if len(entry) - 1 > MAX_CARRIER:
            raise SizeLimitExceeded(f"carrier at {entry[0]} exceeds {MAX_CARRIER} elements")
    restrict = {}
    if len(form_args) > 1:
        sec = form_args[1]
        _expect(len(form_args) == 2 and isinstance(sec, list) and sec and sec[0] == "restrict",
                sec, "(restrict (<mor> (<x> <y>) ...) ...)")
        for entry in sec[1:]:
            _expect(isinstance(entry, list) and entry and _is_atom(entry[0]), entry,
                    "(<mor> (<x> <y>) ...)")
            restrict[str(entry[0])] = _pairs(entry[1:])
    return mk_presheaf(cat, carrier, restrict)


def _pairs(items):
    out = {}
    for p in items:
        _expect(isinstance(p, list) and len(p) == 2 and all(_is_atom(x) for x in p), p,
                "(<x> <y>)")
        out[str(p[0])] = str(p[1])
    return out


def _map(env, args, where):
    _expect(len(args) >= 2 and _is_atom(args[0]) and _is_atom(args[1]), where,
            "(map <id> <src> <tgt> (<obj> (<x> <y>) ...) ...)")
    X, Y = env.lookup(args[0], "context"), env.lookup(args[1], "context")
    comps = {}
    for entry in args[2:]:
        _expect(isinstance(entry, list) and entry and _is_atom(entry[0]), entry,
                "(<obj> (<x> <y>) ...)")
        comps[str(entry[0])] = _pairs(entry[1:])
    return mk_nat(X, Y, comps)


def parse_model(text):
    """Parse and validate a model file.

    Raises ParseError, UnboundIdentifier, DuplicateIdentifier,
    SizeLimitExceeded or InvalidDeclaration.
    """
    forms = read_all(text)
    _expect(forms and isinstance(forms[0], list) and len(forms[0]) == 2
            and forms[0][0] == "base", forms[0] if forms else Atom("", 1, 1),
            "(base <name>|(category ...)) as the first form")
    base_form = forms[0][1]
    cat = _checked(base_form, _category, base_form)
    env = Env(cat)
    decls, assertions = [], []
    for form in forms[1:]:
        _expect(isinstance(form, list) and form and _is_atom(form[0]), form,
                "a declaration or (assert ...)")
        head = form[0]
        if head == "assert":
            _expect(len(form) == 2, form, "(assert <judgement>)")
            _check_judgement(env, form[1])
            assertions.append(Assertion(to_tuple(form[1]), _loc(form), form[1]))
            continue
        _expect(head in ("context", "map", "prop", "type"), head,
                "context, map, prop, type or assert")
        _expect(len(form) >= 3 and _is_atom(form[1]), form, f"({head} <id> ...)")
        ident, args = form[1], list(form[2:])
        if ident in env.values or ident in ("top", "bot"):
            raise DuplicateIdentifier(str(ident), *_pos(ident))
        if head == "context":
            value = _checked(form, _context, env, args, form)
        elif head == "map":
            value = _checked(form, _map, env, args, form)
        elif head == "type":
            _expect(len(args) == 1, form, "(type <id> <type-expr>)")
            value = _checked(form, env.type_of, args[0])
        else:
            _expect(len(args) in (1, 2), form, "(prop <id> [<ctx>] <prop-expr>)")
            if len(args) == 2:
                _expect(_is_atom(args[0]), args[0], "a context identifier")
                ctx_id = args[0]
            else:
                inferred = _checked(form, env.prop_ctx, args[0])
                ctx_id = _ctx_name(env, inferred) if inferred is not None else env.last_ctx
                _expect(ctx_id is not None, form, "a context declared before this prop")
                ctx_id = Atom(ctx_id, *_pos(form))
                args = [ctx_id, args[0]]
            ctx = env.lookup(ctx_id, "context")
            value = _checked(form, env.prop, args[1], ctx)
        env.define(ident, head, value)
        decls.append(Decl(str(head), str(ident), tuple(to_tuple(a) for a in args), _loc(form)))
    return ModelFile(to_tuple(base_form), tuple(decls), tuple(assertions), env)


def _ctx_name(env, ctx):
    for ident, (kind, value) in env.values.items():
        if kind == "context" and value == ctx:
            return str(ident)
    return None


def _checked(form, fn, *args):
    try:
        return fn(*args)
    except (ParseError, UnboundIdentifier, DuplicateIdentifier, SizeLimitExceeded):
        raise
    except PropCohError as exc:
        raise InvalidDeclaration(*_pos(form), exc) from exc


def _check_judgement(env, j):
    """Shape and identifier check of a judgement, without evaluating it."""
    _expect(isinstance(j, list) and j and _is_atom(j[0]) and j[0] in JUDGEMENTS, j,
            "a judgement: " + ", ".join(sorted(JUDGEMENTS)))
    _expect(len(j) == JUDGEMENTS[j[0]] + 1, j, f"{JUDGEMENTS[j[0]]} argument(s) for {j[0]}")
    if j[0] == "not":
        _check_judgement(env, j[1])
        return
    for arg in j[1:]:
        _check_refs(env, arg)


def _check_refs(env, e):
    if _is_atom(e):
        env.kind(e)
        return
    env.expr_kind(e)
    head = e[0]
    if head == "sub":
        return
    if head in ("universe", "diagram"):
        for x in e[1:]:
            _expect(_is_atom(x), x, "an identifier")
            env.kind(x)
        return
    for x in e[1:]:
        _check_refs(env, x)


def render_model(model):
    """Canonical text of a parsed model; ``parse_model`` reads it back unchanged."""
    lines = [f"(base {dumps(model.base)})"]
    for d in model.decls:
        lines.append(f"({d.kind} {d.ident} {' '.join(dumps(a) for a in d.args)})")
    for a in model.assertions:
        lines.append(f"(assert {dumps(a.judgement)})")
    return "\n".join(lines) + "\n"


def run_assertions(model):
    """Evaluate every assertion of a parsed model in order.

    Errors raised while evaluating an assertion are re-raised as
    EvaluationError carrying the assertion's location.
    """
    report = Report()
    env = model.env
    for a in model.assertions:
        form = a.form if a.form is not None else _reposition(a.judgement)
        try:
            ok, detail = env.judge(form)
        except PropCohError as exc:
            raise EvaluationError(a.loc, exc) from exc
        report.add(a.loc, dumps(a.judgement), ok, detail)
    return report


def _reposition(expr):
    if isinstance(expr, tuple):
        return SList([_reposition(e) for e in expr])
    return Atom(expr)
