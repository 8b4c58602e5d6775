"""Human-writable theory format.

::

    # comment
    meta name "N+Add".
    sort nat.
    data nat = zero | s(nat).
    fun add: nat nat -> nat.
    pred leq: nat nat.
    axiom forall y:nat. add(zero, y) = y.
    conjecture forall x:nat. leq(zero, x).

Sorts of the reflective signature carry a kind: ``sort var_nat : var(nat).``,
``sort form : form.``.  Connectives, loosest first: ``<->``, ``->`` (right
associative), ``|``, ``&``, ``~``; atoms are ``false``, ``true``, ``s = t``,
``s != t`` and predicate applications.  A quantifier body extends as far
right as possible.  Integer literals in term position stand for numerals.

Variable names ``x<i>`` and ``x<i>_<sort>`` denote index ``i`` directly.
Any other name gets, per sort, the smallest index not taken by such
canonical names, in order of first binding.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import ParseError, SortMismatch, UnknownSymbol
from ..logic import (
    BASE,
    ENV,
    FORM,
    TERM,
    VAR,
    And,
    App,
    Bot,
    Eq,
    Exists,
    Forall,
    Formula,
    FunSym,
    Iff,
    Implies,
    InductiveDatatype,
    Not,
    Or,
    Pred,
    PredSym,
    Signature,
    Sort,
    Term,
    Theory,
    Top,
    Var,
    all_vars,
    check_formula,
    numeral,
    sort_of,
    typecheck,
)

KEYWORDS = {"forall", "exists", "true", "false"}
CANONICAL = re.compile(r"x(\d+)(?:_(.+))?\Z")
IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op><->|->|!=|[~&|=(),.:])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


@dataclass
class TheoryDocument:
    theory: Theory
    conjecture: Formula | None = None
    meta: dict[str, str] = field(default_factory=dict)


# -- raw syntax --------------------------------------------------------------
# Formulas and terms are first read into tagged tuples, then elaborated
# against the signature once expected sorts are known.


class _Reader:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.text == text and t.kind in ("op", "ident")

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> Token:
        t = self.tok
        if t.kind != "ident":
            raise self.error(f"expected an identifier, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def _default_sort(self) -> Sort | None:
        base = [s for s in self.sorts.values() if s.kind == BASE]
        return base[0] if len(base) == 1 else None

    # formulas

    def formula(self):
        left = self.implication()
        while self.at("<->"):
            tok = self.tok
            self.i += 1
            left = ("bin", "<->", left, self.implication(), tok)
        return left

    def implication(self):
        left = self.disjunction()
        if self.at("->"):
            tok = self.tok
            self.i += 1
            return ("bin", "->", left, self.implication(), tok)
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.at("|"):
            tok = self.tok
            self.i += 1
            left = ("bin", "|", left, self.conjunction(), tok)
        return left

    def conjunction(self):
        left = self.unary()
        while self.at("&"):
            tok = self.tok
            self.i += 1
            left = ("bin", "&", left, self.unary(), tok)
        return left

    def unary(self):
        t = self.tok
        if self.accept("~"):
            return ("not", self.unary(), t)
        if t.kind == "ident" and t.text in ("forall", "exists"):
            self.i += 1
            binders = [self.binder()]
            while self.accept(","):
                binders.append(self.binder())
            self.expect(".")
            return ("quant", t.text, binders, self.formula(), t)
        return self.atom()

    def binder(self):
        name = self.ident()
        self.expect(":")
        sort = self.ident()
        return (name.text, sort.text, name)

    def atom(self):
        t = self.tok
        if self.accept("("):
            inner = self.formula()
            self.expect(")")
            return inner
        if t.kind == "ident" and t.text == "false":
            self.i += 1
            return ("bot", t)
        if t.kind == "ident" and t.text == "true":
            self.i += 1
            return ("top", t)
        lhs = self.term()
        if self.at("=") or self.at("!="):
            op = self.tok
            self.i += 1
            rhs = self.term()
            return ("eq", op.text == "!=", lhs, rhs, op)
        if lhs[0] != "id":
            raise self.error("a numeral is not a formula", t)
        return ("atom", lhs[1], lhs[2], t)

    def term(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return ("int", int(t.text), t)
        name = self.ident()
        if name.text in KEYWORDS:
            raise self.error(f"keyword {name.text!r} used as a term", name)
        args = None
        if self.accept("("):
            args = []
            if not self.at(")"):
                args.append(self.term())
                while self.accept(","):
                    args.append(self.term())
            self.expect(")")
        return ("id", name.text, args, name)


def _tok_of(raw) -> Token:
    return raw[-1]


# -- elaboration -------------------------------------------------------------


class _Namer:
    """Assigns indices to variable names within one formula."""

    def __init__(self, raw):
        self.reserved: dict[str, set[int]] = {}
        self.reserved_any: set[int] = set()
        self.assigned: dict[tuple[str, str], int] = {}
        self.used: dict[str, set[int]] = {}
        self._scan(raw)

    def _scan(self, raw):
        tag = raw[0]
        if tag == "quant":
            for name, sort, _ in raw[2]:
                m = CANONICAL.match(name)
                if m:
                    self.reserved.setdefault(m.group(2) or sort, set()).add(int(m.group(1)))
            self._scan(raw[3])
        elif tag == "not":
            self._scan(raw[1])
        elif tag == "bin":
            self._scan(raw[2])
            self._scan(raw[3])
        elif tag == "eq":
            self._scan_term(raw[2])
            self._scan_term(raw[3])
        elif tag == "atom":
            for a in raw[2] or ():
                self._scan_term(a)

    def _scan_term(self, raw):
        if raw[0] != "id":
            return
        if raw[2] is None:
            m = CANONICAL.match(raw[1])
            if m:
                if m.group(2):
                    self.reserved.setdefault(m.group(2), set()).add(int(m.group(1)))
                else:
                    self.reserved_any.add(int(m.group(1)))
        for a in raw[2] or ():
            self._scan_term(a)

    def var(self, name: str, sort: Sort, tok: Token) -> Var:
        m = CANONICAL.match(name)
        if m:
            if m.group(2) and m.group(2) != sort.name:
                raise ParseError(f"variable {name} is used at sort {sort.name}", tok.line, tok.col)
            return Var(int(m.group(1)), sort)
        key = (name, sort.name)
        if key not in self.assigned:
            taken = self.reserved.get(sort.name, set()) | self.reserved_any | self.used.setdefault(sort.name, set())
            i = 0
            while i in taken:
                i += 1
            self.assigned[key] = i
            self.used[sort.name].add(i)
        return Var(self.assigned[key], sort)


class _Scope:
    def __init__(self, env: "_Env", raw, allow_free: bool = False):
        self.env = env
        self.allow_free = allow_free
        self.namer = _Namer(raw)
        self.bound: dict[str, Var] = {}
        self.free: dict[str, Var] = {}


class _Env:
    """Declarations seen so far while reading a document."""

    def __init__(self):
        self.sorts: dict[str, Sort] = {}
        self.funs: dict[str, FunSym] = {}
        self.preds: dict[str, PredSym] = {}
        self.datatypes: list[InductiveDatatype] = []

    @classmethod
    def of(cls, sig: Signature) -> "_Env":
        env = cls()
        env.sorts = {s.name: s for s in sig.sorts}
        env.funs = {f.name: f for f in sig.funs}
        env.preds = {p.name: p for p in sig.preds}
        return env

    def signature(self) -> Signature:
        return Signature(tuple(self.sorts.values()), tuple(self.funs.values()), tuple(self.preds.values()))

    def sort(self, name: str, tok: Token) -> Sort:
        try:
            return self.sorts[name]
        except KeyError:
            raise UnknownSymbol(f"{tok.line}:{tok.col}: unknown sort {name!r}") from None

    def _default_sort(self) -> Sort | None:
        base = [s for s in self.sorts.values() if s.kind == BASE]
        return base[0] if len(base) == 1 else None

    # formulas

    def formula(self, raw, allow_free: bool = False) -> Formula:
        scope = _Scope(self, raw, allow_free)
        phi = self._formula(raw, scope)
        if scope.free and not allow_free:
            from ..errors import OpenAxiom

            names = ", ".join(sorted(scope.free))
            tok = _tok_of(raw)
            raise OpenAxiom(f"{tok.line}:{tok.col}: formula has free variables {names}")
        return phi

    def _formula(self, raw, scope: _Scope) -> Formula:
        tag = raw[0]
        if tag == "bot":
            return Bot()
        if tag == "top":
            return Top()
        if tag == "not":
            return Not(self._formula(raw[1], scope))
        if tag == "bin":
            cls = {"<->": Iff, "->": Implies, "|": Or, "&": And}[raw[1]]
            return cls(self._formula(raw[2], scope), self._formula(raw[3], scope))
        if tag == "quant":
            _, kind, binders, body, _ = raw
            saved = dict(scope.bound)
            vs = []
            for name, sname, tok in binders:
                if name in self.funs:
                    raise ParseError(f"variable {name!r} shadows a function symbol", tok.line, tok.col)
                v = scope.namer.var(name, self.sort(sname, tok), tok)
                scope.bound[name] = v
                vs.append(v)
            out = self._formula(body, scope)
            scope.bound = saved
            cls = Forall if kind == "forall" else Exists
            for v in reversed(vs):
                out = cls(v, out)
            return out
        if tag == "eq":
            _, negated, l, r, tok = raw
            lt = self._term(l, None, scope)
            rt = self._term(r, None if lt is None else sort_of(lt), scope)
            if lt is None and rt is None:
                guess = self._default_sort()
                if guess is not None:
                    lt = self._term(l, guess, scope)
                    rt = self._term(r, guess, scope)
            if lt is None:
                if rt is None:
                    raise ParseError("cannot infer the sort of this equation", tok.line, tok.col)
                lt = self._term(l, sort_of(rt), scope)
            if sort_of(lt) != sort_of(rt):
                raise SortMismatch(f"{tok.line}:{tok.col}: equation between {sort_of(lt)} and {sort_of(rt)}")
            e = Eq(sort_of(lt), lt, rt)
            return Not(e) if negated else e
        if tag == "atom":
            _, name, args, tok = raw
            if name not in self.preds:
                raise UnknownSymbol(f"{tok.line}:{tok.col}: unknown predicate {name!r}")
            p = self.preds[name]
            return Pred(p, self._args(p.name, p.domain, args or [], tok, scope))
        raise AssertionError(tag)

    def _args(self, name, domain, args, tok, scope) -> tuple[Term, ...]:
        if len(args) != len(domain):
            from ..errors import ArityMismatch

            raise ArityMismatch(f"{tok.line}:{tok.col}: {name} expects {len(domain)} arguments, got {len(args)}")
        out = []
        for a, s in zip(args, domain):
            t = self._term(a, s, scope)
            if sort_of(t) != s:
                at = _tok_of(a)
                raise SortMismatch(f"{at.line}:{at.col}: {name} expects a {s} argument, got {sort_of(t)}")
            out.append(t)
        return tuple(out)

    def _term(self, raw, expected: Sort | None, scope: _Scope) -> Term | None:
        """Elaborate a term; ``None`` when its sort cannot be known yet."""
        if raw[0] == "int":
            _, n, tok = raw
            try:
                return numeral(n, self.signature())
            except Exception as exc:
                raise ParseError(str(exc), tok.line, tok.col) from None
        _, name, args, tok = raw
        if args is None:
            if name in scope.bound:
                return scope.bound[name]
            if name in self.funs:
                f = self.funs[name]
                if f.arity:
                    from ..errors import ArityMismatch

                    raise ArityMismatch(f"{tok.line}:{tok.col}: {name} expects {f.arity} arguments, got 0")
                return App(f)
            if name in scope.free:
                return scope.free[name]
            m = CANONICAL.match(name)
            if scope.allow_free and not m:
                raise UnknownSymbol(f"{tok.line}:{tok.col}: unknown constant {name!r} (free variables are written x0, x1, ...)")
            if expected is None and m and m.group(2) in self.sorts:
                expected = self.sorts[m.group(2)]
            if expected is None:
                return None
            v = scope.namer.var(name, expected, tok)
            scope.free[name] = v
            return v
        if name not in self.funs:
            raise UnknownSymbol(f"{tok.line}:{tok.col}: unknown function {name!r}")
        f = self.funs[name]
        return App(f, self._args(f.name, f.domain, args, tok, scope))


# -- documents ---------------------------------------------------------------


def _check_name(tok: Token, what: str) -> None:
    if tok.text in KEYWORDS:
        raise ParseError(f"keyword {tok.text!r} cannot name a {what}", tok.line, tok.col)
    if what != "sort" and CANONICAL.match(tok.text):
        raise ParseError(f"{tok.text!r} is reserved for variables", tok.line, tok.col)


def _sort_kind(r: _Reader, env: _Env) -> tuple[str, str | None]:
    k = r.ident()
    if k.text in (VAR, TERM):
        r.expect("(")
        of = r.ident()
        r.expect(")")
        base = env.sort(of.text, of)
        if base.kind != BASE:
            raise ParseError(f"{of.text} is not a base sort", of.line, of.col)
        return k.text, of.text
    if k.text in (BASE, FORM, ENV):
        return k.text, None
    raise ParseError(f"unknown sort kind {k.text!r}", k.line, k.col)


def _unquote(tok: Token) -> str:
    return re.sub(r"\\(.)", r"\1", tok.text[1:-1])


def parse_document(text: str, check: bool = True) -> TheoryDocument:
    """Read a theory document; typechecks the result unless ``check`` is false."""
    r = _Reader(tokenize(text))
    env = _Env()
    axioms: list[Formula] = []
    conjecture: Formula | None = None
    meta: dict[str, str] = {}
    while r.tok.kind != "eof":
        head = r.ident()
        kw = head.text
        if kw == "sort":
            name = r.ident()
            _check_name(name, "sort")
            kind, of = BASE, None
            if r.accept(":"):
                kind, of = _sort_kind(r, env)
            if name.text in env.sorts:
                raise ParseError(f"sort {name.text!r} declared twice", name.line, name.col)
            env.sorts[name.text] = Sort(name.text, kind, of)
        elif kw == "data":
            name = r.ident()
            if name.text not in env.sorts:
                _check_name(name, "sort")
                env.sorts[name.text] = Sort(name.text)
            sort = env.sorts[name.text]
            r.expect("=")
            ctors = [_ctor(r, env, sort)]
            while r.accept("|"):
                ctors.append(_ctor(r, env, sort))
            if any(d.sort == sort for d in env.datatypes):
                raise ParseError(f"datatype {name.text!r} declared twice", name.line, name.col)
            env.datatypes.append(InductiveDatatype(sort, tuple(ctors)))
        elif kw == "fun":
            name = r.ident()
            _check_name(name, "function")
            r.expect(":")
            dom = []
            while not r.at("->"):
                s = r.ident()
                dom.append(env.sort(s.text, s))
            r.expect("->")
            s = r.ident()
            _declare_fun(env, FunSym(name.text, tuple(dom), env.sort(s.text, s)), name)
        elif kw == "pred":
            name = r.ident()
            _check_name(name, "predicate")
            dom = []
            if r.accept(":"):
                while not r.at("."):
                    s = r.ident()
                    dom.append(env.sort(s.text, s))
            if name.text in env.preds or name.text in env.funs:
                raise ParseError(f"symbol {name.text!r} declared twice", name.line, name.col)
            env.preds[name.text] = PredSym(name.text, tuple(dom))
        elif kw in ("axiom", "conjecture"):
            raw = r.formula()
            phi = env.formula(raw)
            if kw == "axiom":
                axioms.append(phi)
            else:
                if conjecture is not None:
                    raise ParseError("only one conjecture per document", head.line, head.col)
                conjecture = phi
        elif kw == "meta":
            key = r.ident()
            val = r.tok
            if val.kind != "string":
                raise r.error("expected a quoted string")
            r.i += 1
            meta[key.text] = _unquote(val)
        else:
            raise ParseError(f"unknown directive {kw!r}", head.line, head.col)
        r.expect(".")
    theory = Theory(
        name=meta.get("name", ""),
        signature=env.signature(),
        datatypes=tuple(env.datatypes),
        axioms=tuple(axioms),
        reflection=meta.get("reflection"),
    )
    if check:
        typecheck(theory)
        if conjecture is not None:
            check_formula(theory.signature, conjecture)
    return TheoryDocument(theory, conjecture, meta)


def _declare_fun(env: _Env, f: FunSym, tok: Token) -> None:
    if f.name in env.funs or f.name in env.preds:
        raise ParseError(f"symbol {f.name!r} declared twice", tok.line, tok.col)
    env.funs[f.name] = f


def _ctor(r: _Reader, env: _Env, sort: Sort) -> FunSym:
    name = r.ident()
    _check_name(name, "constructor")
    dom = []
    if r.accept("("):
        s = r.ident()
        dom.append(env.sort(s.text, s))
        while r.accept(","):
            s = r.ident()
            dom.append(env.sort(s.text, s))
        r.expect(")")
    f = FunSym(name.text, tuple(dom), sort)
    if name.text in env.funs:
        if env.funs[name.text] != f:
            raise ParseError(f"constructor {name.text!r} conflicts with an earlier declaration", name.line, name.col)
        return f
    _declare_fun(env, f, name)
    return f


def parse_theory(text: str) -> Theory:
    return parse_document(text).theory


def parse_formula(text: str, sig: Signature, allow_free: bool = True) -> Formula:
    """Read one formula over ``sig`` (a trailing ``.`` is optional)."""
    r = _Reader(tokenize(text))
    raw = r.formula()
    r.accept(".")
    if r.tok.kind != "eof":
        raise r.error(f"unexpected {r.tok.text!r} after formula")
    phi = _Env.of(sig).formula(raw, allow_free=allow_free)
    check_formula(sig, phi)
    return phi


def parse_term(text: str, sig: Signature) -> Term:
    r = _Reader(tokenize(text))
    raw = r.term()
    if r.tok.kind != "eof":
        raise r.error(f"unexpected {r.tok.text!r} after term")
    env = _Env.of(sig)
    t = env._term(raw, None, _Scope(env, ("bot", raw[-1])))
    if t is None:
        tok = raw[-1]
        raise ParseError("cannot infer the sort of a bare variable", tok.line, tok.col)
    return t


# -- printing ----------------------------------------------------------------


def _names(phi: Formula | Term) -> dict[Var, str]:
    sorts_at: dict[int, set[Sort]] = {}
    for v in all_vars(phi):
        sorts_at.setdefault(v.index, set()).add(v.sort)
    return {
        v: f"x{v.index}_{v.sort.name}" if len(sorts_at[v.index]) > 1 else f"x{v.index}"
        for v in all_vars(phi)
    }


def print_term(t: Term, names: dict[Var, str] | None = None) -> str:
    names = names if names is not None else _names(t)
    if isinstance(t, Var):
        return names[t]
    if not t.args:
        return t.fun.name
    return f"{t.fun.name}({', '.join(print_term(a, names) for a in t.args)})"


_BIN = {Or: "|", And: "&", Implies: "->", Iff: "<->"}


def print_formula(phi: Formula) -> str:
    return _fmt(phi, _names(phi))


def _fmt(phi: Formula, names: dict[Var, str]) -> str:
    match phi:
        case Bot():
            return "false"
        case Top():
            return "true"
        case Pred(p, args):
            if not args:
                return p.name
            return f"{p.name}({', '.join(print_term(a, names) for a in args)})"
        case Eq(_, l, r):
            return f"{print_term(l, names)} = {print_term(r, names)}"
        case Not(a):
            return "~" + _operand(a, names, True)
        case Or(a, b) | And(a, b) | Implies(a, b) | Iff(a, b):
            return f"({_operand(a, names)} {_BIN[type(phi)]} {_operand(b, names)})"
        case Forall() | Exists():
            kind = "forall" if isinstance(phi, Forall) else "exists"
            binders = []
            cls = type(phi)
            while isinstance(phi, cls):
                binders.append(f"{names[phi.var]}:{phi.var.sort.name}")
                phi = phi.body
            return f"{kind} {', '.join(binders)}. {_fmt(phi, names)}"
    raise TypeError(f"not a formula: {phi!r}")


def _operand(phi: Formula, names, negated: bool = False) -> str:
    s = _fmt(phi, names)
    if isinstance(phi, (Forall, Exists)) or (negated and isinstance(phi, Eq)):
        return f"({s})"
    return s


def _kind_suffix(s: Sort) -> str:
    if s.kind == BASE:
        return ""
    if s.kind in (VAR, TERM):
        return f" : {s.kind}({s.of})"
    return f" : {s.kind}"


def _quote(v: str) -> str:
    return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'


def print_document(doc: TheoryDocument | Theory, conjecture: Formula | None = None, meta=None) -> str:
    """Render a document; ``parse_document(print_document(d))`` rebuilds ``d``."""
    if isinstance(doc, Theory):
        doc = TheoryDocument(doc, conjecture, dict(meta or {}))
    th = doc.theory
    sig = th.signature
    lines: list[str] = []
    meta = dict(doc.meta)
    if th.name:
        meta["name"] = th.name
    else:
        meta.pop("name", None)
    if th.reflection:
        meta["reflection"] = th.reflection
    else:
        meta.pop("reflection", None)
    for key in ("name", *sorted(k for k in meta if k != "name")):
        if key in meta:
            lines.append(f"meta {key} {_quote(meta[key])}.")
    for s in sig.sorts:
        lines.append(f"sort {s.name}{_kind_suffix(s)}.")

    inline = _inline_datatypes(th)
    emitted: set[FunSym] = set()
    for f in sig.funs:
        if f in emitted:
            continue
        d = inline.get(f)
        if d is not None:
            lines.append(_data_line(d))
            emitted.update(d.ctors)
            continue
        dom = " ".join(s.name for s in f.domain)
        lines.append(f"fun {f.name}: {dom + ' ' if dom else ''}-> {f.codomain.name}.")
    if not inline:
        for d in th.datatypes:
            lines.append(_data_line(d))
    for p in sig.preds:
        dom = " ".join(s.name for s in p.domain)
        lines.append(f"pred {p.name}: {dom}." if dom else f"pred {p.name}.")
    for ax in th.axioms:
        lines.append(f"axiom {print_formula(ax)}.")
    if doc.conjecture is not None:
        lines.append(f"conjecture {print_formula(doc.conjecture)}.")
    return "\n".join(lines) + "\n"


def _data_line(d: InductiveDatatype) -> str:
    parts = []
    for c in d.ctors:
        parts.append(c.name if not c.domain else f"{c.name}({', '.join(s.name for s in c.domain)})")
    return f"data {d.sort.name} = {' | '.join(parts)}."


def _inline_datatypes(th: Theory) -> dict[FunSym, InductiveDatatype]:
    """Datatypes whose constructors are contiguous in declaration order.

    Empty when inlining would not reproduce the datatype order, in which case
    the printer declares all functions first and the datatypes afterwards.
    """
    funs = list(th.signature.funs)
    out: dict[FunSym, InductiveDatatype] = {}
    firsts = []
    for d in th.datatypes:
        try:
            start = funs.index(d.ctors[0])
        except ValueError:
            return {}
        if tuple(funs[start : start + len(d.ctors)]) != d.ctors:
            return {}
        out[d.ctors[0]] = d
        firsts.append(start)
    if firsts != sorted(firsts):
        return {}
    return out


def print_theory(doc: TheoryDocument | Theory) -> str:
    return print_document(doc)


__all__ = [
    "TheoryDocument",
    "parse_document",
    "parse_theory",
    "parse_formula",
    "parse_term",
    "print_document",
    "print_theory",
    "print_formula",
    "print_term",
    "tokenize",
]
