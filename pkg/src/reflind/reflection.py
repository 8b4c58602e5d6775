"""Reflective extension of a theory.

Adds sorts for the theory's own variables, terms, formulas and
environments, the symbols that build and evaluate them, the satisfaction
axioms tying reflective syntax to the base symbols, and a structural Gödel
encoding of base formulas as ground terms of sort ``form``.

Generated names: the reflective copy of a base symbol ``f`` is ``f'r``;
per-sort families are ``<family>_<sort>`` (``v0_nat``, ``push_lst``, ...);
the global symbols are ``botdot``, ``ordot``, ``negdot``, ``empty`` and
``models``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property

from .errors import AlreadyReflected, NameCollision, NotCore, NotInImage, UnknownSymbol
from .logic import (
    ENV,
    FORM,
    REFLECTIVE,
    TERM,
    VAR,
    App,
    Bot,
    Eq,
    Forall,
    Formula,
    FunSym,
    Iff,
    Implies,
    Not,
    Or,
    Pred,
    PredSym,
    Signature,
    Sort,
    Term,
    Theory,
    Var,
    eq,
    forall_all,
    is_core,
    typecheck,
)

DOT_SUFFIX = "'r"
FAMILIES = ("v0", "next", "inj", "eqdot", "forall", "push", "evalv", "eval")


def dotted_name(name: str) -> str:
    return name + DOT_SUFFIX


@dataclass(frozen=True)
class ReflectionMap:
    """Correspondence between a base signature and its reflective symbols."""

    base: Signature
    var_sort: dict[Sort, Sort]
    term_sort: dict[Sort, Sort]
    form: Sort
    env: Sort
    dotted_funs: dict[FunSym, FunSym]
    dotted_preds: dict[PredSym, FunSym]
    v0: dict[Sort, FunSym]
    next: dict[Sort, FunSym]
    inj: dict[Sort, FunSym]
    eqdot: dict[Sort, FunSym]
    forall: dict[Sort, FunSym]
    push: dict[Sort, FunSym]
    evalv: dict[Sort, FunSym]
    eval: dict[Sort, FunSym]
    botdot: FunSym
    ordot: FunSym
    negdot: FunSym
    empty: FunSym
    models: PredSym
    signature: Signature = field(compare=False)

    @cached_property
    def roles(self) -> dict[str, tuple[str, object]]:
        """Generated symbol name -> (role, base symbol or base sort)."""
        out: dict[str, tuple[str, object]] = {}
        for f, d in self.dotted_funs.items():
            out[d.name] = ("fun", f)
        for p, d in self.dotted_preds.items():
            out[d.name] = ("pred", p)
        for fam in FAMILIES:
            for s, sym in getattr(self, fam).items():
                out[sym.name] = (fam, s)
        for g in ("botdot", "ordot", "negdot", "empty"):
            out[getattr(self, g).name] = (g, None)
        out[self.models.name] = ("models", None)
        return out

    @cached_property
    def added_sorts(self) -> tuple[Sort, ...]:
        return tuple(s for s in self.signature.sorts if s not in self.base.sorts)

    @cached_property
    def added_symbols(self) -> tuple[FunSym | PredSym, ...]:
        return tuple(f for f in self.signature.funs if f not in self.base.funs) + tuple(
            p for p in self.signature.preds if p not in self.base.preds
        )

    def is_reflective_symbol(self, name: str) -> bool:
        return name in self.roles

    def var_code(self, sort: Sort, index: int) -> Term:
        """``next^index(v0)`` of the given base sort."""
        t: Term = App(self.v0[sort])
        nxt = self.next[sort]
        for _ in range(index):
            t = App(nxt, (t,))
        return t

    def true_at(self, sort: Sort, phi: Term, value: Term) -> Formula:
        """``push(empty, v0, value) models phi``."""
        env = App(self.push[sort], (App(self.empty), App(self.v0[sort]), value))
        return Pred(self.models, (env, phi))


def reflect_signature(theory: Theory | Signature) -> ReflectionMap:
    """Build the reflective signature and the symbol correspondence."""
    base = theory.signature if isinstance(theory, Theory) else theory
    sorts = base.base_sorts()
    if len(sorts) != len(base.sorts):
        raise AlreadyReflected("signature already contains reflective sorts")

    form = Sort("form", FORM)
    env = Sort("env", ENV)
    var_sort = {s: Sort(f"var_{s.name}", VAR, s.name) for s in sorts}
    term_sort = {s: Sort(f"term_{s.name}", TERM, s.name) for s in sorts}
    new_sorts: list[Sort] = []
    for s in sorts:
        new_sorts += [var_sort[s], term_sort[s]]
    new_sorts += [form, env]

    fam: dict[str, dict[Sort, FunSym]] = {f: {} for f in FAMILIES}
    new_funs: list[FunSym] = []
    for s in sorts:
        vs, ts = var_sort[s], term_sort[s]
        profile = {
            "v0": ((), vs),
            "next": ((vs,), vs),
            "inj": ((vs,), ts),
            "eqdot": ((ts, ts), form),
            "forall": ((vs, form), form),
            "push": ((env, vs, s), env),
            "evalv": ((env, vs), s),
            "eval": ((env, ts), s),
        }
        for name in FAMILIES:
            dom, cod = profile[name]
            sym = FunSym(f"{name}_{s.name}", dom, cod)
            fam[name][s] = sym
            new_funs.append(sym)

    dotted_funs = {}
    for f in base.funs:
        d = FunSym(dotted_name(f.name), tuple(term_sort[s] for s in f.domain), term_sort[f.codomain])
        dotted_funs[f] = d
        new_funs.append(d)
    dotted_preds = {}
    for p in base.preds:
        d = FunSym(dotted_name(p.name), tuple(term_sort[s] for s in p.domain), form)
        dotted_preds[p] = d
        new_funs.append(d)

    botdot = FunSym("botdot", (), form)
    ordot = FunSym("ordot", (form, form), form)
    negdot = FunSym("negdot", (form,), form)
    empty = FunSym("empty", (), env)
    models = PredSym("models", (env, form))
    new_funs += [botdot, ordot, negdot, empty]

    generated = {s.name for s in new_sorts} | {f.name for f in new_funs} | {models.name}
    clash = generated & base.names()
    if clash:
        raise NameCollision(f"base signature uses reserved names: {', '.join(sorted(clash))}")
    suffixed = sorted(n for n in base.names() if n.endswith(DOT_SUFFIX))
    if suffixed:
        raise NameCollision(f"names ending in {DOT_SUFFIX!r} are reserved: {', '.join(suffixed)}")

    ext = base.extend(new_sorts, new_funs, (models,))
    return ReflectionMap(
        base=base,
        var_sort=var_sort,
        term_sort=term_sort,
        form=form,
        env=env,
        dotted_funs=dotted_funs,
        dotted_preds=dotted_preds,
        botdot=botdot,
        ordot=ordot,
        negdot=negdot,
        empty=empty,
        models=models,
        signature=ext,
        **fam,
    )


class _Fresh:
    """Hands out variables with per-sort increasing indices."""

    def __init__(self):
        self.counts: dict[Sort, int] = {}

    def __call__(self, sort: Sort) -> Var:
        i = self.counts.get(sort, 0)
        self.counts[sort] = i + 1
        return Var(i, sort)


def reflect_axioms(theory: Theory | Signature, rmap: ReflectionMap) -> list[Formula]:
    """Satisfaction and evaluation axioms, universally closed."""
    base = theory.signature if isinstance(theory, Theory) else theory
    if base.sorts != rmap.base.sorts or base.funs != rmap.base.funs or base.preds != rmap.base.preds:
        raise ValueError("reflection map was built for a different signature")
    sorts = base.base_sorts()
    E, models = rmap.env, rmap.models
    out: list[Formula] = []

    def sat(e: Term, code: Term) -> Formula:
        return Pred(models, (e, code))

    # variable lookup in environments
    for s in sorts:
        v = _Fresh()
        e, x, val = v(E), v(rmap.var_sort[s]), v(s)
        push = rmap.push[s](e, x, val)
        out.append(forall_all([e, x, val], eq(rmap.evalv[s](push, x), val)))
    for s in sorts:
        v = _Fresh()
        e, x, y, val = v(E), v(rmap.var_sort[s]), v(rmap.var_sort[s]), v(s)
        lhs = rmap.evalv[s](rmap.push[s](e, y, val), x)
        body = Implies(Not(eq(x, y)), eq(lhs, rmap.evalv[s](e, x)))
        out.append(forall_all([e, x, y, val], body))
    for s in sorts:
        for t in sorts:
            if s == t:
                continue
            v = _Fresh()
            e, w, val, x = v(E), v(rmap.var_sort[t]), v(t), v(rmap.var_sort[s])
            lhs = rmap.evalv[s](rmap.push[t](e, w, val), x)
            out.append(forall_all([e, w, val, x], eq(lhs, rmap.evalv[s](e, x))))

    # term evaluation
    for s in sorts:
        v = _Fresh()
        e, x = v(E), v(rmap.var_sort[s])
        out.append(forall_all([e, x], eq(rmap.eval[s](e, rmap.inj[s](x)), rmap.evalv[s](e, x))))
    for f in base.funs:
        v = _Fresh()
        e = v(E)
        ts = [v(rmap.term_sort[s]) for s in f.domain]
        lhs = rmap.eval[f.codomain](e, rmap.dotted_funs[f](*ts))
        rhs = f(*(rmap.eval[s](e, t) for s, t in zip(f.domain, ts)))
        out.append(forall_all([e, *ts], eq(lhs, rhs)))

    # satisfaction
    for s in sorts:
        v = _Fresh()
        e, a, b = v(E), v(rmap.term_sort[s]), v(rmap.term_sort[s])
        body = Iff(sat(e, rmap.eqdot[s](a, b)), eq(rmap.eval[s](e, a), rmap.eval[s](e, b)))
        out.append(forall_all([e, a, b], body))
    for p in base.preds:
        v = _Fresh()
        e = v(E)
        ts = [v(rmap.term_sort[s]) for s in p.domain]
        rhs = p(*(rmap.eval[s](e, t) for s, t in zip(p.domain, ts)))
        out.append(forall_all([e, *ts], Iff(sat(e, rmap.dotted_preds[p](*ts)), rhs)))
    v = _Fresh()
    e = v(E)
    out.append(forall_all([e], Iff(sat(e, App(rmap.botdot)), Bot())))
    v = _Fresh()
    e, phi = v(E), v(rmap.form)
    out.append(forall_all([e, phi], Iff(sat(e, rmap.negdot(phi)), Not(sat(e, phi)))))
    v = _Fresh()
    e, phi, psi = v(E), v(rmap.form), v(rmap.form)
    out.append(forall_all([e, phi, psi], Iff(sat(e, rmap.ordot(phi, psi)), Or(sat(e, phi), sat(e, psi)))))
    for s in sorts:
        v = _Fresh()
        e, x, phi, val = v(E), v(rmap.var_sort[s]), v(rmap.form), v(s)
        rhs = Forall(val, sat(rmap.push[s](e, x, val), phi))
        out.append(forall_all([e, x, phi], Iff(sat(e, rmap.forall[s](x, phi)), rhs)))
    return out


# -- Gödel encoding ----------------------------------------------------------


def encode_term(t: Term, rmap: ReflectionMap) -> Term:
    if isinstance(t, Var):
        if t.sort not in rmap.inj:
            raise UnknownSymbol(f"variable of non-base sort {t.sort}")
        return App(rmap.inj[t.sort], (rmap.var_code(t.sort, t.index),))
    try:
        dotted = rmap.dotted_funs[t.fun]
    except KeyError:
        raise UnknownSymbol(f"{t.fun.name!r} is not a base function symbol") from None
    return App(dotted, tuple(encode_term(a, rmap) for a in t.args))


def godel_encode(phi: Formula, rmap: ReflectionMap) -> Term:
    """Structural code of a core base formula as a ground ``form`` term."""
    match phi:
        case Bot():
            return App(rmap.botdot)
        case Not(a):
            return App(rmap.negdot, (godel_encode(a, rmap),))
        case Or(a, b):
            return App(rmap.ordot, (godel_encode(a, rmap), godel_encode(b, rmap)))
        case Forall(v, body):
            if v.sort not in rmap.forall:
                raise UnknownSymbol(f"quantifier over non-base sort {v.sort}")
            return App(rmap.forall[v.sort], (rmap.var_code(v.sort, v.index), godel_encode(body, rmap)))
        case Eq(s, l, r):
            if s not in rmap.eqdot:
                raise UnknownSymbol(f"equation over non-base sort {s}")
            return App(rmap.eqdot[s], (encode_term(l, rmap), encode_term(r, rmap)))
        case Pred(p, args):
            try:
                dotted = rmap.dotted_preds[p]
            except KeyError:
                raise UnknownSymbol(f"{p.name!r} is not a base predicate") from None
            return App(dotted, tuple(encode_term(a, rmap) for a in args))
    if not is_core(phi):
        raise NotCore(f"{type(phi).__name__} must be normalized before encoding")
    raise TypeError(f"not a formula: {phi!r}")


def decode_var(t: Term, rmap: ReflectionMap) -> Var:
    n = 0
    while isinstance(t, App):
        role, sort = rmap.roles.get(t.fun.name, (None, None))
        if role == "next" and t.fun == rmap.next[sort]:
            n += 1
            t = t.args[0]
        elif role == "v0" and t.fun == rmap.v0[sort]:
            return Var(n, sort)
        else:
            break
    raise NotInImage("not a variable code", t)


def godel_decode(t: Term, rmap: ReflectionMap) -> Formula | Term | Var:
    """Inverse of the encoding on its image; ``NotInImage`` elsewhere."""
    if isinstance(t, Var):
        raise NotInImage("codes are ground; found a variable", t)
    role, what = rmap.roles.get(t.fun.name, (None, None))
    match role:
        case "botdot":
            return Bot()
        case "negdot":
            return Not(_decode_form(t.args[0], rmap))
        case "ordot":
            return Or(_decode_form(t.args[0], rmap), _decode_form(t.args[1], rmap))
        case "forall":
            return Forall(decode_var(t.args[0], rmap), _decode_form(t.args[1], rmap))
        case "eqdot":
            return Eq(what, _decode_term(t.args[0], rmap), _decode_term(t.args[1], rmap))
        case "pred":
            return Pred(what, tuple(_decode_term(a, rmap) for a in t.args))
        case "inj":
            return decode_var(t.args[0], rmap)
        case "fun":
            return App(what, tuple(_decode_term(a, rmap) for a in t.args))
        case "v0" | "next":
            return decode_var(t, rmap)
    raise NotInImage(f"{t.fun.name} is not a code constructor", t)


def _decode_form(t: Term, rmap: ReflectionMap) -> Formula:
    out = godel_decode(t, rmap)
    if isinstance(out, (Var, App)):
        raise NotInImage("expected a formula code", t)
    return out


def _decode_term(t: Term, rmap: ReflectionMap) -> Term:
    if isinstance(t, App) and rmap.roles.get(t.fun.name, (None,))[0] in ("v0", "next"):
        raise NotInImage("variable code used where a term code is expected", t)
    out = godel_decode(t, rmap)
    if not isinstance(out, (Var, App)):
        raise NotInImage("expected a term code", t)
    return out


def is_code(t: Term, rmap: ReflectionMap) -> bool:
    try:
        godel_decode(t, rmap)
    except NotInImage:
        return False
    return True


# -- extensions --------------------------------------------------------------


def reflective_extension(theory: Theory) -> Theory:
    """The base theory plus the reflective signature and satisfaction axioms."""
    if theory.reflection is not None:
        raise AlreadyReflected(f"theory {theory.name!r} is already a {theory.reflection} extension")
    typecheck(theory)
    rmap = reflect_signature(theory)
    out = replace(
        theory,
        signature=rmap.signature,
        axioms=theory.axioms + tuple(reflect_axioms(theory, rmap)),
        reflection=REFLECTIVE,
    )
    typecheck(out)
    return out


def recover_map(theory: Theory) -> ReflectionMap:
    """Rebuild the reflection map of an already extended theory."""
    if theory.reflection is None:
        raise ValueError(f"theory {theory.name!r} is not reflected")
    sig = theory.signature
    base_sorts = sig.base_sorts()
    generated = {"botdot", "ordot", "negdot", "empty", "models"}
    generated |= {f"{fam}_{s.name}" for fam in FAMILIES for s in base_sorts}
    funs = tuple(f for f in sig.funs if f.name not in generated and not f.name.endswith(DOT_SUFFIX))
    preds = tuple(p for p in sig.preds if p.name not in generated)
    rmap = reflect_signature(Signature(base_sorts, funs, preds))
    for s in rmap.added_sorts:
        if not sig.has_sort(s.name) or sig.sort(s.name) != s:
            raise UnknownSymbol(f"reflected theory lacks sort {s.name!r}")
    for f in rmap.added_symbols:
        ok = (sig.has_fun(f.name) and sig.fun(f.name) == f) or (sig.has_pred(f.name) and sig.pred(f.name) == f)
        if not ok:
            raise UnknownSymbol(f"reflected theory lacks symbol {f.name!r}")
    return rmap


__all__ = [
    "ReflectionMap",
    "reflect_signature",
    "reflect_axioms",
    "godel_encode",
    "godel_decode",
    "encode_term",
    "decode_var",
    "reflective_extension",
    "recover_map",
    "is_code",
    "dotted_name",
]
