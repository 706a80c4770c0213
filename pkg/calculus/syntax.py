"""
Concrete syntax for the four calculi.

Suspensions:   #N  c  X  \ t  t t  [t, ol, nl, e]  (t, n) :: e  nil  {e1, nl, ol, e2}
lambda-sigma:  1  c  \a  a b  a[s]  id  a . s  s o t  ^  ^N
lambda-upsilon: N_  \a  a b  a[s]  a/  lift(s)  shift
lambda-s:      N  \a  a b  sig(i, a, b)  phi(k, i, a)
"""

from enum import Enum
from functools import lru_cache

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError

from calculus.bridges import lsig as sg
from calculus.bridges import ls
from calculus.bridges import lu
from calculus.engine import Status, Trace, TraceStep
from calculus.errors import ParseError, SuspCalcError
from calculus.rewrite import RuleId
from calculus.terms import (
    NIL,
    Abs,
    App,
    Cons,
    Const,
    EnvItem,
    Index,
    Merge,
    MetaVar,
    Nil,
    Susp,
)


class Calculus(str, Enum):
    SUSP = "susp"
    LSIG = "lsig"
    LU = "lu"
    LS = "ls"


# --- GRAMMARS ---
SUSP_GRAMMAR = r"""
?start: term | env

?term: "\\" term                              -> abs
     | app
?app: app atom                                -> app
    | atom
?atom: INDEX                                  -> index
     | CONST                                  -> const
     | META                                   -> meta
     | "(" term ")"
     | "[" term "," NAT "," NAT "," env "]"   -> susp

?env: item "::" env                           -> cons
    | "nil"                                   -> nil
    | "{" env "," NAT "," NAT "," env "}"     -> merge
item: "(" term "," NAT ")"                    -> item
    | DUMMY                                   -> dummy

INDEX: /#[0-9]+/
CONST: /(?!nil\b)[a-z][A-Za-z0-9_']*/
META: /[A-Z][A-Za-z0-9_']*/
DUMMY: /@[0-9]+/
NAT: /[0-9]+/

%import common.WS
%ignore WS
"""

LSIG_GRAMMAR = r"""
?start: term | subst

?term: "\\" term                  -> abs
     | app
?app: app atom                    -> app
    | atom
?atom: "1"                        -> one
     | CONST                      -> const
     | atom "[" subst "]"         -> clos
     | "(" term ")"

?subst: cons "o" subst            -> comp
      | cons
?cons: atom "." cons              -> scons
     | satom
?satom: "id"                      -> id
      | "^"                       -> shift
      | SHIFTN                    -> shiftn
      | "(" subst ")"

SHIFTN.2: /\^[0-9]+/
CONST: /(?!id\b|o\b)[a-z][A-Za-z0-9_']*/

%import common.WS
%ignore WS
"""

LU_GRAMMAR = r"""
?start: term | subst

?term: "\\" term                  -> abs
     | app
?app: app atom                    -> app
    | atom
?atom: VAR                        -> var
     | atom "[" subst "]"         -> clos
     | "(" term ")"

?subst: atom "/"                  -> slash
      | "lift" "(" subst ")"      -> lift
      | "shift"                   -> shift

VAR: /[0-9]+_/

%import common.WS
%ignore WS
"""

LS_GRAMMAR = r"""
?start: term

?term: "\\" term                                 -> abs
     | app
?app: app atom                                   -> app
    | atom
?atom: NAT                                       -> var
     | "sig" "(" NAT "," term "," term ")"       -> sigma
     | "phi" "(" NAT "," NAT "," term ")"        -> phi
     | "(" term ")"

NAT: /[0-9]+/

%import common.WS
%ignore WS
"""

RULE_TYPES = {
    Calculus.SUSP: RuleId,
    Calculus.LSIG: sg.LsigRule,
    Calculus.LU: lu.LuRule,
    Calculus.LS: ls.LsRule,
}

GRAMMARS = {
    Calculus.SUSP: SUSP_GRAMMAR,
    Calculus.LSIG: LSIG_GRAMMAR,
    Calculus.LU: LU_GRAMMAR,
    Calculus.LS: LS_GRAMMAR,
}


@lru_cache(maxsize=None)
def _parser(calculus: Calculus) -> Lark:
    return Lark(GRAMMARS[calculus], parser="earley", ambiguity="resolve")


# --- TREE BUILDERS ---
@v_args(inline=True)
class _SuspBuilder(Transformer):
    def __init__(self, legacy_dummies=False):
        super().__init__()
        self.legacy_dummies = legacy_dummies

    def index(self, tok):
        return Index(int(tok[1:]))

    def const(self, tok):
        return Const(str(tok))

    def meta(self, tok):
        return MetaVar(str(tok))

    def abs(self, body):
        return Abs(body)

    def app(self, fn, arg):
        return App(fn, arg)

    def susp(self, term, ol, nl, env):
        return Susp(term, int(ol), int(nl), env)

    def nil(self):
        return NIL

    def cons(self, item, rest):
        return Cons(item, rest)

    def item(self, term, index):
        return EnvItem(term, int(index))

    def dummy(self, tok):
        if not self.legacy_dummies:
            raise ParseError(f"dummy item {tok} needs --legacy-dummies", tok.line, tok.column)
        return EnvItem(Index(1), int(tok[1:]) + 1)

    def merge(self, e1, nl1, ol2, e2):
        return Merge(e1, int(nl1), int(ol2), e2)


@v_args(inline=True)
class _LsigBuilder(Transformer):
    def one(self):
        return sg.ONE

    def const(self, tok):
        return sg.LsigConst(str(tok))

    def abs(self, body):
        return sg.LsigAbs(body)

    def app(self, fn, arg):
        return sg.LsigApp(fn, arg)

    def clos(self, term, subst):
        return sg.Closure(term, subst)

    def comp(self, left, right):
        return sg.Comp(left, right)

    def scons(self, term, subst):
        return sg.ConsS(term, subst)

    def id(self):
        return sg.ID

    def shift(self):
        return sg.SHIFT

    def shiftn(self, tok):
        return sg.shift_power(int(tok[1:]))


@v_args(inline=True)
class _LuBuilder(Transformer):
    def var(self, tok):
        return lu.Var(int(tok[:-1]))

    def abs(self, body):
        return lu.LuAbs(body)

    def app(self, fn, arg):
        return lu.LuApp(fn, arg)

    def clos(self, term, subst):
        return lu.Closure(term, subst)

    def slash(self, term):
        return lu.Slash(term)

    def lift(self, subst):
        return lu.Lift(subst)

    def shift(self):
        return lu.SHIFT


@v_args(inline=True)
class _LsBuilder(Transformer):
    def var(self, tok):
        return ls.LsVar(int(tok))

    def abs(self, body):
        return ls.LsAbs(body)

    def app(self, fn, arg):
        return ls.LsApp(fn, arg)

    def sigma(self, i, body, arg):
        return ls.Sigma(int(i), body, arg)

    def phi(self, k, i, body):
        return ls.Phi(int(k), int(i), body)


def parse(text: str, calculus="susp", legacy_dummies: bool = False):
    """Parse `text` as an expression of `calculus`."""
    calculus = Calculus(calculus)
    builders = {
        Calculus.SUSP: lambda: _SuspBuilder(legacy_dummies),
        Calculus.LSIG: _LsigBuilder,
        Calculus.LU: _LuBuilder,
        Calculus.LS: _LsBuilder,
    }
    try:
        tree = _parser(calculus).parse(text)
        return builders[calculus]().transform(tree)
    except UnexpectedEOF as e:
        raise ParseError(f"unexpected end of input, expected one of {sorted(set(map(str, e.expected)))}") from None
    except UnexpectedInput as e:
        raise ParseError(f"unexpected input {_excerpt(text, e)!r}", e.line, e.column) from None
    except VisitError as e:
        if isinstance(e.orig_exc, SuspCalcError):
            raise e.orig_exc from None
        raise


def _excerpt(text, error):
    pos = getattr(error, "pos_in_stream", None)
    if pos is None:
        return text[:20]
    return text[pos:pos + 20]


# --- PRINTERS ---
def _susp_term(t, ctx="top"):
    if isinstance(t, Index):
        return f"#{t.i}"
    if isinstance(t, (Const, MetaVar)):
        return t.name
    if isinstance(t, Susp):
        return f"[{_susp_term(t.term)}, {t.ol}, {t.nl}, {_susp_env(t.env)}]"
    if isinstance(t, Abs):
        text = f"\\ {_susp_term(t.body)}"
        return f"({text})" if ctx != "top" else text
    if isinstance(t, App):
        text = f"{_susp_term(t.fn, 'fn')} {_susp_term(t.arg, 'arg')}"
        return f"({text})" if ctx == "arg" else text
    raise SuspCalcError(f"cannot print {type(t).__name__}")


def _susp_env(e):
    parts = []
    while isinstance(e, Cons):
        parts.append(f"({_susp_term(e.item.term)}, {e.item.index}) :: ")
        e = e.rest
    if isinstance(e, Nil):
        tail = "nil"
    elif isinstance(e, Merge):
        tail = f"{{{_susp_env(e.e1)}, {e.nl1}, {e.ol2}, {_susp_env(e.e2)}}}"
    else:
        raise SuspCalcError(f"cannot print {type(e).__name__}")
    return "".join(parts) + tail


def _lsig_term(t, ctx="top"):
    if isinstance(t, sg.One):
        return "1"
    if isinstance(t, sg.LsigConst):
        return t.name
    if isinstance(t, sg.Closure):
        return f"{_lsig_term(t.term, 'arg')}[{_lsig_subst(t.subst)}]"
    if isinstance(t, sg.LsigAbs):
        text = f"\\{_lsig_term(t.body)}"
        return f"({text})" if ctx != "top" else text
    if isinstance(t, sg.LsigApp):
        text = f"{_lsig_term(t.fn, 'fn')} {_lsig_term(t.arg, 'arg')}"
        return f"({text})" if ctx == "arg" else text
    raise SuspCalcError(f"cannot print {type(t).__name__}")


def _lsig_subst(s, ctx="top"):
    if isinstance(s, sg.Id):
        return "id"
    n = sg.shift_exponent(s)
    if n is not None:
        return "^" if n == 1 else f"^{n}"
    if isinstance(s, sg.ConsS):
        text = f"{_lsig_term(s.term, 'arg')} . {_lsig_subst(s.subst, 'cons')}"
        return f"({text})" if ctx == "left" else text
    if isinstance(s, sg.Comp):
        text = f"{_lsig_subst(s.left, 'left')} o {_lsig_subst(s.right)}"
        return f"({text})" if ctx in ("left", "cons") else text
    raise SuspCalcError(f"cannot print {type(s).__name__}")


def _lu_term(t, ctx="top"):
    if isinstance(t, lu.Var):
        return f"{t.n}_"
    if isinstance(t, lu.Closure):
        return f"{_lu_term(t.term, 'arg')}[{_lu_subst(t.subst)}]"
    if isinstance(t, lu.LuAbs):
        text = f"\\{_lu_term(t.body)}"
        return f"({text})" if ctx != "top" else text
    if isinstance(t, lu.LuApp):
        text = f"{_lu_term(t.fn, 'fn')} {_lu_term(t.arg, 'arg')}"
        return f"({text})" if ctx == "arg" else text
    raise SuspCalcError(f"cannot print {type(t).__name__}")


def _lu_subst(s):
    if isinstance(s, lu.Slash):
        return f"{_lu_term(s.term, 'arg')}/"
    if isinstance(s, lu.Lift):
        return f"lift({_lu_subst(s.subst)})"
    if isinstance(s, lu.Shift):
        return "shift"
    raise SuspCalcError(f"cannot print {type(s).__name__}")


def _ls_term(t, ctx="top"):
    if isinstance(t, ls.LsVar):
        return str(t.n)
    if isinstance(t, ls.Sigma):
        return f"sig({t.i}, {_ls_term(t.body)}, {_ls_term(t.arg)})"
    if isinstance(t, ls.Phi):
        return f"phi({t.k}, {t.i}, {_ls_term(t.body)})"
    if isinstance(t, ls.LsAbs):
        text = f"\\{_ls_term(t.body)}"
        return f"({text})" if ctx != "top" else text
    if isinstance(t, ls.LsApp):
        text = f"{_ls_term(t.fn, 'fn')} {_ls_term(t.arg, 'arg')}"
        return f"({text})" if ctx == "arg" else text
    raise SuspCalcError(f"cannot print {type(t).__name__}")


_SUSP_TERMS = (Index, Const, MetaVar, Susp, Abs, App)
_SUSP_ENVS = (Nil, Cons, Merge)
_LSIG_TERMS = (sg.One, sg.LsigConst, sg.Closure, sg.LsigAbs, sg.LsigApp)
_LU_TERMS = (lu.Var, lu.Closure, lu.LuAbs, lu.LuApp)
_LU_SUBSTS = (lu.Slash, lu.Lift, lu.Shift)
_LS_TERMS = (ls.LsVar, ls.Sigma, ls.Phi, ls.LsAbs, ls.LsApp)


def calculus_of(x) -> Calculus:
    if isinstance(x, _SUSP_TERMS + _SUSP_ENVS):
        return Calculus.SUSP
    if isinstance(x, _LSIG_TERMS + sg.SUBST_TYPES):
        return Calculus.LSIG
    if isinstance(x, _LU_TERMS + _LU_SUBSTS):
        return Calculus.LU
    if isinstance(x, _LS_TERMS):
        return Calculus.LS
    raise SuspCalcError(f"not an expression of any supported calculus: {type(x).__name__}")


def to_text(x) -> str:
    """Canonical concrete syntax of `x`."""
    if isinstance(x, _SUSP_TERMS):
        return _susp_term(x)
    if isinstance(x, _SUSP_ENVS):
        return _susp_env(x)
    if isinstance(x, _LSIG_TERMS):
        return _lsig_term(x)
    if isinstance(x, sg.SUBST_TYPES):
        return _lsig_subst(x)
    if isinstance(x, _LU_TERMS):
        return _lu_term(x)
    if isinstance(x, _LU_SUBSTS):
        return _lu_subst(x)
    if isinstance(x, _LS_TERMS):
        return _ls_term(x)
    raise SuspCalcError(f"cannot print {type(x).__name__}")


# --- TRACE FILES ---
def trace_to_json(trace: Trace) -> dict:
    """Trace as a JSON-ready dict; expressions are stored in canonical syntax."""
    return {
        "calculus": calculus_of(trace.initial).value,
        "initial": to_text(trace.initial),
        "steps": [
            {"rule": getattr(step.rule, "value", step.rule), "path": list(step.at), "result": to_text(step.result)}
            for step in trace.steps
        ],
        "status": trace.status.value,
    }


def trace_from_json(data: dict, calculus=None) -> Trace:
    calculus = Calculus(calculus or data.get("calculus", "susp"))
    try:
        steps = [
            TraceStep(_rule_named(calculus, step["rule"]), tuple(step["path"]), parse(step["result"], calculus))
            for step in data["steps"]
        ]
        return Trace(parse(data["initial"], calculus), steps, Status(data["status"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed trace file: {e}") from None


def _rule_named(calculus: Calculus, name: str):
    try:
        return RULE_TYPES[calculus](name)
    except ValueError:
        # oracle traces record plain "beta"
        return name
