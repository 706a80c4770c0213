"""
Suspension terms and environments
=================================

Syntax of the simplified suspension calculus together with the structural
measures len, lev and ind, the well-formedness check and the accessors for
simple environments.
"""

from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Iterable, List, Tuple, Union

from calculus.errors import CategoryError, IllFormedError
from calculus.tree import ROOT, Node, Path, walk

# --- CONSTANTS ---
MAX_LEVEL = 2 ** 63 - 1


# --- ARITHMETIC ---
def monus(a: int, b: int) -> int:
    """Natural subtraction truncated at zero."""
    return a - b if a > b else 0


def checked_sub(a: int, b: int) -> int:
    if b > a:
        raise IllFormedError(f"level arithmetic underflow: {a} - {b}")
    return a - b


def checked_add(*values: int) -> int:
    total = sum(values)
    if total > MAX_LEVEL:
        raise IllFormedError(f"level arithmetic overflow: {' + '.join(map(str, values))}")
    return total


def _natural(value, what):
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise IllFormedError(f"{what} must be a natural number, got {value!r}")
    if value > MAX_LEVEL:
        raise IllFormedError(f"{what} exceeds the level bound")


# --- TERMS ---
@dataclass(frozen=True)
class Const(Node):
    name: str


@dataclass(frozen=True)
class MetaVar(Node):
    name: str


@dataclass(frozen=True)
class Index(Node):
    i: int

    def __post_init__(self):
        _natural(self.i, "de Bruijn index")
        if self.i < 1:
            raise IllFormedError("de Bruijn indices start at 1")


@dataclass(frozen=True)
class App(Node):
    fn: "SuspTerm"
    arg: "SuspTerm"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("fn", "arg")


@dataclass(frozen=True)
class Abs(Node):
    body: "SuspTerm"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("body",)


@dataclass(frozen=True)
class Susp(Node):
    term: "SuspTerm"
    ol: int
    nl: int
    env: "SuspEnv"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("term", "env")

    def __post_init__(self):
        _natural(self.ol, "old embedding level")
        _natural(self.nl, "new embedding level")


# --- ENVIRONMENTS ---
@dataclass(frozen=True)
class EnvItem:
    term: "SuspTerm"
    index: int

    def __post_init__(self):
        _natural(self.index, "environment item index")


@dataclass(frozen=True)
class Nil(Node):
    pass


NIL = Nil()


@dataclass(frozen=True)
class Cons(Node):
    item: EnvItem
    rest: "SuspEnv"

    def children(self):
        return (self.item.term, self.rest)

    def rebuild(self, children):
        term, rest = children
        return Cons(EnvItem(term, self.item.index), rest)


@dataclass(frozen=True)
class Merge(Node):
    e1: "SuspEnv"
    nl1: int
    ol2: int
    e2: "SuspEnv"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("e1", "e2")

    def __post_init__(self):
        _natural(self.nl1, "merge level")
        _natural(self.ol2, "merge length")


SuspTerm = Union[Const, MetaVar, Index, App, Abs, Susp]
SuspEnv = Union[Nil, Cons, Merge]
SuspExpr = Union[SuspTerm, SuspEnv]

TERM_TYPES = (Const, MetaVar, Index, App, Abs, Susp)
ENV_TYPES = (Nil, Cons, Merge)


def is_term(x) -> bool:
    return isinstance(x, TERM_TYPES)


def is_env(x) -> bool:
    return isinstance(x, ENV_TYPES)


def env_of(items: Iterable[Tuple[SuspTerm, int]], tail: SuspEnv = NIL) -> SuspEnv:
    """Build (t1, l1) :: (t2, l2) :: ... :: tail."""
    env = tail
    for term, index in reversed(list(items)):
        env = Cons(EnvItem(term, index), env)
    return env


def apply_all(fn: SuspTerm, *args: SuspTerm) -> SuspTerm:
    for arg in args:
        fn = App(fn, arg)
    return fn


# --- MEASURES ---
def env_len(e: SuspEnv) -> int:
    """Length of an environment."""
    count = 0
    while isinstance(e, Cons):
        count += 1
        e = e.rest
    if isinstance(e, Merge):
        return count + env_len(e.e1) + monus(env_len(e.e2), e.nl1)
    if not isinstance(e, Nil):
        raise CategoryError(f"len expects an environment, got {type(e).__name__}")
    return count


def env_lev(e: SuspEnv) -> int:
    """Level of an environment."""
    if isinstance(e, Nil):
        return 0
    if isinstance(e, Cons):
        return e.item.index
    if isinstance(e, Merge):
        return env_lev(e.e2) + monus(e.nl1, e.ol2)
    raise CategoryError(f"lev expects an environment, got {type(e).__name__}")


def env_ind(e: SuspEnv, i: int) -> int:
    """The i-th index of an environment."""
    while True:
        if isinstance(e, Nil):
            return 0
        if isinstance(e, Cons):
            if i == 0:
                return e.item.index
            e, i = e.rest, i - 1
            continue
        if isinstance(e, Merge):
            l = env_len(e.e1)
            if i < l:
                m = monus(e.nl1, env_ind(e.e1, i))
                if env_len(e.e2) > m:
                    return env_ind(e.e2, m) + monus(e.nl1, e.ol2)
                return env_ind(e.e1, i)
            e, i = e.e2, i - l + e.nl1
            continue
        raise CategoryError(f"ind expects an environment, got {type(e).__name__}")


# --- WELL-FORMEDNESS ---
class Clause(str, Enum):
    SUSP_LENGTH = "suspension: len(env) = ol"
    SUSP_LEVEL = "suspension: lev(env) <= nl"
    CONS_LEVEL = "cons: item index >= lev(rest)"
    MERGE_LEVEL = "merge: lev(e1) <= nl1"
    MERGE_LENGTH = "merge: len(e2) = ol2"


@dataclass(frozen=True)
class Violation:
    path: Path
    clause: Clause
    detail: str


@dataclass(frozen=True)
class Verdict:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def check_well_formed(x: SuspExpr) -> Verdict:
    """Check the three well-formedness clauses at every subexpression."""
    found: List[Violation] = []
    for path, node in walk(x):
        if isinstance(node, Susp):
            length, level = env_len(node.env), env_lev(node.env)
            if length != node.ol:
                found.append(Violation(path, Clause.SUSP_LENGTH, f"len(env)={length} but ol={node.ol}"))
            if level > node.nl:
                found.append(Violation(path, Clause.SUSP_LEVEL, f"lev(env)={level} but nl={node.nl}"))
        elif isinstance(node, Cons):
            level = env_lev(node.rest)
            if node.item.index < level:
                found.append(Violation(path, Clause.CONS_LEVEL, f"index {node.item.index} < lev(rest)={level}"))
        elif isinstance(node, Merge):
            level, length = env_lev(node.e1), env_len(node.e2)
            if level > node.nl1:
                found.append(Violation(path, Clause.MERGE_LEVEL, f"lev(e1)={level} but nl1={node.nl1}"))
            if length != node.ol2:
                found.append(Violation(path, Clause.MERGE_LENGTH, f"len(e2)={length} but ol2={node.ol2}"))
    return Verdict(tuple(found))


def is_well_formed(x: SuspExpr) -> bool:
    return check_well_formed(x).ok


# --- SIMPLE ENVIRONMENTS ---
def is_simple(e: SuspEnv) -> bool:
    while isinstance(e, Cons):
        e = e.rest
    return isinstance(e, Nil)


def env_items(e: SuspEnv) -> List[EnvItem]:
    items = []
    while isinstance(e, Cons):
        items.append(e.item)
        e = e.rest
    if not isinstance(e, Nil):
        raise CategoryError("environment is not simple")
    return items


def env_item_at(e: SuspEnv, i: int) -> EnvItem:
    """e[i]: the i-th binding, counting from 0."""
    node = e
    for _ in range(i):
        if not isinstance(node, Cons):
            break
        node = node.rest
    if isinstance(node, Cons):
        return node.item
    if isinstance(node, Merge):
        raise CategoryError("environment is not simple")
    raise IndexError(f"environment has no binding {i}")


def env_drop(e: SuspEnv, i: int) -> SuspEnv:
    """e{i}: drop the first i bindings; nil once i reaches the length."""
    node = e
    for _ in range(i):
        if isinstance(node, Cons):
            node = node.rest
        elif isinstance(node, Nil):
            return NIL
        else:
            raise CategoryError("environment is not simple")
    return node


def is_debruijn(t: SuspTerm) -> bool:
    return not any(isinstance(node, Susp) for _, node in walk(t))


def has_metavars(x: SuspExpr) -> bool:
    return any(isinstance(node, MetaVar) for _, node in walk(x))


def has_constants(x: SuspExpr) -> bool:
    return any(isinstance(node, Const) for _, node in walk(x))


def env_paths(x: SuspExpr, path: Path = ROOT) -> List[Path]:
    """Paths of every environment subexpression, outermost first."""
    return [p for p, node in walk(x, path) if is_env(node)]
