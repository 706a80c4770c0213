"""
Positions inside expression trees.

Every calculus in this package builds its syntax from frozen dataclasses
deriving from `Node`. A node lists the fields holding its addressable
children in `CHILDREN`; a `Path` is the sequence of child selectors leading
from the root to a subexpression.
"""

from dataclasses import dataclass, replace
from typing import ClassVar, Iterator, Tuple

from calculus.errors import RewriteError

Path = Tuple[int, ...]
ROOT: Path = ()


@dataclass(frozen=True)
class Node:
    CHILDREN: ClassVar[Tuple[str, ...]] = ()

    def children(self) -> Tuple["Node", ...]:
        return tuple(getattr(self, name) for name in self.CHILDREN)

    def rebuild(self, children) -> "Node":
        return replace(self, **dict(zip(self.CHILDREN, children)))


def subexpr_at(x: Node, path: Path) -> Node:
    """Return the subexpression addressed by `path`."""
    node = x
    for depth, selector in enumerate(path):
        kids = node.children()
        if not 0 <= selector < len(kids):
            raise RewriteError(
                f"invalid path {list(path)}: no child {selector} at depth {depth} "
                f"({type(node).__name__})"
            )
        node = kids[selector]
    return node


def replace_at(x: Node, path: Path, new: Node) -> Node:
    """Return `x` with the subexpression at `path` replaced by `new`."""
    if not path:
        return new
    spine = [x]
    for selector in path[:-1]:
        spine.append(subexpr_at(spine[-1], (selector,)))
    subexpr_at(spine[-1], (path[-1],))
    result = new
    for node, selector in zip(reversed(spine), reversed(path)):
        kids = list(node.children())
        kids[selector] = result
        result = node.rebuild(kids)
    return result


def walk(x: Node, path: Path = ROOT) -> Iterator[Tuple[Path, Node]]:
    """Preorder traversal yielding (path, subexpression) pairs."""
    stack = [(path, x)]
    while stack:
        here, node = stack.pop()
        yield here, node
        kids = node.children()
        for selector in range(len(kids) - 1, -1, -1):
            stack.append((here + (selector,), kids[selector]))


def size(x: Node) -> int:
    return sum(1 for _ in walk(x))


def format_path(path: Path) -> str:
    return ".".join(str(p) for p in path) if path else "root"


def parse_path(text: str) -> Path:
    """Read a path written as `0.1.0`, `[0, 1, 0]`, `root` or the empty string."""
    cleaned = text.strip().strip("[]").replace(",", ".").replace(" ", "")
    if cleaned in ("", "root"):
        return ROOT
    try:
        steps = tuple(int(part) for part in cleaned.split(".") if part != "")
    except ValueError:
        raise RewriteError(f"cannot read path {text!r}") from None
    if any(s < 0 for s in steps):
        raise RewriteError(f"negative selector in path {text!r}")
    return steps
