"""Leaf labels, rooted triples, triple sets and rooted trees.

Leaves are plain ``int`` ids interned through a :class:`LabelTable`.  A triple
``ab|c`` is stored with ``a < b`` so that ``ab|c`` and ``ba|c`` are the same
object for equality and hashing.  Trees are identified by their cluster
hierarchy, so two trees compare equal exactly when they are isomorphic as
leaf-labelled rooted trees.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

LeafId = int
Cluster = frozenset  # frozenset[LeafId]

_FORBIDDEN = re.compile(r"[\s|(),;#]")


class TripleFormatError(ValueError):
    """Malformed triple or quartet text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NewickError(ValueError):
    pass


class LabelTable:
    """Bijection between leaf labels and consecutive integer ids."""

    def __init__(self, labels: Iterable[str] = ()):
        self._ids: dict[str, int] = {}
        self._names: list[str] = []
        for label in labels:
            self.intern(label)

    def intern(self, label: str) -> LeafId:
        if label in self._ids:
            return self._ids[label]
        if not label or _FORBIDDEN.search(label):
            raise ValueError(f"invalid leaf label {label!r}")
        self._ids[label] = len(self._names)
        self._names.append(label)
        return self._ids[label]

    def id(self, label: str) -> LeafId:
        return self._ids[label]

    def name(self, leaf: LeafId) -> str:
        return self._names[leaf]

    def __contains__(self, label: str) -> bool:
        return label in self._ids

    def __len__(self) -> int:
        return len(self._names)

    def __iter__(self) -> Iterator[str]:
        return iter(self._names)

    def __repr__(self) -> str:
        return f"LabelTable({self._names!r})"


class Triple(NamedTuple):
    """Rooted triple ``ab|c``; build through :meth:`of` to canonicalize."""

    a: LeafId
    b: LeafId
    c: LeafId

    @classmethod
    def of(cls, a: LeafId, b: LeafId, c: LeafId) -> "Triple":
        if a == b or a == c or b == c:
            raise ValueError(f"triple leaves must be distinct, got {a}, {b}, {c}")
        if b < a:
            a, b = b, a
        return cls(a, b, c)

    @property
    def leaves(self) -> frozenset[LeafId]:
        return frozenset((self.a, self.b, self.c))

    def alternatives(self) -> tuple["Triple", "Triple"]:
        """The two other resolutions of the same leaf trio: ``bc|a`` and ``ac|b``."""
        return Triple.of(self.b, self.c, self.a), Triple.of(self.a, self.c, self.b)

    def format(self, labels: LabelTable | None = None) -> str:
        if labels is None:
            return f"{self.a} {self.b} | {self.c}"
        return f"{labels.name(self.a)} {labels.name(self.b)} | {labels.name(self.c)}"


def _check_weight(triple: Triple, w: float) -> float:
    w = float(w)
    if math.isnan(w) or math.isinf(w) or w < 0:
        raise ValueError(f"weight for {triple} must be finite and non-negative, got {w}")
    return w


class TripleSet:
    """Duplicate-free, insertion-ordered collection of triples.

    Equality and hashing are set-based; iteration order is the insertion order,
    which the greedy algorithms rely on for reproducibility.
    """

    __slots__ = ("_triples", "_set", "_leaves", "weights", "labels")

    def __init__(
        self,
        triples: Iterable[Triple] = (),
        weights: dict[Triple, float] | None = None,
        labels: LabelTable | None = None,
    ):
        seen: dict[Triple, None] = {}
        for t in triples:
            if not isinstance(t, Triple):
                t = Triple.of(*t)
            seen.setdefault(t, None)
        self._triples: tuple[Triple, ...] = tuple(seen)
        self._set = frozenset(self._triples)
        leaves: set[LeafId] = set()
        for t in self._triples:
            leaves.update(t)
        self._leaves = frozenset(leaves)
        if weights is not None:
            weights = {t: _check_weight(t, weights[t]) for t in self._triples if t in weights}
        self.weights = weights
        self.labels = labels

    @property
    def leaf_set(self) -> frozenset[LeafId]:
        return self._leaves

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, t: object) -> bool:
        return t in self._set

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TripleSet):
            return self._set == other._set
        if isinstance(other, (set, frozenset)):
            return self._set == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"TripleSet({self.format()})"

    def as_set(self) -> frozenset[Triple]:
        return self._set

    def sorted(self) -> "TripleSet":
        return self._derive(sorted(self._triples))

    def without(self, *drop: Triple) -> "TripleSet":
        gone = set(drop)
        return self._derive(t for t in self._triples if t not in gone)

    def with_(self, *extra: Triple) -> "TripleSet":
        return self._derive((*self._triples, *extra))

    def restrict(self, leaves: Iterable[LeafId]) -> "TripleSet":
        """Triples whose three leaves all lie in ``leaves``."""
        keep = frozenset(leaves)
        return self._derive(t for t in self._triples if t.a in keep and t.b in keep and t.c in keep)

    def issubset(self, other: "TripleSet") -> bool:
        return self._set <= other._set

    def _derive(self, triples: Iterable[Triple]) -> "TripleSet":
        return TripleSet(triples, weights=self.weights, labels=self.labels)

    def format(self, sep: str = ", ") -> str:
        if self.labels is None:
            return sep.join(f"{t.a}{t.b}|{t.c}" for t in self._triples)
        return sep.join(t.format(self.labels).replace(" ", "") for t in self._triples)


_WEIGHT = re.compile(r"^w=(\S+)$")


def parse_triple_file(text: str, labels: LabelTable | None = None) -> TripleSet:
    """Parse ``<x> <y> | <z> [w=<decimal>]`` lines, ``#`` comments allowed."""
    labels = LabelTable() if labels is None else labels
    triples: list[Triple] = []
    weights: dict[Triple, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        left, bar, right = line.partition("|")
        if not bar:
            raise TripleFormatError("expected '<x> <y> | <z>'", lineno)
        pair = left.split()
        rest = right.split()
        if len(pair) != 2 or not rest or len(rest) > 2:
            raise TripleFormatError("expected '<x> <y> | <z>'", lineno)
        weight = None
        if len(rest) == 2:
            m = _WEIGHT.match(rest[1])
            if not m:
                raise TripleFormatError(f"unexpected token {rest[1]!r}", lineno)
            try:
                weight = float(m.group(1))
            except ValueError:
                raise TripleFormatError(f"bad weight {m.group(1)!r}", lineno) from None
        try:
            ids = [labels.intern(x) for x in (*pair, rest[0])]
            t = Triple.of(*ids)
        except ValueError as exc:
            raise TripleFormatError(str(exc), lineno) from None
        if weight is not None:
            try:
                weight = _check_weight(t, weight)
            except ValueError as exc:
                raise TripleFormatError(str(exc), lineno) from None
            if t in weights and weights[t] != weight:
                raise TripleFormatError(f"conflicting weights for {t.format(labels)}", lineno)
            weights[t] = weight
        triples.append(t)
    return TripleSet(triples, weights=weights or None, labels=labels)


def format_triple_file(R: TripleSet, labels: LabelTable | None = None) -> str:
    labels = labels or R.labels
    lines = []
    for t in R:
        line = t.format(labels)
        if R.weights and t in R.weights:
            line += f" w={R.weights[t]:g}"
        lines.append(line)
    return "".join(line + "\n" for line in lines)


# --------------------------------------------------------------------------
# Rooted trees


@dataclass(frozen=True)
class Node:
    label: LeafId | None = None
    children: tuple["Node", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> frozenset[LeafId]:
        if self.is_leaf:
            return frozenset((self.label,))
        out: set[LeafId] = set()
        for ch in self.children:
            out |= ch.leaves()
        return frozenset(out)

    def walk(self) -> Iterator["Node"]:
        stack = [self]
        while stack:
            v = stack.pop()
            yield v
            stack.extend(reversed(v.children))


class RootedTree:
    """Leaf-labelled rooted tree; every non-root inner vertex has >= 2 children.

    ``root`` is ``None`` for the empty tree.  Equality is hierarchy equality.
    """

    def __init__(self, root: Node | None, labels: LabelTable | None = None):
        self.root = root
        self.labels = labels
        if root is not None:
            self._validate(root)

    @staticmethod
    def _validate(root: Node) -> None:
        seen: set[LeafId] = set()
        for v in root.walk():
            if v.is_leaf:
                if v.label is None:
                    raise ValueError("leaf without label")
                if v.label in seen:
                    raise ValueError(f"duplicate leaf {v.label}")
                seen.add(v.label)
            elif len(v.children) < 2:
                raise ValueError("inner vertex with a single child")

    @cached_property
    def leaf_set(self) -> frozenset[LeafId]:
        return frozenset() if self.root is None else self.root.leaves()

    @cached_property
    def hierarchy(self) -> frozenset[Cluster]:
        return hierarchy(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.hierarchy == other.hierarchy

    def __hash__(self) -> int:
        return hash(self.hierarchy)

    def __repr__(self) -> str:
        return f"RootedTree({to_newick(self)})"

    def inner_nodes(self) -> list[Node]:
        return [] if self.root is None else [v for v in self.root.walk() if not v.is_leaf]

    def is_binary(self) -> bool:
        return all(len(v.children) == 2 for v in self.inner_nodes())

    @classmethod
    def star(cls, leaves: Iterable[LeafId], labels: LabelTable | None = None) -> "RootedTree":
        leaves = sorted(leaves)
        if not leaves:
            return cls(None, labels)
        if len(leaves) == 1:
            return cls(Node(leaves[0]), labels)
        return cls(Node(children=tuple(Node(x) for x in leaves)), labels)


def _clusters(v: Node, out: set[Cluster]) -> Cluster:
    if v.is_leaf:
        c = frozenset((v.label,))
    else:
        c = frozenset().union(*(_clusters(ch, out) for ch in v.children))
    out.add(c)
    return c


def hierarchy(T: RootedTree) -> frozenset[Cluster]:
    """The cluster set of ``T`` (leaf sets below each vertex)."""
    out: set[Cluster] = set()
    if T.root is not None:
        _clusters(T.root, out)
    return frozenset(out)


def trees_equal(T1: RootedTree, T2: RootedTree) -> bool:
    return T1.hierarchy == T2.hierarchy


def refines(T2: RootedTree, T1: RootedTree) -> bool:
    """True iff every cluster of ``T1`` is a cluster of ``T2``."""
    if T1.leaf_set != T2.leaf_set:
        raise ValueError("trees have different leaf sets")
    return T1.hierarchy <= T2.hierarchy


def _resolving_clusters(T: RootedTree) -> list[Cluster]:
    L = T.leaf_set
    return [C for C in T.hierarchy if 1 < len(C) < len(L)]


def displays(T: RootedTree, t: Triple) -> bool:
    """``ab|c`` is displayed iff some cluster holds ``a`` and ``b`` but not ``c``."""
    missing = t.leaves - T.leaf_set
    if missing:
        raise ValueError(f"leaves {sorted(missing)} are not in the tree")
    return any(t.a in C and t.b in C and t.c not in C for C in _resolving_clusters(T))


def triples_of_hierarchy(H: Iterable[Cluster], leaves: frozenset[LeafId]) -> frozenset[Triple]:
    out: set[Triple] = set()
    for C in H:
        if len(C) < 2 or len(C) >= len(leaves):
            continue
        outside = leaves - C
        for a, b in combinations(sorted(C), 2):
            for c in outside:
                out.add(Triple(a, b, c))
    return frozenset(out)


def displayed_triples(T: RootedTree) -> TripleSet:
    return TripleSet(sorted(triples_of_hierarchy(T.hierarchy, T.leaf_set)), labels=T.labels)


def tree_from_clusters(
    H: Iterable[Cluster], labels: LabelTable | None = None
) -> RootedTree:
    """Rebuild a tree from a laminar cluster family (no validation of laminarity)."""
    clusters = sorted(set(H), key=lambda C: (-len(C), min(C) if C else -1))
    if not clusters:
        return RootedTree(None, labels)
    ground = clusters[0]
    singletons = {frozenset((x,)) for x in ground}
    clusters = sorted(set(clusters) | singletons, key=lambda C: (-len(C), sorted(C)))
    kids: dict[Cluster, list[Cluster]] = {C: [] for C in clusters}
    placed: list[Cluster] = []
    for C in clusters[1:]:
        # smallest already-placed superset is the parent
        parent = min((P for P in placed if C < P), key=len, default=ground)
        kids[parent].append(C)
        placed.append(C)

    def make(C: Cluster) -> Node:
        if len(C) == 1:
            return Node(next(iter(C)))
        ch = sorted(kids[C], key=min)
        return Node(children=tuple(make(K) for K in ch))

    return RootedTree(make(ground), labels)


# --------------------------------------------------------------------------
# Newick


_TOKEN = re.compile(r"\s*([(),;]|[^\s(),;:\[\]]+)")


def parse_newick(text: str, labels: LabelTable | None = None) -> RootedTree:
    """Parse a ``;``-terminated Newick string with leaf labels only.

    Inner-node labels and branch lengths are tolerated and discarded.
    """
    labels = LabelTable() if labels is None else labels
    s = re.sub(r":[^,();]*", "", text.strip())
    if not s.endswith(";"):
        raise NewickError("Newick string must end with ';'")
    tokens = [m.group(1) for m in _TOKEN.finditer(s[:-1])]
    if "".join(tokens) != re.sub(r"\s+", "", s[:-1]):
        raise NewickError("unexpected characters in Newick string")
    if not tokens:
        return RootedTree(None, labels)
    pos = 0
    seen: set[str] = set()

    def parse() -> Node:
        nonlocal pos
        if pos >= len(tokens):
            raise NewickError("unexpected end of input")
        tok = tokens[pos]
        if tok == "(":
            pos += 1
            children = [parse()]
            while pos < len(tokens) and tokens[pos] == ",":
                pos += 1
                children.append(parse())
            if pos >= len(tokens) or tokens[pos] != ")":
                raise NewickError("unbalanced parentheses")
            pos += 1
            if pos < len(tokens) and tokens[pos] not in "(),":
                pos += 1  # inner label
            if len(children) < 2:
                raise NewickError("inner vertex with one child")
            return Node(children=tuple(children))
        if tok in "),":
            raise NewickError(f"unexpected {tok!r}")
        pos += 1
        if tok in seen:
            raise NewickError(f"duplicate leaf label {tok!r}")
        seen.add(tok)
        return Node(labels.intern(tok))

    root = parse()
    if pos != len(tokens):
        raise NewickError("unbalanced parentheses or trailing tokens")
    return RootedTree(root, labels)


def to_newick(T: RootedTree, labels: LabelTable | None = None) -> str:
    """Newick with children ordered by minimum leaf id (canonical)."""
    labels = labels or T.labels
    name = (lambda x: labels.name(x)) if labels is not None else str

    def fmt(v: Node) -> str:
        if v.is_leaf:
            return name(v.label)
        ch = sorted(v.children, key=lambda c: min(c.leaves()))
        return "(" + ",".join(fmt(c) for c in ch) + ")"

    return ";" if T.root is None else fmt(T.root) + ";"
