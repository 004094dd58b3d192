"""Weighted dual graphs of boundary divisors and their modifications.

Elementary moves (outer/inner blow-up, blow-down) act on vertex ids of a
:class:`WeightedGraph`.  Composite moves (make-zero, move-zero, reversion)
act on positions of a :class:`Zigzag` and expand into elementary moves, so
every composite can be replayed step by step.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import InputError, MoveError


@dataclass(frozen=True)
class WeightedGraph:
    """Simple graph with integer vertex weights (self-intersections)."""

    weights: dict = field(default_factory=dict)  # id -> weight
    edges: frozenset = frozenset()  # frozensets {u, v}

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        for e in self.edges:
            if len(e) != 2:
                raise MoveError(f"loop or malformed edge {sorted(e)}")
            if not e <= self.weights.keys():
                raise MoveError(f"edge {sorted(e)} references a missing vertex")

    def __hash__(self):
        return hash((frozenset(self.weights.items()), self.edges))

    @property
    def vertices(self):
        return sorted(self.weights)

    def neighbors(self, v) -> list:
        return sorted(next(iter(e - {v})) for e in self.edges if v in e)

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def fresh_id(self) -> int:
        return max(self.weights, default=-1) + 1

    def is_path(self) -> bool:
        n = len(self.weights)
        if n == 0:
            return False
        if len(self.edges) != n - 1 or any(self.degree(v) > 2 for v in self.weights):
            return False
        return len(self._component(next(iter(self.weights)))) == n

    def _component(self, start):
        seen, stack = {start}, [start]
        while stack:
            for w in self.neighbors(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "weight": self.weights[v]} for v in self.vertices],
            "edges": sorted(sorted(e) for e in self.edges),
        }

    @classmethod
    def from_json(cls, data) -> WeightedGraph:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            weights = {int(v["id"]): int(v["weight"]) for v in data["vertices"]}
            edges = [tuple(int(i) for i in e) for e in data.get("edges", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad graph JSON: {exc}") from exc
        if len(set(frozenset(e) for e in edges)) != len(edges):
            raise InputError("multi-edges are not allowed")
        try:
            return cls(weights, frozenset(edges))
        except MoveError as exc:
            raise InputError(str(exc)) from exc


# -- moves ------------------------------------------------------------------

@dataclass(frozen=True)
class OuterBlowUp:
    vertex: int

    def __str__(self):
        return f"outer@{self.vertex}"


@dataclass(frozen=True)
class InnerBlowUp:
    u: int
    v: int

    def __str__(self):
        return f"inner@{self.u}-{self.v}"


@dataclass(frozen=True)
class BlowDown:
    vertex: int

    def __str__(self):
        return f"blowdown@{self.vertex}"


@dataclass(frozen=True)
class MakeZero:
    """[[0, w, ...]] -> [[0, w+1, ...]] at the end ``position`` (``inverse``: w-1)."""

    position: int
    inverse: bool = False

    def __str__(self):
        return f"makezero{'-inv' if self.inverse else ''}@{self.position}"


@dataclass(frozen=True)
class MoveZero:
    """[[.., a, 0, b, ..]] -> [[.., a+1, 0, b-1, ..]] ('left') or mirrored ('right')."""

    position: int
    direction: str

    def __post_init__(self):
        if self.direction not in ("left", "right"):
            raise InputError(f"direction must be 'left' or 'right', not {self.direction!r}")

    def __str__(self):
        return f"movezero@{self.position}:{self.direction}"


@dataclass(frozen=True)
class Reversion:
    def __str__(self):
        return "revert"


ELEMENTARY = (OuterBlowUp, InnerBlowUp, BlowDown)
COMPOSITE = (MakeZero, MoveZero, Reversion)


def apply(g, step):
    """Apply one move; Zigzag in gives Zigzag out whenever the result is a path."""
    if isinstance(g, Zigzag):
        return g.apply(step)
    if isinstance(step, COMPOSITE):
        raise MoveError(f"{step} needs a zigzag (positions are path positions)")
    w = dict(g.weights)
    edges = set(g.edges)
    if isinstance(step, OuterBlowUp):
        v = step.vertex
        if v not in w:
            raise MoveError(f"outer blow-up: no vertex {v}")
        e = g.fresh_id()
        w[v] -= 1
        w[e] = -1
        edges.add(frozenset((v, e)))
    elif isinstance(step, InnerBlowUp):
        u, v = step.u, step.v
        if not g.has_edge(u, v):
            raise MoveError(f"inner blow-up: no edge {u}-{v}")
        e = g.fresh_id()
        w[u] -= 1
        w[v] -= 1
        w[e] = -1
        edges.remove(frozenset((u, v)))
        edges |= {frozenset((u, e)), frozenset((e, v))}
    elif isinstance(step, BlowDown):
        v = step.vertex
        if v not in w:
            raise MoveError(f"blow-down: no vertex {v}")
        if w[v] != -1:
            raise MoveError(f"blow-down: vertex {v} has weight {w[v]}, not -1")
        nbrs = g.neighbors(v)
        if len(nbrs) > 2:
            raise MoveError(f"blow-down: vertex {v} has degree {len(nbrs)} > 2")
        if len(nbrs) == 2 and g.has_edge(*nbrs):
            raise MoveError(f"blow-down: neighbours {nbrs} of {v} already meet (result not SNC)")
        del w[v]
        edges = {e for e in edges if v not in e}
        for n in nbrs:
            w[n] += 1
        if len(nbrs) == 2:
            edges.add(frozenset(nbrs))
    else:
        raise InputError(f"unknown move {step!r}")
    return WeightedGraph(w, frozenset(edges))


@dataclass(frozen=True)
class Zigzag:
    """A path-shaped weighted graph together with its reading order."""

    graph: WeightedGraph
    order: tuple

    @classmethod
    def from_weights(cls, weights) -> Zigzag:
        weights = [int(w) for w in weights]
        if not weights:
            raise InputError("a zigzag needs at least one vertex")
        n = len(weights)
        g = WeightedGraph(dict(enumerate(weights)), frozenset(frozenset((i, i + 1)) for i in range(n - 1)))
        return cls(g, tuple(range(n)))

    @classmethod
    def from_graph(cls, g: WeightedGraph) -> Zigzag:
        """Read a path graph starting from its end with the lowest id."""
        if not g.is_path():
            raise InputError("graph is not a path")
        ends = [v for v in g.vertices if g.degree(v) <= 1]
        order, prev, cur = [], None, min(ends)
        while cur is not None:
            order.append(cur)
            nxt = [n for n in g.neighbors(cur) if n != prev]
            prev, cur = cur, (nxt[0] if nxt else None)
        return cls(g, tuple(order))

    @classmethod
    def parse(cls, text: str) -> Zigzag:
        m = re.fullmatch(r"\s*\[\[\s*(.*?)\s*\]\]\s*", text.replace("−", "-"))
        if not m or not m.group(1):
            raise InputError(f"zigzag must look like [[0,0,-3]], got {text!r}")
        try:
            return cls.from_weights(int(w) for w in m.group(1).split(","))
        except ValueError as exc:
            raise InputError(f"bad zigzag weight in {text!r}") from exc

    @property
    def weights(self) -> tuple:
        return tuple(self.graph.weights[v] for v in self.order)

    def __len__(self):
        return len(self.order)

    def __str__(self):
        return "[[" + ",".join(str(w) for w in self.weights) + "]]"

    def reversed(self) -> Zigzag:
        return Zigzag(self.graph, self.order[::-1])

    def vertex(self, position: int) -> int:
        if not 0 <= position < len(self.order):
            raise MoveError(f"position {position} outside zigzag of length {len(self.order)}")
        return self.order[position]

    def position(self, vertex: int) -> int:
        return self.order.index(vertex)

    # -- moves --------------------------------------------------------------
    def expand(self, step) -> list:
        """Elementary moves (vertex ids) realising ``step`` on this zigzag."""
        if isinstance(step, ELEMENTARY):
            return [step]
        if isinstance(step, MakeZero):
            return self._expand_make_zero(step)
        if isinstance(step, MoveZero):
            return self._expand_move_zero(step)
        if isinstance(step, Reversion):
            moves, cur = [], self
            for mz in self.reversion_moves():
                elem = cur.expand(mz)
                moves.extend(elem)
                cur = cur.apply(mz)
            return moves
        raise InputError(f"unknown move {step!r}")

    def _expand_make_zero(self, step):
        n = len(self.order)
        if n < 2 or step.position not in (0, n - 1):
            raise MoveError("make-zero needs a path end with a neighbour")
        end = self.vertex(step.position)
        nbr = self.vertex(1 if step.position == 0 else n - 2)
        if self.graph.weights[end] != 0:
            raise MoveError(f"make-zero: end vertex has weight {self.graph.weights[end]}, not 0")
        if step.inverse:
            return [InnerBlowUp(end, nbr), BlowDown(end)]
        return [OuterBlowUp(end), BlowDown(end)]

    def _expand_move_zero(self, step):
        i = step.position
        if not 0 < i < len(self.order) - 1:
            raise MoveError("move-zero needs a vertex with two neighbours")
        v = self.vertex(i)
        if self.graph.weights[v] != 0:
            raise MoveError(f"move-zero: vertex at position {i} has weight {self.graph.weights[v]}, not 0")
        left, right = self.vertex(i - 1), self.vertex(i + 1)
        # 'left' raises the left neighbour: blow up the edge towards the right one
        other = right if step.direction == "left" else left
        return [InnerBlowUp(v, other) if other == right else InnerBlowUp(other, v), BlowDown(v)]

    def apply(self, step):
        if isinstance(step, COMPOSITE):
            cur = self
            for elem in self.expand(step):
                cur = cur.apply(elem)
                if not isinstance(cur, Zigzag):
                    raise MoveError(f"{step} left the class of zigzags")
            return cur
        g = apply(self.graph, step)
        order = list(self.order)
        if isinstance(step, OuterBlowUp):
            v = step.vertex
            new = g.fresh_id() - 1
            if len(order) == 1 or order[-1] == v:
                order.append(new)
            elif order[0] == v:
                order.insert(0, new)
            else:
                return g
        elif isinstance(step, InnerBlowUp):
            new = g.fresh_id() - 1
            iu, iv = order.index(step.u), order.index(step.v)
            order.insert(max(iu, iv), new)
        elif isinstance(step, BlowDown):
            order.remove(step.vertex)
            if not order:
                return g
        return Zigzag(g, tuple(order))

    def reversion_moves(self) -> list:
        """Move-zero steps carrying the 0,0 pair to the opposite end."""
        w = list(self.weights)
        n = len(w)
        if n < 2:
            raise InputError("reversion needs a standard zigzag")
        if w[0] == 0 and w[1] == 0 and all(x <= -2 for x in w[2:]) or w in ([0, 0], [0, 0, 0]):
            moves = []
            for j in range(n - 2):
                moves += [MoveZero(j + 1, "right")] * abs(w[j + 2])
            return moves
        if w[-1] == 0 and w[-2] == 0 and all(x <= -2 for x in w[:-2]):
            moves = []
            for j in range(n - 1, 1, -1):
                moves += [MoveZero(j - 1, "left")] * abs(w[j - 2])
            return moves
        raise InputError(f"{self} is not standard (nor a reversed standard zigzag)")


# -- named composites ---------------------------------------------------------

def transcript(z, steps) -> list:
    """Apply ``steps``; return (final graph, [{step, before, after}]) over elementary moves."""
    records = []
    cur = z
    for step in steps:
        elems = cur.expand(step) if isinstance(cur, Zigzag) else [step]
        for elem in elems:
            nxt = apply(cur, elem)
            records.append({"step": str(elem), "before": _show(cur), "after": _show(nxt)})
            cur = nxt
    return cur, records


def _show(g):
    if isinstance(g, Zigzag):
        return str(g)
    if g.is_path():
        return str(Zigzag.from_graph(g))
    return g.to_json()


def make_standard_from_semistandard(z: Zigzag):
    """[[0, w1, w2..]] -> [[0, 0, w2..]] with the realising make-zero steps."""
    w = z.weights
    if not _is_semistandard(w):
        raise InputError(f"{z} is not semistandard")
    w1 = w[1]
    steps = [MakeZero(0, inverse=w1 > 0)] * abs(w1)
    cur = z
    for s in steps:
        cur = cur.apply(s)
    return cur, steps


def reversion(z: Zigzag):
    """Carry the zero pair of a standard zigzag to the other end."""
    steps = z.reversion_moves()
    cur = z
    for s in steps:
        cur = cur.apply(s)
    return cur, steps


def contract_to_minimal(g):
    """Blow down (-1)-vertices of degree <= 2, lowest id first, until none is left.

    Vertices whose blow-down would make two neighbours meet twice are kept.
    """
    steps = []
    cur = g
    while True:
        graph = cur.graph if isinstance(cur, Zigzag) else cur
        cand = [
            v
            for v in graph.vertices
            if graph.weights[v] == -1
            and graph.degree(v) <= 2
            and not (graph.degree(v) == 2 and graph.has_edge(*graph.neighbors(v)))
        ]
        if not cand:
            return cur, steps
        step = BlowDown(cand[0])
        cur = apply(cur, step)
        steps.append(step)


def is_minimal(g) -> bool:
    graph = g.graph if isinstance(g, Zigzag) else g
    return not any(graph.weights[v] == -1 and graph.degree(v) <= 2 for v in graph.vertices)


def _is_semistandard(w) -> bool:
    if len(w) < 2 or w[0] != 0:
        return False
    if len(w) == 3 and w[2] == 0:
        return True
    return all(x <= -2 for x in w[2:])


def _is_standard(w) -> bool:
    return list(w) in ([0, 0], [0, 0, 0]) or (
        len(w) >= 3 and w[0] == 0 and w[1] == 0 and all(x <= -2 for x in w[2:])
    )


@dataclass(frozen=True)
class ZigzagClass:
    kind: str  # Standard | Semistandard | DanielewskiBoundary | Other
    parameter: int | None = None

    def __str__(self):
        return self.kind if self.parameter is None else f"{self.kind}({self.parameter})"


def classify_zigzag(z) -> ZigzagClass:
    w = list(z.weights if isinstance(z, Zigzag) else z)
    for cand in (w, w[::-1]):
        if len(cand) == 3 and cand[:2] == [0, 0] and cand[2] <= -2:
            return ZigzagClass("DanielewskiBoundary", -cand[2])
    if _is_standard(w):
        return ZigzagClass("Standard")
    if _is_semistandard(w):
        return ZigzagClass("Semistandard", w[1])
    return ZigzagClass("Other")


def normalize_via_zero_moves(z: Zigzag, max_steps: int = 10_000):
    """Use move-zero steps to bring an interior zero to a standard [[0,0,...]] form.

    Returns (zigzag, steps).  Only zigzags with an interior zero whose left
    part can be absorbed are handled; anything else raises InputError.
    """
    steps = []
    cur = z
    if _is_standard(cur.weights):
        return cur, steps
    w = cur.weights
    zeros = [i for i in range(1, len(w) - 1) if w[i] == 0]
    if not zeros:
        raise InputError(f"{z} has no interior zero vertex")
    i = zeros[0]

    def push(step):
        nonlocal cur
        if len(steps) >= max_steps:
            raise InputError("zero-move normalisation did not terminate")
        cur = cur.apply(step)
        steps.append(step)

    # drive the left neighbour of the zero to 0
    while cur.weights[i - 1] != 0:
        push(MoveZero(i, "left" if cur.weights[i - 1] < 0 else "right"))
    # carry the 0,0 pair (positions i-1, i) to the left end
    while i - 1 > 0:
        j = i - 1  # zero adjacent to the weight being passed
        while cur.weights[j - 1] != 0:
            push(MoveZero(j, "left" if cur.weights[j - 1] < 0 else "right"))
        i -= 1
    return cur, steps


STEP_RE = re.compile(
    r"^(outer|blowdown)@(-?\d+)$|^inner@(\d+)-(\d+)$|^makezero(-inv)?@(\d+)$"
    r"|^movezero@(\d+):(left|right)$|^revert$"
)


def parse_step(text: str, zigzag: Zigzag | None = None):
    """Parse one step token; with a zigzag, vertex numbers are path positions."""
    t = text.strip().lower()
    m = STEP_RE.match(t)
    if not m:
        raise InputError(f"unrecognised step {text!r}")
    ident = (lambda k: zigzag.vertex(k)) if zigzag is not None else (lambda k: k)
    if m.group(1):
        v = ident(int(m.group(2)))
        return OuterBlowUp(v) if m.group(1) == "outer" else BlowDown(v)
    if m.group(3):
        return InnerBlowUp(ident(int(m.group(3))), ident(int(m.group(4))))
    if m.group(6):
        return MakeZero(int(m.group(6)), inverse=bool(m.group(5)))
    if m.group(7):
        return MoveZero(int(m.group(7)), m.group(8))
    return Reversion()


__all__ = [
    "BlowDown",
    "InnerBlowUp",
    "MakeZero",
    "MoveZero",
    "OuterBlowUp",
    "Reversion",
    "WeightedGraph",
    "Zigzag",
    "ZigzagClass",
    "apply",
    "classify_zigzag",
    "contract_to_minimal",
    "is_minimal",
    "make_standard_from_semistandard",
    "normalize_via_zero_moves",
    "parse_step",
    "reversion",
    "transcript",
]
