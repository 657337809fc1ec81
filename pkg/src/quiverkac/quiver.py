"""Quivers, graphs with involution, equipped graphs and the Tits form."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

from .errors import SchemaError

DimVector = dict  # vertex id -> non-negative int, in declared vertex order
AlphaLike = Union[Mapping[str, int], Sequence[int]]


class Arrow(NamedTuple):
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Quiver:
    """A finite quiver; loops and parallel arrows are allowed.

    Declared orderings of ``vertices`` and ``arrows`` are significant: every
    deterministic choice in the package follows them.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(
            self, "arrows", tuple(Arrow(str(a[0]), str(a[1]), str(a[2])) for a in self.arrows)
        )
        if len(set(self.vertices)) != len(self.vertices):
            raise SchemaError(f"duplicate vertex id in {list(self.vertices)}")
        seen = set()
        vs = set(self.vertices)
        for a in self.arrows:
            if a.id in seen:
                raise SchemaError(f"duplicate arrow id {a.id!r}")
            seen.add(a.id)
            for end in (a.tail, a.head):
                if end not in vs:
                    raise SchemaError(f"arrow {a.id!r} uses undeclared vertex {end!r}")

    @classmethod
    def from_edges(cls, vertices: Iterable, arrows: Iterable[tuple]) -> "Quiver":
        """Build from ``(id, tail, head)`` triples."""
        return cls(tuple(vertices), tuple(Arrow(*a) for a in arrows))

    @property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.arrows)

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise SchemaError(f"unknown arrow id {arrow_id!r}")

    def loops_at(self, v: str) -> int:
        return sum(1 for a in self.arrows if a.tail == v and a.head == v)

    def dimvector(self, alpha: AlphaLike) -> DimVector:
        """Validate ``alpha`` and return it as a dict in vertex order.

        Accepts a mapping keyed by vertex id or a sequence in declared order.
        """
        if isinstance(alpha, Mapping):
            keys = set(map(str, alpha))
            if keys != set(self.vertices):
                raise SchemaError(
                    f"dimension vector keys {sorted(keys)} do not match vertices {list(self.vertices)}"
                )
            out = {v: int(alpha[v]) for v in self.vertices}
        else:
            alpha = list(alpha)
            if len(alpha) != len(self.vertices):
                raise SchemaError(
                    f"dimension vector has {len(alpha)} entries, quiver has {len(self.vertices)} vertices"
                )
            out = {v: int(x) for v, x in zip(self.vertices, alpha)}
        for v, x in out.items():
            if x < 0:
                raise SchemaError(f"negative dimension {x} at vertex {v!r}")
        return out

    def reversed_arrows(self, ids: Iterable[str]) -> "Quiver":
        flip = set(ids)
        for i in flip:
            self.arrow(i)
        return Quiver(
            self.vertices,
            tuple(Arrow(a.id, a.head, a.tail) if a.id in flip else a for a in self.arrows),
        )

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "tail": a.tail, "head": a.head} for a in self.arrows],
        }

    def key(self) -> str:
        """Canonical serialisation used for memo and cache keys."""
        return json.dumps([list(self.vertices), [list(a) for a in self.arrows]], separators=(",", ":"))


def orientations(Q: Quiver) -> Iterator[Quiver]:
    """Every reorientation of ``Q`` (loops are left alone), arrow ids kept."""
    flippable = [a.id for a in Q.arrows if a.tail != a.head]
    for mask in itertools.product((False, True), repeat=len(flippable)):
        yield Q.reversed_arrows(i for i, m in zip(flippable, mask) if m)


def _check_alpha(Q: Quiver, alpha: AlphaLike) -> DimVector:
    return Q.dimvector(alpha)


def quadratic_form(Q: Quiver, alpha: AlphaLike) -> int:
    """Tits form ``sum a_i^2 - sum_arrows a_tail * a_head``."""
    a = _check_alpha(Q, alpha)
    return sum(x * x for x in a.values()) - sum(a[ar.tail] * a[ar.head] for ar in Q.arrows)


def bilinear_form(Q: Quiver, alpha: AlphaLike, beta: AlphaLike) -> int:
    """Symmetric form with ``(x, x) = 2 q(x)``; orientation independent."""
    a = _check_alpha(Q, alpha)
    b = _check_alpha(Q, beta)
    total = 2 * sum(a[v] * b[v] for v in Q.vertices)
    for ar in Q.arrows:
        total -= a[ar.tail] * b[ar.head] + a[ar.head] * b[ar.tail]
    return total


def support_connected(Q: "Quiver | GraphWithInvolution | EquippedGraph", alpha: AlphaLike) -> bool:
    """True iff the full subgraph on ``{i : alpha_i > 0}`` is nonempty and connected."""
    Q = underlying_quiver(Q)
    a = _check_alpha(Q, alpha)
    support = [v for v in Q.vertices if a[v] > 0]
    if not support:
        return False
    sset = set(support)
    adj: dict[str, set] = {v: set() for v in support}
    for ar in Q.arrows:
        if ar.tail in sset and ar.head in sset:
            adj[ar.tail].add(ar.head)
            adj[ar.head].add(ar.tail)
    seen = {support[0]}
    stack = [support[0]]
    while stack:
        v = stack.pop()
        for w in adj[v] - seen:
            seen.add(w)
            stack.append(w)
    return seen == sset


# -- graphs with involution and equipped graphs -------------------------------


@dataclass(frozen=True)
class GraphWithInvolution:
    """A quiver ``G`` with a fixed-point free involution on its arrows
    exchanging heads and tails."""

    quiver: Quiver
    involution: Mapping[str, str]

    def __post_init__(self):
        Q = self.quiver
        inv = dict(self.involution)
        object.__setattr__(self, "involution", inv)
        ids = set(Q.arrow_ids)
        if set(inv) != ids:
            raise SchemaError("involution must be defined on exactly the arrows of the graph")
        for a in Q.arrows:
            b = inv[a.id]
            if b not in ids:
                raise SchemaError(f"involution sends {a.id!r} to unknown arrow {b!r}")
            if b == a.id:
                raise SchemaError(f"involution fixes arrow {a.id!r}")
            if inv[b] != a.id:
                raise SchemaError(f"involution is not an involution at {a.id!r}")
            if Q.arrow(b).tail != a.head:
                raise SchemaError(f"h({a.id}) != t({b}) for the involution pair")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    def star(self, a: str) -> str:
        return self.involution[a]

    def orbits(self) -> list[tuple[str, str]]:
        """``(representative, partner)`` per orbit; the representative is
        the member that comes first in declared arrow order."""
        out = []
        seen = set()
        for a in self.quiver.arrow_ids:
            if a in seen:
                continue
            b = self.involution[a]
            seen.update((a, b))
            out.append((a, b))
        return out


@dataclass(frozen=True)
class EquippedGraph:
    """A graph with involution together with ``phi : G_1 -> {0, 1}``."""

    graph: GraphWithInvolution
    phi: Mapping[str, int]

    def __post_init__(self):
        phi = {str(k): int(v) for k, v in dict(self.phi).items()}
        object.__setattr__(self, "phi", phi)
        ids = set(self.graph.quiver.arrow_ids)
        if set(phi) != ids:
            raise SchemaError("phi must be defined on every arrow of the graph")
        for a, v in phi.items():
            if v not in (0, 1):
                raise SchemaError(f"phi({a}) = {v} is not 0 or 1")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    @property
    def quiver(self) -> Quiver:
        return self.graph.quiver

    def edges(self) -> list[tuple[Arrow, Arrow]]:
        Q = self.graph.quiver
        return [(Q.arrow(a), Q.arrow(b)) for a, b in self.graph.orbits()]

    def edge_type(self, a: str) -> tuple[int, int]:
        return self.phi[a], self.phi[self.graph.star(a)]

    def with_phi(self, phi: Mapping[str, int]) -> "EquippedGraph":
        return EquippedGraph(self.graph, phi)

    def equippings(self) -> Iterator["EquippedGraph"]:
        ids = self.graph.quiver.arrow_ids
        for bits in itertools.product((0, 1), repeat=len(ids)):
            yield self.with_phi(dict(zip(ids, bits)))

    def depict(self) -> str:
        """Plain-text picture: ``-->`` arrow, ``<->`` two heads, ``---`` two tails."""
        lines = []
        for a, b in self.edges():
            r, s = self.phi[a.id], self.phi[b.id]
            if (r, s) == (1, 0):
                lines.append(f"{a.id}: {a.tail} --> {a.head}")
            elif (r, s) == (0, 1):
                lines.append(f"{b.id}: {b.tail} --> {b.head}")
            elif (r, s) == (0, 0):
                lines.append(f"{a.id}: {a.tail} <-> {a.head}")
            else:
                lines.append(f"{a.id}: {a.tail} --- {a.head}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"id": a.id, "ends": [a.tail, a.head], "phi": [self.phi[a.id], self.phi[b.id]]}
                for a, b in self.edges()
            ],
        }


def star_name(a: str) -> str:
    return f"{a}*"


def doubled_graph(Q: Quiver) -> GraphWithInvolution:
    """Arrows ``a`` and reversed ``a*`` for each arrow of ``Q``, swapped by ``*``."""
    arrows = []
    inv = {}
    for a in Q.arrows:
        s = star_name(a.id)
        arrows += [a, Arrow(s, a.head, a.tail)]
        inv[a.id], inv[s] = s, a.id
    return GraphWithInvolution(Quiver(Q.vertices, tuple(arrows)), inv)


def orient(
    G: "GraphWithInvolution | EquippedGraph", choice: Iterable[str]
) -> tuple[Quiver, EquippedGraph]:
    """Quiver on one chosen arrow per orbit, plus the equipping
    ``phi'(a) = 1 iff a`` was chosen, under which equipped representations
    are plain quiver representations."""
    graph = G.graph if isinstance(G, EquippedGraph) else G
    chosen = list(choice)
    cset = set(chosen)
    if len(cset) != len(chosen):
        raise SchemaError("orientation choice repeats an arrow")
    for a in chosen:
        graph.quiver.arrow(a)
    for a, b in graph.orbits():
        n = (a in cset) + (b in cset)
        if n != 1:
            raise SchemaError(f"orientation choice must pick exactly one of {a!r}, {b!r}; got {n}")
    arrows = tuple(a for a in graph.quiver.arrows if a.id in cset)
    phi = {a: int(a in cset) for a in graph.quiver.arrow_ids}
    return Quiver(graph.vertices, arrows), EquippedGraph(graph, phi)


def canonical_orientation(G: "GraphWithInvolution | EquippedGraph") -> Quiver:
    graph = G.graph if isinstance(G, EquippedGraph) else G
    return orient(graph, [a for a, _ in graph.orbits()])[0]


def underlying_quiver(obj) -> Quiver:
    """A quiver with the same underlying graph as ``obj``."""
    if isinstance(obj, Quiver):
        return obj
    if isinstance(obj, (GraphWithInvolution, EquippedGraph)):
        return canonical_orientation(obj)
    raise TypeError(f"expected a quiver or graph, got {type(obj).__name__}")


def equipped_graph_from_edges(vertices: Iterable, edges: Iterable[tuple]) -> EquippedGraph:
    """Build from ``(id, u, w, phi_uw, phi_wu)`` tuples: arrow ``id: u -> w``
    with ``phi = phi_uw`` and ``id*: w -> u`` with ``phi = phi_wu``."""
    arrows = []
    inv = {}
    phi = {}
    for eid, u, w, r, s in edges:
        eid = str(eid)
        st = star_name(eid)
        arrows += [Arrow(eid, str(u), str(w)), Arrow(st, str(w), str(u))]
        inv[eid], inv[st] = st, eid
        phi[eid], phi[st] = r, s
    graph = GraphWithInvolution(Quiver(tuple(vertices), tuple(arrows)), inv)
    return EquippedGraph(graph, phi)


# -- JSON I/O ------------------------------------------------------------------


def quiver_from_json(doc: Mapping) -> Quiver:
    try:
        vertices = [str(v) for v in doc["vertices"]]
        arrows = [(str(a["id"]), str(a["tail"]), str(a["head"])) for a in doc.get("arrows", [])]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed quiver JSON: missing {exc}") from None
    return Quiver.from_edges(vertices, arrows)


def equipped_from_json(doc: Mapping) -> EquippedGraph:
    try:
        vertices = [str(v) for v in doc["vertices"]]
        edges = []
        for e in doc.get("edges", []):
            eid = str(e["id"])
            ends = e["ends"]
            phi = e["phi"]
            if len(ends) != 2 or len(phi) != 2:
                raise SchemaError(f"edge {eid!r} needs two ends and two phi bits")
            edges.append((eid, ends[0], ends[1], phi[0], phi[1]))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed equipped graph JSON: missing {exc}") from None
    return equipped_graph_from_edges(vertices, edges)


def load_json(doc: Mapping) -> "Quiver | EquippedGraph":
    """Dispatch on shape: ``arrows`` means a quiver, ``edges`` an equipped graph."""
    if not isinstance(doc, Mapping) or "vertices" not in doc:
        raise SchemaError("input must be a JSON object with a 'vertices' list")
    if "edges" in doc:
        return equipped_from_json(doc)
    return quiver_from_json(doc)


# -- a few standard quivers, handy in tests and examples -------------------------


def a_n(n: int) -> Quiver:
    """Linearly oriented path ``1 -> 2 -> ... -> n``."""
    vs = [str(i) for i in range(1, n + 1)]
    return Quiver.from_edges(vs, [(f"a{i}", vs[i - 1], vs[i]) for i in range(1, n)])


def kronecker() -> Quiver:
    return Quiver.from_edges(["1", "2"], [("a1", "1", "2"), ("a2", "1", "2")])


def jordan() -> Quiver:
    return Quiver.from_edges(["1"], [("a", "1", "1")])
