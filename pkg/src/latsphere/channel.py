"""Operator-channel accounting and a random linear forwarding simulator.

The sender injects a generating set of a submodule U into a DAG; every node
forwards random ring combinations of what it has received, one combination
per out-edge per round by default.  The receiver's collected vectors span a
submodule V, and the discrepancy between U and V splits into an erasure part
(height lost from U) and an error part (height gained in V):

    era = h(U) - h(U ^ V),   err = h(V) - h(U ^ V),   dist = era + err.

Error injection is deterministic: a caller-supplied vector is added to every
combination sent over its edge, so runs are reproducible given the seed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Mapping, Optional, Sequence, Union

from .oracle import (
    ConcreteLattice,
    ConcreteModule,
    Submodule,
    submodule_height,
    type_of_submodule,
)
from .partitions import Partition

Vertex = Union[int, str]
Edge = tuple[Vertex, Vertex]


@dataclass(frozen=True)
class NetworkTopology:
    """A single-source, single-sink DAG with an optional per-edge schedule.

    ``schedule`` maps an edge index to the rounds in which that edge carries a
    transmission; edges without an entry transmit every round.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    source: Vertex
    sink: Vertex
    schedule: Optional[Mapping[int, frozenset[int]]] = None

    def __post_init__(self) -> None:
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertices")
        for a, b in self.edges:
            if a not in vset or b not in vset:
                raise ValueError(f"edge ({a}, {b}) uses an unknown vertex")
        if self.source not in vset or self.sink not in vset:
            raise ValueError("source and sink must be vertices")
        if any(b == self.source for _, b in self.edges):
            raise ValueError("the source must have no incoming edges")
        object.__setattr__(self, "_topo_index", self._toposort())
        reached = {self.source}
        frontier = [self.source]
        while frontier:
            a = frontier.pop()
            for x, y in self.edges:
                if x == a and y not in reached:
                    reached.add(y)
                    frontier.append(y)
        if self.sink not in reached:
            raise ValueError("the sink is not reachable from the source")

    def _toposort(self) -> dict[Vertex, int]:
        graph: dict[Vertex, set[Vertex]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            graph[b].add(a)
        try:
            order = list(TopologicalSorter(graph).static_order())
        except CycleError as exc:
            raise ValueError(f"topology contains a cycle: {exc.args[1]}") from None
        return {v: i for i, v in enumerate(order)}

    def edge_order(self) -> list[int]:
        """Edge indices sorted so a vertex's inputs precede its outputs."""
        idx = self._topo_index
        return sorted(range(len(self.edges)), key=lambda e: (idx[self.edges[e][0]], e))

    def active(self, edge_index: int, round_no: int) -> bool:
        if self.schedule is None or edge_index not in self.schedule:
            return True
        return round_no in self.schedule[edge_index]

    @classmethod
    def from_json(cls, text: str) -> "NetworkTopology":
        data = json.loads(text)
        schedule = None
        if data.get("schedule"):
            schedule = {
                int(k): frozenset(int(r) for r in v)
                for k, v in data["schedule"].items()
            }
        return cls(
            vertices=tuple(data["vertices"]),
            edges=tuple((a, b) for a, b in data["edges"]),
            source=data["source"],
            sink=data["sink"],
            schedule=schedule,
        )

    def to_json_dict(self) -> dict:
        out = {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "source": self.source,
            "sink": self.sink,
        }
        if self.schedule is not None:
            out["schedule"] = {str(k): sorted(v) for k, v in self.schedule.items()}
        return out


def butterfly_topology() -> NetworkTopology:
    """The classic two-path DAG with a shared middle link."""
    return NetworkTopology(
        vertices=("s", "a", "b", "m", "t"),
        edges=(("s", "a"), ("s", "b"), ("a", "m"), ("b", "m"), ("m", "t"), ("a", "t"), ("b", "t")),
        source="s",
        sink="t",
    )


@dataclass(frozen=True)
class ChannelOutcome:
    """Record of one transmission: what was sent, what was spanned at the
    sink, and the erasure/error split of their distance."""

    sent: Submodule
    received: Submodule
    era: int
    err: int
    dist: int
    injected_error_rank_profile: Partition

    def to_json_dict(self, module: ConcreteModule) -> dict:
        return {
            "module": module.spec(),
            "sent": sorted(map(list, self.sent)),
            "received": sorted(map(list, self.received)),
            "era": self.era,
            "err": self.err,
            "dist": self.dist,
            "injected_error_rank_profile": str(self.injected_error_rank_profile),
        }


def era_err(
    backing: Union[ConcreteModule, ConcreteLattice],
    u,
    v,
) -> tuple[int, int, int]:
    """Erasure, error and distance between a sent and a received submodule.

    With a :class:`ConcreteLattice`, ``u`` and ``v`` are element indices;
    with a :class:`ConcreteModule` they are submodule element sets.
    """
    if isinstance(backing, ConcreteLattice):
        hu = backing.heights[u]
        hv = backing.heights[v]
        hm = backing.heights[backing.meet(u, v)]
    else:
        us, vs = frozenset(u), frozenset(v)
        hu = submodule_height(backing, us)
        hv = submodule_height(backing, vs)
        hm = submodule_height(backing, us & vs)
    return hu - hm, hv - hm, hu + hv - 2 * hm


def simulate(
    topology: NetworkTopology,
    module: ConcreteModule,
    generators: Sequence[Sequence[int]],
    error_injection: Iterable[tuple[int, Sequence[int]]] = (),
    seed: int = 0,
    rounds: int = 1,
    combos_per_edge: int = 1,
) -> ChannelOutcome:
    """Run random linear forwarding and account for the result.

    The source starts with ``generators``; each round, every active edge
    carries ``combos_per_edge`` uniform ring combinations of its tail's
    accumulated vectors.  Injections add their vector to every combination on
    their edge.  Deterministic for a fixed seed.
    """
    if rounds < 0:
        raise ValueError(f"rounds must be nonnegative, got {rounds}")
    if combos_per_edge < 1:
        raise ValueError(f"combos_per_edge must be positive, got {combos_per_edge}")
    rng = random.Random(seed)
    gens = [module.reduce(g) for g in generators]
    injections: dict[int, list[tuple[int, ...]]] = {}
    for edge_index, vec in error_injection:
        if not 0 <= edge_index < len(topology.edges):
            raise ValueError(f"injection on unknown edge {edge_index}")
        injections.setdefault(edge_index, []).append(module.reduce(vec))

    inbox: dict[Vertex, list[tuple[int, ...]]] = {v: [] for v in topology.vertices}
    inbox[topology.source] = list(gens)
    ring_size = module.p ** module.shape.part(1)
    order = topology.edge_order()
    for round_no in range(rounds):
        for e in order:
            if not topology.active(e, round_no):
                continue
            tail, head = topology.edges[e]
            for _ in range(combos_per_edge):
                have = inbox[tail]
                combo = module.zero
                for m in have:
                    combo = module.add(combo, module.scalar(rng.randrange(ring_size), m))
                for noise in injections.get(e, ()):
                    combo = module.add(combo, noise)
                if have or e in injections:
                    inbox[head].append(combo)

    sent = module.span(gens)
    received = module.span(inbox[topology.sink])
    era, err, dist = era_err(module, sent, received)
    error_span = module.span(v for vecs in injections.values() for v in vecs)
    return ChannelOutcome(
        sent=sent,
        received=received,
        era=era,
        err=err,
        dist=dist,
        injected_error_rank_profile=type_of_submodule(module, error_span),
    )


@dataclass(frozen=True)
class DecodeResult:
    """Indices of the nearest codewords; more than one entry means a tie."""

    indices: tuple[int, ...]
    distance: int

    @property
    def unique(self) -> bool:
        return len(self.indices) == 1


def md_decode(
    module: ConcreteModule,
    code: Sequence[Iterable[tuple[int, ...]]],
    received: Iterable[tuple[int, ...]],
) -> DecodeResult:
    """Minimum-distance decoding of ``received`` against an explicit code.

    Returns every codeword index at the minimum distance; ties are reported,
    never broken silently.
    """
    if not code:
        raise ValueError("the code must be non-empty")
    v = frozenset(received)
    hv = submodule_height(module, v)
    best: list[int] = []
    best_d: Optional[int] = None
    for i, word in enumerate(code):
        w = frozenset(word)
        d = (
            submodule_height(module, w)
            + hv
            - 2 * submodule_height(module, w & v)
        )
        if best_d is None or d < best_d:
            best, best_d = [i], d
        elif d == best_d:
            best.append(i)
    return DecodeResult(indices=tuple(best), distance=best_d)
