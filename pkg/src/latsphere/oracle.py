"""Explicit small submodule lattices used as ground truth.

A module here is a finite abelian p-group presented coordinatewise,
Z_{p^e1} x ... x Z_{p^eN}; with all exponents equal to 1 this is the vector
space F_p^N.  Submodules are realised as frozensets of element tuples, the
lattice as the full list of submodules with meets (intersection), joins
(sums), heights and types computed outright.

Everything is deliberately brute force: this module exists to be obviously
correct so the counting formulas elsewhere can be tested against it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .partitions import Partition
from .qcalc import is_prime

DEFAULT_MODULE_CAP = 4096
DEFAULT_LATTICE_CAP = 200_000
CAP_ENV_VAR = "LATSPHERE_CAP"

Element = tuple[int, ...]
Submodule = frozenset[Element]


@dataclass(frozen=True)
class ConcreteModule:
    """A finite module Z_{p^e1} x ... x Z_{p^eN}, or F_p^N when all e_i = 1.

    ``shape`` lists the coordinate exponents in non-increasing order.  Only
    prime p is supported: for non-prime prime powers q a field construction
    would be required, which none of the verified instances need.
    """

    p: int
    shape: Partition
    is_field: bool = False

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"modulus base must be prime, got {self.p}")
        if len(self.shape) == 0:
            raise ValueError("module needs at least one coordinate")
        if self.is_field and any(e != 1 for e in self.shape):
            raise ValueError("a vector space must have shape (1, ..., 1)")

    @classmethod
    def vector_space(cls, q: int, n: int) -> "ConcreteModule":
        if not is_prime(q):
            raise ValueError(
                f"explicit vector-space construction needs a prime field size, got {q}"
            )
        return cls(q, Partition([1] * n), is_field=True)

    @classmethod
    def prime_power_module(cls, p: int, s: int, n: int) -> "ConcreteModule":
        return cls(p, Partition([s] * n))

    @property
    def rank(self) -> int:
        return len(self.shape)

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.p**e for e in self.shape)

    @cached_property
    def size(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    @property
    def top_height(self) -> int:
        return self.shape.weight

    def elements(self) -> Iterator[Element]:
        return product(*(range(o) for o in self.orders))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % o for a, b, o in zip(x, y, self.orders))

    def scalar(self, a: int, x: Element) -> Element:
        return tuple((a * c) % o for c, o in zip(x, self.orders))

    def reduce(self, x: Sequence[int]) -> Element:
        if len(x) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(x)}")
        return tuple(int(c) % o for c, o in zip(x, self.orders))

    def span(self, vectors: Iterable[Sequence[int]]) -> Submodule:
        """Submodule generated by the given vectors.

        Grown one generator at a time by accumulating cosets, so each step
        costs |current| * order(generator) additions.
        """
        closure: set[Element] = {self.zero}
        for raw in vectors:
            g = self.reduce(raw)
            if g in closure:
                continue
            grown = set(closure)
            shift = g
            while shift not in closure:
                grown.update(self.add(x, shift) for x in closure)
                shift = self.add(shift, g)
            closure = grown
        return frozenset(closure)

    def cyclic(self, x: Sequence[int]) -> Submodule:
        return self.span([x])

    def encode(self, x: Element) -> int:
        code = 0
        for c, o in zip(x, self.orders):
            code = code * o + c
        return code

    def spec(self) -> str:
        if self.is_field:
            return f"F:q={self.p},N={self.rank}"
        if self.shape.is_rectangular:
            return f"Z:p={self.p},s={self.shape.part(1)},N={self.rank}"
        return f"Z:p={self.p},shape={self.shape}"


def parse_module_spec(text: str) -> ConcreteModule:
    """Parse "F:q=2,N=3", "Z:p=2,s=2,N=2" or "Z:p=2,shape=[2,1]"."""
    head, _, tail = text.strip().partition(":")
    fields: dict[str, str] = {}
    for item in tail.split(","):
        key, _, value = item.partition("=")
        if not value:
            # shape brackets contain commas; re-join onto the previous field
            if fields and "shape" in fields and not fields["shape"].endswith("]"):
                fields["shape"] += "," + item
                continue
            raise ValueError(f"bad module field {item!r} in {text!r}")
        fields[key.strip()] = value.strip()
    try:
        if head == "F":
            return ConcreteModule.vector_space(int(fields["q"]), int(fields["N"]))
        if head == "Z":
            p = int(fields["p"])
            if "shape" in fields:
                return ConcreteModule(p, Partition.parse(fields["shape"]))
            return ConcreteModule.prime_power_module(
                p, int(fields["s"]), int(fields["N"])
            )
    except KeyError as exc:
        raise ValueError(f"module spec {text!r} is missing field {exc}") from None
    raise ValueError(f"module spec must start with 'F:' or 'Z:', got {text!r}")


def _module_cap(explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(CAP_ENV_VAR)
    return int(env) if env else DEFAULT_MODULE_CAP


def _p_log(n: int, p: int) -> int:
    e = 0
    while n > 1:
        if n % p:
            raise ArithmeticError(f"{n} is not a power of {p}")
        n //= p
        e += 1
    return e


def type_of_submodule(module: ConcreteModule, sub: Iterable[Element]) -> Partition:
    """Isomorphism type of a submodule, as a partition of log_p |sub|.

    The j-th conjugate part is log_p of the index of p^j * sub in
    p^(j-1) * sub; for vector spaces this reduces to (1^dim).
    """
    current = frozenset(sub)
    conj = []
    for _ in range(module.shape.part(1)):
        nxt = frozenset(module.scalar(module.p, x) for x in current)
        conj.append(_p_log(len(current) // len(nxt), module.p))
        current = nxt
    return Partition(conj).conjugate()


def submodule_sum(module: ConcreteModule, a: Submodule, b: Submodule) -> Submodule:
    """Join of two submodules: the set of pairwise sums (already closed)."""
    if len(a) == 1:
        return b
    if len(b) == 1:
        return a
    return frozenset(module.add(x, y) for x in a for y in b)


def submodule_height(module: ConcreteModule, sub: Submodule) -> int:
    return _p_log(len(sub), module.p)


class ConcreteLattice:
    """All submodules of a :class:`ConcreteModule`, fully materialised.

    Elements are indexed 0..n-1 in a canonical order (by height, then by the
    sorted encodings of their members), so index 0 is the zero submodule and
    the last index the whole module.  Queries are read-only after
    construction and safe to share.
    """

    def __init__(self, module: ConcreteModule, subs: Iterable[Submodule]):
        self.module = module
        self.subs: list[Submodule] = sorted(
            subs, key=lambda s: (len(s), sorted(module.encode(x) for x in s))
        )
        self._index = {s: i for i, s in enumerate(self.subs)}
        self.heights = [submodule_height(module, s) for s in self.subs]
        self.types = [type_of_submodule(module, s) for s in self.subs]
        self._by_height: dict[int, list[int]] = {}
        self._by_type: dict[Partition, list[int]] = {}
        for i, (h, t) in enumerate(zip(self.heights, self.types)):
            self._by_height.setdefault(h, []).append(i)
            self._by_type.setdefault(t, []).append(i)
        self._meet: dict[tuple[int, int], int] = {}
        self._join: dict[tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self.subs)

    @property
    def zero(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.subs) - 1

    @property
    def top_height(self) -> int:
        return self.heights[self.top]

    def index_of(self, sub: Submodule) -> int:
        return self._index[frozenset(sub)]

    def leq(self, i: int, j: int) -> bool:
        return self.subs[i] <= self.subs[j]

    def meet(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        key = (i, j)
        out = self._meet.get(key)
        if out is None:
            out = self._index[self.subs[i] & self.subs[j]]
            self._meet[key] = out
        return out

    def join(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        key = (i, j)
        out = self._join.get(key)
        if out is None:
            out = self._index[submodule_sum(self.module, self.subs[i], self.subs[j])]
            self._join[key] = out
        return out

    def distance(self, i: int, j: int) -> int:
        """Lattice metric h(i v j) - h(i ^ j)."""
        return self.heights[self.join(i, j)] - self.heights[self.meet(i, j)]

    def elements_of_height(self, h: int) -> list[int]:
        return list(self._by_height.get(h, []))

    def elements_of_type(self, mu: Partition) -> list[int]:
        return list(self._by_type.get(mu, []))

    def type_set(self) -> list[Partition]:
        return sorted(self._by_type, key=lambda t: (t.weight, t.parts))

    def sphere(
        self,
        u: int,
        radius: int,
        *,
        height: Optional[int] = None,
        mu: Optional[Partition] = None,
    ) -> list[int]:
        """Indices within distance ``radius`` of ``u``, optionally filtered
        to one height layer or one type layer."""
        out = []
        for v in range(len(self.subs)):
            if height is not None and self.heights[v] != height:
                continue
            if mu is not None and self.types[v] != mu:
                continue
            if self.distance(u, v) <= radius:
                out.append(v)
        return out

    def upper_covers(self, i: int) -> list[int]:
        """Elements covering ``i``; in these graded lattices exactly the
        superelements one height above."""
        return [
            j
            for j in self._by_height.get(self.heights[i] + 1, [])
            if self.leq(i, j)
        ]

    def export(self) -> dict:
        """JSON-ready dump: one record per element with id, height, type and
        the ids of its upper covers (the upward Hasse edges)."""
        return {
            "module": self.module.spec(),
            "size": len(self.subs),
            "elements": [
                {
                    "id": i,
                    "height": self.heights[i],
                    "type": str(self.types[i]),
                    "covers": self.upper_covers(i),
                }
                for i in range(len(self.subs))
            ],
        }


def enumerate_lattice(
    module: ConcreteModule,
    *,
    max_module_size: Optional[int] = None,
    max_lattice_size: int = DEFAULT_LATTICE_CAP,
) -> ConcreteLattice:
    """Build the full submodule lattice of ``module``.

    Starts from the cyclic submodules and closes under joins with them;
    every submodule is a join of cyclic ones, so the closure is complete.
    The module-size cap defaults to 4096 elements and may be overridden by
    the argument or the LATSPHERE_CAP environment variable.
    """
    cap = _module_cap(max_module_size)
    if module.size > cap:
        raise ValueError(
            f"module has {module.size} elements, exceeding the cap {cap}"
        )
    cyclics = {module.cyclic(x) for x in module.elements()}
    known: set[Submodule] = set(cyclics)
    frontier = list(known)
    while frontier:
        fresh = []
        for a in frontier:
            for c in cyclics:
                s = submodule_sum(module, a, c)
                if s not in known:
                    known.add(s)
                    fresh.append(s)
                    if len(known) > max_lattice_size:
                        raise ValueError(
                            f"lattice exceeds the cap of {max_lattice_size} submodules"
                        )
        frontier = fresh
    return ConcreteLattice(module, known)


@dataclass(frozen=True)
class EnumerabilityWitness:
    u: int
    v: int
    mu: Partition
    direction: str  # "down" or "up"


@dataclass(frozen=True)
class EnumerabilityReport:
    down: bool
    up: bool
    witness: Optional[EnumerabilityWitness]


def check_enumerability(lat: ConcreteLattice) -> EnumerabilityReport:
    """Exhaustively test whether same-type elements have equal down-counts
    and equal up-counts for every type layer.

    Returns the first offending pair as a witness when a direction fails
    (down failures are reported in preference to up failures).
    """
    n = len(lat)
    down: list[dict[Partition, int]] = [{} for _ in range(n)]
    up: list[dict[Partition, int]] = [{} for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if lat.leq(j, i):
                tj = lat.types[j]
                ti = lat.types[i]
                down[i][tj] = down[i].get(tj, 0) + 1
                up[j][ti] = up[j].get(ti, 0) + 1

    def first_mismatch(
        counts: list[dict[Partition, int]], direction: str
    ) -> Optional[EnumerabilityWitness]:
        for group in lat._by_type.values():
            base = group[0]
            for other in group[1:]:
                if counts[base] != counts[other]:
                    for mu in sorted(
                        set(counts[base]) | set(counts[other]),
                        key=lambda t: (t.weight, t.parts),
                    ):
                        if counts[base].get(mu, 0) != counts[other].get(mu, 0):
                            return EnumerabilityWitness(base, other, mu, direction)
        return None

    down_witness = first_mismatch(down, "down")
    up_witness = first_mismatch(up, "up")
    return EnumerabilityReport(
        down=down_witness is None,
        up=up_witness is None,
        witness=down_witness or up_witness,
    )


def check_layer_disjointness_theorem(lat: ConcreteLattice, l: int, r: int) -> bool:
    """Check that two radius-``r`` spheres centred at height ``l`` are disjoint
    exactly when their height-``t`` slices are, for every admissible ``t``.

    Admissible t runs over l-r, l-r+2, ..., l+r clipped to the lattice's
    height range.  True iff the equivalence holds for every pair of centres.
    """
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    layer = lat.elements_of_height(l)
    t_values = [t for t in range(l - r, l + r + 1, 2) if 0 <= t <= lat.top_height]
    spheres = {u: frozenset(lat.sphere(u, r)) for u in layer}
    height_sets = {
        t: frozenset(lat.elements_of_height(t)) for t in t_values
    }
    for a in range(len(layer)):
        for b in range(a + 1, len(layer)):
            s1, s2 = spheres[layer[a]], spheres[layer[b]]
            whole_disjoint = not (s1 & s2)
            for t in t_values:
                slice_disjoint = not (s1 & height_sets[t] & s2)
                if whole_disjoint != slice_disjoint:
                    return False
    return True


@dataclass(frozen=True)
class CodeSearchResult:
    size: int
    code: tuple[int, ...]
    exact: bool


def max_code_search(
    lat: ConcreteLattice,
    *,
    height: Optional[int] = None,
    mu: Optional[Partition] = None,
    min_distance: int = 1,
    node_budget: int = 2_000_000,
) -> CodeSearchResult:
    """Largest constant-height (or constant-type) code with the given minimum
    distance, found by exact branch and bound on the compatibility graph.

    Vertices are the elements of the chosen layer; two are compatible when
    their distance is at least ``min_distance``.  A greedy colouring bounds
    each branch.  If the node budget runs out the best code found so far is
    returned with ``exact=False`` (it is still a valid code, hence a lower
    bound).
    """
    if (height is None) == (mu is None):
        raise ValueError("specify exactly one of height or mu")
    if min_distance < 1:
        raise ValueError(f"min distance must be at least 1, got {min_distance}")
    verts = (
        lat.elements_of_height(height) if height is not None else lat.elements_of_type(mu)
    )
    n = len(verts)
    if n == 0:
        return CodeSearchResult(0, (), True)
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if lat.distance(verts[a], verts[b]) >= min_distance:
                adj[a] |= 1 << b
                adj[b] |= 1 << a

    best: list[int] = []
    visited = 0
    truncated = False

    def expand(chosen: list[int], cand: int) -> None:
        nonlocal best, visited, truncated
        if truncated:
            return
        visited += 1
        if visited > node_budget:
            truncated = True
            return
        # greedy colouring of the candidates; colour number bounds the clique
        order: list[int] = []
        bounds: list[int] = []
        uncoloured = cand
        colour = 0
        while uncoloured:
            colour += 1
            avail = uncoloured
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= avail - 1
                avail &= ~adj[v]
                uncoloured &= ~(1 << v)
                order.append(v)
                bounds.append(colour)
        for idx in range(len(order) - 1, -1, -1):
            if len(chosen) + bounds[idx] <= len(best):
                return
            v = order[idx]
            chosen.append(v)
            if len(chosen) > len(best):
                best = chosen.copy()
            rest = cand & adj[v]
            if rest:
                expand(chosen, rest)
            chosen.pop()
            cand &= ~(1 << v)
            if truncated:
                return

    expand([], (1 << n) - 1)
    return CodeSearchResult(
        size=len(best),
        code=tuple(sorted(verts[i] for i in best)),
        exact=not truncated,
    )
