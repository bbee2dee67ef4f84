"""Brute-force cross-checks of the counting engine against explicit lattices.

Builds the full submodule lattice of a small module and replays every
counting claim on it: the metric axioms, the modular height equation,
down/up enumerability, the type-count and chain-count tables, the meet/join
height profiles and the sphere sizes.  Any mismatch is reported with the
offending arguments; the CLI turns a failed report into exit status 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Union

from .enumerable import CountTable, LatticeProfile, count_table
from .oracle import (
    ConcreteLattice,
    ConcreteModule,
    check_enumerability,
    enumerate_lattice,
    parse_module_spec,
)
from .partitions import Partition

_TRIANGLE_SAMPLE = 50_000


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


@dataclass
class VerificationReport:
    module_spec: str
    lattice_size: int
    type_counts: dict[Partition, int]
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def profile_for_module(module: ConcreteModule) -> Optional[LatticeProfile]:
    """The enumerable profile matching a module, if its shape is a rectangle."""
    if not module.shape.is_rectangular:
        return None
    if module.is_field:
        return LatticeProfile.vector_space(module.p, module.rank)
    return LatticeProfile.prime_power_module(
        module.p, module.shape.part(1), module.rank
    )


def module_for_profile(profile: LatticeProfile) -> ConcreteModule:
    """The explicit module realising a profile (prime bases only)."""
    if profile.kind == "vector_space":
        return ConcreteModule.vector_space(profile.base, profile.n)
    return ConcreteModule.prime_power_module(profile.base, profile.s, profile.n)


def verify_module(
    module: Union[str, ConcreteModule],
    *,
    full: bool = True,
    max_module_size: Optional[int] = None,
    rng_seed: int = 0,
) -> VerificationReport:
    """Run the cross-check suite on one module.

    Structural checks always run.  With ``full`` the type/chain/sphere tables
    are replayed as well: the down-count table for every abelian p-group, and
    the complete engine (up-counts, meet/join profiles, spheres) when the
    module matches an enumerable profile.
    """
    if isinstance(module, str):
        module = parse_module_spec(module)
    lat = enumerate_lattice(module, max_module_size=max_module_size)
    checks: list[CheckResult] = []

    checks.append(_check_modularity(lat))
    checks.append(_check_metric(lat, rng_seed))
    enum_report = check_enumerability(lat)
    checks.append(
        CheckResult(
            "down-enumerable",
            enum_report.down,
            "" if enum_report.down else f"witness {enum_report.witness}",
        )
    )
    profile = profile_for_module(module)
    if profile is not None:
        # rectangular shapes must be up-enumerable; mixed shapes may not be
        checks.append(
            CheckResult(
                "up-enumerable",
                enum_report.up,
                "" if enum_report.up else f"witness {enum_report.witness}",
            )
        )
    else:
        checks.append(
            CheckResult(
                "up-enumerable (informative)",
                True,
                f"up={enum_report.up}"
                + ("" if enum_report.up else f", witness {enum_report.witness}"),
            )
        )

    if full:
        down_profile = profile or LatticeProfile.prime_power_module(
            module.p, module.shape.part(1), module.rank
        )
        table = count_table(down_profile)
        checks.append(_check_type_counts(lat, table))
        checks.append(_check_alpha(lat, table))
        if profile is not None:
            checks.append(_check_beta(lat, table))
            checks.append(_check_chains(lat, table))
            checks.append(_check_meet_join_profiles(lat, table))
            checks.append(_check_spheres(lat, table))

    type_counts = {t: len(lat.elements_of_type(t)) for t in lat.type_set()}
    return VerificationReport(
        module_spec=module.spec(),
        lattice_size=len(lat),
        type_counts=type_counts,
        checks=checks,
    )


def _check_modularity(lat: ConcreteLattice) -> CheckResult:
    n = len(lat)
    for i in range(n):
        for j in range(i, n):
            lhs = lat.heights[i] + lat.heights[j]
            rhs = lat.heights[lat.join(i, j)] + lat.heights[lat.meet(i, j)]
            if lhs != rhs:
                return CheckResult(
                    "modular-height-equation", False, f"fails at pair ({i}, {j})"
                )
    return CheckResult("modular-height-equation", True, f"{n * (n + 1) // 2} pairs")


def _check_metric(lat: ConcreteLattice, rng_seed: int) -> CheckResult:
    n = len(lat)
    d = [[lat.distance(i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        if d[i][i] != 0:
            return CheckResult("metric", False, f"d({i},{i}) != 0")
        for j in range(i + 1, n):
            if d[i][j] != d[j][i]:
                return CheckResult("metric", False, f"asymmetric at ({i},{j})")
            if d[i][j] == 0:
                return CheckResult("metric", False, f"distinct at distance 0: ({i},{j})")
    if n**3 <= _TRIANGLE_SAMPLE:
        triples = (
            (i, j, k) for i in range(n) for j in range(n) for k in range(n)
        )
        how = "exhaustive"
    else:
        rng = random.Random(rng_seed)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for _ in range(_TRIANGLE_SAMPLE)
        )
        how = f"{_TRIANGLE_SAMPLE} sampled triples"
    for i, j, k in triples:
        if d[i][k] > d[i][j] + d[j][k]:
            return CheckResult("metric", False, f"triangle fails at ({i},{j},{k})")
    return CheckResult("metric", True, how)


def _check_type_counts(lat: ConcreteLattice, table: CountTable) -> CheckResult:
    top = lat.types[lat.top]
    for mu in lat.type_set():
        want = table.alpha(top, mu)
        got = len(lat.elements_of_type(mu))
        if got != want:
            return CheckResult(
                "type-counts", False, f"type {mu}: lattice has {got}, table says {want}"
            )
    return CheckResult("type-counts", True, f"{len(lat.type_set())} types")


def _check_alpha(lat: ConcreteLattice, table: CountTable) -> CheckResult:
    cases = 0
    for mu in lat.type_set():
        for u in lat.elements_of_type(mu):
            for phi in lat.type_set():
                got = sum(1 for w in lat.elements_of_type(phi) if lat.leq(w, u))
                want = table.alpha(mu, phi)
                cases += 1
                if got != want:
                    return CheckResult(
                        "down-counts",
                        False,
                        f"alpha({mu},{phi}) = {want} but element {u} has {got}",
                    )
    return CheckResult("down-counts", True, f"{cases} cases")


def _check_beta(lat: ConcreteLattice, table: CountTable) -> CheckResult:
    cases = 0
    for mu in lat.type_set():
        for u in lat.elements_of_type(mu):
            for phi in lat.type_set():
                got = sum(1 for w in lat.elements_of_type(phi) if lat.leq(u, w))
                want = table.beta(mu, phi)
                cases += 1
                if got != want:
                    return CheckResult(
                        "up-counts",
                        False,
                        f"beta({mu},{phi}) = {want} but element {u} has {got}",
                    )
    return CheckResult("up-counts", True, f"{cases} cases")


def _check_chains(lat: ConcreteLattice, table: CountTable) -> CheckResult:
    n = len(lat)
    h = lat.top_height
    cases = 0
    for u in range(n):
        mu = lat.types[u]
        below = [x for x in range(n) if lat.leq(x, u)]
        above = [x for x in range(n) if lat.leq(u, x)]
        for r1 in range(h + 1):
            got = sum(1 for x in below if lat.heights[x] == r1)
            if got != table.alpha_chain(mu, (r1,)):
                return CheckResult("chain-counts", False, f"down ({u}, {r1})")
            got = sum(1 for x in above if lat.heights[x] == r1)
            if got != table.beta_chain(mu, (r1,)):
                return CheckResult("chain-counts", False, f"up ({u}, {r1})")
            cases += 2
            for r2 in range(r1, h + 1):
                got = sum(
                    1
                    for x in below
                    if lat.heights[x] == r2
                    for y in below
                    if lat.heights[y] == r1 and lat.leq(y, x)
                )
                if got != table.alpha_chain(mu, (r1, r2)):
                    return CheckResult("chain-counts", False, f"down ({u}, {r1}, {r2})")
                got = sum(
                    1
                    for x in above
                    if lat.heights[x] == r2
                    for y in above
                    if lat.heights[y] == r1 and lat.leq(y, x)
                )
                if got != table.beta_chain(mu, (r2, r1)):
                    return CheckResult("chain-counts", False, f"up ({u}, {r2}, {r1})")
                cases += 2
    return CheckResult("chain-counts", True, f"{cases} cases")


def _check_meet_join_profiles(lat: ConcreteLattice, table: CountTable) -> CheckResult:
    cases = 0
    for u in range(len(lat)):
        tp_u = lat.types[u]
        for mu in lat.type_set():
            for r0 in range(lat.top_height + 1):
                if mu.weight <= tp_u.weight:
                    got = table.gamma(tp_u, mu, (r0,))
                    want = sum(
                        1
                        for v in lat.elements_of_type(mu)
                        if lat.heights[lat.meet(u, v)] == r0
                    )
                    name = "gamma"
                else:
                    got = table.gamma_dual(tp_u, mu, (r0,))
                    want = sum(
                        1
                        for v in lat.elements_of_type(mu)
                        if lat.heights[lat.join(u, v)] == r0
                    )
                    name = "gamma_dual"
                cases += 1
                if got != want:
                    return CheckResult(
                        "meet-join-profiles",
                        False,
                        f"{name}({tp_u},{mu},{r0}) = {got}, lattice says {want}",
                    )
    return CheckResult("meet-join-profiles", True, f"{cases} cases")


def _check_spheres(lat: ConcreteLattice, table: CountTable) -> CheckResult:
    cases = 0
    for u in range(len(lat)):
        tp_u = lat.types[u]
        for r in range(2 * lat.top_height + 2):
            got = table.sphere_size(tp_u, r)
            want = len(lat.sphere(u, r))
            cases += 1
            if got != want:
                return CheckResult(
                    "sphere-sizes",
                    False,
                    f"|S({u}, {r})| = {want}, formula says {got}",
                )
            for l in range(lat.top_height + 1):
                got_l = table.sphere_layer_by_height(tp_u, r, l)
                want_l = len(lat.sphere(u, r, height=l))
                cases += 1
                if got_l != want_l:
                    return CheckResult(
                        "sphere-sizes",
                        False,
                        f"|S({u}, {r}, {l})| = {want_l}, formula says {got_l}",
                    )
    return CheckResult("sphere-sizes", True, f"{cases} cases")
