"""Type-indexed counting for the two enumerable lattice families.

Supported alphabets are the subspace lattice of F_q^N and the submodule
lattice of Z_{p^s}^N.  In both, the number of elements of type ``phi`` below a
fixed element depends only on that element's type ``mu`` (``alpha``), and the
same holds for counts above (``beta``).  Chain counts, the meet/join height
profiles ``gamma``/``gamma_dual`` and the sphere-size routines are built on
top of those two tables.

Conventions, each cross-checked against the brute-force lattices in
``latsphere.oracle``:

* ``beta(mu, phi) == alpha(top - mu, top - phi)`` where ``top`` is the
  lattice's type (a rectangle) and ``-`` the rectangle complement.
* ``gamma(tp_u, mu, (r0,))`` equals the number of elements v of type ``mu``
  with meet height h(u ^ v) == r0.  The recursion extends the trailing height
  upward and stops when it reaches ``mu.weight``, where the value is
  ``alpha(tp_u, mu) * alpha_chain(mu, prefix)`` (prefix = all heights but the
  last).
* ``gamma_dual`` is the order dual: join heights, chains running downward,
  trailing heights extended downward, same stop at ``mu.weight`` with value
  ``beta(tp_u, mu) * beta_chain(mu, prefix)``.
* Height sequences that cannot be realised by a chain yield 0 rather than an
  error.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .partitions import Partition, complement, partitions_of
from .qcalc import gaussian_binomial, is_prime, ppow

KIND_VECTOR_SPACE = "vector_space"
KIND_PRIME_POWER_MODULE = "prime_power_module"


@dataclass(frozen=True)
class LatticeProfile:
    """Parameters of an enumerable lattice.

    ``kind`` selects the family: a vector space F_q^N (``base`` = q, s = 1) or
    a module Z_{p^s}^N (``base`` = p prime).  The lattice's own type is the
    rectangle (s^N), exposed as :attr:`top_type`.
    """

    kind: str
    base: int
    s: int
    n: int

    def __post_init__(self) -> None:
        if self.kind not in (KIND_VECTOR_SPACE, KIND_PRIME_POWER_MODULE):
            raise ValueError(f"unknown lattice kind {self.kind!r}")
        if self.base < 2:
            raise ValueError(f"base must be at least 2, got {self.base}")
        if self.n < 1:
            raise ValueError(f"rank must be positive, got {self.n}")
        if self.kind == KIND_VECTOR_SPACE and self.s != 1:
            raise ValueError("vector-space lattices have s = 1")
        if self.kind == KIND_PRIME_POWER_MODULE:
            if self.s < 1:
                raise ValueError(f"s must be positive, got {self.s}")
            if not is_prime(self.base):
                raise ValueError(f"p must be prime, got {self.base}")

    @classmethod
    def vector_space(cls, q: int, n: int) -> "LatticeProfile":
        """Subspace lattice of F_q^N."""
        return cls(KIND_VECTOR_SPACE, q, 1, n)

    @classmethod
    def prime_power_module(cls, p: int, s: int, n: int) -> "LatticeProfile":
        """Submodule lattice of Z_{p^s}^N."""
        return cls(KIND_PRIME_POWER_MODULE, p, s, n)

    @cached_property
    def top_type(self) -> Partition:
        return Partition([self.s] * self.n)

    @property
    def top_height(self) -> int:
        """Height of the greatest lattice element."""
        return self.s * self.n

    @classmethod
    def parse(cls, text: str) -> "LatticeProfile":
        """Parse the CLI syntax "F:q=2,N=4" or "Z:p=2,s=2,N=2"."""
        head, _, tail = text.strip().partition(":")
        fields = {}
        for item in tail.split(","):
            key, _, value = item.partition("=")
            if not value:
                raise ValueError(f"bad profile field {item!r} in {text!r}")
            fields[key.strip()] = int(value)
        try:
            if head == "F":
                return cls.vector_space(fields.pop("q"), fields.pop("N"))
            if head == "Z":
                return cls.prime_power_module(
                    fields.pop("p"), fields.pop("s"), fields.pop("N")
                )
        except KeyError as exc:
            raise ValueError(f"profile {text!r} is missing field {exc}") from None
        raise ValueError(f"profile must start with 'F:' or 'Z:', got {text!r}")

    def spec(self) -> str:
        if self.kind == KIND_VECTOR_SPACE:
            return f"F:q={self.base},N={self.n}"
        return f"Z:p={self.base},s={self.s},N={self.n}"


def _subgroup_count(p: int, mu: Partition, phi: Partition) -> int:
    # Number of subgroups of type phi in an abelian p-group of type mu,
    # phi <= mu assumed.  Product over the columns of mu's diagram.
    mu_c = mu.conjugate()
    phi_c = phi.conjugate()
    out = 1
    for j in range(1, mu.part(1) + 1):
        a = mu_c.part(j)
        b = phi_c.part(j)
        c = phi_c.part(j + 1)
        out *= ppow(p, c * (a - b)) * gaussian_binomial(a - c, b - c, p)
    return out


class CountTable:
    """Memoised counting engine for one :class:`LatticeProfile`.

    All values are exact nonnegative ints.  The caches are deterministic, so
    concurrent readers can at worst duplicate work; nothing here mutates
    shared state beyond inserting computed values.
    """

    def __init__(self, profile: LatticeProfile):
        self.profile = profile
        self._alpha: dict[tuple[Partition, Partition], int] = {}
        self._down_chain: dict[tuple[Partition, tuple[int, ...]], int] = {}
        self._up_chain: dict[tuple[Partition, tuple[int, ...]], int] = {}
        self._gamma: dict[tuple[Partition, Partition, tuple[int, ...]], int] = {}
        self._gamma_dual: dict[tuple[Partition, Partition, tuple[int, ...]], int] = {}

    # --- basic type counts ------------------------------------------------

    def alpha(self, mu: Partition, phi: Partition) -> int:
        """Number of elements of type ``phi`` below a fixed element of type ``mu``."""
        self._require_type(mu)
        if not phi <= mu:
            return 0
        key = (mu, phi)
        val = self._alpha.get(key)
        if val is None:
            if self.profile.kind == KIND_VECTOR_SPACE:
                val = gaussian_binomial(mu.weight, phi.weight, self.profile.base)
            else:
                val = _subgroup_count(self.profile.base, mu, phi)
            self._alpha[key] = val
        return val

    def beta(self, mu: Partition, phi: Partition) -> int:
        """Number of elements of type ``phi`` above a fixed element of type ``mu``.

        Computed from ``alpha`` by complementing both types in the top
        rectangle; zero unless mu <= phi <= top.
        """
        self._require_type(mu)
        top = self.profile.top_type
        if not (mu <= phi and phi <= top):
            return 0
        return self.alpha(complement(top, mu), complement(top, phi))

    # --- chain counts -----------------------------------------------------

    def alpha_chain(self, mu: Partition, heights: Sequence[int]) -> int:
        """Chains x_1 <= ... <= x_n below a fixed element of type ``mu``.

        ``heights`` prescribes h(x_i); the empty sequence counts the empty
        chain, i.e. 1.  Unrealisable height sequences give 0.
        """
        self._require_type(mu)
        return self._alpha_chain(mu, tuple(heights))

    def _alpha_chain(self, mu: Partition, heights: tuple[int, ...]) -> int:
        if not heights:
            return 1
        key = (mu, heights)
        val = self._down_chain.get(key)
        if val is None:
            *prefix, last = heights
            if last < 0:
                val = 0
            else:
                val = sum(
                    self.alpha(mu, theta) * self._alpha_chain(theta, tuple(prefix))
                    for theta in partitions_of(last, bound=mu)
                )
            self._down_chain[key] = val
        return val

    def beta_chain(self, mu: Partition, heights: Sequence[int]) -> int:
        """Chains x_1 >= ... >= x_n above a fixed element of type ``mu``."""
        self._require_type(mu)
        return self._beta_chain(mu, tuple(heights))

    def _beta_chain(self, mu: Partition, heights: tuple[int, ...]) -> int:
        if not heights:
            return 1
        key = (mu, heights)
        val = self._up_chain.get(key)
        if val is None:
            *prefix, last = heights
            if last < 0:
                val = 0
            else:
                val = sum(
                    self.beta(mu, theta) * self._beta_chain(theta, tuple(prefix))
                    for theta in partitions_of(last, bound=self.profile.top_type)
                    if mu <= theta
                )
            self._up_chain[key] = val
        return val

    # --- meet/join height profiles ----------------------------------------

    def gamma(self, center: Partition, mu: Partition, heights: Sequence[int]) -> int:
        """Count pairs of a type-``mu`` element v and a chain into the meet.

        For an element u of type ``center``, counts tuples
        (x_1, ..., x_k, v) with tp(v) = mu, h(x_i) = heights[i] and
        x_1 <= ... <= x_k = u ^ v.  In particular a single trailing height r0
        counts the v with meet height h(u ^ v) = r0.  Requires
        mu.weight <= center.weight; the dual case is :meth:`gamma_dual`.
        """
        self._require_type(center)
        if not heights:
            raise ValueError("gamma needs at least one height")
        if mu.weight > center.weight:
            raise ValueError(
                f"|{mu}| > |{center}|: join-side counting applies, use gamma_dual"
            )
        if not mu <= self.profile.top_type:
            return 0
        return self._gamma_rec(center, mu, tuple(heights))

    def _gamma_rec(
        self, phi: Partition, mu: Partition, heights: tuple[int, ...]
    ) -> int:
        last = heights[-1]
        if last < 0 or last > mu.weight:
            return 0
        if last == mu.weight:
            return self.alpha(phi, mu) * self._alpha_chain(mu, heights[:-1])
        key = (phi, mu, heights)
        val = self._gamma.get(key)
        if val is None:
            prefix = heights[:-1]
            val = sum(
                self.alpha(phi, theta)
                * self.beta(theta, mu)
                * self._alpha_chain(theta, prefix)
                for theta in partitions_of(last, bound=phi)
            )
            val -= sum(
                self._gamma_rec(phi, mu, heights + (l,))
                for l in range(last + 1, mu.weight + 1)
            )
            self._gamma[key] = val
        return val

    def gamma_dual(
        self, center: Partition, mu: Partition, heights: Sequence[int]
    ) -> int:
        """Order dual of :meth:`gamma`: chains down onto the join u v v.

        A single trailing height r0 counts the type-``mu`` elements v with
        join height h(u v v) = r0.  Requires mu.weight > center.weight.
        """
        self._require_type(center)
        if not heights:
            raise ValueError("gamma_dual needs at least one height")
        if mu.weight <= center.weight:
            raise ValueError(
                f"|{mu}| <= |{center}|: meet-side counting applies, use gamma"
            )
        if not mu <= self.profile.top_type:
            return 0
        return self._gamma_dual_rec(center, mu, tuple(heights))

    def _gamma_dual_rec(
        self, phi: Partition, mu: Partition, heights: tuple[int, ...]
    ) -> int:
        last = heights[-1]
        if last < mu.weight or last > self.profile.top_height:
            return 0
        if last == mu.weight:
            return self.beta(phi, mu) * self._beta_chain(mu, heights[:-1])
        key = (phi, mu, heights)
        val = self._gamma_dual.get(key)
        if val is None:
            prefix = heights[:-1]
            val = sum(
                self.beta(phi, theta)
                * self.alpha(theta, mu)
                * self._beta_chain(theta, prefix)
                for theta in partitions_of(last, bound=self.profile.top_type)
                if phi <= theta
            )
            val -= sum(
                self._gamma_dual_rec(phi, mu, heights + (l,))
                for l in range(mu.weight, last)
            )
            self._gamma_dual[key] = val
        return val

    # --- spheres ------------------------------------------------------------

    def sphere_layer_by_type(
        self, center: Partition, radius: int, mu: Partition
    ) -> int:
        """Size of the type-``mu`` slice of the radius-``radius`` sphere.

        Counts elements v of type ``mu`` at distance at most ``radius`` from
        any element of type ``center``; the answer is the same for every such
        element.  The meet (or join) height of an admissible v is pinned to a
        short range, and each height contributes one ``gamma`` (or
        ``gamma_dual``) term.
        """
        self._require_type(center)
        if radius < 0:
            raise ValueError(f"radius must be nonnegative, got {radius}")
        if not mu <= self.profile.top_type:
            return 0
        wc, wm = center.weight, mu.weight
        if wm <= wc:
            lo = max(0, -(-(wc + wm - radius) // 2))
            return sum(
                self._gamma_rec(center, mu, (r0,)) for r0 in range(lo, wm + 1)
            )
        hi = min(self.profile.top_height, (wc + wm + radius) // 2)
        return sum(
            self._gamma_dual_rec(center, mu, (r0,)) for r0 in range(wm, hi + 1)
        )

    def sphere_layer_by_height(
        self, center: Partition, radius: int, height: int
    ) -> int:
        """Number of sphere members of a given height, summed over types."""
        if height < 0 or height > self.profile.top_height:
            return 0
        return sum(
            self.sphere_layer_by_type(center, radius, mu)
            for mu in partitions_of(height, bound=self.profile.top_type)
        )

    def sphere_size(self, center: Partition, radius: int) -> int:
        """Total number of elements within distance ``radius`` of a type-``center`` element."""
        h = center.weight
        lo = max(0, h - radius)
        hi = min(self.profile.top_height, h + radius)
        return sum(
            self.sphere_layer_by_height(center, radius, l) for l in range(lo, hi + 1)
        )

    # --- helpers ------------------------------------------------------------

    def _require_type(self, mu: Partition) -> None:
        if not mu <= self.profile.top_type:
            raise ValueError(
                f"{mu} is not a type of {self.profile.spec()} "
                f"(top type {self.profile.top_type})"
            )


@lru_cache(maxsize=None)
def count_table(profile: LatticeProfile) -> CountTable:
    """Shared per-profile table; profiles are values, so caching is safe."""
    return CountTable(profile)


def alpha(profile: LatticeProfile, mu: Partition, phi: Partition) -> int:
    return count_table(profile).alpha(mu, phi)


def beta(profile: LatticeProfile, mu: Partition, phi: Partition) -> int:
    return count_table(profile).beta(mu, phi)


def alpha_chain(profile: LatticeProfile, mu: Partition, heights: Sequence[int]) -> int:
    return count_table(profile).alpha_chain(mu, heights)


def beta_chain(profile: LatticeProfile, mu: Partition, heights: Sequence[int]) -> int:
    return count_table(profile).beta_chain(mu, heights)


def gamma(
    profile: LatticeProfile, center: Partition, mu: Partition, heights: Sequence[int]
) -> int:
    return count_table(profile).gamma(center, mu, heights)


def gamma_dual(
    profile: LatticeProfile, center: Partition, mu: Partition, heights: Sequence[int]
) -> int:
    return count_table(profile).gamma_dual(center, mu, heights)


def sphere_layer_by_type(
    profile: LatticeProfile, center: Partition, radius: int, mu: Partition
) -> int:
    return count_table(profile).sphere_layer_by_type(center, radius, mu)


def sphere_layer_by_height(
    profile: LatticeProfile, center: Partition, radius: int, height: int
) -> int:
    return count_table(profile).sphere_layer_by_height(center, radius, height)


def sphere_size(profile: LatticeProfile, center: Partition, radius: int) -> int:
    return count_table(profile).sphere_size(center, radius)


def count_of_type(profile: LatticeProfile, phi: Partition) -> int:
    """Number of lattice elements of type ``phi``."""
    return count_table(profile).alpha(profile.top_type, phi)


def count_of_height(profile: LatticeProfile, height: int) -> int:
    """Number of lattice elements of a given height."""
    if height < 0 or height > profile.top_height:
        return 0
    table = count_table(profile)
    return sum(
        table.alpha(profile.top_type, phi)
        for phi in partitions_of(height, bound=profile.top_type)
    )
