"""Sphere packing, sphere covering and singleton bounds for lattice codes.

A code lives on one height layer (constant-height) or one type layer
(constant-type) of a modular lattice and must keep a minimum distance D.
Bounds compare the code against a chosen reference layer:

* packing: upper bound |layer| / min sphere-slice size, floored;
* covering: lower bound on the size of some maximal code,
  |layer| / max reach-slice size, ceiled;
* singleton: upper bound through repeated puncturing.

For an enumerable profile the slice sizes depend only on the codeword type,
so they come straight from the counting tables; when an explicit
:class:`~latsphere.oracle.ConcreteLattice` is supplied instead, the min/max
over the code layer is computed by brute force, which also covers lattices
with no enumerable profile at all.

Pairwise distances inside one height layer are even, so for odd D the
covering reach uses the even-distance bound 2*floor((D-1)/2) + |l - t|; for
even D this coincides with D - 2 + |l - t|.  Results carry a note when such
a convention choice applies.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .enumerable import (
    LatticeProfile,
    count_of_height,
    count_of_type,
    count_table,
)
from .oracle import ConcreteLattice
from .partitions import Partition, partitions_of

PACKING_UPPER = "packing_upper"
COVERING_LOWER = "covering_lower"
SINGLETON_UPPER = "singleton_upper"


@dataclass(frozen=True)
class BoundRequest:
    """A bound query: which lattice, which code layer, which distance target.

    Exactly one of ``height`` / ``mu`` selects the code layer.  The optional
    ``layer_height`` / ``layer_type`` pick the reference layer for a single
    bound evaluation; sweep functions enumerate them instead.  ``profile``
    may be omitted when the evaluating function receives a concrete lattice.
    """

    profile: Optional[LatticeProfile]
    height: Optional[int] = None
    mu: Optional[Partition] = None
    min_distance: int = 1
    layer_height: Optional[int] = None
    layer_type: Optional[Partition] = None

    def __post_init__(self) -> None:
        if (self.height is None) == (self.mu is None):
            raise ValueError("specify exactly one of height or mu")
        if self.min_distance < 1:
            raise ValueError(f"min distance must be >= 1, got {self.min_distance}")
        if self.layer_height is not None and self.layer_type is not None:
            raise ValueError("specify at most one of layer_height and layer_type")
        if self.profile is not None:
            top = self.profile.top_type
            if self.mu is not None and not self.mu <= top:
                raise ValueError(f"{self.mu} is not a type of {self.profile.spec()}")
            if self.height is not None and not 0 <= self.height <= self.profile.top_height:
                raise ValueError(
                    f"height {self.height} outside 0..{self.profile.top_height}"
                )

    @property
    def packing_radius(self) -> int:
        return (self.min_distance - 1) // 2

    @property
    def code_height(self) -> int:
        return self.height if self.height is not None else self.mu.weight


@dataclass(frozen=True)
class BoundResult:
    """One evaluated bound with full provenance.

    ``selector`` names the reference layer, ``radius`` the sphere radius used
    in the denominator, and ``numerator``/``denominator`` the exact quotient
    operands so the report can be audited.
    """

    kind: str
    value: int
    selector: str
    radius: int
    numerator: int
    denominator: int
    note: str = ""

    def row(self) -> dict:
        return {
            "kind": self.kind,
            "selector": self.selector,
            "radius": self.radius,
            "numerator": str(self.numerator),
            "denominator": str(self.denominator),
            "bound": str(self.value),
            "note": self.note,
        }


def tightest(results: Sequence[BoundResult]) -> BoundResult:
    """The strongest bound of a sweep: min for upper bounds, max for lower."""
    if not results:
        raise ValueError("empty sweep")
    if results[0].kind == COVERING_LOWER:
        return max(results, key=lambda b: b.value)
    return min(results, key=lambda b: b.value)


# --- layer sizes and sphere slices, enumerable or brute force ---------------


def _layer_size_height(req: BoundRequest, lat: Optional[ConcreteLattice], t: int) -> int:
    if lat is not None:
        return len(lat.elements_of_height(t))
    return count_of_height(req.profile, t)


def _layer_size_type(req: BoundRequest, lat: Optional[ConcreteLattice], phi: Partition) -> int:
    if lat is not None:
        return len(lat.elements_of_type(phi))
    return count_of_type(req.profile, phi)


def _code_types(req: BoundRequest) -> list[Partition]:
    # All types a constant-height codeword could have.
    if req.mu is not None:
        return [req.mu]
    return partitions_of(req.height, bound=req.profile.top_type)


def _slice_sizes(
    req: BoundRequest,
    lat: Optional[ConcreteLattice],
    radius: int,
    *,
    t: Optional[int] = None,
    phi: Optional[Partition] = None,
) -> list[int]:
    """Sphere-slice sizes |S(u, radius, layer)| over all codeword positions u.

    With a concrete lattice every element of the code layer is scanned;
    otherwise the slice size is type-invariant and one value per admissible
    codeword type suffices.
    """
    if lat is not None:
        if req.mu is not None:
            centres = lat.elements_of_type(req.mu)
        else:
            centres = lat.elements_of_height(req.height)
        if not centres:
            return []
        return [len(lat.sphere(u, radius, height=t, mu=phi)) for u in centres]
    table = count_table(req.profile)
    out = []
    for tp in _code_types(req):
        if phi is not None:
            out.append(table.sphere_layer_by_type(tp, radius, phi))
        else:
            out.append(table.sphere_layer_by_height(tp, radius, t))
    return out


def _top_height(req: BoundRequest, lat: Optional[ConcreteLattice]) -> int:
    return lat.top_height if lat is not None else req.profile.top_height


def _require_backing(req: BoundRequest, lat: Optional[ConcreteLattice]) -> None:
    if req.profile is None and lat is None:
        raise ValueError("a profile or a concrete lattice is required")


# --- packing -----------------------------------------------------------------


def packing_bound(
    req: BoundRequest, lattice: Optional[ConcreteLattice] = None
) -> BoundResult:
    """Upper bound on a code with minimum distance D via disjoint spheres.

    Uses the selector stored in the request (reference height t for
    constant-height codes, reference type phi for constant-type codes).
    Raises when the reference slice is empty, since the quotient is undefined.
    """
    _require_backing(req, lattice)
    r = req.packing_radius
    if req.layer_type is not None or (req.mu is not None and req.layer_height is None):
        phi = req.layer_type if req.layer_type is not None else req.mu
        return _packing_eval(req, lattice, r, phi=phi)
    t = req.layer_height if req.layer_height is not None else req.code_height
    return _packing_eval(req, lattice, r, t=t)


def _packing_eval(
    req: BoundRequest,
    lat: Optional[ConcreteLattice],
    radius: int,
    *,
    t: Optional[int] = None,
    phi: Optional[Partition] = None,
    note: str = "",
) -> BoundResult:
    slices = _slice_sizes(req, lat, radius, t=t, phi=phi)
    denom = min(slices) if slices else 0
    if denom <= 0:
        sel = f"t={t}" if phi is None else f"phi={phi}"
        raise ValueError(f"empty sphere slice for selector {sel} at radius {radius}")
    num = (
        _layer_size_height(req, lat, t)
        if phi is None
        else _layer_size_type(req, lat, phi)
    )
    return BoundResult(
        kind=PACKING_UPPER,
        value=num // denom,
        selector=f"t={t}" if phi is None else f"phi={phi}",
        radius=radius,
        numerator=num,
        denominator=denom,
        note=note,
    )


def packing_sweep(
    req: BoundRequest, lattice: Optional[ConcreteLattice] = None
) -> list[BoundResult]:
    """Evaluate the packing bound over every admissible reference layer.

    Sweeps radius r = floor((D-1)/2); when r is odd the radius r-1 family is
    evaluated as well (its spheres are disjoint a fortiori).  Selectors whose
    sphere slice is empty are skipped.  Use :func:`tightest` for the winner.
    """
    _require_backing(req, lattice)
    results = []
    radii = [req.packing_radius]
    if req.packing_radius % 2 == 1:
        radii.append(req.packing_radius - 1)
    l = req.code_height
    for radius in radii:
        note = "" if radius == req.packing_radius else "even-radius family"
        if req.mu is not None:
            for w in range(max(0, l - radius), min(_top_height(req, lattice), l + radius) + 1):
                top = req.profile.top_type if req.profile else lattice.types[lattice.top]
                for phi in partitions_of(w, bound=top):
                    try:
                        results.append(
                            _packing_eval(req, lattice, radius, phi=phi, note=note)
                        )
                    except ValueError:
                        continue
        else:
            for t in range(max(0, l - radius), min(_top_height(req, lattice), l + radius) + 1):
                try:
                    results.append(_packing_eval(req, lattice, radius, t=t, note=note))
                except ValueError:
                    continue
    return results


# --- covering ----------------------------------------------------------------


def _covering_reach(req: BoundRequest, gap: int) -> tuple[int, str]:
    # Even-distance form of D - 2 + gap; identical for even D.
    reach = 2 * ((req.min_distance - 1) // 2) + gap
    note = ""
    if req.min_distance % 2 == 1:
        note = "odd D: even-distance reach used"
    return reach, note


def covering_bound(
    req: BoundRequest, lattice: Optional[ConcreteLattice] = None
) -> BoundResult:
    """Existence bound: some maximal code with distance >= D has at least
    this many codewords.

    Constant-height form accepts any reference height t; constant-type form
    requires code type mu <= reference type phi.
    """
    _require_backing(req, lattice)
    if req.layer_type is not None or (req.mu is not None and req.layer_height is None):
        phi = req.layer_type if req.layer_type is not None else req.mu
        if req.mu is None:
            raise ValueError("type selectors require a constant-type request")
        if not req.mu <= phi:
            raise ValueError(
                f"covering reference type {phi} must lie above the code type {req.mu}"
            )
        return _covering_eval(req, lattice, phi=phi)
    t = req.layer_height if req.layer_height is not None else req.code_height
    if req.mu is not None:
        raise ValueError("height selectors require a constant-height request")
    return _covering_eval(req, lattice, t=t)


def _covering_eval(
    req: BoundRequest,
    lat: Optional[ConcreteLattice],
    *,
    t: Optional[int] = None,
    phi: Optional[Partition] = None,
) -> BoundResult:
    gap = abs(req.code_height - t) if phi is None else phi.weight - req.code_height
    reach, note = _covering_reach(req, gap)
    slices = _slice_sizes(req, lat, reach, t=t, phi=phi)
    denom = max(slices) if slices else 0
    if denom <= 0:
        sel = f"t={t}" if phi is None else f"phi={phi}"
        raise ValueError(f"empty reach slice for selector {sel}")
    num = (
        _layer_size_height(req, lat, t)
        if phi is None
        else _layer_size_type(req, lat, phi)
    )
    return BoundResult(
        kind=COVERING_LOWER,
        value=-(-num // denom),
        selector=f"t={t}" if phi is None else f"phi={phi}",
        radius=reach,
        numerator=num,
        denominator=denom,
        note=note,
    )


def covering_sweep(
    req: BoundRequest, lattice: Optional[ConcreteLattice] = None
) -> list[BoundResult]:
    """Covering bound over every admissible reference layer."""
    _require_backing(req, lattice)
    results = []
    if req.mu is not None:
        top = req.profile.top_type if req.profile else lattice.types[lattice.top]
        for w in range(req.mu.weight, _top_height(req, lattice) + 1):
            for phi in partitions_of(w, bound=top):
                if req.mu <= phi:
                    results.append(_covering_eval(req, lattice, phi=phi))
    else:
        for t in range(0, _top_height(req, lattice) + 1):
            results.append(_covering_eval(req, lattice, t=t))
    return results


# --- singleton ---------------------------------------------------------------


def singleton_bound(req: BoundRequest) -> BoundResult:
    """Puncturing bound |C| <= alpha(phi, l - t) with t = (D - 2) / 2.

    ``phi`` is the request's ``layer_type`` and must be a type of weight
    top_height - t inside the lattice's type; the bound counts the elements
    of height l - t below a type-``phi`` element.  For constant-type codes l
    is the code type's weight.  Odd D is evaluated at floor((D - 2) / 2) and
    flagged, the convention being a choice.
    """
    if req.profile is None:
        raise ValueError("the singleton bound needs an enumerable profile")
    t = (req.min_distance - 2) // 2
    if t < 0:
        t = 0
    note = "odd D: puncturing depth floor((D-2)/2)" if req.min_distance % 2 else ""
    l = req.code_height
    if l - t < 0:
        return BoundResult(
            kind=SINGLETON_UPPER,
            value=1,
            selector="degenerate",
            radius=t,
            numerator=1,
            denominator=1,
            note="min distance exceeds twice the code height; at most one codeword",
        )
    phi = req.layer_type
    if phi is None:
        raise ValueError("the singleton bound needs a layer_type selector phi")
    top = req.profile.top_type
    if not phi <= top:
        raise ValueError(f"{phi} is not a type of {req.profile.spec()}")
    if phi.weight != req.profile.top_height - t:
        raise ValueError(
            f"singleton reference type must have weight "
            f"{req.profile.top_height - t}, got {phi} of weight {phi.weight}"
        )
    table = count_table(req.profile)
    value = sum(table.alpha(phi, theta) for theta in partitions_of(l - t, bound=phi))
    return BoundResult(
        kind=SINGLETON_UPPER,
        value=value,
        selector=f"phi={phi}",
        radius=t,
        numerator=value,
        denominator=1,
        note=note,
    )


def singleton_sweep(req: BoundRequest) -> list[BoundResult]:
    """Singleton bound over every admissible reference type."""
    if req.profile is None:
        raise ValueError("the singleton bound needs an enumerable profile")
    t = max(0, (req.min_distance - 2) // 2)
    if req.code_height - t < 0:
        return [singleton_bound(req)]
    results = []
    for phi in partitions_of(req.profile.top_height - t, bound=req.profile.top_type):
        results.append(singleton_bound(replace(req, layer_type=phi)))
    return results
