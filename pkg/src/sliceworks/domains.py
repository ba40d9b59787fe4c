"""Slice-open domain geometry.

A domain is a per-slice region of C^n applied identically on every slice (the
axial part) plus finitely many extra planar regions glued into single slices
(attachments).  Regions are CSG trees over disks and half-planes, so both
membership and a conservative signed boundary distance are computable: the
sign of the distance is exact everywhere, the magnitude is a lower bound at
non-primitive nodes.

On top of the geometry sit the sampled predicates: admissible slice units of
a path, the three endpoint radii, and witness-based checks of
real-path-connectedness and stem preservation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import EmptyUnitSet, InsufficientUnits, ParseError
from .paths import PathCn, cdist, ray_from_real
from .quaternion import ImaginaryUnit, SlicePoint, sphere_sample

__all__ = [
    "Region",
    "Disk",
    "HalfPlane",
    "AllPlane",
    "Union",
    "Intersection",
    "Complement",
    "ProductRegion",
    "NON_REAL_STRIP",
    "region_from_json",
    "Attachment",
    "SliceDomain",
    "domain_from_json",
    "domain_to_json",
    "SliceUnitSample",
    "slice_units",
    "radius_for_units",
    "radius_path_ball",
    "radius_two_units",
    "DomainCheckReport",
    "check_real_path_connected",
    "check_stem_preserving",
    "check_self_stem_preserving",
    "find_witness_path",
    "PROVEN_BY_WITNESS",
    "NO_VIOLATION_FOUND",
    "VIOLATED",
    "DEFAULT_UNIT_SAMPLES",
    "DEFAULT_PATH_SAMPLES",
    "DEFAULT_PAIR_SAMPLES",
    "DEFAULT_SEGMENT_POINTS",
]

DEFAULT_UNIT_SAMPLES = 256
DEFAULT_PATH_SAMPLES = 64
DEFAULT_PAIR_SAMPLES = 64
DEFAULT_SEGMENT_POINTS = 32
# Window half-width used to sample regions whose bounding box is unbounded.
DEFAULT_WINDOW = 8.0

Coords = tuple[complex, ...]
Box = tuple[float, float, float, float]  # xmin, xmax, ymin, ymax (may be infinite)

_INF_BOX: Box = (-math.inf, math.inf, -math.inf, math.inf)


def _box_union(a: Box, b: Box) -> Box:
    return (min(a[0], b[0]), max(a[1], b[1]), min(a[2], b[2]), max(a[3], b[3]))


def _box_intersection(a: Box, b: Box) -> Box:
    return (max(a[0], b[0]), min(a[1], b[1]), max(a[2], b[2]), min(a[3], b[3]))


def _clamp_box(box: Box, half_width: float = DEFAULT_WINDOW) -> Box:
    xmin = box[0] if math.isfinite(box[0]) else -half_width
    xmax = box[1] if math.isfinite(box[1]) else half_width
    ymin = box[2] if math.isfinite(box[2]) else -half_width
    ymax = box[3] if math.isfinite(box[3]) else half_width
    if xmin > xmax:
        xmin = xmax = 0.5 * (xmin + xmax)
    if ymin > ymax:
        ymin = ymax = 0.5 * (ymin + ymax)
    return (xmin, xmax, ymin, ymax)


class Region:
    """Open region of C^n described by a CSG tree; see module docstring."""

    n: int = 1

    def signed_distance(self, z: Coords) -> float:
        raise NotImplementedError

    def contains(self, z: Sequence[complex]) -> bool:
        return self.signed_distance(tuple(complex(c) for c in z)) < 0.0

    def depth(self, z: Sequence[complex]) -> float:
        """Conservative distance from an interior point to the boundary (0 outside)."""
        return max(0.0, -self.signed_distance(tuple(complex(c) for c in z)))

    def conj(self) -> "Region":
        """The region {z : conj(z) in self}; exact on every node."""
        raise NotImplementedError

    def boxes(self) -> tuple[Box, ...]:
        """Per-coordinate bounding boxes (possibly infinite)."""
        raise NotImplementedError

    def windows(self, half_width: float = DEFAULT_WINDOW) -> tuple[Box, ...]:
        return tuple(_clamp_box(b, half_width) for b in self.boxes())

    def to_json(self) -> dict[str, Any]:
        raise NotImplementedError

    def __or__(self, other: "Region") -> "Region":
        return Union((self, other))

    def __and__(self, other: "Region") -> "Region":
        return Intersection((self, other))

    def __invert__(self) -> "Region":
        return Complement(self)


@dataclass(frozen=True, slots=True)
class Disk(Region):
    """Open disk |z - center| < radius in one coordinate plane."""

    center: complex
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", complex(self.center))
        if self.radius < 0.0:
            raise ValueError("disk radius must be >= 0")

    def signed_distance(self, z: Coords) -> float:
        return abs(z[0] - self.center) - self.radius

    def conj(self) -> "Disk":
        return Disk(self.center.conjugate(), self.radius)

    def boxes(self) -> tuple[Box, ...]:
        c, r = self.center, self.radius
        return ((c.real - r, c.real + r, c.imag - r, c.imag + r),)

    def to_json(self) -> dict[str, Any]:
        return {"type": "disk", "center": [self.center.real, self.center.imag],
                "radius": self.radius}


@dataclass(frozen=True, slots=True)
class HalfPlane(Region):
    """Open half-plane Re(a*z) < b; the signed distance is (Re(a*z) - b)/|a|."""

    a: complex
    b: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", complex(self.a))
        if self.a == 0:
            raise ValueError("half-plane normal must be nonzero")

    def signed_distance(self, z: Coords) -> float:
        return ((self.a * z[0]).real - self.b) / abs(self.a)

    def conj(self) -> "HalfPlane":
        return HalfPlane(self.a.conjugate(), self.b)

    def boxes(self) -> tuple[Box, ...]:
        return (_INF_BOX,)

    def to_json(self) -> dict[str, Any]:
        return {"type": "halfplane", "normal": [self.a.real, self.a.imag], "bound": self.b}


@dataclass(frozen=True, slots=True)
class AllPlane(Region):
    """The whole coordinate plane."""

    def signed_distance(self, z: Coords) -> float:
        return -math.inf

    def conj(self) -> "AllPlane":
        return self

    def boxes(self) -> tuple[Box, ...]:
        return (_INF_BOX,)

    def to_json(self) -> dict[str, Any]:
        return {"type": "all"}


def _check_same_n(parts: Sequence[Region], node: str) -> int:
    if not parts:
        raise ValueError(f"{node} needs at least one part")
    n = parts[0].n
    if any(p.n != n for p in parts):
        raise ValueError(f"{node} parts must share one dimension")
    return n


@dataclass(frozen=True)
class Union(Region):
    parts: tuple[Region, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        object.__setattr__(self, "n", _check_same_n(self.parts, "union"))

    def signed_distance(self, z: Coords) -> float:
        return min(p.signed_distance(z) for p in self.parts)

    def conj(self) -> "Union":
        return Union(tuple(p.conj() for p in self.parts))

    def boxes(self) -> tuple[Box, ...]:
        acc = list(self.parts[0].boxes())
        for p in self.parts[1:]:
            for i, b in enumerate(p.boxes()):
                acc[i] = _box_union(acc[i], b)
        return tuple(acc)

    def to_json(self) -> dict[str, Any]:
        return {"type": "union", "parts": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class Intersection(Region):
    parts: tuple[Region, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        object.__setattr__(self, "n", _check_same_n(self.parts, "intersection"))

    def signed_distance(self, z: Coords) -> float:
        return max(p.signed_distance(z) for p in self.parts)

    def conj(self) -> "Intersection":
        return Intersection(tuple(p.conj() for p in self.parts))

    def boxes(self) -> tuple[Box, ...]:
        acc = list(self.parts[0].boxes())
        for p in self.parts[1:]:
            for i, b in enumerate(p.boxes()):
                acc[i] = _box_intersection(acc[i], b)
        return tuple(acc)

    def to_json(self) -> dict[str, Any]:
        return {"type": "intersection", "parts": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class Complement(Region):
    part: Region

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", self.part.n)

    def signed_distance(self, z: Coords) -> float:
        return -self.part.signed_distance(z)

    def conj(self) -> "Complement":
        return Complement(self.part.conj())

    def boxes(self) -> tuple[Box, ...]:
        return tuple(_INF_BOX for _ in range(self.n))

    def to_json(self) -> dict[str, Any]:
        return {"type": "complement", "part": self.part.to_json()}


@dataclass(frozen=True)
class ProductRegion(Region):
    """Product of one-coordinate regions, one factor per coordinate of C^n."""

    factors: tuple[Region, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("product needs at least one factor")
        if any(f.n != 1 for f in self.factors):
            raise ValueError("product factors must be one-coordinate regions")
        object.__setattr__(self, "n", len(self.factors))

    def signed_distance(self, z: Coords) -> float:
        return max(f.signed_distance((z[i],)) for i, f in enumerate(self.factors))

    def conj(self) -> "ProductRegion":
        return ProductRegion(tuple(f.conj() for f in self.factors))

    def boxes(self) -> tuple[Box, ...]:
        return tuple(f.boxes()[0] for f in self.factors)

    def to_json(self) -> dict[str, Any]:
        return {"type": "product", "factors": [f.to_json() for f in self.factors]}


# {z : Im z != 0}: the two open half-planes off the real axis.  Its signed
# distance at x+yi is exactly -|y|, so intersecting an attachment with it
# keeps the real axis out of the attachment with an exact distance.
NON_REAL_STRIP: Region = Union((HalfPlane(1j, 0.0), HalfPlane(-1j, 0.0)))


def region_from_json(data: Any) -> Region:
    if not isinstance(data, dict) or "type" not in data:
        raise ParseError(f"region JSON must be an object with a 'type' key, got {data!r}")
    kind = data["type"]
    try:
        if kind == "disk":
            c = data["center"]
            return Disk(complex(float(c[0]), float(c[1])), float(data["radius"]))
        if kind == "halfplane":
            a = data["normal"]
            return HalfPlane(complex(float(a[0]), float(a[1])), float(data["bound"]))
        if kind == "all":
            return AllPlane()
        if kind == "union":
            return Union(tuple(region_from_json(p) for p in data["parts"]))
        if kind == "intersection":
            return Intersection(tuple(region_from_json(p) for p in data["parts"]))
        if kind == "complement":
            return Complement(region_from_json(data["part"]))
        if kind == "product":
            return ProductRegion(tuple(region_from_json(f) for f in data["factors"]))
    except ParseError:
        raise
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed {kind!r} region: {exc}") from exc
    raise ParseError(f"unknown region type {kind!r}")


@dataclass(frozen=True, slots=True)
class Attachment:
    """Extra planar region glued into the slice of one unit (and optionally its antipode)."""

    unit: ImaginaryUnit
    region: Region
    antipode: bool = False

    def __post_init__(self) -> None:
        if self.region.n != 1:
            raise ValueError("attachments are single-coordinate only")

    def to_json(self) -> dict[str, Any]:
        return {"unit": [self.unit.x, self.unit.y, self.unit.z],
                "region": self.region.to_json(), "antipode": self.antipode}


_UNIT_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class SliceDomain:
    """Axially applied region plus single-slice attachments.

    Membership of a slice point is representation-independent: the trace of
    the axial part on any slice is axial | axial.conj(), attachments appear
    on their own slice (conjugated on the antipodal one) minus the real axis,
    and real points are governed by the axial region's real trace alone.
    """

    axial: Region
    attachments: tuple[Attachment, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "attachments", tuple(self.attachments))
        if self.attachments and self.axial.n != 1:
            raise ValueError("attachments are supported for one-variable domains only")

    @property
    def n(self) -> int:
        return self.axial.n

    def is_axially_symmetric(self) -> bool:
        return not self.attachments

    # -- construction helpers ------------------------------------------------

    @classmethod
    def axial_disk(cls, center: complex = 0j, radius: float = 1.0) -> "SliceDomain":
        return cls(Disk(center, radius))

    @classmethod
    def whole_space(cls, n: int = 1) -> "SliceDomain":
        if n == 1:
            return cls(AllPlane())
        return cls(ProductRegion(tuple(AllPlane() for _ in range(n))))

    # -- geometry --------------------------------------------------------

    def _axial_trace(self) -> Region:
        return Union((self.axial, self.axial.conj()))

    def trace_region(self, unit: ImaginaryUnit | None) -> Region:
        """The planar trace of the domain on the slice of ``unit`` (None: real base)."""
        parts: list[Region] = [self.axial, self.axial.conj()]
        if unit is not None:
            for att in self.attachments:
                direct = att.unit.distance(unit) <= _UNIT_MATCH_TOL or (
                    att.antipode and (-att.unit).distance(unit) <= _UNIT_MATCH_TOL
                )
                mirrored = (-att.unit).distance(unit) <= _UNIT_MATCH_TOL or (
                    att.antipode and att.unit.distance(unit) <= _UNIT_MATCH_TOL
                )
                if direct:
                    parts.append(Intersection((att.region, NON_REAL_STRIP)))
                if mirrored:
                    parts.append(Intersection((att.region.conj(), NON_REAL_STRIP)))
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def contains(self, q: SlicePoint) -> bool:
        if q.n != self.n:
            raise ValueError(f"point has dimension {q.n}, domain has {self.n}")
        return self.trace_region(q.unit).contains(q.coords)

    def windows(self, half_width: float = DEFAULT_WINDOW) -> tuple[Box, ...]:
        boxes = list(self._axial_trace().boxes())
        for att in self.attachments:
            boxes[0] = _box_union(boxes[0], att.region.boxes()[0])
        return tuple(_clamp_box(b, half_width) for b in boxes)

    # -- sampling --------------------------------------------------------

    def real_points(self, count: int = 64, seed: int = 0,
                    grid_total: int = 4096) -> list[tuple[complex, ...]]:
        """Real points of the domain found by a per-coordinate grid scan."""
        windows = self.windows()
        per_axis = max(2, int(round(grid_total ** (1.0 / self.n))))
        axes: list[list[float]] = []
        for (xmin, xmax, _, _) in windows:
            if xmax <= xmin:
                axes.append([xmin])
            else:
                step = (xmax - xmin) / (per_axis - 1)
                axes.append([xmin + k * step for k in range(per_axis)])
        found: list[tuple[complex, ...]] = []
        idx = [0] * self.n
        axial = self.axial
        while True:
            pt = tuple(complex(axes[i][idx[i]], 0.0) for i in range(self.n))
            if axial.contains(pt):
                found.append(pt)
            # odometer increment over the grid
            for i in range(self.n - 1, -1, -1):
                idx[i] += 1
                if idx[i] < len(axes[i]):
                    break
                idx[i] = 0
            else:
                break
        if len(found) <= count:
            return found
        rng = random.Random(seed)
        picked = rng.sample(range(len(found)), count)
        return [found[i] for i in sorted(picked)]

    def sample_interior(self, count: int = 64, seed: int = 0) -> list[SlicePoint]:
        """Rejection-sampled slice points of the domain (axial and attachment parts)."""
        rng = random.Random(seed)
        windows = self.windows()
        trace = self._axial_trace()
        out: list[SlicePoint] = []
        budget = 60 * count
        while len(out) < count and budget > 0:
            budget -= 1
            use_attachment = self.attachments and rng.random() < 0.5
            if use_attachment:
                att = self.attachments[rng.randrange(len(self.attachments))]
                box = _clamp_box(att.region.boxes()[0])
                z = complex(rng.uniform(box[0], box[1]), rng.uniform(box[2], box[3]))
                piece = Intersection((att.region, NON_REAL_STRIP))
                if piece.contains((z,)):
                    out.append(SlicePoint((z,), att.unit))
                continue
            coords = tuple(
                complex(rng.uniform(b[0], b[1]), rng.uniform(b[2], b[3])) for b in windows
            )
            if trace.contains(coords):
                vec = [rng.gauss(0.0, 1.0) for _ in range(3)]
                if all(abs(v) < 1e-12 for v in vec):
                    vec = [1.0, 0.0, 0.0]
                unit = ImaginaryUnit.from_vector(*vec)
                if all(c.imag == 0.0 for c in coords):
                    out.append(SlicePoint(coords, None))
                else:
                    out.append(SlicePoint(coords, unit))
        return out


@dataclass(frozen=True)
class SliceUnitSample:
    """Sampled (or symbolically exact) view of the admissible slice units of a path.

    ``indices`` index into sphere_sample(sample_count, seed) so that two
    samples over the same sphere sample can be intersected set-wise.
    """

    units: tuple[ImaginaryUnit, ...]
    indices: tuple[int, ...]
    exact: bool
    all_sphere: bool
    sample_count: int
    seed: int

    def cardinality_at_least(self, k: int) -> bool:
        return True if self.all_sphere else len(self.units) >= k

    def intersection_size(self, other: "SliceUnitSample") -> int | None:
        """Size of the sampled intersection; None means 'all of the sphere'."""
        if self.all_sphere and other.all_sphere:
            return None
        if self.all_sphere:
            return len(other.indices)
        if other.all_sphere:
            return len(self.indices)
        if (self.sample_count, self.seed) != (other.sample_count, other.seed):
            raise ValueError("cannot intersect unit samples drawn from different sphere samples")
        return len(set(self.indices) & set(other.indices))

    def to_json(self) -> dict[str, Any]:
        return {
            "exact": self.exact,
            "all_sphere": self.all_sphere,
            "sample_count": self.sample_count,
            "units": [[u.x, u.y, u.z] for u in self.units],
        }


def _path_points(path: PathCn, per_segment: int = DEFAULT_SEGMENT_POINTS) -> list[Coords]:
    return path.sample_points(per_segment)


def slice_units(
    domain: SliceDomain,
    path: PathCn,
    seed: int = 0,
    unit_count: int = DEFAULT_UNIT_SAMPLES,
    per_segment: int = DEFAULT_SEGMENT_POINTS,
) -> SliceUnitSample:
    """Units I whose lift of the path stays inside the domain.

    If every sampled path point already sits in the axial trace the answer is
    exact and equals the whole sphere; otherwise a deterministic sphere sample
    is filtered point by point.
    """
    pts = _path_points(path, per_segment)
    trace = domain._axial_trace()
    pending = [z for z in pts if not trace.contains(z)]
    units = sphere_sample(unit_count, seed)
    if not pending:
        return SliceUnitSample(units, tuple(range(len(units))), True, True, unit_count, seed)
    if domain.n != 1 or not domain.attachments:
        # a point outside the axial trace can never be covered slice-wise
        return SliceUnitSample((), (), False, False, unit_count, seed)
    kept: list[int] = []
    for idx, unit in enumerate(units):
        pieces: list[Region] = []
        for att in domain.attachments:
            direct = att.unit.distance(unit) <= _UNIT_MATCH_TOL or (
                att.antipode and (-att.unit).distance(unit) <= _UNIT_MATCH_TOL
            )
            mirrored = (-att.unit).distance(unit) <= _UNIT_MATCH_TOL or (
                att.antipode and att.unit.distance(unit) <= _UNIT_MATCH_TOL
            )
            if direct:
                pieces.append(Intersection((att.region, NON_REAL_STRIP)))
            if mirrored:
                pieces.append(Intersection((att.region.conj(), NON_REAL_STRIP)))
        if pieces and all(any(p.contains(z) for p in pieces) for z in pending):
            kept.append(idx)
    return SliceUnitSample(
        tuple(units[i] for i in kept), tuple(kept), False, False, unit_count, seed
    )


def _unit_iterable(units: "SliceUnitSample | Iterable[ImaginaryUnit]") -> tuple[ImaginaryUnit, ...]:
    if isinstance(units, SliceUnitSample):
        return units.units
    return tuple(units)


def radius_for_units(
    domain: SliceDomain,
    path: PathCn,
    units: "SliceUnitSample | Iterable[ImaginaryUnit]",
) -> float:
    """Largest ball radius around the endpoint that fits inside every listed slice.

    Conservative (a lower bound) wherever the CSG distance is conservative.
    """
    us = _unit_iterable(units)
    if not us:
        raise EmptyUnitSet("radius over an empty set of slice units is undefined")
    endpoint = path.endpoint
    return min(domain.trace_region(u).depth(endpoint) for u in us)


def _ball_directions(n: int, seed: int, count: int = 64) -> list[Coords]:
    """Deterministic directions of the unit ball of C^n: a near-boundary ring
    plus seeded interior points."""
    rng = random.Random(seed)
    dirs: list[Coords] = []
    ring = count // 2
    if n == 1:
        phase = rng.random() * 2.0 * math.pi
        for m in range(ring):
            theta = phase + 2.0 * math.pi * m / max(1, ring)
            dirs.append((complex(math.cos(theta), math.sin(theta)),))
        for _ in range(count - ring):
            rho = 0.999 * math.sqrt(rng.random())
            theta = rng.random() * 2.0 * math.pi
            dirs.append((rho * complex(math.cos(theta), math.sin(theta)),))
        return dirs
    for m in range(count):
        vec = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n)]
        norm = math.sqrt(sum(abs(c) ** 2 for c in vec)) or 1.0
        scale = 1.0 if m < ring else 0.999 * rng.random() ** (1.0 / (2 * n))
        dirs.append(tuple(c * scale / norm for c in vec))
    return dirs


def radius_path_ball(
    domain: SliceDomain,
    path: PathCn,
    seed: int = 0,
    unit_count: int = DEFAULT_UNIT_SAMPLES,
    per_segment: int = DEFAULT_SEGMENT_POINTS,
    target_count: int = 64,
) -> float:
    """Bisected radius r such that every sampled point of the endpoint r-ball
    extends the path inside the domain under at least one sampled unit."""
    base_units = slice_units(domain, path, seed, unit_count, per_segment)
    units = base_units.units
    if not units:
        return 0.0
    endpoint = path.endpoint
    dirs = _ball_directions(domain.n, seed, target_count)
    traces = [domain.trace_region(u) for u in units]

    def extension_ok(r: float) -> bool:
        for d in dirs:
            target = tuple(e + r * c for e, c in zip(endpoint, d))
            seg = [
                tuple(e + (t - e) * (m + 1) / (per_segment + 1)
                      for e, t in zip(endpoint, target))
                for m in range(per_segment)
            ]
            seg.append(target)
            if not any(all(tr.contains(z) for z in seg) for tr in traces):
                return False
        return True

    scale = 1.0 + math.sqrt(sum(abs(c) ** 2 for c in endpoint))
    tol = 1e-6 * scale
    lo, hi = 0.0, 1e-3 * scale
    while extension_ok(hi):
        lo = hi
        hi *= 2.0
        if hi > 1e3 * scale:
            return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if extension_ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def radius_two_units(
    domain: SliceDomain,
    path: PathCn,
    seed: int = 0,
    unit_count: int = DEFAULT_UNIT_SAMPLES,
    per_segment: int = DEFAULT_SEGMENT_POINTS,
) -> float:
    """Best two-unit radius: max over pairs of admissible units of the pairwise
    ball radius.  Equals the second-largest per-unit depth over the sample."""
    admissible = slice_units(domain, path, seed, unit_count, per_segment)
    units = admissible.units
    if len(units) < 2:
        raise InsufficientUnits(
            f"need at least two admissible slice units, found {len(units)}"
        )
    endpoint = path.endpoint
    depths = sorted(domain.trace_region(u).depth(endpoint) for u in units)
    return depths[-2]


# -- witness-based checks ---------------------------------------------------

PROVEN_BY_WITNESS = "ProvenByWitness"
NO_VIOLATION_FOUND = "NoViolationFound"
VIOLATED = "Violated"


@dataclass(frozen=True)
class WitnessRecord:
    """One replayable piece of evidence inside a check report."""

    kind: str
    point: SlicePoint | None = None
    path: PathCn | None = None
    partner: PathCn | None = None
    unit: ImaginaryUnit | None = None
    detail: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind}
        if self.point is not None:
            data["point"] = {
                "coords": [[c.real, c.imag] for c in self.point.coords],
                "unit": None if self.point.unit is None
                else [self.point.unit.x, self.point.unit.y, self.point.unit.z],
            }
        if self.path is not None:
            data["path"] = self.path.to_json()
        if self.partner is not None:
            data["partner"] = self.partner.to_json()
        if self.unit is not None:
            data["unit"] = [self.unit.x, self.unit.y, self.unit.z]
        if self.detail:
            data["detail"] = self.detail
        return data


@dataclass(frozen=True)
class DomainCheckReport:
    check: str
    verdict: str
    witnesses: tuple[WitnessRecord, ...]
    samples_used: int

    def ok(self) -> bool:
        return self.verdict != VIOLATED

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "samples_used": self.samples_used,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _validate_path(domain: SliceDomain, path: PathCn, unit: ImaginaryUnit | None,
                   per_segment: int = DEFAULT_SEGMENT_POINTS) -> bool:
    trace = domain.trace_region(unit)
    return all(trace.contains(z) for z in path.sample_points(per_segment))


def find_witness_path(
    domain: SliceDomain,
    q: SlicePoint,
    real_anchors: Sequence[tuple[complex, ...]] = (),
    max_detours: int = 16,
    per_segment: int = DEFAULT_SEGMENT_POINTS,
) -> PathCn | None:
    """A path from R^n to q whose lift under q's unit stays in the domain.

    Tries the straight ray from Re(q) first, then two-segment detours through
    the supplied real anchor points.  None means the search failed, not that
    no such path exists.
    """
    z = q.coords
    candidates: list[PathCn] = [ray_from_real(z)]
    re_z = tuple(complex(c.real, 0.0) for c in z)
    for p in list(real_anchors)[:max_detours]:
        if len(p) != q.n:
            continue
        candidates.append(PathCn((p, z)))
        if p != re_z:
            candidates.append(PathCn((p, re_z, z)))
        shifted = tuple(pc + (zc - rc) for pc, zc, rc in zip(p, z, re_z))
        candidates.append(PathCn((p, shifted, z)))
    for cand in candidates:
        if _validate_path(domain, cand, q.unit, per_segment):
            return cand
    return None


def check_real_path_connected(
    domain: SliceDomain,
    samples: int = DEFAULT_PATH_SAMPLES,
    seed: int = 0,
) -> DomainCheckReport:
    """Witness search for 'every point is reachable by a path starting in R^n'."""
    anchors = domain.real_points(count=32, seed=seed)
    points = domain.sample_interior(count=samples, seed=seed)
    if not anchors:
        if points:
            # no real trace at all: nothing can be connected to R^n
            witness = WitnessRecord(
                kind="point_without_real_access",
                point=points[0],
                detail={"reason": "domain has an empty real trace"},
            )
            return DomainCheckReport(
                "real_path_connected", VIOLATED, (witness,), len(points)
            )
        return DomainCheckReport("real_path_connected", NO_VIOLATION_FOUND, (), 0)
    witnesses: list[WitnessRecord] = []
    all_found = True
    for q in points:
        path = find_witness_path(domain, q, anchors)
        if path is None:
            all_found = False
            witnesses.append(WitnessRecord(kind="witness_search_failed", point=q))
        else:
            witnesses.append(WitnessRecord(kind="witness_path", point=q, path=path))
    verdict = PROVEN_BY_WITNESS if (all_found and points) else NO_VIOLATION_FOUND
    return DomainCheckReport("real_path_connected", verdict, tuple(witnesses), len(points))


def _sample_paths(
    domain: SliceDomain, samples: int, seed: int
) -> list[tuple[SlicePoint, list[PathCn]]]:
    """Sampled points of the domain with every validated witness path to each."""
    anchors = domain.real_points(count=32, seed=seed)
    points = domain.sample_interior(count=samples, seed=seed)
    out: list[tuple[SlicePoint, list[PathCn]]] = []
    for q in points:
        z = q.coords
        candidates: list[PathCn] = [ray_from_real(z)]
        re_z = tuple(complex(c.real, 0.0) for c in z)
        for p in anchors[:8]:
            candidates.append(PathCn((p, z)))
            if p != re_z:
                candidates.append(PathCn((p, re_z, z)))
        good = [c for c in candidates if _validate_path(domain, c, q.unit)]
        if good:
            out.append((q, good))
    return out


def check_stem_preserving(
    domain1: SliceDomain,
    domain2: SliceDomain,
    samples: int = DEFAULT_PATH_SAMPLES,
    pairs: int = DEFAULT_PAIR_SAMPLES,
    seed: int = 0,
    unit_count: int = DEFAULT_UNIT_SAMPLES,
) -> DomainCheckReport:
    """Sampled check that paths of the first domain keep at least two admissible
    units in the second, and endpoint-sharing pairs never overlap in exactly one."""
    sampled = _sample_paths(domain1, samples, seed)
    witnesses: list[WitnessRecord] = []
    used = 0
    for q, paths in sampled:
        gamma = paths[0]
        used += 1
        su = slice_units(domain2, gamma, seed, unit_count)
        if not su.cardinality_at_least(2):
            witnesses.append(
                WitnessRecord(
                    kind="too_few_units",
                    point=q,
                    path=gamma,
                    detail={"units_found": len(su.units)},
                )
            )
            return DomainCheckReport(
                "stem_preserving", VIOLATED, tuple(witnesses), used
            )
    pair_budget = pairs
    for q, paths in sampled:
        if pair_budget <= 0:
            break
        if len(paths) < 2:
            continue
        alpha, beta = paths[0], paths[1]
        pair_budget -= 1
        used += 1
        sa = slice_units(domain2, alpha, seed, unit_count)
        sb = slice_units(domain2, beta, seed, unit_count)
        overlap = sa.intersection_size(sb)
        if overlap == 1:
            witnesses.append(
                WitnessRecord(
                    kind="single_unit_overlap", point=q, path=alpha, partner=beta,
                    detail={"overlap": 1},
                )
            )
            return DomainCheckReport("stem_preserving", VIOLATED, tuple(witnesses), used)
    return DomainCheckReport("stem_preserving", NO_VIOLATION_FOUND, (), used)


def check_self_stem_preserving(
    domain: SliceDomain,
    samples: int = DEFAULT_PATH_SAMPLES,
    pairs: int = DEFAULT_PAIR_SAMPLES,
    seed: int = 0,
    unit_count: int = DEFAULT_UNIT_SAMPLES,
) -> DomainCheckReport:
    """Real-path-connected and stem-preserving into itself, with shared samples."""
    rpc = check_real_path_connected(domain, samples, seed)
    sp = check_stem_preserving(domain, domain, samples, pairs, seed, unit_count)
    if rpc.verdict == VIOLATED or sp.verdict == VIOLATED:
        bad = rpc if rpc.verdict == VIOLATED else sp
        return DomainCheckReport(
            "self_stem_preserving", VIOLATED, bad.witnesses,
            rpc.samples_used + sp.samples_used,
        )
    if rpc.verdict == PROVEN_BY_WITNESS and sp.verdict == PROVEN_BY_WITNESS:
        verdict = PROVEN_BY_WITNESS
    else:
        verdict = NO_VIOLATION_FOUND
    return DomainCheckReport(
        "self_stem_preserving", verdict, rpc.witnesses + sp.witnesses,
        rpc.samples_used + sp.samples_used,
    )


def domain_from_json(data: Any) -> SliceDomain:
    if not isinstance(data, dict) or "axial" not in data:
        raise ParseError(f"domain JSON must be an object with an 'axial' key, got {data!r}")
    axial = region_from_json(data["axial"])
    atts = []
    for entry in data.get("attachments", []):
        if not isinstance(entry, dict) or "unit" not in entry or "region" not in entry:
            raise ParseError(f"malformed attachment entry: {entry!r}")
        atts.append(
            Attachment(
                ImaginaryUnit.from_json(entry["unit"]),
                region_from_json(entry["region"]),
                bool(entry.get("antipode", False)),
            )
        )
    return SliceDomain(axial, tuple(atts))


def domain_to_json(domain: SliceDomain) -> dict[str, Any]:
    return {
        "axial": domain.axial.to_json(),
        "attachments": [att.to_json() for att in domain.attachments],
    }
