"""Polyline paths in C^n anchored on R^n, their conjugates, extensions and slice lifts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import ParseError
from .quaternion import ImaginaryUnit, SlicePoint

__all__ = ["PathCn", "PathBallSpec", "ray_from_real", "cdist"]

Vertex = tuple[complex, ...]


def cdist(a: Sequence[complex], b: Sequence[complex]) -> float:
    """Euclidean distance in C^n."""
    return math.sqrt(sum(abs(x - y) ** 2 for x, y in zip(a, b)))


@dataclass(frozen=True, slots=True)
class PathCn:
    """Piecewise-linear path [0,1] -> C^n whose start lies in R^n.

    The constructor zeroes the imaginary parts of the first vertex, so the
    anchor invariant holds by construction.  Parameterization is
    arc-length-proportional; only endpoints and vertex traces carry meaning.
    """

    vertices: tuple[Vertex, ...]

    def __post_init__(self) -> None:
        verts = [tuple(complex(c) for c in v) for v in self.vertices]
        if not verts:
            raise ValueError("a path needs at least one vertex")
        n = len(verts[0])
        if n == 0 or any(len(v) != n for v in verts):
            raise ValueError("all vertices must share one positive dimension")
        verts[0] = tuple(complex(c.real, 0.0) for c in verts[0])
        object.__setattr__(self, "vertices", tuple(verts))

    @property
    def n(self) -> int:
        return len(self.vertices[0])

    @property
    def endpoint(self) -> Vertex:
        return self.vertices[-1]

    def is_constant(self) -> bool:
        return all(v == self.vertices[0] for v in self.vertices)

    def arc_length(self) -> float:
        return sum(cdist(a, b) for a, b in zip(self.vertices, self.vertices[1:]))

    def point_at(self, t: float) -> Vertex:
        """Value of the arc-length parameterization at t in [0, 1]."""
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"parameter {t} outside [0, 1]")
        total = self.arc_length()
        if total == 0.0:
            return self.vertices[0]
        target = t * total
        run = 0.0
        for a, b in zip(self.vertices, self.vertices[1:]):
            seg = cdist(a, b)
            if run + seg >= target and seg > 0.0:
                s = (target - run) / seg
                return tuple(ac + (bc - ac) * s for ac, bc in zip(a, b))
            run += seg
        return self.endpoint

    def sample_points(self, per_segment: int = 32) -> list[Vertex]:
        """All vertices plus ``per_segment`` interior points of each segment."""
        pts: list[Vertex] = [self.vertices[0]]
        for a, b in zip(self.vertices, self.vertices[1:]):
            for m in range(per_segment):
                s = (m + 1) / (per_segment + 1)
                pts.append(tuple(ac + (bc - ac) * s for ac, bc in zip(a, b)))
            pts.append(b)
        return pts

    def lift(self, unit: ImaginaryUnit | None) -> tuple[SlicePoint, ...]:
        """Vertexwise image under the slice embedding x+yi -> x+yI."""
        return tuple(SlicePoint(v, unit) for v in self.vertices)

    def conj(self) -> "PathCn":
        """Componentwise conjugate path; the start stays in R^n."""
        return PathCn(tuple(tuple(c.conjugate() for c in v) for v in self.vertices))

    def extend(self, z: Sequence[complex]) -> "PathCn":
        """Append the straight segment from the endpoint to z."""
        tail = tuple(complex(c) for c in z)
        if len(tail) != self.n:
            raise ValueError(f"extension point has dimension {len(tail)}, path has {self.n}")
        return PathCn(self.vertices + (tail,))

    # -- formats ----------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        return {"vertices": [[[c.real, c.imag] for c in v] for v in self.vertices]}

    @classmethod
    def from_json(cls, data: Any) -> "PathCn":
        if not isinstance(data, dict) or "vertices" not in data:
            raise ParseError(f"path JSON must be an object with a 'vertices' key, got {data!r}")
        verts = []
        for vi, v in enumerate(data["vertices"]):
            if not isinstance(v, (list, tuple)):
                raise ParseError(f"vertex {vi} is not an array")
            coords = []
            for pair in v:
                if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                    raise ParseError(f"vertex {vi} coordinate {pair!r} is not a [re, im] pair")
                coords.append(complex(float(pair[0]), float(pair[1])))
            verts.append(tuple(coords))
        return cls(tuple(verts))


def ray_from_real(z: Sequence[complex]) -> PathCn:
    """The straight path from Re(z) to z, the canonical witness candidate."""
    tail = tuple(complex(c) for c in z)
    head = tuple(complex(c.real, 0.0) for c in tail)
    if head == tail:
        return PathCn((head,))
    return PathCn((head, tail))


@dataclass(frozen=True, slots=True)
class PathBallSpec:
    """A path together with a ball radius around its endpoint.

    radius 0 denotes the empty collection of extensions.  Targets are drawn
    from the Euclidean ball of C^n centered at the endpoint.
    """

    base: PathCn
    radius: float

    def __post_init__(self) -> None:
        if self.radius < 0.0:
            raise ValueError("radius must be >= 0")

    def is_empty(self) -> bool:
        return self.radius == 0.0

    def admits_target(self, z: Sequence[complex]) -> bool:
        if self.is_empty():
            return False
        return cdist(self.base.endpoint, z) < self.radius
