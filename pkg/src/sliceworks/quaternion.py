"""Quaternion arithmetic, the imaginary unit sphere, slice points and 2x2 quaternion matrices.

Everything here is plain 64-bit floating point: the library verifies identities
as residual bounds, so a single numeric tower keeps the kernel small.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegenerateSlicePair, NotInSliceCone, ParseError

__all__ = [
    "Quaternion",
    "ImaginaryUnit",
    "SlicePoint",
    "QMatrix2",
    "ZERO",
    "ONE",
    "UNIT_I",
    "UNIT_J",
    "UNIT_K",
    "qmul",
    "qinv",
    "slice_unit_of",
    "vandermonde2_inverse",
    "sphere_sample",
    "embed_complex",
]

# Inversion refuses anything at or below this norm ("zero" for our purposes).
_INV_FLOOR = 1e-300
# u*u == -1 must hold this tightly for a value to count as an imaginary unit.
_UNIT_TOL = 1e-12
# A component is treated as real when its imaginary norm is <= this, scaled by (1+|q|).
REAL_CUTOFF = 1e-10


@dataclass(frozen=True, slots=True)
class Quaternion:
    """An element w + x*i + y*j + z*k of the quaternions."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    # -- algebra ----------------------------------------------------------

    def __add__(self, other: "Quaternion | float | int") -> "Quaternion":
        o = _coerce(other)
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other: "Quaternion | float | int") -> "Quaternion":
        o = _coerce(other)
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other: "Quaternion | float | int") -> "Quaternion":
        return _coerce(other).__sub__(self)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other: "Quaternion | float | int") -> "Quaternion":
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        a, b = self, other
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    def __rmul__(self, other: "float | int") -> "Quaternion":
        # scalar * q only; quaternion * quaternion always routes through __mul__
        return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    __abs__ = norm

    def inverse(self) -> "Quaternion":
        n2 = self.norm_sq()
        if n2 <= _INV_FLOOR * _INV_FLOOR:
            raise ZeroDivisionError("quaternion with norm <= 1e-300 has no usable inverse")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    # -- structure --------------------------------------------------------

    @property
    def real(self) -> float:
        return self.w

    def imag(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    def imag_norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def is_real(self, cutoff: float = REAL_CUTOFF) -> bool:
        return self.imag_norm() <= cutoff * (1.0 + self.norm())

    # -- formats ----------------------------------------------------------

    def to_json(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    @classmethod
    def from_json(cls, data: Sequence[float]) -> "Quaternion":
        if not isinstance(data, (list, tuple)) or len(data) != 4:
            raise ParseError(f"quaternion JSON must be a 4-element array, got {data!r}")
        return cls(*(float(v) for v in data))

    def to_text(self) -> str:
        parts = []
        for value, axis in ((self.w, ""), (self.x, "i"), (self.y, "j"), (self.z, "k")):
            sign = "-" if value < 0 else "+"
            parts.append(f"{sign}{abs(value):.17g}{axis}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    @classmethod
    def from_text(cls, text: str) -> "Quaternion":
        return _parse_quaternion(text)

    def approx_eq(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol * (1.0 + self.norm() + other.norm())

    def __repr__(self) -> str:  # keep reprs short in test output
        return f"Quaternion({self.w:g}, {self.x:g}, {self.y:g}, {self.z:g})"


def _coerce(v: "Quaternion | float | int") -> Quaternion:
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, (int, float)):
        return Quaternion(float(v))
    raise TypeError(f"cannot treat {type(v).__name__} as a quaternion")


ZERO = Quaternion()
ONE = Quaternion(1.0)

_TERM = re.compile(
    r"""\s*(?P<sign>[+-]?)\s*
        (?:
            (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)\s*(?P<axis1>[ijk]?)
          | (?P<axis2>[ijk])
        )\s*""",
    re.VERBOSE,
)


def _parse_quaternion(text: str) -> Quaternion:
    """Parse the text form ``w+xi+yj+zk`` (terms may be omitted or reordered)."""
    comps = {"": 0.0, "i": 0.0, "j": 0.0, "k": 0.0}
    pos = 0
    found = False
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse quaternion {text!r}", line=1, column=pos + 1)
        sign = -1.0 if m.group("sign") == "-" else 1.0
        if m.group("num") is not None:
            value = sign * float(m.group("num"))
            axis = m.group("axis1")
        else:
            value = sign
            axis = m.group("axis2")
        comps[axis] += value
        found = True
        pos = m.end()
    if not found:
        raise ParseError("empty quaternion text", line=1, column=1)
    return Quaternion(comps[""], comps["i"], comps["j"], comps["k"])


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product."""
    return a * b


def qinv(q: Quaternion) -> Quaternion:
    """Multiplicative inverse; raises ZeroDivisionError at (numerical) zero."""
    return q.inverse()


@dataclass(frozen=True, slots=True)
class ImaginaryUnit:
    """A point of the sphere of imaginary units {I : I*I = -1}."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        q = self.as_quaternion()
        if (q * q + ONE).norm() > _UNIT_TOL:
            raise ValueError(f"({self.x}, {self.y}, {self.z}) does not square to -1 within 1e-12")

    @classmethod
    def from_vector(cls, x: float, y: float, z: float) -> "ImaginaryUnit":
        """Normalize a nonzero 3-vector onto the unit sphere."""
        n = math.sqrt(x * x + y * y + z * z)
        if n == 0.0:
            raise ValueError("zero vector has no direction")
        return cls(x / n, y / n, z / n)

    @classmethod
    def from_quaternion(cls, q: Quaternion, tol: float = 1e-9) -> "ImaginaryUnit":
        if abs(q.w) > tol or abs(q.imag_norm() - 1.0) > tol:
            raise ValueError(f"{q!r} is not a unit imaginary quaternion")
        return cls.from_vector(q.x, q.y, q.z)

    def as_quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def __neg__(self) -> "ImaginaryUnit":
        return ImaginaryUnit(-self.x, -self.y, -self.z)

    def __mul__(self, other: "Quaternion | ImaginaryUnit | float | int") -> Quaternion:
        if isinstance(other, ImaginaryUnit):
            other = other.as_quaternion()
        return self.as_quaternion() * other

    def __rmul__(self, other: "float | int") -> Quaternion:
        return self.as_quaternion() * other

    def dot(self, other: "ImaginaryUnit") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def distance(self, other: "ImaginaryUnit") -> float:
        return math.sqrt(
            (self.x - other.x) ** 2 + (self.y - other.y) ** 2 + (self.z - other.z) ** 2
        )

    def approx_eq(self, other: "ImaginaryUnit", tol: float = 1e-9) -> bool:
        return self.distance(other) <= tol

    def to_json(self) -> list[float]:
        return [0.0, self.x, self.y, self.z]

    @classmethod
    def from_json(cls, data: Sequence[float]) -> "ImaginaryUnit":
        if not isinstance(data, (list, tuple)) or len(data) not in (3, 4):
            raise ParseError(f"unit JSON must be a 3- or 4-element array, got {data!r}")
        vals = [float(v) for v in data]
        if len(vals) == 4:
            if abs(vals[0]) > 1e-9:
                raise ParseError(f"unit JSON has nonzero real part: {data!r}")
            vals = vals[1:]
        return cls.from_vector(*vals)

    def __repr__(self) -> str:
        return f"ImaginaryUnit({self.x:g}, {self.y:g}, {self.z:g})"


UNIT_I = ImaginaryUnit(1.0, 0.0, 0.0)
UNIT_J = ImaginaryUnit(0.0, 1.0, 0.0)
UNIT_K = ImaginaryUnit(0.0, 0.0, 1.0)


def embed_complex(z: complex, unit: ImaginaryUnit | None) -> Quaternion:
    """Send x + y*i to x + y*I, the slice embedding (real marker: unit None)."""
    if unit is None:
        return Quaternion(z.real)
    return Quaternion(z.real, z.imag * unit.x, z.imag * unit.y, z.imag * unit.z)


@dataclass(frozen=True, slots=True)
class SlicePoint:
    """A point of one slice plane: coordinates z_l = x_l + y_l * i plus the slice unit.

    ``unit is None`` is the real marker; then every coordinate is real (the
    constructor zeroes stray imaginary parts in that case).  The pair
    (coords, unit) is a *representation*: (conj(coords), -unit) names the same
    quaternionic point.
    """

    coords: tuple[complex, ...]
    unit: ImaginaryUnit | None

    def __post_init__(self) -> None:
        coords = tuple(complex(c) for c in self.coords)
        if not coords:
            raise ValueError("a slice point needs at least one coordinate")
        if self.unit is None:
            coords = tuple(complex(c.real, 0.0) for c in coords)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def real(cls, *xs: float) -> "SlicePoint":
        return cls(tuple(complex(x, 0.0) for x in xs), None)

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_real(self) -> bool:
        return self.unit is None or all(c.imag == 0.0 for c in self.coords)

    def to_quaternions(self) -> tuple[Quaternion, ...]:
        return tuple(embed_complex(c, self.unit) for c in self.coords)

    @classmethod
    def from_quaternions(cls, qs: Sequence[Quaternion]) -> "SlicePoint":
        """Canonical representation: unit = slice_unit_of(qs), coordinates along it."""
        unit = slice_unit_of(qs)
        if unit is None:
            return cls(tuple(complex(q.w, 0.0) for q in qs), None)
        coords = []
        for q in qs:
            yv = q.x * unit.x + q.y * unit.y + q.z * unit.z
            coords.append(complex(q.w, yv))
        return cls(tuple(coords), unit)

    def canonical(self) -> "SlicePoint":
        return SlicePoint.from_quaternions(self.to_quaternions())

    def same_point(self, other: "SlicePoint", tol: float = 1e-12) -> bool:
        mine, theirs = self.to_quaternions(), other.to_quaternions()
        if len(mine) != len(theirs):
            return False
        return all(a.approx_eq(b, tol) for a, b in zip(mine, theirs))


def slice_unit_of(qs: Sequence[Quaternion], cutoff: float = REAL_CUTOFF) -> ImaginaryUnit | None:
    """The imaginary unit of the slice plane shared by all components.

    Returns None for points of R^n.  The unit is normalized from the first
    non-real component; remaining components must lie in the plane it spans
    with 1, else NotInSliceCone.
    """
    unit: ImaginaryUnit | None = None
    for idx, q in enumerate(qs):
        im = q.imag_norm()
        if im <= cutoff * (1.0 + q.norm()):
            continue
        if unit is None:
            unit = ImaginaryUnit.from_vector(q.x, q.y, q.z)
            continue
        # remaining imaginary parts must be parallel (either sign) to `unit`
        proj = q.x * unit.x + q.y * unit.y + q.z * unit.z
        ox = q.x - proj * unit.x
        oy = q.y - proj * unit.y
        oz = q.z - proj * unit.z
        if math.sqrt(ox * ox + oy * oy + oz * oz) > cutoff * (1.0 + q.norm()):
            raise NotInSliceCone(
                f"component {idx} leaves the slice plane of the first non-real component"
            )
    return unit


@dataclass(frozen=True, slots=True)
class QMatrix2:
    """2x2 quaternion matrix [[a, b], [c, d]]."""

    a: Quaternion
    b: Quaternion
    c: Quaternion
    d: Quaternion

    @classmethod
    def identity(cls) -> "QMatrix2":
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def sigma(cls) -> "QMatrix2":
        """The rotation [[0, -1], [1, 0]]; squares to -identity."""
        return cls(ZERO, -ONE, ONE, ZERO)

    @classmethod
    def diagonal(cls, top: Quaternion, bottom: Quaternion) -> "QMatrix2":
        return cls(top, ZERO, ZERO, bottom)

    def __matmul__(self, other: "QMatrix2") -> "QMatrix2":
        return QMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def mul_column(self, col: tuple[Quaternion, Quaternion]) -> tuple[Quaternion, Quaternion]:
        top, bottom = col
        return (self.a * top + self.b * bottom, self.c * top + self.d * bottom)

    def __add__(self, other: "QMatrix2") -> "QMatrix2":
        return QMatrix2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __neg__(self) -> "QMatrix2":
        return QMatrix2(-self.a, -self.b, -self.c, -self.d)

    def conjugate_entries(self) -> "QMatrix2":
        return QMatrix2(
            self.a.conjugate(), self.b.conjugate(), self.c.conjugate(), self.d.conjugate()
        )

    def norm(self) -> float:
        return self.a.norm() + self.b.norm() + self.c.norm() + self.d.norm()


E1: tuple[Quaternion, Quaternion] = (ONE, ZERO)


def vandermonde2_inverse(j: ImaginaryUnit, k: ImaginaryUnit) -> QMatrix2:
    """Inverse of [[1, J], [1, K]] in closed form.

    [[1,J],[1,K]] @ result == identity; raises DegenerateSlicePair when the
    two units (nearly) coincide.
    """
    jq, kq = j.as_quaternion(), k.as_quaternion()
    diff = jq - kq
    if diff.norm() <= 1e-10:
        raise DegenerateSlicePair(f"slice units {j!r} and {k!r} coincide")
    inv_jk = diff.inverse()          # (J - K)^-1
    inv_kj = (-diff).inverse()       # (K - J)^-1
    return QMatrix2(
        -(kq * inv_jk), -(jq * inv_kj),
        inv_jk, inv_kj,
    )


_AXIS_UNITS = (UNIT_I, -UNIT_I, UNIT_J, -UNIT_J, UNIT_K, -UNIT_K)
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def sphere_sample(count: int, seed: int = 0) -> tuple[ImaginaryUnit, ...]:
    """Deterministic low-discrepancy sample of the imaginary unit sphere.

    The first six entries are +/-i, +/-j, +/-k; the remainder is a
    Fibonacci-spiral lattice whose phase is derived from the seed.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    out = list(_AXIS_UNITS[:count])
    extra = count - len(out)
    if extra > 0:
        phase = random.Random(seed).random() * 2.0 * math.pi
        for t in range(extra):
            ct = 1.0 - 2.0 * (t + 0.5) / extra
            st = math.sqrt(max(0.0, 1.0 - ct * ct))
            theta = _GOLDEN_ANGLE * t + phase
            out.append(ImaginaryUnit.from_vector(st * math.cos(theta), st * math.sin(theta), ct))
    return tuple(out)


def distinct_units(units: Iterable[ImaginaryUnit], min_gap: float = 1e-10) -> bool:
    """True when all pairs are separated by more than ``min_gap``."""
    us = list(units)
    for idx, u in enumerate(us):
        for v in us[idx + 1:]:
            if u.distance(v) <= min_gap:
                return False
    return True
