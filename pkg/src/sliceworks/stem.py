"""Path-indexed stem values.

A stem is a column (F1, F2) of quaternions attached to a path; evaluating it
on the slice of a unit I gives F1 + I*F2.  This module covers recovery of the
column from two slice values, the reflected/conjugate/symmetrized stems, stems
at points reached by witness paths, and a finite-difference holomorphy check
of path-indexed stem families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .domains import SliceDomain, find_witness_path
from .errors import NonRealSymmetrization, NoWitnessPath, StepOutOfRange
from .paths import PathCn
from .quaternion import (
    ZERO,
    ImaginaryUnit,
    Quaternion,
    SlicePoint,
    vandermonde2_inverse,
)

__all__ = [
    "StemValue",
    "PathStem",
    "stem_from_two_slices",
    "eval_stem",
    "reflect_stem",
    "conj_stem",
    "sym_stem",
    "star_stems",
    "real_endpoint_stem",
    "point_stem",
    "HolomorphyReport",
    "check_stem_holomorphic",
]


@dataclass(frozen=True, slots=True)
class StemValue:
    """The column (F1, F2); value on the slice of I is F1 + I*F2."""

    F1: Quaternion
    F2: Quaternion

    def norm(self) -> float:
        return self.F1.norm() + self.F2.norm()

    def __add__(self, other: "StemValue") -> "StemValue":
        return StemValue(self.F1 + other.F1, self.F2 + other.F2)

    def __sub__(self, other: "StemValue") -> "StemValue":
        return StemValue(self.F1 - other.F1, self.F2 - other.F2)

    def scale(self, s: float) -> "StemValue":
        return StemValue(self.F1 * s, self.F2 * s)

    def to_json(self) -> dict[str, Any]:
        return {"F1": self.F1.to_json(), "F2": self.F2.to_json()}

    @classmethod
    def from_json(cls, data: Any) -> "StemValue":
        return cls(Quaternion.from_json(data["F1"]), Quaternion.from_json(data["F2"]))


def stem_from_two_slices(
    vj: Quaternion, vk: Quaternion, j: ImaginaryUnit, k: ImaginaryUnit
) -> StemValue:
    """Solve [[1, J], [1, K]] (F1, F2)^T = (vJ, vK)^T for the stem column."""
    inv = vandermonde2_inverse(j, k)
    f1, f2 = inv.mul_column((vj, vk))
    return StemValue(f1, f2)


def eval_stem(value: StemValue, unit: ImaginaryUnit | None) -> Quaternion:
    """Row (1, I) against the column; the real marker None reads off F1."""
    if unit is None:
        return value.F1
    return value.F1 + unit * value.F2


def reflect_stem(value: StemValue) -> StemValue:
    """Stem of the conjugated path: (F1, -F2)."""
    return StemValue(value.F1, -value.F2)


def conj_stem(value: StemValue) -> StemValue:
    """Componentwise quaternion conjugation."""
    return StemValue(value.F1.conjugate(), value.F2.conjugate())


def sym_stem(value: StemValue) -> StemValue:
    """Symmetrized stem (|F1|^2 - |F2|^2, 2 Re(conj(F2) F1)); always real.

    The imaginary parts cancel pairwise in exact float arithmetic; the
    realness guard only fires on corrupted input (NaN and friends).
    """
    f1, f2 = value.F1, value.F2
    top = f1.conjugate() * f1 - f2.conjugate() * f2
    half = f2.conjugate() * f1
    bottom = half + half.conjugate()
    scale = (f1.norm() + f2.norm()) ** 2
    tol = 1e-9 * scale
    # "not <=" rather than ">" so NaN components trip the guard too
    if not (top.imag_norm() <= tol) or not (bottom.imag_norm() <= tol):
        raise NonRealSymmetrization(
            f"symmetrized stem has imaginary residue beyond {tol:g}"
        )
    return StemValue(Quaternion(top.w), Quaternion(bottom.w))


def real_endpoint_stem(value: Quaternion) -> StemValue:
    """Stem of any path ending in R^n: (value, 0)."""
    return StemValue(value, ZERO)


def star_stems(f: StemValue, g: StemValue) -> StemValue:
    """Pointwise stem product (F1 G1 - F2 G2, F1 G2 + F2 G1).

    This is the column of (F1 + F2 sigma)(G1 + G2 sigma) applied to e1, with
    sigma the rotation [[0, -1], [1, 0]].
    """
    return StemValue(f.F1 * g.F1 - f.F2 * g.F2, f.F1 * g.F2 + f.F2 * g.F1)


@dataclass(frozen=True)
class PathStem:
    """An evaluable family path -> StemValue over a declared domain.

    All stems constructed by this library are endpoint-determined; the flag
    records that simplification while the interface still takes whole paths.
    """

    evaluator: Callable[[PathCn], StemValue]
    domain: SliceDomain | None = None
    endpoint_determined: bool = True

    def at(self, path: PathCn) -> StemValue:
        return self.evaluator(path)

    @classmethod
    def from_endpoint_map(
        cls,
        fn: Callable[[tuple[complex, ...]], StemValue],
        domain: SliceDomain | None = None,
    ) -> "PathStem":
        return cls(lambda path: fn(path.endpoint), domain, True)


def point_stem(
    stem: PathStem,
    domain: SliceDomain,
    q: SlicePoint,
    seed: int = 0,
    max_detours: int = 16,
) -> StemValue:
    """Stem at a point: (f(q), 0) on R^n, else the stem along a witness path.

    The witness search walks a straight ray from Re(q) and then detours
    through sampled real points of the domain; exhausting the candidates
    raises NoWitnessPath without claiming the point is unreachable.
    """
    if q.is_real():
        constant = PathCn((q.coords,))
        value = stem.at(constant)
        return StemValue(value.F1, value.F2)
    anchors = domain.real_points(count=max_detours, seed=seed)
    path = find_witness_path(domain, q, anchors, max_detours=max_detours)
    if path is None:
        raise NoWitnessPath(
            f"no sampled path from R^n reaches {q!r} inside the domain"
        )
    return stem.at(path)


_SIGMA_OFFSETS = 8


def _apply_sigma(col: StemValue) -> StemValue:
    """The rotation sigma = [[0, -1], [1, 0]] applied to a stem column."""
    return StemValue(-col.F2, col.F1)


@dataclass(frozen=True)
class HolomorphyReport:
    max_residual: float
    residuals: tuple[float, ...]
    step: float
    ball_radius: float

    def to_json(self) -> dict[str, Any]:
        return {
            "max_residual": self.max_residual,
            "residuals": list(self.residuals),
            "step": self.step,
            "ball_radius": self.ball_radius,
        }


def check_stem_holomorphic(
    stem: PathStem, path: PathCn, r: float, h: float
) -> HolomorphyReport:
    """Central-difference residual of (d/dx + sigma d/dy)/2 on path extensions.

    Evaluates the derivative per coordinate at the endpoint and at eight
    offsets of length r/2, for the stem of the extended path.  A holomorphic
    stem family yields residuals at the truncation error of the stencil.
    """
    if not 0.0 < h < r / 4.0:
        raise StepOutOfRange(f"step {h} outside (0, r/4) for ball radius {r}")
    endpoint = path.endpoint
    n = path.n

    def stem_at_target(z: Sequence[complex]) -> StemValue:
        return stem.at(path.extend(z))

    bases: list[tuple[complex, ...]] = [endpoint]
    for m in range(_SIGMA_OFFSETS):
        theta = 2.0 * math.pi * m / _SIGMA_OFFSETS
        offset = 0.5 * r * complex(math.cos(theta), math.sin(theta))
        coord = m % n
        bases.append(
            tuple(c + offset if i == coord else c for i, c in enumerate(endpoint))
        )

    residuals: list[float] = []
    for base in bases:
        for coord in range(n):
            def shifted(delta: complex) -> tuple[complex, ...]:
                return tuple(
                    c + delta if i == coord else c for i, c in enumerate(base)
                )

            gx = (stem_at_target(shifted(h)) - stem_at_target(shifted(-h))).scale(
                1.0 / (2.0 * h)
            )
            gy = (
                stem_at_target(shifted(1j * h)) - stem_at_target(shifted(-1j * h))
            ).scale(1.0 / (2.0 * h))
            resid = (gx + _apply_sigma(gy)).scale(0.5)
            residuals.append(resid.norm())
    return HolomorphyReport(max(residuals), tuple(residuals), h, r)
