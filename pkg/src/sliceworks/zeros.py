"""Zero sets of one-variable slice-regular polynomials.

The pipeline: symmetrize to a real-coefficient polynomial, find its complex
roots, then classify each real root and each conjugate pair through the stem
of the original polynomial — a pair is either a full spherical zero, carries
one isolated zero solved from the stem, or belongs to the symmetrization
alone.  Verification helpers re-check zero inclusion and sphere propagation,
and a path-based witness packages the zero locus near a path endpoint.

Root entries carry two multiplicities: ``mult`` counts against the original
polynomial, ``fs_mult`` is the multiplicity in the symmetrization.  Counting
real roots once and every conjugate-pair entry twice, fs-multiplicities add
up to twice the degree exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .domains import SliceDomain, radius_two_units, slice_units
from .errors import IdenticallyZero, NoConvergence
from .functions import SlicePolynomial, symmetrization
from .paths import PathCn
from .quaternion import ImaginaryUnit, Quaternion, SlicePoint, embed_complex, sphere_sample

__all__ = [
    "complex_roots",
    "RealZero",
    "IsolatedZero",
    "SphereZero",
    "ZeroSet",
    "find_zeros",
    "InclusionReport",
    "zero_inclusion_check",
    "PropagationReport",
    "sphere_propagation_check",
    "AnalyticWitness",
    "analytic_witness",
    "SPHERICAL_ZERO",
    "SYMMETRIZATION_ONLY",
]

SPHERICAL_ZERO = "spherical_zero_of_f"
SYMMETRIZATION_ONLY = "symmetrization_only"

_MAX_SWEEPS = 200
_POLISH_STEPS = 3


def _poly_eval(coeffs: Sequence[float], z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _poly_eval_deriv(coeffs: Sequence[float], z: complex) -> tuple[complex, complex]:
    p = 0j
    dp = 0j
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _local_scale(coeffs: Sequence[float], z: complex) -> float:
    """Backward-error scale sum |c_k| |z|^k of an evaluation at z."""
    az = abs(z)
    total = 0.0
    power = 1.0
    for c in coeffs:
        total += abs(c) * power
        power *= az
    return total


def _derivative(coeffs: Sequence[float]) -> list[float]:
    return [k * c for k, c in enumerate(coeffs)][1:]


def _estimate_multiplicity(monic: Sequence[float], z: complex) -> int:
    """Smallest k whose k-th derivative is at O(1) of its own local scale at z.

    Approximants of an m-fold root land within the eps^(1/m) noise floor, far
    too scattered for any fixed clustering radius; the derivative magnitudes
    still read off m reliably there (|p^(k)| ~ delta^(m-k) for k < m).  The
    threshold is deliberately loose: near the noise floor the reading drifts
    a step or two high, so it is treated as the center of a candidate range
    rather than an exact answer."""
    dcoeffs = [float(c) for c in monic]
    m = 0
    while len(dcoeffs) > 1:
        m += 1
        dcoeffs = _derivative(dcoeffs)
        scale = _local_scale(dcoeffs, z)
        if scale == 0.0 or abs(_poly_eval(dcoeffs, z)) > 1e-2 * scale:
            return m
    return max(m, 1)


def _rel_residual(monic: Sequence[float], z: complex) -> float:
    return abs(_poly_eval(monic, z)) / max(_local_scale(monic, z), 1e-300)


def _polish_multiple(monic: Sequence[float], z: complex, m: int) -> complex:
    """Sharpen an m-fold root to machine precision, or return z unchanged.

    Evaluating p near an m-fold root is hopeless: every point within the
    eps^(1/m) noise ring reads as rounding noise, so neither residuals nor
    Newton steps on p can discriminate there.  The derivative tower can.
    Three stages, each valid at its own range:

    1. far field: multiplicity-accelerated Newton on p (step m p/p') pulls
       quadratically from outside the ring, where p is still trustworthy;
    2. mid field: the same accelerated step is walked down the tower, on
       p^(j) with multiplicity m-j for j = 1..m-2.  Rung j contracts the
       error to its own noise ring eps^(1/(m-j)), which sits far inside the
       basin of rung j+1, so the error shrinks rung by rung to eps^(1/2)
       no matter where in p's ring the candidate started -- a single jump
       cannot do this for large m, because the nearest foreign root of a
       high derivative is much closer than the width of p's ring;
    3. finish: Newton on p^(m-1), where the target is a simple root with an
       eps-level noise floor, converges to machine precision.

    The result is accepted only if the endpoint drives the WHOLE tower to
    its rounding floor: only the true multiplicity can do that.  A claim
    above it leaves some lower order visibly nonzero wherever the finish
    lands; a claim below it iterates at a linear rate that cannot reach the
    flatness ball in the steps allowed.  On top of that, p's own relative
    residual must not degrade.  Any claim that fails leaves z alone.

    The bar of 1e-12 is two orders above the ~2 deg eps floor a genuine
    flat point evaluates to, and well below the shadow of a wide knot of
    nearby multiple roots, whose joint rounding plateau can read as flat
    to ~1e-10 at points that are no root at all."""
    res_z = _rel_residual(monic, z)

    tower: list[list[float]] = [[float(c) for c in monic]]
    for _ in range(m - 1):
        tower.append(_derivative(tower[-1]))

    # stage 1: the pull keeps its best iterate, not its last -- inside the
    # ring the computed p is noise and a step can fling the point far out.
    # The two top tower orders judge which iterate is deepest: they stay
    # clean inside the ring, and while each vanishes near its own other
    # roots too, only the true flat point silences both at once
    def depth(w: complex) -> float:
        return max(_rel_residual(tower[-1], w), _rel_residual(tower[-2], w))

    w = z
    pulled = z
    pulled_depth = depth(z)
    for _ in range(12):
        p, dp = _poly_eval_deriv(tower[0], w)
        if p == 0 or dp == 0:
            break
        step = m * p / dp
        if not (abs(step) <= 0.5 * (1.0 + abs(w))):  # also catches nan
            break
        w = w - step
        d = depth(w)
        if d < pulled_depth:
            pulled_depth = d
            pulled = w
        if abs(step) < 1e-15 * (1.0 + abs(w)):
            break
    w = pulled

    # stage 2: walk the accelerated step down the tower; each rung is kept
    # only if it visibly deepened the point (a rung whose own ring already
    # swallows the incoming error just produces noise steps)
    for j in range(1, m - 1):
        mid = w
        for _ in range(3):
            p, dp = _poly_eval_deriv(tower[j], mid)
            if p == 0 or dp == 0:
                break
            step = (m - j) * p / dp
            if not (abs(step) <= 0.5 * (1.0 + abs(mid))):
                break
            mid = mid - step
            if abs(step) < 1e-15 * (1.0 + abs(mid)):
                break
        if depth(mid) < depth(w):
            w = mid

    # stage 3: finish on the simple root of p^(m-1)
    for _ in range(8):
        p, dp = _poly_eval_deriv(tower[m - 1], w)
        if dp == 0 or p == 0:
            break
        step = p / dp
        if not (abs(step) <= 0.1 * (1.0 + abs(w))):
            break
        w = w - step
        if abs(step) < 1e-15 * (1.0 + abs(w)):
            break
    flatness = max(_rel_residual(d, w) for d in tower)
    if flatness <= 1e-12 and _rel_residual(monic, w) <= max(res_z, 1e-13):
        return w
    return z


def _refine_candidate(monic: Sequence[float], z: complex) -> tuple[complex, int]:
    """Collapse an approximant of a multiple root to one machine-precision point.

    The flatness estimate drifts with the distance to the root, so it is only
    trusted as a yes/no signal; once it fires, every multiplicity from two to
    the degree is offered to the polish and the flattest accepted endpoint
    wins.  A wrong claim near a tight knot of multiple roots can still creep
    under the acceptance bar (the knot's joint rounding plateau is wide), but
    it bottoms out orders of magnitude above the true flat point, so ranking
    by measured flatness instead of taking the first acceptance picks the
    genuine root.  The winning claim is the verified multiplicity.  Returns
    (z, 0) when no flatness was detected or no claim passed."""
    deg = len(monic) - 1
    if _estimate_multiplicity(monic, z) <= 1:
        return z, 0
    best: tuple[float, int, complex] | None = None
    for k in range(2, deg + 1):
        w, flat = _polish_multiple(monic, z, k)
        if w != z and (best is None or flat < best[0]):
            best = (flat, k, w)
    if best is None:
        return z, 0
    return best[2], best[1]


def complex_roots(coeffs: Sequence[float]) -> list[tuple[complex, int]]:
    """All roots of a real-coefficient polynomial, conjugate-closed.

    Simultaneous Aberth-Ehrlich iteration from a Cauchy-bound circle, three
    Newton polishing steps per root, residual acceptance against the local
    evaluation scale, then clustering into multiplicities and exact conjugate
    pairing.  Coefficients are ascending; the leading one must be nonzero.
    """
    cs = [float(c) for c in coeffs]
    while cs and cs[-1] == 0.0:
        cs.pop()
    if len(cs) < 2:
        raise ValueError("root finding needs degree >= 1 and a nonzero leading coefficient")
    lead = cs[-1]
    monic = [c / lead for c in cs]
    deg = len(monic) - 1

    if deg == 1:
        root = complex(-monic[0], 0.0)
        return [(root, 1)]

    bound = 1.0 + max(abs(c) for c in monic[:-1])
    zs = [
        bound * complex(math.cos(2.0 * math.pi * m / deg + 0.4),
                        math.sin(2.0 * math.pi * m / deg + 0.4))
        for m in range(deg)
    ]

    # once a multiplicity cluster reaches its eps^(1/m) noise ring the sweep
    # churns there indefinitely (computed p is noise-dominated inside the
    # ring), so the final state is arbitrary; keep the best configuration
    # seen instead of the last one
    best_zs = list(zs)
    best_err = math.inf
    for _ in range(_MAX_SWEEPS):
        shift = 0.0
        for i in range(deg):
            p, dp = _poly_eval_deriv(monic, zs[i])
            if p == 0:
                continue
            if dp == 0:
                zs[i] += 1e-8 * (1.0 + abs(zs[i]))
                shift = math.inf
                continue
            newton = p / dp
            repulsion = sum(
                1.0 / (zs[i] - zs[j]) for j in range(deg) if j != i and zs[i] != zs[j]
            )
            denom = 1.0 - newton * repulsion
            step = newton if abs(denom) < 1e-300 else newton / denom
            zs[i] -= step
            shift = max(shift, abs(step) / (1.0 + abs(zs[i])))
        err = max(_rel_residual(monic, z) for z in zs)
        if err < best_err:
            best_err = err
            best_zs = list(zs)
        if shift < 1e-14:
            break
    zs = best_zs

    for i in range(deg):
        for _ in range(_POLISH_STEPS):
            p, dp = _poly_eval_deriv(monic, zs[i])
            if dp == 0 or p == 0:
                break
            step = p / dp
            if abs(step) > 0.1 * (1.0 + abs(zs[i])):
                break
            zs[i] -= step

    # collapse every copy of a multiple root to one machine-precision point:
    # Aberth scatters m-fold roots on an eps^(1/m) circle, which defeats the
    # clustering radius below and can leave |p| above the acceptance bound
    refined = [_refine_candidate(monic, z) for z in zs]

    for z, _ in refined:
        if abs(_poly_eval(cs, z)) >= 1e-10 * _local_scale(cs, z):
            raise NoConvergence(
                f"root candidate {z:.6g} has residual above the acceptance bound"
            )

    # cluster into multiplicities; a collapsed candidate carries a verified
    # multiplicity with it, and that claim outranks the head count -- the
    # sweep does not share candidates evenly between equal clusters, so
    # counting members over-reports one root while starving its twin
    clusters: list[list[Any]] = []  # [sum, count, claims]
    for z, claim in sorted(refined, key=lambda wc: (wc[0].real, wc[0].imag)):
        for cluster in clusters:
            center = cluster[0] / cluster[1]
            if abs(z - center) <= 1e-6 * (1.0 + abs(z)):
                cluster[0] += z
                cluster[1] += 1
                if claim:
                    cluster[2].add(claim)
                break
        else:
            clusters.append([z, 1, {claim} if claim else set()])

    centers = []
    for total, count, claims in clusters:
        center = total / count
        if len(claims) > 1:
            raise NoConvergence(
                f"inconsistent multiplicity claims {sorted(claims)} near {center:.6g}"
            )
        if claims:
            mult = claims.pop()
        else:
            mult = count
            if count > 1:
                center, _ = _polish_multiple(monic, center, count)
        if abs(center.imag) <= 1e-8 * (1.0 + abs(center)):
            center = complex(center.real, 0.0)
        centers.append((center, mult))

    # real coefficients force conjugate-paired zeros, so a detection whose
    # mirror received no candidates at all is repaired by synthesis; the
    # conservation check below arbitrates any doubt
    out: list[tuple[complex, int]] = []
    upper = [(z, m) for z, m in centers if z.imag > 0.0]
    lower = [(z, m) for z, m in centers if z.imag < 0.0]
    out.extend((z, m) for z, m in centers if z.imag == 0.0)
    for z, m in upper:
        partner = None
        for idx, (w, mw) in enumerate(lower):
            if mw == m and abs(w - z.conjugate()) <= 1e-6 * (1.0 + abs(z)):
                partner = idx
                break
        if partner is not None:
            w, _ = lower.pop(partner)
            paired = 0.5 * (z + w.conjugate())
        else:
            paired = z
        out.append((paired, m))
        out.append((paired.conjugate(), m))
    for w, mw in lower:
        out.append((w.conjugate(), mw))
        out.append((w, mw))
    if sum(m for _, m in out) != deg:
        raise NoConvergence("clustered multiplicities do not sum to the degree")
    out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return out


@dataclass(frozen=True, slots=True)
class RealZero:
    value: float
    mult: int
    fs_mult: int

    def to_json(self) -> dict[str, Any]:
        return {"value": self.value, "mult": self.mult, "fs_mult": self.fs_mult}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "RealZero":
        return cls(float(data["value"]), int(data["mult"]), int(data["fs_mult"]))


@dataclass(frozen=True, slots=True)
class IsolatedZero:
    point: Quaternion
    sphere: tuple[float, float]
    mult: int
    fs_mult: int

    def to_json(self) -> dict[str, Any]:
        return {
            "point": self.point.to_json(),
            "sphere": [self.sphere[0], self.sphere[1]],
            "mult": self.mult,
            "fs_mult": self.fs_mult,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "IsolatedZero":
        sphere = data["sphere"]
        return cls(
            Quaternion.from_json(data["point"]),
            (float(sphere[0]), float(sphere[1])),
            int(data["mult"]),
            int(data["fs_mult"]),
        )


@dataclass(frozen=True, slots=True)
class SphereZero:
    x: float
    y: float
    mult: int
    fs_mult: int
    kind: str

    def to_json(self) -> dict[str, Any]:
        return {
            "x": self.x,
            "y": self.y,
            "mult": self.mult,
            "fs_mult": self.fs_mult,
            "kind": self.kind,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "SphereZero":
        return cls(
            float(data["x"]),
            float(data["y"]),
            int(data["mult"]),
            int(data["fs_mult"]),
            str(data["kind"]),
        )


@dataclass(frozen=True)
class ZeroSet:
    real_roots: tuple[RealZero, ...]
    isolated: tuple[IsolatedZero, ...]
    spheres: tuple[SphereZero, ...]
    degree: int

    def total_multiplicity(self) -> int:
        """fs-multiplicities with every conjugate-pair entry counted twice."""
        total = sum(r.fs_mult for r in self.real_roots)
        total += 2 * sum(z.fs_mult for z in self.isolated)
        total += 2 * sum(s.fs_mult for s in self.spheres)
        return total

    def count_conserved(self) -> bool:
        return self.total_multiplicity() == 2 * self.degree

    def to_json(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "real_roots": [r.to_json() for r in self.real_roots],
            "isolated": [z.to_json() for z in self.isolated],
            "spheres": [s.to_json() for s in self.spheres],
            "total_fs_multiplicity": self.total_multiplicity(),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "ZeroSet":
        return cls(
            tuple(RealZero.from_json(r) for r in data["real_roots"]),
            tuple(IsolatedZero.from_json(z) for z in data["isolated"]),
            tuple(SphereZero.from_json(s) for s in data["spheres"]),
            int(data["degree"]),
        )


def find_zeros(
    f: SlicePolynomial,
    domain: SliceDomain | None = None,
    seed: int = 0,
) -> ZeroSet:
    """Zeros of a one-variable polynomial via its symmetrization.

    Real roots are kept when they lie in the domain and annihilate f; each
    conjugate pair is classified through the stem at x+yi: both components
    tiny means the whole sphere consists of zeros, an invertible second
    component solves F1 + I F2 = 0 for the unique unit, anything else stays a
    zero of the symmetrization only.
    """
    if f.n != 1:
        raise ValueError("zero finding is one-variable only")
    if f.is_zero():
        raise IdenticallyZero("every point is a zero of the zero polynomial")
    if f.degree() < 1:
        raise ValueError("zero finding needs degree >= 1")
    dom = domain or SliceDomain.whole_space(1)
    scale = f.coeff_norm_sum()
    tol_root = 1e-8 * scale
    tol_sph = 1e-9 * scale

    fs = symmetrization(f)
    p_coeffs = [c.w for c in fs.one_var_coeffs()]
    roots = complex_roots(p_coeffs)

    reals: list[RealZero] = []
    isolated: list[IsolatedZero] = []
    spheres: list[SphereZero] = []
    for z, m in roots:
        if z.imag < 0.0:
            continue
        if z.imag == 0.0:
            x = z.real
            if not dom.contains(SlicePoint.real(x)):
                continue
            if f.at_quaternion(Quaternion(x)).norm() >= tol_root:
                continue
            reals.append(RealZero(x, (m + 1) // 2, m))
            continue
        x, y = z.real, z.imag
        stem = f.stem_at((complex(x, y),))
        pair_mult = max(1, m // 2)
        if stem.F1.norm() < tol_sph and stem.F2.norm() < tol_sph:
            spheres.append(SphereZero(x, y, pair_mult, m, SPHERICAL_ZERO))
            continue
        if stem.F2.norm() >= tol_sph:
            candidate = -(stem.F1 * stem.F2.inverse())
            unit_defect = abs(candidate.norm() - 1.0)
            if abs(candidate.w) < 1e-8 and unit_defect < 1e-8:
                unit = ImaginaryUnit.from_vector(candidate.x, candidate.y, candidate.z)
                point = embed_complex(complex(x, y), unit)
                if f.at_quaternion(point).norm() < tol_root:
                    isolated.append(IsolatedZero(point, (x, y), m, m))
                    continue
        spheres.append(SphereZero(x, y, pair_mult, m, SYMMETRIZATION_ONLY))

    reals.sort(key=lambda r: r.value)
    isolated.sort(key=lambda z: z.sphere)
    spheres.sort(key=lambda s: (s.x, s.y))
    return ZeroSet(tuple(reals), tuple(isolated), tuple(spheres), f.degree())


@dataclass(frozen=True)
class InclusionReport:
    max_residual: float
    tolerance: float
    checked: int

    @property
    def ok(self) -> bool:
        return self.max_residual < self.tolerance

    def to_json(self) -> dict[str, Any]:
        return {
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "checked": self.checked,
            "ok": self.ok,
        }


def zero_inclusion_check(
    f: SlicePolynomial,
    zeroset: ZeroSet,
    omega: SliceDomain | None = None,
    unit_count: int = 8,
    seed: int = 0,
) -> InclusionReport:
    """Every zero of f must annihilate the symmetrization as well.

    With a domain the check is scoped to it: zeros (and sphere sample points)
    outside are skipped rather than evaluated.
    """
    fs = symmetrization(f)
    tol = 1e-6 * fs.coeff_norm_sum()
    worst = 0.0
    checked = 0
    units = sphere_sample(unit_count, seed)
    for r in zeroset.real_roots:
        if omega is not None and not omega.contains(SlicePoint.real(r.value)):
            continue
        worst = max(worst, fs.at_quaternion(Quaternion(r.value)).norm())
        checked += 1
    for iso in zeroset.isolated:
        x, y = iso.sphere
        unit = ImaginaryUnit.from_vector(iso.point.x, iso.point.y, iso.point.z)
        if omega is not None and not omega.contains(SlicePoint((complex(x, y),), unit)):
            continue
        worst = max(worst, fs.at_quaternion(iso.point).norm())
        checked += 1
    for s in zeroset.spheres:
        if s.kind != SPHERICAL_ZERO:
            continue
        for u in units:
            if omega is not None and not omega.contains(SlicePoint((complex(s.x, s.y),), u)):
                continue
            point = embed_complex(complex(s.x, s.y), u)
            worst = max(worst, fs.at_quaternion(point).norm())
            checked += 1
    return InclusionReport(worst, tol, checked)


@dataclass(frozen=True)
class PropagationReport:
    max_residual: float
    tolerance: float
    units_checked: int

    @property
    def ok(self) -> bool:
        return self.max_residual < self.tolerance

    def to_json(self) -> dict[str, Any]:
        return {
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "units_checked": self.units_checked,
            "ok": self.ok,
        }


def sphere_propagation_check(
    f: SlicePolynomial,
    sphere: "SphereZero | tuple[float, float]",
    units: Iterable[ImaginaryUnit],
) -> PropagationReport:
    """One zero of the symmetrization on a sphere propagates to the whole sphere."""
    if isinstance(sphere, SphereZero):
        x, y = sphere.x, sphere.y
    else:
        x, y = float(sphere[0]), float(sphere[1])
    fs = symmetrization(f)
    tol = 1e-6 * fs.coeff_norm_sum()
    worst = 0.0
    count = 0
    for u in units:
        point = embed_complex(complex(x, y), u)
        worst = max(worst, fs.at_quaternion(point).norm())
        count += 1
    return PropagationReport(worst, tol, count)


@dataclass(frozen=True)
class AnalyticWitness:
    """A ball around a path endpoint in which the symmetrization's zero locus
    is cut out by one complex polynomial."""

    gamma: PathCn
    r: float
    per_unit: tuple[tuple[ImaginaryUnit, float], ...]
    e_coeffs: tuple[float, ...]
    containment_checked: int
    containment_max_residual: float
    whole_domain: bool = False

    @classmethod
    def whole_domain_marker(cls, gamma: PathCn) -> "AnalyticWitness":
        """Marker for the degenerate branch where the zero set is everything."""
        return cls(gamma, math.inf, (), (), 0, 0.0, True)

    def to_json(self) -> dict[str, Any]:
        return {
            "whole_domain": self.whole_domain,
            "r": self.r,
            "per_unit": [
                {"unit": [u.x, u.y, u.z], "radius": ru} for u, ru in self.per_unit
            ],
            "E": list(self.e_coeffs),
            "containment_checked": self.containment_checked,
            "containment_max_residual": self.containment_max_residual,
        }


def analytic_witness(
    f: SlicePolynomial,
    domain: SliceDomain,
    gamma: PathCn,
    seed: int = 0,
) -> AnalyticWitness:
    """Build the per-path witness: the two-unit radius, per-unit radii, and the
    symmetrization read as a complex polynomial whose zeros absorb the locus.

    Raises IdenticallyZero for the zero function, whose zero set is the whole
    domain (use the whole-domain marker in that branch).
    """
    if f.n != 1:
        raise ValueError("path witnesses are one-variable only")
    if f.is_zero():
        raise IdenticallyZero("the zero set is the whole domain")
    fs = symmetrization(f)
    e_coeffs = tuple(c.w for c in fs.one_var_coeffs())
    if not any(c != 0.0 for c in e_coeffs):
        raise IdenticallyZero("the symmetrization vanishes identically")

    r = min(radius_two_units(domain, gamma, seed), 1.0)
    endpoint = gamma.endpoint[0]
    admissible = slice_units(domain, gamma, seed)
    per_unit: list[tuple[ImaginaryUnit, float]] = []
    for u in admissible.units:
        depth = domain.trace_region(u).depth(gamma.endpoint)
        per_unit.append((u, min(r, depth)))

    worst = 0.0
    checked = 0
    if len(e_coeffs) > 1:
        roots = complex_roots(list(e_coeffs))
        radii = [ru for _, ru in per_unit] or [r]
        biggest = max(radii)
        for z, _m in roots:
            for w in (z, z.conjugate()):
                if abs(w - endpoint) < biggest:
                    resid = abs(_poly_eval(list(e_coeffs), w))
                    worst = max(worst, resid / max(_local_scale(list(e_coeffs), w), 1e-300))
                    checked += 1
    return AnalyticWitness(
        gamma, r, tuple(per_unit), e_coeffs, checked, worst, False
    )
