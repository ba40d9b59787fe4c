"""Brute-force oracles and the randomized property suite.

The oracles deliberately avoid every simplified formula in the library: the
star oracle multiplies literal 2x2 matrices, the sphere oracle scans unit
samples exhaustively.  The suite runs one named property per acceptance
criterion; a config fully determines every random draw, so reports serialize
to identical bytes across runs (timings are kept out of the serialization).
"""

from __future__ import annotations

import json
import math
import random
import time
import warnings
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .domains import (
    VIOLATED,
    Attachment,
    Disk,
    SliceDomain,
    check_stem_preserving,
    radius_for_units,
    radius_path_ball,
    radius_two_units,
    slice_units,
)
from .functions import (
    SlicePolynomial,
    conjugation,
    representation_extend,
    star_product,
    symmetrization,
)
from .paths import PathCn, ray_from_real
from .quaternion import (
    ONE,
    QMatrix2,
    E1,
    ImaginaryUnit,
    Quaternion,
    SlicePoint,
    UNIT_I,
    UNIT_J,
    ZERO,
    embed_complex,
    sphere_sample,
)
from .stem import PathStem, StemValue, check_stem_holomorphic
from .zeros import SPHERICAL_ZERO, find_zeros, sphere_propagation_check, zero_inclusion_check

__all__ = [
    "OracleConfig",
    "PropertyResult",
    "SuiteReport",
    "oracle_star_pointwise",
    "oracle_sphere_scan",
    "run_property_suite",
    "serialize_report",
    "PROPERTY_ORDER",
]


@dataclass(frozen=True)
class OracleConfig:
    """Deterministic knobs for every randomized suite.

    ``trials`` scales the per-property case counts relative to their nominal
    sizes (trials=1000 runs the full nominal counts, trials=0 runs nothing
    and passes vacuously with a warning).
    """

    seed: int = 0
    trials: int = 1000
    degree_cap: int = 8
    coeff_norm_cap: float = 4.0
    unit_samples: int = 64
    fd_step: float = 1e-5

    def scaled(self, nominal: int) -> int:
        return max(0, round(nominal * self.trials / 1000))

    def rng(self, name: str) -> random.Random:
        # string seeding hashes via sha512: stable across processes and platforms
        return random.Random(f"{self.seed}:{name}")

    def to_json(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "degree_cap": self.degree_cap,
            "coeff_norm_cap": self.coeff_norm_cap,
            "unit_samples": self.unit_samples,
            "fd_step": self.fd_step,
        }


def oracle_star_pointwise(f: StemValue, g: StemValue) -> StemValue:
    """Literal matrix form of the pointwise product: (F1 I + F2 s)(G1 I + G2 s) e1.

    Only QMatrix2 products are used; the closed-form convolution never enters.
    """
    sigma = QMatrix2.sigma()
    ident = QMatrix2.identity()

    def scaled(matrix: QMatrix2, q: Quaternion) -> QMatrix2:
        return QMatrix2(q * matrix.a, q * matrix.b, q * matrix.c, q * matrix.d)

    mf = scaled(ident, f.F1) + scaled(sigma, f.F2)
    mg = scaled(ident, g.F1) + scaled(sigma, g.F2)
    top, bottom = (mf @ mg).mul_column(E1)
    return StemValue(top, bottom)


def oracle_sphere_scan(
    f, x: float, y: float, samples: int = 4096, seed: int = 0
) -> tuple[float, ImaginaryUnit]:
    """Exhaustive |f(x + y I)| scan over a sphere sample; returns (min, argmin)."""
    if y <= 0.0:
        raise ValueError("scan spheres have y > 0")
    best = math.inf
    best_unit = UNIT_I
    for u in sphere_sample(samples, seed):
        v = f.evaluate(SlicePoint((complex(x, y),), u))
        norm = v.norm()
        if norm < best:
            best = norm
            best_unit = u
    return best, best_unit


# -- random generators --------------------------------------------------------


def _rand_unit(rng: random.Random) -> ImaginaryUnit:
    while True:
        v = [rng.gauss(0.0, 1.0) for _ in range(3)]
        n = math.sqrt(sum(c * c for c in v))
        if n > 1e-6:
            return ImaginaryUnit(v[0] / n, v[1] / n, v[2] / n)


def _rand_distinct_units(rng: random.Random, count: int,
                         min_gap: float = 0.05) -> list[ImaginaryUnit]:
    units: list[ImaginaryUnit] = []
    while len(units) < count:
        u = _rand_unit(rng)
        if all(u.distance(v) > min_gap for v in units):
            units.append(u)
    return units


def _rand_quaternion(rng: random.Random, cap: float) -> Quaternion:
    return Quaternion(*(rng.uniform(-cap, cap) * 0.5 for _ in range(4)))


def _rand_poly(rng: random.Random, degree_cap: int, coeff_cap: float,
               min_degree: int = 1) -> SlicePolynomial:
    deg = rng.randint(min_degree, max(min_degree, degree_cap))
    coeffs = [_rand_quaternion(rng, coeff_cap) for _ in range(deg + 1)]
    while coeffs[-1].norm() < 1e-3:
        coeffs[-1] = _rand_quaternion(rng, coeff_cap)
    return SlicePolynomial.one_var(coeffs)


def _rand_endpoint(rng: random.Random, span: float = 2.0) -> complex:
    return complex(rng.uniform(-span, span), rng.uniform(-span, span))


def _poly_local_scale(f: SlicePolynomial, z: complex) -> float:
    az = abs(z)
    total = 1.0
    for (k,), coef in f.coeffs.items():
        total += coef.norm() * az ** k
    return total


# -- properties ---------------------------------------------------------------


@dataclass
class PropertyResult:
    name: str
    trials: int
    max_residual: float
    tolerance: float
    passed: bool
    note: str = ""
    duration: float = field(default=0.0, compare=False)

    def to_json(self) -> dict[str, Any]:
        # durations stay out so reports are byte-reproducible
        return {
            "property": self.name,
            "trials": self.trials,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "note": self.note,
        }


def _vacuous(name: str) -> PropertyResult:
    return PropertyResult(name, 0, 0.0, 0.0, True, "vacuous: trials=0")


def _prop_representation_formula(config: OracleConfig) -> PropertyResult:
    rng = config.rng("representation_formula")
    n = config.scaled(1000)
    worst = 0.0
    for _ in range(n):
        f = _rand_poly(rng, config.degree_cap, config.coeff_norm_cap)
        z = _rand_endpoint(rng)
        i, j, k = _rand_distinct_units(rng, 3)
        vj = f.evaluate(SlicePoint((z,), j))
        vk = f.evaluate(SlicePoint((z,), k))
        got = representation_extend(vj, vk, j, k, i)
        want = f.evaluate(SlicePoint((z,), i))
        worst = max(worst, (got - want).norm() / _poly_local_scale(f, z))
    return PropertyResult("representation_formula", n, worst, 1e-9, worst < 1e-9)


def _prop_symmetrization_realness(config: OracleConfig) -> PropertyResult:
    rng = config.rng("symmetrization_realness")
    n = config.scaled(500)
    worst = 0.0
    for _ in range(n):
        f = _rand_poly(rng, config.degree_cap, config.coeff_norm_cap)
        raw = f.conj_coeffs().star(f)
        scale = f.coeff_norm_sum() ** 2
        worst = max(worst, raw.max_coeff_imag() / scale)
        symmetrization(f)  # must not raise
    return PropertyResult("symmetrization_realness", n, worst, 1e-9, worst < 1e-9)


def _prop_real_point_identities(config: OracleConfig) -> PropertyResult:
    rng = config.rng("real_point_identities")
    n = config.scaled(200)
    probes = 100
    worst = 0.0
    for _ in range(n):
        f = _rand_poly(rng, config.degree_cap, config.coeff_norm_cap)
        fc = conjugation(f)
        fs = symmetrization(f)
        for _ in range(probes):
            x = rng.uniform(-3.0, 3.0)
            p = SlicePoint.real(x)
            fx = f.evaluate(p)
            s = _poly_local_scale(f, complex(x, 0.0))
            r1 = (fc.evaluate(p) - fx.conjugate()).norm() / s
            r2 = (fs.evaluate(p) - Quaternion(fx.norm_sq())).norm() / (s * s)
            worst = max(worst, r1, r2)
    return PropertyResult("real_point_identities", n * probes, worst, 1e-9, worst < 1e-9)


def _rand_star_factors(rng: random.Random, cap: float, max_factors: int = 6
                       ) -> tuple[SlicePolynomial, list[Quaternion]]:
    count = rng.randint(1, max_factors)
    roots = [_rand_quaternion(rng, cap) for _ in range(count)]
    f = SlicePolynomial.linear_factor(roots[0])
    for a in roots[1:]:
        f = f.star(SlicePolynomial.linear_factor(a))
    return f, roots


def _prop_zero_inclusion(config: OracleConfig) -> PropertyResult:
    rng = config.rng("zero_inclusion")
    n = config.scaled(200)
    worst = 0.0
    for _ in range(n):
        f, _roots = _rand_star_factors(rng, config.coeff_norm_cap)
        zs = find_zeros(f)
        rep = zero_inclusion_check(f, zs, unit_count=8, seed=config.seed)
        scale = symmetrization(f).coeff_norm_sum()
        worst = max(worst, rep.max_residual / scale)
    return PropertyResult("zero_inclusion", n, worst, 1e-6, worst < 1e-6)


def _prop_sphere_propagation(config: OracleConfig) -> PropertyResult:
    rng = config.rng("sphere_propagation")
    n = config.scaled(200)
    units = sphere_sample(config.unit_samples, config.seed)
    worst = 0.0
    spheres_seen = 0
    for _ in range(n):
        f, _roots = _rand_star_factors(rng, config.coeff_norm_cap)
        zs = find_zeros(f)
        scale = symmetrization(f).coeff_norm_sum()
        for s in zs.spheres:
            spheres_seen += 1
            rep = sphere_propagation_check(f, s, units)
            worst = max(worst, rep.max_residual / scale)
        for iso in zs.isolated:
            spheres_seen += 1
            rep = sphere_propagation_check(f, iso.sphere, units)
            worst = max(worst, rep.max_residual / scale)
    return PropertyResult(
        "sphere_propagation", n, worst, 1e-6, worst < 1e-6,
        note=f"spheres_checked={spheres_seen}",
    )


def _canonical_cases() -> list[tuple[str, SlicePolynomial]]:
    q2p1 = SlicePolynomial.one_var([1.0, 0.0, 1.0])
    qi_qj = SlicePolynomial.linear_factor(Quaternion(0, 1, 0, 0)).star(
        SlicePolynomial.linear_factor(Quaternion(0, 0, 1, 0))
    )
    q2m1 = SlicePolynomial.one_var([-1.0, 0.0, 1.0])
    a = Quaternion(1, 2, 0, 0)
    pair = SlicePolynomial.linear_factor(a).star(
        SlicePolynomial.linear_factor(a.conjugate())
    )
    return [("q^2+1", q2p1), ("(q-i)*(q-j)", qi_qj), ("q^2-1", q2m1),
            ("(q-(1+2i))*(q-(1-2i))", pair)]


def _prop_canonical_roots(config: OracleConfig) -> PropertyResult:
    cases = _canonical_cases()
    worst = 0.0
    shapes_ok = True
    notes: list[str] = []
    probe_units = sphere_sample(16, config.seed)

    def f_residual_on_sphere(f: SlicePolynomial, x: float, y: float) -> float:
        return max(
            f.at_quaternion(embed_complex(complex(x, y), u)).norm() for u in probe_units
        )

    for name, f in cases:
        zs = find_zeros(f)
        scale = f.coeff_norm_sum()
        if name == "q^2+1":
            ok = (
                len(zs.spheres) == 1 and not zs.real_roots and not zs.isolated
                and zs.spheres[0].kind == SPHERICAL_ZERO
                and abs(zs.spheres[0].x) < 1e-8 and abs(zs.spheres[0].y - 1) < 1e-8
            )
            resid = f_residual_on_sphere(f, zs.spheres[0].x, zs.spheres[0].y) if ok else math.inf
        elif name == "(q-i)*(q-j)":
            ok = (
                len(zs.isolated) == 1 and not zs.real_roots and not zs.spheres
                and (zs.isolated[0].point - Quaternion(0, 1, 0, 0)).norm() < 1e-8
            )
            resid = f.at_quaternion(zs.isolated[0].point).norm() if ok else math.inf
        elif name == "q^2-1":
            ok = (
                len(zs.real_roots) == 2 and not zs.isolated and not zs.spheres
                and abs(zs.real_roots[0].value + 1) < 1e-8
                and abs(zs.real_roots[1].value - 1) < 1e-8
            )
            resid = (
                max(f.at_quaternion(Quaternion(r.value)).norm() for r in zs.real_roots)
                if ok else math.inf
            )
        else:
            ok = (
                len(zs.spheres) == 1 and not zs.real_roots and not zs.isolated
                and zs.spheres[0].kind == SPHERICAL_ZERO
                and abs(zs.spheres[0].x - 1) < 1e-8 and abs(zs.spheres[0].y - 2) < 1e-8
            )
            resid = f_residual_on_sphere(f, zs.spheres[0].x, zs.spheres[0].y) if ok else math.inf
        shapes_ok = shapes_ok and ok
        if not ok:
            notes.append(f"shape mismatch: {name}")
        worst = max(worst, resid / scale if math.isfinite(resid) else math.inf)
    return PropertyResult(
        "canonical_roots", len(cases), worst, 1e-8,
        shapes_ok and worst < 1e-8, note="; ".join(notes),
    )


def _prop_star_algebra(config: OracleConfig) -> PropertyResult:
    rng = config.rng("star_algebra")
    n = config.scaled(200)
    one = SlicePolynomial.constant(1.0)
    worst_assoc = 0.0
    worst_unit = 0.0
    for _ in range(n):
        f = _rand_poly(rng, 4, config.coeff_norm_cap)
        g = _rand_poly(rng, 4, config.coeff_norm_cap)
        h = _rand_poly(rng, 4, config.coeff_norm_cap)
        worst_assoc = max(worst_assoc, f.star(g).star(h).distance(f.star(g.star(h))))
        worst_unit = max(worst_unit, one.star(f).distance(f), f.star(one).distance(f))

    # oracle agreement: assemble product coefficients monomial by monomial
    # through the literal matrix display only
    rng2 = config.rng("star_algebra_oracle")
    worst_oracle = 0.0
    for _ in range(max(1, n // 4) if n else 0):
        f = _rand_poly(rng2, config.degree_cap, config.coeff_norm_cap)
        g = _rand_poly(rng2, config.degree_cap, config.coeff_norm_cap)
        assembled: dict[tuple[int, ...], Quaternion] = {}
        for (j,), a in f.coeffs.items():
            for (k,), b in g.coeffs.items():
                value = oracle_star_pointwise(StemValue(a, ZERO), StemValue(b, ZERO))
                key = (j + k,)
                assembled[key] = assembled.get(key, ZERO) + value.F1
        oracle_poly = SlicePolynomial(1, assembled)
        prod = f.star(g)
        denom = 1.0 + f.coeff_norm_sum() * g.coeff_norm_sum()
        worst_oracle = max(worst_oracle, prod.distance(oracle_poly) / denom)
    passed = worst_assoc < 1e-10 and worst_unit < 1e-10 and worst_oracle < 1e-12
    return PropertyResult(
        "star_algebra", n, worst_assoc, 1e-10, passed,
        note=f"unit_law={worst_unit:.3g}; oracle={worst_oracle:.3g} (tol 1e-12)",
    )


def _anti_holomorphic_stem() -> PathStem:
    """Stem of the per-slice model x + y I -> x - y I: (Re z, -Im z)."""
    return PathStem.from_endpoint_map(
        lambda z: StemValue(Quaternion(z[0].real), Quaternion(-z[0].imag))
    )


def _prop_stem_holomorphy(config: OracleConfig) -> PropertyResult:
    rng = config.rng("stem_holomorphy")
    n = config.scaled(100)
    r = 0.5
    worst = 0.0
    for _ in range(n):
        f = _rand_poly(rng, config.degree_cap, config.coeff_norm_cap)
        # keep |z| small enough that the finite-difference step resolves the
        # third derivative of a degree-8 polynomial below the residual bound
        z = _rand_endpoint(rng, span=0.8)
        gamma = ray_from_real((z,))
        for poly in (f, conjugation(f)):
            rep = check_stem_holomorphic(poly.path_stem(), gamma, r, config.fd_step)
            worst = max(worst, rep.max_residual)
    anti = check_stem_holomorphic(
        _anti_holomorphic_stem(), ray_from_real((complex(0.3, 0.4),)), r, config.fd_step
    )
    passed = worst < 1e-6 and anti.max_residual > 0.5
    return PropertyResult(
        "stem_holomorphy", n, worst, 1e-6, passed,
        note=f"anti_model_residual={anti.max_residual:.6g} (must exceed 0.5)",
    )


def _attachment_domain() -> SliceDomain:
    """Unit axial disk with one slice enlarged toward 2i along the i-slice."""
    return SliceDomain(
        Disk(0j, 1.0), (Attachment(UNIT_I, Disk(2j, 1.5)),)
    )


def _prop_domain_geometry(config: OracleConfig) -> PropertyResult:
    worst = 0.0
    notes: list[str] = []
    ball = SliceDomain.axial_disk(0j, 2.0)
    gamma = PathCn(((0j,), (complex(0.6, 0.8),)))

    r_units = radius_for_units(ball, gamma, [UNIT_I, UNIT_J])
    worst = max(worst, abs(r_units - 1.0))
    r_two = radius_two_units(ball, gamma, seed=config.seed)
    worst = max(worst, abs(r_two - 1.0))
    boundary = PathCn(((0j,), (2.0 + 0j,)))
    worst = max(worst, abs(radius_for_units(ball, boundary, [UNIT_I])))

    center_path = PathCn(((0j,),))
    r_ball = radius_path_ball(ball, center_path, seed=config.seed)
    ball_err = abs(r_ball - 2.0) / 2.0
    ball_ok = ball_err < 1e-4

    dom = _attachment_domain()
    reach = PathCn(((0j,), (2j,)))
    su = slice_units(dom, reach, seed=config.seed)
    units_ok = (not su.all_sphere) and len(su.units) == 1 and su.units[0].distance(UNIT_I) < 1e-9

    sp = check_stem_preserving(dom, dom, samples=24, seed=config.seed)
    violated = sp.verdict == VIOLATED
    replayed = False
    if violated and sp.witnesses:
        w = sp.witnesses[0]
        if w.path is not None:
            again = slice_units(dom, w.path, seed=config.seed)
            replayed = (not again.all_sphere) and len(again.units) <= 1
    if not ball_ok:
        notes.append(f"path-ball radius error {ball_err:.2e}")
    if not units_ok:
        notes.append("attachment slice-unit sample is not exactly {i}")
    if not (violated and replayed):
        notes.append("stem-preserving counterexample not flagged/replayed")
    passed = worst < 1e-12 and ball_ok and units_ok and violated and replayed
    return PropertyResult(
        "domain_geometry", 6, worst, 1e-12, passed, note="; ".join(notes),
    )


def _prop_determinism(config: OracleConfig) -> PropertyResult:
    sub = OracleConfig(
        seed=config.seed,
        trials=min(config.trials, 50),
        degree_cap=config.degree_cap,
        coeff_norm_cap=config.coeff_norm_cap,
        unit_samples=config.unit_samples,
        fd_step=config.fd_step,
    )
    names = ["representation_formula", "star_algebra", "canonical_roots"]
    first = serialize_report(run_property_suite(sub, only=names))
    second = serialize_report(run_property_suite(sub, only=names))
    same = first == second
    return PropertyResult(
        "determinism", 2, 0.0 if same else 1.0, 0.5, same,
        note="double-run of a sub-suite compared byte for byte",
    )


_PROPERTIES: dict[str, Callable[[OracleConfig], PropertyResult]] = {
    "representation_formula": _prop_representation_formula,
    "symmetrization_realness": _prop_symmetrization_realness,
    "real_point_identities": _prop_real_point_identities,
    "zero_inclusion": _prop_zero_inclusion,
    "sphere_propagation": _prop_sphere_propagation,
    "canonical_roots": _prop_canonical_roots,
    "star_algebra": _prop_star_algebra,
    "stem_holomorphy": _prop_stem_holomorphy,
    "domain_geometry": _prop_domain_geometry,
    "determinism": _prop_determinism,
}

PROPERTY_ORDER: tuple[str, ...] = tuple(_PROPERTIES)


@dataclass
class SuiteReport:
    config: OracleConfig
    results: tuple[PropertyResult, ...]
    duration: float = field(default=0.0, compare=False)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": "sliceworks/1",
            "config": self.config.to_json(),
            "properties": [r.to_json() for r in self.results],
            "all_passed": self.all_passed,
        }


def run_property_suite(
    config: OracleConfig | None = None,
    only: Sequence[str] | None = None,
) -> SuiteReport:
    """Run the named properties (all by default) under one deterministic config."""
    cfg = config or OracleConfig()
    names = list(only) if only is not None else list(PROPERTY_ORDER)
    unknown = [n for n in names if n not in _PROPERTIES]
    if unknown:
        raise ValueError(f"unknown properties: {', '.join(unknown)}")
    start = time.perf_counter()
    results: list[PropertyResult] = []
    if cfg.trials <= 0:
        warnings.warn(
            "trials=0: every property passes vacuously", UserWarning, stacklevel=2
        )
        results = [_vacuous(n) for n in names]
    else:
        for name in names:
            t0 = time.perf_counter()
            result = _PROPERTIES[name](cfg)
            result.duration = time.perf_counter() - t0
            results.append(result)
    return SuiteReport(cfg, tuple(results), time.perf_counter() - start)


def serialize_report(report: SuiteReport) -> bytes:
    """Canonical bytes of a report; excludes all timing data."""
    return json.dumps(report.to_json(), sort_keys=True, separators=(",", ":")).encode()
