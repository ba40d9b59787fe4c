"""Concrete slice functions and their algebra.

Three function classes — polynomials in n quaternionic variables, truncated
one-variable power series, and two-slice-glued functions — share one
interface: slice evaluation at a SlicePoint, an endpoint-determined stem, and
a PathStem view.  On top of them sit the *-product, conjugation,
symmetrization, extension of two slice values to a third slice, and sampled
checks of slice regularity and slice preservation.

Coefficients always sit on the right of powers; the *-product convolves
coefficients in factor order, matching the stem-level product under which the
variable is central.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from .domains import (
    SliceDomain,
    VIOLATED,
    check_real_path_connected,
    check_stem_preserving,
    domain_from_json,
    domain_to_json,
)
from .errors import (
    DomainCheckFailed,
    IncompatibleDomains,
    NonRealSymmetrization,
    OutOfDomain,
    ParseError,
    PreconditionUnverified,
)
from .paths import PathCn
from .quaternion import (
    ONE,
    ZERO,
    ImaginaryUnit,
    Quaternion,
    SlicePoint,
    embed_complex,
    sphere_sample,
    vandermonde2_inverse,
)
from .stem import PathStem, StemValue, eval_stem, star_stems

__all__ = [
    "SlicePolynomial",
    "SlicePowerSeries",
    "TwoSliceGlued",
    "StarComposite",
    "FnHandle",
    "evaluate",
    "star_product",
    "conjugation",
    "symmetrization",
    "representation_extend",
    "SliceRegularityReport",
    "check_slice_regular",
    "SlicePreservingReport",
    "check_slice_preserving",
    "function_from_json",
    "function_to_json",
]

ExpIndex = tuple[int, ...]


def _as_quaternion(v: "Quaternion | float | int") -> Quaternion:
    return v if isinstance(v, Quaternion) else Quaternion(float(v))


class SlicePolynomial:
    """Polynomial q^k * a_k in n quaternionic variables, right coefficients.

    Evaluation at a slice point computes each power inside the complex slice
    plane, embeds the result along the point's unit and multiplies the
    coefficient on the right.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: "dict[ExpIndex, Quaternion] | None" = None):
        if n < 1:
            raise ValueError("variable count must be >= 1")
        cleaned: dict[ExpIndex, Quaternion] = {}
        for exp, coef in (coeffs or {}).items():
            key = tuple(int(e) for e in exp)
            if len(key) != n or any(e < 0 for e in key):
                raise ValueError(f"bad exponent {exp!r} for {n} variables")
            q = _as_quaternion(coef)
            if q.norm() != 0.0:
                cleaned[key] = q
        self.n = n
        self.coeffs = cleaned

    # -- constructors ------------------------------------------------------

    @classmethod
    def one_var(cls, coeffs: Sequence["Quaternion | float"]) -> "SlicePolynomial":
        """Polynomial of one variable from the ascending coefficient list."""
        return cls(1, {(k,): _as_quaternion(c) for k, c in enumerate(coeffs)})

    @classmethod
    def constant(cls, value: "Quaternion | float", n: int = 1) -> "SlicePolynomial":
        return cls(n, {(0,) * n: _as_quaternion(value)})

    @classmethod
    def identity(cls, n: int = 1, variable: int = 0) -> "SlicePolynomial":
        exp = tuple(1 if i == variable else 0 for i in range(n))
        return cls(n, {exp: ONE})

    @classmethod
    def linear_factor(cls, root: Quaternion) -> "SlicePolynomial":
        """The one-variable factor q - a."""
        return cls(1, {(1,): ONE, (0,): -root})

    # -- structure ---------------------------------------------------------

    def terms(self) -> list[tuple[ExpIndex, Quaternion]]:
        return sorted(self.coeffs.items())

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(exp) for exp in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff_norm_sum(self) -> float:
        return sum(c.norm() for c in self.coeffs.values())

    def coeff(self, exp: ExpIndex) -> Quaternion:
        return self.coeffs.get(tuple(exp), ZERO)

    def one_var_coeffs(self) -> list[Quaternion]:
        """Ascending coefficient list; one-variable polynomials only."""
        if self.n != 1:
            raise ValueError("coefficient list is defined for one variable only")
        deg = self.degree()
        return [self.coeff((k,)) for k in range(max(deg, -1) + 1)]

    def distance(self, other: "SlicePolynomial") -> float:
        if self.n != other.n:
            raise ValueError("cannot compare polynomials in different variable counts")
        keys = set(self.coeffs) | set(other.coeffs)
        return max((self.coeff(k) - other.coeff(k)).norm() for k in keys) if keys else 0.0

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "SlicePolynomial") -> "SlicePolynomial":
        if self.n != other.n:
            raise IncompatibleDomains("polynomials have different variable counts")
        out = dict(self.coeffs)
        for exp, coef in other.coeffs.items():
            out[exp] = out.get(exp, ZERO) + coef
        return SlicePolynomial(self.n, out)

    def __neg__(self) -> "SlicePolynomial":
        return SlicePolynomial(self.n, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "SlicePolynomial") -> "SlicePolynomial":
        return self + (-other)

    def scale_right(self, c: "Quaternion | float") -> "SlicePolynomial":
        q = _as_quaternion(c)
        return SlicePolynomial(self.n, {e: a * q for e, a in self.coeffs.items()})

    def star(self, other: "SlicePolynomial") -> "SlicePolynomial":
        """Coefficient convolution c_m = sum_{j+k=m} a_j b_k, order preserved."""
        if self.n != other.n:
            raise IncompatibleDomains("polynomials have different variable counts")
        out: dict[ExpIndex, Quaternion] = {}
        for e1, a in self.coeffs.items():
            for e2, b in other.coeffs.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                out[key] = out.get(key, ZERO) + a * b
        return SlicePolynomial(self.n, out)

    def conj_coeffs(self) -> "SlicePolynomial":
        return SlicePolynomial(self.n, {e: c.conjugate() for e, c in self.coeffs.items()})

    def max_coeff_imag(self) -> float:
        return max((c.imag_norm() for c in self.coeffs.values()), default=0.0)

    def realified(self) -> "SlicePolynomial":
        return SlicePolynomial(self.n, {e: Quaternion(c.w) for e, c in self.coeffs.items()})

    def has_real_coeffs(self, tol: float = 0.0) -> bool:
        return self.max_coeff_imag() <= tol

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, q: SlicePoint) -> Quaternion:
        if q.n != self.n:
            raise ValueError(f"point has {q.n} coordinates, polynomial has {self.n}")
        total = ZERO
        for exp, coef in self.terms():
            power = complex(1.0, 0.0)
            for z, k in zip(q.coords, exp):
                if k:
                    power *= z ** k
            total = total + embed_complex(power, q.unit) * coef
        return total

    def at_quaternion(self, q: Quaternion) -> Quaternion:
        """One-variable convenience: evaluate at a quaternion point."""
        return self.evaluate(SlicePoint.from_quaternions((q,)))

    def stem_at(self, z: Sequence[complex]) -> StemValue:
        zs = tuple(complex(c) for c in z)
        if len(zs) != self.n:
            raise ValueError(f"endpoint has {len(zs)} coordinates, polynomial has {self.n}")
        f1 = ZERO
        f2 = ZERO
        for exp, coef in self.terms():
            power = complex(1.0, 0.0)
            for c, k in zip(zs, exp):
                if k:
                    power *= c ** k
            f1 = f1 + coef * power.real
            f2 = f2 + coef * power.imag
        return StemValue(f1, f2)

    @property
    def domain(self) -> SliceDomain | None:
        return None

    def path_stem(self, domain: SliceDomain | None = None) -> PathStem:
        return PathStem.from_endpoint_map(self.stem_at, domain)

    # -- formats -------------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        return {
            "type": "poly",
            "n": self.n,
            "terms": [
                {"exp": list(exp), "coef": coef.to_json()} for exp, coef in self.terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Any) -> "SlicePolynomial":
        try:
            n = int(data["n"])
            coeffs: dict[ExpIndex, Quaternion] = {}
            for term in data["terms"]:
                exp = tuple(int(e) for e in term["exp"])
                coeffs[exp] = coeffs.get(exp, ZERO) + Quaternion.from_json(term["coef"])
            return cls(n, coeffs)
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed polynomial JSON: {exc}") from exc

    def __repr__(self) -> str:
        return f"SlicePolynomial(n={self.n}, terms={len(self.coeffs)}, deg={self.degree()})"


DEFAULT_SERIES_ORDER = 64


class SlicePowerSeries:
    """Truncated one-variable power series around a real center.

    Evaluation refuses points with |z - center| >= 0.95 * radius so the
    truncation error stays below the library's verification tolerances.
    """

    __slots__ = ("center", "coeffs", "radius", "tail_coeff_cap")

    n = 1

    def __init__(
        self,
        center: float,
        coeffs: Sequence["Quaternion | float"],
        radius: float,
        tail_coeff_cap: float | None = None,
    ):
        if radius <= 0.0:
            raise ValueError("series radius must be positive")
        qs = [_as_quaternion(c) for c in coeffs[: DEFAULT_SERIES_ORDER + 1]]
        while qs and qs[-1].norm() == 0.0:
            qs.pop()
        self.center = float(center)
        self.coeffs = tuple(qs)
        self.radius = float(radius)
        self.tail_coeff_cap = tail_coeff_cap

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def truncation_error(self, z: complex) -> float | None:
        """Geometric tail bound when a uniform coefficient cap is declared."""
        if self.tail_coeff_cap is None:
            return None
        s = abs(complex(z) - self.center)
        if s >= 1.0:
            return math.inf
        return self.tail_coeff_cap * s ** (self.order + 1) / (1.0 - s)

    def _guard(self, z: complex) -> None:
        if abs(z - self.center) >= 0.95 * self.radius:
            raise OutOfDomain(
                f"|z - {self.center:g}| = {abs(z - self.center):g} is outside "
                f"0.95 * radius = {0.95 * self.radius:g}"
            )

    def evaluate(self, q: SlicePoint) -> Quaternion:
        if q.n != 1:
            raise ValueError("series take one variable")
        z = q.coords[0]
        self._guard(z)
        total = ZERO
        power = complex(1.0, 0.0)
        w = z - self.center
        for coef in self.coeffs:
            total = total + embed_complex(power, q.unit) * coef
            power *= w
        return total

    def at_quaternion(self, q: Quaternion) -> Quaternion:
        return self.evaluate(SlicePoint.from_quaternions((q,)))

    def stem_at(self, z: Sequence[complex]) -> StemValue:
        zz = complex(z[0])
        self._guard(zz)
        f1 = ZERO
        f2 = ZERO
        power = complex(1.0, 0.0)
        w = zz - self.center
        for coef in self.coeffs:
            f1 = f1 + coef * power.real
            f2 = f2 + coef * power.imag
            power *= w
        return StemValue(f1, f2)

    @property
    def domain(self) -> SliceDomain:
        return SliceDomain.axial_disk(complex(self.center, 0.0), self.radius)

    def path_stem(self, domain: SliceDomain | None = None) -> PathStem:
        return PathStem.from_endpoint_map(self.stem_at, domain or self.domain)

    def star(self, other: "SlicePowerSeries") -> "SlicePowerSeries":
        if self.center != other.center:
            raise IncompatibleDomains("series centers differ")
        order = min(self.order, other.order) if self.coeffs and other.coeffs else -1
        out = [ZERO] * (order + 1)
        for j, a in enumerate(self.coeffs):
            for k, b in enumerate(other.coeffs):
                if j + k <= order:
                    out[j + k] = out[j + k] + a * b
        return SlicePowerSeries(self.center, out, min(self.radius, other.radius))

    def conj_coeffs(self) -> "SlicePowerSeries":
        return SlicePowerSeries(
            self.center, [c.conjugate() for c in self.coeffs], self.radius,
            self.tail_coeff_cap,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "type": "series",
            "center": self.center,
            "radius": self.radius,
            "coeffs": [c.to_json() for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: Any) -> "SlicePowerSeries":
        try:
            return cls(
                float(data["center"]),
                [Quaternion.from_json(c) for c in data["coeffs"]],
                float(data["radius"]),
            )
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed series JSON: {exc}") from exc

    def __repr__(self) -> str:
        return (
            f"SlicePowerSeries(center={self.center:g}, order={self.order}, "
            f"radius={self.radius:g})"
        )


def _eval_complex_poly(coeffs: Sequence[Quaternion], z: complex,
                       unit: ImaginaryUnit | None) -> Quaternion:
    """Sum of embedded powers of z times right coefficients."""
    total = ZERO
    power = complex(1.0, 0.0)
    for coef in coeffs:
        total = total + embed_complex(power, unit) * coef
        power *= z
    return total


class TwoSliceGlued:
    """Function known on two slices, extended everywhere by the two-slice stem.

    The per-slice evaluators are polynomials in one complex variable with
    quaternion coefficients; they must agree on sampled real points of the
    domain at construction.  Evaluation canonicalizes the representation of
    the target point (imaginary coordinate >= 0) so values are well defined,
    then extends the two reference values to the target slice.
    """

    __slots__ = ("J", "K", "hJ", "hK", "omega")

    n = 1

    def __init__(
        self,
        j: ImaginaryUnit,
        k: ImaginaryUnit,
        h_j: Sequence["Quaternion | float"],
        h_k: Sequence["Quaternion | float"],
        omega: SliceDomain,
        check_seed: int = 0,
    ):
        if j.distance(k) <= 1e-10:
            raise IncompatibleDomains("the two reference slices coincide")
        if omega.n != 1:
            raise IncompatibleDomains("two-slice gluing is one-variable only")
        self.J = j
        self.K = k
        self.hJ = tuple(_as_quaternion(c) for c in h_j)
        self.hK = tuple(_as_quaternion(c) for c in h_k)
        self.omega = omega
        for p in omega.real_points(count=32, seed=check_seed):
            x = p[0]
            vj = _eval_complex_poly(self.hJ, x, None)
            vk = _eval_complex_poly(self.hK, x, None)
            if (vj - vk).norm() > 1e-10 * (1.0 + vj.norm() + vk.norm()):
                raise IncompatibleDomains(
                    f"slice evaluators disagree at the real point {x.real:g}"
                )

    @classmethod
    def from_polynomial(
        cls,
        poly: SlicePolynomial,
        j: ImaginaryUnit,
        k: ImaginaryUnit,
        omega: SliceDomain,
    ) -> "TwoSliceGlued":
        coeffs = poly.one_var_coeffs()
        return cls(j, k, coeffs, coeffs, omega)

    @property
    def domain(self) -> SliceDomain:
        return self.omega

    def evaluate(self, q: SlicePoint) -> Quaternion:
        if q.n != 1:
            raise ValueError("two-slice functions take one variable")
        canon = q.canonical()
        if not self.omega.contains(canon):
            raise OutOfDomain(f"{canon!r} is outside the declared domain")
        z = canon.coords[0]
        if canon.unit is None:
            return _eval_complex_poly(self.hJ, z, None)
        for ref in (self.J, self.K):
            if not self.omega.contains(SlicePoint((z,), ref)):
                raise OutOfDomain(
                    f"reference point on slice {ref!r} is outside the domain"
                )
        vj = _eval_complex_poly(self.hJ, z, self.J)
        vk = _eval_complex_poly(self.hK, z, self.K)
        return representation_extend(vj, vk, self.J, self.K, canon.unit)

    def at_quaternion(self, q: Quaternion) -> Quaternion:
        return self.evaluate(SlicePoint.from_quaternions((q,)))

    def stem_at(self, z: Sequence[complex]) -> StemValue:
        zz = complex(z[0])
        vj = _eval_complex_poly(self.hJ, zz, self.J)
        vk = _eval_complex_poly(self.hK, zz, self.K)
        inv = vandermonde2_inverse(self.J, self.K)
        f1, f2 = inv.mul_column((vj, vk))
        return StemValue(f1, f2)

    def path_stem(self, domain: SliceDomain | None = None) -> PathStem:
        return PathStem.from_endpoint_map(self.stem_at, domain or self.omega)

    def conj_coeffs(self) -> "TwoSliceGlued":
        return TwoSliceGlued(
            self.J,
            self.K,
            [c.conjugate() for c in self.hJ],
            [c.conjugate() for c in self.hK],
            self.omega,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "type": "glued",
            "J": [self.J.x, self.J.y, self.J.z],
            "K": [self.K.x, self.K.y, self.K.z],
            "hJ": [c.to_json() for c in self.hJ],
            "hK": [c.to_json() for c in self.hK],
            "domain": domain_to_json(self.omega),
        }

    @classmethod
    def from_json(cls, data: Any) -> "TwoSliceGlued":
        try:
            return cls(
                ImaginaryUnit.from_json(data["J"]),
                ImaginaryUnit.from_json(data["K"]),
                [Quaternion.from_json(c) for c in data["hJ"]],
                [Quaternion.from_json(c) for c in data["hK"]],
                domain_from_json(data["domain"]),
            )
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed glued-function JSON: {exc}") from exc

    def __repr__(self) -> str:
        return f"TwoSliceGlued(J={self.J!r}, K={self.K!r}, deg={len(self.hJ) - 1})"


class StarComposite:
    """Deferred *-product of two slice functions, evaluated through stems.

    The stem of the product is the componentwise stem product
    (F1 G1 - F2 G2, F1 G2 + F2 G1); evaluation reads the product stem on the
    canonical representation of the target point.
    """

    __slots__ = ("left", "right", "n")

    def __init__(self, left: "FnHandle", right: "FnHandle"):
        if left.n != right.n:
            raise IncompatibleDomains("factors have different variable counts")
        self.left = left
        self.right = right
        self.n = left.n

    @property
    def domain(self) -> SliceDomain | None:
        return self.left.domain or self.right.domain

    def stem_at(self, z: Sequence[complex]) -> StemValue:
        return star_stems(self.left.stem_at(z), self.right.stem_at(z))

    def evaluate(self, q: SlicePoint) -> Quaternion:
        canon = q.canonical()
        return eval_stem(self.stem_at(canon.coords), canon.unit)

    def at_quaternion(self, q: Quaternion) -> Quaternion:
        return self.evaluate(SlicePoint.from_quaternions((q,)))

    def path_stem(self, domain: SliceDomain | None = None) -> PathStem:
        return PathStem.from_endpoint_map(self.stem_at, domain or self.domain)

    def to_json(self) -> dict[str, Any]:
        return {
            "type": "star",
            "left": function_to_json(self.left),
            "right": function_to_json(self.right),
        }

    def __repr__(self) -> str:
        return f"StarComposite({self.left!r}, {self.right!r})"


FnHandle = "SlicePolynomial | SlicePowerSeries | TwoSliceGlued | StarComposite"


def evaluate(f, q: SlicePoint) -> Quaternion:
    """Slice evaluation of any function handle."""
    return f.evaluate(q)


def star_product(f, g):
    """The *-product; closed forms for like classes, a stem composite otherwise."""
    if isinstance(f, SlicePolynomial) and isinstance(g, SlicePolynomial):
        return f.star(g)
    if isinstance(f, SlicePowerSeries) and isinstance(g, SlicePowerSeries):
        return f.star(g)
    if getattr(f, "n", None) != getattr(g, "n", None):
        raise IncompatibleDomains("factors have different variable counts")
    return StarComposite(f, g)


def _warn_or_check(f, omega: SliceDomain | None, verify: bool, samples: int, seed: int) -> None:
    if omega is None:
        return
    if not verify:
        warnings.warn(
            "domain preconditions (real-path-connected, stem-preserving) "
            "were not verified; pass verify=True to run the witness checks",
            PreconditionUnverified,
            stacklevel=3,
        )
        return
    rpc = check_real_path_connected(omega, samples=samples, seed=seed)
    if rpc.verdict == VIOLATED:
        raise DomainCheckFailed("the domain is not real-path-connected")
    inner = getattr(f, "domain", None) or omega
    sp = check_stem_preserving(inner, omega, samples=samples, seed=seed)
    if sp.verdict == VIOLATED:
        raise DomainCheckFailed("the function domain is not stem-preserving here")


def conjugation(f, omega: SliceDomain | None = None, *, verify: bool = False,
                samples: int = 16, seed: int = 0):
    """Slice conjugation: componentwise quaternion conjugation of the stem.

    For polynomials and series this is coefficient conjugation; for glued
    functions both per-slice evaluators are conjugated; a star composite
    conjugates to the reversed composite of the conjugates.
    """
    _warn_or_check(f, omega, verify, samples, seed)
    if isinstance(f, StarComposite):
        return StarComposite(
            conjugation(f.right), conjugation(f.left)
        )
    return f.conj_coeffs()


def symmetrization(f, omega: SliceDomain | None = None, *, verify: bool = False,
                   samples: int = 16, seed: int = 0):
    """The slice-preserving product f^c * f.

    Polynomial output has its provably real coefficients realified; a
    coefficient with imaginary residue beyond 1e-9 of the squared coefficient
    scale signals upstream corruption and raises.
    """
    _warn_or_check(f, omega, verify, samples, seed)
    fc = conjugation(f)
    if isinstance(f, SlicePolynomial):
        prod = fc.star(f)
        scale = f.coeff_norm_sum() ** 2
        if prod.max_coeff_imag() > 1e-9 * scale:
            raise NonRealSymmetrization(
                "symmetrized coefficients are not real within tolerance"
            )
        return prod.realified()
    if isinstance(f, SlicePowerSeries):
        prod = fc.star(f)
        scale = sum(c.norm() for c in f.coeffs) ** 2
        if max((c.imag_norm() for c in prod.coeffs), default=0.0) > 1e-9 * scale:
            raise NonRealSymmetrization(
                "symmetrized coefficients are not real within tolerance"
            )
        return SlicePowerSeries(
            prod.center, [Quaternion(c.w) for c in prod.coeffs], prod.radius
        )
    return StarComposite(fc, f)


def representation_extend(
    vj: Quaternion,
    vk: Quaternion,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
    i: ImaginaryUnit | None,
) -> Quaternion:
    """Extend values on two distinct slices to a third: (1, I) [[1,J],[1,K]]^-1 (vJ, vK)^T."""
    inv = vandermonde2_inverse(j, k)
    f1, f2 = inv.mul_column((vj, vk))
    if i is None:
        return f1
    return f1 + i * f2


@dataclass(frozen=True)
class SliceRegularityReport:
    max_residual: float
    residuals: tuple[float, ...]
    step: float

    def to_json(self) -> dict[str, Any]:
        return {
            "max_residual": self.max_residual,
            "residuals": list(self.residuals),
            "step": self.step,
        }


def check_slice_regular(f, probes: Iterable[SlicePoint], h: float = 1e-5) -> SliceRegularityReport:
    """Central-difference residual of the per-slice Cauchy-Riemann operator.

    For each probe point q = z^I and coordinate l the residual is
    |(d/dx_l + I d/dy_l) f restricted to the slice of I| / 2.
    """
    if h <= 0.0:
        raise ValueError("step must be positive")
    residuals: list[float] = []
    for q in probes:
        unit = q.unit
        if unit is None:
            unit = sphere_sample(1)[0]
        for coord in range(q.n):
            def at(delta: complex) -> Quaternion:
                coords = tuple(
                    c + delta if i == coord else c for i, c in enumerate(q.coords)
                )
                return f.evaluate(SlicePoint(coords, unit))

            gx = (at(complex(h, 0.0)) - at(complex(-h, 0.0))) * (1.0 / (2.0 * h))
            gy = (at(complex(0.0, h)) - at(complex(0.0, -h))) * (1.0 / (2.0 * h))
            resid = (gx + unit * gy) * 0.5
            residuals.append(resid.norm())
    if not residuals:
        raise ValueError("no probe points supplied")
    return SliceRegularityReport(max(residuals), tuple(residuals), h)


@dataclass(frozen=True)
class SlicePreservingReport:
    preserving: bool
    max_off_slice: float
    failures: tuple[SlicePoint, ...]

    def to_json(self) -> dict[str, Any]:
        return {"preserving": self.preserving, "max_off_slice": self.max_off_slice}


def check_slice_preserving(f, probes: Iterable[SlicePoint]) -> SlicePreservingReport:
    """Does f map each sampled slice into its own complex plane?

    Measures the component of f(q) orthogonal to span{1, I} against
    1e-9 * (1 + |f(q)|).
    """
    worst = 0.0
    failures: list[SlicePoint] = []
    count = 0
    for q in probes:
        count += 1
        unit = q.unit
        if unit is None:
            continue
        v = f.evaluate(q)
        proj = v.x * unit.x + v.y * unit.y + v.z * unit.z
        ox = v.x - proj * unit.x
        oy = v.y - proj * unit.y
        oz = v.z - proj * unit.z
        off = math.sqrt(ox * ox + oy * oy + oz * oz)
        worst = max(worst, off)
        if off >= 1e-9 * (1.0 + v.norm()):
            failures.append(q)
    if count == 0:
        raise ValueError("no probe points supplied")
    return SlicePreservingReport(not failures, worst, tuple(failures))


def function_to_json(f) -> dict[str, Any]:
    return f.to_json()


def function_from_json(data: Any):
    if not isinstance(data, dict) or "type" not in data:
        raise ParseError(f"function JSON must be an object with a 'type' key, got {data!r}")
    kind = data["type"]
    if kind == "poly":
        return SlicePolynomial.from_json(data)
    if kind == "series":
        return SlicePowerSeries.from_json(data)
    if kind == "glued":
        return TwoSliceGlued.from_json(data)
    if kind == "star":
        return StarComposite(
            function_from_json(data["left"]), function_from_json(data["right"])
        )
    raise ParseError(f"unknown function type {kind!r}")
