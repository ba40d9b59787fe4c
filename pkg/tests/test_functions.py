"""Function handles: evaluation, *-products, conjugation, symmetrization, checks."""

import math
import random

import pytest

import brute
from sliceworks import (
    Attachment,
    Disk,
    DomainCheckFailed,
    ImaginaryUnit,
    IncompatibleDomains,
    OutOfDomain,
    ParseError,
    PreconditionUnverified,
    Quaternion,
    SliceDomain,
    SlicePoint,
    SlicePolynomial,
    SlicePowerSeries,
    StarComposite,
    TwoSliceGlued,
    UNIT_I,
    UNIT_J,
    UNIT_K,
    check_slice_preserving,
    check_slice_regular,
    conjugation,
    embed_complex,
    evaluate,
    function_from_json,
    function_to_json,
    representation_extend,
    star_product,
    symmetrization,
)

Q = Quaternion
I = Q(0, 1, 0, 0)
J = Q(0, 0, 1, 0)
K = Q(0, 0, 0, 1)


def _rand_quat(rng, cap=2.0):
    return Q(*(rng.uniform(-cap, cap) for _ in range(4)))


def _rand_unit(rng):
    while True:
        v = [rng.gauss(0, 1) for _ in range(3)]
        if math.sqrt(sum(x * x for x in v)) > 1e-6:
            return ImaginaryUnit.from_vector(*v)


def _rand_poly(rng, max_deg=6):
    deg = rng.randrange(1, max_deg + 1)
    return SlicePolynomial.one_var([_rand_quat(rng) for _ in range(deg + 1)])


def _qvec(q):
    return [q.w, q.x, q.y, q.z]


# -- evaluation ----------------------------------------------------------------


def test_polynomial_evaluation_matches_quaternion_arithmetic():
    rng = random.Random(31)
    for _ in range(200):
        f = _rand_poly(rng)
        q = _rand_quat(rng)
        expected = brute.poly_eval([_qvec(c) for c in f.one_var_coeffs()], _qvec(q))
        got = f.at_quaternion(q)
        scale = max(1.0, f.coeff_norm_sum() * max(1.0, q.norm()) ** f.degree())
        assert got.approx_eq(Q(*expected), 1e-10 * scale)


def test_frozen_product_values_on_units():
    # (q - i) * (q - j) = q^2 - q(i+j) + k
    f = SlicePolynomial.linear_factor(I).star(SlicePolynomial.linear_factor(J))
    assert f.one_var_coeffs() == [K, -(I + J), Q(1.0)]
    assert f.at_quaternion(I).norm() == 0.0  # left root survives
    assert f.at_quaternion(J).approx_eq(2.0 * K, 1e-14)  # right root does not


def test_evaluate_dispatch_and_dimension_guard():
    f = SlicePolynomial.one_var([Q(1.0), Q(2.0)])
    p = SlicePoint((0.5 + 0.5j,), UNIT_I)
    assert evaluate(f, p) == f.evaluate(p)
    with pytest.raises(ValueError):
        f.evaluate(SlicePoint((1j, 2j), UNIT_I))


def test_two_variable_polynomial_evaluation():
    # f(q1, q2) = q1 q2 evaluated on one slice is the complex product embedded
    f = SlicePolynomial(2, {(1, 1): Q(1.0)})
    z1, z2 = 1 + 2j, 3 - 1j
    p = SlicePoint((z1, z2), UNIT_J)
    got = f.evaluate(p)
    assert got.approx_eq(embed_complex(z1 * z2, p.unit), 1e-12)


# -- star product ----------------------------------------------------------------


def test_star_is_coefficient_convolution():
    rng = random.Random(32)
    for _ in range(150):
        f, g = _rand_poly(rng, 5), _rand_poly(rng, 5)
        prod = f.star(g)
        expected = brute.poly_star(
            [_qvec(c) for c in f.one_var_coeffs()], [_qvec(c) for c in g.one_var_coeffs()]
        )
        got = [_qvec(c) for c in prod.one_var_coeffs()]
        while len(got) < len(expected):
            got.append([0.0, 0.0, 0.0, 0.0])
        for a, b in zip(got, expected):
            assert max(abs(x - y) for x, y in zip(a, b)) < 1e-9


def test_star_frozen_conjugate_pair():
    a = Q(1, 2, 0, 0)
    f = SlicePolynomial.linear_factor(a).star(SlicePolynomial.linear_factor(a.conjugate()))
    assert f.one_var_coeffs() == [Q(5.0), Q(-2.0), Q(1.0)]


def test_star_is_noncommutative_but_real_center_commutes():
    qi = SlicePolynomial.linear_factor(I)
    qj = SlicePolynomial.linear_factor(J)
    assert qi.star(qj).distance(qj.star(qi)) > 1.0
    real_poly = SlicePolynomial.one_var([Q(1.0), Q(-3.0), Q(2.0)])
    f = _rand_poly(random.Random(33))
    assert real_poly.star(f).distance(f.star(real_poly)) < 1e-12


def test_star_product_dispatch():
    f = SlicePolynomial.linear_factor(I)
    g = SlicePolynomial.linear_factor(J)
    closed = star_product(f, g)
    assert isinstance(closed, SlicePolynomial)
    glued = TwoSliceGlued.from_polynomial(g, UNIT_I, UNIT_J, SliceDomain.axial_disk(0j, 4.0))
    mixed = star_product(f, glued)
    assert isinstance(mixed, StarComposite)
    rng = random.Random(34)
    for _ in range(25):
        q = _rand_quat(rng, cap=1.0)
        assert mixed.at_quaternion(q).approx_eq(closed.at_quaternion(q), 1e-9)
    with pytest.raises(IncompatibleDomains):
        star_product(f, SlicePolynomial(2, {(1, 0): Q(1.0)}))


# -- conjugation and symmetrization ----------------------------------------------


def test_conjugation_conjugates_coefficients():
    f = SlicePolynomial.one_var([Q(0.0), Q(1, 1, 0, 0)])  # q (1+i)
    fc = conjugation(f)
    assert fc.one_var_coeffs() == [Q(0.0), Q(1, -1, 0, 0)]
    g = SlicePolynomial.linear_factor(I)  # q - i
    gc = conjugation(g)
    assert gc.at_quaternion(Q(2.0)).approx_eq(Q(2, 1, 0, 0), 1e-15)  # 2 + i


def test_symmetrization_has_real_coefficients_and_frozen_values():
    g = SlicePolynomial.linear_factor(I)
    gs = symmetrization(g)  # (q + i) * (q - i) = q^2 + 1
    assert gs.one_var_coeffs() == [Q(1.0), Q(0.0), Q(1.0)]
    assert gs.at_quaternion(Q(3.0)) == Q(10.0)
    prod = SlicePolynomial.linear_factor(I).star(SlicePolynomial.linear_factor(J))
    ps = symmetrization(prod)  # (q^2 + 1)^2
    assert ps.one_var_coeffs() == [Q(1.0), Q(0.0), Q(2.0), Q(0.0), Q(1.0)]
    rng = random.Random(35)
    for _ in range(100):
        f = _rand_poly(rng)
        assert symmetrization(f).has_real_coeffs()


def test_real_point_identities():
    rng = random.Random(36)
    for _ in range(100):
        f = _rand_poly(rng)
        fc = conjugation(f)
        fs = symmetrization(f)
        x = Q(rng.uniform(-2, 2))
        v = f.at_quaternion(x)
        # coefficient conjugation commutes with real-point evaluation exactly
        assert fc.at_quaternion(x) == v.conjugate()
        scale = max(1.0, f.coeff_norm_sum() * max(1.0, x.norm()) ** f.degree())
        assert abs(fs.at_quaternion(x).w - v.norm() ** 2) < 1e-9 * scale**2
        assert fs.at_quaternion(x).imag_norm() == 0.0


def test_precondition_warning_and_verified_failure():
    f = _rand_poly(random.Random(37))
    good = SliceDomain.axial_disk(0j, 2.0)
    with pytest.warns(PreconditionUnverified):
        symmetrization(f, good)
    # verified run on a connected domain stays silent
    import warnings as _w

    with _w.catch_warnings():
        _w.simplefilter("error")
        symmetrization(f, good, verify=True, samples=8)
    floating = SliceDomain.axial_disk(2j, 0.5)  # empty real trace
    with pytest.raises(DomainCheckFailed):
        conjugation(f, floating, verify=True, samples=8)


def test_conjugation_of_composite_reverses_factors():
    f = SlicePolynomial.linear_factor(I)
    glued = TwoSliceGlued.from_polynomial(
        SlicePolynomial.linear_factor(J), UNIT_I, UNIT_J, SliceDomain.axial_disk(0j, 4.0)
    )
    comp = star_product(f, glued)
    cc = conjugation(comp)
    closed = conjugation(f.star(SlicePolynomial.linear_factor(J)))
    rng = random.Random(38)
    for _ in range(20):
        q = _rand_quat(rng, cap=1.0)
        assert cc.at_quaternion(q).approx_eq(closed.at_quaternion(q), 1e-9)


# -- representation extension -----------------------------------------------------


def test_representation_extend_frozen():
    # stem of q^2 at 1+i: (0, 2); slice values 2i, 2j extend to 2k on the K slice
    vj = 2.0 * I
    vk = 2.0 * J
    got = representation_extend(vj, vk, UNIT_I, UNIT_J, UNIT_K)
    assert got.approx_eq(2.0 * K, 1e-13)
    assert representation_extend(vj, vk, UNIT_I, UNIT_J, None).approx_eq(Q(0.0), 1e-13)
    # extending to a reference slice reproduces the reference value
    assert representation_extend(vj, vk, UNIT_I, UNIT_J, UNIT_I).approx_eq(vj, 1e-13)


def test_representation_extend_random_against_system_solve():
    rng = random.Random(39)
    for _ in range(150):
        j, k = _rand_unit(rng), _rand_unit(rng)
        if j.distance(k) < 0.05 or j.distance(-k) < 0.05:
            continue
        i = _rand_unit(rng)
        vj, vk = _rand_quat(rng), _rand_quat(rng)
        got = representation_extend(vj, vk, j, k, i)
        f1, f2 = brute.stem_solve(
            _qvec(vj), _qvec(vk),
            brute.unit_from_vec(j.x, j.y, j.z), brute.unit_from_vec(k.x, k.y, k.z),
        )
        expected = [a + b for a, b in zip(f1, brute.qmul(brute.unit_from_vec(i.x, i.y, i.z), f2))]
        assert got.approx_eq(Q(*expected), 1e-8)


def test_representation_extend_rejects_degenerate_slices():
    from sliceworks import DegenerateSlicePair

    with pytest.raises(DegenerateSlicePair):
        representation_extend(Q(1.0), Q(2.0), UNIT_I, UNIT_I, UNIT_J)
    # antipodal units are NOT degenerate: [[1, J], [1, -J]] inverts cleanly
    vj, vk = Q(1, 0.5, 0, 0), Q(2, 0, -1, 0)
    assert representation_extend(vj, vk, UNIT_I, -UNIT_I, UNIT_I).approx_eq(vj, 1e-13)
    assert representation_extend(vj, vk, UNIT_I, -UNIT_I, -UNIT_I).approx_eq(vk, 1e-13)


# -- power series -----------------------------------------------------------------


def test_geometric_series_evaluates_to_resolvent():
    s = SlicePowerSeries(0.0, [Q(1.0)] * 65, radius=1.0)
    assert s.order == 64
    rng = random.Random(40)
    for _ in range(50):
        q = _rand_quat(rng, cap=0.2)
        one_minus = Q(1.0) - q
        expected = one_minus.conjugate() * (1.0 / one_minus.norm() ** 2)
        assert s.at_quaternion(q).approx_eq(expected, 1e-11)


def test_series_domain_guard_and_truncation():
    s = SlicePowerSeries(0.0, [Q(1.0)] * 9, radius=1.0, tail_coeff_cap=1.0)
    with pytest.raises(OutOfDomain):
        s.at_quaternion(Q(0.95))
    with pytest.raises(OutOfDomain):
        s.stem_at((0.96 + 0.1j,))
    assert s.truncation_error(0.5) == pytest.approx(0.5**9 / 0.5)
    assert s.truncation_error(1.5) == math.inf
    bare = SlicePowerSeries(0.0, [Q(1.0)], radius=1.0)
    assert bare.truncation_error(0.5) is None
    assert s.domain == SliceDomain.axial_disk(0j, 1.0)
    with pytest.raises(ValueError):
        SlicePowerSeries(0.0, [Q(1.0)], radius=0.0)


def test_series_star_requires_matching_center():
    a = SlicePowerSeries(0.0, [Q(1.0), I], radius=2.0)
    b = SlicePowerSeries(0.0, [J, Q(1.0)], radius=1.0)
    prod = a.star(b)
    assert prod.radius == 1.0
    assert prod.coeffs[0] == J  # 1 * j
    with pytest.raises(IncompatibleDomains):
        a.star(SlicePowerSeries(1.0, [Q(1.0)], radius=1.0))


def test_series_symmetrization_is_real():
    s = SlicePowerSeries(0.0, [I, Q(1.0), J], radius=2.0)
    ss = symmetrization(s)  # convolution truncated to the shared order
    assert all(c.imag_norm() == 0.0 for c in ss.coeffs)
    # by hand: (-i, 1, -j) * (i, 1, j) keeps (1, 0, -ij + 1 - ji) = (1, 0, 1)
    assert ss.coeffs == (Q(1.0), Q(0.0), Q(1.0))
    assert ss.at_quaternion(Q(0.5)) == Q(1.25)


# -- two-slice gluing -------------------------------------------------------------


def test_glued_polynomial_agrees_everywhere():
    rng = random.Random(41)
    dom = SliceDomain.axial_disk(0j, 4.0)
    for _ in range(30):
        f = _rand_poly(rng, 4)
        glued = TwoSliceGlued.from_polynomial(f, UNIT_I, UNIT_J, dom)
        for _ in range(10):
            q = _rand_quat(rng, cap=1.5)
            scale = max(1.0, f.coeff_norm_sum() * max(1.0, q.norm()) ** f.degree())
            assert glued.at_quaternion(q).approx_eq(f.at_quaternion(q), 1e-9 * scale)


def test_glued_rejects_incompatible_inputs():
    dom = SliceDomain.axial_disk(0j, 2.0)
    with pytest.raises(IncompatibleDomains):
        TwoSliceGlued(UNIT_I, UNIT_I, [Q(1.0)], [Q(1.0)], dom)
    # evaluators that disagree at real points cannot glue
    with pytest.raises(IncompatibleDomains):
        TwoSliceGlued(UNIT_I, UNIT_J, [Q(0.0), Q(1.0)], [Q(1.0), Q(1.0)], dom)


def test_glued_domain_guards():
    dom = SliceDomain.axial_disk(0j, 2.0)
    glued = TwoSliceGlued.from_polynomial(
        SlicePolynomial.one_var([Q(1.0), Q(1.0)]), UNIT_I, UNIT_J, dom
    )
    with pytest.raises(OutOfDomain):
        glued.evaluate(SlicePoint((3 + 0j,), None))
    # a point admitted only through an attachment lacks in-domain reference slices
    att_dom = SliceDomain(Disk(0j, 1.0), (Attachment(UNIT_K, Disk(2j, 1.5)),))
    glued2 = TwoSliceGlued(
        UNIT_I, UNIT_J, [Q(1.0), Q(1.0)], [Q(1.0), Q(1.0)], att_dom
    )
    with pytest.raises(OutOfDomain):
        glued2.evaluate(SlicePoint((2j,), UNIT_K))


def test_glued_conjugation_at_real_points():
    dom = SliceDomain.axial_disk(0j, 2.0)
    glued = TwoSliceGlued(UNIT_I, UNIT_J, [I, Q(1.0)], [I, Q(1.0)], dom)
    gc = glued.conj_coeffs()
    x = Q(0.5)
    assert gc.at_quaternion(x).approx_eq(glued.at_quaternion(x).conjugate(), 1e-12)


# -- regularity / slice-preserving checks ----------------------------------------


class _ConjModel:
    """x + yI  ->  x - yI: the canonical non-regular slice function."""

    n = 1
    domain = None

    def evaluate(self, q):
        return embed_complex(q.coords[0].conjugate(), q.unit)


def test_check_slice_regular_separates_polynomials_from_conjugation():
    dom = SliceDomain.axial_disk(0j, 2.0)
    probes = dom.sample_interior(count=20, seed=42)
    f = SlicePolynomial.one_var([Q(1, 0, 1, 0), Q(0.5), Q(1.0)])
    rep = check_slice_regular(f, probes)
    assert rep.max_residual < 1e-6 * max(1.0, f.coeff_norm_sum())
    bad = check_slice_regular(_ConjModel(), probes)
    assert bad.max_residual > 0.5
    assert bad.to_json()["max_residual"] == bad.max_residual
    with pytest.raises(ValueError):
        check_slice_regular(f, probes, h=0.0)
    with pytest.raises(ValueError):
        check_slice_regular(f, [])


def test_check_slice_preserving():
    dom = SliceDomain.axial_disk(0j, 2.0)
    probes = dom.sample_interior(count=24, seed=43)
    real_poly = SlicePolynomial.one_var([Q(-1.0), Q(0.0), Q(1.0)])  # q^2 - 1
    rep = check_slice_preserving(real_poly, probes)
    assert rep.preserving
    assert rep.max_off_slice < 1e-12
    crooked = SlicePolynomial.linear_factor(I)  # q - i leaves foreign slices
    bad = check_slice_preserving(crooked, [SlicePoint((0.5 + 0.5j,), UNIT_J)])
    assert not bad.preserving
    assert bad.failures
    assert bad.max_off_slice == pytest.approx(1.0)
    with pytest.raises(ValueError):
        check_slice_preserving(real_poly, [])


# -- serialization ----------------------------------------------------------------


def test_function_json_round_trips():
    rng = random.Random(44)
    poly = _rand_poly(rng)
    back = function_from_json(function_to_json(poly))
    assert isinstance(back, SlicePolynomial)
    assert back.distance(poly) == 0.0

    two_var = SlicePolynomial(2, {(1, 2): I, (0, 0): Q(3.0)})
    back2 = function_from_json(function_to_json(two_var))
    assert back2.n == 2 and back2.distance(two_var) == 0.0

    series = SlicePowerSeries(0.5, [Q(1.0), I, J], radius=2.0)
    back3 = function_from_json(function_to_json(series))
    assert isinstance(back3, SlicePowerSeries)
    assert back3.center == series.center and back3.radius == series.radius
    assert back3.coeffs == series.coeffs

    glued = TwoSliceGlued.from_polynomial(
        SlicePolynomial.linear_factor(K), UNIT_I, UNIT_J, SliceDomain.axial_disk(0j, 3.0)
    )
    back4 = function_from_json(function_to_json(glued))
    assert back4.J == glued.J and back4.K == glued.K
    assert back4.hJ == glued.hJ and back4.hK == glued.hK
    assert back4.omega == glued.omega

    comp = star_product(poly, glued)
    back5 = function_from_json(function_to_json(comp))
    assert isinstance(back5, StarComposite)
    q = Q(0.25, 0.5, -0.25, 0.1)
    assert back5.at_quaternion(q).approx_eq(comp.at_quaternion(q), 1e-12)

    with pytest.raises(ParseError):
        function_from_json({"type": "rational"})
    with pytest.raises(ParseError):
        function_from_json({"terms": []})
    with pytest.raises(ParseError):
        function_from_json({"type": "poly", "n": 1, "terms": [{"exp": [0]}]})
