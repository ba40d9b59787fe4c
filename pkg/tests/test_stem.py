"""Stem columns: two-slice recovery, symmetrization, products, holomorphy."""

import math
import random

import pytest

import brute
from sliceworks import (
    HolomorphyReport,
    NonRealSymmetrization,
    NoWitnessPath,
    PathCn,
    PathStem,
    Quaternion,
    SliceDomain,
    SlicePoint,
    SlicePolynomial,
    StemValue,
    StepOutOfRange,
    UNIT_I,
    UNIT_J,
    UNIT_K,
    check_stem_holomorphic,
    conj_stem,
    eval_stem,
    point_stem,
    real_endpoint_stem,
    reflect_stem,
    sphere_sample,
    star_stems,
    stem_from_two_slices,
    sym_stem,
)

Q = Quaternion


def _rand_quat(rng, cap=3.0):
    return Q(*(rng.uniform(-cap, cap) for _ in range(4)))


def _rand_unit(rng):
    while True:
        v = [rng.gauss(0, 1) for _ in range(3)]
        n = math.sqrt(sum(x * x for x in v))
        if n > 1e-6:
            from sliceworks import ImaginaryUnit

            return ImaginaryUnit.from_vector(*v)


# -- recovery ----------------------------------------------------------------


def test_two_slice_recovery_frozen():
    # Oracle: solve the real 8x8 system for J=i, K=j directly.
    vj = Q(-1.0, -1.75, 4.0, 0.25)
    vk = Q(0.5, -3.0, 1.25, -1.25)
    got = stem_from_two_slices(vj, vk, UNIT_I, UNIT_J)
    assert got.F1.approx_eq(Q(0.5, -1.0, 2.0, 0.25), 1e-12)
    assert got.F2.approx_eq(Q(-0.75, 1.5, 0.0, -2.0), 1e-12)
    # reproducing both slice values closes the loop
    assert eval_stem(got, UNIT_I).approx_eq(vj, 1e-12)
    assert eval_stem(got, UNIT_J).approx_eq(vk, 1e-12)


def test_two_slice_recovery_random_against_system_solve():
    rng = random.Random(97)
    for _ in range(200):
        j = _rand_unit(rng)
        k = _rand_unit(rng)
        if j.distance(k) < 0.05 or j.distance(-k) < 0.05:
            continue
        vj, vk = _rand_quat(rng), _rand_quat(rng)
        got = stem_from_two_slices(vj, vk, j, k)
        jv = brute.unit_from_vec(j.x, j.y, j.z)
        kv = brute.unit_from_vec(k.x, k.y, k.z)
        f1, f2 = brute.stem_solve(
            [vj.w, vj.x, vj.y, vj.z], [vk.w, vk.x, vk.y, vk.z], jv, kv
        )
        assert got.F1.approx_eq(Q(*f1), 1e-9)
        assert got.F2.approx_eq(Q(*f2), 1e-9)


def test_eval_stem_real_marker_reads_first_component():
    v = StemValue(Q(1, 2, 3, 4), Q(5, 6, 7, 8))
    assert eval_stem(v, None) == Q(1, 2, 3, 4)
    assert eval_stem(v, UNIT_K) == Q(1, 2, 3, 4) + UNIT_K * Q(5, 6, 7, 8)


# -- involutions -------------------------------------------------------------


def test_reflect_and_conj_identities():
    rng = random.Random(11)
    for _ in range(50):
        v = StemValue(_rand_quat(rng), _rand_quat(rng))
        u = _rand_unit(rng)
        # reflecting the path negates the unit in the slice value
        assert eval_stem(reflect_stem(v), u).approx_eq(eval_stem(v, -u), 1e-13)
        assert reflect_stem(reflect_stem(v)) == v
        assert conj_stem(conj_stem(v)) == v
        # conj(F1) + I conj(F2) = conj(F1 - F2 I), with the unit on the right
        lhs = eval_stem(conj_stem(v), u)
        rhs = (v.F1 - v.F2 * u.as_quaternion()).conjugate()
        assert lhs.approx_eq(rhs, 1e-13)


def test_sym_stem_frozen_and_real():
    # F=(i, 1): top = |i|^2 - |1|^2 = 0, bottom = 2 Re(conj(1) i) = 0
    v = StemValue(Q(0, 1, 0, 0), Q(1, 0, 0, 0))
    s = sym_stem(v)
    assert s.F1 == Q(0.0)
    assert s.F2 == Q(0.0)
    rng = random.Random(12)
    for _ in range(200):
        v = StemValue(_rand_quat(rng), _rand_quat(rng))
        s = sym_stem(v)
        assert s.F1.imag_norm() == 0.0
        assert s.F2.imag_norm() == 0.0
        # against the explicit quadratic forms
        f1 = [v.F1.w, v.F1.x, v.F1.y, v.F1.z]
        f2 = [v.F2.w, v.F2.x, v.F2.y, v.F2.z]
        n1 = sum(c * c for c in f1)
        n2 = sum(c * c for c in f2)
        dot = sum(a * b for a, b in zip(f1, f2))
        assert s.F1.w == pytest.approx(n1 - n2, abs=1e-9)
        assert s.F2.w == pytest.approx(2.0 * dot, abs=1e-9)


def test_sym_stem_rejects_corrupted_input():
    with pytest.raises(NonRealSymmetrization):
        sym_stem(StemValue(Q(math.nan, 1, 0, 0), Q(1, 0, 0, 0)))


# -- star product ------------------------------------------------------------


def test_star_stems_units_and_oracle():
    one = StemValue(Q(1.0), Q(0.0))
    sigma_col = StemValue(Q(0.0), Q(1.0))
    rng = random.Random(13)
    g = StemValue(_rand_quat(rng), _rand_quat(rng))
    assert star_stems(one, g) == g
    assert star_stems(g, one) == g
    sq = star_stems(sigma_col, sigma_col)
    assert sq.F1 == Q(-1.0)
    assert sq.F2 == Q(0.0)


def test_star_stems_against_matrix_oracle():
    from sliceworks import oracle_star_pointwise

    rng = random.Random(14)
    for _ in range(100):
        f = StemValue(_rand_quat(rng), _rand_quat(rng))
        g = StemValue(_rand_quat(rng), _rand_quat(rng))
        direct = star_stems(f, g)
        via_matrix = oracle_star_pointwise(f, g)
        # the two routes perform identical float operations
        assert direct.F1 == via_matrix.F1
        assert direct.F2 == via_matrix.F2


def test_real_endpoint_stem():
    v = real_endpoint_stem(Q(2, 1, 0, -1))
    assert v.F1 == Q(2, 1, 0, -1)
    assert v.F2 == Q(0.0)
    assert eval_stem(v, UNIT_I) == v.F1


# -- stems at points ---------------------------------------------------------


def test_point_stem_real_point_is_constant_path():
    f = SlicePolynomial.one_var([Q(1.0), Q(0, 1, 0, 0), Q(1.0)])  # 1 + i q + q^2
    dom = SliceDomain.axial_disk(0j, 3.0)
    stem = f.path_stem(dom)
    v = point_stem(stem, dom, SlicePoint((2 + 0j,), None))
    # f(2) = 1 + 2i + 4
    assert eval_stem(v, None).approx_eq(Q(5, 2, 0, 0), 1e-12)
    assert v.F2 == Q(0.0)


def test_point_stem_witness_path_matches_endpoint_evaluation():
    f = SlicePolynomial.one_var([Q(0, 0, 1, 0), Q(1.0), Q(2.0)])  # j + q + 2 q^2
    dom = SliceDomain.axial_disk(0j, 3.0)
    stem = f.path_stem(dom)
    p = SlicePoint((0.5 + 1.5j,), UNIT_K)
    v = point_stem(stem, dom, p)
    direct = f.stem_at((0.5 + 1.5j,))
    assert v.F1.approx_eq(direct.F1, 1e-12)
    assert v.F2.approx_eq(direct.F2, 1e-12)
    assert eval_stem(v, UNIT_K).approx_eq(f.evaluate(p), 1e-12)


def test_point_stem_raises_when_no_witness_found():
    f = SlicePolynomial.one_var([Q(1.0), Q(1.0)])
    # annulus-like obstruction: the point's slice trace is disconnected from R
    dom = SliceDomain(
        (SliceDomain.axial_disk(0j, 0.2).axial | SliceDomain.axial_disk(5j, 0.2).axial)
    )
    stem = f.path_stem(dom)
    with pytest.raises(NoWitnessPath):
        point_stem(stem, dom, SlicePoint((5j,), UNIT_I))


# -- holomorphy check --------------------------------------------------------


def test_polynomial_stems_are_holomorphic():
    rng = random.Random(15)
    dom = SliceDomain.axial_disk(0j, 4.0)
    for _ in range(20):
        coeffs = [_rand_quat(rng, cap=2.0) for _ in range(rng.randrange(2, 6))]
        f = SlicePolynomial.one_var(coeffs)
        path = PathCn(((0j,), (rng.uniform(-1, 1) + rng.uniform(-1, 1) * 1j,)))
        report = check_stem_holomorphic(f.path_stem(dom), path, r=0.5, h=1e-5)
        scale = f.coeff_norm_sum()
        assert report.max_residual < 1e-6 * max(scale, 1.0)


def test_conjugated_model_fails_holomorphy():
    # G(path) = stem of conj(endpoint): an antiholomorphic family.  For
    # f(q) = q the residual of the conjugate model is exactly 1.
    def anti(path):
        z = path.endpoint[0].conjugate()
        return StemValue(Q(z.real), Q(z.imag))

    stem = PathStem(anti, None, True)
    path = PathCn(((0j,), (0.3 + 0.4j,)))
    report = check_stem_holomorphic(stem, path, r=0.5, h=1e-5)
    assert report.max_residual == pytest.approx(1.0, abs=1e-9)


def test_holomorphy_step_validation():
    f = SlicePolynomial.one_var([Q(1.0), Q(1.0)])
    stem = f.path_stem()
    path = PathCn(((0j,),))
    with pytest.raises(StepOutOfRange):
        check_stem_holomorphic(stem, path, r=0.4, h=0.1)  # h == r/4 exactly
    with pytest.raises(StepOutOfRange):
        check_stem_holomorphic(stem, path, r=0.4, h=0.0)
    report = check_stem_holomorphic(stem, path, r=0.4, h=0.05)
    assert isinstance(report, HolomorphyReport)
    js = report.to_json()
    assert js["step"] == 0.05
    assert js["ball_radius"] == 0.4
    assert js["max_residual"] == max(js["residuals"])


def test_holomorphy_probes_offsets_per_coordinate():
    f = SlicePolynomial.one_var([Q(0.0), Q(1.0)])
    report = check_stem_holomorphic(f.path_stem(), PathCn(((0j,),)), r=0.8, h=1e-4)
    # endpoint + 8 sigma offsets, one coordinate each
    assert len(report.residuals) == 9


def test_stem_value_arithmetic_and_json():
    a = StemValue(Q(1, 2, 3, 4), Q(0, 1, 0, -1))
    b = StemValue(Q(1.0), Q(2.0))
    assert (a + b).F1 == Q(2, 2, 3, 4)
    assert (a - b).F2 == Q(-2, 1, 0, -1)
    assert a.scale(2.0).F1 == Q(2, 4, 6, 8)
    assert a.norm() == a.F1.norm() + a.F2.norm()
    assert StemValue.from_json(a.to_json()) == a
