import math

import numpy as np
import pytest

from stability_lab.errors import (
    DimensionCapError,
    MatrixError,
    NormalityError,
    SingularMatrixError,
)
from stability_lab.linalg import (
    UnitaryTuple,
    arg_det,
    dump_matrix,
    eig_normal,
    evaluate_word,
    load_matrix,
    operator_norm,
    tensor_identity,
    unitarity_defect,
)
from stability_lab.relators import Word, invert, parse_word, relator_length
from stability_lab.zoo import voiculescu
from conftest import gens, random_unitary

AB = gens("a", "b")


def pair_tuple(n):
    om, sh = voiculescu(n)
    return UnitaryTuple((om, sh), ("a", "b"), 1e-12)


class TestEvaluateWord:
    def test_voiculescu_commutator_is_scalar(self):
        t = pair_tuple(4)
        value = evaluate_word(parse_word("[a,b]", AB), t)
        assert np.allclose(value, 1j * np.eye(4), atol=1e-12)

    def test_empty_word_is_identity(self):
        t = pair_tuple(3)
        assert np.array_equal(evaluate_word(Word((), 2), t), np.eye(3))

    def test_cancellation_on_random_unitary(self, rng):
        u = random_unitary(rng, 6)
        t = UnitaryTuple((u,), ("a",), 1e-10)
        value = evaluate_word(parse_word("a a^-1", gens("a")), t)
        assert np.max(np.abs(value - np.eye(6))) < 1e-12

    def test_missing_generator_matrix(self):
        t = pair_tuple(3)
        w = Word(((2, 1),), 3)
        with pytest.raises(MatrixError):
            evaluate_word(w, t)

    def test_adjoint_of_word(self, rng):
        t = UnitaryTuple((random_unitary(rng, 5), random_unitary(rng, 5)), ("a", "b"), 1e-10)
        w = parse_word("a b^2 a^-1 b^-1 a^3", AB)
        lhs = evaluate_word(invert(w), t)
        rhs = evaluate_word(w, t).conj().T
        assert operator_norm(lhs - rhs) < 1e-10

    def test_word_value_nearly_unitary(self, rng):
        t = UnitaryTuple((random_unitary(rng, 5), random_unitary(rng, 5)), ("a", "b"), 1e-10)
        w = parse_word("a b^3 a^-2 b^-1", AB)
        value = evaluate_word(w, t)
        assert unitarity_defect(value) <= 10 * relator_length(w) * t.unitarity_tol


class TestEigNormal:
    def test_clock_eigenvalues(self):
        om, _ = voiculescu(8)
        got = eig_normal(om)
        want = np.exp(2j * np.pi * np.arange(1, 9) / 8)
        want = want[np.lexsort((np.abs(want), np.angle(want)))]
        assert np.max(np.abs(got - want)) < 1e-12

    def test_shift_eigenvalues_are_roots_of_unity(self):
        # characteristic polynomial of the cyclic shift is lambda^n - 1
        n = 7
        _, sh = voiculescu(n)
        got = eig_normal(sh)
        want = np.exp(2j * np.pi * np.arange(n) / n)
        want = want[np.lexsort((np.abs(want), np.angle(want)))]
        assert np.max(np.abs(got - want)) < 1e-10

    def test_identity(self):
        got = eig_normal(np.eye(5))
        assert np.allclose(got, np.ones(5), atol=1e-14)

    def test_rejects_non_normal(self):
        m = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(NormalityError):
            eig_normal(m)

    def test_unitary_moduli_and_det_consistency(self, rng):
        u = random_unitary(rng, 9)
        lam = eig_normal(u)
        assert np.all(np.abs(np.abs(lam) - 1.0) < 1e-8)
        arg, log_mag = arg_det(u)
        arg_sum = math.remainder(float(np.sum(np.angle(lam))), 2 * math.pi)
        assert abs(math.remainder(arg_sum - arg, 2 * math.pi)) < 1e-8
        assert abs(float(np.sum(np.log(np.abs(lam)))) - log_mag) < 1e-8


class TestOperatorNorm:
    def test_scalar_matrix_closed_form(self):
        for n in (3, 5, 12):
            omega = np.exp(2j * np.pi / n)
            m = omega * np.eye(n) - np.eye(n)
            assert abs(operator_norm(m) - 2 * math.sin(math.pi / n)) < 1e-12

    def test_identity(self):
        assert operator_norm(np.eye(4)) == pytest.approx(1.0)

    def test_diagonal(self):
        assert operator_norm(np.diag([3.0, -4.0j])) == pytest.approx(4.0)

    def test_adjoint_and_unitary_invariance(self, rng):
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        u = random_unitary(rng, 6)
        v = random_unitary(rng, 6)
        base = operator_norm(m)
        assert abs(operator_norm(m.conj().T) - base) < 1e-9
        assert abs(operator_norm(u @ m @ v) - base) < 1e-9


class TestArgDet:
    def test_identity(self):
        assert arg_det(np.eye(7)) == (0.0, 0.0)

    def test_scalar_with_unit_determinant(self):
        n = 6
        m = np.exp(2j * np.pi / n) * np.eye(n)
        arg, log_mag = arg_det(m)
        assert abs(arg) < 1e-12
        assert abs(log_mag) < 1e-12

    def test_diag_i_one(self):
        arg, log_mag = arg_det(np.diag([1j, 1.0]))
        assert arg == pytest.approx(math.pi / 2, abs=1e-13)
        assert log_mag == pytest.approx(0.0, abs=1e-13)

    def test_no_overflow_for_large_scale(self):
        # det would overflow as a plain product: 400 entries of magnitude 10
        m = 10.0 * np.eye(400)
        arg, log_mag = arg_det(m)
        assert arg == pytest.approx(0.0, abs=1e-10)
        assert log_mag == pytest.approx(400 * math.log(10), rel=1e-12)

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            arg_det(np.zeros((3, 3)))

    def test_permutation_sign_tracked(self):
        m = np.array([[0.0, 1.0], [1.0, 0.0]])  # det = -1
        arg, log_mag = arg_det(m)
        assert arg == pytest.approx(math.pi, abs=1e-13)
        assert log_mag == pytest.approx(0.0, abs=1e-13)

    def test_matches_slogdet_on_random_input(self, rng):
        m = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
        sign, log_mag_ref = np.linalg.slogdet(m)
        arg, log_mag = arg_det(m)
        assert abs(math.remainder(arg - np.angle(sign), 2 * math.pi)) < 1e-9
        assert log_mag == pytest.approx(float(log_mag_ref), rel=1e-10)


class TestTensorIdentity:
    def test_k1_unchanged(self):
        t = pair_tuple(3)
        t1 = tensor_identity(t, 1)
        assert t1 is t

    def test_commutator_scales_dimension(self):
        t2 = tensor_identity(pair_tuple(3), 2)
        value = evaluate_word(parse_word("[a,b]", AB), t2)
        omega = np.exp(2j * np.pi / 3)
        assert np.allclose(value, omega * np.eye(6), atol=1e-12)

    def test_unitarity_defect_preserved(self, rng):
        u = random_unitary(rng, 4)
        t = UnitaryTuple((u,), ("a",), 1e-10)
        t3 = tensor_identity(t, 3)
        assert abs(unitarity_defect(t3.matrices[0]) - unitarity_defect(u)) < 1e-12

    def test_rejects_k_below_one(self):
        with pytest.raises(MatrixError):
            tensor_identity(pair_tuple(3), 0)


class TestUnitaryTuple:
    def test_rejects_unitarity_violation(self):
        with pytest.raises(MatrixError):
            UnitaryTuple((2.0 * np.eye(3),), ("a",), 1e-8)

    def test_rejects_mixed_dimensions(self):
        with pytest.raises(MatrixError):
            UnitaryTuple((np.eye(2), np.eye(3)), ("a", "b"))

    def test_matrices_frozen(self):
        t = pair_tuple(3)
        with pytest.raises(ValueError):
            t.matrices[0][0, 0] = 5.0


class TestDumpLoad:
    def test_roundtrip(self, rng):
        m = random_unitary(rng, 5)
        again = load_matrix(dump_matrix(m))
        assert np.array_equal(m, again)

    def test_header_checked(self):
        with pytest.raises(MatrixError):
            load_matrix("matrix 2\n1+0j 0+0j\n0+0j 1+0j\n")

    def test_row_count_checked(self):
        with pytest.raises(MatrixError):
            load_matrix("cmatrix 2\n1+0j 0+0j\n")


class TestDimensionCap:
    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("STABILITY_LAB_MAX_DIM", "4")
        with pytest.raises(DimensionCapError):
            operator_norm(np.eye(5))
        assert operator_norm(np.eye(4)) == pytest.approx(1.0)

    def test_bad_env_value(self, monkeypatch):
        monkeypatch.setenv("STABILITY_LAB_MAX_DIM", "many")
        with pytest.raises(DimensionCapError):
            operator_norm(np.eye(2))
