import math

import numpy as np
import pytest

from conftest import H2
from qchiplet.circuit import Circuit, merge, power, simulate
from qchiplet.errors import ConfigError, ParameterError
from qchiplet.gates import GatePlacement
from qchiplet.linalg import basis_state, dagger, is_unitary
from qchiplet.qae import (
    QaeConfig,
    amplitude_loader,
    bit_reversal_permutation,
    build_qae,
    count_q_applications,
    decode_amplitude,
    flag_reflection,
    grover_q,
    inverse_qft,
    qft,
    run_qae,
)


def eigenphases(m):
    return np.sort(np.angle(np.linalg.eigvals(m)))


class TestGroverQ:
    def test_eigenphases_match_rotation_angle(self, rng):
        # oracle: 2x2 eigendecomposition; phases must be +-2*arcsin(sqrt(a))
        for a in (0.5, math.sin(math.pi / 8) ** 2, 0.123, float(rng.uniform(0, 1))):
            q = grover_q(amplitude_loader(a))
            theta = math.asin(math.sqrt(a))
            expected = np.sort([-2 * theta, 2 * theta])
            assert np.allclose(eigenphases(q.matrix), expected, atol=1e-9)

    def test_unitary(self, rng):
        for a in rng.uniform(0, 1, size=5):
            q = grover_q(amplitude_loader(float(a)))
            assert np.max(np.abs(q.matrix @ dagger(q.matrix) - np.eye(2))) <= 1e-9

    def test_zero_amplitude_fixes_vacuum(self):
        q = grover_q(amplitude_loader(0.0))
        out = q.matrix @ basis_state(1)
        assert abs(abs(out[0]) - 1.0) <= 1e-12

    def test_multiqubit_state_prep(self, rng):
        from qchiplet.circuit import circuit_from_placements
        from qchiplet.gates import gate_matrix

        a = merge(circuit_from_placements(2, [
            GatePlacement(gate_matrix("AMP", [0.3]), (0,), 2),
            GatePlacement(gate_matrix("H"), (1,), 2),
        ]), "A")
        q = grover_q(a, flag=0)
        assert is_unitary(q.matrix, 1e-9)

    def test_bad_flag(self):
        with pytest.raises(ConfigError):
            grover_q(amplitude_loader(0.5), flag=3)

    def test_flip_on_one_variant_is_negated_operator(self, rng):
        # flipping on flag=1 instead of flag=0 negates Q globally
        for a in (0.5, 0.2):
            ch = amplitude_loader(a)
            q = grover_q(ch)
            from qchiplet.qae import zero_reflection

            alt = ch.matrix @ zero_reflection(1) @ dagger(ch.matrix) @ (-flag_reflection(1, 0))
            assert np.max(np.abs(alt + q.matrix)) <= 1e-12

    def test_variants_agree_at_half(self):
        # for a = 0.5 the peak set {2, 6} is symmetric under y -> y + 4,
        # so both sign conventions measure the same distribution
        base = run_qae(QaeConfig(amplitude_loader(0.5), m=3)).histogram.probabilities
        shifted = tuple(base[(y + 4) % 8] for y in range(8))
        assert np.allclose(base, shifted, atol=1e-9)


class TestInverseQft:
    def test_m1_is_hadamard(self):
        assert np.max(np.abs(inverse_qft(1) - H2)) <= 1e-12

    @pytest.mark.parametrize("m", range(1, 9))
    def test_inverse_pair(self, m):
        prod = inverse_qft(m) @ qft(m)
        assert np.max(np.abs(prod - np.eye(1 << m))) <= 1e-10

    def test_matches_conjugate_dft(self):
        for m in range(1, 7):
            dim = 1 << m
            dft = np.array([
                [np.exp(-2j * np.pi * j * k / dim) for k in range(dim)]
                for j in range(dim)
            ]) / np.sqrt(dim)
            assert np.max(np.abs(inverse_qft(m) - dft)) <= 1e-12

    def test_bit_reversal_involution(self):
        p = bit_reversal_permutation(4)
        assert np.array_equal(p @ p, np.eye(16))


class TestDecode:
    def test_zero(self):
        assert decode_amplitude(0, 3) == 0.0

    def test_half_register(self):
        assert decode_amplitude(4, 3) == pytest.approx(1.0)

    def test_two_of_three(self):
        assert decode_amplitude(2, 3) == pytest.approx(0.5)

    def test_symmetry(self):
        for m in (2, 3, 4):
            for y in range(1, 1 << m):
                assert decode_amplitude(y, m) == pytest.approx(
                    decode_amplitude((1 << m) - y, m), abs=1e-12
                )

    def test_range(self):
        with pytest.raises(ParameterError):
            decode_amplitude(8, 3)


class TestBuildQae:
    def test_seven_q_applications_expanded(self):
        cfg = QaeConfig(amplitude_loader(0.5), m=3)
        circuit = build_qae(cfg, expand_powers=True)
        q_apps = sum(1 for p in circuit.placements if p.gate.name == "Q")
        assert q_apps == 7 == count_q_applications(cfg)

    def test_m1_hadamard_test_structure(self):
        circuit = build_qae(QaeConfig(amplitude_loader(0.3), m=1), expand_powers=True)
        names = [p.gate.name for p in circuit.placements]
        assert names == ["A", "H", "Q", "IQFT"]

    def test_controls_off_leaves_a_state(self):
        # drop the evaluation-register H layer: controls never fire and the
        # state register ends in A|0...0>
        cfg = QaeConfig(amplitude_loader(0.37), m=2)
        circuit = build_qae(cfg)
        stripped = Circuit(circuit.n, (circuit.layers[0],) + circuit.layers[2:-1])
        out = simulate(stripped, basis_state(circuit.n))
        expected = np.zeros(1 << circuit.n, dtype=complex)
        expected[:2] = cfg.a.matrix @ basis_state(1)
        assert np.max(np.abs(out - expected)) <= 1e-12

    def test_config_validation(self):
        with pytest.raises(ConfigError):
            QaeConfig(amplitude_loader(0.5), m=0)
        with pytest.raises(ConfigError):
            QaeConfig(amplitude_loader(0.5), flag=1)
        with pytest.raises(ConfigError):
            QaeConfig(amplitude_loader(0.5), shots=-1)


class TestRunQae:
    def test_half_amplitude_exact_peaks(self):
        r = run_qae(QaeConfig(amplitude_loader(0.5), m=3))
        probs = np.array(r.histogram.probabilities)
        assert probs[2] + probs[6] >= 1.0 - 1e-9
        assert r.estimate == pytest.approx(0.5, abs=1e-9)
        assert r.peak_outcome == 2  # tie resolved toward smaller y

    def test_pi_eighth_amplitude(self):
        a = math.sin(math.pi / 8) ** 2
        r = run_qae(QaeConfig(amplitude_loader(a), m=3))
        probs = np.array(r.histogram.probabilities)
        assert probs[1] + probs[7] >= 1.0 - 1e-9
        assert r.estimate == pytest.approx(a, abs=1e-9)

    def test_zero_amplitude(self):
        r = run_qae(QaeConfig(amplitude_loader(0.0), m=3))
        assert r.histogram.probabilities[0] == pytest.approx(1.0, abs=1e-9)
        assert r.estimate == 0.0

    def test_exact_phase_concentration(self):
        for m in (2, 3, 4):
            for y in range(1 << (m - 1)):
                a = math.sin(math.pi * y / (1 << m)) ** 2
                r = run_qae(QaeConfig(amplitude_loader(a), m=m))
                probs = np.array(r.histogram.probabilities)
                mass = probs[y] + probs[((1 << m) - y) % (1 << m)]
                assert mass >= 1.0 - 1e-9

    def test_modes_agree(self):
        cfg = QaeConfig(amplitude_loader(0.3), m=3)
        full = run_qae(cfg, mode="full-matrix")
        update = run_qae(cfg, mode="state-update")
        assert np.allclose(full.histogram.probabilities, update.histogram.probabilities, atol=1e-9)

    def test_merged_power_equals_repeated(self):
        cfg = QaeConfig(amplitude_loader(0.3), m=3)
        merged = run_qae(cfg)
        expanded = run_qae(cfg, expand_powers=True)
        assert np.allclose(
            merged.histogram.probabilities, expanded.histogram.probabilities, atol=1e-9
        )

    def test_controlled_square_equals_twice(self):
        q = grover_q(amplitude_loader(0.3))
        c_q = GatePlacement(q.as_gate(), (1,), 2, ((0, 1),))
        c_q2 = GatePlacement(power(q, 2).as_gate(), (1,), 2, ((0, 1),))
        from qchiplet.circuit import circuit_from_placements

        twice = merge(circuit_from_placements(2, [c_q, c_q]))
        once = merge(circuit_from_placements(2, [c_q2]))
        assert np.max(np.abs(twice.matrix - once.matrix)) <= 1e-9

    def test_sampled_run_reproducible(self):
        cfg = QaeConfig(amplitude_loader(0.3), m=3, shots=5000, seed=11)
        a = run_qae(cfg)
        b = run_qae(cfg)
        assert a.histogram.counts == b.histogram.counts
