import numpy as np
import pytest

from permvqe.ansatz import (
    AnsatzSpec,
    build,
    pad_parameters,
    parameter_count,
    particle_layout,
    permute_parameters,
    prune_ineffective,
    random_parameters,
    retained_depth,
)
from permvqe.pauli import Permutation
from permvqe.simulator import StateVector, apply_circuit, permute_state


def run(spec, params):
    return apply_circuit(StateVector.zero(spec.n_qubits), build(spec, params))


class TestParameterCount:
    def test_ryrz(self):
        assert parameter_count(AnsatzSpec("ryrz", 6, 2)) == 36

    def test_ryrz_depth_zero(self):
        assert parameter_count(AnsatzSpec("ryrz", 10, 0)) == 20

    def test_ry(self):
        assert parameter_count(AnsatzSpec("ry", 10, 7)) == 80

    def test_particle_preserving_unpruned(self):
        spec = AnsatzSpec("particle_preserving", 6, 2, hf_bits=(1, 1, 0, 0, 0, 0))
        # 3 even pairs + 2 odd pairs per layer, 2 parameters each
        assert parameter_count(spec) == 2 * 5 * 2

    def test_build_consumes_exactly(self):
        for spec in (
            AnsatzSpec("ryrz", 4, 2),
            AnsatzSpec("ry", 5, 3),
            AnsatzSpec("particle_preserving", 4, 2, hf_bits=(1, 0, 1, 0)),
            AnsatzSpec("particle_preserving", 6, 3, hf_bits=(1, 1, 0, 0, 0, 0), prune=True),
        ):
            n = parameter_count(spec)
            build(spec, np.zeros(n))
            with pytest.raises(ValueError, match="parameters"):
                build(spec, np.zeros(n + 1))


class TestSpecValidation:
    def test_unknown_family(self):
        with pytest.raises(ValueError, match="family"):
            AnsatzSpec("su4", 4, 1)

    def test_particle_preserving_needs_bits(self):
        with pytest.raises(ValueError, match="hf_bits"):
            AnsatzSpec("particle_preserving", 4, 1)

    def test_particle_preserving_needs_depth(self):
        with pytest.raises(ValueError, match="depth"):
            AnsatzSpec("particle_preserving", 4, 0, hf_bits=(1, 0, 1, 0))

    def test_bits_length_checked(self):
        with pytest.raises(ValueError, match="hf_bits length"):
            AnsatzSpec("particle_preserving", 4, 1, hf_bits=(1, 0))


class TestStructure:
    def test_ryrz_layout(self):
        spec = AnsatzSpec("ryrz", 6, 2)
        gates = build(spec, np.zeros(36))
        kinds = [g.kind for g in gates]
        # two blocks of 6 ry + 6 rz + 5 cz, then a final 6 ry + 6 rz
        block = ["ry"] * 6 + ["rz"] * 6 + ["cz"] * 5
        assert kinds == block + block + ["ry"] * 6 + ["rz"] * 6

    def test_ry_zero_angles_fix_vacuum(self):
        spec = AnsatzSpec("ry", 2, 1)
        out = run(spec, np.zeros(4))
        assert abs(out.amplitudes[0]) == pytest.approx(1.0, abs=1e-12)

    def test_particle_preserving_prepends_reference(self):
        spec = AnsatzSpec("particle_preserving", 4, 1, hf_bits=(1, 0, 0, 1))
        gates = build(spec, np.zeros(parameter_count(spec)))
        assert [g.kind for g in gates[:2]] == ["x", "x"]
        assert {g.qubits[0] for g in gates[:2]} == {0, 3}


class TestPruning:
    def test_equal_pair_dropped(self):
        layers = particle_layout(2, 1)
        assert prune_ineffective(layers, (1, 1)) == [[]]
        assert prune_ineffective(layers, (0, 0)) == [[]]
        assert prune_ineffective(layers, (1, 0)) == [[(0, 1)]]

    def test_all_zeros_prunes_everything(self):
        layers = particle_layout(6, 3)
        pruned = prune_ineffective(layers, (0,) * 6)
        assert retained_depth(pruned) == 0
        spec = AnsatzSpec("particle_preserving", 6, 3, hf_bits=(0,) * 6, prune=True)
        assert parameter_count(spec) == 0
        assert build(spec, np.zeros(0)) == []

    def test_alternating_bits_keep_layer_one(self):
        layers = particle_layout(6, 1)
        pruned = prune_ineffective(layers, (0, 1, 0, 1, 0, 1))
        assert pruned[0] == layers[0]

    def test_golden_front_pattern(self):
        # hand-simulated forward pass for occupation 110000, three layers
        layers = particle_layout(6, 3)
        pruned = prune_ineffective(layers, (1, 1, 0, 0, 0, 0))
        assert pruned[0] == [(1, 2)]
        assert pruned[1] == [(0, 1), (2, 3), (1, 2), (3, 4)]
        assert pruned[2] == [(0, 1), (2, 3), (4, 5), (1, 2), (3, 4)]
        assert retained_depth(pruned) == 3

    def test_pruned_state_matches_unpruned(self, rng):
        bits = (1, 1, 0, 0, 0, 0)
        pruned_spec = AnsatzSpec("particle_preserving", 6, 2, hf_bits=bits, prune=True)
        full_spec = AnsatzSpec("particle_preserving", 6, 2, hf_bits=bits, prune=False)
        pruned_params = rng.uniform(-np.pi, np.pi, parameter_count(pruned_spec))

        full_layers = particle_layout(6, 2)
        kept_layers = prune_ineffective(full_layers, bits)
        kept = {(li, pair) for li, layer in enumerate(kept_layers) for pair in layer}
        full_params = []
        k = 0
        for li, layer in enumerate(full_layers):
            for pair in layer:
                if (li, pair) in kept:
                    full_params.extend(pruned_params[k : k + 2])
                    k += 2
                else:
                    full_params.extend(rng.uniform(-np.pi, np.pi, 2))
        overlap = np.vdot(
            run(full_spec, np.array(full_params)).amplitudes,
            run(pruned_spec, pruned_params).amplitudes,
        )
        assert abs(overlap) == pytest.approx(1.0, abs=1e-12)


class TestWeightConservation:
    def test_random_parameters_preserve_weight(self, rng):
        for n in (4, 6, 8):
            bits = tuple(int(b) for b in rng.integers(0, 2, n))
            spec = AnsatzSpec("particle_preserving", n, 2, hf_bits=bits)
            out = run(spec, random_parameters(spec, rng))
            weights = np.bitwise_count(np.arange(1 << n))
            off_sector = np.abs(out.amplitudes[weights != sum(bits)])
            assert np.max(off_sector, initial=0.0) < 1e-12


class TestWarmStartHelpers:
    def test_pad_prepends_identity_blocks(self, rng):
        for family in ("ryrz", "ry"):
            shallow = AnsatzSpec(family, 4, 1)
            deep = AnsatzSpec(family, 4, 3)
            params = rng.uniform(-np.pi, np.pi, parameter_count(shallow))
            padded = pad_parameters(shallow, params, deep)
            overlap = np.vdot(run(deep, padded).amplitudes, run(shallow, params).amplitudes)
            assert abs(overlap) == pytest.approx(1.0, abs=1e-12)

    def test_pad_particle_preserving_unpruned(self, rng):
        bits = (1, 0, 1, 0)
        shallow = AnsatzSpec("particle_preserving", 4, 1, hf_bits=bits)
        deep = AnsatzSpec("particle_preserving", 4, 2, hf_bits=bits)
        params = rng.uniform(-np.pi, np.pi, parameter_count(shallow))
        padded = pad_parameters(shallow, params, deep)
        overlap = np.vdot(run(deep, padded).amplitudes, run(shallow, params).amplitudes)
        assert abs(overlap) == pytest.approx(1.0, abs=1e-12)

    def test_pad_rejects_pruned(self):
        bits = (1, 0, 1, 0)
        a = AnsatzSpec("particle_preserving", 4, 1, hf_bits=bits, prune=True)
        b = AnsatzSpec("particle_preserving", 4, 2, hf_bits=bits, prune=True)
        with pytest.raises(ValueError, match="pruned"):
            pad_parameters(a, np.zeros(parameter_count(a)), b)

    def test_permute_parameters_rotation_layer(self, rng):
        # with no entangling layer the relabeled parameters must produce the
        # relabeled state exactly
        spec = AnsatzSpec("ryrz", 4, 0)
        params = rng.uniform(-np.pi, np.pi, parameter_count(spec))
        p = Permutation(tuple(rng.permutation(4)))
        relabeled = permute_parameters(spec, params, p)
        lhs = run(spec, relabeled).amplitudes
        rhs = permute_state(run(spec, params), p).amplitudes
        assert abs(np.vdot(lhs, rhs)) == pytest.approx(1.0, abs=1e-12)

    def test_permute_parameters_declines_particle_family(self):
        spec = AnsatzSpec("particle_preserving", 4, 1, hf_bits=(1, 0, 1, 0))
        out = permute_parameters(spec, np.zeros(parameter_count(spec)), Permutation.identity(4))
        assert out is None
