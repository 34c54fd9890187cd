import numpy as np
import pytest

from permvqe.pauli import (
    PauliFileError,
    PauliSum,
    PauliTerm,
    Permutation,
    apply_permutation,
    eigenvalues,
    format_pauli_text,
    ground_state,
    parse_pauli_text,
    to_dense,
    write_pauli_file,
    parse_pauli_file,
)
from permvqe.vqe import table1_hamiltonians

from conftest import kron_matrix, random_pauli_sum


class TestPauliTerm:
    def test_word_length_checked(self):
        with pytest.raises(ValueError, match="word length"):
            PauliTerm(3, "XY", 1.0)

    def test_bad_letter_rejected(self):
        with pytest.raises(ValueError, match="invalid Pauli letter"):
            PauliTerm(2, "XA", 1.0)

    def test_complex_coefficient_rejected(self):
        with pytest.raises(ValueError, match="real"):
            PauliTerm(1, "Z", 1.0 + 2.0j)

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError, match="finite"):
            PauliTerm(1, "Z", float("nan"))

    def test_from_ops_duplicate_index(self):
        with pytest.raises(ValueError, match="duplicate"):
            PauliTerm.from_ops(3, [(1, "X"), (1, "Z")], 0.5)


class TestNormalization:
    def test_merging_and_dropping(self):
        terms = [PauliTerm(2, "XZ", 0.5), PauliTerm(2, "XZ", -0.5 + 1e-15), PauliTerm(2, "ZI", 1.0)]
        h = PauliSum.from_terms(terms, 2)
        assert [t.word for t in h.terms] == ["ZI"]

    def test_idempotent(self, rng):
        h = random_pauli_sum(rng, 4, 12)
        assert h.normalized() == h

    def test_mixed_width_rejected(self):
        with pytest.raises(ValueError, match="qubit"):
            PauliSum.from_terms([PauliTerm(2, "XZ", 1.0), PauliTerm(3, "XZI", 1.0)])


class TestPermutation:
    def test_bijection_required(self):
        with pytest.raises(ValueError, match="bijection"):
            Permutation((0, 0, 2))

    def test_compose_inverse_is_identity(self, rng):
        for _ in range(20):
            p = Permutation(tuple(rng.permutation(6)))
            assert p.compose(p.inverse()).is_identity()
            assert p.inverse().compose(p).is_identity()

    def test_permute_bits(self):
        p = Permutation((2, 0, 1))
        assert p.permute_bits((1, 0, 1)) == (0, 1, 1)


class TestApplyPermutation:
    def test_three_qubit_example(self):
        # word XYZ on qubits (0, 1, 2) relabeled by 0->2, 1->1, 2->0
        h = PauliSum.from_ops_list(3, [(1.0, [(0, "X"), (1, "Y"), (2, "Z")])])
        p = Permutation((2, 1, 0))
        out = apply_permutation(h, p)
        assert out.terms[0].word == "ZYX"

    def test_identity_is_noop(self, rng):
        h = random_pauli_sum(rng, 5, 10)
        assert apply_permutation(h, Permutation.identity(5)) == h

    def test_dimension_mismatch(self):
        h = PauliSum.from_ops_list(3, [(1.0, [(0, "X")])])
        with pytest.raises(ValueError, match="permutation"):
            apply_permutation(h, Permutation.identity(4))

    def test_benchmark_swap_preserves_spectrum(self):
        h1 = table1_hamiltonians()["H1"]
        swap = Permutation((0, 5, 2, 3, 4, 1))
        swapped = apply_permutation(h1, swap)
        words = {t.word for t in swapped.terms}
        assert "XXIIII" in words  # X0 X5 becomes X0 X1
        assert np.allclose(
            np.linalg.eigvalsh(kron_matrix(h1)), np.linalg.eigvalsh(kron_matrix(swapped))
        )

    def test_inverse_roundtrip(self, rng):
        for _ in range(10):
            h = random_pauli_sum(rng, 6, 15)
            p = Permutation(tuple(rng.permutation(6)))
            assert apply_permutation(apply_permutation(h, p), p.inverse()) == h

    def test_isospectral_random(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 7))
            h = random_pauli_sum(rng, n, 10)
            p = Permutation(tuple(rng.permutation(n)))
            hp = apply_permutation(h, p)
            assert np.allclose(eigenvalues(h), eigenvalues(hp), atol=1e-9)


class TestDense:
    def test_single_z(self):
        h = PauliSum.from_ops_list(1, [(1.0, [(0, "Z")])])
        assert np.allclose(to_dense(h), np.diag([1.0, -1.0]))

    def test_xx_antidiagonal(self):
        h = PauliSum.from_ops_list(2, [(1.0, [(0, "X"), (1, "X")])])
        assert np.allclose(to_dense(h), np.fliplr(np.eye(4)))

    def test_matches_kron_oracle(self, rng):
        for _ in range(15):
            n = int(rng.integers(1, 6))
            h = random_pauli_sum(rng, n, 8)
            assert np.allclose(to_dense(h), kron_matrix(h), atol=1e-12)

    def test_linearity(self, rng):
        for _ in range(5):
            n = int(rng.integers(2, 6))
            h1 = random_pauli_sum(rng, n, 6)
            h2 = random_pauli_sum(rng, n, 6)
            a, b = rng.normal(size=2)
            combined = h1.scaled(a) + h2.scaled(b)
            assert np.allclose(to_dense(combined), a * to_dense(h1) + b * to_dense(h2), atol=1e-10)

    def test_cap_enforced(self):
        h = PauliSum.from_ops_list(4, [(1.0, [(0, "Z")])])
        with pytest.raises(ValueError, match="cap"):
            to_dense(h, cap=3)


class TestGroundState:
    def test_all_z_product_state(self):
        h = PauliSum.from_ops_list(6, [(1.0, [(i, "Z")]) for i in range(6)])
        gs = ground_state(h)
        assert gs.energy == pytest.approx(-6.0, abs=1e-12)
        assert abs(gs.amplitudes[0b111111]) == pytest.approx(1.0, abs=1e-12)
        assert not gs.degenerate

    def test_benchmark_h1_energy(self):
        gs = ground_state(table1_hamiltonians()["H1"])
        assert gs.energy == pytest.approx(-4.0 - np.sqrt(5.0), abs=1e-10)

    def test_benchmark_h3_matches_oracle(self):
        h3 = table1_hamiltonians()["H3"]
        oracle = np.linalg.eigvalsh(kron_matrix(h3))[0]
        assert ground_state(h3).energy == pytest.approx(oracle, abs=1e-12)

    def test_degenerate_flagged(self):
        h = PauliSum.from_ops_list(2, [(1.0, [(0, "Z"), (1, "Z")])])
        gs = ground_state(h)
        assert gs.degenerate
        assert gs.energy == pytest.approx(-1.0)


class TestTextFormat:
    def test_basic_parse(self):
        h = parse_pauli_text("qubits 2\n1.0 Z0\n")
        assert h.terms == (PauliTerm(2, "ZI", 1.0),)

    def test_empty_sum(self):
        h = parse_pauli_text("qubits 3\n# nothing else\n")
        assert h.n_qubits == 3 and len(h) == 0

    def test_constant_term_and_comments(self):
        h = parse_pauli_text("qubits 2\n# a comment\n0.25  # inline\n0.5 X0 Z1\n")
        assert h.constant == 0.25
        assert len(h) == 2

    def test_roundtrip_identity(self, rng):
        h = random_pauli_sum(rng, 5, 12)
        text = format_pauli_text(h)
        assert parse_pauli_text(text) == h
        assert format_pauli_text(parse_pauli_text(text)) == text

    def test_file_roundtrip_byte_identical(self, tmp_path, rng):
        h = random_pauli_sum(rng, 4, 9)
        path = tmp_path / "h.pauli"
        write_pauli_file(h, path)
        first = path.read_bytes()
        write_pauli_file(parse_pauli_file(path), path)
        assert path.read_bytes() == first

    def test_encoded_fixture_roundtrip_byte_identical(self, tmp_path):
        from permvqe.fermion import encode, load_fcidump

        from conftest import fixture_path

        h = encode(load_fcidump(fixture_path("h2_sto3g.fcidump")))
        path = tmp_path / "h2.pauli"
        write_pauli_file(h, path)
        first = path.read_bytes()
        write_pauli_file(parse_pauli_file(path), path)
        assert path.read_bytes() == first
        assert parse_pauli_file(path) == h

    @pytest.mark.parametrize(
        "text,line",
        [
            ("qubits 2\n1.0 Q0\n", 2),
            ("qubits 2\n1.0 X5\n", 2),
            ("qubits 2\nabc X0\n", 2),
            ("qubits 2\n\n1.0 X0 Y0\n", 3),
        ],
    )
    def test_malformed_lines_report_position(self, text, line):
        with pytest.raises(PauliFileError, match=f"line {line}"):
            parse_pauli_text(text)

    def test_missing_header(self):
        with pytest.raises(PauliFileError, match="header"):
            parse_pauli_text("1.0 X0\n")
