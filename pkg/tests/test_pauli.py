import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwalks import pauli
from qwalks.exceptions import FormatError, ValidationError
from qwalks.graphs import family, pad_to_power_of_two, random_graph
from qwalks.pauli import PauliTermList, apply_pauli_exp, apply_string, decompose

from oracles import dense_string, hilbert_schmidt_coefficients, random_hermitian


def test_decompose_single_letters():
    assert decompose([[1, 0], [0, -1]]).terms == ((1.0, "Z"),)
    assert decompose([[0, 1], [1, 0]]).terms == ((1.0, "X"),)


def test_decompose_cycle4_against_brute_force():
    A = family("cycle", 4).adj
    oracle = {s: c for s, c in hilbert_schmidt_coefficients(A).items() if abs(c) > 1e-12}
    terms = decompose(A)
    assert dict((s, c) for c, s in terms) == pytest.approx({s: c.real for s, c in oracle.items()})
    assert terms.strings == ["IX", "XX"]
    assert np.max(np.abs(terms.to_matrix() - A)) <= 1e-10


def test_decompose_rejects_bad_input():
    with pytest.raises(ValidationError):
        decompose(np.eye(3))
    with pytest.raises(ValidationError):
        decompose([[0, 1], [0, 0]])
    with pytest.raises(ValidationError):
        decompose([[1.0]])


@pytest.mark.parametrize("q", [1, 2, 3])
def test_coefficients_match_hilbert_schmidt(q):
    H = random_hermitian(np.random.default_rng(q), 2 ** q)
    oracle = hilbert_schmidt_coefficients(H)
    got = pauli.pauli_coefficients(H)
    assert np.allclose(got, [oracle[s] for s in pauli.all_strings(q)], atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(q=st.integers(1, 4), seed=st.integers(0, 2**32 - 1))
def test_round_trip_and_reality(q, seed):
    H = random_hermitian(np.random.default_rng(seed), 2 ** q)
    assert np.max(np.abs(pauli.pauli_coefficients(H).imag)) <= 1e-12
    terms = decompose(H)
    assert len(terms) <= 4 ** q
    assert np.max(np.abs(terms.to_matrix() - H)) <= 1e-10


def test_terms_are_lexicographic_and_unique():
    terms = decompose(random_hermitian(np.random.default_rng(0), 8))
    assert terms.strings == sorted(terms.strings)
    assert len(set(terms.strings)) == len(terms)
    with pytest.raises(ValidationError):
        PauliTermList(((1.0, "XZ"), (2.0, "XZ")), 2)


@pytest.mark.parametrize("seed", range(8))
def test_adjacency_has_no_odd_y_strings(seed):
    padded, _ = pad_to_power_of_two(random_graph(3 + seed, 0.5, seed).adj)
    for _, s in decompose(padded):
        assert s.count("Y") % 2 == 0


def test_apply_string_examples():
    psi = np.array([0.3, 0.4j, -0.5, 0.1 + 0.2j])
    assert np.allclose(apply_string("II", psi), psi)
    assert np.allclose(apply_string("X", [2, 3]), [3, 2])
    assert np.allclose(apply_string("ZY", apply_string("ZY", psi)), psi, atol=1e-15)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_apply_string_matches_dense(q):
    rng = np.random.default_rng(q)
    psi = rng.normal(size=2 ** q) + 1j * rng.normal(size=2 ** q)
    for s in pauli.all_strings(q):
        assert np.max(np.abs(apply_string(s, psi) - dense_string(s) @ psi)) <= 1e-14
        assert np.array_equal(pauli.pauli_matrix(s), dense_string(s))


def test_apply_string_dimension_mismatch():
    with pytest.raises(ValidationError):
        apply_string("XX", [1, 0])
    with pytest.raises(ValidationError):
        apply_string("XQ", [1, 0, 0, 0])


def test_pauli_exp_examples():
    psi = np.array([0.6, 0.8])
    assert np.allclose(apply_pauli_exp("X", 0.0, psi), psi)
    assert np.allclose(apply_pauli_exp("X", np.pi / 2, [1, 0]), [0, -1j], atol=1e-15)
    out = apply_pauli_exp("ZZ", 0.7, [0, 1, 0, 0])
    assert np.allclose(out, np.exp(0.7j) * np.array([0, 1, 0, 0]))
    assert abs(np.linalg.norm(out) - 1) < 1e-15


def test_text_dump_round_trip():
    terms = decompose(random_hermitian(np.random.default_rng(5), 4))
    text = terms.to_text()
    line = text.splitlines()[0]
    coeff, s = line.split("\t")
    assert coeff == f"{terms.terms[0][0]:.12g}" and s == terms.terms[0][1]
    back = PauliTermList.from_text(text)
    assert back.strings == terms.strings
    assert np.allclose(back.coefficients, terms.coefficients, rtol=1e-11)
    with pytest.raises(FormatError):
        PauliTermList.from_text("1.0 XX\n")


def test_term_list_apply_matches_matrix():
    H = random_hermitian(np.random.default_rng(2), 8)
    terms = decompose(H)
    psi = np.arange(8) + 1j
    assert np.allclose(terms.apply(psi), H @ psi)
