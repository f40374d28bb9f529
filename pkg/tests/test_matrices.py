import random

import pytest
from hypothesis import given, settings, strategies as st

from hecke5.golden_ring import GoldenInt, LAMBDA, Modulus, ONE, ZERO
from hecke5.hecke_matrices import (
    GMat, IDENTITY, NotInG5Error, PROJ_IDENTITY, ProjMat, S_MAT, T_MAT, Word,
    appendix_b_set, appendix_c_set, decompose, delta_m, elementary_generators,
    eval_word, eval_word_homogeneous, in_g5, omega_2, parse_matrix, parse_word,
    translation, word,
)


def test_generator_relations():
    assert S_MAT * S_MAT == -IDENTITY
    u = S_MAT * T_MAT
    assert u ** 5 == IDENTITY
    assert u ** 3 != IDENTITY
    assert ProjMat.of(u) ** 5 == PROJ_IDENTITY
    assert u.trace() == -LAMBDA


def test_determinant_enforced():
    with pytest.raises(ValueError):
        GMat(ONE, ZERO, ZERO, GoldenInt(2, 0))


def test_parse_matrix():
    m = parse_matrix("[[0,1],[-1,0]]")
    assert m == S_MAT
    assert parse_matrix("[[1, L], [0, 1]]") == T_MAT
    with pytest.raises(ValueError):
        parse_matrix("[[1,0],[0]]")


def test_word_parse_and_print():
    w = parse_word("S T^3 S^-1 T^-2")
    assert str(w) == "S T^3 S^-1 T^-2"
    assert eval_word(w) == ProjMat.of(
        S_MAT * T_MAT ** 3 * S_MAT.inv() * T_MAT ** -2)


def test_word_free_reduction():
    w = word([("S", 1), ("S", -1), ("T", 2), ("T", -2), ("T", 1)])
    assert w.letters == (("T", 1),)
    assert (w * w.inv()).letters == ()


def test_homogeneous_s_order_four():
    w = word([("S", 2)])
    assert eval_word_homogeneous(w) == -IDENTITY
    assert eval_word_homogeneous(word([("S", 4)])) == IDENTITY


words_strategy = st.lists(
    st.tuples(st.sampled_from(["S", "T"]), st.integers(-6, 6).filter(bool)),
    min_size=0, max_size=12,
).map(word)


@given(words_strategy)
@settings(max_examples=200, deadline=None)
def test_decompose_roundtrip(w):
    m = eval_word(w)
    assert eval_word(decompose(m)) == m


def test_decompose_roundtrip_bulk():
    """Heavier randomized sweep than the property test default."""
    rng = random.Random(20260826)
    for _ in range(1000):
        letters = [(rng.choice("ST"), rng.choice([-3, -2, -1, 1, 2, 3]))
                   for _ in range(rng.randint(0, 40))]
        m = eval_word(word(letters))
        assert eval_word(decompose(m)) == m


def test_non_members_rejected():
    stray = GMat(ONE, ONE, ZERO, ONE)  # integer translation: not a word in S, T
    assert not in_g5(stray)
    with pytest.raises(NotInG5Error):
        decompose(stray)


def test_translation():
    assert translation(LAMBDA) == T_MAT
    assert in_g5(translation(LAMBDA * GoldenInt(3, 0)))
    assert not in_g5(translation(GoldenInt(1, 1)))


def test_projective_sign_canonical():
    m = ProjMat.of(-T_MAT)
    assert m == ProjMat.of(T_MAT)
    assert m.rep == T_MAT


def test_omega_generators_members():
    gens = omega_2()
    assert len(gens) == 4
    for g in gens:
        decompose(g)  # must not raise


@pytest.mark.parametrize("m", [3, 5, 6])
def test_delta_words_are_members(m):
    gens = delta_m(m)
    assert len(gens) == 6
    for g in gens:
        decompose(g)


@pytest.mark.parametrize("m,p", [(3, 3), (6, 3), (5, 5)])
def test_delta_residues_match_table(m, p):
    mod = Modulus.rational(m * p)
    def proj_key(mat):
        red = mod.reduce_pair
        e = mat.rep.entries() if isinstance(mat, ProjMat) else mat.entries()
        t = sum((red(x.a, x.b) for x in e), ())
        n = sum((red(-a, -b) for a, b in zip(t[::2], t[1::2])), ())
        return min(t, n)
    got = {proj_key(g) for g in delta_m(m)}
    want = {proj_key(g) for g in elementary_generators(m)}
    assert got == want


def test_elementary_generators_shape():
    gens = elementary_generators(4)
    assert len(gens) == 6
    for g in gens:
        assert g.det() == ONE


@pytest.mark.parametrize("m", [1, 3])
def test_appendix_b_members(m):
    gens = appendix_b_set(m)
    assert len(gens) == 5
    for g in gens:
        decompose(g)


def test_appendix_c_members():
    gens = appendix_c_set(4)
    assert len(gens) == 6
    for g in gens:
        decompose(g)
