import itertools

import pytest

from nclift import (DEFAULT_MODULUS, Alphabet, BudgetError, NCPolynomial,
                    Transition, Weight, WeightedAutomaton, Word,
                    build_decoder, build_one_shot_decoder, index_to_word,
                    one_shot_nominal_states, one_shot_state_count,
                    series_truncate, word_to_index)

from helpers import coeff_by_paths, random_automaton

P = DEFAULT_MODULUS


def test_word_index_round_trip():
    for base in (2, 3, 5):
        for length in (0, 1, 3):
            for i in range(base ** length):
                w = index_to_word(i, base, length)
                assert len(w) == length
                assert word_to_index(w, base) == i
    assert index_to_word(5, 2, 3) == (1, 0, 1)
    with pytest.raises(ValueError):
        index_to_word(8, 2, 3)
    with pytest.raises(ValueError):
        word_to_index((2,), 2)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_decoder_floors(m):
    dec = build_decoder(m, modulus=P)
    assert dec.num_states == 2 * m + 1
    assert dec.transition_count == m ** 3 + 2 * m
    assert dec.start == dec.accept == 0


@pytest.mark.parametrize("m", [2, 3])
def test_decoder_block_table(m):
    dec = build_decoder(m, modulus=P)
    X = dec.x_alphabet
    # Empty word: start and accept coincide.
    assert dec.coeff_of_word(()) == NCPolynomial.constant(1, X, P)
    # One block: y_a y_b y_c picks out x with index m^2*a + m*b + c.
    for a, b, c in itertools.product(range(m), repeat=3):
        got = dec.coeff_of_word((a, b, c))
        want = NCPolynomial.variable(m * m * a + m * b + c, X, P)
        assert got == want
    # Non-multiples of the block length vanish.
    for length in (1, 2, 4, 5):
        for w in itertools.product(range(m), repeat=length):
            assert dec.coeff_of_word(w).is_zero()


def test_decoder_two_blocks_multiply_in_order():
    dec = build_decoder(2, modulus=P)
    X = dec.x_alphabet
    for i, j in itertools.product(range(8), repeat=2):
        w = index_to_word(i, 2, 3) + index_to_word(j, 2, 3)
        want = (NCPolynomial.variable(i, X, P)
                * NCPolynomial.variable(j, X, P))
        assert dec.coeff_of_word(w) == want


def test_series_truncate_decoder():
    dec = build_decoder(2, modulus=P)
    table = series_truncate(dec, 6)
    assert len(table) == 1 + 8 + 64
    X = dec.x_alphabet
    assert table[Word(dec.y_alphabet, ())] == NCPolynomial.constant(1, X, P)
    for i in range(8):
        w = Word(dec.y_alphabet, index_to_word(i, 2, 3))
        assert table[w] == NCPolynomial.variable(i, X, P)


def test_series_truncate_budget():
    dec = build_decoder(3, modulus=P)
    with pytest.raises(BudgetError):
        series_truncate(dec, 6, max_words=100)


def test_coeff_of_word_matches_path_enumeration(rng):
    for _ in range(20):
        auto = random_automaton(rng)
        for length in range(5):
            for w in itertools.product(range(2), repeat=length):
                assert auto.coeff_of_word(w) == coeff_by_paths(auto, w)


def test_matrix_product_matches_coeff(rng):
    for _ in range(10):
        auto = random_automaton(rng)
        mats = auto.transition_matrices()
        for length in range(4):
            for w in itertools.product(range(2), repeat=length):
                prod = None
                for a in w:
                    prod = mats[a] if prod is None else prod * mats[a]
                if prod is None:
                    expected = NCPolynomial.constant(
                        int(auto.start == auto.accept),
                        auto.x_alphabet, auto.modulus)
                else:
                    expected = prod.entry(auto.start, auto.accept)
                assert auto.coeff_of_word(w) == expected


def test_empty_word_needs_merged_endpoints(rng):
    auto = random_automaton(rng, states=3)
    c = auto.coeff_of_word(())
    if auto.start == auto.accept:
        assert c == NCPolynomial.constant(1, auto.x_alphabet, auto.modulus)
    else:
        assert c.is_zero()


def test_parallel_weights_merge():
    Y, X = Alphabet("Y", 1), Alphabet("X", 2)
    dup = (Transition(0, 0, 1, Weight(3)), Transition(0, 0, 1, Weight(4)))
    auto = WeightedAutomaton(Y, X, 97, 2, 0, 1, dup)
    assert auto.transition_count == 1
    assert auto.transitions[0].weight == Weight(7)

    same_var = (Transition(0, 0, 1, Weight(3, 1)),
                Transition(0, 0, 1, Weight(94, 1)))
    auto2 = WeightedAutomaton(Y, X, 97, 2, 0, 1, same_var)
    # 3 + 94 = 0 mod 97: the arrow disappears entirely.
    assert auto2.transition_count == 0

    with pytest.raises(ValueError):
        WeightedAutomaton(Y, X, 97, 2, 0, 1,
                          (Transition(0, 0, 1, Weight(3)),
                           Transition(0, 0, 1, Weight(4, 0))))
    with pytest.raises(ValueError):
        WeightedAutomaton(Y, X, 97, 2, 0, 1,
                          (Transition(0, 0, 1, Weight(3, 0)),
                           Transition(0, 0, 1, Weight(4, 1))))


def test_automaton_validation():
    Y, X = Alphabet("Y", 2), Alphabet("X", 2)
    with pytest.raises(ValueError):
        WeightedAutomaton(Y, X, 97, 0, 0, 0, ())
    with pytest.raises(ValueError):
        WeightedAutomaton(Y, X, 97, 2, 2, 0, ())
    with pytest.raises(ValueError):
        WeightedAutomaton(Y, X, 97, 2, 0, 0,
                          (Transition(0, 5, 1, Weight(1)),))
    with pytest.raises(ValueError):
        WeightedAutomaton(Y, X, 97, 2, 0, 0,
                          (Transition(0, 0, 1, Weight(1, 9)),))


@pytest.mark.parametrize("n", [2, 3])
def test_one_shot_depth_one_is_plain_decoder(n):
    assert build_one_shot_decoder(n, 1, modulus=P) == build_decoder(
        n, modulus=P)


def test_one_shot_state_counts():
    # L = (3^d - 1) / 2 prefix and as many suffix states per length class.
    assert one_shot_state_count(2, 2) == 1 + 2 * (2 + 4 + 8 + 16)
    assert one_shot_state_count(2, 2, merged=False) == 62
    assert one_shot_nominal_states(2, 2) == 2 * 2**4 + 1
    assert one_shot_nominal_states(2, 2, merged=False) == 34
    dec = build_one_shot_decoder(2, 2, modulus=P)
    assert dec.num_states == 61
    assert dec.transition_count == 2**9 + 2 * (2 + 4 + 8 + 16)


def test_one_shot_block_table_sampled(rng):
    dec = build_one_shot_decoder(2, 2, modulus=P)
    X = dec.x_alphabet
    indices = {0, 511} | {rng.randrange(512) for _ in range(16)}
    for i in indices:
        w = index_to_word(i, 2, 9)
        assert dec.coeff_of_word(w) == NCPolynomial.variable(i, X, P)
    # Off-length words vanish; two blocks multiply in order.
    assert dec.coeff_of_word((0,) * 5).is_zero()
    two = index_to_word(7, 2, 9) + index_to_word(300, 2, 9)
    want = NCPolynomial.variable(7, X, P) * NCPolynomial.variable(300, X, P)
    assert dec.coeff_of_word(two) == want


def test_one_shot_budget_caps():
    with pytest.raises(BudgetError):
        build_one_shot_decoder(2, 2, modulus=P, max_states=10)
    with pytest.raises(BudgetError):
        build_one_shot_decoder(2, 2, modulus=P, max_transitions=100)
