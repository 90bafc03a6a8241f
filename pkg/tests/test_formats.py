import pytest

from nclift import (DEFAULT_MODULUS, Alphabet, FormatError, NCPolynomial,
                    build_decoder, build_one_shot_decoder, circuit_from_poly,
                    format_automaton, format_circuit, format_poly,
                    parse_automaton, parse_circuit, parse_poly)
from nclift.randcircuits import random_circuit

from helpers import random_automaton, random_poly

P = DEFAULT_MODULUS
X3 = Alphabet("X", 3)

POLY_GOLDEN = """\
poly over X vars 3 modulus 1000000007
7 : 1
3 : x2
1 : x0 x1
"""

CIRCUIT_GOLDEN = """\
circuit g over X vars 3 modulus 1000000007
node 0 var 2
node 1 const 3
node 2 mul 1 0
node 3 var 0
node 4 var 1
node 5 mul 3 4
node 6 add 2 5
output 6
"""


def test_poly_golden_format():
    f = NCPolynomial(X3, P, {(): 7, (0, 1): 1, (2,): 3})
    assert format_poly(f) == POLY_GOLDEN
    assert parse_poly(POLY_GOLDEN) == f


def test_circuit_golden_format():
    f = NCPolynomial(X3, P, {(0, 1): 1, (2,): 3})
    c = circuit_from_poly(f, name="g")
    assert format_circuit(c) == CIRCUIT_GOLDEN
    assert parse_circuit(CIRCUIT_GOLDEN) == c


def test_decoder_golden_format():
    dec = build_decoder(2, modulus=P)
    text = format_automaton(dec)
    lines = text.splitlines()
    assert lines[0] == ("automaton over Y letters 2 states 5 start 0 "
                        "accept 0 xvars 8 modulus 1000000007")
    assert lines[1] == "trans 0 y0 1 scalar 1"
    assert lines[3] == "trans 1 y0 3 term 1 x0"
    assert len(lines) == 13
    assert parse_automaton(text) == build_decoder(2, modulus=P, y_name="Y")


def test_poly_round_trip_random(rng):
    for _ in range(40):
        f = random_poly(rng, X3, P, max_len=4, terms=6)
        text = format_poly(f)
        assert parse_poly(text) == f
        assert format_poly(parse_poly(text)) == text


def test_circuit_round_trip_random(rng):
    for _ in range(40):
        c = random_circuit(X3, P, rng, max_gates=10, max_degree=4)
        text = format_circuit(c)
        assert parse_circuit(text) == c
        assert format_circuit(parse_circuit(text)) == text


def test_automaton_round_trip_random(rng):
    for _ in range(20):
        a = random_automaton(rng, modulus=97)
        text = format_automaton(a)
        assert parse_automaton(text) == a
        assert format_automaton(parse_automaton(text)) == text
    big = build_one_shot_decoder(2, 2, modulus=P)
    assert parse_automaton(format_automaton(big)) == big


def test_parse_x_name_default():
    # The x alphabet's name is not stored in the file.
    dec = build_decoder(2, modulus=P, x_name="Q")
    back = parse_automaton(format_automaton(dec))
    assert back.x_alphabet.name == "X"
    assert parse_automaton(format_automaton(dec), x_name="Q") == dec


def test_circuit_comments_and_blanks_ignored():
    text = ("circuit g over X vars 2 modulus 7\n"
            "# a remark\n"
            "node 0 var 0\n"
            "\n"
            "node 1 var 1\n"
            "node 2 mul 0 1\n"
            "output 2\n")
    c = parse_circuit(text)
    assert c.size_report().muls == 1
    assert "#" not in format_circuit(c)


def test_negative_coefficients_normalize():
    f = parse_poly("poly over X vars 2 modulus 7\n-1 : x0\n")
    assert f.coeff((0,)).value == 6


@pytest.mark.parametrize("text,fragment", [
    ("nonsense\n1 : x0\n", "header"),
    ("poly over X vars 2 modulus 8\n", "not prime"),
    ("poly over X vars 2 modulus 7\n1 : x5\n", "line 2"),
    ("poly over X vars 2 modulus 7\n1 : bogus\n", "line 2"),
    ("poly over X vars 2 modulus 7\n1 : x0\n2 : x0\n", "line 3"),
    ("poly over X vars 2 modulus 7\nq : x0\n", "line 2"),
])
def test_parse_poly_rejects(text, fragment):
    with pytest.raises((FormatError, ValueError)) as err:
        parse_poly(text)
    assert fragment in str(err.value)


@pytest.mark.parametrize("text", [
    "circuit g over X vars 2 modulus 7\nnode 1 var 0\noutput 1\n",
    "circuit g over X vars 2 modulus 7\nnode 0 var 0\n",
    "circuit g over X vars 2 modulus 7\nnode 0 add 0 0\noutput 0\n",
    "circuit g over X vars 2 modulus 7\nnode 0 var 0\noutput 0\noutput 0\n",
    "circuit g over X vars 2 modulus 7\nnode 0 frob 1\noutput 0\n",
])
def test_parse_circuit_rejects(text):
    with pytest.raises(FormatError):
        parse_circuit(text)


@pytest.mark.parametrize("text", [
    "automaton over Y letters 2 states 2 start 0 accept 5 xvars 2 modulus 7\n",
    ("automaton over Y letters 2 states 2 start 0 accept 1 xvars 2 modulus 7\n"
     "trans 0 y9 1 scalar 1\n"),
    ("automaton over Y letters 2 states 2 start 0 accept 1 xvars 2 modulus 7\n"
     "trans 0 y0 1 blob 1\n"),
    ("automaton over Y letters 2 states 2 start 0 accept 1 xvars 2 modulus 7\n"
     "trans 0 y0 1 scalar wat\n"),
])
def test_parse_automaton_rejects(text):
    with pytest.raises(FormatError):
        parse_automaton(text)
