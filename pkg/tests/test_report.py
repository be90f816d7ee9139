import json
from fractions import Fraction

from exzero.cyclotomic import root_of_unity
from exzero.padic import PadicInt
from exzero.report import dumps, encode, envelope
from exzero.unramified import unramified_ring


def test_padic_encoding():
    assert encode(PadicInt(7, 3, 8)) == {"p": 7, "precision": 3, "digits": [1, 1, 0]}


def test_unramified_encoding():
    R = unramified_ring(11, 70)
    x = R.element([1, 2, 3], 2)
    enc = encode(x)
    assert enc["f"] == 3 and enc["poly"] == [5, 3, 7, 1]
    assert enc["digits"] == [[1, 0], [2, 0], [3, 0]]
    assert "f" not in encode(unramified_ring(7, 6).from_int(5, 2))


def test_cyclo_and_fraction_encoding():
    z = root_of_unity(3, 1) + Fraction(1, 2)
    assert encode(z) == {"level": 3, "coefficients": ["1/2", "1"]}


def test_dumps_is_sorted_and_stable():
    rep = envelope("x", {"b": 1, "a": 2}, [PadicInt(5, 2, 7)])
    s = dumps(rep)
    assert s == dumps(json.loads(s))
    assert s.index('"a"') < s.index('"b"')
