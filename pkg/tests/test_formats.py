import random

import pytest
from hypothesis import given, settings, strategies as st

from stabclass import formats, library
from stabclass.errors import FormatError
from stabclass.forms import QuadraticSpace
from stabclass.qca import random_word
from stabclass.surgery import random_complex


@pytest.mark.parametrize("name", sorted(library.CODES))
def test_code_round_trip(name):
    code = library.get(name)
    raw = formats.dump_code(code)
    again = formats.parse_code(formats.loads(formats.dumps(raw)))
    assert formats.dump_code(again) == raw
    assert again.sigma == code.sigma


def test_code_with_omega_round_trip():
    raw = formats.dump_code(library.toric2d())
    raw["omega"] = [[[], [], [[[0, 0], 1]], []], [[], [], [], [[[0, 0], 1]]],
                    [[[[0, 0], 1]], [], [], []], [[], [[[0, 0], 1]], [], []]]
    code = formats.parse_code(raw)
    assert formats.dump_code(code) == raw


def _toric():
    return formats.dump_code(library.toric2d())


@pytest.mark.parametrize("mutate", [
    lambda r: r.update(extra=1),
    lambda r: r.pop("p"),
    lambda r: r.update(p=4),
    lambda r: r.update(p="2"),
    lambda r: r.update(spatial_dims=True),
    lambda r: r["generators"][0].pop(),
    lambda r: r["generators"][0].__setitem__(0, [[[0, 0], 2]]),
    lambda r: r["generators"][0].__setitem__(0, [[[0], 1]]),
    lambda r: r["generators"][0].__setitem__(0, [[[0, 0], 1], [[0, 0], 1]]),
    lambda r: r["generators"][0].__setitem__(0, [[[0, 0.5], 1]]),
    lambda r: r.update(omega=[[[]] * 4] * 4),
])
def test_code_rejects(mutate):
    raw = _toric()
    mutate(raw)
    with pytest.raises(FormatError):
        formats.parse_code(raw)


def test_invalid_json():
    with pytest.raises(FormatError):
        formats.loads("{not json")


def test_form_round_trip_and_rejects():
    V = QuadraticSpace(5, [[1, 0], [0, 2]])
    assert formats.parse_form(formats.dump_form(V)) == V
    with pytest.raises(FormatError):
        formats.parse_form({"p": 5, "dim": 2, "gram": [[1, 0]]})
    with pytest.raises(FormatError):
        formats.parse_form({"p": 5, "dim": 1, "gram": [[1]], "label": "x"})


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]), st.integers(0, 9))
def test_complex_round_trip(seed, p, d):
    X = random_complex(random.Random(seed), p, d)
    raw = formats.dump_complex(X)
    assert formats.parse_complex(formats.loads(formats.dumps(raw))) == X


def test_complex_rejects():
    with pytest.raises(FormatError):
        formats.parse_complex({"p": 3, "d": 1, "dims": [1, 1], "pairings": [[[1]]], "middle": {"gram": []}})
    with pytest.raises(FormatError):
        formats.parse_complex({"p": 3, "d": 2, "dims": [1, 0], "pairings": [[[1]]]})


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_qca_round_trip(seed, p):
    U = random_word(random.Random(seed), p, 1, 2, 4)
    raw = formats.dump_qca(U)
    assert formats.parse_qca(formats.loads(formats.dumps(raw))) == U


def test_dumps_is_deterministic():
    a = formats.dumps(_toric())
    assert a == formats.dumps(formats.loads(a)) and a.endswith("\n")
