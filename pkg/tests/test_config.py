import json

import pytest

from stabclass import config
from stabclass.errors import FormatError


def test_defaults():
    L = config.Limits()
    assert (L.max_spairs, L.max_degree, L.max_torus_doublings) == (200_000, 200, 3)


def test_replace_ignores_none():
    L = config.Limits().replace(max_degree=5, max_spairs=None)
    assert L.max_degree == 5 and L.max_spairs == 200_000


def test_set_and_get():
    old = config.get_limits()
    try:
        config.set_limits(config.Limits(max_spairs=7))
        assert config.get_limits().max_spairs == 7
    finally:
        config.set_limits(old)


def _write(tmp_path, obj):
    path = tmp_path / "limits.json"
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return path


def test_load(tmp_path):
    L = config.load(_write(tmp_path, {"max_degree": 40}))
    assert L.max_degree == 40 and L.max_torus_doublings == 3


@pytest.mark.parametrize("bad", [{"nope": 1}, {"max_degree": -1}, {"max_degree": "4"},
                                 {"max_degree": True}, [1], "{"])
def test_load_rejects(tmp_path, bad):
    with pytest.raises(FormatError):
        config.load(_write(tmp_path, bad))
