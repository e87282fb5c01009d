"""Bundled example systems and their on-disk JSON fixtures."""
import pytest

from limitwave.filters import Filter, FilterBank
from limitwave.presets import (
    PRESET_NAMES,
    preset,
    preset_path,
    preset_spec,
    write_presets,
)
from limitwave.serialize import encode, load


def test_preset_names():
    assert PRESET_NAMES == ("cantor", "cantor-r", "d4", "frame", "haar", "quincunx")


def test_preset_kinds():
    assert isinstance(preset("haar"), FilterBank)
    assert isinstance(preset("frame"), Filter)
    assert preset("frame").multiplicity is not None
    assert preset_spec("haar").N == 2
    assert preset_spec("cantor").N == 3
    assert preset_spec("quincunx").dim == 2


def test_unknown_preset():
    with pytest.raises(KeyError, match="unknown preset"):
        preset("nope")


def test_bundled_fixtures_match_builders():
    # the shipped JSON must stay in lock-step with the constructors
    for name in PRESET_NAMES:
        assert encode(load(preset_path(name))) == encode(preset(name))


def test_preset_dir_override(tmp_path, monkeypatch):
    paths = write_presets(str(tmp_path))
    assert len(paths) == len(PRESET_NAMES)
    monkeypatch.setenv("LIMITWAVE_PRESET_DIR", str(tmp_path))
    assert preset_path("haar") == str(tmp_path / "haar.json")
    assert load(preset_path("d4")) == preset("d4")
