import pytest

from graphaxial.config.loader import ToolkitConfig, deep_merge_dicts, load_config
from graphaxial.errors import ConfigError


def write(path, text):
    path.write_text(text)
    return str(path)


def test_defaults():
    config = load_config()
    assert config == ToolkitConfig()
    assert config.enumeration.cap == 2**24
    assert config.enumeration.workers == 1
    assert config.frucht.retry_bound == 3
    assert config.fusion.enforce_zero


def test_partial_file(tmp_path):
    config = load_config(write(tmp_path / "c.yaml", "enumeration:\n  workers: 4\n"))
    assert config.enumeration.workers == 4
    assert config.enumeration.cap == 2**24


def test_empty_file(tmp_path):
    assert load_config(write(tmp_path / "c.yaml", "")) == ToolkitConfig()


def test_imports_are_merged(tmp_path):
    write(tmp_path / "base.yaml", "enumeration:\n  cap: 1000\n  workers: 2\nfrucht:\n  base_tag_height: 2\n")
    path = write(tmp_path / "main.yaml", "imports:\n  - base.yaml\nenumeration:\n  workers: 8\n")
    config = load_config(path)
    assert config.enumeration.cap == 1000
    assert config.enumeration.workers == 8
    assert config.frucht.base_tag_height == 2


def test_circular_import(tmp_path):
    write(tmp_path / "a.yaml", "imports: [b.yaml]\n")
    write(tmp_path / "b.yaml", "imports: [a.yaml]\n")
    with pytest.raises(ConfigError, match="Circular"):
        load_config(str(tmp_path / "a.yaml"))


def test_missing_import(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(write(tmp_path / "a.yaml", "imports: [nowhere.yaml]\n"))


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "absent.yaml"))


@pytest.mark.parametrize(
    "text",
    [
        "enumeration:\n  cap: 0\n",
        "frucht:\n  retry_bound: -1\n",
        "- just\n- a list\n",
        "enumeration: [unclosed\n",
        "imports: base.yaml\n",
    ],
)
def test_invalid_files(tmp_path, text):
    with pytest.raises(ConfigError):
        load_config(write(tmp_path / "c.yaml", text))


def test_deep_merge():
    base = {"a": {"b": 1, "c": [1]}, "d": 1}
    overlay = {"a": {"b": 2, "c": [2]}, "e": 3}
    assert deep_merge_dicts(base, overlay) == {"a": {"b": 2, "c": [1, 2]}, "d": 1, "e": 3}
    assert base == {"a": {"b": 1, "c": [1]}, "d": 1}
