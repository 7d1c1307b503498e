import importlib.util
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_classify_catalog(capsys):
    assert load("classify_catalog").main([]) == 0
    assert "SL4R" in capsys.readouterr().out


def test_tube_comparison(capsys):
    assert load("tube_comparison").main(["--radii", "0", "1"]) == 0
    assert "match" in capsys.readouterr().out


@pytest.mark.parametrize("space", ["SU12", "SL2C"])
def test_sweep(space, tmp_path, capsys):
    out = tmp_path / "sweep.json"
    assert load("sweep_realizations").main(["--spaces", space, "--json", str(out)]) == 0
    assert out.exists()
