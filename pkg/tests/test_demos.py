import runpy
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).parent.parent / "demos").glob("plot_*.py"))


@pytest.mark.parametrize("path", DEMOS, ids=[p.stem for p in DEMOS])
def test_demo_runs(path, capsys):
    runpy.run_path(str(path), run_name="__main__")
    assert capsys.readouterr().out.strip()


def test_top_level_names():
    import holonomy_lab as hl
    assert all(hasattr(hl, name) for name in hl.__all__)
    assert hl.berger_check(hl.full_parabolic(hl.make_space(1))).is_berger
