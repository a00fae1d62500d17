import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from oracles import linear_order


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    """Structure files for CLI tests."""
    from ehrenfeucht.structures import serialize_structure

    d = tmp_path_factory.mktemp("structures")
    for m in (1, 2, 3, 4, 7):
        (d / f"L{m}.str").write_text(serialize_structure(linear_order(m)))
    (d / "unary.str").write_text("structure U\nuniverse 2\nrelation P 1\n0\nend\n")
    return d
