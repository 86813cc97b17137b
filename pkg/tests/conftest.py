import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from g2forge import catalog  # noqa: E402


@pytest.fixture(scope="session")
def n28():
    return catalog.algebra("n28")


@pytest.fixture(scope="session")
def n28_pair():
    return catalog.n28_coupled_pair()


@pytest.fixture(scope="session")
def einstein_ext():
    return catalog.n28_einstein_extension()


@pytest.fixture(scope="session")
def survey_rows():
    from g2forge.survey import build_table
    return build_table()
