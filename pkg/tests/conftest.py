from __future__ import annotations

from pathlib import Path

import pytest

from sketchbind import Scene, load_csv

REPO_ROOT = Path(__file__).resolve().parent.parent
DEMO_DIR = REPO_ROOT / "demos"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

TREES_CSV = (
    "name,avg.height,avg.girth\n"
    "Ponderosa Pine,478,14\n"
    "Sugar Pine,220,10\n"
    "Douglas Fir,310,12\n"
)

# Hand-parsed copy of TREES_CSV, kept literal on purpose: the loader is
# checked against this, never against itself.
TREES_PARSED = {
    "name": ["Ponderosa Pine", "Sugar Pine", "Douglas Fir"],
    "avg.height": [478.0, 220.0, 310.0],
    "avg.girth": [14.0, 10.0, 12.0],
}


@pytest.fixture
def trees():
    return load_csv(TREES_CSV, "trees")


@pytest.fixture
def scene(trees):
    s = Scene()
    s.datasets["trees"] = trees
    return s
