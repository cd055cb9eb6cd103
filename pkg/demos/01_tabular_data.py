"""Loading a CSV and walking its dimensions and records.

A dataset is deconstructed into ordered, typed dimensions (columns) and
addressable records (rows): the first value of the name dimension is
name[0], the first record is record 0, and that order never changes.
"""

from pathlib import Path

from sketchbind import get_dimension, get_record, load_csv

HERE = Path(__file__).resolve().parent

trees = load_csv((HERE / "trees.csv").read_bytes(), "trees")

print(f"dataset {trees.name!r}: {trees.record_count} records")
for dim in trees.dimensions:
    print(f"  {dim.name:12s} {dim.dtype:12s} {list(dim.values)}")

heights = get_dimension(trees, "avg.height")
print("\navg.height[0] =", heights.values[0])

print("record 0 =", dict(get_record(trees, 0).pairs))
print("record 1 =", dict(get_record(trees, 1).pairs))
