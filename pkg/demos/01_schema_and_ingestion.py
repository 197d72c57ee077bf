"""
Declaring mixed-data schemas and ingesting tables
=================================================

A dataset is declared in two plain-text pieces: a schema (one attribute per
line) and a headerless CSV table. Attributes are numerical (``num``),
nominal (``nom``), or ordinal (``ord``); ordinal value lists are written in
rank order.
"""

from harr import (
    DataError,
    discretize_numerical,
    ingest_table,
    normalize_numerical,
    parse_schema,
)

schema_text = """\
# patient vitals and symptoms
temperature,num
nausea,nom,yes|no
pain_level,ord,none|mild|severe
"""

data_text = """\
35.5,no,none
37.0,no,mild
38.9,yes,severe
41.5,yes,severe
36.6,no,none
"""

schema = parse_schema(schema_text)
print(f"{schema.d} attributes: {schema.d_u} numerical, "
      f"{schema.d_n} nominal, {schema.d_o} ordinal")

dataset = ingest_table(data_text, schema)
print(f"{dataset.n} objects ingested")
print("cells (categorical labels resolved to 1-based value indices):")
print(dataset.cells)

# Missing values are rejected outright, never imputed.
try:
    ingest_table("36.0,,mild", schema)
except DataError as exc:
    print(f"\nmissing cell rejected: {exc}")

# Unknown labels name the legal alternatives.
try:
    ingest_table("36.0,maybe,mild", schema)
except DataError as exc:
    print(f"unknown label rejected: {exc}")

# Numerical attributes are min-max scaled to [0, 1]; constants map to 0.
dataset = normalize_numerical(dataset)
print("\nnormalized temperature column:", dataset.cells[:, 0])

# The discretized view bins numerical attributes into equal-width ordinal
# codes so they can act as context for categorical base distances.
view = discretize_numerical(dataset)
print("bin counts per attribute:", view.bin_counts)
print("codes:")
print(view.codes)
