"""Built-in experiment datasets and file loading for the CLI."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

# Experiment 1: four values, two index qubits.
EXPERIMENT_1 = (0.836, -0.549, 0.615, 0.053)


def load_experiment(number: int) -> tuple[float, ...]:
    if number == 1:
        return EXPERIMENT_1
    if number == 2:
        text = resources.files("qmeansim").joinpath("data/experiment_2.csv").read_text("utf-8")
        return _parse_csv(text)
    raise ValueError(f"unknown experiment {number}; choose 1 or 2")


def _parse_csv(text: str) -> tuple[float, ...]:
    values: list[float] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        for col, token in enumerate(stripped.split(","), start=1):
            token = token.strip()
            if not token:
                continue
            try:
                values.append(float(token))
            except ValueError:
                raise ValueError(
                    f"line {lineno}, field {col}: {token!r} is not a number"
                ) from None
    if not values:
        raise ValueError("no numeric values found")
    return tuple(values)


def _parse_json(text: str) -> tuple[float, ...]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("JSON input must be a flat array of numbers")
    values: list[float] = []
    for pos, item in enumerate(data):
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ValueError(f"element {pos}: {item!r} is not a number")
        values.append(float(item))
    if not values:
        raise ValueError("JSON array is empty")
    return tuple(values)


def load_dataset(path: str | Path, fmt: str | None = None) -> tuple[float, ...]:
    """Read raw values from a CSV or JSON file, preserving order.

    CSV accepts one value per line or comma-separated values; ``#`` lines are
    comments.  JSON must be a flat array of numbers.  When ``fmt`` is omitted
    it is inferred from the file extension (default csv).
    """
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix.lower() == ".json" else "csv"
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}; choose csv or json")
    text = path.read_text("utf-8")
    return _parse_json(text) if fmt == "json" else _parse_csv(text)
