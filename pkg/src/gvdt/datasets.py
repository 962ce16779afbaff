"""Example models shipped as GV table files under ``data/``.

Besides the table itself a data file may carry ``euler <int>``,
``note <text>`` and ``expect <key>=<int>`` lines.  Set ``GVDT_DATA_DIR`` to
load the files from another directory.
"""

import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import GVDTError, ParseError
from .formats import parse_gv
from .invariants import GVTable
from .series import Basis

__all__ = ["ExampleModel", "EXAMPLES", "data_dir", "load_example", "example_text"]

EXAMPLES = ("local_p1", "local_elliptic", "local_p2_low_degree")


@dataclass(frozen=True)
class ExampleModel:
    name: str
    basis: Basis
    gv: GVTable
    euler: int
    notes: tuple = ()
    expected: dict = field(default_factory=dict)


def data_dir():
    env = os.environ.get("GVDT_DATA_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("gvdt") / "data"))


def example_text(name):
    if name not in EXAMPLES:
        raise GVDTError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    path = data_dir() / f"{name}.gv"
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise GVDTError(f"data file {path} not found") from None


def load_example(name, K=None):
    """Load a bundled model; ``K`` sets how many classes k[E] local_elliptic lists."""
    text = example_text(name)
    euler, notes, expected, table_lines = 0, [], {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        key, _, rest = line.partition(" ")
        try:
            if key == "euler":
                euler = int(rest)
            elif key == "note":
                notes.append(rest.strip())
            elif key == "expect":
                k, _, v = rest.partition("=")
                expected[k.strip()] = int(v)
            else:
                table_lines.append(raw)
                continue
        except ValueError:
            raise ParseError(f"bad {key} line in {name}.gv: {line!r}", lineno) from None
        table_lines.append("")
    gv = parse_gv("\n".join(table_lines))
    if name == "local_elliptic" and K is not None:
        if K < 1:
            raise GVDTError("K must be positive")
        gv = GVTable({((k,), 1): 1 for k in range(1, K + 1)}, gv.basis)
    return ExampleModel(name, gv.basis, gv, euler, tuple(notes), expected)
