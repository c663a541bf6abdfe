"""On-disk cache of count tables.

A cache is a directory with one text file per ``(k, n, class)``.  A file
starts with a version line and the key, then holds one line per layer with
the entries in decimal, in shape-index order::

    knoncrossing-table 1
    k 3
    n 12
    class star
    L 0 1
    L 1 1 1
    ...

Tables with a memory flag add ``F <m> ...`` lines for the forbid layers.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path

from .counting import NO_ONE_ARC, CountTable, build_tables
from .shapes import shape_space

log = logging.getLogger(__name__)

MAGIC = "knoncrossing-table"
VERSION = 1


class CacheError(ValueError):
    pass


def table_path(directory: str | os.PathLike, k: int, n: int, cls: str) -> Path:
    return Path(directory) / f"{cls}-k{k}-n{n}.tbl"


def dump_table(table: CountTable, path: str | os.PathLike) -> None:
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(f"{MAGIC} {VERSION}\nk {table.k}\nn {table.n}\nclass {table.cls}\n")
        for m, layer in enumerate(table.layers):
            fh.write(f"L {m} " + " ".join(map(str, layer)) + "\n")
        if table.forbid_layers is not None:
            for m, layer in enumerate(table.forbid_layers):
                fh.write(f"F {m} " + " ".join(map(str, layer)) + "\n")
    os.replace(tmp, path)


def load_table(path: str | os.PathLike) -> CountTable:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    try:
        magic, version = lines[0].split()
        if magic != MAGIC or int(version) != VERSION:
            raise CacheError(f"{path}: not a version-{VERSION} table file")
        k = int(lines[1].split()[1])
        n = int(lines[2].split()[1])
        cls = lines[3].split()[1]
        layers: list[list[int]] = [[] for _ in range(n + 1)]
        forbid = [[] for _ in range(n + 1)] if cls == NO_ONE_ARC else None
        for line in lines[4:]:
            tag, m, *values = line.split()
            target = {"L": layers, "F": forbid}.get(tag)
            if target is None:
                raise CacheError(f"{path}: unexpected line tag {tag!r}")
            target[int(m)] = [int(v) for v in values]
    except CacheError:
        raise
    except (IndexError, ValueError) as exc:
        raise CacheError(f"{path}: malformed table file ({exc})") from None
    space = shape_space(k, n // 2 + 1)
    for m in range(n + 1):
        want = space.prefix(min(m, n - m))
        if len(layers[m]) != want or (forbid is not None and len(forbid[m]) != want):
            raise CacheError(f"{path}: layer {m} has the wrong length")
    return CountTable(k, n, cls, space, layers, forbid)


def cached_tables(directory: str | os.PathLike | None, k: int, n: int, cls: str) -> CountTable:
    """Load the table from ``directory`` if present, else build it (and store it)."""
    if directory is None:
        return build_tables(k, n, cls)
    path = table_path(directory, k, n, cls)
    if path.exists():
        try:
            table = load_table(path)
            if (table.k, table.n, table.cls) == (k, n, cls):
                return table
            log.warning("%s holds a different table; rebuilding", path)
        except CacheError as exc:
            log.warning("%s; rebuilding", exc)
    table = build_tables(k, n, cls)
    Path(directory).mkdir(parents=True, exist_ok=True)
    dump_table(table, path)
    return table
