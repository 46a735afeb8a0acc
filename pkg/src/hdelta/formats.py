"""Line-oriented JSON record formats.

Every file is one JSON object per line, written compactly with sorted integer
arrays. Files carrying an indexed family start with a header line
``{"n": n, "ground": [...]}``. Writers emit records in lexicographic order of
their index, so writing what was read reproduces the input byte for byte when
the input was canonical.
"""

from __future__ import annotations

import json
from typing import Hashable, Iterable, Iterator, Optional, TextIO, Union

from .cohen import Condition, ConditionFamily, Grid
from .deltasys import Family, RootSystem, UniformWitness, masks
from .errors import InputError
from .generators import Coloring
from .ordsets import OrdSet

__all__ = [
    "dumps_record",
    "read_records",
    "family_lines",
    "read_family",
    "coloring_lines",
    "read_coloring",
    "condition_family_lines",
    "read_condition_family",
    "witness_record",
    "witness_from_record",
    "read_witness",
    "roots_lines",
    "read_roots",
    "ext_lines",
    "read_ext",
    "grid_record",
    "encode_color",
    "decode_color",
]

Source = Union[str, Iterable[str], TextIO]


def dumps_record(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"))


def read_records(src: Source) -> list:
    """Parse ``src`` (text, a list of lines or an open file) into ``(lineno, dict)`` pairs."""
    lines = src.splitlines() if isinstance(src, str) else list(src)
    out = []
    for no, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {no}: malformed JSON ({exc.msg})") from None
        if not isinstance(obj, dict):
            raise InputError(f"line {no}: expected a JSON object")
        out.append((no, obj))
    return out


def _nat(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise InputError(f"{where}: expected a natural number, got {v!r}")
    return v


def _sorted_set(v, where: str) -> OrdSet:
    if not isinstance(v, list):
        raise InputError(f"{where}: expected an integer array, got {v!r}")
    items = [_nat(x, where) for x in v]
    if any(a >= b for a, b in zip(items, items[1:])):
        raise InputError(f"{where}: array must be strictly increasing, got {v!r}")
    return OrdSet._trusted(items)


def _field(obj: dict, key: str, no: int):
    if key not in obj:
        raise InputError(f"line {no}: missing field {key!r}")
    return obj[key]


def _header(records: list, what: str) -> tuple:
    if not records:
        raise InputError(f"empty {what} file")
    no, head = records[0]
    if "n" not in head or "ground" not in head:
        raise InputError(f"line {no}: {what} file must start with a header carrying \"n\" and \"ground\"")
    n = _nat(head["n"], f"line {no}: n")
    ground = _sorted_set(head["ground"], f"line {no}: ground")
    return n, ground, records[1:]


def encode_color(c: Hashable):
    if isinstance(c, tuple):
        return [encode_color(x) for x in c]
    return c


def decode_color(v) -> Hashable:
    if isinstance(v, list):
        return tuple(decode_color(x) for x in v)
    if isinstance(v, (int, str)) or v is None:
        return v
    raise InputError(f"unsupported color value {v!r}")


def _header_line(n: int, ground: OrdSet) -> str:
    return dumps_record({"n": n, "ground": list(ground)})


# --- families -------------------------------------------------------------------


def family_lines(f: Family) -> Iterator[str]:
    yield _header_line(f.n, f.ground)
    for b, u in f.entries.items():
        yield dumps_record({"index": list(b), "set": list(u)})


def read_family(src: Source) -> Family:
    n, ground, body = _header(read_records(src), "family")
    entries: dict = {}
    for no, rec in body:
        idx = _sorted_set(_field(rec, "index", no), f"line {no}: index")
        if len(idx) != n:
            raise InputError(f"line {no}: index has {len(idx)} entries, expected {n}")
        if idx in entries:
            raise InputError(f"line {no}: duplicate index {list(idx)}")
        entries[idx] = _sorted_set(_field(rec, "set", no), f"line {no}: set")
    return Family(n, ground, entries)


def ext_lines(n: int, ground: OrdSet, ext: dict) -> Iterator[str]:
    yield _header_line(n, ground)
    for a in sorted(ext, key=lambda a: (len(a), tuple(a))):
        yield dumps_record({"index": list(a), "set": list(ext[a])})


def read_ext(src: Source) -> tuple:
    """``(n, ground, ext)`` with ``ext`` keyed by subsets of size at most ``n``."""
    n, ground, body = _header(read_records(src), "extension")
    ext: dict = {}
    for no, rec in body:
        idx = _sorted_set(_field(rec, "index", no), f"line {no}: index")
        if len(idx) > n:
            raise InputError(f"line {no}: index larger than {n}")
        ext[idx] = _sorted_set(_field(rec, "set", no), f"line {no}: set")
    return n, ground, ext


# --- colorings ------------------------------------------------------------------


def coloring_lines(c: Coloring, header: bool = True) -> Iterator[str]:
    if header:
        yield _header_line(c.n, c.ground)
    key = "tuple" if c.product else "index"
    for k, v in c.table().items():
        yield dumps_record({key: list(k), "color": encode_color(v)})


def read_coloring(src: Source, product: Optional[bool] = None) -> Coloring:
    """Read ``index`` records (sorted index sets) or ``tuple`` records (product
    colorings). Without a header, ``n`` and the ground are inferred."""
    records = read_records(src)
    n = ground = None
    if records and "n" in records[0][1]:
        n, ground, records = _header(records, "coloring")
    if not records:
        raise InputError("coloring file has no records")
    if product is None:
        product = "tuple" in records[0][1]
    key = "tuple" if product else "index"
    table: dict = {}
    for no, rec in records:
        raw = _field(rec, key, no)
        if product:
            if not isinstance(raw, list):
                raise InputError(f"line {no}: tuple must be an integer array")
            k = tuple(_nat(x, f"line {no}: tuple") for x in raw)
        else:
            k = _sorted_set(raw, f"line {no}: index")
        if k in table:
            raise InputError(f"line {no}: duplicate key {list(k)}")
        table[k] = decode_color(_field(rec, "color", no))
    if n is None:
        n = len(next(iter(table)))
        ground = OrdSet(sorted({x for k in table for x in k}))
    for k in table:
        if len(k) != n:
            raise InputError(f"coloring key {list(k)} does not have {n} coordinates")
    return Coloring.from_table(n, ground, table, product=product)


# --- Cohen conditions -----------------------------------------------------------


def condition_family_lines(cf: ConditionFamily) -> Iterator[str]:
    yield _header_line(cf.n, cf.ground)
    for b, p in cf.entries.items():
        yield dumps_record({"index": list(b), "cond": [list(x) for x in p.items]})


def read_condition_family(src: Source) -> ConditionFamily:
    n, ground, body = _header(read_records(src), "condition family")
    entries: dict = {}
    for no, rec in body:
        idx = _sorted_set(_field(rec, "index", no), f"line {no}: index")
        raw = _field(rec, "cond", no)
        if not isinstance(raw, list) or not all(isinstance(x, list) and len(x) == 2 for x in raw):
            raise InputError(f"line {no}: cond must be a list of [coordinate, bit] pairs")
        coords = [x[0] for x in raw]
        if coords != sorted(coords):
            raise InputError(f"line {no}: cond pairs must be sorted by coordinate")
        if idx in entries:
            raise InputError(f"line {no}: duplicate index {list(idx)}")
        entries[idx] = Condition(tuple((x[0], x[1]) for x in raw))
    return ConditionFamily(n, ground, entries)


def grid_record(grid: Grid, qstar: Optional[Condition] = None) -> dict:
    rec: dict = {"blocks": [list(b) for b in grid.blocks], "separated": grid.separated}
    if qstar is not None:
        rec["qstar"] = [list(x) for x in qstar.items]
    return rec


# --- witnesses and roots --------------------------------------------------------


def witness_record(w: UniformWitness) -> dict:
    order = sorted(w.rmap, key=lambda m: (len(m), tuple(m)))
    return {"rho": w.rho, "rmap": [{"mask": list(m), "r": list(w.rmap[m])} for m in order]}


def witness_from_record(obj: dict, where: str = "witness") -> UniformWitness:
    if "rho" not in obj or "rmap" not in obj or not isinstance(obj["rmap"], list):
        raise InputError(f"{where}: expected fields \"rho\" and \"rmap\"")
    rho = _nat(obj["rho"], f"{where}: rho")
    rmap: dict = {}
    for item in obj["rmap"]:
        if not isinstance(item, dict) or "mask" not in item or "r" not in item:
            raise InputError(f"{where}: rmap entries need \"mask\" and \"r\"")
        rmap[_sorted_set(item["mask"], f"{where}: mask")] = _sorted_set(item["r"], f"{where}: r")
    return UniformWitness(rho, rmap)


def read_witness(src: Source) -> UniformWitness:
    records = read_records(src)
    if len(records) != 1:
        raise InputError("witness file must hold exactly one record")
    no, obj = records[0]
    return witness_from_record(obj, f"line {no}")


def roots_lines(rs: RootSystem) -> Iterator[str]:
    yield _header_line(rs.n, rs.ground)
    order = {m: i for i, m in enumerate(masks(rs.n))}
    for (m, a) in sorted(rs.roots, key=lambda k: (order[k[0]], tuple(k[1]))):
        yield dumps_record({"mask": list(m), "index": list(a), "root": list(rs.roots[m, a])})


def read_roots(src: Source) -> RootSystem:
    n, ground, body = _header(read_records(src), "root system")
    roots: dict = {}
    for no, rec in body:
        m = _sorted_set(_field(rec, "mask", no), f"line {no}: mask")
        a = _sorted_set(_field(rec, "index", no), f"line {no}: index")
        if len(a) != len(m):
            raise InputError(f"line {no}: index size must equal mask size")
        roots[m, a] = _sorted_set(_field(rec, "root", no), f"line {no}: root")
    return RootSystem(n, ground, roots)
