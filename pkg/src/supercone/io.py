"""Reading and writing matrices, vectors and DOT digraphs.

Text format: the dimension ``n`` on the first line, then ``n`` rows of
whitespace-separated entries, each a decimal or a ``p/q`` rational. The
structured format is JSON, ``{"n": 2, "entries": [[0, 2], ["1/2", 0]]}``,
optionally with ``"labels"`` naming the nodes. ``#`` starts a comment in
text files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .core import EXACT, Arith, MaxMatrix, MaxVector

__all__ = [
    "FormatError",
    "format_scalar",
    "parse_matrix",
    "parse_vector",
    "load_matrix",
    "load_vector",
    "dump_matrix",
    "dump_vector",
    "to_dot",
]


class FormatError(ValueError):
    pass


def format_scalar(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return repr(v)


def _json_scalar(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    return v


def _sniff(text: str, fmt: str) -> str:
    if fmt in ("text", "json"):
        return fmt
    if fmt != "auto":
        raise FormatError(f"unknown format {fmt!r}")
    return "json" if text.lstrip().startswith("{") else "text"


def _tokens(text: str) -> list[list[str]]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].split()
        if line:
            lines.append(line)
    return lines


def _scalar(tok, arith: Arith):
    try:
        return arith.scalar(tok)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FormatError(f"bad entry {tok!r}: {exc}") from None


def _labels(raw, n: int) -> list:
    if raw is None:
        return list(range(1, n + 1))
    if len(raw) != n or len(set(map(str, raw))) != n:
        raise FormatError("labels must name each node once")
    return list(raw)


def parse_matrix(text: str, fmt: str = "auto", arith: Arith = EXACT) -> tuple[MaxMatrix, list]:
    """Parse a matrix; returns it with the node labels (``1..n`` by default)."""
    fmt = _sniff(text, fmt)
    if fmt == "json":
        try:
            doc = json.loads(text, parse_float=str)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from None
        try:
            n = int(doc["n"])
            rows = doc["entries"]
        except (KeyError, TypeError, ValueError):
            raise FormatError('expected {"n": int, "entries": [[...]]}') from None
        labels = _labels(doc.get("labels"), n)
    else:
        lines = _tokens(text)
        if not lines or len(lines[0]) != 1:
            raise FormatError("first line must hold the dimension n")
        try:
            n = int(lines[0][0])
        except ValueError:
            raise FormatError(f"bad dimension {lines[0][0]!r}") from None
        rows = lines[1:]
        labels = list(range(1, n + 1))
    if n < 0 or len(rows) != n or any(len(r) != n for r in rows):
        raise FormatError(f"expected {n} rows of {n} entries")
    A = MaxMatrix(tuple(tuple(_scalar(v, arith) for v in r) for r in rows), arith)
    return A, labels


def parse_vector(text: str, fmt: str = "auto", arith: Arith = EXACT) -> MaxVector:
    """``n`` then one row of coordinates, or ``{"n": int, "coords": [...]}``."""
    fmt = _sniff(text, fmt)
    if fmt == "json":
        try:
            doc = json.loads(text, parse_float=str)
            n, coords = int(doc["n"]), doc["coords"]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError):
            raise FormatError('expected {"n": int, "coords": [...]}') from None
    else:
        lines = _tokens(text)
        if not lines or len(lines[0]) != 1:
            raise FormatError("first line must hold the dimension n")
        n = int(lines[0][0])
        coords = [t for line in lines[1:] for t in line]
    if len(coords) != n:
        raise FormatError(f"expected {n} coordinates, got {len(coords)}")
    return MaxVector(tuple(_scalar(v, arith) for v in coords), arith)


def load_matrix(path, fmt: str = "auto", arith: Arith = EXACT) -> tuple[MaxMatrix, list]:
    path = Path(path)
    if fmt == "auto" and path.suffix == ".json":
        fmt = "json"
    return parse_matrix(path.read_text(), fmt, arith)


def load_vector(path, fmt: str = "auto", arith: Arith = EXACT) -> MaxVector:
    path = Path(path)
    if fmt == "auto" and path.suffix == ".json":
        fmt = "json"
    return parse_vector(path.read_text(), fmt, arith)


def dump_matrix(A: MaxMatrix, fmt: str = "text", labels=None) -> str:
    if fmt == "json":
        doc = {"n": A.n, "entries": [[_json_scalar(v) for v in row] for row in A.entries]}
        if labels is not None and list(labels) != list(range(1, A.n + 1)):
            doc["labels"] = list(labels)
        return json.dumps(doc) + "\n"
    lines = [str(A.n)]
    lines += [" ".join(format_scalar(v) for v in row) for row in A.entries]
    return "\n".join(lines) + "\n"


def dump_vector(x: MaxVector, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps({"n": x.n, "coords": [_json_scalar(v) for v in x]}) + "\n"
    return f"{x.n}\n" + " ".join(format_scalar(v) for v in x) + "\n"


def to_dot(A: MaxMatrix, labels=None, name: str = "D") -> str:
    """The weighted digraph of ``A`` in Graphviz syntax, edges labelled by weight."""
    labels = list(range(1, A.n + 1)) if labels is None else list(labels)
    out = [f"digraph {name} {{"]
    out += [f'  "{lab}";' for lab in labels]
    for i, j in A.edges():
        out.append(f'  "{labels[i]}" -> "{labels[j]}" [label="{format_scalar(A[i, j])}"];')
    out.append("}")
    return "\n".join(out) + "\n"
