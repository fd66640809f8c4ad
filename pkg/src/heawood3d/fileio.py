"""Text formats: ``tri3`` gluing tables, ``cplx2`` 2-complexes, JSON colourings.

``tri3``::

    tri3 1
    tetrahedra: 2
    0: 1 0123 | 1 0123 | 1 0123 | 1 0123
    1: 0 0123 | 0 0123 | 0 0123 | 0 0123

``cplx2`` (the ``chambers`` section is optional)::

    cplx2 1
    vertices: 4
    edges: 6
    0: 0 1
    ...
    faces: 4
    0: 5 4 3
    ...
    chambers: 1
    0: 0 1 2 3

Everything after ``#`` on a line is a comment; blank lines are ignored.
"""
import json

import numpy as np

from . import perm as P
from .colouring import EdgeColouring, VertexColouring4
from .complex import GluingTable, Triangulation3, TwoComplex, build_triangulation
from .errors import (BadPermutation, FormatError, GluingSyntaxError, InvolutionViolation,
                     NonInvolutiveGluing)


def _lines(text):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield n, line


def _header(lines, magic):
    try:
        n, line = next(lines)
    except StopIteration:
        raise GluingSyntaxError("empty file", 1, 1) from None
    if line.split() != [magic, "1"]:
        raise GluingSyntaxError(f"expected header '{magic} 1'", n, 1)


def _count(lines, key):
    try:
        n, line = next(lines)
    except StopIteration:
        raise GluingSyntaxError(f"missing '{key}:' line") from None
    head, _, rest = line.partition(":")
    if head.strip() != key or not rest.strip().isdigit():
        raise GluingSyntaxError(f"expected '{key}: <count>'", n, 1)
    return int(rest)


def _row(lines, index, what):
    try:
        n, line = next(lines)
    except StopIteration:
        raise GluingSyntaxError(f"missing {what} row {index}") from None
    head, sep, rest = line.partition(":")
    if not sep or head.strip() != str(index):
        raise GluingSyntaxError(f"expected row '{index}:'", n, 1)
    return n, line, len(head) + 2, rest


def parse_gluing_file(text):
    lines = _lines(text)
    _header(lines, "tri3")
    count = _count(lines, "tetrahedra")
    rows, row_lines = [], []
    for t in range(count):
        n, line, col, rest = _row(lines, t, "tetrahedron")
        entries = rest.split("|")
        if len(entries) != 4:
            raise GluingSyntaxError(f"expected 4 face gluings separated by '|', got {len(entries)}", n, col)
        row = []
        for entry in entries:
            tokens = entry.split()
            here = col + (len(entry) - len(entry.lstrip()))
            if len(tokens) != 2 or not tokens[0].isdigit():
                raise GluingSyntaxError("expected '<tetrahedron> <permutation>'", n, here)
            try:
                p = P.parse(tokens[1])
            except ValueError:
                raise BadPermutation(f"bad permutation {tokens[1]!r}", n,
                                     here + entry.strip().index(tokens[1])) from None
            u = int(tokens[0])
            if u >= count:
                raise GluingSyntaxError(f"tetrahedron index {u} out of range", n, here)
            row.append((u, p))
            col += len(entry) + 1
        rows.append(row)
        row_lines.append(n)
    extra = next(lines, None)
    if extra is not None:
        raise GluingSyntaxError("unexpected content after the last tetrahedron", extra[0], 1)
    table = GluingTable.from_rows(rows)
    try:
        table.validate()
    except NonInvolutiveGluing as exc:
        raise InvolutionViolation(exc.tet, exc.face, row_lines[exc.tet]) from None
    return table


def serialize_gluing_file(table):
    if isinstance(table, Triangulation3):
        table = table.table
    out = ["tri3 1", f"tetrahedra: {table.n_tetrahedra}"]
    for t in range(table.n_tetrahedra):
        cells = [f"{table.targets[t][i]} {P.format_perm(table.perms[t][i])}" for i in range(4)]
        out.append(f"{t}: " + " | ".join(cells))
    return "\n".join(out) + "\n"


def _int_rows(lines, count, width, what):
    rows = []
    for k in range(count):
        n, _, col, rest = _row(lines, k, what)
        tokens = rest.split()
        if len(tokens) != width or not all(x.isdigit() for x in tokens):
            raise GluingSyntaxError(f"expected {width} indices for {what} {k}", n, col)
        rows.append([int(x) for x in tokens])
    return rows


def parse_complex_file(text):
    lines = _lines(text)
    _header(lines, "cplx2")
    n_vertices = _count(lines, "vertices")
    edges = _int_rows(lines, _count(lines, "edges"), 2, "edge")
    faces = _int_rows(lines, _count(lines, "faces"), 3, "face")
    chambers = None
    rest = list(lines)
    if rest:
        n, line = rest[0]
        head, _, num = line.partition(":")
        if head.strip() != "chambers" or not num.strip().isdigit():
            raise GluingSyntaxError("expected 'chambers: <count>' or end of file", n, 1)
        it = iter(rest[1:])
        chambers = _int_rows(it, int(num), 4, "chamber")
        extra = next(it, None)
        if extra is not None:
            raise GluingSyntaxError("unexpected content after the chambers", extra[0], 1)
    try:
        return TwoComplex.from_lists(n_vertices, edges, faces, chambers)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_complex_file(k):
    out = ["cplx2 1", f"vertices: {k.n_vertices}", f"edges: {k.n_edges}"]
    out += [f"{e}: {a} {b}" for e, (a, b) in enumerate(k.edges)]
    out.append(f"faces: {k.n_faces}")
    out += [f"{f}: {a} {b} {c}" for f, (a, b, c) in enumerate(k.faces)]
    if k.chambers is not None:
        out.append(f"chambers: {len(k.chambers)}")
        out += [f"{ch}: " + " ".join(str(x) for x in quad) for ch, quad in enumerate(k.chambers)]
    return "\n".join(out) + "\n"


def parse_any(text):
    """A ``Triangulation3`` for ``tri3`` input, a ``TwoComplex`` for ``cplx2``."""
    for _, line in _lines(text):
        magic = line.split()[0]
        break
    else:
        raise GluingSyntaxError("empty file", 1, 1)
    if magic == "tri3":
        return build_triangulation(parse_gluing_file(text))
    if magic == "cplx2":
        return parse_complex_file(text)
    raise GluingSyntaxError(f"unknown format {magic!r}", 1, 1)


def serialize_any(k):
    return serialize_gluing_file(k) if isinstance(k, Triangulation3) else serialize_complex_file(k)


def edge_colouring_json(colouring, method="constructive", certificate=None):
    return {"edges": colouring.as_dict(), "method": method, "certificate": certificate or {}}


def vertex_colouring_json(vc, method="constructive", certificate=None):
    return {"vertices": {str(v): list(vec) for v, vec in enumerate(vc.vectors)}, "method": method,
            "certificate": certificate or {}}


def load_edge_colouring(data, n_edges=None):
    if isinstance(data, str):
        data = json.loads(data)
    edges = data["edges"]
    n = n_edges if n_edges is not None else len(edges)
    colours = np.full(n, -1, dtype=np.int64)
    for key, c in edges.items():
        if int(c) not in (0, 1, 2):
            raise FormatError(f"edge {key}: colour {c} is not in 0..2")
        colours[int(key)] = int(c)
    if np.any(colours < 0):
        raise FormatError("colouring does not cover every edge")
    return EdgeColouring(colours)


def load_vertex_colouring(data, n_vertices=None):
    if isinstance(data, str):
        data = json.loads(data)
    verts = data["vertices"]
    n = n_vertices if n_vertices is not None else len(verts)
    vectors = [None] * n
    for key, vec in verts.items():
        if len(vec) != 2 or any(b not in (0, 1) for b in vec):
            raise FormatError(f"vertex {key}: {vec} is not a two-bit vector")
        vectors[int(key)] = tuple(vec)
    if any(v is None for v in vectors):
        raise FormatError("colouring does not cover every vertex")
    return VertexColouring4.from_vectors(vectors)


def complex_json(k):
    if isinstance(k, Triangulation3):
        return {
            "format": "tri3",
            "counts": k.counts,
            "edges": k.edge_endpoints.tolist(),
            "faces": k.face_edges.tolist(),
            "tetrahedra": k.tet_faces.tolist(),
            "gluings": [[[u, P.format_perm(p)] for u, p in row] for row in k.table.rows()],
        }
    return {
        "format": "cplx2",
        "vertices": k.n_vertices,
        "edges": k.edges.tolist(),
        "faces": k.faces.tolist(),
        "chambers": None if k.chambers is None else k.chambers.tolist(),
    }
