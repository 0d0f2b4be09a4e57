"""OFF reading and writing with exact rational coordinates.

Coordinates may be integers, decimals (``3.2``, ``-1e-3``) or fractions
(``16/5``); all are read exactly.  Emitted files mark the fraction
extension in a comment right after the header so ordinary viewers that
skip comments can still read the decimal form.
"""
from __future__ import annotations

import hashlib
import re
from fractions import Fraction

from .errors import ParseError
from .geometry import Polyhedron

FRACTION_FLAG = "# equilib: exact rational coordinates, p/q literals allowed"
LOSSY_FLAG = "# equilib: decimal coordinates rounded to 12 significant digits (lossy)"

_NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/[+-]?\d+)?$")


def _tokens(text: str):
    """Yield ``(line_no, [(column, token), ...])`` for every non-blank, comment-free line."""
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if toks:
            yield ln, toks


def _number(tok: str, ln: int, col: int) -> Fraction:
    if not _NUMBER.match(tok):
        raise ParseError(f"bad number {tok!r}", ln, col)
    try:
        if "/" in tok:
            num, den = tok.split("/")
            return Fraction(Fraction(num), int(den))
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {tok!r}", ln, col) from None


def _int(tok: str, ln: int, col: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", ln, col) from None
    return val


def parse_off(text: str, name: str = "") -> Polyhedron:
    """Exact polyhedron from OFF text; structure is not validated here."""
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty file", 1)
    ln, toks = lines[0]
    head = toks[0][1]
    if head != "OFF":
        raise ParseError(f"expected OFF header, got {head!r}", ln, toks[0][0])
    rest = toks[1:]
    body = lines[1:]
    if not rest:
        if not body:
            raise ParseError("missing counts line", ln)
        ln, rest = body[0]
        body = body[1:]
    if len(rest) < 2:
        raise ParseError("counts line needs at least 'v f'", ln)
    nv, nf = (_int(t, ln, c) for c, t in rest[:2])
    if nv < 0 or nf < 0:
        raise ParseError("negative counts", ln)
    if len(body) < nv + nf:
        raise ParseError(f"expected {nv} vertex and {nf} face lines, found {len(body)} lines",
                         body[-1][0] if body else ln)
    verts = []
    for ln, toks in body[:nv]:
        if len(toks) != 3:
            raise ParseError(f"vertex line needs 3 coordinates, has {len(toks)}", ln)
        verts.append(tuple(_number(t, ln, c) for c, t in toks))
    faces = []
    for ln, toks in body[nv:nv + nf]:
        k = _int(toks[0][1], ln, toks[0][0])
        if len(toks) < k + 1:
            raise ParseError(f"face declares {k} vertices but lists {len(toks) - 1}", ln)
        # trailing tokens after the index list are colour values; ignore them
        idx = tuple(_int(t, ln, c) for c, t in toks[1:k + 1])
        for (c, _), i in zip(toks[1:], idx):
            if not 0 <= i < nv:
                raise ParseError(f"vertex index {i} out of range", ln, c)
        faces.append(idx)
    if len(body) > nv + nf:
        ln, toks = body[nv + nf]
        raise ParseError("trailing content after the last face", ln, toks[0][0])
    return Polyhedron(tuple(verts), tuple(faces), name)


def format_scalar(x, decimal: bool = False) -> str:
    if decimal:
        return f"{float(x):.12g}"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def emit_off(P: Polyhedron, decimal: bool = False) -> str:
    """Canonical OFF text; fraction mode is lossless."""
    out = ["OFF", LOSSY_FLAG if decimal else FRACTION_FLAG]
    if P.name:
        out.append(f"# name: {P.name}")
    out.append(f"{P.v} {P.f} {P.e}")
    for p in P.vertices:
        out.append(" ".join(format_scalar(x, decimal) for x in p))
    for face in P.faces:
        out.append(" ".join(map(str, (len(face),) + tuple(face))))
    return "\n".join(out) + "\n"


def content_hash(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def polyhedron_hash(P: Polyhedron) -> str:
    """Hash of the geometry only (name excluded), in lossless form."""
    body = emit_off(Polyhedron(P.vertices, P.faces, ""))
    return content_hash(body)


def read_off(path, name: str = "") -> Polyhedron:
    with open(path, encoding="utf-8") as fh:
        return parse_off(fh.read(), name)


def write_off(path, P: Polyhedron, decimal: bool = False) -> str:
    text = emit_off(P, decimal)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
