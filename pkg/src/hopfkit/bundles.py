"""Text bundle files for Hopf algebras, inclusions, and modules.

One scalar per entry line keeps fixtures diffable.  Scalars are rendered as
"p/q" or sums of "p/q*z^k" with z the primitive root of unity of the
conductor declared in the header.
"""

import os

from .errors import BundleParseError
from .exact_math import Cyclotomic, Matrix, format_scalar, parse_scalar
from .hopf_core import FinHopf


def serialize_hopf(H):
    lines = ["hopf-bundle v1", "name %s" % H.name, "dim %d" % H.dim, "conductor %d" % H.N]
    if H.convention:
        lines.append("convention %s" % H.convention)
    lines.append("labels %s" % ",".join(H.basis_labels))
    n = H.dim
    lines.append("BEGIN MULT")
    for i in range(n):
        for j in range(n):
            for k, s in H.mult[i * n + j]:
                lines.append("%d %d %d %s" % (i, j, k, format_scalar(Cyclotomic(H.N, s))))
    lines.append("END")
    lines.append("BEGIN COMULT")
    for i in range(n):
        for x, s in H.comult[i]:
            lines.append("%d %d %d %s" % (i, x // n, x % n, format_scalar(Cyclotomic(H.N, s))))
    lines.append("END")
    lines.append("BEGIN UNIT")
    for i, s in enumerate(H.unit):
        c = Cyclotomic(H.N, s)
        if not c.is_zero():
            lines.append("%d %s" % (i, format_scalar(c)))
    lines.append("END")
    lines.append("BEGIN COUNIT")
    for i, s in enumerate(H.counit):
        c = Cyclotomic(H.N, s)
        if not c.is_zero():
            lines.append("%d %s" % (i, format_scalar(c)))
    lines.append("END")
    lines.append("BEGIN ANTIPODE")
    for j, col in enumerate(H.antipode_cols):
        for i, s in col:
            lines.append("%d %d %s" % (i, j, format_scalar(Cyclotomic(H.N, s))))
    lines.append("END")
    return "\n".join(lines) + "\n"


class _Parser:
    def __init__(self, text):
        self.lines = text.splitlines()
        self.at = 0

    def peek(self):
        while self.at < len(self.lines):
            line = self.lines[self.at].strip()
            if line and not line.startswith("#"):
                return line
            self.at += 1
        return None

    def next(self):
        line = self.peek()
        if line is None:
            raise BundleParseError("unexpected end of file", self.at + 1)
        self.at += 1
        return line

    def error(self, msg):
        raise BundleParseError(msg, self.at)


def _parse_header(p, kind):
    first = p.next()
    if first != "%s v1" % kind:
        p.error("expected '%s v1' header, got %r" % (kind, first))
    fields = {}
    while True:
        line = p.peek()
        if line is None or line.startswith("BEGIN "):
            break
        p.next()
        key, _, value = line.partition(" ")
        fields[key] = value.strip()
    return fields


def _parse_sections(p, conductor):
    sections = {}
    while True:
        line = p.peek()
        if line is None:
            break
        p.next()
        if not line.startswith("BEGIN "):
            p.error("expected BEGIN <section>, got %r" % line)
        name = line[6:].strip()
        entries = []
        while True:
            row = p.next()
            if row == "END":
                break
            entries.append(row)
        sections.setdefault(name, []).append(entries)
    return sections


def _entry(line, nidx, N, p):
    parts = line.split(None, nidx)
    if len(parts) != nidx + 1:
        p.error("expected %d indices and a scalar: %r" % (nidx, line))
    try:
        idxs = [int(x) for x in parts[:nidx]]
    except ValueError:
        p.error("bad index in %r" % line)
    try:
        val = parse_scalar(parts[nidx], N)
    except (ValueError, ZeroDivisionError) as e:
        p.error("bad scalar in %r (%s)" % (line, e))
    return idxs, val


def parse_hopf(text):
    p = _Parser(text)
    fields = _parse_header(p, "hopf-bundle")
    try:
        dim = int(fields["dim"])
        N = int(fields.get("conductor", "1"))
    except (KeyError, ValueError):
        p.error("header must declare integer dim and conductor")
    name = fields.get("name", "H")
    labels = fields.get("labels")
    labels = labels.split(",") if labels else ["e%d" % i for i in range(dim)]
    if len(labels) != dim:
        p.error("label count does not match dim")
    sections = _parse_sections(p, N)
    for required in ("MULT", "COMULT", "UNIT", "COUNIT", "ANTIPODE"):
        if required not in sections:
            p.error("missing section %s" % required)

    mult = {}
    for line in sections["MULT"][0]:
        idxs, val = _entry(line, 3, N, p)
        _check_range(idxs, dim, p, line)
        mult[tuple(idxs)] = val
    comult = {}
    for line in sections["COMULT"][0]:
        idxs, val = _entry(line, 3, N, p)
        _check_range(idxs, dim, p, line)
        comult[tuple(idxs)] = val
    unit = [Cyclotomic.rational(0, N)] * dim
    for line in sections["UNIT"][0]:
        idxs, val = _entry(line, 1, N, p)
        _check_range(idxs, dim, p, line)
        unit[idxs[0]] = val
    counit = [Cyclotomic.rational(0, N)] * dim
    for line in sections["COUNIT"][0]:
        idxs, val = _entry(line, 1, N, p)
        _check_range(idxs, dim, p, line)
        counit[idxs[0]] = val
    srows = [[Cyclotomic.rational(0, N)] * dim for _ in range(dim)]
    for line in sections["ANTIPODE"][0]:
        idxs, val = _entry(line, 2, N, p)
        _check_range(idxs, dim, p, line)
        srows[idxs[0]][idxs[1]] = val
    S = Matrix.from_rows(srows)
    return FinHopf.from_tensors(
        name, labels, mult, unit, comult, counit, S, conductor=N,
        convention=fields.get("convention", ""),
    )


def _check_range(idxs, dim, p, line):
    for i in idxs:
        if not 0 <= i < dim:
            p.error("index %d out of range in %r" % (i, line))


def serialize_inclusion(incl, sub_ref, big_ref):
    lines = ["hopf-inclusion v1", "sub %s" % sub_ref, "big %s" % big_ref,
             "conductor %d" % incl.N, "BEGIN EMBED"]
    for i in range(incl.H.dim):
        for b in range(incl.K.dim):
            c = incl.embed.entry(i, b)
            if not c.is_zero():
                lines.append("%d %d %s" % (i, b, format_scalar(c)))
    lines.append("END")
    return "\n".join(lines) + "\n"


def parse_inclusion(text, resolver):
    """resolver maps a 'sub'/'big' reference string to a FinHopf."""
    from .extension import HopfInclusion

    p = _Parser(text)
    fields = _parse_header(p, "hopf-inclusion")
    for key in ("sub", "big"):
        if key not in fields:
            p.error("missing %r reference" % key)
    sub = resolver(fields["sub"])
    big = resolver(fields["big"])
    N = int(fields.get("conductor", max(sub.N, big.N)))
    sections = _parse_sections(p, N)
    if "EMBED" not in sections:
        p.error("missing EMBED section")
    rows = [[Cyclotomic.rational(0, N)] * sub.dim for _ in range(big.dim)]
    for line in sections["EMBED"][0]:
        idxs, val = _entry(line, 2, N, p)
        if not 0 <= idxs[0] < big.dim or not 0 <= idxs[1] < sub.dim:
            p.error("embed index out of range in %r" % line)
        rows[idxs[0]][idxs[1]] = val
    return HopfInclusion(sub, big, Matrix.from_rows(rows))


def serialize_module(mod, over_ref, coaction=None):
    lines = ["hopf-module v1", "over %s" % over_ref, "dim %d" % mod.dim,
             "conductor %d" % mod.N, "name %s" % mod.name]
    for i in range(mod.H.dim):
        lines.append("BEGIN ACTION %d" % i)
        A = mod.action[i]
        for r in range(mod.dim):
            for c in range(mod.dim):
                v = A.entry(r, c)
                if not v.is_zero():
                    lines.append("%d %d %s" % (r, c, format_scalar(v)))
        lines.append("END")
    if coaction is not None:
        lines.append("BEGIN COACTION")
        for r in range(coaction.rows):
            for c in range(coaction.cols):
                v = coaction.entry(r, c)
                if not v.is_zero():
                    lines.append("%d %d %s" % (r, c, format_scalar(v)))
        lines.append("END")
    return "\n".join(lines) + "\n"


def parse_module(text, resolver):
    from .module_theory import HModule
    from .yetter_drinfeld import YDModule

    p = _Parser(text)
    fields = _parse_header(p, "hopf-module")
    if "over" not in fields:
        p.error("missing 'over' reference")
    H = resolver(fields["over"])
    try:
        dim = int(fields["dim"])
        N = int(fields.get("conductor", str(H.N)))
    except (KeyError, ValueError):
        p.error("header must declare integer dim")
    name = fields.get("name", "V")

    # sections appear as ACTION <i> repeatedly, plus optional COACTION
    sections = {}
    while True:
        line = p.peek()
        if line is None:
            break
        p.next()
        if not line.startswith("BEGIN "):
            p.error("expected BEGIN, got %r" % line)
        secname = line[6:].strip()
        entries = []
        while True:
            row = p.next()
            if row == "END":
                break
            entries.append(row)
        sections[secname] = entries

    mats = []
    for i in range(H.dim):
        key = "ACTION %d" % i
        if key not in sections:
            p.error("missing section %r" % key)
        rows = [[Cyclotomic.rational(0, N)] * dim for _ in range(dim)]
        for line in sections[key]:
            idxs, val = _entry(line, 2, N, p)
            if not 0 <= idxs[0] < dim or not 0 <= idxs[1] < dim:
                p.error("matrix index out of range in %r" % line)
            rows[idxs[0]][idxs[1]] = val
        mats.append(Matrix.from_rows(rows))
    mod = HModule(H, mats, name=name, N=N)
    if "COACTION" in sections:
        rows = [[Cyclotomic.rational(0, N)] * dim for _ in range(H.dim * dim)]
        for line in sections["COACTION"]:
            idxs, val = _entry(line, 2, N, p)
            if not 0 <= idxs[0] < H.dim * dim or not 0 <= idxs[1] < dim:
                p.error("coaction index out of range in %r" % line)
            rows[idxs[0]][idxs[1]] = val
        return YDModule(mod, Matrix.from_rows(rows), name=name)
    return mod


def load_text(path):
    if not os.path.exists(path):
        raise BundleParseError("no such file: %s" % path)
    with open(path, "r") as fh:
        return fh.read()
