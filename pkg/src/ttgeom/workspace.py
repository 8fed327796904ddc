"""Workspace files: a block-structured text format for groups, modules, ideals and ring data.

Example::

    [field] p=2
    [group] orders=2,2
    [module K] kind=trivial
    [module M] dim=2
      g1 = 1 1; 0 1
      g2 = 1 0; 0 1
    [ideal I] gens = eta1, eta1*eta2 + eta2^2
    [subgroup H] basis=(1,1)

Blocks start with ``[kind NAME]``; ``key=value`` pairs follow on the same
line or on later lines, and a line without ``=`` continues the previous
value.  ``#`` starts a comment.  Matrices are rows separated by ``;``.

Ring data for cohomology checks uses ``[ring NAME] gens = eta:1, theta:2``
(optional ``relations``), ``[map NAME] source=… target=… images = eta -> 0,
theta -> x^2`` and ``[certify NAME] ring=… orders=4 degree=8``.
``[koszul NAME] of=M ideal=I`` names the Koszul object of a module.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .homalg import ext_ring
from .modrep import (GroupData, GroupModule, ModuleValidationError, Subgroup, direct_sum, dual,
                     free_module, tensor_diag, trivial_module)
from .corpus import line_module
from .field import GF, is_prime
from .polyring import GradedPolyRing, Generator, ParseError, RingHom

BLOCK_KINDS = ("field", "group", "module", "ideal", "subgroup", "ring", "map", "certify", "koszul", "params")
_HEADER = re.compile(r"\[\s*([A-Za-z]+)(?:\s+([A-Za-z_][\w']*))?\s*\]")
_KEY = re.compile(r"(?:^|(?<=\s))([A-Za-z_]\w*)\s*=")


@dataclass
class Diagnostic:
    line: int
    column: int
    message: str

    def format(self, path="<workspace>"):
        return f"{path}:{self.line}:{self.column}: {self.message}"


class WorkspaceError(ValueError):
    def __init__(self, diagnostics, path="<workspace>"):
        self.diagnostics = list(diagnostics)
        self.path = path
        super().__init__("\n".join(d.format(path) for d in self.diagnostics))


@dataclass
class Value:
    text: str
    line: int
    column: int


@dataclass
class Block:
    kind: str
    name: str | None
    line: int
    column: int
    values: dict = field(default_factory=dict)


@dataclass
class Workspace:
    p: int | None = None
    ext_degree: int | None = None
    group: GroupData | None = None
    modules: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    subgroups: dict = field(default_factory=dict)
    rings: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    certify: dict = field(default_factory=dict)
    koszul: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    locations: dict = field(default_factory=dict)
    module_groups: dict = field(default_factory=dict)

    @property
    def cohomology_ring(self):
        return ext_ring(self.group).ring if self.group is not None else None


# lexing

def split_blocks(text: str):
    """Blocks with their raw ``key=value`` entries; raises on lexical errors."""
    blocks, diags = [], []
    current = None
    last = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        body_start = 0
        stripped = line.lstrip()
        if stripped.startswith("["):
            col = len(line) - len(stripped) + 1
            m = _HEADER.match(line, col - 1)
            if not m:
                diags.append(Diagnostic(lineno, col, "malformed block header"))
                current, last = None, None
                continue
            kind, name = m.group(1).lower(), m.group(2)
            if kind not in BLOCK_KINDS:
                diags.append(Diagnostic(lineno, col, f"unknown block kind {kind!r}"))
                current, last = None, None
                continue
            current = Block(kind, name, lineno, col)
            blocks.append(current)
            last = None
            body_start = m.end()
        if current is None:
            diags.append(Diagnostic(lineno, 1, "content outside of a block"))
            continue
        body = line[body_start:]
        keys = list(_KEY.finditer(body))
        if not keys:
            if body.strip():
                if last is None:
                    diags.append(Diagnostic(lineno, body_start + len(body) - len(body.lstrip()) + 1,
                                            "expected key=value"))
                else:
                    last.text += " " + body.strip()
            continue
        lead = body[:keys[0].start()].strip()
        if lead:
            if last is None:
                diags.append(Diagnostic(lineno, body_start + 1, "expected key=value"))
            else:
                last.text += " " + lead
        for i, k in enumerate(keys):
            end = keys[i + 1].start() if i + 1 < len(keys) else len(body)
            raw_val = body[k.end():end]
            vcol = body_start + k.end() + (len(raw_val) - len(raw_val.lstrip())) + 1
            key = k.group(1).lower()
            if key in current.values:
                diags.append(Diagnostic(lineno, body_start + k.start(1) + 1, f"duplicate key {key!r}"))
            last = Value(raw_val.strip(), lineno, vcol)
            current.values[key] = last
    if diags:
        raise WorkspaceError(diags)
    return blocks


# value parsers

def parse_int_list(v: Value):
    try:
        return [int(x) for x in re.split(r"[,\s]+", v.text.strip()) if x]
    except ValueError:
        raise WorkspaceError([Diagnostic(v.line, v.column, f"expected integers, got {v.text!r}")])


def parse_matrix(v: Value, dim: int, p: int, label: str):
    rows = [r for r in v.text.replace("[", " ").replace("]", ";").split(";") if r.strip()]
    try:
        mat = [[int(x) for x in re.split(r"[,\s]+", r.strip()) if x] for r in rows]
    except ValueError:
        raise WorkspaceError([Diagnostic(v.line, v.column, f"{label}: matrix entries must be integers")])
    if len(mat) != dim or any(len(r) != dim for r in mat):
        raise WorkspaceError([Diagnostic(v.line, v.column, f"{label} is not a {dim}x{dim} matrix")])
    return np.array(mat, dtype=np.int64) % p


def parse_tuples(v: Value):
    """``(1,0);(0,1)`` → list of integer tuples."""
    out = []
    for part in v.text.split(";"):
        part = part.strip()
        if not part:
            continue
        if not (part.startswith("(") and part.endswith(")")):
            raise WorkspaceError([Diagnostic(v.line, v.column, f"expected a tuple like (1,0), got {part!r}")])
        try:
            out.append(tuple(int(x) for x in part[1:-1].split(",") if x.strip()))
        except ValueError:
            raise WorkspaceError([Diagnostic(v.line, v.column, f"bad tuple {part!r}")])
    return out


def _split_top(text: str):
    """Split on commas outside parentheses, keeping the offset of each piece."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return [(s, off + len(s) - len(s.lstrip())) for s, off in out if s.strip()]


def parse_polys(v: Value, ring: GradedPolyRing):
    out = []
    for piece, off in _split_top(v.text):
        try:
            out.append(ring.parse(piece.strip()))
        except ParseError as e:
            col = v.column + off + ((e.column or 1) - 1)
            raise WorkspaceError([Diagnostic(v.line, col, str(e).split(" (column")[0])])
    return out


# building

def _require(block: Block, key: str):
    if key not in block.values:
        raise WorkspaceError([Diagnostic(block.line, block.column,
                                         f"[{block.kind} {block.name or ''}] is missing {key!r}".replace(" ]", "]"))])
    return block.values[key]


def _ring_from_block(block: Block, p: int):
    gv = _require(block, "gens")
    gens = []
    for piece, off in _split_top(gv.text):
        parts = [s.strip() for s in piece.split(":")]
        try:
            name, deg = parts[0], int(parts[1])
        except (IndexError, ValueError):
            raise WorkspaceError([Diagnostic(gv.line, gv.column + off, f"generator {piece.strip()!r} needs name:degree")])
        parity = parts[2] if len(parts) > 2 else ("odd" if deg % 2 and p > 2 else "even")
        gens.append(Generator(name, deg, parity))
    try:
        ring = GradedPolyRing(p, gens, (), name=block.name)
        if "relations" in block.values:
            rels = parse_polys(block.values["relations"], ring)
            ring = GradedPolyRing(p, gens, rels, name=block.name)
    except ValueError as e:
        if isinstance(e, WorkspaceError):
            raise
        raise WorkspaceError([Diagnostic(gv.line, gv.column, str(e))])
    return ring


def parse_workspace_text(text: str, path: str = "<workspace>") -> Workspace:
    try:
        return _build(split_blocks(text))
    except WorkspaceError as e:
        raise WorkspaceError(e.diagnostics, path) from None


def parse_workspace(path) -> Workspace:
    """Read and validate a workspace file; raises :class:`WorkspaceError` with located diagnostics."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise WorkspaceError([Diagnostic(0, 0, f"cannot read workspace: {e.strerror}")], str(path))
    return parse_workspace_text(text, str(path))


def _build(blocks) -> Workspace:
    ws = Workspace()
    diags = []
    seen = {}
    for b in blocks:
        if b.name is None:
            if b.kind not in ("field", "group", "params"):
                diags.append(Diagnostic(b.line, b.column, f"[{b.kind}] block needs a name"))
            elif b.kind in seen:
                diags.append(Diagnostic(b.line, b.column, f"duplicate [{b.kind}] block"))
            seen[b.kind] = b
            continue
        if b.name in ws.locations:
            ln, cl = ws.locations[b.name]
            diags.append(Diagnostic(b.line, b.column, f"name {b.name!r} already defined at line {ln}"))
            continue
        ws.locations[b.name] = (b.line, b.column)
    if diags:
        raise WorkspaceError(diags)
    by_kind = {}
    for b in blocks:
        by_kind.setdefault(b.kind, []).append(b)
    # field
    fb = seen.get("field")
    if fb is not None:
        v = _require(fb, "p")
        try:
            ws.p = int(v.text)
        except ValueError:
            raise WorkspaceError([Diagnostic(v.line, v.column, f"p must be an integer, got {v.text!r}")])
        if not is_prime(ws.p):
            raise WorkspaceError([Diagnostic(v.line, v.column, f"{ws.p} is not prime")])
        if "ext" in fb.values:
            ws.ext_degree = parse_int_list(fb.values["ext"])[0]
    gb_ = seen.get("group")
    if gb_ is not None:
        if ws.p is None:
            raise WorkspaceError([Diagnostic(gb_.line, gb_.column, "[group] needs a [field] block first")])
        v = _require(gb_, "orders")
        try:
            ws.group = GroupData(GF(ws.p), parse_int_list(v))
        except ValueError as e:
            if isinstance(e, WorkspaceError):
                raise
            raise WorkspaceError([Diagnostic(v.line, v.column, str(e))])
    pb = seen.get("params")
    if pb is not None:
        for key, v in pb.values.items():
            ws.params[key.replace("-", "_")] = v.text
    for b in by_kind.get("subgroup", []):
        _need_group(ws, b)
        v = _require(b, "basis")
        words = parse_tuples(v)
        try:
            ws.subgroups[b.name] = Subgroup(ws.group, words, name=b.name)
        except (ModuleValidationError, ValueError) as e:
            raise WorkspaceError([Diagnostic(v.line, v.column, f"subgroup {b.name}: {e}")])
    for b in by_kind.get("ring", []):
        if ws.p is None:
            raise WorkspaceError([Diagnostic(b.line, b.column, "[ring] needs a [field] block first")])
        ws.rings[b.name] = _ring_from_block(b, ws.p)
    for b in by_kind.get("module", []):
        _build_module(ws, b)
    for b in by_kind.get("ideal", []):
        if "ring" in b.values:
            rv = b.values["ring"]
            if rv.text not in ws.rings:
                raise WorkspaceError([Diagnostic(rv.line, rv.column, f"unknown ring {rv.text!r}")])
            ring = ws.rings[rv.text]
        else:
            _need_group(ws, b)
            ring = ws.cohomology_ring
        ws.ideals[b.name] = (ring, parse_polys(_require(b, "gens"), ring))
    for b in by_kind.get("koszul", []):
        _lookup(ws.modules, _require(b, "of"), "module")
        iv = _require(b, "ideal")
        ring, gens = _lookup(ws.ideals, iv, "ideal")
        if ring != ws.cohomology_ring:
            raise WorkspaceError([Diagnostic(iv.line, iv.column, f"ideal {iv.text} is not in the cohomology ring")])
        ws.koszul[b.name] = (b.values["of"].text, iv.text)
    for b in by_kind.get("map", []):
        src, tgt = (_lookup(ws.rings, _require(b, k), "ring") for k in ("source", "target"))
        iv = _require(b, "images")
        images = {}
        for piece, off in _split_top(iv.text):
            if "->" not in piece:
                raise WorkspaceError([Diagnostic(iv.line, iv.column + off, "image must read 'gen -> polynomial'")])
            lhs, rhs = piece.split("->", 1)
            lhs = lhs.strip()
            if lhs not in src.names:
                raise WorkspaceError([Diagnostic(iv.line, iv.column + off, f"{lhs!r} is not a generator of {src.name}")])
            images[lhs] = parse_polys(Value(rhs, iv.line, iv.column + off + piece.index("->") + 2), tgt)[0]
        missing = [n for n in src.names if n not in images]
        if missing:
            raise WorkspaceError([Diagnostic(iv.line, iv.column, f"no image given for {', '.join(missing)}")])
        try:
            ws.maps[b.name] = RingHom(src, tgt, [images[n] for n in src.names])
        except ValueError as e:
            raise WorkspaceError([Diagnostic(iv.line, iv.column, f"map {b.name}: {e}")])
    for b in by_kind.get("certify", []):
        ring = _lookup(ws.rings, _require(b, "ring"), "ring")
        orders = parse_int_list(_require(b, "orders"))
        degree = parse_int_list(b.values["degree"])[0] if "degree" in b.values else 8
        try:
            group = GroupData(GF(ws.p), orders)
        except ValueError as e:
            v = b.values["orders"]
            raise WorkspaceError([Diagnostic(v.line, v.column, str(e))])
        ws.certify[b.name] = (ring, group, degree)
    return ws


def _lookup(table, v: Value, what):
    if v.text not in table:
        raise WorkspaceError([Diagnostic(v.line, v.column, f"unknown {what} {v.text!r}")])
    return table[v.text]


def _need_group(ws, b):
    if ws.group is None:
        raise WorkspaceError([Diagnostic(b.line, b.column, f"[{b.kind} {b.name}] needs a [group] block")])


def _build_module(ws: Workspace, b: Block):
    _need_group(ws, b)
    group = ws.group
    over = None
    if "over" in b.values:
        over = _lookup(ws.subgroups, b.values["over"], "subgroup")
        group = over.group
    kind = b.values["kind"].text if "kind" in b.values else "explicit"

    def refs():
        v = _require(b, "of")
        names = [s.strip() for s in v.text.split(",") if s.strip()]
        mods = []
        for n in names:
            if n not in ws.modules:
                raise WorkspaceError([Diagnostic(v.line, v.column, f"unknown module {n!r} (define it earlier)")])
            mods.append(ws.modules[n])
        return mods

    try:
        if kind == "trivial":
            M = trivial_module(group)
        elif kind == "free":
            rank = parse_int_list(b.values["rank"])[0] if "rank" in b.values else 1
            M = free_module(group, rank)
        elif kind == "line":
            v = _require(b, "alpha")
            alpha = parse_tuples(v)
            if len(alpha) != 1 or len(alpha[0]) != group.rank or not any(a % group.p for a in alpha[0]):
                raise WorkspaceError([Diagnostic(v.line, v.column, f"alpha must be one nonzero {group.rank}-tuple")])
            M = line_module(group, alpha[0])
        elif kind == "sum":
            M = direct_sum(*refs())
        elif kind == "tensor":
            mods = refs()
            M = mods[0]
            for N in mods[1:]:
                M = tensor_diag(M, N)
        elif kind == "dual":
            M = dual(refs()[0])
        elif kind == "explicit":
            dv = _require(b, "dim")
            dim = parse_int_list(dv)[0]
            mats = []
            for i in range(group.rank):
                key = f"g{i + 1}"
                mats.append(parse_matrix(_require(b, key), dim, group.p, key))
            extra = [k for k in b.values if re.fullmatch(r"g\d+", k) and int(k[1:]) > group.rank]
            if extra:
                v = b.values[extra[0]]
                raise WorkspaceError([Diagnostic(v.line, v.column, f"group has rank {group.rank}; {extra[0]} is not a generator")])
            try:
                M = GroupModule(group, mats, dim=dim)
            except ModuleValidationError as e:
                # point at the last generator named in the message (g2 for "g2^2 != identity")
                named = re.findall(r"g\d+", str(e))
                v = b.values.get(named[-1] if named and "^" in str(e) else "g1", dv)
                raise WorkspaceError([Diagnostic(v.line, v.column, f"module {b.name}: {e}")])
        else:
            v = b.values["kind"]
            raise WorkspaceError([Diagnostic(v.line, v.column, f"unknown module kind {kind!r}")])
    except ModuleValidationError as e:
        raise WorkspaceError([Diagnostic(b.line, b.column, f"module {b.name}: {e}")])
    M.name = b.name
    if over is None and M.group != ws.group:
        raise WorkspaceError([Diagnostic(b.line, b.column, f"module {b.name} is over a different group")])
    ws.modules[b.name] = M
    ws.module_groups[b.name] = over


def module_block(M: GroupModule, name: str, over: str | None = None) -> str:
    """Workspace text for ``M`` (explicit matrices), re-readable by :func:`parse_workspace_text`."""
    lines = [f"[module {name}] dim={M.dim}" + (f" over={over}" if over else "")]
    for i, g in enumerate(M.gens):
        rows = "; ".join(" ".join(str(int(x)) for x in row) for row in g)
        lines.append(f"  g{i + 1} = {rows}")
    return "\n".join(lines) + "\n"
