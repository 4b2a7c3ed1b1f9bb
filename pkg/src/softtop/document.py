"""Structure documents: strict JSON files naming spaces, soft sets and mappings.

Example::

    {
      "params": ["e1"],
      "spaces": {"X": {"universe": ["a", "b"], "opens": [{}, {"e1": ["a", "b"]}]}},
      "soft_sets": {"F": {"space": "X", "value": {"e1": ["a"]}}},
      "mappings": {"id": {"from": "X", "to": "X", "point_map": {"a": "a", "b": "b"}}}
    }

A soft-set literal maps parameter names to element lists; omitted parameters
are empty.  Opens must list the null and absolute sets explicitly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import yaml

from .errors import AxiomViolation, SoftTopError
from .mapping import SoftMapping
from .softcore import Context, SoftSet
from .topology import SoftTopSpace, validate_axioms

SECTIONS = ("params", "spaces", "soft_sets", "mappings", "tables")


@dataclass(frozen=True)
class Diagnostic:
    kind: str  # SyntaxError | SchemaError | UnknownReference | AxiomViolation | DuplicateName
    message: str
    path: tuple = ()
    line: int | None = None
    column: int | None = None
    token: str | None = None
    expected: str | None = None

    def __str__(self):
        where = f"{self.line}:{self.column}" if self.line is not None else "?:?"
        loc = "/".join(map(str, self.path)) or "<document>"
        s = f"{where}: {self.kind} at {loc}: {self.message}"
        if self.token is not None:
            s += f" (got {self.token!r}"
            s += f", expected {self.expected})" if self.expected else ")"
        elif self.expected:
            s += f" (expected {self.expected})"
        return s


class DocumentError(SoftTopError, ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        Exception.__init__(self, "\n".join(map(str, diagnostics)))
        self.diagnostics = list(diagnostics)


class DocumentSyntaxError(DocumentError):
    pass


class SchemaError(DocumentError):
    pass


class UnknownReference(DocumentError):
    pass


class DocumentAxiomViolation(DocumentError, AxiomViolation):
    pass


_ERROR_CLASS = {
    "SyntaxError": DocumentSyntaxError,
    "UnknownReference": UnknownReference,
    "AxiomViolation": DocumentAxiomViolation,
}


def _raise(diags: list[Diagnostic]):
    raise _ERROR_CLASS.get(diags[0].kind, SchemaError)(diags)


@dataclass
class StructureDocument:
    params: tuple
    spaces: dict = field(default_factory=dict)  # name -> SoftTopSpace
    soft_sets: dict = field(default_factory=dict)  # name -> (space name, SoftSet)
    mappings: dict = field(default_factory=dict)  # name -> (from, to, SoftMapping)
    tables: dict = field(default_factory=dict)  # free-form JSON carried through unchanged

    def space(self, name: str) -> SoftTopSpace:
        return self.spaces[name]

    def soft_set(self, name: str) -> SoftSet:
        return self.soft_sets[name][1]

    def mapping(self, name: str) -> SoftMapping:
        return self.mappings[name][2]


# -- location map --------------------------------------------------------------

def _positions(text: str) -> dict:
    """Path -> (line, column) for every node, 1-based; empty if YAML cannot read it."""
    try:
        root = yaml.compose(text)
    except yaml.YAMLError:
        return {}
    out = {}

    def walk(node, path):
        out.setdefault(path, (node.start_mark.line + 1, node.start_mark.column + 1))
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                out[path + (("key", k.value),)] = (k.start_mark.line + 1, k.start_mark.column + 1)
                walk(v, path + (k.value,))
        elif isinstance(node, yaml.SequenceNode):
            for i, v in enumerate(node.value):
                walk(v, path + (i,))
    if root is not None:
        walk(root, ())
    return out


class _Loader:
    def __init__(self, text: str):
        self.pos = _positions(text)
        self.diags: list[Diagnostic] = []

    def err(self, kind, message, path, token=None, expected=None, key=False):
        where = self.pos.get(path[:-1] + (("key", path[-1]),)) if key and path else None
        where = where or self.pos.get(path)
        p = path
        while where is None and p:
            p = p[:-1]
            where = self.pos.get(p)
        line, col = where if where else (None, None)
        self.diags.append(Diagnostic(kind, message, path, line, col,
                                     None if token is None else str(token), expected))

    def expect(self, value, typ, path, expected) -> bool:
        if not isinstance(value, typ) or (typ is int and isinstance(value, bool)):
            self.err("SchemaError", f"wrong type {type(value).__name__}", path,
                     json.dumps(value)[:40], expected)
            return False
        return True

    def names(self, items, path, what) -> list | None:
        if not self.expect(items, list, path, f"array of {what} names"):
            return None
        out, seen = [], set()
        for i, x in enumerate(items):
            if not self.expect(x, str, path + (i,), f"{what} name (string)"):
                return None
            if x in seen:
                self.err("DuplicateName", f"{what} listed twice", path + (i,), x)
                return None
            seen.add(x)
            out.append(x)
        return out

    def literal(self, lit, ctx: Context, path) -> SoftSet | None:
        if not self.expect(lit, dict, path, "object mapping parameter -> array of elements"):
            return None
        bits, ok = 0, True
        for e, xs in lit.items():
            if e not in ctx._param_index:
                self.err("UnknownReference", "undeclared parameter", path + (e,), e,
                         f"one of {list(ctx.params)}", key=True)
                ok = False
                continue
            if not self.expect(xs, list, path + (e,), "array of element names"):
                ok = False
                continue
            for i, x in enumerate(xs):
                if not isinstance(x, str) or x not in ctx._elem_index:
                    self.err("UnknownReference", "undeclared element", path + (e, i), x,
                             f"one of {list(ctx.universe)}")
                    ok = False
                    continue
                bits |= ctx.point_bit(x, e)
        return SoftSet(ctx, bits) if ok else None


def _object(ld: _Loader, obj, key) -> dict:
    val = obj.get(key, {})
    return val if ld.expect(val, dict, (key,), "object keyed by name") else {}


def _reject_duplicates(pairs):
    seen = {}
    for k, v in pairs:
        if k in seen:
            raise _DuplicateKey(k)
        seen[k] = v
    return seen


class _DuplicateKey(Exception):
    pass


def parse(text: str, *, check_axioms: bool = True) -> StructureDocument:
    """Load and resolve a document, collecting every diagnostic before raising."""
    ld = _Loader(text)
    try:
        raw = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        d = Diagnostic("SyntaxError", exc.msg, (), exc.lineno, exc.colno,
                       text[exc.pos:exc.pos + 12].split("\n")[0] or "<end of line>", "strict JSON")
        raise DocumentSyntaxError([d]) from None
    except _DuplicateKey as exc:
        ld.err("DuplicateName", "name defined twice", (), exc.args[0])
        _raise(ld.diags)
    if not ld.expect(raw, dict, (), "top-level object"):
        _raise(ld.diags)
    for k in raw:
        if k not in SECTIONS:
            ld.err("SchemaError", "unknown section", (k,), k, f"one of {list(SECTIONS)}", key=True)

    params = ld.names(raw.get("params"), ("params",), "parameter")
    if params is None:
        _raise(ld.diags)
    if not params:
        ld.err("SchemaError", "at least one parameter is required", ("params",))
        _raise(ld.diags)
    doc = StructureDocument(tuple(params))

    for name, body in _object(ld, raw, "spaces").items():
        path = ("spaces", name)
        if not ld.expect(body, dict, path, "{universe, opens}"):
            continue
        universe = ld.names(body.get("universe"), path + ("universe",), "element")
        if not universe:
            if universe == []:
                ld.err("SchemaError", "universe must be non-empty", path + ("universe",))
            continue
        ctx = Context(tuple(universe), doc.params)
        opens_raw = body.get("opens")
        if not ld.expect(opens_raw, list, path + ("opens",), "array of soft-set literals"):
            continue
        opens = [ld.literal(o, ctx, path + ("opens", i)) for i, o in enumerate(opens_raw)]
        if any(o is None for o in opens):
            continue
        bits = {o.bits for o in opens}
        report = validate_axioms(ctx, bits)
        if check_axioms and not report.valid:
            for v in report.violations:
                ld.err("AxiomViolation", v.describe(), path + ("opens",),
                       expected="opens closed under union and intersection, with {} and "
                                "the absolute set listed")
            continue
        doc.spaces[name] = SoftTopSpace(ctx, bits, cap=max(4096, len(bits)),
                                        opens=bits if report.valid else None)

    for name, body in _object(ld, raw, "soft_sets").items():
        path = ("soft_sets", name)
        if not ld.expect(body, dict, path, "{space, value}"):
            continue
        sp = body.get("space")
        if sp not in doc.spaces:
            if sp not in raw.get("spaces", {}):
                ld.err("UnknownReference", "undeclared space", path + ("space",), sp,
                       f"one of {sorted(doc.spaces)}")
            continue
        F = ld.literal(body.get("value"), doc.spaces[sp].context, path + ("value",))
        if F is not None:
            doc.soft_sets[name] = (sp, F)

    for name, body in _object(ld, raw, "mappings").items():
        path = ("mappings", name)
        if not ld.expect(body, dict, path, "{from, to, point_map, param_map?}"):
            continue
        ends = []
        for role in ("from", "to"):
            s = body.get(role)
            if s not in doc.spaces:
                if s not in raw.get("spaces", {}):
                    ld.err("UnknownReference", "undeclared space", path + (role,), s,
                           f"one of {sorted(doc.spaces)}")
                ends = None
                break
            ends.append(s)
        if ends is None:
            continue
        src, tgt = doc.spaces[ends[0]].context, doc.spaces[ends[1]].context
        pm = body.get("point_map")
        if not ld.expect(pm, dict, path + ("point_map",), "object element -> element"):
            continue
        ok = True
        for x in src.universe:
            if x not in pm:
                ld.err("SchemaError", f"point_map misses element {x!r}", path + ("point_map",),
                       expected=f"an entry for every element of {ends[0]}")
                ok = False
        for x, y in pm.items():
            if x not in src._elem_index:
                ld.err("UnknownReference", "undeclared element", path + ("point_map", x), x,
                       f"one of {list(src.universe)}", key=True)
                ok = False
            elif not isinstance(y, str) or y not in tgt._elem_index:
                ld.err("UnknownReference", "undeclared element", path + ("point_map", x), y,
                       f"one of {list(tgt.universe)}")
                ok = False
        qm = body.get("param_map")
        if qm is not None:
            if not ld.expect(qm, dict, path + ("param_map",), "object param -> param"):
                continue
            for e in doc.params:
                if e not in qm:
                    ld.err("SchemaError", f"param_map misses parameter {e!r}",
                           path + ("param_map",), expected="an entry for every parameter")
                    ok = False
            for e, f in qm.items():
                if e not in doc.params or f not in doc.params:
                    ld.err("UnknownReference", "undeclared parameter", path + ("param_map", e),
                           f if e in doc.params else e, f"one of {list(doc.params)}",
                           key=e not in doc.params)
                    ok = False
        if ok:
            m = SoftMapping.from_dicts(src, tgt, pm, qm)
            doc.mappings[name] = (ends[0], ends[1], m)

    tables = raw.get("tables", {})
    if ld.expect(tables, dict, ("tables",), "object"):
        doc.tables = tables
    if ld.diags:
        _raise(ld.diags)
    return doc


def load(path) -> StructureDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- emission ------------------------------------------------------------------

def element_name(x) -> str:
    """String form used when emitting universes of constructed spaces."""
    if isinstance(x, tuple):
        return "(" + ",".join(element_name(y) for y in x) + ")"
    return str(x)


def stringify(space: SoftTopSpace) -> SoftTopSpace:
    """Same topology over a universe of element names."""
    ctx = space.context
    names = tuple(element_name(x) for x in ctx.universe)
    if len(set(names)) != len(names):
        raise ValueError("element names collide after stringification")
    return SoftTopSpace(Context(names, ctx.params), space.subbase, cap=space.cap)


def emit(doc: StructureDocument) -> str:
    out = {"params": list(doc.params), "spaces": {}}
    for name, sp in doc.spaces.items():
        out["spaces"][name] = {
            "universe": list(sp.context.universe),
            "opens": [SoftSet(sp.context, b).literal() for b in sorted(sp.opens)],
        }
    if doc.soft_sets:
        out["soft_sets"] = {n: {"space": s, "value": F.literal()}
                            for n, (s, F) in doc.soft_sets.items()}
    if doc.mappings:
        out["mappings"] = {}
        for n, (s, t, m) in doc.mappings.items():
            entry = {"from": s, "to": t, "point_map": m.as_dict()}
            if not m.identity_params:
                entry["param_map"] = {e: m.target.params[q]
                                      for e, q in zip(m.source.params, m.param_map)}
            out["mappings"][n] = entry
    if doc.tables:
        out["tables"] = doc.tables
    return json.dumps(out, indent=2) + "\n"
