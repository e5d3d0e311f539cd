"""KISS2 and XKISS readers and writers.

XKISS extends KISS2 in two ways: the output field may be several cubes
joined by ``|`` (their union), and several lines may share a
``(state, input valuation)`` as long as they agree on the next state, in
which case their outputs are united.  Optional ``.ilb``/``.ob`` directives
name the propositions; without them, ``i0 i1 ...``/``o0 o1 ...`` are used.
"""
from __future__ import annotations

from .boolset import MAX_PROPS, Cube, PropSet, ValuationSet, cube_to_set, disjoint_cube_cover
from .machine import Edge, Igmm, merged_edges

_IGNORED = {".type", ".model", ".start_kiss", ".end_kiss"}


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1, source: str | None = None):
        where = f"line {line}, col {col}"
        super().__init__(f"{source}: {where}: {msg}" if source else f"{where}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col
        self.source = source


def _tokens(line: str):
    """Yield ``(column, token)`` pairs, 1-based columns."""
    col = 0
    n = len(line)
    while col < n:
        while col < n and line[col].isspace():
            col += 1
        if col >= n:
            break
        start = col
        while col < n and not line[col].isspace():
            col += 1
        yield start + 1, line[start:col]


def _parse_cube(tok: str, k: int, lineno: int, col: int, what: str) -> Cube:
    if len(tok) != k:
        raise ParseError(f"{what} cube {tok!r} has width {len(tok)}, expected {k}", lineno, col)
    for off, ch in enumerate(tok):
        if ch not in "01-":
            raise ParseError(f"invalid character {ch!r} in {what} cube", lineno, col + off)
    return Cube.from_string(tok)


def detect_format(text: str) -> str:
    """``'xkiss'`` if any output field uses ``|`` or a (state, input) repeats."""
    seen = set()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("."):
            continue
        if "|" in line:
            return "xkiss"
        toks = line.split()
        if len(toks) >= 2:
            key = (toks[0], toks[1])
            if key in seen:
                return "xkiss"
            seen.add(key)
    return "kiss2"


def _parse(text: str, allow_union: bool, max_props: int) -> Igmm:
    n_in = n_out = n_decl_states = None
    reset = None
    in_names = out_names = None
    names: list[str] = []
    index: dict[str, int] = {}
    entries: dict[tuple[int, int], tuple[int, int, int]] = {}
    lines = []

    def state(name: str) -> int:
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    def header_int(toks, lineno):
        if len(toks) != 2:
            raise ParseError(f"{toks[0][1]} expects one integer", lineno, toks[0][0])
        col, val = toks[1]
        if not val.isdigit():
            raise ParseError(f"{toks[0][1]} expects an integer, got {val!r}", lineno, col)
        return int(val)

    ended = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = list(_tokens(raw.split("#", 1)[0]))
        if not toks:
            continue
        if ended:
            raise ParseError("content after .e/.end", lineno, toks[0][0])
        col0, head = toks[0]
        if head.startswith("."):
            if head == ".i":
                n_in = header_int(toks, lineno)
                if n_in > max_props:
                    raise ParseError(f".i {n_in} exceeds the limit of {max_props} propositions",
                                     lineno, toks[1][0])
            elif head == ".o":
                n_out = header_int(toks, lineno)
                if n_out > max_props:
                    raise ParseError(f".o {n_out} exceeds the limit of {max_props} propositions",
                                     lineno, toks[1][0])
            elif head == ".s":
                n_decl_states = header_int(toks, lineno)
            elif head == ".p":
                header_int(toks, lineno)
            elif head == ".r":
                if len(toks) != 2:
                    raise ParseError(".r expects one state name", lineno, col0)
                reset = toks[1][1]
                state(reset)
            elif head == ".ilb":
                in_names = [t for _, t in toks[1:]]
            elif head == ".ob":
                out_names = [t for _, t in toks[1:]]
            elif head in (".e", ".end"):
                ended = True
            elif head in _IGNORED:
                pass
            else:
                raise ParseError(f"unknown directive {head}", lineno, col0)
            continue
        lines.append((lineno, toks))

    if n_in is None:
        raise ParseError("missing .i directive", 1)
    if n_out is None:
        raise ParseError("missing .o directive", 1)
    try:
        inputs = PropSet(tuple(in_names)) if in_names is not None else PropSet.default(n_in, "i")
        outputs = PropSet(tuple(out_names)) if out_names is not None else PropSet.default(n_out, "o")
    except ValueError as exc:
        raise ParseError(str(exc), 1) from None
    if inputs.arity != n_in or outputs.arity != n_out:
        raise ParseError(".ilb/.ob length disagrees with .i/.o", 1)

    for lineno, toks in lines:
        if len(toks) != 4:
            raise ParseError(f"expected 4 fields (input state next output), got {len(toks)}",
                             lineno, toks[0][0])
        (c_in, t_in), (c_cur, t_cur), (c_nxt, t_nxt), (c_out, t_out) = toks
        for c, t in ((c_cur, t_cur), (c_nxt, t_nxt)):
            if t == "*":
                raise ParseError("wildcard states are not supported", lineno, c)
        in_cube = _parse_cube(t_in, n_in, lineno, c_in, "input")
        parts = t_out.split("|")
        if len(parts) > 1 and not allow_union:
            raise ParseError("'|' in output field requires XKISS", lineno, c_out)
        out_mask = 0
        off = 0
        for part in parts:
            cube = _parse_cube(part, n_out, lineno, c_out + off, "output")
            out_mask |= cube_to_set(cube, n_out).mask
            off += len(part) + 1
        src = state(t_cur)
        dst = state(t_nxt)
        for i in range(1 << n_in):
            if not in_cube.contains(i):
                continue
            prev = entries.get((src, i))
            if prev is None:
                entries[(src, i)] = (dst, out_mask, lineno)
            elif prev[0] != dst:
                raise ParseError(
                    f"nondeterministic: state {t_cur} under input {i} goes to "
                    f"{names[prev[0]]} (line {prev[2]}) and {t_nxt}", lineno, c_nxt)
            else:
                entries[(src, i)] = (dst, prev[1] | out_mask, prev[2])

    if not names:
        raise ParseError("no states", 1)
    if n_decl_states is not None:
        if n_decl_states < len(names):
            raise ParseError(f".s declares {n_decl_states} states but {len(names)} appear", 1)
        pad = 0
        while len(names) < n_decl_states:
            name = f"_pad{pad}"
            pad += 1
            if name not in index:
                state(name)
    rows = [[None] * (1 << n_in) for _ in names]
    for (src, i), (dst, mask, _) in entries.items():
        rows[src][i] = Edge(dst, ValuationSet(mask, n_out))
    init = index[reset] if reset is not None else index[lines[0][1][1][1]] if lines else 0
    return Igmm(inputs, outputs, tuple(map(tuple, rows)), init, tuple(names))


def parse_kiss2(text: str, max_props: int = MAX_PROPS) -> Igmm:
    return _parse(text, allow_union=False, max_props=max_props)


def parse_xkiss(text: str, max_props: int = MAX_PROPS) -> Igmm:
    return _parse(text, allow_union=True, max_props=max_props)


def parse(text: str, fmt: str = "auto", max_props: int = MAX_PROPS) -> Igmm:
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "kiss2":
        return parse_kiss2(text, max_props)
    if fmt == "xkiss":
        return parse_xkiss(text, max_props)
    raise ValueError(f"unknown format {fmt!r}")


def _write(m: Igmm, cube_only: bool) -> str:
    if m.inputs.arity == 0 or m.outputs.arity == 0:
        raise ValueError("KISS needs at least one input and one output proposition")
    body = []
    for q, in_mask, dst, out in merged_edges(m):
        out_cubes = disjoint_cube_cover(out)
        if cube_only and len(out_cubes) != 1:
            raise ValueError(
                f"output of state {m.names[q]} is not a cube; "
                "use restrict_to_first_cubes or write XKISS")
        out_txt = "|".join(c.to_string() for c in out_cubes)
        for ic in disjoint_cube_cover(ValuationSet(in_mask, m.inputs.arity)):
            body.append(f"{ic.to_string()} {m.names[q]} {m.names[dst]} {out_txt}")
    head = [f".i {m.inputs.arity}", f".o {m.outputs.arity}"]
    if m.inputs.names != PropSet.default(m.inputs.arity, "i").names:
        head.append(".ilb " + " ".join(m.inputs.names))
    if m.outputs.names != PropSet.default(m.outputs.arity, "o").names:
        head.append(".ob " + " ".join(m.outputs.names))
    head += [f".p {len(body)}", f".s {m.n_states}", f".r {m.names[m.init]}"]
    return "\n".join(head + body + [".e"]) + "\n"


def write_xkiss(m: Igmm) -> str:
    return _write(m, cube_only=False)


def write_kiss2(m: Igmm) -> str:
    """Plain KISS2; every output set must be a single cube."""
    return _write(m, cube_only=True)
