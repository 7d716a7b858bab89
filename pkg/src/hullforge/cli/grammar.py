"""Line-oriented job files.

    ring R char 0 vars x y u v weights 1 1 1 1 order grevlex
    ideal I = [ x*u, x*v, y*u, y*v ]
    module M = coker rank 1 degrees 0 relations [ [x*u], [x*v], [y*u], [y*v] ]
    assume-decomposition I = [ P, Q ]
    max-power 8
    degree-range 0 3
    cmd hull M

Each inner list of ``relations`` is one relation column (its length is the
rank).  ``#`` starts a comment.
"""

import re
from dataclasses import dataclass, field

from ..algebra.field import FieldSpec
from ..algebra.ring import PolyRing
from ..errors import HullforgeError, ParseError

NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")

# verb -> argument kinds
VERBS = {
    "hull": ("module",),
    "pure-hull": ("module",),
    "reflexive-hull": ("module",),
    "emb": ("module",),
    "ass": ("module",),
    "is-s1": ("module",),
    "is-s2": ("module",),
    "hilbert": ("module",),
    "local-hull": ("module", "ideal"),
    "punctual-hull": ("module", "ideal"),
    "h1": ("module", "ideal"),
    "tors": ("module", "ideal"),
    "oracle-iterative-hull": ("module", "ideal"),
    "min-primes": ("ideal",),
    "purity": ("any",),
    "depth": ("ideal", "module"),
    "eliminate": ("ideal", "vars"),
}


@dataclass
class RingDecl:
    name: str
    char: int
    variables: tuple
    weights: tuple
    order: str

    def build(self):
        return PolyRing(self.variables, self.weights, self.order, FieldSpec(self.char))


@dataclass
class Command:
    verb: str
    args: tuple
    line: int = field(default=0, compare=False)

    def text(self):
        return " ".join((self.verb,) + tuple(self.args))


@dataclass
class Job:
    ring: RingDecl = None
    ideals: dict = field(default_factory=dict)      # name -> tuple of polynomial strings
    modules: dict = field(default_factory=dict)     # name -> (rank, degrees, relations)
    assumptions: list = field(default_factory=list)  # (ideal name, tuple of ideal names)
    max_power: int = None
    degree_range: tuple = None
    commands: list = field(default_factory=list)


def _split_top(text, line, col0):
    """Split a bracketed list on top-level commas; returns [(item, column)]."""
    text_s = text.strip()
    lead = len(text) - len(text.lstrip())
    if not (text_s.startswith("[") and text_s.endswith("]")):
        raise ParseError("expected a bracketed list", line, col0 + lead + 1)
    body = text_s[1:-1]
    base = col0 + lead + 1
    items, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced brackets", line, base + i + 1)
        elif ch == "," and depth == 0:
            items.append((body[start:i], base + start + 1))
            start = i + 1
    if depth != 0:
        raise ParseError("unbalanced brackets", line, base + len(body))
    last = body[start:]
    if last.strip() or items:
        items.append((last, base + start + 1))
    out = []
    for s, c in items:
        if not s.strip():
            raise ParseError("empty list entry", line, c)
        out.append((s.strip(), c + len(s) - len(s.lstrip())))
    return out


def _check_poly(ring, text, line, col):
    try:
        ring(text)
    except ParseError as e:
        inner = e.details.get("column")
        raise ParseError(str(e).split(": ", 1)[-1], line, col + (inner - 1 if inner else 0))
    except HullforgeError as e:
        raise ParseError(str(e), line, col)


def _ints(tokens, what, line):
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise ParseError(f"{what} must be integers", line)


def _name(tok, line, col):
    if not NAME.fullmatch(tok):
        raise ParseError(f"bad name {tok!r}", line, col)
    return tok


def parse_job(text):
    """Parse and validate a job file (names, arities, polynomial syntax)."""
    job = Job()
    ring = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head = line.split()[0]
        col_head = line.index(head) + 1
        if head == "ring":
            if job.ring is not None:
                raise ParseError("only one ring per job file", lineno, col_head)
            job.ring = _parse_ring(line, lineno)
            try:
                ring = job.ring.build()
            except HullforgeError as e:
                raise ParseError(str(e), lineno, col_head)
        elif head in ("ideal", "module", "assume-decomposition"):
            if ring is None:
                raise ParseError("declare the ring first", lineno, col_head)
            m = re.match(r"\s*\S+\s+(\S+)\s*=\s*", line)
            if not m:
                raise ParseError(f"expected '{head} <name> = ...'", lineno, col_head)
            name = _name(m.group(1), lineno, m.start(1) + 1)
            rest, col = line[m.end():], m.end() + 1
            if head == "ideal":
                if name in job.ideals or name in job.modules:
                    raise ParseError(f"name {name!r} declared twice", lineno, m.start(1) + 1)
                items = _split_top(rest, lineno, col - 1)
                for s, c in items:
                    _check_poly(ring, s, lineno, c)
                job.ideals[name] = tuple(s for s, _ in items)
            elif head == "module":
                if name in job.ideals or name in job.modules:
                    raise ParseError(f"name {name!r} declared twice", lineno, m.start(1) + 1)
                job.modules[name] = _parse_module(ring, rest, lineno, col)
            else:
                if name not in job.ideals:
                    raise ParseError(f"undeclared ideal {name!r}", lineno, m.start(1) + 1)
                items = _split_top(rest, lineno, col - 1)
                for s, c in items:
                    if s not in job.ideals:
                        raise ParseError(f"undeclared ideal {s!r}", lineno, c)
                job.assumptions.append((name, tuple(s for s, _ in items)))
        elif head == "max-power":
            toks = line.split()
            if len(toks) != 2:
                raise ParseError("expected 'max-power <n>'", lineno, col_head)
            (n,) = _ints(toks[1:], "max-power", lineno)
            if n < 1:
                raise ParseError("max-power must be positive", lineno, col_head)
            job.max_power = n
        elif head == "degree-range":
            toks = line.split()
            if len(toks) != 3:
                raise ParseError("expected 'degree-range <lo> <hi>'", lineno, col_head)
            lo, hi = _ints(toks[1:], "degree-range", lineno)
            if hi < lo:
                raise ParseError("empty degree range", lineno, col_head)
            job.degree_range = (lo, hi)
        elif head == "cmd":
            job.commands.append(_parse_cmd(job, ring, line, lineno))
        else:
            raise ParseError(f"unknown statement {head!r}", lineno, col_head)
    if job.ring is None:
        raise ParseError("no ring declared", 1, 1)
    return job


def _parse_ring(line, lineno):
    toks = line.split()
    if len(toks) < 2:
        raise ParseError("expected 'ring <name> ...'", lineno, 1)
    name = toks[1]
    keys = {"char": [], "vars": [], "weights": [], "order": []}
    cur = None
    for t in toks[2:]:
        if t in keys:
            cur = t
            if keys[t]:
                raise ParseError(f"repeated ring field {t!r}", lineno, line.index(t) + 1)
            continue
        if cur is None:
            raise ParseError(f"unexpected token {t!r}", lineno, line.index(t) + 1)
        keys[cur].append(t)
    if len(keys["char"]) != 1:
        raise ParseError("ring needs 'char <0|p>'", lineno, 1)
    (char,) = _ints(keys["char"], "char", lineno)
    variables = tuple(keys["vars"])
    if not variables:
        raise ParseError("ring needs 'vars <list>'", lineno, 1)
    weights = _ints(keys["weights"], "weights", lineno) if keys["weights"] else (1,) * len(variables)
    if len(weights) != len(variables):
        raise ParseError("one weight per variable is required", lineno, line.index("weights") + 1)
    order = " ".join(keys["order"]) if keys["order"] else "grevlex"
    return RingDecl(name, char, variables, weights, order)


def _parse_module(ring, rest, lineno, col):
    m = re.match(r"coker\s+rank\s+(\d+)\s+degrees\s+(.*?)\s*relations\s*(.*)$", rest)
    if not m:
        raise ParseError("expected 'coker rank <r> degrees <list> relations [[...], ...]'", lineno, col)
    rank = int(m.group(1))
    deg_text = m.group(2).strip()
    if deg_text.startswith("["):
        deg_text = deg_text.strip("[]").replace(",", " ")
    degrees = _ints(deg_text.split(), "degrees", lineno) if deg_text else ()
    if len(degrees) != rank:
        raise ParseError(f"{len(degrees)} degrees for rank {rank}", lineno, col + m.start(2))
    rel_col = col + m.start(3)
    cols = _split_top(m.group(3), lineno, rel_col - 1) if m.group(3).strip() != "[]" else []
    relations = []
    for s, c in cols:
        entries = _split_top(s, lineno, c - 1)
        if len(entries) != rank:
            raise ParseError(f"relation has {len(entries)} entries, expected {rank}", lineno, c)
        for e, ec in entries:
            _check_poly(ring, e, lineno, ec)
        relations.append(tuple(e for e, _ in entries))
    return (rank, degrees, tuple(relations))


def _parse_cmd(job, ring, line, lineno):
    toks = line.split()
    if len(toks) < 2:
        raise ParseError("expected 'cmd <verb> <args>'", lineno, 1)
    verb = toks[1]
    vcol = line.index(verb, line.index("cmd") + 3) + 1
    if verb not in VERBS:
        raise ParseError(f"unknown verb {verb!r}", lineno, vcol)
    kinds = VERBS[verb]
    args = toks[2:]
    if kinds[-1] == "vars":
        if len(args) < 1:
            raise ParseError(f"verb {verb!r} expects an ideal and variable names", lineno, vcol)
        fixed = args[:1]
        for v in args[1:]:
            if ring is not None and v not in ring.variables:
                raise ParseError(f"unknown variable {v!r}", lineno, line.index(v, vcol) + 1)
    else:
        if len(args) != len(kinds):
            raise ParseError(f"verb {verb!r} expects {len(kinds)} argument(s), got {len(args)}", lineno, vcol)
        fixed = args
    for a, kind in zip(fixed, kinds):
        acol = line.index(a, vcol + len(verb)) + 1
        if kind == "module" and a not in job.modules:
            raise ParseError(f"undeclared module {a!r}", lineno, acol)
        if kind == "ideal" and a not in job.ideals:
            raise ParseError(f"undeclared ideal {a!r}", lineno, acol)
        if kind == "any" and a not in job.modules and a not in job.ideals:
            raise ParseError(f"undeclared name {a!r}", lineno, acol)
    return Command(verb, tuple(args), lineno)


def serialize_job(job):
    """Canonical text form; parse_job(serialize_job(j)) == j."""
    r = job.ring
    lines = [f"ring {r.name} char {r.char} vars {' '.join(r.variables)} "
             f"weights {' '.join(str(w) for w in r.weights)} order {r.order}"]
    for name, polys in job.ideals.items():
        lines.append(f"ideal {name} = [ {', '.join(polys)} ]")
    for name, (rank, degrees, rels) in job.modules.items():
        rel = ", ".join("[" + ", ".join(c) + "]" for c in rels)
        lines.append(f"module {name} = coker rank {rank} degrees {' '.join(str(d) for d in degrees)} "
                     f"relations [ {rel} ]")
    for name, primes in job.assumptions:
        lines.append(f"assume-decomposition {name} = [ {', '.join(primes)} ]")
    if job.max_power is not None:
        lines.append(f"max-power {job.max_power}")
    if job.degree_range is not None:
        lines.append(f"degree-range {job.degree_range[0]} {job.degree_range[1]}")
    for c in job.commands:
        lines.append("cmd " + c.text())
    return "\n".join(lines) + "\n"
