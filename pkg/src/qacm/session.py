"""Session files: the ring and named ideals/modules the CLI and service
operate on.

Line-oriented grammar ('#' starts a comment):

    field 32003
    vars x0 x1 x2 x3 x4
    quadric x0*x1 + x2*x3 + x4^2
    ideal L: x0, x2, x4
    module M twists 1 1 1: [x2, -x0, 0]; [x4, 0, -x0]

Every entry is optional; omitted parts default to the canonical session
(GF(32003), the canonical quadric, the line L = V(x0, x2, x4)).  The names
R (the coordinate ring as a module) and E0 (the spinor module built from the
session's line) are reserved built-ins.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import UserInputError
from .groebner import Ideal
from .mcm import canonical_line_ideal, construct_e0
from .modules import FreeModule
from .poly import PrimeField, VARNAMES, parse_polynomial
from .resolutions import GradedModule
from .rings import QuadricRing, canonical_quadric

RESERVED = ("R", "E0")

CANONICAL_SESSION_TEXT = """\
# canonical session: the nonsingular quadric threefold over GF(32003)
field 32003
vars x0 x1 x2 x3 x4
quadric x0*x1 + x2*x3 + x4^2

# the line L and its CI-link partner
ideal L: x0, x2, x4
ideal Lprime: x0, x3, x4

# a complete-intersection curve on Q (a conic)
ideal CI: x0, x4

# the union of two skew lines (not ACM)
ideal skew: x4, x0*x1, x0*x3, x1*x2, x2*x3
"""


class Session:
    def __init__(self, field: PrimeField, ring: QuadricRing, ideals, modules):
        self.field = field
        self.ring = ring
        self.ideals = dict(ideals)
        self.modules = dict(modules)
        self._e0 = None
        self._r = None

    def _line_for_e0(self) -> Ideal:
        if "L" in self.ideals:
            return self.ideals["L"]
        return canonical_line_ideal(self.ring)

    def lookup(self, name: str):
        """(kind, object) with kind 'ideal' or 'module'."""
        if name in self.ideals:
            return "ideal", self.ideals[name]
        if name in self.modules:
            return "module", self.modules[name]
        if name == "R":
            if self._r is None:
                self._r = GradedModule.free(
                    FreeModule(self.field, (0,), self.ring)
                )
            return "module", self._r
        if name == "E0":
            if self._e0 is None:
                self._e0 = construct_e0(self.ring, self._line_for_e0())
            return "module", self._e0
        raise UserInputError(f"no ideal or module named {name!r} in the session")

    def names(self):
        return sorted(set(self.ideals) | set(self.modules) | set(RESERVED))


def _parse_module_line(body: str, field, ring, lineno: int):
    head, _, rest = body.partition(":")
    head = head.strip()
    if "twists" not in head:
        raise UserInputError(
            f"session line {lineno}: module entries need 'twists a b c'"
        )
    twist_part = head.split("twists", 1)[1].replace(",", " ")
    try:
        twists = tuple(int(t) for t in twist_part.split())
    except ValueError:
        raise UserInputError(f"session line {lineno}: bad twist list")
    ambient = FreeModule(field, twists, ring)
    gens = []
    for chunk in rest.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("[") and chunk.endswith("]")):
            raise UserInputError(
                f"session line {lineno}: module generators are bracketed "
                "vectors like [x0, -x2, 0]"
            )
        entries = [parse_polynomial(e, field)
                   for e in chunk[1:-1].split(",")]
        if len(entries) != ambient.rank:
            raise UserInputError(
                f"session line {lineno}: vector has {len(entries)} entries, "
                f"ambient rank is {ambient.rank}"
            )
        gens.append(ambient.element(entries))
    return GradedModule.submodule(ambient, gens)


def parse_session(text: str) -> Session:
    field = None
    quadric_text = None
    ideal_lines = []
    module_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, body = line.partition(" ")
        body = body.strip()
        if keyword == "field":
            try:
                field = PrimeField(int(body))
            except ValueError:
                raise UserInputError(f"session line {lineno}: bad field")
        elif keyword == "vars":
            if tuple(body.split()) != VARNAMES:
                raise UserInputError(
                    f"session line {lineno}: variables must be exactly "
                    f"{' '.join(VARNAMES)}"
                )
        elif keyword == "quadric":
            quadric_text = body
        elif keyword == "ideal":
            ideal_lines.append((lineno, body))
        elif keyword == "module":
            module_lines.append((lineno, body))
        else:
            raise UserInputError(
                f"session line {lineno}: unknown keyword {keyword!r}"
            )
    if field is None:
        field = PrimeField(32003)
    if quadric_text is None:
        quadric = canonical_quadric(field)
    else:
        quadric = parse_polynomial(quadric_text, field)
    ring = QuadricRing(quadric)
    ideals = {}
    modules = {}
    for lineno, body in ideal_lines:
        name, _, gens_text = body.partition(":")
        name = name.strip()
        _check_name(name, lineno)
        gens = [parse_polynomial(g, field) for g in gens_text.split(",") if g.strip()]
        ideals[name] = Ideal(gens, ring=ring, field=field)
    for lineno, body in module_lines:
        name = body.split()[0].strip() if body.split() else ""
        _check_name(name, lineno)
        modules[name] = _parse_module_line(body[len(name):], field, ring, lineno)
    overlap = set(ideals) & set(modules)
    if overlap:
        raise UserInputError(f"names defined twice in session: {sorted(overlap)}")
    return Session(field, ring, ideals, modules)


def _check_name(name: str, lineno: int):
    if not name.isidentifier():
        raise UserInputError(f"session line {lineno}: bad name {name!r}")
    if name in RESERVED:
        raise UserInputError(
            f"session line {lineno}: {name} is a reserved built-in name"
        )


@lru_cache(maxsize=32)
def session_from_text(text: str | None) -> Session:
    return parse_session(text if text is not None else CANONICAL_SESSION_TEXT)
