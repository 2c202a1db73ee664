"""Text forms of groups and group algebra elements.

Groups are written ``C<n>``, ``D<n>`` or ``Q<n>`` joined by ``x``, e.g.
``D4xC4``.  Elements are sums of signed monomials such as
``x + z - z^2 + x^2 + x*y``; each generator is one letter and juxtaposition
means multiplication in the written order.
"""

from __future__ import annotations

import re

import numpy as np

from .gf import field_from_order
from .groups import Cyclic, Dihedral, GroupSpec, Product, Quaternion, group_table

__all__ = [
    "ParseError",
    "parse_group",
    "default_generator_names",
    "parse_generator_names",
    "parse_element",
    "format_element",
]

_PAIR_NAMES = [("x", "y"), ("c", "d"), ("a", "b"), ("u", "v")]
_CYCLIC_NAMES = ["z", "w", "t", "s"]


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


_GROUP_TOKEN = re.compile(r"([CDQ])(\d+)")


def parse_group(s: str) -> GroupSpec:
    """Parse ``C5``, ``D4xC4``, ``Q2xC3`` and the like."""
    text = s.strip()
    parts = []
    pos = 0
    while True:
        m = _GROUP_TOKEN.match(text, pos)
        if not m:
            raise ParseError("expected C<n>, D<n> or Q<n>", text, pos)
        n = int(m.group(2))
        if n == 0:
            raise ParseError("group parameter must be positive", text, m.start(2))
        parts.append({"C": Cyclic, "D": Dihedral, "Q": Quaternion}[m.group(1)](n))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] not in "xX×":
            raise ParseError("expected 'x' between factors", text, pos)
        pos += 1
    return parts[0] if len(parts) == 1 else Product(tuple(parts))


def default_generator_names(spec: GroupSpec) -> list[tuple[str, ...]]:
    """Letters for each factor: ``x,y`` then ``c,d`` for non-cyclic factors, ``z`` then ``w`` for cyclic ones."""
    pairs = iter(_PAIR_NAMES)
    singles = iter(_CYCLIC_NAMES)
    out = []
    for f in spec.factors():
        try:
            out.append((next(singles),) if isinstance(f, Cyclic) else next(pairs))
        except StopIteration:
            raise ValueError("too many factors for the default generator names; pass names explicitly") from None
    return out


def parse_generator_names(s: str, spec: GroupSpec) -> list[tuple[str, ...]]:
    """Parse ``"x,y;z"`` (one group of letters per factor)."""
    groups = [tuple(n.strip() for n in g.split(",")) for g in s.split(";")]
    factors = spec.factors()
    if len(groups) != len(factors):
        raise ValueError(f"expected names for {len(factors)} factors")
    for g, f in zip(groups, factors):
        if len(g) != (1 if isinstance(f, Cyclic) else 2):
            raise ValueError(f"wrong number of generator names for {f}")
        for name in g:
            if not re.fullmatch(r"[a-z]", name):
                raise ValueError(f"generator names are single lowercase letters, got {name!r}")
    flat = [n for g in groups for n in g]
    if len(set(flat)) != len(flat):
        raise ValueError("generator names must be distinct")
    return groups


def _generator_table(spec: GroupSpec, names) -> dict[str, tuple]:
    factors = spec.factors()
    ident = [f.identity for f in factors]
    table = {}
    for pos, (f, labels) in enumerate(zip(factors, names)):
        gens = f.generators()
        keys = ["z"] if isinstance(f, Cyclic) else ["x", "y"]
        for label, key in zip(labels, keys):
            coords = list(ident)
            coords[pos] = gens[key]
            table[label] = coords[0] if len(factors) == 1 else tuple(coords)
    return table


_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+|\[[^\]]*\])?\s*\*?\s*(?P<mono>(?:[a-z](?:\^-?\d+)?\s*\*?\s*)*)"
)


def parse_element(s: str, spec: GroupSpec, q, names=None):
    """Parse an element of ``F_q[G]``.

    Coefficients are integers (reduced into the prime field) or bracketed
    coordinate vectors such as ``[1,2]`` over F_p for extension fields.
    Repeated monomials add up.
    """
    from .codes import decode_entry
    from .galg import AlgebraElement

    F = field_from_order(q)
    names = default_generator_names(spec) if names is None else names
    if isinstance(names, str):
        names = parse_generator_names(names, spec)
    gens = _generator_table(spec, names)
    t = group_table(spec)
    coeffs = F.zeros(spec.order)
    text = s.strip()
    if not text:
        raise ParseError("empty element", s, 0)
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("malformed term", text, pos)
        sign, coef, mono = m.group("sign"), m.group("coef"), m.group("mono")
        if not first and sign is None:
            raise ParseError("expected '+' or '-'", text, m.start())
        if coef is None and not mono.strip():
            raise ParseError("missing monomial", text, m.start())
        first = False
        c = 1 if coef is None else (decode_entry(F, [int(v) for v in coef[1:-1].split(",")]) if coef.startswith("[") else F.scalar(int(coef)))
        if sign == "-":
            c = F.neg(c)
        g = spec.identity
        for gm in re.finditer(r"([a-z])(?:\^(-?\d+))?", mono):
            name, e = gm.group(1), int(gm.group(2) or 1)
            if name not in gens:
                raise ParseError(f"unknown generator {name!r}", text, m.start("mono") + gm.start())
            g = spec.mul(g, spec.power(gens[name], e))
        idx = t.index[g]
        coeffs[idx] = F.add(coeffs[idx], c)
        pos = m.end()
    return AlgebraElement(spec, F, coeffs)


def _monomial(spec: GroupSpec, g: tuple, names) -> str:
    factors = spec.factors()
    comps = [g] if len(factors) == 1 else list(g)
    out = []
    for f, c, labels in zip(factors, comps, names):
        exps = [(labels[0], c[0])] if isinstance(f, Cyclic) else [(labels[0], c[0]), (labels[1], c[1])]
        for name, e in exps:
            if e == 1:
                out.append(name)
            elif e:
                out.append(f"{name}^{e}")
    return "".join(out) or "1"


def format_element(u, names=None) -> str:
    """Canonical text form: terms in canonical element order, prime-field coefficients in ``(-p/2, p/2]``."""
    F = u.field
    names = default_generator_names(u.spec) if names is None else names
    t = group_table(u.spec)
    parts = []
    for i in np.nonzero(u.coeffs != 0)[0]:
        c = int(u.coeffs[i])
        mono = _monomial(u.spec, t.elements[i], names)
        if F.k == 1:
            v = c if c <= F.p // 2 else c - F.p
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            cs = "" if mag == 1 else str(mag)
        else:
            sign = "+"
            cs = "" if c == 1 else "[" + ",".join(str(d) for d in F.coeffs(c)) + "]"
        if mono == "1":
            body = cs or "1"
        else:
            body = f"{cs}*{mono}" if cs else mono
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
