"""Bivariate maps on L x L: s-, j-, d- and G-map axioms, Gamma families,
derived maps, and the identities the families satisfy.

All checks are exhaustive over the finite lattice and exact.  Checkers
return an AxiomReport carrying the first violation with both sides'
values, so every failure is independently re-checkable.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from fractions import Fraction

from .lattice import Oml, load_lattice
from .linear import LinSystem, SystemBuilder
from .rational import fmt_rat, parse_rat
from .states import StateFn

ZERO = Fraction(0)
ONE = Fraction(1)


class BiMapError(Exception):
    pass


class ParamOutOfRange(BiMapError):
    pass


class UnsupportedFamily(BiMapError):
    """Gamma 13-16 carry no connective semantics."""


class InvalidCorners(BiMapError):
    pass


@dataclass(frozen=True)
class BiMap:
    """A total map (element, element) -> Fraction in [0, 1]."""

    lattice: Oml
    values: tuple  # (((a, b), Fraction), ...) over all ordered pairs

    def __post_init__(self):
        object.__setattr__(self, "_map", dict(self.values))
        expected = set(self.lattice.pairs())
        got = set(self._map)
        if got != expected:
            raise BiMapError("map is not total on L x L")
        for pair, v in self.values:
            if not 0 <= v <= 1:
                raise BiMapError("value at %s is outside [0, 1]" % (pair,))

    def __call__(self, a: str, b: str) -> Fraction:
        return self._map[(a, b)]

    @staticmethod
    def from_dict(l: Oml, values: dict) -> "BiMap":
        return BiMap(l, tuple(((a, b), Fraction(values[(a, b)]))
                              for a, b in l.pairs()))

    @staticmethod
    def from_function(l: Oml, fn) -> "BiMap":
        return BiMap(l, tuple(((a, b), Fraction(fn(a, b)))
                              for a, b in l.pairs()))

    @staticmethod
    def from_vector(l: Oml, vec) -> "BiMap":
        pairs = list(l.pairs())
        return BiMap(l, tuple((p, Fraction(v)) for p, v in zip(pairs, vec)))

    def as_vector(self) -> tuple:
        return tuple(v for _, v in self.values)

    def replace(self, a: str, b: str, value) -> "BiMap":
        """A copy with one entry changed (used by mutation tests)."""
        vals = dict(self._map)
        vals[(a, b)] = Fraction(value)
        return BiMap.from_dict(self.lattice, vals)

    def to_json(self, lattice_path: str = "") -> str:
        return json.dumps(
            {"lattice": lattice_path,
             "values": {"%s|%s" % (a, b): fmt_rat(v)
                        for (a, b), v in self.values}},
            indent=2)


def bimap_from_json(text: str, l: Oml) -> BiMap:
    """Parse the map file format against an already-loaded lattice."""
    data = json.loads(text)
    if not isinstance(data, dict) or set(data) - {"lattice", "values"}:
        raise BiMapError("map file must be {'lattice': ..., 'values': ...}")
    raw = data.get("values")
    if not isinstance(raw, dict):
        raise BiMapError("map file lacks a 'values' object")
    values = {}
    for key, v in raw.items():
        if key.count("|") != 1:
            raise BiMapError("bad pair key %r (expected 'a|b')" % key)
        a, b = key.split("|")
        values[(a, b)] = parse_rat(v)
    missing = [p for p in l.pairs() if p not in values]
    if missing:
        raise BiMapError("missing pairs, e.g. %s" % (missing[0],))
    return BiMap.from_dict(l, values)


def load_bimap(path: str, l: Oml | None = None) -> BiMap:
    """Load a map file; the lattice it references is resolved relative
    to the map file unless one is passed in."""
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    if l is None:
        ref = data.get("lattice")
        if not ref:
            raise BiMapError("map file names no lattice")
        l = load_lattice(os.path.join(os.path.dirname(path) or ".", ref))
    return bimap_from_json(json.dumps(data), l)


# -- axiom checkers ------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    axiom: str
    elements: tuple
    lhs: Fraction
    rhs: Fraction

    def __str__(self):
        return "(%s) fails at %s: %s != %s" % (
            self.axiom, "/".join(self.elements),
            fmt_rat(self.lhs), fmt_rat(self.rhs))


@dataclass(frozen=True)
class AxiomReport:
    system: str  # "s-map" | "j-map" | "d-map" | "G-map"
    ok: bool
    first_violation: Violation | None = None

    def __bool__(self):
        return self.ok


def _report(system, checks):
    """Run (axiom, elements, lhs, rhs) checks; report the first mismatch."""
    for axiom, elems, lhs, rhs in checks:
        if lhs != rhs:
            return AxiomReport(system, False, Violation(axiom, elems, lhs, rhs))
    return AxiomReport(system, True)


def check_s_map(P: BiMap) -> AxiomReport:
    """Exhaustive check of (s1)-(s3)."""
    l = P.lattice

    def checks():
        yield ("s1", (l.top, l.top), P(l.top, l.top), ONE)
        for a, b in l.orthogonal_pairs():
            yield ("s2", (a, b), P(a, b), ZERO)
            yield ("s2", (b, a), P(b, a), ZERO)
            j = l.join(a, b)
            for c in l.elements:
                yield ("s3", (a, b, c), P(j, c), P(a, c) + P(b, c))
                yield ("s3", (a, b, c), P(c, j), P(c, a) + P(c, b))

    return _report("s-map", checks())


def check_j_map(Q: BiMap) -> AxiomReport:
    """Exhaustive check of (j1)-(j3)."""
    l = Q.lattice

    def checks():
        yield ("j1", (l.bot, l.bot), Q(l.bot, l.bot), ZERO)
        yield ("j1", (l.top, l.top), Q(l.top, l.top), ONE)
        for a, b in l.orthogonal_pairs():
            yield ("j2", (a, b), Q(a, b), Q(a, a) + Q(b, b))
            yield ("j2", (b, a), Q(b, a), Q(b, b) + Q(a, a))
            j = l.join(a, b)
            for c in l.elements:
                yield ("j3", (a, b, c), Q(j, c),
                       Q(a, c) + Q(b, c) - Q(c, c))
                yield ("j3", (a, b, c), Q(c, j),
                       Q(c, a) + Q(c, b) - Q(c, c))

    return _report("j-map", checks())


def check_d_map(D: BiMap) -> AxiomReport:
    """Exhaustive check of (d1)-(d3)."""
    l = D.lattice

    def checks():
        for a in l.elements:
            yield ("d1", (a, a), D(a, a), ZERO)
        yield ("d1", (l.top, l.bot), D(l.top, l.bot), ONE)
        yield ("d1", (l.bot, l.top), D(l.bot, l.top), ONE)
        for a, b in l.orthogonal_pairs():
            yield ("d2", (a, b), D(a, b), D(a, l.bot) + D(l.bot, b))
            yield ("d2", (b, a), D(b, a), D(b, l.bot) + D(l.bot, a))
            j = l.join(a, b)
            for c in l.elements:
                yield ("d3", (a, b, c), D(j, c),
                       D(a, c) + D(b, c) - D(l.bot, c))
                yield ("d3", (a, b, c), D(c, j),
                       D(c, a) + D(c, b) - D(c, l.bot))

    return _report("d-map", checks())


def check_g_map(G: BiMap) -> AxiomReport:
    """Exhaustive check of (G1)-(G3).

    (G3)'s column identity is checked in the additive form
    G(c, a v b) = G(c, a) + G(c, b) - G(c, 0), matching the row identity
    and the (j3)/(d3) pattern.
    """
    l = G.lattice

    def checks():
        for a in (l.bot, l.top):
            for b in (l.bot, l.top):
                v = G(a, b)
                yield ("G1", (a, b), v * (v - ONE), ZERO)  # v in {0, 1}
        for a, b in l.orthogonal_pairs():
            for (x, y) in ((a, b), (b, a)):
                yield ("G2", (x, y), G(x, y),
                       G(x, l.bot) + G(l.bot, y) - G(l.bot, l.bot))
            j = l.join(a, b)
            for c in l.elements:
                yield ("G3-row", (a, b, c), G(j, c),
                       G(a, c) + G(b, c) - G(l.bot, c))
                yield ("G3-col", (a, b, c), G(c, j),
                       G(c, a) + G(c, b) - G(c, l.bot))

    return _report("G-map", checks())


_CHECKERS = {"s": check_s_map, "j": check_j_map, "d": check_d_map,
             "g": check_g_map}


def check_map(system: str, M: BiMap) -> AxiomReport:
    try:
        return _CHECKERS[system](M)
    except KeyError:
        raise BiMapError("unknown axiom system %r" % system) from None


# -- Gamma families ------------------------------------------------------

# corner order: (G(0,0), G(0,1), G(1,0), G(1,1))
_TABLED_FAMILIES = {
    (0, 0, 0, 0): 1, (0, 0, 0, 1): 2, (0, 1, 1, 1): 3, (0, 1, 1, 0): 4,
    (1, 1, 1, 0): 5, (1, 0, 0, 0): 6, (1, 0, 0, 1): 7, (1, 1, 1, 1): 8,
    (0, 0, 1, 1): 9, (0, 1, 0, 1): 10, (1, 1, 0, 0): 11, (1, 0, 1, 0): 12,
}
# the four patterns absent from both tables, in lexicographic order
_EXTRA_FAMILIES = {
    corners: 13 + i
    for i, corners in enumerate(sorted(
        set(itertools.product((0, 1), repeat=4)) - set(_TABLED_FAMILIES)))
}
FAMILY_OF_CORNERS = {**_TABLED_FAMILIES, **_EXTRA_FAMILIES}
CORNERS_OF_FAMILY = {g: c for c, g in FAMILY_OF_CORNERS.items()}


@dataclass(frozen=True)
class FamilyTag:
    corners: tuple  # (G(0,0), G(0,1), G(1,0), G(1,1)), each 0 or 1
    gamma: int      # 1..16

    def __str__(self):
        return "Gamma%d %s" % (self.gamma, (self.corners,))


def corners_of(G: BiMap) -> tuple:
    l = G.lattice
    return (G(l.bot, l.bot), G(l.bot, l.top), G(l.top, l.bot), G(l.top, l.top))


def classify_family(G: BiMap) -> FamilyTag:
    """Read the four corners and map them to the Gamma index."""
    corners = corners_of(G)
    if any(v not in (0, 1) for v in corners):
        raise InvalidCorners("corners %s are not all in {0, 1}"
                             % ([fmt_rat(v) for v in corners],))
    key = tuple(int(v) for v in corners)
    return FamilyTag(key, FAMILY_OF_CORNERS[key])


def complement_map(G: BiMap) -> BiMap:
    """The pointwise complement 1 - G (a G-map again)."""
    return BiMap(G.lattice, tuple((p, ONE - v) for p, v in G.values))


# -- derived maps --------------------------------------------------------


def induced_state_from_smap(P: BiMap) -> StateFn:
    """m_p(a) = p(a, a), the state induced by an s-map."""
    return StateFn(tuple((a, P(a, a)) for a in P.lattice.elements))


def derive_j_from_s(P: BiMap) -> BiMap:
    """q_p(a, b) = m_p(a) + m_p(b) - p(a, b)."""
    return BiMap.from_function(
        P.lattice, lambda a, b: P(a, a) + P(b, b) - P(a, b))


def derive_d_from_s(P: BiMap) -> BiMap:
    """d_p(a, b) = p(a, b') + p(a', b)."""
    l = P.lattice
    return BiMap.from_function(
        l, lambda a, b: P(a, l.ocomp(b)) + P(l.ocomp(a), b))


def derive_pure_projection_from_s(P: BiMap) -> BiMap:
    """G_p(a, b) = p(a, b) + p(a, b') = p(a, a); a pure Gamma9 projection."""
    return BiMap.from_function(P.lattice, lambda a, b: P(a, a))


def induced_state_from_gamma9(G: BiMap, b: str) -> StateFn:
    """m_b(a) = G(a, b) for a Gamma9 map; a state for every choice of b."""
    return StateFn(tuple((a, G(a, b)) for a in G.lattice.elements))


def is_pure_projection(G: BiMap):
    """(True, None) or (False, first (a, b) with G(a, b) != G(a, 0))."""
    l = G.lattice
    for a, b in l.pairs():
        if G(a, b) != G(a, l.bot):
            return False, (a, b)
    return True, None


def build_table3_family(r1, r2, u1, u2, l: Oml | None = None) -> BiMap:
    """The parametric Gamma9 family on MO(2).

    Row of the first atom: alpha on its own block and at 0/1, r1 and r2
    against the other block's atom pair, with alpha = (r1 + r2) / 2;
    symmetrically for the second block with u1, u2, beta = (u1 + u2) / 2.
    Row of a complement is 1 minus the atom's row; the 0-row is 0 and
    the 1-row is 1.
    """
    from .lattice import mo

    r1, r2, u1, u2 = (Fraction(v) for v in (r1, r2, u1, u2))
    for name, v in (("r1", r1), ("r2", r2), ("u1", u1), ("u2", u2)):
        if not 0 <= v <= 1:
            raise ParamOutOfRange("%s = %s outside [0, 1]" % (name, fmt_rat(v)))
    if l is None:
        l = mo(2)
    if set(l.elements) != {"0", "1", "a", "a'", "b", "b'"}:
        raise BiMapError("the parametric family lives on MO(2)")
    alpha = (r1 + r2) / 2
    beta = (u1 + u2) / 2
    rows = {
        "a": {"a": alpha, "a'": alpha, "b": r1, "b'": r2, "0": alpha, "1": alpha},
        "b": {"a": u1, "a'": u2, "b": beta, "b'": beta, "0": beta, "1": beta},
        "0": {x: ZERO for x in l.elements},
        "1": {x: ONE for x in l.elements},
    }
    rows["a'"] = {x: ONE - v for x, v in rows["a"].items()}
    rows["b'"] = {x: ONE - v for x, v in rows["b"].items()}
    return BiMap.from_function(l, lambda a, b: rows[a][b])


# -- identity verification -----------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    name: str
    ok: bool
    first_violation: Violation | None = None

    def __bool__(self):
        return self.ok


def _identity_report(name, checks):
    for label, elems, lhs, rhs in checks:
        if lhs != rhs:
            return IdentityReport(name, False, Violation(label, elems, lhs, rhs))
    return IdentityReport(name, True)


def verify_lemma_komp(G: BiMap) -> IdentityReport:
    """For every compatible pair:
    G(a,b) = G(a^b, a^b) + G(a^b', 0) + G(0, a'^b) - 2 G(0,0)."""
    l = G.lattice

    def checks():
        for a, b in l.pairs():
            if l.compatible(a, b):
                rhs = (G(l.meet(a, b), l.meet(a, b))
                       + G(l.meet(a, l.ocomp(b)), l.bot)
                       + G(l.bot, l.meet(l.ocomp(a), b))
                       - 2 * G(l.bot, l.bot))
                yield ("compatible-pair", (a, b), G(a, b), rhs)

    return _identity_report("lemma-compatible-decomposition", checks())


def verify_gamma9_identities(G: BiMap) -> IdentityReport:
    """The four Gamma9 identities, exhaustively:

    1. G(1, a) = 1 and G(0, a) = 0;
    2. G(a, 0) = G(a, a) = G(a, 1);
    3. G(a, 0) = (G(a, b) + G(a, b')) / 2 for all pairs;
    4. G(a, 0) = (1/n) sum G(a, b_i) over every orthogonal partition
       b_1, ..., b_n of the unit.
    """
    l = G.lattice
    partitions = l.orthogonal_partitions()

    def checks():
        for a in l.elements:
            yield ("id1", (l.top, a), G(l.top, a), ONE)
            yield ("id1", (l.bot, a), G(l.bot, a), ZERO)
            yield ("id2", (a, l.bot), G(a, l.bot), G(a, a))
            yield ("id2", (a, l.top), G(a, l.top), G(a, a))
            for b in l.elements:
                yield ("id3", (a, b), 2 * G(a, l.bot),
                       G(a, b) + G(a, l.ocomp(b)))
            for part in partitions:
                yield ("id4", (a,) + part, len(part) * G(a, l.bot),
                       sum(G(a, b) for b in part))

    return _identity_report("gamma9-identities", checks())


# the connective each family's value realizes on compatible pairs, plus
# how its induced state reads off the map
def _semantic_target(G: BiMap, gamma: int, a: str, b: str) -> Fraction:
    l = G.lattice
    meet, join, oc = l.meet, l.join, l.ocomp

    def m_diag(x):       # Gamma2 / Gamma3: diagonal state
        return G(x, x)

    def m_diag_c(x):     # Gamma5 / Gamma6: diagonal of 1-G
        return ONE - G(x, x)

    def m_left(x):       # Gamma4 / Gamma9: left margin at 0
        return G(x, l.bot)

    def m_left_c(x):     # Gamma7 / Gamma11
        return ONE - G(x, l.bot)

    def m_right(x):      # Gamma10
        return G(l.bot, x)

    def m_right_c(x):    # Gamma12
        return ONE - G(l.bot, x)

    xor = join(meet(a, oc(b)), meet(oc(a), b))   # (a <=> b)'
    iff = oc(xor)
    if gamma == 1:
        return ZERO
    if gamma == 2:
        return m_diag(meet(a, b))
    if gamma == 3:
        return m_diag(join(a, b))
    if gamma == 4:
        return m_left(xor)
    if gamma == 5:
        return m_diag_c(join(oc(a), oc(b)))
    if gamma == 6:
        return m_diag_c(meet(oc(a), oc(b)))
    if gamma == 7:
        return m_left_c(iff)
    if gamma == 8:
        return ONE
    if gamma == 9:
        return m_left(a)
    if gamma == 10:
        return m_right(b)
    if gamma == 11:
        return m_left_c(oc(a))
    if gamma == 12:
        return m_right_c(oc(b))
    raise UnsupportedFamily("no connective semantics for Gamma%d" % gamma)


def semantic_check_on_compatible(G: BiMap) -> IdentityReport:
    """On every compatible pair, G equals the induced-state value of the
    family's connective (meet for Gamma2, join for Gamma3, ...).

    Raises UnsupportedFamily for Gamma 13-16.
    """
    l = G.lattice
    gamma = classify_family(G).gamma
    if gamma > 12:
        raise UnsupportedFamily("no connective semantics for Gamma%d" % gamma)

    def checks():
        for a, b in l.pairs():
            if l.compatible(a, b) and l.compatible(b, a):
                yield ("semantics-gamma%d" % gamma, (a, b), G(a, b),
                       _semantic_target(G, gamma, a, b))

    return _identity_report("semantics", checks())


# -- axiom systems as linear constraints ---------------------------------


def pair_var(a: str, b: str) -> str:
    return "%s|%s" % (a, b)


def _bimap_builder(l: Oml) -> SystemBuilder:
    sb = SystemBuilder([pair_var(a, b) for a, b in l.pairs()])
    for a, b in l.pairs():
        sb.add_box(pair_var(a, b))
    return sb


def _add_row_col_additivity(sb, l, offset_fn):
    """(x3)-style constraints: for a _|_ b and all c,
    M(a v b, c) = M(a, c) + M(b, c) - offset_row(c) and symmetrically;
    offset_fn(c) yields (row offset var or None, col offset var or None).
    """
    for a, b in l.orthogonal_pairs():
        j = l.join(a, b)
        for c in l.elements:
            row_off, col_off = offset_fn(c)
            coeffs = {pair_var(j, c): Fraction(1)}
            for var, sign in ((pair_var(a, c), -1), (pair_var(b, c), -1)):
                coeffs[var] = coeffs.get(var, ZERO) + sign
            if row_off:
                coeffs[row_off] = coeffs.get(row_off, ZERO) + 1
            sb.add_eq(coeffs, 0)
            coeffs = {pair_var(c, j): Fraction(1)}
            for var, sign in ((pair_var(c, a), -1), (pair_var(c, b), -1)):
                coeffs[var] = coeffs.get(var, ZERO) + sign
            if col_off:
                coeffs[col_off] = coeffs.get(col_off, ZERO) + 1
            sb.add_eq(coeffs, 0)


def smap_system(l: Oml) -> LinSystem:
    """(s1)-(s3) as linear constraints over all |L|^2 pair variables."""
    sb = _bimap_builder(l)
    sb.add_eq({pair_var(l.top, l.top): 1}, 1)
    for a, b in l.orthogonal_pairs():
        sb.add_eq({pair_var(a, b): 1}, 0)
        sb.add_eq({pair_var(b, a): 1}, 0)
    _add_row_col_additivity(sb, l, lambda c: (None, None))
    return sb.build()


def jmap_system(l: Oml) -> LinSystem:
    """(j1)-(j3) as linear constraints."""
    sb = _bimap_builder(l)
    sb.add_eq({pair_var(l.bot, l.bot): 1}, 0)
    sb.add_eq({pair_var(l.top, l.top): 1}, 1)
    for a, b in l.orthogonal_pairs():
        for x, y in ((a, b), (b, a)):
            coeffs = {pair_var(x, y): Fraction(1)}
            for var in (pair_var(x, x), pair_var(y, y)):
                coeffs[var] = coeffs.get(var, ZERO) - 1
            sb.add_eq(coeffs, 0)
    _add_row_col_additivity(sb, l,
                            lambda c: (pair_var(c, c), pair_var(c, c)))
    return sb.build()


def dmap_system(l: Oml) -> LinSystem:
    """(d1)-(d3) as linear constraints."""
    sb = _bimap_builder(l)
    for a in l.elements:
        sb.add_eq({pair_var(a, a): 1}, 0)
    sb.add_eq({pair_var(l.top, l.bot): 1}, 1)
    sb.add_eq({pair_var(l.bot, l.top): 1}, 1)
    for a, b in l.orthogonal_pairs():
        for x, y in ((a, b), (b, a)):
            coeffs = {pair_var(x, y): Fraction(1)}
            for var in (pair_var(x, l.bot), pair_var(l.bot, y)):
                coeffs[var] = coeffs.get(var, ZERO) - 1
            sb.add_eq(coeffs, 0)
    _add_row_col_additivity(
        sb, l, lambda c: (pair_var(l.bot, c), pair_var(c, l.bot)))
    return sb.build()


def gmap_system(l: Oml, corners) -> LinSystem:
    """(G1)-(G3) with the four corner values pinned to the given pattern.

    corners = (G(0,0), G(0,1), G(1,0), G(1,1)), each 0 or 1.
    """
    corners = tuple(int(v) for v in corners)
    if len(corners) != 4 or any(v not in (0, 1) for v in corners):
        raise InvalidCorners("corners must be four values in {0, 1}")
    sb = _bimap_builder(l)
    corner_pairs = ((l.bot, l.bot), (l.bot, l.top),
                    (l.top, l.bot), (l.top, l.top))
    for (x, y), v in zip(corner_pairs, corners):
        sb.add_eq({pair_var(x, y): 1}, v)
    for a, b in l.orthogonal_pairs():
        for x, y in ((a, b), (b, a)):
            coeffs = {pair_var(x, y): Fraction(1)}
            for var, sign in ((pair_var(x, l.bot), -1),
                              (pair_var(l.bot, y), -1),
                              (pair_var(l.bot, l.bot), 1)):
                coeffs[var] = coeffs.get(var, ZERO) + sign
            sb.add_eq(coeffs, 0)
    _add_row_col_additivity(
        sb, l, lambda c: (pair_var(l.bot, c), pair_var(c, l.bot)))
    return sb.build()
