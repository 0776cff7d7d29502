"""Exact rational linear feasibility, optimization, vertex enumeration.

Everything runs over fractions.Fraction (arbitrary-precision, exact);
there is no floating point anywhere.  Systems are first reduced by
rational Gaussian elimination on the equalities, so optimization and
vertex enumeration happen in the (usually much smaller) space of the
remaining free directions.  Optimization is a textbook two-phase
simplex with Bland's rule, which terminates on every input.

Intended for desk-scale instances (tens of variables); see the module
users for the size discipline.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class LinearError(Exception):
    pass


class Unbounded(LinearError):
    """The requested optimum or vertex set is unbounded."""


class Infeasible(LinearError):
    """Raised internally when optimizing an empty system."""


class CapExceeded(LinearError):
    """Vertex enumeration hit the cap; .vertices holds the partial list."""

    def __init__(self, vertices):
        self.vertices = vertices
        super().__init__("vertex cap exceeded (%d found)" % len(vertices))


class _Row(tuple):
    """A constraint row with a cached hash.

    Rows are shared across the derived systems that premise sweeps
    build, and plain tuples recompute their (Fraction-heavy) hash on
    every use; caching it keeps the reduction cache cheap to key.
    """

    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = self.__dict__["_h"] = tuple.__hash__(self)
        return h


def _freeze_rows(rows):
    return tuple((row if isinstance(row, _Row) else _Row(row), rhs)
                 for row, rhs in rows)


@dataclass(frozen=True)
class LinSystem:
    """Equalities and inequalities (coeff . x <= rhs) over named variables."""

    vars: tuple
    eqs: tuple = ()    # ((coeffs...), rhs)
    ineqs: tuple = ()  # ((coeffs...), rhs)  meaning coeff . x <= rhs

    def __post_init__(self):
        n = len(self.vars)
        for coeffs, _rhs in itertools.chain(self.eqs, self.ineqs):
            if len(coeffs) != n:
                raise LinearError("coefficient vector length mismatch")
        object.__setattr__(self, "eqs", _freeze_rows(self.eqs))
        object.__setattr__(self, "ineqs", _freeze_rows(self.ineqs))

    def __hash__(self):
        # cached: systems are large and used as reduction-cache keys
        h = getattr(self, "_hash", None)
        if h is None:
            h = hash((self.vars, self.eqs, self.ineqs))
            object.__setattr__(self, "_hash", h)
        return h


class SystemBuilder:
    """Accumulates constraints by variable name, then freezes a LinSystem."""

    def __init__(self, variables):
        self.vars = tuple(variables)
        self._index = {v: i for i, v in enumerate(self.vars)}
        if len(self._index) != len(self.vars):
            raise LinearError("duplicate variable names")
        self.eqs = []
        self.ineqs = []

    def _row(self, coeffs: dict):
        row = [ZERO] * len(self.vars)
        for name, c in coeffs.items():
            row[self._index[name]] += Fraction(c)
        return tuple(row)

    def add_eq(self, coeffs: dict, rhs):
        self.eqs.append((self._row(coeffs), Fraction(rhs)))

    def add_ineq(self, coeffs: dict, rhs):
        """coeff . x <= rhs"""
        self.ineqs.append((self._row(coeffs), Fraction(rhs)))

    def add_box(self, name, lo=ZERO, hi=ONE):
        self.add_ineq({name: 1}, hi)
        self.add_ineq({name: -1}, -Fraction(lo))

    def build(self) -> LinSystem:
        return LinSystem(self.vars, tuple(self.eqs), tuple(self.ineqs))


@dataclass(frozen=True)
class PolyInfo:
    """Feasibility/dimension report for a LinSystem's solution set."""

    status: str                 # "empty" | "point" | "positive-dimensional"
    dim: int                    # -1 for empty
    witness: tuple | None       # one exact feasible point (vars order)
    vertices: tuple | None = None


@dataclass(frozen=True)
class Certification:
    """Outcome of certify_implied: exact optimum of the target's left side."""

    implied: bool
    optimum: Fraction
    argmax: tuple               # point attaining the optimum
    counterexample: tuple | None  # == argmax when not implied


def satisfies(sys: LinSystem, point) -> bool:
    """Exact membership test: every constraint holds with zero tolerance."""
    point = tuple(Fraction(x) for x in point)
    for coeffs, rhs in sys.eqs:
        if sum(c * x for c, x in zip(coeffs, point)) != rhs:
            return False
    for coeffs, rhs in sys.ineqs:
        if sum(c * x for c, x in zip(coeffs, point)) > rhs:
            return False
    return True


# -- Gaussian elimination ------------------------------------------------


def _rref(rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _rank(rows) -> int:
    return len(_rref(rows)[0])


def solve_square(rows, rhs):
    """Unique solution of a square system, or None if singular."""
    n = len(rows)
    aug = [list(rows[i]) + [rhs[i]] for i in range(n)]
    red, pivots = _rref(aug)
    if len(pivots) != n or n in pivots:
        return None
    sol = [ZERO] * n
    for i, col in enumerate(pivots):
        sol[col] = red[i][n]
    return tuple(sol)


@dataclass
class _Reduced:
    """Equality-eliminated form: x = x0 + N t with t-space inequalities."""

    feasible_eqs: bool
    x0: list = field(default_factory=list)
    basis: list = field(default_factory=list)   # columns of N
    rows: list = field(default_factory=list)    # ineq coeffs in t-space
    rhs: list = field(default_factory=list)
    trivially_empty: bool = False


def _reduce(sys: LinSystem) -> _Reduced:
    """Equality elimination, cached: LinSystem is immutable and hashable,
    and property searches maximize many objectives over one system."""
    cached = _REDUCE_CACHE.get(sys)
    if cached is None:
        cached = _reduce_impl(sys)
        if len(_REDUCE_CACHE) > 128:
            _REDUCE_CACHE.clear()
        _REDUCE_CACHE[sys] = cached
    return cached


_REDUCE_CACHE: dict = {}


def _solve_eqs(eqs, n):
    """Particular solution and nullspace basis of an equality system.

    Returns (feasible, x0, basis); basis columns are in x-space.
    """
    aug = [list(coeffs) + [rhs] for coeffs, rhs in eqs]
    red, pivots = _rref(aug)
    for row in red:
        if all(x == 0 for x in row[:n]) and row[n] != 0:
            return False, None, None
    free = [j for j in range(n) if j not in pivots]
    x0 = [ZERO] * n
    for i, col in enumerate(pivots):
        x0[col] = red[i][n]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, col in enumerate(pivots):
            v[col] = -red[i][f]
        basis.append(v)
    return True, x0, basis


def _project_ineqs(out: _Reduced, ineqs):
    """Map x-space inequalities into t-space, dropping trivial rows and
    deduplicating parallel same-direction rows (keeping the tighter rhs)."""
    x0, basis = out.x0, out.basis
    seen = {}
    for coeffs, rhs in ineqs:
        const = sum(c * x for c, x in zip(coeffs, x0))
        row = tuple(sum(c * v[j] for j, c in enumerate(coeffs) if c)
                    for v in basis)
        b = rhs - const
        if all(x == 0 for x in row):
            if b < 0:
                out.trivially_empty = True
            continue
        lead = next(x for x in row if x != 0)
        scale = abs(lead)
        key = tuple(x / scale for x in row)
        val = b / scale
        if key in seen:
            if val < seen[key][1]:
                seen[key] = (seen[key][0], val)  # keep position, tighten rhs
        else:
            seen[key] = (len(seen), val)
    ordered = sorted(seen.items(), key=lambda kv: kv[1][0])
    out.rows = [list(k) for k, _ in ordered]
    out.rhs = [v for _, (_pos, v) in ordered]


_SPARSE_CACHE: dict = {}


def propagate_unit_box(sys: LinSystem, seed: dict):
    """Fixpoint propagation of sys.eqs assuming 0 <= x <= 1 everywhere.

    seed maps variable indices to pinned values.  Uses three sound
    rules per equality row: a single unknown is solved outright, and a
    residual equal to the row's interval minimum (or maximum) pins every
    unknown at the corresponding endpoint.  Returns the dict of forced
    values, or None when a contradiction proves the seeded system
    infeasible.  Incomplete by design: open questions go to the LP.
    """
    rows = _SPARSE_CACHE.get(sys)
    if rows is None:
        rows = [(tuple((j, c) for j, c in enumerate(coeffs) if c), rhs)
                for coeffs, rhs in sys.eqs]
        if len(_SPARSE_CACHE) > 64:
            _SPARSE_CACHE.clear()
        _SPARSE_CACHE[sys] = rows
    known = dict(seed)
    if any(not 0 <= v <= 1 for v in known.values()):
        return None
    changed = True
    while changed:
        changed = False
        for terms, rhs in rows:
            r = rhs
            unknown = []
            for j, c in terms:
                v = known.get(j)
                if v is None:
                    unknown.append((j, c))
                else:
                    r -= c * v
            if not unknown:
                if r != 0:
                    return None
                continue
            lo = sum(c for _, c in unknown if c < 0)
            hi = sum(c for _, c in unknown if c > 0)
            if not lo <= r <= hi:
                return None
            if len(unknown) == 1:
                j, c = unknown[0]
                v = r / c
                if not 0 <= v <= 1:
                    return None
                known[j] = v
                changed = True
            elif r == lo:
                for j, c in unknown:
                    known[j] = ONE if c < 0 else ZERO
                changed = True
            elif r == hi:
                for j, c in unknown:
                    known[j] = ONE if c > 0 else ZERO
                changed = True
    return known


def functional_on(sys: LinSystem, coeffs):
    """The functional coeffs . x written as const + obj . t in the
    equality-eliminated coordinates.

    An all-zero obj means the functional is constant (= const) on the
    affine hull of the solution set, which decides equality questions
    without any optimization.  Raises Infeasible on an empty system.
    """
    red = _reduce(sys)
    if not red.feasible_eqs or red.trivially_empty:
        raise Infeasible()
    const = sum(c * x for c, x in zip(coeffs, red.x0) if c)
    obj = tuple(sum(c * v[j] for j, c in enumerate(coeffs) if c)
                for v in red.basis)
    return const, obj


def _reduce_impl(sys: LinSystem) -> _Reduced:
    n = len(sys.vars)
    feasible, x0, basis = _solve_eqs(sys.eqs, n)
    if not feasible:
        return _Reduced(feasible_eqs=False)
    out = _Reduced(True, x0, basis)
    _project_ineqs(out, sys.ineqs)
    return out


def with_premise(sys: LinSystem, extra_eqs) -> LinSystem:
    """sys plus extra equalities ((coeffs, rhs) in x-space).

    Equivalent to rebuilding the system from scratch, but the new
    system's reduction is composed from sys's cached reduction in the
    small eliminated space, which makes premise sweeps cheap.
    """
    extra_eqs = tuple((tuple(map(Fraction, coeffs)), Fraction(rhs))
                      for coeffs, rhs in extra_eqs)
    new = LinSystem(sys.vars, sys.eqs + extra_eqs, sys.ineqs)
    if new in _REDUCE_CACHE:
        return new
    base = _reduce(sys)
    if not base.feasible_eqs:
        _REDUCE_CACHE[new] = _Reduced(feasible_eqs=False)
        return new
    d = len(base.basis)
    t_eqs = []
    for coeffs, rhs in extra_eqs:
        row = tuple(sum(c * v[j] for j, c in enumerate(coeffs) if c)
                    for v in base.basis)
        t_eqs.append((row, rhs - sum(c * x for c, x in zip(coeffs, base.x0))))
    feasible, t0, t_basis = _solve_eqs(t_eqs, d)
    if not feasible:
        _REDUCE_CACHE[new] = _Reduced(feasible_eqs=False)
        return new
    x0 = list(_lift(base, t0))
    basis = []
    for m in t_basis:
        col = [ZERO] * len(sys.vars)
        for k, mk in enumerate(m):
            if mk:
                for j, vj in enumerate(base.basis[k]):
                    if vj:
                        col[j] += mk * vj
        basis.append(col)
    out = _Reduced(True, x0, basis)
    _project_ineqs(out, sys.ineqs)
    _REDUCE_CACHE[new] = out
    return new


def _lift(red: _Reduced, t):
    x = list(red.x0)
    for tv, v in zip(t, red.basis):
        for j, vj in enumerate(v):
            if vj:
                x[j] += tv * vj
    return tuple(x)


# -- simplex -------------------------------------------------------------


def _simplex_max(rows, rhs, obj):
    """Maximize obj . t subject to rows . t <= rhs, t free.

    Returns (status, t, value) with status in "optimal", "unbounded",
    "infeasible".  Free variables are split t = u - v; Bland's rule
    guarantees termination.
    """
    m = len(rows)
    d = len(obj)
    if m == 0:
        if any(c != 0 for c in obj):
            return "unbounded", None, None
        return "optimal", tuple([ZERO] * d), ZERO

    ncols = 2 * d + m  # u, v, slacks; artificials appended as needed
    tab = []
    basis = []
    art_cols = []
    for i in range(m):
        row = [ZERO] * ncols
        sign = ONE if rhs[i] >= 0 else -ONE
        for j in range(d):
            row[j] = sign * rows[i][j]
            row[d + j] = -sign * rows[i][j]
        row[2 * d + i] = sign
        row.append(sign * rhs[i])
        tab.append(row)
        if sign == ONE:
            basis.append(2 * d + i)
        else:
            basis.append(None)  # artificial to be added
    for i in range(m):
        if basis[i] is None:
            for r in tab:
                r.insert(-1, ZERO)
            tab[i][-2] = ONE
            basis[i] = ncols
            art_cols.append(ncols)
            ncols += 1

    def pivot(tab, basis, obj_row, r, c):
        pv = tab[r][c]
        tab[r] = [x / pv for x in tab[r]]
        for i in range(len(tab)):
            if i != r and tab[i][c] != 0:
                f = tab[i][c]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        if obj_row[c] != 0:
            f = obj_row[c]
            for j in range(len(obj_row)):
                obj_row[j] -= f * tab[r][j]
        basis[r] = c

    def run(tab, basis, obj_row, col_limit):
        while True:
            enter = None
            for j in range(col_limit):
                if obj_row[j] < 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            leave = None
            best = None
            for i in range(len(tab)):
                if tab[i][enter] > 0:
                    ratio = tab[i][-1] / tab[i][enter]
                    if best is None or ratio < best or (
                            ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave is None:
                return "unbounded"
            pivot(tab, basis, obj_row, leave, enter)

    if art_cols:
        # phase 1: minimize sum of artificials (maximize the negation)
        obj_row = [ZERO] * (ncols + 1)
        for c in art_cols:
            obj_row[c] = ONE
        for i in range(m):
            if basis[i] in art_cols:
                f = obj_row[basis[i]]
                obj_row = [x - f * y for x, y in zip(obj_row, tab[i])]
        run(tab, basis, obj_row, ncols)
        art_sum = sum(tab[i][-1] for i in range(m) if basis[i] in art_cols)
        if art_sum != 0:
            return "infeasible", None, None
        # drive remaining artificials out of the basis
        for i in range(m):
            if basis[i] in art_cols:
                piv_col = None
                for j in range(2 * d + m):
                    if j not in art_cols and tab[i][j] != 0:
                        piv_col = j
                        break
                if piv_col is not None:
                    dummy = [ZERO] * (ncols + 1)
                    pivot(tab, basis, dummy, i, piv_col)
        keep = [i for i in range(m) if basis[i] not in art_cols]
        tab = [tab[i] for i in keep]
        basis = [basis[i] for i in keep]

    obj_row = [ZERO] * (ncols + 1)
    for j in range(d):
        obj_row[j] = -obj[j]
        obj_row[d + j] = obj[j]
    for i in range(len(tab)):
        if obj_row[basis[i]] != 0:
            f = obj_row[basis[i]]
            obj_row = [x - f * y for x, y in zip(obj_row, tab[i])]
    status = run(tab, basis, obj_row, 2 * d + m)  # artificials stay out
    if status == "unbounded":
        return "unbounded", None, None
    t = [ZERO] * d
    for i, b in enumerate(basis):
        if b < d:
            t[b] += tab[i][-1]
        elif b < 2 * d:
            t[b - d] -= tab[i][-1]
    return "optimal", tuple(t), sum(c * x for c, x in zip(obj, t))


def _feasible_point(red: _Reduced):
    """A feasible t, or None."""
    status, t, _ = _simplex_max(red.rows, red.rhs, [ZERO] * len(red.basis))
    return t if status == "optimal" else None


def _max_t(red: _Reduced, obj):
    status, t, val = _simplex_max(red.rows, red.rhs, obj)
    if status == "infeasible":
        raise Infeasible()
    if status == "unbounded":
        raise Unbounded()
    return val, t


# -- public operations ---------------------------------------------------


def _implicit_equalities(red: _Reduced):
    """Indices of inequality rows tight on the whole feasible set."""
    tight = []
    for i, (row, b) in enumerate(zip(red.rows, red.rhs)):
        try:
            val, _ = _max_t(red, [-c for c in row])  # val = -min(row . t)
        except Unbounded:
            continue
        if -val == b:
            tight.append(i)
    return tight


def solve(sys: LinSystem) -> PolyInfo:
    """Exact feasibility status, affine dimension, and a witness point.

    The dimension is that of the affine hull of the feasible set:
    the equality kernel minus the rank of the implicit equalities among
    the inequalities.  The witness is the average of the per-coordinate
    extreme points (a relative-interior point for bounded systems),
    falling back to any feasible point in unbounded directions.
    """
    red = _reduce(sys)
    if not red.feasible_eqs or red.trivially_empty:
        return PolyInfo("empty", -1, None)
    d = len(red.basis)
    if d == 0:
        return PolyInfo("point", 0, tuple(red.x0))
    t0 = _feasible_point(red)
    if t0 is None:
        return PolyInfo("empty", -1, None)

    tight = _implicit_equalities(red)
    dim = d - _rank([red.rows[i] for i in tight]) if tight else d

    points = []
    bounded = True
    for j in range(d):
        for sign in (ONE, -ONE):
            obj = [ZERO] * d
            obj[j] = sign
            try:
                _, t = _max_t(red, obj)
                points.append(t)
            except Unbounded:
                bounded = False
    if bounded and points:
        k = Fraction(1, len(points))
        witness_t = tuple(sum(p[j] for p in points) * k for j in range(d))
    else:
        witness_t = t0
    witness = _lift(red, witness_t)
    status = "point" if dim == 0 else "positive-dimensional"
    return PolyInfo(status, dim, witness)


def enumerate_vertices(sys: LinSystem, cap: int = 10000):
    """All vertices of a bounded system, lexicographic by variable vector.

    Naive basis enumeration over the deduplicated inequality rows in the
    equality-reduced space.  Raises Unbounded if the feasible set has an
    unbounded direction, CapExceeded (with the partial, sorted list
    attached) if more than `cap` vertices exist.
    """
    red = _reduce(sys)
    if not red.feasible_eqs or red.trivially_empty:
        return []
    d = len(red.basis)
    if d == 0:
        return [tuple(red.x0)]
    if _feasible_point(red) is None:
        return []
    for j in range(d):
        for sign in (ONE, -ONE):
            obj = [ZERO] * d
            obj[j] = sign
            _max_t(red, obj)  # raises Unbounded when appropriate

    found = set()
    rows, rhs = red.rows, red.rhs
    for combo in itertools.combinations(range(len(rows)), d):
        sol = solve_square([rows[i] for i in combo], [rhs[i] for i in combo])
        if sol is None:
            continue
        ok = True
        for row, b in zip(rows, rhs):
            if sum(c * x for c, x in zip(row, sol)) > b:
                ok = False
                break
        if ok:
            found.add(sol)
            if len(found) > cap:
                partial = sorted(_lift(red, t) for t in found)[:cap]
                raise CapExceeded(partial)
    return sorted(_lift(red, t) for t in found)


def maximize(sys: LinSystem, coeffs, const=ZERO):
    """Exact maximum of coeffs . x + const over sys; (value, argmax).

    Raises Infeasible on an empty system, Unbounded when the objective
    is unbounded above.
    """
    red = _reduce(sys)
    if not red.feasible_eqs or red.trivially_empty:
        raise Infeasible()
    base = sum(c * x for c, x in zip(coeffs, red.x0)) + Fraction(const)
    d = len(red.basis)
    if d == 0:
        # all inequalities project to constants, already checked above
        return base, tuple(red.x0)
    obj = [sum(c * v[j] for j, c in enumerate(coeffs) if c)
           for v in red.basis]
    val, t = _max_t(red, obj)
    return base + val, _lift(red, t)


def certify_implied(sys: LinSystem, coeffs, rhs) -> Certification:
    """Does coeffs . x <= rhs hold over the whole solution set of sys?

    Decided by exact maximization of the left side.  When the maximum
    exceeds rhs the maximizing point is a counterexample; otherwise the
    optimum value is the certificate.
    """
    rhs = Fraction(rhs)
    opt, point = maximize(sys, [Fraction(c) for c in coeffs])
    if opt <= rhs:
        return Certification(True, opt, point, None)
    return Certification(False, opt, point, point)
