"""Class groups of quadratic orders built from forms.

`compose` transports the product of ideal classes through the Clifford and
norm functors. `dirichlet_compose` is the classical united-forms algorithm,
kept as an independent oracle for it.

Two variants: "narrow" is proper equivalence; "wide" additionally identifies
f with (-a, b, -c), the image of f under an orientation-preserving similitude
with factor -1. They coincide for negative discriminants.
"""

from dataclasses import dataclass, field
from itertools import product
from math import gcd, isqrt

from .clifford import clifford, norm_form
from .errors import InvariantError, ValidationError
from .forms import (
    BinaryForm,
    _check_nondegenerate_primitive,
    cycle,
    enumerate_classes,
    negate_flip,
    principal_form,
    reduce,
    transform,
    validate_discriminant,
)
from .jsonio import encode_int
from .rings import module_mul

WIDE = "wide"
NARROW = "narrow"


def _check_pair(f, g):
    if f.disc != g.disc:
        raise ValidationError(f"discriminant mismatch: {f.disc} vs {g.disc}")
    _check_nondegenerate_primitive(f)
    _check_nondegenerate_primitive(g)


def _positive(f):
    """Positive definite member of f's module class (identity for indefinite f)."""
    if f.disc < 0 and f.a < 0:
        return negate_flip(f)
    return f


def compose(f, g):
    """Composition through Clifford modules; returns a reduced form."""
    _check_pair(f, g)
    I = clifford(f).module
    J = clifford(g).module
    h = norm_form(module_mul(I, J))
    return reduce(_positive(h))[0]


def _xgcd(a, b):
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _united_partner(f, g):
    """A form properly equivalent to g that is united with f."""
    s = (f.b + g.b) // 2
    if gcd(gcd(f.a, g.a), s) == 1:
        return g
    radius = 1
    while True:
        for x in range(-radius, radius + 1):
            for y in (-radius, radius):
                for xx, yy in ((x, y), (y, x)):
                    if gcd(xx, yy) != 1:
                        continue
                    value = g(xx, yy)
                    if gcd(value, f.a) != 1:
                        continue
                    _, u, v = _xgcd(xx, yy)
                    # xx*u + yy*v == 1, so [[xx, -v], [yy, u]] has det 1
                    return transform(g, (xx, -v, yy, u))
        radius += 1


def dirichlet_compose(f, g):
    """Dirichlet composition of united forms, reduced."""
    _check_pair(f, g)
    D = f.disc
    g = _united_partner(f, g)
    a1, b1, _ = f
    a2, b2, _ = g
    s = (b1 + b2) // 2
    g1, p1, q1 = _xgcd(a1, a2)
    e, u, r = _xgcd(g1, s)
    if e != 1:
        raise InvariantError(f"{f} and {g} are not united")
    p, q = u * p1, u * q1
    A = a1 * a2
    mod = abs(2 * A)
    B = (p * a1 * b2 + q * a2 * b1 + r * ((b1 * b2 + D) // 2)) % mod
    if (B - b1) % (2 * a1) or (B - b2) % (2 * a2) or (B * B - D) % (4 * A):
        raise InvariantError(f"united congruences failed for {f}, {g}")
    h = BinaryForm(A, B, (B * B - D) // (4 * A))
    return reduce(_positive(h))[0]


# -- group structure

def check_group_table(table, identity=0):
    """Exhaustive identity/inverse/associativity/commutativity check. Returns a list of problems."""
    n = len(table)
    problems = []
    elems = range(n)
    for i in elems:
        if table[identity][i] != i or table[i][identity] != i:
            problems.append(f"identity fails at {i}")
        if sorted(table[i]) != list(elems):
            problems.append(f"row {i} is not a permutation")
        if not any(table[i][j] == identity for j in elems):
            problems.append(f"{i} has no inverse")
        for j in elems:
            if table[i][j] != table[j][i]:
                problems.append(f"not commutative at ({i}, {j})")
    for i, j, k in product(elems, repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            problems.append(f"not associative at ({i}, {j}, {k})")
            break
    return problems


def _power_closure(table, gens, identity=0):
    sub = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = table[x][g]
                if y not in sub:
                    sub.add(y)
                    nxt.append(y)
        frontier = nxt
    return sub


def element_order(table, i, identity=0):
    k, x = 1, i
    while x != identity:
        x = table[x][i]
        k += 1
    return k


def decompose(table, identity=0):
    """Cyclic decomposition G = <g1> x ... x <gk> by greedy maximal-order selection.

    Returns (orders, generators) with orders non-increasing.
    """
    n = len(table)
    orders, gens = [], []
    sub = {identity}
    while len(sub) < n:
        # order of each coset x*H in G/H
        best, best_ord = None, 0
        for x in range(n):
            if x in sub:
                continue
            k, y = 1, x
            while y not in sub:
                y = table[y][x]
                k += 1
            if k > best_ord:
                best, best_ord = x, k
        lift = None
        for h in sorted(sub):
            cand = table[best][h]
            if element_order(table, cand, identity) == best_ord:
                lift = cand
                break
        if lift is None:
            raise InvariantError("no lift of maximal coset order; table is not an abelian group")
        orders.append(best_ord)
        gens.append(lift)
        sub = _power_closure(table, gens, identity)
    return orders, gens


@dataclass
class ClassGroup:
    disc: int
    variant: str
    reps: list
    table: list
    structure: list
    generators: list
    _lookup: dict = field(default_factory=dict, repr=False)
    _narrow_to_wide: dict = field(default_factory=dict, repr=False)

    identity = 0

    def __len__(self):
        return len(self.reps)

    @property
    def order(self):
        return len(self.reps)

    def mul(self, i, j):
        return self.table[i][j]

    def inverse(self, i):
        return self.table[i].index(self.identity)

    def exponent(self):
        m = 1
        for k in self.structure:
            m = m * k // gcd(m, k)
        return m

    def coordinates(self):
        """Map element index -> exponent vector over the generators."""
        coords = {}
        for exps in product(*(range(m) for m in self.structure)):
            x = self.identity
            for g, e in zip(self.generators, exps):
                for _ in range(e):
                    x = self.table[x][g]
            coords[x] = exps
        if len(coords) != self.order:
            raise InvariantError("generators do not give a direct decomposition")
        return coords

    def to_json(self):
        return {
            "disc": encode_int(self.disc),
            "variant": self.variant,
            "h": self.order,
            "reps": [[encode_int(x) for x in f] for f in self.reps],
            "table": self.table,
            "structure": list(self.structure),
            "generators": list(self.generators),
        }


def _narrow_lookup(D, reps):
    lookup = {}
    for i, f in enumerate(reps):
        members = [f] if D < 0 else [g for g, _ in cycle(reduce(f)[0])]
        for g in members:
            lookup[g] = i
    return lookup


def class_of(f, G):
    """Index of f's class among G.reps."""
    if f.disc != G.disc:
        raise ValidationError(f"discriminant mismatch: {f.disc} vs {G.disc}")
    _check_nondegenerate_primitive(f)
    r = reduce(_positive(f))[0]
    try:
        i = G._lookup[r]
    except KeyError:
        raise InvariantError(f"{f} matched no class of discriminant {G.disc}") from None
    return G._narrow_to_wide.get(i, i) if G._narrow_to_wide else i


def class_group(D, variant=WIDE):
    validate_discriminant(D)
    if variant not in (WIDE, NARROW):
        raise ValidationError(f"unknown variant {variant!r}")
    narrow_reps = enumerate_classes(D)
    G = ClassGroup(D, variant, [], [], [], [])
    G._lookup = _narrow_lookup(D, narrow_reps)
    if G._lookup[reduce(principal_form(D))[0]] != 0:
        raise InvariantError("principal class is not listed first")
    if variant == WIDE and D > 0:
        # identify f with (-a, b, -c)
        partner = [G._lookup[reduce(negate_flip(f))[0]] for f in narrow_reps]
        to_wide, reps = {}, []
        for i in range(len(narrow_reps)):
            j = partner[i]
            if i in to_wide:
                continue
            to_wide[i] = to_wide[j] = len(reps)
            reps.append(narrow_reps[i])
        G._narrow_to_wide = to_wide
        G.reps = reps
    else:
        G.reps = list(narrow_reps)
    G.table = [[class_of(compose(f, g), G) for g in G.reps] for f in G.reps]
    problems = check_group_table(G.table)
    if problems:
        raise InvariantError(f"class group table for D={D} is not a group: {problems[:3]}")
    G.structure, G.generators = decompose(G.table)
    return G


def narrow_to_wide(narrow, wide):
    """Projection of narrow class indices onto wide class indices."""
    return [class_of(f, wide) for f in narrow.reps]


def fundamental_unit(D, limit=10**6):
    """Smallest (x, y) with y > 0 and x^2 - D*y^2 = +-4; the unit is (x + y*sqrt(D))/2.

    Returns (x, y, norm). Brute force over y; meant for desk-scale D.
    """
    validate_discriminant(D)
    if D < 0:
        raise ValidationError("fundamental units exist only for D > 0")
    for y in range(1, limit):
        for sign in (-1, 1):
            x2 = D * y * y + 4 * sign
            if x2 > 0:
                x = isqrt(x2)
                if x * x == x2:
                    return x, y, sign
    raise ValidationError(f"no fundamental unit found for D={D} with y < {limit}")
