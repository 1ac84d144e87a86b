"""Binary orthogonal modular forms of trivial weight as functions on Pic S.

Hecke operators at split primes are translations by the class of a prime
ideal above p; the eigenforms are the characters of the class group. All
character values are roots of unity, stored as exponents e of zeta_m.
"""

from dataclasses import dataclass
from itertools import product
from math import gcd

from .classgroup import WIDE, class_group, class_of
from .errors import InvariantError, ValidationError
from .forms import BinaryForm, validate_discriminant

INERT = "inert"
BAD = "bad"


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass
class OMFSpace:
    group: object

    @property
    def disc(self):
        return self.group.disc

    @property
    def dimension(self):
        return self.group.order


def omf_space(D):
    validate_discriminant(D)
    if D > 0:
        raise ValidationError("orthogonal modular forms need a positive definite lattice (D < 0)")
    return OMFSpace(class_group(D, WIDE))


def split_prime_form(D, p):
    """(p, b, (b^2 - D)/(4p)) with the smallest b >= 0, or "inert"/"bad"."""
    validate_discriminant(D)
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if D % p == 0:
        return BAD
    for b in range(2 * p):
        if (b * b - D) % (4 * p) == 0:
            return BinaryForm(p, b, (b * b - D) // (4 * p))
    return INERT


def split_prime_class(D, p, group=None):
    """Class index of a prime above p, or "inert"/"bad"."""
    f = split_prime_form(D, p)
    if isinstance(f, str):
        return f
    if group is None:
        group = class_group(D, WIDE)
    return class_of(f, group)


@dataclass(frozen=True)
class HeckeOperator:
    prime: int
    ideal_class: int
    which: str
    perm: tuple

    @property
    def matrix(self):
        n = len(self.perm)
        return [[1 if j == self.perm[i] else 0 for j in range(n)] for i in range(n)]

    def apply(self, values):
        """(T f)(A) = f(A P)."""
        return [values[j] for j in self.perm]


def hecke_operator(space, p, which="P"):
    G = space.group
    idx = split_prime_class(space.disc, p, G)
    if isinstance(idx, str):
        raise ValidationError(f"no Hecke operator at p={p}: prime is {idx}")
    if which == "P'":
        idx = G.inverse(idx)
    elif which != "P":
        raise ValidationError(f"which must be 'P' or \"P'\", got {which!r}")
    perm = tuple(G.table[i][idx] for i in range(G.order))
    return HeckeOperator(p, idx, which, perm)


@dataclass(frozen=True)
class Character:
    """chi(g_1^e_1 ... g_k^e_k) = zeta_m^(sum k_j e_j m / m_j)."""

    exponents: tuple
    modulus: int
    values: tuple

    def value(self, i):
        return self.values[i]


def eigenforms(space):
    G = space.group
    m = G.exponent()
    coords = G.coordinates()
    chars = []
    for ks in product(*(range(k) for k in G.structure)):
        vals = []
        for i in range(G.order):
            e = sum(k * c * (m // mj) for k, c, mj in zip(ks, coords[i], G.structure))
            vals.append(e % m)
        chi = Character(tuple(ks), m, tuple(vals))
        for i in range(G.order):
            for j in range(G.order):
                if vals[G.table[i][j]] != (vals[i] + vals[j]) % m:
                    raise InvariantError(f"character {ks} is not multiplicative")
        chars.append(chi)
    return chars


def eigenvalue(chi, T):
    """chi([P]) as an exponent of zeta_m; checks T chi == chi([P]) chi exactly."""
    if len(chi.values) != len(T.perm):
        raise ValidationError("character and operator live on different groups")
    e = chi.values[T.ideal_class]
    m = chi.modulus
    image = T.apply(chi.values)
    if any(image[i] != (chi.values[i] + e) % m for i in range(len(image))):
        raise InvariantError(f"character {chi.exponents} is not an eigenvector of T_{T.prime}")
    return e


def reduced_root(e, m):
    """zeta_m^e written as zeta_m'^e' in lowest terms."""
    if e % m == 0:
        return 0, 1
    g = gcd(e, m)
    return e // g, m // g


# -- exact arithmetic in Z[x]/Phi_m

def _poly_divmod(num, den):
    """Division by a monic integer polynomial; coefficient lists, lowest degree first."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    q = [0] * max(len(num) - dn, 1)
    for i in range(len(num) - 1, dn - 1, -1):
        coef = num[i]
        if coef:
            q[i - dn] = coef
            for j in range(dn + 1):
                num[i - dn + j] -= coef * den[j]
    rem = num[:dn] if dn else []
    return q, rem


def cyclotomic(m):
    """Coefficients of the m-th cyclotomic polynomial."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, cyclotomic(d))
            if any(rem):
                raise InvariantError("cyclotomic division left a remainder")
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return num


class CyclotomicRing:
    def __init__(self, m):
        self.m = m
        self.phi = cyclotomic(m)
        self.deg = len(self.phi) - 1

    def zero(self):
        return (0,) * self.deg

    def root(self, e):
        """zeta_m^e."""
        coeffs = [0] * self.m
        coeffs[e % self.m] = 1
        return self.reduce(coeffs)

    def reduce(self, coeffs):
        _, rem = _poly_divmod(list(coeffs) + [0] * max(0, self.deg - len(coeffs)), self.phi)
        rem = list(rem) + [0] * (self.deg - len(rem))
        return tuple(rem[: self.deg])

    def add(self, u, v):
        return tuple(x + y for x, y in zip(u, v))

    def sub(self, u, v):
        return tuple(x - y for x, y in zip(u, v))

    def mul(self, u, v):
        out = [0] * (len(u) + len(v))
        for i, x in enumerate(u):
            if x:
                for j, y in enumerate(v):
                    out[i + j] += x * y
        return self.reduce(out)

    def det(self, matrix):
        """Determinant by expansion over row subsets (n * 2^n ring products)."""
        n = len(matrix)
        if n == 0:
            return self.root(0)
        one = self.root(0)
        # dp[mask]: signed sum over ways to fill the first popcount(mask) rows using columns in mask
        dp = {0: one}
        for row in range(n):
            nxt = {}
            for mask, val in dp.items():
                for col in range(n):
                    if mask >> col & 1:
                        continue
                    # sign: number of used columns greater than col
                    above = bin(mask >> (col + 1)).count("1")
                    term = self.mul(val, matrix[row][col])
                    key = mask | (1 << col)
                    acc = nxt.get(key, self.zero())
                    nxt[key] = self.sub(acc, term) if above % 2 else self.add(acc, term)
            dp = nxt
        return dp[(1 << n) - 1]


def character_determinant(space):
    """Determinant of the character table in Z[zeta_m], as a coefficient tuple."""
    chars = eigenforms(space)
    m = chars[0].modulus
    R = CyclotomicRing(m)
    M = [[R.root(chi.values[i]) for i in range(space.dimension)] for chi in chars]
    return R.det(M), R


def hecke_table(D, pmax):
    """Operators T_P for admissible p <= pmax with every character's eigenvalue."""
    space = omf_space(D)
    chars = eigenforms(space)
    m = chars[0].modulus
    primes, skipped = [], []
    for p in range(2, pmax + 1):
        if not is_prime(p):
            continue
        status = split_prime_form(D, p)
        if isinstance(status, str):
            skipped.append({"p": p, "status": status})
            continue
        T = hecke_operator(space, p)
        primes.append({
            "p": p,
            "form": list(status),
            "ideal_class": T.ideal_class,
            "permutation": list(T.perm),
            "eigenvalues": [[eigenvalue(chi, T), m] for chi in chars],
        })
    return {
        "disc": D,
        "h": space.dimension,
        "reps": [list(f) for f in space.group.reps],
        "structure": list(space.group.structure),
        "characters": [list(chi.exponents) for chi in chars],
        "modulus": m,
        "primes": primes,
        "skipped": skipped,
    }
