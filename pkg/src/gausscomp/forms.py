"""Integral binary quadratic forms: arithmetic, reduction, equivalence, class enumeration.

A form (a, b, c) stands for a*x^2 + b*x*y + c*y^2. Unimodular maps act on the
right: transform(f, m)(x, y) = f(p*x + q*y, r*x + s*y).
"""

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import InvariantError, ValidationError
from .jsonio import decode_int, encode_int


@dataclass(frozen=True)
class BinaryForm:
    a: int
    b: int
    c: int

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def __repr__(self):
        return f"BinaryForm({self.a}, {self.b}, {self.c})"

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __neg__(self):
        return BinaryForm(-self.a, -self.b, -self.c)

    def to_json(self):
        return {"a": encode_int(self.a), "b": encode_int(self.b), "c": encode_int(self.c)}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(decode_int(obj["a"]), decode_int(obj["b"]), decode_int(obj["c"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed form object: {obj!r}") from exc


@dataclass(frozen=True)
class UnimodularMap:
    """Integer 2x2 matrix [[p, q], [r, s]] with determinant +1 or -1."""

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise ValidationError(f"map {tuple(self)} is not unimodular (det {self.det})")

    def __iter__(self):
        yield self.p
        yield self.q
        yield self.r
        yield self.s

    @property
    def det(self):
        return self.p * self.s - self.q * self.r

    def __matmul__(self, other):
        p, q, r, s = self
        P, Q, R, S = other
        return UnimodularMap(p * P + q * R, p * Q + q * S, r * P + s * R, r * Q + s * S)

    def inverse(self):
        d = self.det
        return UnimodularMap(d * self.s, -d * self.q, -d * self.r, d * self.p)

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)


IDENTITY = UnimodularMap.identity()
SWAP = UnimodularMap(0, 1, 1, 0)
# (x, y) -> (-y, x); determinant +1
ROTATE = UnimodularMap(0, -1, 1, 0)


def discriminant(f):
    return f.b * f.b - 4 * f.a * f.c


def evaluate(f, x, y):
    return f.a * x * x + f.b * x * y + f.c * y * y


def content(f):
    return gcd(gcd(f.a, f.b), f.c)


def is_primitive(f):
    return content(f) == 1


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def validate_discriminant(D):
    if D % 4 not in (0, 1):
        raise ValidationError(f"{D} is not a discriminant (must be 0 or 1 mod 4)")
    if D == 0 or is_square(D):
        raise ValidationError(f"discriminant {D} is zero or a perfect square")
    return D


def principal_form(D):
    validate_discriminant(D)
    k = D % 2
    return BinaryForm(1, k, (k - D) // 4)


def flip_orientation(f):
    return BinaryForm(f.a, -f.b, f.c)


def negate_flip(f):
    """Image of f under diag(1, -1) with similitude factor -1 (orientation-preserving)."""
    return BinaryForm(-f.a, f.b, -f.c)


def transform(f, m):
    if not isinstance(m, UnimodularMap):
        m = UnimodularMap(*m)
    a, b, c = f
    p, q, r, s = m
    return BinaryForm(
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


def _check_nondegenerate_primitive(f):
    validate_discriminant(f.disc)
    if not is_primitive(f):
        raise ValidationError(f"{f} is not primitive (content {content(f)})")


# -- comparisons against sqrt(D) for non-square D > 0

def _lt_sqrt(k, D):
    return k < 0 or k * k < D


def _gt_sqrt(k, D):
    return k > 0 and k * k > D


def is_reduced(f):
    """Reducedness: |b| <= a <= c with tie-breaking for D < 0; the cycle condition for D > 0."""
    D = f.disc
    a, b, c = f
    if D < 0:
        if a <= 0 or abs(b) > a or a > c:
            return False
        if b < 0 and (-b == a or a == c):
            return False
        return True
    # sqrt(D) - b < 2|a| < sqrt(D) + b  and  0 < b < sqrt(D)
    return (b > 0 and _lt_sqrt(b, D)
            and _gt_sqrt(2 * abs(a) + b, D)
            and _lt_sqrt(2 * abs(a) - b, D))


def _normalize_b(b, a, D):
    """Representative of b mod 2|a| used by the indefinite reduction step."""
    m = 2 * abs(a)
    if a * a > D:
        r = b % m
        return r - m if r > abs(a) else r
    s = isqrt(D)
    return s - (s - b) % m


def rho(f):
    """One indefinite reduction step. Returns (g, m) with g = transform(f, m), det m = +1."""
    a, b, c = f
    D = f.disc
    b2 = _normalize_b(-b, c, D)
    k, rem = divmod(b2 + b, 2 * c)
    if rem:
        raise InvariantError(f"rho step on {f} produced incongruent b")
    m = UnimodularMap(0, -1, 1, k)
    g = transform(f, m)
    if g.b != b2:
        raise InvariantError(f"rho step on {f} mismatch")
    return g, m


def _reduce_definite(f):
    a, b, c = f
    m = IDENTITY
    while True:
        k = (a - b) // (2 * a)
        if k:
            step = UnimodularMap(1, k, 0, 1)
            a, b, c = transform(BinaryForm(a, b, c), step)
            m = m @ step
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            m = m @ ROTATE
            continue
        return BinaryForm(a, b, c), m


def _reduce_indefinite(f):
    g, m = f, IDENTITY
    # reduction length is O(log) in coefficient size; the bound only catches bugs
    limit = 64 + 4 * max(abs(x) for x in f).bit_length() + 4 * f.disc.bit_length()
    for _ in range(limit):
        if is_reduced(g):
            return g, m
        g, step = rho(g)
        m = m @ step
    raise InvariantError(f"indefinite reduction of {f} did not terminate")


def reduce(f):
    """Reduced representative of the proper-equivalence class of f and the map carrying f to it."""
    _check_nondegenerate_primitive(f)
    if f.disc < 0:
        if f.a < 0:
            raise ValidationError(f"{f} is negative definite; negate it first")
        return _reduce_definite(f)
    return _reduce_indefinite(f)


def _walk_cycle(f):
    """Yield (form, map from f) around the rho-cycle of the reduced form f, starting at f."""
    if f.disc < 0 or not is_reduced(f):
        raise ValidationError(f"{f} is not a reduced indefinite form")
    yield f, IDENTITY
    g, m = f, IDENTITY
    for _ in range(4 * f.disc + 8):
        g, step = rho(g)
        m = m @ step
        if g == f:
            return
        yield g, m
    raise InvariantError(f"cycle of {f} did not close")


def cycle(f):
    """The rho-cycle of a reduced indefinite form, as (form, map from f) pairs starting at f."""
    return list(_walk_cycle(f))


def proper_equivalence_map(f, g):
    """A determinant +1 map m with transform(f, m) == g, or None."""
    if f.disc != g.disc:
        raise ValidationError(f"discriminant mismatch: {f.disc} vs {g.disc}")
    _check_nondegenerate_primitive(f)
    _check_nondegenerate_primitive(g)
    if f.disc < 0:
        if (f.a > 0) != (g.a > 0):
            return None
        ff, gg = (f, g) if f.a > 0 else (-f, -g)
        rf, mf = _reduce_definite(ff)
        rg, mg = _reduce_definite(gg)
        if rf != rg:
            return None
        return mf @ mg.inverse()
    rf, mf = _reduce_indefinite(f)
    rg, mg = _reduce_indefinite(g)
    for h, mc in _walk_cycle(rf):
        if h == rg:
            return mf @ mc @ mg.inverse()
    return None


def proper_equivalent(f, g):
    return proper_equivalence_map(f, g) is not None


def form_key(f):
    """Ordering used for canonical representatives."""
    return (abs(f.a), f.a < 0, abs(f.b), f.b < 0, f.c)


def _divisors(n):
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def reduced_forms(D):
    """All primitive reduced forms of discriminant D (positive definite ones when D < 0)."""
    validate_discriminant(D)
    out = []
    if D < 0:
        a = 1
        while 3 * a * a <= -D:
            for b in range(-a + 1, a + 1):
                if (b - D) % 2:
                    continue
                num = b * b - D
                if num % (4 * a):
                    continue
                f = BinaryForm(a, b, num // (4 * a))
                if is_reduced(f) and is_primitive(f):
                    out.append(f)
            a += 1
    else:
        for b in range(1, isqrt(D) + 1):
            if (b - D) % 2:
                continue
            ac = (b * b - D) // 4
            for d in _divisors(ac):
                for a in (d, -d):
                    f = BinaryForm(a, b, ac // a)
                    if is_reduced(f) and is_primitive(f):
                        out.append(f)
    return sorted(out, key=form_key)


def enumerate_classes(D):
    """One representative per proper-equivalence class of primitive forms of discriminant D.

    For D < 0 these are the positive definite reduced forms. For D > 0 each
    rho-cycle contributes its smallest member under form_key. The principal
    class always comes first.
    """
    forms = reduced_forms(D)
    if D < 0:
        return forms
    seen = set()
    reps = []
    for f in forms:
        if f in seen:
            continue
        members = [g for g, _ in cycle(f)]
        seen.update(members)
        reps.append(min(members, key=form_key))
    return sorted(reps, key=form_key)
