"""Quadratic rings Z[g]/(g^2 - t*g + n) and rank-2 modules over them in good-frame form.

Action matrices act on column coordinate vectors: column j holds the
coordinates of g*e_j. A good frame (a, b, c) is the matrix [[a, b], [c, 0]];
pseudoregularity forces t = a and n = -b*c for the frame's generator.
"""

from dataclasses import dataclass
from math import gcd

from .errors import InvariantError, ValidationError
from .forms import is_square
from .jsonio import decode_int, encode_int


class NotAModule(ValidationError):
    """The matrix does not satisfy the ring relation M^2 = t*M - n."""


class DegenerateRing(ValidationError):
    pass


class NotPseudoregular(ValidationError):
    pass


@dataclass(frozen=True)
class QuadraticRing:
    t: int
    n: int

    @property
    def disc(self):
        return self.t * self.t - 4 * self.n

    def is_nondegenerate(self):
        return self.disc != 0 and not is_square(self.disc)

    def to_json(self):
        return {"t": encode_int(self.t), "n": encode_int(self.n)}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(decode_int(obj["t"]), decode_int(obj["n"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed ring object: {obj!r}") from exc

    @classmethod
    def of_discriminant(cls, D):
        """The ring Z[w] with w = (D mod 2 + sqrt(D)) / 2."""
        t = D % 2
        return cls(t, (t - D) // 4)

    def shifted(self, d):
        """Ring presentation for the generator g - d."""
        return QuadraticRing(self.t - 2 * d, self.n - d * self.t + d * d)


@dataclass(frozen=True)
class RingElement:
    """x + y*g."""

    x: int
    y: int

    def __iter__(self):
        yield self.x
        yield self.y


def ring_mul(r, u, v):
    x1, y1 = u
    x2, y2 = v
    # g^2 = t*g - n
    yy = y1 * y2
    return RingElement(x1 * x2 - r.n * yy, x1 * y2 + x2 * y1 + r.t * yy)


def trace_norm(r, u):
    x, y = u
    return 2 * x + r.t * y, x * x + r.t * x * y + r.n * y * y


def involution(r, u):
    x, y = u
    return RingElement(x + r.t * y, -y)


# -- 2x2 integer matrices as ((m11, m12), (m21, m22))

def mat_mul(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def mat_trace(M):
    return M[0][0] + M[1][1]


def mat_det(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def transpose(M):
    return ((M[0][0], M[1][0]), (M[0][1], M[1][1]))


def satisfies_ring_relation(ring, M):
    M2 = mat_mul(M, M)
    t, n = ring.t, ring.n
    return all(M2[i][j] == t * M[i][j] - (n if i == j else 0) for i in range(2) for j in range(2))


def is_pseudoregular(ring, M):
    """Trace criterion: a module over a quadratic ring is pseudoregular iff traces agree."""
    if ring.disc == 0 or ring.n == 0:
        raise DegenerateRing(f"ring {ring} is degenerate (generator is a zero divisor)")
    if not satisfies_ring_relation(ring, M):
        raise NotAModule(f"matrix {M} violates g^2 = {ring.t}*g - {ring.n}")
    return mat_trace(M) == ring.t


@dataclass(frozen=True)
class GoodFrameModule:
    """Module with basis e1, e2 on which the frame generator g' acts by [[a, b], [c, 0]].

    `ring` is the presentation for g' itself, so ring.t == a and ring.n == -b*c.
    The generator of the ring the module was presented over is g' + shift.
    """

    ring: QuadraticRing
    a: int
    b: int
    c: int
    shift: int = 0

    def __post_init__(self):
        if self.ring.t != self.a or self.ring.n != -self.b * self.c:
            raise NotPseudoregular(
                f"frame ({self.a}, {self.b}, {self.c}) does not match ring {self.ring}")

    @classmethod
    def from_frame(cls, a, b, c, shift=0):
        return cls(QuadraticRing(a, -b * c), a, b, c, shift)

    @property
    def matrix(self):
        return ((self.a, self.b), (self.c, 0))

    @property
    def base_ring(self):
        return self.ring.shifted(-self.shift)

    @property
    def disc(self):
        return self.ring.disc

    def action(self, u):
        """Matrix of x + y*g' on the frame."""
        x, y = u
        return ((x + y * self.a, y * self.b), (y * self.c, x))

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "a": encode_int(self.a),
            "b": encode_int(self.b),
            "c": encode_int(self.c),
            "shift": encode_int(self.shift),
        }

    @classmethod
    def from_json(cls, obj):
        try:
            ring = QuadraticRing.from_json(obj["ring"])
            return cls(ring, decode_int(obj["a"]), decode_int(obj["b"]),
                       decode_int(obj["c"]), decode_int(obj.get("shift", 0)))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValidationError(f"malformed module object: {obj!r}") from exc


def good_frame(ring, M):
    """Normalize a pseudoregular action matrix by the generator shift g <- g - d."""
    if not is_pseudoregular(ring, M):
        raise NotPseudoregular(f"matrix {M} has trace {mat_trace(M)} != t = {ring.t}")
    d = M[1][1]
    frame_ring = ring.shifted(d)
    return GoodFrameModule(frame_ring, M[0][0] - d, M[0][1], M[1][0], d)


def regular_module(ring):
    """The ring as a module over itself, on the good basis (1, t - g)."""
    return GoodFrameModule(ring, ring.t, ring.n, -1, 0)


def is_invertible(I):
    # the norm form of frame (a, b, c) is (-c, a, b), so its content is gcd(a, b, c)
    return gcd(gcd(I.a, I.b), I.c) == 1


def dual(I):
    """Dual module: the transposed action [[a, c], [b, 0]] is already a good frame."""
    return GoodFrameModule(I.ring, I.a, I.c, I.b, I.shift)


# -- products inside the fraction field of Z[w], w the standard generator

def _offset(I, t0):
    """k with g' = w + k, where w has trace t0."""
    k, rem = divmod(I.a - t0, 2)
    if rem:
        raise InvariantError(f"frame trace {I.a} has wrong parity for trace {t0}")
    return k


def lattice_basis(I):
    """Coordinates over (1, w) of the embedding e1 -> c, e2 -> g' - a."""
    std = QuadraticRing.of_discriminant(I.disc)
    k = _offset(I, std.t)
    return (I.c, 0), (k - I.a, 1)


def _elem_mul(std, u, v):
    return tuple(ring_mul(std, u, v))


def hermite_basis(vectors):
    """Basis ((X, Y1), (0, Y2)) with X, Y2 > 0 and 0 <= Y1 < Y2 of the lattice spanned by vectors."""
    vecs = [tuple(v) for v in vectors if v != (0, 0)]
    # Euclid on the first coordinate
    while sum(1 for v in vecs if v[0] != 0) > 1:
        vecs.sort(key=lambda v: (v[0] == 0, abs(v[0])))
        pivot = vecs[0]
        new = [pivot]
        for v in vecs[1:]:
            if v[0] != 0:
                q = v[0] // pivot[0]
                v = (v[0] - q * pivot[0], v[1] - q * pivot[1])
            if v != (0, 0):
                new.append(v)
        vecs = new
    firsts = [v for v in vecs if v[0] != 0]
    if len(firsts) != 1:
        raise InvariantError("lattice has rank < 2")
    w1 = firsts[0]
    Y2 = 0
    for v in vecs:
        if v[0] == 0:
            Y2 = gcd(Y2, v[1])
    if Y2 == 0:
        raise InvariantError("lattice has rank < 2")
    if w1[0] < 0:
        w1 = (-w1[0], -w1[1])
    return (w1[0], w1[1] % Y2), (0, Y2)


def _action_in_basis(std, w1, w2):
    """Matrix of w on the basis (w1, w2), column convention."""
    det = w1[0] * w2[1] - w2[0] * w1[1]
    cols = []
    for v in (w1, w2):
        x, y = _elem_mul(std, (0, 1), v)
        # solve alpha*w1 + beta*w2 = (x, y)
        alpha, r1 = divmod(x * w2[1] - w2[0] * y, det)
        beta, r2 = divmod(w1[0] * y - x * w1[1], det)
        if r1 or r2:
            raise InvariantError("lattice is not closed under the ring action")
        cols.append((alpha, beta))
    return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))


def module_mul(I, J):
    """Product of two invertible modules over the same quadratic order.

    Both lattices are embedded in Z[w], the four pairwise products are
    Hermite-reduced, and the basis is oriented so that the sign of the norm
    form's leading coefficient is multiplicative. The result is presented
    relative to the base ring of I.
    """
    if I.disc != J.disc:
        raise ValidationError(f"ring mismatch: discriminants {I.disc} and {J.disc}")
    for M in (I, J):
        if not is_invertible(M):
            raise ValidationError(f"module {M} is not invertible")
    std = QuadraticRing.of_discriminant(I.disc)
    u1, u2 = lattice_basis(I)
    v1, v2 = lattice_basis(J)
    gens = [_elem_mul(std, u, v) for u in (u1, u2) for v in (v1, v2)]
    w1, w2 = hermite_basis(gens)
    # det(lattice_basis) == c; the leading norm-form coefficient is -c
    if (w1[0] * w2[1] > 0) != (I.c * J.c < 0):
        w2 = (-w2[0], -w2[1])
    M = _action_in_basis(std, w1, w2)
    P = good_frame(std, M)
    return GoodFrameModule(P.ring, P.a, P.b, P.c, P.shift + _offset(I, std.t) + I.shift)
