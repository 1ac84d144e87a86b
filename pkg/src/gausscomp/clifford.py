"""The Clifford functor (form -> ring and module) and the norm functor (module -> form).

For f = (a, b, c) the even Clifford ring is generated by xi = e1*e2 with
xi^2 = b*xi - a*c, and xi acts on the odd part span(e1, e2) by
xi*e1 = b*e1 - a*e2, xi*e2 = c*e1. The norm functor sends the frame [[a, b], [c, d]]
to the exterior form -c*x^2 + (a - d)*x*y + b*y^2, read off from g*x ^ x.

Two trivialization signs are left open by those formulas: the sign of the
second odd basis vector (BASIS_SIGN) and the generator of the value line
(VALUE_SIGN). They are fixed so that the regular module has the principal
norm form and norm_form(clifford(f)) == f; `universal.calibrate_signs`
re-derives them symbolically.
"""

from dataclasses import dataclass

from .errors import InvariantError, ValidationError
from .forms import (
    BinaryForm,
    _check_nondegenerate_primitive,
    negate_flip,
    proper_equivalent,
    validate_discriminant,
)
from .rings import GoodFrameModule, QuadraticRing, is_invertible, mat_det, mat_trace

BASIS_SIGN = 1
VALUE_SIGN = 1


# Coefficient formulas, generic over any commutative ring supporting + - *
# (ints here, MultiPoly in the symbolic checks).

def clifford_frame_coeffs(a, b, c, basis_sign=BASIS_SIGN):
    """Good frame of xi on the basis (e1, basis_sign*e2)."""
    return b, basis_sign * c, -basis_sign * a


def regular_frame_coeffs(t, n, basis_sign=BASIS_SIGN):
    """Good frame of g on the regular module with basis (1, basis_sign*(t - g))."""
    return t, basis_sign * n, -basis_sign


def exterior_form_coeffs(a, b, c, d=0):
    """Coefficients of g*x ^ x on e1 ^ e2 for the action [[a, b], [c, d]]."""
    return -c, a - d, b


def norm_coeffs(a, b, c, value_sign=VALUE_SIGN):
    A, B, C = exterior_form_coeffs(a, b, c)
    return value_sign * A, value_sign * B, value_sign * C


@dataclass(frozen=True)
class Orientation:
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValidationError(f"orientation sign must be +1 or -1, got {self.sign}")

    def flip(self):
        return Orientation(-self.sign)


@dataclass(frozen=True)
class CliffordPair:
    ring: QuadraticRing
    module: GoodFrameModule
    orientation: Orientation = Orientation(1)

    def __post_init__(self):
        if self.module.ring != self.ring:
            raise InvariantError("Clifford module is not presented over the Clifford ring")


def clifford(f):
    validate_discriminant(f.disc)
    ring = QuadraticRing(f.b, f.a * f.c)
    A, B, C = clifford_frame_coeffs(f.a, f.b, f.c)
    return CliffordPair(ring, GoodFrameModule(ring, A, B, C, 0))


def norm_form(I):
    if not isinstance(I, GoodFrameModule):
        raise ValidationError(f"expected a good-frame module, got {type(I).__name__}")
    return BinaryForm(*norm_coeffs(I.a, I.b, I.c))


def norm_multiplicativity_check(I, u, x):
    """N(u*x) == Nm(u)*N(x) for one ring element u and coordinate vector x."""
    N = norm_form(I)
    (m11, m12), (m21, m22) = I.action(u)
    x1, x2 = x
    ux = (m11 * x1 + m12 * x2, m21 * x1 + m22 * x2)
    nm = u[0] * u[0] + I.ring.t * u[0] * u[1] + I.ring.n * u[1] * u[1]
    return N(*ux) == nm * N(*x)


def canonical_orientation(I):
    """Orientation identifying e1*e2 in Clf0(norm_form(I)) with the frame generator."""
    if not is_invertible(I):
        raise ValidationError(f"module {I} is not invertible")
    N = norm_form(I)
    pair = clifford(N)
    M = pair.module.matrix
    if (mat_trace(M), mat_det(M)) != (I.ring.t, I.ring.n) or pair.ring != I.ring:
        raise InvariantError(
            f"char-poly mismatch: e1e2 has ({mat_trace(M)}, {mat_det(M)}), "
            f"frame ring is ({I.ring.t}, {I.ring.n})")
    return Orientation(1)


def oriented_similar(f, g):
    """Oriented similarity over Z.

    The oriented similitudes are (m, det m): determinant +1 maps with factor +1
    and determinant -1 maps with factor -1. Up to proper equivalence the only
    extra move is f -> (-a, b, -c).
    """
    if f.disc != g.disc:
        raise ValidationError(f"discriminant mismatch: {f.disc} vs {g.disc}")
    _check_nondegenerate_primitive(f)
    _check_nondegenerate_primitive(g)
    return proper_equivalent(f, g) or proper_equivalent(negate_flip(f), g)


def isomorphic(I, J):
    """Module isomorphism, decided through the norm functor."""
    if I.disc != J.disc:
        return False
    return oriented_similar(norm_form(I), norm_form(J))


def flip_module(I):
    """The module with the ring acting through the standard involution.

    On the basis (e1, -e2) the generator -g' acts by [[-a, b], [c, 0]].
    """
    return GoodFrameModule.from_frame(-I.a, I.b, I.c, I.a + I.shift)

