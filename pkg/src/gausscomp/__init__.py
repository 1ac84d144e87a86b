"""Gauss composition of binary quadratic forms through the Clifford and norm functors."""

from .classgroup import NARROW, WIDE, ClassGroup, class_group, class_of, compose, dirichlet_compose
from .clifford import CliffordPair, Orientation, canonical_orientation, clifford, norm_form, oriented_similar
from .errors import InvariantError, ValidationError
from .forms import (
    BinaryForm,
    UnimodularMap,
    content,
    discriminant,
    enumerate_classes,
    evaluate,
    flip_orientation,
    proper_equivalent,
    reduce,
    transform,
)
from .hecke import eigenforms, eigenvalue, hecke_operator, omf_space, split_prime_class
from .rings import GoodFrameModule, QuadraticRing, RingElement, dual, good_frame, module_mul, regular_module
from .universal import MultiPoly, verify_all

__version__ = "0.1.0"
