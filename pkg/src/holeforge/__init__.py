"""Exact computations with rectangular-simplex affine semigroups.

Membership with witnesses, saturation tests, hole enumeration with facet
heights, good-triple certification, facet lifts, and machine-checkable
non-normality certificates.
"""

from .certificate import (
    Certificate,
    CertificateParseError,
    Verdict,
    emit,
    parse,
    verify,
)
from .lattice import LatticePoint, LinearForm, dot, ladder_step, lcm_all
from .lifting import (
    LiftStep,
    LiftTrace,
    deep_hole_construction,
    lift_lambda,
    lift_point,
    shift,
    unlift_point,
)
from .oracle import HoleRecord, SemigroupOracle
from .simplex import (
    SKEW,
    RectSimplex,
    ResourceLimitExceeded,
    degree_one_generators,
    height,
    make_simplex,
)
from .triples import (
    CertificationError,
    GoodTriple,
    Ladder,
    build_ladder,
    certify,
    family,
    is_good_triple,
    search_good_triples,
    witness_hole,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CertificateParseError",
    "CertificationError",
    "GoodTriple",
    "HoleRecord",
    "Ladder",
    "LatticePoint",
    "LiftStep",
    "LiftTrace",
    "LinearForm",
    "RectSimplex",
    "ResourceLimitExceeded",
    "SKEW",
    "SemigroupOracle",
    "Verdict",
    "build_ladder",
    "certify",
    "deep_hole_construction",
    "degree_one_generators",
    "dot",
    "emit",
    "family",
    "height",
    "is_good_triple",
    "ladder_step",
    "lcm_all",
    "lift_lambda",
    "lift_point",
    "make_simplex",
    "parse",
    "search_good_triples",
    "shift",
    "unlift_point",
    "verify",
    "witness_hole",
]
