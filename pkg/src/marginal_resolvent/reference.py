"""
Published closed forms kept as regression targets.  Transcribed by hand;
the pipelines never read them, tests compare against them.
"""

from .exactalg import MultiPoly

MOMENT_TEXTS = (
    "1",
    "c^2 + c*y^2",
    "c^4 + 4*c^3*y^2 + 2*c^3 + 2*c^2*y^4 + 4*c^2*y^2 + c*y^4",
    "c^6 + 9*c^5*y^2 + 6*c^5 + 15*c^4*y^4 + 30*c^4*y^2 + 5*c^4 + 5*c^3*y^6"
    " + 30*c^3*y^4 + 15*c^3*y^2 + 6*c^2*y^6 + 9*c^2*y^4 + c*y^6",
)

# the two components at y = 0, c = 1; only the second is analytic at infinity
SPLIT_FACTORS = ("W^3*z^2 - W*z - 1", "W^3*z^2 - W*z + 1")
FUSS_CATALAN_CURVE = "z^2*W^3 - z*W + 1"


def printed_moments():
    return tuple(MultiPoly.parse(t) for t in MOMENT_TEXTS)


def split_factors():
    return tuple(MultiPoly.parse(t) for t in SPLIT_FACTORS)
