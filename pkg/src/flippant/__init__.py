"""Thompson's group T acting on the flip complex of the dyadic disk."""
from .dyadic import Arc, CirclePoint, Dyadic, ETriangle, StdInterval
from .thompson import (
    ExtElement,
    StdPartition,
    TElement,
    alpha,
    beta,
    brin_outer,
    from_polygons,
    from_word,
    gamma_r,
    identity,
    reflection,
)
from .triangulation import Polygon, Triangulation, act, arc_difference, flip
from .pants import (
    Cell,
    CellKind,
    DistanceFlag,
    LinkGraph,
    ball,
    cell_through,
    distance,
    link,
    link_after_flip,
    neighbours,
    nonhyp_instance,
    thinness_certificate,
)
from .automorphism import (
    AutElement,
    Contradiction,
    LinkIso,
    Obstruction,
    OrientationVerdict,
    classify_orientation,
    extend_link_iso,
    induced_link_iso,
    orientation_sign,
    phi_r,
    propagate_images,
    psi,
    transitive_element,
    witness_vertex,
)
from .oracle import (
    OracleGraph,
    PolyTriangulation,
    RegionEmbedding,
    enumerate_triangulations,
    flip_graph,
    oracle_distance,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "AutElement",
    "Cell",
    "CellKind",
    "CirclePoint",
    "Contradiction",
    "DistanceFlag",
    "Dyadic",
    "ETriangle",
    "ExtElement",
    "LinkGraph",
    "LinkIso",
    "Obstruction",
    "OracleGraph",
    "OrientationVerdict",
    "PolyTriangulation",
    "Polygon",
    "RegionEmbedding",
    "StdInterval",
    "StdPartition",
    "TElement",
    "Triangulation",
    "act",
    "alpha",
    "arc_difference",
    "ball",
    "beta",
    "brin_outer",
    "cell_through",
    "classify_orientation",
    "distance",
    "enumerate_triangulations",
    "extend_link_iso",
    "flip",
    "flip_graph",
    "from_polygons",
    "from_word",
    "gamma_r",
    "identity",
    "induced_link_iso",
    "link",
    "link_after_flip",
    "neighbours",
    "nonhyp_instance",
    "oracle_distance",
    "orientation_sign",
    "phi_r",
    "propagate_images",
    "psi",
    "reflection",
    "thinness_certificate",
    "transitive_element",
    "witness_vertex",
]
