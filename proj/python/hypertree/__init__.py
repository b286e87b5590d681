"""Random 2-trees: census, determinantal sampling, integral homology and density certificates.

Faces are triples of 1-based vertex labels throughout.
"""

from ._hypertree import (
    ParseError,
    __version__,
    asphericity_certificate,
    aut_order,
    census,
    cohen_lenstra_pmf,
    cone_tree,
    containment_probability,
    densest_subcomplex,
    expected_torsion_bounds,
    h1,
    h1_order,
    hyperbolicity_certificate,
    is_2tree,
    kernel_entry,
    power_mean_check,
    projective_plane6,
    read_complex,
    sample,
    smith_normal_form,
    union_bound,
)

__all__ = [
    "ParseError",
    "__version__",
    "asphericity_certificate",
    "aut_order",
    "census",
    "cohen_lenstra_pmf",
    "cone_tree",
    "containment_probability",
    "densest_subcomplex",
    "expected_torsion_bounds",
    "h1",
    "h1_order",
    "hyperbolicity_certificate",
    "is_2tree",
    "kernel_entry",
    "power_mean_check",
    "projective_plane6",
    "read_complex",
    "sample",
    "smith_normal_form",
    "union_bound",
]
