"""Reduction theory for real binary forms.

Core pieces: the covariant point solver (covariant), smallest enclosing
disks and cluster detection (geometry), the inequality catalog (bounds),
and the classical plus cluster-aware reduction loops (reduction).  A CLI
(formreduce) and a FastAPI service (formreduce.service) wrap the same
operation handlers.
"""

from .bounds import BoundReport, EpsilonThresholds, thresholds
from .covariant import (
    NormalizedForm,
    SpherePoint,
    UpperHalfPoint,
    covariant_point,
    lift_to_sphere,
    normalize,
    residuals,
    tangent_sum,
)
from .forms import BinaryForm, UnimodularMatrix, act, expand, from_coeffs
from .geometry import (
    ClusterSplit,
    Disk,
    attach_covariant,
    detect_majority_cluster,
    smallest_enclosing_disk,
    split_half,
)
from .reduction import (
    CaseLabel,
    Classification,
    FundamentalDomainStatus,
    ReductionTrace,
    classic_reduce,
    classify,
    cluster_reduce,
    fundamental_status,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "BoundReport",
    "CaseLabel",
    "Classification",
    "ClusterSplit",
    "Disk",
    "EpsilonThresholds",
    "FundamentalDomainStatus",
    "NormalizedForm",
    "ReductionTrace",
    "SpherePoint",
    "UnimodularMatrix",
    "UpperHalfPoint",
    "act",
    "attach_covariant",
    "classic_reduce",
    "classify",
    "cluster_reduce",
    "covariant_point",
    "detect_majority_cluster",
    "expand",
    "from_coeffs",
    "fundamental_status",
    "lift_to_sphere",
    "normalize",
    "residuals",
    "smallest_enclosing_disk",
    "split_half",
    "tangent_sum",
    "thresholds",
]
