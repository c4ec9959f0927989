"""Numeric layer: spherical functions, transforms and decompositions."""

from .functions import NumericFunction, apply_operator_fd  # noqa: F401
from .spherical import (  # noqa: F401
    SphericalEvaluator,
    bessel_spherical,
    fan_eigenvalue,
    spherical_heisenberg,
)
from .transforms import (  # noqa: F401
    group_convolution,
    k_average,
    radon_pushforward,
    spherical_transform,
)
from .decomposition import (  # noqa: F401
    dyadic_partition,
    moment,
    product_decomposition,
    s0_membership,
)
