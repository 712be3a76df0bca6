"""Parameter derivatives of associated Legendre functions.

Closed-form derivatives of P_nu^mu(z) and Q_nu^mu(z) with respect to the
degree at odd-half-integer degree and with respect to the order at integer
order, together with the Bessel, quadrature and conformal-map machinery
used to cross-check them.
"""

from .bessel import bessel_i, bessel_k, di_dorder_at_int, di_dorder_integral, dk_dorder_at_int
from .derivatives import (
    DerivativeResult,
    dp_ddegree_at_halfint,
    dp_dorder_at_int,
    dq_ddegree_at_halfint,
    dq_dorder_at_int,
    fd_param_derivative,
)
from .errors import (
    AlfError,
    ConstraintError,
    ConvergenceError,
    DomainError,
    PoleError,
    RegionError,
    StencilPoleError,
)
from .gamma import digamma, gamma, recip_gamma
from .kernel import classify_region, half_power, sqrt_prod
from .legendre import LegendreParams, legendre_p, legendre_q, whipple_p_from_q, whipple_q_from_p
from .quadrature import IntegrandSpec, QuadratureResult, integrate_finite, laplace_bessel_integral
from .representations import p_via_i_integral, p_via_k_integral, q_via_i_integral, q_via_k_integral
from .whipple_map import boundary_curve, f_map, special_points, w_map

__version__ = "0.1.0"
