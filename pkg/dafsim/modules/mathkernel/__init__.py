from dafsim.modules.mathkernel.quadrature import QuadratureRule, gauss_legendre_rule, integrate
from dafsim.modules.mathkernel.rng import sample_complex_gaussian, stream
from dafsim.modules.mathkernel.special import bessel_j0, bessel_k0, exp_e1_scaled, expint_e1

__all__ = [
    "QuadratureRule",
    "bessel_j0",
    "bessel_k0",
    "exp_e1_scaled",
    "expint_e1",
    "gauss_legendre_rule",
    "integrate",
    "sample_complex_gaussian",
    "stream",
]
