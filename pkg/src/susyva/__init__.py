"""Exact λ-bracket and Λ-bracket calculus for Lie conformal and vertex algebras."""

from .coeff import (Scalar, I, param, declare_params, to_scalar, render_scalar,
                    LambdaPoly, GrassmannLambdaValue, chi_normalize)

__version__ = "0.1.0"

__all__ = ["Scalar", "I", "param", "declare_params", "to_scalar", "render_scalar",
           "LambdaPoly", "GrassmannLambdaValue", "chi_normalize"]
