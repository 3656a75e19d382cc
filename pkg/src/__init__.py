"""Bell-FdB Lab - multivariate Bell polynomials and the Faa di Bruno formula in exact arithmetic."""

__version__ = "0.1.0"
