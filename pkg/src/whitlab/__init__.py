"""p-adic oscillatory integrals, Gauss sums, the p-adic Airy function and GL(2) Whittaker newvectors."""

__version__ = "0.1.0"
