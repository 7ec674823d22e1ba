"""spectral-count - eigenvalue counting for self-adjoint operator-functions."""

__version__ = "0.1.0"
__author__ = "Khursheed Gaddi"
__email__ = "gaddi33khursheed@gmail.com"
