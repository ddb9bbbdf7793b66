"""Element-order spectra of finite simple classical groups and their direct products."""

from .arith import Factorization, factor, is_prime, k_i, mult_order, r_i, zsigmondy_set
from .groups import Cyclic, Linear, Product, Symplectic, parse
from .spectrum import MuSet, contains, exponent_of, mu_of, mu_product, spectra_equal

__version__ = "0.1.0"
