"""Symmetric squares of finite simplicial pairs, computed at the chain level."""
from .borel import BorelPairComplex, antipodal_sphere, borel_compare, borel_pair
from .chains import Chain, ChainComplex, ChainMap, Ring
from .complex import (SimplicialComplex, SimplicialMap, Subcomplex, barycentric_subdivision, build_complex,
                      complex_of, induced_chain_map, relative_complex)
from .errors import (MalformedInputError, NotACycleError, OrientationError, ParityError, ResourceGuardError,
                     StructureError, SymSqError)
from .homology import betti_numbers, classes_equal, homology, is_boundary
from .manifolds import analyze, fundamental_cycle, orient
from .product import (ProductPairComplex, QuotientPairComplex, Tower, cross_chain, diagonal_tower, product_pair,
                      symmetric_quotient, tau_sign)
from .snf import smith_normal_form
from .squaring import (CheckReport, compat_check, fundamental_square_check, half_square_check, mu,
                       naturality_check, sym_square_chain, sym_square_class, well_definedness_check)

__version__ = "0.1.0"
