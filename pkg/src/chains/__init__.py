from src.chains.grd import GrdResult, rdu, tstors
from src.chains.regchain import (
    RegularChain,
    RegularSystem,
    in_saturation,
    is_regular_chain,
    is_regular_system,
    is_zero_dimensional,
    specializes_well,
)
from src.chains.regularize import StabilityCertificate, WrsdResult, ZdtorcResult, initials_certificate, regularize, wrsd, zdtorc
from src.chains.triset import AscendingChain, TriangularSet, is_ascending_chain, is_reduced, is_triangular
from src.chains.wu import WuDecomposition, basic_set, char_set, is_generic_zero_dimensional, wu_decompose
