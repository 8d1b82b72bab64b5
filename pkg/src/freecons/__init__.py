"""Free constructions of groups: amalgamated free products and HNN extensions.

Normal forms, conjugacy and root finding, and exhaustive ball sweeps that
certify witness elements escaping the elliptic elements and the d-th powers.
"""

from .amalgam import (AmalgamGroup, AmalgamWord, are_conjugate, cyclically_reduce, dth_roots,
                      is_dth_power, is_elliptic, power, reduce, witness_alpha)
from .config import GroupConfig, load as load_config
from .errors import (CapExceededError, ConfigError, DegenerateError, EscalationCapError,
                     FreeConsError, GroupMismatchError, UnsupportedOracleError)
from .factors import (AbelianGroup, EnumeratedSubgroup, FactorElement, FiniteTableGroup,
                      FreeGroup, LatticeSubgroup, TrivialSubgroup, coset_rep, cyclic_group,
                      dihedral_group, double_coset_equal, is_member, multiply,
                      nondegenerate_witnesses, symmetric_group)
from .genericity import (Ball, CensusReport, WitnessReport, enumerate_ball, fs_type_census,
                         generosity_escapee, verify_witness)
from .hnn import (HnnGroup, HnnWord, are_conjugate_hnn, britton_reduce, cyclically_reduce_hnn,
                  dth_roots_hnn, is_elliptic_hnn, witness_alpha_hnn)
from .kernels import BACKEND
from .wordspec import parse_word

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
