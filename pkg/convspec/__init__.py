"""
convspec: 强度相关双模光子转换哈密顿量的有限扇区谱分解与时间演化
"""
from .core.fock_sector import FockState, SectorIndex, charges, compose_state, decompose_state, \
    sector_states, sectors_up_to
from .core.model import ModelSpec, catalog_model, load_model
from .core.hamiltonian import JacobiOperator, cal_g, fock_hamiltonian, free_energy, jacobi_operator, \
    operator_matrices, shift_action_matrix
from .core.polynomials import basic_hypergeometric_3phi2, hypergeometric_terminating, pochhammer, \
    q_pochhammer, recurrence_eval
from .core.spectral import SpectralData, eigenspace_sectors, inversion_residual, reconstruction_residual, \
    spectral_decomposition, verify_dual_orthogonality, verify_orthonormality
from .core.evolution import SectoredObservable, SectoredState, eigenstate, evolve_oracle, evolve_state, \
    expectation, expectation_spectral, heisenberg_element, propagator
from .core.lifting import lift_model, w_factor
from .families import FAMILY_NAMES, family_polynomial, family_spectrum, family_weight, get_family
from .utils.errors import ConfigError, ConvergenceError, ConvSpecError, DegeneracyError, HermiticityError, \
    NumericalError, SectorError

__version__ = '0.1.0'
