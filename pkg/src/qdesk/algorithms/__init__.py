"""End-to-end algorithm orchestrations over the core simulator."""
from .graphs import layered_partition, min_find
from .groups import FiniteGroup, cyclic_group, regular_representation, rep_matrix_element, symmetric_group_s3
from .hhl import HhlProblem, hhl_solve
from .ising import AnsatzParams, IsingModel, VqeConfig, exact_ising_ground, vqe_ising
from .potts import PottsModel, potts_partition, potts_qft_fragment
from .qaoa import MaxCutInstance, QaoaParams, qaoa_grid_search, qaoa_maxcut
from .qpca import qpca_two_feature
from .schrodinger import schrodinger_evolve
from .search import bv_hidden_string, grover_search
from .shor import compiled_shor_15, period_find_classical, period_find_quantum, shor_factor
from .walk import quantum_walk_cycle

__all__ = [
    "AnsatzParams", "FiniteGroup", "HhlProblem", "IsingModel", "MaxCutInstance",
    "PottsModel", "QaoaParams", "VqeConfig", "bv_hidden_string", "compiled_shor_15",
    "cyclic_group", "exact_ising_ground", "grover_search", "hhl_solve",
    "layered_partition", "min_find", "period_find_classical", "period_find_quantum",
    "potts_partition", "potts_qft_fragment", "qaoa_grid_search", "qaoa_maxcut",
    "qpca_two_feature", "quantum_walk_cycle", "regular_representation",
    "rep_matrix_element", "schrodinger_evolve", "shor_factor", "symmetric_group_s3",
    "vqe_ising",
]
