"""
RepLab Representation Core
Exact Young-diagram combinatorics, irrep dimensions and symmetric-group characters.
"""

from .young import (
    YoungDiagram,
    enumerate_diagrams,
    su_dimension,
    sym_dimension,
    associated_diagram,
)
from .characters import (
    CycleType,
    mn_character,
    enumerate_cycle_types,
    centralizer_order,
    class_size,
)
from .irrep_table import IrrepEntry, IrrepTable, TaskRole, build_table

__all__ = [
    'YoungDiagram',
    'enumerate_diagrams',
    'su_dimension',
    'sym_dimension',
    'associated_diagram',
    'CycleType',
    'mn_character',
    'enumerate_cycle_types',
    'centralizer_order',
    'class_size',
    'IrrepEntry',
    'IrrepTable',
    'TaskRole',
    'build_table',
]
