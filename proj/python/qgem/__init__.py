# Copyright 2026 The qgemsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Simulator for gravitationally induced entanglement of n masses.

Particle indices are 0-based throughout the Python API.
"""

from ._qgem import (
    ConfigError,
    NotCertifiableError,
    PhysicalParams,
    decompose,
    decoherence_rate,
    density_matrix,
    eig_hermitian,
    entanglement_entropy,
    group_operators,
    min_shots,
    partial_trace,
    partial_transpose,
    ppt_min_eigenvalue,
    tensor,
    witness_matrix,
    witness_value,
)

__all__ = [
    "ConfigError",
    "NotCertifiableError",
    "PhysicalParams",
    "decompose",
    "decoherence_rate",
    "density_matrix",
    "eig_hermitian",
    "entanglement_entropy",
    "group_operators",
    "min_shots",
    "partial_trace",
    "partial_transpose",
    "ppt_min_eigenvalue",
    "tensor",
    "witness_matrix",
    "witness_value",
]
