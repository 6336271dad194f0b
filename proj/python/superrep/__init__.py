# Copyright 2026 The superrep Authors
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

"""Python access to the superrep C++ core."""

from ._core import (
    ReplicationNetwork,
    ResourceError,
    TruncatedEncoder,
    compression_dims,
    dim_rep,
    entanglement_fidelity_exact,
    entanglement_fidelity_rational,
    enumerate_diagrams,
    fidelity_lower_bound,
    generate_entangled,
    generate_phase,
    generation_bound,
    haar_unitary,
    min_ancilla_dim,
    multiplicity,
    schur_basis,
    schur_blocks,
    schur_weyl_measure,
    tail_bound,
    tail_exact,
    tail_rational,
    teleport_experiment,
    typicality_experiment,
)

__version__ = "1.0.0"
