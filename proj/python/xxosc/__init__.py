# Copyright 2026 The xxosc Authors
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

"""Covariance-level simulator for two x-x coupled quantum oscillators."""

from ._xxosc import (
    NumericalInconsistency,
    __version__,
    classify_regime,
    critical_coupling,
    death_time,
    diagonalizer_params,
    diagonalizing_symplectic,
    evolve_dissipative,
    evolve_dissipative_rk4,
    evolve_unitary,
    hamiltonian,
    hookian_reduce,
    log_negativity,
    mach_zehnder_residual,
    normal_mode_energies_sq,
    purity,
    seralian,
    symplectic_form,
    symplectic_frequencies,
    thermal_covariance,
    trajectory,
)

__all__ = [
    "NumericalInconsistency",
    "__version__",
    "classify_regime",
    "critical_coupling",
    "death_time",
    "diagonalizer_params",
    "diagonalizing_symplectic",
    "evolve_dissipative",
    "evolve_dissipative_rk4",
    "evolve_unitary",
    "hamiltonian",
    "hookian_reduce",
    "log_negativity",
    "mach_zehnder_residual",
    "normal_mode_energies_sq",
    "purity",
    "seralian",
    "symplectic_form",
    "symplectic_frequencies",
    "thermal_covariance",
    "trajectory",
]
