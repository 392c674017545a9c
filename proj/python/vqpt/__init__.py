# Copyright 2026 The VQPT Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Variational quantum process tomography on a dense statevector simulator."""

import json as _json

from ._core import (
    MAX_QUBITS,
    Ansatz,
    CapacityError,
    ConfigError,
    ExperimentError,
    __version__,
    accuracy,
    fidelity,
    gradient,
    loss,
    make_dataset,
    overlap,
    rqc_unitary,
    similarity,
    xxz_hamiltonian,
    xxz_unitary,
)
from ._core import learn as _learn


def learn(config, threads=0):
    """Runs an experiment from a config dict (or JSON string) and returns the trials."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _learn(text, threads)


__all__ = [
    "MAX_QUBITS",
    "Ansatz",
    "CapacityError",
    "ConfigError",
    "ExperimentError",
    "__version__",
    "accuracy",
    "fidelity",
    "gradient",
    "learn",
    "loss",
    "make_dataset",
    "overlap",
    "rqc_unitary",
    "similarity",
    "xxz_hamiltonian",
    "xxz_unitary",
]
