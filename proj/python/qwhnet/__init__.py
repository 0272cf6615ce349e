# Copyright (c) 2026 qwhnet developers
# SPDX-License-Identifier: Apache-2.0
"""Two-register statevector simulator for principal-component retrieval from
Widrow-Hoff-trained linear autoassociators."""

from qwhnet._core import (
    DegenerateInputError,
    IterationTrace,
    RandomCase,
    demo_inputs,
    demo_patterns,
    eig_hermitian,
    eigenvalue_flattening,
    generate_random_case,
    householder_unitary,
    limit_weights,
    network_output,
    rank_one_exponential,
    run_qpca,
    run_qpca_trotter,
    run_qpca_unitary,
    strang_product,
    svd_small,
    unitary_exponential,
    widrow_hoff_step,
)

__all__ = [
    "DegenerateInputError",
    "IterationTrace",
    "RandomCase",
    "demo_inputs",
    "demo_patterns",
    "eig_hermitian",
    "eigenvalue_flattening",
    "generate_random_case",
    "householder_unitary",
    "limit_weights",
    "network_output",
    "rank_one_exponential",
    "run_qpca",
    "run_qpca_trotter",
    "run_qpca_unitary",
    "strang_product",
    "svd_small",
    "unitary_exponential",
    "widrow_hoff_step",
]

__version__ = "0.1.0"
