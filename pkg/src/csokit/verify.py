"""Desk-scale regression suite replaying every certified claim.

Each entry draws its own seeded ensemble, exercises one construction, and
reports a status with the residuals that justify it.  The suite is the
substance behind the `verify-paper` CLI subcommand and the acceptance tests;
entry order is fixed, and a whole report serializes byte-identically for a
fixed configuration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, InputError
from . import serialize
from .certify import (
    canonical_block_decomposition,
    conjugation_for_nilpotent2,
    is_c_symmetric,
)
from .ensembles import (
    random_blaschke,
    random_complex,
    random_cso,
    random_nilpotent2,
    random_poly_symbol,
    stream,
)
from .indestructible import (
    destructor_witness,
    nilpotent2_tensor_conjugation,
    shift_coshift_truncation,
    shift_tensor_coshift_blocks,
    swap_conjugation,
    shift_coshift_product,
)
from .linalg import Conjugation, direct_sum, operator_norm, singular_values, tensor
from .modelspace import (
    fn_calculus_check,
    model_conjugation,
    tto_matrix,
    verify_hankel_factorization,
)
from .synthesis import OptConfig, synthesize_tto_for_nilpotent2, unitary_equivalence_check
from .words import eval_word, words_of_length


@dataclass
class RunConfig:
    seed: int = 2026
    tol: float = 1e-9
    quad: int = 1024
    budget: int = 500

    def __post_init__(self):
        if self.tol <= 0:
            raise InputError("tol must be positive")
        if self.quad < 64:
            raise InputError("quad must be at least 64")


def _native(v):
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def _entry(name: str, claim: str, ok: bool, residuals: dict) -> dict:
    return {
        "name": name,
        "claim": claim,
        "status": "pass" if bool(ok) else "fail",
        "residuals": {k: _native(v) for k, v in residuals.items()},
    }


def entry_order2_conjugations(cfg: RunConfig) -> dict:
    rng = stream(cfg.seed, 101)
    worst_sym = worst_inv = 0.0
    for _ in range(200):
        dim = int(rng.integers(2, 13))
        T = random_nilpotent2(rng, dim)
        C, form, residual = conjugation_for_nilpotent2(T, cfg.tol)
        worst_sym = max(worst_sym, residual)
        worst_inv = max(worst_inv, C.unitarity_residual(), C.symmetry_residual())
        canon = form.canonical_matrix()
        worst_inv = max(
            worst_inv,
            operator_norm(form.W @ T @ form.W.conj().T - canon)
            / max(operator_norm(T), 1e-300),
        )
    ok = worst_sym <= 1e-9 and worst_inv <= 1e-9
    return _entry(
        "order2_conjugations",
        "every T with T^2 = 0 carries an explicit conjugation with T = C T* C",
        ok,
        {"symmetry": worst_sym, "invariants": worst_inv, "cases": 200},
    )


def entry_explicit_blocks(cfg: RunConfig) -> dict:
    rng = stream(cfg.seed, 102)
    worst = 0.0
    found_all = True
    for _ in range(50):
        k = int(rng.integers(1, 4))
        lam = np.sort(0.2 + 2.8 * rng.random(k))[::-1]
        T = np.zeros((2 * k, 2 * k), dtype=complex)
        T[k:, :k] = np.diag(lam)
        Y = direct_sum(*canonical_block_decomposition(T))
        residual, W = unitary_equivalence_check(T, Y, seed=cfg.seed)
        worst = max(worst, residual)
        found_all = found_all and W is not None
    ok = worst <= 1e-7 and found_all
    return _entry(
        "explicit_2x2_blocks",
        "T^2 = 0 is unitarily equivalent to a direct sum of (s/2)[[1,i],[i,-1]] blocks",
        ok,
        {"equivalence": worst, "cases": 50},
    )


def entry_indestructibility(cfg: RunConfig) -> dict:
    rng = stream(cfg.seed, 103)
    worst_forward = 0.0
    for _ in range(100):
        da = int(rng.integers(2, 5))
        db = int(rng.integers(1, 5))
        A = random_nilpotent2(rng, da)
        B = random_complex(rng, db, db)
        C = nilpotent2_tensor_conjugation(A, B)
        _, residual = is_c_symmetric(tensor(A, B), C)
        worst_forward = max(worst_forward, residual)

    worst_exact = 0.0
    min_wA = np.inf
    all_destroyed = True
    for _ in range(100):
        n = int(rng.integers(2, 6))
        A = random_complex(rng, n, n)
        while operator_norm(A @ A) <= 0.1 * operator_norm(A) ** 2:
            A = random_complex(rng, n, n)
        cert = destructor_witness(A, 1.0, 2.0)
        worst_exact = max(worst_exact, abs(cert.norm_wB - 2.0), abs(cert.norm_wB_rev - 4.0))
        min_wA = min(min_wA, cert.norm_wA)
        all_destroyed = all_destroyed and cert.conclusion == "destroyed"
    ok = worst_forward <= 1e-9 and worst_exact <= 1e-10 and min_wA > 1e-6 and all_destroyed
    return _entry(
        "indestructibility",
        "A (x) B stays complex symmetric for every B exactly when A^2 = 0; "
        "otherwise the 3x3 witness with word yx^2 destroys it",
        ok,
        {
            "forward_conjugation": worst_forward,
            "witness_norm_error": worst_exact,
            "min_norm_wA": min_wA,
            "cases": 200,
        },
    )


def entry_tensor_reflected_adjoint(cfg: RunConfig) -> dict:
    rng = stream(cfg.seed, 104)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 6))
        A = random_complex(rng, n, n)
        J = Conjugation.identity(n)
        T = shift_coshift_product(J, A)
        _, residual = is_c_symmetric(T, swap_conjugation(J, n))
        worst = max(worst, residual)
    ok = worst <= 1e-9
    return _entry(
        "tensor_with_reflected_adjoint",
        "A (x) (J A* J) is complex symmetric under the factor-swap conjugation",
        ok,
        {"symmetry": worst, "cases": 50},
    )


def entry_shift_coshift_blocks(cfg: RunConfig) -> dict:
    N = 8
    blocks = shift_tensor_coshift_blocks(N)
    sizes_ok = [d for d, _ in blocks] == list(range(1, N + 1))
    chains_ok = True
    for d, b in blocks:
        powers = np.linalg.matrix_power(b, d - 1) if d > 1 else np.eye(1)
        chains_ok = chains_ok and (
            operator_norm(np.linalg.matrix_power(b, d)) < 1e-12
            and (d == 1 or operator_norm(powers) > 1e-12)
            and np.linalg.matrix_rank(b) == d - 1
        )
    full = shift_coshift_truncation(N)
    sv_gap = float(
        np.max(
            np.abs(
                np.sort(singular_values(direct_sum(*(b for _, b in blocks))))
                - np.sort(singular_values(full))
            )
        )
    )
    ok = sizes_ok and chains_ok and sv_gap <= 1e-10
    return _entry(
        "shift_coshift_blocks",
        "the truncated shift (x) co-shift splits into one Jordan chain per "
        "homogeneous degree",
        ok,
        {"block_sizes_1_to_8": sizes_ok, "single_chains": chains_ok, "sv_gap": sv_gap},
    )


def entry_tto_suite(cfg: RunConfig) -> dict:
    rng = stream(cfg.seed, 106)
    worst_sym = worst_calc = worst_h256 = worst_h512 = 0.0
    hankel_error = ""
    for _ in range(30):
        deg = int(rng.integers(1, 9))
        u = random_blaschke(rng, deg, max_modulus=0.8)
        phi = random_poly_symbol(rng, int(rng.integers(0, 5)))
        A = tto_matrix(u, phi, cfg.quad)
        C = model_conjugation(u, cfg.quad)
        _, sym = is_c_symmetric(A, C, tol=1e-8)
        worst_sym = max(worst_sym, sym)
        worst_calc = max(worst_calc, fn_calculus_check(u, phi, cfg.quad))
        try:
            worst_h256 = max(worst_h256, verify_hankel_factorization(u, phi, 256, cfg.quad))
            worst_h512 = max(worst_h512, verify_hankel_factorization(u, phi, 512, cfg.quad))
        except AccuracyError as exc:
            hankel_error = str(exc)
    ok = (
        worst_sym <= 1e-8
        and worst_calc <= 1e-8
        and worst_h256 <= 1e-6
        and worst_h512 < 1e-6
        and not hankel_error
    )
    return _entry(
        "tto_model_space",
        "analytic truncated Toeplitz operators are symmetric under the model "
        "conjugation, obey the polynomial calculus, and factor through a "
        "Hankel section",
        ok,
        {
            "c_symmetry": worst_sym,
            "fn_calculus": worst_calc,
            "hankel_M256": worst_h256,
            "hankel_M512": worst_h512,
            "hankel_error": hankel_error,
            "cases": 30,
        },
    )


def entry_synthesis_roundtrip(cfg: RunConfig) -> dict:
    rng = stream(cfg.seed, 107)
    opt = OptConfig(quad=cfg.quad)
    successes = 0
    false_success = False
    worst_success = 0.0
    for _ in range(50):
        dim = int(rng.integers(2, 9))
        rank = int(rng.integers(1, min(3, dim // 2) + 1))
        N = random_nilpotent2(rng, dim, rank)
        res = synthesize_tto_for_nilpotent2(N, opt, seed=cfg.seed)
        good = res.equivalence_residual <= 1e-6 * operator_norm(N)
        if good:
            successes += 1
            worst_success = max(worst_success, res.equivalence_residual / operator_norm(N))
        if res.converged and not good:
            false_success = True

    s = 0.5 + 2.5 * rng.random()
    exact = synthesize_tto_for_nilpotent2(np.array([[0, 0], [s, 0]]), opt, seed=cfg.seed)
    exact_ok = (
        exact.equivalence_residual <= 1e-10
        and exact.u_total.zeros == (0j, 0j)
        and np.allclose(exact.symbol_total.poly, [0.0, s], atol=1e-12)
    )
    ok = successes >= 45 and not false_success and exact_ok
    return _entry(
        "synthesis_roundtrip",
        "a nilpotent of order two is unitarily equivalent to an analytic "
        "truncated Toeplitz operator built on a doubled model space",
        ok,
        {
            "successes": successes,
            "cases": 50,
            "false_success": false_success,
            "worst_relative_residual": worst_success,
            "rank1_exact_residual": exact.equivalence_residual,
        },
    )


def entry_word_identities(cfg: RunConfig) -> dict:
    rng = stream(cfg.seed, 108)
    words = [w for length in range(1, 6) for w in words_of_length(length)]
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 7))
        T, _ = random_cso(rng, n)
        nrm = operator_norm(T)
        for w in words:
            gap = abs(
                operator_norm(eval_word(w, T, T.conj().T))
                - operator_norm(eval_word(w, T.conj().T, T))
            )
            worst = max(worst, gap / nrm ** len(w))
    ok = worst <= 1e-8
    return _entry(
        "word_norm_identities",
        "a complex symmetric T satisfies ||w(T,T*)|| = ||w(T*,T)|| for all 62 "
        "words of length at most 5",
        ok,
        {"worst_scaled_gap": worst, "cases": 100, "words": len(words)},
    )


ENTRIES = (
    entry_order2_conjugations,
    entry_explicit_blocks,
    entry_indestructibility,
    entry_tensor_reflected_adjoint,
    entry_shift_coshift_blocks,
    entry_tto_suite,
    entry_synthesis_roundtrip,
    entry_word_identities,
)


def run_suite(cfg: RunConfig | None = None) -> dict:
    """Run all entries once and assemble the canonical report."""
    cfg = cfg or RunConfig()
    entries = [fn(cfg) for fn in ENTRIES]
    return {
        "config": {"seed": cfg.seed, "tol": cfg.tol, "quad": cfg.quad, "budget": cfg.budget},
        "entries": entries,
        "all_pass": all(e["status"] == "pass" for e in entries),
    }


def run_suite_with_determinism(cfg: RunConfig | None = None) -> dict:
    """Run the suite twice; append an entry certifying byte-identical reports."""
    cfg = cfg or RunConfig()
    first = run_suite(cfg)
    second = run_suite(cfg)
    identical = serialize.dumps(first) == serialize.dumps(second)
    first["entries"].append(
        _entry(
            "determinism",
            "an identical run configuration yields a byte-identical report",
            identical,
            {"identical": identical},
        )
    )
    first["all_pass"] = first["all_pass"] and identical
    return first
