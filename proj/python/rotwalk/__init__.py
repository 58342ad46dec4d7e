"""Random-walk rotations on the circle: exact Diophantine constructions,
transfer-operator diagnostics, and reproducible Monte Carlo.

The heavy lifting happens in the C++ extension ``rotwalk._core``; values cross
the boundary in the same JSON formats the command-line tool reads and writes.
"""

from ._core import (  # noqa: F401
    InfeasibleError,
    ResonanceError,
    angle_golden,
    angle_rational,
    angle_value,
    build_liouville,
    chain_spectrum,
    circle_dist,
    continued_fraction,
    convergents,
    cr_norm_bound,
    eigenvalue,
    eval_series,
    exact_tail,
    fourier_coeff,
    grid_dist,
    in_good_set,
    kv_partial,
    lemma1_check,
    lemma1_delta,
    lemma2_bound,
    lemma3_params,
    mc_clt,
    mc_tail,
    mixing_rho,
    poisson_partial,
    reduce,
    reduce_rational,
    series,
    sigma2_partial,
    simulate_sum,
    spectral_report,
    t1_term,
    t2_term,
    theorem1_build,
    theorem2_build,
    theorem3_build,
    verify_ledger,
    wilson99,
    witness_exponent,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
