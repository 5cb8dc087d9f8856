"""Two-matrix key exchange and the passive attack on it."""

from .attack import (
    AttackReport,
    RankOneFactor,
    RelinSystem,
    build_relin_system,
    key_from_factor,
    rank_one_factor,
    recover_key,
    sample_solution,
)
from .protocol import (
    KexParams,
    KexRun,
    KexSecret,
    KexTranscript,
    alice_finalize,
    alice_init,
    bob_respond,
    kex_keygen,
    random_run,
    run_exchange,
    sample_secret,
)
