"""The patented matrix public-key scheme and its break given the factors of n."""

from .attack import (
    PartialKey,
    QuadraticSystem,
    build_quadratic_system,
    extract_coefficients,
    recover_key_and_message,
    recover_partial_key,
    reduce_mod,
    sqrt_mod,
    sym_index,
)
from .patent import (
    PatentCiphertext,
    PatentPrivateKey,
    PatentPublicKey,
    encrypt_with,
    make_keys,
    patent_decrypt,
    patent_encrypt,
    patent_keygen,
    poly_of,
)
