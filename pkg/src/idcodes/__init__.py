"""Identification codes from concatenated Reed-Solomon codes, with tags computed on demand."""

from .concat import (
    ConcatParams,
    Identity,
    concatenate_codebooks,
    derive_params,
    false_id_bound,
    full_codeword_oracle,
    identity_from_integer,
    identity_from_seed,
    tag,
)
from .field import (
    FieldElement,
    FieldSpec,
    element_from_index,
    expand_symbol,
    index_from_element,
    make_extension_field,
    make_prime_field,
)
from .protocol import Challenge, send, verify

__version__ = "0.1.0"
