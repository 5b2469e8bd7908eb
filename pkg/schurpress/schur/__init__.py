from schurpress.schur.qswt import (
    FeedForwardResult,
    build_qswt3_feedforward,
    build_qswt3_full,
    compress3,
    decompress3,
    derive_corrections,
    feedforward_compress,
    u1_u2_matrices,
)
from schurpress.schur.symmetric import (
    SymmetricCode,
    compress,
    dicke_state,
    ghz_state,
    symmetric_decode,
    symmetric_encode,
    symmetric_encode_general,
)

__all__ = [
    "FeedForwardResult",
    "SymmetricCode",
    "build_qswt3_feedforward",
    "build_qswt3_full",
    "compress",
    "compress3",
    "decompress3",
    "derive_corrections",
    "dicke_state",
    "feedforward_compress",
    "ghz_state",
    "symmetric_decode",
    "symmetric_encode",
    "symmetric_encode_general",
    "u1_u2_matrices",
]
