# Copyright (c) 2026 The quorumnet Authors. All rights reserved.
# Licensed under the Apache 2.0 License.
"""Python access to the quorumnet protocol core.

Big integers are passed as lowercase hex strings and structured values as
JSON text, matching the server's wire format.
"""

from ._core import (
    AuthenticationError,
    DecryptionError,
    blind,
    decode_message,
    decrypt,
    encode_message,
    encrypt,
    group_params,
    keygen,
    open,
    public_key,
    quorum,
    seal,
    unblind,
    unwrap,
    wrap,
)

__all__ = [
    "AuthenticationError",
    "DecryptionError",
    "blind",
    "decode_message",
    "decrypt",
    "encode_message",
    "encrypt",
    "group_params",
    "keygen",
    "open",
    "public_key",
    "quorum",
    "seal",
    "unblind",
    "unwrap",
    "wrap",
]
