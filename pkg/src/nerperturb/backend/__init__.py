"""Model backend: wire protocol, HTTP client, deterministic stub server."""

from .client import (
    BackendClient,
    BackendError,
    CapabilityError,
    ContractError,
    RemoteError,
    TransportError,
)
from .protocol import (
    ALL_CAPABILITIES,
    FillCandidate,
    Health,
    ProtocolError,
)
from .stub import DEFAULT_VOCAB, StubConfig, StubServer, serve_stub

__all__ = [
    "ALL_CAPABILITIES",
    "BackendClient",
    "BackendError",
    "CapabilityError",
    "ContractError",
    "DEFAULT_VOCAB",
    "FillCandidate",
    "Health",
    "ProtocolError",
    "RemoteError",
    "StubConfig",
    "StubServer",
    "TransportError",
    "serve_stub",
]
