"""Shared Temporal client for the API and the verification worker."""

import logging
from pathlib import Path
from typing import Optional

from temporalio.client import Client, TLSConfig

from config.settings import settings

logger = logging.getLogger(__name__)


def _tls_config() -> Optional[TLSConfig]:
    if not settings.temporal_tls_enabled:
        return None
    if not settings.temporal_client_cert or not settings.temporal_client_key:
        raise ValueError("TLS enabled but client_cert or client_key not provided")
    logger.info("TLS enabled, loading client certificate")
    return TLSConfig(
        client_cert=Path(settings.temporal_client_cert).read_bytes(),
        client_private_key=Path(settings.temporal_client_key).read_bytes(),
    )


class TemporalClient:
    """Process-wide holder of one connected client."""

    _instance = None
    _client: Optional[Client] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    async def get_client(self) -> Client:
        if self._client is None:
            logger.info(f"Connecting to Temporal at {settings.temporal_host} (namespace {settings.temporal_namespace})")
            self._client = await Client.connect(
                settings.temporal_host,
                namespace=settings.temporal_namespace,
                tls=_tls_config(),
            )
            logger.info("Connected to Temporal")
        return self._client

    def reset(self) -> None:
        """Forget the connection, e.g. after the server restarted."""
        self._client = None


# Global instance
_temporal_client_instance = TemporalClient()


async def get_temporal_client() -> Client:
    """The shared client, connecting on first use."""
    return await _temporal_client_instance.get_client()
