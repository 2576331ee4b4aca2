"""Thin HTTP client for the analysis service.

The CLI talks to the service exclusively through this wrapper.  Without a
server URL the app is mounted in-process over httpx's ASGI transport, so
command-line use needs no running daemon yet exercises exactly the same
request/response path as a remote deployment.
"""

from __future__ import annotations

import asyncio
from typing import Any

import httpx


class ServiceError(Exception):
    """Non-2xx service reply; carries the stable error name."""

    def __init__(self, error: str, detail: str, status: int):
        self.error = error
        self.detail = detail
        self.status = status
        super().__init__(f"{error}: {detail}")


class ServiceClient:
    def __init__(self, server: str | None = None, timeout: float = 600.0):
        self._server = server
        self._timeout = timeout

    def post(self, path: str, payload: dict[str, Any]) -> dict[str, Any]:
        return asyncio.run(self._post(path, payload))

    async def _post(self, path: str, payload: dict[str, Any]) -> dict[str, Any]:
        if self._server is None:
            from .service import app

            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://service", timeout=self._timeout
            ) as client:
                resp = await client.post(path, json=payload)
        else:
            async with httpx.AsyncClient(
                base_url=self._server, timeout=self._timeout
            ) as client:
                resp = await client.post(path, json=payload)
        if resp.status_code >= 400:
            try:
                body = resp.json()
            except ValueError:
                body = {}
            raise ServiceError(
                error=body.get("error", f"HTTP{resp.status_code}"),
                detail=body.get("detail", resp.text[:500]),
                status=resp.status_code,
            )
        return resp.json()
