"""Translation providers.

The pipeline only ever talks to the TranslationProvider interface. Three
offline providers ship for tests and dry runs (identity, string reversal,
word-table substitution) plus a generic HTTP/JSON client that can be
pointed at any translation endpoint via a request template and a response
field path.
"""

from __future__ import annotations

import abc
import os
import string
from typing import Any

import requests


class ProviderError(Exception):
    """The provider could not produce a translation."""


class TransientProviderError(ProviderError):
    """Retryable failure: network trouble, 5xx, rate-limit responses."""


class UnsupportedPairError(ProviderError):
    def __init__(self, provider_id: str, src: str, dst: str):
        super().__init__(f"provider {provider_id!r} does not support {src}->{dst}")
        self.src = src
        self.dst = dst


class TranslationProvider(abc.ABC):
    provider_id: str = "abstract"

    @abc.abstractmethod
    def translate(self, text: str, src: str, dst: str) -> str:
        raise NotImplementedError

    def supports(self, src: str, dst: str) -> bool:
        return True

    def check_pair(self, src: str, dst: str) -> None:
        if not self.supports(src, dst):
            raise UnsupportedPairError(self.provider_id, src, dst)


class IdentityProvider(TranslationProvider):
    """Returns the input verbatim. Supports every pair."""

    provider_id = "identity"

    def translate(self, text: str, src: str, dst: str) -> str:
        return text


class ReversalProvider(TranslationProvider):
    """Reverses the string; two applications restore the input."""

    provider_id = "reversal"

    def translate(self, text: str, src: str, dst: str) -> str:
        return text[::-1]


class TableProvider(TranslationProvider):
    """Deterministic word-substitution mock.

    ``tables`` maps (src, dst) to a word->word dict; whitespace tokens not
    present in the table pass through unchanged. Supported pairs are
    exactly the table keys.
    """

    provider_id = "table"

    def __init__(self, tables: dict[tuple[str, str], dict[str, str]]):
        self.tables = tables

    def supports(self, src: str, dst: str) -> bool:
        return (src, dst) in self.tables

    def translate(self, text: str, src: str, dst: str) -> str:
        self.check_pair(src, dst)
        table = self.tables[(src, dst)]
        return " ".join(table.get(w, w) for w in text.split())


def _dig(payload: Any, path: str) -> Any:
    """Walk a dot-separated field path (integer parts index into lists)."""
    cur = payload
    for part in path.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        elif isinstance(cur, dict):
            cur = cur[part]
        else:
            raise KeyError(path)
    return cur


class HttpProvider(TranslationProvider):
    """Generic HTTP/JSON translation client.

    The request body is built from ``request_template``: every string value
    is formatted with {text}, {src}, {dst}. Headers may reference {key},
    filled from the environment variable named by ``api_key_env``. The
    translated string is extracted from the JSON response at
    ``response_field`` (dot path, e.g. "data.translations.0.text").
    """

    def __init__(
        self,
        endpoint: str,
        request_template: dict[str, Any],
        response_field: str,
        provider_id: str = "http",
        headers: dict[str, str] | None = None,
        api_key_env: str | None = None,
        timeout: float = 30.0,
        session: requests.Session | None = None,
    ):
        self.provider_id = provider_id
        self.endpoint = endpoint
        self.request_template = request_template
        self.response_field = response_field
        self.timeout = timeout
        self._session = session or requests.Session()
        key = os.environ.get(api_key_env, "") if api_key_env else ""
        self.headers = {
            name: string.Template(value).safe_substitute(key=key) if "$key" in value else value
            for name, value in (headers or {}).items()
        }

    def _body(self, text: str, src: str, dst: str) -> dict[str, Any]:
        def fill(value: Any) -> Any:
            if isinstance(value, str):
                return value.format(text=text, src=src, dst=dst)
            if isinstance(value, dict):
                return {k: fill(v) for k, v in value.items()}
            if isinstance(value, list):
                return [fill(v) for v in value]
            return value

        return {k: fill(v) for k, v in self.request_template.items()}

    def translate(self, text: str, src: str, dst: str) -> str:
        try:
            resp = self._session.post(
                self.endpoint,
                json=self._body(text, src, dst),
                headers=self.headers,
                timeout=self.timeout,
            )
        except requests.RequestException as exc:
            raise TransientProviderError(f"request failed: {exc}") from exc
        if resp.status_code in (429,) or resp.status_code >= 500:
            raise TransientProviderError(f"server responded {resp.status_code}")
        if resp.status_code != 200:
            raise ProviderError(f"server responded {resp.status_code}: {resp.text[:200]}")
        try:
            out = _dig(resp.json(), self.response_field)
        except (ValueError, KeyError, IndexError) as exc:
            raise ProviderError(f"cannot extract {self.response_field!r} from response") from exc
        if not isinstance(out, str):
            raise ProviderError(f"response field {self.response_field!r} is not a string")
        return out
