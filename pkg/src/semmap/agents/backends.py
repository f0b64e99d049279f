"""Chat backends behind one send() contract.

The live backend targets any chat-completions-compatible HTTPS endpoint.
The replay backend answers from a recorded transcript, keyed by a digest
of the full request, which makes every agent stage deterministic and
offline-testable. A recording wrapper produces those transcripts from
live (or scripted) runs.
"""
from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from collections import deque
from pathlib import Path
from typing import Protocol, Sequence

import requests

from ..errors import BackendUnavailable, ConfigInvalid

Message = tuple[str, str]  # (role, text)

TRANSCRIPT_VERSION = 1


def request_digest(messages: Sequence[Message], response_format: dict | None) -> str:
    """Stable SHA-256 over the canonical JSON form of a request."""
    doc = {
        "messages": [{"role": role, "content": text} for role, text in messages],
        "response_format": response_format,
    }
    blob = json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class ChatBackend(Protocol):
    def send(self, messages: Sequence[Message], response_format: dict | None = None) -> str: ...

    @property
    def fingerprint(self) -> str: ...


class LiveBackend:
    """Chat-completions endpoint client with bounded retries."""

    def __init__(
        self,
        endpoint: str,
        model: str,
        auth_env: str = "",
        retries: int = 3,
        backoff_seconds: float = 0.5,
        timeout_seconds: float = 120.0,
        temperature: float = 0.0,
    ):
        if not endpoint:
            raise ConfigInvalid("live backend requires an endpoint")
        self.endpoint = endpoint
        self.model = model
        self.auth_env = auth_env
        self.retries = retries
        self.backoff_seconds = backoff_seconds
        self.timeout_seconds = timeout_seconds
        self.temperature = temperature

    @property
    def fingerprint(self) -> str:
        return f"live:{self.model}@{self.endpoint}"

    def send(self, messages: Sequence[Message], response_format: dict | None = None) -> str:
        headers = {"Content-Type": "application/json"}
        if self.auth_env:
            token = os.environ.get(self.auth_env, "")
            if not token:
                raise ConfigInvalid(f"auth environment variable {self.auth_env} is not set")
            headers["Authorization"] = f"Bearer {token}"
        body: dict = {
            "model": self.model,
            "messages": [{"role": role, "content": text} for role, text in messages],
            "temperature": self.temperature,
        }
        if response_format is not None:
            body["response_format"] = response_format
        url = self.endpoint.rstrip("/") + "/chat/completions"
        last_error: Exception | None = None
        for attempt in range(self.retries):
            if attempt > 0:
                time.sleep(self.backoff_seconds * (2 ** (attempt - 1)))
            try:
                resp = requests.post(url, json=body, headers=headers, timeout=self.timeout_seconds)
                if resp.status_code >= 500:
                    last_error = BackendUnavailable(f"HTTP {resp.status_code} from {url}")
                    continue
                resp.raise_for_status()
                payload = resp.json()
                return payload["choices"][0]["message"]["content"]
            except (requests.RequestException, KeyError, IndexError, TypeError) as exc:
                last_error = exc
                continue
        raise BackendUnavailable(
            f"chat endpoint failed after {self.retries} attempts: {last_error}"
        )


class ReplayBackend:
    """Answers from recorded (digest, response) records, in recorded order.

    Multiple records may share a digest (identical retries); each send
    consumes the earliest unserved record for its digest. Send is safe to
    call concurrently.
    """

    def __init__(self, records: Sequence[dict], source: str = "<memory>"):
        self._queues: dict[str, deque[str]] = {}
        for record in records:
            self._queues.setdefault(record["digest"], deque()).append(record["response"])
        self._lock = threading.Lock()
        canonical = json.dumps(list(records), sort_keys=True, separators=(",", ":"))
        self._fingerprint = "replay:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]
        self._source = source

    @classmethod
    def from_file(cls, path: str | Path) -> "ReplayBackend":
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise BackendUnavailable(f"cannot read transcript {path}: {exc}") from exc
        records = doc.get("records")
        if not isinstance(records, list):
            raise BackendUnavailable(f"transcript {path} has no records list")
        return cls(records, source=str(path))

    @property
    def fingerprint(self) -> str:
        return self._fingerprint

    def send(self, messages: Sequence[Message], response_format: dict | None = None) -> str:
        digest = request_digest(messages, response_format)
        with self._lock:
            queue = self._queues.get(digest)
            if not queue:
                raise BackendUnavailable(
                    f"transcript {self._source} has no remaining response for digest {digest[:16]}…"
                )
            return queue.popleft()


class ScriptedBackend:
    """Answers from a fixed response list in call order; a test/demo double."""

    def __init__(self, responses: Sequence[str]):
        self._responses = deque(responses)
        self._lock = threading.Lock()
        self.calls: list[dict] = []

    @property
    def fingerprint(self) -> str:
        return "scripted"

    def send(self, messages: Sequence[Message], response_format: dict | None = None) -> str:
        with self._lock:
            self.calls.append(
                {"messages": [list(m) for m in messages], "response_format": response_format}
            )
            if not self._responses:
                raise BackendUnavailable("scripted backend ran out of responses")
            return self._responses.popleft()


class RecordingBackend:
    """Wraps another backend and captures a replayable transcript."""

    def __init__(self, inner: ChatBackend):
        self.inner = inner
        self._records: list[dict] = []
        self._lock = threading.Lock()

    @property
    def fingerprint(self) -> str:
        return f"recording({self.inner.fingerprint})"

    def send(self, messages: Sequence[Message], response_format: dict | None = None) -> str:
        response = self.inner.send(messages, response_format)
        with self._lock:
            self._records.append(
                {"digest": request_digest(messages, response_format), "response": response}
            )
        return response

    @property
    def records(self) -> list[dict]:
        return list(self._records)

    def save(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        doc = {"version": TRANSCRIPT_VERSION, "records": self._records}
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path
