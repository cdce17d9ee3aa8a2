"""HTTP chat-completions provider for OpenAI-compatible APIs.

Both hosted model families in the default roster expose this wire format
(the Gemini models through their OpenAI-compatible endpoint), so one client
covers the roster. Keys come from environment variables; structured-output
requests attach the registered JSON schema as a response_format.
"""

import json
import os

from novelscope.errors import ProviderUnavailable, Timeout
from novelscope.llm.gateway import ModelRequest, RawCompletion
from novelscope.llm.schemas import SchemaRegistry

OPENAI_BASE_URL = "https://api.openai.com/v1"
GEMINI_BASE_URL = "https://generativelanguage.googleapis.com/v1beta/openai"


class HttpChatProvider:
    def __init__(
        self,
        base_url: str = OPENAI_BASE_URL,
        api_key_env: str = "OPENAI_API_KEY",
        registry: SchemaRegistry | None = None,
    ):
        import httpx

        api_key = os.environ.get(api_key_env, "")
        if not api_key:
            raise ProviderUnavailable(f"environment variable {api_key_env} is not set")
        self._client = httpx.Client(
            base_url=base_url,
            headers={"Authorization": f"Bearer {api_key}"},
        )
        self._registry = registry
        self._httpx = httpx

    def generate(self, request: ModelRequest, timeout: float) -> RawCompletion:  # pragma: no cover - live API
        payload: dict = {
            "model": request.model_id,
            "temperature": request.temperature,
            "max_tokens": request.max_output_tokens,
            "messages": [
                {"role": "system", "content": request.system},
                {"role": "user", "content": request.user},
            ],
        }
        if request.schema_id is not None and self._registry is not None:
            payload["response_format"] = {
                "type": "json_schema",
                "json_schema": {
                    "name": request.schema_id,
                    "schema": self._registry.get(request.schema_id),
                    "strict": True,
                },
            }
        try:
            response = self._client.post(
                "/chat/completions", json=payload, timeout=timeout
            )
        except self._httpx.TimeoutException as exc:
            raise Timeout(f"provider call exceeded {timeout}s") from exc
        except self._httpx.TransportError as exc:
            raise ProviderUnavailable(str(exc)) from exc
        if response.status_code >= 500 or response.status_code == 429:
            raise ProviderUnavailable(f"provider returned {response.status_code}")
        if response.status_code >= 400:
            raise ProviderUnavailable(
                f"provider rejected the request ({response.status_code}): "
                f"{response.text[:200]}"
            )
        data = response.json()
        usage = data.get("usage") or {}
        try:
            text = data["choices"][0]["message"]["content"]
        except (KeyError, IndexError) as exc:
            raise ProviderUnavailable(f"malformed provider reply: {exc}") from exc
        return RawCompletion(
            text=text,
            input_tokens=int(usage.get("prompt_tokens", 0)),
            output_tokens=int(usage.get("completion_tokens", 0)),
        )


def provider_for_model(model_id: str, registry: SchemaRegistry) -> HttpChatProvider:
    """Pick endpoint and key variable from the model family."""
    if model_id.startswith("gemini"):
        return HttpChatProvider(GEMINI_BASE_URL, "GEMINI_API_KEY", registry)
    return HttpChatProvider(OPENAI_BASE_URL, "OPENAI_API_KEY", registry)
