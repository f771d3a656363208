import logging
import os
from typing import Any, Dict

import requests

from ..utility.constants import API_TOKEN_ENV

logger = logging.getLogger(__name__)


class ProviderError(Exception):
    pass


class ProtocolError(ProviderError):
    pass


def post_json(url: str, body: Dict[str, Any], timeout: float, max_retries: int) -> Dict[str, Any]:
    """
    POST a JSON body and return the decoded JSON reply.

    Transport failures and 5xx replies are retried at most max_retries times; any other
    non-200 status fails immediately. A bearer token is sent when SLIDESYNC_API_TOKEN is set.

    Raises:
        ProviderError: transport failure after retries or a non-200 reply.
        ProtocolError: the reply is not a JSON object.
    """
    headers = {"Content-Type": "application/json"}
    token = os.environ.get(API_TOKEN_ENV)
    if token:
        headers["Authorization"] = f"Bearer {token}"

    last_error = None
    for attempt in range(max_retries + 1):
        try:
            response = requests.post(url, json=body, headers=headers, timeout=timeout)
        except requests.RequestException as e:
            last_error = f"{type(e).__name__}: {e}"
            logger.warning(f"Request to {url} failed (attempt {attempt + 1}/{max_retries + 1}): {last_error}")
            continue
        if response.status_code >= 500:
            last_error = f"HTTP {response.status_code}"
            logger.warning(f"Request to {url} returned {last_error} (attempt {attempt + 1}/{max_retries + 1})")
            continue
        if response.status_code != 200:
            raise ProviderError(f"{url} returned HTTP {response.status_code}: {response.text[:200]}")
        try:
            payload = response.json()
        except ValueError as e:
            raise ProtocolError(f"{url} returned a non-JSON body: {e}") from e
        if not isinstance(payload, dict):
            raise ProtocolError(f"{url} returned JSON that is not an object")
        return payload
    raise ProviderError(f"{url} unreachable after {max_retries + 1} attempts: {last_error}")
