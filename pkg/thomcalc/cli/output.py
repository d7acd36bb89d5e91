"""Result emission: canonical JSON or block-style YAML."""
import json
import sys
from typing import Any

import yaml
from pydantic import BaseModel

from ..models import canonical_json


def emit(payload: Any, fmt: str) -> None:
    """Write a result to stdout: canonical JSON, or YAML in block style."""
    if isinstance(payload, BaseModel):
        if fmt == "json":
            text = canonical_json(payload)
        else:
            text = yaml.safe_dump(payload.model_dump(mode="json", exclude_none=True),
                                  default_flow_style=False, sort_keys=False, allow_unicode=True)
    elif fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = yaml.safe_dump(payload, default_flow_style=False, sort_keys=False, allow_unicode=True)
    sys.stdout.write(text)
