"""Engine configuration: scalar field and resource caps.

Defaults can be overridden by environment variables ``YDEXT_FIELD``,
``YDEXT_MAX_DEGREE``, ``YDEXT_MAX_AMBIENT`` and ``YDEXT_MAX_U_DIM``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .linalg import Field


class ResourceError(RuntimeError):
    """A configured size cap would be exceeded."""


@dataclass(frozen=True)
class EngineConfig:
    field: str = "QQ"
    max_degree: int = 5
    max_ambient: int = 20000
    max_u_dim: int = 8

    @property
    def scalar_field(self) -> Field:
        return Field.parse(self.field)

    @staticmethod
    def from_env(**overrides) -> "EngineConfig":
        env = os.environ
        cfg = EngineConfig(
            field=env.get("YDEXT_FIELD", EngineConfig.field),
            max_degree=int(env.get("YDEXT_MAX_DEGREE", EngineConfig.max_degree)),
            max_ambient=int(env.get("YDEXT_MAX_AMBIENT", EngineConfig.max_ambient)),
            max_u_dim=int(env.get("YDEXT_MAX_U_DIM", EngineConfig.max_u_dim)),
        )
        return replace(cfg, **{k: v for k, v in overrides.items() if v is not None})

    def check_u_dim(self, n: int) -> None:
        if n > self.max_u_dim:
            raise ResourceError("dim U = %d exceeds the cap %d" % (n, self.max_u_dim))


DEFAULT = EngineConfig()
# generous caps for the test suite and scripted verifications
WIDE = EngineConfig(max_degree=9, max_ambient=200000, max_u_dim=16)
