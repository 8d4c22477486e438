import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import yaml


@dataclass(frozen=True)
class Settings:
    """Tunables shared by the analyses, the job runner and the CLI."""

    nil_cap: int = 10**6
    path_guard: int = 10**7
    parenthesized_max_length: int = 6
    plenary_cap: int = 64
    iteration_bound: int = 4096
    dp_step_guard: int = 100000
    workers: int = 4
    vector_prepass_steps: int = 64
    storage_backend: str = 'lmdb'
    workspace: str = 'workspace/'

    @classmethod
    def load(cls, path: Optional[Union[str, Path]] = None) -> 'Settings':
        """Read ``settings:`` (and ``metas.workspace``) from a YAML file.

        :param path: the YAML file; ``None`` returns the defaults.
        """
        if path is None:
            return cls()
        with open(path, encoding='utf-8') as fp:
            raw = yaml.safe_load(fp) or {}
        values = dict(raw.get('settings') or {})
        workspace = (raw.get('metas') or {}).get('workspace')
        if workspace:
            values['workspace'] = workspace
        return cls().override(**values)

    def override(self, **kwargs) -> 'Settings':
        known = {f.name for f in dataclasses.fields(self)}
        unknown = sorted(set(kwargs) - known)
        if unknown:
            raise ValueError(f'Unknown settings: {", ".join(unknown)}')
        return dataclasses.replace(
            self, **{k: v for k, v in kwargs.items() if v is not None}
        )
