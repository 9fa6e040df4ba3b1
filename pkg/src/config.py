"""Configuration management for the torus workbench"""

import yaml
import os
from pathlib import Path
from typing import Optional

from .exceptions import ConfigurationError


class Config:
    def __init__(self, config_path=None):
        if config_path is None:
            config_path = Path(__file__).parent.parent / "config.yaml"

        with open(config_path, 'r') as f:
            self.config = yaml.safe_load(f)

    def get(self, key_path, default=None):
        """Get config value using dot notation: 'oracle.max_modulus'"""
        keys = key_path.split('.')
        value = self.config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value

    @property
    def cohomology_config(self):
        return self.config['cohomology']

    @property
    def catalog_config(self):
        return self.config['catalog']

    @property
    def oracle_config(self):
        return self.config['oracle']

    @property
    def weil_config(self):
        return self.config['weil']

    def enumeration_budget(self, override: Optional[int] = None) -> int:
        """Cap on candidate cochains for brute-force enumeration.

        Precedence: explicit override, then the environment variable named
        in ``cohomology.budget_env_var``, then ``cohomology.enumeration_budget``.
        """
        if override is not None:
            return int(override)

        env_var = self.get('cohomology.budget_env_var', 'TORUS_ENUM_BUDGET')
        raw = os.environ.get(env_var)
        if raw is not None and raw.strip():
            try:
                return int(raw.strip())
            except ValueError:
                raise ConfigurationError(
                    f"{env_var} must be an integer, got {raw!r}"
                )

        return int(self.get('cohomology.enumeration_budget', 10_000_000))


# Global config instance
config = Config()
