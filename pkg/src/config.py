"""Configuration management for SiegelTheta."""

import json
import os
from pathlib import Path
from typing import Any, Dict

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
POSITIVE_KEYS = ("tol", "term_budget", "inversion_threshold", "quadrature_points", "g", "m")


class Config:
    """Numerical defaults with optional per-user persistence."""

    DEFAULT_CONFIG = {
        "tol": 1e-9,
        "term_budget": 100_000_000,
        "max_reduction_steps": 64,
        "inversion_threshold": 0.5,
        "quadrature_points": 256,
        "seed": 0,
        "count": 100,
        "word_len": 8,
        "g": 1,
        "m": 1,
        "log_level": "WARNING"
    }

    def __init__(self):
        self._config = self.DEFAULT_CONFIG.copy()
        self._config_path = self._get_config_path()
        self.load()

    def _get_config_path(self) -> Path:
        """Get the configuration file path."""
        override = os.environ.get('SIEGELTHETA_CONFIG_DIR')
        if override:
            config_dir = Path(override)
        elif os.name == 'nt':
            app_data = os.environ.get('APPDATA', os.path.expanduser('~'))
            config_dir = Path(app_data) / 'SiegelTheta'
        else:
            config_dir = Path.home() / '.config' / 'siegeltheta'

        return config_dir / 'config.json'

    @property
    def path(self) -> Path:
        return self._config_path

    def load(self) -> None:
        """Load configuration from file."""
        if self._config_path.exists():
            try:
                with open(self._config_path, 'r', encoding='utf-8') as f:
                    loaded = json.load(f)
                    for key in self.DEFAULT_CONFIG:
                        if key in loaded:
                            self._config[key] = loaded[key]
            except (json.JSONDecodeError, IOError):
                pass

    def save(self) -> None:
        """Save configuration to file."""
        try:
            self._config_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self._config_path, 'w', encoding='utf-8') as f:
                json.dump(self._config, f, indent=2)
        except IOError:
            pass

    def reset(self) -> None:
        """Restore the built-in defaults without touching the file."""
        self._config = self.DEFAULT_CONFIG.copy()

    def to_dict(self) -> Dict[str, Any]:
        return dict(self._config)

    def set_from_text(self, key: str, text: str) -> None:
        """Parse a command-line value and store it through the persisting setter.

        Raises:
            KeyError: if key is not a setting
            ValueError: if text does not parse or is out of range
        """
        default = self.DEFAULT_CONFIG[key]
        if key == "log_level":
            value: Any = text.upper()
            if value not in LOG_LEVELS:
                raise ValueError(f"expected one of {', '.join(LOG_LEVELS)}")
        elif isinstance(default, int):
            try:
                value = int(text)
            except ValueError:
                number = float(text)
                if not number.is_integer():
                    raise ValueError(f"expected an integer, got {text}") from None
                value = int(number)
        else:
            value = float(text)
        if key in POSITIVE_KEYS and not value > 0:
            raise ValueError(f"must be positive, got {text}")
        if key in ("max_reduction_steps", "count", "word_len") and value < 0:
            raise ValueError(f"must be non-negative, got {text}")
        setattr(self, key, value)

    @property
    def tol(self) -> float:
        return float(self._config["tol"])

    @tol.setter
    def tol(self, value: float) -> None:
        self._config["tol"] = value
        self.save()

    @property
    def term_budget(self) -> int:
        return int(self._config["term_budget"])

    @term_budget.setter
    def term_budget(self, value: int) -> None:
        self._config["term_budget"] = value
        self.save()

    @property
    def max_reduction_steps(self) -> int:
        return int(self._config["max_reduction_steps"])

    @max_reduction_steps.setter
    def max_reduction_steps(self, value: int) -> None:
        self._config["max_reduction_steps"] = value
        self.save()

    @property
    def inversion_threshold(self) -> float:
        return float(self._config["inversion_threshold"])

    @inversion_threshold.setter
    def inversion_threshold(self, value: float) -> None:
        self._config["inversion_threshold"] = value
        self.save()

    @property
    def quadrature_points(self) -> int:
        return int(self._config["quadrature_points"])

    @quadrature_points.setter
    def quadrature_points(self, value: int) -> None:
        self._config["quadrature_points"] = value
        self.save()

    @property
    def seed(self) -> int:
        return int(self._config["seed"])

    @seed.setter
    def seed(self, value: int) -> None:
        self._config["seed"] = value
        self.save()

    @property
    def count(self) -> int:
        return int(self._config["count"])

    @count.setter
    def count(self, value: int) -> None:
        self._config["count"] = value
        self.save()

    @property
    def word_len(self) -> int:
        return int(self._config["word_len"])

    @word_len.setter
    def word_len(self, value: int) -> None:
        self._config["word_len"] = value
        self.save()

    @property
    def g(self) -> int:
        return int(self._config["g"])

    @g.setter
    def g(self, value: int) -> None:
        self._config["g"] = value
        self.save()

    @property
    def m(self) -> int:
        return int(self._config["m"])

    @m.setter
    def m(self, value: int) -> None:
        self._config["m"] = value
        self.save()

    @property
    def log_level(self) -> str:
        return str(self._config["log_level"])

    @log_level.setter
    def log_level(self, value: str) -> None:
        self._config["log_level"] = value
        self.save()


config = Config()
