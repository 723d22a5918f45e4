import os
from dataclasses import dataclass, replace
from pathlib import Path

from dotenv import load_dotenv

# Cargar variables de entorno desde .env
load_dotenv(override=True)

DATA_DIR = Path("data/processed")
REPORTS_DB = Path(os.getenv("SPREADS_DB_PATH", str(DATA_DIR / "verification.db")))
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

# Matriz de parámetros (p, a, m) que recorre `verify --all` por defecto
DEFAULT_MATRIX: tuple[tuple[int, int, int], ...] = (
    (3, 1, 1), (5, 1, 1), (7, 1, 1), (11, 1, 1),
    (13, 1, 1), (3, 1, 2), (5, 1, 2), (3, 2, 1),
)


@dataclass(frozen=True)
class Caps:
    """
    Topes de cómputo compartidos por la torre, el motor de grupos y el verificador.
    """
    max_group_order: int = 200_000
    max_subgroup_search: int = 200
    field_size_cap: int = 1 << 20
    sample_size: int = 100
    seed: int = 0

    def with_overrides(self, **overrides: int | None) -> "Caps":
        """Devuelve una copia con los valores no nulos de `overrides`."""
        values = {key: value for key, value in overrides.items() if value is not None}
        for key, value in values.items():
            _check_positive(key, value, allow_zero=(key == "seed"))
        return replace(self, **values)


def _check_positive(name: str, value: int, allow_zero: bool = False) -> None:
    if not isinstance(value, int) or value < 0 or (value == 0 and not allow_zero):
        raise ValueError(f"{name} debe ser un entero positivo, se recibió {value!r}")


def _env_int(key: str, default: int) -> int:
    raw = os.getenv(key)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{key} no es un entero válido: {raw!r}") from None


def load_caps() -> Caps:
    """
    Lee los topes desde el entorno (.env incluido), con los valores por defecto de `Caps`.

    Returns:
        Caps: Topes validados.
    """
    defaults = Caps()
    return defaults.with_overrides(
        max_group_order=_env_int("SPREADS_MAX_GROUP_ORDER", defaults.max_group_order),
        max_subgroup_search=_env_int("SPREADS_MAX_SUBGROUP_SEARCH", defaults.max_subgroup_search),
        field_size_cap=_env_int("SPREADS_FIELD_SIZE_CAP", defaults.field_size_cap),
        sample_size=_env_int("SPREADS_SAMPLE_SIZE", defaults.sample_size),
        seed=_env_int("SPREADS_SEED", defaults.seed),
    )


def log_level() -> str:
    return os.getenv("SPREADS_LOG_LEVEL", "WARNING").upper()
