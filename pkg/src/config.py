from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .core.errors import ConfigError


class Settings(BaseSettings):
    # Модель и гиперпараметры
    model: Literal["elm-rbf", "svm-linear"] = Field(alias="WBCD_MODEL", default="elm-rbf")
    c: float | None = Field(alias="WBCD_C", default=None)
    sigma: float | None = Field(alias="WBCD_SIGMA", default=None)

    # SMO
    tol: float = Field(alias="WBCD_TOL", default=1e-3)
    max_passes: int = Field(alias="WBCD_MAX_PASSES", default=10)

    # Протокол эксперимента
    seed: int = Field(alias="WBCD_SEED", default=42)
    split: str = Field(alias="WBCD_SPLIT", default="0.7,0.2,0.1")
    folds: int = Field(alias="WBCD_FOLDS", default=10)
    labels: Literal["original", "fuzzy"] = Field(alias="WBCD_LABELS", default="original")
    rules: str | None = Field(alias="WBCD_RULES", default=None)
    normalize: bool = Field(alias="WBCD_NORMALIZE", default=False)
    cv_workers: int = Field(alias="WBCD_CV_WORKERS", default=1)

    # Вывод
    output_format: Literal["table", "csv", "json"] = Field(alias="WBCD_FORMAT", default="table")
    log_level: str = Field(alias="WBCD_LOG_LEVEL", default="INFO")

    model_config = SettingsConfigDict(env_file=None, extra="ignore")


def load_settings(config_file: str | Path | None = None) -> Settings:
    """Загрузить настройки: файл key=value, поверх него переменные окружения."""
    if config_file is None:
        return Settings()
    path = Path(config_file)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    return Settings(_env_file=path)  # pyright: ignore[reportCallIssue]
