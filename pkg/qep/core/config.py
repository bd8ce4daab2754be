from functools import lru_cache
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    QEP_MAX_PARTIES: int = 8
    QEP_BASIC_MAX_PARTIES: int = 5
    QEP_MAX_ELEMENTAL_ROWS: int = 3000
    QEP_MAX_PIVOTS: int = 1_000_000
    QEP_PIVOT_RULE: Literal["bland", "lex"] = "bland"
    QEP_LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


@lru_cache
def get_settings() -> Settings:
    return Settings()
